"""Cross-validation of region counts and characteristic polynomials.

One report cell per (n, a, b).  Exact integers are written as decimal strings.
Wall-clock timings are only included on request, so that reports are
reproducible byte for byte by default.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from .gain import expansion
from .nbc import enumerate_nbc_sets, nbc_edge_profile
from .oracle import (
    DEFAULT_MAX_N,
    DEFAULT_MAX_POINTS,
    GuardError,
    admissible_primes,
    charpoly_interpolated,
    count_nbc_bruteforce,
    min_admissible_prime,
    regions_from_charpoly,
    standard_orders,
)
from .polynomials import charpoly_closed_form, charpoly_from_poincare, poincare, region_count

DEFAULT_GRID: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (-1, 1), (-1, 2), (1, 1))


def verify_cell(
    n: int,
    a: int,
    b: int,
    primes: Sequence[int] | None = None,
    max_n: int = DEFAULT_MAX_N,
    max_points: int = DEFAULT_MAX_POINTS,
    timing: bool = False,
) -> dict:
    if n > max_n:
        raise GuardError(f"n={n} exceeds the enumeration guard {max_n}")
    started = time.perf_counter()
    graph = expansion(n, a, b)
    bijective = a + b in (0, 1)

    profile = nbc_edge_profile(graph)
    enumerated = len(enumerate_nbc_sets(graph))
    brute = {o.name: count_nbc_bruteforce(graph, o, max_n)[0] for o in standard_orders(graph)}

    floor = min_admissible_prime(graph)
    if primes is None:
        use = admissible_primes(graph, n + 2)
    else:
        use = sorted(q for q in set(primes) if q > floor)
    chi_points = charpoly_interpolated(graph, use, max_points)
    poin = poincare(profile)
    chi_poin = charpoly_from_poincare(poin, n)
    chi_closed = charpoly_closed_form(n, a, b) if bijective else None
    formula = region_count(n, a, b) if bijective else None

    region_values = [enumerated, profile.total, poin(1), regions_from_charpoly(chi_points, n)]
    region_values.extend(brute.values())
    if formula is not None:
        region_values.append(formula)
    chis = [chi_points, chi_poin] + ([chi_closed] if chi_closed is not None else [])

    cell = {
        "n": n,
        "a": a,
        "b": b,
        "bijective": bijective,
        "regions": {
            "formula": None if formula is None else str(formula),
            "nbc_enumeration": str(enumerated),
            "poincare_at_1": str(poin(1)),
            "bruteforce": {k: str(v) for k, v in brute.items()},
            "charpoly_at_minus_1": str(regions_from_charpoly(chi_points, n)),
        },
        "poincare": poin.to_json(),
        "charpoly": {
            "closed_form": None if chi_closed is None else chi_closed.to_json(),
            "from_poincare": chi_poin.to_json(),
            "interpolated": chi_points.to_json(),
            "primes": use,
        },
        "agreement": {
            "regions": len(set(region_values)) == 1,
            "charpoly": all(c == chis[0] for c in chis),
            "order_invariance": len(set(brute.values())) == 1,
        },
    }
    if timing:
        cell["seconds"] = round(time.perf_counter() - started, 3)
    return cell


def verify_grid(
    max_size: int,
    grid: Sequence[tuple[int, int]] = DEFAULT_GRID,
    primes: Sequence[int] | None = None,
    max_n: int = DEFAULT_MAX_N,
    max_points: int = DEFAULT_MAX_POINTS,
    jobs: int = 4,
    timing: bool = False,
) -> dict:
    if max_size > max_n:
        raise GuardError(f"n={max_size} exceeds the enumeration guard {max_n}")
    tasks = [(n, a, b) for a, b in grid for n in range(1, max_size + 1)]

    def run(task: tuple[int, int, int]) -> dict:
        n, a, b = task
        return verify_cell(n, a, b, primes, max_n, max_points, timing)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        cells = list(pool.map(run, tasks))
    ok = all(all(c["agreement"].values()) for c in cells)
    return {"grid": [list(p) for p in grid], "max_n": max_size, "all_agree": ok, "cells": cells}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
