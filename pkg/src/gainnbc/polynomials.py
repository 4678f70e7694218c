"""Exact integer polynomials in q and the closed forms built from them.

Characteristic polynomials come in two flavours.  The *full* one is the usual
arrangement invariant (Shi: ``q (q - n)^(n-1)``), the one produced by point
counting.  The *reduced* one drops the factor q that every [a,b]-expansion
carries, because each hyperplane contains the all-ones direction; it equals the
signed forest polynomial F_{n,1-a,b}.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, prod
from typing import Iterable, Sequence, Union

Number = Union[int, "IntPolynomial"]


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def q(cls) -> IntPolynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, value: int) -> IntPolynomial:
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _lift(other: Number) -> IntPolynomial:
        return other if isinstance(other, IntPolynomial) else IntPolynomial([other])

    def __add__(self, other: Number) -> IntPolynomial:
        o = self._lift(other)
        size = max(len(self.coeffs), len(o.coeffs))
        return IntPolynomial(self[k] + o[k] for k in range(size))

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: Number) -> IntPolynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> IntPolynomial:
        return self._lift(other) - self

    def __mul__(self, other: Number) -> IntPolynomial:
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPolynomial:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def shift_down(self) -> IntPolynomial:
        """Exact division by q; fails if the constant term is nonzero."""
        if self[0] != 0:
            raise ArithmeticError(f"{self} is not divisible by q")
        return IntPolynomial(self.coeffs[1:])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: Sequence[str]) -> IntPolynomial:
        return cls(int(s) for s in obj)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                base = "q" if k == 1 else f"q^{k}"
                body = base if mag == 1 else f"{mag}*{base}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


Q = IntPolynomial.q()


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """|s(n, k)|: permutations of n elements with k cycles."""
    if k < 0 or n < 0:
        raise ValueError("Stirling numbers need nonnegative arguments")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if n == 0:
        return 1
    if k == 0:
        return 0
    if k == n:
        return 1
    return stirling1_unsigned(n - 1, k - 1) + (n - 1) * stirling1_unsigned(n - 1, k)


def rising_factorial(n: int) -> IntPolynomial:
    """x (x + 1) ... (x + n - 1) in the variable q."""
    out = IntPolynomial([1])
    for i in range(n):
        out = out * (Q + i)
    return out


def stirling_row(n: int) -> IntPolynomial:
    return IntPolynomial(stirling1_unsigned(n, k) for k in range(n + 1))


def _check_ab(n: int, alpha: int, beta: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta are natural numbers")


def ab_tree_count(n: int, alpha: int, beta: int) -> int:
    """Number of (alpha, beta)-rooted labelled trees on n vertices."""
    _check_ab(n, alpha, beta)
    return prod(n * beta + (alpha - beta) * i for i in range(1, n))


def ab_forest_polynomial(n: int, alpha: int, beta: int) -> IntPolynomial:
    """F_{n,alpha,beta}(q) = (-1)^(n-1) prod_{i=1}^{n-1} (n beta - q + (alpha - beta) i)."""
    _check_ab(n, alpha, beta)
    out = IntPolynomial([(-1) ** (n - 1)])
    for i in range(1, n):
        out = out * (n * beta + (alpha - beta) * i - Q)
    return out


def forest_polynomial_from_counts(n: int, forests_by_trees: Sequence[int] | dict[int, int]) -> IntPolynomial:
    """sum_j (-1)^(n-j) f_{n,j} q^(j-1), where f_{n,j} counts forests with j trees."""
    items = forests_by_trees.items() if isinstance(forests_by_trees, dict) else enumerate(forests_by_trees)
    coeffs = [0] * (n + 1)
    for j, f in items:
        if f and not 1 <= j <= n:
            raise ValueError(f"a forest on {n} vertices cannot have {j} trees")
        if f:
            coeffs[j - 1] += (-1) ** (n - j) * f
    return IntPolynomial(coeffs)


def decreasing_forest_count(n: int, k: int, span: int) -> int:
    """|s(n, n-k)| span^k: forests with k monotone edges, each carrying one of ``span`` labels."""
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
    if span < 0:
        raise ValueError("span must be nonnegative")
    return stirling1_unsigned(n, n - k) * span**k


def two_group_terms(n: int, alpha: int, beta: int) -> list[int]:
    """Trees split by k, the number of edges whose weight exceeds min(alpha, beta).

    Those edges form a monotone forest (weights only allowed in one direction);
    the remaining n-k-1 edges join its n-k components into a rooted tree in
    (n min)^(n-k-1) ways.
    """
    _check_ab(n, alpha, beta)
    low, span = min(alpha, beta), abs(alpha - beta)
    return [decreasing_forest_count(n, k, span) * (n * low) ** (n - k - 1) for k in range(n)]


def two_group_forest_polynomial(n: int, alpha: int, beta: int) -> IntPolynomial:
    """F_{n,alpha,beta} rebuilt term by term from the two-group split.

    For k long-weight edges and j trees the count is
    |s(n,n-k)| span^k (n low)^(n-k-j) C(n-k-1, j-1).
    """
    _check_ab(n, alpha, beta)
    low, span = min(alpha, beta), abs(alpha - beta)
    counts = [0] * (n + 1)
    for k in range(n):
        first = decreasing_forest_count(n, k, span)
        for j in range(1, n - k + 1):
            counts[j] += first * (n * low) ** (n - k - j) * comb(n - k - 1, j - 1)
    return forest_polynomial_from_counts(n, counts)


def _check_bijective_range(a: int, b: int) -> None:
    if a + b not in (0, 1):
        raise ValueError(f"closed forms need a + b in {{0, 1}}, got a={a}, b={b}")
    if a > b:
        raise ValueError(f"empty gain interval [{a},{b}]")


def poincare(profile) -> IntPolynomial:
    """sum_j P_{n,j} q^j, the empty forest included as the constant term."""
    return IntPolynomial(profile.counts)


def charpoly_from_poincare(p: IntPolynomial, n: int) -> IntPolynomial:
    """q^n Poin(-1/q) = sum_j P_j (-1)^j q^(n-j)."""
    if p.degree > n:
        raise ValueError(f"Poincare polynomial of degree {p.degree} exceeds n={n}")
    coeffs = [0] * (n + 1)
    for j, c in enumerate(p.coeffs):
        coeffs[n - j] = (-1) ** j * c
    return IntPolynomial(coeffs)


def charpoly_closed_form(n: int, a: int, b: int, reduced: bool = False) -> IntPolynomial:
    """Characteristic polynomial of the [a,b]-expansion for a + b in {0, 1}.

    The full form is q * F_{n,1-a,b}(q); ``reduced=True`` returns F itself.
    """
    _check_bijective_range(a, b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    f = ab_forest_polynomial(n, 1 - a, b)
    return f if reduced else Q * f


def region_count(n: int, a: int, b: int) -> int:
    """(bn+2)(bn+3)...(bn+n) when a+b=0, (bn+1)^(n-1) when a+b=1."""
    _check_bijective_range(a, b)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if a + b == 0:
        return prod(b * n + i for i in range(2, n + 1))
    return (b * n + 1) ** (n - 1)
