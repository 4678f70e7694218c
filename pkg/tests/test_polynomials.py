import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gainnbc.polynomials import (
    Q,
    IntPolynomial,
    ab_forest_polynomial,
    ab_tree_count,
    charpoly_closed_form,
    charpoly_from_poincare,
    decreasing_forest_count,
    forest_polynomial_from_counts,
    poincare,
    region_count,
    rising_factorial,
    stirling1_unsigned,
    stirling_row,
    two_group_forest_polynomial,
    two_group_terms,
)
from gainnbc.nbc import EdgeCountProfile

coeffs = st.lists(st.integers(-50, 50), max_size=6)


class TestIntPolynomial:
    def test_canonical_form(self):
        assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPolynomial([0, 0]).coeffs == ()
        assert IntPolynomial().degree == -1

    def test_str(self):
        assert str((Q - 3) ** 2) == "q^2 - 6*q + 9"
        assert str(-Q + 1) == "-q + 1"
        assert str(IntPolynomial()) == "0"

    def test_json(self):
        p = Q * (Q - 2)
        assert p.to_json() == ["0", "-2", "1"]
        assert IntPolynomial.from_json(p.to_json()) == p

    def test_big_integers_exact(self):
        p = (Q + 10**30) ** 3
        assert p[0] == 10**90

    def test_shift_down(self):
        assert (Q * (Q - 1)).shift_down() == Q - 1
        with pytest.raises(ArithmeticError):
            (Q + 1).shift_down()

    @given(coeffs, coeffs, st.integers(-20, 20))
    def test_ring_ops_evaluate_pointwise(self, xs, ys, x):
        p, r = IntPolynomial(xs), IntPolynomial(ys)
        assert (p + r)(x) == p(x) + r(x)
        assert (p - r)(x) == p(x) - r(x)
        assert (p * r)(x) == p(x) * r(x)

    @given(coeffs)
    def test_no_trailing_zero(self, xs):
        p = IntPolynomial(xs)
        assert not p.coeffs or p.coeffs[-1] != 0


class TestStirling:
    @pytest.mark.parametrize("n,k,value", [(0, 0, 1), (3, 1, 2), (4, 2, 11), (5, 3, 35), (6, 1, 120)])
    def test_values(self, n, k, value):
        assert stirling1_unsigned(n, k) == value

    def test_rejects_k_above_n(self):
        with pytest.raises(ValueError):
            stirling1_unsigned(2, 3)

    @pytest.mark.parametrize("n", range(8))
    def test_counts_permutations_by_cycles(self, n):
        by_cycles = [0] * (n + 1)
        for perm in itertools.permutations(range(n)):
            seen, cycles = set(), 0
            for s in range(n):
                if s not in seen:
                    cycles += 1
                    while s not in seen:
                        seen.add(s)
                        s = perm[s]
            by_cycles[cycles] += 1
        assert [stirling1_unsigned(n, k) for k in range(n + 1)] == by_cycles

    @pytest.mark.parametrize("n", range(9))
    def test_rising_factorial_identity(self, n):
        assert stirling_row(n) == rising_factorial(n)


class TestTreeCounts:
    @pytest.mark.parametrize("n,alpha,beta,count", [(3, 1, 1, 9), (1, 5, 2, 1), (2, 2, 1, 3), (4, 1, 0, 6)])
    def test_values(self, n, alpha, beta, count):
        assert ab_tree_count(n, alpha, beta) == count

    def test_increasing_trees_are_factorials(self):
        assert [ab_tree_count(n, 1, 0) for n in range(1, 7)] == [factorial(n - 1) for n in range(1, 7)]

    def test_rooted_cayley(self):
        assert [ab_tree_count(n, 1, 1) for n in range(1, 7)] == [n ** (n - 1) for n in range(1, 7)]

    @pytest.mark.parametrize("alpha,beta", [(1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (0, 2), (1, 3)])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_two_group_split(self, n, alpha, beta):
        assert sum(two_group_terms(n, alpha, beta)) == ab_tree_count(n, alpha, beta)
        assert two_group_forest_polynomial(n, alpha, beta) == ab_forest_polynomial(n, alpha, beta)

    @pytest.mark.parametrize("n,k,span,value", [(3, 0, 1, 1), (3, 2, 1, 2), (2, 1, 2, 2), (4, 2, 3, 99)])
    def test_decreasing_forest_count(self, n, k, span, value):
        assert decreasing_forest_count(n, k, span) == value

    def test_decreasing_forest_count_range(self):
        with pytest.raises(ValueError):
            decreasing_forest_count(3, 3, 1)


class TestForestPolynomial:
    def test_two_vertices(self):
        assert ab_forest_polynomial(2, 1, 1) == Q - 2
        assert forest_polynomial_from_counts(2, {1: 2, 2: 1}) == Q - 2

    def test_single_vertex(self):
        assert ab_forest_polynomial(1, 4, 7) == IntPolynomial([1])

    def test_three_vertices(self):
        assert ab_forest_polynomial(3, 1, 1) == (Q - 3) ** 2
        assert forest_polynomial_from_counts(3, {1: 9, 2: 6, 3: 1}) == (Q - 3) ** 2

    def test_rejects_impossible_tree_counts(self):
        with pytest.raises(ValueError):
            forest_polynomial_from_counts(2, {3: 1})


class TestCharacteristic:
    def test_poincare(self):
        assert poincare(EdgeCountProfile(2, (1, 1))) == 1 + Q
        assert poincare(EdgeCountProfile(1, (1,))) == IntPolynomial([1])
        p = poincare(EdgeCountProfile(2, (1, 2)))
        assert p == 1 + 2 * Q and p(1) == 3

    @pytest.mark.parametrize(
        "p,n,chi",
        [(1 + Q, 2, Q**2 - Q), (IntPolynomial([1]), 1, Q), (1 + 2 * Q, 2, Q**2 - 2 * Q)],
    )
    def test_from_poincare(self, p, n, chi):
        assert charpoly_from_poincare(p, n) == chi

    def test_from_poincare_degree_check(self):
        with pytest.raises(ValueError):
            charpoly_from_poincare(1 + Q + Q**2, 1)

    def test_closed_form_examples(self):
        assert charpoly_closed_form(3, 0, 1) == Q * (Q - 3) ** 2
        assert charpoly_closed_form(1, -2, 2) == Q
        assert charpoly_closed_form(2, -1, 1) == Q * (Q - 3)
        assert charpoly_closed_form(3, 0, 1, reduced=True) == (Q - 3) ** 2

    @pytest.mark.parametrize("n", range(1, 7))
    def test_braid_is_falling_factorial(self, n):
        expected = IntPolynomial([1])
        for i in range(n):
            expected = expected * (Q - i)
        assert charpoly_closed_form(n, 0, 0) == expected

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("b", [0, 1, 2, 3])
    def test_closed_form_matches_printed_products(self, n, b):
        # a+b=0: (-1)^(n-1) prod_{i=1}^{n-1} (bn - q + i); a+b=1: (-1)^(n-1) (bn - q)^(n-1)
        cat = IntPolynomial([(-1) ** (n - 1)])
        for i in range(1, n):
            cat = cat * (b * n - Q + i)
        assert charpoly_closed_form(n, -b, b, reduced=True) == cat
        if b >= 1:
            shi = (-1) ** (n - 1) * (b * n - Q) ** (n - 1)
            assert charpoly_closed_form(n, 1 - b, b, reduced=True) == shi

    def test_closed_form_rejects_other_intervals(self):
        with pytest.raises(ValueError):
            charpoly_closed_form(3, 1, 1)
        with pytest.raises(ValueError):
            region_count(3, 0, 2)

    @pytest.mark.parametrize("n,a,b,regions", [(5, 0, 0, 120), (4, 0, 1, 125), (3, -1, 1, 30), (3, -1, 2, 49)])
    def test_region_count(self, n, a, b, regions):
        assert region_count(n, a, b) == regions

    @pytest.mark.parametrize("a,b", [(0, 0), (0, 1), (-1, 1), (-1, 2), (-2, 2), (-2, 3)])
    @pytest.mark.parametrize("n", range(1, 8))
    def test_region_count_is_chi_at_minus_one(self, n, a, b):
        assert region_count(n, a, b) == (-1) ** n * charpoly_closed_form(n, a, b)(-1)
