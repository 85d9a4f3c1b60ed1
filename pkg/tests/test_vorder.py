import random
from fractions import Fraction
from math import factorial

import pytest

from intpoly import (
    ALL_INTEGERS,
    DomainError,
    MembershipTarget,
    Polynomial,
    SubsetDescriptor,
    expand_in_basis,
    factorial_valuation,
    int_membership,
    regular_basis,
    to_binomial_basis,
    v_ordering,
    vp,
)
from intpoly.arith import vp_int
from oracles import brute_force_w, pairwise_product_minima

X = Polynomial.x()


def finite(*pts):
    return SubsetDescriptor.finite(pts)


class TestVOrdering:
    def test_example_finite(self):
        vord = v_ordering(finite(0, 1, 2, 4), 3, 2)
        assert vord.points == (0, 1, 2, 4)
        assert vord.w == (0, 0, 1, 3)

    def test_example_all_integers(self):
        vord = v_ordering(ALL_INTEGERS, 4, 2)
        assert vord.points == (0, 1, 2, 3, 4)
        assert vord.w == (0, 0, 1, 1, 3)

    def test_single_point(self):
        vord = v_ordering(finite(5), 0, 7)
        assert vord.points == (Fraction(5),)
        assert vord.w == (0,)

    def test_too_small(self):
        with pytest.raises(DomainError):
            v_ordering(finite(0, 1), 2, 3)

    def test_rejects_non_integral_points(self):
        with pytest.raises(DomainError):
            v_ordering(finite(Fraction(1, 2), 1), 1, 2)

    def test_greedy_matches_brute_force_smoke(self):
        rng = random.Random(11)
        for _ in range(25):
            size = rng.randrange(2, 7)
            pts = rng.sample(range(0, 13), size)
            for p in (2, 3, 5):
                vord = v_ordering(finite(*pts), size - 1, p)
                assert list(vord.w) == brute_force_w(pts, p)

    def test_tie_break_policies_same_w(self):
        rng = random.Random(12)
        for _ in range(25):
            size = rng.randrange(2, 7)
            pts = rng.sample(range(0, 13), size)
            for p in (2, 3, 5):
                lo = v_ordering(finite(*pts), size - 1, p, tie_break="min")
                hi = v_ordering(finite(*pts), size - 1, p, tie_break="max")
                assert lo.w == hi.w

    def test_cumulative_subset_minima(self):
        rng = random.Random(13)
        for _ in range(10):
            size = rng.randrange(2, 7)
            pts = rng.sample(range(0, 13), size)
            for p in (2, 3, 5):
                vord = v_ordering(finite(*pts), size - 1, p)
                sums = [sum(vord.w[1:k + 1]) for k in range(size)]
                assert sums == pairwise_product_minima(pts, p)

    def test_legendre_digit_sums(self):
        for p in (2, 3, 5):
            for k in range(31):
                assert factorial_valuation(k, p) == (
                    0 if k == 0 else vp_int(factorial(k), p)
                )


class TestRegularBasis:
    def test_all_integers_is_binomial(self):
        vord = v_ordering(ALL_INTEGERS, 4, 3)
        assert regular_basis(vord, 2) == X * (X - 1) / 2
        assert regular_basis(vord, 0) == Polynomial.one()

    def test_finite_example(self):
        vord = v_ordering(finite(0, 1, 2, 4), 3, 2)
        expected = X * (X - 1) * (X - 2) / (4 * 3 * 2)
        assert regular_basis(vord, 3) == expected

    def test_triangular_values_and_integrality(self):
        vord = v_ordering(finite(0, 1, 2, 4, 6, 9), 5, 2)
        for k in range(6):
            fk = regular_basis(vord, k)
            assert fk(vord.points[k]) == 1
            for j in range(k):
                assert fk(vord.points[j]) == 0
            for x in vord.E.points:
                assert vp(fk(x), 2) >= 0

    def test_index_out_of_range(self):
        vord = v_ordering(finite(0, 1), 1, 2)
        with pytest.raises(DomainError):
            regular_basis(vord, 2)


class TestExpansion:
    def test_matches_binomial_form(self):
        vord = v_ordering(ALL_INTEGERS, 2, 5)
        assert expand_in_basis(X ** 2, vord) == [0, 1, 2]
        assert list(to_binomial_basis(X ** 2)) == [0, 1, 2]

    def test_basis_element_is_unit_vector(self):
        vord = v_ordering(finite(0, 1, 2, 4), 3, 2)
        f3 = regular_basis(vord, 3)
        assert expand_in_basis(f3, vord) == [0, 0, 0, 1]

    def test_reexpansion_identity(self):
        vord = v_ordering(finite(0, 1, 2, 4), 3, 2)
        f = 2 + X * (X - 1)
        coeffs = expand_in_basis(f, vord)
        assert coeffs[0] == 2
        rebuilt = Polynomial.zero()
        for k, c in enumerate(coeffs):
            rebuilt = rebuilt + regular_basis(vord, k) * c
        assert rebuilt == f

    def test_degree_too_large(self):
        vord = v_ordering(finite(0, 1), 1, 2)
        with pytest.raises(DomainError):
            expand_in_basis(X ** 2, vord)

    def test_min_coefficient_valuation_is_min_value_valuation(self):
        rng = random.Random(14)
        for _ in range(30):
            size = rng.randrange(3, 8)
            pts = rng.sample(range(-6, 13), size)
            p = rng.choice((2, 3, 5))
            deg = rng.randrange(0, size)
            f = Polynomial(
                [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(deg + 1)]
            )
            if f.is_zero:
                continue
            vord = v_ordering(finite(*pts), size - 1, p)
            coeffs = expand_in_basis(f, vord)
            lhs = min(vp(c, p) for c in coeffs)
            rhs = min(vp(f(a), p) for a in pts)
            assert lhs == rhs


class TestMembership:
    def test_examples(self):
        half = X * (X - 1) / 2
        assert int_membership(half, ALL_INTEGERS, 2, MembershipTarget.VALUATION_RING)
        assert not int_membership(half, ALL_INTEGERS, 2, MembershipTarget.MAXIMAL_IDEAL)
        assert int_membership(X ** 2 + X, ALL_INTEGERS, 2, MembershipTarget.MAXIMAL_IDEAL)

    def test_finite_set(self):
        E = finite(1, 3, 5)
        assert int_membership(X / 2, E, 2, MembershipTarget.VALUATION_RING) is False
        assert int_membership((X - 1) / 2, E, 3, MembershipTarget.VALUATION_RING)

    def test_agrees_with_expansion_valuations(self):
        rng = random.Random(15)
        for _ in range(25):
            size = rng.randrange(2, 7)
            pts = rng.sample(range(0, 12), size)
            p = rng.choice((2, 3, 5))
            deg = rng.randrange(0, size)
            f = Polynomial(
                [Fraction(rng.randint(-20, 20), rng.randint(1, 8)) for _ in range(deg + 1)]
            )
            E = finite(*pts)
            vord = v_ordering(E, size - 1, p)
            coeffs = expand_in_basis(f, vord)
            member = int_membership(f, E, p, MembershipTarget.VALUATION_RING)
            by_coeffs = all(vp(c, p) >= 0 for c in coeffs)
            assert member == by_coeffs
