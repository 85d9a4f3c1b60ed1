"""Orderings of a set that minimize difference-product valuations step by step,
the generalized factorial valuations w(k) they produce, the interpolation
bases built from them, and membership tests for integer-valued polynomials
on a set, locally at one prime.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from enum import Enum

from .arith import INF, DomainError, require_prime, vp
from .poly import Polynomial, p_integral_binomial, residue_image


@dataclass(frozen=True)
class SubsetDescriptor:
    """Either an explicit finite set of rationals or the symbolic set Z."""

    points: tuple | None  # None means "all rational integers"

    @classmethod
    def finite(cls, points) -> "SubsetDescriptor":
        pts = tuple(Fraction(x) for x in points)
        if len(set(pts)) != len(pts):
            raise DomainError("finite set points must be pairwise distinct")
        if not pts:
            raise DomainError("finite set must be nonempty")
        return cls(pts)

    @classmethod
    def all_integers(cls) -> "SubsetDescriptor":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.points is not None

    def require_p_integral(self, p: int) -> None:
        if self.is_finite:
            for x in self.points:
                if vp(x, p) < 0:
                    raise DomainError(f"point {x} is not p-integral at p={p}")

    def contains(self, x: Fraction) -> bool:
        x = Fraction(x)
        if self.is_finite:
            return x in self.points
        return x.denominator == 1

    def __str__(self):
        if self.is_finite:
            return "{" + ", ".join(str(x) for x in self.points) + "}"
        return "Z"


ALL_INTEGERS = SubsetDescriptor.all_integers()


@dataclass(frozen=True)
class VOrdering:
    """A chosen ordering of points with the step valuations w(k).

    w[k] is the valuation of prod_{j<k}(points[k] - points[j]); the greedy
    construction makes each w[k] the minimum of that product valuation over
    the whole set, so the w list does not depend on tie-breaking.
    """

    E: SubsetDescriptor
    p: int
    points: tuple
    w: tuple

    def __len__(self):
        return len(self.points)

    @property
    def last_index(self) -> int:
        return len(self.points) - 1


def factorial_valuation(k: int, p: int) -> int:
    """v_p(k!) as the digit sum: sum of floor(k / p^i)."""
    total = 0
    q = p
    while q <= k:
        total += k // q
        q *= p
    return total


def _step_valuation(x: Fraction, chosen, p: int):
    total = 0
    for a in chosen:
        v = vp(x - a, p)
        if v is INF:
            return INF
        total += v
    return total


def v_ordering(E: SubsetDescriptor, n: int, p: int, tie_break: str = "min") -> VOrdering:
    """Greedy construction of an ordering of length n+1 with its w values.

    At each step the next point minimizes the valuation of the difference
    product against the points already chosen; ties go to the smallest point
    in (numerator, denominator) lexicographic order (or the largest, with
    tie_break="max", which must produce the same w list).

    For the symbolic set of all integers the ordering 0, 1, ..., n is used
    with w[k] = v_p(k!); that this is a valid choice is covered by the
    factorial-valuation property tests.
    """
    require_prime(p)
    if n < 0:
        raise DomainError("ordering length must be >= 1 (n >= 0)")
    if tie_break not in ("min", "max"):
        raise DomainError(f"unknown tie_break {tie_break!r}")
    if not E.is_finite:
        points = tuple(Fraction(k) for k in range(n + 1))
        w = tuple(factorial_valuation(k, p) for k in range(n + 1))
        return VOrdering(E, p, points, w)

    E.require_p_integral(p)
    if len(E.points) < n + 1:
        raise DomainError(
            f"set of size {len(E.points)} cannot host an ordering of length {n + 1}"
        )
    order_key = (lambda x: (x.numerator, x.denominator))
    remaining = sorted(E.points, key=order_key)
    if tie_break == "max":
        remaining.reverse()
    chosen = [remaining.pop(0)]
    w = [0]
    for _ in range(n):
        best_val = None
        best_x = None
        best_i = None
        for i, x in enumerate(remaining):
            val = _step_valuation(x, chosen, p)
            if best_val is None or val < best_val:
                best_val, best_x, best_i = val, x, i
        chosen.append(best_x)
        w.append(best_val)
        remaining.pop(best_i)
    return VOrdering(E, p, tuple(chosen), tuple(w))


def regular_basis(vord: VOrdering, k: int) -> Polynomial:
    """The k-th interpolation basis polynomial prod_{j<k}(X - a_j)/(a_k - a_j)."""
    if not 0 <= k <= vord.last_index:
        raise DomainError(f"basis index {k} out of range 0..{vord.last_index}")
    result = Polynomial.one()
    a_k = vord.points[k]
    for j in range(k):
        a_j = vord.points[j]
        result = result * Polynomial((-a_j, 1)) / (a_k - a_j)
    return result


def expand_in_basis(f: Polynomial, vord: VOrdering) -> list:
    """Coefficients c_k with f = sum c_k f_k, by the triangular recursion
    c_k = f(a_k) - sum_{h<k} c_h f_h(a_k).
    """
    n = vord.last_index
    if f.degree > n:
        raise DomainError(
            f"degree {f.degree} exceeds ordering length (need deg <= {n})"
        )
    coeffs = []
    bases = [regular_basis(vord, h) for h in range(n + 1)]
    for k in range(n + 1):
        a_k = vord.points[k]
        value = f(a_k)
        for h in range(k):
            value -= coeffs[h] * bases[h](a_k)
        coeffs.append(value)
    return coeffs


class MembershipTarget(Enum):
    VALUATION_RING = "v"
    MAXIMAL_IDEAL = "m"


def int_membership(
    f: Polynomial,
    E: SubsetDescriptor,
    p: int,
    target: MembershipTarget = MembershipTarget.VALUATION_RING,
) -> bool:
    """Membership of f in the p-local integer-valued ring over E, or in its
    maximal-ideal layer (all values of positive valuation).
    """
    require_prime(p)
    threshold = 0 if target is MembershipTarget.VALUATION_RING else 1
    if E.is_finite:
        E.require_p_integral(p)
        return all(vp(f(a), p) >= threshold for a in E.points)
    if target is MembershipTarget.VALUATION_RING:
        return p_integral_binomial(f, p)
    if not p_integral_binomial(f, p):
        return False
    return residue_image(f, p) == frozenset({0})
