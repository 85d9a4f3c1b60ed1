"""Membership and residue computations at the points of the prime spectrum of
a ring of integer-valued polynomials over a p-local valuation ring.

Five concrete kinds of point are supported: height-one primes attached to a
monic nonconstant rational polynomial, maximal ideals attached to a point of
the set, to a finite-precision p-adic element, or to a pseudo-convergent
window, and the ideal of polynomials mapping the whole set into the maximal
ideal.  Verdicts are three-valued: finite data sometimes cannot decide, and
then the answer is UNKNOWN with a reason rather than a guess.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .arith import (
    DomainError,
    InputParseError,
    PAdicResidue,
    padic_residue,
    require_prime,
    vp,
    vp_int,
)
from .poly import Polynomial, parse_polynomial, residue_image
from .sequences import SeqWindow, WindowClass, classify_window
from .vorder import ALL_INTEGERS, MembershipTarget, SubsetDescriptor, int_membership

INSUFFICIENT_PRECISION = "insufficient_precision"
WINDOW_AMBIGUOUS = "window_ambiguous"


@dataclass(frozen=True)
class TriVerdict:
    value: str  # "yes" | "no" | "unknown"
    reason: str | None = None

    @property
    def is_yes(self) -> bool:
        return self.value == "yes"

    @property
    def is_no(self) -> bool:
        return self.value == "no"

    @property
    def decided(self) -> bool:
        return self.value in ("yes", "no")

    def __str__(self):
        if self.reason:
            return f"{self.value} ({self.reason})"
        return self.value


YES = TriVerdict("yes")
NO = TriVerdict("no")


def unknown(reason: str) -> TriVerdict:
    return TriVerdict("unknown", reason)


# -- the ideal kinds ----------------------------------------------------------


@dataclass(frozen=True)
class PrimeAboveZero:
    """Height-one prime: multiples of a fixed monic nonconstant q."""

    q: Polynomial

    def __post_init__(self):
        if self.q.degree < 1:
            raise DomainError("the generator must be nonconstant")
        if self.q.leading_coefficient != 1:
            raise DomainError("the generator must be monic")

    def __str__(self):
        return f"pq:{self.q}"


@dataclass(frozen=True)
class MaxTrivial:
    """Maximal ideal of polynomials whose value at a fixed point a is non-unit."""

    p: int
    a: Fraction

    def __post_init__(self):
        require_prime(self.p)
        object.__setattr__(self, "a", Fraction(self.a))
        if vp(self.a, self.p) < 0:
            raise DomainError(f"point {self.a} is not p-integral at p={self.p}")

    def __str__(self):
        return f"max:p={self.p},a={self.a}"


@dataclass(frozen=True)
class MaxCompletion:
    """Maximal ideal attached to a finite-precision p-adic element."""

    x: PAdicResidue

    @property
    def p(self) -> int:
        return self.x.p

    def __str__(self):
        return f"comp:p={self.p},x={self.x.value},N={self.x.precision}"


@dataclass(frozen=True)
class MaxSequence:
    """Maximal ideal attached to a pseudo-convergent window."""

    window: SeqWindow

    def __post_init__(self):
        if classify_window(self.window) is not WindowClass.PSEUDO_CONVERGENT:
            raise DomainError("sequence ideal needs a pseudo-convergent window")

    @property
    def p(self) -> int:
        return self.window.p

    def __str__(self):
        pts = ",".join(str(x) for x in self.window.points)
        return f"seq:p={self.p},pts={pts}"


@dataclass(frozen=True)
class IntEM:
    """The ideal of polynomials mapping the whole set into the maximal ideal."""

    p: int

    def __post_init__(self):
        require_prime(self.p)

    def __str__(self):
        return f"iem:p={self.p}"


IdealSpec = PrimeAboveZero | MaxTrivial | MaxCompletion | MaxSequence | IntEM


def parse_ideal(text: str) -> IdealSpec:
    """Parse the mini-grammar: pq:<poly> | max:p=,a= | comp:p=,x=,N= |
    seq:p=,pts= | iem:p=."""
    text = text.strip()
    kind, _, body = text.partition(":")
    if not body:
        raise InputParseError(f"bad ideal spec {text!r}")
    try:
        if kind == "pq":
            return PrimeAboveZero(parse_polynomial(body))
        if kind == "seq":
            # the pts= value itself contains commas, so split it off first
            head, sep, pts_text = body.partition("pts=")
            if not sep:
                raise InputParseError(f"seq ideal needs pts=: {text!r}")
            fields = _parse_fields(head.rstrip(","))
            pts = tuple(Fraction(s) for s in pts_text.split(","))
            return MaxSequence(SeqWindow(int(fields["p"]), pts))
        fields = _parse_fields(body)
        if kind == "max":
            return MaxTrivial(int(fields["p"]), Fraction(fields["a"]))
        if kind == "comp":
            return MaxCompletion(
                padic_residue(int(fields["x"]), int(fields["p"]), int(fields["N"]))
            )
        if kind == "iem":
            return IntEM(int(fields["p"]))
    except (KeyError, ValueError) as exc:
        raise InputParseError(f"bad ideal spec {text!r}: {exc}") from None
    raise InputParseError(f"unknown ideal kind {kind!r}")


def _parse_fields(body: str) -> dict:
    fields = {}
    for item in body.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise InputParseError(f"expected key=value, got {item!r}")
        fields[key.strip()] = value.strip()
    return fields


def _prime_of(ideal: IdealSpec) -> int | None:
    if isinstance(ideal, PrimeAboveZero):
        return None
    return ideal.p


def _require_in_ring(f: Polynomial, E: SubsetDescriptor, p: int) -> None:
    if not int_membership(f, E, p, MembershipTarget.VALUATION_RING):
        raise DomainError(
            f"{f} is not integer-valued on {E} at p={p}; membership query is not defined"
        )


def _completion_threshold(f: Polynomial, p: int) -> int:
    m = f.denominator_lcm()
    return 1 + (vp_int(m, p) if m % p == 0 else 0)


def ideal_membership(
    f: Polynomial, ideal: IdealSpec, E: SubsetDescriptor = ALL_INTEGERS
) -> TriVerdict:
    """Three-valued membership of f in the given spectrum point over E."""
    if isinstance(ideal, PrimeAboveZero):
        return YES if ideal.q.divides(f) else NO

    p = ideal.p
    _require_in_ring(f, E, p)

    if isinstance(ideal, MaxTrivial):
        if not E.contains(ideal.a):
            raise DomainError(f"point {ideal.a} does not belong to {E}")
        return YES if vp(f(ideal.a), p) >= 1 else NO

    if isinstance(ideal, MaxCompletion):
        needed = _completion_threshold(f, p)
        if ideal.x.precision < needed:
            return unknown(INSUFFICIENT_PRECISION)
        return YES if vp(f(ideal.x.value), p) >= 1 else NO

    if isinstance(ideal, MaxSequence):
        pts = ideal.window.points
        for x in pts:
            if not E.contains(x):
                raise DomainError(f"window point {x} does not belong to {E}")
        half = pts[len(pts) - ceil(len(pts) / 2):]
        vals = [vp(f(x), p) for x in half]
        if all(v >= 1 for v in vals):
            return YES
        if all(v == 0 for v in vals):
            return NO
        return unknown(WINDOW_AMBIGUOUS)

    if isinstance(ideal, IntEM):
        return YES if int_membership(f, E, p, MembershipTarget.MAXIMAL_IDEAL) else NO

    raise DomainError(f"unsupported ideal spec {ideal!r}")


def residue_representative(
    f: Polynomial, ideal: IdealSpec, E: SubsetDescriptor = ALL_INTEGERS
):
    """The residue s in [0, p) with f - s in the ideal, or None if undecidable.

    Only defined for the maximal ideals; by the separation property below,
    such an s exists and is unique whenever the available data decides
    membership.
    """
    if isinstance(ideal, (PrimeAboveZero, IntEM)):
        raise DomainError("residue representatives exist only for maximal ideals")
    p = ideal.p
    _require_in_ring(f, E, p)

    if isinstance(ideal, MaxTrivial):
        if not E.contains(ideal.a):
            raise DomainError(f"point {ideal.a} does not belong to {E}")
        return padic_residue(f(ideal.a), p, 1).value

    if isinstance(ideal, MaxCompletion):
        if ideal.x.precision < _completion_threshold(f, p):
            return None
        return padic_residue(f(ideal.x.value), p, 1).value

    if isinstance(ideal, MaxSequence):
        for s in range(p):
            verdict = ideal_membership(f - s, ideal, E)
            if verdict.is_yes:
                return s
        return None

    raise DomainError(f"unsupported ideal spec {ideal!r}")


def separation_check(f: Polynomial, p: int):
    """Residue image of f together with the separation product test.

    Computes R = { f(x) mod p } and checks that prod_{s in R} (f - s) maps
    every integer into the maximal ideal; for valid inputs the product test
    must come out true, which is what makes the residues R a complete set of
    representatives at every maximal ideal above p.
    """
    require_prime(p)
    if not int_membership(f, ALL_INTEGERS, p, MembershipTarget.VALUATION_RING):
        raise DomainError(f"{f} is not integer-valued at p={p}")
    residues = residue_image(f, p)
    product = Polynomial.one()
    for s in sorted(residues):
        product = product * (f - s)
    in_ideal = int_membership(product, ALL_INTEGERS, p, MembershipTarget.MAXIMAL_IDEAL)
    return residues, in_ideal
