"""Exact base arithmetic: p-adic valuations, extended gcd, finite-precision residues.

Everything here is pure and exact.  Rationals are `fractions.Fraction`
throughout the package; valuations are plain ints except for the valuation
of zero, which is the `INF` sentinel.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class DomainError(ValueError):
    """A precondition of a library operation was violated."""


class InputParseError(ValueError):
    """Malformed textual input (rationals, polynomials, ideal specs, matrices)."""


class Infinity:
    """Valuation of zero; compares greater than every integer."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash(("intpoly", "infinity"))

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"


INF = Infinity()


def is_prime(p) -> bool:
    """Deterministic primality by trial division (inputs here are small)."""
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    d = 5
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


def require_prime(p) -> int:
    if not is_prime(p):
        raise DomainError(f"{p!r} is not prime")
    return p


def vp_int(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("vp_int needs a nonzero integer")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int):
    """p-adic valuation of a rational; INF for zero, negative values allowed."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) > 0 and u*a + v*b = g."""
    if a == 0 and b == 0:
        raise DomainError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class PAdicResidue:
    """An approximation `value mod p^precision` of a p-adic integer."""

    p: int
    value: int
    precision: int

    def __post_init__(self):
        require_prime(self.p)
        if self.precision < 1:
            raise DomainError("precision must be >= 1")
        if not 0 <= self.value < self.p ** self.precision:
            raise DomainError(
                f"residue {self.value} out of range [0, {self.p}^{self.precision})"
            )

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def reduce(self, precision: int) -> "PAdicResidue":
        """Truncate to a coarser precision."""
        if precision > self.precision:
            raise DomainError("cannot refine a residue beyond its precision")
        return PAdicResidue(self.p, self.value % self.p ** precision, precision)

    def __str__(self):
        return f"{self.value} mod {self.p}^{self.precision}"


def padic_residue(x, p: int, precision: int) -> PAdicResidue:
    """Image of a p-integral rational in Z/p^N, N = precision.

    Rejects rationals with negative valuation (no image in the residue ring).
    """
    require_prime(p)
    if precision < 1:
        raise DomainError("precision must be >= 1")
    x = Fraction(x)
    if x != 0 and vp(x, p) < 0:
        raise DomainError(f"{x} has negative valuation at p={p}")
    mod = p ** precision
    inv_den = pow(x.denominator, -1, mod)
    return PAdicResidue(p, (x.numerator * inv_den) % mod, precision)


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"bad rational {text!r}: {exc}") from None


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def frac_sqrt(q: Fraction):
    """Exact square root of a rational, or None if q is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n|, ascending (n != 0)."""
    if n == 0:
        raise ValueError("prime_factors(0) is undefined")
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out
