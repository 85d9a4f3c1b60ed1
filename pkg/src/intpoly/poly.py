"""Univariate polynomials over Q with exact arithmetic.

Dense representation: a tuple of Fractions indexed by degree, trailing zeros
trimmed (the zero polynomial has an empty tuple).  Degrees in this package
stay small, so no sparse layout.

Also provides the binomial-basis transform (finite differences), the
integer-valuedness test, residue images mod p, extended gcd in Q[X], and
exact polynomial square roots.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .arith import (
    DomainError,
    InputParseError,
    frac_sqrt,
    padic_residue,
    prime_factors,
    require_prime,
    vp,
    vp_int,
)


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class Polynomial:
    """Immutable univariate polynomial with Fraction coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Polynomial":
        return cls((0,) * k + (Fraction(coeff),))

    # -- basic queries -----------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        """Coefficients in ascending degree (trailing zeros trimmed)."""
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._coeffs:
            return Fraction(0)
        return self._coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    @property
    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise DomainError(f"{self} is not constant")
        return self.coefficient(0)

    @property
    def is_integer_constant(self) -> bool:
        return self.is_constant and self.coefficient(0).denominator == 1

    def denominator_lcm(self) -> int:
        """Minimal positive m with m*f having integer coefficients."""
        m = 1
        for c in self._coeffs:
            m = lcm(m, c.denominator)
        return m

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __neg__(self):
        return Polynomial(tuple(-c for c in self._coeffs))

    def __add__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            if scalar == 0:
                raise ZeroDivisionError("division of polynomial by zero scalar")
            return Polynomial(tuple(c / Fraction(scalar) for c in self._coeffs))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self._coeffs) - len(other._coeffs) + 1, 1)
        rem = list(self._coeffs)
        d = other.degree
        lc = other.leading_coefficient
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            factor = rem[-1] / lc
            q[k] = factor
            for i, c in enumerate(other._coeffs):
                rem[k + i] -= factor * c
            rem.pop()
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading_coefficient
        return Polynomial(tuple(c / lc for c in self._coeffs))

    def __call__(self, x):
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def shift(self, a) -> "Polynomial":
        """The polynomial f(X + a)."""
        result = Polynomial.zero()
        xa = Polynomial((Fraction(a), Fraction(1)))
        power = Polynomial.one()
        for c in self._coeffs:
            result = result + power * c
            power = power * xa
        return result

    @staticmethod
    def _as_poly(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return NotImplemented

    # -- text --------------------------------------------------------------

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coefficient(k)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            elif mag == 1:
                body = "X" if k == 1 else f"X^{k}"
            else:
                body = f"{mag}*X" if k == 1 else f"{mag}*X^{k}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[Xx]|[()+\-*/^])")


def _tokenize(text: str) -> list[str]:
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise InputParseError(f"bad character in polynomial at {text[pos:]!r}")
        tok = m.group(1)
        tokens.append("X" if tok in ("x", "X") else tok)
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent for sums of products; '/' only by nonzero constants."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        if self.peek() is not None:
            raise InputParseError(f"trailing tokens near {self.peek()!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        result = self.power()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op = self.take()
                rhs = self.power()
                if op == "*":
                    result = result * rhs
                else:
                    if not rhs.is_constant or rhs.is_zero:
                        raise InputParseError(
                            "division is only allowed by a nonzero constant"
                        )
                    result = result / rhs.constant_value()
            elif nxt is not None and (nxt == "X" or nxt == "(" or nxt.isdigit()):
                # implicit multiplication, e.g. "3X^2" or "X(X-1)"
                result = result * self.power()
            else:
                break
        return result if sign == 1 else -result

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok is None or not exp_tok.isdigit():
                raise InputParseError("exponent must be a non-negative integer")
            return base ** int(exp_tok)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok is None:
            raise InputParseError("unexpected end of polynomial")
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise InputParseError("unbalanced parentheses")
            return inner
        if tok == "X":
            return Polynomial.x()
        if tok.isdigit():
            return Polynomial.constant(int(tok))
        raise InputParseError(f"unexpected token {tok!r}")


def parse_polynomial(text: str) -> Polynomial:
    """Parse e.g. "-3/2*X^5 + X - 7" or "X*(X-1)/2" into a Polynomial."""
    tokens = _tokenize(text)
    if not tokens:
        raise InputParseError("empty polynomial text")
    return _Parser(tokens).parse()


# -- binomial basis ----------------------------------------------------------


@lru_cache(maxsize=None)
def binomial_poly(k: int) -> Polynomial:
    """The binomial polynomial X(X-1)...(X-k+1)/k!."""
    if k < 0:
        raise ValueError("k must be >= 0")
    result = Polynomial.one()
    for j in range(k):
        result = result * Polynomial((-j, 1))
    denom = 1
    for j in range(1, k + 1):
        denom *= j
    return result / denom


@dataclass(frozen=True)
class BinomialForm:
    """Coefficients c_k of f = sum c_k * C(X, k)."""

    coeffs: tuple

    def to_polynomial(self) -> Polynomial:
        result = Polynomial.zero()
        for k, c in enumerate(self.coeffs):
            if c != 0:
                result = result + binomial_poly(k) * c
        return result

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)


def to_binomial_basis(f: Polynomial) -> BinomialForm:
    """Binomial-basis coefficients via iterated finite differences at 0..deg f."""
    if f.is_zero:
        return BinomialForm(())
    d = f.degree
    values = [f(x) for x in range(d + 1)]
    coeffs = []
    work = values
    for _ in range(d + 1):
        coeffs.append(work[0])
        work = [work[i + 1] - work[i] for i in range(len(work) - 1)]
    return BinomialForm(tuple(coeffs))


def from_binomial_basis(coeffs) -> Polynomial:
    return BinomialForm(tuple(Fraction(c) for c in coeffs)).to_polynomial()


def is_int_valued(f: Polynomial):
    """Whether f maps every integer into the integers, plus denominator data.

    Returns (flag, exponents) where exponents maps each prime p dividing the
    minimal common denominator m of f's coefficients to v_p(m).  Writing
    f = F/m with F integral, f(x + p^N t) == f(x) mod p whenever
    N >= 1 + v_p(m), so the exponents bound how far residues must be read.
    """
    flag = to_binomial_basis(f).is_integral
    m = f.denominator_lcm()
    exponents = {p: vp_int(m, p) for p in prime_factors(m)} if m > 1 else {}
    return flag, exponents


def _binomial_digit_bound(degree: int, p: int) -> int:
    """Smallest L with p^L > degree; C(x, k) mod p only sees x mod p^L for k <= degree."""
    if degree <= 0:
        return 0
    L = 0
    q = 1
    while q <= degree:
        q *= p
        L += 1
    return L


def p_integral_binomial(f: Polynomial, p: int) -> bool:
    """All binomial coefficients of f have v_p >= 0."""
    return all(vp(c, p) >= 0 for c in to_binomial_basis(f).coeffs)


def residue_image(f: Polynomial, p: int) -> frozenset:
    """The set { f(x) mod p : x in Z }, computed over one exact period.

    Requires every binomial coefficient of f to be p-integral.  One full
    period of f mod p is p^N where N may be taken as 1 + v_p(m) (m the
    common denominator) or as the number of base-p digits of deg f
    (binomials C(X,k) mod p only read that many digits); the smaller bound
    is used.
    """
    require_prime(p)
    if not p_integral_binomial(f, p):
        raise DomainError(f"{f} is not p-integrally valued at p={p}")
    m = f.denominator_lcm()
    n_coeff = 1 + (vp_int(m, p) if m % p == 0 else 0)
    n_digits = _binomial_digit_bound(f.degree, p)
    period = p ** min(n_coeff, n_digits)
    out = set()
    for x in range(period):
        out.add(padic_residue(f(x), p, 1).value)
    return frozenset(out)


# -- gcd and square roots in Q[X] --------------------------------------------


def bezout_gcd_qx(f: Polynomial, g: Polynomial):
    """Monic gcd h of f, g in Q[X] with multipliers: u*f + v*g = h exactly."""
    if f.is_zero and g.is_zero:
        raise DomainError("gcd of two zero polynomials is undefined")
    r0, r1 = f, g
    s0, s1 = Polynomial.one(), Polynomial.zero()
    t0, t1 = Polynomial.zero(), Polynomial.one()
    while not r1.is_zero:
        q, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.leading_coefficient
    return r0 / lc, s0 / lc, t0 / lc


def bezout_gcd_many(polys):
    """Monic gcd of several polynomials with one multiplier per input.

    Zero entries get a zero multiplier.  Returns (h, multipliers) with
    sum(multipliers[i] * polys[i]) == h.
    """
    polys = list(polys)
    if all(q.is_zero for q in polys):
        raise DomainError("gcd of all-zero family is undefined")
    h = Polynomial.zero()
    mults = []
    for q in polys:
        if q.is_zero:
            mults.append(Polynomial.zero())
            continue
        if h.is_zero:
            lc = q.leading_coefficient
            h = q / lc
            mults = [m * 0 for m in mults]
            mults.append(Polynomial.constant(Fraction(1) / lc))
            continue
        h2, a, b = bezout_gcd_qx(h, q)
        mults = [a * m for m in mults]
        mults.append(b)
        h = h2
    return h, mults


def poly_sqrt(h: Polynomial):
    """Exact g with g*g == h and positive leading coefficient, else None."""
    if h.is_zero:
        return Polynomial.zero()
    if h.degree % 2 != 0:
        return None
    n = h.degree // 2
    lead = frac_sqrt(h.leading_coefficient)
    if lead is None:
        return None
    g = [Fraction(0)] * (n + 1)
    g[n] = lead
    for k in range(n - 1, -1, -1):
        acc = Fraction(0)
        for i in range(k + 1, n):
            j = n + k - i
            if k < j <= n:
                acc += g[i] * g[j]
        g[k] = (h.coefficient(n + k) - acc) / (2 * lead)
    candidate = Polynomial(g)
    if candidate * candidate == h:
        return candidate
    return None


def integer_content(f: Polynomial) -> Fraction:
    """gcd of numerators over lcm of denominators (0 for the zero polynomial)."""
    if f.is_zero:
        return Fraction(0)
    num = 0
    for c in f.coeffs:
        num = gcd(num, abs(c.numerator))
    return Fraction(num, f.denominator_lcm())
