"""The closing worked instance: for the fixed matrix B = [[2, X], [X+1, 3]],
solve the four-term strong Bezout problem over the integer-valued polynomials
by the (beta, gamma) parametrization, verify the known solution exactly, and
search small parameter boxes for further solutions.

Every solution is packaged as a certificate whose named checks are all
recomputed from scratch, so certificates can be re-verified independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .arith import DomainError
from .matrices import (
    idempotent_check,
    poly_det2,
    poly_mat_mul,
    poly_matrix,
    poly_trace,
    unit_content_decide,
)
from .poly import Polynomial, is_int_valued, parse_polynomial, poly_sqrt

X = Polynomial.x()

B_MATRIX = poly_matrix(((2, X), (X + 1, 3)))

# the known solution parameters; the degree-3 coefficient of the printed g is
# corrupted in the source text, so it is re-derived and only the remaining
# coefficients are matched (see verify_known_solution)
KNOWN_BETA = Polynomial((13, 31, 20, -2, -5, -1))
KNOWN_GAMMA = Polynomial((0, 4, 4, 1))
PRINTED_G = Polynomial((-12, 8, 43, 22, -6, -6, -1))
GARBLED_G_INDEX = 3


class SolutionFailure(DomainError):
    """A candidate does not yield a valid certificate; names the failed check."""

    def __init__(self, failed_check: str, detail: str = ""):
        self.failed_check = failed_check
        message = f"check failed: {failed_check}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


CHECK_NAMES = (
    "u_int_valued",
    "alpha_int_valued",
    "beta_int_valued",
    "gamma_int_valued",
    "delta_int_valued",
    "relation_unit",
    "rank_one",
    "square_identity",
    "det_c_zero",
    "trace_bc_one",
    "bc_idempotent",
    "bc_nontrivial",
    "content_bc_unit",
)


@dataclass(frozen=True)
class ExampleCertificate:
    """A full solution record: 2*alpha + (X+1)*beta + X*gamma + 3*delta == 1
    with alpha*delta == beta*gamma, all parts integer-valued, and the
    equivalent matrix facts for C = [[alpha, beta], [gamma, delta]]."""

    beta: Polynomial
    gamma: Polynomial
    f: Polynomial
    g: Polynomial
    u: Polynomial
    alpha: Polynomial
    delta: Polynomial
    sign: int
    checks: dict

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "gamma": str(self.gamma),
            "f": str(self.f),
            "g": str(self.g),
            "u": str(self.u),
            "alpha": str(self.alpha),
            "delta": str(self.delta),
            "sign": self.sign,
            "checks": dict(self.checks),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExampleCertificate":
        return cls(
            beta=parse_polynomial(data["beta"]),
            gamma=parse_polynomial(data["gamma"]),
            f=parse_polynomial(data["f"]),
            g=parse_polynomial(data["g"]),
            u=parse_polynomial(data["u"]),
            alpha=parse_polynomial(data["alpha"]),
            delta=parse_polynomial(data["delta"]),
            sign=int(data["sign"]),
            checks={k: bool(v) for k, v in data["checks"].items()},
        )

    def re_verify(self) -> "ExampleCertificate":
        """Recompute the certificate from its own (beta, gamma, g, sign)."""
        return recover_solution(self.beta, self.gamma, self.g, self.sign)


def reduce_relation(beta: Polynomial, gamma: Polynomial):
    """The reduction step: f = (X+1)*beta + X*gamma - 1 and the discriminant
    f^2 - 24*beta*gamma whose squareness governs solvability."""
    for name, q in (("beta", beta), ("gamma", gamma)):
        if not is_int_valued(q)[0]:
            raise DomainError(f"{name} = {q} is not integer-valued")
    f = (X + 1) * beta + X * gamma - 1
    disc = f * f - 24 * beta * gamma
    return f, disc


def recover_solution(
    beta: Polynomial, gamma: Polynomial, g: Polynomial, sign: int
) -> ExampleCertificate:
    """Assemble and fully verify a certificate from (beta, gamma, g, sign).

    Requires g*g == f^2 - 24*beta*gamma exactly.  The candidate multiplier is
    u = (sign*g - 5f)/12; if it is integer-valued then alpha = 3u + f and
    delta = -2u - f complete the quadruple, and every named check is
    recomputed.  Raises SolutionFailure naming the first failing check.
    """
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    f, disc = reduce_relation(beta, gamma)
    if g * g != disc:
        raise DomainError(
            f"g^2 differs from the discriminant: g={g}, discriminant={disc}"
        )
    u = (g * sign - f * 5) / 12
    alpha = u * 3 + f
    delta = u * (-2) - f

    checks: dict = {}

    def record(name: str, ok: bool, detail: str = ""):
        checks[name] = ok
        if not ok:
            raise SolutionFailure(name, detail)

    record("u_int_valued", is_int_valued(u)[0], f"u = {u}")
    record("alpha_int_valued", is_int_valued(alpha)[0])
    record("beta_int_valued", is_int_valued(beta)[0])
    record("gamma_int_valued", is_int_valued(gamma)[0])
    record("delta_int_valued", is_int_valued(delta)[0])

    relation = alpha * 2 + (X + 1) * beta + X * gamma + delta * 3
    record("relation_unit", relation == Polynomial.one(), f"relation = {relation}")
    record("rank_one", alpha * delta == beta * gamma)
    lhs = (u * 12 + f * 5) ** 2
    record("square_identity", lhs == disc)

    C = poly_matrix(((alpha, beta), (gamma, delta)))
    record("det_c_zero", poly_det2(C).is_zero)
    BC = poly_mat_mul(B_MATRIX, C)
    record("trace_bc_one", poly_trace(BC) == Polynomial.one())
    idem, nontrivial = idempotent_check(BC)
    record("bc_idempotent", idem)
    record("bc_nontrivial", nontrivial)
    entries = tuple(e for row in BC for e in row)
    record("content_bc_unit", unit_content_decide(entries).unit)

    return ExampleCertificate(
        beta=beta,
        gamma=gamma,
        f=f,
        g=g,
        u=u,
        alpha=alpha,
        delta=delta,
        sign=sign,
        checks=checks,
    )


def verify_known_solution() -> ExampleCertificate:
    """Re-derive the known solution from its (beta, gamma) and verify it.

    The square root g of the discriminant is recomputed; it must agree with
    the printed g in every coefficient except possibly the corrupted
    degree-3 one, and recover_solution must succeed for one of the signs.
    """
    f, disc = reduce_relation(KNOWN_BETA, KNOWN_GAMMA)
    g = poly_sqrt(disc)
    if g is None:
        raise DomainError(
            "discriminant is not a perfect square, the embedded constants are "
            f"wrong: f^2 - 24*beta*gamma = {disc}"
        )
    agrees = False
    for candidate in (g, -g):
        deltas = [
            k
            for k in range(max(candidate.degree, PRINTED_G.degree) + 1)
            if candidate.coefficient(k) != PRINTED_G.coefficient(k)
        ]
        if all(k == GARBLED_G_INDEX for k in deltas):
            agrees = True
            break
    if not agrees:
        raise DomainError(
            f"recomputed square root {g} disagrees with the printed g beyond "
            f"the corrupted degree-{GARBLED_G_INDEX} coefficient"
        )
    failure = None
    for sign in (1, -1):
        try:
            cert = recover_solution(KNOWN_BETA, KNOWN_GAMMA, g, sign)
        except SolutionFailure as exc:
            failure = exc
            continue
        checks = dict(cert.checks)
        checks["printed_g_agreement"] = True
        return ExampleCertificate(
            beta=cert.beta,
            gamma=cert.gamma,
            f=cert.f,
            g=cert.g,
            u=cert.u,
            alpha=cert.alpha,
            delta=cert.delta,
            sign=cert.sign,
            checks=checks,
        )
    raise DomainError(f"known solution failed for both signs: {failure}")


def _exact_degree_candidates(deg, height: int):
    """Integer polynomials with the given exact degree and coefficients in
    [-height, height]; deg None stands for the zero polynomial."""
    if deg is None:
        yield Polynomial.zero()
        return
    span = range(-height, height + 1)
    lead_span = [c for c in span if c != 0]
    for lower in product(span, repeat=deg):
        for lead in lead_span:
            yield Polynomial(tuple(lower) + (lead,))


def _pair_height(beta: Polynomial, gamma: Polynomial) -> int:
    coeffs = list(beta.coeffs) + list(gamma.coeffs)
    return max((abs(c.numerator) for c in coeffs), default=0)


def bounded_search(max_deg: int, max_height: int, budget: int) -> list:
    """Exhaustive scan of integer-coefficient (beta, gamma) boxes.

    Candidates are visited in a fixed order: degree classes (zero, 0, 1, ...,
    max_deg) lexicographically in (deg beta, deg gamma), then increasing pair
    height (the max absolute coefficient over both), then coefficient tuples
    lexicographically.  Each pair counts against the budget; for each one
    whose discriminant is an exact square the certificate of the first
    working sign is collected.
    """
    if max_deg < 0 or max_height < 1:
        raise DomainError("bounds must be positive")
    results = []
    seen = 0
    classes = [None] + list(range(max_deg + 1))
    for deg_b in classes:
        for deg_g in classes:
            heights = [0] if (deg_b is None and deg_g is None) else range(
                1, max_height + 1
            )
            for h in heights:
                for beta in _exact_degree_candidates(deg_b, h):
                    for gamma in _exact_degree_candidates(deg_g, h):
                        if _pair_height(beta, gamma) != h:
                            continue
                        if seen >= budget:
                            return results
                        seen += 1
                        _, disc = reduce_relation(beta, gamma)
                        g = poly_sqrt(disc)
                        if g is None:
                            continue
                        for sign in (1, -1):
                            try:
                                results.append(
                                    recover_solution(beta, gamma, g, sign)
                                )
                                break
                            except SolutionFailure:
                                continue
    return results
