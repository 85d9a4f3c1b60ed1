"""Exact computations with integer-valued polynomials.

Core pieces: p-adic valuations and residues, polynomial algebra over Q with
the binomial-basis transform, greedy orderings with generalized factorial
valuations and their interpolation bases, classification of finite sequence
windows, membership at the points of the prime spectrum, Smith normal form
with transforms, matrix-content certificates, and an exactly verified
solution of the four-term strong Bezout problem for one concrete 2x2 matrix.
"""

from .arith import (
    INF,
    DomainError,
    Infinity,
    InputParseError,
    PAdicResidue,
    ext_gcd,
    padic_residue,
    vp,
)
from .example_lab import (
    ExampleCertificate,
    SolutionFailure,
    bounded_search,
    recover_solution,
    reduce_relation,
    verify_known_solution,
)
from .matrices import (
    ContentVerdict,
    SNFResult,
    UcsReport,
    idempotent_check,
    snf_with_transforms,
    strong_bezout_z,
    trace_combination_search,
    trace_combination_z,
    trace_normalize,
    ucs_pair_check,
    unit_content_decide,
)
from .poly import (
    BinomialForm,
    Polynomial,
    bezout_gcd_qx,
    from_binomial_basis,
    is_int_valued,
    parse_polynomial,
    poly_sqrt,
    residue_image,
    to_binomial_basis,
)
from .sequences import (
    ImageDichotomy,
    SeqWindow,
    WindowClass,
    classify_window,
    image_window_classify,
    is_pseudo_limit,
)
from .spectrum import (
    IntEM,
    MaxCompletion,
    MaxSequence,
    MaxTrivial,
    PrimeAboveZero,
    TriVerdict,
    ideal_membership,
    parse_ideal,
    residue_representative,
    separation_check,
)
from .vorder import (
    ALL_INTEGERS,
    MembershipTarget,
    SubsetDescriptor,
    VOrdering,
    expand_in_basis,
    factorial_valuation,
    int_membership,
    regular_basis,
    v_ordering,
)

__version__ = "0.1.0"
