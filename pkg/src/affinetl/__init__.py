"""
Exact Temperley-Lieb algebras of classical type A and of the affine cycle
type, their Markov traces, and the resulting invariant of affine braid-word
closures.  Everything is computed over the field Q(v) of rational functions
in v = sqrt(q), so all results are exact.
"""

from .algebra import (
    DEFAULT_MAX_LEN,
    TLElement,
    append_letter,
    chi,
    element_from_json,
    element_to_json,
    format_element,
    from_g_word,
    gen,
    multiply,
    parse_element,
    psi,
    reduce_letters,
    to_g_basis,
)
from .coxeter import (
    CoxeterGraph,
    FcWord,
    affine,
    cartier_foata,
    commutes,
    enumerate_fc,
    fc_check,
    parse_word,
    path,
    reverse,
    rotate,
    tl_adjacent,
)
from .errors import (
    CrossCheckFailed,
    DivisionByZero,
    InvalidGenerator,
    LengthLimitExceeded,
    NotClassifiable,
    NotFcWord,
    ParseError,
    RankMismatch,
    SingularSystem,
)
from .morphisms import (
    BraidWord,
    E_map,
    F_map,
    braid_image,
    braid_lift,
    include,
    parse_braid,
    widen,
)
from .scalars import DELTA, ONE, Q, V, ZERO, Scalar, format_scalar, parse_scalar
from .traces import (
    FREE_STRAND_FACTOR,
    TraceParamsTL2,
    TraceParamsTL3,
    build_xz,
    classify_orbit3,
    generic_trace2,
    generic_trace3,
    invariant,
    jones_trace,
    rho,
    rho_params3,
    solve_alpha_beta,
)

__version__ = "0.1.0"
