"""
Trace functions on the two towers and the braid-closure invariant.

``jones_trace`` is the classical Markov trace on the path-graph algebras,
normalized so that the single positive generator in the T-system has trace 1
and adding a free strand multiplies the value by -(1+q)/sqrt(q).

``rho`` is the affine trace: collapse through ``E_map`` and take the
classical trace.  It is symmetric, invariant under the cycle rotation, and
satisfies the Markov conditions of the affine tower in both stabilization
signs; those properties are exercised by the test suite rather than assumed
anywhere in the code.

``generic_trace2`` and ``generic_trace3`` evaluate the rotation-invariant
linear functionals on the rank-2 and rank-3 affine algebras from their
defining value tables.  The rank-3 table distinguishes the two rotation-orbit
families of long basis words because the affine trace provably assigns them
different values (see :func:`solve_alpha_beta`); a ``uniform`` flag collapses
the two families onto one parameter sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .algebra import (
    DEFAULT_MAX_LEN,
    TLElement,
    _g_word_element,
    multiply,
    reduce_letters,
    to_g_basis,
)
from .coxeter import FcWord, _cartier_foata_letters, affine, path
from .errors import (
    CrossCheckFailed,
    LengthLimitExceeded,
    NotClassifiable,
    RankMismatch,
    SingularSystem,
)
from .morphisms import BraidWord, braid_image
from .scalars import DELTA, ONE, Q, V, Scalar, delta_pow

# trace value gained by a strand the word never touches: -(1+q)/sqrt(q)
FREE_STRAND_FACTOR = -(ONE + Q) / V


# factor per splitting at a top-generator f-occurrence: -sqrt(q)/(1+q)
SPLIT_FACTOR = -V / (ONE + Q)


def jones_trace(x: TLElement) -> Scalar:
    """The classical Markov trace of an element over a path graph."""
    if x.graph.is_affine:
        raise RankMismatch("jones_trace expects a classical-algebra element")
    n = x.graph.gens
    out = Scalar(())
    for w, c in x.terms.items():
        out = out + c * _trace_f_word(n, w.letters)
    return out


@lru_cache(maxsize=None)
def _trace_f_word(n: int, letters: tuple[int, ...]) -> Scalar:
    """Trace of the basis monomial f_w over path(n).

    The top generator occurs at most once in an FC path word.  If absent,
    the word lives one rank down and picks up the free-strand factor; if
    present, splitting b f_top c -> b c costs one split factor and the
    flanks multiply back into a single monomial times a loop power.
    """
    if n == 0:
        assert not letters
        return ONE
    top = n - 1
    occurrences = [i for i, s in enumerate(letters) if s == top]
    if not occurrences:
        return FREE_STRAND_FACTOR * _trace_f_word(n - 1, letters)
    assert len(occurrences) == 1, "top generator repeated in an FC path word"
    i = occurrences[0]
    g = path(n - 1)
    loops, word = reduce_letters(g, letters[:i] + letters[i + 1:])
    value = _trace_f_word(n - 1, _cartier_foata_letters(g, word))
    return SPLIT_FACTOR * delta_pow(loops) * value


def _trace_g_word(n: int, letters: tuple[int, ...]) -> Scalar:
    """Trace of a g-basis monomial by the rank-splitting recursion; the
    slower independent route kept for cross-checks.
    """
    if n == 0:
        assert not letters
        return ONE
    top = n - 1
    occurrences = [i for i, s in enumerate(letters) if s == top]
    if not occurrences:
        return FREE_STRAND_FACTOR * _trace_g_word(n - 1, letters)
    assert len(occurrences) == 1, "top generator repeated in an FC path word"
    i = occurrences[0]
    g = path(n - 1)
    product = multiply(
        _g_word_element(g, letters[:i]), _g_word_element(g, letters[i + 1:])
    )
    out = Scalar(())
    for w, c in to_g_basis(product).items():
        out = out + c * _trace_g_word(n - 1, w.letters)
    return out / V


def jones_trace_g_route(x: TLElement) -> Scalar:
    """jones_trace through the g-basis expansion; for cross-checking."""
    if x.graph.is_affine:
        raise RankMismatch("jones_trace expects a classical-algebra element")
    out = Scalar(())
    for w, c in to_g_basis(x).items():
        out = out + c * _trace_g_word(x.graph.gens, w.letters)
    return out


@lru_cache(maxsize=None)
def _rho_word(m: int, letters: tuple[int, ...]) -> Scalar:
    from .morphisms import _f_image

    return jones_trace(_f_image("E", m, letters))


def rho(x: TLElement) -> Scalar:
    """The affine Markov trace: collapse with E_map, then jones_trace.

    >>> rho(TLElement.one(affine(3))) == (ONE + Q) ** 2 / Q
    True
    >>> rho(TLElement.monomial(affine(3), (0,))) == ONE
    True
    """
    if not x.graph.is_affine:
        raise RankMismatch("rho expects an affine-algebra element")
    m = x.graph.gens
    out = Scalar(())
    for w, c in x.terms.items():
        out = out + c * _rho_word(m, w.letters)
    return out


def invariant(b: BraidWord, max_len: int = DEFAULT_MAX_LEN) -> Scalar:
    """The link invariant of the closure of an affine braid word.

    No writhe correction is applied: the trace satisfies both stabilization
    signs on the nose, so the raw composite is already invariant and the
    unknot receives value 1.

    >>> from .morphisms import parse_braid
    >>> print(invariant(parse_braid("s1 s1 s1", 2)))
    -v^8+v^6+v^2
    """
    return rho(braid_image(b, max_len=max_len))


# ---------------------------------------------------------------------------
# generic rotation-invariant traces at ranks 2 and 3


@dataclass(frozen=True)
class TraceParamsTL2:
    """Values on 1, on a single generator, and on the alternating words."""

    A0: Scalar
    A1: Scalar
    alpha: Callable[[int], Scalar]


def generic_trace2(p: TraceParamsTL2, x: TLElement) -> Scalar:
    """Evaluate the rank-2 functional: the basis words alternate between the
    two generators, so only the length matters."""
    if x.graph != affine(2):
        raise RankMismatch("generic_trace2 lives on the rank-2 affine algebra")
    out = Scalar(())
    for w, c in x.terms.items():
        l = len(w)
        if l == 0:
            v = p.A0
        elif l == 1:
            v = p.A1
        else:
            v = p.alpha(l // 2)
        out = out + c * v
    return out


@dataclass(frozen=True)
class TraceParamsTL3:
    """Values on the short words plus one parameter sequence per
    rotation-orbit family of long words; ``uniform`` collapses the second
    family onto the first."""

    B0: Scalar
    B1: Scalar
    B2: Scalar
    beta: Callable[[int], Scalar]
    beta_rev: Callable[[int], Scalar] | None = None
    uniform: bool = False

    def rev(self, k: int) -> Scalar:
        if self.uniform or self.beta_rev is None:
            return self.beta(k)
        return self.beta_rev(k)


_FWD_BASE = (0, 1, 2)  # s1 s2 a
_REV_BASE = (1, 0, 2)  # s2 s1 a
_FWD_PREFIX = ((), (0,), (0, 1))
_REV_PREFIX = ((), (1,), (1, 0))


@lru_cache(maxsize=None)
def _orbit_index(length: int) -> dict:
    """Canonical letters -> (family, k, rem) for rank-3 words of one length.

    Every basis word of length 3k+rem (k >= 1) is a rotation of the length-
    matching power-plus-prefix word of exactly one of the two families.
    """
    g = affine(3)
    k, rem = divmod(length, 3)
    table: dict = {}
    for family, base, prefixes in (
        ("fwd", _FWD_BASE, _FWD_PREFIX),
        ("rev", _REV_BASE, _REV_PREFIX),
    ):
        raw = base * k + prefixes[rem]
        for d in range(3):
            rotated = tuple((s + d) % 3 for s in raw)
            table[_cartier_foata_letters(g, rotated)] = (family, k, rem)
    return table


def classify_orbit3(w: FcWord) -> tuple[str, int, int]:
    """Which rotation-orbit family a rank-3 basis word of length >= 3 is in,
    together with (k, rem) where the length is 3k + rem."""
    if w.graph != affine(3) or len(w) < 3:
        raise RankMismatch("classification needs a rank-3 word of length >= 3")
    hit = _orbit_index(len(w)).get(w.letters)
    if hit is None:
        raise NotClassifiable(f"word {w} fits neither rotation-orbit family")
    return hit


def generic_trace3(p: TraceParamsTL3, x: TLElement) -> Scalar:
    """Evaluate the rank-3 functional from its value table."""
    if x.graph != affine(3):
        raise RankMismatch("generic_trace3 lives on the rank-3 affine algebra")
    out = Scalar(())
    for w, c in x.terms.items():
        l = len(w)
        if l == 0:
            v = p.B0
        elif l == 1:
            v = p.B1
        elif l == 2:
            v = p.B2
        else:
            family, k, rem = classify_orbit3(w)
            v = p.beta(k) if family == "fwd" else p.rev(k)
            if rem == 2:
                v = DELTA * v
        out = out + c * v
    return out


# ---------------------------------------------------------------------------
# the rank-3 product machinery and the parameter solver


def build_xz(i: int, max_len: int = DEFAULT_MAX_LEN) -> tuple[TLElement, TLElement]:
    """The pair (x_i, z_i) of rank-3 elements whose powers of index 1 span
    the image of the rank-2 algebra under the tower step.

    x_1 is the tower image of the product of the two rank-2 generators;
    z_i is the image of x_i under chi (word reversal with q -> 1/q).
    """
    if 3 * i + 2 > max_len:
        raise LengthLimitExceeded(f"index {i} needs words longer than the cap {max_len}")
    g = affine(3)
    ratio = (ONE + Q) / Q
    plain = ONE + Q
    sgn_i = ONE if i % 2 == 0 else -ONE
    sgn_prev = -sgn_i
    a_word, b_word = (0, 2, 1), (0, 1, 2)
    x = (
        TLElement.monomial(g, a_word * i, sgn_i * ratio ** i)
        + TLElement.monomial(g, b_word * i, sgn_i * plain ** i)
        + TLElement.monomial(g, a_word * (i - 1) + (0, 2), sgn_prev * ratio ** (i - 1))
        + TLElement.monomial(g, b_word * (i - 1) + (0, 1), sgn_prev * plain ** (i - 1))
    )
    ar_word, br_word = (2, 1, 0), (1, 2, 0)
    z = (
        TLElement.monomial(g, ar_word * i, sgn_i * ratio ** i)
        + TLElement.monomial(g, br_word * i, sgn_i * plain ** i)
        + TLElement.monomial(g, (1, 0) + ar_word * (i - 1), sgn_prev * ratio ** (i - 1))
        + TLElement.monomial(g, (2, 0) + br_word * (i - 1), sgn_prev * plain ** (i - 1))
    )
    return x, z


def _solve_slot(elem: TLElement, rhs: Scalar, target: tuple, B, known: dict) -> Scalar:
    """Solve  sum_w c_w * slot(w) = rhs  for the single unknown slot."""
    unknown_coeff = Scalar(())
    acc = Scalar(())
    for w, c in elem.terms.items():
        l = len(w)
        if l <= 2:
            acc = acc + c * B[l]
            continue
        family, k, rem = classify_orbit3(w)
        factor = DELTA if rem == 2 else ONE
        if (family, k) == target:
            unknown_coeff = unknown_coeff + c * factor
        else:
            acc = acc + c * factor * known[(family, k)]
    if unknown_coeff.is_zero():
        raise SingularSystem(f"slot {target} does not occur in the expansion")
    return (rhs - acc) / unknown_coeff


def solve_alpha_beta(kmax: int, max_len: int = DEFAULT_MAX_LEN):
    """Solve for the trace values on the long basis words at ranks 2 and 3.

    Returns ``(alphas, betas, beta_revs)``, each a list of length kmax:
    alphas[k-1] is the rank-2 trace of the alternating word of length 2k,
    betas[k-1] / beta_revs[k-1] are the rank-3 trace values of the two
    orbit families at length 3k.  The betas come from linear slot equations
    driven by the products x_1^k f_{s2} and f_{s2} z_1^k; every solved value
    is cross-checked against the direct rho evaluation of the matching
    basis word and a mismatch raises :class:`CrossCheckFailed`.
    """
    g2, g3 = affine(2), affine(3)
    alphas = [
        rho(TLElement.monomial(g2, (0, 1) * k, ONE)) for k in range(1, kmax + 1)
    ]
    B = [
        rho(TLElement.one(g3)),
        rho(TLElement.monomial(g3, (0,))),
        rho(TLElement.monomial(g3, (0, 1))),
    ]
    x1, z1 = build_xz(1, max_len)
    f2 = TLElement.monomial(g3, (1,))
    known: dict = {}
    betas, beta_revs = [], []
    x_side, z_side = f2, f2
    for k in range(1, kmax + 1):
        x_side = multiply(x1, x_side, max_len=max_len)
        z_side = multiply(z_side, z1, max_len=max_len)
        rhs = -(V / (ONE + Q)) * alphas[k - 1]
        known[("rev", k)] = _solve_slot(x_side, rhs, ("rev", k), B, known)
        known[("fwd", k)] = _solve_slot(z_side, rhs, ("fwd", k), B, known)
        direct_fwd = rho(TLElement.monomial(g3, _FWD_BASE * k))
        direct_rev = rho(TLElement.monomial(g3, _REV_BASE * k))
        if known[("fwd", k)] != direct_fwd or known[("rev", k)] != direct_rev:
            raise CrossCheckFailed(
                f"slot values at k={k} disagree with the direct trace"
            )
        betas.append(known[("fwd", k)])
        beta_revs.append(known[("rev", k)])
    return alphas, betas, beta_revs


def rho_params3(kmax: int) -> TraceParamsTL3:
    """Parameter pack making generic_trace3 agree with rho on words of
    length at most 3*kmax + 2."""
    _, betas, beta_revs = solve_alpha_beta(kmax)
    g3 = affine(3)
    return TraceParamsTL3(
        B0=rho(TLElement.one(g3)),
        B1=rho(TLElement.monomial(g3, (0,))),
        B2=rho(TLElement.monomial(g3, (0, 1))),
        beta=lambda k: betas[k - 1],
        beta_rev=lambda k: beta_revs[k - 1],
    )
