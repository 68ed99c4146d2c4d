"""
Maps between the algebras in the tower, and braid words.

- ``F_map``  : affine rank m  -> affine rank m+1   (tower step)
- ``E_map``  : affine rank m  -> classical rank m-1 (collapse of the wrap
               generator onto a conjugated top generator)
- ``include``: classical rank n -> affine rank n+1  (letters unchanged)

Each map is defined on the invertible g-generators; a basis monomial is a
product of idempotent f-generators, so its image is the product of the
cached f-generator images and extending linearly is automatic.  Braid words
map into the algebras through the T-generator system.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    DEFAULT_MAX_LEN,
    TLElement,
    gen,
    multiply,
)
from .coxeter import CoxeterGraph, affine, path
from .errors import InvalidGenerator, ParseError, RankMismatch
from .scalars import ONE, Q


@dataclass(frozen=True)
class BraidWord:
    """A word in the affine braid group on ``gens`` generators: letters are
    (index, sign) pairs, sign +1 or -1."""

    gens: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.gens < 2:
            raise RankMismatch("braid words need at least 2 generators")
        for s, e in self.letters:
            if not 0 <= s < self.gens:
                raise InvalidGenerator(f"braid letter {s} out of range")
            if e not in (-1, 1):
                raise InvalidGenerator(f"braid exponent {e} must be +-1")

    @property
    def graph(self) -> CoxeterGraph:
        return affine(self.gens)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.gens, tuple((s, -e) for s, e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.gens != other.gens:
            raise RankMismatch("braid words over different groups")
        return BraidWord(self.gens, self.letters + other.letters)

    def free_reduce(self) -> "BraidWord":
        out: list = []
        for s, e in self.letters:
            if out and out[-1] == (s, -e):
                out.pop()
            else:
                out.append((s, e))
        return BraidWord(self.gens, tuple(out))

    def __str__(self):
        g = self.graph
        return " ".join(
            g.letter_name(s) + ("" if e == 1 else "^-1") for s, e in self.letters
        )


def parse_braid(text: str, gens: int) -> BraidWord:
    """Whitespace-separated letters ``s<k>`` / ``a``, inverted by a trailing
    ``^-1`` or ``'``."""
    g = affine(gens)
    letters = []
    for tok in text.split():
        e = 1
        if tok.endswith("^-1"):
            tok, e = tok[:-3], -1
        elif tok.endswith("'"):
            tok, e = tok[:-1], -1
        try:
            s = g.parse_letter(tok)
        except InvalidGenerator as exc:
            raise ParseError(str(exc)) from exc
        letters.append((s, e))
    return BraidWord(gens, tuple(letters))


def braid_image(b: BraidWord, max_len: int = DEFAULT_MAX_LEN) -> TLElement:
    """Image of a braid word in the affine algebra through T-generators."""
    g = b.graph
    out = TLElement.one(g)
    for s, e in b.letters:
        out = multiply(out, gen("T" if e == 1 else "T_inv", s, g), max_len=max_len)
    return out


def braid_lift(b: BraidWord) -> BraidWord:
    """One tower step at the braid level: plain letters are kept and each
    wrap letter becomes its three-letter conjugate one rank up."""
    m = b.gens
    letters: list = []
    for s, e in b.letters:
        if s < m - 1:
            letters.append((s, e))
        else:
            letters.extend([(m - 1, 1), (m, e), (m - 1, -1)])
    return BraidWord(m + 1, tuple(letters))


# ---------------------------------------------------------------------------
# algebra maps


@lru_cache(maxsize=None)
def _gen_images(kind: str, m: int) -> tuple:
    """g-generator images of the rank-m affine algebra under F or E."""
    if kind == "F":
        tgt = affine(m + 1)
        images = [gen("g", i, tgt) for i in range(m - 1)]
        conj = multiply(
            multiply(gen("g", m - 1, tgt), gen("g", m, tgt)), gen("g_inv", m - 1, tgt)
        )
        images.append(conj)
    elif kind == "E":
        tgt = path(m - 1)
        images = [gen("g", i, tgt) for i in range(m - 1)]
        chain = gen("g", m - 2, tgt)
        for i in range(m - 3, -1, -1):
            chain = multiply(multiply(gen("g", i, tgt), chain), gen("g_inv", i, tgt))
        images.append(chain)
    else:
        raise ValueError(kind)
    return tgt, tuple(images)


@lru_cache(maxsize=None)
def _f_gen_images(kind: str, m: int) -> tuple:
    """Images of the idempotent f-generators: (g-image + 1) / (q + 1)."""
    tgt, images = _gen_images(kind, m)
    one = TLElement.one(tgt)
    scale = (ONE + Q).inv()
    return tgt, tuple((img + one).scale(scale) for img in images)


@lru_cache(maxsize=None)
def _f_image(kind: str, m: int, letters: tuple[int, ...]) -> TLElement:
    """Image of the basis monomial f_w; a homomorphism sends the product of
    f-generators along the word to the product of their images."""
    tgt, images = _f_gen_images(kind, m)
    if not letters:
        return TLElement.one(tgt)
    return multiply(_f_image(kind, m, letters[:-1]), images[letters[-1]])


def _apply_map(kind: str, x: TLElement) -> TLElement:
    if not x.graph.is_affine:
        raise RankMismatch(f"{kind}_map expects an affine-algebra element")
    m = x.graph.gens
    tgt, _ = _gen_images(kind, m)
    out = TLElement.zero(tgt)
    for w, c in x.terms.items():
        out = out + _f_image(kind, m, w.letters).scale(c)
    return out


def _map_g_word(kind: str, m: int, letters: tuple[int, ...]) -> TLElement:
    """g-word image, used by tests to cross-check the f-monomial route."""
    tgt, images = _gen_images(kind, m)
    out = TLElement.one(tgt)
    for s in letters:
        out = multiply(out, images[s])
    return out


def F_map(x: TLElement) -> TLElement:
    """Tower step: affine rank m -> affine rank m+1."""
    return _apply_map("F", x)


def E_map(x: TLElement) -> TLElement:
    """Collapse onto the classical algebra one rank down; a surjection, and
    the identity on the included classical subalgebra."""
    return _apply_map("E", x)


def _cast_words(x: TLElement, tgt: CoxeterGraph) -> TLElement:
    """Reinterpret every basis word over a graph with the same commutation
    pattern on the shared letters (plain-letter inclusions only)."""
    from .coxeter import FcWord

    out = {}
    for w, c in x.terms.items():
        for s in w.letters:
            tgt.check_letter(s)
        out[FcWord(tgt, w.letters)] = c
    return TLElement(tgt, out)


def include(x: TLElement) -> TLElement:
    """The classical algebra on n generators inside the affine one on n+1;
    basis words are unchanged."""
    if x.graph.is_affine:
        raise RankMismatch("include expects a classical-algebra element")
    return _cast_words(x, affine(x.graph.gens + 1))


def widen(x: TLElement, n: int) -> TLElement:
    """Classical inclusion path(m) -> path(n) for n >= m, letters unchanged."""
    if x.graph.is_affine or n < x.graph.gens:
        raise RankMismatch("widen expects a classical element and a larger rank")
    return _cast_words(x, path(n))
