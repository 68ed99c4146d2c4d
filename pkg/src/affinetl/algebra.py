"""
Elements of the Temperley-Lieb algebras over a Dynkin graph, as sparse linear
combinations of the idempotent-generator monomial basis {f_w : w FC}.

Multiplication is monomial: the product of two basis words rewrites, by the
two rules below, to a loop-parameter power times a single basis word.

  square    ... s .. X .. s ...  ->  drop the later s          (X commutes)
  sandwich  ... s .. t .. s ...  ->  drop t and the later s,   (t adjacent,
                                     gain one DELTA factor      rest commute)

On the affine cycle with two generators neither rule ever fires across a
nonempty gap, which leaves exactly the two idempotent relations.

The invertible generator systems g and T are linear combinations of f-basis
elements:  g = (q+1) f - 1  and  T = v g.
"""
from __future__ import annotations

from functools import lru_cache

from .coxeter import (
    CoxeterGraph,
    FcWord,
    _adj_table,
    _cartier_foata_letters,
    _comm_table,
    rotate as _rotate_word,
    reverse as _reverse_word,
)
from .errors import LengthLimitExceeded, ParseError, RankMismatch
from .scalars import ONE, Q, V, Scalar, delta_pow, parse_scalar, qp1_pow

DEFAULT_MAX_LEN = 64


# ---------------------------------------------------------------------------
# word rewriting


def reduce_letters(g: CoxeterGraph, letters, max_len: int = DEFAULT_MAX_LEN, rng=None):
    """Rewrite a raw word to its normal form.

    Returns ``(k, word)`` with the input monomial equal to DELTA^k times the
    monomial of the reduced word.  The default strategy scans occurrences
    right to left and applies the first applicable rule; passing an ``rng``
    picks a random redex instead (used to probe confluence).
    """
    if len(letters) > max_len:
        raise LengthLimitExceeded(f"word of length {len(letters)} exceeds cap {max_len}")
    comm = _comm_table(g)
    adj = _adj_table(g)
    word = list(letters)
    for s in word:
        g.check_letter(s)

    def classify(i, j):
        # the redex test for the consecutive equal-letter pair (i, j)
        s = word[i]
        cs = comm[s]
        noncomm = None
        for p in range(i + 1, j):
            if not cs[word[p]]:
                if noncomm is not None:
                    return None
                noncomm = p
        if noncomm is None:
            return (i, j, None)
        if adj[s][word[noncomm]]:
            return (i, j, noncomm)
        return None

    loops = 0
    while True:
        prev_occ = [None] * len(word)
        last_seen: dict = {}
        for j, s in enumerate(word):
            if s in last_seen:
                prev_occ[j] = last_seen[s]
            last_seen[s] = j
        hit = None
        if rng is None:
            for j in range(len(word) - 1, -1, -1):
                if prev_occ[j] is not None:
                    hit = classify(prev_occ[j], j)
                    if hit is not None:
                        break
        else:
            found = [
                h
                for j in range(len(word))
                if prev_occ[j] is not None
                for h in [classify(prev_occ[j], j)]
                if h is not None
            ]
            if found:
                hit = found[rng.randrange(len(found))]
        if hit is None:
            return loops, tuple(word)
        i, j, t = hit
        del word[j]
        if t is not None:
            del word[t]
            loops += 1


def append_letter(scale: Scalar, w: FcWord, s: int):
    """Multiply the monomial ``scale * f_w`` by the generator f_s.

    Returns ``(c, w2)`` with  scale * f_w * f_s = c * f_w2.

    >>> from .coxeter import path
    >>> c, w = append_letter(ONE, FcWord.from_letters(path(3), (0, 1, 2)), 0)
    >>> (str(c) == str(delta_pow(1)), w.letters)
    (True, (0, 2))
    """
    w.graph.check_letter(s)
    k, letters = reduce_letters(w.graph, w.letters + (s,))
    return scale * delta_pow(k), FcWord(w.graph, _cartier_foata_letters(w.graph, letters))


# ---------------------------------------------------------------------------


class TLElement:
    """A finite linear combination FcWord -> Scalar over one graph.

    Treat instances as immutable; several caches hand out shared objects.
    """

    __slots__ = ("graph", "terms")

    def __init__(self, graph: CoxeterGraph, terms: dict):
        self.graph = graph
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, graph) -> "TLElement":
        return cls(graph, {})

    @classmethod
    def one(cls, graph) -> "TLElement":
        return cls(graph, {FcWord(graph, ()): ONE})

    @classmethod
    def monomial(cls, graph, letters, coeff: Scalar = ONE) -> "TLElement":
        return cls(graph, {FcWord.from_letters(graph, letters): coeff})

    # -- linear structure ----------------------------------------------------

    def _require_same_graph(self, other):
        if self.graph != other.graph:
            raise RankMismatch(f"mixing {self.graph} with {other.graph}")

    def __add__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        self._require_same_graph(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Scalar(())) + c
        return TLElement(self.graph, out)

    def __neg__(self):
        return TLElement(self.graph, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TLElement":
        c = Scalar._coerce(c)
        return TLElement(self.graph, {w: c * cw for w, cw in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return multiply(self, other)
        if Scalar._coerce(other) is not None:
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if Scalar._coerce(other) is not None:
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined on elements")
        out = TLElement.one(self.graph)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, TLElement)
            and self.graph == other.graph
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, letters) -> Scalar:
        key = FcWord(self.graph, _cartier_foata_letters(self.graph, tuple(letters)))
        return self.terms.get(key, Scalar(()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __repr__(self):
        return f"TLElement({self.graph}, {format_element(self)})"

    def __str__(self):
        return format_element(self)


def multiply(x: TLElement, y: TLElement, *, max_len: int = DEFAULT_MAX_LEN,
             order: str = "left", rng=None) -> TLElement:
    """Bilinear product; per basis pair the words concatenate and rewrite.

    ``order`` picks the fold association ("left", "right", or "concat" for a
    single whole-word reduction); all agree by confluence and the choice is
    exposed only so tests can compare strategies.
    """
    if x.graph != y.graph:
        raise RankMismatch(f"mixing {x.graph} with {y.graph}")
    g = x.graph
    out: dict = {}
    for wx, cx in x.terms.items():
        for wy, cy in y.terms.items():
            if order == "left":
                loops, word = 0, wx.letters
                for s in wy.letters:
                    k, word = reduce_letters(g, word + (s,), max_len)
                    loops += k
            elif order == "right":
                loops, word = 0, wy.letters
                for s in reversed(wx.letters):
                    k, word = reduce_letters(g, (s,) + word, max_len)
                    loops += k
            elif order == "concat":
                loops, word = reduce_letters(g, wx.letters + wy.letters, max_len, rng)
            else:
                raise ValueError(f"unknown order {order!r}")
            w = FcWord(g, _cartier_foata_letters(g, word))
            c = cx * cy * delta_pow(loops)
            acc = out.get(w)
            out[w] = c if acc is None else acc + c
    return TLElement(g, out)


# ---------------------------------------------------------------------------
# generator systems


def gen(style: str, s: int, graph: CoxeterGraph) -> TLElement:
    """The generator ``s`` in one of the systems f, g, T, g_inv, T_inv.

    g satisfies g^2 = (q-1) g + q; T = v g; f = (g+1)/(q+1) is idempotent.
    """
    graph.check_letter(s)
    unit = FcWord(graph, ())
    mono = FcWord(graph, (s,))
    qp1 = ONE + Q
    if style == "f":
        return TLElement(graph, {mono: ONE})
    if style == "g":
        return TLElement(graph, {mono: qp1, unit: -ONE})
    if style == "T":
        return TLElement(graph, {mono: V * qp1, unit: -V})
    if style == "g_inv":
        return TLElement(graph, {mono: qp1 / Q, unit: -ONE})
    if style == "T_inv":
        return TLElement(graph, {mono: qp1 / (Q * V), unit: -ONE / V})
    raise ValueError(f"unknown generator style {style!r}")


@lru_cache(maxsize=None)
def _g_word_element(graph: CoxeterGraph, letters: tuple[int, ...]) -> TLElement:
    if not letters:
        return TLElement.one(graph)
    return multiply(_g_word_element(graph, letters[:-1]), gen("g", letters[-1], graph))


def from_g_word(w: FcWord) -> TLElement:
    """The product of g-generators along the word, expanded in the f-basis."""
    return _g_word_element(w.graph, w.letters)


def to_g_basis(x: TLElement) -> dict:
    """Coordinates of x in the g-word basis, by triangular elimination from
    the longest f-words downward.  Round-trips with :func:`from_g_word`."""
    rem = dict(x.terms)
    out: dict = {}
    while rem:
        w = max(rem, key=lambda u: u.sort_key())
        lead = rem[w] / qp1_pow(len(w))
        out[w] = lead
        for u, cu in _g_word_element(x.graph, w.letters).terms.items():
            c = rem.get(u, Scalar(())) - lead * cu
            if c.is_zero():
                rem.pop(u, None)
            else:
                rem[u] = c
    return out


def psi(x: TLElement, d: int = 1) -> TLElement:
    """Rotate every basis word around the affine cycle; an automorphism."""
    if not x.graph.is_affine:
        raise RankMismatch("psi is only defined on affine graphs")
    out: dict = {}
    for w, c in x.terms.items():
        u = _rotate_word(w, d)
        out[u] = out.get(u, Scalar(())) + c
    return TLElement(x.graph, out)


def chi(x: TLElement) -> TLElement:
    """Reverse every basis word and bar every coefficient; an involution."""
    out: dict = {}
    for w, c in x.terms.items():
        u = _reverse_word(w)
        out[u] = out.get(u, Scalar(())) + c.bar()
    return TLElement(x.graph, out)


# ---------------------------------------------------------------------------
# text and JSON forms


def format_element(x: TLElement, basis: str = "f") -> str:
    """``term (+ term)*`` with ``term = (scalar)*[letters]``; "0" when empty."""
    if basis == "g":
        terms = sorted(to_g_basis(x).items(), key=lambda t: t[0].sort_key())
    elif basis == "f":
        terms = x.sorted_terms()
    else:
        raise ValueError(f"unknown basis {basis!r}")
    if not terms:
        return "0"
    parts = []
    for w, c in terms:
        body = str(w)
        parts.append(body if c.is_one() else f"({c})*{body}")
    return " + ".join(parts)


def _split_top_level_terms(text: str):
    """Split on +/- that directly follow a closing bracket; yields signed
    term strings.  Signs inside scalar factors sit behind parentheses or
    operators and are never split points."""
    terms = []
    sign = 1
    if text.lstrip().startswith(("+", "-")):
        stripped = text.lstrip()
        if stripped[0] == "-":
            sign = -1
        text = stripped[1:]
    depth = 0
    start = 0
    prev_significant = ""
    for pos, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev_significant == "]":
            terms.append((sign, text[start:pos]))
            sign = 1 if ch == "+" else -1
            start = pos + 1
            prev_significant = ""
            continue
        if not ch.isspace():
            prev_significant = ch
    terms.append((sign, text[start:]))
    return terms


def parse_element(text: str, graph: CoxeterGraph) -> TLElement:
    """Parse the element grammar in the f-basis.

    >>> from .coxeter import affine
    >>> x = parse_element("(-1/q)*[s1 a s2] + (1/(1+q))*[s1 s2]", affine(3))
    >>> len(x.terms)
    2
    """
    if not text.strip():
        raise ParseError("empty element text")
    out = TLElement.zero(graph)
    for sign, term in _split_top_level_terms(text):
        term = term.strip()
        bra = term.find("[")
        ket = term.rfind("]")
        if bra < 0 or ket < 0 or ket < bra:
            raise ParseError(f"term {term!r} has no [word]")
        if term[ket + 1:].strip():
            raise ParseError(f"unexpected text after ']' in {term!r}")
        head = term[:bra].rstrip()
        if head == "":
            coeff = ONE
        elif head.endswith("*"):
            coeff = parse_scalar(head[:-1])
        else:
            raise ParseError(f"expected '*' between scalar and word in {term!r}")
        letters = tuple(graph.parse_letter(tok) for tok in term[bra + 1:ket].split())
        mono = TLElement.monomial(graph, letters, coeff * sign)
        out = out + mono
    return out


def element_to_json(x: TLElement) -> list:
    return [
        {"coeff": str(c), "word": [x.graph.letter_name(s) for s in w.letters]}
        for w, c in x.sorted_terms()
    ]


def element_from_json(data, graph: CoxeterGraph) -> TLElement:
    out = TLElement.zero(graph)
    for item in data:
        letters = tuple(graph.parse_letter(tok) for tok in item["word"])
        out = out + TLElement.monomial(graph, letters, parse_scalar(item["coeff"]))
    return out
