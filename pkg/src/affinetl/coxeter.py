"""
Dynkin graphs of affine-cycle and type-A-path kind, and the combinatorics of
fully commutative (FC) words over them.

Generators are integer indices.  On a path with m generators the indices
0..m-1 stand for s1..sm; on an affine cycle with m generators the indices
0..m-2 stand for s1..s(m-1) and index m-1 is the wrap generator, written
``a`` in text form.  Every unordered pair of distinct generators falls into
exactly one of three classes:

- commuting:     s t = t s,
- tl-adjacent:   the pair carries the length-3 relation s t s = (loop) * s
                 at the algebra level,
- free:          neither (only the affine cycle on 2 generators has these).

An :class:`FcWord` is the canonical representative of the commutation class
of a reduced word of an FC element: its Cartier-Foata normal form under the
total order 0 < 1 < ... < m-1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidGenerator, LengthLimitExceeded, NotFcWord, RankMismatch

AFFINE = "affine-cycle"
PATH = "type-a-path"

ENUM_LIMIT = 64


@dataclass(frozen=True)
class CoxeterGraph:
    kind: str
    gens: int

    def __post_init__(self):
        if self.kind == AFFINE:
            if self.gens < 2:
                raise RankMismatch("affine cycle needs at least 2 generators")
        elif self.kind == PATH:
            if self.gens < 0:
                raise RankMismatch("negative generator count")
        else:
            raise RankMismatch(f"unknown graph kind {self.kind!r}")

    @property
    def is_affine(self) -> bool:
        return self.kind == AFFINE

    def check_letter(self, s: int):
        if not isinstance(s, int) or not 0 <= s < self.gens:
            raise InvalidGenerator(f"letter {s!r} out of range for {self}")

    def commutes(self, s: int, t: int) -> bool:
        self.check_letter(s)
        self.check_letter(t)
        if s == t:
            raise InvalidGenerator("commutes() needs two distinct generators")
        if self.kind == PATH:
            return abs(s - t) >= 2
        if self.gens == 2:
            return False  # free pair: only the quadratic relations hold
        return (s - t) % self.gens not in (1, self.gens - 1)

    def tl_adjacent(self, s: int, t: int) -> bool:
        self.check_letter(s)
        self.check_letter(t)
        if s == t:
            raise InvalidGenerator("tl_adjacent() needs two distinct generators")
        if self.kind == PATH:
            return abs(s - t) == 1
        if self.gens == 2:
            return False
        return (s - t) % self.gens in (1, self.gens - 1)

    def letter_name(self, s: int) -> str:
        self.check_letter(s)
        if self.is_affine and s == self.gens - 1:
            return "a"
        return f"s{s + 1}"

    def parse_letter(self, text: str) -> int:
        if text == "a":
            if not self.is_affine:
                raise InvalidGenerator("letter 'a' only exists on affine graphs")
            return self.gens - 1
        if text.startswith("s") and text[1:].isdigit():
            k = int(text[1:])
            top = self.gens - 1 if self.is_affine else self.gens
            if 1 <= k <= top:
                return k - 1
        raise InvalidGenerator(f"bad generator letter {text!r} for {self}")

    def __str__(self):
        return f"{self.kind}({self.gens})"


def affine(m: int) -> CoxeterGraph:
    return CoxeterGraph(AFFINE, m)


def path(m: int) -> CoxeterGraph:
    return CoxeterGraph(PATH, m)


# ---------------------------------------------------------------------------
# redex scanning; shared with the algebra rewriting


def commutes(g: CoxeterGraph, s: int, t: int) -> bool:
    return g.commutes(s, t)


def tl_adjacent(g: CoxeterGraph, s: int, t: int) -> bool:
    return g.tl_adjacent(s, t)


@lru_cache(maxsize=None)
def _comm_table(g: CoxeterGraph):
    """m x m commutation table; a letter never commutes with itself."""
    m = g.gens
    return tuple(
        tuple(s != t and g.commutes(s, t) for t in range(m)) for s in range(m)
    )


@lru_cache(maxsize=None)
def _adj_table(g: CoxeterGraph):
    m = g.gens
    return tuple(
        tuple(s != t and g.tl_adjacent(s, t) for t in range(m)) for s in range(m)
    )


def _redex_between(g, word, i, j):
    """Classify the pair of equal letters at i < j, or return None.

    The pair is a redex when every strictly intervening letter commutes with
    word[i] (a square), or when exactly one fails to commute and that one is
    tl-adjacent (a sandwich, worth one loop factor).
    """
    s = word[i]
    comm = _comm_table(g)[s]
    noncomm = None
    for p in range(i + 1, j):
        if not comm[word[p]]:
            if noncomm is not None:
                return None
            noncomm = p
    if noncomm is None:
        return ("square", i, j, None)
    if _adj_table(g)[s][word[noncomm]]:
        return ("sandwich", i, j, noncomm)
    return None


def find_redexes(g: CoxeterGraph, word, first_from_right=False):
    """All redexes among consecutive equal-letter pairs, left to right.

    A pair with another occurrence of the same letter strictly between is
    never a redex (the letter neither commutes with nor is adjacent to
    itself), so consecutive pairs suffice.
    """
    last_seen = {}
    found = []
    for j, s in enumerate(word):
        i = last_seen.get(s)
        if i is not None:
            hit = _redex_between(g, word, i, j)
            if hit is not None:
                found.append(hit)
        last_seen[s] = j
    if first_from_right:
        return found[-1:]
    return found


def fc_check(g: CoxeterGraph, word) -> bool:
    """True iff the word is redex-free, i.e. a reduced word of an FC element.

    >>> fc_check(path(3), [0, 1, 0])
    False
    >>> fc_check(path(3), [1, 0, 2, 1])
    True
    """
    for s in word:
        g.check_letter(s)
    return not find_redexes(g, tuple(word), first_from_right=True)


class FcWord:
    """Canonical (Cartier-Foata) reduced word of a fully commutative element.

    >>> w = FcWord.from_letters(path(3), [2, 0, 1])
    >>> w.letters
    (0, 2, 1)
    >>> str(w)
    '[s1 s3 s2]'
    """

    __slots__ = ("graph", "letters")

    def __init__(self, graph: CoxeterGraph, letters: tuple[int, ...]):
        # trusted constructor: letters must already be canonical
        self.graph = graph
        self.letters = letters

    @classmethod
    def from_letters(cls, graph: CoxeterGraph, letters) -> "FcWord":
        letters = tuple(letters)
        if not fc_check(graph, letters):
            raise NotFcWord(f"word {letters} has a redex on {graph}")
        return cls(graph, _cartier_foata_letters(graph, letters))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, FcWord)
            and self.graph == other.graph
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.graph, self.letters))

    def sort_key(self):
        return (len(self.letters), self.letters)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "[" + " ".join(self.graph.letter_name(s) for s in self.letters) + "]"

    def __repr__(self):
        return f"FcWord({self.graph}, {self})"


def _cartier_foata_letters(g: CoxeterGraph, letters) -> tuple[int, ...]:
    """Greedy block factorization: each letter goes into the earliest block
    all of whose later blocks commute with it; blocks are sorted internally."""
    comm = _comm_table(g)
    blocks: list[list[int]] = []
    depth: dict = {}
    for s in letters:
        d = 0
        for t, dt in depth.items():
            if dt > d and not comm[s][t]:
                d = dt
        if d == len(blocks):
            blocks.append([])
        blocks[d].append(s)
        depth[s] = d + 1
    out = []
    for b in blocks:
        out.extend(sorted(b))
    return tuple(out)


def cartier_foata(g: CoxeterGraph, word) -> FcWord:
    """Canonical form of a redex-free word.

    >>> cartier_foata(path(3), [2, 0, 1]).letters
    (0, 2, 1)
    """
    word = tuple(word)
    if not fc_check(g, word):
        raise NotFcWord(f"word {word} has a redex on {g}")
    return FcWord(g, _cartier_foata_letters(g, word))


def rotate(w: FcWord, d: int) -> FcWord:
    """Shift every letter by d around the affine cycle and re-canonicalize."""
    if not w.graph.is_affine:
        raise RankMismatch("rotate is only defined on affine graphs")
    m = w.graph.gens
    return FcWord(w.graph, _cartier_foata_letters(w.graph, tuple((s + d) % m for s in w.letters)))


def reverse(w: FcWord) -> FcWord:
    """Reverse the word and re-canonicalize; an involution."""
    return FcWord(w.graph, _cartier_foata_letters(w.graph, tuple(reversed(w.letters))))


def _appendable(g: CoxeterGraph, word, s) -> bool:
    """Does word + (s,) stay redex-free?  Only the new pair needs checking."""
    for i in range(len(word) - 1, -1, -1):
        if word[i] == s:
            return _redex_between(g, word + (s,), i, len(word)) is None
    return True


def enumerate_fc(g: CoxeterGraph, maxlen: int, limit: int = ENUM_LIMIT):
    """One canonical FcWord per FC element of length <= maxlen, ordered by
    length then lexicographically.

    >>> [len(w) for w in enumerate_fc(path(2), 3)]
    [0, 1, 1, 2, 2]
    >>> len(enumerate_fc(path(3), 6))
    14
    """
    if maxlen > limit:
        raise LengthLimitExceeded(f"maxlen {maxlen} exceeds the limit {limit}")
    out = [FcWord(g, ())]
    level = {(): None}
    for _ in range(maxlen):
        nxt = {}
        for word in level:
            for s in range(g.gens):
                if _appendable(g, word, s):
                    nxt[_cartier_foata_letters(g, word + (s,))] = None
        level = nxt
        out.extend(FcWord(g, w) for w in sorted(level))
    return out


def parse_word(g: CoxeterGraph, text: str) -> tuple[int, ...]:
    """Whitespace-separated letters, no brackets: ``'s1 s2 a'``."""
    return tuple(g.parse_letter(tok) for tok in text.split())
