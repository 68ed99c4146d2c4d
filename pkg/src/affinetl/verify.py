"""
Named, seeded check batteries behind the ``verify`` command.

Every battery returns a list of (name, ok, detail) results and is fully
deterministic for a fixed seed.  The checks mirror the test suite at a
smaller default size so they run in about a second from the command line.
"""
from __future__ import annotations

import random
from typing import NamedTuple

from .algebra import TLElement, chi, from_g_word, gen, multiply, psi
from .coxeter import (
    CoxeterGraph,
    FcWord,
    _appendable,
    _cartier_foata_letters,
    affine,
    path,
)
from .morphisms import BraidWord, E_map, F_map, braid_lift, include, widen
from .scalars import DELTA, ONE, Q, V, Scalar
from .traces import (
    TraceParamsTL2,
    build_xz,
    generic_trace2,
    invariant,
    jones_trace,
    rho,
    solve_alpha_beta,
)


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


SUITES = ("relations", "traces", "markov", "paper-identities")


# ---------------------------------------------------------------------------
# seeded generators shared with the test-suite


def random_scalar(rng: random.Random) -> Scalar:
    num = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
    den = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 2)))
    return Scalar(num if any(num) else (1,), den if any(den) else (1,))


def random_fc_letters(g: CoxeterGraph, rng: random.Random, maxlen: int):
    word: tuple = ()
    for _ in range(rng.randrange(maxlen + 1)):
        choices = [s for s in range(g.gens) if _appendable(g, word, s)]
        if not choices:
            break
        word = word + (rng.choice(choices),)
    return _cartier_foata_letters(g, word)


def random_element(g: CoxeterGraph, rng: random.Random, terms: int = 2,
                   maxlen: int = 5) -> TLElement:
    out = TLElement.zero(g)
    for _ in range(terms):
        out = out + TLElement.monomial(
            g, random_fc_letters(g, rng, maxlen), random_scalar(rng)
        )
    return out


def random_braid(gens: int, rng: random.Random, maxlen: int = 6) -> BraidWord:
    letters = tuple(
        (rng.randrange(gens), rng.choice((1, -1)))
        for _ in range(rng.randrange(maxlen + 1))
    )
    return BraidWord(gens, letters)


def braid_relators(gens: int):
    """Relator words of the affine braid group: commutations and triple
    moves for the tl-adjacent pairs (there are none on 2 strands)."""
    g = affine(gens)
    out = []
    for s in range(gens):
        for t in range(s + 1, gens):
            if g.commutes(s, t):
                out.append(((s, 1), (t, 1), (s, -1), (t, -1)))
            elif g.tl_adjacent(s, t):
                out.append(((s, 1), (t, 1), (s, 1), (t, -1), (s, -1), (t, -1)))
    return out


# ---------------------------------------------------------------------------


def _v_relation(x: TLElement, y: TLElement) -> TLElement:
    """x y x + x y + y x + x + y + 1, which vanishes on tl-adjacent pairs."""
    one = TLElement.one(x.graph)
    return (
        multiply(multiply(x, y), x) + multiply(x, y) + multiply(y, x) + x + y + one
    )


def check_relations(g: CoxeterGraph) -> list[CheckResult]:
    """The defining relations of the algebra over g, on g-generators."""
    out = []
    one = TLElement.one(g)
    name = f"{g}"
    ok_quad = all(
        multiply(gen("g", s, g), gen("g", s, g))
        == gen("g", s, g).scale(Q - ONE) + one.scale(Q)
        for s in range(g.gens)
    )
    out.append(CheckResult(f"quadratic[{name}]", ok_quad))
    ok_comm, ok_braid, ok_v = True, True, True
    for s in range(g.gens):
        for t in range(s + 1, g.gens):
            gs, gt = gen("g", s, g), gen("g", t, g)
            if g.commutes(s, t):
                ok_comm &= multiply(gs, gt) == multiply(gt, gs)
            elif g.tl_adjacent(s, t):
                ok_braid &= multiply(multiply(gs, gt), gs) == multiply(
                    multiply(gt, gs), gt
                )
                ok_v &= _v_relation(gs, gt).is_zero()
    out.append(CheckResult(f"commutation[{name}]", ok_comm))
    out.append(CheckResult(f"triple-move[{name}]", ok_braid))
    out.append(CheckResult(f"v-vanishing[{name}]", ok_v))
    return out


def suite_relations(seed: int, gens: int = 4) -> list[CheckResult]:
    out = []
    for m in range(2, gens + 1):
        out.extend(check_relations(affine(m)))
    for n in range(1, gens):
        out.extend(check_relations(path(n)))
    rng = random.Random(seed)
    ok_assoc = True
    ok_conf = True
    for m in (2, 3, 4):
        g = affine(m)
        for _ in range(20):
            x, y, z = (random_element(g, rng, 2, 4) for _ in range(3))
            ok_assoc &= multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
            left = multiply(x, y, order="left")
            ok_conf &= left == multiply(x, y, order="right")
            ok_conf &= left == multiply(x, y, order="concat", rng=rng)
    out.append(CheckResult("associativity[sampled]", ok_assoc))
    out.append(CheckResult("confluence[sampled]", ok_conf))
    return out


def suite_traces(seed: int, gens: int = 4) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    p1 = path(1)
    t1 = gen("T", 0, p1)
    out.append(CheckResult("trace[T]=1", jones_trace(t1) == ONE))
    out.append(
        CheckResult("trace[1]=-(1+q)/v", jones_trace(TLElement.one(p1)) == -(ONE + Q) / V)
    )
    out.append(
        CheckResult(
            "trace[T^3]=trefoil",
            jones_trace(multiply(multiply(t1, t1), t1)) == -(Q ** 4) + Q ** 3 + Q,
        )
    )
    g3 = affine(3)
    out.append(CheckResult("rho[1]", rho(TLElement.one(g3)) == (ONE + Q) ** 2 / Q))
    out.append(CheckResult("rho[f_s1]", rho(TLElement.monomial(g3, (0,))) == ONE))
    out.append(
        CheckResult("rho[f_s1s2]", rho(TLElement.monomial(g3, (0, 1))) == Q / (ONE + Q) ** 2)
    )
    ok_sym = True
    for m in range(2, gens + 1):
        g = affine(m)
        for _ in range(20):
            x, y = random_element(g, rng, 2, 4), random_element(g, rng, 2, 4)
            ok_sym &= rho(multiply(x, y)) == rho(multiply(y, x))
    out.append(CheckResult("rho-symmetry[sampled]", ok_sym))
    ok_cls = True
    for n in range(2, gens + 1):
        g, sub = path(n), path(n - 1)
        for _ in range(15):
            b0 = random_element(sub, rng, 2, 4)
            c0 = random_element(sub, rng, 2, 4)
            b, c = widen(b0, n), widen(c0, n)
            lhs = jones_trace(multiply(multiply(b, gen("T", n - 1, g)), c))
            ok_cls &= lhs == jones_trace(multiply(b0, c0))
    out.append(CheckResult("classical-markov[sampled]", ok_cls))
    ok_gen2 = True
    g2 = affine(2)
    alpha_values = {}

    def alpha(k):
        if k not in alpha_values:
            alpha_values[k] = random_scalar(rng)
        return alpha_values[k]

    params = TraceParamsTL2(random_scalar(rng), random_scalar(rng), alpha)
    for _ in range(25):
        x, y = random_element(g2, rng, 2, 6), random_element(g2, rng, 2, 6)
        ok_gen2 &= generic_trace2(params, multiply(x, y)) == generic_trace2(
            params, multiply(y, x)
        )
    out.append(CheckResult("rank2-generic-trace[sampled]", ok_gen2))
    return out


def suite_markov(seed: int, gens: int = 3) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for m in range(2, gens + 1):
        g, tgt = affine(m), affine(m + 1)
        ok_plus = ok_minus = ok_dilation = ok_psi = True
        for _ in range(20):
            h = random_element(g, rng, 2, 4)
            fh = F_map(h)
            ok_plus &= rho(multiply(fh, gen("T", m - 1, tgt))) == rho(h)
            ok_minus &= rho(multiply(fh, gen("T_inv", m - 1, tgt))) == rho(h)
            ok_dilation &= rho(fh) == -(ONE + Q) / V * rho(h)
            ok_psi &= rho(psi(h)) == rho(h)
        out.append(CheckResult(f"stabilization+[rank {m}]", ok_plus))
        out.append(CheckResult(f"stabilization-[rank {m}]", ok_minus))
        out.append(CheckResult(f"free-strand-dilation[rank {m}]", ok_dilation))
        out.append(CheckResult(f"rotation-invariance[rank {m}]", ok_psi))
        ok_inv = True
        for _ in range(10):
            b = random_braid(m, rng, 5)
            base = invariant(b)
            w = random_braid(m, rng, 3)
            ok_inv &= invariant(w * b * w.inverse()) == base
            rels = braid_relators(m)
            if rels:
                r = rng.choice(rels)
                cut = rng.randrange(len(b.letters) + 1)
                moved = BraidWord(m, b.letters[:cut] + r + b.letters[cut:])
                ok_inv &= invariant(moved) == base
            lifted = braid_lift(b)
            for e in (1, -1):
                stab = BraidWord(m + 1, lifted.letters + ((m, e),))
                ok_inv &= invariant(stab) == base
        out.append(CheckResult(f"link-invariance[rank {m}]", ok_inv))
    return out


def suite_product_identities(seed: int, kmax: int = 3) -> list[CheckResult]:
    out = []
    g3 = affine(3)
    fwd, rev = (0, 1, 2), (1, 0, 2)

    def mono(letters, c=ONE):
        return TLElement.monomial(g3, letters, c)

    ok = True
    for h in range(1, 4):
        for k in range(1, 4):
            lhs = multiply(mono(rev * k), mono(fwd * h))
            if h < k:
                ok &= lhs == mono(rev * (k - h), DELTA ** (3 * h))
            else:
                ok &= lhs == mono((1, 2) + fwd * (h - k), DELTA ** (3 * k - 1))
            lhs2 = multiply(mono(fwd * h), mono(rev * k))
            if h > k:
                ok &= lhs2 == mono(fwd * (h - k), DELTA ** (3 * k))
            else:
                ok &= lhs2 == mono((0, 2) + rev * (k - h), DELTA ** (3 * h - 1))
    out.append(CheckResult("orbit-power-products", ok))

    x1, z1 = build_xz(1)
    f2 = mono((1,))
    out.append(
        CheckResult(
            "x1*f2 closed form",
            multiply(x1, f2)
            == mono((0, 2, 1), -ONE / Q) + mono((0, 1), ONE / (ONE + Q)),
        )
    )
    out.append(
        CheckResult(
            "f2*z1 closed form",
            multiply(f2, z1) == mono((1, 2, 0), -Q) + mono((1, 0), Q / (ONE + Q)),
        )
    )
    ok_rec = multiply(x1, x1) == x1.scale(3 * DELTA) + build_xz(2)[0]
    ok_chi = True
    for i in range(1, 5):
        xi, zi = build_xz(i)
        ok_chi &= chi(xi) == zi
        if i >= 2:
            nxt = build_xz(i + 1)[0]
            ok_rec &= multiply(x1, xi) == build_xz(i - 1)[0].scale(
                DELTA ** 2
            ) + xi.scale(2 * DELTA) + nxt
    out.append(CheckResult("x-recurrence", ok_rec))
    out.append(CheckResult("chi(x)=z", ok_chi))
    try:
        alphas, betas, beta_revs = solve_alpha_beta(kmax)
        ok_ab = all(a == -V / (ONE + Q) for a in alphas)
        ok_ab &= betas[0] == -ONE / (ONE + Q) ** 3
        ok_ab &= beta_revs[0] == -(Q ** 3) / (ONE + Q) ** 3
        out.append(CheckResult("alpha-beta-solver", ok_ab))
    except Exception as exc:  # solver cross-checks internally
        out.append(CheckResult("alpha-beta-solver", False, repr(exc)))
    return out


def suite_tower(seed: int, gens: int = 4) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    ok_section = ok_square = True
    for m in range(2, gens + 1):
        for _ in range(10):
            x = random_element(path(m - 1), rng, 2, 4)
            ok_section &= E_map(include(x)) == x
            y = random_element(affine(m), rng, 2, 4)
            ok_square &= E_map(F_map(y)) == widen(E_map(y), m)
    out.append(CheckResult("collapse-of-inclusion=id", ok_section))
    out.append(CheckResult("tower-square-commutes", ok_square))
    ok_conj = True
    for m in range(3, gens + 2):
        src, tgt = affine(m - 1), affine(m)
        c = from_g_word(FcWord.from_letters(tgt, tuple(range(m - 2, -1, -1)) + (m - 1,)))
        for s in range(m - 1):
            lhs = multiply(c, F_map(gen("g", s, src)))
            rhs = multiply(F_map(gen("g", (s - 1) % (m - 1), src)), c)
            ok_conj &= lhs == rhs
    out.append(CheckResult("twist-conjugation", ok_conj))
    return out


def run_suite(suite: str, seed: int, gens: int = 4, kmax: int = 3) -> list[CheckResult]:
    if suite == "all":
        out = []
        for name in SUITES:
            out.extend(run_suite(name, seed, gens, kmax))
        return out
    runners = {
        "relations": lambda: suite_relations(seed, gens),
        "traces": lambda: suite_traces(seed, gens),
        "markov": lambda: suite_markov(seed, min(gens, 4)),
        "paper-identities": lambda: suite_product_identities(seed, kmax)
        + suite_tower(seed, gens),
    }
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}")
    try:
        return runners[suite]()
    except Exception as exc:  # a crashed battery is a failed check, not a crash
        return [CheckResult(f"{suite}[error]", False, repr(exc))]
