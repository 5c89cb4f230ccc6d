"""Seeded randomized checks of the lattice-model action against the
matching elements b1, b2 and of det b1 = N(b2)."""

from __future__ import annotations

import random
from collections import Counter

from .beta_characters import psi_b
from .cyclotomic import CycNum, CycVal
from .local_field import FieldParams, chi
from .quaternion import QuatNum, cayley_series
from .sampling import rand_D1, rand_ext, rand_SL2
from .theta_lattice import (
    LATTICE_A, BigVec, FiniteHeisenberg, G1Action, G2Action, VVec, YFunc, action_scalar,
    dual_lattice, extract_b1, extract_b2, form_V, heisenberg_model, match_check, tensor,
    weil_HM_action, weil_operator,
)


def rand_in_lattice(ctx: FieldParams, L, rng: random.Random) -> BigVec:
    x = None
    for g in L.generators(ctx):
        t = g.scale(rng.randrange(ctx.p ** ctx.N))
        x = t if x is None else x + t
    return x


def rand_x(H: FiniteHeisenberg, rng: random.Random) -> tuple:
    """A random nonzero vector with root-of-unity entries on a few coordinates."""
    p = H.p
    vec = [CycNum(p) for _ in range(H.dim)]
    for j in rng.sample(range(H.dim), k=min(2, H.dim)):
        vec[j] = CycNum.of(CycVal(p, 1, rng.randrange(p)))
    return tuple(vec)


def rand_w_dual(ctx: FieldParams, rng: random.Random) -> QuatNum:
    """w = c + p^-1 d delta in (Gamma')* = O_E + P^-1 delta."""
    return QuatNum(rand_ext(ctx, rng), rand_ext(ctx, rng) * ctx.num(ctx.p) ** -1)


def identity_action(ctx: FieldParams, k: int, trials: int, rng: random.Random) -> dict:
    """Elements of SL2^(2k+1) and D1_(4k+2) fix sampled Y_k functions."""
    H = heisenberg_model(ctx)
    Ak = dual_lattice(LATTICE_A, ctx).scale(-k)
    out = Counter()
    for _ in range(trials):
        f = YFunc(rand_in_lattice(ctx, Ak, rng), rand_x(H, rng))
        for name, act in (("U1", G1Action(rand_SL2(ctx, rng, 2 * k + 1))), ("U2", G2Action(rand_D1(ctx, rng, 4 * k + 2)))):
            g = weil_HM_action(act, f, k, H)
            out[name] += all(a == b for a, b in zip(g.value, f.value))
    out["trials"] = trials
    return dict(out)


def scalar_laws(ctx: FieldParams, k: int, trials: int, rng: random.Random) -> dict:
    """The action scalar on U1^(k+1) (resp. D1_(2k+2)) against psi_b1 (resp. psi_b2)."""
    P = ctx.num(ctx.p)
    out = Counter()
    for _ in range(trials):
        a, b = rand_ext(ctx, rng), rand_ext(ctx, rng)
        w = rand_w_dual(ctx, rng)
        # matrix side: v in P^-k Gamma, w in (Gamma')*
        s1 = tensor(VVec(a * P ** -k, b * P ** -k), w)
        h1, h1b = rand_SL2(ctx, rng, k + 1), rand_SL2(ctx, rng, k + 1)
        act = G1Action(h1)
        sc = action_scalar(act, s1)
        out["b1"] += sc == psi_b(extract_b1(VVec(a, b), w, k), h1)
        out["b1_multiplicative"] += action_scalar(G1Action(h1 * h1b), s1) == sc * action_scalar(G1Action(h1b), s1)
        x = h1 - h1.unit_like()
        vv = VVec(a * P ** -k, b * P ** -k)
        head = form_V(vv, VVec(*_col(x.scale(-ctx.num(2).inv()), vv)))
        out["series_head"] += chi((head * w.norm()).trace()) == sc
        out["b1_operator_scalar"] += weil_operator(act, s1, heisenberg_model(ctx)).scalar() == sc
        # quaternion side: v in Gamma, w' in P^-k (Gamma')*
        w2 = QuatNum(w.a, w.c) * P ** -k
        s2 = tensor(VVec(a, b), w2)
        h2, h2b = rand_D1(ctx, rng, 2 * k + 2), rand_D1(ctx, rng, 2 * k + 2)
        sc2 = action_scalar(G2Action(h2), s2)
        b2 = extract_b2(VVec(a, b), w2, k)
        out["b2"] += sc2 == psi_b(b2, h2)
        out["b2_conjugated"] += sc2 == psi_b(-(w2.inv() * b2 * w2), h2)
        out["b2_multiplicative"] += action_scalar(G2Action(h2 * h2b), s2) == sc2 * action_scalar(G2Action(h2b), s2)
    out["trials"] = trials
    return dict(out)


def _col(m, v: VVec):
    return (m.a * v.a + m.b * v.b, m.c * v.a + m.d * v.b)


def matching(ctx: FieldParams, trials: int, rng: random.Random, ks=(1, 2)) -> dict:
    """det b1 = N(b2) = closed form and equal characteristic polynomials."""
    out = Counter()
    for i in range(trials):
        k = ks[i % len(ks)]
        a, b = rand_ext(ctx, rng), rand_ext(ctx, rng)
        r = match_check(VVec(a, b), rand_w_dual(ctx, rng), k)
        out["det_eq_norm"] += r["det_eq_norm"]
        out["closed_form"] += r["closed_form"]
        out["charpoly"] += r["charpoly"]
        if not r["det_b1"].is_zero():
            out[f"v(det b1)={r['det_b1'].valuation()}"] += 1
    out["trials"] = trials
    return dict(out)


def series_tail_vanishes(ctx: FieldParams, k: int, trials: int, rng: random.Random, terms: int = 12) -> dict:
    """chi of the trace pairing agrees between c(h) and its series head."""
    P = ctx.num(ctx.p)
    out = Counter()
    for _ in range(trials):
        h = rand_SL2(ctx, rng, k + 1)
        x = h - h.unit_like()
        full = cayley_series(x, terms)
        head = cayley_series(x, 1)
        v = VVec(rand_ext(ctx, rng) * P ** -k, rand_ext(ctx, rng) * P ** -k)
        w = rand_w_dual(ctx, rng)
        n = w.norm()
        a = chi((form_V(v, VVec(*_col(full, v))) * n).trace())
        b = chi((form_V(v, VVec(*_col(head, v))) * n).trace())
        out["agree"] += a == b
    out["trials"] = trials
    return dict(out)


def operator_reduction(ctx: FieldParams, k: int, trials: int, rng: random.Random) -> dict:
    """For h in SL2^k with 2 c(h) w in A the operator on the fibre over w
    is the scalar chi(<<w, c(h) w>>)."""
    H = heisenberg_model(ctx)
    Ak = dual_lattice(LATTICE_A, ctx).scale(-k)
    out = Counter()
    for _ in range(trials):
        act = G1Action(rand_SL2(ctx, rng, k))
        w = rand_in_lattice(ctx, Ak, rng)
        if not LATTICE_A.contains(act.cayley_apply(w).scale(2)):
            continue
        out["applicable"] += 1
        out["agree"] += weil_operator(act, w, H).scalar() == action_scalar(act, w)
    out["trials"] = trials
    return dict(out)
