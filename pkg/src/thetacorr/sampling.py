"""Random elements of the groups, produced with the Cayley transform so that
determinant and norm conditions hold exactly."""

from __future__ import annotations

import random

from .local_field import ExtNum, FieldParams
from .quaternion import QuatNum, cayley
from .unitary_groups import Mat2


def rand_int(ctx: FieldParams, rng: random.Random, digits: int | None = None) -> int:
    return rng.randrange(ctx.p ** (digits or ctx.N))


def rand_ext(ctx: FieldParams, rng: random.Random, val: int = 0) -> ExtNum:
    s = ctx.num(ctx.p) ** val if val else ctx.one()
    return ctx.ext(rand_int(ctx, rng), rand_int(ctx, rng)) * s


def rand_E1(ctx: FieldParams, rng: random.Random, level: int = 0) -> ExtNum:
    """Random element of E1_level (E1 itself when level == 0)."""
    y = ctx.num(rand_int(ctx, rng)) * ctx.num(ctx.p) ** level
    lam = cayley(ctx.alpha * y)
    if level == 0 and rng.random() < 0.5:
        lam = -lam
    return lam


def rand_traceless(ctx: FieldParams, rng: random.Random, level: int = 0) -> Mat2:
    s = ctx.p**level
    a, b, c = (rand_int(ctx, rng) * s for _ in range(3))
    return Mat2.of(ctx, a, b, c, -a)


def rand_SL2(ctx: FieldParams, rng: random.Random, level: int) -> Mat2:
    """Random element of SL2^level(O_F), level >= 1."""
    return cayley(rand_traceless(ctx, rng, level))


def rand_D0(ctx: FieldParams, rng: random.Random, level: int = 0) -> QuatNum:
    """Random traceless quaternion of valuation >= level."""
    pa, pc = ctx.p ** ((level + 1) // 2), ctx.p ** (level // 2)
    a = ctx.alpha * (rand_int(ctx, rng) * pa)
    c = ctx.ext(rand_int(ctx, rng) * pc, rand_int(ctx, rng) * pc)
    return QuatNum(a, c)


def rand_D1(ctx: FieldParams, rng: random.Random, level: int = 0) -> QuatNum:
    """Random element of D1_level; level 0 mixes in E1 to reach all of D1."""
    h = cayley(rand_D0(ctx, rng, max(level, 1)))
    if level == 0:
        h = QuatNum(rand_E1(ctx, rng), ctx.ext(0)) * h
    return h
