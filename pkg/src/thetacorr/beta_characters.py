"""Characters psi_b(x) = psi(Tr(b (x - 1))) of congruence subgroups of SL2
and D1, their extensions to E1, duality, invariance and stabilizers."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .cyclotomic import CycVal
from .local_field import ExtNum, FieldParams, PrecisionError, psi
from .quaternion import QuatNum, quat_subgroup_member
from .residues import Residues, closure, generators
from .unitary_groups import GrpElemU11, Mat2, embed_E_in_M2, filtration_member, sigma, sigma_prime


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured element budget."""


def check_budget(size: int, budget: int | None, what: str) -> None:
    if budget is not None and size > budget:
        raise BudgetExceeded(f"{what}: {size} elements exceeds budget {budget}")


@dataclass(frozen=True, eq=False)
class BetaDatum:
    side: str
    beta: ExtNum | QuatNum
    n: int

    def __post_init__(self):
        if self.side not in ("sl2", "quat"):
            raise ValueError(f"unknown side {self.side!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.beta.trace().is_zero():
            raise ValueError("beta must be traceless")
        if self.beta.valuation() != -self.n:
            raise ValueError(f"beta has valuation {self.beta.valuation()}, expected {-self.n}")

    @property
    def ctx(self) -> FieldParams:
        return self.beta.ctx

    @property
    def r(self) -> int:
        return (self.n + 2) // 2

    @property
    def matrix(self) -> Mat2:
        return embed_E_in_M2(self.beta)

    def scaled(self) -> tuple[int, tuple[int, ...]]:
        """(s, B) with beta = p^-s B and B integral, as residues mod p^(s+1)."""
        ctx = self.ctx
        if self.side == "sl2":
            s = self.n
            B = self.beta * ctx.p**s
            return s, B.residue(s + 1)
        s = (self.n + 1) // 2
        B = self.beta * ctx.p**s
        return s, B.a.residue(s + 1) + B.c.residue(s + 1)


def default_beta(ctx: FieldParams, side: str, n: int, unit: int = 1) -> BetaDatum:
    """p^-n alpha on the SL2 side; on the quaternion side p^-(n/2) alpha for
    even n and p^-((n+1)/2) delta for odd n."""
    p = ctx.num(ctx.p)
    if side == "sl2":
        return BetaDatum(side, ctx.alpha * unit * p ** (-n), n)
    if n % 2 == 0:
        return BetaDatum(side, QuatNum.of(ctx, ctx.alpha * unit * p ** (-(n // 2))), n)
    return BetaDatum(side, QuatNum.of(ctx, 0, ctx.ext(unit) * p ** (-((n + 1) // 2))), n)


def psi_b(b, x) -> CycVal:
    """psi(Tr(b (x - 1))) for b, x both Mat2 or both QuatNum."""
    y = b * (x - x.unit_like())
    t = y.trace()
    return psi(t.a if isinstance(t, ExtNum) else t)


def psi_beta(datum: BetaDatum, x) -> CycVal:
    r = datum.r
    if datum.side == "sl2":
        if not filtration_member("SL2_r", x, r):
            raise ValueError(f"x is not in SL2^{r}")
        return psi_b(datum.matrix, x)
    if not quat_subgroup_member("D1_r", x, r):
        raise ValueError(f"x is not in D1_{r}")
    return psi_b(datum.beta, x)


def residue_psi(datum: BetaDatum, R: Residues) -> Callable:
    """psi_beta on residue tuples (SL2 mod p^L or D mod P_D^L)."""
    p, z = R.p, R.z
    s, B = datum.scaled()
    m = s + 1
    if datum.side == "sl2":
        if R.L < m:
            raise PrecisionError(f"need residues mod p^{m}")
        b0, b1 = B

        def f(x):
            a, b, c, d = x
            return CycVal(p, m, b0 * (a + d - 2) + b1 * (z * c + b))

        return f
    ba0, ba1, bc0, bc1 = B
    if (ba0 % p**m or ba1 % p**m) and R.A < m:
        raise PrecisionError("quaternion residues too coarse for this beta")
    if R.C < s and (bc0 % p**m or bc1 % p**m):
        raise PrecisionError("quaternion residues too coarse for this beta")

    def g(x):
        a0, a1, c0, c1 = x
        # Tr_D(B (x-1)) = Tr_E(B_a (x_a - 1) + p B_c conj(x_c))
        t = ba0 * (a0 - 1) + z * ba1 * a1 + p * (bc0 * c0 - z * bc1 * c1)
        return CycVal(p, m, 2 * t)

    return g


def _side_ops(datum: BetaDatum, R: Residues):
    if datum.side == "sl2":
        return R.mul, R.inv, (1, 0, 0, 1), R.sl2, R.iota, R.sigma
    return R.qmul, R.qinv1, (1, 0, 0, 0), R.d1, R.e_in_d, R.sigma_prime


@dataclass
class CharacterReport:
    homomorphism_pairs: int = 0
    homomorphism_failures: int = 0
    trivial_on_top: bool = False
    nontrivial_below: bool = False

    @property
    def ok(self) -> bool:
        return self.homomorphism_failures == 0 and self.trivial_on_top and self.nontrivial_below


def character_check(datum: BetaDatum, budget: int | None = None) -> CharacterReport:
    """Exhaustive: psi_beta is a homomorphism on level r mod level n+1,
    trivial on level n+1 and nontrivial on level n."""
    n, r = datum.n, datum.r
    rep = CharacterReport()
    R = Residues(datum.ctx.p, datum.ctx.z, n + 2)
    mul, _, _, enum, _, _ = _side_ops(datum, R)
    f = residue_psi(datum, R)
    dom = enum(r)
    check_budget(len(dom) ** 2, budget, "homomorphism pairs")
    # reduce to the quotient modulo level n+1
    reps = {}
    for x in dom:
        reps.setdefault(_level_key(datum, R, x, n + 1), x)
    reps = list(reps.values())
    for x in reps:
        fx = f(x)
        for y in reps:
            rep.homomorphism_pairs += 1
            if f(mul(x, y)) != fx * f(y):
                rep.homomorphism_failures += 1
    rep.trivial_on_top = all(f(x).is_one() for x in enum(n + 1))
    rep.nontrivial_below = any(not f(x).is_one() for x in enum(n))
    return rep


def _level_key(datum, R: Residues, x, level: int):
    """Residue of x modulo level `level` of the filtration."""
    p = R.p
    if datum.side == "sl2":
        return tuple(v % p**level for v in x)
    A, C = (level + 1) // 2, level // 2
    return (x[0] % p**A, x[1] % p**A, x[2] % p**C, x[3] % p**C)


def duality_check(ctx: FieldParams, n: int, r: int, budget: int | None = None) -> bool:
    return duality_report(ctx, n, r, budget)["bijective"]


def duality_report(ctx: FieldParams, n: int, r: int, budget: int | None = None) -> dict:
    """b -> psi_b from traceless p^-n M / p^(1-r) M to characters of SL2^r / SL2^(n+1)."""
    p, z = ctx.p, ctx.z
    R = Residues(p, z, n + 1)
    k = n + 1 - r
    nb = p ** (3 * k)
    dom = R.sl2(r)
    check_budget(nb * len(dom), budget, "duality table")
    abelian = all(R.mul(x, y) == R.mul(y, x) for x in dom[:50] for y in dom)
    gens = generators(dom, R.mul, (1, 0, 0, 1))
    m = p**k
    seen = set()
    trivial_zero = None
    for b0 in range(m):
        for b1 in range(m):
            for b2 in range(m):
                # B = [[b0, b1], [b2, -b0]]
                key = tuple(
                    CycVal(p, n + 1, b0 * (a - 1) + b1 * c + b2 * b - b0 * (d - 1)) for a, b, c, d in gens
                )
                if b0 == b1 == b2 == 0:
                    trivial_zero = all(v.is_one() for v in key)
                seen.add(key)
    return {
        "domain_order": len(dom),
        "num_b": nb,
        "num_characters": len(seen),
        "abelian": abelian,
        "zero_is_trivial": trivial_zero,
        "bijective": abelian and len(seen) == nb == len(dom),
    }


@dataclass
class InvarianceReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def invariance_check(datum: BetaDatum, trials: int | None = None, rng: random.Random | None = None) -> InvarianceReport:
    """psi_beta(sigma_lam(x)) == psi_beta(x); exhaustive over residues when
    trials is None, otherwise random library elements."""
    rep = InvarianceReport()
    if trials is None:
        R = Residues(datum.ctx.p, datum.ctx.z, datum.n + 1)
        _, _, _, enum, _, act = _side_ops(datum, R)
        f = residue_psi(datum, R)
        for lam in R.e1():
            for x in enum(datum.r):
                rep.checked += 1
                if f(act(lam, x)) != f(x):
                    rep.failures.append((lam, x))
        return rep
    from . import sampling

    ctx = datum.ctx
    rng = rng or random.Random(0)
    for _ in range(trials):
        lam = sampling.rand_E1(ctx, rng)
        if datum.side == "sl2":
            x = sampling.rand_SL2(ctx, rng, datum.r)
            y = sigma(lam, x)
        else:
            x = sampling.rand_D1(ctx, rng, datum.r)
            y = sigma_prime(lam, x)
        rep.checked += 1
        if psi_beta(datum, y) != psi_beta(datum, x):
            rep.failures.append((lam, x))
    return rep


@dataclass
class StabilizerReport:
    level: int | None
    expected_level: int
    matches_expected: bool
    stabilizer_order: int
    group_order: int
    orbit_size: int

    @property
    def ok(self) -> bool:
        """Stabilizer equals E1 * (level n-r+1) and orbit-stabilizer holds."""
        return self.matches_expected and self.orbit_size * self.stabilizer_order == self.group_order


def stabilizer(datum: BetaDatum, budget: int | None = None) -> StabilizerReport:
    """Stabilizer of psi_beta under conjugation by SL2(O_F) (resp. D1),
    computed modulo level n+1, with its level m when it equals E1 * (level m)."""
    n, r = datum.n, datum.r
    R = Residues(datum.ctx.p, datum.ctx.z, n + 1)
    mul, inv, one, enum, emb, _ = _side_ops(datum, R)
    f = residue_psi(datum, R)
    G = enum(0)
    check_budget(len(G), budget, "stabilizer ambient group")
    gens = generators(enum(r), mul, one)
    base = tuple(f(x) for x in gens)
    stab = set()
    orbit = set()
    for g in G:
        gi = inv(g)
        vals = tuple(f(mul(mul(g, x), gi)) for x in gens)
        orbit.add(vals)
        if vals == base:
            stab.add(g)
    e1 = [emb(lam) for lam in R.e1()]
    level = None
    matches = False
    for m in range(n + 2):
        level_m = enum(m)
        prod_set = {mul(e, s) for e in e1 for s in level_m}
        if prod_set == stab:
            level = m if level is None else level
            matches = matches or m == n - r + 1
    return StabilizerReport(level, n - r + 1, matches, len(stab), len(G), len(orbit))


class E1Character:
    """A character phi of E1 in Lambda_beta: phi = psi_beta on E1 cap level r.

    Tabulated on E1 / E1_(n+1); it is trivial on the tame quotient E1 / E1_1
    and is determined on the pro-p part by a generator.
    """

    def __init__(self, datum: BetaDatum):
        self.datum = datum
        ctx, n, r = datum.ctx, datum.n, datum.r
        self.R = R = Residues(ctx.p, ctx.z, n + 1)
        f = residue_psi(datum, R)
        emb = R.iota if datum.side == "sl2" else R.e_in_d
        q = ctx.p
        gamma = next(x for x in R.e1(1) if R.e_level(x) == 1)
        order = q**n
        self._log = {}
        x = (1, 0)
        for k in range(order):
            self._log[x] = k
            x = R.emul(x, gamma)
        self._u = pow(q + 1, -1, order) if order > 1 else 0
        self._gen_value = f(emb(R.epow(gamma, q ** (r - 1)))).root(r - 1)
        self.q = q
        bad = [lam for lam in R.e1(r) if self(lam) != f(emb(lam))]
        if bad:
            raise ValueError(f"character does not agree with psi_beta on E1_{r}: {bad[:3]}")

    def __call__(self, lam) -> CycVal:
        R = self.R
        if isinstance(lam, ExtNum):
            lam = lam.residue(R.L)
        lam = (lam[0] % R.mod, lam[1] % R.mod)
        pro_p = R.epow(R.epow(lam, self.q + 1), self._u)
        return self._gen_value ** self._log[pro_p]


@dataclass
class CharSpec:
    beta: BetaDatum
    phi: E1Character
    eta: Callable = lambda lam: CycVal(3)

    def __post_init__(self):
        if self.eta is CharSpec.eta:
            p = self.beta.ctx.p
            self.eta = lambda lam, _p=p: CycVal(_p)


def factor_e1_sl2(g: Mat2) -> tuple[ExtNum, Mat2]:
    """Write g in E1 SL2^r as iota(lam) s with lam in E1."""
    ctx = g.ctx
    e = ExtNum(g.a.a, g.c.a)
    lam = e * e.norm().sqrt().inv()
    return lam, embed_E_in_M2(lam).inv() * g


def extended_char(spec: CharSpec, x: GrpElemU11, lam: ExtNum | None = None) -> CycVal:
    """phi_(beta,eta)(lam s, gamma) = phi(lam) psi_beta(s) eta(gamma).

    An explicit E1 factor lam may be passed to test independence of the
    factorization."""
    datum = spec.beta
    if not filtration_member("K1_r", x, datum.r):
        raise ValueError("element outside the domain of the extended character")
    if lam is None:
        lam, s = factor_e1_sl2(x.g)
    else:
        s = embed_E_in_M2(lam).inv() * x.g
    return spec.phi(lam) * psi_beta(datum, s) * spec.eta(x.lam)


__all__ = [
    "BetaDatum", "BudgetExceeded", "CharSpec", "CharacterReport", "E1Character", "InvarianceReport",
    "StabilizerReport", "character_check", "check_budget", "default_beta", "duality_check",
    "duality_report", "extended_char", "factor_e1_sl2", "invariance_check", "psi_b", "psi_beta",
    "residue_psi", "stabilizer",
]
