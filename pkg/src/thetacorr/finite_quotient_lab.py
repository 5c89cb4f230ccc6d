"""Finite quotient groups: enumeration, double cosets, conjugacy classes,
induced characters, and the structural checks on D1."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .beta_characters import BetaDatum, E1Character, check_budget, default_beta, residue_psi
from .cyclotomic import CycNum, CycVal
from .local_field import FieldParams
from .quaternion import QuatNum, cayley, quat_subgroup_member
from .residues import Residues, closure, generators

DEFAULT_BUDGET = 10**7


@dataclass
class FiniteQuotient:
    name: str
    elements: list
    mul: Callable
    identity: Hashable
    inv: Callable | None = None
    _index: dict | None = field(default=None, repr=False)
    _gens: list | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index

    def __contains__(self, x) -> bool:
        return x in self.index

    def inverse(self, x):
        if self.inv is not None:
            return self.inv(x)
        y = x
        prev = self.identity
        while y != self.identity:
            prev = y
            y = self.mul(y, x)
        return prev

    @property
    def gens(self) -> list:
        if self._gens is None:
            self._gens = generators(self.elements, self.mul, self.identity)
        return self._gens

    def is_closed(self, samples: int | None = None, rng: random.Random | None = None) -> bool:
        els = self.elements
        if samples is None:
            return all(self.mul(x, g) in self for x in els for g in self.gens)
        rng = rng or random.Random(0)
        return all(self.mul(rng.choice(els), rng.choice(els)) in self for _ in range(samples))

    def subgroup(self, name: str, elements: Iterable) -> "FiniteQuotient":
        return FiniteQuotient(name, list(elements), self.mul, self.identity, self.inv)


# ---- quotient constructors


def sl2_quotient(p: int, a: int, b: int, z: int | None = None, budget: int | None = DEFAULT_BUDGET) -> FiniteQuotient:
    """SL2^a(O_F) / SL2^b(O_F)."""
    R = Residues(p, z or FieldParams(p).z, b)
    check_budget(p ** (3 * b), budget, "SL2 quotient")
    return FiniteQuotient(f"SL2^{a}/SL2^{b}", R.sl2(a), R.mul, (1, 0, 0, 1), R.inv)


def e1_quotient(p: int, a: int, b: int, z: int | None = None) -> FiniteQuotient:
    """E1_a / E1_b."""
    R = Residues(p, z or FieldParams(p).z, b)
    return FiniteQuotient(f"E1_{a}/E1_{b}", R.e1(a), R.emul, (1, 0), R.econj)


def d1_quotient(p: int, a: int, b: int, z: int | None = None, budget: int | None = DEFAULT_BUDGET) -> FiniteQuotient:
    """D1_a / D1_b."""
    R = Residues(p, z or FieldParams(p).z, b)
    check_budget(p ** (2 * b), budget, "D1 quotient")
    return FiniteQuotient(f"D1_{a}/D1_{b}", R.d1(a), R.qmul, (1, 0, 0, 0), R.qinv1)


# ---- groups E1_x SL2^j  (x|  E1_1) modulo level n+1


def e1_part(R: Residues, which: str) -> list:
    """Residues of E1 or of E1_0 = +-E1_1."""
    if which == "E1":
        return R.e1()
    pos = R.e1(1)
    return pos + [((-x) % R.mod, (-y) % R.mod) for x, y in pos]


def sl2_part(R: Residues, j) -> list:
    """SL2^j, or SL2^{r_} when j = ("minus", r)."""
    if isinstance(j, tuple):
        r = j[1]
        return [x for x in R.sl2(r - 1) if R.is_minus(x, r)]
    return R.sl2(j)


def e1_sl2_set(R: Residues, which: str, j) -> set:
    lams = [R.iota(lam) for lam in e1_part(R, which)]
    return {R.mul(l, s) for l in lams for s in sl2_part(R, j)}


def semidirect(R: Residues, S: Iterable, name: str) -> FiniteQuotient:
    """S x| E1_1 with (s, g)(t, h) = (s sigma_g(t), g h), E1_1 taken mod p^L."""
    cache: dict = {}

    def sig(g):
        m = cache.get(g)
        if m is None:
            m = cache[g] = R.sigma_matrix(g)
        return m

    def mul(x, y):
        m, mi = sig(x[1])
        return (R.mul(x[0], R.mul(R.mul(m, y[0]), mi)), R.emul(x[1], y[1]))

    def inv(x):
        gi = R.econj(x[1])
        m, mi = sig(gi)
        return (R.mul(R.mul(m, R.inv(x[0])), mi), gi)

    gam = R.e1(1)
    els = [(s, g) for s in S for g in gam]
    return FiniteQuotient(name, els, mul, ((1, 0, 0, 1), (1, 0)), inv)


@dataclass
class DoubleCosets:
    count: int
    representatives: list
    sizes: list


def double_cosets(H: FiniteQuotient, G: FiniteQuotient, K: FiniteQuotient) -> DoubleCosets:
    """Partition of G into H\\G/K by orbits under x -> h x k on generators."""
    return _orbits(G.elements, [lambda x, h=h: G.mul(h, x) for h in H.gens] + [lambda x, k=k: G.mul(x, k) for k in K.gens])


def _orbits(elements: list, moves: list) -> DoubleCosets:
    seen: set = set()
    reps, sizes = [], []
    for x in elements:
        if x in seen:
            continue
        seen.add(x)
        orbit = [x]
        stack = [x]
        while stack:
            y = stack.pop()
            for mv in moves:
                w = mv(y)
                if w not in seen:
                    seen.add(w)
                    orbit.append(w)
                    stack.append(w)
        reps.append(min(orbit))
        sizes.append(len(orbit))
    return DoubleCosets(len(reps), reps, sizes)


def semidirect_double_cosets(R: Residues, SH: set, SG: set, SK: set) -> DoubleCosets:
    """H\\G/K for H = SH x| E1_1 etc., via orbits of g -> h sigma_gamma(g k) on SG.

    Every double coset contains some (g, 1), and (g, 1), (g', 1) are in the
    same one exactly when g' = h sigma_gamma(g k); so the orbit count is exact.
    """
    one = (1, 0, 0, 1)
    hg = generators(list(SH), R.mul, one)
    kg = generators(list(SK), R.mul, one)
    gam = next(x for x in R.e1(1) if R.e_level(x) == 1) if R.L > 1 else (1, 0)
    m, mi = R.sigma_matrix(gam)
    moves = [lambda x, h=h: R.mul(h, x) for h in hg]
    moves += [lambda x, k=k: R.mul(x, k) for k in kg]
    moves.append(lambda x: R.mul(R.mul(m, x), mi))
    return _orbits(sorted(SG), moves)


@dataclass
class CountCheck:
    name: str
    computed: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def coset_counts(p: int, n: int = 2, z: int | None = None, budget: int | None = DEFAULT_BUDGET) -> list[CountCheck]:
    """The six index / double-coset counts for E1_x SL2^j x| E1_1 groups,
    with r = floor((n+2)/2), enumerated modulo level n+1."""
    q, r = p, (n + 2) // 2
    R = Residues(p, z or FieldParams(p).z, n + 1)
    check_budget((q + 1) * q ** (3 * (n + 2 - r)), budget, "coset groups")
    A0 = e1_sl2_set(R, "E1_0", r - 1)
    B = e1_sl2_set(R, "E1_0", ("minus", r))
    C0 = e1_sl2_set(R, "E1_0", r)
    A = e1_sl2_set(R, "E1", r - 1)
    C = e1_sl2_set(R, "E1", r)
    return [
        CountCheck("[E1_0 SL2^(r-1) : E1_0 SL2^(r_)]", len(A0) // len(B), q),
        CountCheck("[E1_0 SL2^(r-1) : E1_0 SL2^r]", len(A0) // len(C0), q * q),
        CountCheck("E1_0 SL2^r \\ E1_0 SL2^(r-1) / E1_0 SL2^(r_)", semidirect_double_cosets(R, C0, A0, B).count, q),
        CountCheck("E1_0 SL2^r \\ E1 SL2^(r-1) / E1_0 SL2^r", semidirect_double_cosets(R, C0, A, C0).count, q * q * (q + 1) // 2),
        CountCheck("E1 SL2^r \\ E1 SL2^(r-1) / E1_0 SL2^r", semidirect_double_cosets(R, C, A, C0).count, q * q),
        CountCheck("E1 SL2^r \\ E1 SL2^(r-1) / E1 SL2^r", semidirect_double_cosets(R, C, A, C).count, 2 * q - 1),
    ]


# ---- D1 structure


def d1_structure(p: int, z: int | None = None) -> dict:
    """D1/D1_1: order and a generator; commutators of D1 x| E1 at depth 2."""
    z = z or FieldParams(p).z
    R1 = Residues(p, z, 1)
    top = d1_quotient(p, 0, 1, z)
    gen = None
    for x in top.elements:
        if len(closure([x], R1.qmul, top.identity)) == top.order:
            gen = x
            break
    R2 = Residues(p, z, 2)
    D = R2.d1()
    E = Residues(p, z, 1).e1()

    def mul(x, y):
        return (R2.qmul(x[0], R2.sigma_prime(x[1], y[0])), R1.emul(x[1], y[1]))

    def inv(x):
        li = R1.econj(x[1])
        return (R2.sigma_prime(li, R2.qinv1(x[0])), li)

    one = ((1, 0, 0, 0), (1, 0))
    G = [(h, l) for h in D for l in E]
    gens = generators(G, mul, one)
    # the commutator subgroup is the normal closure of commutators of generators
    comm = [mul(mul(x, y), mul(inv(x), inv(y))) for x in gens for y in gens]
    sub = closure(comm, mul, one)
    while True:
        extra = [c for g in gens for c in (mul(mul(g, s), inv(g)) for s in comm) if c not in sub]
        if not extra:
            break
        comm += extra
        sub = closure(comm, mul, one)
    target = {(h, (1, 0)) for h in R2.d1(1)}
    return {
        "order": top.order,
        "is_cyclic": gen is not None,
        "generator": gen,
        "character_count": top.order,
        "commutator_contains_D1_1": target <= sub,
        "commutator_order": len(sub),
    }


# ---- the r-odd lemma


def r_odd_lemma(ctx: FieldParams, n: int, samples: int = 200, rng: random.Random | None = None) -> dict:
    """(E1 D1_(r-1)) / D1_(n+1) == (E1 D1_r) / D1_(n+1) for r = n/2 + 1 odd,
    plus the Cayley three-factor decomposition on sampled h in D1_(r-1)."""
    if n % 4:
        raise ValueError("n must be divisible by 4")
    r = n // 2 + 1
    R = Residues(ctx.p, ctx.z, n + 1)
    e1 = [R.e_in_d(l) for l in R.e1()]
    d_big, d_small = R.d1(r - 1), R.d1(r)
    big = {R.qmul(e, h) for e in e1 for h in d_big}
    small = {R.qmul(e, h) for e in e1 for h in d_small}
    from .sampling import rand_D0

    rng = rng or random.Random(0)
    counts = {"factor1_in_E1": 0, "factor2_in_D1_r": 0, "factor3_in_D1_n+1": 0}
    for _ in range(samples):
        x = rand_D0(ctx, rng, r - 1)
        h = cayley(x)
        f1 = cayley(QuatNum(x.a, ctx.ext(0)))
        f2 = cayley(QuatNum(ctx.ext(0), x.c))
        f3 = (f1 * f2).inv() * h
        counts["factor1_in_E1"] += f1.c.is_zero() and quat_subgroup_member("D1", f1)
        counts["factor2_in_D1_r"] += quat_subgroup_member("D1_r", f2, r)
        counts["factor3_in_D1_n+1"] += quat_subgroup_member("D1_r", f3, n + 1)
    return {
        "r": r,
        "equal": big == small,
        "contains": small <= big,
        "order": len(big),
        "samples": samples,
        **counts,
    }


# ---- class functions and induced characters


class ClassFunction:
    """Values on conjugacy classes, exact in a cyclotomic field."""

    def __init__(self, classes: "ConjugacyClasses", values: list):
        self.classes = classes
        self.values = values

    def __call__(self, x) -> CycNum:
        return self.values[self.classes.class_of[x]]

    def degree(self) -> CycNum:
        return self(self.classes.group.identity)

    def __add__(self, o: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.classes, [a + b for a, b in zip(self.values, o.values)])

    def __sub__(self, o: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.classes, [a - b for a, b in zip(self.values, o.values)])

    def scale(self, c) -> "ClassFunction":
        return ClassFunction(self.classes, [v * Fraction(c) for v in self.values])

    def inner(self, o: "ClassFunction") -> CycNum:
        tot = CycNum(self.values[0].p)
        for size, a, b in zip(self.classes.sizes, self.values, o.values):
            tot = tot + (a * b.conj()) * size
        return tot * Fraction(1, self.classes.group.order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for v in self.values for c in v.vec)


class ConjugacyClasses:
    def __init__(self, G: FiniteQuotient):
        self.group = G
        gens = [(g, G.inverse(g)) for g in G.gens]
        moves = [lambda x, g=g, gi=gi: G.mul(G.mul(g, x), gi) for g, gi in gens]
        res = _orbits(G.elements, moves)
        self.reps = res.representatives
        self.sizes = res.sizes
        self.class_of: dict = {}
        for i, rep in enumerate(self.reps):
            for y in _orbit_of(rep, moves):
                self.class_of[y] = i

    def __len__(self) -> int:
        return len(self.reps)


def _orbit_of(x, moves) -> list:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for mv in moves:
            w = mv(y)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return list(seen)


def coset_reps(G: FiniteQuotient, H: FiniteQuotient) -> list:
    """Left coset representatives t with G = union of t H."""
    reps: list = []
    covered: set = set()
    for x in G.elements:
        if x in covered:
            continue
        reps.append(x)
        covered.update(G.mul(x, h) for h in H.elements)
    return reps


def induced_character(chi: dict, H: FiniteQuotient, G: FiniteQuotient, classes: ConjugacyClasses) -> ClassFunction:
    """Ind_H^G chi as sum over left coset reps t of chi(t^-1 g t)."""
    p = next(iter(chi.values())).p
    T = [(t, G.inverse(t)) for t in coset_reps(G, H)]
    vals = []
    for g in classes.reps:
        terms = []
        for t, ti in T:
            y = G.mul(G.mul(ti, g), t)
            v = chi.get(y)
            if v is not None:
                terms.append((1, v))
        vals.append(CycNum.from_terms(p, terms) if terms else CycNum(p))
    return ClassFunction(classes, vals)


def class_function_from(chi: Callable, classes: ConjugacyClasses, p: int) -> ClassFunction:
    return ClassFunction(classes, [CycNum.of(chi(g)) if isinstance(chi(g), CycVal) else chi(g) for g in classes.reps])


def character_table(R: Residues, datum: BetaDatum, phi: E1Character, which: str, j) -> dict:
    """phi_beta on E1_x SL2^j x| E1_1 (eta trivial): (lam s, g) -> phi(lam) psi_beta(s).

    Raises if two factorizations of one element disagree."""
    f = residue_psi(datum, R)
    base: dict = {}
    for lam in e1_part(R, which):
        il = R.iota(lam)
        pl = phi(lam)
        for s in sl2_part(R, j):
            x = R.mul(il, s)
            v = pl * f(s)
            old = base.setdefault(x, v)
            if old != v:
                raise ValueError(f"extended character is not well defined at {x}")
    gam = R.e1(1)
    return {(x, g): v for x, v in base.items() for g in gam}


def heisenberg_virtual_check(ctx: FieldParams, n: int = 2, budget: int | None = DEFAULT_BUDGET) -> dict:
    """h = (2/q) g - f for f = Ind_C^A phi, g = Ind_C0^A phi, where
    A = E1 SL2^(r-1), C = E1 SL2^r, C0 = E1_0 SL2^r (all x| E1_1).
    Also compares h on A0 = E1_0 SL2^(r-1) with Ind_B^A0 phi, B = E1_0 SL2^(r_)."""
    if n % 2:
        raise ValueError("n must be even")
    q, r = ctx.p, (n + 2) // 2
    R = Residues(ctx.p, ctx.z, n + 1)
    check_budget((q + 1) * q ** (3 * (n + 2 - r)) * q**n, budget, "Heisenberg groups")
    datum = default_beta(ctx, "sl2", n)
    phi = E1Character(datum)
    A = semidirect(R, e1_sl2_set(R, "E1", r - 1), "A")
    A0 = semidirect(R, e1_sl2_set(R, "E1_0", r - 1), "A0")
    chiC = character_table(R, datum, phi, "E1", r)
    chiC0 = character_table(R, datum, phi, "E1_0", r)
    chiB = character_table(R, datum, phi, "E1_0", ("minus", r))
    C = A.subgroup("C", chiC)
    C0 = A.subgroup("C0", chiC0)
    B = A.subgroup("B", chiB)
    clsA = ConjugacyClasses(A)
    f = induced_character(chiC, C, A, clsA)
    g = induced_character(chiC0, C0, A, clsA)
    h = g.scale(Fraction(2, q)) - f
    clsA0 = ConjugacyClasses(A0)
    rho0 = induced_character(chiB, B, A0, clsA0)
    rho = induced_character(chiC0, C0, A0, clsA0)
    h_res = ClassFunction(clsA0, [h(x) for x in clsA0.reps])
    return {
        "group_order": A.order,
        "classes": len(clsA),
        "f_degree": f.degree().rational(),
        "g_degree": g.degree().rational(),
        "h_degree": h.degree().rational(),
        "h_norm": h.inner(h).rational(),
        "h_integral": h.is_integral(),
        "restriction_is_rho0": all(a == b for a, b in zip(h_res.values, rho0.values)),
        "rho0_degree": rho0.degree().rational(),
        "rho0_norm": rho0.inner(rho0).rational(),
        "rho_rho0_multiplicity": rho.inner(rho0).rational(),
    }


__all__ = [
    "ClassFunction", "ConjugacyClasses", "CountCheck", "DoubleCosets", "FiniteQuotient",
    "character_table", "coset_counts", "coset_reps", "d1_quotient", "d1_structure",
    "double_cosets", "e1_quotient", "e1_sl2_set", "heisenberg_virtual_check", "induced_character",
    "r_odd_lemma", "semidirect", "semidirect_double_cosets", "sl2_quotient",
]
