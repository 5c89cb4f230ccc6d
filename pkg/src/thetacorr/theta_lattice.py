"""The symplectic space V (x)_E W, the lattice A = Gamma (x) Gamma', its
duals, the finite Heisenberg model on A*/A, Y-space functions and the
lattice-model action of small congruence subgroups.

Coordinates: v = (v0, v1) on the hyperbolic basis u, v of V; w = w0 + w1 delta
in W = D.  A tensor has E-coordinates x_ik = v_i conj(w_k), listed in the
order (0,0), (0,1), (1,0), (1,1).  F-directions are (i, k, t) with t = 0 for
the 1-component and t = 1 for the alpha-component of x_ik.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cyclotomic import CycNum, CycVal
from .local_field import ExtNum, FieldParams, PadicNum, chi
from .quaternion import QuatNum, cayley
from .unitary_groups import Mat2, right_mult_matrix

IK = ((0, 0), (0, 1), (1, 0), (1, 1))
DIRS = tuple((i, k, t) for i, k in IK for t in (0, 1))


@dataclass(frozen=True, eq=False)
class VVec:
    a: ExtNum
    b: ExtNum

    def coords(self):
        return (self.a, self.b)


@dataclass(frozen=True, eq=False)
class BigVec:
    x: tuple  # four ExtNum, order IK

    @property
    def ctx(self) -> FieldParams:
        return self.x[0].ctx

    def at(self, i: int, k: int) -> ExtNum:
        return self.x[2 * i + k]

    def __add__(self, o: "BigVec") -> "BigVec":
        return BigVec(tuple(a + b for a, b in zip(self.x, o.x)))

    def __sub__(self, o: "BigVec") -> "BigVec":
        return BigVec(tuple(a - b for a, b in zip(self.x, o.x)))

    def __neg__(self) -> "BigVec":
        return BigVec(tuple(-a for a in self.x))

    def scale(self, s) -> "BigVec":
        return BigVec(tuple(a * s for a in self.x))

    def left(self, m: Mat2) -> "BigVec":
        """(m (x) 1): x_ik -> sum_j m_ij x_jk."""
        e = m.entries()
        return BigVec(tuple(e[2 * i] * self.at(0, k) + e[2 * i + 1] * self.at(1, k) for i, k in IK))

    def right(self, r: Mat2) -> "BigVec":
        """v (x) w -> v (x) (w r) for the row-vector action of r on W."""
        e = [c.conj() for c in r.entries()]
        return BigVec(tuple(self.at(i, 0) * e[k] + self.at(i, 1) * e[2 + k] for i, k in IK))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.x)

    def component(self, d) -> PadicNum:
        i, k, t = d
        c = self.at(i, k)
        return c.b if t else c.a

    def __repr__(self):
        return f"BigVec{self.x!r}"


def tensor(v: VVec, w: QuatNum) -> BigVec:
    wk = (w.a.conj(), w.c.conj())
    return BigVec(tuple(v.coords()[i] * wk[k] for i, k in IK))


def basis_vector(ctx: FieldParams, d) -> BigVec:
    i, k, t = d
    zero = ctx.ext(0)
    e = ctx.alpha if t else ctx.ext(1)
    return BigVec(tuple(e if (i, k) == ik else zero for ik in IK))


def form_V(x: VVec, y: VVec) -> ExtNum:
    """x^t J conj(y), J = [[0, 1], [-1, 0]]."""
    return x.a * y.b.conj() - x.b * y.a.conj()


def form_W(u: QuatNum, v: QuatNum) -> ExtNum:
    """u0 conj(v0) - p u1 conj(v1)."""
    return u.a * v.a.conj() - (u.c * v.c.conj()) * u.ctx.p


def form_WW(x: BigVec, y: BigVec) -> PadicNum:
    """Tr_{E/F} sum x_ik J_ij H_kl conj(y_jl) with H = diag(1, -p)."""
    p = x.ctx.p
    s = (x.at(0, 0) * y.at(1, 0).conj() - x.at(1, 0) * y.at(0, 0).conj()
         - (x.at(0, 1) * y.at(1, 1).conj() - x.at(1, 1) * y.at(0, 1).conj()) * p)
    return s.trace()


def forms(kind: str, x, y):
    return {"V": form_V, "W": form_W, "WW": form_WW}[kind](x, y)


# ---- lattices given by exponents on the 8 F-directions


@dataclass(frozen=True)
class Lattice:
    exps: tuple

    def contains(self, x: BigVec) -> bool:
        return all(x.component(d).val_at_least(e) for d, e in zip(DIRS, self.exps))

    def scale(self, k: int) -> "Lattice":
        """P^k L."""
        return Lattice(tuple(e + k for e in self.exps))

    def __le__(self, other: "Lattice") -> bool:
        return all(a >= b for a, b in zip(self.exps, other.exps))

    def __lt__(self, other: "Lattice") -> bool:
        return self <= other and self != other

    def index_in(self, bigger: "Lattice") -> int:
        """log_p [bigger : self]."""
        return sum(a - b for a, b in zip(self.exps, bigger.exps))

    def generators(self, ctx: FieldParams):
        for d, e in zip(DIRS, self.exps):
            yield basis_vector(ctx, d).scale(ctx.num(ctx.p) ** e)


LATTICE_A = Lattice((0,) * 8)


def lattice_from(v_exp: int, w_exps: tuple[int, int]) -> Lattice:
    """P^v_exp Gamma (x) (P^w0 + P^w1 delta)."""
    return Lattice(tuple(v_exp + w_exps[k] for i, k, t in DIRS))


@lru_cache(maxsize=16)
def gram_matrix(ctx: FieldParams) -> tuple:
    bs = [basis_vector(ctx, d) for d in DIRS]
    return tuple(tuple(form_WW(a, b) for b in bs) for a in bs)


def dual_lattice(L: Lattice, ctx: FieldParams) -> Lattice:
    """{y : <<y, L>> in O_F}; requires a monomial Gram matrix on the F-basis."""
    G = gram_matrix(ctx)
    exps = []
    for j, row in enumerate(G):
        nz = [l for l, g in enumerate(row) if not g.is_zero()]
        if len(nz) != 1:
            raise ValueError("Gram matrix is not monomial on the coordinate basis")
        l = nz[0]
        exps.append(-L.exps[l] - row[l].valuation())
    return Lattice(tuple(exps))


def expected_A_dual() -> Lattice:
    return lattice_from(0, (0, -1))


# ---- the finite Heisenberg model on A*/A


@dataclass(frozen=True)
class MonoOp:
    """(Op f)(xi) = phase[xi] f(perm[xi])."""

    perm: tuple
    phase: tuple

    def __matmul__(self, o: "MonoOp") -> "MonoOp":
        return MonoOp(tuple(o.perm[j] for j in self.perm), tuple(a * o.phase[j] for a, j in zip(self.phase, self.perm)))

    def scaled(self, c: CycVal) -> "MonoOp":
        return MonoOp(self.perm, tuple(c * a for a in self.phase))

    def apply(self, vec):
        return tuple(ph * vec[j] for ph, j in zip(self.phase, self.perm))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm)) and all(a.is_one() for a in self.phase)

    def scalar(self) -> CycVal | None:
        """The scalar c if this operator is c * identity."""
        if any(i != j for i, j in enumerate(self.perm)) or len(set(self.phase)) != 1:
            return None
        return self.phase[0]


class FiniteHeisenberg:
    """Schrodinger model of H(A*/A) with central character chi'(t) = zeta_p^t.

    A*/A = k_E (+) k_E via a -> (p a_01, p a_11) mod p; the polarization is
    X = first summand (u-line), Y = second (v-line).  Functions live on X.
    """

    def __init__(self, p: int, z: int):
        self.p, self.z = p, z
        self.points = [(s0, s1) for s1 in range(p) for s0 in range(p)]
        self.dim = len(self.points)
        self.half = pow(2, -1, p)

    def idx(self, e) -> int:
        return e[0] % self.p + self.p * (e[1] % self.p)

    def _tr_conj(self, x, y) -> int:
        """Tr_{k_E/k_F}(x conj(y))."""
        return 2 * (x[0] * y[0] - self.z * x[1] * y[1]) % self.p

    def pairing(self, a, b) -> int:
        """<a, b> = Tr(-xi_a conj(eta_b) + eta_a conj(xi_b))."""
        return (-self._tr_conj(a[0], b[1]) + self._tr_conj(a[1], b[0])) % self.p

    def elements(self):
        return [(x, y) for x in self.points for y in self.points]

    def op(self, a, t: int = 0) -> MonoOp:
        xa, ya = a
        p = self.p
        c = (t + self.half * (-self._tr_conj(xa, ya))) % p
        perm, phase = [], []
        for xi in self.points:
            perm.append(self.idx((xi[0] + xa[0], xi[1] + xa[1])))
            phase.append(CycVal(p, 1, c - self._tr_conj(xi, ya)))
        return MonoOp(tuple(perm), tuple(phase))

    def central(self, t: int) -> MonoOp:
        return self.op(((0, 0), (0, 0)), t)

    def chi_prime(self, t: int) -> CycVal:
        return CycVal(self.p, 1, t)

    def commutation_check(self, pairs=None) -> dict:
        """rho(a) rho(b) = chi'(<a,b>) rho(b) rho(a) and rho(a) rho(b) = rho(a+b, <a,b>/2)."""
        els = self.elements()
        ops = {a: self.op(a) for a in els}
        checked = failures = 0
        it = pairs if pairs is not None else product(els, els)
        for a, b in it:
            ab = ops[a] @ ops[b]
            ba = ops[b] @ ops[a]
            c = self.pairing(a, b)
            s = tuple(((u[0] + v[0]) % self.p, (u[1] + v[1]) % self.p) for u, v in zip(a, b))
            checked += 1
            if ab != ba.scaled(self.chi_prime(c)) or ab != self.op(s, self.half * c % self.p):
                failures += 1
        return {"pairs": checked, "failures": failures}

    def reduce(self, a: BigVec):
        """Image of a in A*/A (a must lie in A*)."""
        p = self.p

        def red(e: ExtNum):
            s = e * p
            return (s.a.residue(1), s.b.residue(1))

        return (red(a.at(0, 1)), red(a.at(1, 1)))

    def rho_A(self, a: BigVec) -> MonoOp:
        return self.op(self.reduce(a))


def heisenberg_model(ctx: FieldParams) -> FiniteHeisenberg:
    return FiniteHeisenberg(ctx.p, ctx.z)


# ---- Y-space


@dataclass(frozen=True, eq=False)
class YFunc:
    """Function supported on base + A*, equal to value at base."""

    base: BigVec
    value: tuple

    def at(self, w: BigVec, H: FiniteHeisenberg, Astar: Lattice):
        """f(w) by covariance f(s + a) = chi(<<s, a>>/2) rho_A(a) f(s); None off support."""
        d = w - self.base
        if not Astar.contains(d):
            return None
        c = chi(form_WW(self.base, d).half())
        return tuple(c * v for v in H.rho_A(d).apply(self.value))


def y_func(w: BigVec, x) -> YFunc:
    """y_{w,x}: supported on -w + A*, value x at -w."""
    return YFunc(-w, tuple(x))


def basis_x(p: int, dim: int, j: int) -> tuple:
    return tuple(CycNum(p, 0, (1 if i == j else 0,)) for i in range(dim))


def y_proportional(f: YFunc, g: YFunc, H: FiniteHeisenberg, Astar: Lattice) -> bool:
    """f = c g for some nonzero c."""
    gv = g.at(f.base, H, Astar)
    if gv is None:
        return False
    fv = f.value
    if all(x.is_zero() for x in fv) or all(x.is_zero() for x in gv):
        return False
    n = len(fv)
    return all(fv[i] * gv[j] == fv[j] * gv[i] for i in range(n) for j in range(i + 1, n))


# ---- group actions on the big space


@dataclass(frozen=True, eq=False)
class G1Action:
    """h in U(1,1) acting by v (x) w -> (h v) (x) w (or by h^-1 when inverse)."""

    h: Mat2
    inverse: bool = False

    def _g(self) -> Mat2:
        return self.h.inv() if self.inverse else self.h

    def apply(self, x: BigVec) -> BigVec:
        return x.left(self._g())

    def cayley_apply(self, x: BigVec) -> BigVec:
        return x.left(cayley(self._g()))

    def minus_one(self, x: BigVec) -> BigVec:
        return self.apply(x) - x


@dataclass(frozen=True, eq=False)
class G2Action:
    """h in D1 acting by v (x) w -> v (x) (w h^-1) (or w h when inverse is False)."""

    h: QuatNum
    inverse: bool = True

    def _g(self) -> QuatNum:
        return self.h.inv() if self.inverse else self.h

    def apply(self, x: BigVec) -> BigVec:
        return x.right(right_mult_matrix(self._g()))

    def cayley_apply(self, x: BigVec) -> BigVec:
        return x.right(right_mult_matrix(cayley(self._g())))

    def minus_one(self, x: BigVec) -> BigVec:
        return self.apply(x) - x


def in_HM(action, k: int, ctx: FieldParams) -> bool:
    """(g - 1)(M^k)* in A*, checked on the F-basis of (M^k)* = P^-k A*."""
    Astar = dual_lattice(LATTICE_A, ctx)
    Mk_dual = dual_lattice(LATTICE_A.scale(k), ctx)
    return all(Astar.contains(action.minus_one(b)) for b in Mk_dual.generators(ctx))


def weil_operator(action, w: BigVec, H: FiniteHeisenberg) -> MonoOp:
    """rho_A(2 c(h) w) chi(<<w, c(h) w>>)."""
    cw = action.cayley_apply(w)
    return H.rho_A(cw.scale(2)).scaled(chi(form_WW(w, cw)))


def weil_HM_action(action, f: YFunc, k: int, H: FiniteHeisenberg, check: bool = True) -> YFunc:
    if check and not in_HM(action, k, f.base.ctx):
        raise ValueError("element is not in H_M")
    return YFunc(f.base, weil_operator(action, f.base, H).apply(f.value))


def action_scalar(action, w: BigVec) -> CycVal:
    """chi(<<w, c(h) w>>), the scalar when 2 c(h) w lies in A."""
    return chi(form_WW(w, action.cayley_apply(w)))


# ---- the matching elements


def extract_b1(v: VVec, w: QuatNum, k: int) -> Mat2:
    """Traceless matrix attached to v = (a, b) (meaning p^-k (a u + b v)) and w."""
    ctx = v.a.ctx
    a, b = v.a, v.b
    pk = ctx.num(ctx.p)
    pre = w.norm() * pk ** (2 - k) * Fraction(-1, 2)
    s = (a.conj() * b + a * b.conj()) * pk ** (-k - 1)
    m = Mat2(-s, (a * a.conj()) * (2 * pk ** (-k - 1)), (b * b.conj()) * (-2 * pk ** (-k - 1)), s)
    return m.scale(pre)


def extract_b2(v: VVec, w2: QuatNum, k: int) -> QuatNum:
    """-(p/2)(a conj(b) - conj(a) b) N(w')."""
    ctx = v.a.ctx
    a, b = v.a, v.b
    t = a * b.conj() - a.conj() * b
    return QuatNum(t * w2.norm() * Fraction(-ctx.p, 2), ctx.ext(0))


def closed_form(v: VVec, w: QuatNum, k: int) -> PadicNum:
    """-(p^(2-4k)/4) N(w)^2 (a conj(b) - conj(a) b)^2."""
    ctx = v.a.ctx
    t = v.a * v.b.conj() - v.a.conj() * v.b
    tt = (t * t).a
    return w.norm() * w.norm() * tt * ctx.num(ctx.p) ** (2 - 4 * k) * Fraction(-1, 4)


def match_check(v: VVec, w: QuatNum, k: int) -> dict:
    """det b1 = N(b2) with w' = p^-k w, both equal to the closed form, and
    equal characteristic polynomials."""
    ctx = v.a.ctx
    b1 = extract_b1(v, w, k)
    w2 = QuatNum(w.a, w.c) * ctx.num(ctx.p) ** (-k)
    b2 = extract_b2(v, w2, k)
    det1 = b1.det().a
    n2 = b2.norm()
    cf = closed_form(v, w, k)
    tr1 = b1.trace().a
    tr2 = b2.trace()
    return {
        "det_b1": det1,
        "N_b2": n2,
        "det_eq_norm": det1 == n2,
        "closed_form": cf == det1 and cf == n2,
        "charpoly": tr1 == tr2 and det1 == n2,
        "b1_traceless": tr1.is_zero(),
        "b2_traceless": tr2.is_zero(),
        "b1_F_matrix": b1.is_F(),
    }


__all__ = [
    "BigVec", "DIRS", "FiniteHeisenberg", "G1Action", "G2Action", "LATTICE_A", "Lattice", "MonoOp",
    "VVec", "YFunc", "action_scalar", "basis_vector", "basis_x", "closed_form", "dual_lattice",
    "expected_A_dual", "extract_b1", "extract_b2", "form_V", "form_W", "form_WW", "forms",
    "gram_matrix", "heisenberg_model", "in_HM", "lattice_from", "match_check", "tensor",
    "weil_HM_action", "weil_operator", "y_func", "y_proportional",
]
