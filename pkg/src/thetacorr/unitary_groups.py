"""U(1,1) = SL2(F) x| E1 and U(2) = D1 x| E1 with matrix realizations.

Conventions:
  * iota(x + y alpha) = [[x, y z], [y, x]], so iota(E0) is traceless.
  * d(lam) = conj(mu)^{-1} iota(conj(mu)) for any unit mu with mu / conj(mu) = lam;
    sigma_lam(g) = d(lam) g d(lam)^{-1}, which only depends on lam.
  * U(2) acts on row vectors w = w1 + w2 delta by right multiplication;
    mat(h, lam) = R(h) diag(1, lam) and sigma'_lam(h1 + h2 delta) = h1 + lam^{-1} h2 delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .local_field import ExtNum, FieldParams, PadicNum
from .quaternion import QuatNum


@dataclass(frozen=True, eq=False)
class Mat2:
    a: ExtNum
    b: ExtNum
    c: ExtNum
    d: ExtNum

    @property
    def ctx(self) -> FieldParams:
        return self.a.ctx

    @classmethod
    def of(cls, ctx: FieldParams, a, b, c, d) -> "Mat2":
        def e(v):
            return v if isinstance(v, ExtNum) else ExtNum(ctx.num(v), ctx.zero())

        return cls(e(a), e(b), e(c), e(d))

    @classmethod
    def identity(cls, ctx: FieldParams) -> "Mat2":
        return cls.of(ctx, 1, 0, 0, 1)

    def unit_like(self) -> "Mat2":
        return Mat2.identity(self.ctx)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, y):
        y = self._coerce(y)
        return Mat2(*(u + v for u, v in zip(self.entries(), y.entries())))

    __radd__ = __add__

    def __neg__(self):
        return Mat2(*(-u for u in self.entries()))

    def __sub__(self, y):
        return self + (-self._coerce(y))

    def __rsub__(self, y):
        return self._coerce(y) - self

    def _coerce(self, y) -> "Mat2":
        if isinstance(y, Mat2):
            return y
        return Mat2.identity(self.ctx).scale(y)

    def scale(self, s) -> "Mat2":
        return Mat2(*(u * s for u in self.entries()))

    def __mul__(self, y):
        if not isinstance(y, Mat2):
            return self.scale(y)
        return Mat2(
            self.a * y.a + self.b * y.c,
            self.a * y.b + self.b * y.d,
            self.c * y.a + self.d * y.c,
            self.c * y.b + self.d * y.d,
        )

    def __rmul__(self, s):
        return self.scale(s)

    def det(self) -> ExtNum:
        return self.a * self.d - self.b * self.c

    def trace(self) -> ExtNum:
        return self.a + self.d

    def inv(self) -> "Mat2":
        dt = self.det()
        if dt.is_zero():
            raise ZeroDivisionError("singular matrix")
        di = dt.inv()
        return Mat2(self.d * di, -self.b * di, -self.c * di, self.a * di)

    def conj(self) -> "Mat2":
        return Mat2(*(u.conj() for u in self.entries()))

    def T(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def is_F(self) -> bool:
        return all(u.b.is_zero() for u in self.entries())

    def val_at_least(self, r: int) -> bool:
        return all(u.val_at_least(r) for u in self.entries())

    def is_zero(self) -> bool:
        return all(u.is_zero() for u in self.entries())

    def __eq__(self, y):
        if not isinstance(y, Mat2):
            return NotImplemented
        return (self - y).is_zero()

    __hash__ = None

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.unit_like()
        for _ in range(k):
            r = r * self
        return r

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}; {self.c!r}, {self.d!r})"


def embed_E_in_M2(x: ExtNum) -> Mat2:
    ctx, z = x.ctx, x.ctx.z
    zero = ctx.zero()
    return Mat2(ExtNum(x.a, zero), ExtNum(x.b * z, zero), ExtNum(x.b, zero), ExtNum(x.a, zero))


def J(ctx: FieldParams) -> Mat2:
    return Mat2.of(ctx, 0, 1, -1, 0)


def H(ctx: FieldParams) -> Mat2:
    """Gram matrix diag(1, -delta^2) of the hermitian form on D."""
    return Mat2.of(ctx, 1, 0, 0, -ctx.p)


def weyl(ctx: FieldParams) -> Mat2:
    return Mat2.of(ctx, 0, 1, ctx.p, 0)


def is_in_group(which: str, x: Mat2) -> bool:
    ctx = x.ctx
    if which in ("U11", "SU"):
        ok = x * J(ctx) * x.conj().T() == J(ctx)
        if which == "SU":
            ok = ok and x.det() == ctx.ext(1)
        return ok
    if which == "U2":
        return x * H(ctx) * x.conj().T() == H(ctx)
    raise ValueError(f"unknown group {which!r}")


def hilbert90(lam: ExtNum) -> ExtNum:
    """A unit mu with mu / conj(mu) = lam for lam in E1."""
    mu = lam + 1
    if mu.valuation() == 0:
        return mu
    return lam.ctx.alpha * (1 - lam)


def section_d(lam: ExtNum) -> Mat2:
    mb = hilbert90(lam).conj()
    return embed_E_in_M2(mb).scale(mb.inv())


def sigma(lam: ExtNum, g: Mat2) -> Mat2:
    m = embed_E_in_M2(hilbert90(lam).conj())
    return m * g * m.inv()


def sigma_prime(lam: ExtNum, h: QuatNum) -> QuatNum:
    return QuatNum(h.a, lam.inv() * h.c)


def right_mult_matrix(h: QuatNum) -> Mat2:
    """Matrix of w -> w h on row coordinates (w1, w2) of w = w1 + w2 delta."""
    return Mat2(h.a, h.c, h.c.conj() * h.ctx.p, h.a.conj())


@dataclass(frozen=True, eq=False)
class GrpElemU11:
    g: Mat2
    lam: ExtNum

    @classmethod
    def identity(cls, ctx: FieldParams) -> "GrpElemU11":
        return cls(Mat2.identity(ctx), ctx.ext(1))

    def __mul__(self, y: "GrpElemU11") -> "GrpElemU11":
        return GrpElemU11(self.g * sigma(self.lam, y.g), self.lam * y.lam)

    def inv(self) -> "GrpElemU11":
        li = self.lam.inv()
        return GrpElemU11(sigma(li, self.g.inv()), li)

    def mat(self) -> Mat2:
        return self.g * section_d(self.lam)

    @classmethod
    def from_matrix(cls, m: Mat2) -> "GrpElemU11":
        lam = m.det()
        g = m * section_d(lam).inv()
        if not g.is_F():
            raise ValueError("matrix is not in U(1,1)")
        return cls(g, lam)

    def __eq__(self, y):
        return isinstance(y, GrpElemU11) and self.g == y.g and self.lam == y.lam

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GrpElemU2:
    h: QuatNum
    lam: ExtNum

    @classmethod
    def identity(cls, ctx: FieldParams) -> "GrpElemU2":
        return cls(QuatNum.of(ctx, 1), ctx.ext(1))

    def __mul__(self, y: "GrpElemU2") -> "GrpElemU2":
        return GrpElemU2(self.h * sigma_prime(self.lam, y.h), self.lam * y.lam)

    def inv(self) -> "GrpElemU2":
        li = self.lam.inv()
        return GrpElemU2(sigma_prime(li, self.h.inv()), li)

    def mat(self) -> Mat2:
        ctx = self.lam.ctx
        return right_mult_matrix(self.h) * Mat2(ctx.ext(1), ctx.ext(0), ctx.ext(0), self.lam)

    @classmethod
    def from_matrix(cls, m: Mat2) -> "GrpElemU2":
        lam = m.det()
        r = m * Mat2(m.ctx.ext(1), m.ctx.ext(0), m.ctx.ext(0), lam.inv())
        return cls(QuatNum(r.a, r.b), lam)

    def __eq__(self, y):
        return isinstance(y, GrpElemU2) and self.h == y.h and self.lam == y.lam

    __hash__ = None


def central(lam: ExtNum) -> GrpElemU11:
    """The central copy lam -> (iota(lam), lam^2)."""
    return GrpElemU11(embed_E_in_M2(lam), lam * lam)


def _integral_sl2(g: Mat2) -> bool:
    return g.is_F() and g.val_at_least(0) and g.det() == g.ctx.ext(1)


def filtration_member(which: str, x, r: int) -> bool:
    """Membership in SL2_r, SL2_r_minus, K1_r, K2_r or D1_r_semidirect."""
    if which == "D1_r_semidirect":
        h = x.h if isinstance(x, GrpElemU2) else x
        from .quaternion import quat_subgroup_member

        return quat_subgroup_member("D1_r", h, r)
    if which in ("SL2_r", "SL2_r_minus"):
        g = x.g if isinstance(x, GrpElemU11) else x
        if isinstance(x, GrpElemU11) and not x.lam == x.lam.ctx.ext(1):
            return False
        if not _integral_sl2(g):
            return False
        one = g.ctx.ext(1)
        if which == "SL2_r":
            return (g - g.unit_like()).val_at_least(r)
        return (g.a - one).val_at_least(r - 1) and (g.d - one).val_at_least(r - 1) and g.b.val_at_least(r) and g.c.val_at_least(r)
    if which == "K1_r":
        g = x.g if isinstance(x, GrpElemU11) else GrpElemU11.from_matrix(x).g
        if not _integral_sl2(g):
            return False
        # g is in E1 SL2^r iff g = iota(e) mod P^r
        return (g.a - g.d).val_at_least(r) and (g.b - g.c * g.ctx.z).val_at_least(r)
    if which == "K2_r":
        m = x.mat() if isinstance(x, GrpElemU11) else x
        w = weyl(m.ctx)
        return filtration_member("K1_r", GrpElemU11.from_matrix(w * m * w.inv()), r)
    raise ValueError(f"unknown filtration {which!r}")


__all__ = [
    "Mat2", "GrpElemU11", "GrpElemU2", "embed_E_in_M2", "is_in_group", "section_d", "sigma",
    "sigma_prime", "right_mult_matrix", "central", "filtration_member", "hilbert90", "J", "H", "weyl",
]
