"""Truncated arithmetic in F = Q_p and E = F(alpha), alpha^2 = z, and the
additive characters psi (conductor P_F) and chi (conductor O_F).

A nonzero PadicNum stores p^val * unit with the unit known modulo
p^(absprec - val).  Zero is stored with val None and absprec a lower bound
for its true valuation; absprec = inf means an exact zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycVal

INF = math.inf


class PrecisionError(ArithmeticError):
    """The working precision is too small to decide or represent a result."""


def vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def smallest_nonresidue(p: int) -> int:
    squares = {x * x % p for x in range(1, p)}
    return next(z for z in range(2, p) if z not in squares)


@dataclass(frozen=True)
class FieldParams:
    p: int
    z: int | None = None
    N: int = 12

    def __post_init__(self):
        p = self.p
        if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, math.isqrt(p) + 1, 2)):
            raise ValueError(f"p must be an odd prime, got {p}")
        if self.z is None:
            object.__setattr__(self, "z", smallest_nonresidue(p))
        if pow(self.z % p, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"z={self.z} is not a non-residue mod {p}")
        if self.N < 1:
            raise ValueError("precision N must be >= 1")

    @property
    def q(self) -> int:
        return self.p

    # constructors
    def num(self, x, absprec=None) -> "PadicNum":
        """PadicNum from an int, Fraction or PadicNum (exact unless absprec given)."""
        if isinstance(x, PadicNum):
            return x if absprec is None else x.truncate(absprec)
        x = Fraction(x)
        if x == 0:
            return PadicNum(self, None, 0, INF if absprec is None else absprec)
        p = self.p
        v = vp(x.numerator, p) if x.numerator % p == 0 else -vp(x.denominator, p) if x.denominator % p == 0 else 0
        top = x.numerator // p ** max(v, 0)
        bot = x.denominator // p ** max(-v, 0)
        ap = v + self.N if absprec is None else min(absprec, v + self.N)
        if ap <= v:
            return PadicNum(self, None, 0, ap)
        mod = p ** (ap - v)
        return PadicNum(self, v, top * pow(bot, -1, mod) % mod, ap)

    def zero(self) -> "PadicNum":
        return PadicNum(self, None, 0, INF)

    def one(self) -> "PadicNum":
        return self.num(1)

    def ext(self, a=0, b=0) -> "ExtNum":
        return ExtNum(self.num(a), self.num(b))

    @property
    def alpha(self) -> "ExtNum":
        return self.ext(0, 1)

    @property
    def uniformizer(self) -> "PadicNum":
        return self.num(self.p)


@dataclass(frozen=True, eq=False)
class PadicNum:
    ctx: FieldParams
    val: int | None
    unit: int
    absprec: float

    # -- structure
    def is_zero(self) -> bool:
        return self.val is None

    def is_exact_zero(self) -> bool:
        return self.val is None and self.absprec == INF

    @property
    def relprec(self) -> float:
        return 0 if self.val is None else self.absprec - self.val

    def valuation(self) -> float:
        """v_F(x); for an inexact zero this is undecidable."""
        if self.val is not None:
            return self.val
        if self.absprec == INF:
            return INF
        raise PrecisionError("valuation of a zero known only modulo p^%d" % self.absprec)

    def val_at_least(self, r: int) -> bool:
        """Decide v_F(x) >= r."""
        if self.val is not None:
            return self.val >= r
        if self.absprec >= r:
            return True
        raise PrecisionError(f"cannot decide v >= {r} with absolute precision {self.absprec}")

    def truncate(self, absprec) -> "PadicNum":
        if absprec >= self.absprec:
            return self
        if self.val is None or absprec <= self.val:
            return PadicNum(self.ctx, None, 0, absprec)
        return PadicNum(self.ctx, self.val, self.unit % self.ctx.p ** int(absprec - self.val), absprec)

    def _make(self, v0: int, s: int, absprec) -> "PadicNum":
        """Normalize p^v0 * s where s is known modulo p^(absprec - v0)."""
        p = self.ctx.p
        if s == 0:
            return PadicNum(self.ctx, None, 0, absprec)
        while s % p == 0:
            s //= p
            v0 += 1
        if v0 >= absprec:
            return PadicNum(self.ctx, None, 0, absprec)
        absprec = min(absprec, v0 + self.ctx.N)
        return PadicNum(self.ctx, v0, s % p ** int(absprec - v0), absprec)

    def _coerce(self, y) -> "PadicNum":
        if isinstance(y, PadicNum):
            if y.ctx.p != self.ctx.p:
                raise ValueError("mixed primes")
            return y
        if isinstance(y, (int, Fraction)):
            return self.ctx.num(y)
        return NotImplemented

    # -- ring operations
    def __add__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        ap = min(self.absprec, y.absprec)
        vals = [x.val for x in (self, y) if x.val is not None]
        if not vals:
            return PadicNum(self.ctx, None, 0, ap)
        v0 = min(vals)
        if ap <= v0:
            return PadicNum(self.ctx, None, 0, ap)
        p = self.ctx.p
        s = sum(x.unit * p ** (x.val - v0) for x in (self, y) if x.val is not None)
        if ap != INF:
            s %= p ** int(ap - v0)
        else:
            # both exact values only arise from exact zeros; keep N digits
            ap = v0 + self.ctx.N
            s %= p ** self.ctx.N
        return self._make(v0, s, ap)

    __radd__ = __add__

    def __neg__(self):
        if self.val is None:
            return self
        return PadicNum(self.ctx, self.val, -self.unit % self.ctx.p ** int(self.relprec), self.absprec)

    def __sub__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, y):
        return self._coerce(y) - self

    def __mul__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        if self.val is None or y.val is None:
            if self.val is None and y.val is None:
                return PadicNum(self.ctx, None, 0, self.absprec + y.absprec)
            z, nz = (self, y) if self.val is None else (y, self)
            return PadicNum(self.ctx, None, 0, z.absprec + nz.val)
        rel = int(min(self.relprec, y.relprec))
        v = self.val + y.val
        return PadicNum(self.ctx, v, self.unit * y.unit % self.ctx.p**rel, v + rel)

    __rmul__ = __mul__

    def inv(self) -> "PadicNum":
        if self.val is None:
            raise ZeroDivisionError("inverse of zero")
        rel = int(self.relprec)
        return PadicNum(self.ctx, -self.val, pow(self.unit, -1, self.ctx.p**rel), -self.val + rel)

    def __truediv__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return self * y.inv()

    def __rtruediv__(self, y):
        return self._coerce(y) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.ctx.one()
        for _ in range(k):
            r = r * self
        return r

    def half(self) -> "PadicNum":
        return self * self.ctx.num(Fraction(1, 2))

    def __eq__(self, y):
        y = self._coerce(y) if not isinstance(y, PadicNum) else y
        if y is NotImplemented:
            return NotImplemented
        return (self - y).is_zero()

    __hash__ = None

    # -- conversions
    def residue(self, k: int) -> int:
        """Integer representative of x mod p^k; requires x integral."""
        if not self.val_at_least(0):
            raise ValueError("residue of a non-integral element")
        if self.absprec < k:
            raise PrecisionError(f"x known only mod p^{self.absprec}, need p^{k}")
        if self.val is None:
            return 0
        return self.unit * self.ctx.p**self.val % self.ctx.p**k

    def to_fraction(self) -> Fraction:
        """Rational representative p^val * unit."""
        if self.val is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.ctx.p) ** self.val

    def sqrt(self) -> "PadicNum":
        """Square root of a square of even valuation (Hensel lift)."""
        if self.val is None:
            return self
        if self.val % 2:
            raise ValueError("odd valuation has no square root in F")
        p = self.ctx.p
        u0 = self.unit % p
        r = next((t for t in range(1, p) if t * t % p == u0), None)
        if r is None:
            raise ValueError("unit part is not a square")
        rel = int(self.relprec)
        mod = p**rel
        y = r
        for _ in range(rel.bit_length() + 1):
            y = (y + self.unit * pow(y, -1, mod)) * pow(2, -1, mod) % mod
        return PadicNum(self.ctx, self.val // 2, y, self.val // 2 + rel)

    def __repr__(self):
        if self.val is None:
            return "0" if self.absprec == INF else f"O(p^{self.absprec})"
        return f"{self.unit}*{self.ctx.p}^{self.val}+O({self.ctx.p}^{self.absprec})"


@dataclass(frozen=True, eq=False)
class ExtNum:
    """a + b*alpha in E."""

    a: PadicNum
    b: PadicNum

    @property
    def ctx(self) -> FieldParams:
        return self.a.ctx

    def unit_like(self) -> "ExtNum":
        return self.ctx.ext(1)

    def _coerce(self, y) -> "ExtNum":
        if isinstance(y, ExtNum):
            return y
        if isinstance(y, (PadicNum, int, Fraction)):
            return ExtNum(self.ctx.num(y), self.ctx.zero())
        return NotImplemented

    def __add__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return ExtNum(self.a + y.a, self.b + y.b)

    __radd__ = __add__

    def __neg__(self):
        return ExtNum(-self.a, -self.b)

    def __sub__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return ExtNum(self.a - y.a, self.b - y.b)

    def __rsub__(self, y):
        return self._coerce(y) - self

    def __mul__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        z = self.ctx.z
        return ExtNum(self.a * y.a + z * (self.b * y.b), self.a * y.b + self.b * y.a)

    __rmul__ = __mul__

    def conj(self) -> "ExtNum":
        return ExtNum(self.a, -self.b)

    def norm(self) -> PadicNum:
        return self.a * self.a - self.ctx.z * (self.b * self.b)

    def trace(self) -> PadicNum:
        return self.a + self.a

    def valuation(self) -> float:
        """v_E = min of the component valuations (E/F unramified)."""
        vs = []
        for c in (self.a, self.b):
            if c.val is not None:
                vs.append(c.val)
            elif c.absprec != INF:
                vs.append(None)
        known = [v for v in vs if v is not None]
        if None in vs:
            bound = min(c.absprec for c in (self.a, self.b) if c.val is None)
            if not known or min(known) >= bound:
                raise PrecisionError("valuation undecidable at this precision")
        return min(known) if known else INF

    def val_at_least(self, r: int) -> bool:
        return self.a.val_at_least(r) and self.b.val_at_least(r)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def inv(self) -> "ExtNum":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero in E")
        ni = n.inv()
        return ExtNum(self.a * ni, -self.b * ni)

    def __truediv__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return self * y.inv()

    def __rtruediv__(self, y):
        return self._coerce(y) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.ctx.ext(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return (self - y).is_zero()

    __hash__ = None

    def residue(self, k: int) -> tuple[int, int]:
        return self.a.residue(k), self.b.residue(k)

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})a"


def ext_norm(x: ExtNum) -> PadicNum:
    return x.norm()


def ext_trace(x: ExtNum) -> PadicNum:
    return x.trace()


def subgroup_member(which: str, x: ExtNum, r: int | None = None) -> bool:
    """Membership in E1, E0, E1_r or E1_0 (the latter is E1 cap F^x(1+P_E))."""
    one = x.ctx.one()
    if which == "E0":
        return x.trace().is_zero()
    in_e1 = (x.norm() - one).is_zero()
    if which == "E1":
        return in_e1
    if which == "E1_r":
        if r is None:
            raise ValueError("E1_r needs r")
        return in_e1 and (x - one).val_at_least(r)
    if which == "E1_0":
        # a unit x lies in F^x(1+P_E) exactly when its alpha-part is in P_F
        return in_e1 and x.b.val_at_least(1)
    raise ValueError(f"unknown subgroup {which!r}")


def psi(x: PadicNum) -> CycVal:
    """psi(x) = exp(2 pi i frac_p(x/p)); trivial exactly on P_F."""
    p = x.ctx.p
    if x.val is None or x.val >= 1:
        if x.val is None and x.absprec < 1:
            raise PrecisionError("psi undecidable: x known only modulo p^%s" % x.absprec)
        return CycVal(p)
    m = 1 - x.val
    if x.absprec < 1:
        raise PrecisionError("psi needs x modulo P_F")
    return CycVal(p, m, x.unit % p**m)


def chi(x: PadicNum) -> CycVal:
    """chi(x) = psi(p x); conductor O_F."""
    return psi(x * x.ctx.uniformizer)
