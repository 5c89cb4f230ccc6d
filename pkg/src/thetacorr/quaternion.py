"""The quaternion division algebra D = E + E*delta, delta^2 = p, delta e = conj(e) delta."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .local_field import ExtNum, FieldParams, PadicNum, PrecisionError


@dataclass(frozen=True, eq=False)
class QuatNum:
    a: ExtNum
    c: ExtNum

    @property
    def ctx(self) -> FieldParams:
        return self.a.ctx

    @classmethod
    def of(cls, ctx: FieldParams, a=0, c=0) -> "QuatNum":
        """Build a + c*delta from ints, Fractions, PadicNums or ExtNums."""

        def e(v):
            return v if isinstance(v, ExtNum) else ExtNum(ctx.num(v), ctx.zero())

        return cls(e(a), e(c))

    @classmethod
    def left_delta(cls, ctx: FieldParams, a, c) -> "QuatNum":
        """Normalize a + delta*c into a + conj(c)*delta."""
        q = cls.of(ctx, a, c)
        return cls(q.a, q.c.conj())

    def unit_like(self) -> "QuatNum":
        return QuatNum.of(self.ctx, 1)

    def _coerce(self, y) -> "QuatNum":
        if isinstance(y, QuatNum):
            return y
        if isinstance(y, (ExtNum, PadicNum, int, Fraction)):
            return QuatNum.of(self.ctx, y)
        return NotImplemented

    def __add__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return QuatNum(self.a + y.a, self.c + y.c)

    __radd__ = __add__

    def __neg__(self):
        return QuatNum(-self.a, -self.c)

    def __sub__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return QuatNum(self.a - y.a, self.c - y.c)

    def __rsub__(self, y):
        return self._coerce(y) - self

    def __mul__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return QuatNum(self.a * y.a + p * (self.c * y.c.conj()), self.a * y.c + self.c * y.a.conj())

    def __rmul__(self, y):
        return self._coerce(y) * self

    def invol(self) -> "QuatNum":
        """Main involution a + c delta -> conj(a) - c delta."""
        return QuatNum(self.a.conj(), -self.c)

    def norm(self) -> PadicNum:
        return self.a.norm() - self.ctx.p * self.c.norm()

    def trace(self) -> PadicNum:
        return self.a.trace()

    def trace_DE(self) -> ExtNum:
        """Tr_{D/E}, taken as twice the E-component."""
        return self.a + self.a

    def inv(self) -> "QuatNum":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero in D")
        ni = n.inv()
        t = self.invol()
        return QuatNum(t.a * ni, t.c * ni)

    def __truediv__(self, y):
        return self * self._coerce(y).inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        r = self.unit_like()
        for _ in range(k):
            r = r * self
        return r

    def valuation(self) -> float:
        """v_D = min(2 v_E(a), 2 v_E(c) + 1)."""
        cands = []
        if not self.a.is_zero():
            cands.append(2 * self.a.valuation())
        if not self.c.is_zero():
            cands.append(2 * self.c.valuation() + 1)
        if cands:
            return min(cands)
        if self.a.a.is_exact_zero() and self.a.b.is_exact_zero() and self.c.a.is_exact_zero() and self.c.b.is_exact_zero():
            return float("inf")
        raise PrecisionError("valuation of an inexact zero")

    def val_at_least(self, r: int) -> bool:
        """Decide v_D(x) >= r."""
        return self.a.val_at_least((r + 1) // 2) and self.c.val_at_least(r // 2)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.c.is_zero()

    def __eq__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return NotImplemented
        return (self - y).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"[{self.a!r}] + [{self.c!r}]d"


def delta(ctx: FieldParams) -> QuatNum:
    return QuatNum.of(ctx, 0, 1)


def quat_subgroup_member(which: str, x: QuatNum, r: int | None = None) -> bool:
    one = x.unit_like()
    if which == "D0":
        return x.trace().is_zero()
    in_d1 = (x.norm() - 1).is_zero()
    if which == "D1":
        return in_d1
    if which == "D1_r":
        if r is None:
            raise ValueError("D1_r needs r")
        return in_d1 and (x - one).val_at_least(r)
    raise ValueError(f"unknown subgroup {which!r}")


def cayley(x):
    """c(x) = (1 - x)(1 + x)^{-1} for a QuatNum or a Mat2."""
    one = x.unit_like()
    s = one + x
    try:
        si = s.inv()
    except ZeroDivisionError as exc:
        raise ZeroDivisionError("1 + x is not invertible") from exc
    return (one - x) * si


def cayley_series(x, terms: int):
    """c(1 + x) as the truncated series sum_{i>=1} (-1)^i (x/2)^i."""
    half = x * Fraction(1, 2) if isinstance(x, QuatNum) else x.scale(Fraction(1, 2))
    total = x - x
    term = x.unit_like()
    for _ in range(terms):
        term = -(term * half)
        total = total + term
    return total


__all__ = ["QuatNum", "delta", "quat_subgroup_member", "cayley", "cayley_series", "PrecisionError"]
