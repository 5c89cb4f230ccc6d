"""Exact values in the p-power cyclotomic fields.

``CycVal`` is a single root of unity exp(2*pi*i*e/p^m); ``CycNum`` is a
Q-linear combination of them, kept in the power basis of Q(zeta_{p^M}).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


@dataclass(frozen=True, slots=True)
class CycVal:
    """exp(2*pi*i*e / p^m) in canonical form (m == 0 or p does not divide e)."""

    p: int
    m: int = 0
    e: int = 0

    def __post_init__(self):
        m, e = self.m, self.e % self.p**self.m if self.m > 0 else 0
        while m > 0 and e % self.p == 0:
            e //= self.p
            m -= 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    @classmethod
    def one(cls, p: int) -> "CycVal":
        return cls(p, 0, 0)

    def is_one(self) -> bool:
        return self.m == 0

    def lift(self, m: int) -> int:
        """Exponent of this value as a power of zeta_{p^m} (m >= self.m)."""
        if m < self.m:
            raise ValueError("cannot lift to a smaller order")
        return self.e * self.p ** (m - self.m)

    def __mul__(self, other: "CycVal") -> "CycVal":
        if not isinstance(other, CycVal):
            return NotImplemented
        m = max(self.m, other.m)
        return CycVal(self.p, m, self.lift(m) + other.lift(m))

    def __pow__(self, k: int) -> "CycVal":
        return CycVal(self.p, self.m, self.e * k)

    def inverse(self) -> "CycVal":
        return CycVal(self.p, self.m, -self.e)

    conj = inverse

    def root(self, k: int) -> "CycVal":
        """A p^k-th root: raising the result to p^k gives back self."""
        return CycVal(self.p, self.m + k, self.e) if self.m else self

    def to_complex(self) -> complex:
        if self.m == 0:
            return 1 + 0j
        return cmath.exp(2j * cmath.pi * self.e / self.p**self.m)

    def __repr__(self):
        return "1" if self.m == 0 else f"z{self.p}^{self.m}[{self.e}]"


def _phi(p: int, m: int) -> int:
    return 1 if m == 0 else (p - 1) * p ** (m - 1)


def _reduce(coeffs: dict[int, Fraction], p: int, m: int) -> tuple[Fraction, ...]:
    """Power-basis coordinates in Q(zeta_{p^m}) of sum c_e zeta^e."""
    n = p**m
    vec = [Fraction(0)] * n
    for e, c in coeffs.items():
        vec[e % n] += c
    if m == 0:
        return (vec[0],)
    ph = _phi(p, m)
    step = p ** (m - 1)
    # zeta^{i + (p-1)step} = -sum_{j<p-1} zeta^{i + j step}
    for e in range(n - 1, ph - 1, -1):
        c = vec[e]
        if c:
            vec[e] = Fraction(0)
            i = e - (p - 1) * step
            for j in range(p - 1):
                vec[i + j * step] -= c
    return tuple(vec[:ph])


class CycNum:
    """Element of Q(zeta_{p^m}) with exact rational coordinates."""

    __slots__ = ("p", "m", "vec")

    def __init__(self, p: int, m: int = 0, vec: Iterable = (0,)):
        self.p = p
        self.m = m
        v = tuple(Fraction(x) for x in vec)
        ph = _phi(p, m)
        if len(v) != ph:
            v = (v + (Fraction(0),) * ph)[:ph]
        self.vec = v

    @classmethod
    def from_terms(cls, p: int, terms: Iterable[tuple[object, CycVal]]) -> "CycNum":
        terms = list(terms)
        m = max((t.m for _, t in terms), default=0)
        coeffs: dict[int, Fraction] = {}
        for c, t in terms:
            e = t.lift(m)
            coeffs[e] = coeffs.get(e, Fraction(0)) + Fraction(c)
        return cls(p, m, _reduce(coeffs, p, m))

    @classmethod
    def of(cls, v: "CycVal | int | Fraction", p: int | None = None) -> "CycNum":
        if isinstance(v, CycVal):
            return cls.from_terms(v.p, [(1, v)])
        return cls(p, 0, (Fraction(v),))

    def _at(self, m: int) -> tuple[Fraction, ...]:
        if m == self.m:
            return self.vec
        k = self.p ** (m - self.m)
        coeffs = {i * k: c for i, c in enumerate(self.vec) if c}
        return _reduce(coeffs, self.p, m)

    def __add__(self, other):
        other = self._coerce(other)
        m = max(self.m, other.m)
        return CycNum(self.p, m, [a + b for a, b in zip(self._at(m), other._at(m))])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.p, self.m, [-a for a in self.vec])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, self.m, [a * other for a in self.vec])
        other = self._coerce(other)
        m = max(self.m, other.m)
        a, b = self._at(m), other._at(m)
        coeffs: dict[int, Fraction] = {}
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    coeffs[i + j] = coeffs.get(i + j, Fraction(0)) + x * y
        return CycNum(self.p, m, _reduce(coeffs, self.p, m))

    __rmul__ = __mul__

    def conj(self) -> "CycNum":
        coeffs = {-i: c for i, c in enumerate(self.vec) if c}
        return CycNum(self.p, self.m, _reduce(coeffs, self.p, self.m))

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, CycVal):
            return CycNum.of(other)
        return CycNum(self.p, 0, (Fraction(other),))

    def is_zero(self) -> bool:
        return not any(self.vec)

    def rational(self) -> Fraction | None:
        """The value as a rational number, or None if it is not rational."""
        if any(self.vec[1:]):
            return None
        return self.vec[0]

    def __eq__(self, other):
        if isinstance(other, (CycNum, CycVal, int, Fraction)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def to_complex(self) -> complex:
        if self.m == 0:
            return complex(self.vec[0])
        z = cmath.exp(2j * cmath.pi / self.p**self.m)
        return sum(float(c) * z**i for i, c in enumerate(self.vec))

    def __repr__(self):
        r = self.rational()
        if r is not None:
            return f"CycNum({r})"
        return f"CycNum(p={self.p}, m={self.m}, {self.to_complex():.6g})"
