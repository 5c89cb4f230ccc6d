"""Integer kernels for SL2, E and D modulo powers of the maximal ideal.

Elements are plain tuples so they hash and compare cheaply:
  SL2 mod p^L: (a, b, c, d)
  E   mod p^L: (x, y) for x + y alpha
  D   mod P_D^L: (a0, a1, c0, c1) for a + c delta, a mod p^ceil(L/2), c mod p^floor(L/2)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


def vp_mod(x: int, p: int, cap: int) -> int:
    """v_p of x viewed modulo p^cap (cap if x == 0 there)."""
    x %= p**cap
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class Residues:
    p: int
    z: int
    L: int

    @property
    def mod(self) -> int:
        return self.p**self.L

    # ---- E mod p^L
    def emul(self, x, y):
        m = self.mod
        return ((x[0] * y[0] + self.z * x[1] * y[1]) % m, (x[0] * y[1] + x[1] * y[0]) % m)

    def econj(self, x):
        return (x[0], -x[1] % self.mod)

    def enorm(self, x) -> int:
        return (x[0] * x[0] - self.z * x[1] * x[1]) % self.mod

    def einv(self, x):
        ni = pow(self.enorm(x), -1, self.mod)
        return (x[0] * ni % self.mod, -x[1] * ni % self.mod)

    def epow(self, x, k: int):
        r = (1, 0)
        for _ in range(k):
            r = self.emul(r, x)
        return r

    def e1(self, level: int = 0) -> list:
        """Residues of E1_level (E1 when level == 0) modulo p^L."""
        p, m = self.p, self.mod
        step = p**level
        out = []
        for x0, y0 in product(range(0, m, step if level else 1), range(0, m, step if level else 1)):
            x = (x0 + 1) % m if level else x0
            if (x * x - self.z * y0 * y0) % m == 1:
                out.append((x, y0))
        return out

    def e_level(self, x) -> int:
        return min(vp_mod(x[0] - 1, self.p, self.L), vp_mod(x[1], self.p, self.L))

    # ---- SL2 mod p^L
    def iota(self, x):
        m = self.mod
        return (x[0] % m, self.z * x[1] % m, x[1] % m, x[0] % m)

    def mul(self, x, y):
        m = self.mod
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % m, (a * f + b * h) % m, (c * e + d * g) % m, (c * f + d * h) % m)

    def inv(self, x):
        m = self.mod
        a, b, c, d = x
        return (d, -b % m, -c % m, a)

    def level(self, x) -> int:
        p, L = self.p, self.L
        a, b, c, d = x
        return min(vp_mod(a - 1, p, L), vp_mod(b, p, L), vp_mod(c, p, L), vp_mod(d - 1, p, L))

    def is_minus(self, x, r: int) -> bool:
        """Membership in SL2^{r_}: diagonal = 1 mod p^{r-1}, off-diagonal = 0 mod p^r."""
        p, L = self.p, self.L
        a, b, c, d = x
        return (vp_mod(a - 1, p, L) >= r - 1 and vp_mod(d - 1, p, L) >= r - 1
                and vp_mod(b, p, L) >= min(r, L) and vp_mod(c, p, L) >= min(r, L))

    def sl2(self, j: int = 0) -> list:
        """All of SL2^j(O_F) modulo p^L."""
        p, m = self.p, self.mod
        if j >= self.L:
            return [(1, 0, 0, 1)]
        step = p**j
        out = []
        rng = range(0, m, step)
        if j > 0:
            for a0, b, c in product(rng, rng, rng):
                a = (1 + a0) % m
                out.append((a, b, c, (1 + b * c) * pow(a, -1, m) % m))
            return out
        for a, b, c in product(range(m), repeat=3):
            if a % p:
                out.append((a, b, c, (1 + b * c) * pow(a, -1, m) % m))
        # a non-unit forces b to be a unit; solve for c instead
        for a, b, d in product(range(0, m, p), range(m), range(m)):
            if b % p:
                out.append((a, b, (a * d - 1) * pow(b, -1, m) % m, d))
        return out

    def mu_bar(self, lam):
        """conj(mu) for the Hilbert-90 unit mu with mu/conj(mu) = lam."""
        mu = ((lam[0] + 1) % self.mod, lam[1])
        if self.enorm(mu) % self.p == 0:
            mu = self.emul((0, 1), ((1 - lam[0]) % self.mod, -lam[1] % self.mod))
        return self.econj(mu)

    def sigma_matrix(self, lam):
        """(M, M^{-1}) with sigma_lam(g) = M g M^{-1}."""
        mb = self.mu_bar(lam)
        m = self.iota(mb)
        ni = pow(self.enorm(mb), -1, self.mod)
        mi = self.iota(self.econj(mb))
        return m, tuple(v * ni % self.mod for v in mi)

    def sigma(self, lam, g):
        m, mi = self.sigma_matrix(lam)
        return self.mul(self.mul(m, g), mi)

    # ---- D mod P_D^L
    @property
    def A(self) -> int:
        return (self.L + 1) // 2

    @property
    def C(self) -> int:
        return self.L // 2

    def qmul(self, x, y):
        p, z = self.p, self.z
        ma, mc = p**self.A, p**self.C
        a0, a1, c0, c1 = x
        b0, b1, d0, d1 = y
        # (a + c delta)(b + d delta) = (ab + p c conj(d)) + (a d + c conj(b)) delta
        r0 = (a0 * b0 + z * a1 * b1 + p * (c0 * d0 - z * c1 * d1)) % ma
        r1 = (a0 * b1 + a1 * b0 + p * (c1 * d0 - c0 * d1)) % ma
        s0 = (a0 * d0 + z * a1 * d1 + c0 * b0 - z * c1 * b1) % mc
        s1 = (a0 * d1 + a1 * d0 + c1 * b0 - c0 * b1) % mc
        return (r0, r1, s0, s1)

    def qnorm(self, x) -> int:
        p, z = self.p, self.z
        a0, a1, c0, c1 = x
        return (a0 * a0 - z * a1 * a1 - p * (c0 * c0 - z * c1 * c1)) % p**self.A

    def qinv1(self, x):
        """Inverse of a norm-one element: the main involution."""
        ma, mc = self.p**self.A, self.p**self.C
        a0, a1, c0, c1 = x
        return (a0, -a1 % ma, -c0 % mc, -c1 % mc)

    def qlevel(self, x) -> int:
        """v_D(x - 1), capped at L."""
        p = self.p
        a0, a1, c0, c1 = x
        va = min(vp_mod(a0 - 1, p, self.A), vp_mod(a1, p, self.A))
        vc = min(vp_mod(c0, p, self.C), vp_mod(c1, p, self.C)) if self.C else 0
        return min(2 * va, 2 * vc + 1 if self.C else self.L, self.L)

    def d1(self, j: int = 0) -> list:
        """D1_j modulo P_D^L."""
        return list(_d1_cached(self, j))

    def _d1(self, j: int) -> tuple:
        p = self.p
        ma, mc = p**self.A, p**self.C
        out = []
        for a0, a1 in product(range(ma), repeat=2):
            if (a0 * a0 - self.z * a1 * a1 - 1) % p:
                continue
            for c0, c1 in product(range(mc), repeat=2):
                x = (a0, a1, c0, c1)
                if self.qnorm(x) == 1 % ma and (j == 0 or self.qlevel(x) >= j):
                    out.append(x)
        return tuple(out)

    def e_in_d(self, lam):
        ma = self.p**self.A
        return (lam[0] % ma, lam[1] % ma, 0, 0)

    def sigma_prime(self, lam, h):
        """h1 + h2 delta -> h1 + lam^{-1} h2 delta on residues."""
        mc = self.p**self.C
        li = self.econj(lam)
        c = ((li[0] * h[2] + self.z * li[1] * h[3]) % mc, (li[0] * h[3] + li[1] * h[2]) % mc) if mc > 1 else (0, 0)
        return (h[0], h[1], c[0], c[1])


def closure(gens, mul, identity) -> set:
    """Subgroup generated by gens (finite group, BFS)."""
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generators(elements, mul, identity) -> list:
    """A small generating set for the group formed by elements."""
    gens: list = []
    span = {identity}
    for x in elements:
        if x not in span:
            gens.append(x)
            span = closure(gens, mul, identity)
            if len(span) == len(elements):
                break
    return gens


@lru_cache(maxsize=64)
def _d1_cached(R: Residues, j: int) -> tuple:
    return R._d1(j)
