"""Linear algebra over the ring Z/N.

Z/N is not a field for composite N, so Gaussian elimination is replaced by a
Smith normal form computed with unimodular row and column operations (extended
gcd steps).  Everything runs on int64 numpy arrays with entries kept in
[0, N); N is bounded by the desk-scale field bound (2**20), so every product
stays below 2**41.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        qt, rem = divmod(a, b)
        a, b = b, rem
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    return a, s0, t0


def unit_normalizer(a: int, N: int) -> int:
    """A unit u mod N with a*u == gcd(a, N) (mod N)."""
    g = gcd(a, N)
    M = N // g
    u0 = pow(a // g, -1, M) if M > 1 else 0
    for t in range(g):
        u = u0 + t * M
        if gcd(u, N) == 1:
            return u % N
    raise AssertionError("no unit lift")  # pragma: no cover


def element_order(a: int, N: int) -> int:
    """Additive order of a in Z/N."""
    return N // gcd(a % N, N)


@dataclass
class SmithForm:
    """P @ A @ Q == diag(diag) (mod N).

    ``diag[i]`` is 0 or a proper divisor of N.  P/Pinv are only populated
    when requested.
    """

    N: int
    shape: tuple[int, int]
    diag: list[int]
    P: np.ndarray | None
    Pinv: np.ndarray | None
    Q: np.ndarray
    Qinv: np.ndarray

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


class _Smith:
    def __init__(self, A: np.ndarray, N: int, track_left: bool):
        self.N = N
        self.A = np.array(A, dtype=np.int64) % N
        m, n = self.A.shape
        self.track_left = track_left
        self.P = np.eye(m, dtype=np.int64) if track_left else None
        self.Pinv = np.eye(m, dtype=np.int64) if track_left else None
        self.Q = np.eye(n, dtype=np.int64)
        self.Qinv = np.eye(n, dtype=np.int64)

    # row ops: A <- E A, P <- E P, Pinv <- Pinv E^-1
    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[[i, j]] = self.A[[j, i]]
        if self.track_left:
            self.P[[i, j]] = self.P[[j, i]]
            self.Pinv[:, [i, j]] = self.Pinv[:, [j, i]]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        self.A[:, [i, j]] = self.A[:, [j, i]]
        self.Q[:, [i, j]] = self.Q[:, [j, i]]
        self.Qinv[[i, j]] = self.Qinv[[j, i]]

    def scale_row(self, t: int, u: int) -> None:
        N = self.N
        self.A[t] = self.A[t] * u % N
        if self.track_left:
            self.P[t] = self.P[t] * u % N
            self.Pinv[:, t] = self.Pinv[:, t] * pow(u, -1, N) % N

    def mix_rows(self, t: int, i: int, a: int, b: int, c: int, d: int) -> None:
        # [row_t; row_i] <- [[a, b], [c, d]] @ [row_t; row_i], det == 1
        N = self.N
        rt, ri = self.A[t].copy(), self.A[i].copy()
        self.A[t] = (a * rt + b * ri) % N
        self.A[i] = (c * rt + d * ri) % N
        if self.track_left:
            pt, pi = self.P[t].copy(), self.P[i].copy()
            self.P[t] = (a * pt + b * pi) % N
            self.P[i] = (c * pt + d * pi) % N
            ct, ci = self.Pinv[:, t].copy(), self.Pinv[:, i].copy()
            self.Pinv[:, t] = (d * ct - c * ci) % N
            self.Pinv[:, i] = (-b * ct + a * ci) % N

    def mix_cols(self, t: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # col_t <- a col_t + b col_j ; col_j <- c col_t + d col_j, det == 1
        N = self.N
        ct, cj = self.A[:, t].copy(), self.A[:, j].copy()
        self.A[:, t] = (a * ct + b * cj) % N
        self.A[:, j] = (c * ct + d * cj) % N
        qt, qj = self.Q[:, t].copy(), self.Q[:, j].copy()
        self.Q[:, t] = (a * qt + b * qj) % N
        self.Q[:, j] = (c * qt + d * qj) % N
        rt, rj = self.Qinv[t].copy(), self.Qinv[j].copy()
        self.Qinv[t] = (d * rt - c * rj) % N
        self.Qinv[j] = (-b * rt + a * rj) % N

    def clear_column(self, t: int) -> bool:
        """Zero A[t+1:, t]; return True if the pivot value changed."""
        N = self.N
        A = self.A
        d = int(A[t, t])
        changed = False
        below = np.nonzero(A[t + 1:, t])[0] + t + 1
        if len(below) == 0:
            return False
        div = below[A[below, t] % d == 0]
        if len(div):
            f = (A[div, t] // d) % N
            A[div] = (A[div] - f[:, None] * A[t]) % N
            if self.track_left:
                self.P[div] = (self.P[div] - f[:, None] * self.P[t]) % N
                self.Pinv[:, t] = (self.Pinv[:, t] + self.Pinv[:, div] @ f) % N
        for i in below:
            b = int(A[i, t])
            if b == 0:
                continue
            g, s, u = ext_gcd(d, b)
            self.mix_rows(t, i, s % N, u % N, (-b // g) % N, (d // g) % N)
            d = int(A[t, t])
            changed = True
        return changed

    def clear_row(self, t: int) -> bool:
        N = self.N
        A = self.A
        d = int(A[t, t])
        changed = False
        right = np.nonzero(A[t, t + 1:])[0] + t + 1
        if len(right) == 0:
            return False
        div = right[A[t, right] % d == 0]
        if len(div):
            f = (A[t, div] // d) % N
            A[:, div] = (A[:, div] - A[:, [t]] * f[None, :]) % N
            self.Q[:, div] = (self.Q[:, div] - self.Q[:, [t]] * f[None, :]) % N
            self.Qinv[t] = (self.Qinv[t] + f @ self.Qinv[div]) % N
        for j in right:
            b = int(A[t, j])
            if b == 0:
                continue
            g, s, u = ext_gcd(d, b)
            self.mix_cols(t, j, s % N, u % N, (-b // g) % N, (d // g) % N)
            d = int(A[t, t])
            changed = True
        return changed

    def normalize_pivot(self, t: int) -> None:
        a = int(self.A[t, t])
        u = unit_normalizer(a, self.N)
        if u != 1:
            self.scale_row(t, u)

    def run(self) -> list[int]:
        N = self.N
        A = self.A
        m, n = A.shape
        diag: list[int] = []
        if N == 1:
            self.A[:] = 0
            return [0] * min(m, n)
        for t in range(min(m, n)):
            sub = A[t:, t:]
            nz = np.argwhere(sub != 0)
            if len(nz) == 0:
                diag.extend([0] * (min(m, n) - t))
                break
            # prefer the entry generating the largest ideal
            gs = np.gcd(sub[nz[:, 0], nz[:, 1]], N)
            i, j = nz[int(np.argmin(gs))]
            self.swap_rows(t, t + int(i))
            self.swap_cols(t, t + int(j))
            while True:
                self.normalize_pivot(t)
                if self.clear_column(t):
                    continue
                self.normalize_pivot(t)
                if self.clear_row(t):
                    continue
                if not A[t + 1:, t].any():
                    break
            diag.append(int(A[t, t]))
        return diag


def smith_mod(A: np.ndarray, N: int, track_left: bool = False) -> SmithForm:
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    s = _Smith(A, N, track_left)
    diag = s.run()
    return SmithForm(N, A.shape, diag, s.P, s.Pinv, s.Q, s.Qinv)


def solve_mod(A: np.ndarray, b: np.ndarray, N: int) -> np.ndarray | None:
    """One solution x of A x == b (mod N), or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    b = np.asarray(b, dtype=np.int64).reshape(m) % N
    if N == 1:
        return np.zeros(n, dtype=np.int64)
    sf = smith_mod(A, N, track_left=True)
    c = sf.P @ b % N
    y = np.zeros(n, dtype=np.int64)
    for i in range(m):
        d = sf.diag[i] if i < len(sf.diag) else 0
        ci = int(c[i])
        if d == 0:
            if ci != 0:
                return None
            continue
        if ci % d:
            return None
        y[i] = ci // d
    return sf.Q @ y % N


def matrix_rank_mod_p(A: np.ndarray, p: int) -> int:
    """Rank over the prime field F_p."""
    return smith_mod(A, p).rank


def elementary_divisors(orders: list[int]) -> list[int]:
    """Prime-power decomposition of a product of cyclic groups."""
    out: list[int] = []
    for o in orders:
        x = o
        f = 2
        while f * f <= x:
            if x % f == 0:
                pp = 1
                while x % f == 0:
                    x //= f
                    pp *= f
                out.append(pp)
            f += 1
        if x > 1:
            out.append(x)
    return sorted(out)


def invariant_factors(orders: list[int]) -> list[int]:
    """Canonical d_1 | d_2 | ... for the product of cyclic groups of given orders."""
    by_prime: dict[int, list[int]] = {}
    for pp in elementary_divisors(orders):
        p = next(f for f in range(2, pp + 1) if pp % f == 0)
        by_prime.setdefault(p, []).append(pp)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for pows in by_prime.values():
        pows.sort(reverse=True)
        for idx, pp in enumerate(pows):
            factors[length - 1 - idx] *= pp
    return factors


class Subquotient:
    """ker(D_out) / im(D_in) for maps of free Z/N-modules.

    ``D_out`` is (rows x m), ``D_in`` is (m x m1).  The quotient is presented
    as a product of cyclic groups of orders ``self.orders``; ``coords`` maps a
    kernel vector to its class coordinates and ``lift`` goes back.
    """

    def __init__(self, D_out: np.ndarray, D_in: np.ndarray, N: int):
        self.N = N
        m = D_in.shape[0]
        self.m = m
        if N == 1 or m == 0:
            self.orders: list[int] = []
            self._sf1 = None
            return
        if D_out.shape[0] == 0:
            D_out = np.zeros((1, m), dtype=np.int64)
        sf1 = smith_mod(D_out, N)
        self._sf1 = sf1
        # kernel in y = Qinv x coordinates: y_i in c_i Z/N, order o_i
        c = np.ones(m, dtype=np.int64)
        for i, d in enumerate(sf1.diag):
            if d != 0:
                c[i] = N // gcd(d, N)
        self._c = c
        o = N // c
        self._o = o
        # relation matrix in t-coordinates
        T = self._to_t(D_in % N)
        R = np.concatenate([np.diag(o), T], axis=1) % N
        sf2 = smith_mod(R, N, track_left=True)
        self._sf2 = sf2
        diag = list(sf2.diag) + [0] * (m - len(sf2.diag))
        orders = [gcd(d, N) if d else N for d in diag]
        self._keep = [i for i, od in enumerate(orders) if od > 1]
        self.orders = [orders[i] for i in self._keep]

    def _to_t(self, X: np.ndarray) -> np.ndarray:
        Y = self._sf1.Qinv @ X % self.N
        if np.any(Y % self._c[:, None] if Y.ndim == 2 else Y % self._c):
            raise ValueError("vector is not in the kernel")
        if Y.ndim == 2:
            return (Y // self._c[:, None]) % self._o[:, None]
        return (Y // self._c) % self._o

    @property
    def order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    def coords(self, x: np.ndarray) -> tuple[int, ...]:
        if not self.orders:
            return ()
        t = self._to_t(np.asarray(x, dtype=np.int64) % self.N)
        z = self._sf2.P @ t % self.N
        return tuple(int(z[i]) % o for i, o in zip(self._keep, self.orders))

    def lift(self, z: tuple[int, ...]) -> np.ndarray:
        if not self.orders:
            return np.zeros(self.m, dtype=np.int64)
        full = np.zeros(self.m, dtype=np.int64)
        for i, v in zip(self._keep, z):
            full[i] = v
        t = self._sf2.Pinv @ full % self.N
        y = t * self._c % self.N
        return self._sf1.Q @ y % self.N
