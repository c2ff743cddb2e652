"""Closed-form isometry classifications.

Cyclic groups over finite fields: classes are A = {1..m}, m = gcd(q^k-1, nk/r),
modulo a ~ b iff aj = b (mod m) for some j prime to n with j = 1 (mod r/k).

Elementary abelian groups over C: classes are congruence classes of
alternating bilinear forms over F_p, represented by the forms alpha_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .cocycles import CocycleTable
from .errors import IndexOutOfRange, InvalidParams, NotAlternating
from .ffield import is_prime
from .groups import general_linear, units_mod


@dataclass(frozen=True)
class CyclicParams:
    n: int
    q: int
    r: int
    k: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise InvalidParams(f"q={self.q} is not prime")
        if min(self.n, self.r, self.k) < 1 or self.r % self.k or self.n % (self.r // self.k):
            raise InvalidParams(f"need k | r and (r/k) | n: {self}")

    @property
    def m(self) -> int:
        return gcd(self.q**self.k - 1, self.n * self.k // self.r)

    @property
    def compatible_units(self) -> list[int]:
        step = self.r // self.k
        return [j for j in units_mod(self.n) if (j - 1) % step == 0]


@dataclass(frozen=True)
class CyclicClassification:
    m: int
    classes: list[list[int]]

    @property
    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    @property
    def count(self) -> int:
        return len(self.classes)


def partition_by_multipliers(m: int, js) -> list[list[int]]:
    """Orbits of {1..m} (m standing for 0) under a -> a*j mod m."""
    seen: set[int] = set()
    classes = []
    for a in range(1, m + 1):
        if a in seen:
            continue
        orbit = {((a * j - 1) % m) + 1 for j in js} | {a}
        # close under the generated monoid; js need not be a group mod m
        frontier = list(orbit)
        while frontier:
            b = frontier.pop()
            for j in js:
                c = ((b * j - 1) % m) + 1
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        seen |= orbit
        classes.append(sorted(orbit))
    return sorted(classes)


def classify_cyclic(params: CyclicParams) -> CyclicClassification:
    m = params.m
    return CyclicClassification(m, partition_by_multipliers(m, params.compatible_units))


def is_semisimple_cyclic(params: CyclicParams) -> bool:
    return gcd(params.n * params.k // params.r, params.q) == 1


def is_classical(params: CyclicParams) -> bool:
    """Faithful action: n*k == r."""
    return params.n * params.k == params.r


# -- alternating bicharacters on (C_p)^s -------------------------------------

def _as_matrix(M, p: int) -> np.ndarray:
    return np.array(M, dtype=np.int64) % p


def is_alternating(M, p: int) -> bool:
    A = _as_matrix(M, p)
    return bool(np.all(np.diag(A) == 0) and np.array_equal(A, (-A.T) % p))


@dataclass(frozen=True)
class Bicharacter:
    """Alternating form on (C_p)^s; entry (j, l) is the exponent of zeta_p."""

    p: int
    s: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        A = _as_matrix(self.matrix, self.p)
        if A.shape != (self.s, self.s):
            raise ValueError("matrix must be s x s")
        if not is_alternating(A, self.p):
            raise NotAlternating("matrix is not zero-diagonal skew-symmetric")
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in A))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @property
    def rank(self) -> int:
        return _rank_mod_p(self.array, self.p)

    @property
    def radical_rank(self) -> int:
        return self.s - self.rank


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = A.copy() % p
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, c]), -1, p) % p
        for i in range(rows):
            if i != rank and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[rank]) % p
        rank += 1
    return rank


def alpha_matrix(i: int, p: int, s: int) -> np.ndarray:
    """alpha_i: sigma_j pairs with sigma_{j+i} for j < i (0-based)."""
    if not 0 <= i <= s // 2:
        raise IndexOutOfRange(f"i={i} outside 0..{s // 2}")
    A = np.zeros((s, s), dtype=np.int64)
    for j in range(i):
        A[j, j + i] = 1
        A[j + i, j] = p - 1 if p > 1 else 0
    return A % p


def bichar_from_cocycle(f: CocycleTable) -> Bicharacter:
    """alpha_f(g, h) = f(g, h) - f(h, g), read on the standard generators."""
    G = f.group
    if G.kind != "elab":
        raise ValueError("bicharacters are defined on (C_p)^s")
    if np.any(f.mult != 1 % f.N):
        raise ValueError("bicharacters need the trivial action")
    p, s, N = G.p, G.s, f.N
    gens = G.generators
    M = np.zeros((s, s), dtype=np.int64)
    for a, g in enumerate(gens):
        for b, h in enumerate(gens):
            d = (f.value(g, h) - f.value(h, g)) % N
            if N % p == 0:
                step = N // p
                if d % step:
                    raise NotAlternating(f"value {d} mod {N} is not a p-th root of unity")
                M[a, b] = d // step
            elif d:
                raise NotAlternating(f"Z/{N} has no nontrivial p-th roots of unity")
    return Bicharacter(p, s, tuple(map(tuple, M.tolist())))


@dataclass(frozen=True)
class NormalForm:
    i: int
    change_of_basis: np.ndarray  # columns are the new basis; P^T M P == alpha_i


def normal_form(b: Bicharacter) -> NormalForm:
    """Symplectic reduction: pair off vectors with B(u, v) = 1, rest is the radical."""
    p, s = b.p, b.s
    M = b.array

    def form(x, y):
        return int(x @ M @ y % p)

    work = [np.eye(s, dtype=np.int64)[:, j] for j in range(s)]
    us, vs = [], []
    while True:
        hit = next(((a, c) for a in range(len(work)) for c in range(len(work))
                    if form(work[a], work[c])), None)
        if hit is None:
            break
        a, c = hit
        u, v = work[a], work[c]
        v = v * pow(form(u, v), -1, p) % p
        work = [w for t, w in enumerate(work) if t not in (a, c)]
        work = [(w - form(w, v) * u + form(w, u) * v) % p for w in work]
        us.append(u)
        vs.append(v)
    P = np.stack(us + vs + work, axis=1) % p if s else np.zeros((0, 0), dtype=np.int64)
    return NormalForm(len(us), P)


def congruent_image(M, P, p: int) -> np.ndarray:
    P = np.asarray(P, dtype=np.int64)
    return P.T @ np.asarray(M, dtype=np.int64) @ P % p


@dataclass(frozen=True)
class ElabClass:
    i: int
    p: int
    s: int

    @property
    def radical_rank(self) -> int:
        return self.s - 2 * self.i

    @property
    def matrix_size(self) -> int:
        return self.p**self.i

    @property
    def copies(self) -> int:
        return self.p ** (self.s - 2 * self.i)

    @property
    def wedderburn(self) -> tuple[int, int]:
        return (self.matrix_size, self.copies)

    @property
    def irreducible_codes(self) -> int:
        return self.copies

    @property
    def total_codes(self) -> int:
        """Two-sided ideals of a product of `copies` simple algebras."""
        return 2**self.copies

    @property
    def simple(self) -> bool:
        return self.copies == 1

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "radical_rank": self.radical_rank,
            "matrix_size": self.matrix_size,
            "copies": self.copies,
            "irreducible_codes": self.irreducible_codes,
            "total_codes": self.total_codes,
            "simple": self.simple,
        }


def wedderburn(i: int, p: int, s: int) -> ElabClass:
    if not is_prime(p) or s < 1:
        raise ValueError("need p prime and s >= 1")
    if not 0 <= i <= s // 2:
        raise IndexOutOfRange(f"i={i} outside 0..{s // 2}")
    return ElabClass(i, p, s)


def count_elab_finite_field(p: int, s: int, q: int, r: int) -> int:
    """Isometry classes of twisted (C_p)^s-algebras over F_{q^r}."""
    if gcd(p, q**r - 1) == 1:
        return 1
    return (3 * s) // 2 + 1


def count_elab_complex(s: int) -> int:
    return s // 2 + 1


def alternating_matrices(p: int, s: int) -> list[np.ndarray]:
    """Every alternating s x s matrix over F_p."""
    slots = [(j, l) for j in range(s) for l in range(j + 1, s)]
    out = []
    for vals in itertools.product(range(p), repeat=len(slots)):
        A = np.zeros((s, s), dtype=np.int64)
        for (j, l), v in zip(slots, vals):
            A[j, l] = v
            A[l, j] = (-v) % p
        out.append(A)
    return out


def are_congruent(A, B, p: int) -> np.ndarray | None:
    """Search GL_s(F_p) for P with P^T A P == B."""
    B = np.asarray(B, dtype=np.int64) % p
    s = B.shape[0]
    for P in general_linear(p, s):
        if np.array_equal(congruent_image(A, P, p), B):
            return np.array(P, dtype=np.int64)
    return None


def congruence_classes(p: int, s: int) -> list[list[np.ndarray]]:
    """Group all alternating matrices by exhaustive pairwise congruence tests."""
    classes: list[list[np.ndarray]] = []
    for A in alternating_matrices(p, s):
        for cls in classes:
            if are_congruent(cls[0], A, p) is not None:
                cls.append(A)
                break
        else:
            classes.append([A])
    return classes
