"""Normalized 2-cocycles with values in a cyclic coefficient group Z/N.

Coefficients are written additively: the exponent e stands for x0**e in
F_{q^r}* (or for exp(2 pi i e / N) in the complex case).  A group element g
acts on exponents by multiplication with ``mult[g]``.  In this notation the
cocycle identity reads

    g.f(h, l) - f(gh, l) + f(g, hl) - f(g, h) == 0   (mod N)

and two cocycles are cohomologous when they differ by
(g, h) -> r_g + g.r_h - r_gh.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import Incompatible, NotCyclic, NotInvariant, TooLarge
from .ffield import FieldTower, FrobAction, frob_multiplier
from .groups import CompatAut, GroupSpec
from .zmod import solve_mod


@dataclass(frozen=True)
class CoeffModule:
    """Z/N with each standard generator of G acting by a multiplier."""

    N: int
    multipliers: tuple[int, ...]

    @classmethod
    def trivial(cls, N: int, ngens: int = 1) -> CoeffModule:
        return cls(N, (1 % N,) * ngens)

    @classmethod
    def from_field(cls, tower: FieldTower, act: FrobAction | None = None, ngens: int = 1) -> CoeffModule:
        """F_{q^r}* with sigma acting as Frobenius**k (trivially if act is None)."""
        if act is None:
            return cls.trivial(tower.N, ngens)
        return cls(tower.N, (frob_multiplier(tower, act.k),))

    def check(self, group: GroupSpec) -> None:
        if len(self.multipliers) != len(group.factors):
            raise ValueError("one multiplier per generator is required")
        for m, order in zip(self.multipliers, group.factors):
            if np.gcd(m, self.N) != 1 or pow(m, order, self.N) != 1 % self.N:
                raise ValueError(f"multiplier {m} does not define a Z/{self.N} action of order {order}")

    def element_multipliers(self, group: GroupSpec) -> np.ndarray:
        """Multiplier of every group element, in element order."""
        out = []
        for g in group.elements:
            m = 1
            for mj, c in zip(self.multipliers, group.coords(g)):
                m = m * pow(mj, c, self.N)
            out.append(m % self.N)
        return np.array(out, dtype=np.int64)

    def is_invariant(self, group: GroupSpec, e: int) -> bool:
        return all((m - 1) * e % self.N == 0 for m in self.multipliers)


@dataclass(frozen=True, eq=False)
class CocycleTable:
    """f(g, h) as exponents mod N, indexed by element positions."""

    group: GroupSpec
    coeff: CoeffModule
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64) % self.coeff.N
        n = self.group.order
        if t.shape != (n, n):
            raise ValueError(f"table must be {n}x{n}, got {t.shape}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        self.coeff.check(self.group)

    def __eq__(self, other):
        if not isinstance(other, CocycleTable):
            return NotImplemented
        return (self.group == other.group and self.coeff == other.coeff
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.group, self.coeff, self.table.tobytes()))

    @property
    def N(self) -> int:
        return self.coeff.N

    @cached_property
    def mult(self) -> np.ndarray:
        return self.coeff.element_multipliers(self.group)

    def value(self, g, h) -> int:
        G = self.group
        return int(self.table[G.index(g), G.index(h)])

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "N": self.N,
            "action_multipliers": list(self.coeff.multipliers),
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> CocycleTable:
        group = GroupSpec.from_json(data["group"])
        coeff = CoeffModule(int(data["N"]), tuple(int(m) for m in data["action_multipliers"]))
        table = np.array(data["table"], dtype=np.int64)
        if table.size and (table.min() < 0 or table.max() >= coeff.N):
            raise ValueError("table entries must lie in [0, N)")
        return cls(group, coeff, table)


def mu_coefficients(p: int, s: int) -> CoeffModule:
    """Default roots of unity for twisted complex (C_p)^s algebras.

    mu_p suffices for odd p; for p = 2 the diagonal values f(g, g) may need
    4th roots, so mu_4 is used.
    """
    return CoeffModule.trivial(4 if p == 2 else p, s)


def zero_cocycle(group: GroupSpec, coeff: CoeffModule) -> CocycleTable:
    return CocycleTable(group, coeff, np.zeros((group.order, group.order), dtype=np.int64))


@dataclass(frozen=True)
class Validation:
    ok: bool
    violation: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def cocycle_defect(f: CocycleTable) -> np.ndarray:
    """defect[g, h, l] of the cocycle identity, over element indices."""
    T, M, N = f.table, f.group.mul_table, f.N
    gh = M[:, :, None]          # index of g*h, broadcast over l
    hl = M[None, :, :]          # index of h*l, broadcast over g
    n = f.group.order
    g = np.arange(n)[:, None, None]
    l = np.arange(n)[None, None, :]
    h = np.arange(n)[None, :, None]
    d = f.mult[g] * T[h, l] - T[gh, l] + T[g, hl] - T[g, h]
    return d % N


def validate(f: CocycleTable) -> Validation:
    """Normalization plus the cocycle identity on all |G|^3 triples."""
    G = f.group
    e = G.index(G.identity)
    T = f.table
    bad = np.nonzero(T[e, :])[0]
    if len(bad):
        return Validation(False, (G.identity, G.elements[bad[0]]), "not normalized")
    bad = np.nonzero(T[:, e])[0]
    if len(bad):
        return Validation(False, (G.elements[bad[0]], G.identity), "not normalized")
    d = cocycle_defect(f)
    nz = np.argwhere(d)
    if len(nz):
        i, j, k = nz[0]
        return Validation(False, (G.elements[i], G.elements[j], G.elements[k]), "cocycle identity fails")
    return Validation(True)


def standard_cocycle(n: int, coeff: CoeffModule, beta_exp: int) -> CocycleTable:
    """f(s^l, s^j) = 0 if l + j < n else beta."""
    G = GroupSpec.cyclic(n)
    beta = beta_exp % coeff.N
    if not coeff.is_invariant(G, beta):
        raise NotInvariant(f"exponent {beta_exp} is not fixed by the action")
    idx = np.arange(n)
    table = np.where(idx[:, None] + idx[None, :] >= n, beta, 0)
    return CocycleTable(G, coeff, table)


def beta_of(f: CocycleTable) -> int:
    """sum_i f(sigma^i, sigma) mod N, i.e. u_sigma^n."""
    G = f.group
    if G.kind != "cyclic":
        raise NotCyclic("beta is defined for cyclic groups")
    if G.n == 1:
        return 0
    return int(f.table[:, 1].sum() % f.N)


def is_compatible(psi: CompatAut, coeff: CoeffModule) -> bool:
    G = psi.group
    mult = coeff.element_multipliers(G)
    return bool(np.array_equal(mult[list(psi.permutation)], mult))


def pullback(psi: CompatAut, f: CocycleTable) -> CocycleTable:
    """(g, h) -> f(psi(g), psi(h))."""
    if psi.group != f.group:
        raise ValueError("automorphism and cocycle live on different groups")
    if not is_compatible(psi, f.coeff):
        raise Incompatible("automorphism does not preserve the coefficient action")
    perm = np.array(psi.permutation)
    return CocycleTable(f.group, f.coeff, f.table[np.ix_(perm, perm)])


def coboundary(group: GroupSpec, coeff: CoeffModule, r) -> CocycleTable:
    """(g, h) -> r_g + g.r_h - r_gh, with r given per element (r_e must be 0)."""
    r = np.asarray(r, dtype=np.int64) % coeff.N
    mult = coeff.element_multipliers(group)
    M = group.mul_table
    table = r[:, None] + mult[:, None] * r[None, :] - r[M]
    return CocycleTable(group, coeff, table)


def add_cocycles(f1: CocycleTable, f2: CocycleTable, sign: int = 1) -> CocycleTable:
    return CocycleTable(f1.group, f1.coeff, f1.table + sign * f2.table)


# -- normalized cochain coordinates -----------------------------------------

def _nonid(group: GroupSpec) -> list[int]:
    e = group.index(group.identity)
    return [i for i in range(group.order) if i != e]


def delta1_matrix(group: GroupSpec, coeff: CoeffModule) -> np.ndarray:
    """delta^1 on normalized cochains: rows (g, h) pairs of non-identity elements."""
    ids = _nonid(group)
    pos = {g: c for c, g in enumerate(ids)}
    mult = coeff.element_multipliers(group)
    M = group.mul_table
    D = np.zeros((len(ids) ** 2, len(ids)), dtype=np.int64)
    for a, g in enumerate(ids):
        for b, h in enumerate(ids):
            row = a * len(ids) + b
            D[row, pos[g]] += 1
            D[row, pos[h]] += mult[g]
            gh = int(M[g, h])
            if gh in pos:
                D[row, pos[gh]] -= 1
    return D % coeff.N


def delta2_matrix(group: GroupSpec, coeff: CoeffModule) -> np.ndarray:
    """delta^2 on normalized cochains: rows are triples of non-identity elements."""
    ids = _nonid(group)
    m = len(ids)
    pos = {g: c for c, g in enumerate(ids)}
    mult = coeff.element_multipliers(group)
    M = group.mul_table

    def col(g, h):
        return pos[g] * m + pos[h]

    D = np.zeros((m**3, m * m), dtype=np.int64)
    row = 0
    for g in ids:
        for h in ids:
            gh = int(M[g, h])
            for l in ids:
                hl = int(M[h, l])
                D[row, col(h, l)] += mult[g]
                if gh in pos:
                    D[row, col(gh, l)] -= 1
                if hl in pos:
                    D[row, col(g, hl)] += 1
                D[row, col(g, h)] -= 1
                row += 1
    return D % coeff.N


def cochain_vector(f: CocycleTable) -> np.ndarray:
    """The normalized C^2 coordinates of a table."""
    ids = _nonid(f.group)
    return f.table[np.ix_(ids, ids)].reshape(-1).copy()


def table_from_vector(group: GroupSpec, coeff: CoeffModule, x) -> CocycleTable:
    ids = _nonid(group)
    m = len(ids)
    table = np.zeros((group.order, group.order), dtype=np.int64)
    table[np.ix_(ids, ids)] = np.asarray(x, dtype=np.int64).reshape(m, m)
    return CocycleTable(group, coeff, table)


@dataclass(frozen=True)
class CoboundaryWitness:
    """r[g] per element index (r_e = 0) with f1 - f2 = delta(r)."""

    r: tuple[int, ...]


def _check_same(f1: CocycleTable, f2: CocycleTable) -> None:
    if f1.group != f2.group or f1.coeff != f2.coeff:
        raise ValueError("cocycles must share group and coefficient module")


def cohomologous(f1: CocycleTable, f2: CocycleTable) -> CoboundaryWitness | None:
    """Solve r_g + g.r_h - r_gh = f1(g,h) - f2(g,h) over Z/N."""
    _check_same(f1, f2)
    G, N = f1.group, f1.N
    if G.order == 1:
        return CoboundaryWitness((0,))
    D = delta1_matrix(G, f1.coeff)
    rhs = (cochain_vector(f1) - cochain_vector(f2)) % N
    sol = solve_mod(D, rhs, N)
    if sol is None:
        return None
    r = np.zeros(G.order, dtype=np.int64)
    r[_nonid(G)] = sol
    return CoboundaryWitness(tuple(int(x) for x in r))


def cohomologous_bruteforce(f1: CocycleTable, f2: CocycleTable,
                            max_candidates: int = 2_000_000) -> CoboundaryWitness | None:
    """Exhaustive search over all normalized 1-cochains (the oracle)."""
    _check_same(f1, f2)
    G, N = f1.group, f1.N
    ids = _nonid(G)
    if N ** len(ids) > max_candidates:
        raise TooLarge(f"{N}^{len(ids)} candidate cochains")
    target = (f1.table - f2.table) % N
    mult = f1.mult
    M = G.mul_table
    for vals in itertools.product(range(N), repeat=len(ids)):
        r = np.zeros(G.order, dtype=np.int64)
        r[ids] = vals
        d = (r[:, None] + mult[:, None] * r[None, :] - r[M]) % N
        if np.array_equal(d, target):
            return CoboundaryWitness(tuple(int(x) for x in r))
    return None


def bilinear_cocycle(group: GroupSpec, coeff: CoeffModule, B) -> CocycleTable:
    """f(x, y) = (N/p) * x^T B y on (C_p)^s with trivial action.

    Its alternating form is B - B^T, so every bicharacter is realized by
    taking B to be the strict upper triangle of the alternating matrix.
    """
    if group.kind != "elab":
        raise ValueError("bilinear cocycles are built on (C_p)^s")
    p, N = group.p, coeff.N
    if N % p:
        raise ValueError(f"Z/{N} has no element of order {p}")
    B = np.asarray(B, dtype=np.int64) % p
    V = np.array(group.elements, dtype=np.int64)
    table = (V @ B @ V.T) % p * (N // p)
    return CocycleTable(group, coeff, table)
