"""Crossed products F_{q^r} * G as concrete rings.

An element is sum_g beta_g u_g with beta_g in F = F_{q^r}; multiplication is
the bilinear extension of

    (beta u_g)(gamma u_h) = beta g(gamma) f(g, h) u_{gh}

where g acts on F through a power of Frobenius and f is a normalized cocycle
with exponent values (f(g, h) stands for x0**f(g, h)).

Codes are ideals, i.e. F-subspaces of F^|G| closed under multiplication by
the basis elements u_g.  Enumeration works with integer polynomial codes of
field elements (see ffield) so that F-linear algebra is table lookups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .cocycles import CocycleTable, CoeffModule, cohomologous, pullback
from .errors import ActionMismatch, NotCyclic, TooLarge
from .ffield import ZERO, FieldElem, FieldTower, FrobAction, frobenius
from .groups import CompatAut, GroupSpec, aut_eta

MAX_CODE_SPACE = 2**16
MAX_ISOMETRY_GROUP = 8


class _CodeField:
    """Vectorized F_{q^r} arithmetic on integer polynomial codes."""

    def __init__(self, tower: FieldTower):
        self.t = tower
        self.q, self.r, self.N, self.Q = tower.q, tower.r, tower.N, tower.size
        self.exp = tower.exp_table
        self.log = tower.log_table
        self.add_table = tower.add_table
        self.mul_table = tower.mul_table
        self.weights = self.q ** np.arange(self.r, dtype=np.int64)
        codes = np.arange(self.Q, dtype=np.int64)
        self.neg_table = np.array([tower.neg_code(int(c)) for c in codes], dtype=np.int64)
        inv = np.zeros(self.Q, dtype=np.int64)
        inv[1:] = self.exp[(-self.log[1:]) % self.N]
        self.inv_table = inv

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.q == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self.weights:
            out += ((a // w % self.q + b // w % self.q) % self.q) * w
        return out

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[a, b]
        prod = self.exp[(self.log[a] + self.log[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, prod)

    def frob_table(self, t: int) -> np.ndarray:
        """Codes of a -> a^(q^t)."""
        out = np.zeros(self.Q, dtype=np.int64)
        mult = pow(self.q, t, self.N) if self.N > 1 else 0
        out[1:] = self.exp[self.log[1:] * mult % self.N]
        return out


@dataclass(frozen=True)
class RingElem:
    """Coefficients beta_g in group element order."""

    coeffs: tuple[FieldElem, ...]

    def __getitem__(self, i: int) -> FieldElem:
        return self.coeffs[i]


def hamming_weight(a: RingElem) -> int:
    return sum(1 for c in a.coeffs if not c.is_zero)


@dataclass(frozen=True, eq=False)
class CrossedRing:
    """F_{q^r} * G with a Frobenius action and a cocycle.

    ``act`` is a FrobAction for cyclic G, or None for the trivial action.
    """

    tower: FieldTower
    group: GroupSpec
    act: FrobAction | None
    cocycle: CocycleTable

    def __post_init__(self):
        G, t = self.group, self.tower
        if self.cocycle.group != G:
            raise ValueError("cocycle is defined on another group")
        if self.act is not None:
            if G.kind != "cyclic" or self.act.n != G.n or self.act.r != t.r:
                raise ValueError("action does not match the group or field")
        if self.cocycle.N != t.N:
            raise ValueError(f"cocycle values must be exponents mod {t.N}")
        expected = np.array([pow(t.q, e, t.N) if t.N > 1 else 0 for e in self.frob_exps], dtype=np.int64)
        if not np.array_equal(self.cocycle.mult, expected):
            raise ValueError("cocycle coefficient action differs from the ring action")

    @classmethod
    def build(cls, tower: FieldTower, group: GroupSpec, act: FrobAction | None = None,
              cocycle: CocycleTable | None = None) -> CrossedRing:
        """Skew group ring when no cocycle is given."""
        if cocycle is None:
            coeff = coeff_module(tower, group, act)
            cocycle = CocycleTable(group, coeff, np.zeros((group.order, group.order), dtype=np.int64))
        return cls(tower, group, act, cocycle)

    def __eq__(self, other):
        if not isinstance(other, CrossedRing):
            return NotImplemented
        return (self.tower == other.tower and self.group == other.group
                and self.act == other.act and self.cocycle == other.cocycle)

    def __hash__(self):
        return hash((self.tower, self.group, self.act, self.cocycle))

    @property
    def dim(self) -> int:
        return self.group.order

    @property
    def size(self) -> int:
        return self.tower.size ** self.group.order

    @cached_property
    def frob_exps(self) -> tuple[int, ...]:
        """g acts on F as Frobenius**frob_exps[g]."""
        if self.act is None:
            return (0,) * self.group.order
        return tuple((self.act.k * i) % self.tower.r for i in self.group.elements)

    def act_on(self, g_index: int, a: FieldElem) -> FieldElem:
        return frobenius(self.tower, a, self.frob_exps[g_index])

    # -- element constructors ------------------------------------------------
    def zero(self) -> RingElem:
        return RingElem((ZERO,) * self.dim)

    def basis(self, g) -> RingElem:
        return self.monomial(self.tower.one, g)

    def one(self) -> RingElem:
        return self.basis(self.group.identity)

    def monomial(self, beta: FieldElem, g) -> RingElem:
        i = self.group.index(g)
        return RingElem(tuple(beta if j == i else ZERO for j in range(self.dim)))

    def scalar(self, beta: FieldElem) -> RingElem:
        return self.monomial(beta, self.group.identity)

    def elem(self, coeffs: dict) -> RingElem:
        out = [ZERO] * self.dim
        for g, b in coeffs.items():
            out[self.group.index(g)] = b
        return RingElem(tuple(out))

    def add(self, a: RingElem, b: RingElem) -> RingElem:
        return RingElem(tuple(self.tower.add(x, y) for x, y in zip(a.coeffs, b.coeffs)))

    # -- code-vector internals -----------------------------------------------
    @cached_property
    def _F(self) -> _CodeField:
        return _CodeField(self.tower)

    @cached_property
    def _frob(self) -> list[np.ndarray]:
        return [self._F.frob_table(t) for t in range(self.tower.r)]

    @cached_property
    def _fcodes(self) -> np.ndarray:
        return self.tower.exp_table[self.cocycle.table]

    def to_codes(self, a: RingElem) -> np.ndarray:
        return np.array([self.tower.to_code(c) for c in a.coeffs], dtype=np.int64)

    def from_codes(self, v) -> RingElem:
        return RingElem(tuple(self.tower.from_code(int(c)) for c in v))

    def _mul_codes(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        F, M = self._F, self.group.mul_table
        out = np.zeros(self.dim, dtype=np.int64)
        for g in np.nonzero(a)[0]:
            tw = self._frob[self.frob_exps[g]][b]        # g(beta_h)
            terms = F.mul(F.mul(a[g], tw), self._fcodes[g])
            out[M[g]] = F.add(out[M[g]], terms)
        return out

    def _left_basis(self, g: int, v: np.ndarray) -> np.ndarray:
        """u_g * v."""
        F = self._F
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.group.mul_table[g]] = F.mul(self._frob[self.frob_exps[g]][v], self._fcodes[g])
        return out

    def _right_mono(self, v: np.ndarray, beta: int, h: int) -> np.ndarray:
        """v * (beta u_h)."""
        F = self._F
        tw = np.array([self._frob[e][beta] for e in self.frob_exps], dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.group.mul_table[:, h]] = F.mul(F.mul(v, tw), self._fcodes[:, h])
        return out

    @cached_property
    def _gen_indices(self) -> list[int]:
        G = self.group
        return sorted({G.index(g) for g in G.generators})

    def to_json(self) -> dict:
        return {
            "tower": self.tower.to_json(),
            "group": self.group.to_json(),
            "k": None if self.act is None else self.act.k,
            "cocycle": self.cocycle.to_json(),
        }


def coeff_module(tower: FieldTower, group: GroupSpec, act: FrobAction | None = None) -> CoeffModule:
    """F_{q^r}* as a G-module for the given action."""
    if act is None:
        return CoeffModule.trivial(tower.N, len(group.factors))
    return CoeffModule.from_field(tower, act)


def multiply(ring: CrossedRing, a: RingElem, b: RingElem) -> RingElem:
    return ring.from_codes(ring._mul_codes(ring.to_codes(a), ring.to_codes(b)))


def associativity_holds(ring: CrossedRing) -> bool:
    """(u_g u_h) u_l == u_g (u_h u_l) for every basis triple."""
    n = ring.dim
    basis = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    for a, b, c in itertools.product(basis, repeat=3):
        left = ring._mul_codes(ring._mul_codes(a, b), c)
        right = ring._mul_codes(a, ring._mul_codes(b, c))
        if not np.array_equal(left, right):
            return False
    return True


# -- isometries ----------------------------------------------------------------

@dataclass(frozen=True)
class IsometryWitness:
    """rho(beta u_g) = beta * scalars[g] * v_psi(g)."""

    psi: CompatAut
    scalars: tuple[FieldElem, ...]

    def to_json(self) -> dict:
        psi = self.psi.data if self.psi.group.kind == "cyclic" else [list(r) for r in self.psi.data]
        return {"psi": psi, "scalars": [s.exp for s in self.scalars]}


def _check_comparable(ring1: CrossedRing, ring2: CrossedRing) -> None:
    if ring1.tower != ring2.tower or ring1.group != ring2.group:
        raise ActionMismatch("rings have different base fields or groups")
    if ring1.frob_exps != ring2.frob_exps:
        raise ActionMismatch("rings carry different actions")


def _ordered_auts(ring: CrossedRing) -> list[CompatAut]:
    auts = aut_eta(ring.group, ring.act)
    ident = CompatAut.identity(ring.group)
    return [ident] + [a for a in auts if a != ident]


def find_isometry(ring1: CrossedRing, ring2: CrossedRing,
                  max_group: int = MAX_ISOMETRY_GROUP) -> IsometryWitness | None:
    """Search psi in Aut_eta(G) with f1 cohomologous to psi(f2)."""
    _check_comparable(ring1, ring2)
    if ring1.group.order > max_group:
        raise TooLarge(f"|G| = {ring1.group.order} above {max_group}")
    t = ring1.tower
    for psi in _ordered_auts(ring1):
        w = cohomologous(ring1.cocycle, pullback(psi, ring2.cocycle))
        if w is not None:
            return IsometryWitness(psi, tuple(t.elem(e) for e in w.r))
    return None


def apply_isometry(w: IsometryWitness, ring1: CrossedRing, ring2: CrossedRing, a: RingElem) -> RingElem:
    t = ring1.tower
    out = [ZERO] * ring2.dim
    for g, beta in enumerate(a.coeffs):
        out[w.psi.permutation[g]] = t.mul(beta, w.scalars[g])
    return RingElem(tuple(out))


def verify_isometry(w: IsometryWitness, ring1: CrossedRing, ring2: CrossedRing) -> bool:
    """Multiplicativity on all u_g * (beta u_h) with beta over an F_q-basis, then weights."""
    try:
        _check_comparable(ring1, ring2)
    except ActionMismatch:
        return False
    G, t = ring1.group, ring1.tower
    n = G.order
    if len(w.scalars) != n or any(s.is_zero for s in w.scalars):
        return False
    if sorted(w.psi.permutation) != list(range(n)):
        return False
    scalars = [t.one] + [t.elem(i) for i in range(1, t.r)]
    for g in G.elements:
        ug = ring1.basis(g)
        rho_ug = apply_isometry(w, ring1, ring2, ug)
        for h in G.elements:
            for beta in scalars:
                b = ring1.monomial(beta, h)
                lhs = apply_isometry(w, ring1, ring2, multiply(ring1, ug, b))
                rhs = multiply(ring2, rho_ug, apply_isometry(w, ring1, ring2, b))
                if lhs != rhs:
                    return False
    spanning = [ring1.basis(g) for g in G.elements]
    spanning.append(RingElem((t.one,) * n))
    return all(hamming_weight(apply_isometry(w, ring1, ring2, x)) == hamming_weight(x) for x in spanning)


def isometry_group_order(ring: CrossedRing, max_maps: int = 200_000) -> int:
    """Count ring isometries by checking every monomial map (permutation + unit scalars)."""
    G, t = ring.group, ring.tower
    n, N = G.order, t.N
    total = 1
    for i in range(2, n + 1):
        total *= i
    total *= N**n
    if total > max_maps:
        raise TooLarge(f"{total} monomial maps")
    F, M = ring._F, G.mul_table
    fcodes = ring._fcodes
    betas = [int(t.exp_table[i % N]) for i in range(t.r)]
    count = 0
    for perm in itertools.permutations(range(n)):
        # a ring map permuting the basis must respect the group law on indices
        if any(M[perm[g], perm[h]] != perm[M[g, h]] for g in range(n) for h in range(n)):
            continue
        if tuple(ring.frob_exps[perm[g]] for g in range(n)) != ring.frob_exps:
            continue
        for rs in itertools.product(range(N), repeat=n):
            rc = t.exp_table[np.array(rs) % N] if N > 1 else np.ones(n, dtype=np.int64)
            ok = True
            for g in range(n):
                for h in range(n):
                    for beta in betas:
                        # rho(u_g beta u_h) vs rho(u_g) rho(beta u_h)
                        lhs = F.mul(F.mul(ring._frob[ring.frob_exps[g]][beta], fcodes[g, h]), rc[M[g, h]])
                        pg = perm[g]
                        rhs = F.mul(F.mul(rc[g], ring._frob[ring.frob_exps[pg]][F.mul(beta, rc[h])]),
                                    fcodes[pg, perm[h]])
                        if lhs != rhs:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                count += 1
    return count


# -- codes -----------------------------------------------------------------------

@dataclass(frozen=True)
class Code:
    """An ideal, stored by its reduced row echelon basis (field codes)."""

    basis: tuple[tuple[int, ...], ...]
    min_distance: int | None
    sided: str = "two"

    @property
    def rank(self) -> int:
        return len(self.basis)

    def generators(self, ring: CrossedRing) -> list[RingElem]:
        return [ring.from_codes(row) for row in self.basis]

    def to_json(self, ring: CrossedRing) -> dict:
        return {
            "rank": self.rank,
            "min_distance": self.min_distance,
            "generators": [[c.exp for c in g.coeffs] for g in self.generators(ring)],
        }


class _Subspaces:
    """Row-reduced F-subspaces of F^n on code vectors."""

    def __init__(self, ring: CrossedRing):
        self.F = ring._F
        self.n = ring.dim

    def reduce(self, rows: list[np.ndarray], v: np.ndarray) -> np.ndarray:
        F = self.F
        v = v.copy()
        for row in rows:
            piv = int(np.argmax(row != 0))
            if v[piv]:
                v = F.add(v, F.mul(F.neg_table[v[piv]], row))
        return v

    def rref(self, vectors) -> tuple[tuple[int, ...], ...]:
        F = self.F
        rows: list[np.ndarray] = []
        for v in vectors:
            v = self.reduce(rows, np.asarray(v, dtype=np.int64))
            if not v.any():
                continue
            piv = int(np.argmax(v != 0))
            v = F.mul(F.inv_table[v[piv]], v)
            rows = [F.add(r, F.mul(F.neg_table[r[piv]], v)) if r[piv] else r for r in rows]
            rows.append(v)
        rows.sort(key=lambda r: int(np.argmax(r != 0)))
        return tuple(tuple(int(x) for x in r) for r in rows)


def _closure(ring: CrossedRing, seeds, sided: str, sp: _Subspaces) -> tuple[tuple[int, ...], ...]:
    """Smallest ideal containing the seed vectors."""
    t, G = ring.tower, ring.group
    gens = ring._gen_indices
    e = G.index(G.identity)
    one = int(t.exp_table[0])
    betas = [int(t.exp_table[i % t.N]) for i in range(1, t.r)]
    basis = sp.rref(seeds)
    queue = [np.array(r, dtype=np.int64) for r in basis]
    while queue:
        v = queue.pop()
        cands = [ring._left_basis(g, v) for g in gens]
        if sided == "two":
            cands += [ring._right_mono(v, one, g) for g in gens]
            cands += [ring._right_mono(v, b, e) for b in betas]
        rows = [np.array(r, dtype=np.int64) for r in basis]
        for c in cands:
            if sp.reduce(rows, c).any():
                basis = sp.rref(rows + [c])
                rows = [np.array(r, dtype=np.int64) for r in basis]
                queue.append(c)
    return basis


def _codewords(ring: CrossedRing, basis) -> np.ndarray:
    F = ring._F
    W = np.zeros((1, ring.dim), dtype=np.int64)
    scalars = np.arange(F.Q, dtype=np.int64)
    for row in basis:
        row = np.array(row, dtype=np.int64)
        multiples = F.mul(scalars[:, None], row[None, :])          # Q x n
        W = F.add(W[:, None, :], multiples[None, :, :]).reshape(-1, ring.dim)
    return W


def min_distance(ring: CrossedRing, basis) -> int | None:
    """Smallest weight of a nonzero codeword, by sweeping every codeword."""
    if not basis:
        return None
    W = _codewords(ring, basis)
    weights = np.count_nonzero(W, axis=1)
    return int(weights[weights > 0].min())


def _projective_points(Q: int, n: int):
    """Nonzero vectors of F^n whose first nonzero coordinate is 1 (code 1)."""
    for lead in range(n):
        for tail in itertools.product(range(Q), repeat=n - lead - 1):
            yield np.array((0,) * lead + (1,) + tail, dtype=np.int64)


def ideal_lattice(ring: CrossedRing, sided: str = "two",
                  max_size: int = MAX_CODE_SPACE) -> list[tuple[tuple[int, ...], ...]]:
    """Every ideal (as an RREF basis): cyclic ideals, then closure under sums."""
    if sided not in ("two", "left"):
        raise ValueError("sided must be 'two' or 'left'")
    if ring.size > max_size:
        raise TooLarge(f"|R*G| = {ring.size} exceeds {max_size}")
    sp = _Subspaces(ring)
    F = ring._F
    one = int(ring.tower.exp_table[0])
    n = ring.dim

    def key(v):
        lead = v[int(np.argmax(v != 0))]
        return tuple(F.mul(F.inv_table[lead], v).tolist())

    cyclic: set = set()
    visited: set = set()
    for v in _projective_points(ring.tower.size, n):
        kv = tuple(v.tolist())
        if kv in visited:
            continue
        cyclic.add(_closure(ring, [v], sided, sp))
        # u_g v (and v u_g for two-sided ideals) generate the same ideal
        for g in range(n):
            visited.add(key(ring._left_basis(g, v)))
            if sided == "two":
                visited.add(key(ring._right_mono(v, one, g)))
    ideals = {()} | cyclic
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for I in frontier:
            for J in list(cyclic):
                S = sp.rref([np.array(r) for r in I + J])
                if S not in ideals:
                    ideals.add(S)
                    nxt.append(S)
        frontier = nxt
    return sorted(ideals, key=lambda b: (len(b), b))


def enumerate_codes(ring: CrossedRing, sided: str = "two",
                    max_size: int = MAX_CODE_SPACE) -> list[Code]:
    """All ideals with rank and minimum distance, sorted by rank then basis."""
    return [Code(b, min_distance(ring, b), sided) for b in ideal_lattice(ring, sided, max_size)]


def code_of(ring: CrossedRing, generators: list[RingElem], sided: str = "two") -> Code:
    """The ideal generated by the given elements."""
    sp = _Subspaces(ring)
    basis = _closure(ring, [ring.to_codes(g) for g in generators], sided, sp)
    return Code(basis, min_distance(ring, basis), sided)


# -- semisimplicity --------------------------------------------------------------

@dataclass
class SemisimpleDiagnosis:
    closed_form: bool
    classical: bool
    empirical: bool | None = None
    uncomplemented: list[int] = field(default_factory=list)

    @property
    def agree(self) -> bool | None:
        return None if self.empirical is None else self.empirical == self.closed_form


def kernel_order(ring: CrossedRing) -> int:
    """Number of group elements acting trivially on F."""
    return sum(1 for e in ring.frob_exps if e % ring.tower.r == 0)


def has_complement(ring: CrossedRing, ideals, idx: int) -> bool:
    sp = _Subspaces(ring)
    I = ideals[idx]
    need = ring.dim - len(I)
    for J in ideals:
        if len(J) != need:
            continue
        if len(sp.rref([np.array(r) for r in I + J])) == ring.dim:
            return True
    return False


def is_semisimple(ring: CrossedRing, empirical: bool = True, sided: str = "two",
                  max_size: int = MAX_CODE_SPACE) -> SemisimpleDiagnosis:
    """Closed form gcd(|ker|, q) == 1; checked against complements of all ideals when feasible."""
    kord = kernel_order(ring)
    diag = SemisimpleDiagnosis(
        closed_form=gcd(kord, ring.tower.q) == 1,
        classical=kord == 1 and ring.act is not None,
    )
    if empirical and ring.size <= max_size:
        ideals = ideal_lattice(ring, sided, max_size)
        diag.uncomplemented = [i for i in range(len(ideals)) if not has_complement(ring, ideals, i)]
        diag.empirical = not diag.uncomplemented
    return diag


# -- skew polynomial view ----------------------------------------------------------

@dataclass(frozen=True)
class SkewPolyView:
    """R*C_n = F[y; Frobenius^k] / (y^n - beta), with u_sigma -> y.

    ``basis_scalars[i]`` is the exponent c_i with u_sigma^i = x0^c_i u_{sigma^i}.
    """

    n: int
    k: int
    beta_exp: int
    basis_scalars: tuple[int, ...]


def skew_poly_view(ring: CrossedRing) -> SkewPolyView:
    G = ring.group
    if G.kind != "cyclic":
        raise NotCyclic("skew polynomial view needs a cyclic group")
    n, N = G.n, ring.tower.N
    T = ring.cocycle.table
    c = [0]
    for i in range(1, n):
        c.append((c[-1] + int(T[i - 1, 1])) % N)
    beta = (c[-1] + int(T[n - 1, 1])) % N if n > 1 else 0
    k = ring.act.k % ring.tower.r if ring.act is not None else 0
    return SkewPolyView(n, k, beta, tuple(c))


def skew_multiply(ring: CrossedRing, view: SkewPolyView, a: list[FieldElem], b: list[FieldElem]) -> list[FieldElem]:
    """Product in F[y; sigma]/(y^n - beta) with y c = sigma(c) y."""
    t, n = ring.tower, view.n
    beta = t.elem(view.beta_exp)
    out = [ZERO] * n
    for i, ai in enumerate(a):
        if ai.is_zero:
            continue
        for j, bj in enumerate(b):
            if bj.is_zero:
                continue
            term = t.mul(ai, frobenius(t, bj, view.k * i))
            d = i + j
            if d >= n:
                term = t.mul(term, beta)
                d -= n
            out[d] = t.add(out[d], term)
    return out


def poly_to_ring(ring: CrossedRing, view: SkewPolyView, a: list[FieldElem]) -> RingElem:
    """sum a_i y^i -> sum a_i u_sigma^i."""
    t = ring.tower
    return RingElem(tuple(t.mul(ai, t.elem(view.basis_scalars[i])) for i, ai in enumerate(a)))
