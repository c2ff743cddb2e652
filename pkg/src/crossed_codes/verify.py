"""Formula-versus-oracle sweeps over parameter grids.

Each check returns a :class:`Check` holding one row per comparison.  A row
puts the closed-form value next to the brute-force one, with an ``ok`` flag.  The acceptance tests and the ``verify-grid`` command
both run these sweeps.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .classify import (
    Bicharacter,
    CyclicParams,
    alpha_matrix,
    classify_cyclic,
    congruence_classes,
    congruent_image,
    count_elab_complex,
    count_elab_finite_field,
    is_classical,
    is_semisimple_cyclic,
    normal_form,
    wedderburn,
)
from .cocycles import (
    CoeffModule,
    add_cocycles,
    beta_of,
    coboundary,
    cohomologous,
    pullback,
    standard_cocycle,
    validate,
    CocycleTable,
)
from .cohomology import CohGroup, OrbitPartition, compute_h2, orbits
from .crossring import (
    CrossedRing,
    associativity_holds,
    enumerate_codes,
    find_isometry,
    is_semisimple,
    verify_isometry,
)
from .ffield import FieldTower, FrobAction, divisors, frobenius, make_tower, norm_exponent, norm_map, valid_ks
from .groups import GroupSpec, _invertible_mod_p, aut_eta, aut_eta_cyclic


@dataclass
class Check:
    name: str
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row["ok"] for row in self.rows)

    @property
    def failures(self) -> list[dict]:
        return [row for row in self.rows if not row["ok"]]

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.name}: {len(self.rows) - len(self.failures)}/{len(self.rows)} agree"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "compared": len(self.rows), "rows": self.rows}


@dataclass(frozen=True)
class CyclicGrid:
    qs: tuple[int, ...] = (2, 3, 5)
    rs: tuple[int, ...] = (1, 2, 3, 4)
    ns: tuple[int, ...] = tuple(range(1, 9))

    def points(self):
        """(q, r, n, k) for every valid k, in sorted order."""
        for q in self.qs:
            for r in self.rs:
                for n in self.ns:
                    for k in valid_ks(n, r):
                        yield q, r, n, k


@lru_cache(maxsize=None)
def _tower(q: int, r: int) -> FieldTower:
    return make_tower(q, r)


@lru_cache(maxsize=None)
def _cyclic_case(q: int, r: int, n: int, k: int) -> tuple[CohGroup, OrbitPartition]:
    t = _tower(q, r)
    act = FrobAction(n, k, r)
    h2 = compute_h2(GroupSpec.cyclic(n), CoeffModule.from_field(t, act))
    return h2, orbits(h2, aut_eta_cyclic(n, act))


def _params(q, r, n, k) -> dict:
    return {"q": q, "r": r, "n": n, "k": k}


# -- cyclic groups --------------------------------------------------------------

def check_h2_closed_form(grid: CyclicGrid = CyclicGrid()) -> Check:
    out = Check("h2 order equals gcd(q^k-1, nk/r)")
    for q, r, n, k in grid.points():
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        G, C = GroupSpec.cyclic(n), CoeffModule.from_field(t, act)
        expected = gcd(q**k - 1, n * k // r)
        snf = _cyclic_case(q, r, n, k)[0].order
        closed = compute_h2(G, C, method="closed").order
        out.rows.append({**_params(q, r, n, k), "formula": expected, "snf": snf, "closed": closed,
                         "ok": snf == closed == expected})
    return out


def check_orbit_count(grid: CyclicGrid = CyclicGrid()) -> Check:
    out = Check("orbit count equals classify_cyclic")
    for q, r, n, k in grid.points():
        brute = _cyclic_case(q, r, n, k)[1].count
        formula = classify_cyclic(CyclicParams(n, q, r, k)).count
        out.rows.append({**_params(q, r, n, k), "formula": formula, "orbits": brute, "ok": brute == formula})
    return out


def check_divisor_count(grid: CyclicGrid = CyclicGrid()) -> Check:
    out = Check("trivial action: class count is the number of divisors of gcd(q^r-1, n)")
    for q, r, n, k in grid.points():
        if k != r:
            continue
        expected = len(divisors(gcd(q**r - 1, n)))
        brute = _cyclic_case(q, r, n, k)[1].count
        formula = classify_cyclic(CyclicParams(n, q, r, k)).count
        out.rows.append({**_params(q, r, n, k), "divisors": expected, "orbits": brute, "formula": formula,
                         "ok": brute == formula == expected})
    return out


def check_small_m(grid: CyclicGrid = CyclicGrid()) -> Check:
    out = Check("m divides r/k: class count equals m")
    for q, r, n, k in grid.points():
        m = CyclicParams(n, q, r, k).m
        if (r // k) % m:
            continue
        brute = _cyclic_case(q, r, n, k)[1].count
        formula = classify_cyclic(CyclicParams(n, q, r, k)).count
        out.rows.append({**_params(q, r, n, k), "m": m, "orbits": brute, "formula": formula,
                         "ok": brute == formula == m})
    return out


def _ring_grid(grid: CyclicGrid, max_size: int):
    for q, r, n, k in grid.points():
        if (q**r) ** n <= max_size:
            yield q, r, n, k


def check_semisimplicity(grid: CyclicGrid = CyclicGrid(), max_size: int = 2**12) -> Check:
    """Closed form against complements, for every cohomology class representative."""
    out = Check("semisimple iff gcd(nk/r, q) == 1")
    for q, r, n, k in _ring_grid(grid, max_size):
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        h2 = _cyclic_case(q, r, n, k)[0]
        formula = is_semisimple_cyclic(CyclicParams(n, q, r, k))
        for c in h2.classes():
            ring = CrossedRing.build(t, GroupSpec.cyclic(n), act, h2.rep(c))
            diag = is_semisimple(ring, max_size=max_size)
            out.rows.append({**_params(q, r, n, k), "class": list(c), "formula": formula,
                             "empirical": diag.empirical, "ok": diag.empirical == formula == diag.closed_form})
    return out


def check_classical_codes(grid: CyclicGrid = CyclicGrid(), max_size: int = 2**12) -> Check:
    out = Check("classical crossed products have exactly 2 codes")
    for q, r, n, k in _ring_grid(grid, max_size):
        if not is_classical(CyclicParams(n, q, r, k)):
            continue
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        h2 = _cyclic_case(q, r, n, k)[0]
        for c in h2.classes():
            ring = CrossedRing.build(t, GroupSpec.cyclic(n), act, h2.rep(c))
            count = len(enumerate_codes(ring, max_size=max_size))
            out.rows.append({**_params(q, r, n, k), "class": list(c), "codes": count, "ok": count == 2})
    return out


def _disguise(rep: CocycleTable, rng: random.Random) -> CocycleTable:
    """Add a random coboundary so the search cannot rely on canonical tables."""
    G, N = rep.group, rep.N
    r = [0] + [rng.randrange(N) for _ in range(G.order - 1)]
    return add_cocycles(rep, coboundary(G, rep.coeff, r))


def check_isometry_completeness(max_n: int = 6, max_field: int = 9, qs=(2, 3, 5, 7), seed: int = 0) -> Check:
    """find_isometry succeeds exactly on pairs of classes in one orbit."""
    out = Check("find_isometry succeeds iff the classes share an orbit")
    rng = random.Random(seed)
    for q in qs:
        for r in itertools.count(1):
            if q**r > max_field:
                break
            t = _tower(q, r)
            for n in range(1, max_n + 1):
                for k in valid_ks(n, r):
                    h2, orb = _cyclic_case(q, r, n, k)
                    act = FrobAction(n, k, r)
                    G = GroupSpec.cyclic(n)
                    rings = [(c, CrossedRing.build(t, G, act, _disguise(h2.rep(c), rng))) for c in h2.classes()]
                    for (c1, R1), (c2, R2) in itertools.product(rings, repeat=2):
                        same = orb.orbit_of(c1) == orb.orbit_of(c2)
                        w = find_isometry(R1, R2)
                        verified = None if w is None else verify_isometry(w, R1, R2)
                        out.rows.append({**_params(q, r, n, k), "classes": [list(c1), list(c2)],
                                         "same_orbit": same, "found": w is not None, "verified": verified,
                                         "ok": (w is not None) == same and verified in (None, True)})
    return out


# -- elementary abelian groups --------------------------------------------------

def random_alternating(p: int, s: int, rng: np.random.Generator) -> np.ndarray:
    U = np.triu(rng.integers(0, p, size=(s, s)), 1)
    return (U - U.T) % p


def radical_size(M: np.ndarray, p: int) -> int:
    """|{x : x^T M = 0}| by listing every vector of F_p^s."""
    s = M.shape[0]
    X = np.array(list(itertools.product(range(p), repeat=s)), dtype=np.int64)
    return int(np.sum(~np.any(X @ M % p, axis=1)))


def check_normal_forms(ps=(2, 3, 5), max_s: int = 6, samples: int = 200, seed: int = 0) -> Check:
    out = Check("normal form, Wedderburn shape and radical size")
    rng = np.random.default_rng(seed)
    for p in ps:
        for s in range(1, max_s + 1):
            for _ in range(samples):
                M = random_alternating(p, s, rng)
                b = Bicharacter(p, s, tuple(map(tuple, M.tolist())))
                nf = normal_form(b)
                P = nf.change_of_basis
                exact = (_invertible_mod_p(P.tolist(), p)
                         and np.array_equal(congruent_image(M, P, p), alpha_matrix(nf.i, p, s)))
                w = wedderburn(nf.i, p, s)
                rad = radical_size(M, p)
                ok = (2 * nf.i == b.rank and bool(exact)
                      and w.matrix_size**2 * w.copies == p**s
                      and w.copies == rad == p ** (s - 2 * nf.i))
                out.rows.append({"p": p, "s": s, "matrix": M.tolist(), "rank": b.rank, "i": nf.i,
                                 "radical": rad, "copies": w.copies, "ok": ok})
    return out


def check_congruence_counts(cases=((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))) -> Check:
    out = Check("congruence classes of alternating forms number s//2 + 1")
    for p, s in cases:
        found = len(congruence_classes(p, s))
        expected = count_elab_complex(s)
        out.rows.append({"p": p, "s": s, "classes": found, "formula": expected, "ok": found == expected})
    return out


def check_elab_field_orbits(cases=((2, 1, 3, 1), (2, 2, 3, 1), (2, 1, 5, 1), (2, 2, 5, 1),
                                   (2, 2, 7, 1), (2, 2, 3, 2))) -> Check:
    """(p, s, q, r): GL_s(F_p)-orbits on H^2((C_p)^s, Z/(q^r-1))."""
    out = Check("elementary abelian over F_{q^r}: orbit count and |H^2|")
    for p, s, q, r in cases:
        G = GroupSpec.elab(p, s)
        N = q**r - 1
        h2 = compute_h2(G, CoeffModule.trivial(N, s))
        count = orbits(h2, aut_eta(G)).count
        expected = count_elab_finite_field(p, s, q, r)
        order_expected = p ** (s * (s + 1) // 2) if N % p == 0 else 1
        out.rows.append({"p": p, "s": s, "q": q, "r": r, "orbits": count, "formula": expected,
                         "h2_order": h2.order, "h2_formula": order_expected,
                         "ok": count == expected and h2.order == order_expected})
    return out


# -- property suites ----------------------------------------------------------

def check_associativity(grid: CyclicGrid = CyclicGrid(ns=tuple(range(1, 7))), max_field: int = 9,
                        seed: int = 0) -> Check:
    """validate(f) agrees with associativity of the ring built from f.

    Each class representative is tested, together with a copy whose
    f(sigma, sigma) entry is shifted (which may or may not stay a cocycle).
    """
    out = Check("cocycle identity iff ring associativity")
    rng = random.Random(seed)
    for q, r, n, k in grid.points():
        if q**r > max_field:
            continue
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        G = GroupSpec.cyclic(n)
        h2 = _cyclic_case(q, r, n, k)[0]
        for c in h2.classes():
            f = _disguise(h2.rep(c), rng)
            tables = [f]
            if n > 1 and t.N > 1:
                T = f.table.copy()
                T[1, 1] += 1 + rng.randrange(t.N - 1)
                tables.append(CocycleTable(G, f.coeff, T))
            for g in tables:
                is_cocycle = bool(validate(g))
                assoc = associativity_holds(CrossedRing(t, G, act, g))
                out.rows.append({**_params(q, r, n, k), "class": list(c), "cocycle": is_cocycle,
                                 "associative": assoc, "ok": is_cocycle == assoc})
    return out


def check_cohomologous_equivalence(grid: CyclicGrid = CyclicGrid(), per_class: int = 2, seed: int = 0) -> Check:
    """Equivalence-relation axioms on disguised representatives.

    Each verdict must also match the class coordinates."""
    out = Check("cohomologous is an equivalence relation matching H^2 classes")
    rng = random.Random(seed)
    for q, r, n, k in grid.points():
        h2 = _cyclic_case(q, r, n, k)[0]
        sample = [(c, _disguise(h2.rep(c), rng)) for c in h2.classes() for _ in range(per_class)]
        rel = {(a, b): cohomologous(fa, fb) is not None
               for a, (_, fa) in enumerate(sample) for b, (_, fb) in enumerate(sample)}
        idx = range(len(sample))
        reflexive = all(rel[a, a] for a in idx)
        symmetric = all(rel[a, b] == rel[b, a] for a in idx for b in idx)
        transitive = all(rel[a, c] for a in idx for b in idx for c in idx if rel[a, b] and rel[b, c])
        matches = all(rel[a, b] == (sample[a][0] == sample[b][0]) for a in idx for b in idx)
        out.rows.append({**_params(q, r, n, k), "cocycles": len(sample), "reflexive": reflexive,
                         "symmetric": symmetric, "transitive": transitive, "matches_classes": matches,
                         "ok": reflexive and symmetric and transitive and matches})
    return out


def check_pullback_law(grid: CyclicGrid = CyclicGrid()) -> Check:
    """beta of psi_j^* f is j * beta(f) for every invariant beta."""
    out = Check("pullback by psi_j multiplies beta by j")
    for q, r, n, k in grid.points():
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        C = CoeffModule.from_field(t, act)
        G = GroupSpec.cyclic(n)
        bad = []
        invariant = [b for b in range(t.N) if C.is_invariant(G, b)] or [0]
        auts = aut_eta_cyclic(n, act)
        for beta in invariant:
            f = standard_cocycle(n, C, beta)
            for psi in auts:
                # beta_of(f) is beta itself except on C_1, where it is always 0
                if beta_of(pullback(psi, f)) != (psi.j * beta_of(f)) % max(t.N, 1):
                    bad.append([beta, psi.j])
        out.rows.append({**_params(q, r, n, k), "pairs": len(invariant) * len(auts), "violations": bad,
                         "ok": not bad})
    return out


def check_norm_image(grid: CyclicGrid = CyclicGrid()) -> Check:
    """Every norm is fixed by the action and matches the closed-form exponent."""
    out = Check("norm image lies in the fixed subgroup")
    for q, r, n, k in grid.points():
        t = _tower(q, r)
        act = FrobAction(n, k, r)
        bad = []
        for a in t.units():
            v = norm_map(t, act, a)
            if frobenius(t, v, k) != v or v != t.elem(norm_exponent(t, act, a.exp)):
                bad.append(a.exp)
        out.rows.append({**_params(q, r, n, k), "units": t.N, "violations": bad, "ok": not bad})
    return out


ALL_CHECKS = {
    "h2": check_h2_closed_form,
    "orbits": check_orbit_count,
    "divisors": check_divisor_count,
    "small-m": check_small_m,
    "semisimple": check_semisimplicity,
    "classical": check_classical_codes,
    "isometry": check_isometry_completeness,
    "normal-form": check_normal_forms,
    "congruence": check_congruence_counts,
    "elab-orbits": check_elab_field_orbits,
    "associativity": check_associativity,
    "cohomologous": check_cohomologous_equivalence,
    "pullback": check_pullback_law,
    "norm": check_norm_image,
}
