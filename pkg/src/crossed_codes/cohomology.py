"""Second cohomology H^2(G, Z/N) by brute force, and automorphism orbits on it.

The generic path materializes the normalized coboundary maps delta^1 and
delta^2 as integer matrices and takes ker(delta^2) / im(delta^1) with a
Smith normal form over Z/N.  Cyclic groups also have a closed-form path
(invariant exponents modulo the norm image) that works for any n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cocycles import (
    CocycleTable,
    CoeffModule,
    beta_of,
    cochain_vector,
    delta1_matrix,
    delta2_matrix,
    pullback,
    standard_cocycle,
    table_from_vector,
    zero_cocycle,
)
from .errors import TooLarge
from .groups import CompatAut, GroupSpec
from .zmod import Subquotient, invariant_factors

MAX_GENERIC_GROUP = 12
MAX_CLASS_ENUMERATION = 4096
MAX_COCHAIN_ENUMERATION = 2**16

Coords = tuple[int, ...]


@dataclass
class CohGroup:
    """H^2 presented as a product of cyclic groups of orders ``orders``.

    ``orders`` is the decomposition produced by the computation; the
    canonical structure is ``invariant_factors``.
    """

    group: GroupSpec
    coeff: CoeffModule
    orders: list[int]
    method: str
    _sub: Subquotient | None = field(default=None, repr=False)
    _cyclic: tuple[int, int] | None = field(default=None, repr=False)  # (gen exponent, quotient order)

    @property
    def invariant_factors(self) -> list[int]:
        return invariant_factors(self.orders)

    @property
    def order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    def class_coords(self, f: CocycleTable) -> Coords:
        if f.group != self.group or f.coeff != self.coeff:
            raise ValueError("cocycle does not belong to this cohomology group")
        if self._cyclic is not None:
            g0, m = self._cyclic
            if m == 1:
                return ()
            return ((beta_of(f) // g0) % m,)
        if self._sub is None:
            return ()
        return self._sub.coords(cochain_vector(f))

    def rep(self, z: Coords) -> CocycleTable:
        """A normalized cocycle in the class with coordinates z."""
        if len(z) != len(self.orders):
            raise ValueError("coordinate length mismatch")
        if self._cyclic is not None:
            g0, m = self._cyclic
            if m == 1:
                return zero_cocycle(self.group, self.coeff)
            return standard_cocycle(self.group.n, self.coeff, g0 * z[0])
        if self._sub is None:
            return zero_cocycle(self.group, self.coeff)
        return table_from_vector(self.group, self.coeff, self._sub.lift(z))

    def classes(self) -> list[Coords]:
        if self.order > MAX_CLASS_ENUMERATION:
            raise TooLarge(f"|H^2| = {self.order} is above the enumeration bound")
        return [tuple(c) for c in itertools.product(*(range(o) for o in self.orders))]

    @property
    def reps(self) -> list[CocycleTable] | None:
        if self.order > MAX_CLASS_ENUMERATION:
            return None
        return [self.rep(z) for z in self.classes()]


def _h2_closed_cyclic(group: GroupSpec, coeff: CoeffModule) -> CohGroup:
    n, N = group.n, coeff.N
    mu = coeff.multipliers[0] % N
    # invariant exponents: <g0>, of order gcd(mu - 1, N)
    g0 = N // gcd((mu - 1) % N, N) if N > 1 else 1
    fixed_order = N // g0
    nu = sum(pow(mu, i, N) for i in range(n)) % N if N > 1 else 0
    m = gcd(nu // g0, fixed_order) if fixed_order > 1 else 1
    orders = [m] if m > 1 else []
    return CohGroup(group, coeff, orders, "closed", _cyclic=(g0, m))


def compute_h2(group: GroupSpec, coeff: CoeffModule, method: str = "auto",
               max_group: int = MAX_GENERIC_GROUP) -> CohGroup:
    """H^2(G, Z/N) with the given action.

    method: "snf" (kernel/image over Z/N), "closed" (cyclic groups only) or
    "auto" (snf when |G| <= max_group, otherwise closed form for cyclic G).
    """
    coeff.check(group)
    if method == "auto":
        if group.order <= max_group:
            method = "snf"
        elif group.kind == "cyclic":
            method = "closed"
        else:
            raise TooLarge(f"|G| = {group.order} above the generic bound {max_group}")
    if method == "closed":
        if group.kind != "cyclic":
            raise ValueError("closed form only for cyclic groups")
        return _h2_closed_cyclic(group, coeff)
    if method != "snf":
        raise ValueError(f"unknown method {method!r}")
    if group.order > max_group:
        raise TooLarge(f"|G| = {group.order} above the generic bound {max_group}")
    if group.order == 1 or coeff.N == 1:
        return CohGroup(group, coeff, [], "snf")
    D1 = delta1_matrix(group, coeff)
    D2 = delta2_matrix(group, coeff)
    sub = Subquotient(D2, D1, coeff.N)
    return CohGroup(group, coeff, list(sub.orders), "snf", _sub=sub)


def h2_by_enumeration(group: GroupSpec, coeff: CoeffModule,
                      max_cochains: int = MAX_COCHAIN_ENUMERATION) -> list[int]:
    """Invariant factors of Z^2/B^2 by listing every normalized cochain.

    Independent of the Smith-form path.  Cocycles are the cochains that pass
    the cocycle identity and coboundaries are the images of all 1-cochains.
    The group structure is then read off from the sizes of the d-torsion
    subgroups.
    """
    N = coeff.N
    m1 = group.order - 1
    if N == 1 or m1 == 0:
        return []
    if N ** (m1 * m1) > max_cochains or N**m1 > max_cochains:
        raise TooLarge("cochain space above the enumeration bound")
    D1 = delta1_matrix(group, coeff)
    D2 = delta2_matrix(group, coeff)
    cochains = np.array(list(itertools.product(range(N), repeat=m1 * m1)), dtype=np.int64)
    Z = cochains[~np.any(cochains @ D2.T % N, axis=1)]
    ones = np.array(list(itertools.product(range(N), repeat=m1)), dtype=np.int64)
    B = {tuple(row) for row in (ones @ D1.T % N).tolist()}
    size = len(Z) // len(B)
    # |H[d]| = #{z in Z : d z in B} / |B|
    def torsion(d: int) -> int:
        return sum(1 for z in (d * Z % N).tolist() if tuple(z) in B) // len(B)

    elementary = []
    rest = size
    p = 2
    while rest > 1:
        if rest % p == 0:
            e_max = 0
            while rest % p == 0:
                rest //= p
                e_max += 1
            # a_j = log_p |H[p^j]|; factors of order >= p^j number a_j - a_{j-1}
            a = [0]
            for j in range(1, e_max + 1):
                t, lg = torsion(p**j), 0
                while t > 1:
                    t //= p
                    lg += 1
                a.append(lg)
            at_least = [a[j] - a[j - 1] for j in range(1, e_max + 1)] + [0]
            for j in range(1, e_max + 1):
                elementary += [p**j] * (at_least[j - 1] - at_least[j])
        p += 1
    return invariant_factors(elementary)


@dataclass
class OrbitPartition:
    """Orbits of classes, each sorted, listed by least member.

    ``witnesses[c]`` is an automorphism carrying the least member of c's orbit
    to c.
    """

    classes: list[list[Coords]]
    witnesses: dict[Coords, CompatAut]

    @property
    def count(self) -> int:
        return len(self.classes)

    def orbit_of(self, c: Coords) -> int:
        for i, orb in enumerate(self.classes):
            if c in orb:
                return i
        raise KeyError(c)


def orbits(h2: CohGroup, auts: list[CompatAut]) -> OrbitPartition:
    """Partition H^2 into orbits of [f] -> [psi(f)]."""
    classes = sorted(h2.classes())
    seen: set[Coords] = set()
    out: list[list[Coords]] = []
    witnesses: dict[Coords, CompatAut] = {}
    for c0 in classes:
        if c0 in seen:
            continue
        rep = h2.rep(c0)
        orbit = {}
        for psi in auts:
            c = h2.class_coords(pullback(psi, rep))
            orbit.setdefault(c, psi)
        seen.update(orbit)
        witnesses.update(orbit)
        out.append(sorted(orbit))
    return OrbitPartition(out, witnesses)
