"""Finite abelian groups as products of cyclic factors, with their compatible
automorphisms.  C_n and (C_p)^s have dedicated constructors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Union

import numpy as np

from .errors import InvalidAction, NotPrime, TooLarge, Unsupported
from .ffield import FrobAction, is_prime

Element = Union[int, tuple[int, ...]]

MAX_RING_GROUP = 64
MAX_CLASSIFY_GROUP = 4096


@dataclass(frozen=True)
class GroupSpec:
    """Product of cyclic groups of the given orders.

    Elements of a cyclic group are ints mod n; all other groups use tuples of
    exponents.  Elements are enumerated in a fixed order (powers of sigma, or
    lexicographic vectors) and addressed by index in that order.
    """

    kind: str  # "cyclic" | "elab" | "abelian"
    factors: tuple[int, ...]

    def __post_init__(self):
        if any(f < 1 for f in self.factors):
            raise ValueError("factor orders must be positive")
        if self.kind == "elab" and not is_prime(self.factors[0]):
            raise NotPrime(f"{self.factors[0]} is not prime")
        if self.order > MAX_CLASSIFY_GROUP:
            raise TooLarge(f"|G| = {self.order} exceeds {MAX_CLASSIFY_GROUP}")

    @classmethod
    def cyclic(cls, n: int) -> GroupSpec:
        return cls("cyclic", (n,))

    @classmethod
    def elab(cls, p: int, s: int) -> GroupSpec:
        if s < 1:
            raise ValueError("s must be positive")
        return cls("elab", (p,) * s)

    @classmethod
    def abelian(cls, factors) -> GroupSpec:
        return cls("abelian", tuple(factors))

    @property
    def n(self) -> int:
        return self.factors[0]

    @property
    def p(self) -> int:
        return self.factors[0]

    @property
    def s(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    @cached_property
    def elements(self) -> list[Element]:
        if self.kind == "cyclic":
            return list(range(self.n))
        return list(itertools.product(*(range(f) for f in self.factors)))

    @cached_property
    def _index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g: Element) -> int:
        return self._index[self.normalize(g)]

    def normalize(self, g: Element) -> Element:
        if self.kind == "cyclic":
            return int(g) % self.n
        return tuple(int(x) % f for x, f in zip(g, self.factors))

    @property
    def identity(self) -> Element:
        return 0 if self.kind == "cyclic" else (0,) * len(self.factors)

    def coords(self, g: Element) -> tuple[int, ...]:
        """Exponent vector with respect to the standard generators."""
        return (g,) if self.kind == "cyclic" else tuple(g)

    def op(self, g: Element, h: Element) -> Element:
        if self.kind == "cyclic":
            return (g + h) % self.n
        return tuple((a + b) % f for a, b, f in zip(g, h, self.factors))

    def inverse(self, g: Element) -> Element:
        if self.kind == "cyclic":
            return (-g) % self.n
        return tuple((-a) % f for a, f in zip(g, self.factors))

    @cached_property
    def generators(self) -> list[Element]:
        if self.kind == "cyclic":
            return [1 % self.n]
        s = len(self.factors)
        return [tuple(1 if j == i else 0 for j in range(s)) for i in range(s)]

    @cached_property
    def mul_table(self) -> np.ndarray:
        """mul_table[i, j] = index of elements[i] * elements[j]."""
        els = self.elements
        return np.array([[self.index(self.op(g, h)) for h in els] for g in els], dtype=np.int64)

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return {"kind": "cyclic", "n": self.n}
        if self.kind == "elab":
            return {"kind": "elab", "p": self.p, "s": self.s}
        return {"kind": "abelian", "factors": list(self.factors)}

    @classmethod
    def from_json(cls, data: dict) -> GroupSpec:
        kind = data["kind"]
        if kind == "cyclic":
            return cls.cyclic(int(data["n"]))
        if kind == "elab":
            return cls.elab(int(data["p"]), int(data["s"]))
        if kind == "abelian":
            return cls.abelian(int(x) for x in data["factors"])
        raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True)
class CompatAut:
    """An automorphism: sigma^i -> sigma^(ij) for cyclic groups, v -> Mv for (C_p)^s."""

    group: GroupSpec
    data: Union[int, tuple[tuple[int, ...], ...]]

    def __post_init__(self):
        g = self.group
        if g.kind == "cyclic":
            if gcd(int(self.data), g.n) != 1:
                raise ValueError(f"{self.data} is not a unit mod {g.n}")
        elif g.kind == "elab":
            if not _invertible_mod_p([list(row) for row in self.data], g.p):
                raise ValueError("matrix is not invertible over F_p")
        else:
            raise Unsupported("automorphisms only for cyclic and elementary abelian groups")

    @property
    def j(self) -> int:
        return int(self.data)

    @classmethod
    def identity(cls, group: GroupSpec) -> CompatAut:
        if group.kind == "cyclic":
            return cls(group, 1)
        s = group.s
        return cls(group, tuple(tuple(int(a == b) for b in range(s)) for a in range(s)))

    @cached_property
    def permutation(self) -> tuple[int, ...]:
        """Index permutation: position i holds index of psi(elements[i])."""
        G = self.group
        return tuple(G.index(apply_aut(self, g)) for g in G.elements)


def apply_aut(a: CompatAut, g: Element) -> Element:
    G = a.group
    if G.kind == "cyclic":
        return (int(g) * a.j) % G.n
    p = G.p
    return tuple(sum(row[c] * g[c] for c in range(G.s)) % p for row in a.data)


def units_mod(n: int) -> list[int]:
    if n == 1:
        return [1]  # Aut(C_1) is trivial; represent it by j = 1
    return [j for j in range(1, n) if gcd(j, n) == 1]


def euler_phi(n: int) -> int:
    return len(units_mod(n)) if n > 1 else 1


def aut_eta_cyclic(n: int, act: FrobAction) -> list[CompatAut]:
    """All psi_j with gcd(j, n) = 1 and j = 1 mod r/k."""
    if act.n != n:
        raise InvalidAction(f"action is for C_{act.n}, not C_{n}")
    G = GroupSpec.cyclic(n)
    step = act.orbit_length
    return [CompatAut(G, j) for j in units_mod(n) if (j - 1) % step == 0]


def _invertible_mod_p(rows: list[list[int]], p: int) -> bool:
    rows = [r[:] for r in rows]
    s = len(rows)
    for c in range(s):
        piv = next((i for i in range(c, s) if rows[i][c] % p), None)
        if piv is None:
            return False
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = pow(rows[c][c], -1, p)
        for i in range(c + 1, s):
            f = rows[i][c] * inv % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[c])]
    return True


@lru_cache(maxsize=None)
def general_linear(p: int, s: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All invertible s x s matrices over F_p, in lexicographic order."""
    out = []
    for entries in itertools.product(range(p), repeat=s * s):
        rows = [list(entries[i * s:(i + 1) * s]) for i in range(s)]
        if _invertible_mod_p(rows, p):
            out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def aut_eta(group: GroupSpec, act: FrobAction | None = None) -> list[CompatAut]:
    """Compatible automorphisms; ``act=None`` means the trivial action."""
    if group.kind == "cyclic":
        if act is None:
            return [CompatAut(group, j) for j in units_mod(group.n)]
        return aut_eta_cyclic(group.n, act)
    if group.kind == "elab":
        if act is not None and not act.is_trivial:
            raise Unsupported("Aut_eta of (C_p)^s under a nontrivial action")
        return [CompatAut(group, M) for M in general_linear(group.p, group.s)]
    raise Unsupported("automorphism groups of general abelian groups")
