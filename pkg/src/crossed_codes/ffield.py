"""Finite fields F_{q^r} in discrete-log form, with Frobenius and norm.

A nonzero element is stored as its exponent with respect to a fixed generator
x0 of the cyclic group F_{q^r}*; zero is a separate sentinel.  Multiplication
and the Frobenius action are then plain arithmetic modulo N = q^r - 1.

For addition (needed by ring arithmetic and code enumeration) the tower also
keeps the polynomial representation: an element is a polynomial of degree
< r over F_q, encoded as the integer sum(c_i * q**i).  ``exp_table`` and
``log_table`` translate between the two encodings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from .errors import InvalidAction, NotPrime, TooLarge, ZeroInput

DEFAULT_MAX_FIELD = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- polynomials over F_q as coefficient lists, lowest degree first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_from_code(code: int, q: int, length: int | None = None) -> list[int]:
    out = []
    while code:
        code, d = divmod(code, q)
        out.append(d)
    if length is not None:
        out += [0] * (length - len(out))
    return out


def poly_to_code(coeffs: list[int] | tuple[int, ...], q: int) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * q + (c % q)
    return code


def poly_mod(a: list[int], m: list[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], -1, q)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        f = a[-1] * inv_lead % q
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % q
        _trim(a)
    return a


def poly_mulmod(a: list[int], b: list[int], m: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % q
    return poly_mod(prod, m, q)


def poly_powmod(a: list[int], e: int, m: list[int], q: int) -> list[int]:
    result = [1]
    base = poly_mod(a, m, q)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, q)
        base = poly_mulmod(base, base, m, q)
        e >>= 1
    return result


def _monic_polys(deg: int, q: int):
    for low in range(q**deg):
        yield poly_from_code(low, q, deg) + [1]


def is_irreducible(f: list[int], q: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(_trim(list(f))) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, q):
            if not poly_mod(list(f), g, q):
                return False
    return True


def smallest_irreducible(q: int, r: int) -> list[int]:
    """Monic irreducible of degree r with the smallest integer code."""
    for f in _monic_polys(r, q):
        if is_irreducible(f, q):
            return f
    raise AssertionError("no irreducible polynomial")  # pragma: no cover


@dataclass(frozen=True)
class FieldElem:
    """x0**exp, or zero when exp is None."""

    exp: int | None

    @property
    def is_zero(self) -> bool:
        return self.exp is None


ZERO = FieldElem(None)


@dataclass(frozen=True)
class FrobAction:
    """C_n acting on F_{q^r} by sigma -> Frobenius**k."""

    n: int
    k: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.r < 1:
            raise InvalidAction(f"nonpositive parameter in {self}")
        if self.r % self.k or self.n % (self.r // self.k):
            raise InvalidAction(f"need k | r and (r/k) | n, got n={self.n} k={self.k} r={self.r}")

    @property
    def orbit_length(self) -> int:
        """r/k: order of the Frobenius power attached to the generator."""
        return self.r // self.k

    @property
    def kernel_order(self) -> int:
        """nk/r: order of the kernel of the action."""
        return self.n * self.k // self.r

    @property
    def is_trivial(self) -> bool:
        return self.k == self.r

    @classmethod
    def trivial(cls, n: int, r: int) -> FrobAction:
        return cls(n, r, r)


def valid_ks(n: int, r: int) -> list[int]:
    """All k with k | r and (r/k) | n."""
    return [k for k in divisors(r) if n % (r // k) == 0]


@dataclass(frozen=True)
class FieldTower:
    """F_q inside F_{q^r}, with a fixed modulus and generator x0."""

    q: int
    r: int
    modulus: tuple[int, ...]
    generator: tuple[int, ...]
    exp_table: np.ndarray = field(repr=False, compare=False)
    log_table: np.ndarray = field(repr=False, compare=False)

    @property
    def N(self) -> int:
        return self.q**self.r - 1

    @property
    def size(self) -> int:
        return self.q**self.r

    # -- element constructors ------------------------------------------------
    def elem(self, e: int) -> FieldElem:
        return FieldElem(e % self.N) if self.N > 1 else FieldElem(0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(0)

    @property
    def x0(self) -> FieldElem:
        return self.elem(1)

    def units(self) -> list[FieldElem]:
        return [FieldElem(e) for e in range(self.N)]

    def elements(self) -> list[FieldElem]:
        return [ZERO] + self.units()

    # -- encodings ---------------------------------------------------------------
    def to_code(self, a: FieldElem) -> int:
        return 0 if a.exp is None else int(self.exp_table[a.exp])

    def from_code(self, c: int) -> FieldElem:
        e = int(self.log_table[c])
        return ZERO if e < 0 else FieldElem(e)

    def poly(self, a: FieldElem) -> list[int]:
        return poly_from_code(self.to_code(a), self.q, self.r)

    # -- arithmetic ------------------------------------------------------------
    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if a.exp is None or b.exp is None:
            return ZERO
        return self.elem(a.exp + b.exp)

    def inv(self, a: FieldElem) -> FieldElem:
        if a.exp is None:
            raise ZeroInput("zero has no inverse")
        return self.elem(-a.exp)

    def pow(self, a: FieldElem, e: int) -> FieldElem:
        if a.exp is None:
            if e <= 0:
                raise ZeroInput("nonpositive power of zero")
            return ZERO
        return self.elem(a.exp * e)

    def add_codes(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        if self.add_table is not None:
            return int(self.add_table[a, b])
        out, place, q = 0, 1, self.q
        while a or b:
            a, da = divmod(a, q)
            b, db = divmod(b, q)
            out += ((da + db) % q) * place
            place *= q
        return out

    def neg_code(self, a: int) -> int:
        if self.q == 2:
            return a
        out, place, q = 0, 1, self.q
        while a:
            a, d = divmod(a, q)
            out += ((-d) % q) * place
            place *= q
        return out

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.from_code(self.add_codes(self.to_code(a), self.to_code(b)))

    def neg(self, a: FieldElem) -> FieldElem:
        return self.from_code(self.neg_code(self.to_code(a)))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.add(a, self.neg(b))

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self.N])

    @cached_property
    def add_table(self) -> np.ndarray | None:
        """Full addition table on codes for small fields (None above 1024)."""
        Q = self.size
        if Q > 1024:
            return None
        digits = np.array([poly_from_code(c, self.q, self.r) for c in range(Q)], dtype=np.int64)
        weights = self.q ** np.arange(self.r, dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.q
        return (s @ weights).astype(np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray | None:
        Q = self.size
        if Q > 1024:
            return None
        out = np.zeros((Q, Q), dtype=np.int64)
        logs = self.log_table
        nz = np.arange(1, Q)
        out[1:, 1:] = self.exp_table[(logs[nz][:, None] + logs[nz][None, :]) % self.N]
        return out

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "modulus": list(self.modulus),
            "generator": list(self.generator),
        }

    @classmethod
    def from_json(cls, data: dict) -> FieldTower:
        t = make_tower(int(data["q"]), int(data["r"]))
        if list(data.get("modulus", t.modulus)) != list(t.modulus):
            raise ValueError("only the canonical modulus is supported")
        if list(data.get("generator", t.generator)) != list(t.generator):
            raise ValueError("only the canonical generator is supported")
        return t


def _build_tables(q: int, r: int, modulus: list[int], gen: list[int]):
    N = q**r - 1
    # multiplication by gen as an F_q-linear map on coefficient vectors
    M = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        basis = [0] * i + [1]
        col = poly_mulmod(basis, gen, modulus, q)
        col += [0] * (r - len(col))
        M[:, i] = col
    block = min(N, 1024)
    V = np.zeros((r, block), dtype=np.int64)
    v = np.zeros(r, dtype=np.int64)
    v[0] = 1
    for e in range(block):
        V[:, e] = v
        v = M @ v % q
    # M**block, then advance whole blocks at once
    Mb = np.eye(r, dtype=np.int64)
    base, e = M.copy(), block
    while e:
        if e & 1:
            Mb = Mb @ base % q
        base = base @ base % q
        e >>= 1
    chunks = [V]
    done = block
    while done < N:
        V = Mb @ V % q
        chunks.append(V)
        done += block
    allv = np.concatenate(chunks, axis=1)[:, :N]
    weights = q ** np.arange(r, dtype=np.int64)
    exp_table = weights @ allv
    log_table = np.full(q**r, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(N, dtype=np.int64)
    return exp_table, log_table


def make_tower(q: int, r: int, max_size: int = DEFAULT_MAX_FIELD) -> FieldTower:
    """Build F_{q^r} with the smallest monic irreducible modulus and smallest generator.

    "Smallest" means smallest integer code sum(c_i q^i), i.e. lexicographic
    comparison starting from the leading coefficient.
    """
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    if r < 1:
        raise ValueError("r must be positive")
    if q**r > max_size:
        raise TooLarge(f"q^r = {q**r} exceeds bound {max_size}")
    modulus = smallest_irreducible(q, r)
    N = q**r - 1
    pf = prime_factors(N)
    gen = None
    for code in range(1, q**r):
        g = poly_from_code(code, q)
        if all(poly_powmod(g, N // p, modulus, q) != [1] for p in pf):
            gen = g
            break
    assert gen is not None
    exp_table, log_table = _build_tables(q, r, modulus, gen)
    gen_t = tuple(gen + [0] * (r - len(gen)))
    return FieldTower(q, r, tuple(modulus), gen_t, exp_table, log_table)


def frobenius(t: FieldTower, a: FieldElem, k: int) -> FieldElem:
    """a -> a^(q^k)."""
    if a.exp is None:
        return ZERO
    return t.elem(a.exp * pow(t.q, k, t.N) if t.N > 1 else 0)


def frob_multiplier(t: FieldTower, k: int) -> int:
    """Multiplier q^k acting on exponents mod N."""
    return pow(t.q, k, t.N) if t.N > 1 else 0


def _check_action(t: FieldTower, act: FrobAction) -> None:
    if act.r != t.r:
        raise InvalidAction(f"action built for r={act.r}, tower has r={t.r}")


def norm_map(t: FieldTower, act: FrobAction, a: FieldElem) -> FieldElem:
    """prod_{i<n} sigma^i(a), by literal multiplication."""
    _check_action(t, act)
    if a.exp is None:
        raise ZeroInput("norm of zero")
    out = t.one
    for i in range(act.n):
        out = t.mul(out, frobenius(t, a, act.k * i))
    return out


def norm_exponent(t: FieldTower, act: FrobAction, e: int) -> int:
    """Closed form of the norm on exponents: e * (nk/r) * (q^r-1)/(q^k-1)."""
    _check_action(t, act)
    if t.N == 1:
        return 0
    return e * act.kernel_order * ((t.q**t.r - 1) // (t.q**act.k - 1)) % t.N


@dataclass(frozen=True)
class FixedSubgroup:
    generator_exp: int
    order: int


def fixed_subgroup(t: FieldTower, act: FrobAction) -> FixedSubgroup:
    """The units fixed by the action: F_{q^k}* = <x0^((q^r-1)/(q^k-1))>."""
    _check_action(t, act)
    return FixedSubgroup((t.q**t.r - 1) // (t.q**act.k - 1), t.q**act.k - 1)


def in_subgroup(t: FieldTower, e: int, gen_exp: int) -> bool:
    """Is x0^e in the cyclic subgroup generated by x0^gen_exp?"""
    if t.N == 1:
        return True
    return e % gcd(gen_exp, t.N) == 0
