"""Small finite fields ``F_q``, ``q = p**n <= 2**16``, with exp/log tables.

An element is an integer index ``sum(c_j * p**j)`` encoding the residue
polynomial ``sum(c_j * x**j)`` modulo a fixed monic irreducible of degree
``n``.  Index 0 is zero and index 1 is one.  The modulus is the
lexicographically smallest monic irreducible, comparing coefficient tuples
``(c_{n-1}, ..., c_0)``; the generator is the smallest primitive index.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .binom import require_prime

__all__ = [
    "FieldSpec",
    "Subgroup",
    "build_field",
    "divisors",
    "find_irreducible",
    "generates_field",
    "is_subfield_closed",
    "prime_factors",
    "prime_powers",
    "subgroup_of_order",
]

Q_MAX = 1 << 16

Poly = tuple[int, ...]  # coefficients, constant term first


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_powers(q_max: int) -> list[tuple[int, int]]:
    """Every ``(p, n)`` with ``p**n <= q_max``, sorted by ``q``."""
    out = []
    for p in range(2, q_max + 1):
        if len(prime_factors(p)) == 1 and prime_factors(p)[0] == p:
            q, n = p, 1
            while q <= q_max:
                out.append((p, n))
                q *= p
                n += 1
    return sorted(out, key=lambda t: t[0] ** t[1])


def _poly_mod(a: list[int], m: Poly, p: int) -> list[int]:
    # m is monic
    a = list(a)
    dm = len(m) - 1
    for top in range(len(a) - 1, dm - 1, -1):
        c = a[top] % p
        if c:
            shift = top - dm
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - c * mj) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _monic(p: int, deg: int) -> Iterable[Poly]:
    """Monic polynomials of degree ``deg`` in lexicographic order of ``(c_{deg-1}, ..., c_0)``."""
    for high_first in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(high_first)) + (1,)


def _divides(d: Poly, f: Poly, p: int) -> bool:
    return not any(_poly_mod(list(f), d, p))


def find_irreducible(p: int, n: int) -> Poly:
    """Smallest monic irreducible of degree ``n`` over ``F_p`` (constant term first).

    >>> find_irreducible(2, 2)
    (1, 1, 1)
    """
    require_prime(p)
    if not 1 <= n <= 16 or p**n > Q_MAX:
        raise ValueError(f"need 1 <= n <= 16 and p**n <= 2**16, got p={p}, n={n}")
    return _find_irreducible(p, n)


@lru_cache(maxsize=None)
def _find_irreducible(p: int, n: int) -> Poly:
    small = [d for deg in range(1, n // 2 + 1) for d in _monic(p, deg)]
    for f in _monic(p, n):
        if not any(_divides(d, f, p) for d in small):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldSpec:
    """The field ``F_{p**n}`` with integer-encoded elements.

    Tables are numpy arrays: ``exp[j] = g**j`` for ``0 <= j < 2(q-1)`` and
    ``log[x]`` with ``log[0] = -1``.  Scalar methods take and return ints.
    """

    def __init__(self, p: int, n: int) -> None:
        self.p = require_prime(p)
        self.n = n
        self.q = p**n
        self.modulus = find_irreducible(p, n)
        self._weights = np.array([p**j for j in range(n)], dtype=np.int64)
        self.digits = (np.arange(self.q, dtype=np.int64)[:, None] // self._weights) % p
        self.generator = self._find_generator()
        exp = np.empty(2 * (self.q - 1), dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = [1] + [0] * (n - 1)
        g = self._vec(self.generator)
        for j in range(self.q - 1):
            idx = self._index(x)
            exp[j] = idx
            log[idx] = j
            x = self._mulvec(x, g)
        exp[self.q - 1 :] = exp[: self.q - 1]
        if (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        self.exp, self.log = exp, log
        self.neg_table = self.encode((-self.digits) % p)
        self.one_minus_table = self.add_many(np.ones(self.q, dtype=np.int64), self.neg_table)
        for t in (self.exp, self.log, self.digits, self.neg_table, self.one_minus_table):
            t.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, n={self.n})"

    # polynomial-level helpers used only during construction
    def _vec(self, idx: int) -> list[int]:
        return [int(c) for c in self.digits[idx]]

    def _index(self, vec: list[int]) -> int:
        return int(sum(c * int(w) for c, w in zip(vec, self._weights)))

    def _mulvec(self, a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (2 * self.n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return _poly_mod(prod, self.modulus, self.p)

    def _powvec(self, a: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.n - 1)
        while e:
            if e & 1:
                result = self._mulvec(result, a)
            a = self._mulvec(a, a)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        one = [1] + [0] * (self.n - 1)
        exps = [(self.q - 1) // ell for ell in prime_factors(self.q - 1)]
        for cand in range(1, self.q):
            v = self._vec(cand)
            if all(self._powvec(v, e) != one for e in exps):
                return cand
        raise AssertionError("unreachable: F_q^* is cyclic")

    # element encoding
    def encode(self, digit_rows: np.ndarray) -> np.ndarray:
        return (np.asarray(digit_rows, dtype=np.int64) * self._weights).sum(axis=-1)

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.q:
                raise ValueError(f"{x} is not an element index of F_{self.q}")

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.encode((self.digits[a] + self.digits[b]) % self.p))

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def one_minus(self, a: int) -> int:
        self._check(a)
        return int(self.one_minus_table[a])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        m = self.q - 1
        return m // math.gcd(int(self.log[a]), m)

    # vectorized arithmetic
    def add_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        return self.encode((self.digits[a] + self.digits[b]) % self.p)

    def mul_many(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_many(self, a: np.ndarray, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0 if e else 1, out)

    def tables_bytes(self) -> bytes:
        """Canonical serialization of the tables, for determinism checks."""
        head = np.array([self.p, self.n, self.generator, *self.modulus], dtype=np.int64)
        return b"".join(t.astype("<i8").tobytes() for t in (head, self.exp, self.log))


@lru_cache(maxsize=64)
def build_field(p: int, n: int = 1) -> FieldSpec:
    """Construct (and cache) ``F_{p**n}``."""
    require_prime(p)
    if n < 1 or p**n > Q_MAX:
        raise ValueError(f"p**n must be at most 2**16, got {p}**{n}")
    return FieldSpec(p, n)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """The cyclic subgroup of ``F_q^*`` of a given order."""

    field: FieldSpec
    order: int
    generator: int
    elements: tuple[int, ...]

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.field.q, dtype=bool)
        m[list(self.elements)] = True
        m.setflags(write=False)
        return m

    @property
    def index(self) -> int:
        """``(q - 1) / order``: the exponent whose image is this subgroup."""
        return (self.field.q - 1) // self.order

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.field.q and bool(self.mask[x])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Subgroup(F_{self.field.q}, order={self.order})"

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.field is other.field and other.order % self.order == 0


def subgroup_of_order(field: FieldSpec, k: int) -> Subgroup:
    """The unique subgroup of order ``k``: the image of ``x -> x**((q-1)/k)``."""
    m = field.q - 1
    if k < 1 or m % k:
        raise ValueError(f"{k} does not divide q - 1 = {m}")
    n = m // k
    elems = tuple(sorted(int(field.exp[n * j]) for j in range(k)))
    return Subgroup(field, k, int(field.exp[n % m]) if m else 1, elems)


def generates_field(G: Subgroup) -> bool:
    """Whether no proper subfield ``F_{p**d}`` (``d | n``, ``d < n``) contains ``G``."""
    F = G.field
    elems = np.array(G.elements, dtype=np.int64)
    for d in divisors(F.n):
        if d == F.n:
            continue
        if (F.pow_many(elems, F.p**d) == elems).all():
            return False
    return True


def is_subfield_closed(field: FieldSpec, S: Iterable[int]) -> bool:
    """Whether ``S`` (containing 0 and 1) is closed under ``+``, ``*`` and inverses."""
    elems = np.array(sorted(set(int(x) for x in S)), dtype=np.int64)
    if elems.size == 0 or elems.min() < 0 or elems.max() >= field.q:
        raise ValueError("S must be a nonempty set of element indices")
    member = np.zeros(field.q, dtype=bool)
    member[elems] = True
    if not (member[0] and member[1]):
        raise ValueError("S must contain 0 and 1")
    nz = elems[elems != 0]
    if not member[field.exp[(field.q - 1 - field.log[nz]) % (field.q - 1)]].all():
        return False
    for block in np.array_split(elems, max(1, elems.size // 256)):
        a = block[:, None]
        if not member[field.add_many(a, elems[None, :])].all():
            return False
        if not member[field.mul_many(a, elems[None, :])].all():
            return False
    return True
