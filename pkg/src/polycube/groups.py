"""Finite abelian groups Z/m_0 + ... + Z/m_k, mixed-radix element indexing and
coverage masks.

Elements are plain tuples of residues.  Canonical indices use the last factor
as the fastest-varying digit, so ``(1, 1)`` in ``Z/3 + Z/2`` has index 3.
Coverage masks are Python ints with bit ``i`` standing for the element of
canonical index ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import lcm
from typing import Iterable, Iterator, Sequence

GroupElement = tuple[int, ...]


class StructureError(ValueError):
    """Malformed group, element or mask (wrong length, bad residue, ...)."""


@dataclass(frozen=True)
class Group:
    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        if not mods:
            raise StructureError("a group needs at least one cyclic factor")
        if any(m < 1 for m in mods):
            raise StructureError(f"moduli must be >= 1, got {mods}")
        object.__setattr__(self, "moduli", mods)

    @classmethod
    def of(cls, *moduli: int) -> "Group":
        return cls(tuple(moduli))

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.moduli, 1)

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, self.moduli, 1)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        return tuple(strides)

    @property
    def identity(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, values: Iterable[int]) -> GroupElement:
        """Reduce arbitrary integers into canonical residues."""
        vals = tuple(int(v) for v in values)
        if len(vals) != self.rank:
            raise StructureError(f"expected {self.rank} residues, got {len(vals)}")
        return tuple(v % m for v, m in zip(vals, self.moduli))

    def check(self, e: Sequence[int]) -> GroupElement:
        """Validate that ``e`` is already in canonical range."""
        if len(e) != self.rank:
            raise StructureError(f"expected {self.rank} residues, got {len(e)}")
        for v, m in zip(e, self.moduli):
            if not 0 <= v < m:
                raise StructureError(f"residue {v} out of range for modulus {m}")
        return tuple(int(v) for v in e)

    def add(self, a: Sequence[int], b: Sequence[int]) -> GroupElement:
        if len(a) != self.rank or len(b) != self.rank:
            raise StructureError("dimension mismatch in group addition")
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Sequence[int]) -> GroupElement:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def scale(self, k: int, a: Sequence[int]) -> GroupElement:
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def index(self, e: Sequence[int]) -> int:
        e = self.check(e)
        return sum(v * s for v, s in zip(e, self.strides))

    def unindex(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise StructureError(f"index {i} out of range [0, {self.order})")
        out = []
        for m in reversed(self.moduli):
            i, r = divmod(i, m)
            out.append(r)
        return tuple(reversed(out))

    def elements(self) -> Iterator[GroupElement]:
        for i in range(self.order):
            yield self.unindex(i)

    def add_table(self, w: Sequence[int]) -> list[int]:
        """``table[i] = index(unindex(i) + w)`` for every canonical index."""
        w = self.element(w)
        return [self.index(self.add(self.unindex(i), w)) for i in range(self.order)]

    def residue_array(self):
        """``(order, rank)`` numpy array of all elements in canonical order."""
        import numpy as np
        idx = np.arange(self.order)
        cols = [(idx // s) % m for s, m in zip(self.strides, self.moduli)]
        return np.stack(cols, axis=1)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def __str__(self):
        return " + ".join(f"Z/{m}" for m in self.moduli)


def element_add(g: Group, a: Sequence[int], b: Sequence[int]) -> GroupElement:
    return g.add(g.check(a), g.check(b))


def canonical_index(g: Group, e: Sequence[int]) -> int:
    return g.index(e)


def canonical_unindex(g: Group, i: int) -> GroupElement:
    return g.unindex(i)


def mask_of(g: Group, elements: Iterable[Sequence[int]]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << g.index(g.element(e))
    return mask


def mask_elements(g: Group, mask: int) -> list[GroupElement]:
    return [g.unindex(i) for i in range(g.order) if mask >> i & 1]


def mask_translate(g: Group, mask: int, e: Sequence[int]) -> int:
    if mask < 0 or mask >> g.order:
        raise StructureError("mask has bits beyond the group order")
    table = g.add_table(e)
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << table[i]
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def generated_subgroup(g: Group, gens: Iterable[Sequence[int]]) -> int:
    """Mask of the subgroup generated by ``gens`` (closure under addition)."""
    tables = [g.add_table(w) for w in gens]
    seen = 1 << g.index(g.identity)
    frontier = [g.index(g.identity)]
    while frontier:
        nxt = []
        for i in frontier:
            for t in tables:
                j = t[i]
                if not seen >> j & 1:
                    seen |= 1 << j
                    nxt.append(j)
        frontier = nxt
    return seen


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF: upper triangular, positive pivots, entries above each
    pivot reduced into [0, pivot).  Zero rows are dropped."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for col in range(ncols):
        if r == len(A):
            break
        while True:
            nz = [i for i in range(r, len(A)) if A[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][col] != 0:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return [row for row in A if any(row)]


def subgroup_index(g: Group, gens: Iterable[Sequence[int]]) -> int:
    """Index of <gens> in g: determinant of the lattice spanned by the
    generators together with m_j e_j."""
    rows = [list(g.check(w)) for w in gens]
    rows += [[m if i == j else 0 for i in range(g.rank)] for j, m in enumerate(g.moduli)]
    H = hermite_normal_form(rows)
    idx = 1
    for j in range(g.rank):
        idx *= H[j][j]
    return idx


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_factors(moduli: Sequence[int]) -> tuple[int, ...]:
    """Sorted multiset of prime-power cyclic factors (isomorphism invariant)."""
    parts = []
    for m in moduli:
        parts.extend(p**k for p, k in _factorize(m).items())
    return tuple(sorted(parts))


def invariant_factors(moduli: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors, largest first; ``(1,)`` for the trivial group."""
    by_prime: dict[int, list[int]] = {}
    for m in moduli:
        for p, k in _factorize(m).items():
            by_prime.setdefault(p, []).append(p**k)
    for pows in by_prime.values():
        pows.sort(reverse=True)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(length):
        f = 1
        for pows in by_prime.values():
            if i < len(pows):
                f *= pows[i]
        factors.append(f)
    return tuple(factors) or (1,)


def is_isomorphic(g: Group, h: Group) -> bool:
    return prime_power_factors(g.moduli) == prime_power_factors(h.moduli)


__all__ = [
    "Group",
    "GroupElement",
    "StructureError",
    "canonical_index",
    "canonical_unindex",
    "element_add",
    "generated_subgroup",
    "hermite_normal_form",
    "invariant_factors",
    "is_isomorphic",
    "mask_elements",
    "mask_of",
    "mask_translate",
    "popcount",
    "prime_power_factors",
    "subgroup_index",
]
