"""Polychromaticity checks for linear colorings.

An embedded Q_d inside some Q_n is described, as far as a linear coloring can
tell, by the residues mod E (the group exponent) of the d+1 ambient 1-counts
between its stars.  ``verify_reduced`` runs through all E^(d+1) residue
profiles and, for each, through every choice of ell free stars; the other
d-ell stars contribute 0 or 1 to their region, giving a fixed set of reachable
colors that is simply translated by the profile-dependent offset.

``verify_cube_oracle`` instead writes out literal binary strings in a fixed
ambient cube and is deliberately independent of all of that machinery.
"""
from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from . import kernel
from .colorings import LinearColoring, face_color
from .groups import Group, GroupElement

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**10


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"needs {required:.3e} mask operations, budget is {budget:.3e}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class EmbeddingClass:
    d: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class FaceSelector:
    free_stars: tuple[int, ...]
    eps: tuple[int, ...]


@dataclass
class Verdict:
    polychromatic: bool
    witness: tuple[EmbeddingClass, GroupElement] | None
    states_enumerated: int
    mode: str
    d: int
    embedding: str | None = None
    note: str | None = None

    @property
    def certified(self) -> bool:
        """True only for exhaustive modes that found no counterexample."""
        return self.polychromatic and self.mode != "sampled"

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "d": self.d,
            "polychromatic": self.polychromatic,
            "states_enumerated": self.states_enumerated,
            "witness": None,
        }
        if self.witness is not None:
            cls, missing = self.witness
            out["witness"] = {"residues": list(cls.residues), "missing_color": list(missing)}
            if self.embedding is not None:
                out["witness"]["embedding"] = self.embedding
        if self.note:
            out["note"] = self.note
        return out


# -- shared precomputation --------------------------------------------------

def selections(d: int, ell: int) -> list[tuple[int, ...]]:
    """Free-star choices, stars numbered 1..d, in lexicographic order."""
    return list(itertools.combinations(range(1, d + 1), ell))


def region_of_gap(sel: Sequence[int], i: int) -> int:
    """Face region holding the ambient gap x_i (x_i sits after star i)."""
    return sum(1 for s in sel if s <= i)


def region_lengths(sel: Sequence[int], d: int, ell: int) -> list[int]:
    lengths = [0] * (ell + 1)
    free = set(sel)
    for star in range(1, d + 1):
        if star not in free:
            lengths[sum(1 for s in sel if s < star)] += 1
    return lengths


def epsilon_mask(c: LinearColoring, region_lengths: Sequence[int]) -> int:
    """Colors sum(k_i * w_i) with 0 <= k_i <= region_lengths[i]."""
    if len(region_lengths) != c.ell + 1:
        raise ValueError(f"need {c.ell + 1} region lengths, got {len(region_lengths)}")
    g = c.group
    reach = {g.index(g.identity)}
    for w, length in zip(c.weights, region_lengths):
        table = g.add_table(w)
        layer = set(reach)
        acc = set(reach)
        for _ in range(min(length, g.exponent)):
            layer = {table[x] for x in layer}
            acc |= layer
        reach = acc
    mask = 0
    for i in reach:
        mask |= 1 << i
    return mask


def _to_words(mask: int, W: int) -> list[int]:
    return [(mask >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(W)]


class _Plan:
    """Arrays the scan kernels consume for one (coloring, d) pair."""

    def __init__(self, c: LinearColoring, d: int):
        g = c.group
        self.c, self.d, self.g = c, d, g
        self.E = g.exponent
        self.D = d + 1
        self.sels = selections(d, c.ell)
        self.W = max(1, (g.order + 63) // 64)
        self.reg = np.array([[region_of_gap(s, i) for i in range(self.D)] for s in self.sels],
                            dtype=np.int32)
        self.addw = np.array([g.add_table(w) for w in c.weights], dtype=np.int32)
        self.eps = [epsilon_mask(c, region_lengths(s, d, c.ell)) for s in self.sels]
        R = g.residue_array()
        moduli = np.array(g.moduli)
        strides = np.array(g.strides)
        T = np.zeros((len(self.sels), g.order, self.W), dtype=np.uint64)
        rows = np.arange(g.order)
        for si, base in enumerate(self.eps):
            members = [i for i in range(g.order) if base >> i & 1]
            # target[x, j] = index(x + members[j])
            target = ((R[:, None, :] + R[members][None, :, :]) % moduli) @ strides
            bits = np.left_shift(np.uint64(1), (target % 64).astype(np.uint64))
            for j in range(len(members)):
                np.bitwise_or.at(T[si], (rows, target[:, j] // 64), bits[:, j])
        self.T = T
        self.full = np.array(_to_words(g.full_mask, self.W), dtype=np.uint64)

    def offsets(self, digits: Sequence[int]) -> list[int]:
        g, ws = self.g, self.c.weights
        out = []
        for row in self.reg:
            acc = [0] * g.rank
            for a, r in zip(digits, row):
                if a:
                    for j, x in enumerate(ws[r]):
                        acc[j] += a * x
            out.append(g.index(g.element(acc)))
        return out

    def coverage(self, digits: Sequence[int]) -> int:
        cov = 0
        for si, off in enumerate(self.offsets(digits)):
            words = self.T[si, off]
            for k in range(self.W):
                cov |= int(words[k]) << (64 * k)
        return cov


def _least_missing(g: Group, cov: int) -> GroupElement:
    gap = ~cov & g.full_mask
    return g.unindex((gap & -gap).bit_length() - 1)


def _prefix_length(E: int, D: int, workers: int) -> int:
    target = max(1, workers) * 64
    L, size = 0, 1
    while size < target and L < D:
        L += 1
        size *= E
    return L


def _rank(digits: Sequence[int], E: int) -> int:
    r = 0
    for x in digits:
        r = r * E + x
    return r


def reduced_cost(c: LinearColoring, d: int) -> int:
    return c.exponent ** (d + 1) * comb(d, c.ell)


def verify_reduced(c: LinearColoring, d: int, budget: int | None = DEFAULT_BUDGET,
                   workers: int | None = 1, fast_fail: bool = True) -> Verdict:
    """Exact check over every residue profile.

    Returns the lexicographically least failing profile together with the
    least missing color.  The result does not depend on ``workers``.
    """
    if d < c.ell:
        raise ValueError(f"need d >= ell, got d={d}, ell={c.ell}")
    g = c.group
    D = d + 1
    E = g.exponent
    if fast_fail and g.order > comb(d + 1, c.ell + 1):
        # the all-zero profile shows at most C(d+1, ell+1) distinct colors
        plan = _Plan(c, d)
        zero = (0,) * D
        missing = _least_missing(g, plan.coverage(zero))
        return Verdict(False, (EmbeddingClass(d, zero), missing), 1, "reduced", d,
                       note="order exceeds C(d+1, ell+1)")
    cost = reduced_cost(c, d)
    if budget is not None and cost > budget:
        raise BudgetExceeded(cost, budget)
    plan = _Plan(c, d)
    total = E**D
    if E == 1:
        cov = plan.coverage((0,) * D)
        if cov == g.full_mask:
            return Verdict(True, None, 1, "reduced", d)
        return Verdict(False, (EmbeddingClass(d, (0,) * D), _least_missing(g, cov)), 1,
                       "reduced", d)

    workers = workers or os.cpu_count() or 1
    L = _prefix_length(E, D, workers)
    prefixes = list(itertools.product(range(E), repeat=L))
    scan = kernel.scan_chunk

    def run(prefix):
        p = np.array(prefix, dtype=np.int32)
        off0 = np.array(plan.offsets(list(prefix) + [0] * (D - L)), dtype=np.int32)
        return scan(p, D, E, off0, plan.reg, plan.addw, plan.T, plan.full)

    failure = None
    if workers == 1:
        for prefix in prefixes:
            _, digits, missing = run(prefix)
            if digits is not None:
                failure = (digits, missing)
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run, p) for p in prefixes]
            for i, fut in enumerate(futures):
                _, digits, missing = fut.result()
                if digits is not None:
                    failure = (digits, missing)
                    for later in futures[i + 1:]:
                        later.cancel()
                    break
    if failure is None:
        return Verdict(True, None, total, "reduced", d)
    digits, missing = failure
    cls = EmbeddingClass(d, tuple(int(x) for x in digits))
    return Verdict(False, (cls, g.unindex(int(missing))), _rank(digits, E) + 1, "reduced", d)


def class_coverage(c: LinearColoring, cls: EmbeddingClass) -> int:
    """Coverage mask of one residue profile (used to confirm witnesses)."""
    return _Plan(c, cls.d).coverage(cls.residues)


# -- literal oracle -----------------------------------------------------------

def _face_vector(vertex_bits: Sequence[str], free: Sequence[int]) -> list[int]:
    """1-counts of the regions cut out by the free positions of a face string."""
    counts = [0]
    for pos, ch in enumerate(vertex_bits):
        if pos in free:
            counts.append(0)
        elif ch == "1":
            counts[-1] += 1
    return counts


def oracle_cost(c: LinearColoring, d: int, ambient_n: int) -> int:
    ell = c.ell
    return comb(ambient_n, d) * 2 ** (ambient_n - d) * comb(d, ell) * 2 ** (d - ell)


def verify_cube_oracle(c: LinearColoring, d: int, ambient_n: int,
                       budget: int | None = 10**8) -> Verdict:
    """Check every embedded Q_d of Q_ambient_n by writing out its faces."""
    if not c.ell <= d <= ambient_n:
        raise ValueError(f"need ell <= d <= ambient_n, got {c.ell}, {d}, {ambient_n}")
    cost = oracle_cost(c, d, ambient_n)
    if budget is not None and cost > budget:
        raise BudgetExceeded(cost, budget)
    g, ell = c.group, c.ell
    everything = set(g.elements())
    count = 0
    for stars in itertools.combinations(range(ambient_n), d):
        fixed_pos = [p for p in range(ambient_n) if p not in stars]
        for fixed in itertools.product("01", repeat=ambient_n - d):
            count += 1
            template = ["*"] * ambient_n
            for p, b in zip(fixed_pos, fixed):
                template[p] = b
            seen = set()
            for free in itertools.combinations(stars, ell):
                others = [p for p in stars if p not in free]
                for eps in itertools.product("01", repeat=d - ell):
                    face = list(template)
                    for p, b in zip(others, eps):
                        face[p] = b
                    seen.add(face_color(c, _face_vector(face, set(free))))
            if seen != everything:
                missing = min(everything - seen, key=g.index)
                embedding = "".join(template)
                gaps = _face_vector(template, set(stars))
                cls = EmbeddingClass(d, tuple(x % g.exponent for x in gaps))
                return Verdict(False, (cls, missing), count, "oracle", d, embedding=embedding)
    return Verdict(True, None, count, "oracle", d)


# -- sampling ------------------------------------------------------------------

def verify_sampled(c: LinearColoring, d: int, samples: int, seed: int,
                   batch: int = 8192) -> Verdict:
    """Monte Carlo refutation over random residue profiles; never certifies."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    plan = _Plan(c, d)
    g, E, D = c.group, plan.E, plan.D
    rng = np.random.default_rng(seed)
    weights = np.array(c.weights, dtype=np.int64).reshape(c.ell + 1, g.rank)
    moduli = np.array(g.moduli, dtype=np.int64)
    strides = np.array(g.strides, dtype=np.int64)
    done = 0
    while done < samples:
        n = min(batch, samples - done)
        states = rng.integers(0, E, size=(n, D), dtype=np.int64)
        cov = np.zeros((n, plan.W), dtype=np.uint64)
        for si in range(len(plan.sels)):
            per_gap = weights[plan.reg[si]]                     # (D, rank)
            off = (states @ per_gap) % moduli                   # (n, rank)
            idx = off @ strides
            cov |= plan.T[si][idx]
        bad = np.nonzero((cov != plan.full).any(axis=1))[0]
        if bad.size:
            j = int(bad[0])
            digits = tuple(int(x) for x in states[j])
            missing = _least_missing(g, plan.coverage(digits))
            return Verdict(False, (EmbeddingClass(d, digits), missing), done + j + 1,
                           "sampled", d)
        done += n
    return Verdict(True, None, done, "sampled", d, note="no counterexample found")
