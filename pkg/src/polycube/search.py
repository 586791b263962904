"""Exhaustive search for the largest d-polychromatic linear coloring over
small abelian groups.

Only linear colorings are searched, so a result is the exact maximum within
that class and a lower bound for the general problem.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .bounds import lattice_bound_check
from .colorings import LinearColoring, NotSurjective, encode, make_linear, to_dict
from .groups import Group, _factorize
from .verifier import DEFAULT_BUDGET, BudgetExceeded, verify_reduced


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def groups_of_order(order: int) -> list[Group]:
    """One group per isomorphism class, as invariant factors (largest first)."""
    if order == 1:
        return [Group((1,))]
    primes = sorted(_factorize(order).items())
    out = []
    for combo in itertools.product(*(list(_partitions(k)) for _, k in primes)):
        length = max(len(part) for part in combo)
        factors = []
        for i in range(length):
            f = 1
            for (p, _), part in zip(primes, combo):
                if i < len(part):
                    f *= p ** part[i]
            factors.append(f)
        out.append(Group(tuple(factors)))
    return sorted(out, key=lambda g: g.moduli)


def enumerate_abelian_groups(max_order: int) -> list[Group]:
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    return [g for n in range(1, max_order + 1) for g in groups_of_order(n)]


@dataclass
class SearchResult:
    d: int
    ell: int
    max_order_searched: int
    best: list[LinearColoring] = field(default_factory=list)
    best_count: int = 0
    pruned_by_bound: int = 0
    verified: int = 0
    refuted: int = 0
    non_surjective: int = 0
    verified_by_order: dict[int, int] = field(default_factory=dict)
    complete: bool = True
    pruning: bool = True

    @property
    def candidates(self) -> int:
        return self.pruned_by_bound + self.verified + self.refuted

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "ell": self.ell,
            "max_order_searched": self.max_order_searched,
            "scope": "linear colorings only (lower bound on p^ell(d))",
            "best_count": self.best_count,
            "best": [to_dict(c) for c in self.best],
            "candidates": self.candidates,
            "pruned_by_bound": self.pruned_by_bound,
            "verified": self.verified,
            "refuted": self.refuted,
            "non_surjective": self.non_surjective,
            "verified_by_order": {str(k): v for k, v in sorted(self.verified_by_order.items())},
            "complete": self.complete,
            "pruning": self.pruning,
        }


def _candidates(g: Group, ell: int):
    elems = list(g.elements())
    for ws in itertools.product(elems, repeat=ell + 1):
        try:
            yield make_linear(g, ws, ell, label=f"search {list(g.moduli)}")
        except NotSurjective:
            yield None


def search_best_linear(d: int, ell: int, max_order: int, budget: int | None = DEFAULT_BUDGET,
                       prune: bool = True, workers: int = 1) -> SearchResult:
    if d < ell:
        raise ValueError(f"need d >= ell, got d={d}, ell={ell}")
    res = SearchResult(d, ell, max_order, pruning=prune)
    cap = comb(d + 1, ell + 1)
    winners: dict[int, list[LinearColoring]] = {}

    def judge(c: LinearColoring) -> str:
        if prune and c.ell == 2 and not lattice_bound_check(c, d).ok:
            return "pruned"
        try:
            v = verify_reduced(c, d, budget=budget, fast_fail=prune)
        except BudgetExceeded:
            return "budget"
        return "ok" if v.polychromatic else "refuted"

    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for g in enumerate_abelian_groups(max_order):
            cands = []
            for c in _candidates(g, ell):
                if c is None:
                    res.non_surjective += 1
                elif prune and g.order > cap:
                    res.pruned_by_bound += 1
                else:
                    cands.append(c)
            outcomes = pool.map(judge, cands) if pool else map(judge, cands)
            for c, outcome in zip(cands, outcomes):
                if outcome == "pruned":
                    res.pruned_by_bound += 1
                elif outcome == "refuted":
                    res.refuted += 1
                elif outcome == "budget":
                    res.complete = False
                else:
                    res.verified += 1
                    res.verified_by_order[g.order] = res.verified_by_order.get(g.order, 0) + 1
                    winners.setdefault(g.order, []).append(c)
    finally:
        if pool:
            pool.shutdown()
    if winners:
        res.best_count = max(winners)
        res.best = sorted(winners[res.best_count], key=encode)
    return res
