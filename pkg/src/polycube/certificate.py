"""Finite obligations behind the two-parameter crux construction.

The coloring (p, q, r) -> (p - t q, p + q + r) into Z/m + Z/n is checked on
four families of squares, each written ``a * box b * box c`` (a stars, a
boxed star, b stars, a boxed star, c stars, a + b + c = d - 2).  In a family
the first color coordinate is ``O + u - t v`` with u <= a, v <= b, and the
second is ``S + u + v + w`` with w <= c, where the offsets O and S depend on
the embedding.  Embedding-dependent offsets are never fixed here: every
obligation quantifies over all of them.

Variant A (m = t^2 + 1) gets the hand-derived tables; variant B
(m = t^2 + t + 1) has its obligations generated from the family ranges.
Both also get a brute-force union check over all relative offsets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .colorings import CruxParams


@dataclass
class Obligation:
    name: str
    universe: str
    passed: bool
    counterexample: object = None
    detail: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "universe": self.universe, "pass": self.passed,
               "counterexample": self.counterexample}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CertificateReport:
    params: CruxParams
    obligations: list[Obligation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.obligations)

    def failures(self) -> list[Obligation]:
        return [o for o in self.obligations if not o.passed]

    def to_dict(self) -> dict:
        p = self.params
        return {
            "params": {"t": p.t, "n": p.modulus_n, "variant": p.variant, "m": p.m, "d": p.d},
            "colors": p.m * p.modulus_n,
            "pass": self.passed,
            "obligations": [o.to_dict() for o in self.obligations],
        }


def families(p: CruxParams) -> list[tuple[int, int, int]]:
    """Star counts (a, b, c) of the four families, in proof order."""
    t, n = p.t, p.modulus_n
    if p.variant == "A":
        return [(t - 1, t - 1, n - 1), (t, t - 2, n - 1), (t - 1, t, n - 2), (t, t - 1, n - 2)]
    return [(t - 1, t, n - 1), (t, t - 1, n - 1), (t - 1, t + 1, n - 2), (t, t, n - 2)]


def table(t: int, m: int, umax: int, vmax: int) -> set[int]:
    """{u - t v mod m : 0 <= u <= umax, 0 <= v <= vmax}."""
    return {(u - t * v) % m for u in range(umax + 1) for v in range(vmax + 1)}


def sums_by_residue(t: int, m: int, n: int, umax: int, vmax: int) -> dict[int, set[int]]:
    """residue r -> {u + v mod n : (u, v) in range with u - t v = r mod m}."""
    out: dict[int, set[int]] = {}
    for u in range(umax + 1):
        for v in range(vmax + 1):
            out.setdefault((u - t * v) % m, set()).add((u + v) % n)
    return out


def _set_obligation(name, universe, got, want) -> Obligation:
    ok = got == want
    cex = None if ok else {"extra": sorted(got - want), "absent": sorted(want - got)}
    return Obligation(name, universe, ok, cex, detail=f"achieved {len(got)} residues")


def critical_pairs_exist(t, m, n, fam3, fam4, deltas) -> tuple[bool, object]:
    """For all h in Z_m and delta in ``deltas``: some (u1,v1) of family 3 hits h,
    some (u2,v2) of family 4 hits h + delta, with u1+v1 != u2+v2 (mod n)."""
    s3 = sums_by_residue(t, m, n, fam3[0], fam3[1])
    s4 = sums_by_residue(t, m, n, fam4[0], fam4[1])
    for delta in deltas:
        for h in range(m):
            a = s3.get(h, set())
            b = s4.get((h + delta) % m, set())
            if not a or not b or (len(a | b) < 2):
                return False, {"h": h, "delta": delta}
    return True, None


def _family_mask(t, m, n, a, b, c) -> int:
    """Colors of a family with zero offsets, bit (x * n + y) for color (x, y)."""
    mask = 0
    for u in range(a + 1):
        for v in range(b + 1):
            x = (u - t * v) % m
            for w in range(c + 1):
                mask |= 1 << (x * n + (u + v + w) % n)
    return mask


def _rotate(mask: int, shift: int, size: int) -> int:
    shift %= size
    full = (1 << size) - 1
    return ((mask << shift) | (mask >> (size - shift))) & full


def union_covers(p: CruxParams) -> tuple[bool, object]:
    """Four-family coverage for every relative offset.

    Family offsets are X, Y, X + C, Y + C in the first coordinate (C is the
    contribution of the gap just left of the last boxed star) and a common
    S in the second, so after translating by (X, S) only delta = Y - X and
    C remain; both range over all of Z_m.
    """
    t, m, n = p.t, p.m, p.modulus_n
    size = m * n
    full = (1 << size) - 1
    f1, f2, f3, f4 = (_family_mask(t, m, n, *f) for f in families(p))
    for delta in range(m):
        base = f1 | _rotate(f2, delta * n, size)
        if base == full:
            continue
        for C in range(m):
            cov = base | _rotate(f3, C * n, size) | _rotate(f4, (delta + C) * n, size)
            if cov != full:
                gap = ~cov & full
                missing = (gap & -gap).bit_length() - 1
                return False, {"delta": delta, "C": C, "missing": [missing // n, missing % n]}
    return True, None


def crux_certificate(p: CruxParams) -> CertificateReport:
    p.validate()
    t, n, m = p.t, p.modulus_n, p.m
    rep = CertificateReport(p)
    fams = families(p)
    Zm = set(range(m))

    ok = all(a + b + c == p.d - 2 and min(a, b, c) >= 0 for a, b, c in fams)
    rep.obligations.append(Obligation(
        "families", "four star families", ok, None if ok else fams,
        detail=f"a+b+c = d-2 = {p.d - 2}"))
    ok = {w % n for w in range(n)} == set(range(n)) and len({w % n for w in range(n - 1)}) == n - 1
    rep.obligations.append(Obligation(
        "second-coordinate", "w in [0,n-1] and w in [0,n-2] mod n", ok,
        detail="n-1 trailing stars reach all of Z_n; n-2 reach all but one"))

    if p.variant == "A":
        a0 = table(t, m, t - 1, t) == Zm and table(t, m, t, t - 1) == Zm
        rep.obligations.append(Obligation(
            "A0", "u-tv over [0,t-1]x[0,t] and [0,t]x[0,t-1]", a0,
            None if a0 else "a critical table misses a residue"))
        rep.obligations.append(_set_obligation(
            "A1", "u-tv over [0,t-1]x[0,t-1]", table(t, m, t - 1, t - 1), Zm - {t}))
        rep.obligations.append(_set_obligation(
            "A2", "u-tv over [0,t]x[0,t-2]", table(t, m, t, t - 2),
            Zm - {(t + j) % m for j in range(1, t + 1)}))
        ok, cex = critical_pairs_exist(t, m, n, (t - 1, t), (t, t - 1), range(1, t + 1))
        rep.obligations.append(Obligation(
            "A3", "h in Z_m, delta in 1..t", ok, cex))
        rep.obligations.append(Obligation(
            "A4", "gcd(t, m) = 1", gcd(t, m) == 1, None if gcd(t, m) == 1 else gcd(t, m)))
    else:
        (a1, b1, _), (a2, b2, _), (a3, b3, _), (a4, b4, _) = fams
        miss1 = Zm - table(t, m, a1, b1)
        miss2 = Zm - table(t, m, a2, b2)
        rep.obligations.append(Obligation(
            "B1", f"u-tv over [0,{a1}]x[0,{b1}]", len(miss1) < m, None,
            detail=f"missing {sorted(miss1)}"))
        rep.obligations.append(Obligation(
            "B2", f"u-tv over [0,{a2}]x[0,{b2}]", len(miss2) < m, None,
            detail=f"missing {sorted(miss2)}"))
        b0 = table(t, m, a3, b3) == Zm and table(t, m, a4, b4) == Zm
        rep.obligations.append(Obligation(
            "B0", f"u-tv over [0,{a3}]x[0,{b3}] and [0,{a4}]x[0,{b4}]", b0,
            None if b0 else "a critical table misses a residue"))
        # delta = X - Y makes a critical first coordinate iff X + a = Y + b, a in miss1, b in miss2
        critical = sorted({(b - a) % m for a in miss1 for b in miss2} - {0})
        ok, cex = critical_pairs_exist(t, m, n, (a3, b3), (a4, b4), critical)
        zero_ok = not (miss1 & miss2)
        rep.obligations.append(Obligation(
            "B3", f"h in Z_m, delta in {critical}", ok and zero_ok,
            cex if not ok else (None if zero_ok else {"delta": 0})))
        units = gcd(t, m) == 1 and gcd(t + 1, m) == 1
        rep.obligations.append(Obligation(
            "B4", "gcd(t, m) = gcd(t+1, m) = 1", units))

    ok, cex = union_covers(p)
    rep.obligations.append(Obligation(
        "union", "all relative offsets (delta, C) in Z_m x Z_m", ok, cex))
    return rep
