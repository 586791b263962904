"""Counting bounds and lattice-geometric bounds for linear Q_2-colorings.

Z^3 is viewed as the face-centred cubic lattice: unit basis vectors at 60
degrees to each other, so a coefficient vector v has squared length

    Q(v) = x^2 + y^2 + z^2 + xy + yz + zx.

Everything below works with 2Q, which is always an integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt, sqrt

import numpy as np

from .colorings import LinearColoring, balanced_moduli
from .groups import hermite_normal_form


def p_bas(d: int, ell: int) -> tuple[int, tuple[int, ...]]:
    if not 1 <= ell <= d:
        raise ValueError(f"need d >= ell >= 1, got d={d}, ell={ell}")
    moduli = balanced_moduli(d, ell)
    value = 1
    for m in moduli:
        value *= m
    return value, moduli


def binom_upper(d: int, ell: int) -> int:
    if d < ell:
        raise ValueError(f"need d >= ell, got d={d}, ell={ell}")
    return comb(d + 1, ell + 1)


def binom3(a: int) -> int:
    """C(a, 3), zero for a < 3 (including negative a)."""
    return comb(a, 3) if a >= 3 else 0


def two_q(v) -> int:
    x, y, z = (int(t) for t in v)
    return 2 * (x * x + y * y + z * z + x * y + y * z + z * x)


FCC_BASIS = np.array([
    [1.0, 0.0, 0.0],
    [0.5, sqrt(3) / 2, 0.0],
    [0.5, sqrt(3) / 6, sqrt(6) / 3],
])


# -- integer linear algebra ---------------------------------------------------

def det3(B) -> int:
    (a, b, c), (d, e, f), (g, h, i) = [[int(x) for x in row] for row in B]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def adjugate3(B) -> list[list[int]]:
    M = [[int(x) for x in row] for row in B]
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            minor = [[M[r][s] for s in range(3) if s != j] for r in range(3) if r != i]
            cof[i][j] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
    return [[cof[j][i] for j in range(3)] for i in range(3)]


def kernel_lattice(c: LinearColoring) -> list[list[int]]:
    """Canonical (HNF) basis rows of {v in Z^3 : sum v_i w_i = 0}."""
    if c.ell != 2:
        raise ValueError(f"kernel lattice is defined for ell = 2, got ell = {c.ell}")
    f = c.group.rank
    rows = []
    for i, w in enumerate(c.weights):
        rows.append(list(w) + [int(i == j) for j in range(3)])
    for j, m in enumerate(c.group.moduli):
        rows.append([m * int(j == k) for k in range(f)] + [0, 0, 0])
    H = hermite_normal_form(rows)
    kernel = [row[f:] for row in H if not any(row[:f])]
    assert len(kernel) == 3
    return hermite_normal_form(kernel)


def in_lattice(basis, v) -> bool:
    det = det3(basis)
    if det == 0:
        raise ValueError("singular basis")
    adj = adjugate3(basis)
    return all(sum(v[i] * adj[i][j] for i in range(3)) % det == 0 for j in range(3))


def shortest_vector(basis) -> tuple[tuple[int, int, int], int]:
    """Nonzero lattice vector minimising Q, ties broken lexicographically.

    Q(v) >= |v|^2 / 2 and the minimum is at most N^(2/3), so every coordinate
    of the optimum satisfies |v_i| <= sqrt(2) N^(1/3).
    """
    det = det3(basis)
    if det == 0:
        raise ValueError("singular basis")
    N = abs(det)
    R = 0
    while R**6 < 8 * N * N:
        R += 1
    adj = np.array(adjugate3(basis), dtype=np.int64)
    ax = np.arange(-R, R + 1, dtype=np.int64)
    V = np.stack(np.meshgrid(ax, ax, ax, indexing="ij"), axis=-1).reshape(-1, 3)
    member = ((V @ adj) % det == 0).all(axis=1) & V.any(axis=1)
    V = V[member]
    x, y, z = V[:, 0], V[:, 1], V[:, 2]
    q2 = 2 * (x * x + y * y + z * z + x * y + y * z + z * x)
    best = np.lexsort((z, y, x, q2))[0]
    v = tuple(int(t) for t in V[best])
    return v, int(q2[best])


def ceil_height(q2: int) -> int:
    """Smallest s with s >= sqrt(3/2) c, where c^2 = q2 / 2, i.e. 4 s^2 >= 3 q2."""
    s = isqrt(3 * q2 // 4)
    while 4 * s * s < 3 * q2:
        s += 1
    return s


@dataclass
class LatticeCertificate:
    N: int
    d: int
    kernel_basis: list[list[int]]
    shortest_vec: tuple[int, int, int]
    c_squared_times_2: int
    s: int
    frustum_bound: int
    sphere_ok: bool
    frustum_ok: bool

    @property
    def c(self) -> float:
        return sqrt(self.c_squared_times_2 / 2)

    @property
    def ok(self) -> bool:
        return self.sphere_ok and self.frustum_ok

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "kernel_basis": self.kernel_basis,
            "shortest_vec": list(self.shortest_vec),
            "c_squared_times_2": self.c_squared_times_2,
            "c": self.c,
            "s": self.s,
            "binom": comb(self.d + 1, 3),
            "frustum_bound": self.frustum_bound,
            "sphere_ok": self.sphere_ok,
            "frustum_ok": self.frustum_ok,
        }


def lattice_bound_check(c: LinearColoring, d: int) -> LatticeCertificate:
    basis = kernel_lattice(c)
    N = abs(det3(basis))
    v, q2 = shortest_vector(basis)
    s = ceil_height(q2)
    frustum = binom3(d + 1) - binom3(d + 1 - s)
    return LatticeCertificate(
        N=N, d=d, kernel_basis=basis, shortest_vec=v, c_squared_times_2=q2, s=s,
        frustum_bound=frustum,
        sphere_ok=q2**3 <= 8 * N * N,
        frustum_ok=N <= frustum,
    )


# -- large-d behaviour --------------------------------------------------------

@dataclass
class AsymptoticReport:
    d: int
    c_over_d_max: float
    s_over_d: float
    N_ratio_bound: float

    def to_dict(self) -> dict:
        return dict(vars(self))


def asymptotic_ratio(d: int, tol: float = 1e-12) -> AsymptoticReport:
    """Largest c/d allowed by combining the frustum, height and packing bounds
    at finite d, and the resulting bound on N / C(d+1, 3)."""
    if d < 3:
        raise ValueError("d must be at least 3")
    a = sqrt(1.5)
    inv = 1.0 / d

    def slack(x):
        # (6c^3 <= d^3 - d + (ac - d)(ac - d + 1)(ac - d + 2)) divided by d^3
        y = a * x - 1.0
        return 1.0 - inv * inv + y * (y + inv) * (y + 2 * inv) - 6.0 * x**3

    lo, hi = 0.0, 1.0
    assert slack(lo) > 0 > slack(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if slack(mid) >= 0:
            lo = mid
        else:
            hi = mid
    x = lo
    s_over_d = a * x + inv
    rest = 1.0 - s_over_d + inv       # (d + 1 - s) / d
    ratio = 1.0 - (rest * (rest - inv) * (rest - 2 * inv)) / ((1 + inv) * (1 - inv))
    return AsymptoticReport(d, x, s_over_d, ratio)


__all__ = [
    "AsymptoticReport",
    "LatticeCertificate",
    "asymptotic_ratio",
    "binom_upper",
    "hermite_normal_form",
    "kernel_lattice",
    "lattice_bound_check",
    "p_bas",
    "shortest_vector",
    "two_q",
]
