import itertools
import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_linear_colorings
from polycube.bounds import (FCC_BASIS, asymptotic_ratio, binom3, binom_upper, ceil_height,
                             det3, in_lattice, kernel_lattice, lattice_bound_check, p_bas,
                             shortest_vector, two_q)
from polycube.colorings import basic_coloring, face_color, main_coloring
from polycube.groups import hermite_normal_form
from polycube.verifier import verify_reduced


def test_p_bas_examples():
    assert p_bas(4, 2) == (4, (2, 2, 1))
    assert p_bas(8, 2) == (27, (3, 3, 3))
    assert p_bas(1, 1)[0] == 1
    with pytest.raises(ValueError):
        p_bas(2, 0)


@pytest.mark.parametrize("d", range(1, 60))
def test_p_bas_ell_one(d):
    assert p_bas(d, 1)[0] == (d + 1) ** 2 // 4


def test_p_bas_is_best_split():
    # brute force over all compositions of d+1 into ell+1 positive parts
    for d in range(1, 13):
        for ell in range(1, min(d, 4) + 1):
            best = 0
            for cuts in itertools.combinations(range(1, d + 1), ell):
                parts = np.diff((0,) + cuts + (d + 1,))
                best = max(best, int(np.prod(parts)))
            assert p_bas(d, ell)[0] == best


def test_binomials():
    assert binom_upper(4, 2) == 10
    assert [binom3(a) for a in (-2, 0, 2, 3, 5)] == [0, 0, 0, 1, 10]


def test_fcc_gram():
    gram = FCC_BASIS @ FCC_BASIS.T
    want = np.array([[1, .5, .5], [.5, 1, .5], [.5, .5, 1]])
    assert np.allclose(gram, want, atol=1e-9)
    rng = random.Random(0)
    for _ in range(200):
        v = [rng.randint(-9, 9) for _ in range(3)]
        assert abs(float(np.sum((np.array(v) @ FCC_BASIS) ** 2)) * 2 - two_q(v)) < 1e-9


def test_hnf_examples():
    H = hermite_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert all(H[i][j] == 0 for i in range(3) for j in range(i))
    assert abs(det3(H)) == abs(det3([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]))
    assert hermite_normal_form([[0, 0], [0, 0]]) == []


def test_kernel_main4():
    c = main_coloring(4)
    B = kernel_lattice(c)
    assert abs(det3(B)) == 6
    for v in [(-1, 2, -1), (1, 1, 0)]:
        assert in_lattice(B, v)
        assert face_color(c, [x % 6 for x in v]) == (0, 0)
    v, q2 = shortest_vector(B)
    assert q2 == 6 and in_lattice(B, v)
    cert = lattice_bound_check(c, 4)
    assert (cert.N, cert.c_squared_times_2, cert.s, cert.frustum_bound) == (6, 6, 3, 10)
    assert cert.sphere_ok and cert.frustum_ok


def test_kernel_main6():
    cert = lattice_bound_check(main_coloring(6), 6)
    assert cert.N == 15 and cert.c_squared_times_2 == 6 and cert.s == 3
    assert cert.frustum_bound == 31 and cert.ok


@pytest.mark.parametrize("d", range(4, 13))
def test_lattice_bounds_main(d):
    cert = lattice_bound_check(main_coloring(d), d)
    assert cert.N == main_coloring(d).order
    assert cert.N <= cert.frustum_bound <= comb(d + 1, 3)
    assert cert.ok


def test_ceil_height():
    for q2 in range(0, 400):
        s = ceil_height(q2)
        assert 4 * s * s >= 3 * q2 and (s == 0 or 4 * (s - 1) ** 2 < 3 * q2)


def brute_kernel_min(c, R):
    best = None
    for v in itertools.product(range(-R, R + 1), repeat=3):
        if any(v) and face_color(c, [x % c.exponent for x in v]) == c.group.identity:
            q = two_q(v)
            if best is None or q < best:
                best = q
    return best


ELL2 = random_linear_colorings(40, 60, seed=4, ells=(2,))


@pytest.mark.parametrize("c", ELL2, ids=lambda c: c.label)
def test_kernel_against_brute_force(c):
    B = kernel_lattice(c)
    assert abs(det3(B)) == c.order
    rng = random.Random(1)
    for _ in range(200):
        v = [rng.randint(-20, 20) for _ in range(3)]
        zero = face_color(c, [x % c.exponent for x in v]) == c.group.identity
        assert in_lattice(B, v) == zero
    assert shortest_vector(B)[1] == brute_kernel_min(c, 8)


def random_unimodular(rng):
    U = np.eye(3, dtype=np.int64)
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        U[i] += rng.choice((-1, 1)) * rng.randint(1, 3) * U[j]
    return U


@pytest.mark.parametrize("c", ELL2[:20], ids=lambda c: c.label)
def test_rebasing_invariance(c):
    B = np.array(kernel_lattice(c), dtype=np.int64)
    v, q2 = shortest_vector(B.tolist())
    rng = random.Random(c.order)
    for _ in range(5):
        B2 = (random_unimodular(rng) @ B).tolist()
        assert hermite_normal_form(B2) == B.tolist()
        assert shortest_vector(B2) == (v, q2)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 10**9))
def test_polychromatic_colorings_obey_bounds(seed):
    c = random_linear_colorings(1, 30, seed=seed, ells=(2,))[0]
    d = random.Random(seed).randint(2, 4)
    if c.exponent ** (d + 1) > 20000:
        return
    if verify_reduced(c, d).polychromatic:
        assert c.order <= binom_upper(d, 2)
        assert lattice_bound_check(c, d).ok


def test_bounds_hold_for_basic():
    for d in range(2, 13):
        c = basic_coloring(d, 2)
        assert lattice_bound_check(c, d).ok


def test_asymptotic_ratio():
    rep = asymptotic_ratio(10**6)
    assert abs(rep.c_over_d_max - 0.5434) < 5e-5
    assert rep.c_over_d_max <= 0.5434
    assert rep.N_ratio_bound < 26 / 27
    big = asymptotic_ratio(10**7)
    assert abs(big.N_ratio_bound - rep.N_ratio_bound) < 1e-5
    # limiting equation 1 + (y)^3 = 6 x^3 with y = sqrt(3/2) x - 1
    x = big.c_over_d_max
    assert abs(1 + (1.5**0.5 * x - 1) ** 3 - 6 * x**3) < 1e-5
    with pytest.raises(ValueError):
        asymptotic_ratio(2)
