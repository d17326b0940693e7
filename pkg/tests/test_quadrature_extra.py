"""Stress checks of the Haar grids: orthogonality relations at higher degree
and two-dimensional torus exponentials."""

import math

import numpy as np

from bfw import OperatorField, Su2Spin, TorusChar, TorusDual, make_weight
from bfw.calculus import exp_itu
from bfw.fields import dual_norm
from bfw.quadrature import HaarGrid


def bessel(k, x, terms=60):
    kk = abs(k)
    tot, term = 0.0, (x / 2.0) ** kk / math.factorial(kk)
    for m in range(terms):
        tot += term
        term *= -((x / 2.0) ** 2) / ((m + 1) * (m + 1 + kk))
    return tot * (1.0 if k >= 0 else (-1.0) ** k)


def test_su2_grid_orthogonality_high_degree(su2):
    # Schur orthogonality of matrix entries, integrated exactly by the grid:
    # int pi_a[i,j] conj(pi_b[k,l]) = delta_ab delta_ik delta_jl / d_a
    degree = 24
    grid = HaarGrid(su2, degree)
    for na, nb in [(0, 0), (1, 1), (2, 2), (5, 5), (1, 3), (0, 2), (4, 8), (12, 12)]:
        Pa = grid.rep_stack(Su2Spin(na))
        Pb = grid.rep_stack(Su2Spin(nb))
        gram = np.einsum("g,gij,gkl->ijkl", grid.weights, Pa, Pb.conj())
        want = np.zeros_like(gram)
        if na == nb:
            d = na + 1
            for i in range(d):
                for j in range(d):
                    want[i, j, i, j] = 1.0 / d
        assert np.max(np.abs(gram - want)) < 1e-12, (na, nb)


def test_semidirect_grid_orthogonality(sd):
    grid = HaarGrid(sd, 12)
    labels = sd.ball(5)
    for a in labels:
        for b in labels:
            Pa, Pb = grid.rep_stack(a), grid.rep_stack(b)
            gram = np.einsum("g,gij,gkl->ijkl", grid.weights, Pa, Pb.conj())
            if a == b:
                d = sd.dim(a)
                want = np.zeros((d, d, d, d))
                for i in range(d):
                    for j in range(d):
                        want[i, j, i, j] = 1.0 / d
                assert np.max(np.abs(gram - want)) < 1e-12
            else:
                assert np.max(np.abs(gram)) < 1e-12


def test_exp_itu_torus_rank2():
    # e^{it(2cos a + 2cos b)} factorizes into a Bessel product per axis
    t2 = TorusDual(2)
    u = OperatorField.from_terms(
        t2,
        {
            TorusChar((1, 0)): np.array([[1.0]]),
            TorusChar((-1, 0)): np.array([[1.0]]),
            TorusChar((0, 1)): np.array([[1.0]]),
            TorusChar((0, -1)): np.array([[1.0]]),
        },
    )
    t = 1.5
    fld, defect = exp_itu(t2, u, t, cutoff=16)
    assert defect < 1e-10
    for k1, k2 in [(0, 0), (1, 0), (2, -1), (-3, 2), (4, 4)]:
        got = complex(fld[TorusChar((k1, k2))][0, 0])
        want = (1j) ** (k1 + k2) * bessel(k1, 2 * t) * bessel(k2, 2 * t)
        assert abs(got - want) < 1e-9, (k1, k2)


def test_dual_norm_of_points(su2, sd, rng):
    # group points have margin exactly 1 against weights with w(trivial)=1
    for dual in (su2, sd):
        w = make_weight(dual, "poly:alpha=1")
        s = dual.random_point(rng)
        assert abs(dual_norm(s, w, cutoff=10, dual=dual) - 1.0) < 1e-12
    # spectrum points: sup lambda^n / (1+n) over the scan
    from bfw.spectrum import Su2SpectrumPoint

    w = make_weight(su2, "poly:alpha=1")
    theta = Su2SpectrumPoint(np.eye(2), 1.3)
    val = dual_norm(theta, w, cutoff=40, dual=su2)
    want = max(1.3**n / (1.0 + n) for n in range(41))
    assert abs(val - want) < 1e-10


def test_product_dual_quadrature_roundtrip(prod_dual, rng):
    from conftest import fields_close, random_field
    from bfw.quadrature import quadrature_coeffs

    u = random_field(prod_dual, 3, rng, n_terms=3)
    co = quadrature_coeffs(u, prod_dual, cutoff=3)
    assert fields_close(co, u, tol=1e-11)
