"""Oracle checks for the exact and iterative linear algebra kernels."""

from fractions import Fraction

import numpy as np

from gearlab.linalg import (bareiss_det, fraction_rank, jacobi_eigh,
                            lagrange_interpolate, pencil_charpoly, poly_eval)


def test_jacobi_matches_numpy_on_random_symmetric():
    rng = np.random.default_rng(42)
    for n in (1, 2, 3, 7, 15):
        b = rng.standard_normal((n, n))
        s = (b + b.T) / 2
        vals, vecs = jacobi_eigh(s)
        assert np.abs(vals - np.linalg.eigvalsh(s)).max() < 1e-12
        assert np.abs(s @ vecs - vecs * vals).max() < 1e-12
        assert np.abs(vecs.T @ vecs - np.eye(n)).max() < 1e-12


def test_jacobi_handles_degenerate_eigenvalues():
    s = np.diag([2.0, 2.0, 1.0])
    s[0, 2] = s[2, 0] = 0.3
    vals, _ = jacobi_eigh(s)
    assert np.abs(np.sort(vals) - np.sort(np.linalg.eigvalsh(s))).max() < 1e-13


def test_bareiss_known_determinants():
    assert bareiss_det([[5]]) == 5
    assert bareiss_det([[1, 2], [3, 4]]) == -2
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    # permutation matrix of a 4-cycle has determinant -1
    p = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]
    assert bareiss_det(p) == -1


def test_bareiss_matches_float_det_on_random_integers():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = rng.integers(-9, 10, size=(6, 6))
        assert bareiss_det(m.tolist()) == round(np.linalg.det(m))


def test_lagrange_interpolation_recovers_polynomial():
    coeffs = [Fraction(3), Fraction(-1, 2), Fraction(0), Fraction(2)]
    xs = [0, 1, 2, 3]
    ys = [poly_eval(coeffs, x) for x in xs]
    assert lagrange_interpolate(xs, ys) == coeffs


def test_pencil_charpoly_identity_pencil():
    # det(x I - companion([0,-1])) for the 2x2 rotation generator
    d = [[1, 0], [0, 1]]
    w = [[0, 1], [-1, 0]]
    assert pencil_charpoly(d, w) == [1, 0, 1]  # x^2 + 1
    assert pencil_charpoly([[1]], [[1]]) == [-1, 1]  # x - 1


def test_fraction_rank():
    assert fraction_rank([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) == 1
    assert fraction_rank([[1, 0], [0, 1]]) == 2
    assert fraction_rank([[0, 0], [0, 0]]) == 0
    assert fraction_rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2
