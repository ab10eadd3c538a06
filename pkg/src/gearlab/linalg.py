"""Small dense linear algebra: Jacobi rotations and exact integer/rational kernels."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (values, vectors) with values ascending and vectors[:, i] the
    eigenvector for values[i].  Operates on a private copy.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v
    scale = max(np.abs(a).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt((np.tril(a, -1) ** 2).sum())
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-20 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # plane rotation J (J_pp = c, J_pq = s, J_qp = -s) zeroing a_pq
                rot = np.array([[c, s], [-s, c]])
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[:, [p, q]] = a[:, [p, q]] @ rot
                v[:, [p, q]] = v[:, [p, q]] @ rot
    vals = np.diag(a).copy()
    order = np.argsort(vals)
    return vals[order], v[:, order]


def bareiss_det(mat):
    """Exact determinant of an integer matrix, fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def lagrange_interpolate(xs, ys):
    """Exact polynomial (ascending Fraction coefficients) through the points."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # basis numerator prod_{j != i} (x - x_j), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            denom *= Fraction(xs[i] - xs[j])
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= Fraction(xs[j]) * basis[t + 1]
        scale = Fraction(ys[i]) / denom
        for t in range(len(basis)):
            coeffs[t] += scale * basis[t]
    return coeffs


def pencil_charpoly(dmat, wmat):
    """Exact det(x*D - W) for integer matrices D, W, ascending coefficients."""
    n = len(dmat)
    xs = list(range(n + 1))
    ys = [bareiss_det([[x0 * dmat[i][j] - wmat[i][j] for j in range(n)]
                       for i in range(n)]) for x0 in xs]
    coeffs = lagrange_interpolate(xs, ys)
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def fraction_rank(mat) -> int:
    """Exact rank of a matrix with Fraction (or int) entries."""
    a = [[Fraction(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(rows):
            if r != rank and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def poly_eval(coeffs, x):
    """Horner evaluation of ascending coefficients (exact for Fraction input)."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
