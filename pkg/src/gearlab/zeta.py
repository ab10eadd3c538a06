"""Generalized characteristic polynomials of digraphs and zeta equivalence.

For a simple digraph G with adjacency A, the pencil

    L_G(z) = x I + y J + alpha A + beta A^T + gamma D_out + delta D_in

(J the all-ones matrix, D_out/D_in the diagonal row sums of A and A^T)
has a determinant that is homogeneous of degree n; its y = 0 restriction
is the generalized characteristic polynomial that carries the digraph's
reversing zeta data.  Zeta equivalence (equality of the y = 0
determinants) is tested two ways: probabilistically at random points of
a 61-bit prime field (Schwartz-Zippel) and exactly through sparse
symbolic expansion.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .graphs import Digraph, fig6_digraph_pair
from .polynomials import SparsePolynomial, det_symbolic

PRIME = (1 << 61) - 1  # Mersenne prime, fits fast hardware arithmetic


class ZetaError(ValueError):
    pass


@dataclass(frozen=True)
class Pencil:
    """Integer coefficient matrices of L_G(z), one per symbol."""

    n: int
    A: tuple
    AT: tuple
    D_out: tuple
    D_in: tuple

    def matrix_at(self, point):
        """Dense integer matrix of L_G at a 6-tuple (x, y, a, b, g, d)."""
        x, y, al, be, ga, de = point
        n = self.n
        return [[x * (i == j) + y + al * self.A[i][j] + be * self.AT[i][j]
                 + ga * (self.D_out[i] if i == j else 0)
                 + de * (self.D_in[i] if i == j else 0)
                 for j in range(n)] for i in range(n)]


def pencil(g: Digraph) -> Pencil:
    n = g.vertex_count
    a = [[0] * n for _ in range(n)]
    for t, h in g.arcs:
        if t == h:
            raise ZetaError("self-loops not supported")
        if a[t][h]:
            raise ZetaError("parallel arcs not supported")
        a[t][h] = 1
    at = [[a[j][i] for j in range(n)] for i in range(n)]
    d_out = tuple(sum(row) for row in a)
    d_in = tuple(sum(row) for row in at)
    return Pencil(n, tuple(map(tuple, a)), tuple(map(tuple, at)), d_out, d_in)


def _det_mod(mat, p):
    """Determinant over GF(p) by Gaussian elimination."""
    a = [[x % p for x in row] for row in mat]
    n = len(a)
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = (-det) % p
        pivot = a[col][col]
        det = det * pivot % p
        inv = pow(pivot, p - 2, p)
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv % p
                arow, crow = a[r], a[col]
                for cidx in range(col, n):
                    arow[cidx] = (arow[cidx] - f * crow[cidx]) % p
    return det


def eval_det(p: Pencil, point) -> int:
    """det(L_G(point)) mod PRIME."""
    return _det_mod(p.matrix_at(tuple(v % PRIME for v in point)), PRIME)


def random_point(rng: random.Random):
    """Random evaluation point with y = 0 (the zeta-carrying restriction)."""
    return (rng.randrange(PRIME), 0, rng.randrange(PRIME), rng.randrange(PRIME),
            rng.randrange(PRIME), rng.randrange(PRIME))


def zeta_equivalent(g1: Digraph, g2: Digraph, trials: int = 20, seed: int = 0) -> dict:
    """Schwartz-Zippel identity test of the y = 0 pencil determinants.

    Deterministic for a fixed seed.  A false "equivalent" verdict needs
    distinct degree-n polynomials to collide at every sampled point,
    which happens with probability at most (n / PRIME) per trial.
    """
    if trials < 1:
        raise ZetaError("need at least one trial")
    n = g1.vertex_count
    verdict = {
        "n": n,
        "trials": trials,
        "prime": PRIME,
        "seed": seed,
        "per_trial_bound": n / PRIME,
        # the float product underflows for realistic trial counts, so the
        # log10 form carries the actual magnitude
        "failure_bound": (n / PRIME) ** trials,
        "failure_bound_log10": trials * (math.log10(n) - math.log10(PRIME)) if n else -math.inf,
    }
    if g1.vertex_count != g2.vertex_count:
        verdict["verdict"] = "distinguished"
        verdict["distinguishing_point"] = None
        verdict["reason"] = "different vertex counts"
        return verdict
    p1, p2 = pencil(g1), pencil(g2)
    rng = random.Random(seed)
    for _ in range(trials):
        pt = random_point(rng)
        if eval_det(p1, pt) != eval_det(p2, pt):
            verdict["verdict"] = "distinguished"
            verdict["distinguishing_point"] = list(pt)
            return verdict
    verdict["verdict"] = "equivalent-with-bound"
    return verdict


# ---------------------------------------------------------------------------
# exact symbolic route
# ---------------------------------------------------------------------------

def _pencil_entries_y0(p: Pencil):
    """L_G at y = 0 as SparsePolynomial entries."""
    x = SparsePolynomial.variable("x")
    al = SparsePolynomial.variable("alpha")
    be = SparsePolynomial.variable("beta")
    ga = SparsePolynomial.variable("gamma")
    de = SparsePolynomial.variable("delta")
    n = p.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = SparsePolynomial.zero()
            if i == j:
                entry = x + ga * p.D_out[i] + de * p.D_in[i]
            if p.A[i][j]:
                entry = entry + al * p.A[i][j]
            if p.AT[i][j]:
                entry = entry + be * p.AT[i][j]
            row.append(entry)
        rows.append(row)
    return rows


def pencil_entries(p: Pencil):
    """Full symbolic L_G including the y J term (dense)."""
    y = SparsePolynomial.variable("y")
    rows = _pencil_entries_y0(p)
    return [[entry + y for entry in row] for row in rows]


def char_poly_symbolic(p: Pencil, max_n: int = 12) -> SparsePolynomial:
    """Exact det(L_G(z)) as a sparse polynomial in all six symbols.

    The all-ones matrix has rank 1, so the determinant is affine in y:
    det(L0 + y J) = det(L0) + y * ones^T adj(L0) ones.  The second piece
    is one extra bordered determinant, keeping everything inside the
    sparse subset expansion.
    """
    if p.n > max_n:
        raise ZetaError(f"symbolic determinant limited to n <= {max_n}")
    rows = _pencil_entries_y0(p)
    det0 = det_symbolic(rows)
    one = SparsePolynomial.constant(1)
    n = p.n
    bordered = [[SparsePolynomial.zero()] + [one] * n]
    for i in range(n):
        bordered.append([one] + rows[i])
    ones_adj_ones = -det_symbolic(bordered)
    y = SparsePolynomial.variable("y")
    return det0 + y * ones_adj_ones


# ---------------------------------------------------------------------------
# the explicit 12x12 intertwiner for the fig6 pair
# ---------------------------------------------------------------------------

def _mono(coeff, a=0, b=0, g=0):
    return SparsePolynomial.monomial(coeff, alpha=a, beta=b, gamma=g)


def intertwiner_12():
    """Monomial 12x12 matrix T with L_G~(z) T = T L_G(z) at y = 0.

    Entries are monomials in (alpha, beta, gamma); rows follow the dual
    digraph's vertex labels, columns the primal's.
    """
    entries = [
        (1, 1, 1, (3, 0, 0)), (1, 6, 2, (2, 0, 1)), (1, 7, 1, (3, 0, 0)),
        (2, 1, 2, (2, 0, 1)), (2, 2, 1, (3, 0, 0)), (2, 8, 1, (3, 0, 0)),
        (3, 2, 1, (2, 0, 1)), (3, 3, 1, (3, 0, 0)), (3, 8, 1, (2, 0, 1)), (3, 9, 1, (3, 0, 0)),
        (4, 3, 2, (2, 0, 1)), (4, 4, 1, (3, 0, 0)), (4, 10, 1, (3, 0, 0)),
        (5, 4, 1, (2, 0, 1)), (5, 5, 1, (3, 0, 0)), (5, 10, 1, (2, 0, 1)), (5, 11, 1, (3, 0, 0)),
        (6, 5, 1, (2, 0, 1)), (6, 6, 1, (3, 0, 0)), (6, 11, 1, (2, 0, 1)), (6, 12, 1, (3, 0, 0)),
        (7, 1, 1, (2, 1, 0)), (7, 7, -1, (2, 1, 0)),
        (8, 2, 1, (1, 2, 0)), (8, 8, -1, (1, 2, 0)),
        (9, 2, 1, (1, 1, 1)), (9, 3, 1, (2, 1, 0)), (9, 8, -1, (1, 1, 1)), (9, 9, -1, (2, 1, 0)),
        (10, 4, 1, (0, 3, 0)), (10, 10, -1, (0, 3, 0)),
        (11, 4, 1, (0, 2, 1)), (11, 5, 1, (1, 2, 0)), (11, 10, -1, (0, 2, 1)), (11, 11, -1, (1, 2, 0)),
        (12, 5, 1, (1, 1, 1)), (12, 6, 1, (2, 1, 0)), (12, 11, -1, (1, 1, 1)), (12, 12, -1, (2, 1, 0)),
    ]
    t = [[SparsePolynomial.zero() for _ in range(12)] for _ in range(12)]
    for i, j, coeff, (a, b, g) in entries:
        t[i - 1][j - 1] = _mono(coeff, a, b, g)
    return t


def intertwiner_det_expected():
    """((2 a^3)^6 - (2 a^2 g)^6) a^8 b^10, expanded."""
    return (_mono(64, a=26, b=10) - _mono(64, a=20, b=10, g=6))


def verify_intertwiner() -> dict:
    """Exact checks of the 12x12 intertwiner against the fig6 pair.

    Verifies L_G~ T = T L_G symbolically for the y = 0 pencils, reports
    whether the all-ones term commutes as well (it does not: T has
    unequal row and column sums, so the identity is specific to y = 0;
    the six-variable determinants indeed differ in their y part), checks
    det(T) against its closed form, and confirms the y = 0 determinants
    of the pair agree exactly.
    """
    g, gt = fig6_digraph_pair()
    pg, pgt = pencil(g), pencil(gt)
    t = intertwiner_12()
    lg = _pencil_entries_y0(pg)
    lgt = _pencil_entries_y0(pgt)
    n = 12
    intertwines = True
    for i in range(n):
        for j in range(n):
            left = SparsePolynomial.zero()
            right = SparsePolynomial.zero()
            for k in range(n):
                left = left + lgt[i][k] * t[k][j]
                right = right + t[i][k] * lg[k][j]
            if left != right:
                intertwines = False
    col_sums = [sum((t[i][j] for i in range(n)), SparsePolynomial.zero()) for j in range(n)]
    row_sums = [sum((t[i][j] for j in range(n)), SparsePolynomial.zero()) for i in range(n)]
    ones_commute = all(cs == row_sums[0] for cs in col_sums) and \
        all(rs == row_sums[0] for rs in row_sums)
    det_t = det_symbolic(t)
    det_ok = det_t == intertwiner_det_expected()
    full_g = char_poly_symbolic(pg)
    full_gt = char_poly_symbolic(pgt)
    eta_equal = full_g.substitute(y=0) == full_gt.substitute(y=0)
    return {
        "intertwines_y0": intertwines,
        "ones_term_commutes": ones_commute,
        "det_matches": det_ok,
        "eta_equal": eta_equal,
        "full_determinants_equal": full_g == full_gt,
        "ok": intertwines and det_ok and eta_equal,
    }


# ---------------------------------------------------------------------------
# small digraph isomorphism
# ---------------------------------------------------------------------------

def digraph_isomorphic(g1: Digraph, g2: Digraph, max_n: int = 16):
    """Backtracking isomorphism search with degree pruning.

    Returns a vertex bijection (list: image of each g1 vertex) or None.
    """
    n = g1.vertex_count
    if n > max_n:
        raise ZetaError(f"isomorphism search limited to n <= {max_n}")
    if n != g2.vertex_count or len(g1.arcs) != len(g2.arcs):
        return None
    out1 = [set() for _ in range(n)]
    in1 = [set() for _ in range(n)]
    out2 = [set() for _ in range(n)]
    in2 = [set() for _ in range(n)]
    for t, h in g1.arcs:
        out1[t].add(h)
        in1[h].add(t)
    for t, h in g2.arcs:
        out2[t].add(h)
        in2[h].add(t)
    deg1 = [(len(out1[v]), len(in1[v])) for v in range(n)]
    deg2 = [(len(out2[v]), len(in2[v])) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    candidates = [[u for u in range(n) if deg2[u] == deg1[v]] for v in range(n)]
    order = sorted(range(n), key=lambda v: len(candidates[v]))
    image = [-1] * n
    used = [False] * n

    def consistent(v, u):
        for x in out1[v]:
            if image[x] != -1 and image[x] not in out2[u]:
                return False
        for x in in1[v]:
            if image[x] != -1 and image[x] not in in2[u]:
                return False
        for x in range(n):
            if image[x] != -1:
                if (x in out1[v]) != (image[x] in out2[u]):
                    return False
                if (x in in1[v]) != (image[x] in in2[u]):
                    return False
        return True

    def backtrack(pos):
        if pos == n:
            return True
        v = order[pos]
        for u in candidates[v]:
            if not used[u] and consistent(v, u):
                image[v] = u
                used[u] = True
                if backtrack(pos + 1):
                    return True
                image[v] = -1
                used[u] = False
        return False

    return list(image) if backtrack(0) else None
