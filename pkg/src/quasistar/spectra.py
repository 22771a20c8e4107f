"""Degree/adjacency matrix pencils and their dominant eigenpairs.

For a simple graph G and a rational weight alpha in [0, 1) the matrix of
interest is

    M_alpha(G) = alpha * D(G) + (1 - alpha) * A(G),

which interpolates between the adjacency matrix (alpha = 0) and half the
signless Laplacian Q(G) = D(G) + A(G) (alpha = 1/2).  ``spectral_radius``
returns the largest eigenvalue together with a nonnegative unit eigenvector
(strictly positive on connected graphs).

alpha stays an exact ``fractions.Fraction`` until matrix assembly so that
equality tests such as alpha == 1/2 are exact.  The eigenpair is computed by
power iteration on M_alpha + sigma*I with a deterministic all-ones start
vector; sigma is the largest diagonal entry, bumped to 1 when that is zero
(alpha = 0), since the plain adjacency matrix of a bipartite graph has -rho in
its spectrum and the unshifted iteration would not converge.  Convergence
requires both a Rayleigh-quotient stall below 1e-13 and an infinity-norm
eigen-residual below 1e-11, and disconnected inputs are solved per component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .graphs import LabeledGraph, ThresholdGraph, is_threshold, to_labeled

RESIDUAL_TOL = 1e-11
RQ_TOL = 1e-13
MAX_ITERATIONS = 10**6

#: Absolute tolerance when comparing spectral radii of two different graphs.
RHO_COMPARE_TOL = 1e-9

HALF = Fraction(1, 2)


class NonConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap; carries the last residual."""

    def __init__(self, residual: float, iterations: int):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )
        self.residual = residual
        self.iterations = iterations


def as_alpha(value) -> Fraction:
    """Normalize alpha to an exact Fraction in [0, 1).

    Accepts Fraction, int, or a string such as ``"1/2"`` or ``"0.75"`` (the
    decimal is converted to the exact rational of its literal digits).  Floats
    are rejected to keep the alpha = 1/2 equality test exact.
    """
    if isinstance(value, float):
        raise TypeError("alpha must be an exact rational (Fraction, int, or string), not float")
    alpha = Fraction(value)
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must satisfy 0 <= alpha < 1, got {alpha}")
    return alpha


def alpha_matrix(g: LabeledGraph, alpha) -> np.ndarray:
    """Dense n x n matrix alpha*D + (1-alpha)*A for the given graph."""
    a = float(as_alpha(alpha))
    n = g.n
    mat = np.zeros((n, n))
    deg = g.degrees()
    for u, v in g.edges:
        mat[u - 1, v - 1] = 1.0 - a
        mat[v - 1, u - 1] = 1.0 - a
    for v in range(n):
        mat[v, v] = a * deg[v]
    return mat


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Dominant eigenpair of one (graph, alpha) pair plus solver diagnostics.

    ``perron`` has unit Euclidean norm and nonnegative entries; on a
    disconnected graph it is supported on the component attaining the radius.
    """

    rho: float
    perron: np.ndarray
    iterations: int
    residual: float


def _power_dominant(mat: np.ndarray, residual_tol: float, rq_tol: float, max_iter: int):
    """Largest eigenvalue of a nonnegative matrix with positive diagonal shift.

    Returns (eigenvalue, unit vector, iterations, residual) where the residual
    is the infinity norm of mat@x - lam*x for the returned pair.
    """
    n = mat.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    lam_prev = math.inf
    lam = 0.0
    resid = math.inf
    for it in range(1, max_iter + 1):
        y = mat @ x
        lam = float(x @ y)
        resid = float(np.max(np.abs(y - lam * x)))
        if resid <= residual_tol and abs(lam - lam_prev) <= rq_tol * max(1.0, abs(lam)):
            return lam, x, it, resid
        lam_prev = lam
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            # Zero matrix block: every vector is an eigenvector for 0.
            return 0.0, x, it, 0.0
        x = y / norm
    raise NonConvergenceError(resid, max_iter)


def spectral_radius(
    g: LabeledGraph,
    alpha,
    *,
    residual_tol: float = RESIDUAL_TOL,
    rq_tol: float = RQ_TOL,
    max_iter: int = MAX_ITERATIONS,
) -> Spectrum:
    """Spectral radius and Perron vector of M_alpha(g).

    Disconnected graphs are solved component by component and the radius is
    the maximum over components (ties go to the component containing the
    smallest vertex, which still yields a genuine eigenvector).
    """
    alpha = as_alpha(alpha)
    a = float(alpha)
    deg = g.degrees()
    nbrs = g.neighbor_sets()

    best = None  # (rho, component, unit vector, residual)
    total_iters = 0
    for comp in g.components():
        if len(comp) == 1:
            rho_c, vec_c, res_c = 0.0, np.array([1.0]), 0.0
        else:
            idx = {v: i for i, v in enumerate(comp)}
            size = len(comp)
            sub = np.zeros((size, size))
            for v in comp:
                sub[idx[v], idx[v]] = a * deg[v - 1]
                for w in nbrs[v]:
                    sub[idx[v], idx[w]] = 1.0 - a
            sigma = float(np.max(np.diag(sub)))
            if sigma <= 0.0:
                sigma = 1.0  # keeps the shifted matrix primitive at alpha = 0
            shifted = sub + sigma * np.eye(size)
            lam, vec_c, iters, res_c = _power_dominant(shifted, residual_tol, rq_tol, max_iter)
            rho_c = lam - sigma
            total_iters += iters
        if best is None or rho_c > best[0]:
            best = (rho_c, comp, vec_c, res_c)

    rho, comp, vec, resid = best
    perron = np.zeros(g.n)
    for i, v in enumerate(comp):
        perron[v - 1] = max(vec[i], 0.0)
    perron.setflags(write=False)
    return Spectrum(rho=rho, perron=perron, iterations=total_iters, residual=resid)


def threshold_spectrum(g: ThresholdGraph, alpha) -> Spectrum:
    """Cached spectrum of a threshold graph in its stepwise vertex order."""
    return _threshold_spectrum(g, as_alpha(alpha))


@lru_cache(maxsize=None)
def _threshold_spectrum(g: ThresholdGraph, alpha: Fraction) -> Spectrum:
    return spectral_radius(to_labeled(g), alpha)


def rho_of(g, alpha) -> float:
    """Spectral radius as a float; accepts LabeledGraph or ThresholdGraph."""
    if isinstance(g, ThresholdGraph):
        return threshold_spectrum(g, alpha).rho
    return spectral_radius(g, alpha).rho


def signless_laplacian_radius(g) -> float:
    """Largest eigenvalue q(G) of D + A, computed as 2 * rho_{1/2}(G)."""
    return 2.0 * rho_of(g, HALF)


def q_upper_bound(n: int, m: int) -> float:
    """The bound 2m/(n-1) + n - 2 on q(G) for connected graphs.

    Attained exactly by stars and complete graphs.
    """
    if n < 2:
        raise ValueError("bound requires n >= 2")
    return 2.0 * m / (n - 1) + n - 2


# ---------------------------------------------------------------------------
# Quotient matrices over vertex partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientMatrix:
    """Block-average row sums of a symmetric matrix over a vertex partition.

    ``entries[i][j]`` is the average over rows in block i of the row sums of
    the (i, j) block.  The partition is equitable when each of those row sums
    is constant on its block, in which case the largest eigenvalue of
    ``entries`` equals the largest eigenvalue of the partitioned matrix
    (nonnegative irreducible case).
    """

    partition: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    @property
    def size(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def largest_eigenvalue(self) -> float:
        eigs = np.linalg.eigvals(self.as_array())
        scale = max(1.0, float(np.max(np.abs(eigs))))
        real = [ev.real for ev in eigs if abs(ev.imag) <= 1e-8 * scale]
        if not real:
            raise ArithmeticError("no real eigenvalue found")
        return max(real)


def quotient_matrix(matrix, partition) -> QuotientMatrix:
    """Quotient of a square matrix over a partition of vertices 1..n.

    Entries are computed exactly (as Fractions) when the matrix is integral,
    so downstream characteristic polynomials come out with exact
    coefficients.  The equitable flag is exact in the integral case and uses
    a 1e-9 tolerance otherwise.
    """
    mat = np.asarray(matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    n = mat.shape[0]
    blocks = tuple(tuple(sorted(set(int(v) for v in blk))) for blk in partition)
    flat = [v for blk in blocks for v in blk]
    if not blocks or any(not blk for blk in blocks):
        raise ValueError("partition blocks must be non-empty")
    if sorted(flat) != list(range(1, n + 1)):
        raise ValueError(f"partition must cover vertices 1..{n} disjointly")

    integral = bool(np.all(np.isfinite(mat)) and np.all(mat == np.round(mat)))
    entries = []
    equitable = True
    for bi in blocks:
        row_entries = []
        for bj in blocks:
            sums = [mat[v - 1, [w - 1 for w in bj]].sum() for v in bi]
            if integral:
                sums = [int(round(s)) for s in sums]
                avg = Fraction(sum(sums), len(bi))
                if any(Fraction(s) != avg for s in sums):
                    equitable = False
            else:
                avg_f = float(sum(sums)) / len(bi)
                if any(abs(s - avg_f) > 1e-9 * max(1.0, abs(avg_f)) for s in sums):
                    equitable = False
                avg = Fraction(avg_f)
            row_entries.append(avg)
        entries.append(tuple(row_entries))
    return QuotientMatrix(blocks, tuple(entries), equitable)


def char_poly(matrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - M), descending coefficients.

    Uses exact Fraction arithmetic via the permutation expansion, so integral
    inputs give exact integer coefficients.  Limited to size <= 6.
    """
    if isinstance(matrix, QuotientMatrix):
        rows = [list(row) for row in matrix.entries]
    else:
        rows = [[_to_fraction(x) for x in row] for row in matrix]
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows):
        raise ValueError("matrix must be square and non-empty")
    if k > 6:
        raise ValueError(f"exact expansion limited to size <= 6, got {k}")

    # Polynomials as ascending coefficient lists of Fractions.
    total = [Fraction(0)] * (k + 1)
    for perm in permutations(range(k)):
        sign = _perm_sign(perm)
        prod = [Fraction(1)]
        for i in range(k):
            j = perm[i]
            if i == j:
                factor = [-rows[i][j], Fraction(1)]  # (x - M_ii)
            else:
                factor = [-rows[i][j]]
            prod = _poly_mul(prod, factor)
        for d, c in enumerate(prod):
            total[d] += sign * c
    total = total[: k + 1]
    coeffs = list(reversed(total))
    assert coeffs[0] == 1
    return coeffs


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    return Fraction(float(x))


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def largest_real_root(coeffs) -> float:
    """Largest real root of a polynomial given by descending coefficients."""
    roots = np.roots([float(c) for c in coeffs])
    scale = max(1.0, float(np.max(np.abs(roots))))
    real = [r.real for r in roots if abs(r.imag) <= 1e-8 * scale]
    if not real:
        raise ArithmeticError("polynomial has no real root")
    return max(real)


# ---------------------------------------------------------------------------
# Perron-vector structure checks
# ---------------------------------------------------------------------------

def perron_order_check(g: LabeledGraph, alpha, tol: float = RHO_COMPARE_TOL):
    """Neighborhood-containment and degree-order checks on the Perron vector.

    Returns a list of violations, each a tuple (kind, u, v) with kind one of
    ``"strict"`` (N(u)\\{v} strictly contains N(v)\\{u} but x_u is not larger
    beyond tol), ``"equal"`` (equal punctured neighborhoods but entries differ
    beyond tol), or ``"order"`` (threshold host whose entries are not
    non-increasing along the degree-descending order).  An empty list means
    every check passed.
    """
    if not g.is_connected:
        raise ValueError("perron_order_check requires a connected graph")
    spec = spectral_radius(g, alpha)
    x = spec.perron
    nbrs = g.neighbor_sets()
    violations = []
    for u in range(1, g.n + 1):
        for v in range(u + 1, g.n + 1):
            nu = nbrs[u] - {v}
            nv = nbrs[v] - {u}
            if nu == nv:
                if abs(x[u - 1] - x[v - 1]) > tol:
                    violations.append(("equal", u, v))
            elif nu > nv:
                if x[u - 1] - x[v - 1] <= tol:
                    violations.append(("strict", u, v))
            elif nv > nu:
                if x[v - 1] - x[u - 1] <= tol:
                    violations.append(("strict", v, u))
    if is_threshold(g):
        deg = g.degrees()
        order = sorted(range(1, g.n + 1), key=lambda v: (-deg[v - 1], v))
        for prev, nxt in zip(order, order[1:]):
            if x[nxt - 1] > x[prev - 1] + tol:
                violations.append(("order", prev, nxt))
    return violations
