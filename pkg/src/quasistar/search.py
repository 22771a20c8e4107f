"""Exhaustive searches over graph families of fixed order and size.

Threshold graphs of order n biject with creation sequences, and the edge
count only depends on which positions are dominating (position i contributes
i-1 edges), so enumerating the family with m edges is a subset-sum walk over
{1..n-1} with pruning on the reachable totals.  Connected members are the
sequences ending in D.

General graphs are enumerated once per order (n <= 7) up to isomorphism by
edge augmentation with canonical-form rejection; the canonical form of an
edge-subset bitmask is its minimum over all vertex permutations, computed
vectorized against a precomputed permutation/weight table.

``argmax_rho`` scans a family for the maximum spectral radius of
alpha*D + (1-alpha)*A, reporting every maximizer within 1e-9 of the maximum,
the gap to the best non-maximizer, and a warning for any suspicious near-tie
(gap below 1e-6).  The ``verify_*`` drivers compare the found maximizer sets
against the predicted ones (the quasi-star, with the S~ tie at alpha = 1/2
where it exists) and the ``audit`` helper extracts the staircase statistics
kappa, delta_j, s, theta used in the structural analysis of extremal hosts.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graphs import (
    DOMINATING,
    ISOLATED,
    LabeledGraph,
    ThresholdGraph,
    is_threshold,
    quasi_star,
    tilde_s,
    to_labeled,
)
from .spectra import (
    HALF,
    RHO_COMPARE_TOL,
    as_alpha,
    spectral_radius,
    threshold_spectrum,
)

NEAR_TIE_WARNING = 1e-6
MAX_EXHAUSTIVE_N = 7

THRESHOLD = "THRESHOLD"
ALL = "ALL"


@dataclass(frozen=True)
class FamilySpec:
    """A graph family at fixed (n, m): connected-or-not, threshold-or-all."""

    n: int
    m: int
    connected_only: bool = True
    universe: str = THRESHOLD

    def __post_init__(self) -> None:
        if self.universe not in (THRESHOLD, ALL):
            raise ValueError(f"universe must be {THRESHOLD} or {ALL}")
        if self.n < 1:
            raise ValueError("need n >= 1")
        top = self.n * (self.n - 1) // 2
        low = self.n - 1 if self.connected_only else 0
        if not low <= self.m <= top:
            raise ValueError(f"infeasible family: m={self.m} not in [{low}, {top}] for n={self.n}")
        if self.universe == ALL and self.n > MAX_EXHAUSTIVE_N:
            raise ValueError(f"exhaustive isomorphism-free enumeration is limited to n <= {MAX_EXHAUSTIVE_N}")

    @property
    def label(self) -> str:
        return "H" if self.connected_only else "G"


def enumerate_threshold(family: FamilySpec):
    """Yield every threshold graph of the family exactly once, canonically."""
    if family.universe != THRESHOLD:
        raise ValueError("enumerate_threshold needs a THRESHOLD family")
    n, m = family.n, family.m
    if n == 1:
        yield ThresholdGraph(1, (ISOLATED,))
        return

    def walk(pos: int, need: int, chosen: tuple[int, ...]):
        if need == 0:
            yield chosen
            return
        if pos < 2 or need < 0 or need > pos * (pos - 1) // 2:
            return
        yield from walk(pos - 1, need - (pos - 1), chosen + (pos,))
        yield from walk(pos - 1, need, chosen)

    if family.connected_only:
        starts = walk(n - 1, m - (n - 1), (n,))
    else:
        starts = walk(n, m, ())
    for dom_positions in starts:
        marks = set(dom_positions)
        seq = tuple(DOMINATING if i in marks else ISOLATED for i in range(1, n + 1))
        yield ThresholdGraph(n, seq)


# ---------------------------------------------------------------------------
# Isomorphism-free enumeration of all graphs on n <= 7 vertices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pairs(n: int):
    pairs = tuple(combinations(range(1, n + 1), 2))
    return pairs, {pair: i for i, pair in enumerate(pairs)}


@lru_cache(maxsize=None)
def _perm_weights(n: int) -> np.ndarray:
    """Row per vertex permutation: weight 2^(image index) per edge slot.

    A graph bitmask b maps under permutation row w to sum(w[e] for e in b);
    all values stay below 2^21 so float64 arithmetic is exact.
    """
    pairs, index = _pairs(n)
    perms = list(permutations(range(1, n + 1)))
    weights = np.zeros((len(perms), len(pairs)))
    for pi, perm in enumerate(perms):
        for ei, (u, v) in enumerate(pairs):
            x, y = perm[u - 1], perm[v - 1]
            if x > y:
                x, y = y, x
            weights[pi, ei] = float(1 << index[(x, y)])
    return weights


def _canonical_many(masks, n: int, chunk: int = 512) -> list[int]:
    """Canonical form (minimum relabeling) of each bitmask in masks."""
    pairs, _ = _pairs(n)
    weights = _perm_weights(n)
    out = []
    for lo in range(0, len(masks), chunk):
        block = masks[lo : lo + chunk]
        cols = np.zeros((len(pairs), len(block)))
        for ci, mask in enumerate(block):
            for ei in range(len(pairs)):
                if mask >> ei & 1:
                    cols[ei, ci] = 1.0
        out.extend(int(v) for v in (weights @ cols).min(axis=0))
    return out


@lru_cache(maxsize=None)
def _graph_classes(n: int):
    """Canonical bitmasks of all isomorphism classes, indexed by edge count."""
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {MAX_EXHAUSTIVE_N}")
    total = n * (n - 1) // 2
    levels = [(0,)]
    for m in range(1, total + 1):
        batch = []
        for g in levels[m - 1]:
            for ei in range(total):
                if not g >> ei & 1:
                    batch.append(g | (1 << ei))
        levels.append(tuple(sorted(set(_canonical_many(batch, n)))))
    return tuple(levels)


def _labeled_from_mask(mask: int, n: int) -> LabeledGraph:
    pairs, _ = _pairs(n)
    edges = [pairs[ei] for ei in range(len(pairs)) if mask >> ei & 1]
    return LabeledGraph.from_edges(n, edges)


def edge_key(g: LabeledGraph) -> str:
    """Compact edge-list key like '12.13.23' (single-digit labels, n <= 9)."""
    return ".".join(f"{u}{v}" for u, v in sorted(g.edges)) or "-"


def automorphism_count(g: LabeledGraph) -> int:
    """Number of vertex permutations fixing g; brute force, n <= 7."""
    pairs, _ = _pairs(g.n)
    weights = _perm_weights(g.n)
    col = np.zeros(len(pairs))
    mask = 0
    _, index = _pairs(g.n)
    for u, v in g.edges:
        mask |= 1 << index[(u, v)]
    for ei in range(len(pairs)):
        if mask >> ei & 1:
            col[ei] = 1.0
    vals = weights @ col
    return int(np.count_nonzero(vals == float(mask)))


def enumerate_all(family: FamilySpec):
    """Yield one representative per isomorphism class of the ALL family."""
    if family.universe != ALL:
        raise ValueError("enumerate_all needs an ALL family")
    for mask in _graph_classes(family.n)[family.m]:
        g = _labeled_from_mask(mask, family.n)
        if family.connected_only and not g.is_connected:
            continue
        yield g


# ---------------------------------------------------------------------------
# Extremal search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one family scan: full maximizer set and tie structure.

    ``maximizer_set`` holds canonical creation sequences (THRESHOLD universe)
    or canonical edge-list keys (ALL universe), sorted lexicographically;
    every member has rho within 1e-9 of ``rho_max``.  ``tie_gap`` is the
    distance from the maximum to the best non-maximizer (inf when the family
    has no non-maximizer).  ``matches_theorem`` is None for a plain argmax
    scan and a bool when a verifier compared the set against its prediction.
    """

    family: FamilySpec
    alpha: Fraction
    maximizer_set: tuple[str, ...]
    rho_max: float
    tie_gap: float
    matches_theorem: bool | None
    elapsed: float
    warnings: tuple[str, ...] = ()

    def record(self) -> str:
        """One structured line, stable field order, 17 significant digits."""
        seqs = ";".join(self.maximizer_set)
        ok = 0 if self.matches_theorem is False else 1
        return (
            f"family={self.family.label},n={self.family.n},m={self.family.m},"
            f"alpha={self.alpha} rho={self.rho_max:.17g} maximizers={seqs} "
            f"tie_gap={self.tie_gap:.17g} ok={ok}"
        )


def _scan(items, threads: int):
    """Evaluate (key, rho_fn) pairs, optionally in prefix-contiguous chunks.

    Each chunk is evaluated independently and results are concatenated in
    chunk order, so the outcome is identical for every thread count.
    """
    if threads <= 1 or len(items) < 4:
        return [(key, fn()) for key, fn in items]
    chunks = np.array_split(np.arange(len(items)), threads)
    def run(idx):
        return [(items[i][0], items[i][1]()) for i in idx]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(run, chunks))
    return [pair for part in parts for pair in part]


def argmax_rho(family: FamilySpec, alpha, threads: int = 1) -> VerificationReport:
    """Scan the family for its spectral-radius maximizers at the given alpha."""
    alpha = as_alpha(alpha)
    start = time.perf_counter()
    if family.universe == THRESHOLD:
        items = [
            (g.text, (lambda gg=g: threshold_spectrum(gg, alpha).rho))
            for g in enumerate_threshold(family)
        ]
    else:
        items = [
            (edge_key(g), (lambda gg=g: spectral_radius(gg, alpha).rho))
            for g in enumerate_all(family)
        ]
    if not items:
        raise ValueError(f"family {family} is empty")
    scored = _scan(items, threads)
    rho_max = max(rho for _, rho in scored)
    maximizers = tuple(sorted(key for key, rho in scored if rho >= rho_max - RHO_COMPARE_TOL))
    outside = [rho for _, rho in scored if rho < rho_max - RHO_COMPARE_TOL]
    tie_gap = rho_max - max(outside) if outside else float("inf")
    warnings = ()
    if outside and tie_gap < NEAR_TIE_WARNING:
        warnings = (
            f"near-tie: best non-maximizer within {tie_gap:.3e} of the maximum",
        )
    return VerificationReport(
        family=family,
        alpha=alpha,
        maximizer_set=maximizers,
        rho_max=rho_max,
        tie_gap=tie_gap,
        matches_theorem=None,
        elapsed=time.perf_counter() - start,
        warnings=warnings,
    )


def predicted_maximizers(n: int, m: int, alpha) -> set[str]:
    """Predicted maximizer set over connected graphs: S(n,m), with the S~ tie.

    At alpha = 1/2 the triangle variant S~(n,m) ties with the quasi-star
    whenever it exists and is connected; for every other alpha in [1/2, 1) the
    quasi-star is the unique prediction.
    """
    alpha = as_alpha(alpha)
    expected = {quasi_star(n, m).text}
    if alpha == HALF:
        try:
            twin = tilde_s(n, m)
        except ValueError:
            twin = None
        if twin is not None and twin.is_connected:
            expected.add(twin.text)
    return expected


def _with_match(report: VerificationReport, expected: set[str], extra_warnings=()) -> VerificationReport:
    return VerificationReport(
        family=report.family,
        alpha=report.alpha,
        maximizer_set=report.maximizer_set,
        rho_max=report.rho_max,
        tie_gap=report.tie_gap,
        matches_theorem=set(report.maximizer_set) == expected,
        elapsed=report.elapsed,
        warnings=report.warnings + tuple(extra_warnings),
    )


def verify_sparse_band(n_values, alphas, threads: int = 1) -> list[VerificationReport]:
    """Connected-family scans for every m in [n-1, 2n-2].

    Expected outcome: the quasi-star alone, except the two-graph tie with
    S~(n, n+2) at alpha = 1/2, m = n+2.
    """
    reports = []
    for n in n_values:
        if n < 4:
            raise ValueError("sparse-band verification needs n >= 4")
        for m in range(n - 1, 2 * n - 1):
            for alpha in alphas:
                family = FamilySpec(n, m, connected_only=True, universe=THRESHOLD)
                report = argmax_rho(family, alpha, threads=threads)
                reports.append(_with_match(report, predicted_maximizers(n, m, alpha)))
    return reports


def verify_all_graphs_2n2(n_values, threads: int = 1) -> list[VerificationReport]:
    """Scans over all (not necessarily connected) threshold graphs, m = 2n-2.

    At alpha = 1/2 the expected maximizer is K_5 u K_1 for n = 6 and the
    quasi-star otherwise.  Restricting to the threshold universe is lossless:
    a maximizer over all graphs of fixed order and size is threshold.
    """
    reports = []
    for n in n_values:
        if n < 4:
            raise ValueError("needs n >= 4 so that m = 2n-2 is feasible")
        m = 2 * n - 2
        family = FamilySpec(n, m, connected_only=False, universe=THRESHOLD)
        report = argmax_rho(family, HALF, threads=threads)
        if n == 6:
            expected = {"IDDDDI"}  # K_5 u K_1
        else:
            expected = {quasi_star(n, m).text}
        reports.append(_with_match(report, expected))
    return reports


def clique_band_hypothesis_bound(r: int) -> float:
    """Smallest order beyond which the band characterization is claimed."""
    return (30 * r - 63 + 5 * (32 * r * r - 136 * r + 137) ** 0.5) / 2


def verify_clique_band(r: int, n: int, alphas, threads: int = 1) -> list[VerificationReport]:
    """Connected-family scans for (r-1)n - r(r-1)/2 < m <= rn - r(r+1)/2.

    Expected outcome: quasi-star alone, except the S~ tie at alpha = 1/2 and
    m = (r-1)n - r(r-1)/2 + 3.  Runs below the hypothesis bound on n are
    still scanned but flagged with a warning, since no claim is made there.
    """
    if r < 3:
        raise ValueError("band verification needs r >= 3")
    lo = (r - 1) * n - r * (r - 1) // 2
    hi = r * n - r * (r + 1) // 2
    extra = ()
    bound = clique_band_hypothesis_bound(r)
    if n <= bound:
        extra = (f"outside-hypothesis: n={n} is not above the bound {bound:.3f}",)
    reports = []
    for m in range(lo + 1, hi + 1):
        for alpha in alphas:
            family = FamilySpec(n, m, connected_only=True, universe=THRESHOLD)
            report = argmax_rho(family, alpha, threads=threads)
            reports.append(_with_match(report, predicted_maximizers(n, m, alpha), extra))
    return reports


def threshold_dominance_report(n: int, m: int, alpha, threads: int = 1) -> VerificationReport:
    """Compare the ALL-connected maximum against the threshold-only maximum.

    ``matches_theorem`` is True when the two maxima agree within 1e-9 and
    every maximizer over all connected graphs is a threshold graph.
    """
    all_family = FamilySpec(n, m, connected_only=True, universe=ALL)
    thr_family = FamilySpec(n, m, connected_only=True, universe=THRESHOLD)
    all_report = argmax_rho(all_family, alpha, threads=threads)
    thr_report = argmax_rho(thr_family, alpha, threads=threads)
    agree = abs(all_report.rho_max - thr_report.rho_max) <= RHO_COMPARE_TOL
    masks = {edge_key(g): g for g in enumerate_all(all_family)}
    all_threshold = all(is_threshold(masks[key]) for key in all_report.maximizer_set)
    return VerificationReport(
        family=all_family,
        alpha=all_report.alpha,
        maximizer_set=all_report.maximizer_set,
        rho_max=all_report.rho_max,
        tie_gap=all_report.tie_gap,
        matches_theorem=agree and all_threshold,
        elapsed=all_report.elapsed + thr_report.elapsed,
        warnings=all_report.warnings,
    )


def verify_threshold_dominance(n: int, m: int, alpha, threads: int = 1) -> bool:
    """True iff the connected maximizers at (n, m, alpha) are all threshold."""
    return bool(threshold_dominance_report(n, m, alpha, threads=threads).matches_theorem)


# ---------------------------------------------------------------------------
# Structural audit of a connected threshold host
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalAudit:
    """Staircase statistics of a connected threshold graph.

    kappa is the deepest index j with a_{j+1,j} = 1 in the stepwise matrix;
    delta maps j to the count of vertices past position j with degree exactly
    j; s is the largest offset with d(v_{r+s}) >= r+1 (0 when none) and theta
    the excess d(v_{r+s}) - r.  For non-complete hosts the counts satisfy
    n = sum_j delta_j + kappa, recorded in ``identity_ok``; complete graphs
    degenerate and are flagged instead of checked.
    """

    n: int
    r: int
    kappa: int
    delta: dict[int, int] = field(compare=False)
    s: int = 0
    theta: int | None = None
    identity_ok: bool | None = None
    complete: bool = False


def audit(g: ThresholdGraph, r: int) -> ExtremalAudit:
    if not g.is_connected:
        raise ValueError("audit requires a connected threshold graph")
    if r < 1:
        raise ValueError("audit requires r >= 1")
    n = g.n
    labeled = to_labeled(g)
    rows = labeled.bitrows()
    degrees = labeled.degrees()  # already non-increasing in stepwise order

    complete = g.m == n * (n - 1) // 2
    kappa = 0
    for j in range(1, n):
        if rows[j + 1] >> j & 1:
            kappa = j

    if complete:
        delta: dict[int, int] = {}
        identity_ok = None
    else:
        delta = {}
        for j in range(1, kappa + 1):
            delta[j] = sum(1 for i in range(j + 1, n + 1) if degrees[i - 1] == j)
        identity_ok = n == sum(delta.values()) + kappa

    s = 0
    theta = None
    offset = 1
    while r + offset <= n and degrees[r + offset - 1] >= r + 1:
        s = offset
        offset += 1
    if s > 0:
        theta = degrees[r + s - 1] - r
    return ExtremalAudit(
        n=n, r=r, kappa=kappa, delta=delta, s=s, theta=theta,
        identity_ok=identity_ok, complete=complete,
    )
