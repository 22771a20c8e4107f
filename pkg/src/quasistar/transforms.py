"""Radius-increasing edge rewirings on connected threshold graphs.

All three rewirings are described by positions in the stepwise adjacency
matrix produced by :func:`quasistar.graphs.to_labeled` (vertices sorted by
descending degree).  With indices p > h > k > q and width l >= 0:

* ``BASIC (p, q; h, k)``           removes the staircase corner edge (h, k)
  and fills the vacant corner (p, q).
* ``ROW (p, q; h, k; l)``          removes the horizontal strip
  (h, k)...(h, k+l) and fills (p, q)...(p-l, q).
* ``COL (p, q; h, k; l)``          removes the vertical strip
  (h, k)...(h-l, k) and fills (p, q)...(p, q-l).

Validation checks the adjacency pattern that makes the move well-formed (the
removed cells are the tip of their row/column, the filled cells are the first
vacancies of theirs), which also guarantees the result is again a threshold
graph with the same vertex and edge counts.

For alpha >= 1/2 and k = q+1 the rewiring never decreases the spectral radius
of alpha*D + (1-alpha)*A, with equality exactly when alpha = 1/2, l = 0 and
p = h+1 = q+3; a BASIC move with k = q+2 and p > h+1 increases it strictly.
``certify`` records both the exact prediction and the observed comparison,
together with the residuals of the two eigenvector identities that drive the
monotonicity argument (``eq1`` on the host, ``eq2`` on the rewired graph).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import (
    LabeledGraph,
    ThresholdGraph,
    threshold_from_labeled,
    to_labeled,
)
from .spectra import HALF, RHO_COMPARE_TOL, as_alpha, threshold_spectrum

KINDS = ("BASIC", "ROW", "COL")

#: Tolerance for the eigenvector-identity residuals.
EQ_RESIDUAL_TOL = 1e-8


class InvalidTransformError(ValueError):
    """The rewiring is not applicable to the given host graph."""


@dataclass(frozen=True)
class TransformSpec:
    """One rewiring: kind, stepwise indices (p, q; h, k), and width l.

    Index shape constraints (checked at construction):

    * BASIC: l = 0 and 2 <= q < k < h < p
    * ROW:   q < k <= k+l < h < p-l
    * COL:   2 <= q-l <= q < k < h-l <= h < p
    """

    kind: str
    p: int
    q: int
    h: int
    k: int
    l: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.l < 0:
            raise ValueError("width l must be nonnegative")
        p, q, h, k, l = self.p, self.q, self.h, self.k, self.l
        if self.kind == "BASIC":
            if l != 0:
                raise ValueError("BASIC rewiring has width 0")
            ok = 2 <= q < k < h < p
        elif self.kind == "ROW":
            ok = 1 <= q < k and k + l < h < p - l
        else:  # COL
            ok = 2 <= q - l and q < k < h - l and h < p
        if not ok:
            raise ValueError(f"indices violate the {self.kind} shape: p={p} q={q} h={h} k={k} l={l}")

    @property
    def text(self) -> str:
        if self.kind == "BASIC":
            return f"BASIC {self.p} {self.q} {self.h} {self.k}"
        return f"{self.kind} {self.p} {self.q} {self.h} {self.k} {self.l}"

    @staticmethod
    def parse(text: str) -> "TransformSpec":
        parts = text.split()
        if not parts:
            raise ValueError("empty rewiring spec")
        kind = parts[0].upper()
        nums = [int(x) for x in parts[1:]]
        if kind == "BASIC" and len(nums) == 4:
            return TransformSpec(kind, *nums)
        if kind in ("ROW", "COL") and len(nums) == 5:
            return TransformSpec(kind, *nums)
        raise ValueError(f"bad rewiring spec {text!r}; expected 'BASIC p q h k' or 'ROW|COL p q h k l'")

    def removals(self) -> list[tuple[int, int]]:
        if self.kind == "BASIC":
            return [(self.k, self.h)]
        if self.kind == "ROW":
            return [(self.k + j, self.h) for j in range(self.l + 1)]
        return [(self.k, self.h - j) for j in range(self.l + 1)]

    def additions(self) -> list[tuple[int, int]]:
        if self.kind == "BASIC":
            return [(self.q, self.p)]
        if self.kind == "ROW":
            return [(self.q, self.p - j) for j in range(self.l + 1)]
        return [(self.q - j, self.p) for j in range(self.l + 1)]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(reason: str) -> ValidationResult:
    return ValidationResult(False, reason)


def _all_set(row: int, lo: int, hi: int) -> bool:
    """Bits lo..hi of row all set (vacuously true when lo > hi)."""
    if lo > hi:
        return True
    mask = (1 << (hi + 1)) - (1 << lo)
    return row & mask == mask


def _none_set(row: int, lo: int, hi: int) -> bool:
    if lo > hi:
        return True
    mask = (1 << (hi + 1)) - (1 << lo)
    return row & mask == 0


def validate(g: ThresholdGraph, spec: TransformSpec) -> ValidationResult:
    """Check the adjacency conditions of the rewiring on g's stepwise matrix.

    Returns a truthy/falsy result; on failure ``reason`` names the first
    violated clause.  Raises ValueError when indices exceed the host size.
    """
    if spec.p > g.n:
        raise ValueError(f"index p={spec.p} out of range for n={g.n}")
    if not g.is_connected:
        return _fail("host graph is not connected")
    rows = to_labeled(g).bitrows()
    p, q, h, k, l = spec.p, spec.q, spec.h, spec.k, spec.l

    if spec.kind == "BASIC":
        if rows[p] >> q & 1:
            return _fail(f"(ii): a[{p},{q}] = 1, the target corner is not vacant")
        if not _all_set(rows[p], 1, q - 1):
            return _fail(f"(ii): row {p} is not full on columns 1..{q - 1}")
        if not _all_set(rows[q], q + 1, p - 1):
            return _fail(f"(ii): column {q} is not full on rows {q + 1}..{p - 1}")
        if not rows[h] >> k & 1:
            return _fail(f"(iii): a[{h},{k}] = 0, there is no edge to remove")
        if not _none_set(rows[h], k + 1, g.n):
            return _fail(f"(iii): row {h} extends past column {k}")
        if not _none_set(rows[k], h + 1, g.n):
            return _fail(f"(iii): column {k} extends past row {h}")
        return ValidationResult(True)

    if spec.kind == "ROW":
        for i in range(p - l, p + 1):
            if rows[i] >> q & 1:
                return _fail(f"(ii): a[{i},{q}] = 1, a target cell is not vacant")
            if not _all_set(rows[i], 1, q - 1):
                return _fail(f"(ii): row {i} is not full on columns 1..{q - 1}")
        if not _all_set(rows[q], q + 1, p - l - 1):
            return _fail(f"(ii): column {q} is not full on rows {q + 1}..{p - l - 1}")
        if not _all_set(rows[h], k, k + l):
            return _fail(f"(iii): row {h} is missing a column in {k}..{k + l}")
        if not _none_set(rows[h], k + l + 1, g.n):
            return _fail(f"(iii): row {h} extends past column {k + l}")
        if not _none_set(rows[h + 1], k, k + l):
            return _fail(f"(iii): row {h + 1} still holds a column in {k}..{k + l}")
        return ValidationResult(True)

    # COL
    for s in range(q - l, q + 1):
        if rows[p] >> s & 1:
            return _fail(f"(ii): a[{p},{s}] = 1, a target cell is not vacant")
        if not _all_set(rows[s], s + 1, p - 1):
            return _fail(f"(ii): column {s} is not full on rows {s + 1}..{p - 1}")
    if not _all_set(rows[p], 1, q - l - 1):
        return _fail(f"(ii): row {p} is not full on columns 1..{q - l - 1}")
    for s in range(h - l, h + 1):
        if not rows[s] >> k & 1:
            return _fail(f"(iii): a[{s},{k}] = 0, there is no edge to remove")
        if not _none_set(rows[s], k + 1, g.n):
            return _fail(f"(iii): row {s} extends past column {k}")
    if not _none_set(rows[k], h + 1, g.n):
        return _fail(f"(iii): column {k} extends past row {h}")
    return ValidationResult(True)


def _transformed_labeled(stepwise: LabeledGraph, spec: TransformSpec) -> LabeledGraph:
    """Apply the rewiring to the stepwise labeling; labels are preserved."""
    edges = set(stepwise.edges)
    for u, v in spec.removals():
        edge = (u, v) if u < v else (v, u)
        if edge not in edges:
            raise InvalidTransformError(f"edge {edge} to remove is absent")
        edges.remove(edge)
    for u, v in spec.additions():
        edge = (u, v) if u < v else (v, u)
        if edge in edges:
            raise InvalidTransformError(f"edge {edge} to add already exists")
        edges.add(edge)
    return LabeledGraph.from_edges(stepwise.n, edges)


def apply_transform(g: ThresholdGraph, spec: TransformSpec) -> ThresholdGraph:
    """Apply a validated rewiring; returns the canonical result.

    Refuses to apply when validation fails.  The result always has the same
    vertex and edge counts and is again a threshold graph.
    """
    check = validate(g, spec)
    if not check:
        raise InvalidTransformError(f"invalid {spec.kind} rewiring: {check.reason}")
    after = threshold_from_labeled(_transformed_labeled(to_labeled(g), spec))
    assert after.n == g.n and after.m == g.m
    return after


# ---------------------------------------------------------------------------
# Eigenvector identities
# ---------------------------------------------------------------------------
#
# Write x for the Perron vector of the host in stepwise order and rho1 for its
# radius.  The removed strip sits at the tip of row h, whose neighborhood is
# exactly {1..k+l} (ROW) or {1..k} (BASIC/COL), while row p stops at column
# q-1 (q-l-1 for COL).  Subtracting the h-th and p-th eigen-equations gives,
# with a = alpha and w the rightmost removed column:
#
#   (rho1 - w*a) (x_h - x_p) = (w - q0 + 1) a x_p + (1-a) (x_{q0} + ... + x_w)
#
# where q0 is the leftmost filled column (q for BASIC/ROW, q-l for COL).  On
# the rewired graph (Perron vector y on the same labels, radius rho2) the
# q-th and k-th equations give
#
#   (rho2 - p*a + 1) (y_q - y_k) = (p - h0 + 1) a y_k + (1-a) (y_{h0} + ... + y_p)
#
# with h0 = h for BASIC/ROW and h-l for COL.  Both identities hold exactly at
# the eigenpairs for every alpha in [0, 1); their numerical residuals are the
# certificate's eq1/eq2 fields.

def eq1_residual(rho1: float, x, spec: TransformSpec, alpha) -> float:
    """Residual of the host-side identity for the eigenpair (rho1, x)."""
    a = float(alpha) if not isinstance(alpha, float) else alpha
    x = np.asarray(x, dtype=float)
    p, q, h, k, l = spec.p, spec.q, spec.h, spec.k, spec.l
    if spec.kind == "ROW":
        w, q0 = k + l, q
    elif spec.kind == "COL":
        w, q0 = k, q - l
    else:
        w, q0 = k, q
    lhs = (rho1 - w * a) * (x[h - 1] - x[p - 1])
    rhs = (w - q0 + 1) * a * x[p - 1] + (1.0 - a) * float(np.sum(x[q0 - 1 : w]))
    return abs(lhs - rhs)


def eq2_residual(rho2: float, y, spec: TransformSpec, alpha) -> float:
    """Residual of the rewired-side identity for the eigenpair (rho2, y).

    ``y`` must be indexed by the host's stepwise labels (the rewiring keeps
    labels fixed).
    """
    a = float(alpha) if not isinstance(alpha, float) else alpha
    y = np.asarray(y, dtype=float)
    p, q, h, k, l = spec.p, spec.q, spec.h, spec.k, spec.l
    h0 = h - l if spec.kind == "COL" else h
    lhs = (rho2 - p * a + 1.0) * (y[q - 1] - y[k - 1])
    rhs = (p - h0 + 1) * a * y[k - 1] + (1.0 - a) * float(np.sum(y[h0 - 1 : p]))
    return abs(lhs - rhs)


def _perron_on_labels(labeled: LabeledGraph, canonical: ThresholdGraph, alpha: Fraction) -> np.ndarray:
    """Perron vector of `labeled` read off the cached canonical spectrum.

    In a threshold graph equal degrees force equal Perron entries, so the
    entry at a vertex only depends on its degree rank; mapping by rank avoids
    re-solving the same eigensystem under a different labeling.
    """
    z = threshold_spectrum(canonical, alpha).perron
    deg = labeled.degrees()
    assert tuple(sorted(deg, reverse=True)) == canonical.degree_sequence()
    order = sorted(range(1, labeled.n + 1), key=lambda v: (-deg[v - 1], v))
    y = np.empty(labeled.n)
    for pos, v in enumerate(order):
        y[v - 1] = z[pos]
    return y


def eq12_residuals(g: ThresholdGraph, g_after: ThresholdGraph, spec: TransformSpec, alpha):
    """Residuals (r1, r2) of the two identities for a host/result pair.

    ``g_after`` must be the rewiring result for (g, spec); both graphs must be
    connected.
    """
    alpha = as_alpha(alpha)
    check = validate(g, spec)
    if not check:
        raise InvalidTransformError(f"invalid {spec.kind} rewiring: {check.reason}")
    if not g_after.is_connected:
        raise ValueError("rewired graph must be connected")
    before = to_labeled(g)
    labeled_after = _transformed_labeled(before, spec)
    if threshold_from_labeled(labeled_after) != g_after:
        raise ValueError("g_after is not the result of applying spec to g")
    spec_before = threshold_spectrum(g, alpha)
    spec_after = threshold_spectrum(g_after, alpha)
    y = _perron_on_labels(labeled_after, g_after, alpha)
    r1 = eq1_residual(spec_before.rho, spec_before.perron, spec, float(alpha))
    r2 = eq2_residual(spec_after.rho, y, spec, float(alpha))
    return r1, r2


# ---------------------------------------------------------------------------
# Monotonicity certificates
# ---------------------------------------------------------------------------

RULE_ADJACENT = "k=q+1"
RULE_SKIP = "BASIC,k=q+2,p>h+1"
RULE_NONE = "not-covered"


@dataclass(frozen=True)
class MonotonicityCertificate:
    """Before/after radii for one rewiring plus the exact equality prediction.

    ``predicted_equality`` comes from exact rational arithmetic on (alpha, l,
    p, q, h): for a covered spec with k = q+1 it is alpha = 1/2 and l = 0 and
    p = h+1 = q+3.  ``observed_equality`` is the |rho_after - rho_before| <=
    1e-9 comparison.  ``covered`` is False when no monotonicity statement
    applies (alpha < 1/2 or an index pattern outside the two covered rules);
    the certificate is then descriptive only and ``predicted_equality`` is
    None.
    """

    spec: TransformSpec
    alpha: Fraction
    rho_before: float
    rho_after: float
    predicted_equality: bool | None
    observed_equality: bool
    residual_eq1: float
    residual_eq2: float
    covered: bool
    rule: str


def certify(g: ThresholdGraph, spec: TransformSpec, alpha) -> MonotonicityCertificate:
    """Apply the rewiring and certify the spectral-radius comparison."""
    alpha = as_alpha(alpha)
    check = validate(g, spec)
    if not check:
        raise InvalidTransformError(f"invalid {spec.kind} rewiring: {check.reason}")
    before = to_labeled(g)
    labeled_after = _transformed_labeled(before, spec)
    g_after = threshold_from_labeled(labeled_after)

    spec_before = threshold_spectrum(g, alpha)
    spec_after = threshold_spectrum(g_after, alpha)
    rho1, rho2 = spec_before.rho, spec_after.rho

    if alpha < HALF:
        covered, rule, predicted = False, RULE_NONE, None
    elif spec.k == spec.q + 1:
        covered, rule = True, RULE_ADJACENT
        predicted = alpha == HALF and spec.l == 0 and spec.p == spec.h + 1 == spec.q + 3
    elif spec.kind == "BASIC" and spec.k == spec.q + 2 and spec.p > spec.h + 1:
        covered, rule, predicted = True, RULE_SKIP, False
    else:
        covered, rule, predicted = False, RULE_NONE, None

    y = _perron_on_labels(labeled_after, g_after, alpha)
    r1 = eq1_residual(rho1, spec_before.perron, spec, float(alpha))
    r2 = eq2_residual(rho2, y, spec, float(alpha))

    return MonotonicityCertificate(
        spec=spec,
        alpha=alpha,
        rho_before=rho1,
        rho_after=rho2,
        predicted_equality=predicted,
        observed_equality=abs(rho2 - rho1) <= RHO_COMPARE_TOL,
        residual_eq1=r1,
        residual_eq2=r2,
        covered=covered,
        rule=rule,
    )


def candidate_specs(n: int, kind: str, dk: int = 1):
    """All shape-valid specs of one kind with k - q = dk on n vertices.

    Host-independent; pair with :func:`validate` to find the applicable ones.
    """
    if kind == "BASIC":
        for q in range(2, n + 1):
            k = q + dk
            for h in range(k + 1, n + 1):
                for p in range(h + 1, n + 1):
                    yield TransformSpec("BASIC", p, q, h, k)
    elif kind == "ROW":
        for q in range(1, n + 1):
            k = q + dk
            for l in range(0, n):
                if k + l + 1 > n:
                    break
                for h in range(k + l + 1, n + 1):
                    for p in range(h + l + 1, n + 1):
                        yield TransformSpec("ROW", p, q, h, k, l)
    elif kind == "COL":
        for q in range(2, n + 1):
            k = q + dk
            for l in range(0, q - 1):
                for h in range(k + l + 1, n + 1):
                    for p in range(h + 1, n + 1):
                        yield TransformSpec("COL", p, q, h, k, l)
    else:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
