"""Threshold graphs, their canonical creation sequences, and named families.

A threshold graph is built from a single vertex by repeatedly adding either an
isolated vertex (symbol ``I``) or a dominating vertex (symbol ``D``, adjacent
to everything added before it).  With the first symbol pinned to ``I`` the
creation sequence determines the unlabeled graph uniquely, and conversely any
threshold graph can be peeled back to its sequence by repeatedly removing a
dominating or isolated vertex.  The sequence is therefore used as the
canonical form throughout this package: two threshold graphs are structurally
equal iff their sequences are equal.

Under a degree-descending vertex numbering the adjacency matrix of a threshold
graph is *stepwise*: a_hk = 1 with h > k forces a_ij = 1 for all j < i <= h,
j <= k.  ``to_labeled`` produces exactly that numbering, which the rewiring
module relies on.

Families provided here, for n vertices and m edges:

* ``quasi_star``  S(n,m)  = K_k v (K_{1,a} u (n-a-k-1) K_1), the join of a
  clique with a star plus isolated vertices, where k is the largest integer
  with m >= sum_{i=1..k} (n-i) and a is the remainder.
* ``l_graph``     L(n,m)  = the "clique behind one universal vertex" family
  parametrised by kbar, abar (see ``split_params``).
* ``tilde_s``     S~(n,m) = K_k v (K_3 u (n-k-3) K_1), defined only when
  m = k*n - k(k+1)/2 + 3 for an integer k >= 0 with n-k-3 >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

ISOLATED = "I"
DOMINATING = "D"
_SYMBOLS = frozenset((ISOLATED, DOMINATING))

# Ferrers matrix cell symbols.
PLUS = "+"
FILLED = "*"
EMPTY = "."


class NotThresholdError(ValueError):
    """A graph or degree sequence is not realizable as a threshold graph."""


@dataclass(frozen=True)
class ThresholdGraph:
    """Immutable threshold graph in canonical creation-sequence form.

    ``creation[i]`` says how vertex i+1 was added relative to vertices
    1..i: ``DOMINATING`` makes it adjacent to all of them, ``ISOLATED`` to
    none.  The edge count is recoverable as the sum of i over the dominating
    positions (0-based), and the graph is connected iff the last symbol is
    ``DOMINATING`` (or n = 1).
    """

    n: int
    creation: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.n != len(self.creation):
            raise ValueError(f"creation sequence length {len(self.creation)} != n={self.n}")
        for sym in self.creation:
            if sym not in _SYMBOLS:
                raise ValueError(f"creation symbols must be 'I' or 'D', got {sym!r}")
        if self.creation[0] != ISOLATED:
            raise ValueError("first creation symbol must be ISOLATED")

    @property
    def m(self) -> int:
        return sum(i for i, sym in enumerate(self.creation) if sym == DOMINATING)

    @property
    def is_connected(self) -> bool:
        return self.n == 1 or self.creation[-1] == DOMINATING

    @property
    def text(self) -> str:
        return "".join(self.creation)

    def creation_degrees(self) -> list[int]:
        """Degree of each creation-step vertex, index 0 = first vertex added."""
        deg = []
        later_dom = 0
        for i in range(self.n - 1, -1, -1):
            deg.append((i if self.creation[i] == DOMINATING else 0) + later_dom)
            if self.creation[i] == DOMINATING:
                later_dom += 1
        deg.reverse()
        return deg

    def degree_sequence(self) -> tuple[int, ...]:
        """Non-increasing degree sequence."""
        return tuple(sorted(self.creation_degrees(), reverse=True))

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return f"ThresholdGraph({self.text})"


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on vertices 1..n with an explicit edge set (u < v pairs)."""

    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def from_edges(n: int, edge_iter) -> "LabeledGraph":
        if n < 1:
            raise ValueError("need at least one vertex")
        norm = set()
        for u, v in edge_iter:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{n}")
            norm.add((u, v) if u < v else (v, u))
        return LabeledGraph(n, frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> tuple[int, ...]:
        """Degree of each vertex; index v-1 holds the degree of vertex v."""
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u - 1] += 1
            deg[v - 1] += 1
        return tuple(deg)

    def neighbor_sets(self) -> list[set[int]]:
        """Adjacency sets; index 0 is unused so vertices stay 1-based."""
        nbrs = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def bitrows(self) -> list[int]:
        """Adjacency rows as bitmasks, bit v set iff adjacent to vertex v."""
        rows = [0] * (self.n + 1)
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return rows

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        nbrs = self.neighbor_sets()
        seen = [False] * (self.n + 1)
        comps = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in nbrs[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.components()) == 1


# ---------------------------------------------------------------------------
# Creation sequences
# ---------------------------------------------------------------------------

def from_creation_sequence(seq) -> ThresholdGraph:
    """Build a threshold graph from a creation sequence (string or iterable).

    The sequence must be non-empty and start with ``ISOLATED``.
    """
    symbols = tuple(seq)
    if not symbols:
        raise ValueError("creation sequence must be non-empty")
    return ThresholdGraph(len(symbols), symbols)


def parse_creation(text: str) -> ThresholdGraph:
    """Parse a creation-sequence string such as ``"IDDDDI"``."""
    return from_creation_sequence(text.strip())


@lru_cache(maxsize=None)
def to_labeled(g: ThresholdGraph) -> LabeledGraph:
    """Relabel in degree-descending order (ties: later-added vertex first).

    The resulting adjacency matrix is stepwise, and the numbering is fixed so
    outputs are reproducible bit for bit.
    """
    deg = g.creation_degrees()
    order = sorted(range(g.n), key=lambda i: (-deg[i], -i))
    rank = {pos: r + 1 for r, pos in enumerate(order)}
    edges = []
    for i, sym in enumerate(g.creation):
        if sym == DOMINATING:
            for j in range(i):
                edges.append((rank[i], rank[j]))
    return LabeledGraph.from_edges(g.n, edges)


def creation_from_labeled(g: LabeledGraph) -> tuple[str, ...]:
    """Recover the creation sequence by peeling dominating/isolated vertices.

    A threshold graph with at least two vertices has a dominating vertex or an
    isolated vertex but never both, so the peel order of symbols is forced.
    Raises :class:`NotThresholdError` at the first stuck step otherwise.
    """
    nbrs = g.neighbor_sets()
    deg = {v: len(nbrs[v]) for v in range(1, g.n + 1)}
    alive = set(range(1, g.n + 1))
    reversed_syms = []
    while alive:
        count = len(alive)
        if count == 1:
            reversed_syms.append(ISOLATED)
            break
        pick = None
        sym = None
        for v in sorted(alive):
            if deg[v] == count - 1:
                pick, sym = v, DOMINATING
                break
            if deg[v] == 0 and pick is None:
                pick, sym = v, ISOLATED
        if pick is None:
            remaining = tuple(sorted((deg[v] for v in alive), reverse=True))
            raise NotThresholdError(
                f"not a threshold graph: after removing {g.n - count} vertices the "
                f"remaining degrees {remaining} have no dominating or isolated vertex"
            )
        alive.remove(pick)
        for w in nbrs[pick]:
            if w in alive:
                deg[w] -= 1
        reversed_syms.append(sym)
    return tuple(reversed(reversed_syms))


def threshold_from_labeled(g: LabeledGraph) -> ThresholdGraph:
    """Canonicalize a labeled threshold graph; raises NotThresholdError."""
    return ThresholdGraph(g.n, creation_from_labeled(g))


def from_degree_sequence(degrees) -> ThresholdGraph:
    """The unique threshold graph with the given non-increasing degree sequence.

    Validates by the peel reduction: strip a dominating vertex when the top
    degree equals (remaining count - 1), else an isolated vertex when the
    bottom degree is 0.  The error message reports the first stuck step.
    """
    d = [int(x) for x in degrees]
    if not d:
        raise ValueError("degree sequence must be non-empty")
    if any(d[i] < d[i + 1] for i in range(len(d) - 1)):
        raise ValueError(f"degree sequence must be non-increasing, got {tuple(d)}")
    if d[0] > len(d) - 1 or d[-1] < 0:
        raise NotThresholdError(f"degrees out of range for {len(d)} vertices: {tuple(d)}")
    work = list(d)
    reversed_syms = []
    step = 0
    while work:
        count = len(work)
        if count == 1:
            if work[0] != 0:
                raise NotThresholdError(
                    f"reduction stuck at step {step}: single vertex left with degree {work[0]}"
                )
            reversed_syms.append(ISOLATED)
            break
        if work[0] == count - 1:
            if work[-1] == 0:
                raise NotThresholdError(
                    f"reduction stuck at step {step}: degrees {tuple(work)} need a vertex "
                    "that is both adjacent and non-adjacent to an isolated one"
                )
            work = [x - 1 for x in work[1:]]
            reversed_syms.append(DOMINATING)
        elif work[-1] == 0:
            work.pop()
            reversed_syms.append(ISOLATED)
        else:
            raise NotThresholdError(
                f"reduction stuck at step {step}: remaining degrees {tuple(work)} "
                "have no dominating or isolated vertex"
            )
        step += 1
    return ThresholdGraph(len(d), tuple(reversed(reversed_syms)))


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------

def is_threshold(g: LabeledGraph) -> bool:
    """True iff g is a threshold graph (no induced 2K_2, C_4, or P_4).

    Implemented via the peel reduction; ``is_threshold_by_forbidden_subgraphs``
    and ``is_threshold_by_ferrers`` are equivalent criteria kept as
    cross-checks.
    """
    try:
        creation_from_labeled(g)
    except NotThresholdError:
        return False
    return True


def is_threshold_by_forbidden_subgraphs(g: LabeledGraph) -> bool:
    """Quartic scan for an induced 2K_2, C_4, or P_4."""
    nbrs = g.neighbor_sets()
    for quad in combinations(range(1, g.n + 1), 4):
        sub = []
        for u, v in combinations(quad, 2):
            if v in nbrs[u]:
                sub.append((u, v))
        e = len(sub)
        if e not in (2, 3, 4):
            continue
        deg = {v: 0 for v in quad}
        for u, v in sub:
            deg[u] += 1
            deg[v] += 1
        profile = tuple(sorted(deg.values()))
        if (e, profile) in ((2, (1, 1, 1, 1)), (3, (1, 1, 2, 2)), (4, (2, 2, 2, 2))):
            return False
    return True


def is_threshold_by_ferrers(g: LabeledGraph) -> bool:
    """True iff the Ferrers matrix of the degree sequence is symmetric."""
    f = ferrers_matrix(g)
    n = g.n
    return all(f[i][j] == f[j][i] for i in range(n) for j in range(i + 1, n))


def is_stepwise(g: LabeledGraph) -> bool:
    """Check the stepwise property of g's adjacency in its given labeling.

    a_hk = 1 with h > k must force a_ij = 1 for all j < i <= h, j <= k; the
    local form (left and upper neighbors of every 1-entry are 1) is
    equivalent.
    """
    rows = g.bitrows()
    for h in range(2, g.n + 1):
        for k in range(1, h):
            if not rows[h] >> k & 1:
                continue
            if h - 1 > k and not rows[h - 1] >> k & 1:
                return False
            if k >= 2 and not rows[h] >> (k - 1) & 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Split parameters and named families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitParams:
    """The (k, a) and (kbar, abar) decompositions of an (n, m) pair.

    k is the largest integer with m >= sum_{i=1..k} (n-i), a the remainder;
    kbar is the largest integer with m-n+1 >= sum_{i=1..kbar-1} i, abar the
    remainder.
    """

    n: int
    m: int
    k: int
    a: int
    kbar: int
    abar: int


def _check_size(n: int, m: int) -> None:
    if n < 1:
        raise ValueError("need n >= 1")
    if not (n - 1 <= m <= n * (n - 1) // 2):
        raise ValueError(f"m={m} out of range [{n - 1}, {n * (n - 1) // 2}] for n={n}")


def split_params(n: int, m: int) -> SplitParams:
    _check_size(n, m)
    k = 0
    used = 0
    while k < n - 1 and m >= used + (n - (k + 1)):
        k += 1
        used += n - k
    a = m - used
    rest = m - n + 1
    kbar = 1
    usedb = 0
    while rest >= usedb + kbar:
        usedb += kbar
        kbar += 1
    abar = rest - usedb
    return SplitParams(n, m, k, a, kbar, abar)


def quasi_star(n: int, m: int) -> ThresholdGraph:
    """S(n,m): a k-clique joined to a star K_{1,a} plus isolated vertices."""
    sp = split_params(n, m)
    k, a = sp.k, sp.a
    tail = n - a - k - 1
    if a > 0:
        seq = (ISOLATED,) * a + (DOMINATING,) + (ISOLATED,) * tail + (DOMINATING,) * k
    else:
        seq = (ISOLATED,) * (n - k) + (DOMINATING,) * k
    g = ThresholdGraph(n, seq)
    assert g.m == m
    return g


def l_graph(n: int, m: int) -> ThresholdGraph:
    """L(n,m): one universal vertex over a clique-plus-pendant arrangement."""
    sp = split_params(n, m)
    if n == 1:
        return ThresholdGraph(1, (ISOLATED,))
    kb, ab = sp.kbar, sp.abar
    if ab == 0:
        seq = (ISOLATED,) + (DOMINATING,) * (kb - 1) + (ISOLATED,) * (n - kb - 1) + (DOMINATING,)
    else:
        seq = (
            (ISOLATED,)
            + (DOMINATING,) * (kb - ab - 1)
            + (ISOLATED,)
            + (DOMINATING,) * ab
            + (ISOLATED,) * (n - kb - 2)
            + (DOMINATING,)
        )
    g = ThresholdGraph(n, seq)
    assert g.m == m
    return g


def tilde_s(n: int, m: int) -> ThresholdGraph:
    """S~(n,m) = K_k v (K_3 u (n-k-3) K_1), where m = k*n - k(k+1)/2 + 3.

    Defined only when such an integer k >= 0 with n-k-3 >= 0 exists; raises
    ValueError otherwise.  Connected iff k >= 1.
    """
    if n < 3:
        raise ValueError(f"tilde-S requires n >= 3, got n={n}")
    for k in range(0, n - 2):
        mk = k * n - k * (k + 1) // 2 + 3
        if mk == m:
            seq = (ISOLATED, DOMINATING, DOMINATING) + (ISOLATED,) * (n - k - 3) + (DOMINATING,) * k
            g = ThresholdGraph(n, seq)
            assert g.m == m
            return g
        if mk > m:
            break
    raise ValueError(f"tilde-S is undefined for n={n}, m={m}: m != k*n - k(k+1)/2 + 3 for any k")


# ---------------------------------------------------------------------------
# Ferrers matrix, join and union
# ---------------------------------------------------------------------------

def ferrers_matrix(g: LabeledGraph) -> list[list[str]]:
    """n x n Ferrers matrix of the non-increasing degree sequence of g.

    Diagonal entries are PLUS; row i carries d_i FILLED entries left-justified
    over the off-diagonal positions; the matrix is symmetric iff g is a
    threshold graph.
    """
    n = g.n
    dseq = sorted(g.degrees(), reverse=True)
    mat = [[EMPTY] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = PLUS
        filled = 0
        for c in range(n):
            if c == i:
                continue
            if filled == dseq[i]:
                break
            mat[i][c] = FILLED
            filled += 1
    return mat


def graph_union(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Disjoint union; vertices of g2 are shifted by g1.n."""
    shift = g1.n
    edges = list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges]
    return LabeledGraph.from_edges(g1.n + g2.n, edges)


def graph_join(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Join: disjoint union plus all edges between the two sides."""
    shift = g1.n
    edges = list(graph_union(g1, g2).edges)
    for u in range(1, g1.n + 1):
        for v in range(1, g2.n + 1):
            edges.append((u, v + shift))
    return LabeledGraph.from_edges(g1.n + g2.n, edges)


def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, [])


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, combinations(range(1, n + 1), 2))


# ---------------------------------------------------------------------------
# Edge-list text format: first line "n m", then one "u v" per line, u < v.
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> LabeledGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"edge-list header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise ValueError(f"edge lines must have u < v, got {ln!r}")
        edges.append((u, v))
    g = LabeledGraph.from_edges(n, edges)
    if g.m != m:
        raise ValueError(f"header claims m={m} but {g.m} distinct edges were given")
    return g


def format_edge_list(g: LabeledGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines)
