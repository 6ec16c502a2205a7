"""Closed-walk combinatorics behind the moment method.

(1/n) E tr W^k expands into a sum over closed walks of length k; walks group
into isomorphism classes represented by canonical walks (first-appearance
relabelings, a restricted-growth condition).  Classes split into those with
an edge traversed exactly once (expectation zero for centered entries),
double trees (each edge exactly twice, t = k/2 + 1 vertices, counted by
Catalan numbers via a height bijection with Dyck paths), and the rest
(vanishing weight in the limit).  Tree-product sums evaluate the variance
weight of a tree class exactly, including the injectivity correction.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .ensembles import EntryLaw, VarianceProfile

__all__ = [
    "CanonicalWalk",
    "WalkGraph",
    "WalkClass",
    "DyckPath",
    "Tree",
    "canonicalize",
    "enumerate_gamma",
    "enumerate_canonical_walks",
    "classify",
    "dyck_of",
    "all_dyck_paths",
    "tree_product_sum",
    "walk_expectation",
    "walk_sum_moment",
    "class_walk_sum",
]

# hard caps for the exact trace-moment oracle
ORACLE_MAX_N = 6
ORACLE_MAX_K = 8


def canonicalize(walk: Sequence[int]) -> "CanonicalWalk":
    """Relabel a closed walk by order of first appearance.

    Two walks hit the same canonical form exactly when they have the same
    equality pattern among their vertices.
    """
    walk = tuple(int(v) for v in walk)
    if len(walk) < 2:
        raise ValueError("a closed walk has at least one step")
    if walk[0] != walk[-1]:
        raise ValueError("closed walk must end where it starts")
    labels: dict[int, int] = {}
    out = []
    for v in walk:
        if v not in labels:
            labels[v] = len(labels) + 1
        out.append(labels[v])
    return CanonicalWalk(tuple(out))


@dataclass(frozen=True)
class CanonicalWalk:
    """Closed walk on labels {1..t} with the restricted-growth property.

    sequence[0] == sequence[-1] == 1 and each new label exceeds the previous
    maximum by exactly 1, so the walk is the lexicographically least member
    of its isomorphism class.
    """

    sequence: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = tuple(int(v) for v in self.sequence)
        object.__setattr__(self, "sequence", seq)
        if len(seq) < 2:
            raise ValueError("a closed walk has at least one step")
        if seq[0] != 1 or seq[-1] != 1:
            raise ValueError("canonical walk must start and end at 1")
        mx = 1
        for v in seq:
            if v < 1 or v > mx + 1:
                raise ValueError("labels must satisfy the restricted-growth condition")
            mx = max(mx, v)

    @property
    def k(self) -> int:
        return len(self.sequence) - 1

    @property
    def t(self) -> int:
        return max(self.sequence)

    def graph(self) -> "WalkGraph":
        return WalkGraph.from_walk(self.sequence)


@dataclass(frozen=True)
class WalkGraph:
    """Undirected multigraph skeleton of a walk: edges with multiplicities."""

    vertices: tuple[int, ...]
    multiplicities: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_walk(cls, seq: Sequence[int]) -> "WalkGraph":
        mult = Counter()
        for a, b in zip(seq, seq[1:]):
            mult[(min(a, b), max(a, b))] += 1
        return cls(tuple(sorted(set(seq))), tuple(sorted(mult.items())))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for e, _ in self.multiplicities)

    def is_tree(self) -> bool:
        edges = self.edges
        if any(a == b for a, b in edges):
            return False
        if len(edges) != len(self.vertices) - 1:
            return False
        return len(self._distances_from(self.vertices[0])) == len(self.vertices)

    def _distances_from(self, root: int) -> dict[int, int]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            if a != b:
                adj[a].append(b)
                adj[b].append(a)
        dist = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distances_from(self, root: int) -> dict[int, int]:
        if root not in self.vertices:
            raise ValueError("root is not a vertex of the walk graph")
        return self._distances_from(root)


class WalkClass(Enum):
    SINGLE_EDGE = "single_edge"
    DOUBLE_TREE = "double_tree"
    MULTI_OTHER = "multi_other"


def classify(walk: CanonicalWalk) -> WalkClass:
    """Sort a canonical walk into the three expectation regimes.

    single_edge: some edge traversed exactly once (zero expectation for
    centered entries).  double_tree: every edge exactly twice and t = k/2+1,
    in which case the skeleton is verified to be a tree with each edge
    crossed once in each direction.  multi_other: everything else.
    """
    g = walk.graph()
    counts = [m for _, m in g.multiplicities]
    if any(m == 1 for m in counts):
        return WalkClass.SINGLE_EDGE
    if walk.k % 2 == 0 and walk.t == walk.k // 2 + 1:
        # the pigeonhole forces a double tree here; verify rather than trust
        if not (all(m == 2 for m in counts) and g.is_tree()):
            raise AssertionError("t = k/2 + 1 walk without a double-tree skeleton")
        directed = Counter(zip(walk.sequence, walk.sequence[1:]))
        for (a, b), _ in g.multiplicities:
            if directed[(a, b)] != 1 or directed[(b, a)] != 1:
                raise AssertionError("double tree must cross each edge once per direction")
        return WalkClass.DOUBLE_TREE
    return WalkClass.MULTI_OTHER


def enumerate_gamma(k: int, t: int) -> list[CanonicalWalk]:
    """All canonical closed walks of length k on exactly t labels, lex order.

    Empty whenever t > k + 1 (a walk of length k meets at most k+1 vertices).
    """
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    if t > k + 1:
        return []
    out: list[CanonicalWalk] = []
    seq = [1] * (k + 1)

    def rec(s: int, mx: int) -> None:
        if s == k:
            if mx == t:
                out.append(CanonicalWalk(tuple(seq)))
            return
        for v in range(1, min(mx + 1, t) + 1):
            nmx = max(mx, v)
            if nmx + (k - 1 - s) < t:
                continue  # not enough steps left to introduce t labels
            seq[s] = v
            rec(s + 1, nmx)
        seq[s] = 1

    if k == 1:
        return [CanonicalWalk((1, 1))] if t == 1 else []
    rec(1, 1)
    return out


def enumerate_canonical_walks(k: int) -> list[CanonicalWalk]:
    """All canonical closed walks of length k, grouped by t, lex within each t."""
    walks: list[CanonicalWalk] = []
    for t in range(1, k + 2):
        walks.extend(enumerate_gamma(k, t))
    return walks


@dataclass(frozen=True)
class DyckPath:
    """Nonnegative +-1 height sequence from 0 back to 0."""

    heights: tuple[int, ...]

    def __post_init__(self) -> None:
        h = tuple(int(x) for x in self.heights)
        object.__setattr__(self, "heights", h)
        if len(h) < 1 or h[0] != 0 or h[-1] != 0:
            raise ValueError("Dyck path must start and end at height 0")
        if any(x < 0 for x in h):
            raise ValueError("Dyck path heights must be nonnegative")
        if any(abs(b - a) != 1 for a, b in zip(h, h[1:])):
            raise ValueError("Dyck path steps must be +-1")

    @property
    def length(self) -> int:
        return len(self.heights) - 1


def dyck_of(walk: CanonicalWalk) -> DyckPath:
    """Height profile of a double-tree walk: distance from the root vertex 1.

    This map is the Catalan bijection: distinct double trees give distinct
    Dyck paths of the same length, and every Dyck path arises.
    """
    if classify(walk) is not WalkClass.DOUBLE_TREE:
        raise ValueError("dyck_of requires a double-tree walk")
    dist = walk.graph().distances_from(1)
    return DyckPath(tuple(dist[v] for v in walk.sequence))


def all_dyck_paths(k: int) -> list[DyckPath]:
    """Every Dyck path of length k (empty for odd k)."""
    if k < 0:
        raise ValueError("length must be nonnegative")
    out: list[DyckPath] = []
    if k % 2 == 1:
        return out
    heights = [0] * (k + 1)

    def rec(s: int) -> None:
        if s == k:
            if heights[k] == 0:
                out.append(DyckPath(tuple(heights)))
            return
        h = heights[s]
        for step in (+1, -1):
            nh = h + step
            if nh < 0 or nh > k - s - 1:
                continue  # cannot return to 0 in the remaining steps
            heights[s + 1] = nh
            rec(s + 1)

    rec(0)
    return out


@dataclass(frozen=True)
class Tree:
    """Undirected tree given by vertices and edges; no loops, connected."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        verts = tuple(sorted(set(int(v) for v in self.vertices)))
        edges = tuple(
            (min(int(a), int(b)), max(int(a), int(b))) for a, b in self.edges
        )
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        if not verts:
            raise ValueError("tree needs at least one vertex")
        if any(a == b for a, b in edges):
            raise ValueError("tree has a loop")
        for a, b in edges:
            if a not in verts or b not in verts:
                raise ValueError("edge endpoint outside the vertex set")
        if len(edges) != len(verts) - 1:
            raise ValueError("not a tree: |E| must equal |V| - 1")
        # connectivity
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != len(verts):
            raise ValueError("not a tree: graph is disconnected")

    @classmethod
    def from_walk(cls, walk: CanonicalWalk) -> "Tree":
        g = walk.graph()
        return cls(g.vertices, g.edges)

    @property
    def m(self) -> int:
        return len(self.edges)


def _set_partitions(items: Sequence[int]):
    """All partitions of items into nonempty blocks (restricted-growth order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _partition_moebius(part: list[list[int]]) -> int:
    mu = 1
    for block in part:
        b = len(block)
        mu *= (-1) ** (b - 1) * math.factorial(b - 1)
    return mu


def _hom_sum(
    block_edges: list[tuple[int, int]],
    n_blocks: int,
    p: np.ndarray,
    clamp: dict[int, int],
) -> float:
    """Sum over all (not necessarily injective) block labelings of the edge product.

    Factor tables over the label alphabet are eliminated greedily, smallest
    combined scope first; quotients of small trees keep the scopes tiny.
    """
    n = p.shape[0]
    factors: list[tuple[tuple[int, ...], np.ndarray]] = []
    for a, b in block_edges:
        if a == b:
            table = np.diag(p).copy()
            if a in clamp:
                factors.append(((), np.array(table[clamp[a]])))
            else:
                factors.append(((a,), table))
        else:
            table = p
            if a in clamp and b in clamp:
                factors.append(((), np.array(table[clamp[a], clamp[b]])))
            elif a in clamp:
                factors.append(((b,), table[clamp[a], :].copy()))
            elif b in clamp:
                factors.append(((a,), table[:, clamp[b]].copy()))
            else:
                factors.append(((a, b), table.copy()))
    free = [v for v in range(n_blocks) if v not in clamp]
    touched = {v for vars_, _ in factors for v in vars_}
    result = 1.0
    # blocks untouched by any edge contribute a free choice of label
    result *= float(n) ** sum(1 for v in free if v not in touched)

    def combine(f1, f2):
        v1, t1 = f1
        v2, t2 = f2
        vs = tuple(sorted(set(v1) | set(v2)))
        def expand(vars_, tab):
            shape = [n if v in vars_ else 1 for v in vs]
            order = [vars_.index(v) for v in vs if v in vars_]
            return tab.transpose(order).reshape(shape)
        return vs, expand(v1, t1) * expand(v2, t2)

    for v in sorted((v for v in free if v in touched),
                    key=lambda v: sum(len(vars_) for vars_, _ in factors if v in vars_)):
        group = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        acc = group[0]
        for g in group[1:]:
            acc = combine(acc, g)
        vs, tab = acc
        axis = vs.index(v)
        summed = tab.sum(axis=axis)
        factors.append((tuple(x for x in vs if x != v), summed))
    for vs, tab in factors:
        while tab.ndim:
            tab = tab.sum(axis=0)
        result *= float(tab)
    return result


def _falling(n: int, r: int) -> float:
    out = 1.0
    for j in range(r):
        out *= n - j
    return out


def tree_product_sum(
    tree: Tree,
    profile: VarianceProfile,
    n: int,
    pin: tuple[int, int] | None = None,
) -> float:
    """Sum over injections F: V(tree) -> {0..n-1} of prod_edges sigma^2_{F(u)F(v)}.

    ``pin=(vertex, index)`` restricts to injections with F(vertex) = index.
    Uniform profiles use the falling-factorial closed form; otherwise the
    injectivity constraint is unwound by Moebius inversion on the partition
    lattice of the vertex set, with each quotient evaluated by factor-table
    elimination.  Partitions that merge adjacent vertices create loops whose
    weight is the diagonal of the profile.
    """
    t = len(tree.vertices)
    if n < 1:
        raise ValueError("n must be positive")
    if t > n:
        return 0.0
    if pin is not None:
        pv, pi = pin
        if pv not in tree.vertices:
            raise ValueError("pinned vertex is not in the tree")
        if not 0 <= pi < n:
            raise ValueError("pinned index out of range")
    if profile.kind == "uniform":
        weight = profile.v ** tree.m
        if pin is None:
            return weight * _falling(n, t)
        return weight * _falling(n - 1, t - 1)
    p = profile.matrix(n)
    index_of = {v: i for i, v in enumerate(tree.vertices)}
    edges = [(index_of[a], index_of[b]) for a, b in tree.edges]
    total = 0.0
    for part in _set_partitions(range(t)):
        block_of = {}
        for bi, block in enumerate(part):
            for v in block:
                block_of[v] = bi
        clamp = {}
        if pin is not None:
            clamp[block_of[index_of[pin[0]]]] = pin[1]
        qedges = [(block_of[a], block_of[b]) for a, b in edges]
        total += _partition_moebius(part) * _hom_sum(qedges, len(part), p, clamp)
    return total


def _effective_diag_law(law: EntryLaw) -> EntryLaw:
    # matches the sampling convention: complex laws get a real gaussian diagonal
    return EntryLaw.gaussian_real() if law.is_complex else law


def _pair_counts(walk: Sequence[int]) -> tuple[Counter, Counter]:
    fwd: Counter = Counter()
    bwd: Counter = Counter()
    for a, b in zip(walk, walk[1:]):
        if a <= b:
            fwd[(a, b)] += 1
        else:
            bwd[(b, a)] += 1
    return fwd, bwd


def _expectation_from_counts(
    fwd: Counter, bwd: Counter, law: EntryLaw, dlaw: EntryLaw, sig: np.ndarray
) -> float:
    out = 1.0
    for a, b in set(fwd) | set(bwd):
        f, r = fwd[(a, b)], bwd[(a, b)]
        use = dlaw if a == b else law
        mom = use.pair_moment(f, r) if use.is_complex else use.moment(f + r)
        if mom == 0.0:
            return 0.0
        # symmetric laws leave only even total powers, where sigma^2 is exact
        if (f + r) % 2 == 0:
            out *= mom * sig[a, b] ** ((f + r) // 2)
        else:
            out *= mom * math.sqrt(sig[a, b]) ** (f + r)
    return out


def walk_expectation(
    walk: Sequence[int],
    law: EntryLaw,
    profile: VarianceProfile,
    n: int,
) -> float:
    """E[prod_s w_{i_s i_{s+1}}] for a concrete closed walk on indices 0..n-1.

    Entries are independent across unordered index pairs; per pair the
    expectation is the law's (direction-aware, for complex laws) mixed
    moment times the matching power of the profile scale.  The product of
    forward/backward pair moments is real for every supported law.
    """
    walk = tuple(int(v) for v in walk)
    if walk[0] != walk[-1]:
        raise ValueError("closed walk must end where it starts")
    if any(v < 0 or v >= n for v in walk):
        raise ValueError("walk labels must lie in 0..n-1")
    fwd, bwd = _pair_counts(walk)
    return _expectation_from_counts(
        fwd, bwd, law, _effective_diag_law(law), profile.matrix(n)
    )


def walk_sum_moment(law: EntryLaw, profile: VarianceProfile, n: int, k: int) -> float:
    """Exact (1/n) E tr W^k by summing walk expectations over all index tuples.

    Limited to n <= 6 and k <= 8 (the sum has n^k terms); the law must have
    finite moments to order k.
    """
    if n > ORACLE_MAX_N or k > ORACLE_MAX_K:
        raise ValueError("oracle scale exceeded")
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if not law.has_moments_to(k):
        raise ValueError("oracle requires finite moments")
    sig = profile.matrix(n)
    dlaw = _effective_diag_law(law)
    total = 0.0
    for tup in itertools.product(range(n), repeat=k):
        fwd, bwd = _pair_counts(tup + (tup[0],))
        total += _expectation_from_counts(fwd, bwd, law, dlaw, sig)
    return total / n


def class_walk_sum(
    walk: CanonicalWalk,
    law: EntryLaw,
    profile: VarianceProfile,
    n: int,
) -> float:
    """Sum of E[prod w] over all walks in {0..n-1} isomorphic to the class.

    Members of the class are exactly the injective relabelings of the
    canonical walk, so this is the walk-class weight in the trace expansion.
    """
    sig = profile.matrix(n)
    dlaw = _effective_diag_law(law)
    total = 0.0
    for image in itertools.permutations(range(n), walk.t):
        relabeled = tuple(image[c - 1] for c in walk.sequence)
        fwd, bwd = _pair_counts(relabeled)
        total += _expectation_from_counts(fwd, bwd, law, dlaw, sig)
    return total
