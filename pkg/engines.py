#!/usr/bin/env python3
"""
Tutte polynomial engines.

Three independent computations of T(x, y):
- subset expansion over an explicit rank table (definition-level oracle)
- memoized deletion-contraction keyed by canonical certificates (performance engine)
- spanning-tree activities (coefficient-level oracle)
plus the matrix-tree spanning-tree count used to cross-check T(1, 1).
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Mapping, NewType, Optional, Sequence, Tuple, Union

import sympy

import config
from bipoly import ONE, X, Y, ZERO, BiPoly, geometric_x, geometric_y, x_minus_one_power, y_minus_one_power
from structures import (
    EdgeKind,
    Multigraph,
    RankedSet,
    classify_edge,
    component_count,
    component_labels,
    contract_edge,
    delete_edge,
    find_blocks,
    ranked_set_of_graph,
    require_valid,
)
from utils.logger import logger

CanonicalCertificate = NewType('CanonicalCertificate', bytes)

ENGINES = ('subset', 'delcon', 'activities')
PIVOT_RULES = ('max-multiplicity', 'first-edge')


class DisconnectedGraphError(ValueError):
    pass


# --- Subset expansion ---

def tutte_subset_expansion(rs: RankedSet) -> BiPoly:
    """
    T_M(x,y) = sum over S of (x-1)^(r(E)-r(S)) (y-1)^(|S|-r(S)).

    Subsets are grouped by (corank, nullity) before expanding, so the cost is
    one pass over the table plus one product per distinct exponent pair.
    """
    require_valid(rs)
    counts: Counter = Counter()
    for mask, rank in enumerate(rs.ranks):
        counts[(rs.r_total - rank, bin(mask).count('1') - rank)] += 1
    result = ZERO
    for (corank, nullity), count in sorted(counts.items()):
        result = result + x_minus_one_power(corank) * y_minus_one_power(nullity) * count
    return result


# --- Canonical certificates ---

def _rank_signatures(signatures: Sequence) -> List[int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def _refine(colors: List[int], adj: List[Dict[int, int]]) -> List[int]:
    """Equitable refinement: split cells by the multiset of (neighbour colour, multiplicity)."""
    classes = len(set(colors))
    while True:
        signatures = [
            (colors[v], tuple(sorted((colors[w], mult) for w, mult in adj[v].items())))
            for v in range(len(colors))
        ]
        refined = _rank_signatures(signatures)
        refined_classes = len(set(refined))
        if refined_classes == classes:
            return refined
        colors, classes = refined, refined_classes


def _individualize(colors: List[int], vertex: int) -> List[int]:
    return _rank_signatures([(c, 0 if v == vertex else 1) for v, c in enumerate(colors)])


def _are_twins(u: int, w: int, adj: List[Dict[int, int]], loops: List[int]) -> bool:
    """True when swapping u and w is an automorphism."""
    if loops[u] != loops[w]:
        return False
    return ({x: c for x, c in adj[u].items() if x != w}
            == {x: c for x, c in adj[w].items() if x != u})


def _twin_representatives(cell: List[int], adj: List[Dict[int, int]], loops: List[int]) -> List[int]:
    reps: List[int] = []
    for v in cell:
        if not any(_are_twins(v, rep, adj, loops) for rep in reps):
            reps.append(v)
    return reps


def canonical_form(g: Multigraph) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """
    Smallest sorted edge multiset over the relabelings reached by
    individualization-refinement, starting from the (degree, loop count) partition.

    Twins in the target cell lead to the same leaves, so only one of each is
    individualized. Edgeless and complete graphs resolve along a single branch.
    """
    adj: List[Dict[int, int]] = [dict() for _ in range(g.n)]
    loops = [0] * g.n
    for u, v in g.edges:
        if u == v:
            loops[u] += 1
        else:
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
    initial = _rank_signatures([(sum(adj[v].values()), loops[v]) for v in range(g.n)])

    best: List[Optional[Tuple]] = [None]

    def search(colors: List[int]) -> None:
        sizes = Counter(colors)
        if len(sizes) == g.n:
            form = tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in g.edges))
            if best[0] is None or form < best[0]:
                best[0] = form
            return
        target = min(c for c, size in sizes.items() if size > 1)
        cell = [v for v in range(g.n) if colors[v] == target]
        for v in _twin_representatives(cell, adj, loops):
            search(_refine(_individualize(colors, v), adj))

    search(_refine(initial, adj))
    return g.n, best[0]


def canonical_certificate(g: Multigraph) -> CanonicalCertificate:
    n, edges = canonical_form(g)
    body = ','.join(f"{u}-{v}" for u, v in edges)
    return CanonicalCertificate(f"{n}:{body}".encode('ascii'))


# --- Deletion-contraction ---

def _contract_class(g: Multigraph, members: FrozenSet[int]) -> Multigraph:
    """Contract one edge of a parallel class and drop the loops its copies become."""
    first = min(members)
    contracted = contract_edge(g, first)
    # contract_edge drops index `first`; later indices shift down by one
    shifted = {idx - 1 if idx > first else idx for idx in members if idx != first}
    return Multigraph(contracted.n, tuple(e for idx, e in enumerate(contracted.edges) if idx not in shifted))


@dataclass(frozen=True)
class SeriesPath:
    """A maximal path whose internal vertices all have degree 2."""
    edges: FrozenSet[int]
    internal: FrozenSet[int]
    ends: Tuple[int, int]


def _series_paths(block: Multigraph) -> List[SeriesPath]:
    """Series paths of a 2-connected loopless block that is not a cycle."""
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(block.n)]
    for idx, (u, v) in enumerate(block.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    seen: set = set()
    paths = []
    for start in range(block.n):
        if len(adj[start]) != 2 or start in seen:
            continue
        seen.add(start)
        edges, ends = [], []
        for w, idx in adj[start]:
            edges.append(idx)
            while len(adj[w]) == 2:
                seen.add(w)
                w, idx = next((x, i) for x, i in adj[w] if i != idx)
                edges.append(idx)
            ends.append(w)
        internal = frozenset(v for idx in edges for v in block.edges[idx]) - set(ends)
        paths.append(SeriesPath(frozenset(edges), internal, (min(ends), max(ends))))
    return paths


def _without_series(g: Multigraph, path: SeriesPath, merge: bool) -> Multigraph:
    """Remove a series path and its internal vertices; with merge, also identify its ends."""
    keep, gone = path.ends
    dropped = path.internal | ({gone} if merge else set())
    label: Dict[int, int] = {}
    for w in range(g.n):
        if w not in dropped:
            label[w] = len(label)
    n = len(label)
    if merge:
        label[gone] = label[keep]
    edges = tuple((label[a], label[b]) for idx, (a, b) in enumerate(g.edges) if idx not in path.edges)
    return Multigraph(n, edges)


class DeletionContraction:
    """
    Memoized deletion-contraction.

    The cache maps canonical certificates to polynomials and lives for one
    top-level compute() call.
    """

    def __init__(self, pivot_rule: Optional[str] = None, use_cache: Optional[bool] = None):
        self.pivot_rule = pivot_rule or config.DEFAULT_PIVOT_RULE
        if self.pivot_rule not in PIVOT_RULES:
            raise ValueError(f"unknown pivot rule '{self.pivot_rule}', expected one of {PIVOT_RULES}")
        self.use_cache = config.USE_CANONICAL_CACHE if use_cache is None else use_cache
        self._cache: Dict[bytes, BiPoly] = {}
        self.stats = {'calls': 0, 'cache_hits': 0, 'cache_misses': 0}

    def compute(self, g: Multigraph) -> BiPoly:
        self._cache = {}
        self.stats = {'calls': 0, 'cache_hits': 0, 'cache_misses': 0}
        if self.pivot_rule == 'first-edge':
            result = self._first_edge(g)
        else:
            result = self._reduce(g)
        logger.debug(f"Deletion-contraction ({self.pivot_rule}) on n={g.n} m={g.m}: {self.stats}")
        return result

    def _lookup(self, g: Multigraph) -> Tuple[Optional[bytes], Optional[BiPoly]]:
        if not self.use_cache:
            return None, None
        key = canonical_certificate(g)
        cached = self._cache.get(key)
        if cached is not None:
            self.stats['cache_hits'] += 1
        else:
            self.stats['cache_misses'] += 1
        return key, cached

    def _store(self, key: Optional[bytes], value: BiPoly) -> BiPoly:
        if key is not None:
            self._cache[key] = value
        return value

    # Literal recursion on the first edge of the list
    def _first_edge(self, g: Multigraph) -> BiPoly:
        self.stats['calls'] += 1
        factor = ONE
        # leading loops and bridges only contribute a factor
        while g.m:
            kind = classify_edge(g, 0)
            if kind is EdgeKind.LOOP:
                factor, g = factor * Y, delete_edge(g, 0)
            elif kind is EdgeKind.BRIDGE:
                factor, g = factor * X, contract_edge(g, 0)
            else:
                break
        if g.m == 0:
            return factor
        key, cached = self._lookup(g)
        if cached is None:
            cached = self._store(key, self._first_edge(delete_edge(g, 0)) + self._first_edge(contract_edge(g, 0)))
        return factor * cached

    # Loops factor out as y, blocks multiply, parallel classes and series paths branch once
    def _reduce(self, g: Multigraph) -> BiPoly:
        self.stats['calls'] += 1
        loops = sum(1 for u, v in g.edges if u == v)
        result = Y ** loops
        for block in find_blocks(g):
            result = result * self._block(block)
        return result

    def _block(self, block: Multigraph) -> BiPoly:
        classes: Dict[Tuple[int, int], List[int]] = defaultdict(list)
        for idx, (u, v) in enumerate(block.edges):
            classes[(min(u, v), max(u, v))].append(idx)
        if len(classes) == 1:
            # k parallel edges: U(1, k)
            return X + Y * geometric_y(block.m - 1)
        degrees = Counter(v for edge in block.edges for v in edge)
        if all(d == 2 for d in degrees.values()):
            # cycle of length k: U(k-1, k)
            return X * geometric_x(block.m - 1) + Y

        key, cached = self._lookup(block)
        if cached is not None:
            return cached

        # largest class; ties go to the class whose first edge comes first
        pivot = max(classes.values(), key=lambda members: (len(members), -members[0]))
        series = max(_series_paths(block), key=lambda path: (len(path.edges), -min(path.edges)), default=None)
        if series is not None and len(series.edges) > len(pivot):
            result = (geometric_x(len(series.edges)) * self._reduce(_without_series(block, series, merge=False))
                      + self._reduce(_without_series(block, series, merge=True)))
        else:
            members = frozenset(pivot)
            deleted = Multigraph(block.n, tuple(e for idx, e in enumerate(block.edges) if idx not in members))
            contracted = _contract_class(block, members)
            result = self._reduce(deleted) + geometric_y(len(members)) * self._reduce(contracted)
        return self._store(key, result)


def tutte_deletion_contraction(g: Multigraph, pivot_rule: Optional[str] = None,
                               use_cache: Optional[bool] = None) -> BiPoly:
    return DeletionContraction(pivot_rule, use_cache).compute(g)


# --- Spanning-tree activities ---

@dataclass(frozen=True)
class ActivityTable:
    counts: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_bipoly(self) -> BiPoly:
        return BiPoly(self.counts)


def spanning_trees(g: Multigraph) -> Iterator[FrozenSet[int]]:
    """Spanning trees of a connected multigraph as edge-index sets, by include/exclude backtracking."""
    target = g.n - 1 if g.n else 0
    chosen: List[int] = []

    def extend(idx: int, labels: List[int]) -> Iterator[FrozenSet[int]]:
        if len(chosen) == target:
            yield frozenset(chosen)
            return
        if g.m - idx < target - len(chosen):
            return
        u, v = g.edges[idx]
        if labels[u] != labels[v]:
            old, new = labels[u], labels[v]
            merged = [new if label == old else label for label in labels]
            chosen.append(idx)
            yield from extend(idx + 1, merged)
            chosen.pop()
        # skipping idx is only useful while the rest can still span
        if component_count(g, chosen + list(range(idx + 1, g.m))) == 1:
            yield from extend(idx + 1, labels)

    yield from extend(0, list(range(g.n)))


def _tree_path(g: Multigraph, tree: FrozenSet[int], source: int, target: int) -> List[int]:
    """Edge indices on the unique tree path between two vertices."""
    adj: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for idx in tree:
        u, v = g.edges[idx]
        adj[u].append((v, idx))
        adj[v].append((u, idx))
    parent_edge: Dict[int, Tuple[int, int]] = {source: (-1, -1)}
    frontier = [source]
    while frontier and target not in parent_edge:
        nxt = []
        for u in frontier:
            for v, idx in adj[u]:
                if v not in parent_edge:
                    parent_edge[v] = (u, idx)
                    nxt.append(v)
        frontier = nxt
    path = []
    node = target
    while node != source:
        node, idx = parent_edge[node]
        path.append(idx)
    return path


def tree_activities(g: Multigraph, tree: FrozenSet[int]) -> Tuple[int, int]:
    """(internal, external) activity of a spanning tree under edge-list order."""
    internal = 0
    for e in tree:
        labels = component_labels(g, [idx for idx in tree if idx != e])
        cut = [f for f in range(g.m) if f not in tree and labels[g.edges[f][0]] != labels[g.edges[f][1]]]
        if all(f > e for f in cut):
            internal += 1
    external = 0
    for f in range(g.m):
        if f in tree:
            continue
        u, v = g.edges[f]
        if u == v or all(e > f for e in _tree_path(g, tree, u, v)):
            external += 1
    return internal, external


def tutte_activities(g: Multigraph) -> ActivityTable:
    """Count spanning trees by (internal, external) activity; g must be connected."""
    if component_count(g) > 1:
        raise DisconnectedGraphError(
            f"activities need a connected graph, got {component_count(g)} components")
    counts: Counter = Counter()
    for tree in spanning_trees(g):
        counts[tree_activities(g, tree)] += 1
    return ActivityTable(dict(counts))


# --- Matrix-tree oracle ---

def spanning_tree_count(g: Multigraph) -> int:
    """
    Number of maximal spanning forests: product over components of the
    reduced Laplacian determinant. Loops are ignored, parallel edges counted.
    """
    labels = component_labels(g)
    groups: Dict[int, List[int]] = defaultdict(list)
    for v, label in enumerate(labels):
        groups[label].append(v)
    total = 1
    for vertices in groups.values():
        if len(vertices) == 1:
            continue
        index = {v: i for i, v in enumerate(vertices)}
        laplacian = sympy.zeros(len(vertices), len(vertices))
        for u, v in g.edges:
            if u == v or u not in index:
                continue
            a, b = index[u], index[v]
            laplacian[a, a] += 1
            laplacian[b, b] += 1
            laplacian[a, b] -= 1
            laplacian[b, a] -= 1
        total *= int(laplacian[1:, 1:].det(method='bareiss'))
    return total


# --- Dispatch ---

def tutte_polynomial(source: Union[Multigraph, RankedSet], engine: Optional[str] = None) -> BiPoly:
    """Run the requested engine; delcon is the default for graphs, subset for rank tables."""
    if isinstance(source, RankedSet):
        engine = engine or 'subset'
        if engine != 'subset':
            raise ValueError(f"engine '{engine}' needs a graph input; rank tables support 'subset' only")
        return tutte_subset_expansion(source)
    engine = engine or 'delcon'
    if engine == 'subset':
        return tutte_subset_expansion(ranked_set_of_graph(source))
    if engine == 'delcon':
        return tutte_deletion_contraction(source)
    if engine == 'activities':
        return tutte_activities(source).to_bipoly()
    raise ValueError(f"unknown engine '{engine}', expected one of {ENGINES}")
