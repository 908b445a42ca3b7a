"""
Multigraphs, ranked sets and the graphic rank function.

A Multigraph keeps loops and parallel edges exactly as given; the order of its edge
list is the edge ordering used by the activities engine. A RankedSet is a ground set
{0..m-1} with an explicit rank table indexed by subset bitmask.
"""

import random
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

import config
from utils.logger import logger

Edge = Tuple[int, int]


class GroundSetTooLargeError(ValueError):
    pass


class LoopContractionError(ValueError):
    pass


class RankedSetValidationError(ValueError):
    def __init__(self, result: 'ValidationResult'):
        self.result = result
        super().__init__(result.message)


class EdgeKind(Enum):
    LOOP = 'loop'
    BRIDGE = 'bridge'
    ORDINARY = 'ordinary'


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        for idx, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {idx} = ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, 'edges', edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Multigraph':
        """Convert a networkx (Multi)Graph; vertices are numbered in node iteration order."""
        index = {node: i for i, node in enumerate(graph.nodes)}
        edges = [(index[u], index[v]) for u, v in graph.edges()]
        return cls(len(index), tuple(edges))

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class RankedSet:
    m: int
    r_total: int
    ranks: Tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if self.m < 0:
            raise ValueError(f"ground-set size must be nonnegative, got {self.m}")
        if len(ranks) != 1 << self.m:
            raise ValueError(f"rank table has {len(ranks)} entries, expected 2^{self.m} = {1 << self.m}")
        object.__setattr__(self, 'ranks', ranks)

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def rank(self, mask: int) -> int:
        return self.ranks[mask]


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    subset: Optional[int] = None
    rank: Optional[int] = None
    bound: Optional[str] = None
    message: str = 'ok'


def subset_members(mask: int) -> List[int]:
    """Element indices of a subset bitmask, ascending."""
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _as_indices(g: Multigraph, subset: Optional[Iterable[int]]) -> Iterable[int]:
    if subset is None:
        return range(g.m)
    return subset


# --- Components and graphic rank ---

def component_labels(g: Multigraph, subset: Optional[Iterable[int]] = None) -> List[int]:
    """Union-find root of every vertex in the spanning subgraph (V, subset)."""
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for idx in _as_indices(g, subset):
        u, v = g.edges[idx]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return [find(v) for v in range(g.n)]


def component_count(g: Multigraph, subset: Optional[Iterable[int]] = None) -> int:
    """Number of connected components of (V, subset), isolated vertices included."""
    return len(set(component_labels(g, subset)))


def graphic_rank(g: Multigraph, subset: Optional[Iterable[int]] = None) -> int:
    return g.n - component_count(g, subset)


def require_table_size(m: int) -> None:
    """Refuse explicit 2^m tables above the configured limit."""
    if m > config.SUBSET_TABLE_LIMIT:
        raise GroundSetTooLargeError(
            f"ground set too large for explicit table: {m} > {config.SUBSET_TABLE_LIMIT}")


def ranked_set_of_graph(g: Multigraph) -> RankedSet:
    """Cycle-matroid rank table of g over all 2^e(G) edge subsets."""
    require_table_size(g.m)
    ranks = [graphic_rank(g, subset_members(mask)) for mask in range(1 << g.m)]
    return RankedSet(g.m, ranks[-1], tuple(ranks))


# --- Ranked sets ---

def validate_ranked_set(rs: RankedSet) -> ValidationResult:
    """
    Check 0 <= r(S) <= min(r(E), |S|) for every subset and r(E) = r_total.

    Returns the first violation in ascending bitmask order.
    """
    if rs.r_total < 0:
        return ValidationResult(False, rs.full_mask, rs.r_total, 'r(E) >= 0',
                                f"r_total = {rs.r_total} is negative")
    for mask, rank in enumerate(rs.ranks):
        size = bin(mask).count('1')
        if rank < 0:
            return ValidationResult(False, mask, rank, 'r(S) >= 0',
                                    f"r({subset_members(mask)}) = {rank} < 0")
        if rank > size:
            return ValidationResult(False, mask, rank, '|S|',
                                    f"r({subset_members(mask)}) = {rank} > |S| = {size}")
        if rank > rs.r_total:
            return ValidationResult(False, mask, rank, 'r(E)',
                                    f"r({subset_members(mask)}) = {rank} > r(E) = {rs.r_total}")
    if rs.ranks[rs.full_mask] != rs.r_total:
        return ValidationResult(False, rs.full_mask, rs.ranks[rs.full_mask], 'r(E) = r_total',
                                f"r(E) = {rs.ranks[rs.full_mask]} but r_total = {rs.r_total}")
    return ValidationResult(True)


def require_valid(rs: RankedSet) -> RankedSet:
    result = validate_ranked_set(rs)
    if not result.valid:
        raise RankedSetValidationError(result)
    return rs


def uniform_matroid(r: int, m: int) -> RankedSet:
    """U(r, m): every subset has rank min(|S|, r)."""
    if r < 0 or r > m:
        raise ValueError(f"uniform matroid needs 0 <= r <= m, got r={r}, m={m}")
    require_table_size(m)
    ranks = tuple(min(bin(mask).count('1'), r) for mask in range(1 << m))
    return RankedSet(m, r, ranks)


def random_ranked_set(m: int, r_total: int, seed: int) -> RankedSet:
    """
    Ranked set whose nonempty proper subsets get independent uniform ranks in
    [0, min(r_total, |S|)]. Monotonicity and submodularity are not enforced.
    """
    if r_total < 0 or r_total > m:
        raise ValueError(f"random ranked set needs 0 <= r <= m, got r={r_total}, m={m}")
    require_table_size(m)
    rng = random.Random(seed)
    full = (1 << m) - 1
    ranks = [0] * (1 << m)
    for mask in range(1, full):
        ranks[mask] = rng.randint(0, min(r_total, bin(mask).count('1')))
    ranks[full] = r_total
    return RankedSet(m, r_total, tuple(ranks))


# --- Minors ---

def delete_edge(g: Multigraph, e: int) -> Multigraph:
    return Multigraph(g.n, g.edges[:e] + g.edges[e + 1:])


def contract_edge(g: Multigraph, e: int) -> Multigraph:
    """
    Merge the endpoints of edge e. Copies of e become loops and the vertex
    labels are renumbered to 0..n-2.
    """
    u, v = g.edges[e]
    if u == v:
        raise LoopContractionError(f"cannot contract loop {e} at vertex {u}")
    keep, gone = min(u, v), max(u, v)

    def relabel(w: int) -> int:
        if w == gone:
            return keep
        return w - 1 if w > gone else w

    edges = tuple((relabel(a), relabel(b)) for idx, (a, b) in enumerate(g.edges) if idx != e)
    return Multigraph(g.n - 1, edges)


def classify_edge(g: Multigraph, e: int) -> EdgeKind:
    u, v = g.edges[e]
    if u == v:
        return EdgeKind.LOOP
    others = [idx for idx in range(g.m) if idx != e]
    if component_count(g, others) > component_count(g):
        return EdgeKind.BRIDGE
    return EdgeKind.ORDINARY


def find_blocks(g: Multigraph) -> List[Multigraph]:
    """
    2-connected blocks of the loopless part of g.

    Each block keeps its edges in original order and has its vertices renumbered
    in order of first appearance. Isolated vertices and loops belong to no block.
    """
    copies: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for idx, (u, v) in enumerate(g.edges):
        if u != v:
            copies[(min(u, v), max(u, v))].append(idx)
    simple = nx.Graph()
    simple.add_nodes_from(range(g.n))
    simple.add_edges_from(copies)

    blocks = []
    for component in nx.biconnected_component_edges(simple):
        block = sorted(idx for u, v in component for idx in copies[(min(u, v), max(u, v))])
        blocks.append(block)

    result = []
    for block in sorted(blocks):
        index: Dict[int, int] = {}
        edges = []
        for idx in block:
            u, v = g.edges[idx]
            for w in (u, v):
                index.setdefault(w, len(index))
            edges.append((index[u], index[v]))
        result.append(Multigraph(len(index), tuple(edges)))
    return result


# --- Graph families ---

def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_networkx(nx.complete_graph(n))


def cycle_graph(n: int) -> Multigraph:
    """C_n; C_1 is a single loop and C_2 a pair of parallel edges."""
    if n < 1:
        raise ValueError(f"cycle needs at least one vertex, got {n}")
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def theta_graph(a: int, b: int, c: int) -> Multigraph:
    """Two poles 0 and 1 joined by internally disjoint paths of a, b and c edges."""
    if min(a, b, c) < 1:
        raise ValueError(f"theta path lengths must be positive, got {(a, b, c)}")
    n = 2
    edges: List[Edge] = []
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Multigraph(n, tuple(edges))


def petersen_graph() -> Multigraph:
    return Multigraph.from_networkx(nx.petersen_graph())


def random_multigraph(n: int, m: int, seed: int, loops: bool = True) -> Multigraph:
    """m uniformly random edges on n vertices; parallel edges always allowed."""
    if n < 1 or m < 0:
        raise ValueError(f"random multigraph needs n >= 1 and m >= 0, got n={n}, m={m}")
    if not loops and n < 2 and m > 0:
        raise ValueError("a loopless multigraph with edges needs at least 2 vertices")
    rng = random.Random(seed)
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            continue
        edges.append((u, v))
    logger.debug(f"Generated random multigraph n={n} m={m} seed={seed}")
    return Multigraph(n, tuple(edges))
