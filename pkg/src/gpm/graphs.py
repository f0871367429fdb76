"""Labeled directed graphs and the structural primitives everything else uses.

Patterns and data graphs share one representation: nodes are dense integers
``0..n-1``, every node carries exactly one label token, and the edge set holds
ordered pairs (self-loops allowed, duplicates rejected). :class:`Subgraph` is a
read-only view over a host graph that keeps the original node ids, so the
matching engines run unchanged on whole graphs, connected components, balls
and match graphs. Both classes expose the same small accessor surface
(``node_ids, has_node, label, succ, pred, succ_set, pred_set, und, by_label,
edge_set``); functions below accept either.

All structures are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InputError

INF = float("inf")


def _check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise InputError(f"label must be a non-empty string, got {label!r}")
    if any(c.isspace() for c in label):
        raise InputError(f"label may not contain whitespace: {label!r}")
    return sys.intern(label)


class LabeledDigraph:
    """Finite directed graph with a total node-labeling function."""

    __slots__ = (
        "n_nodes", "labels", "edge_set", "_out", "_in",
        "_out_sets", "_in_sets", "_und", "_by_label",
    )

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]]):
        self.labels: tuple[str, ...] = tuple(_check_label(l) for l in labels)
        n = len(self.labels)
        self.n_nodes = n
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) references an invalid node id")
            if (u, v) in seen:
                raise InputError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            out[u].append(v)
            inn[v].append(u)
        self.edge_set: frozenset[tuple[int, int]] = frozenset(seen)
        self._out = tuple(tuple(sorted(a)) for a in out)
        self._in = tuple(tuple(sorted(a)) for a in inn)
        self._out_sets = tuple(frozenset(a) for a in self._out)
        self._in_sets = tuple(frozenset(a) for a in self._in)
        self._und = tuple(
            tuple(sorted(self._out_sets[v] | self._in_sets[v])) for v in range(n)
        )
        by_label: dict[str, list[int]] = {}
        for v, lab in enumerate(self.labels):
            by_label.setdefault(lab, []).append(v)
        self._by_label = {lab: tuple(vs) for lab, vs in by_label.items()}

    # -- shared graph-view accessors -------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edge_set)

    def node_ids(self) -> range:
        return range(self.n_nodes)

    def has_node(self, v: int) -> bool:
        return 0 <= v < self.n_nodes

    def label(self, v: int) -> str:
        return self.labels[v]

    def succ(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def pred(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def succ_set(self, v: int) -> frozenset[int]:
        return self._out_sets[v]

    def pred_set(self, v: int) -> frozenset[int]:
        return self._in_sets[v]

    def und(self, v: int) -> tuple[int, ...]:
        """Neighbors of v with edge direction ignored."""
        return self._und[v]

    def by_label(self) -> dict[str, tuple[int, ...]]:
        return self._by_label

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return self.labels == other.labels and self.edge_set == other.edge_set

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LabeledDigraph(n={self.n_nodes}, m={self.n_edges})"


class Subgraph:
    """Subgraph of a host graph: a node subset plus an edge subset over it.

    Node ids and labels are the host's; the edge set need not be induced
    (match graphs keep only witnessed edges).
    """

    __slots__ = (
        "nodes", "node_set", "edge_set", "_labels",
        "_out", "_in", "_out_sets", "_in_sets", "_und", "_by_label",
    )

    def __init__(
        self,
        labels: Sequence[str],
        nodes: Iterable[int],
        edges: Iterable[tuple[int, int]],
    ):
        self.nodes: tuple[int, ...] = tuple(sorted(set(nodes)))
        self.node_set: frozenset[int] = frozenset(self.nodes)
        self._labels = labels
        out: dict[int, list[int]] = {v: [] for v in self.nodes}
        inn: dict[int, list[int]] = {v: [] for v in self.nodes}
        eset: set[tuple[int, int]] = set()
        for u, v in edges:
            if u not in out or v not in out:
                raise InputError(f"subgraph edge ({u}, {v}) leaves the node set")
            if (u, v) in eset:
                continue
            eset.add((u, v))
            out[u].append(v)
            inn[v].append(u)
        self.edge_set = frozenset(eset)
        self._out = {v: tuple(sorted(a)) for v, a in out.items()}
        self._in = {v: tuple(sorted(a)) for v, a in inn.items()}
        self._out_sets = {v: frozenset(a) for v, a in self._out.items()}
        self._in_sets = {v: frozenset(a) for v, a in self._in.items()}
        self._und = {
            v: tuple(sorted(self._out_sets[v] | self._in_sets[v])) for v in self.nodes
        }
        by_label: dict[str, list[int]] = {}
        for v in self.nodes:
            by_label.setdefault(labels[v], []).append(v)
        self._by_label = {lab: tuple(vs) for lab, vs in by_label.items()}

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edge_set)

    def node_ids(self) -> tuple[int, ...]:
        return self.nodes

    def has_node(self, v: int) -> bool:
        return v in self.node_set

    def label(self, v: int) -> str:
        return self._labels[v]

    def succ(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def pred(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def succ_set(self, v: int) -> frozenset[int]:
        return self._out_sets[v]

    def pred_set(self, v: int) -> frozenset[int]:
        return self._in_sets[v]

    def und(self, v: int) -> tuple[int, ...]:
        return self._und[v]

    def by_label(self) -> dict[str, tuple[int, ...]]:
        return self._by_label

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edge_set == other.edge_set
            and all(self.label(v) == other.label(v) for v in self.nodes)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Subgraph(n={self.n_nodes}, m={self.n_edges})"


GraphLike = Union[LabeledDigraph, Subgraph]


@dataclass(frozen=True)
class Pattern:
    """A connected query graph with its precomputed undirected diameter."""

    graph: LabeledDigraph
    diameter: int

    def __post_init__(self) -> None:
        d = diameter(self.graph)
        if d != self.diameter:
            raise InputError(
                f"pattern diameter {self.diameter} does not match graph ({d})"
            )

    @classmethod
    def of(cls, graph: LabeledDigraph) -> "Pattern":
        return cls(graph, diameter(graph))


@dataclass(frozen=True)
class Ball:
    """Induced subgraph within undirected radius of a center node.

    ``border`` holds the nodes at distance exactly ``radius``; the subgraph
    carries every host edge over the ball's node set.
    """

    center: int
    radius: int
    subgraph: Subgraph
    border: frozenset[int]


def _require_node(g: GraphLike, v: int) -> None:
    if not g.has_node(v):
        raise InputError(f"invalid node id {v}")


def undirected_distance(g: GraphLike, u: int, v: int) -> int | float:
    """Shortest-path length treating every edge as bidirectional.

    Returns ``INF`` when u and v are in different components.
    """
    _require_node(g, u)
    _require_node(g, v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for y in g.und(x):
            if y not in dist:
                if y == v:
                    return dx + 1
                dist[y] = dx + 1
                queue.append(y)
    return INF


def _bfs_dists(g: GraphLike, src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for y in g.und(x):
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def connected_components(g: GraphLike) -> list[list[int]]:
    """Maximal undirected-connected node sets, each sorted, ordered by minimum."""
    seen: set[int] = set()
    comps: list[list[int]] = []
    for v in g.node_ids():
        if v in seen:
            continue
        comp = sorted(_bfs_dists(g, v))
        seen.update(comp)
        comps.append(comp)
    return comps


def induced(g: GraphLike, nodes: Iterable[int]) -> Subgraph:
    """Induced subgraph on a node subset: all host edges over it."""
    nset = set(nodes)
    labels = g.labels if isinstance(g, LabeledDigraph) else g._labels
    edges = [(u, v) for u in nset for v in g.succ(u) if v in nset]
    return Subgraph(labels, nset, edges)


def component_of(g: GraphLike, v: int) -> Subgraph:
    """Induced subgraph on the connected component containing v."""
    _require_node(g, v)
    return induced(g, _bfs_dists(g, v))


def diameter(g: GraphLike) -> int:
    """Longest shortest undirected distance over all node pairs.

    Defined only for connected graphs; a single node has diameter 0.
    """
    ids = list(g.node_ids())
    if not ids:
        raise InputError("graph not connected: diameter of an empty graph is undefined")
    best = 0
    first = _bfs_dists(g, ids[0])
    if len(first) != len(ids):
        raise InputError("graph not connected")
    best = max(first.values())
    for v in ids[1:]:
        ecc = max(_bfs_dists(g, v).values())
        if ecc > best:
            best = ecc
    return best


def build_ball(g: GraphLike, center: int, radius: int) -> Ball:
    """BFS ball: all nodes within undirected distance ``radius`` of center,
    induced edges, border marked during the same traversal."""
    _require_node(g, center)
    if radius < 0:
        raise InputError(f"radius must be non-negative, got {radius}")
    dist = {center: 0}
    queue = deque([center])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if dx == radius:
            continue
        for y in g.und(x):
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    border = frozenset(v for v, d in dist.items() if d == radius)
    return Ball(center, radius, induced(g, dist), border)


def has_directed_cycle(g: GraphLike) -> bool:
    """True iff some directed cycle exists (a self-loop counts)."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[int, int] = {v: WHITE for v in g.node_ids()}
    for start in g.node_ids():
        if color[start] != WHITE:
            continue
        stack: list[tuple[int, Iterable[int]]] = [(start, iter(g.succ(start)))]
        color[start] = GRAY
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == GRAY or w == v:
                    return True
                if color[w] == WHITE:
                    color[w] = GRAY
                    stack.append((w, iter(g.succ(w))))
                    advanced = True
                    break
            if not advanced:
                color[v] = BLACK
                stack.pop()
    return False


def has_undirected_cycle(g: GraphLike) -> bool:
    """True iff a closed walk exists over >= 2 distinct directed edges.

    An antiparallel pair u->v, v->u counts as a length-2 cycle; a single edge
    (including a self-loop) does not.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    pairs: set[tuple[int, int]] = set()
    for u, v in g.edge_set:
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in pairs:
            return True  # antiparallel twin of an edge already seen
        pairs.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False
