"""Ball-by-ball strong matching: per-ball dual simulation, perfect-subgraph
extraction, and assembly of the result set.

For every center the engine builds the radius-d_Q ball, computes the ball's
maximum dual-simulation relation, and keeps the connected component of the
match graph that contains the center. Results are deduplicated exactly and
pruned to the containment-maximal subgraphs; each survivor remembers the
smallest center that produced it, so output order is deterministic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from collections import deque

from .errors import InternalInvariantError
from .graphs import Ball, GraphLike, LabeledDigraph, Pattern, Subgraph, build_ball
from .simulation import MatchRelation, dual_sim, match_graph


@dataclass(frozen=True)
class PerfectSubgraph:
    """A connected match graph extracted from one ball.

    ``relation`` is the ball's maximum dual-sim relation restricted to the
    subgraph; the subgraph is exactly the match graph of that restriction.
    """

    center: int
    subgraph: Subgraph
    relation: Mapping[int, frozenset[int]]

    def key(self) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
        return (self.subgraph.nodes, tuple(sorted(self.subgraph.edge_set)))

    def relation_pairs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, s in self.relation.items() for v in s)


@dataclass(frozen=True)
class MatchResult:
    """The deduplicated, containment-maximal perfect subgraphs, by center."""

    theta: tuple[PerfectSubgraph, ...]

    @property
    def is_empty(self) -> bool:
        return not self.theta

    def node_set(self) -> frozenset[int]:
        out: set[int] = set()
        for pg in self.theta:
            out.update(pg.subgraph.nodes)
        return frozenset(out)


def matched_nodes(result: MatchResult) -> frozenset[int]:
    """Union of node sets across the result's subgraphs."""
    return result.node_set()


def extract_max_pg(
    q: Pattern, ball: Ball, s_w: MatchRelation
) -> PerfectSubgraph | None:
    """Connected component of the ball's match graph containing the center,
    or None when the center matches nothing."""
    if s_w.is_empty:
        return None
    center = ball.center
    if not any(center in s for s in s_w.sim.values()):
        return None
    mg = match_graph(q, ball.subgraph, s_w)
    comp = {center}
    queue = deque([center])
    while queue:
        x = queue.popleft()
        for y in mg.und(x):
            if y not in comp:
                comp.add(y)
                queue.append(y)
    edges = [(u, v) for u in comp for v in mg.succ(u)]
    sub = Subgraph(ball.subgraph._labels, comp, edges)
    relation: dict[int, frozenset[int]] = {}
    for u, s in s_w.sim.items():
        kept = s & comp
        if not kept:
            raise InternalInvariantError(
                f"pattern node {u} has no match inside the center's component"
            )
        relation[u] = kept
    return PerfectSubgraph(center, sub, relation)


def assemble_result(pgs: Iterable[PerfectSubgraph | None]) -> MatchResult:
    """Dedupe by exact (node set, edge set), keep containment-maximal
    subgraphs, order by ascending producing center."""
    by_key: dict[tuple, PerfectSubgraph] = {}
    for pg in pgs:
        if pg is None:
            continue
        k = pg.key()
        cur = by_key.get(k)
        if cur is None or pg.center < cur.center:
            by_key[k] = pg
    distinct = sorted(
        by_key.values(),
        key=lambda pg: (-pg.subgraph.n_nodes, -pg.subgraph.n_edges, pg.center),
    )
    kept: list[PerfectSubgraph] = []
    for pg in distinct:
        nodes, edges = pg.subgraph.node_set, pg.subgraph.edge_set
        contained = any(
            nodes <= big.subgraph.node_set and edges <= big.subgraph.edge_set
            for big in kept
        )
        if not contained:
            kept.append(pg)
    kept.sort(key=lambda pg: pg.center)
    return MatchResult(tuple(kept))


def run_over_centers(
    centers: Sequence[int],
    work: Callable[[int], PerfectSubgraph | None],
    threads: int = 0,
) -> list[PerfectSubgraph | None]:
    """Apply per-ball work across centers; thread count never changes output."""
    if threads == 1 or len(centers) <= 1:
        return [work(w) for w in centers]
    workers = threads if threads > 0 else None  # None lets the pool pick
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, centers))


def match_strong(
    q: Pattern,
    g: GraphLike,
    radius: int | None = None,
    threads: int = 1,
) -> MatchResult:
    """All maximum perfect subgraphs of g w.r.t. q.

    Balls are enumerated over every node in ascending id order with radius
    d_Q (overridable for experiments); each ball is built, processed and
    discarded before the next one.
    """
    r = q.diameter if radius is None else radius

    def work(w: int) -> PerfectSubgraph | None:
        ball = build_ball(g, w, r)
        return extract_max_pg(q, ball, dual_sim(q, ball.subgraph))

    return assemble_result(run_over_centers(list(g.node_ids()), work, threads))


def _subgraph_lines(sub: Subgraph) -> list[str]:
    lines = [f"n {sub.n_nodes}"]
    lines.extend(f"v {v} {sub.label(v)}" for v in sub.nodes)
    lines.extend(f"e {u} {v}" for u, v in sorted(sub.edge_set))
    return lines


def result_text(result: MatchResult) -> str:
    """One block per perfect subgraph: ball header, subgraph records with the
    host graph's node ids, then the relation's m-lines; blocks by center."""
    lines: list[str] = []
    for pg in result.theta:
        lines.append(f"ball {pg.center}")
        lines.extend(_subgraph_lines(pg.subgraph))
        lines.extend(f"m {u} {v}" for u, v in pg.relation_pairs())
    return "".join(line + "\n" for line in lines)
