"""Query minimization, dual-simulation filtering and connectivity pruning,
composed into the optimized matcher `match_plus`.

Minimization merges pattern nodes that dual-simulate each other when the
pattern is matched against itself; the minimized pattern is evaluated with
the *original* pattern's diameter as ball radius, which keeps the result set
identical. Filtering computes one global dual-simulation relation, projects
it onto each ball, and repairs only matches invalidated from the ball border
inward. Pruning discards candidates that cannot reach the ball center inside
the candidate-induced subgraph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import InternalInvariantError
from .graphs import Ball, GraphLike, LabeledDigraph, Pattern, build_ball
from .simulation import MatchRelation, dual_sim, propagate_removals
from .strong import (
    MatchResult,
    PerfectSubgraph,
    assemble_result,
    extract_max_pg,
    run_over_centers,
)


@dataclass(frozen=True)
class MinimizedPattern:
    """Minimized pattern plus the class map back to the original nodes.

    ``effective_radius`` is the *original* pattern's diameter; balls must keep
    that radius for the minimized pattern to return identical results.
    """

    pattern: Pattern
    class_of: Mapping[int, int]
    effective_radius: int


def min_q(q: Pattern) -> MinimizedPattern:
    """Minimum equivalent pattern: one node per self-dual-simulation
    equivalence class, an edge between classes iff some member pair has one."""
    qg = q.graph
    self_rel = dual_sim(q, qg)
    if self_rel.is_empty:
        raise InternalInvariantError("pattern does not dual-simulate itself")
    sim = self_rel.sim
    rep: dict[int, int] = {}
    for u in qg.node_ids():
        rep[u] = min(v for v in sim[u] if u in sim[v])
    reps = sorted(set(rep.values()))
    class_ids = {r: i for i, r in enumerate(reps)}
    class_of = {u: class_ids[rep[u]] for u in qg.node_ids()}
    labels = [qg.label(r) for r in reps]
    for u, r in rep.items():
        if qg.label(u) != qg.label(r):
            raise InternalInvariantError("equivalence class mixes labels")
    edges = {(class_of[u], class_of[v]) for u, v in qg.edge_set}
    pattern = Pattern.of(LabeledDigraph(labels, edges))
    return MinimizedPattern(pattern, class_of, q.diameter)


def _center_component(ball: Ball, cand: set[int]) -> set[int]:
    """Candidates undirected-reachable from the center inside the
    candidate-induced part of the ball."""
    if ball.center not in cand:
        return set()
    sub = ball.subgraph
    comp = {ball.center}
    queue = deque([ball.center])
    while queue:
        x = queue.popleft()
        for y in sub.und(x):
            if y in cand and y not in comp:
                comp.add(y)
                queue.append(y)
    return comp


def connectivity_prune(q: Pattern, ball: Ball, s_w: MatchRelation) -> MatchRelation:
    """Drop candidates outside the center's candidate-induced component.

    Never changes the ball's final perfect subgraph: witnesses are adjacent
    to the pairs they support, so whole components go or stay together.
    """
    if s_w.is_empty:
        return s_w
    comp = _center_component(ball, set(s_w.node_set()))
    return MatchRelation.of(q, {u: s & comp for u, s in s_w.sim.items()})


def dual_filter(
    q: Pattern,
    s_global: MatchRelation,
    ball: Ball,
    prune: bool = False,
) -> PerfectSubgraph | None:
    """Project the whole-graph dual-sim relation onto one ball and repair it.

    Only border-node matches can lose a witness to the ball cut, so the
    invalidation queue is seeded from the border and drained transitively;
    the outcome equals running dual simulation from scratch on the ball.
    """
    if s_global.is_empty:
        return None
    sub = ball.subgraph
    bset = sub.node_set
    sim: dict[int, set[int]] = {}
    for u, s in s_global.sim.items():
        kept = set(s & bset)
        if not kept:
            return None
        sim[u] = kept
    if not any(ball.center in s for s in sim.values()):
        return None

    if prune:
        cand: set[int] = set()
        for s in sim.values():
            cand.update(s)
        comp = _center_component(ball, cand)
        for u in sim:
            sim[u] &= comp
            if not sim[u]:
                return None

    qg = q.graph
    border = ball.border
    pending: deque[tuple[int, int]] = deque()
    for u, s in sim.items():
        qsucc = qg.succ(u)
        qpred = qg.pred(u)
        bad = [
            v
            for v in s
            if v in border
            and (
                any(sim[u1].isdisjoint(sub.succ_set(v)) for u1 in qsucc)
                or any(sim[u2].isdisjoint(sub.pred_set(v)) for u2 in qpred)
            )
        ]
        for v in bad:
            s.discard(v)
            pending.append((u, v))
        if not s:
            return None
    if not propagate_removals(qg, sub, sim, pending, dual=True):
        return None
    rel = MatchRelation.of(q, {u: frozenset(s) for u, s in sim.items()})
    return extract_max_pg(q, ball, rel)


def _lift(pg: PerfectSubgraph, q: Pattern, class_of: Mapping[int, int]) -> PerfectSubgraph:
    """Re-key a minimized-pattern relation to original pattern node ids."""
    relation = {u: pg.relation[class_of[u]] for u in q.graph.node_ids()}
    return PerfectSubgraph(pg.center, pg.subgraph, relation)


def match_plus(
    q: Pattern,
    g: GraphLike,
    radius: int | None = None,
    threads: int = 1,
) -> MatchResult:
    """Optimized matcher: minimize the pattern, dual-simulate once globally,
    skip balls whose center is unmatched, then prune + filter per ball.

    Structurally equal to `match_strong` (relations are reported in original
    pattern node ids).
    """
    mq = min_q(q)
    qm = mq.pattern
    r = mq.effective_radius if radius is None else radius
    s_global = dual_sim(qm, g)
    if s_global.is_empty:
        return MatchResult(())
    centers = sorted(s_global.node_set())

    def work(w: int) -> PerfectSubgraph | None:
        ball = build_ball(g, w, r)
        pg = dual_filter(qm, s_global, ball, prune=True)
        return None if pg is None else _lift(pg, q, mq.class_of)

    return assemble_result(run_over_centers(centers, work, threads))
