"""Fixpoint engines for graph simulation and dual simulation.

Both engines compute the unique maximum match relation (or the empty relation
when some pattern node ends up with no candidates). Refinement is event
driven: removing a candidate enqueues the pair, and only data nodes adjacent
to the removed candidate are re-checked. `naive_dual_sim` keeps the plain
rescan-until-stable formulation as an independent oracle for tests.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .graphs import GraphLike, LabeledDigraph, Pattern, Subgraph


@dataclass(frozen=True)
class MatchRelation:
    """Mapping from each pattern node to its set of candidate data nodes.

    A relation is either total (every pattern node has a non-empty set) or
    empty; anything in between collapses to empty at construction.
    """

    pattern: Pattern
    sim: Mapping[int, frozenset[int]] = field(default_factory=dict)

    @classmethod
    def of(cls, pattern: Pattern, sim: Mapping[int, frozenset[int]]) -> "MatchRelation":
        qnodes = range(pattern.graph.n_nodes)
        if all(sim.get(u) for u in qnodes):
            return cls(pattern, {u: frozenset(sim[u]) for u in qnodes})
        return cls(pattern, {})

    @property
    def is_empty(self) -> bool:
        return not self.sim

    def node_set(self) -> frozenset[int]:
        """All data nodes appearing in the relation."""
        out: set[int] = set()
        for s in self.sim.values():
            out.update(s)
        return frozenset(out)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, s in self.sim.items() for v in s)

    def text(self) -> str:
        """CLI form: one ``m <pattern-node> <graph-node>`` line per pair."""
        return "".join(f"m {u} {v}\n" for u, v in self.pairs())


def _init_sim(
    q: Pattern, g: GraphLike, rng: random.Random | None
) -> tuple[list[int], dict[int, set[int]] | None]:
    """Label-based candidate sets; None when some pattern node has none."""
    qg = q.graph
    by_label = g.by_label()
    qnodes = list(qg.node_ids())
    if rng is not None:
        rng.shuffle(qnodes)
    sim: dict[int, set[int]] = {}
    for u in qnodes:
        cands = list(by_label.get(qg.label(u), ()))
        if not cands:
            return qnodes, None
        if rng is not None:
            rng.shuffle(cands)
        sim[u] = set(cands)
    return qnodes, sim


def propagate_removals(
    qg: LabeledDigraph,
    g: GraphLike,
    sim: dict[int, set[int]],
    pending: deque[tuple[int, int]],
    dual: bool = True,
) -> bool:
    """Drain removal events to the fixpoint; False when some set empties.

    An event (u, v) means v was already discarded from sim[u]; data nodes
    adjacent to v are the only ones whose witness sets shrank.
    """
    while pending:
        u, v = pending.popleft()
        for u0 in qg.pred(u):
            su0 = sim[u0]
            for w in g.pred(v):
                if w in su0 and sim[u].isdisjoint(g.succ_set(w)):
                    su0.discard(w)
                    pending.append((u0, w))
            if not su0:
                return False
        if dual:
            for u2 in qg.succ(u):
                su2 = sim[u2]
                for w in g.succ(v):
                    if w in su2 and sim[u].isdisjoint(g.pred_set(w)):
                        su2.discard(w)
                        pending.append((u2, w))
                if not su2:
                    return False
    return True


def _max_sim(
    q: Pattern, g: GraphLike, dual: bool, order_seed: int | None
) -> MatchRelation:
    qg = q.graph
    rng = random.Random(order_seed) if order_seed is not None else None
    qnodes, sim = _init_sim(q, g, rng)
    if sim is None:
        return MatchRelation(q, {})
    pending: deque[tuple[int, int]] = deque()
    for u in qnodes:
        qsucc = qg.succ(u)
        qpred = qg.pred(u) if dual else ()
        bad = [
            v
            for v in sim[u]
            if any(sim[u2].isdisjoint(g.succ_set(v)) for u2 in qsucc)
            or any(sim[u0].isdisjoint(g.pred_set(v)) for u0 in qpred)
        ]
        for v in bad:
            sim[u].discard(v)
            pending.append((u, v))
        if not sim[u]:
            return MatchRelation(q, {})
    if not propagate_removals(qg, g, sim, pending, dual=dual):
        return MatchRelation(q, {})
    return MatchRelation(q, {u: frozenset(s) for u, s in sim.items()})


def graph_sim(q: Pattern, g: GraphLike, order_seed: int | None = None) -> MatchRelation:
    """Maximum relation preserving labels and the child condition."""
    return _max_sim(q, g, dual=False, order_seed=order_seed)


def dual_sim(q: Pattern, g: GraphLike, order_seed: int | None = None) -> MatchRelation:
    """Maximum relation preserving labels, child and parent conditions.

    The result is order independent; `order_seed` only shuffles internal
    iteration order (used by the order-independence tests).
    """
    return _max_sim(q, g, dual=True, order_seed=order_seed)


def naive_dual_sim(q: Pattern, g: GraphLike) -> MatchRelation:
    """Restart-from-scratch fixpoint that re-checks every pair each round.

    Same contract as `dual_sim`; deliberately simple, kept as a test oracle.
    """
    qg = q.graph
    _, sim = _init_sim(q, g, None)
    if sim is None:
        return MatchRelation(q, {})
    changed = True
    while changed:
        changed = False
        for u in qg.node_ids():
            for v in list(sim[u]):
                if any(sim[u2].isdisjoint(g.succ_set(v)) for u2 in qg.succ(u)) or any(
                    sim[u0].isdisjoint(g.pred_set(v)) for u0 in qg.pred(u)
                ):
                    sim[u].remove(v)
                    changed = True
            if not sim[u]:
                return MatchRelation(q, {})
    return MatchRelation(q, {u: frozenset(s) for u, s in sim.items()})


def match_graph(q: Pattern, g: GraphLike, rel: MatchRelation) -> Subgraph:
    """Subgraph induced by a relation: its data nodes plus every data edge
    witnessed by some pattern edge under the relation."""
    labels = g.labels if isinstance(g, LabeledDigraph) else g._labels
    if rel.is_empty:
        return Subgraph(labels, (), ())
    edges: set[tuple[int, int]] = set()
    for u, u2 in q.graph.edge_set:
        targets = rel.sim[u2]
        for v in rel.sim[u]:
            for w in g.succ(v):
                if w in targets:
                    edges.add((v, w))
    return Subgraph(labels, rel.node_set(), edges)
