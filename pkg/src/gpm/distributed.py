"""Edge-cut partitioning and an in-process simulation of distributed strong
matching, with data-shipment accounting.

Sites are simulated actors executed round-robin inside one process. Each
site owns a node set; it knows the full adjacency of its owned nodes (local
edges plus cross-edge stubs carrying the foreign endpoint's id and label).
Every ball is evaluated at its center's owner. Cross-fragment balls are
materialized by rounds of frontier exchange: foreign node records (label +
adjacency) are shipped in per-round batches and recorded in the traffic
ledger; balls that never leave their owner's fragment ship nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError
from .graphs import Ball, LabeledDigraph, Pattern, Subgraph
from .simulation import dual_sim, graph_sim, match_graph
from .strong import MatchResult, assemble_result, extract_max_pg


@dataclass(frozen=True)
class Fragment:
    """One site's knowledge: owned nodes, their full adjacency (global ids),
    and labels for owned nodes plus foreign stub endpoints."""

    site: int
    owned: tuple[int, ...]
    labels: Mapping[int, str]
    out: Mapping[int, tuple[int, ...]]
    inn: Mapping[int, tuple[int, ...]]
    cross_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FragmentedGraph:
    k: int
    owner: tuple[int, ...]
    fragments: tuple[Fragment, ...]

    @property
    def n_nodes(self) -> int:
        return len(self.owner)


@dataclass
class TrafficLedger:
    """Per (source site, destination site) shipment counters."""

    counts: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def add(self, frm: int, to: int, nodes: int, edges: int) -> None:
        row = self.counts.setdefault((frm, to), [0, 0, 0])
        row[0] += 1
        row[1] += nodes
        row[2] += edges

    @property
    def is_empty(self) -> bool:
        return not self.counts

    @property
    def total_nodes(self) -> int:
        return sum(row[1] for row in self.counts.values())

    @property
    def total_edges(self) -> int:
        return sum(row[2] for row in self.counts.values())

    def text(self) -> str:
        lines = [
            f"traffic {frm} {to} {row[0]} {row[1]} {row[2]}"
            for (frm, to), row in sorted(self.counts.items())
        ]
        return "".join(line + "\n" for line in lines)


def partition(g: LabeledDigraph, k: int, seed: int) -> FragmentedGraph:
    """Seeded balanced ownership: shuffle node ids, deal round-robin.

    Deterministic given the seed; k=1 keeps everything on one site and
    k=|V| gives every node its own site.
    """
    n = g.n_nodes
    if not 1 <= k <= n:
        raise InputError(f"site count {k} out of range 1..{n}")
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    owner = [0] * n
    for i, v in enumerate(perm):
        owner[v] = i % k
    fragments = []
    for site in range(k):
        owned = tuple(v for v in range(n) if owner[v] == site)
        owned_set = set(owned)
        labels: dict[int, str] = {v: g.label(v) for v in owned}
        cross: list[tuple[int, int]] = []
        for v in owned:
            for w in g.succ(v):
                if w not in owned_set:
                    cross.append((v, w))
                    labels.setdefault(w, g.label(w))
            for w in g.pred(v):
                if w not in owned_set:
                    cross.append((w, v))
                    labels.setdefault(w, g.label(w))
        fragments.append(
            Fragment(
                site,
                owned,
                labels,
                {v: g.succ(v) for v in owned},
                {v: g.pred(v) for v in owned},
                tuple(sorted(set(cross))),
            )
        )
    return FragmentedGraph(k, tuple(owner), tuple(fragments))


def reassemble(f: FragmentedGraph) -> LabeledDigraph:
    """Rebuild the original graph; each edge is owned by its source's site."""
    labels = [""] * f.n_nodes
    edges: list[tuple[int, int]] = []
    for frag in f.fragments:
        for v in frag.owned:
            labels[v] = frag.labels[v]
            edges.extend((v, w) for w in frag.out[v])
    return LabeledDigraph(labels, edges)


def _materialize_ball(
    f: FragmentedGraph, center: int, radius: int, ledger: TrafficLedger
) -> tuple[Ball, bool]:
    """Build the ball at the center's owner via frontier rounds.

    Returns the ball plus whether it crossed fragments. Foreign members'
    records (label, out, in) are shipped in one batch per (round, source
    site) and recorded in the ledger; border members' records are shipped
    too, since edges between border nodes belong to the ball.
    """
    site = f.owner[center]
    frag = f.fragments[site]
    labels: dict[int, str] = {}
    out: dict[int, tuple[int, ...]] = {}
    inn: dict[int, tuple[int, ...]] = {}
    crossed = False

    dist = {center: 0}
    layer = [center]
    for t in range(radius + 1):
        foreign: dict[int, list[int]] = {}
        for v in layer:
            o = f.owner[v]
            if o == site:
                labels[v] = frag.labels[v]
                out[v] = frag.out[v]
                inn[v] = frag.inn[v]
            else:
                foreign.setdefault(o, []).append(v)
        for o in sorted(foreign):
            batch = foreign[o]
            crossed = True
            src = f.fragments[o]
            shipped_edges = 0
            for v in batch:
                labels[v] = src.labels[v]
                out[v] = src.out[v]
                inn[v] = src.inn[v]
                shipped_edges += len(src.out[v]) + len(src.inn[v])
            ledger.add(o, site, nodes=len(batch), edges=shipped_edges)
        if t == radius:
            break
        nxt = []
        for v in layer:
            for w in out[v]:
                if w not in dist:
                    dist[w] = t + 1
                    nxt.append(w)
            for w in inn[v]:
                if w not in dist:
                    dist[w] = t + 1
                    nxt.append(w)
        layer = nxt
        if not layer:
            break

    members = set(dist)
    label_list: dict[int, str] = labels
    # Subgraph wants label lookup by node id over the host alphabet; balls use
    # a dense list view over maximum id touched.
    max_id = max(members)
    dense = [""] * (max_id + 1)
    for v in members:
        dense[v] = label_list[v]
    edges = [(v, w) for v in members for w in out[v] if w in members]
    sub = Subgraph(dense, members, edges)
    border = frozenset(v for v, d in dist.items() if d == radius)
    return Ball(center, radius, sub, border), crossed


def assemble_border_balls(
    f: FragmentedGraph, radius: int
) -> tuple[dict[int, dict[int, Ball]], TrafficLedger]:
    """Materialize, per site, every owned-center ball whose radius
    neighborhood crosses fragments; fully local balls are omitted and
    ship nothing."""
    if radius < 0:
        raise InputError(f"radius must be non-negative, got {radius}")
    ledger = TrafficLedger()
    per_site: dict[int, dict[int, Ball]] = {frag.site: {} for frag in f.fragments}
    for frag in f.fragments:
        for center in frag.owned:
            ball, crossed = _materialize_ball(f, center, radius, ledger)
            if crossed:
                per_site[frag.site][center] = ball
    return per_site, ledger


def distributed_match(
    q: Pattern, f: FragmentedGraph, radius: int | None = None
) -> tuple[MatchResult, TrafficLedger]:
    """Coordinator/site protocol over simulated sites.

    The pattern is broadcast, each site runs per-ball dual simulation over
    balls centered at its owned nodes (cross-fragment balls assembled via
    frontier exchange), and the coordinator unions the partial results.
    """
    r = q.diameter if radius is None else radius
    ledger = TrafficLedger()
    partials = []
    for frag in f.fragments:  # round-robin site schedule, deterministic
        for center in frag.owned:
            ball, _ = _materialize_ball(f, center, r, ledger)
            rel = dual_sim(q, ball.subgraph)
            partials.append(extract_max_pg(q, ball, rel))
    return assemble_result(partials), ledger


@dataclass(frozen=True)
class SimShipment:
    """Lower-bound shipment for co-locating the plain-simulation match graph."""

    site: int
    nodes: int
    edges: int

    def text(self) -> str:
        return f"simship {self.site} {self.nodes} {self.edges}\n"


def sim_shipment_diagnostic(q: Pattern, f: FragmentedGraph) -> SimShipment:
    """Plain graph simulation needs its whole match graph on one site; report
    the cheapest choice of assembly site and what it would still ship."""
    g = reassemble(f)
    mg = match_graph(q, g, graph_sim(q, g))
    best_site, best_have = 0, -1
    per_site_nodes = [0] * f.k
    per_site_edges = [0] * f.k
    for v in mg.nodes:
        per_site_nodes[f.owner[v]] += 1
    for u, _ in mg.edge_set:
        per_site_edges[f.owner[u]] += 1
    for site in range(f.k):
        have = per_site_nodes[site] + per_site_edges[site]
        if have > best_have:
            best_site, best_have = site, have
    return SimShipment(
        best_site,
        mg.n_nodes - per_site_nodes[best_site],
        mg.n_edges - per_site_edges[best_site],
    )
