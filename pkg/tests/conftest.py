"""Shared fixtures: handcrafted matching scenarios plus seeded random
instance helpers.

Each scenario builder returns (pattern-or-graph, name->id map) so tests can
assert against readable node names. The scenarios were designed so that the
four matching notions disagree in controlled ways: isomorphism is strictest,
plain simulation loosest, and dual/strong simulation sit in between.
"""

from __future__ import annotations

import random

import pytest

from gpm import GeneratorParams, LabeledDigraph, Pattern, generate
from gpm.graphs import connected_components, induced


def graph_of(named_nodes: list[tuple[str, str]], named_edges: list[tuple[str, str]]):
    """Build a graph from (name, label) nodes and (src-name, dst-name) edges."""
    ids = {name: i for i, (name, _) in enumerate(named_nodes)}
    labels = [label for _, label in named_nodes]
    edges = [(ids[a], ids[b]) for a, b in named_edges]
    return LabeledDigraph(labels, edges), ids


# --- recruiting scenario -------------------------------------------------
# Query: a biologist recommended by an HR person, a software engineer and a
# data-mining person; the engineer is recommended by the HR person; an AI
# person and a DM person recommend each other. Only one biologist in the
# network has all three recommenders, and it lives in its own component.

def recruiting_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of(
        [("HR", "HR"), ("SE", "SE"), ("Bio", "Bio"), ("DM", "DM"), ("AI", "AI")],
        [
            ("HR", "SE"), ("HR", "Bio"), ("SE", "Bio"), ("DM", "Bio"),
            ("DM", "AI"), ("AI", "DM"),
        ],
    )
    return Pattern.of(g), ids


def recruiting_graph() -> tuple[LabeledDigraph, dict[str, int]]:
    return graph_of(
        [
            ("HR1", "HR"), ("SE1", "SE"), ("Bio1", "Bio"), ("Bio2", "Bio"),
            ("Bio3", "Bio"), ("DM1", "DM"), ("DM2", "DM"), ("DM3", "DM"),
            ("AI1", "AI"), ("AI2", "AI"), ("AI3", "AI"),
            ("HR2", "HR"), ("SE2", "SE"), ("Bio4", "Bio"),
            ("DMp1", "DM"), ("DMp2", "DM"), ("AIp1", "AI"), ("AIp2", "AI"),
        ],
        [
            # big component: a tree of recommenders plus a long AI/DM cycle
            ("HR1", "SE1"), ("HR1", "Bio1"), ("SE1", "Bio2"),
            ("DM1", "Bio1"), ("DM2", "Bio2"), ("DM3", "Bio3"),
            ("AI1", "DM1"), ("DM1", "AI2"), ("AI2", "DM2"),
            ("DM2", "AI3"), ("AI3", "DM3"), ("DM3", "AI1"),
            # isolated component where every query condition holds
            ("HR2", "SE2"), ("HR2", "Bio4"), ("SE2", "Bio4"),
            ("DMp1", "Bio4"), ("DMp2", "Bio4"),
            ("DMp1", "AIp1"), ("AIp1", "DMp2"), ("DMp2", "AIp2"), ("AIp2", "DMp1"),
        ],
    )


def recruiting_good_component() -> frozenset[str]:
    return frozenset({"HR2", "SE2", "Bio4", "DMp1", "DMp2", "AIp1", "AIp2"})


# --- bookstore scenario --------------------------------------------------
# Query: a book recommended by a student and by a teacher. book1 only has
# student recommenders, so duality rules it out; two teachers recommend
# book2, so isomorphism finds two matches that strong matching merges.

def book_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of(
        [("ST", "ST"), ("TE", "TE"), ("book", "book")],
        [("ST", "book"), ("TE", "book")],
    )
    return Pattern.of(g), ids


def book_graph() -> tuple[LabeledDigraph, dict[str, int]]:
    return graph_of(
        [
            ("ST1", "ST"), ("ST2", "ST"), ("TE1", "TE"), ("TE2", "TE"),
            ("book1", "book"), ("book2", "book"),
        ],
        [
            ("ST1", "book1"), ("ST2", "book1"),
            ("ST2", "book2"), ("TE1", "book2"), ("TE2", "book2"),
        ],
    )


# --- mutual-recommendation scenario --------------------------------------
# Query: two people who recommend each other. P1<->P2 and P2<->P3 are the
# mutual pairs; P4 hangs off a one-way cycle stub, so dual simulation keeps
# it but the radius-1 locality check throws it out of every ball.

def mutual_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of([("P", "P"), ("Pp", "P")], [("P", "Pp"), ("Pp", "P")])
    return Pattern.of(g), ids


def mutual_graph() -> tuple[LabeledDigraph, dict[str, int]]:
    return graph_of(
        [("P1", "P"), ("P2", "P"), ("P3", "P"), ("P4", "P")],
        [
            ("P1", "P2"), ("P2", "P1"), ("P2", "P3"), ("P3", "P2"),
            ("P3", "P4"), ("P4", "P1"),
        ],
    )


# --- citation scenario ---------------------------------------------------
# Query: a database paper citing a social-network paper and a graph-theory
# paper. SN3/SN4 are cited by a db paper with no graph-theory citation, so
# duality excludes them; db1's four (SN, graph) combinations give four
# isomorphic matches that strong matching returns as one subgraph.

def citation_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of(
        [("db", "db"), ("SN", "SN"), ("graph", "graph")],
        [("db", "SN"), ("db", "graph")],
    )
    return Pattern.of(g), ids


def citation_graph() -> tuple[LabeledDigraph, dict[str, int]]:
    return graph_of(
        [
            ("SN1", "SN"), ("SN2", "SN"), ("SN3", "SN"), ("SN4", "SN"),
            ("db1", "db"), ("db3", "db"), ("graph1", "graph"), ("graph2", "graph"),
        ],
        [
            ("db1", "SN1"), ("db1", "SN2"), ("db1", "graph1"), ("db1", "graph2"),
            ("db3", "SN3"), ("db3", "SN4"),
        ],
    )


# --- redundant-pattern scenario (minimization) ----------------------------
# A root fans out to two mirrored B->C->D chains plus a lone A child; the
# mirrored chains collapse to one under minimization, leaving five classes.

def redundant_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of(
        [
            ("R", "R"), ("A", "A"), ("B1", "B"), ("B2", "B"),
            ("C1", "C"), ("C2", "C"), ("D1", "D"), ("D2", "D"),
        ],
        [
            ("R", "A"), ("R", "B1"), ("R", "B2"),
            ("B1", "C1"), ("B2", "C2"), ("C1", "D1"), ("C2", "D2"),
        ],
    )
    return Pattern.of(g), ids


# --- connectivity-pruning scenario ----------------------------------------
# Candidates inside the ball split into two components joined only through
# an X-labeled connector, so everything outside the center's component can
# be dropped before refinement starts.

def pruning_pattern() -> tuple[Pattern, dict[str, int]]:
    g, ids = graph_of(
        [
            ("A1", "A"), ("B1", "B"), ("A2", "A"),
            ("B2", "B"), ("A3", "A"), ("B3", "B"),
        ],
        [("A1", "B1"), ("B1", "A2"), ("A2", "B2"), ("B2", "A3"), ("A3", "B3")],
    )
    return Pattern.of(g), ids


def pruning_graph() -> tuple[LabeledDigraph, dict[str, int]]:
    return graph_of(
        [("A1", "A"), ("B1", "B"), ("X", "X"), ("A2", "A"), ("B2", "B")],
        [("A1", "B1"), ("B1", "X"), ("X", "A2"), ("A2", "B2")],
    )


# --- random-instance helpers ----------------------------------------------

def feasible_alpha(n: int, alpha: float) -> float:
    """Largest of (alpha, 1.0) whose edge target fits the non-loop budget."""
    if round(n**alpha) <= n * (n - 1):
        return alpha
    return 1.0


def random_graph(n: int, alpha: float, l: int, seed: int) -> LabeledDigraph:
    return generate(GeneratorParams(n, feasible_alpha(n, alpha), l, seed))


def random_pattern(n: int, alpha: float, l: int, seed: int) -> Pattern:
    """Connected random pattern: retry derived seeds, falling back to the
    largest component (re-densified) if connectivity never shows up."""
    for attempt in range(64):
        g = random_graph(n, alpha, l, seed * 1009 + attempt)
        comps = connected_components(g)
        if len(comps) == 1:
            return Pattern.of(g)
    comp = max(comps, key=len)
    sub = induced(g, comp)
    remap = {v: i for i, v in enumerate(sub.nodes)}
    dense = LabeledDigraph(
        [sub.label(v) for v in sub.nodes],
        [(remap[u], remap[v]) for u, v in sub.edge_set],
    )
    return Pattern.of(dense)


def plant(q: Pattern, g: LabeledDigraph, rng: random.Random) -> LabeledDigraph:
    """Embed a copy of the pattern into g at random positions.

    Guarantees non-empty simulation and dual-simulation relations: the
    planted copy is itself a valid match relation.
    """
    qg = q.graph
    spots = rng.sample(range(g.n_nodes), qg.n_nodes)
    labels = list(g.labels)
    for u in qg.node_ids():
        labels[spots[u]] = qg.label(u)
    edges = set(g.edge_set)
    edges.update((spots[u], spots[v]) for u, v in qg.edge_set)
    return LabeledDigraph(labels, edges)


def instance_corpus(
    count: int,
    seed: int,
    nq_max: int = 8,
    ng_range: tuple[int, int] = (20, 300),
    tiny_share: float = 0.2,
    plant_share: float = 0.35,
) -> list[tuple[Pattern, LabeledDigraph]]:
    """Seeded (pattern, graph) pairs spanning the configured density and
    label ranges. A share of the graphs stays tiny so the isomorphism
    oracle can participate, and a share gets the pattern planted so the
    relations are frequently non-empty."""
    rng = random.Random(seed)
    alphas = [1.05, 1.1, 1.15, 1.2, 1.25, 1.3, 1.35]
    pairs = []
    for i in range(count):
        l = rng.randint(2, 8)
        alpha = rng.choice(alphas)
        if i < count * tiny_share:
            ng = rng.randint(6, 12)
        else:
            lo, hi = ng_range
            ng = rng.randint(lo, hi)
        nq = rng.randint(2, min(nq_max, ng))
        q = random_pattern(nq, rng.choice(alphas), l, seed=1_000_000 + i)
        g = random_graph(ng, alpha, l, seed=2_000_000 + i)
        if rng.random() < plant_share:
            g = plant(q, g, rng)
        pairs.append((q, g))
    return pairs


def has_witness_safe_cycle(g: LabeledDigraph) -> bool:
    """True when the graph has an undirected cycle that dual simulation
    provably preserves: an antiparallel edge pair, or a simple cycle (length
    >= 3) whose node labels are pairwise distinct. Cycles with repeated
    labels can collapse onto shared witnesses and are excluded."""
    for u, v in g.edge_set:
        if u != v and (v, u) in g.edge_set:
            return True

    def extend(start: int, path: list[int], labels_used: set[str]) -> bool:
        tip = path[-1]
        for nxt in g.und(tip):
            if nxt == start and len(path) >= 3:
                return True
            if nxt > start and nxt not in path and g.label(nxt) not in labels_used:
                if extend(start, path + [nxt], labels_used | {g.label(nxt)}):
                    return True
        return False

    return any(extend(s, [s], {g.label(s)}) for s in g.node_ids())


def locality_bound_holds(g, pg, radius: int) -> bool:
    """Every subgraph node within `radius` of the producing center, measured
    in the host graph (hence any pair within 2*radius there)."""
    from gpm import undirected_distance

    return all(
        undirected_distance(g, pg.center, v) <= radius for v in pg.subgraph.nodes
    )


def graphs_isomorphic(a: LabeledDigraph, b: LabeledDigraph) -> bool:
    """Label-preserving digraph isomorphism via the induced-match oracle."""
    from gpm import subgraph_iso_all

    if a.n_nodes != b.n_nodes or a.n_edges != b.n_edges:
        return False
    if a.n_nodes == 0:
        return True
    return bool(subgraph_iso_all(Pattern.of(a), b))


@pytest.fixture(scope="session")
def corpus200() -> list[tuple[Pattern, LabeledDigraph]]:
    """The 200-pair random corpus shared by the optimization-equivalence and
    property acceptance suites."""
    return instance_corpus(200, seed=7)
