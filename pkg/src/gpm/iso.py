"""Brute-force subgraph isomorphism (induced semantics) and match-quality
metrics.

A match is a subgraph of the data graph witnessed by a label-preserving
bijection whose image carries exactly the pattern's edges. Enumeration
returns one `IsoMatch` per distinct matched subgraph (automorphic witnesses
collapse), carrying the lexicographically smallest witness mapping. Intended
for desk scale; the matchers are the performance path, this is the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalInvariantError
from .graphs import GraphLike, Pattern
from .optimize import match_plus
from .simulation import dual_sim, graph_sim, match_graph
from .strong import matched_nodes

ALGORITHMS = ("sim", "dual", "strong", "iso")

# Above these sizes quality_report skips the isomorphism-dependent fields.
ISO_FEASIBLE_PATTERN = 8
ISO_FEASIBLE_GRAPH = 1000

HIST_BUCKETS: tuple[tuple[int, int | None], ...] = (
    (0, 9), (10, 19), (20, 29), (30, 39), (40, 49), (50, None),
)


@dataclass(frozen=True)
class IsoMatch:
    """One matched subgraph with a witness bijection (pattern -> data)."""

    mapping: tuple[tuple[int, int], ...]

    @property
    def image_nodes(self) -> frozenset[int]:
        return frozenset(v for _, v in self.mapping)

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)


def subgraph_iso_all(q: Pattern, g: GraphLike) -> list[IsoMatch]:
    """Every subgraph of g isomorphic to q, one entry per distinct image.

    Backtracking with label and degree pruning; the returned list is
    canonically ordered and independent of exploration order.
    """
    qg = q.graph
    nq = qg.n_nodes
    by_label = g.by_label()
    cands: dict[int, list[int]] = {}
    for u in qg.node_ids():
        cs = [
            v
            for v in by_label.get(qg.label(u), ())
            if len(g.succ(v)) >= len(qg.succ(u)) and len(g.pred(v)) >= len(qg.pred(u))
        ]
        if not cs:
            return []
        cands[u] = cs

    # Order pattern nodes: rarest candidates first, then prefer nodes adjacent
    # to already-placed ones so partial checks bite early.
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(qg.node_ids())
    while remaining:
        adjacent = {
            u for u in remaining
            if any(w in placed for w in qg.succ(u)) or any(w in placed for w in qg.pred(u))
        } or remaining
        u = min(adjacent, key=lambda u: (len(cands[u]), u))
        order.append(u)
        placed.add(u)
        remaining.remove(u)

    found: dict[frozenset[int], tuple[tuple[int, int], ...]] = {}
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(u: int, v: int) -> bool:
        if ((u, u) in qg.edge_set) != ((v, v) in g.edge_set):
            return False
        for u2, v2 in assign.items():
            if ((u, u2) in qg.edge_set) != ((v, v2) in g.edge_set):
                return False
            if ((u2, u) in qg.edge_set) != ((v2, v) in g.edge_set):
                return False
        return True

    def backtrack(i: int) -> None:
        if i == nq:
            mapping = tuple(sorted(assign.items()))
            image = frozenset(assign.values())
            prev = found.get(image)
            if prev is None or mapping < prev:
                found[image] = mapping
            return
        u = order[i]
        for v in cands[u]:
            if v not in used and consistent(u, v):
                assign[u] = v
                used.add(v)
                backtrack(i + 1)
                del assign[u]
                used.remove(v)

    backtrack(0)
    matches = [IsoMatch(m) for m in found.values()]
    matches.sort(key=lambda m: tuple(sorted(m.image_nodes)))
    return matches


def _algo_nodes(q: Pattern, g: GraphLike, algo: str) -> frozenset[int]:
    if algo == "sim":
        return graph_sim(q, g).node_set()
    if algo == "dual":
        return dual_sim(q, g).node_set()
    if algo == "strong":
        return matched_nodes(match_plus(q, g))
    if algo == "iso":
        out: set[int] = set()
        for m in subgraph_iso_all(q, g):
            out.update(m.image_nodes)
        return frozenset(out)
    raise InputError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")


def closeness(q: Pattern, g: GraphLike, algo: str) -> Fraction:
    """Total matched nodes under isomorphism over total matched nodes under
    `algo`; 1 when both are zero (and always 1 for iso itself)."""
    if algo == "iso":
        return Fraction(1)
    denom = len(_algo_nodes(q, g, algo))
    numer = len(_algo_nodes(q, g, "iso"))
    if denom == 0:
        if numer == 0:
            return Fraction(1)
        raise InternalInvariantError(
            f"isomorphism matched {numer} nodes but {algo} matched none"
        )
    return Fraction(numer, denom)


@dataclass(frozen=True)
class QualityReport:
    algorithm: str
    closeness: Fraction | None
    subgraph_count: int
    size_histogram: dict[tuple[int, int | None], int]


def _bucket(size: int) -> tuple[int, int | None]:
    return HIST_BUCKETS[min(size // 10, len(HIST_BUCKETS) - 1)]


def quality_report(q: Pattern, g: GraphLike, algo: str) -> QualityReport:
    """Closeness (when isomorphism is desk-feasible), matched-subgraph count,
    and the node-count histogram of the matches.

    Units per algorithm: distinct matched subgraphs for iso, perfect
    subgraphs for strong, and the single match graph (if any) for sim/dual.
    """
    if algo not in ALGORITHMS:
        raise InputError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    sizes: list[int] = []
    if algo == "iso":
        sizes = [len(m.image_nodes) for m in subgraph_iso_all(q, g)]
    elif algo == "strong":
        sizes = [pg.subgraph.n_nodes for pg in match_plus(q, g).theta]
    else:
        rel = graph_sim(q, g) if algo == "sim" else dual_sim(q, g)
        if not rel.is_empty:
            sizes = [match_graph(q, g, rel).n_nodes]
    feasible = (
        algo == "iso"
        or (q.graph.n_nodes <= ISO_FEASIBLE_PATTERN and g.n_nodes <= ISO_FEASIBLE_GRAPH)
    )
    close = closeness(q, g, algo) if feasible else None
    hist: dict[tuple[int, int | None], int] = {}
    for s in sizes:
        b = _bucket(s)
        hist[b] = hist.get(b, 0) + 1
    return QualityReport(algo, close, len(sizes), hist)


def report_text(report: QualityReport) -> str:
    lines: list[str] = []
    if report.closeness is not None:
        lines.append(f"closeness {float(report.closeness):.4f}")
    lines.append(f"subgraphs {report.subgraph_count}")
    for (lo, hi), count in sorted(report.size_histogram.items()):
        span = f"{lo}-{hi}" if hi is not None else f"{lo}+"
        lines.append(f"hist {span} {count}")
    return "".join(line + "\n" for line in lines)
