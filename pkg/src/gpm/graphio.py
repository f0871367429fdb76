"""Text format for graphs and patterns, plus the synthetic generator.

Documents are UTF-8 text, one record per line:

    # comment            ignored
    n <count>            first non-comment record, node count
    v <id> <label>       one per node, ids 0..n-1
    e <src> <dst>        directed edge

Records of the same kind may appear in any order; serialization is canonical
(vertices ascending, edges sorted), so ``parse(serialize(g)) == g`` and
serialization is injective up to graph identity.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import InputError, ParseError
from .graphs import LabeledDigraph


def parse_graph(text: str | bytes) -> LabeledDigraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n: int | None = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    edge_seen: set[tuple[int, int]] = set()

    def fail(lineno: int, msg: str) -> ParseError:
        return ParseError(f"line {lineno}: {msg}")

    def parse_id(lineno: int, tok: str) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise fail(lineno, f"expected an integer id, got {tok!r}") from None
        if n is None or not (0 <= v < n):
            raise fail(lineno, f"undeclared node id {v} (n = {n})")
        return v

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if n is None:
            if kind != "n" or len(parts) != 2:
                raise fail(lineno, "first record must be 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise fail(lineno, f"bad node count {parts[1]!r}") from None
            if n < 0:
                raise fail(lineno, f"node count must be non-negative, got {n}")
        elif kind == "v":
            if len(parts) != 3:
                raise fail(lineno, "vertex record must be 'v <id> <label>'")
            v = parse_id(lineno, parts[1])
            if v in labels:
                raise fail(lineno, f"duplicate vertex {v}")
            labels[v] = parts[2]
        elif kind == "e":
            if len(parts) != 3:
                raise fail(lineno, "edge record must be 'e <src> <dst>'")
            e = (parse_id(lineno, parts[1]), parse_id(lineno, parts[2]))
            if e in edge_seen:
                raise fail(lineno, f"duplicate edge {e[0]} -> {e[1]}")
            edge_seen.add(e)
            edges.append(e)
        elif kind == "n":
            raise fail(lineno, "repeated 'n' record")
        else:
            raise fail(lineno, f"unknown record kind {kind!r}")

    if n is None:
        raise ParseError("line 1: empty document, expected 'n <count>'")
    if len(labels) != n:
        raise ParseError(
            f"line {len(text.splitlines())}: declared {len(labels)} vertices, "
            f"header says {n}"
        )
    try:
        return LabeledDigraph([labels[v] for v in range(n)], edges)
    except InputError as exc:  # label validation
        raise ParseError(str(exc)) from exc


def serialize_graph(g: LabeledDigraph) -> str:
    lines = [f"n {g.n_nodes}"]
    lines.extend(f"v {v} {g.label(v)}" for v in g.node_ids())
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edge_set))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GeneratorParams:
    """Synthetic-graph knobs: n nodes, round(n**alpha) edges, l labels."""

    n: int
    alpha: float
    l: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"n must be >= 1, got {self.n}")
        if self.alpha < 1.0:
            raise InputError(f"alpha must be >= 1.0, got {self.alpha}")
        if self.l < 1:
            raise InputError(f"l must be >= 1, got {self.l}")
        if self.edge_count > self.n * self.n:
            raise InputError(
                f"edge target {self.edge_count} exceeds n*n = {self.n * self.n}"
            )

    @property
    def edge_count(self) -> int:
        return round(math.pow(self.n, self.alpha))


def generate(params: GeneratorParams) -> LabeledDigraph:
    """Uniform random graph: distinct directed non-loop edges sampled without
    replacement, labels uniform over L0..L(l-1). Deterministic given the seed."""
    n, m = params.n, params.edge_count
    if m > n * (n - 1):
        raise InputError(
            f"edge target {m} exceeds the {n * (n - 1)} available non-loop edges"
        )
    rng = random.Random(params.seed)
    labels = [f"L{rng.randrange(params.l)}" for _ in range(n)]
    edges = []
    for idx in rng.sample(range(n * (n - 1)), m):
        u, j = divmod(idx, n - 1)
        edges.append((u, j + 1 if j >= u else j))
    return LabeledDigraph(labels, edges)
