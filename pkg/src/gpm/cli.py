"""Command-line front end: one subcommand per engine operation.

Exit codes: 0 on success (a valid "no match" included), 1 on input errors
(bad flags, unreadable files, malformed documents, bad parameters), 2 when an
internal invariant breaks. Results go to stdout, diagnostics to stderr;
every command's output is byte-deterministic. Set GPM_LOG=info|debug for
progress diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from pathlib import Path

from .errors import InputError, InternalInvariantError
from .graphs import LabeledDigraph, Pattern
from .graphio import GeneratorParams, generate, parse_graph, serialize_graph
from .iso import ALGORITHMS, closeness, quality_report, report_text, subgraph_iso_all
from .optimize import match_plus, min_q
from .simulation import dual_sim, graph_sim
from .strong import match_strong, result_text
from .distributed import (
    distributed_match,
    partition,
    sim_shipment_diagnostic,
)

log = logging.getLogger("gpm")


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the contract wants 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _configure_logging() -> None:
    level_name = os.environ.get("GPM_LOG", "off").lower()
    if level_name in ("", "off"):
        logging.disable(logging.CRITICAL)
        return
    levels = {"info": logging.INFO, "debug": logging.DEBUG}
    logging.disable(logging.NOTSET)
    logging.basicConfig(
        stream=sys.stderr,
        level=levels.get(level_name, logging.INFO),
        format="gpm %(levelname)s %(message)s",
        force=True,
    )


def _load_graph(path: str) -> LabeledDigraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _load_pattern(path: str) -> Pattern:
    g = _load_graph(path)
    return Pattern.of(g)


def _build_parser() -> _Parser:
    top = _Parser(prog="gpm", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, *, q: bool = False, g: bool = False) -> _Parser:
        p = sub.add_parser(name, help=help_)
        if q:
            p.add_argument("-q", dest="pattern", required=True, help="pattern graph file")
        if g:
            p.add_argument("-g", dest="graph", required=True, help="data graph file")
        return p

    add("sim", "maximum graph-simulation relation", q=True, g=True)
    add("dualsim", "maximum dual-simulation relation", q=True, g=True)

    p = add("match", "strong-simulation match result", q=True, g=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--plain", action="store_true", help="disable optimizations")
    mode.add_argument("--plus", action="store_true", help="optimized pipeline (default)")
    p.add_argument("--radius", type=int, default=None, help="ball radius override")
    p.add_argument("--threads", type=int, default=1, help="ball-level threads (0 = auto)")

    add("minq", "minimize a pattern", q=True)

    add("iso", "all isomorphic matches", q=True, g=True)

    for name in ("closeness", "report"):
        p = add(name, "match-quality metrics", q=True, g=True)
        p.add_argument("--algo", choices=ALGORITHMS, required=True)

    p = sub.add_parser("gen", help="generate a synthetic graph")
    p.add_argument("-n", type=int, required=True, help="node count")
    p.add_argument("--alpha", type=float, default=1.2, help="edge exponent (default 1.2)")
    p.add_argument("-l", type=int, required=True, help="label alphabet size")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("-o", dest="out", default=None, help="output file (default stdout)")

    p = add("partition", "split a graph into site fragments", g=True)
    p.add_argument("-k", type=int, required=True, help="site count")
    p.add_argument("--seed", type=int, default=0, help="ownership seed")
    p.add_argument("-o", dest="out", required=True, help="output directory")

    p = add("distmatch", "distributed strong matching over simulated sites", q=True, g=True)
    p.add_argument("-k", type=int, required=True, help="site count")
    p.add_argument("--seed", type=int, default=0, help="ownership seed")
    p.add_argument(
        "--diagnose",
        action="store_true",
        help="also report the plain-simulation co-location shipment lower bound",
    )
    return top


def _cmd_relation(args: argparse.Namespace, dual: bool) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    rel = dual_sim(q, g) if dual else graph_sim(q, g)
    return rel.text()


def _cmd_match(args: argparse.Namespace) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    if args.threads < 0:
        raise InputError(f"--threads must be >= 0, got {args.threads}")
    if args.radius is not None and args.radius < 0:
        raise InputError(f"--radius must be >= 0, got {args.radius}")
    started = time.monotonic()
    if args.plain:
        result = match_strong(q, g, radius=args.radius, threads=args.threads)
    else:
        result = match_plus(q, g, radius=args.radius, threads=args.threads)
    log.info(
        "match over %d nodes / %d edges: %d subgraphs in %.3fs",
        g.n_nodes, g.n_edges, len(result.theta), time.monotonic() - started,
    )
    return result_text(result)


def _cmd_minq(args: argparse.Namespace) -> str:
    mq = min_q(_load_pattern(args.pattern))
    lines = serialize_graph(mq.pattern.graph)
    lines += "".join(f"c {u} {c}\n" for u, c in sorted(mq.class_of.items()))
    return lines


def _cmd_iso(args: argparse.Namespace) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    matches = subgraph_iso_all(q, g)
    out = [f"matches {len(matches)}"]
    for m in matches:
        out.append("i " + " ".join(str(v) for _, v in m.mapping))
    return "".join(line + "\n" for line in out)


def _cmd_closeness(args: argparse.Namespace) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    return f"closeness {float(closeness(q, g, args.algo)):.4f}\n"


def _cmd_report(args: argparse.Namespace) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    return report_text(quality_report(q, g, args.algo))


def _cmd_gen(args: argparse.Namespace) -> str:
    params = GeneratorParams(args.n, args.alpha, args.l, args.seed)
    text = serialize_graph(generate(params))
    if args.out is not None:
        Path(args.out).write_text(text, encoding="utf-8")
        return ""
    return text


def _fragment_document(frag, owner) -> str:
    """Fragment as a dense graph-io document; local id = rank among owned ids."""
    local = {v: i for i, v in enumerate(frag.owned)}
    lines = [f"n {len(frag.owned)}"]
    lines.extend(f"v {local[v]} {frag.labels[v]}" for v in frag.owned)
    local_edges = sorted(
        (local[v], local[w])
        for v in frag.owned
        for w in frag.out[v]
        if owner[w] == frag.site
    )
    lines.extend(f"e {u} {v}" for u, v in local_edges)
    return "".join(line + "\n" for line in lines)


def _cmd_partition(args: argparse.Namespace) -> str:
    g = _load_graph(args.graph)
    f = partition(g, args.k, args.seed)
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise InputError(f"cannot create {out_dir}: {exc}") from exc
    for frag in f.fragments:
        (out_dir / f"fragment_{frag.site}.graph").write_text(
            _fragment_document(frag, f.owner), encoding="utf-8"
        )
    manifest = [f"k {f.k}"]
    manifest.extend(f"owner {v} {f.owner[v]}" for v in range(f.n_nodes))
    cross = sorted(
        {(u, v) for frag in f.fragments for (u, v) in frag.cross_edges}
    )
    manifest.extend(f"x {u} {v} {g.label(v)}" for u, v in cross)
    (out_dir / "manifest.txt").write_text(
        "".join(line + "\n" for line in manifest), encoding="utf-8"
    )
    log.info("wrote %d fragments to %s", f.k, out_dir)
    return ""


def _cmd_distmatch(args: argparse.Namespace) -> str:
    q = _load_pattern(args.pattern)
    g = _load_graph(args.graph)
    f = partition(g, args.k, args.seed)
    result, ledger = distributed_match(q, f)
    out = result_text(result) + ledger.text()
    if args.diagnose:
        out += sim_shipment_diagnostic(q, f).text()
    return out


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    handlers = {
        "sim": lambda a: _cmd_relation(a, dual=False),
        "dualsim": lambda a: _cmd_relation(a, dual=True),
        "match": _cmd_match,
        "minq": _cmd_minq,
        "iso": _cmd_iso,
        "closeness": _cmd_closeness,
        "report": _cmd_report,
        "gen": _cmd_gen,
        "partition": _cmd_partition,
        "distmatch": _cmd_distmatch,
    }
    try:
        sys.stdout.write(handlers[args.command](args))
    except InputError as exc:
        print(f"gpm: error: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"gpm: internal invariant violated: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
