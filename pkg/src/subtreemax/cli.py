"""Command-line front end.

Trees are read as edge-list documents (one ``u v`` pair per line, ``#``
comments allowed) from ``--in PATH`` or standard input.  Output is compact
JSON by default; every subtree count is written as a decimal string.

Exit codes: 0 success, 1 bad input or cap exceeded, 2 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .counting import count_rooted, count_subtrees
from .explorer import (
    DEFAULT_SWITCH_BUDGET,
    check_conjecture,
    check_tail_dominance,
    distances_from_greedy,
    probe_switch_ordering,
    rank_family,
    switch_distance_to_greedy,
)
from .greedy import build_greedy
from .oracle import FAMILY_MAX_VERTICES, enumerate_family
from .switching import DEFAULT_MAX_SWITCHES, InvariantError, run_switching_algorithm
from .tree import DegreeSequence, DegreeSequenceError, Tree, TreeError, parse_tree


class InputError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    source: str | None  # tree file path, "-" for stdin
    degseq: str | None
    fmt: str = "json"
    oracle_cap: int = FAMILY_MAX_VERTICES
    switch_budget: int | None = None
    seed: int = 0


def _read_tree(source: str) -> Tree:
    try:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    return parse_tree(text)


def _degseq(cfg: CliConfig) -> DegreeSequence:
    return DegreeSequence.parse(cfg.degseq)


# ------------------------------------------------------------------ commands


def cmd_count(cfg: CliConfig) -> dict:
    return {"subtree_count": str(count_subtrees(_read_tree(cfg.source)))}


def cmd_count_rooted(cfg: CliConfig, vertex: int) -> dict:
    t = _read_tree(cfg.source)
    try:
        n = count_rooted(t, vertex)
    except KeyError as exc:
        raise InputError(f"vertex {vertex} not in tree") from exc
    return {"vertex": vertex, "subtree_count": str(n)}


def cmd_greedy(cfg: CliConfig) -> dict:
    g = build_greedy(_degseq(cfg))
    return {"root": g.root, "subtree_count": str(count_subtrees(g.tree)), "tree": g.tree.to_text()}


def cmd_maximize(cfg: CliConfig) -> dict:
    t = _read_tree(cfg.source)
    cap = cfg.switch_budget if cfg.switch_budget is not None else DEFAULT_MAX_SWITCHES
    out, trace = run_switching_algorithm(t, cap)
    return {
        "initial_count": str(trace.initial_count),
        "final_count": str(trace.final_count),
        "switches": len(trace),
        "trace": trace.to_json(),
        "tree": out.to_text(),
    }


def cmd_enumerate(cfg: CliConfig) -> dict:
    family = enumerate_family(_degseq(cfg), cfg.oracle_cap)
    return {
        "degree_sequence": str(family.degree_sequence),
        "members": [{"subtree_count": str(count_subtrees(t)), "tree": t.to_text()} for t in family],
    }


def _budget(cfg: CliConfig) -> int:
    return cfg.switch_budget if cfg.switch_budget is not None else DEFAULT_SWITCH_BUDGET


def cmd_verify(cfg: CliConfig) -> tuple[dict, bool]:
    ds = _degseq(cfg)
    ranked = rank_family(ds, cfg.oracle_cap)
    greedy_count = count_subtrees(build_greedy(ds).tree)
    dist = distances_from_greedy(ds, _budget(cfg)) if ds.vertex_count >= 3 else {e.code: 0 for e in ranked.entries}
    rows = []
    distances_ok = True
    for e in ranked.entries:
        k = dist.get(e.code)
        ok = k is not None and k <= e.rank - 1 and (e.rank != 2 or k == 1)
        distances_ok &= ok
        rows.append({"rank": e.rank, "subtree_count": str(e.count), "distance": k, "within_bound": ok})
    maximal = ranked.entry(1).count == greedy_count
    report = {
        "degree_sequence": str(ds),
        "members": len(ranked),
        "greedy_count": str(greedy_count),
        "greedy_is_maximal": maximal,
        "distances_within_bound": distances_ok,
        "ranks": rows,
    }
    return report, maximal and distances_ok


def cmd_kth(cfg: CliConfig, k: int) -> dict:
    ranked = rank_family(_degseq(cfg), cfg.oracle_cap)
    try:
        e = ranked.entry(k)
    except IndexError as exc:
        raise InputError(str(exc)) from exc
    return {
        "rank": e.rank,
        "subtree_count": str(e.count),
        "distance": switch_distance_to_greedy(e.tree, _budget(cfg)),
        "tree": e.tree.to_text(),
    }


# ------------------------------------------------------------------ plumbing


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        return
    tree = payload.pop("tree", None)
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, separators=(",", ":"))
        out.write(f"{key}: {value}\n")
    if tree is not None:
        out.write(tree)


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 1, keeping 2 for internal failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--oracle-cap", type=int, default=FAMILY_MAX_VERTICES,
                        help="largest family (in vertices) to enumerate")
    common.add_argument("--switch-budget", type=int, default=None,
                        help="search depth for distances; safety cap for maximize")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="subtreemax", description="Subtree counts and count-maximal trees.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def tree_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--in", dest="source", default="-", help="edge-list file, '-' for stdin")
        return p

    def degseq_cmd(name, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--degseq", required=True, help="internal degrees, comma or space separated")
        return p

    tree_cmd("count", "count all subtrees")
    tree_cmd("count-rooted", "count subtrees containing a vertex").add_argument("--vertex", type=int, required=True)
    degseq_cmd("greedy", "build the greedy tree")
    tree_cmd("maximize", "run the switching algorithm")
    degseq_cmd("enumerate", "list every tree with a degree sequence")
    degseq_cmd("verify", "rank a family and check the greedy tree and switch distances")
    degseq_cmd("kth", "k-th largest tree of a family").add_argument("--k", type=int, required=True)
    degseq_cmd("check-conjecture", "interleaving conjecture on one family")
    degseq_cmd("check-dominance", "tail-switch dominance on the greedy tree")
    degseq_cmd("probe", "switch-ordering questions on the greedy tree").add_argument(
        "--problem", type=int, choices=(1, 2, 3), required=True)
    return parser


def run(args, out=None) -> int:
    out = out or sys.stdout
    cfg = CliConfig(
        args.subcommand,
        getattr(args, "source", None),
        getattr(args, "degseq", None),
        args.format,
        args.oracle_cap,
        args.switch_budget,
        args.seed,
    )
    if cfg.oracle_cap <= 0 or (cfg.switch_budget is not None and cfg.switch_budget < 0):
        raise InputError("caps must be positive")
    ok = True
    cmd = cfg.subcommand
    if cmd == "count":
        payload = cmd_count(cfg)
    elif cmd == "count-rooted":
        payload = cmd_count_rooted(cfg, args.vertex)
    elif cmd == "greedy":
        payload = cmd_greedy(cfg)
    elif cmd == "maximize":
        payload = cmd_maximize(cfg)
    elif cmd == "enumerate":
        payload = cmd_enumerate(cfg)
    elif cmd == "verify":
        payload, ok = cmd_verify(cfg)
    elif cmd == "kth":
        payload = cmd_kth(cfg, args.k)
    elif cmd == "check-conjecture":
        payload = check_conjecture([_degseq(cfg)], cfg.oracle_cap).to_dict()
    elif cmd == "check-dominance":
        payload = check_tail_dominance(_degseq(cfg), seed=cfg.seed).to_dict()
    else:
        payload = probe_switch_ordering(_degseq(cfg), args.problem, cfg.oracle_cap).to_dict()
    _emit(payload, cfg.fmt, out)
    return 0 if ok else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except InvariantError as exc:
        print(f"subtreemax: internal error: {exc}", file=sys.stderr)
        return 2
    except (InputError, TreeError, DegreeSequenceError, ValueError) as exc:
        print(f"subtreemax: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
