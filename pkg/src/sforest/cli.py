"""Command-line entry point.

Exit status: 0 on success, 1 on bad input or a violated precondition,
2 when ``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .errors import SForestError
from .graphs import destruction_film, t_forests
from .io import dumps, load_graph, load_relation
from .polytope import VERIFY_LIMIT, collapse, export_skeleton
from .relationships import map_L
from .sterm import kappa, parse_sterm, render_sterm, sterm_of_ftp
from .verify import run_all


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sforest", description="S-forests of graphs and collapsed permutohedra")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("forests", help="list the S-forests of a graph")
    s.add_argument("graph")

    s = sub.add_parser("collapse", help="collapsed permutohedron skeleton of a graph")
    s.add_argument("graph")
    s.add_argument("--format", choices=("json", "dot"), default="json")

    s = sub.add_parser("kappa", help="relation of a diversified S-term")
    s.add_argument("term")

    s = sub.add_parser("sterm-of", help="S-term of a trifunctional partial order")
    s.add_argument("relation")

    s = sub.add_parser("extensions", help="linear extensions of a partial order")
    s.add_argument("relation")

    s = sub.add_parser("film", help="destruction film of an S-forest of a graph")
    s.add_argument("graph")
    s.add_argument("term")

    s = sub.add_parser("verify", help="run the exhaustive/random verification suite")
    s.add_argument("--max-n", type=int, default=4)
    s.add_argument("--random-count", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    return p


def _dispatch(args, out: TextIO) -> int:
    cmd = args.command
    if cmd == "forests":
        out.write(dumps(t_forests(load_graph(args.graph)).rendered()))
    elif cmd == "collapse":
        out.write(export_skeleton(collapse(load_graph(args.graph)), args.format))
    elif cmd == "kappa":
        out.write(dumps(kappa(parse_sterm(args.term)).to_json()))
    elif cmd == "sterm-of":
        out.write(render_sterm(sterm_of_ftp(load_relation(args.relation))) + "\n")
    elif cmd == "extensions":
        out.write(dumps(map_L(load_relation(args.relation)).to_json()))
    elif cmd == "film":
        frames = destruction_film(load_graph(args.graph), parse_sterm(args.term))
        out.write(dumps([[g.to_json() for g in frame] for frame in frames]))
    elif cmd == "verify":
        if not 1 <= args.max_n <= VERIFY_LIMIT:
            raise SForestError(f"--max-n must be between 1 and {VERIFY_LIMIT}")
        if args.random_count < 0:
            raise SForestError("--random-count must be nonnegative")
        reports = run_all(args.max_n, args.random_count, args.seed)
        out.write(dumps([r.to_json() for r in reports]))
        return 0 if all(r.passed for r in reports) else 2
    return 0


def run(argv: Sequence[str], out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        args = build_parser().parse_args(list(argv))
        return _dispatch(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
    except (SForestError, ValueError, OSError) as e:
        err.write(f"error: {e}\n")
    return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
