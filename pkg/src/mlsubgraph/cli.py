"""Command-line interface.

Exit codes: 0 = YES, 1 = NO, 2 = usage, parse, or algorithm/property mismatch.
A YES answer prints three lines: "YES", the witness vertices, the witness
layers, all space-separated and ascending, so output is byte-stable.
"""

from __future__ import annotations

import argparse
import sys

from .exact import brute_force_solve, complement_hereditary_solve
from .gadgets import (
    biclique_to_piml,
    gen_colored_source,
    has_biclique_subgraph,
    has_multicolored_biclique,
    has_multicolored_clique,
    mcb_to_hamiltonian,
    mcc_to_cfactor,
    mcc_to_matching,
)
from .graphs import MlgParseError, parse_mlg, serialize_mlg
from .instance import Answer, Instance
from .kernel import reduce_to_2chs, search_tree_solve, serialize_hs, sunflower_kernelize
from .matching_solver import matching_ml_solve
from .partition import partition_solve
from .properties import (
    COMPLEMENT_HEREDITARY_KINDS,
    PARTITIONABLE_KINDS,
    PropertySpec,
    check,
    parse_property,
)


class CliError(Exception):
    """Usage-level failure; message becomes the one-line diagnostic."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlsubgraph")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_flags(p, with_algo: bool):
        p.add_argument("--input", required=True)
        p.add_argument("--property", required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--ell", type=int, required=True)
        if with_algo:
            p.add_argument(
                "--algo",
                default="auto",
                choices=["auto", "brute", "partition", "matching", "search-tree"],
            )

    add_instance_flags(sub.add_parser("solve"), with_algo=True)
    add_instance_flags(sub.add_parser("oracle"), with_algo=False)

    p_check = sub.add_parser("check")
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--layer", type=int, required=True)
    p_check.add_argument("--property", required=True)

    p_kern = sub.add_parser("kernelize")
    p_kern.add_argument("--input", required=True)
    p_kern.add_argument("--property", required=True)
    p_kern.add_argument("--k", type=int, required=True)
    p_kern.add_argument("--ell", type=int, required=True)
    p_kern.add_argument("-o", "--output", required=True)

    p_gen = sub.add_parser("generate")
    p_gen.add_argument("--from", dest="source_mode", required=True, choices=["clique", "biclique"])
    p_gen.add_argument("--target", required=True)
    p_gen.add_argument("--h", type=int, required=True)
    p_gen.add_argument("--c", type=int)
    p_gen.add_argument("--per-color", type=int, default=1)
    p_gen.add_argument("--edge-prob", type=float, default=0.5)
    p_gen.add_argument("--plant", default="no", choices=["yes", "no"])
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("-o", "--output", required=True)
    return parser


def _load_graph(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_mlg(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except MlgParseError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _load_property(text: str) -> PropertySpec:
    try:
        return parse_property(text)
    except (ValueError, OSError) as exc:
        raise CliError(f"bad property {text!r}: {exc}") from exc


def _solve_with_algo(inst: Instance, algo: str) -> Answer:
    kind = inst.pi.kind
    if inst.k > inst.graph.n:
        return Answer.no()
    if algo == "auto":
        if kind in COMPLEMENT_HEREDITARY_KINDS:
            return complement_hereditary_solve(inst)
        if kind in PARTITIONABLE_KINDS:
            return partition_solve(inst)
        if kind == "matching" and inst.ell == 2:
            return matching_ml_solve(inst)
        if kind == "forbidden":
            return search_tree_solve(inst)
        return brute_force_solve(inst)
    if algo == "brute":
        return brute_force_solve(inst)
    if algo == "partition":
        if kind not in PARTITIONABLE_KINDS:
            raise CliError(f"partition algorithm does not support property {kind!r}")
        return partition_solve(inst)
    if algo == "matching":
        if kind != "matching":
            raise CliError("matching algorithm requires the matching property")
        if inst.ell != 2:
            raise CliError("matching algorithm requires exactly 2 selected layers")
        return matching_ml_solve(inst)
    if algo == "search-tree":
        if kind != "forbidden":
            raise CliError("search-tree algorithm requires a forbidden:<file> property")
        return search_tree_solve(inst)
    raise CliError(f"unknown algorithm {algo!r}")


def _print_answer(answer: Answer, out) -> int:
    if not answer.decision:
        print("NO", file=out)
        return 1
    print("YES", file=out)
    print("X: " + " ".join(map(str, answer.witness_vertices)), file=out)
    print("layers: " + " ".join(map(str, answer.witness_layers)), file=out)
    return 0


def _cmd_solve(args, out) -> int:
    G = _load_graph(args.input)
    pi = _load_property(args.property)
    try:
        inst = Instance(G, pi, args.k, args.ell)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    algo = getattr(args, "algo", None) or "brute"
    answer = _solve_with_algo(inst, algo)
    return _print_answer(answer, out)


def _cmd_check(args, out) -> int:
    G = _load_graph(args.input)
    pi = _load_property(args.property)
    if not 1 <= args.layer <= G.t:
        raise CliError(f"layer {args.layer} out of range 1..{G.t}")
    if check(G.layer(args.layer), pi):
        print("YES", file=out)
        return 0
    print("NO", file=out)
    return 1


def _cmd_kernelize(args, out) -> int:
    G = _load_graph(args.input)
    pi = _load_property(args.property)
    if pi.kind != "forbidden":
        raise CliError("kernelize requires a forbidden:<file> property")
    try:
        inst = Instance(G, pi, args.k, args.ell)
        system = sunflower_kernelize(reduce_to_2chs(inst))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_hs(system))
    print(
        f"kernel: |B|={len(system.B)} |W|={len(system.W)} "
        f"|F|={len(system.family)} b={system.b} w={system.w}",
        file=out,
    )
    return 0


def _cmd_generate(args, out) -> int:
    pi = _load_property(args.target)
    if args.c is not None:
        if pi.c is None:
            raise CliError(f"target {args.target!r} takes no --c parameter")
        if pi.c != args.c:
            raise CliError(f"--c {args.c} disagrees with target {args.target!r}")
    plant = args.plant == "yes"
    mode = args.source_mode
    try:
        source = gen_colored_source(
            args.h, args.per_color, args.edge_prob, plant, args.seed, mode
        )
        if mode == "clique":
            if pi.kind == "matching":
                inst = mcc_to_matching(source, args.h)
            elif pi.kind == "c-factor":
                inst = mcc_to_cfactor(source, args.h, pi.c)
            else:
                raise CliError(f"clique sources cannot target property {pi.kind!r}")
            truth = has_multicolored_clique(source)
        elif pi.kind == "hamiltonian":
            inst = mcb_to_hamiltonian(source, args.h)
            truth = has_multicolored_biclique(source)
        else:
            inst = biclique_to_piml(source.base, args.h, pi)
            truth = has_biclique_subgraph(source.base, args.h)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    comments = [
        f"c generated from {mode} source: h {args.h} per-color {args.per_color} "
        f"edge-prob {args.edge_prob} plant {args.plant}",
        f"c property {inst.pi.describe()} k {inst.k} ell {inst.ell}",
        f"c ground-truth: {'yes' if truth else 'no'} source-seed {args.seed}",
    ]
    if source.planted is not None:
        comments.append("c planted: " + " ".join(map(str, source.planted)))
    body = serialize_mlg(inst.graph)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(comments) + "\n" + body)
    print(f"wrote {args.output} (k={inst.k} ell={inst.ell})", file=out)
    return 0


def cli_main(argv: list[str], out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        if args.command == "solve":
            return _cmd_solve(args, out)
        if args.command == "oracle":
            return _cmd_solve(args, out)
        if args.command == "check":
            return _cmd_check(args, out)
        if args.command == "kernelize":
            return _cmd_kernelize(args, out)
        if args.command == "generate":
            return _cmd_generate(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
