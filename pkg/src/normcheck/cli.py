"""Command-line front end.

Subcommands: check (decision with exit code), info (component
structure and spectral data), matrices (construction internals),
weights (exact block frequencies), select (prefix selection by a DFA),
freq (empirical comparison on a generated normal prefix).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .automata import (
    Automaton,
    Transducer,
    input_automaton,
    parse_file,
    restrict_automaton,
    scc_decompose,
    trim,
    trim_automaton,
)
from .decision import block_frequencies, component_analysis, preserves_normality
from .empirical import compare_frequencies
from .errors import FormatError, NormcheckError
from .linalg import QMatrix
from .selection import prefix_select
from .spectral import adjacency_matrix, perron_vectors, radius_is_one
from .weighted import dump_weighted

__all__ = ["main"]


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_transducer(path: str) -> Transducer:
    machine = parse_file(_read(path))
    if not isinstance(machine, Transducer):
        raise FormatError(f"{path} holds an automaton; this command needs a transducer")
    return machine


def _load_automaton(path: str) -> Automaton:
    machine = parse_file(_read(path))
    if not isinstance(machine, Automaton):
        raise FormatError(f"{path} holds a transducer; this command needs an automaton")
    return machine


def _vec(values) -> str:
    return " ".join(str(v) for v in values)


def _print_matrix(m: QMatrix, indent: str = "  ") -> None:
    cells = [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    widths = [
        max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)
    ]
    for row in cells:
        print(indent + "  ".join(c.rjust(w) for c, w in zip(row, widths)))


def _cmd_check(args: argparse.Namespace) -> int:
    verdict = preserves_normality(_load_transducer(args.file))
    if args.format == "machine":
        print(f"preserves = {int(verdict.preserves)}")
        print(f"empty_normal_domain = {int(verdict.empty_normal_domain)}")
        print(f"components = {len(verdict.scc_reports)}")
        for i, r in enumerate(verdict.scc_reports):
            key = f"component.{i}"
            print(f"{key}.states = {' '.join(r.states)}")
            print(f"{key}.contains_final = {int(r.contains_final)}")
            print(f"{key}.radius_one = {int(r.radius_one)}")
            print(f"{key}.analyzed = {int(r.analyzed)}")
            if r.analyzed:
                print(f"{key}.preserves = {int(r.preserves)}")
            if r.no_infinite_output:
                print(f"{key}.no_infinite_output = 1")
            if r.witness is not None:
                print(f"{key}.witness = {r.witness.word}")
                print(f"{key}.weight = {r.witness.weight}")
                print(f"{key}.expected = {r.witness.expected}")
    else:
        for i, r in enumerate(verdict.scc_reports):
            states = ", ".join(r.states)
            if not r.analyzed:
                why = (
                    "no final state"
                    if not r.contains_final
                    else "spectral radius below one"
                )
                print(f"component {i} ({states}): skipped, {why}")
            elif r.no_infinite_output:
                print(f"component {i} ({states}): output stays finite")
            elif r.preserves:
                print(f"component {i} ({states}): output block frequencies are uniform")
            else:
                w = r.witness
                print(
                    f"component {i} ({states}): freq({w.word}) = {w.weight},"
                    f" uniform value is {w.expected}"
                )
        if verdict.empty_normal_domain:
            print("no component is visited on normal input; vacuously preserved")
        print(
            "preserves normality"
            if verdict.preserves
            else "does not preserve normality"
        )
    return 0 if verdict.preserves else 1


def _radius_text(m: QMatrix) -> str:
    if radius_is_one(m):
        return "1"
    if m.rows == 1:
        return str(abs(m[0, 0]))
    return "below 1"


def _cmd_info(args: argparse.Namespace) -> int:
    machine = parse_file(_read(args.file))
    if isinstance(machine, Transducer):
        trimmed = trim(machine)
        a = input_automaton(trimmed) if trimmed.states else None
    else:
        at = trim_automaton(machine)
        a = at if at.states else None
    if a is None:
        print("empty after trim")
        return 0
    for i, comp in enumerate(scc_decompose(a).components):
        sub = restrict_automaton(a, comp.states)
        m = adjacency_matrix(sub)
        radius_one = radius_is_one(m)
        print(f"component {i}: states {', '.join(comp.states)}")
        print(f"  contains final: {'yes' if comp.contains_final else 'no'}")
        print("  adjacency:")
        _print_matrix(m, "    ")
        print(f"  spectral radius: {_radius_text(m)}")
        if comp.contains_final and radius_one:
            pd = perron_vectors(m)
            print(f"  alpha = {_vec(pd.alpha)}")
            print(f"  pi = {_vec(pd.pi)}")
            print("  markov:")
            _print_matrix(pd.p, "    ")
    return 0


def _cmd_matrices(args: argparse.Namespace) -> int:
    analysis = component_analysis(_load_transducer(args.file), scc=args.scc)
    nt = analysis.normalized
    cm = analysis.matrices
    print(f"states: {' '.join(nt.states)}")
    print("E:")
    _print_matrix(cm.e)
    print("E*:")
    _print_matrix(cm.e_star)
    for b in nt.output_alphabet:
        print(f"D_{b}:")
        _print_matrix(cm.d[b])
    print("P_hat:")
    _print_matrix(cm.p_hat)
    print(f"pi_hat: {_vec(cm.pi_hat)}")
    print()
    print(dump_weighted(analysis.automaton))
    return 0


def _cmd_weights(args: argparse.Namespace) -> int:
    t = _load_transducer(args.file)
    if args.dump:
        print(dump_weighted(component_analysis(t, scc=args.scc).automaton))
        return 0
    freqs = block_frequencies(t, scc=args.scc, max_len=args.max_len)
    for word, value in freqs.items():
        if word == "" and args.max_len > 0:
            continue
        print(f"{word or 'ε'} = {value}")
    return 0


def _cmd_select(args: argparse.Namespace) -> int:
    print(prefix_select(args.word, _load_automaton(args.file), mode=args.mode))
    return 0


def _cmd_freq(args: argparse.Namespace) -> int:
    report = compare_frequencies(
        _load_transducer(args.file),
        source=args.source,
        prefix_len=args.length,
        max_block=args.max_block,
        scc=args.scc,
    )
    if args.report == "csv":
        print("block,count,empirical,predicted,deviation")
        for b in report.blocks:
            print(
                f"{b.block},{b.count},{float(b.empirical):.6f},"
                f"{b.predicted},{b.deviation:.6f}"
            )
    else:
        print(
            f"source {report.source}: {report.input_length} input symbols,"
            f" {report.output_length} output symbols"
        )
        for b in report.blocks:
            print(
                f"  {b.block:<{report.max_block}}  count {b.count:>10}"
                f"  empirical {float(b.empirical):.6f}"
                f"  predicted {b.predicted}"
                f"  deviation {b.deviation:.6f}"
            )
    if args.tolerance is not None:
        worst = max(b.deviation for b in report.blocks)
        if worst > args.tolerance:
            print(
                f"worst deviation {worst:.6f} exceeds tolerance {args.tolerance}",
                file=sys.stderr,
            )
            return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normcheck",
        description="Decide and explore normality preservation by transducers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a transducer preserves normality")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("info", help="show components, adjacency and spectral data")
    p.add_argument("file")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("matrices", help="show the construction matrices of a component")
    p.add_argument("file")
    p.add_argument("--scc", type=int, default=None)
    p.set_defaults(func=_cmd_matrices)

    p = sub.add_parser("weights", help="exact limiting block frequencies")
    p.add_argument("file")
    p.add_argument("--scc", type=int, default=None)
    p.add_argument("--max-len", type=int, default=1)
    p.add_argument("--dump", action="store_true", help="print the weighted automaton")
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("select", help="apply a DFA selection rule to a word")
    p.add_argument("--mode", choices=["oblivious", "nonoblivious"], default="oblivious")
    p.add_argument("file")
    p.add_argument("word")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("freq", help="empirical block frequencies on a normal prefix")
    p.add_argument("file")
    p.add_argument("--source", default="champernowne:2")
    p.add_argument("--len", dest="length", type=int, default=10**6)
    p.add_argument("--max-block", type=int, default=2)
    p.add_argument("--report", choices=["text", "csv"], default="text")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--scc", type=int, default=None)
    p.set_defaults(func=_cmd_freq)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NormcheckError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
