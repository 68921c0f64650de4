"""Command-line front end.

Exit codes: 0 when the property holds or output was produced, 1 when a
property is falsified (the witness is printed first), 2 on usage or input
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import minf, mseq, oplab, polymatrix
from .errors import IsolabError
from .polycore import format_rational, to_rational

EXAMPLE_NAMES = ("jordan:<k>", "root-fail", "power-fail-3inf")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _vec(v) -> str:
    return "(" + ",".join(format_rational(c) for c in v) + ")"


def _vec_json(v) -> str:
    return json.dumps([format_rational(c) for c in v])


def _print_failure(v: mseq.MVerdict) -> None:
    print("FALSIFIED")
    if v.witness is not None:
        print(f"witness: {_vec(v.witness)}")
        print(f"witness-json: {_vec_json(v.witness)}")
    if v.location:
        print(f"location: {v.location}")
    print(f"{'window' if v.maxima else 'shift'}: {v.witness_shift}")
    if v.maxima:
        even, odd = v.maxima
        print(f"even-max: {even} odd-max: {odd}")
    print(f"residual: {v.residual}")


def _verdict(v: mseq.MVerdict) -> int:
    if v.holds:
        print("HOLDS")
        return 0
    _print_failure(v)
    return 1


def resolve_example(name: str):
    """Return (operator, probe vectors) for a named example."""
    if name.startswith("jordan:"):
        try:
            size = int(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad jordan size in {name!r}") from None
        return oplab.jordan_unipotent(size), ()
    if name == "root-fail":
        return oplab.example_root_fail(), ((0, 1),)
    if name == "power-fail-3inf":
        return oplab.example_power_fail_3inf(), ((0, 1, 0, 0),)
    raise UsageError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")


def _load_witnesses(path: str, dim: int) -> List[tuple]:
    data = json.loads(_read(path))
    if not isinstance(data, list) or not data:
        raise UsageError("witness file must hold a JSON array")
    if all(not isinstance(v, list) for v in data):
        data = [data]
    out = []
    for v in data:
        vec = tuple(to_rational(c) for c in v)
        if len(vec) != dim:
            raise UsageError(f"witness {v} has length {len(vec)}, operator has dimension {dim}")
        out.append(vec)
    return out


# -- subcommands ----------------------------------------------------------------

def cmd_check_seq(args) -> int:
    text = _read(args.file)
    if args.binary:
        text = text.strip()
        data = json.loads(text) if text[:1] in '["' else text
        word = data if isinstance(data, str) else "".join(str(b) for b in data)
        return _verdict(minf.is_binary_minf(word, args.m))
    prefix = mseq.loads_prefix(text)
    if args.infty:
        return _verdict(minf.is_minf_sequence(prefix, args.m))
    return _verdict(mseq.is_m_sequence(prefix, args.m))


def cmd_check_op(args) -> int:
    if bool(args.example) == bool(args.operator):
        raise UsageError("give exactly one of --example or --operator")
    if args.example:
        T, probes = resolve_example(args.example)
    else:
        T, probes = oplab.Operator.from_json(_read(args.operator)), ()
    if args.p is not None:
        T = T.with_norm(oplab.NormSpec.p_norm(args.p))
    if args.witness_file:
        witnesses = _load_witnesses(args.witness_file, T.dim)
    else:
        witnesses = oplab.default_witnesses(T.dim, args.count, args.seed, probes)
    mode = "(m,inf)" if args.infty else f"(m,p) p={T.norm.p}"
    print(f"check {mode} m={args.m} stride={args.stride} witnesses={len(witnesses)}")
    if args.infty:
        v = oplab.check_minf_isometry(T, args.m, witnesses, args.horizon, args.stride)
    else:
        if T.norm.kind != "p":
            raise UsageError("operator has a weighted max norm; use --infty or --p")
        v = oplab.check_mp_isometry(T, args.m, witnesses, args.horizon, args.stride)
    return _verdict(v)


def cmd_interp(args) -> int:
    text = _read(args.file)
    if args.grid:
        g = polymatrix.Grid.from_json(text)
        r = polymatrix.interpolate_two_var(g)
        print(f"r(y,x) = {r}")
        print(f"diagonal q(t) = {polymatrix.diagonal_poly(r)}")
        return 0
    prefix = mseq.loads_prefix(text)
    m = args.m if args.m is not None else len(prefix)
    q = mseq.interpolating_poly(prefix, m)
    print(f"q(n) = {q.format('n')}")
    print(f"degree: {q.degree}")
    return 0


def cmd_graph(args) -> int:
    g = minf.build_window_graph(args.m)
    report = minf.graph_analysis(g)
    shown = report.pruned if args.prune else g
    if args.format == "dot":
        sys.stdout.write(shown.to_dot())
    elif args.format == "json":
        print(shown.to_json())
    if args.analyze:
        print("# in-degree-0: " + " ".join(f"P{l}" for l in report.in_degree_zero))
        print("# out-degree-0: " + " ".join(f"P{l}" for l in report.out_degree_zero))
        print(f"# pruned-vertices: {len(report.pruned.vertices)}")
    if args.hamiltonian:
        h = minf.hamiltonian_cycle(shown)
        if h.found:
            print("# hamiltonian: " + " -> ".join(shown.name(i) for i in h.cycle + h.cycle[:1]))
            print(f"# periodic-word: {minf.cycle_word(shown, h.cycle)}")
        else:
            cert = f" certificate P{h.certificate}" if h.certificate is not None else ""
            print(f"# hamiltonian: none{cert}")
    return 0


def cmd_count(args) -> int:
    counted = minf.enumerate_count(args.m, args.bits)
    if not args.predicted:
        print(counted)
        return 0
    predicted = minf.predicted_count(args.m, args.bits)
    status = "MATCH" if counted == predicted else "MISMATCH"
    print(f"{counted} {predicted} {status}")
    return 0 if counted == predicted else 1


def cmd_paths(args) -> int:
    print(minf.path_count(minf.build_window_graph(args.m), args.k))
    return 0


def cmd_example(args) -> int:
    T, probes = resolve_example(args.name)
    print(T.to_json())
    return 0


def cmd_step_check(args) -> int:
    rep = minf.step_power_check(args.m, args.k, args.horizon)
    print(f"step m={rep.m} k={rep.k} target={rep.target}")
    for o in rep.offsets:
        tgt = "holds" if o.at_target else f"fails@{o.at_target.witness_shift}"
        at_m = "holds" if o.at_m else f"fails@{o.at_m.witness_shift}"
        print(f"offset {o.offset}: {o.word} target:{tgt} m:{at_m} tightest:{o.tightest}")
    return _verdict(rep.verdict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isolab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-seq", help="m-sequence or (m,inf)-sequence check")
    p.add_argument("file", help="JSON array of 'num/den' strings, or - for stdin")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--infty", action="store_true")
    p.add_argument("--binary", action="store_true", help="input is a 0/1 word")
    p.set_defaults(func=cmd_check_seq)

    p = sub.add_parser("check-op", help="operator isometry checks on witnesses")
    p.add_argument("--example")
    p.add_argument("--operator", help="operator JSON file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--infty", action="store_true")
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--witness-file")
    p.add_argument("--horizon", type=int)
    p.add_argument("--seed", type=int, default=oplab.DEFAULT_SEED)
    p.add_argument("--count", type=int, default=100, help="random witnesses")
    p.set_defaults(func=cmd_check_op)

    p = sub.add_parser("interp", help="one- or two-variable interpolation")
    p.add_argument("file")
    p.add_argument("--m", type=int, help="fit degree <= m-1 (default: full prefix)")
    p.add_argument("--grid", action="store_true", help="input is a grid JSON object")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("graph", help="window graph emission and analysis")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json", "none"), default="dot")
    p.add_argument("--prune", action="store_true")
    p.add_argument("--analyze", action="store_true")
    p.add_argument("--hamiltonian", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("count", help="count valid binary words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--predicted", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("paths", help="count walks in the window graph")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("example", help="print a named operator as JSON")
    p.add_argument("name", help=", ".join(EXAMPLE_NAMES))
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("step-check", help="powers of the step-sequence operator")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--horizon", type=int)
    p.set_defaults(func=cmd_step_check)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (IsolabError, UsageError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
