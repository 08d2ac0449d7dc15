"""Command-line interface: ``causecov <command> ...``.

Exit status: 0 on success (or a satisfied specification), 1 when a
specification does not hold, 2 on usage, parse or format errors.
"""
from __future__ import annotations

import argparse
import fnmatch
import json
import sys
from pathlib import Path

from . import causal, cliquebench, coverage, ctl, kripke, product
from .circuit import io as circuit_io
from .circuit import resp as circuit_resp
from .circuit.readonce import resp_readonce
from .errors import CausecovError, SpecNotSatisfiedError

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(CausecovError):
    pass


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _structured(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines)


def _specs(arg: str) -> list[ctl.Formula]:
    """A formula, or ``@path`` for a file with one formula per line (``#`` comments)."""
    if arg.startswith("@"):
        lines = Path(arg[1:]).read_text().splitlines()
        texts = [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
        if not texts:
            raise UsageError(f"{arg[1:]}: no formulas")
    else:
        texts = [arg]
    return [ctl.parse(t) for t in texts]


def _single_spec(arg: str) -> ctl.Formula:
    specs = _specs(arg)
    if len(specs) != 1:
        raise UsageError("this command takes exactly one formula")
    return specs[0]


def _fmt_set(states) -> str:
    return "{" + ", ".join(sorted(states, key=kripke.natural_key)) + "}"


# --- commands -------------------------------------------------------------------


def cmd_check(args) -> int:
    K = kripke.load(args.model)
    verdicts = [(phi, ctl.satisfies(K, phi)) for phi in _specs(args.spec)]
    if args.format == "structured":
        _emit(_structured([{"spec": ctl.to_string(p), "satisfied": ok} for p, ok in verdicts]))
    else:
        for phi, ok in verdicts:
            _emit(f"{'satisfied' if ok else 'NOT satisfied'}: {ctl.to_string(phi)}")
    return EXIT_OK if all(ok for _, ok in verdicts) else EXIT_FALSE


def cmd_coverage(args) -> int:
    K = kripke.load(args.model)
    phi = _single_spec(args.spec)
    coverage.parse_engine(args.engine)
    if args.mode == "cover-prime":
        states = coverage.covered_prime_states(K, phi, args.q)
        transformed, fresh = coverage.trans_q(phi, args.q, coverage.fresh_name(args.q, K.atoms | ctl.atoms(phi)))
        if args.format == "structured":
            _emit(_structured({
                "spec": ctl.to_string(phi),
                "proposition": args.q,
                "transformed": ctl.to_string(transformed),
                "fresh": fresh,
                "covered_prime": sorted(states, key=kripke.natural_key),
            }))
        else:
            _emit(f"trans: {ctl.to_string(transformed)}")
            _emit(f"{args.q}-covered' states: {_fmt_set(states)}")
        return EXIT_OK

    report = coverage.coverage_report(K, phi, args.q, args.engine, jobs=args.jobs)
    if args.format == "structured":
        doc = report.as_dict()
        doc["mode"] = args.mode
        _emit(_structured(doc))
        return EXIT_OK
    if args.mode == "covered":
        _emit(f"{args.q}-covered states: {_fmt_set(report.covered())}")
    elif args.mode == "cause":
        _emit(f"cause states: {_fmt_set(report.causes())}")
        open_ = [r.state for r in report.records if r.cause is None]
        if open_:
            _emit(f"undetermined within bound: {_fmt_set(open_)}")
    else:
        rows = []
        for r in report.records:
            res = r.responsibility
            witness = getattr(res, "witness", None)
            rows.append([
                r.state,
                "yes" if r.covered else "no",
                "?" if r.cause is None else ("yes" if r.cause else "no"),
                str(res),
                "-" if witness is None else _fmt_set(witness),
            ])
        _emit(f"spec: {report.spec}   q: {report.proposition}   engine: {report.engine}")
        _emit(_table(["state", "covered", "cause", "dr", "witness"], rows))
    return EXIT_OK


def _mutable(patterns, circuit):
    if not patterns:
        return None
    names = [v for v in circuit.inputs if any(fnmatch.fnmatchcase(v, p) for p in patterns)]
    if not names:
        raise UsageError(f"--mutable {patterns} matches no input")
    return names


def cmd_circuit_resp(args) -> int:
    circuit = circuit_io.load_circuit(args.circuit)
    f = circuit_io.load_assignment(args.assignment)
    circuit.check_variable(args.var)
    mutable = _mutable(args.mutable, circuit)
    algo = args.algo
    queries = None
    if algo == "brute":
        res = circuit_resp.resp_brute(circuit, args.var, args.gate, f, mutable)
    elif algo.startswith("bounded:"):
        _, k = coverage.parse_engine(algo)
        res = circuit_resp.resp_bounded(circuit, args.var, f, mutable, k, args.gate)
    elif algo in ("binsearch", "readonce"):
        if mutable is not None or args.gate is not None:
            raise UsageError(f"{algo} works on the output with every input mutable")
        if algo == "binsearch":
            res, queries = circuit_resp.resp_binsearch(circuit, args.var, f)
        else:
            res = resp_readonce(circuit, args.var, f)
    else:
        raise UsageError(f"unknown algorithm {algo!r}; expected brute, bounded:k, binsearch or readonce")

    witness = getattr(res, "witness", None)
    if args.format == "structured":
        doc = {"variable": args.var, "algo": algo, "dr": str(res),
               "witness": None if witness is None else sorted(witness)}
        if queries is not None:
            doc["oracle_queries"] = queries
        _emit(_structured(doc))
    else:
        _emit(f"dr({args.var}) = {res}")
        if witness is not None:
            _emit(f"contingency: {_fmt_set(witness)}")
        if queries is not None:
            _emit(f"oracle queries: {queries}")
    return EXIT_OK


def cmd_compile(args) -> int:
    K = kripke.load(args.model)
    pc = product.compile(K, _single_spec(args.spec))
    text = circuit_io.dump_circuit(pc.circuit)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.assignment:
        Path(args.assignment).write_text(json.dumps(pc.assignment(K), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_clique(args) -> int:
    if args.random is not None:
        n, p = args.random
        G = cliquebench.random_graph(int(n), float(p), args.seed)
    elif args.graph is not None:
        G = cliquebench.load_graph(args.graph)
    else:
        raise UsageError("give a graph file or --random N P")
    via_resp = cliquebench.max_clique_via_resp(G)
    brute = cliquebench.brute_max_clique(G)
    agree = via_resp == brute
    if args.format == "structured":
        _emit(_structured({"graph": cliquebench.graph_to_dict(G), "responsibility": via_resp,
                           "brute_force": brute, "agree": agree}))
    else:
        _emit(f"ω = {via_resp} (responsibility) / {brute} (brute force): {'AGREE' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_FALSE


def _bindings(text: str) -> dict[str, int]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep or value.strip() not in ("0", "1"):
            raise UsageError(f"expected NAME=0 or NAME=1, got {part!r}")
        out[name.strip()] = int(value)
    return out


def cmd_causal(args) -> int:
    M = causal.load_model(args.model)
    u = _bindings(args.context)
    event = _bindings(args.event)
    if len(event) != 1:
        raise UsageError("event must be a single NAME=0/1")
    (X, x), = event.items()
    verdict = causal.is_cause(M, u, X, x, args.phi, args.variant)
    res = causal.responsibility(M, u, X, x, args.phi, args.variant)
    if isinstance(verdict, causal.NotACause):
        is_c, witness, reason = False, None, verdict.reason
    else:
        is_c, witness, reason = verdict[0], verdict[1], None
    if args.format == "structured":
        doc = {"event": f"{X}={x}", "phi": args.phi, "variant": args.variant, "cause": is_c,
               "dr": str(res), "reason": reason}
        if witness is not None:
            W, setting = witness
            doc["witness"] = {"W": sorted(W), "setting": dict(sorted(setting.items()))}
        _emit(_structured(doc))
    else:
        _emit(f"{X}={x} is {'a cause' if is_c else 'not a cause'} of {args.phi}" + (f" ({reason})" if reason else ""))
        if witness is not None:
            W, setting = witness
            _emit("witness: " + (", ".join(f"{k}={v}" for k, v in sorted(setting.items())) or "W = {}"))
        _emit(f"dr = {res}")
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="causecov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "structured"), default="table")

    p = sub.add_parser("check", help="model check a CTL formula at the initial state")
    p.add_argument("model", help="Kripke structure (JSON)")
    p.add_argument("spec", help="CTL formula, or @file with one formula per line")
    fmt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("coverage", help="coverage, causes and responsibility of states")
    p.add_argument("model")
    p.add_argument("spec")
    p.add_argument("-q", "--prop", dest="q", required=True, help="proposition to flip")
    p.add_argument("--mode", choices=("covered", "cause", "resp", "cover-prime"), default="resp")
    p.add_argument("--engine", default="circuit", help="direct | circuit | bounded:k")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for the per-state sweep")
    fmt(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("circuit-resp", help="degree of responsibility in a circuit")
    p.add_argument("circuit", help="circuit (JSON)")
    p.add_argument("assignment", help="assignment (JSON object name -> 0/1)")
    p.add_argument("var", help="input variable X")
    p.add_argument("--algo", "--engine", dest="algo", default="brute",
                   help="brute | bounded:k | binsearch | readonce")
    p.add_argument("--gate", help="gate w (default: the output)")
    p.add_argument("--mutable", nargs="+", metavar="PATTERN",
                   help="only inputs matching these glob patterns may be flipped")
    fmt(p)
    p.set_defaults(func=cmd_circuit_resp)

    p = sub.add_parser("compile", help="compile structure x formula into a circuit")
    p.add_argument("model")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="circuit file (default: stdout)")
    p.add_argument("--assignment", help="also write the leaf assignment here")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("clique", help="max clique via responsibility vs brute force")
    p.add_argument("graph", nargs="?", help="graph (JSON)")
    p.add_argument("--random", nargs=2, metavar=("N", "P"), help="random G(N, P) instead of a file")
    p.add_argument("--seed", type=int, default=0)
    fmt(p)
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("causal", help="actual cause and responsibility in a causal model")
    p.add_argument("model", help="causal model (JSON)")
    p.add_argument("event", help="candidate cause, NAME=0/1")
    p.add_argument("phi", help="Boolean formula over endogenous variables")
    p.add_argument("--context", default="", help="exogenous values, e.g. U1=1,U2=0")
    p.add_argument("--variant", choices=causal.VARIANTS, default=causal.DEF2)
    fmt(p)
    p.set_defaults(func=cmd_causal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecNotSatisfiedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (CausecovError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
