"""``ncdecomp`` command line.

Exit codes: 0 success, 1 property violated or no decomposition exists,
2 input/parse error, 3 irreducible instance (diagnostic).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .decomposition import (DecompositionError, OracleBudgetExceeded, OrientedDecomposition,
                            oracle_decide, verify)
from .discharging import RULESETS, audit, rational
from .embedding import EmbeddingError, summary
from .formats import (FormatError, parse_decomposition, parse_rotation_graph,
                      serialize_decomposition, serialize_rotation_graph)
from .generators import KINDS, generate
from .reducer import THEOREM_PARAMS, Diagnostic, decompose_by_reduction
from .structure import classify

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_DIAGNOSTIC = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> tuple[str, str]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return data.decode("utf-8"), hashlib.sha256(data).hexdigest()
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None


def _load_graph(path: str):
    text, digest = _read(path)
    try:
        return parse_rotation_graph(text), digest
    except (FormatError, EmbeddingError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _report(command: str, digest: str | list[str], result: dict) -> str:
    payload = {"v": 1, "command": command, "version": __version__,
               "input_sha256": digest, "result": result}
    return json.dumps(payload, indent=2, sort_keys=True)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_analyze(args) -> int:
    G, digest = _load_graph(args.path)
    rep = classify(G)
    s = summary(G)
    if args.json:
        result = rep.to_json()
        result.update(vertices=s.v_count, edges=s.e_count, faces=s.f_count)
        print(_report("analyze", digest, result))
        return EXIT_OK
    print(f"V={s.v_count} E={s.e_count} F={s.f_count} chi={s.characteristic}")
    print("cycles present: " + " ".join(f"{k}:{'yes' if b else 'no'}" for k, b in rep.has_cycle.items()))
    print("chord cycles: " + " ".join(f"{k}:{'yes' if b else 'no'}" for k, b in rep.has_chord_cycle.items()))
    print(f"adjacent 4-cycles: {'yes' if rep.has_adjacent_4cycles else 'no'}")
    print(f"class G conditions: {', '.join(rep.class_G) or 'none'}")
    print(f"class H pairs: {', '.join(f'{i},{j}' for i, j in rep.class_H) or 'none'}")
    print("n_i per vertex (face degree:count), longest 3-face run:")
    for v, counts in rep.face_counts.items():
        row = " ".join(f"{i}:{c}" for i, c in sorted(counts.items()))
        print(f"  {v}: {row}  run={rep.triangle_runs[v]}")
    return EXIT_OK


def _dump_trace(trace: list, target: str) -> None:
    text = json.dumps(trace, indent=2, sort_keys=True)
    if target == "-":
        sys.stderr.write(text + "\n")
    else:
        Path(target).write_text(text + "\n")


def cmd_decompose(args) -> int:
    G, digest = _load_graph(args.path)
    method = args.method
    trace: list = []
    if method == "oracle":
        d = 3 if args.d is None else args.d
        h = 1 if args.h is None else args.h
        try:
            dec = oracle_decide(G, d, h)
        except OracleBudgetExceeded as exc:
            raise InputError(f"{exc}; raise DECOMP_ORACLE_EDGE_BUDGET to allow it") from None
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if dec is None:
            print(f"no ({d},{h})-decomposition exists", file=sys.stderr)
            return EXIT_VIOLATION
    else:
        theorem = method.split(":", 1)[1]
        td, th = THEOREM_PARAMS[theorem]
        d = td if args.d is None else args.d
        h = th if args.h is None else args.h
        if d < td or h < th:
            raise InputError(f"{method} produces ({td},{th})-decompositions; --d/--h too small")
        try:
            res = decompose_by_reduction(G, theorem, trace=trace)
        except OracleBudgetExceeded as exc:
            raise InputError(str(exc)) from None
        if args.trace:
            _dump_trace(trace, args.trace)
        if isinstance(res, Diagnostic):
            print(f"diagnostic: {res.reason}", file=sys.stderr)
            if args.json:
                print(_report("decompose", digest, {"diagnostic": res.to_json()}))
            return EXIT_DIAGNOSTIC
        dec = OrientedDecomposition(d, h, res.h_edges, res.arcs)
    bad = verify(G, dec)
    if bad is not None:  # pragma: no cover - internal consistency guard
        print(f"internal error: produced decomposition fails verification: {bad}", file=sys.stderr)
        return EXIT_VIOLATION
    text = serialize_decomposition(dec)
    if args.json:
        if args.out:
            _write(text, args.out)
        result = {"d": d, "h": h, "method": method, "decomposition": text,
                  "h_edges": [list(e) for e in dec.h_edges], "arcs": [list(a) for a in dec.arcs]}
        if method != "oracle":
            result["trace"] = trace
        print(_report("decompose", digest, result))
    else:
        _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    G, gdigest = _load_graph(args.graph)
    text, ddigest = _read(args.decomp)
    try:
        dec = parse_decomposition(text)
    except FormatError as exc:
        raise InputError(f"{args.decomp}: {exc}") from None
    try:
        bad = verify(G, dec)
        message = None if bad is None else str(bad)
        kind = None if bad is None else bad.kind
    except DecompositionError as exc:
        message, kind = str(exc), "non-edge"
    if args.json:
        print(_report("verify", [gdigest, ddigest],
                      {"ok": message is None, "violation": kind, "detail": message}))
    else:
        print("ok" if message is None else f"violation: {message}")
    return EXIT_OK if message is None else EXIT_VIOLATION


def cmd_discharge(args) -> int:
    G, digest = _load_graph(args.path)
    rep = audit(G, args.ruleset)
    if args.json:
        print(_report("discharge", digest, rep.to_json()))
    else:
        print(f"ruleset {rep.ruleset}: chi={rep.characteristic} "
              f"initial={rational(rep.total_initial)} final={rational(rep.total_final)} "
              f"conservation={'ok' if rep.conservation else 'FAILED'}")
        print(f"negative elements: {len(rep.negatives)}")
        for n in rep.negatives:
            ex = n.explained_by
            why = f"{ex['lemma']} {ex['vertex_map']}" if ex else "unexplained"
            print(f"  {n.element[0]}{n.element[1]}: {rational(n.final)} ({why})")
        print(f"positive element exists: {'yes' if rep.positive_exists else 'no'}")
        if rep.first_config:
            print(f"first reducible configuration: {rep.first_config['lemma']} "
                  f"{rep.first_config['vertex_map']}")
    return EXIT_OK if rep.conservation else EXIT_VIOLATION


def cmd_gen(args) -> int:
    try:
        G = generate(args.kind, *args.params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(serialize_rotation_graph(G), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncdecomp",
                                description="Forest-plus-matching decompositions of embedded graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="cycle structure, class membership, face statistics")
    a.add_argument("path")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decompose", help="find a (d,h)-decomposition")
    d.add_argument("path")
    d.add_argument("--d", type=int)
    d.add_argument("--h", type=int)
    d.add_argument("--method", choices=["oracle", "reduce:T0", "reduce:T1"], default="oracle")
    d.add_argument("--trace", nargs="?", const="-", metavar="FILE",
                   help="write the reduction trace as JSON (stderr when FILE is omitted)")
    d.add_argument("--out", metavar="FILE")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a DECOMP file against a graph")
    v.add_argument("graph")
    v.add_argument("decomp")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("discharge", help="run a discharging rule set and audit it")
    c.add_argument("path")
    c.add_argument("--ruleset", choices=sorted(RULESETS), required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_discharge)

    g = sub.add_parser("gen", help="generate a ROTSYS instance")
    g.add_argument("kind", choices=sorted(KINDS))
    g.add_argument("params", type=int, nargs="*")
    g.add_argument("--out", metavar="FILE")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
