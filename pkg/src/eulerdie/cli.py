"""
Command line front end.

    eulerdie numbers eulerian 8
    eulerdie verify eq1 --n 5 --k 2
    eulerdie verify peul --poset fig2.json --k 2
    eulerdie poset linext fig1.json
    eulerdie complex hvector fig4.json
    eulerdie complex delta --n 3 --boundary
    eulerdie --seed-corpus fixtures/

Exit status: 0 when everything requested passed, 1 when a verification found
a counterexample, 2 on bad input or an exceeded bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import barred, complexes, compositions, numbers, posets
from ._limits import BoundExceeded, VerificationFailure
from .corpus import write_corpus

FORMATS = ("text", "json", "csv", "dot")


class UsageError(Exception):
    pass


@dataclass
class VerificationReport:
    identity: str
    params: dict
    cases: list = field(default_factory=list)
    first_counterexample: dict | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.first_counterexample is None

    def add(self, params: dict, value, passed: bool, note: str = ""):
        case = {**params, "value": value, "pass": passed}
        if note:
            case["note"] = note
        self.cases.append(case)
        if not passed and self.first_counterexample is None:
            self.first_counterexample = case


def _jsonable(x):
    # big integers travel as decimal strings
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _vec(v) -> str:
    return ",".join(str(x) for x in v)


def _word(pi) -> str:
    return ("" if len(pi) <= 9 else " ").join(map(str, pi))


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_poset(path):
    try:
        return posets.parse_poset(_read_json(path))
    except posets.PosetError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_complex(path):
    try:
        return complexes.complex_from_json(_read_json(path))
    except complexes.ComplexError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_partition(S, path):
    try:
        return complexes.partition_from_json(S, _read_json(path))
    except (complexes.ComplexError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: malformed partition ({exc})") from None


# ---- numbers ----

def render_table(table: numbers.NumberTable, fmt: str) -> str:
    rows = table.row_indices
    if fmt == "json":
        return json.dumps({"kind": table.kind,
                           "rows": [{"n": str(n), "values": _jsonable(table.row(n))} for n in rows]},
                          indent=2) + "\n"
    if fmt == "csv":
        return _csv(["n", "k", "value"], [(n, k, v) for (n, k), v in sorted(table.rows.items())])
    first_k = min(k for _, k in table.rows)
    width = max(len(str(v)) for v in table.rows.values())
    ncols = max(len(table.row(n)) for n in rows)
    nw = max(len(str(rows[-1])), 3)
    lines = ["n\\k".ljust(nw) + " |" + "".join(f" {k:>{width}}" for k in range(first_k, first_k + ncols))]
    for n in rows:
        lines.append(f"{n:<{nw}} |" + "".join(f" {v:>{width}}" for v in table.row(n)))
    return "\n".join(lines) + "\n"


def cmd_numbers(args) -> tuple[str, int]:
    if args.n_max < 0 or args.n_max > 200:
        raise BoundExceeded("n_max must lie in 0..200")
    return render_table(numbers.number_table(args.kind, args.n_max), args.format), 0


# ---- verify ----

def _n_range(args, default_max):
    if args.n is not None:
        return [args.n]
    return range(1, (args.n_max or default_max) + 1)


def _k_range(args, lo, hi):
    if args.k is not None:
        return [args.k]
    top = hi if args.k_max is None else min(hi, args.k_max)
    return range(lo, top + 1)


def _guard(report, params, fn):
    try:
        value, ok, note = fn()
    except VerificationFailure as exc:
        report.add(params, None, False, str(exc))
        return
    report.add(params, value, ok, note)


def run_verify(args) -> VerificationReport:
    ident = args.identity
    report = VerificationReport(ident, {k: v for k, v in vars(args).items()
                                        if k in ("n", "k", "n_max", "k_max", "poset", "complex",
                                                 "partition", "delta", "boundary") and v not in (None, False)})
    t0 = time.perf_counter()
    sums = {"eq1": numbers.eulerian_sum_powers, "eq2": numbers.eulerian_sum_stirling,
            "eq3": numbers.eulerian_sum_stirling_shifted}
    if ident in sums:
        for n in _n_range(args, 8):
            for k in _k_range(args, 0, n - 1):
                _check_nk(n, k)
                value = sums[ident](n, k)
                report.add({"n": n, "k": k}, value, value == numbers.eulerian(n, k))
    elif ident == "worpitzky":
        for n in _n_range(args, 8):
            for k in _k_range(args, 0, 8):
                c = numbers.verify_worpitzky(n, k)
                report.add({"n": n, "k": k}, c.lhs, c.holds)
    elif ident == "ordered-stirling":
        for n in _n_range(args, 8):
            for k in _k_range(args, 1, n):
                c = numbers.verify_ordered_stirling(n, k)
                report.add({"n": n, "k": k}, c.lhs, c.holds)
    elif ident == "die1":
        for n in _n_range(args, 5):
            for k in _k_range(args, 0, 4):
                def run(n=n, k=k):
                    r = barred.verify_die_eq1(n, k)
                    return r.fixed_points, r.ok, f"signed_sum={r.signed_sum}"
                _guard(report, {"n": n, "k": k}, run)
    elif ident == "die2":
        for n in _n_range(args, 6):
            for k in _k_range(args, 0, n - 1):
                _check_nk(n, k)
                def run(n=n, k=k):
                    r = compositions.verify_die_eq2(n, k)
                    return r.fixed_points, r.ok, f"signed_sum={r.signed_sum}"
                _guard(report, {"n": n, "k": k}, run)
    elif ident == "die3":
        S, P = _complex_and_partition(args)
        if P is None:
            report.add({}, None, False, "no partition exists")
        else:
            d = complexes.f_vector(S).d
            for k in _k_range(args, 0, d):
                def run(k=k):
                    r = complexes.verify_die_simplicial(S, P, k)
                    return r.signed_sum, r.ok, f"fixed_points={r.fixed_points}"
                _guard(report, {"k": k}, run)
    elif ident == "peul":
        if not args.poset:
            raise UsageError("verify peul needs --poset FILE")
        P = _load_poset(args.poset)
        for k in _k_range(args, 0, 6):
            def run(k=k):
                r = posets.verify_die_peul(P, k)
                return r.signed_sum, r.ok, f"p_eulerian={r.p_eulerian}"
            _guard(report, {"k": k}, run)
    else:
        raise UsageError(f"unknown identity {ident!r}")
    report.seconds = time.perf_counter() - t0
    return report


def _check_nk(n, k):
    if n < 1 or not 0 <= k < n:
        raise UsageError(f"need 0 <= k < n, got n={n}, k={k}")


def _complex_and_partition(args):
    if args.delta is not None:
        return complexes.delta_n(args.delta, args.boundary)
    if not args.complex:
        raise UsageError("need --complex FILE or --delta N")
    S = _load_complex(args.complex)
    if args.partition:
        return S, _load_partition(S, args.partition)
    try:
        return S, complexes.find_partition(S)
    except complexes.NotPureError as exc:
        raise UsageError(str(exc)) from None


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable({
            "identity": report.identity, "params": report.params, "pass": report.passed,
            "cases": report.cases, "first_counterexample": report.first_counterexample,
            "seconds": round(report.seconds, 6),
        }), indent=2) + "\n"
    keys = [k for k in ("n", "k") if any(k in c for c in report.cases)]
    if fmt == "csv":
        return _csv(["identity", *keys, "value", "pass", "note"],
                    [(report.identity, *(c.get(k, "") for k in keys), c["value"], c["pass"], c.get("note", ""))
                     for c in report.cases])
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"{report.identity}: {verdict} ({len(report.cases)} case{'s' if len(report.cases) != 1 else ''})"]
    for c in report.cases:
        head = " ".join(f"{k}={c[k]}" for k in keys if k in c)
        tail = f" {c['note']}" if c.get("note") else ""
        lines.append(f"  {head} value={c['value']} {'pass' if c['pass'] else 'FAIL'}{tail}".replace("   ", " "))
    if not report.passed:
        lines.append(f"first counterexample: {report.first_counterexample}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> tuple[str, int]:
    report = run_verify(args)
    return render_report(report, args.format), 0 if report.passed else 1


# ---- poset ----

def cmd_poset(args) -> tuple[str, int]:
    P = _load_poset(args.file)
    fmt = args.format
    if args.action == "hasse-dot":
        return posets.hasse_dot(P), 0
    if fmt == "dot":
        raise UsageError("dot output is only available for hasse-dot")
    if args.action == "linext":
        exts = list(posets.linear_extensions(P))
        if fmt == "json":
            return json.dumps({"linear_extensions": [list(p) for p in exts]}) + "\n", 0
        if fmt == "csv":
            return _csv(["linear_extension", "descents"], [(_word(p), numbers.des(p)) for p in exts]), 0
        return "".join(_word(p) + "\n" for p in exts), 0
    if args.action == "p-eulerian":
        ks = [args.k] if args.k is not None else range(P.n)
        vals = [(k, posets.p_eulerian(P, k)) for k in ks]
    elif args.action == "omega":
        if args.k is None:
            raise UsageError("omega needs --k")
        vals = [(args.k, posets.omega(P, args.k))]
    else:
        raise UsageError(f"unknown poset action {args.action!r}")
    if fmt == "json":
        return json.dumps({args.action: {str(k): str(v) for k, v in vals}}) + "\n", 0
    if fmt == "csv":
        return _csv(["k", args.action], vals), 0
    return _vec(v for _, v in vals) + "\n", 0


# ---- complex ----

def cmd_complex(args) -> tuple[str, int]:
    fmt = args.format
    if fmt == "dot" and args.action != "facedot":
        raise UsageError("dot output is only available for facedot")
    if args.action == "delta" or (args.action == "facedot" and args.file is None):
        if args.n is None:
            raise UsageError(f"{args.action} needs --n (or a complex file)")
        S, P = complexes.delta_n(args.n, args.boundary)
        if args.action == "facedot":
            return complexes.face_poset_dot(S, P, complexes.delta_face_name(S, args.n)), 0
        return _render_delta(S, P, args.n, fmt), 0
    if args.file is None:
        raise UsageError(f"{args.action} needs a complex file")
    S = _load_complex(args.file)
    f = complexes.f_vector(S)
    if args.action in ("fvector", "hvector"):
        vec = tuple(f) if args.action == "fvector" else complexes.h_vector(f)
        name = args.action[0]
        if fmt == "json":
            out = {name: _jsonable(list(vec))}
            if name == "h":
                out["euler_characteristic"] = str(complexes.euler_characteristic(f))
            return json.dumps(out) + "\n", 0
        if fmt == "csv":
            return _csv(["i", name], list(enumerate(vec))), 0
        return _vec(vec) + "\n", 0
    if args.action == "partition":
        try:
            P = complexes.find_partition(S)
        except complexes.NotPureError as exc:
            raise UsageError(str(exc)) from None
        if P is None:
            return "not partitionable\n", 1
        return _render_partition(S, P, fmt), 0
    if args.action == "verify-partition":
        if not args.partition:
            raise UsageError("verify-partition needs --partition FILE")
        check = complexes.verify_partition(S, _load_partition(S, args.partition))
        if fmt == "json":
            text = json.dumps(_jsonable({"valid": check.valid, "reason": check.reason,
                                         "census": list(check.census), "h": list(check.h)})) + "\n"
        else:
            text = f"{'valid' if check.valid else 'invalid'}: {check.reason}\ncensus={_vec(check.census)}\nh={_vec(check.h)}\n"
        return text, 0 if check.valid else 1
    if args.action == "barycentric":
        B = complexes.barycentric(S)
        if fmt == "json":
            return json.dumps(complexes.complex_to_json(B)) + "\n", 0
        fb = complexes.f_vector(B)
        return f"f=({_vec(fb)})\nh=({_vec(complexes.h_vector(fb))})\n", 0
    if args.action == "facedot":
        P = None
        if args.partition:
            P = _load_partition(S, args.partition)
        elif complexes.is_pure(S):
            P = complexes.find_partition(S)
        return complexes.face_poset_dot(S, P), 0
    raise UsageError(f"unknown complex action {args.action!r}")


def _render_partition(S, P, fmt):
    if fmt == "json":
        return json.dumps(complexes.partition_to_json(S, P)) + "\n"
    rows = [(" ".join(map(str, S.labels(a))), " ".join(map(str, S.labels(f)))) for a, f in P.blocks]
    if fmt == "csv":
        return _csv(["anchor", "facet"], rows)
    return "".join(f"[{{{a}}}, {{{f}}}]\n" for a, f in rows)


def _render_delta(S, P, n, fmt):
    f = complexes.f_vector(S)
    h = complexes.h_vector(f)
    name = complexes.delta_face_name(S, n)
    ordered = sorted(P.blocks, key=lambda b: name(b[1]))
    blocks = [(name(a), name(fc)) for a, fc in ordered]
    if fmt == "json":
        return json.dumps({"complex": complexes.complex_to_json(S),
                           "partition": complexes.partition_to_json(S, P),
                           "f": _jsonable(list(f)), "h": _jsonable(list(h)),
                           "blocks": [{"anchor": a, "facet": b} for a, b in blocks]}) + "\n"
    if fmt == "csv":
        return _csv(["anchor", "facet", "anchor_size"],
                    [(a, b, am.bit_count()) for (a, b), (am, _) in zip(blocks, ordered)])
    lines = [f"f=({_vec(f)})", f"h=({_vec(h)})", f"blocks={len(blocks)}"]
    lines += [f"  [{a}, {b}]" for a, b in blocks]
    return "\n".join(lines) + "\n"


# ---- entry point ----

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eulerdie", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--seed-corpus", metavar="DIR", help="write the fixture posets and complexes to DIR")
    sub = p.add_subparsers(dest="command")

    def fmt(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")

    sp = sub.add_parser("numbers", help="triangular tables")
    sp.add_argument("kind", choices=("eulerian", "stirling", "binomial"))
    sp.add_argument("n_max", type=int)
    fmt(sp)

    sp = sub.add_parser("verify", help="machine-check an identity over a parameter range")
    sp.add_argument("identity", choices=("eq1", "eq2", "eq3", "worpitzky", "ordered-stirling",
                                         "die1", "die2", "die3", "peul"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--poset")
    sp.add_argument("--complex")
    sp.add_argument("--partition")
    sp.add_argument("--delta", type=int, metavar="N")
    sp.add_argument("--boundary", action="store_true")
    fmt(sp)

    sp = sub.add_parser("poset", help="linear extensions, P-Eulerian numbers, omega, Hasse diagram")
    sp.add_argument("action", choices=("linext", "p-eulerian", "omega", "hasse-dot"))
    sp.add_argument("file")
    sp.add_argument("--k", type=int)
    fmt(sp)

    sp = sub.add_parser("complex", help="f/h-vectors, partitions, subdivisions")
    sp.add_argument("action", choices=("fvector", "hvector", "partition", "verify-partition",
                                       "barycentric", "delta", "facedot"))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--n", type=int)
    sp.add_argument("--boundary", action="store_true")
    sp.add_argument("--partition")
    fmt(sp)
    return p


COMMANDS = {"numbers": cmd_numbers, "verify": cmd_verify, "poset": cmd_poset, "complex": cmd_complex}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed_corpus:
        for path in write_corpus(args.seed_corpus):
            stdout.write(f"{path}\n")
        if args.command is None:
            return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        text, status = COMMANDS[args.command](args)
    except (UsageError, BoundExceeded, ValueError) as exc:
        sys.stderr.write(f"eulerdie: error: {exc}\n")
        return 2
    stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
