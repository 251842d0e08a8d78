"""Command-line front end.

    liminal necklace --d 3 --n inf --series 7
    liminal table --which lmoment --n-max 5
    liminal verify --suite all
    liminal chars --d 3 --kind sigma --format json
    liminal moment --stat sign --d 4 --n 1 --expected
    liminal census --q 2 --n 2 --d 3

Exit codes: 0 success, 1 computation error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import characters as ch
from . import counting as ct
from . import ffq
from .errors import BadStatistic, DimensionMismatch, LiminalError
from .exact import PolyQ, RatFuncQ, SeriesQ, format_rational, series_at_zero
from .partitions import ClassFunction, Partition, partitions_of
from .report import Report, to_jsonable

SUITES = ("reciprocity", "congruence", "zeta", "characters", "dimensions", "oracle", "carlitz", "all")
ORACLE_CASES = ((2, 2, 4), (3, 2, 3), (2, 3, 3), (4, 1, 4), (5, 1, 3))


def parse_n(s: str):
    if s.strip().lower() in ("inf", "infinity", "oo"):
        return ct.INF
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'inf', got {s!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("number of variables must be >= 1")
    return n


def positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def nonneg_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _n_label(n) -> str:
    return "inf" if ct.is_inf(n) else str(n)


def _json(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False) + "\n"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _coeff_rows(obj) -> list[list[str]]:
    if isinstance(obj, PolyQ):
        return [["exponent", "coefficient"]] + [[str(i), format_rational(c)] for i, c in enumerate(obj.coeffs)]
    if isinstance(obj, SeriesQ):
        return [["exponent", "coefficient"]] + [
            [str(obj.exponent(i)), format_rational(c)] for i, c in enumerate(obj.coeffs)
        ]
    rows = [["part", "exponent", "coefficient"]]
    for part, p in (("num", obj.num), ("den", obj.den)):
        rows += [[part, str(i), format_rational(c)] for i, c in enumerate(p.coeffs)]
    return rows


# -- commands ---------------------------------------------------------------------------

def cmd_necklace(args) -> tuple[str, int]:
    n = args.n
    value = ct.liminal_irr(args.d) if ct.is_inf(n) else ct.irr_count(args.d, n)
    series = None
    if args.series is not None:
        order = args.series if args.series >= 0 else (16 if ct.is_inf(n) else n + 7)
        series = series_at_zero(value, order)
    if args.format == "json":
        out = {"d": args.d, "n": _n_label(n), "value": value}
        if series is not None:
            out["series"] = series
        return _json(out), 0
    if args.format == "csv":
        return _csv(_coeff_rows(series if series is not None else value)), 0
    return f"{series if series is not None else value}\n", 0


def _m3n_rows(n_max: int, terms: int):
    for n in range(1, n_max + 1):
        p = ct.irr_count(3, n)
        yield n, p.truncate(terms), p.degree > terms


def _lmoment_rows(n_max: int):
    scale = PolyQ((1, -1)) ** 3
    linear = ch.linear_stat(3)
    for n in range(1, n_max + 1):
        yield n, ch.first_moment(linear, 3, n, squarefree=True) * scale


def cmd_table(args) -> tuple[str, int]:
    if args.which == "m3n":
        rows = list(_m3n_rows(args.n_max, args.terms))
        if args.format == "json":
            return _json({"which": "m3n", "terms": args.terms, "rows": [
                {"n": n, "coeffs": p, "truncated": more} for n, p, more in rows]}), 0
        if args.format == "csv":
            head = ["n"] + [f"q^{i}" for i in range(args.terms + 1)]
            body = [[str(n)] + [format_rational(p.coefficient(i)) for i in range(args.terms + 1)] for n, p, _ in rows]
            return _csv([head] + body), 0
        lines = ["n | M_{3,n}(q)"]
        lines += [f"{n} | {p}{' + ...' if more else ''}" for n, p, more in rows]
        return "\n".join(lines) + "\n", 0
    rows = list(_lmoment_rows(args.n_max))
    if args.format == "json":
        return _json({"which": "lmoment", "rows": [{"n": n, "coeffs": p} for n, p in rows]}), 0
    if args.format == "csv":
        width = max(len(p.coeffs) for _, p in rows)
        head = ["n"] + [f"q^{i}" for i in range(width)]
        body = [[str(n)] + [format_rational(p.coefficient(i)) for i in range(width)] for n, p in rows]
        return _csv([head] + body), 0
    lines = ["n | (1-q)^3 * first moment of L on squarefree degree-3 polynomials"]
    lines += [f"{n} | {p}" for n, p in rows]
    return "\n".join(lines) + "\n", 0


def run_suite(suite: str, args) -> Report:
    report = Report()
    if suite in ("reciprocity", "all"):
        report.extend(ct.verify_liminal_reciprocity(args.d_max or 7))
    if suite in ("congruence", "all"):
        report.extend(ct.verify_congruence(args.d_max or 6, args.n_max or 6))
    if suite in ("zeta", "all"):
        ns = [args.n] if args.n is not None else [1, 2, 3, ct.INF]
        for n in ns:
            report.extend(ct.verify_zeta_identities(n, args.t_order))
    if suite in ("characters", "all"):
        report.extend(ch.verify_character_identities(args.d_max or 6))
    if suite in ("dimensions", "all"):
        report.extend(ch.verify_dimension_identities(args.d_max or 8))
    if suite in ("carlitz", "all"):
        report.extend(ct.carlitz_degree_check(args.d_max or 5, args.n_max or 4))
    if suite in ("oracle", "all"):
        if args.q is not None:
            if args.n is None or ct.is_inf(args.n):
                raise LiminalError("the oracle suite needs a finite --n together with --q")
            cases = [(args.q, args.n, args.d_max or 3)]
        else:
            cases = ORACLE_CASES
        for q, n, d in cases:
            report.extend(ffq.verify_against_closed_forms(ffq.make_field(q), n, d))
    return report


def cmd_verify(args) -> tuple[str, int]:
    report = run_suite(args.suite, args)
    code = 0 if report.ok else 1
    if args.format == "json":
        return _json(report), code
    if args.format == "csv":
        rows = [["identity", "params", "pass"]]
        rows += [[e.identity, json.dumps(to_jsonable(e.params), sort_keys=True), str(e.passed).lower()] for e in report]
        return _csv(rows), code
    lines = []
    for e in report:
        params = " ".join(f"{k}={_n_label(v) if k == 'n' else v}" for k, v in e.params.items())
        lines.append(f"{'PASS' if e.passed else 'FAIL'}  {e.identity}  [{params}]")
    lines.append(f"{len(report)} checks, {len(report.failures)} failed")
    return "\n".join(lines) + "\n", code


def cmd_chars(args) -> tuple[str, int]:
    fam = ch.family(args.d, args.kind)
    if args.format == "json":
        return _json(fam.to_json()), 0
    lams = partitions_of(args.d)
    if args.format == "csv":
        rows = [["lambda"] + [f"k={k}" for k in range(args.d)]]
        rows += [[str(lam)] + [str(v) for v in fam.row(lam)] for lam in lams]
        return _csv(rows), 0
    width = max(len(str(lam)) for lam in lams + (Partition((1,)),))
    width = max(width, len("lambda"))
    lines = [f"{args.kind}_{args.d}^k", "lambda".ljust(width) + " | " + " ".join(f"k={k}".rjust(6) for k in range(args.d))]
    for lam in lams:
        lines.append(str(lam).ljust(width) + " | " + " ".join(str(v).rjust(6) for v in fam.row(lam)))
    return "\n".join(lines) + "\n", 0


def resolve_statistic(choice: str, d: int) -> ch.Statistic:
    builtin = {"one": ch.one_stat, "linear": ch.linear_stat, "sign": ch.sign_stat, "ell": ch.ell_stat}
    if choice in builtin:
        return builtin[choice](d)
    if choice.startswith("indicator:"):
        try:
            lam = Partition.parse(choice.split(":", 1)[1])
        except ValueError as exc:
            raise BadStatistic(str(exc))
        if lam.d != d:
            raise BadStatistic(f"{lam} is not a partition of {d}")
        return ch.indicator_stat(lam)
    if choice.startswith("file:"):
        path = Path(choice.split(":", 1)[1])
        try:
            data = json.loads(path.read_text())
            fn = ClassFunction.from_json(d, data)
        except (OSError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DimensionMismatch):
                raise BadStatistic(f"{path}: {exc}")
            raise BadStatistic(f"cannot read statistic from {path}: {exc}")
        return ch.Statistic(path.stem, fn)
    raise BadStatistic(f"unknown statistic {choice!r}")


def cmd_moment(args) -> tuple[str, int]:
    stat = resolve_statistic(args.stat, args.d)
    if args.power != 1:
        stat = stat.power(args.power)
    if args.expected:
        value = ch.expected_value(stat, args.d, args.n, args.squarefree)
    else:
        value = ch.first_moment(stat, args.d, args.n, args.squarefree)
    if args.format == "json":
        return _json({
            "stat": stat.name, "d": args.d, "n": _n_label(args.n), "squarefree": args.squarefree,
            "expected": args.expected, "value": value,
        }), 0
    if args.format == "csv":
        return _csv(_coeff_rows(value)), 0
    return f"{value}\n", 0


def cmd_census(args) -> tuple[str, int]:
    res = ffq.census(ffq.make_field(args.q), args.n, args.d, args.order)
    if args.format == "json":
        return _json(res.to_json()), 0
    if args.format == "csv":
        rows = [["lambda", "total", "squarefree"]]
        rows += [[str(lam), str(t), str(s)] for lam, (t, s) in res.counts.items()]
        return _csv(rows), 0
    lines = [f"F_{res.q}, n={res.n}, d={res.d}: {res.total} monic, {res.irreducible} irreducible"]
    lines += [f"{str(lam):>12}  total={t}  squarefree={s}" for lam, (t, s) in res.counts.items()]
    return "\n".join(lines) + "\n", 0


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="liminal", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("necklace", parents=[common], help="irreducible counts M_{d,n}(q) and their limit")
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--n", type=parse_n, required=True, help="number of variables, or 'inf'")
    p.add_argument("--series", type=nonneg_int, nargs="?", const=-1, default=None,
                   help="print the expansion at q = 0 through q^N (default N = n + 7)")
    p.set_defaults(func=cmd_necklace)

    p = sub.add_parser("table", parents=[common], help="reproduce the M_{3,n} or linear-moment tables")
    p.add_argument("--which", choices=("m3n", "lmoment"), required=True)
    p.add_argument("--n-max", type=positive_int, default=7)
    p.add_argument("--terms", type=nonneg_int, default=7, help="m3n: highest power of q shown")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run identity verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--d-max", type=positive_int)
    p.add_argument("--n-max", type=positive_int)
    p.add_argument("--t-order", type=positive_int, default=10)
    p.add_argument("--n", type=parse_n, help="zeta: a single n; oracle: variable count")
    p.add_argument("--q", type=positive_int, help="oracle: field size")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chars", parents=[common], help="character tables psi, phi, sigma")
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--kind", choices=[k.value for k in ch.Kind], required=True)
    p.set_defaults(func=cmd_chars)

    p = sub.add_parser("moment", parents=[common], help="first moments and expected values of statistics")
    p.add_argument("--stat", required=True, help="one|linear|sign|ell|indicator:PARTS|file:PATH")
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--n", type=parse_n, required=True)
    p.add_argument("--squarefree", action="store_true")
    p.add_argument("--expected", action="store_true", help="divide by the matching total count")
    p.add_argument("--power", type=positive_int, default=1, help="k-th moment (first moment of P^k)")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("census", parents=[common], help="brute-force census over a small finite field")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--d", type=positive_int, required=True)
    p.add_argument("--order", choices=(ffq.GRLEX, ffq.LEX), default=ffq.GRLEX)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (LiminalError, ArithmeticError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
