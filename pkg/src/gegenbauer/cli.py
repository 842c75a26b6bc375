"""Verification command line: ``eval``, ``compare``, ``match`` and ``regimes``.

Exit codes: 0 ok, 1 budget failure, 2 regime error, 3 numeric failure,
64 usage error.  Numbers are written with 17 significant digits so that CSV
and JSON output round-trip exactly.  Every subcommand accepts
``--config FILE`` holding ``key = value`` lines named after the long flags;
flags given on the command line take precedence.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import asymptotics as asym
from .errors import GegenbauerError, RegimeError
from .exact import ferrers_c_cut, ferrers_d_cut, gegenbauer_c, gegenbauer_d
from .numeric_core import BranchedPoint, Parameters, Side
from .regimes import regime_select

__all__ = [
    "EXIT_OK",
    "EXIT_BUDGET",
    "EXIT_REGIME",
    "EXIT_NUMERIC",
    "EXIT_USAGE",
    "SweepSpec",
    "EvalRecord",
    "evaluate",
    "reference_value",
    "cmd_eval",
    "cmd_compare",
    "cmd_match",
    "cmd_regimes",
    "main",
]

EXIT_OK = 0
EXIT_BUDGET = 1
EXIT_REGIME = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

METHODS = ("exact", "thm1", "thm2", "thm3", "thm4", "auto")


class UsageError(Exception):
    """Malformed or contradictory command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# formatting and parsing helpers


def fmt(x) -> str:
    """17-significant-digit text for a real or complex number."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, complex):
        if x.imag == 0.0:
            return format(x.real, ".17g")
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_number(text: str) -> complex:
    s = str(text).strip().replace(" ", "").replace("i", "j")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_real(text: str) -> float:
    v = parse_number(text)
    if v.imag != 0:
        raise argparse.ArgumentTypeError(f"expected a real number: {text!r}")
    return v.real


def parse_grid(text: str) -> list:
    """Comma list, ``a:b:n`` linear range or ``log:a:b:n`` geometric range."""
    s = str(text).strip()
    try:
        if s.startswith("log:"):
            a, b, n = s[4:].split(":")
            a, b, n = parse_real(a), parse_real(b), int(n)
            if a <= 0 or b <= 0 or n < 1 or a > b:
                raise ValueError
            if n == 1:
                return [a]
            return [a * (b / a) ** (k / (n - 1)) for k in range(n)]
        if ":" in s:
            a, b, n = s.split(":")
            a, b, n = parse_real(a), parse_real(b), int(n)
            if n < 1 or a > b:
                raise ValueError
            if n == 1:
                return [a]
            return [a + (b - a) * k / (n - 1) for k in range(n)]
        vals = [parse_number(t) for t in s.split(",") if t.strip()]
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("grid is empty")
    return [v.real if v.imag == 0 else v for v in vals]


def parse_window(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in str(text).split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}; expected lo:hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window must satisfy lo <= hi")
    return lo, hi


def _kinds(text: str) -> list:
    out = [t.strip().upper() for t in str(text).split(",") if t.strip()]
    if not out or any(k not in ("C", "D") for k in out):
        raise argparse.ArgumentTypeError(f"kind must be C, D or C,D; got {text!r}")
    return out


def _bool(text: str) -> bool:
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            k, v = line.split("=", 1)
            out[k.strip().lstrip("-").replace("_", "-")] = v.strip()
    return out


def _parse(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        try:
            cfg = read_config(known.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        actions = {}
        for act in parser._actions:
            for opt in act.option_strings:
                if opt.startswith("--"):
                    actions[opt[2:]] = act
        defaults = {}
        for key, raw in cfg.items():
            act = actions.get(key)
            if act is None or key == "config":
                raise UsageError(f"unknown config key {key!r}")
            if isinstance(act, argparse._StoreTrueAction):
                defaults[act.dest] = _bool(raw)
                continue
            try:
                val = act.type(raw) if act.type else raw
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
            if act.choices is not None and val not in act.choices:
                raise UsageError(f"config key {key!r}: {val!r} not in {list(act.choices)}")
            defaults[act.dest] = val
        parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, complex):
        return {"re": _jsonable(v.real), "im": _jsonable(v.imag)}
    if isinstance(v, float):
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "as_dict"):
        return _jsonable(v.as_dict())
    if hasattr(v, "value"):
        return str(v.value)
    return str(v)


def _open_out(path):
    if path in (None, "", "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# ---------------------------------------------------------------------------
# evaluation dispatch


@dataclass
class EvalRecord:
    value: complex
    regime: str
    est_rel_error: float
    variables: dict = field(default_factory=dict)


def make_point(z=None, theta=None, side=None) -> BranchedPoint:
    if (z is None) == (theta is None):
        raise UsageError("give exactly one of --z and --theta")
    side = Side.parse(side)
    if theta is not None:
        return BranchedPoint(complex(math.cos(theta), 0.0), side)
    z = complex(z)
    if side is not Side.OFF and z.imag != 0:
        raise UsageError("--side needs a real --z")
    return BranchedPoint(z, side)


def _exact(params: Parameters, p: BranchedPoint, kind: str) -> EvalRecord:
    if kind == "C":
        out = gegenbauer_c(params, p)
    elif p.on_interval and p.side is Side.OFF:
        v = ferrers_d_cut(params, p.z.real)
        return EvalRecord(v, "Exact", 0.0, {"route": "cut"})
    else:
        out = gegenbauer_d(params, p)
    rel = out.est_abs_error / abs(out.value) if out.value else 0.0
    return EvalRecord(out.value, "Exact", float(rel), {"route": out.route, "terms": out.terms_used})


def _asym(method: str, params: Parameters, p: BranchedPoint, kind: str, *, order=1, margin, check) -> EvalRecord:
    kw = {"margin": margin, "check": check}
    cut = p.on_interval and p.side is Side.OFF
    if method == "thm1":
        r = (asym.thm1_c if kind == "C" else asym.thm1_d)(params, p, **kw)
    elif method == "thm2":
        if not cut:
            raise UsageError("thm2 needs a point on (-1, 1) without --side")
        theta = math.acos(p.z.real)
        r = (asym.thm2_c if kind == "C" else asym.thm2_d)(params, theta, **kw)
    elif method == "thm3":
        if kind == "C":
            r = asym.thm3_c(params, p, order=order, **kw)
        elif cut:
            r = asym.thm3_cut(params, p.z.real, "D", **kw)
        else:
            r = asym.thm3_d(params, p, **kw)
    elif method == "thm4":
        if cut:
            r = asym.thm4_cut(params, p.z.real, kind, **kw)
        elif kind == "D":
            r = asym.thm4_d(params, p, **kw)
        else:
            raise UsageError("thm4 gives C only on the cut")
    else:
        raise UsageError(f"unknown method {method!r}")
    return EvalRecord(r.value, str(r.regime), r.est_rel_error, dict(r.variables))


def evaluate(
    method: str,
    params: Parameters,
    p: BranchedPoint,
    kind: str = "C",
    *,
    order: int = 1,
    margin: float = asym.DEFAULT_MARGIN,
    check: bool = True,
) -> EvalRecord:
    """Evaluate C (kind "C") or D (kind "D") with the requested method.

    On (−1, 1) without a side, D means the on-cut second-kind function.
    ``auto`` consults :func:`regime_select` first.
    """
    if method == "auto":
        rep = regime_select(params, p, margin=margin)
        method = "exact" if rep.chosen is asym.Regime.EXACT else rep.chosen.value.lower()
    if method == "exact":
        return _exact(params, p, kind)
    return _asym(method, params, p, kind, order=order, margin=margin, check=check)


def reference_value(params: Parameters, p: BranchedPoint, kind: str) -> complex:
    """Exact value to compare against; on the cut both kinds come from D(x ± i0)."""
    if p.on_interval and p.side is Side.OFF:
        f = ferrers_c_cut if kind == "C" else ferrers_d_cut
        return f(params, p.z.real)
    return _exact(params, p, kind).value


def _regime_report(params, p, margin):
    try:
        return regime_select(params, p, margin=margin).as_dict()
    except RegimeError as exc:
        rep = exc.report
        return rep.as_dict() if hasattr(rep, "as_dict") else rep
    except GegenbauerError as exc:
        return {"error": str(exc)}


# ---------------------------------------------------------------------------
# eval


def _eval_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gegenbauer eval", description="Evaluate C or D at one point.")
    ap.add_argument("--config")
    ap.add_argument("--lambda", dest="lam", type=parse_number, help="degree")
    ap.add_argument("--alpha", type=parse_number, help="order")
    ap.add_argument("--z", type=parse_number)
    ap.add_argument("--theta", type=parse_real, help="evaluate at x = cos(theta)")
    ap.add_argument("--side", choices=("above", "below"))
    ap.add_argument("--method", choices=METHODS, default="auto")
    ap.add_argument("--kind", type=str.upper, choices=("C", "D"), default="C")
    ap.add_argument("--order", type=int, default=1, help="Bessel correction order for thm3 C")
    ap.add_argument("--margin", type=parse_real, default=asym.DEFAULT_MARGIN)
    ap.add_argument("--no-check", action="store_true", help="skip the validity test")
    ap.add_argument("--json", action="store_true")
    return ap


def cmd_eval(argv) -> int:
    """Evaluate one value; print value, regime, est_rel_error and variables."""
    ap = _eval_parser()
    try:
        a = _parse(ap, argv)
        if a.lam is None or a.alpha is None:
            raise UsageError("--lambda and --alpha are required")
        params = Parameters(a.lam, a.alpha)
        p = make_point(a.z, a.theta, a.side)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gegenbauer eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GegenbauerError as exc:
        print(f"gegenbauer eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    doc = {
        "lambda": params.lam,
        "alpha": params.alpha,
        "z": p.z,
        "theta": a.theta,
        "side": p.side.value,
        "method": a.method,
        "kind": a.kind,
        "value": None,
        "regime": None,
        "est_rel_error": None,
        "variables": {},
        "status": "ok",
        "message": "",
        "report": None,
    }
    code = EXIT_OK
    try:
        rec = evaluate(a.method, params, p, a.kind, order=a.order, margin=a.margin, check=not a.no_check)
        doc.update(value=rec.value, regime=rec.regime, est_rel_error=rec.est_rel_error, variables=rec.variables)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gegenbauer eval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegimeError as exc:
        code = EXIT_REGIME
        doc.update(status="regime_error", message=str(exc))
        doc["report"] = {"evaluator": exc.report if not hasattr(exc.report, "as_dict") else exc.report.as_dict(),
                         "selector": _regime_report(params, p, a.margin)}
    except (GegenbauerError, ArithmeticError) as exc:
        code = EXIT_NUMERIC
        doc.update(status="numeric_error", message=f"{type(exc).__name__}: {exc}")

    if a.json:
        print(json.dumps(_jsonable(doc), indent=2, sort_keys=True))
        return code
    if code == EXIT_OK:
        print(f"value_re={fmt(doc['value'].real)}")
        print(f"value_im={fmt(doc['value'].imag)}")
        print(f"regime={doc['regime']}")
        print(f"est_rel_error={fmt(float(doc['est_rel_error']))}")
        for k, v in doc["variables"].items():
            print(f"var.{k}={fmt(v)}")
        return code
    print(f"{doc['status']}: {doc['message']}", file=sys.stderr)
    if doc["report"]:
        print(json.dumps(_jsonable(doc["report"]), indent=2, sort_keys=True), file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# compare


@dataclass
class SweepSpec:
    """Grid definition for :func:`cmd_compare`."""

    lambdas: list
    alphas: list
    points: list  # (label, z or None, theta or None, Z or None)
    method: str = "auto"
    kinds: list = field(default_factory=lambda: ["C"])
    side: str | None = None
    order: int = 1
    margin: float = asym.DEFAULT_MARGIN
    budget_factor: float = 5.0
    fmt: str = "csv"
    output: str | None = None

    def __post_init__(self):
        if not self.lambdas or not self.alphas or not self.points or not self.kinds:
            raise UsageError("every grid must be non-empty")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")

    def tasks(self) -> list:
        out = []
        for alpha in self.alphas:
            for kind in self.kinds:
                for ip, pt in enumerate(self.points):
                    for lam in self.lambdas:
                        out.append((len(out), lam, alpha, kind, ip, pt, self))
        return out


COMPARE_FIELDS = [
    "index",
    "lambda",
    "alpha",
    "kind",
    "z_or_theta",
    "method",
    "regime",
    "asym_value_re",
    "asym_value_im",
    "exact_re",
    "exact_im",
    "rel_error",
    "est_rel_error",
    "budget",
    "regime_ok",
    "status",
]


def _fixed_z_x(method: str, lam, alpha, big_z: float) -> float:
    b = complex(lam) + complex(alpha)
    w = (big_z * big_z / (2.0 * b * b)).real
    return 1.0 - w if method != "thm4" else -1.0 + w


def _compare_row(task) -> dict:
    index, lam, alpha, kind, ip, pt, spec = task
    label, z, theta, big_z = pt
    row = {
        "index": index,
        "lambda": complex(lam),
        "alpha": complex(alpha),
        "kind": kind,
        "z_or_theta": label,
        "method": spec.method,
        "regime": "",
        "asym_value_re": math.nan,
        "asym_value_im": math.nan,
        "exact_re": math.nan,
        "exact_im": math.nan,
        "rel_error": math.nan,
        "est_rel_error": math.nan,
        "budget": math.nan,
        "regime_ok": False,
        "status": "ok",
        "group": ip,
    }
    try:
        params = Parameters(lam, alpha)
        if big_z is not None:
            x = _fixed_z_x(spec.method, lam, alpha, big_z)
            row["z_or_theta"] = x
            p = BranchedPoint(x, Side.parse(spec.side))
        else:
            p = make_point(z, theta, spec.side)
        try:
            rec = evaluate(spec.method, params, p, kind, order=spec.order, margin=spec.margin)
            row["regime_ok"] = True
        except RegimeError:
            if spec.method == "auto":
                raise
            rec = evaluate(spec.method, params, p, kind, order=spec.order, margin=spec.margin, check=False)
            row["status"] = "regime_fail"
        ref = reference_value(params, p, kind)
        row["regime"] = rec.regime
        row["asym_value_re"], row["asym_value_im"] = rec.value.real, rec.value.imag
        row["exact_re"], row["exact_im"] = complex(ref).real, complex(ref).imag
        row["rel_error"] = abs(rec.value - ref) / abs(ref) if ref != 0 else abs(rec.value)
        row["est_rel_error"] = rec.est_rel_error
        row["budget"] = spec.budget_factor * rec.est_rel_error if rec.regime != "Exact" else 1e-10
        if row["regime_ok"] and not row["rel_error"] <= row["budget"]:
            row["status"] = "over_budget"
    except RegimeError as exc:
        row["status"] = "regime_error"
        row["message"] = str(exc)
    except UsageError as exc:
        row["status"] = "usage_error"
        row["message"] = str(exc)
    except (GegenbauerError, ArithmeticError) as exc:
        row["status"] = "numeric_error"
        row["message"] = f"{type(exc).__name__}: {exc}"
    return row


def doubling_ratios(rows) -> list:
    """e(λ)/e(2λ) for every (α, kind, point) group with a doubled λ on the grid."""
    by = {}
    for r in rows:
        if r["status"] in ("ok", "over_budget") and r["regime_ok"]:
            by[(fmt(r["alpha"]), r["kind"], r["group"], fmt(r["lambda"]))] = r
    out = []
    for (al, kind, grp, lam_s), r in by.items():
        lam2 = fmt(2.0 * r["lambda"])
        r2 = by.get((al, kind, grp, lam2))
        if r2 is None:
            continue
        e1, e2 = r["rel_error"], r2["rel_error"]
        ratio = e1 / e2 if e2 > 0 else math.inf
        out.append({
            "alpha": r["alpha"],
            "kind": kind,
            "z_or_theta": r["z_or_theta"],
            "lambda": r["lambda"],
            "ratio": ratio,
        })
    return out


def summarize(rows, window=None) -> dict:
    errs = [r["rel_error"] for r in rows if r["regime_ok"] and math.isfinite(r["rel_error"])]
    per_lambda = {}
    for r in rows:
        if r["regime_ok"] and math.isfinite(r["rel_error"]):
            per_lambda.setdefault(fmt(r["lambda"]), []).append(r["rel_error"])
    ratios = doubling_ratios(rows)
    if window is not None:
        for q in ratios:
            q["in_window"] = window[0] <= q["ratio"] <= window[1]
    budget_ok = all(r["status"] != "over_budget" for r in rows if r["regime_ok"])
    ratio_ok = window is None or all(q["in_window"] for q in ratios)
    return {
        "rows": len(rows),
        "regime_ok_rows": len(errs),
        "max_rel_error": max(errs) if errs else None,
        "median_rel_error": statistics.median(errs) if errs else None,
        "median_by_lambda": {k: statistics.median(v) for k, v in per_lambda.items()},
        "doubling_ratios": ratios,
        "ratio_window": list(window) if window else None,
        "budget_ok": budget_ok,
        "ratio_ok": ratio_ok,
        "pass": budget_ok and ratio_ok,
    }


def _compare_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gegenbauer compare", description="Asymptotic forms against exact values on a grid.")
    ap.add_argument("--config")
    ap.add_argument("--lambda", dest="lam", type=parse_grid, help="list, a:b:n or log:a:b:n")
    ap.add_argument("--alpha", type=parse_grid)
    ap.add_argument("--z", type=parse_grid)
    ap.add_argument("--theta", type=parse_grid)
    ap.add_argument("--Z", dest="big_z", type=parse_grid, help="fixed Bessel argument; x follows from lambda")
    ap.add_argument("--side", choices=("above", "below"))
    ap.add_argument("--method", choices=METHODS, default="auto")
    ap.add_argument("--kind", type=_kinds, default=["C"])
    ap.add_argument("--order", type=int, default=1)
    ap.add_argument("--margin", type=parse_real, default=asym.DEFAULT_MARGIN)
    ap.add_argument("--budget-factor", type=parse_real, default=5.0)
    ap.add_argument("--ratio-window", type=parse_window)
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    ap.add_argument("--output")
    ap.add_argument("--jobs", type=int, default=1)
    return ap


def _points(a) -> list:
    given = [g for g in (a.z, a.theta, a.big_z) if g is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --z, --theta and --Z")
    if a.z is not None:
        return [(v, v, None, None) for v in a.z]
    if a.theta is not None:
        return [(float(v.real if isinstance(v, complex) else v), None, float(v.real if isinstance(v, complex) else v), None) for v in a.theta]
    return [(None, None, None, float(v.real if isinstance(v, complex) else v)) for v in a.big_z]


def run_compare(spec: SweepSpec, jobs: int = 1, window=None) -> tuple[list, dict]:
    tasks = spec.tasks()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_compare_row, tasks, chunksize=1))
    else:
        rows = [_compare_row(t) for t in tasks]
    return rows, summarize(rows, window)


def write_csv(fh, fields, rows) -> None:
    w = csv.writer(fh, lineterminator="\r\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r.get(k, "")) for k in fields])


def cmd_compare(argv) -> int:
    """Tabulate asymptotic against exact values; exit 1 on any budget failure."""
    ap = _compare_parser()
    try:
        a = _parse(ap, argv)
        if a.lam is None or a.alpha is None:
            raise UsageError("--lambda and --alpha are required")
        if a.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        spec = SweepSpec(
            lambdas=a.lam,
            alphas=a.alpha,
            points=_points(a),
            method=a.method,
            kinds=a.kind,
            side=a.side,
            order=a.order,
            margin=a.margin,
            budget_factor=a.budget_factor,
            fmt=a.fmt,
            output=a.output,
        )
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gegenbauer compare: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rows, summary = run_compare(spec, a.jobs, a.ratio_window)
    fh, close = _open_out(spec.output)
    try:
        if spec.fmt == "csv":
            write_csv(fh, COMPARE_FIELDS, rows)
        else:
            out_rows = [{k: r.get(k) for k in COMPARE_FIELDS} for r in rows]
            fh.write(json.dumps(_jsonable({"rows": out_rows, "summary": summary}), indent=2, sort_keys=True) + "\n")
    finally:
        if close:
            fh.close()
    mx, md = summary["max_rel_error"], summary["median_rel_error"]
    print(
        f"summary: rows={summary['rows']} regime_ok={summary['regime_ok_rows']} "
        f"max_rel_error={fmt(mx) if mx is not None else 'nan'} "
        f"median_rel_error={fmt(md) if md is not None else 'nan'}",
        file=sys.stderr,
    )
    for lam, med in summary["median_by_lambda"].items():
        print(f"summary: lambda={lam} median_rel_error={fmt(med)}", file=sys.stderr)
    for q in summary["doubling_ratios"]:
        tag = "" if "in_window" not in q else (" ok" if q["in_window"] else " OUT")
        print(
            f"ratio: alpha={fmt(q['alpha'])} kind={q['kind']} at={fmt(q['z_or_theta'])} "
            f"lambda={fmt(q['lambda'])} e(l)/e(2l)={fmt(q['ratio'])}{tag}",
            file=sys.stderr,
        )
    print(f"verdict: {'PASS' if summary['pass'] else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if summary["pass"] else EXIT_BUDGET


# ---------------------------------------------------------------------------
# match


def match_report(
    lam: float,
    alpha: float,
    end: str = "plus",
    *,
    points: int = 201,
    c1: float = 8.0,
    c2: float = 0.5,
    budget_factor: float = 10.0,
    normalization: str = "pointwise",
    samples: bool = False,
) -> dict:
    """Compare the trigonometric form against the Bessel form across the overlap.

    θ runs over [c1/λ, c2 λ^{−1/3}] measured from x = 1 (``end="plus"``) or
    from x = −1 (``end="minus"``).  The pointwise discrepancy divides by the
    Bessel-form value; the envelope one divides by the modulus of the Bessel
    (C, D) pair, which does not vanish.  At small λ the window can be empty;
    the report then has no samples and fails.
    """
    if end not in ("plus", "minus"):
        raise UsageError("end must be plus or minus")
    if normalization not in ("pointwise", "envelope"):
        raise UsageError("normalization must be pointwise or envelope")
    params = Parameters(lam, alpha)
    lo, hi = c1 / abs(lam), c2 * abs(lam) ** (-1.0 / 3.0)
    if points < 2:
        raise UsageError("--points must be >= 2")
    empty = not lo < hi
    budget = budget_factor * abs(lam) ** (-2.0 / 3.0)
    bessel = asym.thm3_cut if end == "plus" else asym.thm4_cut
    worst = {"C": (0.0, None), "D": (0.0, None)}
    rows = []
    for k in range(0 if empty else points):
        phi = lo + (hi - lo) * k / (points - 1)
        theta = phi if end == "plus" else math.pi - phi
        x = math.cos(theta)
        trig = {"C": asym.thm2_c(params, theta, check=False).value, "D": asym.thm2_d(params, theta, check=False).value}
        bes = {kd: bessel(params, x, kd, check=False).value for kd in ("C", "D")}
        env = math.hypot(abs(bes["C"]), abs(bes["D"]))
        rec = {"theta": theta}
        for kd in ("C", "D"):
            den = abs(bes[kd]) if normalization == "pointwise" else env
            d = abs(trig[kd] - bes[kd]) / den if den else math.inf
            rec[kd] = d
            if d > worst[kd][0] or worst[kd][1] is None:
                worst[kd] = (d, theta)
        rows.append(rec)
    kinds = {
        kd: {
            "max_discrepancy": None if empty else worst[kd][0],
            "theta_at_max": worst[kd][1],
            "pass": not empty and worst[kd][0] <= budget,
        }
        for kd in ("C", "D")
    }
    doc = {
        "lambda": params.lam,
        "alpha": params.alpha,
        "end": end,
        "normalization": normalization,
        "theta_window": [lo, hi] if end == "plus" else [math.pi - hi, math.pi - lo],
        "points": points,
        "empty_window": empty,
        "budget": budget,
        "kinds": kinds,
        "pass": all(v["pass"] for v in kinds.values()),
    }
    if samples:
        doc["samples"] = rows
    return doc


def _match_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gegenbauer match", description="Trigonometric against Bessel forms in their overlap.")
    ap.add_argument("--config")
    ap.add_argument("--lambda", dest="lam", type=parse_real)
    ap.add_argument("--alpha", type=parse_real)
    ap.add_argument("--end", choices=("plus", "minus"), default="plus")
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--c1", type=parse_real, default=8.0)
    ap.add_argument("--c2", type=parse_real, default=0.5)
    ap.add_argument("--budget-factor", type=parse_real, default=10.0)
    ap.add_argument("--normalization", choices=("pointwise", "envelope"), default="pointwise")
    ap.add_argument("--samples", action="store_true", help="include every sample in the report")
    ap.add_argument("--output")
    return ap


def cmd_match(argv) -> int:
    """Emit a JSON matching report; exit 1 when the budget is exceeded."""
    ap = _match_parser()
    try:
        a = _parse(ap, argv)
        if a.lam is None or a.alpha is None:
            raise UsageError("--lambda and --alpha are required")
        doc = match_report(
            a.lam,
            a.alpha,
            a.end,
            points=a.points,
            c1=a.c1,
            c2=a.c2,
            budget_factor=a.budget_factor,
            normalization=a.normalization,
            samples=a.samples,
        )
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gegenbauer match: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegimeError as exc:
        print(f"regime_error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (GegenbauerError, ArithmeticError) as exc:
        print(f"numeric_error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    fh, close = _open_out(a.output)
    try:
        fh.write(json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n")
    finally:
        if close:
            fh.close()
    for kd, v in doc["kinds"].items():
        print(
            f"{kd}: max_discrepancy={fmt(v['max_discrepancy'])} at theta={fmt(v['theta_at_max'])} "
            f"budget={fmt(doc['budget'])} {'PASS' if v['pass'] else 'FAIL'}",
            file=sys.stderr,
        )
    return EXIT_OK if doc["pass"] else EXIT_BUDGET


# ---------------------------------------------------------------------------
# regimes

REGIME_FIELDS = [
    "x",
    "lambda",
    "alpha",
    "chosen_regime",
    "lambda_floor_ratio",
    "z_condition_plus_ratio",
    "z_condition_minus_ratio",
    "separation_ratio",
]


def regime_rows(lambdas, xs, alpha, margin=asym.DEFAULT_MARGIN) -> list:
    rows = []
    for lam in lambdas:
        params = Parameters(lam, alpha)
        for x in xs:
            p = BranchedPoint(complex(x, 0.0))
            try:
                rep = regime_select(params, p, margin=margin)
            except RegimeError as exc:
                rep = exc.report
            except GegenbauerError:
                rep = None
            row = {"x": float(x), "lambda": complex(lam), "alpha": complex(alpha)}
            if rep is None:
                row["chosen_regime"] = "error"
            else:
                row["chosen_regime"] = "none" if rep.chosen is None else rep.chosen.value
                th = rep.thresholds
                row["lambda_floor_ratio"] = th["lambda_floor"].ratio
                row["z_condition_plus_ratio"] = th["z_condition_plus"].ratio
                row["z_condition_minus_ratio"] = th["z_condition_minus"].ratio
                row["separation_ratio"] = th["separation"].ratio
            rows.append(row)
    return rows


def cmd_regimes(argv) -> int:
    """Write a CSV map of the selected regime over an (x, λ) grid."""
    ap = _Parser(prog="gegenbauer regimes", description="Regime map over x in (-1, 1).")
    ap.add_argument("--config")
    ap.add_argument("--lambda", dest="lam", type=parse_grid)
    ap.add_argument("--alpha", type=parse_number, default=1.0)
    ap.add_argument("--x", type=parse_grid, default=parse_grid("-0.995:0.995:201"))
    ap.add_argument("--margin", type=parse_real, default=asym.DEFAULT_MARGIN)
    ap.add_argument("--output")
    try:
        a = _parse(ap, argv)
        if a.lam is None:
            raise UsageError("--lambda is required")
        xs = [float(v.real if isinstance(v, complex) else v) for v in a.x]
        if any(not -1.0 < x < 1.0 for x in xs):
            raise UsageError("--x values must lie in (-1, 1)")
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"gegenbauer regimes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rows = regime_rows(a.lam, xs, a.alpha, a.margin)
    try:
        fh, close = _open_out(a.output)
        try:
            write_csv(fh, REGIME_FIELDS, rows)
        finally:
            if close:
                fh.close()
    except OSError as exc:
        print(f"gegenbauer regimes: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


# ---------------------------------------------------------------------------

COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "match": cmd_match, "regimes": cmd_regimes}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print("usage: gegenbauer {eval,compare,match,regimes} [options]", file=sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_USAGE
    cmd = COMMANDS.get(argv[0])
    if cmd is None:
        print(f"gegenbauer: unknown command {argv[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return cmd(argv[1:])
    except UsageError as exc:
        print(f"gegenbauer {argv[0]}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
