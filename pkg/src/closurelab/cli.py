"""Command-line front end: deterministic exact verification reports.

Subcommands: verify-closure, recurrence, spectrum, heisenberg, appendix-b,
plugin-validate.  Reports are JSON with every exact value rendered as a
string; identical configurations produce byte-identical reports (no
timestamps, fixed check ordering).  Exit codes: 0 all checks pass, 1 any
check fails, 2 configuration error.  CLOSURELAB_SEED fixes the random
rational sampler used by the spectrum suite.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .exactalg import ParamPoly, parse_poly, rat, rat_str
from .families import (DeformedFamily, EigenValidationFailed, MultiIndex,
                       ParamSet, SchemaError, DegreeMismatch,
                       builtin_deformed, load_family_plugin)
from .closure import (NoSolution, TableMissing,
                      closure_for_family, compare_reference, conjectured_R,
                      load_reference_tables, reference_expanded,
                      verify_closure_identity)
from .recurrence import (build_X, check_h_symmetry, closed_form_compare,
                         compute_table, leading_coeff_identity,
                         table_formulas_J1I, table_formulas_L1I)
from .spectral import (alpha_values_at_energy, check_alpha_spectrum,
                       pairing_identities, spectral_suite)
from .heisenberg import (LadderContext, check_r0_relation, commutation_check,
                         heisenberg_series_check, ladder_suite)

DEFAULT_PARAMS = {
    "L": {"g": "7/3"},
    "J": {"g": "2", "h": "3"},
    "W": {"a1": "2", "a2": "5/2", "a3": "3", "a4": "7/2"},
    "AW": {"a1": "1/4", "a2": "1/5", "a3": "1/10", "a4": "1/10", "q": "4/9"},
}


class ConfigError(Exception):
    pass


@dataclass
class Report:
    """Deterministic check collection with exact values as strings."""

    command: str
    config: dict
    checks: list = field(default_factory=list)

    def add(self, check_id: str, ok: bool | None, **detail):
        status = "skip" if ok is None else ("pass" if ok else "fail")
        entry = {"id": check_id, "status": status}
        if detail:
            entry["detail"] = {k: v for k, v in sorted(detail.items())}
        self.checks.append(entry)

    def add_all(self, prefix: str, rows: list):
        for row in rows:
            row = dict(row)
            ok = row.pop("ok")
            label = row.pop("check")
            suffix = ",".join(f"{k}={v}" for k, v in sorted(row.items())
                              if k not in ("vacuous",))
            self.add(f"{prefix}/{label}" + (f"[{suffix}]" if suffix else ""), ok)

    def finish(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            counts[c["status"]] += 1
        return {
            "tool": {"name": "closurelab", "version": __version__},
            "command": self.command,
            "config": self.config,
            "checks": self.checks,
            "summary": counts,
        }


def _parse_params(fam: str, items: list[str] | None) -> ParamSet:
    vals = dict(DEFAULT_PARAMS[fam])
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--params entries look like name=p/q, got {item!r}")
        k, v = item.split("=", 1)
        vals[k.strip()] = v.strip()
    try:
        return ParamSet(fam, {k: rat(v) for k, v in vals.items()})
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None


def _validate_ranges(fam: str, params: ParamSet, L: int) -> list[str]:
    """Family validity ranges; violations are warnings in the report."""
    notes = []
    if fam == "J" and not params.a > 2 * L - 1:
        notes.append(f"a={rat_str(params.a)} is not above the ordering bound 2L-1={2*L-1}")
    if fam == "W" and not sum(params.a_list()) > 2 * L:
        notes.append("b1 is not above the ordering bound 2L")
    if fam == "AW":
        b4 = params.derived()["b4"]
        if not b4 < params.q ** (2 * L):
            notes.append("b4 is not below the ordering bound q^(2L)")
    return notes


def _family_instance(args, params: ParamSet) -> DeformedFamily:
    if getattr(args, "plugin", None):
        df = load_family_plugin(args.plugin)
        return df
    return builtin_deformed(args.family, args.D, params)


def _emit(report: Report, args) -> int:
    payload = report.finish()
    text = json.dumps(payload, indent=1, sort_keys=True)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for check in payload["checks"]:
            print(f"{check['status'].upper():5s} {check['id']}")
        s = payload["summary"]
        print(f"-- {s['pass']} pass, {s['fail']} fail, {s['skip']} skip")
    return 1 if payload["summary"]["fail"] else 0


def cmd_verify_closure(args) -> int:
    params = _parse_params(args.family, args.params)
    Y = parse_poly(args.Y) if args.Y else ParamPoly.const(1)
    report = Report("verify-closure", _config_echo(args, params, Y))
    fam = args.family
    if fam in ("W", "AW"):
        L = MultiIndex.parse(args.D).ell + Y.degree("eta") + 1
        for note in _validate_ranges(fam, params, L):
            report.add(f"range/{note}", None)
        report.add_all("spectral", check_alpha_spectrum(fam, L, params,
                                                        range(args.n_max + 1)))
        report.add_all("spectral", pairing_identities(fam, L, params))
        report.add("operator-level", None, notice="plugin required: difference-"
                   "operator closure needs externally supplied family data")
        return _emit(report, args)
    try:
        df = _family_instance(args, params)
    except (SchemaError, DegreeMismatch, EigenValidationFailed, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if args.mode == "symbolic":
        if df.source != "builtin":
            raise ConfigError("symbolic mode reconstructs built-in families only")
        return _verify_closure_symbolic(args, report, df, Y)
    try:
        cd, X = closure_for_family(df, Y)
    except NoSolution as exc:
        report.add("closure/solve", False, error=str(exc))
        return _emit(report, args)
    L = cd.K // 2
    report.add("closure/solve", True, K=cd.K, unique=cd.unique,
               kernel_dim=cd.kernel_dim)
    report.add("closure/degree-bounds", cd.bounds_ok())
    report.add("closure/identity", verify_closure_identity(df.H_tilde, X, cd))
    conj = conjectured_R(df.fam, L, df.params)
    report.add("closure/conjectured-R",
               all(cd.R[i] == conj.R[i] for i in range(cd.K)))
    try:
        cmp = compare_reference(df.fam, df.D.label(), args.Y or "1", cd,
                                _family_bindings(df))
        report.add("closure/reference-table", cmp["ok"])
    except TableMissing:
        report.add("closure/reference-table", None, notice="no stored row")
    for i in range(cd.K):
        report.add(f"closure/value/R{i}", True, value=str(cd.R[i]))
    report.add("closure/value/R-1", True, value=str(cd.R_minus1))
    return _emit(report, args)


SYMBOLIC_NODES = {
    "L": ({"g": [rat(x) for x in
                 ("2", "7/3", "3", "7/2", "4", "9/2", "5", "11/2", "6",
                  "13/2", "7", "15/2")]},
          {"g": [rat("8"), rat("17/2")]}),
    "J": ({"a": [rat(x) for x in ("8", "17/2", "9", "19/2", "10", "21/2",
                                  "11", "23/2", "12")],
           "b": [rat(x) for x in ("-1", "-1/2", "1/2", "1", "3/2", "5/2",
                                  "3", "7/2", "4")]},
          {"a": [rat("25/2"), rat("13")], "b": [rat("-5/2"), rat("9/2")]}),
}


def _verify_closure_symbolic(args, report: Report, df: DeformedFamily,
                             Y: ParamPoly) -> int:
    """Reconstruct the closure data symbolically in the family parameters
    (exact solves at rational samples + interpolation + fresh-sample
    certification) and compare against the stored reference row."""
    from .closure import reconstruct_closure
    from .families import builtin_deformed as make_builtin

    fam, D_label = df.fam, df.D.label()
    K = 2 * (df.ell + Y.degree("eta") + 1)
    nodes, extra = SYMBOLIC_NODES[fam]

    def solve_at(binding):
        if fam == "L":
            ps = ParamSet("L", {"g": binding["g"]})
        else:
            ps = ParamSet("J", {"g": (binding["a"] + binding["b"]) / 2,
                                "h": (binding["a"] - binding["b"]) / 2})
        inst = make_builtin(fam, D_label, ps)
        cd, _ = closure_for_family(inst, Y)
        return cd

    bounds = {"g": K // 2} if fam == "L" else {"a": K, "b": K - 1}
    cd = reconstruct_closure(solve_at, fam, K, nodes, bounds, extra)
    report.add("closure/solve", True, K=cd.K, unique=cd.unique,
               kernel_dim=cd.kernel_dim, mode="symbolic")
    report.add("closure/degree-bounds", cd.bounds_ok())
    conj = conjectured_R(fam, K // 2, None if fam in ("L", "J") else df.params)
    report.add("closure/conjectured-R",
               all(cd.R[i] == conj.R[i] for i in range(cd.K)))
    try:
        cmp = compare_reference(fam, D_label, args.Y or "1", cd)
        report.add("closure/reference-table", cmp["ok"])
    except TableMissing:
        report.add("closure/reference-table", None, notice="no stored row")
    for i in range(cd.K):
        report.add(f"closure/value/R{i}", True, value=str(cd.R[i]))
    report.add("closure/value/R-1", True, value=str(cd.R_minus1))
    return _emit(report, args)


def _family_bindings(df: DeformedFamily) -> dict:
    if df.fam == "L":
        return {"g": df.params.g}
    if df.fam == "J":
        return {"a": df.params.a, "b": df.params.b}
    return {}


def cmd_recurrence(args) -> int:
    params = _parse_params(args.family, args.params)
    Y = parse_poly(args.Y) if args.Y else ParamPoly.const(1)
    report = Report("recurrence", _config_echo(args, params, Y))
    if args.family in ("W", "AW"):
        raise ConfigError("recurrence tables need polynomial family data (L or J)")
    df = _family_instance(args, params)
    X = build_X(df.xi, Y)
    from .recurrence import NonzeroRemainder

    try:
        table = compute_table(df, X, range(args.n_max + 1), Y)
    except NonzeroRemainder as exc:
        report.add("recurrence/span", False, error=str(exc))
        return _emit(report, args)
    report.add("recurrence/span", True, L=table.L)
    report.add_all("recurrence", leading_coeff_identity(df, table))
    report.add_all("recurrence", check_h_symmetry(df, table))
    if df.source == "builtin" and Y == ParamPoly.const(1):
        formulas = None
        if df.fam == "L" and df.D.label() == "1I":
            formulas = table_formulas_L1I(df.params)
        elif df.fam == "J" and df.D.label() == "1I":
            formulas = table_formulas_J1I(df.params)
        if formulas:
            report.add_all("recurrence", closed_form_compare(table, formulas))
    for n in sorted(table.rows):
        row = {f"k={k}": rat_str(v) if isinstance(v, Fraction) else str(v)
               for k, v in sorted(table.rows[n].items())}
        report.add(f"recurrence/row[n={n}]", True, **row)
    return _emit(report, args)


def cmd_spectrum(args) -> int:
    params = _parse_params(args.family, args.params)
    Y = parse_poly(args.Y) if args.Y else ParamPoly.const(1)
    L = MultiIndex.parse(args.D).ell + Y.degree("eta") + 1
    report = Report("spectrum", _config_echo(args, params, Y))
    for note in _validate_ranges(args.family, params, L):
        report.add(f"range/{note}", None)
    report.add_all("spectrum", check_alpha_spectrum(args.family, L, params,
                                                    range(args.n_max + 1)))
    report.add_all("spectrum", pairing_identities(args.family, L, params))
    # companion-matrix suite at the first few energy points
    conj = conjectured_R(args.family, L, params)
    for n in range(min(args.n_max, 4) + 1):
        alphas = alpha_values_at_energy(args.family, L, params, n)
        R_vals = [Ri.subs({"z": _energy(args.family, params, n)}).constant_value()
                  for Ri in conj.R]
        suite = spectral_suite(R_vals, alphas)
        report.add(f"spectrum/companion[n={n}]",
                   suite["recursion_ok"] and suite["eigen_ok"] and suite["initial_ok"])
    # randomized distinct-rational spectra
    seed = int(os.environ.get("CLOSURELAB_SEED", "0"))
    rng = random.Random(seed)
    ok_all = True
    for trial in range(args.random_spectra):
        K = rng.choice([2, 3, 4, 5, 6, 7, 8])
        alphas = _random_distinct_rationals(rng, K)
        R = _elementary_R_values(alphas)
        suite = spectral_suite(R, alphas)
        if not (suite["recursion_ok"] and suite["eigen_ok"] and suite["initial_ok"]):
            ok_all = False
    report.add(f"spectrum/random-spectra[count={args.random_spectra},seed={seed}]",
               ok_all)
    return _emit(report, args)


def _energy(fam, params, n):
    from .families import energy

    return energy(params, n)


def _random_distinct_rationals(rng, K):
    vals = set()
    while len(vals) < K:
        num = rng.randint(-60, 60)
        den = rng.randint(1, 6)
        v = Fraction(num, den)
        if v != 0:
            vals.add(v)
    return sorted(vals, reverse=True)


def _elementary_R_values(alphas):
    K = len(alphas)
    coeffs = [Fraction(1)]
    for a in alphas:
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] -= c * a
        coeffs = new
    return [-coeffs[i] for i in range(K)]


def cmd_heisenberg(args) -> int:
    params = _parse_params(args.family, args.params)
    Y = parse_poly(args.Y) if args.Y else ParamPoly.const(1)
    report = Report("heisenberg", _config_echo(args, params, Y))
    if args.family in ("W", "AW"):
        raise ConfigError("the ladder suite needs polynomial family data (L or J)")
    df = _family_instance(args, params)
    cd, X = closure_for_family(df, Y)
    n_top = min(args.n_max, 6)
    table = compute_table(df, X, range(n_top + cd.K // 2 + 1))
    ctx = LadderContext(df, cd, X, table)
    report.add_all("heisenberg", ladder_suite(ctx, range(n_top + 1)))
    report.add_all("heisenberg", check_r0_relation(ctx, range(n_top + 1)))
    report.add_all("heisenberg", commutation_check(ctx, range(n_top + 1)))
    for n in range(min(n_top, 3) + 1):
        report.add_all("heisenberg", heisenberg_series_check(ctx, n, cd.K + 2))
    return _emit(report, args)


def cmd_appendix_b(args) -> int:
    report = Report("appendix-b", {"filter": args.filter or "",
                                   "plugin": args.plugin or ""})
    tables = load_reference_tables()
    plugin_df = load_family_plugin(args.plugin) if args.plugin else None
    keys = sorted(k for k in tables if k != "_meta")
    for fam, D, Ylabel in keys:
        if args.filter and not f"{fam}/{D}".startswith(args.filter):
            continue
        label = f"appendix-b/{fam}/{D}/Y={Ylabel}"
        entry = tables[(fam, D, Ylabel)]
        if fam in ("W", "AW"):
            report.add(label, None, notice="reference-only: difference-operator "
                       "closure is plugin-gated")
            continue
        D_idx = MultiIndex.parse(D)
        derivable = all(d == 1 for d, _ in D_idx.entries) and D_idx.M <= 1
        df = None
        if derivable:
            params = _parse_params(fam, args.params)
            df = builtin_deformed(fam, D, params)
        elif (plugin_df is not None and plugin_df.fam == fam
              and plugin_df.D.label() == D):
            df = plugin_df
        if df is None:
            report.add(label, None, notice="plugin required")
            continue
        Y = parse_poly(Ylabel) if Ylabel != "1" else ParamPoly.const(1)
        cd, X = closure_for_family(df, Y)
        expected = reference_expanded(entry).subs(_family_bindings(df))
        report.add(label, cd.R_minus1 == expected)
    meta = tables["_meta"].get("extension_targets", {})
    for fam, by_K in sorted(meta.items()):
        for K, labels in sorted(by_K.items()):
            report.add(f"appendix-b/{fam}/K={K}/extension-targets", None,
                       targets=", ".join(labels), notice="no printed values")
    return _emit(report, args)


def cmd_plugin_validate(args) -> int:
    report = Report("plugin-validate", {"plugin": args.plugin})
    try:
        df = load_family_plugin(args.plugin)
    except (SchemaError, DegreeMismatch, EigenValidationFailed) as exc:
        report.add("plugin/load", False, error=str(exc))
        return _emit(report, args)
    report.add("plugin/load", True, family=df.fam, D=df.D.label(),
               ell=df.ell, source=df.source)
    report.add("plugin/degrees", True)
    report.add("plugin/eigen-equations", True, validated_n=5)
    report.add("plugin/norm-ratio-symmetry", True)
    return _emit(report, args)


def _config_echo(args, params: ParamSet, Y: ParamPoly) -> dict:
    return {
        "family": args.family,
        "D": getattr(args, "D", ""),
        "Y": str(Y),
        "params": {k: rat_str(v) for k, v in sorted(params.values.items())},
        "n_max": getattr(args, "n_max", None),
        "mode": getattr(args, "mode", "sampled"),
        "plugin": getattr(args, "plugin", None) or "",
    }


def _add_common(p, with_family=True):
    if with_family:
        p.add_argument("--family", choices=["L", "J", "W", "AW"], default="L")
        p.add_argument("--D", default="1I",
                       help="multi-index label, e.g. '1I' or '1I,2I' ('' = classical)")
        p.add_argument("--Y", default="",
                       help="polynomial in eta, e.g. '1', 'eta', '1/2*eta^2-3*eta'")
        p.add_argument("--params", nargs="*", metavar="k=v",
                       help="exact parameter overrides, e.g. g=7/3")
        p.add_argument("--mode", choices=["symbolic", "sampled"], default="sampled")
    p.add_argument("--n-max", dest="n_max", type=int, default=8)
    p.add_argument("--plugin", default=None, help="path to a family plugin JSON")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print the JSON report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="closurelab",
        description="Exact verification of recurrence, closure-relation and "
                    "ladder-operator identities for deformed orthogonal "
                    "polynomial systems.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("verify-closure", help="solve and verify the closure relation")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_closure)
    p = sub.add_parser("recurrence", help="expand X*P(n) and check the tables")
    _add_common(p)
    p.set_defaults(fn=cmd_recurrence)
    p = sub.add_parser("spectrum", help="eigenvalue lists, pairing and matrix suite")
    _add_common(p)
    p.add_argument("--random-spectra", type=int, default=50)
    p.set_defaults(fn=cmd_spectrum)
    p = sub.add_parser("heisenberg", help="ladder-operator and time-power checks")
    _add_common(p)
    p.set_defaults(fn=cmd_heisenberg)
    p = sub.add_parser("appendix-b", help="diff derivable reference rows")
    p.add_argument("--filter", default="", help="prefix filter like 'L/2I'")
    p.add_argument("--params", nargs="*", metavar="k=v")
    _add_common(p, with_family=False)
    p.set_defaults(fn=cmd_appendix_b)
    p = sub.add_parser("plugin-validate", help="validate a family plugin file")
    _add_common(p, with_family=False)
    p.set_defaults(fn=cmd_plugin_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
