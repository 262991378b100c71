"""Generalized closure relations: nested commutators, the exact linear solve
for the right-coefficient polynomials, identity verification, conjectured
coefficients from the eigenvalue lists, and comparison against the shipped
reference tables.

The order-K relation expresses the K-fold commutator of H with X as a
right-linear combination of the lower commutators with polynomial
coefficients R_i(H) plus an inhomogeneous R_-1(H).  Unknown coefficients
enter linearly, so one exact linear solve per parameter point settles
existence and uniqueness; parameter dependence is then reconstructed by
interpolation at rational samples and certified at fresh samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Mapping, Sequence

from .exactalg import (ParamPoly, Rat, RationalFunc, SampleMismatch,
                       interpolate_grid, poly_gcd_univar, poly_div_exact,
                       rat, rat_str, solve_linear_exact)
from .families import DeformedFamily, ParamSet
from .opalg import CoefficientBlowup, DiffOp
from .spectral import alpha_conjecture, elementary_symmetric_R


class NoSolution(Exception):
    """The closure relation of the requested order has no solution
    (falsifies the expected structure for this instance)."""


class TableMissing(Exception):
    """No stored reference row for this (family, D) pair."""


def degree_bounds(fam: str, K: int) -> dict[int, int]:
    """Degree bounds for R_i (i = -1 stands for the inhomogeneous term):
    halved for the differential families, full for the difference families."""
    if fam in ("L", "J"):
        bounds = {i: (K - i) // 2 for i in range(K)}
        bounds[-1] = K // 2
    else:
        bounds = {i: K - i for i in range(K)}
        bounds[-1] = K
    return bounds


def ad_powers(H: DiffOp, X: ParamPoly, count: int,
              max_terms: int | None = None) -> list[DiffOp]:
    """[X, [H,X], [H,[H,X]], ...] with count+1 entries, exact.

    Entry 0 is the multiplication operator by X.  ``max_terms`` is a size
    guard; exceeding it raises CoefficientBlowup (switch to smaller samples).
    """
    ads = [DiffOp.mul_by(X, H.var, H.factors)]
    for _ in range(count):
        nxt = H.compose(ads[-1], max_terms) - ads[-1].compose(H, max_terms)
        if max_terms is not None and nxt.term_count() > max_terms:
            raise CoefficientBlowup(
                f"commutator grew past {max_terms} terms")
        ads.append(nxt)
    return ads


@dataclass
class ClosureData:
    """Order-K closure data: R_0..R_{K-1} and the inhomogeneous R_-1.

    ``provenance`` records whether the coefficients were solved from the
    operator identity or built from the conjectured eigenvalue list (which
    leaves R_-1 undetermined).  ``kernel_dim`` logs solver under-determination.
    """

    K: int
    R: list[ParamPoly]
    R_minus1: ParamPoly | None
    provenance: str
    fam: str = ""
    kernel_dim: int = 0
    unique: bool = True

    def bounds_ok(self) -> bool:
        bounds = degree_bounds(self.fam or "L", self.K)
        for i, Ri in enumerate(self.R):
            if Ri.degree("z") > bounds[i]:
                return False
        if self.R_minus1 is not None and self.R_minus1.degree("z") > bounds[-1]:
            return False
        return True

    def bind(self, bindings: Mapping[str, Rat]) -> "ClosureData":
        """Substitute parameter symbols, keeping z."""
        return ClosureData(
            self.K,
            [Ri.subs(bindings) for Ri in self.R],
            None if self.R_minus1 is None else self.R_minus1.subs(bindings),
            self.provenance, self.fam, self.kernel_dim, self.unique)

    def coefficient(self, i: int, j: int) -> Rat:
        poly = self.R_minus1 if i == -1 else self.R[i]
        c = poly.coeffs_in("z").get(j)
        return c.constant_value() if c is not None else Fraction(0)


def _unknown_layout(fam: str, K: int) -> list[tuple[int, int]]:
    bounds = degree_bounds(fam, K)
    layout = []
    for i in range(K):
        layout.extend((i, j) for j in range(bounds[i] + 1))
    layout.extend((-1, j) for j in range(bounds[-1] + 1))
    return layout


def _poly_lcm(dens: Iterable[ParamPoly], var: str) -> ParamPoly:
    acc = ParamPoly.const(1, (var,))
    for d in dens:
        if d.is_constant():
            continue
        g = poly_gcd_univar(acc, d, var)
        extra = poly_div_exact(d, g) if g.degree(var) > 0 else d
        acc = acc * extra
    lead = acc.leading_coeff(var)
    if not lead.is_constant() or lead.constant_value() != 1:
        acc = acc * (1 / lead.constant_value())
    return acc


def solve_closure(ads: Sequence[DiffOp], H: DiffOp, fam: str,
                  conjectured: "ClosureData | None" = None) -> ClosureData:
    """Exact solve of the order-K closure relation at bound parameters.

    Uses coefficient-wise operator equality (the authoritative identity
    check; no sampling).  Returns the solved data; a nontrivial kernel is
    reported via kernel_dim/unique, and when ``conjectured`` is supplied the
    conjectured point is required to lie in the affine solution set.
    Raises NoSolution when the linear system is inconsistent.
    """
    K = len(ads) - 1
    var = H.var
    layout = _unknown_layout(fam, K)
    hcache: dict[int, DiffOp] = {}
    max_j = max(j for _, j in layout)
    for j in range(max_j + 1):
        H.power(j, hcache)
    columns: list[DiffOp] = []
    for i, j in layout:
        base = ads[i] if i >= 0 else DiffOp.identity(var, H.factors)
        columns.append(base.compose(hcache[j]))
    target = ads[K]
    orders = sorted({k for op in columns + [target] for k in op.coeffs})
    rows: list[list[Rat]] = []
    rhs: list[Rat] = []
    zero_rf = RationalFunc(ParamPoly.zero())
    for m in orders:
        coeffs = [op.coeffs.get(m, zero_rf) for op in columns]
        tgt = target.coeffs.get(m, zero_rf)
        den = _poly_lcm([c.den for c in coeffs] + [tgt.den], var)
        cleared = []
        for c in coeffs + [tgt]:
            scale = poly_div_exact(den, c.den)
            assert scale is not None
            cleared.append(c.num * scale)
        degs = [p.degree(var) for p in cleared if not p.is_zero]
        top = max(degs) if degs else -1
        for d in range(top + 1):
            row = []
            for p in cleared[:-1]:
                cd = p.coeffs_in(var).get(d)
                row.append(cd.constant_value() if cd is not None else Fraction(0))
            td = cleared[-1].coeffs_in(var).get(d)
            rows.append(row)
            rhs.append(td.constant_value() if td is not None else Fraction(0))
    sol = solve_linear_exact(rows, rhs)
    if not sol.consistent:
        raise NoSolution(f"order-{K} closure relation has no solution")
    kernel_dim = len(sol.kernel_basis)
    values = {key: sol.solution[idx] for idx, key in enumerate(layout)}
    if kernel_dim and conjectured is not None:
        # require the conjectured point (which leaves the inhomogeneous term
        # free) to lie in the affine solution set
        known = [idx for idx, (i, _) in enumerate(layout) if i >= 0]
        diff = [conjectured.coefficient(layout[idx][0], layout[idx][1])
                - values[layout[idx]] for idx in known]
        fit = solve_linear_exact(
            [[vec[idx] for vec in sol.kernel_basis] for idx in known], diff)
        if not fit.consistent:
            raise NoSolution("conjectured data lies outside the solution set")
    z = ParamPoly.var("z")
    bounds = degree_bounds(fam, K)
    R = [sum((values[(i, j)] * z ** j for j in range(bounds[i] + 1)),
             ParamPoly.zero(("z",))) for i in range(K)]
    Rm1 = sum((values[(-1, j)] * z ** j for j in range(bounds[-1] + 1)),
              ParamPoly.zero(("z",)))
    return ClosureData(K, R, Rm1, "solved", fam,
                       kernel_dim=kernel_dim, unique=kernel_dim == 0)


def verify_closure_identity(H: DiffOp, X: ParamPoly, cd: ClosureData,
                            ads: Sequence[DiffOp] | None = None) -> bool:
    """Exact operator-equality verdict for the order-K relation.

    Coefficient-wise comparison after clearing denominators; a False verdict
    is a report, not an error.  R data must be numeric in z (bind symbolic
    parameters first).
    """
    from .opalg import right_mul_poly_of_H

    K = cd.K
    if ads is None:
        ads = ad_powers(H, X, K)
    hcache: dict[int, DiffOp] = {}
    rhs = DiffOp.zero(H.var, H.factors)
    for i in range(K):
        rhs = rhs + right_mul_poly_of_H(ads[i], cd.R[i], H, "z", hcache)
    rhs = rhs + right_mul_poly_of_H(DiffOp.identity(H.var, H.factors),
                                    cd.R_minus1, H, "z", hcache)
    return ads[K] == rhs


def conjectured_R(fam: str, L: int, params: ParamSet | None = None) -> ClosureData:
    """R_0..R_{2L-1} from the conjectured eigenvalue list via elementary
    symmetric functions; the inhomogeneous term is not determined."""
    alphas = alpha_conjecture(fam, L, params)
    R = elementary_symmetric_R(alphas)
    return ClosureData(2 * L, R, None, "conjectured", fam)


# -- parameter reconstruction ---------------------------------------------------


def reconstruct_closure(solve_at: Callable[[Mapping[str, Rat]], ClosureData],
                        fam: str, K: int,
                        nodes: Mapping[str, Sequence[Rat]],
                        bounds: Mapping[str, int],
                        extra: Mapping[str, Sequence[Rat]],
                        max_doublings: int = 2) -> ClosureData:
    """Solve at rational parameter samples and rebuild symbolic coefficients.

    ``nodes`` supplies per-parameter sample pools (must hold enough values
    for the bound; more are drawn when a mismatch forces a bound doubling).
    Afterwards every solution at the ``extra`` fresh samples must agree with
    the interpolant (certification); disagreement raises SampleMismatch.
    """
    names = list(nodes)
    layout = _unknown_layout(fam, K)
    cache: dict[tuple, ClosureData] = {}

    def solved(point: tuple) -> ClosureData:
        if point not in cache:
            cache[point] = solve_at(dict(zip(names, point)))
        return cache[point]

    bounds = dict(bounds)
    for _ in range(max_doublings + 1):
        grids = []
        for name in names:
            need = bounds[name] + 1
            pool = list(nodes[name])
            if len(pool) < need:
                raise ValueError(f"not enough samples for {name} at bound {bounds[name]}")
            grids.append(pool[:need])
        points = [()]
        for axis in grids:
            points = [p + (v,) for p in points for v in axis]
        try:
            rebuilt: dict[tuple[int, int], ParamPoly] = {}
            for key_i, key_j in layout:
                samples = {p: solved(p).coefficient(key_i, key_j) for p in points}
                rebuilt[(key_i, key_j)] = interpolate_grid(samples, bounds, names)
            # certification at fresh sample points
            cert_points = [tuple(extra[name][k] for name in names)
                           for k in range(min(len(extra[n]) for n in names))]
            for p in cert_points:
                got = solved(p)
                binding = dict(zip(names, p))
                for key_i, key_j in layout:
                    if rebuilt[(key_i, key_j)].evaluate(binding) != got.coefficient(key_i, key_j):
                        raise SampleMismatch(
                            f"fresh sample {binding} disagrees for R_{key_i} z^{key_j}")
            break
        except SampleMismatch:
            bounds = {k: 2 * v + 1 for k, v in bounds.items()}
    else:
        raise SampleMismatch("reconstruction failed after doubling the bounds")
    z = ParamPoly.var("z")
    K_bounds = degree_bounds(fam, K)
    any_point = points[0]
    base = solved(any_point)
    R = []
    for i in range(K):
        acc = ParamPoly.zero(("z",))
        for j in range(K_bounds[i] + 1):
            acc = acc + rebuilt[(i, j)] * z ** j
        R.append(acc)
    acc = ParamPoly.zero(("z",))
    for j in range(K_bounds[-1] + 1):
        acc = acc + rebuilt[(-1, j)] * z ** j
    kernel = max(solved(p).kernel_dim for p in points)
    return ClosureData(K, R, acc, "solved", fam,
                       kernel_dim=kernel, unique=kernel == 0)


def closure_for_family(df: DeformedFamily, Y: ParamPoly,
                       conjectured_check: bool = True,
                       max_terms: int | None = None) -> tuple[ClosureData, ParamPoly]:
    """Solve the closure relation for one family instance at its bound
    parameters, with the minimal-or-higher X built from (xi, Y)."""
    from .recurrence import build_X

    X = build_X(df.xi, Y)
    L = X.degree("eta")
    K = 2 * L
    ads = ad_powers(df.H_tilde, X, K, max_terms)
    conj = conjectured_R(df.fam, L, df.params) if conjectured_check else None
    cd = solve_closure(ads, df.H_tilde, df.fam, conj)
    return cd, X


# -- reference tables -------------------------------------------------------------

_REFERENCE_ENV = None


def _reference_eval_env() -> dict:
    """Evaluation environment for the factored reference expressions."""
    global _REFERENCE_ENV
    if _REFERENCE_ENV is None:
        env = {name: ParamPoly.var(name)
               for name in ("z", "g", "a", "b", "b1", "b2", "b3", "b4",
                            "s1", "s2", "sp1", "sp2", "q", "r")}
        env["F"] = Fraction
        _REFERENCE_ENV = env
    return dict(_REFERENCE_ENV)


def load_reference_tables() -> dict:
    """The shipped inhomogeneous-term reference data, keyed by
    (family, D-label, Y-label)."""
    text = resources.files("closurelab.data").joinpath("appendix_b.json").read_text()
    payload = json.loads(text)
    out = {}
    for entry in payload["entries"]:
        key = (entry["family"], entry["D"], entry.get("Y", "1"))
        out[key] = entry
    out["_meta"] = payload.get("meta", {})
    return out


def reference_expanded(entry: Mapping) -> ParamPoly:
    return ParamPoly.from_record(entry["R_minus1"])


def reference_factored(entry: Mapping) -> ParamPoly:
    """Evaluate the transcribed factored expression to a polynomial."""
    env = _reference_eval_env()
    return eval(entry["factored"], {"__builtins__": {}}, env)  # noqa: S307


def compare_reference(fam: str, D_label: str, Y_label: str,
                      solved: ClosureData,
                      bindings: Mapping[str, Rat] | None = None) -> dict:
    """Coefficient-by-coefficient comparison of a solved R_-1 against the
    stored reference row (symbolic where the solved data is symbolic,
    otherwise at the solved parameter point)."""
    tables = load_reference_tables()
    key = (fam, D_label, Y_label)
    if key not in tables:
        raise TableMissing(f"no stored reference row for {key}")
    entry = tables[key]
    expected = reference_expanded(entry)
    if bindings:
        expected = expected.subs(bindings)
    got = solved.R_minus1
    ok = got == expected
    return {"check": "reference-table", "family": fam, "D": D_label,
            "Y": Y_label, "ok": bool(ok),
            "expected": str(expected) if not ok else None,
            "got": str(got) if not ok else None}
