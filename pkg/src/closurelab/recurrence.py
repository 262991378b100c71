"""Constant-coefficient recurrences: build X from (xi, Y), expand X*P(n) in
the deformed basis by leading-term elimination, and check the exact
norm-ratio symmetry and closed-form coefficient tables.

No inner products are used anywhere: the expansion is pure exact algebra,
so the identities hold for any parameter values where the data is defined.
Rows are independent and the computation is pure, so tables can be filled
in parallel over n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .exactalg import ParamPoly, Rat, RationalFunc
from .families import DeformedFamily, MultiIndex


class NonzeroRemainder(Exception):
    """X*P(n) is not in the span of the neighbouring eigenpolynomials
    (falsifies the constant-coefficient recurrence for this X)."""


def build_X(xi: ParamPoly, Y: ParamPoly) -> ParamPoly:
    """X(eta) = integral_0^eta xi(y) Y(y) dy (differential families).

    Degree is deg(xi) + deg(Y) + 1 and X(0) = 0.
    """
    return (xi * Y).integrate("eta")


@dataclass
class RecurrenceTable:
    """Expansion coefficients r[n][k] of X*P(n) over P(n+k), |k| <= L."""

    X: ParamPoly
    L: int
    D: MultiIndex
    Y: ParamPoly | None
    rows: dict[int, dict[int, object]] = field(default_factory=dict)

    def coeff(self, n: int, k: int):
        if abs(k) > self.L:
            return Fraction(0)
        if n + k < 0:
            return Fraction(0)
        return self.rows[n][k]


def expand_in_basis(df: DeformedFamily, X: ParamPoly, n: int,
                    L: int | None = None) -> dict[int, object]:
    """Exact coefficients of X*P(n) = sum_k r_{n,k} P(n+k).

    Successive leading-term elimination from degree ell+n+L downward; the
    remainder after the last basis element must vanish identically, which is
    the substantive span check.  Coefficients are Fractions for bound
    parameters and parameter polynomials in the symbolic case.
    """
    if L is None:
        L = X.degree("eta")
    target = X * df.P(n)
    row: dict[int, object] = {}
    for k in range(L, -L - 1, -1):
        m = n + k
        if m < 0:
            row[k] = Fraction(0)
            continue
        basis = df.P(m)
        deg = df.ell + m
        coeff_target = target.coeffs_in("eta").get(deg, ParamPoly.zero())
        if coeff_target.is_zero:
            row[k] = Fraction(0)
            continue
        lead = basis.leading_coeff("eta")
        if lead.is_constant():
            r = coeff_target * (1 / lead.constant_value())
        else:
            # symbolic leading coefficient: division must be exact
            from .exactalg import poly_div_exact

            r = poly_div_exact(coeff_target, lead)
            if r is None:
                raise NonzeroRemainder(
                    f"{df.label}: leading coefficient does not divide at n={n}, k={k}")
        row[k] = r.constant_value() if r.is_constant() else r
        target = target - r * basis
    if not target.is_zero:
        raise NonzeroRemainder(
            f"{df.label}: X*P({n}) leaves remainder of degree {target.degree('eta')}")
    return row


def compute_table(df: DeformedFamily, X: ParamPoly, n_range: Iterable[int],
                  Y: ParamPoly | None = None) -> RecurrenceTable:
    L = X.degree("eta")
    table = RecurrenceTable(X=X, L=L, D=df.D, Y=Y)
    for n in n_range:
        table.rows[n] = expand_in_basis(df, X, n, L)
    return table


def leading_coeff_identity(df: DeformedFamily, table: RecurrenceTable) -> list[dict]:
    """r_{n,L} = c^X * c^P_n / c^P_{n+L} for every computed row."""
    out = []
    cX = table.X.leading_coeff("eta")
    cX = cX.constant_value() if cX.is_constant() else cX
    for n, row in sorted(table.rows.items()):
        lead_n = df.leading_coeff(n)
        lead_nL = df.leading_coeff(n + table.L)
        if isinstance(cX, Fraction) and isinstance(lead_n, Fraction):
            expected = cX * lead_n / lead_nL
            ok = row[table.L] == expected
        else:
            expected = RationalFunc(_as_poly(cX) * _as_poly(lead_n), _as_poly(lead_nL))
            ok = RationalFunc(_as_poly(row[table.L])) == expected
        out.append({"check": "leading-coefficient", "n": n, "ok": bool(ok)})
    return out


def _as_poly(v) -> ParamPoly:
    return v if isinstance(v, ParamPoly) else ParamPoly.const(v)


def check_h_symmetry(df: DeformedFamily, table: RecurrenceTable,
                     l_range: Iterable[int] | None = None) -> list[dict]:
    """r_{n,-l} = (h_{D,n}/h_{D,n-l}) * r_{n-l,l} for all computed rows.

    Vacuous rows (n-l < 0, both sides zero by the empty-basis convention)
    pass automatically.  Failures become report entries, not exceptions.
    """
    out = []
    ls = list(l_range) if l_range is not None else range(1, table.L + 1)
    for n in sorted(table.rows):
        for l in ls:
            if l > table.L:
                continue
            entry = {"check": "norm-ratio-symmetry", "n": n, "l": l}
            if n - l < 0:
                entry["ok"] = _is_zero(table.rows[n].get(-l, Fraction(0)))
                entry["vacuous"] = True
            elif n - l not in table.rows:
                continue
            else:
                lhs = table.rows[n][-l]
                rhs = table.rows[n - l][l]
                ratio = df.h_ratio(n, l)
                if isinstance(ratio, RationalFunc):
                    ok = (RationalFunc(_as_poly(lhs))
                          == ratio * RationalFunc(_as_poly(rhs)))
                else:
                    ok = lhs == ratio * rhs
                entry["ok"] = bool(ok)
            out.append(entry)
    return out


def closed_form_compare(table: RecurrenceTable,
                        formulas: Mapping[int, Callable[[int], object]]) -> list[dict]:
    """Exact comparison of table entries against closed-form coefficients.

    ``formulas`` maps the shift k to a callable n -> expected value (Fraction
    or parameter polynomial).  Rows where n+k < 0 compare against zero.
    """
    out = []
    for n in sorted(table.rows):
        for k, formula in sorted(formulas.items()):
            got = table.rows[n].get(k, Fraction(0))
            expected = Fraction(0) if n + k < 0 else formula(n)
            if isinstance(got, ParamPoly) or isinstance(expected, ParamPoly):
                ok = _as_poly(got) == _as_poly(expected)
            else:
                ok = got == expected
            out.append({"check": "closed-form", "n": n, "k": k, "ok": bool(ok)})
    return out


def _is_zero(v) -> bool:
    if isinstance(v, ParamPoly):
        return v.is_zero
    if isinstance(v, RationalFunc):
        return v.is_zero
    return v == 0


# -- built-in closed-form tables ------------------------------------------------


def table_formulas_L1I(params=None) -> dict[int, Callable[[int], object]]:
    """Five-term recurrence coefficients for L[1I] with the minimal X
    (polynomial in g when params is None)."""
    g = params.g if params is not None else ParamPoly.var("g")

    def wrap(fn):
        return fn

    return {
        2: wrap(lambda n: Fraction(1, 2) * (n + 1) * (n + 2) * _one_like(g)),
        1: wrap(lambda n: -(n + 1) * (2 * g + (2 * n + 3))),
        0: wrap(lambda n: Fraction(1, 8) * ((2 * g + 1) * (6 * g + 13)
                                            + 4 * n * (10 * g + 11)
                                            + 24 * n * n * _one_like(g))),
        -1: wrap(lambda n: -Fraction(1, 2) * (2 * g + (2 * n - 1)) * (2 * g + (2 * n + 3))),
        -2: wrap(lambda n: Fraction(1, 8) * (2 * g + (2 * n - 3)) * (2 * g + (2 * n + 3))),
    }


def _one_like(g):
    return ParamPoly.const(1) if isinstance(g, ParamPoly) else Fraction(1)


def _poch(x, k: int):
    out = x * 0 + 1 if isinstance(x, ParamPoly) else Fraction(1)
    for i in range(k):
        out = out * (x + i)
    return out


def table_formulas_J1I(params) -> dict[int, Callable[[int], Fraction]]:
    """Five-term recurrence coefficients for J[1I] with the minimal X,
    at bound parameters."""
    a, b, g, h = params.a, params.b, params.g, params.h

    def r2(n):
        return (_poch(Fraction(n + 1), 2) * (b + 2) * _poch(a + n, 2)
                * (2 * h + 2 * n - 3)) / (_poch(a + 2 * n, 4) * (2 * h + 2 * n + 1))

    def rm2(n):
        return ((b + 2) * (2 * g + 2 * n - 3) * (2 * g + 2 * n + 3)
                * _poch(h + n - Fraction(3, 2), 2)) / (4 * _poch(a + 2 * n - 3, 4))

    def r1(n):
        return ((n + 1) * (a - 1) * (a + n) * (2 * g + 2 * n + 3)
                * (2 * h + 2 * n - 3)) / (_poch(a + 2 * n - 1, 3) * (a + 2 * n + 3))

    def rm1(n):
        return ((a - 1) * (2 * g + 2 * n - 1) * (2 * g + 2 * n + 3)
                * _poch(h + n - Fraction(3, 2), 2)) / ((a + 2 * n - 3)
                                                       * _poch(a + 2 * n - 1, 3))

    def r0(n):
        lead = (b + 2) / (4 * _poch(a + 2 * n - 2, 2) * _poch(a + 2 * n + 1, 2))
        inner = (-b * (b + 4) * (2 * n * (a + n) - (a - 2) * (a - 1))
                 + (a + 2 * n - 1) * (a + 2 * n + 1)
                 * (2 * n * (a + n) - (a - 2) * (2 * a - 1)))
        return lead * inner

    return {2: r2, 1: r1, 0: r0, -1: rm1, -2: rm2}


def classical_three_term(df: DeformedFamily, n_max: int = 8) -> RecurrenceTable:
    """Three-term table of the undeformed family (X = eta)."""
    X = ParamPoly.var("eta")
    return compute_table(df, X, range(n_max + 1))
