"""Exact rational arithmetic: scalars, sparse multivariate polynomials,
reduced rational functions, exact linear solving and interpolation.

Everything downstream (operator algebra, recurrence tables, closure data)
is built on the types in this module.  There is no floating point anywhere:
scalars are `fractions.Fraction`, a polynomial is a dict mapping exponent
tuples to nonzero Fractions, and a rational function is a reduced pair of
polynomials.  All values are immutable after construction and all functions
are pure, so independent computations can safely run in parallel.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

Rat = Fraction

# Preferred display/canonical order for the symbols used in this package.
# Unknown symbols sort after these, alphabetically.
_VAR_PRIORITY = (
    "eta", "z", "x", "v", "n", "g", "h", "a", "b",
    "a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4",
    "s1", "s2", "sp1", "sp2", "q", "r", "s", "i_",
)
_VAR_RANK = {name: i for i, name in enumerate(_VAR_PRIORITY)}


def _var_key(name: str) -> tuple[int, str]:
    return (_VAR_RANK.get(name, len(_VAR_PRIORITY)), name)


def rat(value) -> Rat:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(value: Rat) -> str:
    """Serialize a Fraction as 'p/q', or 'p' when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SampleMismatch(Exception):
    """An extra interpolation sample disagrees with the interpolant
    (the degree bound was too small)."""


class ParamPoly:
    """Sparse exact polynomial in named variables.

    terms maps exponent tuples (one entry per variable, aligned with
    ``vars``) to nonzero Fractions.  The zero polynomial has no terms.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], Rat]):
        vs = tuple(vars)
        cleaned = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff:
                e = tuple(exps)
                if len(e) != len(vs):
                    raise ValueError("exponent arity does not match variables")
                if any(k < 0 for k in e):
                    raise ValueError("negative exponent")
                cleaned[e] = coeff
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("ParamPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(vars: Sequence[str] = ()) -> "ParamPoly":
        return ParamPoly(vars, {})

    @staticmethod
    def const(value, vars: Sequence[str] = ()) -> "ParamPoly":
        value = rat(value)
        vs = tuple(vars)
        if not value:
            return ParamPoly(vs, {})
        return ParamPoly(vs, {(0,) * len(vs): value})

    @staticmethod
    def var(name: str) -> "ParamPoly":
        return ParamPoly((name,), {(1,): Fraction(1)})

    @staticmethod
    def univar(name: str, coeffs: Mapping[int, Rat] | Sequence) -> "ParamPoly":
        """Univariate polynomial from {power: coeff} or a coefficient list."""
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        return ParamPoly((name,), {(k,): rat(c) for k, c in items if rat(c)})

    # -- bookkeeping -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Rat:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def trimmed(self) -> "ParamPoly":
        """Drop variables that never appear with a positive exponent."""
        keep = self.used_vars()
        if keep == self.vars:
            return self
        idx = [self.vars.index(v) for v in keep]
        return ParamPoly(keep, {tuple(e[i] for i in idx): c for e, c in self.terms.items()})

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in one variable. Zero polynomial: -1."""
        if self.is_zero:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def _align(self, other: "ParamPoly") -> tuple["ParamPoly", "ParamPoly"]:
        if self.vars == other.vars:
            return self, other
        merged = tuple(sorted(set(self.vars) | set(other.vars), key=_var_key))
        return self.with_vars(merged), other.with_vars(merged)

    def with_vars(self, vars: Sequence[str]) -> "ParamPoly":
        vs = tuple(vars)
        if vs == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vs)}
        for v in self.vars:
            if v not in pos:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise ValueError(f"cannot drop used variable {v}")
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(vs)
            for v, e in zip(self.vars, exps):
                if e:
                    new[pos[v]] = e
            terms[tuple(new)] = coeff
        return ParamPoly(vs, terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        other = _coerce_poly(other, self.vars)
        a, b = self._align(other)
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            s = terms.get(exps, Fraction(0)) + coeff
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return ParamPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        return self + (-_coerce_poly(other, self.vars))

    def __rsub__(self, other) -> "ParamPoly":
        return _coerce_poly(other, self.vars) - self

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return ParamPoly(self.vars, {})
            return ParamPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        other = _coerce_poly(other, self.vars)
        a, b = self._align(other)
        terms: dict[tuple[int, ...], Rat] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(key, Fraction(0)) + ca * cb
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return ParamPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ParamPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other, self.vars)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        a = self.trimmed()
        return hash((a.vars, frozenset(a.terms.items())))

    # -- calculus and substitution -----------------------------------------

    def diff(self, var: str) -> "ParamPoly":
        if var not in self.vars:
            return ParamPoly(self.vars, {})
        i = self.vars.index(var)
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                new = list(exps)
                new[i] -= 1
                key = tuple(new)
                terms[key] = terms.get(key, Fraction(0)) + coeff * exps[i]
        return ParamPoly(self.vars, {e: c for e, c in terms.items() if c})

    def integrate(self, var: str) -> "ParamPoly":
        """Antiderivative in ``var`` with zero constant term."""
        if var not in self.vars:
            return self * ParamPoly.var(var)
        i = self.vars.index(var)
        terms = {}
        for exps, coeff in self.terms.items():
            new = list(exps)
            new[i] += 1
            terms[tuple(new)] = coeff / new[i]
        return ParamPoly(self.vars, terms)

    def subs(self, bindings: Mapping[str, object]) -> "ParamPoly":
        """Substitute variables by Fractions or ParamPolys."""
        relevant = {v: bindings[v] for v in self.vars if v in bindings}
        if not relevant:
            return self
        keep = [v for v in self.vars if v not in relevant]
        result = ParamPoly.zero(keep)
        pow_cache: dict[tuple[str, int], ParamPoly] = {}

        def _power(v: str, k: int) -> ParamPoly:
            key = (v, k)
            if key not in pow_cache:
                base = relevant[v]
                if isinstance(base, ParamPoly):
                    pow_cache[key] = base ** k
                else:
                    pow_cache[key] = ParamPoly.const(rat(base) ** k)
            return pow_cache[key]

        for exps, coeff in self.terms.items():
            term = ParamPoly.const(coeff, keep)
            for v, e in zip(self.vars, exps):
                if not e:
                    continue
                if v in relevant:
                    term = term * _power(v, e)
                else:
                    term = term * ParamPoly.univar(v, {e: 1})
            result = result + term
        return result

    def evaluate(self, bindings: Mapping[str, object]) -> Rat:
        out = self.subs(bindings)
        return out.constant_value()

    def coeffs_in(self, var: str) -> dict[int, "ParamPoly"]:
        """Split into {power of var: coefficient polynomial in the rest}."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)
        out: dict[int, dict[tuple[int, ...], Rat]] = {}
        for exps, coeff in self.terms.items():
            k = exps[i]
            key = tuple(e for j, e in enumerate(exps) if j != i)
            out.setdefault(k, {})[key] = coeff
        return {k: ParamPoly(rest, t) for k, t in sorted(out.items())}

    def leading_coeff(self, var: str) -> "ParamPoly":
        split = self.coeffs_in(var)
        if not split:
            return ParamPoly.zero()
        return split[max(split)]

    # -- term order helpers (graded lex over self.vars) ----------------------

    def _lead_term(self) -> tuple[tuple[int, ...], Rat]:
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def content(self) -> Rat:
        """Positive rational content (gcd of numerators / lcm of denominators),
        signed so that content * primitive has lead coefficient > 0."""
        if self.is_zero:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        c = Fraction(num, den)
        if self._lead_term()[1] < 0:
            c = -c
        return c

    def primitive(self) -> "ParamPoly":
        c = self.content()
        if c == 1:
            return self
        return ParamPoly(self.vars, {e: k / c for e, k in self.terms.items()})

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            coeff = self.terms[exps]
            factors = []
            for v, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(rat_str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{rat_str(coeff)}*{body}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    # -- serialization -------------------------------------------------------

    def record(self) -> dict:
        """JSON-compatible record: variables plus {exponents, coefficient} rows."""
        rows = [
            {"exponents": list(e), "coefficient": rat_str(c)}
            for e, c in sorted(self.terms.items())
        ]
        return {"variables": list(self.vars), "terms": rows}

    @staticmethod
    def from_record(rec: Mapping) -> "ParamPoly":
        vars = tuple(rec["variables"])
        terms = {tuple(row["exponents"]): rat(row["coefficient"]) for row in rec["terms"]}
        return ParamPoly(vars, terms)


def _coerce_poly(value, vars: Sequence[str]) -> ParamPoly:
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return ParamPoly.const(value, vars)
    raise TypeError(f"cannot treat {value!r} as a polynomial")


def poly_arith(a: ParamPoly, b: ParamPoly, op: str) -> ParamPoly:
    """Exact polynomial arithmetic; variable sets are merged automatically."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_div_exact(a: ParamPoly, b: ParamPoly) -> ParamPoly | None:
    """Return q with a == q*b, or None when b does not divide a exactly.

    Works for any number of variables: repeated leading-term elimination
    under graded lex order.  For an exact multiple the leading term of the
    remainder is always divisible by the leading term of b, so the loop
    terminates with remainder zero exactly when b | a.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return ParamPoly.zero(a.vars)
    a, b = a._align(b)
    if b.is_constant():
        inv = 1 / b.constant_value()
        return a * inv
    lead_b, coeff_b = b._lead_term()
    quo: dict[tuple[int, ...], Rat] = {}
    rem = a
    while rem.terms:
        lead_r, coeff_r = rem._lead_term()
        diff = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(d < 0 for d in diff):
            return None
        q = coeff_r / coeff_b
        quo[diff] = q
        rem = rem - ParamPoly(rem.vars, {diff: q}) * b
    return ParamPoly(a.vars, quo)


def _int_coeffs(p: ParamPoly, var: str) -> list[int]:
    """Univariate poly to dense integer coefficient list (content cleared)."""
    deg = p.degree(var)
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    out = [0] * (deg + 1)
    i = p.vars.index(var) if var in p.vars else None
    for exps, c in p.terms.items():
        k = exps[i] if i is not None else 0
        out[k] = int(c * den)
    return out


def _int_primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, abs(x))
    if g > 1:
        c = [x // g for x in c]
    if c and c[-1] < 0:
        c = [-x for x in c]
    return c


def _int_deg(c: list[int]) -> int:
    while c and c[-1] == 0:
        c.pop()
    return len(c) - 1


def poly_gcd_univar(a: ParamPoly, b: ParamPoly, var: str) -> ParamPoly:
    """Monic gcd of two univariate polynomials (primitive PRS over Z)."""
    fa = _int_primitive(_int_coeffs(a, var))
    fb = _int_primitive(_int_coeffs(b, var))
    if _int_deg(fa) < _int_deg(fb):
        fa, fb = fb, fa
    while fb:
        # pseudo-remainder of fa by fb, then primitive part
        da, db = _int_deg(fa), _int_deg(fb)
        lead = fb[-1]
        rem = [x * lead ** (da - db + 1) for x in fa]
        for shift in range(da - db, -1, -1):
            q, r = divmod(rem[shift + db], lead)
            assert r == 0
            if q:
                for j, c in enumerate(fb):
                    rem[shift + j] -= q * c
        _int_deg(rem)
        fa, fb = fb, _int_primitive(rem)
    if not fa:
        return ParamPoly.zero((var,))
    lead = Fraction(fa[-1])
    return ParamPoly.univar(var, {k: Fraction(c) / lead for k, c in enumerate(fa)})


class RationalFunc:
    """Reduced quotient of two ParamPolys.

    Univariate quotients (both parts in the same single variable) are fully
    reduced with a monic denominator.  Multivariate quotients are normalized
    by content and by cancelling any factors listed in ``factors`` — the known
    denominator building blocks of the computation (for the operator algebra,
    powers of the family's denominator polynomial).  This keeps multivariate
    reduction cheap without a general multivariate gcd.
    """

    __slots__ = ("num", "den", "factors")

    def __init__(self, num: ParamPoly, den: ParamPoly | int = 1, factors: tuple = ()):
        if isinstance(den, (int, Fraction)):
            den = ParamPoly.const(den, num.vars)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        num, den = num._align(den)
        num, den, factors = _reduce_ratio(num, den, tuple(factors))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, *_):
        raise AttributeError("RationalFunc is immutable")

    @staticmethod
    def from_const(value, factors: tuple = ()) -> "RationalFunc":
        return RationalFunc(ParamPoly.const(value), 1, factors)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> ParamPoly:
        if self.den.is_constant():
            return self.num * (1 / self.den.constant_value())
        q = poly_div_exact(self.num, self.den)
        if q is None:
            raise ValueError(f"not a polynomial: ({self.num})/({self.den})")
        return q

    def _merge_factors(self, other: "RationalFunc") -> tuple:
        if self.factors == other.factors:
            return self.factors
        merged = list(self.factors)
        for f in other.factors:
            if all(f != g for g in merged):
                merged.append(f)
        return tuple(merged)

    def __add__(self, other) -> "RationalFunc":
        other = _coerce_rf(other, self.factors)
        fs = self._merge_factors(other)
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den, fs)
        return RationalFunc(self.num * other.den + other.num * self.den,
                            self.den * other.den, fs)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunc":
        return RationalFunc(-self.num, self.den, self.factors)

    def __sub__(self, other) -> "RationalFunc":
        return self + (-_coerce_rf(other, self.factors))

    def __rsub__(self, other) -> "RationalFunc":
        return _coerce_rf(other, self.factors) - self

    def __mul__(self, other) -> "RationalFunc":
        other = _coerce_rf(other, self.factors)
        return RationalFunc(self.num * other.num, self.den * other.den,
                            self._merge_factors(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunc":
        other = _coerce_rf(other, self.factors)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num,
                            self._merge_factors(other))

    def __rtruediv__(self, other) -> "RationalFunc":
        return _coerce_rf(other, self.factors) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = _coerce_rf(other, self.factors)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        # cross-multiplied equality: independent of reduction state
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var: str) -> "RationalFunc":
        if self.den.is_constant():
            return RationalFunc(self.num.diff(var), self.den, self.factors)
        return RationalFunc(self.num.diff(var) * self.den - self.num * self.den.diff(var),
                            self.den * self.den, self.factors)

    def subs(self, bindings: Mapping[str, object]) -> "RationalFunc":
        return RationalFunc(self.num.subs(bindings), self.den.subs(bindings),
                            tuple(f.subs(bindings) for f in self.factors
                                  if not f.subs(bindings).is_constant()))

    def evaluate(self, bindings: Mapping[str, object]) -> Rat:
        den = self.den.evaluate(bindings)
        if not den:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(bindings) / den

    def __repr__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return repr(self.num)
        return f"({self.num})/({self.den})"


def _coerce_rf(value, factors: tuple) -> RationalFunc:
    if isinstance(value, RationalFunc):
        return value
    if isinstance(value, ParamPoly):
        return RationalFunc(value, 1, factors)
    if isinstance(value, (int, Fraction)):
        return RationalFunc(ParamPoly.const(value), 1, factors)
    raise TypeError(f"cannot treat {value!r} as a rational function")


def _reduce_ratio(num: ParamPoly, den: ParamPoly,
                  factors: tuple) -> tuple[ParamPoly, ParamPoly, tuple]:
    if num.is_zero:
        return ParamPoly.zero(num.vars), ParamPoly.const(1, num.vars), factors
    if den.is_constant():
        c = den.constant_value()
        return num * (1 / c), ParamPoly.const(1, num.vars), factors
    # whole-denominator cancellation is common after compositions
    q = poly_div_exact(num, den)
    if q is not None:
        return q, ParamPoly.const(1, num.vars), factors
    nu, du = num.used_vars(), den.used_vars()
    if len(set(nu) | set(du)) == 1:
        var = (nu or du)[0]
        g = poly_gcd_univar(num, den, var)
        if g.degree(var) > 0:
            num = poly_div_exact(num, g)
            den = poly_div_exact(den, g)
        lead = den.leading_coeff(var).constant_value()
        return num * (1 / lead), den * (1 / lead), factors
    for f in factors:
        while True:
            qn = poly_div_exact(num, f)
            if qn is None:
                break
            qd = poly_div_exact(den, f)
            if qd is None:
                break
            num, den = qn, qd
            if den.is_constant():
                c = den.constant_value()
                return num * (1 / c), ParamPoly.const(1, num.vars), factors
    c = den.content()
    if c != 1:
        num = num * (1 / c)
        den = den * (1 / c)
    return num, den, factors


# -- exact linear algebra ----------------------------------------------------


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of an exact linear solve.

    ``consistent`` False is a normal, reported outcome (no solution exists);
    ``solution`` is then None.  ``kernel_basis`` spans the null space.
    """

    consistent: bool
    solution: list | None
    kernel_basis: list
    rank: int
    pivot_cols: tuple[int, ...] = ()


def solve_linear_exact(matrix: Sequence[Sequence], rhs: Sequence) -> LinearSolution:
    """Solve M x = rhs exactly for rectangular M.

    Entries may be Fractions/ints (plain exact Gaussian elimination) or
    ParamPoly/RationalFunc (fraction-free Bareiss elimination; solution
    components come back as RationalFunc).
    """
    rows = len(matrix)
    if rows == 0:
        return LinearSolution(True, [], [], 0)
    symbolic = any(
        isinstance(x, (ParamPoly, RationalFunc)) for row in matrix for x in row
    ) or any(isinstance(x, (ParamPoly, RationalFunc)) for x in rhs)
    if symbolic:
        return _solve_bareiss(matrix, rhs)
    return _solve_fraction(matrix, rhs)


def _solve_fraction(matrix, rhs) -> LinearSolution:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return LinearSolution(False, None, [], r, tuple(pivot_cols))
    solution = [Fraction(0)] * cols
    for i, c in enumerate(pivot_cols):
        solution[c] = aug[i][cols]
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            vec[c] = -aug[i][fc]
        kernel.append(vec)
    return LinearSolution(True, solution, kernel, r, tuple(pivot_cols))


def _to_poly_entry(x) -> tuple[ParamPoly, ParamPoly]:
    if isinstance(x, RationalFunc):
        return x.num, x.den
    if isinstance(x, ParamPoly):
        return x, ParamPoly.const(1)
    return ParamPoly.const(x), ParamPoly.const(1)


def _solve_bareiss(matrix, rhs) -> LinearSolution:
    """Fraction-free Gaussian elimination for polynomial entries.

    Rows are cleared to a common polynomial denominator first; the Bareiss
    step  a_ij <- (p*a_ij - a_ic*a_pj) / prev_pivot  keeps every entry a
    genuine polynomial (the division is exact).
    """
    rows = len(matrix)
    cols = len(matrix[0])
    aug: list[list[ParamPoly]] = []
    for i in range(rows):
        entries = [_to_poly_entry(x) for x in list(matrix[i]) + [rhs[i]]]
        common = ParamPoly.const(1)
        for _, d in entries:
            if not d.is_constant():
                q = poly_div_exact(common, d)
                if q is None:
                    common = common * d
        row = []
        for n, d in entries:
            scale = poly_div_exact(common, d)
            if scale is None:
                scale = common * (1 / d.constant_value())
            row.append(n * scale)
        aug.append(row)
    pivot_cols: list[int] = []
    prev = ParamPoly.const(1)
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        p = aug[r][c]
        for i in range(r + 1, rows):
            if not any(aug[i][j] for j in range(c, cols + 1)):
                continue
            fi = aug[i][c]
            new_row = []
            for j in range(cols + 1):
                val = p * aug[i][j] - fi * aug[r][j]
                if not prev.is_constant() or prev.constant_value() != 1:
                    q = poly_div_exact(val, prev)
                    assert q is not None, "Bareiss division must be exact"
                    val = q
                new_row.append(val)
            aug[i] = new_row
        prev = p
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return LinearSolution(False, None, [], r, tuple(pivot_cols))
    # back substitution over the fraction field
    zero = RationalFunc(ParamPoly.zero())
    solution: list[RationalFunc] = [zero] * cols
    free_cols = [c for c in range(cols) if c not in pivot_cols]

    def back_subst(assign: dict[int, RationalFunc]) -> list[RationalFunc]:
        sol = [assign.get(c, zero) for c in range(cols)]
        for i in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[i]
            acc = RationalFunc(aug[i][cols])
            for j in range(c + 1, cols):
                if aug[i][j]:
                    acc = acc - RationalFunc(aug[i][j]) * sol[j]
            sol[c] = acc / RationalFunc(aug[i][c])
        return sol

    solution = back_subst({})
    kernel = []
    one = RationalFunc(ParamPoly.const(1))
    for fc in free_cols:
        # kernel vector: solve with rhs 0 and x_fc = 1
        saved = [row[cols] for row in aug]
        for row in aug:
            row[cols] = ParamPoly.zero(row[cols].vars)
        vec = back_subst({fc: one})
        # remove the particular contribution of other free columns (all zero here)
        for row, s in zip(aug, saved):
            row[cols] = s
        # subtract: back_subst({fc:1}) with zero rhs is homogeneous already
        kernel.append(vec)
    return LinearSolution(True, solution, kernel, r, tuple(pivot_cols))


# -- interpolation -----------------------------------------------------------


def interpolate_param(samples: Sequence[tuple], degree_bound: int,
                      var: str = "g") -> ParamPoly:
    """Unique interpolant of degree <= degree_bound through exact samples.

    The first degree_bound+1 samples determine the polynomial (Newton form);
    every extra sample is a consistency check and a disagreement raises
    SampleMismatch (signal to raise the bound and retry).  Values may be
    Fractions or ParamPolys (interpolation then happens coefficient-wise).
    """
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    if len(samples) < degree_bound + 1:
        raise ValueError("need at least degree_bound+1 samples")
    pts = [rat(p) for p, _ in samples]
    if len(set(pts)) != len(pts):
        raise ValueError("sample points must be distinct")
    vals = [v if isinstance(v, ParamPoly) else ParamPoly.const(rat(v)) for _, v in samples]

    base = pts[: degree_bound + 1]
    # Newton divided differences
    table = list(vals[: degree_bound + 1])
    coeffs = [table[0]]
    for level in range(1, degree_bound + 1):
        table = [
            (table[i + 1] - table[i]) * (1 / (base[i + level] - base[i]))
            for i in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    x = ParamPoly.var(var)
    poly = ParamPoly.zero((var,))
    basis = ParamPoly.const(1, (var,))
    for k, c in enumerate(coeffs):
        poly = poly + c * basis
        if k < degree_bound:
            basis = basis * (x - base[k])
    for p, v in zip(pts, vals):
        if poly.subs({var: p}) != v:
            raise SampleMismatch(
                f"sample at {var}={rat_str(p)} disagrees with degree-{degree_bound} interpolant"
            )
    return poly


def interpolate_grid(samples: Mapping[tuple, object], bounds: Mapping[str, int],
                     vars: Sequence[str]) -> ParamPoly:
    """Tensor-grid interpolation in several parameters.

    ``samples`` maps full coordinate tuples (aligned with ``vars``) to exact
    values; the grid must be the cartesian product of per-variable node sets.
    Interpolation runs variable by variable; extra nodes double as
    consistency checks (SampleMismatch propagates from interpolate_param).
    """
    vars = list(vars)
    if len(vars) == 1:
        pairs = [(k[0], v) for k, v in samples.items()]
        return interpolate_param(pairs, bounds[vars[0]], vars[0])
    first, rest = vars[0], vars[1:]
    by_first: dict[Rat, dict[tuple, object]] = {}
    for coords, value in samples.items():
        by_first.setdefault(rat(coords[0]), {})[tuple(coords[1:])] = value
    inner = [(p, interpolate_grid(sub, bounds, rest)) for p, sub in sorted(by_first.items())]
    return interpolate_param(inner, bounds[first], first)


# -- tiny polynomial grammar (CLI Y input, data files) -----------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*^()]))")


def parse_poly(text: str, default_var: str = "eta") -> ParamPoly:
    """Parse 'c*var^k' terms joined by +/-, e.g. '1/2*eta^2 - 3*eta + 1'.

    Supports parentheses and products; exponents are nonnegative integers;
    coefficients are integers or p/q.
    """
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad polynomial syntax near {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("num", "name", "op"):
            if m.group(kind):
                tokens.append((kind, m.group(kind)))
                break
    tokens.append(("end", ""))
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_atom() -> ParamPoly:
        kind, val = take()
        if kind == "num":
            return ParamPoly.const(Fraction(val))
        if kind == "name":
            return ParamPoly.var(val)
        if (kind, val) == ("op", "("):
            inner = parse_sum()
            kind2, val2 = take()
            if (kind2, val2) != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -parse_atom()
        raise ValueError(f"unexpected token {val!r}")

    def parse_power() -> ParamPoly:
        base = parse_atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def parse_product() -> ParamPoly:
        acc = parse_power()
        while peek() == ("op", "*"):
            take()
            acc = acc * parse_power()
        return acc

    def parse_sum() -> ParamPoly:
        sign = 1
        while peek() in (("op", "+"), ("op", "-")):
            if take() == ("op", "-"):
                sign = -sign
        acc = parse_product() * sign
        while peek() in (("op", "+"), ("op", "-")):
            sign = 1
            while peek() in (("op", "+"), ("op", "-")):
                if take() == ("op", "-"):
                    sign = -sign
            acc = acc + parse_product() * sign
        return acc

    result = parse_sum()
    if peek() != ("end", ""):
        raise ValueError(f"trailing input: {tokens[idx:]}")
    return result
