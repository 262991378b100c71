"""Family data and built-in deformed systems.

Covers the four polynomial families (Laguerre L, Jacobi J, Wilson W,
Askey-Wilson AW): exact energies, virtual-state energies, norm ratios,
classical polynomial generators for L/J, the built-in one-index deformations
(types I and II for L and J), similarity-transformed Hamiltonians built by
two independent routes, and a JSON plugin loader for externally supplied
multi-index data.

Built-in construction notes
---------------------------
The deformed polynomials for L type I and J type I are explicit classical
combinations.  The matching type II systems are obtained here from two exact
mechanisms, both verified by tests:

* J type II is the image of J type I under the exact symmetry
  (g, h) -> (h, g), eta -> -eta, which fixes energies and maps the
  denominator polynomial and eigenpolynomials onto the type II system.
* L type II comes from a one-step intertwiner built on the seed
  rho(eta) * xi(eta) with rho = eta^(1/2-g) and xi = eta + g - 3/2, which is
  an exact quasi-eigenfunction of the undeformed operator (checked via
  gauge_transform) with the type II virtual energy.  The intertwined
  polynomials P(n) = eta*xi*P_n' - ((1/2-g)*xi + eta)*P_n carry the canonical
  normalization, so the norm-ratio identities hold with no extra constants.

Hamiltonians are always eigen-validated against independently constructed
polynomials before use.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exactalg import (ParamPoly, Rat, RationalFunc, poly_div_exact, rat,
                       rat_str, solve_linear_exact)
from .opalg import DiffOp, NonPolynomialImage, gauge_transform

HALF = Fraction(1, 2)

FAMILIES = ("L", "J", "W", "AW")


class EigenValidationFailed(Exception):
    """Constructed Hamiltonian fails its eigen-equation (family data inconsistent)."""


class RouteDisagreement(Exception):
    """Two independent Hamiltonian constructions disagree."""


class SchemaError(Exception):
    """Plugin file does not conform to the plugin schema."""


class DegreeMismatch(Exception):
    """Plugin polynomial degrees contradict the multi-index bookkeeping."""


def _sqrt_fraction(q: Rat) -> Rat | None:
    num, den = q.numerator, q.denominator
    if num < 0:
        return None
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ParamSet:
    """Exact parameter values for one family.

    L: g;  J: g, h (derived a = g+h, b = g-h);  W: a1..a4;  AW: a1..a4, q
    with q required to be the square of a rational (so q^(1/2) is exact).
    """

    fam: str
    values: Mapping[str, Rat]

    def __post_init__(self):
        if self.fam not in FAMILIES:
            raise ValueError(f"unknown family {self.fam!r}")
        vals = {k: rat(v) for k, v in self.values.items()}
        needed = {"L": {"g"}, "J": {"g", "h"},
                  "W": {"a1", "a2", "a3", "a4"},
                  "AW": {"a1", "a2", "a3", "a4", "q"}}[self.fam]
        missing = needed - set(vals)
        if missing:
            raise ValueError(f"family {self.fam} needs parameters {sorted(missing)}")
        object.__setattr__(self, "values", vals)
        if self.fam == "AW":
            q = vals["q"]
            if not (0 < q < 1):
                raise ValueError("AW needs 0 < q < 1")
            if _sqrt_fraction(q) is None:
                raise ValueError("AW needs q to be the square of a rational")

    def __getitem__(self, key: str) -> Rat:
        return self.values[key]

    @property
    def g(self) -> Rat:
        return self.values["g"]

    @property
    def h(self) -> Rat:
        return self.values["h"]

    @property
    def a(self) -> Rat:
        return self.values["g"] + self.values["h"]

    @property
    def b(self) -> Rat:
        return self.values["g"] - self.values["h"]

    def a_list(self) -> list[Rat]:
        return [self.values[f"a{i}"] for i in (1, 2, 3, 4)]

    @property
    def q(self) -> Rat:
        return self.values["q"]

    @property
    def r(self) -> Rat:
        r = _sqrt_fraction(self.values["q"])
        assert r is not None
        return r

    def derived(self) -> dict[str, Rat]:
        """All named derived quantities (sigma_i, b_i, a, b) for this family."""
        out = dict(self.values)
        if self.fam == "J":
            out["a"] = self.a
            out["b"] = self.b
        if self.fam in ("W", "AW"):
            a = self.a_list()
            out["s1"] = a[0] + a[1]
            out["s2"] = a[0] * a[1]
            out["sp1"] = a[2] + a[3]
            out["sp2"] = a[2] * a[3]
            out["b1"] = sum(a)
            out["b2"] = sum(a[i] * a[j] for i in range(4) for j in range(i + 1, 4))
            out["b3"] = sum(a[i] * a[j] * a[k]
                            for i in range(4) for j in range(i + 1, 4)
                            for k in range(j + 1, 4))
            out["b4"] = a[0] * a[1] * a[2] * a[3]
        if self.fam == "AW":
            out["r"] = self.r
        return out

    def swapped(self) -> "ParamSet":
        """J only: exchange g and h (used by the type II mirror)."""
        assert self.fam == "J"
        return ParamSet("J", {"g": self.values["h"], "h": self.values["g"]})


@dataclass(frozen=True)
class MultiIndex:
    """Multi-index D: list of (degree, type) seed labels.

    ell = sum(d_j) - M(M-1)/2 + 2 * M_I * M_II  is the number of missing
    low degrees; entries must be distinct within each type.
    """

    entries: tuple[tuple[int, str], ...]

    def __post_init__(self):
        ent = tuple((int(d), str(t)) for d, t in self.entries)
        for d, t in ent:
            if d < 1:
                raise ValueError("seed degrees must be >= 1")
            if t not in ("I", "II"):
                raise ValueError("seed type must be 'I' or 'II'")
        for t in ("I", "II"):
            ds = [d for d, tt in ent if tt == t]
            if len(ds) != len(set(ds)):
                raise ValueError(f"duplicate type-{t} degrees in multi-index")
        object.__setattr__(self, "entries", ent)

    @staticmethod
    def parse(text: str) -> "MultiIndex":
        """Parse '1I' or '1I,2I' style labels; '' is the undeformed system."""
        text = text.strip()
        if not text or text == "{}":
            return MultiIndex(())
        out = []
        for part in text.split(","):
            part = part.strip()
            if part.endswith("II"):
                out.append((int(part[:-2]), "II"))
            elif part.endswith("I"):
                out.append((int(part[:-1]), "I"))
            else:
                raise ValueError(f"bad multi-index entry {part!r}")
        return MultiIndex(tuple(out))

    @property
    def M(self) -> int:
        return len(self.entries)

    @property
    def M1(self) -> int:
        return sum(1 for _, t in self.entries if t == "I")

    @property
    def M2(self) -> int:
        return sum(1 for _, t in self.entries if t == "II")

    @property
    def ell(self) -> int:
        s = sum(d for d, _ in self.entries)
        return s - self.M * (self.M - 1) // 2 + 2 * self.M1 * self.M2

    def label(self) -> str:
        if not self.entries:
            return "{}"
        return ",".join(f"{d}{t}" for d, t in self.entries)


# -- energies -----------------------------------------------------------------


def energy(params: ParamSet, n: int) -> Rat:
    """Eigenvalue E_n; E_0 = 0 in every family.  Negative n is permitted
    (the formulas extend; used by the spacing identities)."""
    if params.fam == "L":
        return Fraction(4 * n)
    if params.fam == "J":
        return 4 * n * (n + params.a)
    if params.fam == "W":
        b1 = sum(params.a_list())
        return n * (n + b1 - 1)
    q = params.q
    b4 = params.derived()["b4"]
    return (q ** (-n) - 1) * (1 - b4 * q ** (n - 1))


def virtual_energy(params: ParamSet, t: str, v: int) -> Rat:
    """Energy of the degree-v type I/II virtual state."""
    if t not in ("I", "II"):
        raise ValueError("type must be 'I' or 'II'")
    if params.fam == "L":
        g = params.g
        return -4 * (g + v + HALF) if t == "I" else -4 * (g - v - HALF)
    if params.fam == "J":
        g, h = params.g, params.h
        if t == "I":
            return -4 * (g + v + HALF) * (h - v - HALF)
        return -4 * (g - v - HALF) * (h + v + HALF)
    if params.fam == "W":
        a1, a2, a3, a4 = params.a_list()
        if t == "I":
            return -(a1 + a2 - v - 1) * (a3 + a4 + v)
        return -(a3 + a4 - v - 1) * (a1 + a2 + v)
    q = params.q
    a1, a2, a3, a4 = params.a_list()
    if t == "I":
        return -(1 - a1 * a2 * q ** (-v - 1)) * (1 - a3 * a4 * q ** v)
    return -(1 - a3 * a4 * q ** (-v - 1)) * (1 - a1 * a2 * q ** v)


def energy_poly(fam: str) -> ParamPoly:
    """E_n as an exact polynomial in the symbol 'n' (L, J, W only)."""
    n = ParamPoly.var("n")
    if fam == "L":
        return 4 * n
    if fam == "J":
        return 4 * n * (n + ParamPoly.var("a"))
    if fam == "W":
        return n * (n + ParamPoly.var("b1") - 1)
    raise ValueError("AW energies are not polynomial in n")


# -- norm ratios ---------------------------------------------------------------


def classical_h_step(params: ParamSet, n: int) -> Rat:
    """h_n / h_{n-1} for the undeformed family, free of Gamma factors."""
    if n < 1:
        raise ValueError("need n >= 1")
    if params.fam == "L":
        return Fraction(n + params.g - HALF, 1) / n
    if params.fam == "J":
        g, h, a = params.g, params.h, params.a
        return ((n + g - HALF) * (n + h - HALF) * (2 * n + a - 2)
                / (n * (2 * n + a) * (n + a - 1)))
    if params.fam == "W":
        alist = params.a_list()
        b1 = sum(alist)
        pair = Fraction(1)
        for i in range(4):
            for j in range(i + 1, 4):
                pair *= n + alist[i] + alist[j] - 1
        return n * (2 * n + b1 - 3) * pair / ((n + b1 - 2) * (2 * n + b1 - 1))
    q = params.q
    d = params.derived()
    b4 = d["b4"]
    alist = params.a_list()
    pair = Fraction(1)
    for i in range(4):
        for j in range(i + 1, 4):
            pair *= 1 - alist[i] * alist[j] * q ** (n - 1)
    return ((1 - q ** n) * (1 - b4 * q ** (2 * n - 3)) * pair
            / ((1 - b4 * q ** (n - 2)) * (1 - b4 * q ** (2 * n - 1))))


# -- classical polynomials ------------------------------------------------------


def _rising(base, count: int):
    """base*(base+1)*...*(base+count-1); works for Fractions and ParamPolys."""
    out = base * 0 + 1 if isinstance(base, ParamPoly) else Fraction(1)
    for i in range(count):
        out = out * (base + i)
    return out


def classical_poly(fam: str, n: int, params: ParamSet | None = None) -> ParamPoly:
    """Degree-n classical eigenpolynomial in eta (L or J).

    With params=None the result is symbolic in g (and h).  Conventions:
    L uses the weight exponent g - 1/2, J uses (g - 1/2, h - 1/2); these are
    the polynomials annihilated by the classical operators built below, with
    eigenvalues 4n (L) and 4n(n+g+h) (J).
    """
    if n < 0:
        raise ValueError("need n >= 0")
    eta = ParamPoly.var("eta")
    if fam == "L":
        alpha = (params.g if params else ParamPoly.var("g")) - HALF
        out = ParamPoly.zero(("eta",))
        for k in range(n + 1):
            coeff = _rising(alpha + k + 1, n - k) * Fraction(1, math.factorial(n - k))
            term = coeff * Fraction((-1) ** k, math.factorial(k))
            out = out + term * eta ** k
        return out
    if fam == "J":
        if params is not None:
            alpha = params.g - HALF
            beta = params.h - HALF
        else:
            alpha = ParamPoly.var("g") - HALF
            beta = ParamPoly.var("h") - HALF
        minus = (eta - 1) * HALF
        plus = (eta + 1) * HALF
        out = ParamPoly.zero(("eta",))
        for k in range(n + 1):
            ca = _rising(alpha + k + 1, n - k) * Fraction(1, math.factorial(n - k))
            cb = _rising(beta + (n - k) + 1, k) * Fraction(1, math.factorial(k))
            out = out + ca * cb * minus ** k * plus ** (n - k)
        return out
    raise ValueError("classical polynomials are provided for L and J only")


def c2_poly(fam: str) -> ParamPoly:
    """Second-order coefficient of the similarity-transformed Hamiltonian."""
    eta = ParamPoly.var("eta")
    if fam == "L":
        return eta
    if fam == "J":
        return 1 - eta ** 2
    raise ValueError("c2 is defined for the differential families L and J")


# -- Hamiltonian builders --------------------------------------------------------


def build_H_ansatz(fam: str, xi: ParamPoly, pairs: Sequence[tuple[ParamPoly, Rat]],
                   var: str = "eta") -> DiffOp:
    """Unique operator -4*(c2*d^2 + (N1/xi)*d + N0/xi) fixed by eigen-equations.

    ``pairs`` supplies (P_n, E_n) for a few low n; the numerator degree
    bounds follow from the structural form of the transformed Hamiltonian
    (N1 <= deg xi + 1, N0 <= deg xi).  Raises EigenValidationFailed when no
    operator of this shape exists or when it is not unique.
    """
    c2 = c2_poly(fam)
    ell = xi.degree(var)
    d1 = ell + 1
    d0 = ell
    n_unknowns = (d1 + 1) + (d0 + 1)
    rows: list[list[Rat]] = []
    rhs: list[Rat] = []
    eta = ParamPoly.var(var)
    for P, E in pairs:
        base = xi * c2 * P.diff(var).diff(var) + rat(E) * HALF * HALF * xi * P
        dP = P.diff(var)
        max_deg = max(base.degree(var), d1 + dP.degree(var), d0 + P.degree(var))
        cols_per_m: list[list[Rat]] = []
        for m in range(max_deg + 1):
            row = []
            for k in range(d1 + 1):
                contrib = (eta ** k * dP).coeffs_in(var).get(m)
                row.append(contrib.constant_value() if contrib else Fraction(0))
            for k in range(d0 + 1):
                contrib = (eta ** k * P).coeffs_in(var).get(m)
                row.append(contrib.constant_value() if contrib else Fraction(0))
            rows.append(row)
            base_m = base.coeffs_in(var).get(m)
            rhs.append(-(base_m.constant_value() if base_m else Fraction(0)))
    sol = solve_linear_exact(rows, rhs)
    if not sol.consistent:
        raise EigenValidationFailed(
            "no operator of the transformed shape matches the eigen-equations")
    if sol.kernel_basis:
        raise EigenValidationFailed(
            "eigen-equations do not pin the operator down (need more levels)")
    n1 = ParamPoly.univar(var, {k: sol.solution[k] for k in range(d1 + 1)})
    n0 = ParamPoly.univar(var, {k: sol.solution[d1 + 1 + k] for k in range(d0 + 1)})
    factors = () if xi.is_constant() else (xi.primitive(),)
    xi_rf = RationalFunc(xi, 1, factors)
    return DiffOp(var, {
        2: RationalFunc(c2 * (-4), 1, factors),
        1: RationalFunc(n1 * (-4), 1, factors) / xi_rf,
        0: RationalFunc(n0 * (-4), 1, factors) / xi_rf,
    }, factors)


def eigen_validate(H: DiffOp, P: Callable[[int], ParamPoly],
                   E: Callable[[int], Rat], n_max: int = 5) -> None:
    for n in range(n_max + 1):
        pn = P(n)
        try:
            image = H.apply_poly(pn)
        except NonPolynomialImage as exc:
            raise EigenValidationFailed(f"nonpolynomial image at n={n}: {exc}") from None
        if image != pn * rat(E(n)):
            raise EigenValidationFailed(f"eigen-equation fails at n={n}")


def _conjugated_H_laguerre_1I(params: ParamSet) -> DiffOp:
    """Transform of the printed deformed radial potential by its printed
    prefactor, expressed in eta (independent route for L, D={1I})."""
    g = params.g
    eta = ParamPoly.var("eta")
    xi = eta + g + HALF
    factors = (xi, eta)
    f = lambda num, den=1: RationalFunc(num if isinstance(num, ParamPoly)
                                        else ParamPoly.const(num),
                                        den, factors)
    one = ParamPoly.const(1)
    # prefactor log-derivative divided by x:  m = -1 + (g+1)/eta - 2/xi
    m = f(-one) + f((g + 1) * one, eta) + f(-2 * one, xi)
    # potential with the zero-point energy removed
    U = (f(eta) + f(g * (g + 1) * one, eta) + f(-(2 * g + 3) * one)
         + f(4 * one, xi) + f(-4 * (2 * g + 1) * one, xi * xi))
    m_prime = m.diff("eta")
    zero_term = U - m - 2 * f(eta) * m_prime - f(eta) * m * m
    return DiffOp("eta", {
        2: f(-4 * eta),
        1: f(-2 * one) - 4 * f(eta) * m,
        0: zero_term,
    }, factors)


def _conjugated_H_jacobi_1I(params: ParamSet) -> DiffOp:
    """Same cross-check for J, D={1I}: transform of the printed trigonometric
    potential by the printed prefactor, expressed in eta = cos 2x."""
    g, h = params.g, params.h
    a = g + h
    b = g - h
    eta = ParamPoly.var("eta")
    xi = ((b + 2) * eta + (a - 1)) * HALF
    xi_p = xi.diff("eta")
    one_m = 1 - eta
    one_p = 1 + eta
    factors = (xi, one_m.primitive(), one_p)
    f = lambda num, den=1: RationalFunc(num if isinstance(num, ParamPoly)
                                        else ParamPoly.const(num),
                                        den, factors)
    one = ParamPoly.const(1)
    # A = (log Psi)' * eta'(x), everything reduced to rational functions of eta
    A = (f(-2 * (g + 1) * one_p) + f(2 * (h - 1) * one_m)
         + f(-4 * (1 - eta ** 2) * xi_p, xi))
    log_second = (f(-2 * (g + 1) * one, one_m) + f(-2 * (h - 1) * one, one_p)
                  + f(4 * eta * xi_p, xi) + f(4 * (1 - eta ** 2) * xi_p * xi_p, xi * xi))
    log_sq = (f((g + 1) ** 2 * one_p, one_m) + f((h - 1) ** 2 * one_m, one_p)
              + f(-2 * (g + 1) * (h - 1) * one)
              + f(4 * (g + 1) * one_p * xi_p, xi) + f(-4 * (h - 1) * one_m * xi_p, xi)
              + f(4 * (1 - eta ** 2) * xi_p * xi_p, xi * xi))
    U = (f(2 * g * (g + 1) * one, one_m) + f(2 * (h - 1) * (h - 2) * one, one_p)
         + f(-a * a * one) + f(4 * (a - 1) * one, xi)
         + f(-2 * (2 * g + 1) * (2 * h - 3) * one, xi * xi))
    return DiffOp("eta", {
        2: f(-4 * (1 - eta ** 2)),
        1: f(4 * eta) - 2 * A,
        0: U - log_second - log_sq,
    }, factors)


# -- deformed families -----------------------------------------------------------


class DeformedFamily:
    """One solvable system: family tag, multi-index, parameters, exact data.

    P(n) generation is memoized per instance; instances are otherwise
    immutable, so parallel tasks should each own their instance.
    """

    def __init__(self, fam: str, D: MultiIndex, params: ParamSet | None,
                 xi: ParamPoly, make_P: Callable[[int], ParamPoly],
                 source: str = "builtin", label: str | None = None,
                 build_H: bool = True, validate_n: int = 5,
                 p_max: int | None = None):
        self.fam = fam
        self.D = D
        self.params = params
        self.xi = xi
        self.source = source
        self.label = label or f"{fam}[{D.label()}]"
        self.p_max = p_max
        self._make_P = make_P
        self._P_cache: dict[int, ParamPoly] = {}
        self.Etilde = ([virtual_energy(params, t, d) for d, t in D.entries]
                       if params is not None else None)
        self.H_tilde: DiffOp | None = None
        if build_H:
            if params is None:
                raise ValueError("cannot build a Hamiltonian for symbolic parameters")
            pairs = [(self.P(n), self.E(n)) for n in range(3)]
            self.H_tilde = build_H_ansatz(fam, xi, pairs)
            eigen_validate(self.H_tilde, self.P, self.E, validate_n)

    # polynomial eigendata --------------------------------------------------

    def P(self, n: int) -> ParamPoly:
        """Eigenpolynomial of degree ell + n; zero for n < 0."""
        if n < 0:
            return ParamPoly.zero(("eta",))
        if self.p_max is not None and n > self.p_max:
            raise SchemaError(f"{self.label}: polynomials available only up to n={self.p_max}")
        if n not in self._P_cache:
            p = self._make_P(n)
            expected = self.D.ell + n
            if p.degree("eta") != expected:
                raise DegreeMismatch(
                    f"{self.label}: deg P({n}) = {p.degree('eta')}, expected {expected}")
            self._P_cache[n] = p
        return self._P_cache[n]

    def E(self, n: int) -> Rat:
        if self.params is None:
            if self.fam == "L":
                return Fraction(4 * n)
            raise ValueError("symbolic energies need explicit parameters")
        return energy(self.params, n)

    @property
    def ell(self) -> int:
        return self.D.ell

    def h_ratio(self, n: int, l: int):
        """h_{D,n} / h_{D,n-l}, exact and free of Gamma factors (0 <= l <= n)."""
        if not 0 <= l <= n:
            raise ValueError("need 0 <= l <= n")
        if l == 0:
            return Fraction(1)
        if self.params is None:
            if self.fam != "L":
                raise ValueError("symbolic norm ratios are provided for L only")
            g = ParamPoly.var("g")
            num = ParamPoly.const(1)
            den = ParamPoly.const(1)
            for m in range(n - l + 1, n + 1):
                num = num * (g + (m - HALF))
                den = den * m
            for d, t in self.D.entries:
                # E_n - Etilde = 4*(g + n + d + 1/2)  for type I
                #              = 4*(g + n - d - 1/2)  for type II
                off = d + HALF if t == "I" else -d - HALF
                num = num * (g + (n + off))
                den = den * (g + (n - l + off))
            return RationalFunc(num, den)
        out = Fraction(1)
        for m in range(n - l + 1, n + 1):
            out *= classical_h_step(self.params, m)
        for (d, t), et in zip(self.D.entries, self.Etilde):
            out *= (self.E(n) - et) / (self.E(n - l) - et)
        return out

    def leading_coeff(self, n: int) -> Rat | ParamPoly:
        lead = self.P(n).leading_coeff("eta")
        return lead.constant_value() if lead.is_constant() else lead

    def __repr__(self) -> str:
        return f"DeformedFamily({self.label}, source={self.source})"


def seed_data(fam: str, t: str, params: ParamSet | None = None):
    """Log-derivative m of the seed prefactor and its virtual-energy check.

    Returns (m, xi_seed, Etilde) for degree-1 seeds; gauge-transforming the
    classical operator by m and applying to xi_seed must give Etilde*xi_seed.
    """
    eta = ParamPoly.var("eta")
    if fam == "L":
        g = params.g if params else ParamPoly.var("g")
        if t == "I":
            m = RationalFunc(ParamPoly.const(1))  # rho = exp(eta)
            xi_seed = eta + g + HALF
        else:
            sigma = ParamPoly.const(HALF) - g  # rho = eta^(1/2-g)
            m = RationalFunc(sigma, eta)
            xi_seed = eta + g - 3 * HALF
        et = virtual_energy(params, t, 1) if params else None
        return m, xi_seed, et
    if fam == "J":
        g = params.g if params else ParamPoly.var("g")
        h = params.h if params else ParamPoly.var("h")
        a, b = g + h, g - h
        if t == "I":
            m = RationalFunc(ParamPoly.const(HALF) - h, 1 + eta)  # rho = (1+eta)^(1/2-h)
        else:
            # rho = (1-eta)^(1/2-g), so m = rho'/rho = (g-1/2)/(1-eta)
            m = RationalFunc(ParamPoly.const(g) - HALF, 1 - eta)
        if t == "I":
            xi_seed = ((b + 2) * eta + (a - 1)) * HALF
        else:
            xi_seed = ((2 - b) * eta - (a - 1)) * HALF
        et = virtual_energy(params, t, 1) if params else None
        return m, xi_seed, et
    raise ValueError("seed data is provided for L and J")


def one_step_seed(fam: str, t: str, d: int, params: ParamSet) -> ParamPoly:
    """Monic degree-d seed polynomial: the polynomial part of the type I/II
    quasi-eigenfunction of the undeformed operator at the virtual energy.

    Found by an exact linear solve of the gauge-transformed eigen-equation;
    existence and uniqueness are part of the family structure and checked.
    """
    m, _, _ = seed_data(fam, t, params)
    cls = classical_family(fam, params)
    Hg = gauge_transform(cls.H_tilde, m)
    et = virtual_energy(params, t, d)
    eta = ParamPoly.var("eta")
    # residual of (Hg - et) on eta^k, cleared to a common polynomial denominator
    den = _poly_lcm_simple([Hg.coeffs[k].den for k in Hg.coeffs])
    imgs = []
    for k in range(d + 1):
        img = Hg.apply(eta ** k) - RationalFunc(eta ** k) * et
        scale = poly_div_exact(den, img.den)
        assert scale is not None
        imgs.append(img.num * scale)
    max_deg = max(p.degree("eta") for p in imgs if not p.is_zero)
    rows, rhs = [], []
    for degree in range(max_deg + 1):
        row = []
        for k in range(d):
            c = imgs[k].coeffs_in("eta").get(degree)
            row.append(c.constant_value() if c is not None else Fraction(0))
        c = imgs[d].coeffs_in("eta").get(degree)
        rows.append(row)
        rhs.append(-(c.constant_value() if c is not None else Fraction(0)))
    sol = solve_linear_exact(rows, rhs)
    if not sol.consistent or sol.kernel_basis:
        raise EigenValidationFailed(
            f"{fam} type {t} degree-{d} seed is not uniquely determined")
    return eta ** d + ParamPoly.univar("eta", {k: sol.solution[k] for k in range(d)})


def _poly_lcm_simple(dens: Sequence[ParamPoly]) -> ParamPoly:
    from .exactalg import poly_gcd_univar

    acc = ParamPoly.const(1, ("eta",))
    for dpoly in dens:
        if dpoly.is_constant():
            continue
        g = poly_gcd_univar(acc, dpoly, "eta")
        extra = poly_div_exact(dpoly, g) if g.degree("eta") > 0 else dpoly
        acc = acc * extra
    return acc


def canonical_seed(fam: str, t: str, d: int, params: ParamSet) -> ParamPoly:
    """Degree-d seed polynomial in the classical normalization: the
    classical polynomial of the twisted parameters.

    L type I: degree-d Laguerre polynomial at -eta; L type II: Laguerre at
    g -> 1-g.  J type I: Jacobi at (g, 1-h); J type II: Jacobi at (1-g, h).
    Cross-checked against the monic quasi-eigenfunction solve.
    """
    eta = ParamPoly.var("eta")
    if fam == "L":
        if t == "I":
            seed = classical_poly("L", d, params).subs({"eta": -eta})
        else:
            seed = classical_poly("L", d, ParamSet("L", {"g": 1 - params.g}))
    elif fam == "J":
        if t == "I":
            twisted = ParamSet("J", {"g": params.g, "h": 1 - params.h})
        else:
            twisted = ParamSet("J", {"g": 1 - params.g, "h": params.h})
        seed = classical_poly("J", d, twisted)
    else:
        raise ValueError("seeds are provided for L and J")
    monic = one_step_seed(fam, t, d, params)
    lead = seed.leading_coeff("eta").constant_value()
    if not lead or seed != monic * lead:
        raise EigenValidationFailed(
            f"{fam} type {t} degree-{d}: twisted classical polynomial is not "
            f"the quasi-eigenfunction seed")
    return seed


def one_step_family(fam: str, t: str, d: int, params: ParamSet,
                    **kw) -> DeformedFamily:
    """Single-seed deformation of degree d, built from the exact intertwiner.

    P(n) = q_m * xi * P_n' - (p_m * xi + q_m * xi') * P_n, with m = p_m/q_m
    the seed prefactor's logarithmic derivative.  The seed carries the
    classical normalization (canonical_seed), which reproduces the stored
    minimal-X reference rows; the intertwined P(n) are direct images of the
    classical polynomials, so the norm-ratio identities hold without extra
    constants.
    """
    m, _, _ = seed_data(fam, t, params)
    seed = canonical_seed(fam, t, d, params)
    seed_prime = seed.diff("eta")
    q_m, p_m = m.den, m.num

    def make_P(n: int) -> ParamPoly:
        Pn = classical_poly(fam, n, params)
        return q_m * seed * Pn.diff("eta") - (p_m * seed + q_m * seed_prime) * Pn

    D = MultiIndex(((d, t),))
    return DeformedFamily(fam, D, params, seed, make_P,
                          label=f"{fam}[{d}{t}]", **kw)


def plugin_dict_from_family(df: DeformedFamily) -> dict:
    """Serialize a classical-combination family as a plugin dictionary
    (round-trips through family_from_plugin_dict)."""
    m, _, _ = seed_data(df.fam, df.D.entries[0][1], df.params)
    seed = df.xi
    dp_c = m.den * seed
    p_c = -(m.num * seed + m.den * seed.diff("eta"))
    return {
        "family": df.fam,
        "parameters": {k: rat_str(v) for k, v in df.params.values.items()},
        "D": [{"d": d, "type": t} for d, t in df.D.entries],
        "xi": df.xi.record(),
        "P": {"kind": "classical-combination",
              "dP_coeff": dp_c.record(), "P_coeff": p_c.record()},
    }


def classical_family(fam: str, params: ParamSet | None, **kw) -> DeformedFamily:
    """The undeformed system: D = {}, xi = 1, classical polynomials."""
    D = MultiIndex(())
    xi = ParamPoly.const(1, ("eta",))
    make_P = lambda n: classical_poly(fam, n, params)
    build = kw.pop("build_H", params is not None)
    return DeformedFamily(fam, D, params, xi, make_P, label=f"{fam}[classical]",
                          build_H=build, **kw)


def builtin_deformed(fam: str, D: MultiIndex | str, params: ParamSet | None,
                     **kw) -> DeformedFamily:
    """Built-in one-index deformations: (L or J) x (1I or 1II)."""
    if isinstance(D, str):
        D = MultiIndex.parse(D)
    if D.entries == ():
        return classical_family(fam, params, **kw)
    if D.entries not in (((1, "I"),), ((1, "II"),)):
        raise ValueError(f"no built-in family for D={D.label()} (supply a plugin)")
    t = D.entries[0][1]
    eta = ParamPoly.var("eta")
    if fam == "L":
        g = params.g if params else ParamPoly.var("g")
        if t == "I":
            xi = eta + g + HALF

            def make_P(n: int) -> ParamPoly:
                Pn = classical_poly("L", n, params)
                return xi * Pn.diff("eta") - (eta + g + 3 * HALF) * Pn
        else:
            seed = eta + g - 3 * HALF
            xi = -seed  # derivative of the printed minimal X

            def make_P(n: int) -> ParamPoly:
                Pn = classical_poly("L", n, params)
                return eta * seed * Pn.diff("eta") - ((HALF - g) * seed + eta) * Pn
    elif fam == "J":
        g = params.g if params else ParamPoly.var("g")
        h = params.h if params else ParamPoly.var("h")
        a, b = g + h, g - h
        if t == "I":
            xi = ((b + 2) * eta + (a - 1)) * HALF

            def make_P(n: int) -> ParamPoly:
                Pn = classical_poly("J", n, params)
                lead = (1 + eta) * ((b + 2) * eta + (a - 1)) * Fraction(1, 4)
                tail = (3 * HALF - h) * ((b + 2) * eta + (a + 1)) * Fraction(1, 4)
                return lead * Pn.diff("eta") - tail * Pn
        else:
            # exact mirror of type I: (g,h) -> (h,g), eta -> -eta
            if params is None:
                raise ValueError("symbolic J type II is not provided")
            xi = ((2 - b) * eta - (a - 1)) * HALF
            base = builtin_deformed("J", MultiIndex(((1, "I"),)), params.swapped(),
                                    build_H=False)

            def make_P(n: int) -> ParamPoly:
                return base.P(n).subs({"eta": -eta})
    else:
        raise ValueError("built-in deformations exist for L and J only")
    build = kw.pop("build_H", params is not None)
    return DeformedFamily(fam, D, params, xi, make_P, build_H=build, **kw)


def build_H_tilde(fam: str, D: MultiIndex | str, params: ParamSet,
                  route: str = "ansatz") -> DiffOp:
    """Similarity-transformed Hamiltonian by the requested route.

    route='ansatz' fits the structural operator shape to low eigen-equations;
    route='conjugation' transforms the printed potential/prefactor data
    (available for the type I built-ins).  Both must agree when both exist.
    """
    if isinstance(D, str):
        D = MultiIndex.parse(D)
    df = builtin_deformed(fam, D, params)
    H_ansatz = df.H_tilde
    if route == "ansatz":
        return H_ansatz
    if route != "conjugation":
        raise ValueError("route must be 'ansatz' or 'conjugation'")
    if fam == "L" and D.entries == ((1, "I"),):
        H_conj = _conjugated_H_laguerre_1I(params)
    elif fam == "J" and D.entries == ((1, "I"),):
        H_conj = _conjugated_H_jacobi_1I(params)
    elif fam == "J" and D.entries == ((1, "II"),):
        base = _conjugated_H_jacobi_1I(params.swapped())
        H_conj = mirror_diffop(base)
    else:
        raise ValueError(f"no printed prefactor data for {fam}[{D.label()}]")
    if H_conj != H_ansatz:
        raise RouteDisagreement(f"{fam}[{D.label()}]: conjugation and ansatz differ")
    return H_conj


def mirror_diffop(H: DiffOp) -> DiffOp:
    """Conjugation by eta -> -eta: order-k coefficient c(eta) -> (-1)^k c(-eta)."""
    eta = ParamPoly.var("eta")
    out = {}
    for k, f in H.coeffs.items():
        flipped = RationalFunc(f.num.subs({"eta": -eta}), f.den.subs({"eta": -eta}))
        out[k] = flipped * ((-1) ** k)
    factors = tuple(fac.subs({"eta": -eta}).primitive() for fac in H.factors)
    return DiffOp(H.var, out, factors)


# -- plugin interface -------------------------------------------------------------


def load_family_plugin(path: str, validate_n: int = 5) -> DeformedFamily:
    """Load a deformed family from a JSON plugin file.

    Schema: {family, parameters: {name: 'p/q'}, D: [{d, type}],
    xi: polynomial record, P: classical-combination rule or explicit list}.
    Energy overrides are not permitted.  All invariants (degrees, the
    eigen-equations, norm-ratio symmetry of the minimal recurrence) are
    validated on load.
    """
    with open(path) as fh:
        data = json.load(fh)
    return family_from_plugin_dict(data, validate_n=validate_n)


def family_from_plugin_dict(data: Mapping, validate_n: int = 5) -> DeformedFamily:
    if not isinstance(data, Mapping):
        raise SchemaError("plugin must be a JSON object")
    if "energy" in data or "energies" in data:
        raise SchemaError("energy overrides are not permitted")
    for key in ("family", "parameters", "D", "xi", "P"):
        if key not in data:
            raise SchemaError(f"plugin is missing {key!r}")
    fam = data["family"]
    if fam not in ("L", "J"):
        raise SchemaError("plugin families must be L or J (differential operators)")
    try:
        params = ParamSet(fam, {k: rat(v) for k, v in data["parameters"].items()})
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad parameters: {exc}") from None
    try:
        D = MultiIndex(tuple((entry["d"], entry["type"]) for entry in data["D"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad multi-index: {exc}") from None
    try:
        xi = ParamPoly.from_record(data["xi"])
    except Exception as exc:
        raise SchemaError(f"bad xi record: {exc}") from None
    if xi.degree("eta") != D.ell:
        raise DegreeMismatch(f"deg xi = {xi.degree('eta')} but ell = {D.ell}")
    rule = data["P"]
    p_max = None
    if rule.get("kind") == "classical-combination":
        try:
            dp_c = ParamPoly.from_record(rule["dP_coeff"])
            p_c = ParamPoly.from_record(rule["P_coeff"])
        except Exception as exc:
            raise SchemaError(f"bad classical-combination rule: {exc}") from None

        def make_P(n: int) -> ParamPoly:
            Pn = classical_poly(fam, n, params)
            return dp_c * Pn.diff("eta") + p_c * Pn
    elif rule.get("kind") == "explicit":
        try:
            polys = [ParamPoly.from_record(recd) for recd in rule["polys"]]
        except Exception as exc:
            raise SchemaError(f"bad explicit polynomial list: {exc}") from None
        if len(polys) < validate_n + 1:
            raise SchemaError(f"explicit plugin needs at least {validate_n + 1} polynomials")
        p_max = len(polys) - 1

        def make_P(n: int) -> ParamPoly:
            return polys[n]
    else:
        raise SchemaError("P rule kind must be 'classical-combination' or 'explicit'")
    df = DeformedFamily(fam, D, params, xi, make_P, source="plugin",
                        validate_n=validate_n, p_max=p_max)
    _plugin_h_consistency(df, n_max=min(validate_n, df.p_max or validate_n))
    return df


def _plugin_h_consistency(df: DeformedFamily, n_max: int = 5) -> None:
    """Norm-ratio symmetry of the minimal recurrence, checked on load."""
    from .recurrence import build_X, check_h_symmetry, compute_table

    X = build_X(df.xi, ParamPoly.const(1))
    upper = n_max if df.p_max is None else max(1, min(n_max, df.p_max - df.xi.degree("eta") - 1))
    table = compute_table(df, X, range(0, upper + 1))
    report = check_h_symmetry(df, table)
    bad = [entry for entry in report if not entry["ok"]]
    if bad:
        raise EigenValidationFailed(f"{df.label}: norm-ratio symmetry fails: {bad[:3]}")
