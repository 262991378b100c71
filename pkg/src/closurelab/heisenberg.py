"""Ladder operators from the exact Heisenberg solution.

The closure data and companion-matrix eigendata assemble, for each frequency
index j, an operator that shifts eigenstates by a fixed amount.  Acting on an
eigenpolynomial every Hamiltonian-dependent scalar collapses to an exact
rational at z = E_n, so the ladder action, the eigenvalue shift, the
recurrence-coefficient match and the time-power expansion of the Heisenberg
solution are all decided exactly.  Ladder operators are never materialized
as standalone operators; they are always evaluated against eigenpolynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactalg import ParamPoly, Rat
from .closure import ClosureData, ad_powers
from .families import DeformedFamily
from .recurrence import RecurrenceTable
from .spectral import (SpectralData, alpha_values_at_energy,
                       eigen_closed_form)


class NotProportional(Exception):
    """A ladder image failed to be a scalar multiple of the target
    eigenpolynomial (falsifies the ladder structure for this instance)."""


@dataclass
class LadderAction:
    """Result of one ladder application a^(j) P(n)."""

    j: int
    n: int
    shift: int
    coefficient: Rat
    image: ParamPoly
    alpha: Rat
    proportional: bool


class LadderContext:
    """Shared exact data for ladder checks on one family instance."""

    def __init__(self, df: DeformedFamily, cd: ClosureData, X: ParamPoly,
                 table: RecurrenceTable, extra_ads: int = 2):
        if cd.R_minus1 is None:
            raise ValueError("need solved closure data including the inhomogeneous term")
        self.df = df
        self.cd = cd
        self.X = X
        self.table = table
        self.K = cd.K
        self.L = cd.K // 2
        self.ads = ad_powers(df.H_tilde, X, cd.K + extra_ads)
        self._spectral: dict[int, tuple[list[Rat], SpectralData]] = {}
        self._images: dict[tuple[int, int], ParamPoly] = {}

    def spectral_at(self, n: int) -> tuple[list[Rat], SpectralData]:
        """(alpha_j(E_n), closed-form eigendata of the companion matrix at E_n)."""
        if n not in self._spectral:
            En = self.df.E(n)
            alphas = alpha_values_at_energy(self.df.fam, self.L, self.df.params, n)
            R_vals = [Ri.evaluate({"z": En}) for Ri in self.cd.R]
            self._spectral[n] = (alphas, eigen_closed_form(R_vals, alphas))
        return self._spectral[n]

    def ad_image(self, i: int, n: int) -> ParamPoly:
        """((ad H)^i X) P(n), exact polynomial."""
        key = (i, n)
        if key not in self._images:
            self._images[key] = self.ads[i].apply_poly(self.df.P(n))
        return self._images[key]

    def r_minus1_at(self, n: int) -> Rat:
        return self.cd.R_minus1.evaluate({"z": self.df.E(n)})


def ladder_apply(ctx: LadderContext, j: int, n: int) -> LadderAction:
    """a^(j) P(n) evaluated exactly; the image must be r_{n,shift} P(n+shift).

    shift = L+1-j (creation side, j <= L) or -(j-L) (annihilation side).
    Raises NotProportional when the image is not a scalar multiple of the
    target eigenpolynomial.
    """
    K, L = ctx.K, ctx.L
    if not 1 <= j <= K:
        raise ValueError("need 1 <= j <= K")
    shift = L + 1 - j if j <= L else -(j - L)
    alphas, sd = ctx.spectral_at(n)
    alpha_j = alphas[j - 1]
    acc = ParamPoly.zero(("eta",))
    for i in range(K):
        acc = acc + ctx.ad_image(i, n) * sd.P[i][j - 1]
    acc = acc + (ctx.r_minus1_at(n) / alpha_j) * ctx.df.P(n)
    image = acc * sd.P_inv[j - 1][0]
    target_n = n + shift
    if target_n < 0:
        ok = image.is_zero
        if not ok:
            raise NotProportional(f"j={j}, n={n}: expected zero below the ground state")
        return LadderAction(j, n, shift, Fraction(0), image, alpha_j, True)
    target = ctx.df.P(target_n)
    coeff = _proportionality(image, target)
    if coeff is None:
        raise NotProportional(f"j={j}, n={n}: image is not proportional to P({target_n})")
    return LadderAction(j, n, shift, coeff, image, alpha_j, True)


def _proportionality(image: ParamPoly, target: ParamPoly) -> Rat | None:
    if image.is_zero:
        return Fraction(0)
    lead_t = target.leading_coeff("eta")
    lead_i = image.coeffs_in("eta").get(target.degree("eta"))
    if lead_i is None:
        return None
    c = lead_i.constant_value() / lead_t.constant_value()
    return c if image == target * c else None


def ladder_suite(ctx: LadderContext, n_range: Iterable[int]) -> list[dict]:
    """Ladder exactness: a^(j) P(n) = r_{n,shift} P(n+shift) for every j,
    with the coefficient taken from the recurrence table."""
    out = []
    for n in n_range:
        for j in range(1, ctx.K + 1):
            entry = {"check": "ladder", "j": j, "n": n}
            try:
                action = ladder_apply(ctx, j, n)
            except NotProportional as exc:
                entry["ok"] = False
                entry["error"] = str(exc)
                out.append(entry)
                continue
            expected = ctx.table.coeff(n, action.shift)
            entry["shift"] = action.shift
            entry["ok"] = action.coefficient == expected
            out.append(entry)
    return out


def check_r0_relation(ctx: LadderContext, n_range: Iterable[int]) -> list[dict]:
    """-R_-1(E_n) / R_0(E_n) equals the diagonal recurrence coefficient."""
    out = []
    for n in n_range:
        En = ctx.df.E(n)
        lhs = -ctx.cd.R_minus1.evaluate({"z": En}) / ctx.cd.R[0].evaluate({"z": En})
        out.append({"check": "diagonal-coefficient", "n": n,
                    "ok": lhs == ctx.table.coeff(n, 0)})
    return out


def commutation_check(ctx: LadderContext, n_range: Iterable[int]) -> list[dict]:
    """H (a^(j) P(n)) = (E_n + alpha_j(E_n)) (a^(j) P(n)), exactly, and the
    sign of alpha_j(E_n) matches creation (j <= L) vs annihilation (j > L)."""
    out = []
    H = ctx.df.H_tilde
    for n in n_range:
        for j in range(1, ctx.K + 1):
            action = ladder_apply(ctx, j, n)
            entry = {"check": "eigenvalue-shift", "j": j, "n": n}
            if action.image.is_zero:
                entry["ok"] = True
                entry["vacuous"] = True
            else:
                lhs = H.apply_poly(action.image)
                rhs = action.image * (ctx.df.E(n) + action.alpha)
                sign_ok = (action.alpha > 0) if j <= ctx.L else (action.alpha < 0)
                entry["ok"] = (lhs == rhs) and sign_ok
            out.append(entry)
    return out


def heisenberg_series_check(ctx: LadderContext, n: int, m_max: int) -> list[dict]:
    """Time-power coefficients of the Heisenberg solution acting on P(n).

    Order m >= 1: (ad H)^m X P(n) = sum_j alpha_j(E_n)^m (a^(j) P(n)).
    Order m = 0: X P(n) = sum_j a^(j) P(n) - R_-1(E_n)/R_0(E_n) P(n).
    """
    if m_max > len(ctx.ads) - 1:
        raise ValueError("m_max exceeds the computed commutator powers")
    out = []
    alphas, _ = ctx.spectral_at(n)
    images = [ladder_apply(ctx, j, n).image for j in range(1, ctx.K + 1)]
    En = ctx.df.E(n)
    const = (ctx.cd.R_minus1.evaluate({"z": En})
             / ctx.cd.R[0].evaluate({"z": En}))
    for m in range(m_max + 1):
        lhs = ctx.ad_image(m, n)
        rhs = ParamPoly.zero(("eta",))
        for alpha, img in zip(alphas, images):
            rhs = rhs + img * alpha ** m
        if m == 0:
            rhs = rhs - const * ctx.df.P(n)
        out.append({"check": "time-power", "m": m, "n": n, "ok": lhs == rhs})
    return out


def round_trip_check(ctx: LadderContext, n_range: Iterable[int]) -> list[dict]:
    """Fundamental ladders: lowering after raising multiplies by
    r_{n,1} r_{n+1,-1} (positive at admissible parameters)."""
    out = []
    L = ctx.L
    for n in n_range:
        up = ladder_apply(ctx, L, n)          # raises by one
        assert up.shift == 1
        if up.image.is_zero:
            continue
        # apply the lowering combination to the raised polynomial: n+1 state
        down = ladder_apply(ctx, L + 1, n + 1)
        assert down.shift == -1
        product = up.coefficient * down.coefficient
        expected = ctx.table.coeff(n, 1) * ctx.table.coeff(n + 1, -1)
        out.append({"check": "round-trip", "n": n,
                    "ok": product == expected and product > 0})
    return out


def two_step_specialization(ctx: LadderContext, n_range: Iterable[int]) -> list[dict]:
    """K = 2 consistency with the classic creation/annihilation pair:
    a^(+-) = +-([H,X] - (X + R_-1 R_0^-1) alpha_-+) / (alpha_+ - alpha_-)
    must reproduce a^(1), a^(2) acting on eigenpolynomials."""
    if ctx.K != 2:
        raise ValueError("specialization check needs K = 2")
    out = []
    for n in n_range:
        alphas, _ = ctx.spectral_at(n)
        ap, am = alphas
        En = ctx.df.E(n)
        const = ctx.r_minus1_at(n) / ctx.cd.R[0].evaluate({"z": En})
        adX = ctx.ad_image(1, n)
        Xp = ctx.ad_image(0, n)
        Pn = ctx.df.P(n)
        denom = ap - am
        plus = (adX - (Xp + const * Pn) * am) * (1 / denom)
        minus = -(adX - (Xp + const * Pn) * ap) * (1 / denom)
        a1 = ladder_apply(ctx, 1, n).image
        a2 = ladder_apply(ctx, 2, n).image
        out.append({"check": "two-step-form", "n": n,
                    "ok": plus == a1 and minus == a2})
    return out
