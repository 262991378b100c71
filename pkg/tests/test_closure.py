"""Closure relations: nested commutators, exact solve, identity verification,
conjectured coefficients, reference tables, spectral consequences."""

from fractions import Fraction as F

import pytest

from closurelab.exactalg import ParamPoly, SampleMismatch
from closurelab.closure import (ClosureData, NoSolution, TableMissing,
                                ad_powers, closure_for_family,
                                compare_reference, conjectured_R,
                                degree_bounds, load_reference_tables,
                                reconstruct_closure, reference_expanded,
                                solve_closure, verify_closure_identity)
from closurelab.families import ParamSet, builtin_deformed, classical_family
from closurelab.opalg import DiffOp
from closurelab.spectral import alpha_values_at_energy
from closurelab.families import energy

eta = ParamPoly.var("eta")
z = ParamPoly.var("z")
g = ParamPoly.var("g")


def test_degree_bounds_by_family_kind():
    b = degree_bounds("L", 8)
    assert b[0] == 4 and b[7] == 0 and b[-1] == 4
    b = degree_bounds("W", 4)
    assert b[0] == 4 and b[3] == 1 and b[-1] == 4


def test_ad_powers_initial_element(l1i, l1i_closure):
    _, X = l1i_closure
    ads = ad_powers(l1i.H_tilde, X, 2)
    assert ads[0].apply_poly(ParamPoly.const(1, ("eta",))) == X
    assert ads[0].order == 0 and ads[1].order == 1 and ads[2].order == 2


def test_classical_L_order2_closure(l_classical, lag_params):
    cd, X = closure_for_family(l_classical, ParamPoly.const(1))
    gv = lag_params.g
    assert cd.R[0] == ParamPoly.const(16, ("z",))
    assert cd.R[1].is_zero
    assert cd.R_minus1 == -8 * (z + 2 * gv + 1)
    assert cd.unique
    assert verify_closure_identity(l_classical.H_tilde, X, cd)


def test_classical_J_order2_closure(j_classical, jac_params):
    cd, X = closure_for_family(j_classical, ParamPoly.const(1))
    av, bv = jac_params.a, jac_params.b
    assert cd.R[1] == ParamPoly.const(8, ("z",))
    assert cd.R[0] == 16 * (z + av * av - 1)
    assert cd.R_minus1 == ParamPoly.const(16 * bv * (av - 1), ("z",))


def test_L1I_order4_golden(l1i_closure, lag_params):
    cd, X = l1i_closure
    gv = lag_params.g
    assert [r.constant_value() for r in cd.R] == [-1024, 0, 80, 0]
    assert cd.R_minus1 == 64 * (3 * z ** 2 + 2 * (10 * gv + 11) * z
                                + 2 * (2 * gv + 1) * (6 * gv + 13))
    assert cd.unique and cd.kernel_dim == 0
    assert cd.bounds_ok()


def test_L1I_order4_identity_and_perturbation(l1i, l1i_closure):
    cd, X = l1i_closure
    assert verify_closure_identity(l1i.H_tilde, X, cd)
    broken = ClosureData(cd.K, list(cd.R), cd.R_minus1, "solved", "L")
    broken.R[2] = ParamPoly.const(81, ("z",))
    assert not verify_closure_identity(l1i.H_tilde, X, broken)


def test_L1II_order4_golden(l1ii_closure, lag_params):
    cd, X = l1ii_closure
    gv = lag_params.g
    assert [r.constant_value() for r in cd.R] == [-1024, 0, 80, 0]
    assert cd.R_minus1 == -64 * (3 * z ** 2 + 2 * (10 * gv - 9) * z
                                 + 2 * (2 * gv - 3) * (6 * gv + 1))


def test_J1I_order4_golden(j1i_closure, jac_params):
    cd, X = j1i_closure
    av, bv = jac_params.a, jac_params.b
    assert cd.R[3] == ParamPoly.const(40, ("z",))
    assert cd.R[2] == 80 * (z + av * av) - 528
    assert cd.R[1] == -1024 * (z + av * av - F(5, 2))
    assert cd.R[0] == -1024 * (z + av * av - 1) * (z + av * av - 4)
    expected = 128 * (bv + 2) * (z ** 2
                                 - ((bv + 2) ** 2 + 3 * av * av - 10 * av + 1) * z
                                 + 2 * (av - 1) * (av - 2)
                                 * ((bv + 2) ** 2 - 2 * av * av - av - 3))
    assert cd.R_minus1 == expected


def test_J1II_is_sign_flipped_image(j1i_closure, j1ii_closure, jac_params):
    cd1, _ = j1i_closure
    cd2, _ = j1ii_closure
    assert all(cd1.R[i] == cd2.R[i] for i in range(4))
    # R_-1 relation under b -> -b is checked against the stored table
    cmp = compare_reference("J", "1II", "1", cd2,
                            {"a": jac_params.a, "b": jac_params.b})
    assert cmp["ok"]


def test_solved_equals_conjectured_L_all_orders(l1i):
    for Y, L in ((ParamPoly.const(1), 2), (eta, 3)):
        cd, _ = closure_for_family(l1i, Y)
        conj = conjectured_R("L", L, l1i.params)
        assert all(cd.R[i] == conj.R[i] for i in range(2 * L))
        assert conj.R_minus1 is None and conj.provenance == "conjectured"


def test_reference_comparison_and_missing(l1i_closure, lag_params):
    cd, _ = l1i_closure
    cmp = compare_reference("L", "1I", "1", cd, {"g": lag_params.g})
    assert cmp["ok"]
    with pytest.raises(TableMissing):
        compare_reference("L", "9I", "1", cd)


def test_no_solution_for_understated_order(l1i, l1i_closure):
    # order 2 cannot close for the deformed system (needs K = 4)
    _, X = l1i_closure
    ads = ad_powers(l1i.H_tilde, X, 2)
    with pytest.raises(NoSolution):
        solve_closure(ads, l1i.H_tilde, "L")


def test_spectral_consequence_beta_identity(lag_params, jac_params, wil_params,
                                            aw_params):
    # beta = E_{n+k} - E_n satisfies beta^K = sum_i R_i(E_n) beta^i for
    # k != 0; this is the exact spectral-level check for all four families.
    for fam, ps in (("L", lag_params), ("J", jac_params),
                    ("W", wil_params), ("AW", aw_params)):
        for L in (1, 2):
            K = 2 * L
            conj = conjectured_R(fam, L, ps)
            for n in range(9):
                En = energy(ps, n)
                R_at = [Ri.evaluate({"z": En}) for Ri in conj.R]
                for k in range(-L, L + 1):
                    if k == 0 or n + k < 0:
                        continue
                    beta = energy(ps, n + k) - En
                    assert beta ** K == sum(R_at[i] * beta ** i for i in range(K)), \
                        (fam, L, n, k)


def test_alpha_values_are_closure_roots(l1i_closure, lag_params):
    cd, _ = l1i_closure
    for n in range(5):
        En = energy(lag_params, n)
        R_at = [Ri.evaluate({"z": En}) for Ri in cd.R]
        for al in alpha_values_at_energy("L", 2, lag_params, n):
            assert al ** 4 == sum(R_at[i] * al ** i for i in range(4))


def test_reconstruct_closure_symbolic_in_g():
    def solve_at(binding):
        ps = ParamSet("L", {"g": binding["g"]})
        df = builtin_deformed("L", "1I", ps)
        cd, _ = closure_for_family(df, ParamPoly.const(1))
        return cd

    nodes = {"g": [F(2), F(7, 3), F(3), F(7, 2), F(4), F(9, 2), F(5)]}
    extra = {"g": [F(11, 2), F(6)]}
    cd = reconstruct_closure(solve_at, "L", 4, nodes, {"g": 2}, extra)
    assert cd.R_minus1 == 64 * (3 * z ** 2 + 2 * (10 * g + 11) * z
                                + 2 * (2 * g + 1) * (6 * g + 13))
    cmp = compare_reference("L", "1I", "1", cd)
    assert cmp["ok"]


def test_reconstruct_detects_wrong_bound_then_doubles():
    # quadratic g-dependence with a bound of 0 must double and still succeed
    def solve_at(binding):
        gv = binding["g"]
        fake = ClosureData(2, [ParamPoly.const(gv * gv, ("z",)),
                               ParamPoly.zero(("z",))],
                           ParamPoly.zero(("z",)), "solved", "L")
        return fake

    nodes = {"g": [F(k) for k in range(1, 9)]}
    extra = {"g": [F(9), F(10)]}
    cd = reconstruct_closure(solve_at, "L", 2, nodes, {"g": 0}, extra,
                             max_doublings=3)
    assert cd.R[0] == g * g


def test_kernel_reporting_on_padded_order(l_classical):
    # asking for order 4 on the classical system: consistent but non-unique
    X = ParamPoly.var("eta")
    ads = ad_powers(l_classical.H_tilde, X, 4)
    conj = conjectured_R("L", 2, l_classical.params)
    cd = solve_closure(ads, l_classical.H_tilde, "L", conj)
    assert cd.kernel_dim > 0 and not cd.unique
    assert verify_closure_identity(l_classical.H_tilde, X, cd,
                                   ads=ads)
