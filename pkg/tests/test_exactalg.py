"""Exact arithmetic substrate: polynomials, rational functions, linear
solving, interpolation."""

import random
from fractions import Fraction as F

import pytest

from closurelab.exactalg import (LinearSolution, ParamPoly, RationalFunc,
                                 SampleMismatch, interpolate_grid,
                                 interpolate_param, parse_poly, poly_arith,
                                 poly_div_exact, poly_gcd_univar, rat,
                                 rat_str, solve_linear_exact)

eta = ParamPoly.var("eta")
g = ParamPoly.var("g")
z = ParamPoly.var("z")


def test_rat_string_round_trip():
    assert rat("3/4") == F(3, 4)
    assert rat_str(F(3, 4)) == "3/4"
    assert rat_str(F(-5)) == "-5"
    assert rat(rat_str(F(22, 7))) == F(22, 7)


def test_poly_arith_distributes():
    p = poly_arith(eta + g + F(1, 2), 2 * eta, "mul")
    assert p == 2 * eta ** 2 + (2 * g + 1) * eta


def test_poly_scale_matches_inhomogeneous_closure_coefficients():
    base = 3 * z ** 2 + 2 * (10 * g + 11) * z + 2 * (2 * g + 1) * (6 * g + 13)
    scaled = base * 64
    assert scaled.coeffs_in("z")[2] == ParamPoly.const(192)
    assert scaled.coeffs_in("z")[0] == 128 * (2 * g + 1) * (6 * g + 13)


def test_additive_inverse_gives_empty_terms():
    p = eta ** 3 - 2 * eta + 7
    assert (p - p).terms == {}
    assert (p - p).is_zero


def test_degree_bookkeeping():
    a = eta ** 2 + 1
    b = -eta ** 2 + eta
    assert (a + b).degree("eta") == 1
    assert (a * b).degree("eta") == 4
    assert ParamPoly.zero().degree() == -1


def test_field_axioms_randomized():
    rng = random.Random(0)

    def rnd():
        return F(rng.randint(-30, 30), rng.randint(1, 12))

    for _ in range(200):
        a, b, c = rnd(), rnd(), rnd()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * (1 / a) == 1
        assert a + (-a) == 0


def test_poly_subs_and_evaluate():
    p = (eta + g) ** 2
    assert p.subs({"g": F(1, 2)}) == eta ** 2 + eta + F(1, 4)
    assert p.evaluate({"eta": F(2), "g": F(1)}) == 9
    # substitute a polynomial for a variable
    assert p.subs({"eta": -eta}) == (g - eta) ** 2


def test_integrate_and_diff_round_trip():
    p = 3 * eta ** 2 + g * eta + 1
    assert p.integrate("eta").diff("eta") == p
    assert p.integrate("eta").subs({"eta": 0}).is_zero


def test_poly_div_exact_multivariate():
    a = (eta + g + F(1, 2)) * (eta ** 2 - g)
    assert poly_div_exact(a, eta + g + F(1, 2)) == eta ** 2 - g
    assert poly_div_exact(a + 1, eta + g + F(1, 2)) is None


def test_gcd_univar():
    a = (eta - 1) * (eta + 2) ** 2
    b = (eta + 2) * (eta + 3)
    assert poly_gcd_univar(a, b, "eta") == eta + 2


def test_rationalfunc_normalize_and_evaluate_agree():
    rng = random.Random(1)
    f = RationalFunc((eta ** 2 - 1) * (eta + 3), (eta - 1) * (eta + 5))
    for _ in range(20):
        x = F(rng.randint(2, 50), rng.randint(1, 7))
        direct = ((x ** 2 - 1) * (x + 3)) / ((x - 1) * (x + 5))
        assert f.evaluate({"eta": x}) == direct


def test_rationalfunc_known_factor_reduction():
    xi = eta + g + F(1, 2)
    f = RationalFunc(xi * xi * eta, xi ** 3, factors=(xi,))
    # both squared factors cancel; only one power of xi remains below
    assert f.den.degree("eta") == 1
    assert f == RationalFunc(eta, xi, factors=(xi,))


def test_solve_identity_and_underdetermined():
    sol = solve_linear_exact([[1, 0], [0, 1]], [1, 0])
    assert sol.solution == [F(1), F(0)] and sol.kernel_basis == []
    sol = solve_linear_exact([[1, 1]], [1])
    assert sol.consistent and len(sol.kernel_basis) == 1
    k = sol.kernel_basis[0]
    assert k[0] + k[1] == 0
    assert sol.solution[0] + sol.solution[1] == 1


def test_solve_inconsistent_is_reported_not_raised():
    sol = solve_linear_exact([[1, 1], [1, 1]], [1, 2])
    assert isinstance(sol, LinearSolution)
    assert not sol.consistent and sol.solution is None


def test_solve_residual_properties_randomized():
    rng = random.Random(2)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = [[F(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
        x = [F(rng.randint(-3, 3)) for _ in range(cols)]
        rhs = [sum(M[i][j] * x[j] for j in range(cols)) for i in range(rows)]
        sol = solve_linear_exact(M, rhs)
        assert sol.consistent
        for i in range(rows):
            assert sum(M[i][j] * sol.solution[j] for j in range(cols)) == rhs[i]
        for vec in sol.kernel_basis:
            for i in range(rows):
                assert sum(M[i][j] * vec[j] for j in range(cols)) == 0


def test_bareiss_symbolic_solve():
    M = [[g, ParamPoly.const(1)], [ParamPoly.const(0), g]]
    rhs = [g + 1, g]
    sol = solve_linear_exact(M, rhs)
    one = RationalFunc(ParamPoly.const(1))
    assert sol.solution == [one, one]
    # symbolic kernel
    sol = solve_linear_exact([[g, g]], [g])
    assert sol.consistent and len(sol.kernel_basis) == 1


def test_bareiss_kernel_vectors_are_exact_null_vectors():
    rng = random.Random(9)
    for _ in range(10):
        rows, cols = rng.randint(1, 3), rng.randint(2, 4)
        M = [[ParamPoly.univar("g", {0: F(rng.randint(-3, 3)),
                                     1: F(rng.randint(-2, 2))})
              for _ in range(cols)] for _ in range(rows)]
        rhs = [ParamPoly.zero(("g",))] * rows
        sol = solve_linear_exact(M, rhs)
        assert sol.consistent
        zero = RationalFunc(ParamPoly.zero())
        for vec in sol.kernel_basis:
            for i in range(rows):
                acc = zero
                for j in range(cols):
                    acc = acc + RationalFunc(M[i][j]) * vec[j]
                assert acc.is_zero


def test_interpolate_linear():
    got = interpolate_param([(0, F(2)), (1, F(3))], 1, "g")
    assert got == g + 2


def test_interpolate_reconstructs_coefficient_polynomial():
    target = 128 * (2 * g + 1) * (6 * g + 13)
    samples = [(F(k), target.evaluate({"g": F(k)})) for k in (2, 3, 4, 5)]
    assert interpolate_param(samples, 2, "g") == target


def test_interpolate_constant_collapse():
    got = interpolate_param([(0, F(5)), (1, F(5)), (2, F(5))], 2, "g")
    assert got == ParamPoly.const(5, ("g",))


def test_interpolate_round_trip_randomized():
    rng = random.Random(3)
    for _ in range(20):
        deg = rng.randint(0, 4)
        coeffs = {k: F(rng.randint(-9, 9)) for k in range(deg + 1)}
        p = ParamPoly.univar("g", coeffs)
        pts = random.Random(deg).sample(range(-8, 9), deg + 3)
        samples = [(F(x), p.evaluate({"g": F(x)})) for x in pts]
        assert interpolate_param(samples, deg, "g") == p


def test_interpolate_mismatch_raises():
    samples = [(F(0), F(0)), (F(1), F(1)), (F(2), F(4))]  # quadratic data
    with pytest.raises(SampleMismatch):
        interpolate_param(samples, 1, "g")


def test_interpolate_grid_two_parameters():
    a, b = ParamPoly.var("a"), ParamPoly.var("b")
    target = (a + 1) * (b - 2) + a * a
    samples = {}
    for av in (0, 1, 2, 5):
        for bv in (0, 1, 3):
            samples[(F(av), F(bv))] = target.evaluate({"a": F(av), "b": F(bv)})
    got = interpolate_grid(samples, {"a": 2, "b": 1}, ["a", "b"])
    assert got == target


def test_parse_poly_grammar():
    assert parse_poly("1") == ParamPoly.const(1)
    assert parse_poly("eta^2") == eta ** 2
    assert parse_poly("1/2*eta^2 - 3*eta + 1") == eta ** 2 * F(1, 2) - 3 * eta + 1
    assert parse_poly("-eta") == -eta
    assert parse_poly("2*(eta+1)") == 2 * eta + 2
    with pytest.raises(ValueError):
        parse_poly("eta^")


def test_records_round_trip():
    p = eta ** 2 * F(1, 3) - g * 7
    assert ParamPoly.from_record(p.record()) == p
