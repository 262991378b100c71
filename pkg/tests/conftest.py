"""Shared exact fixtures; heavy solves are session-scoped and reused."""

from fractions import Fraction

import pytest

from closurelab.exactalg import ParamPoly
from closurelab.closure import closure_for_family
from closurelab.families import ParamSet, builtin_deformed, classical_family
from closurelab.recurrence import compute_table


@pytest.fixture(scope="session")
def lag_params():
    return ParamSet("L", {"g": Fraction(7, 3)})


@pytest.fixture(scope="session")
def jac_params():
    return ParamSet("J", {"g": Fraction(2), "h": Fraction(3)})


@pytest.fixture(scope="session")
def wil_params():
    return ParamSet("W", {"a1": Fraction(2), "a2": Fraction(5, 2),
                          "a3": Fraction(3), "a4": Fraction(7, 2)})


@pytest.fixture(scope="session")
def aw_params():
    return ParamSet("AW", {"a1": Fraction(1, 4), "a2": Fraction(1, 5),
                           "a3": Fraction(1, 10), "a4": Fraction(1, 10),
                           "q": Fraction(4, 9)})


@pytest.fixture(scope="session")
def l_classical(lag_params):
    return classical_family("L", lag_params)


@pytest.fixture(scope="session")
def j_classical(jac_params):
    return classical_family("J", jac_params)


@pytest.fixture(scope="session")
def l1i(lag_params):
    return builtin_deformed("L", "1I", lag_params)


@pytest.fixture(scope="session")
def l1ii(lag_params):
    return builtin_deformed("L", "1II", lag_params)


@pytest.fixture(scope="session")
def j1i(jac_params):
    return builtin_deformed("J", "1I", jac_params)


@pytest.fixture(scope="session")
def j1ii(jac_params):
    return builtin_deformed("J", "1II", jac_params)


@pytest.fixture(scope="session")
def l1i_closure(l1i):
    return closure_for_family(l1i, ParamPoly.const(1))


@pytest.fixture(scope="session")
def l1ii_closure(l1ii):
    return closure_for_family(l1ii, ParamPoly.const(1))


@pytest.fixture(scope="session")
def j1i_closure(j1i):
    return closure_for_family(j1i, ParamPoly.const(1))


@pytest.fixture(scope="session")
def j1ii_closure(j1ii):
    return closure_for_family(j1ii, ParamPoly.const(1))


@pytest.fixture(scope="session")
def l1i_table(l1i, l1i_closure):
    _, X = l1i_closure
    return compute_table(l1i, X, range(11))


@pytest.fixture(scope="session")
def j1i_table(j1i, j1i_closure):
    _, X = j1i_closure
    return compute_table(j1i, X, range(10))
