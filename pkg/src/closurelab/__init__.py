"""closurelab: exact verification of constant-coefficient recurrences,
generalized closure relations and ladder operators for deformed
orthogonal-polynomial systems (Laguerre, Jacobi, Wilson, Askey-Wilson)."""

__version__ = "0.1.0"

from .exactalg import (
    ParamPoly,
    Rat,
    RationalFunc,
    interpolate_grid,
    interpolate_param,
    parse_poly,
    rat,
    rat_str,
    solve_linear_exact,
)

__all__ = [
    "ParamPoly",
    "Rat",
    "RationalFunc",
    "interpolate_grid",
    "interpolate_param",
    "parse_poly",
    "rat",
    "rat_str",
    "solve_linear_exact",
    "__version__",
]
