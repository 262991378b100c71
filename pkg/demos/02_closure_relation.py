"""Solve a generalized closure relation exactly and verify it as an operator
identity, order by order in the derivative.

The fourth commutator of the transformed Hamiltonian with the minimal X is
expressed through lower commutators with polynomial right-coefficients; the
solve is an exact linear system, uniqueness comes from the kernel, and a
deliberately perturbed coefficient breaks the identity.
"""

from fractions import Fraction

from closurelab.exactalg import ParamPoly
from closurelab.closure import (ClosureData, closure_for_family, conjectured_R,
                                compare_reference, verify_closure_identity)
from closurelab.families import ParamSet, builtin_deformed

params = ParamSet("L", {"g": Fraction(7, 3)})
family = builtin_deformed("L", "1I", params)

cd, X = closure_for_family(family, ParamPoly.const(1))
print(f"order K = {cd.K}, unique solution: {cd.unique}")
for i, Ri in enumerate(cd.R):
    print(f"  R_{i}(z) = {Ri}")
print(f"  R_-1(z) = {cd.R_minus1}")

assert verify_closure_identity(family.H_tilde, X, cd)
print("operator identity verified coefficient-wise")

conj = conjectured_R("L", cd.K // 2, params)
assert all(cd.R[i] == conj.R[i] for i in range(cd.K))
print("solved R_i equal the eigenvalue-list expansion")

print(compare_reference("L", "1I", "1", cd, {"g": params.g}))

# negative control: perturbing one coefficient must break the identity
broken = ClosureData(cd.K, list(cd.R), cd.R_minus1, "solved", "L")
broken.R[2] = ParamPoly.const(81)
assert not verify_closure_identity(family.H_tilde, X, broken)
print("perturbed R_2 = 81 fails, as it must")

# higher order: Y = eta gives a seven-term recurrence and order K = 6
cd6, X6 = closure_for_family(family, ParamPoly.var("eta"))
print(f"\nY = eta: K = {cd6.K}, even R values:",
      [str(cd6.R[i]) for i in range(0, cd6.K, 2)])
