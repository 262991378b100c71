"""Source transcriptions of the reference inhomogeneous-term tables.

Each entry gives the factored closed form of R_-1(z) for one family and
multi-index (minimal X unless a Y label says otherwise), as a Python
expression over exact polynomials.  Variables: z; g (Laguerre); a, b
(Jacobi); s1, s2, sp1, sp2 and b1..b4 (Wilson/Askey-Wilson sigma and
elementary-symmetric parameters); q and r = q^(1/2) (Askey-Wilson).
F is Fraction.  Derived rows carry a transform of a base row instead of
their own expression.

Expression strings are the transcription of record; the JSON data file
freezes their expansions and is verified against these strings by tests.
"""

# fmt: off

LAGUERRE = {
    ("{}", "1"): "-8*(z + 2*g + 1)",
    ("1I", "1"): "64*(2*(1+2*g)*(13+6*g) + 2*(11+10*g)*z + 3*z**2)",
    ("1II", "1"): "-64*(2*(2*g-3)*(1+6*g) + 2*(10*g-9)*z + 3*z**2)",
    ("1I", "eta"):
        "-1536*(10*z**3 + 3*(26*g+33)*z**2 + 2*(84*g**2+240*g+139)*z"
        " + 2*(2*g+1)*(2*g+5)*(10*g+27))",
    ("1I", "eta^2"):
        "24576*(105*z**4 + 20*(50*g+67)*z**3 + 60*(52*g**2+152*g+107)*z**2"
        " + 32*(6*g+5)*(18*g**2+77*g+94)*z"
        " + 8*(2*g+1)*(2*g+5)*(2*g+7)*(14*g+45))",
    ("2I", "1"):
        "-1536*(2*(1+2*g)*(3+2*g)*(41+14*g) + 4*(61+108*g+36*g**2)*z"
        " + 24*(3+2*g)*z**2 + 5*z**3)",
    ("2II", "1"):
        "-1536*(2*(2*g-5)*(2*g-1)*(3+14*g) + 4*(25-84*g+36*g**2)*z"
        " + 12*(4*g-5)*z**2 + 5*z**3)",
    ("1I,2I", "1"):
        "-1536*(2*(1+2*g)*(5+2*g)*(45+14*g) + 4*(97+132*g+36*g**2)*z"
        " + 12*(7+4*g)*z**2 + 5*z**3)",
    ("1II,2II", "1"):
        "1536*(2*(2*g-5)*(2*g-3)*(14*g-1) + 4*(61-108*g+36*g**2)*z"
        " + 24*(2*g-3)*z**2 + 5*z**3)",
    ("3I", "1"):
        "12288*(8*(1+2*g)*(3+2*g)*(5+2*g)*(113+30*g)"
        " + 16*(935+2072*g+1284*g**2+224*g**3)*z"
        " + 4*(1405+1848*g+492*g**2)*z**2 + 20*(41+22*g)*z**3 + 35*z**4)",
    ("3II", "1"):
        "-12288*(24*(2*g-7)*(2*g-1)*(-5-16*g+20*g**2)"
        " + 16*(-245+968*g-972*g**2+224*g**3)*z"
        " + 4*(805-1512*g+492*g**2)*z**2 + 20*(22*g-35)*z**3 + 35*z**4)",
    ("1I,3I", "1"):
        "24576*(8*(1+2*g)*(5+2*g)*(17+6*g)*(39+10*g)"
        " + 16*(1625+2984*g+1500*g**2+224*g**3)*z"
        " + 4*(2005+2136*g+492*g**2)*z**2 + 20*(47+22*g)*z**3 + 35*z**4)",
    ("1II,3II", "1"):
        "24576*(8*(2*g-7)*(2*g-3)*(6*g-7)*(10*g-1)"
        " + 16*(-647+1736*g-1188*g**2+224*g**3)*z"
        " + 4*(1333-1800*g+492*g**2)*z**2 + 20*(22*g-41)*z**3 + 35*z**4)",
    ("1I,2I,3I", "1"):
        "12288*(24*(1+2*g)*(7+2*g)*(251+144*g+20*g**2)"
        " + 16*(2411+3944*g+1716*g**2+224*g**3)*z"
        " + 4*(2629+2424*g+492*g**2)*z**2 + 20*(53+22*g)*z**3 + 35*z**4)",
    ("1II,2II,3II", "1"):
        "12288*(8*(2*g-7)*(2*g-5)*(2*g-3)*(30*g-7)"
        " + 16*(-1145+2552*g-1404*g**2+224*g**3)*z"
        " + 4*(1885-2088*g+492*g**2)*z**2 + 20*(22*g-47)*z**3 + 35*z**4)",
    ("1I,1II", "1"):
        "73728*(8*(2*g-3)*(1+2*g)*(5+6*g)*(19+10*g)"
        " + 16*(-135-328*g+156*g**2+224*g**3)*z"
        " + 4*(-299+168*g+492*g**2)*z**2 + 20*(3+22*g)*z**3 + 35*z**4)",
}

JACOBI = {
    ("{}", "1"): "16*b*(a-1)",
    ("1I", "1"):
        "128*(2+b)*(2*(a-2)*(a-1)*((2+b)**2-3-a-2*a**2)"
        " - ((2+b)**2+1-10*a+3*a**2)*z + z**2)",
    ("2I", "1"):
        "3072*(1-a)*("
        "2*(a-3)*(a-2)*(3*(a-2)*a*(2+a)*(3+a)"
        " - 3*(2+a)*(5+a+a**3)*(3+b) - (14-3*a+3*a**2)*(3+b)**2"
        " + (10+3*a+3*a**2)*(3+b)**3 + 2*(3+b)**4 - (3+b)**5)"
        " + 3*(2*(a-2)*a*(-13+2*a**2) + (46-28*a-2*a**2+12*a**3-3*a**4)*(3+b)"
        " - 2*(1-6*a-a**2)*(3+b)**2 - 2*(1+4*a)*(3+b)**3 - 2*(3+b)**4"
        " + (3+b)**5)*z"
        " + 6*((a-2)*a - (4-3*a)*(3+b) + 2*(3+b)**2 - (3+b)**3)*z**2"
        " + 3*(3+b)*z**3)",
    ("1I,2I", "1"):
        "-1536*(1-a)*(4+b)*("
        "2*(a-3)*(a-2)*(3*(a-2)*a*(2+a)*(3+a)"
        " + 3*(2+a)*(5+a+a**3)*(3+b) - (14-3*a+3*a**2)*(3+b)**2"
        " - (10+3*a+3*a**2)*(3+b)**3 + 2*(3+b)**4 + (3+b)**5)"
        " + 3*(2*(a-2)*a*(-13+2*a**2) - (46-28*a-2*a**2+12*a**3-3*a**4)*(3+b)"
        " + 2*(1-6*a-a**2)*(3+b)**2 + 2*(1+4*a)*(3+b)**3 - 2*(3+b)**4"
        " - (3+b)**5)*z"
        " + 6*((a-2)*a + (4-3*a)*(3+b) + 2*(3+b)**2 + (3+b)**3)*z**2"
        " - 3*(3+b)*z**3)",
}

# Derived Jacobi rows: the type II images under b -> -b (with the printed signs)
JACOBI_DERIVED = {
    ("1II", "1"): {"base": ("1I", "1"), "transform": "b->-b", "scale": "1"},
    ("2II", "1"): {"base": ("2I", "1"), "transform": "b->-b", "scale": "-1"},
    ("1II,2II", "1"): {"base": ("1I,2I", "1"), "transform": "b->-b", "scale": "-1"},
}

WILSON = {
    ("{}", "1"): "-2*z**2 + (b1 - 2*b2)*z - (b1-2)*b3",
    ("1I", "1"):
        "F(1,8)*(s1+sp1-3)*(s1+sp1-2)*("
        "2*(s1+sp1) + (s1+sp1)*(s1-5*sp1) - (s1+sp1)*(s1**2+7*sp1**2)"
        " + 16*(s1*sp2+4*sp1*s2-3*sp1*sp2)"
        " + 8*(s1**2*sp2 + s1*sp1*(s1+sp1)**2 + s1*sp1*(s2+15*sp2)"
        "     + sp1**2*(21*s2-6*sp2))"
        " - 8*(s1**3*sp2 + s1**2*sp1*(7*s2+2*sp2) + s1*sp1**2*(14*s2-15*sp2)"
        "     - 9*sp1**3*s2 - 4*s1*sp2**2 + 4*sp1*(2*s2**2-4*s2*sp2+sp2**2))"
        " - 16*(s1*sp1*(s1+3*sp1)*(s1*sp2+sp1*s2) - s1**2*sp2**2"
        "      - s1*sp1*(5*s2**2-8*s2*sp2+7*sp2**2) + sp1**2*s2*(s2-4*sp2))"
        " - 16*(s1*sp2+sp1*s2)*(s1**2*sp2 - 3*s1*sp1*(s2-sp2) - sp1**2*s2))"
        " + F(1,2)*("
        "-6 + 9*(3*s1+5*sp1) + 8*(s1**2+2*s1*sp1+16*sp1**2-12*s2+6*sp2)"
        " - 2*(13*s1**3+53*s1**2*sp1+143*s1*sp1**2-17*sp1**3"
        "     +52*s1*sp2+220*sp1*s2)"
        " + 8*(s1**4+7*s1**3*sp1+15*s1**2*sp1**2-17*s1*sp1**3-2*sp1**4"
        "     + s1**2*(9*s2+11*sp2) + 2*s1*sp1*(37*s2-15*sp2)"
        "     - sp1**2*(11*s2+13*sp2) + 12*s2*(s2-2*sp2))"
        " - 8*(s1*sp1*(s1**3-4*s1**2*sp1-16*s1*sp1**2-5*sp1**3)"
        "     + s1**3*(3*s2+5*sp2) + s1**2*sp1*(23*s2-33*sp2)"
        "     - s1*sp1**2*(35*s2+11*sp2) - sp1**3*(17*s2-sp2)"
        "     + 2*s1*(6*s2**2-12*s2*sp2+11*sp2**2)"
        "     + 2*sp1*(s2**2+4*s2*sp2+6*sp2**2))"
        " - 8*(2*s1**2*sp1**2*(s1+sp1)**2 - s1**4*sp2 - s1**3*sp1*(s2-11*sp2)"
        "     + s1**2*sp1**2*(27*s2-5*sp2) + s1*sp1**3*(19*s2-9*sp2)"
        "     - sp1**4*s2 - s1**2*(3*s2**2-6*s2*sp2+19*sp2**2)"
        "     + 4*s1*sp1*(3*s2-5*sp2)*(s2+sp2)"
        "     + sp1**2*(s2-sp2)*(9*s2+7*sp2))"
        " + 8*(s1**4*sp1*sp2 + s1**3*sp1**2*(5*s2-4*sp2)"
        "     + s1**2*sp1**3*(4*s2-5*sp2) - s1*sp1**4*s2 - 4*s1**3*sp2**2"
        "     + s1**2*sp1*(5*s2-7*sp2)*(s2+sp2)"
        "     + s1*sp1**2*(7*s2-5*sp2)*(s2+sp2) + 4*sp1**3*s2**2))*z"
        " - 2*("
        "14 + 13*s1 + 67*sp1 - 6*(3*s1**2+11*s1*sp1-8*sp1**2+10*s2-2*sp2)"
        " + 2*(2*s1**3+3*s1**2*sp1-48*s1*sp1**2-sp1**3"
        "     + s1*(21*s2-5*sp2) - sp1*(31*s2+9*sp2))"
        " + 2*(2*s1*sp1*(s1**2+12*s1*sp1-2*sp1**2) - 3*s1**2*(s2-sp2)"
        "     + 6*s1*sp1*(7*s2-sp2) + sp1**2*(9*s2-13*sp2)"
        "     + 2*(3*s2**2-6*s2*sp2-5*sp2**2))"
        " - 2*(3*s1**2*sp1**2*(s1-sp1) + s1**3*sp2 - sp1**3*s2"
        "     + s1**2*sp1*(11*s2-6*sp2) + s1*sp1**2*(6*s2-11*sp2)"
        "     + s1*(3*s2**2-6*s2*sp2-5*sp2**2)"
        "     + sp1*(5*s2**2+6*s2*sp2-3*sp2**2)))*z**2"
        " + 8*(8 - 2*(2*s1-7*sp1) - (13*s1-3*sp1)*sp1 - 6*s2 + 2*sp2"
        "     + 3*(s1-sp1)*s1*sp1 + 3*(s1*s2-sp1*sp2) - s1*sp2 + sp1*s2)*z**3"
        " + 12*(-2+s1-sp1)*z**4",
}

WILSON_DERIVED = {
    ("1II", "1"): {"base": ("1I", "1"), "transform": "sigma-swap", "scale": "1"},
}

# Askey-Wilson rows are stored as prefactor * bracket with the bracket a
# polynomial in (z, s1, s2, sp1, sp2, q); r = q^(1/2).
ASKEY_WILSON = {
    ("{}", "1"): {
        "prefactor_num": "-(q-1)**2",
        "prefactor_den": "2*q**3",
        "bracket": "(q**2*b1 + q*b3)*z + (q**2 - b4)*(b1 - b3)",
    },
    ("1I", "1"): {
        "prefactor_num": "(1-q)**4*(1+q)",
        "prefactor_den": "2*r**17*s2",
        "bracket":
            "(q**2-s2*sp2)*(q**3-s2*sp2)*("
            "-q*(1+q)*(s1**2-q**2*sp1**2)"
            " - (1-q)*(1-q-q**2)*(s2-q**2*sp2)"
            " + s1**2*(s2+q*(1+q+q**2)*sp2)"
            " + q**2*(1+q)*s1*sp1*(s2-q**2*sp2)"
            " - q*sp1**2*((1+q+q**2)*s2+q**3*sp2)"
            " - (1-q)*(s2**2-q**4*sp2**2)"
            " - (1+q)*((1-q)*s1**2*sp2*(s2+q**3*sp2)"
            "          + s1*sp1*(s2**2-q**4*sp2**2)"
            "          - q*(1-q)*sp1**2*s2*(s2+q*sp2)"
            "          - 2*(1-q)**2*s2*sp2*(s2-q**2*sp2))"
            " - q**2*s1**2*sp2**2*((1+q+q**2)*s2+q**3*sp2)"
            " + (1+q)*s1*sp1*s2*sp2*(s2-q**2*sp2)"
            " + q*sp1**2*s2**2*(s2+q*(1+q+q**2)*sp2)"
            " + (1-q)*s2*sp2*(s2**2-q**4*sp2**2)"
            " + s2*sp2*(q*(1+q)*(q**2*s1**2*sp2**2-sp1**2*s2**2)"
            "          - (1-q)*(1+q-q**2)*s2*sp2*(s2-q**2*sp2)))"
            " + q*("
            "q**4*(-3*q*(1+q)*s1**2 + 3*q**3*(1+q)*sp1**2"
            "     - (3-8*q+3*q**3)*(s2-q**2*sp2))"
            " + q**3*(2*q*s1**2*(s2+q*(1+q+q**2)*sp2)"
            "        - (1+q)*(1+q+q**2-2*q**3)*s1*sp1*(s2-q**2*sp2)"
            "        - 2*q**2*sp1**2*((1+q+q**2)*s2+q**3*sp2)"
            "        - (1+3*q-2*q**2)*(s2**2-q**4*sp2**2))"
            " + q*(q*(1+q)*s1**2*sp2*((1+2*q)*(2-2*q+q**2)*s2"
            "                        - q**2*(1+q)*(1-2*q+3*q**2-q**3)*sp2)"
            "     + q*(1+q)*(1+q-q**2)*s1*sp1*(s2**2-q**4*sp2**2)"
            "     + q*(1+q)*sp1**2*s2*((1+q)*(1-2*q+3*q**2-q**3)*s2"
            "                         - q**2*(1+2*q)*(2-2*q+q**2)*sp2)"
            "     + (2-4*q-6*q**2+13*q**3-4*q**4-6*q**5+3*q**6)"
            "       *s2*sp2*(s2-q**2*sp2))"
            " + q*(-s1**2*sp2*((1+2*q+q**3)*s2**2 + 2*q**2*(1-q**3)*s2*sp2"
            "                 - q**4*(1+2*q**2+q**3)*sp2**2)"
            "     + (1+q)*(1-q-2*q**2-q**3+q**4)*s1*sp1*s2*sp2*(s2-q**2*sp2)"
            "     - sp1**2*s2*((1+2*q**2+q**3)*s2**2 - 2*q**2*(1-q**3)*s2*sp2"
            "                 - q**4*(1+2*q+q**3)*sp2**2)"
            "     + (1+q)*(3-4*q+3*q**2)*s2*sp2*(s2**2-q**4*sp2**2))"
            " + s2*sp2*(-(1+q)*s1**2*sp2*((1+q)*(1-3*q+2*q**2-q**3)*s2"
            "                            + q**3*(2+q)*(1-2*q+2*q**2)*sp2)"
            "          - (1+q)*(1-q-q**2)*s1*sp1*(s2**2-q**4*sp2**2)"
            "          + q*(1+q)*sp1**2*s2*((2+q)*(1-2*q+2*q**2)*s2"
            "                              + q*(1+q)*(1-3*q+2*q**2-q**3)*sp2)"
            "          + (3-6*q-4*q**2+13*q**3-6*q**4-4*q**5+2*q**6)"
            "            *s2*sp2*(s2-q**2*sp2))"
            " + s2*sp2*(-2*q**2*s1**2*sp2**2*((1+q+q**2)*s2+q**3*sp2)"
            "          + (1+q)*(2-q-q**2-q**3)*s1*sp1*s2*sp2*(s2-q**2*sp2)"
            "          + 2*q*sp1**2*s2**2*(s2+q*(1+q+q**2)*sp2)"
            "          + (2-3*q-q**2)*s2*sp2*(s2**2-q**4*sp2**2))"
            " + s2**2*sp2**2*(3*q*(1+q)*(q**2*s1**2*sp2**2-sp1**2*s2**2)"
            "               - (3-8*q**2+3*q**3)*s2*sp2*(s2-q**2*sp2)))*z"
            " + q**2*("
            "-3*q**3*(q*(1+q)*(s1**2-q**2*sp1**2)"
            "        + (1-4*q+q**3)*(s2-q**2*sp2))"
            " + q**2*(q*s1**2*s2 + q**2*(1+q+q**2)*s1**2*sp2"
            "        - (1+q)*(2+2*q+2*q**2-q**3)*s1*sp1*(s2-q**2*sp2)"
            "        - q**5*sp1**2*sp2 - q**2*(1+q+q**2)*sp1**2*s2"
            "        - (2+3*q-q**2)*(s2**2-q**4*sp2**2))"
            " + q*(1+q)*s1**2*sp2*((1+q-2*q**2+q**3)*s2"
            "                     - q**2*(1-2*q+q**2+q**3)*sp2)"
            " + q*(1+q)**2*s1*sp1*(s2**2-q**4*sp2**2)"
            " + q*(1+q)*sp1**2*s2*((1-2*q+q**2+q**3)*s2"
            "                     - q**2*(1+q-2*q**2+q**3)*sp2)"
            " + (1-4*q+q**3)*(1-4*q**2+q**3)*s2*sp2*(s2-q**2*sp2)"
            " - q**2*s1**2*sp2**2*((1+q+q**2)*s2+q**3*sp2)"
            " + (1+q)*(1-2*q*(1+q+q**2))*s1*sp1*s2*sp2*(s2-q**2*sp2)"
            " + q*sp1**2*s2**2*(s2+q*(1+q+q**2)*sp2)"
            " + (1-3*q-2*q**2)*s2*sp2*(s2**2-q**4*sp2**2)"
            " + 3*s2*sp2*(q**3*(1+q)*s1**2*sp2**2 - q*(1+q)*sp1**2*s2**2"
            "            - (1-4*q**2+q**3)*s2*sp2*(s2-q**2*sp2)))*z**2"
            " + q**3*("
            "-q**2*(q*(1+q)*(s1**2-q**2*sp1**2)"
            "      + (1-8*q+q**3)*(s2-q**2*sp2))"
            " - q*(1+q)*(s2-q**2*sp2)*((1+q+q**2)*s1*sp1 + s2 + q**2*sp2)"
            " + q*(1+q)*(q**2*s1**2*sp2**2 - sp1**2*s2**2)"
            " - (1-8*q**2+q**3)*s2*sp2*(s2-q**2*sp2))*z**3"
            " + 2*q**6*(s2-q**2*sp2)*z**4",
    },
}

ASKEY_WILSON_DERIVED = {
    ("1II", "1"): {"base": ("1I", "1"), "transform": "sigma-swap", "scale": "1"},
}

# Multi-index lists for which higher-order data was computed but not printed:
# extension targets only, no stored values.
EXTENSION_TARGETS = {
    "L": {
        "10": ["4I", "4II", "1I,4I", "1II,4II", "2I,3I", "2II,3II",
               "1I,2I,4I", "1II,2II,4II", "1I,2I,3I,4I", "1II,2II,3II,4II",
               "2I,1II", "1I,2II"],
        "12": ["5I", "5II", "1I,5I", "1II,5II", "2I,4I", "2II,4II",
               "1I,2I,5I", "1II,2II,5II", "1I,3I,4I", "1II,3II,4II",
               "1I,2I,3I,5I", "1II,2II,3II,5II", "1I,2I,3I,4I,5I",
               "1II,2II,3II,4II,5II", "3I,1II", "1I,3II", "1I,2I,1II",
               "1I,1II,2II", "2I,2II"],
    },
}

# fmt: on
