"""Generate the example family-plugin files in plugins/.

Single-seed deformations of degree 2 and 3 are built from the exact
intertwiner machinery at fixed rational parameters and serialized through
the plugin schema.  Loading them back re-validates every invariant (degrees,
eigen-equations, norm-ratio symmetry), and `closurelab appendix-b --plugin`
uses them to check the stored higher-order reference rows.
"""

import json
from fractions import Fraction
from pathlib import Path

from closurelab.families import ParamSet, one_step_family, plugin_dict_from_family

OUT = Path(__file__).resolve().parent.parent / "plugins"

SPECS = [
    ("laguerre_2I.json", "L", "I", 2, {"g": Fraction(7, 2)}),
    ("laguerre_2II.json", "L", "II", 2, {"g": Fraction(7, 2)}),
    ("laguerre_3I.json", "L", "I", 3, {"g": Fraction(7, 2)}),
    ("laguerre_3II.json", "L", "II", 3, {"g": Fraction(9, 2)}),
    ("jacobi_2I.json", "J", "I", 2, {"g": Fraction(4), "h": Fraction(9, 2)}),
    ("jacobi_2II.json", "J", "II", 2, {"g": Fraction(4), "h": Fraction(9, 2)}),
]


def main():
    OUT.mkdir(exist_ok=True)
    for name, fam, t, d, values in SPECS:
        df = one_step_family(fam, t, d, ParamSet(fam, values))
        payload = plugin_dict_from_family(df)
        path = OUT / name
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        print(f"wrote {path}  ({df.label}, ell={df.ell})")


if __name__ == "__main__":
    main()
