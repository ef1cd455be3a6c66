"""Fit (p, s)-Salem exponents for set families and compare to theory.

For each family and averaging exponent p_exp, the decay exponent s is
the slope of -log ||mu^||_{p_exp} against log |E| across field sizes.
The closed forms predict s exactly; the fits should land within a few
hundredths for these sizes.
"""

import math

from ffrestrict import families, fit_salem_exponent

SIZES = [5, 7, 11, 13, 17]

CASES = [
    ("hamming", {"d": 3}),
    ("hamming", {"d": 4}),
    ("sphere-product", {"k": 2, "m": 2}),
    ("sidon-parabola", {}),
]

for family, params in CASES:
    build = families.builder(family, params)
    pred = families.prediction(family, params)
    tag = family + (f" {params}" if params else "")
    for p_exp in [2, 4, 8, math.inf]:
        want = float(pred.at(p_exp))
        fit = fit_salem_exponent(build, p_exp, SIZES, predicted_s=want)
        print(f"{tag:28s} p_exp={p_exp!s:4s} fitted s = {fit.fitted_s:+.3f} "
              f"(predicted {want:+.3f}, stderr {fit.stderr:.3f})")
    print()
