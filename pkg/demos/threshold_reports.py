"""Exact extension-estimate thresholds for every built-in family.

For a family with closed-form decay s(p), the report optimizes the
averaging exponent p, states the resulting q-range threshold, the
uniform-decay (p = inf) baseline it must beat, and whether the
averaged route wins.  Rationals are exact.
"""

from ffrestrict import families
from ffrestrict.reports import threshold_report_dict

CASES = [
    ("hamming", {"d": 4}),
    ("hamming", {"d": 5}),
    ("sphere-product", {"k": 2, "m": 2}),
    ("zero-sphere-product", {}),
    ("cutoff-cylinder", {"n": 2, "m": 1, "k": 3}),
    ("sidon-parabola", {}),
    ("sidon-embedded", {}),
]

for family, params in CASES:
    rep = families.threshold_report(family, params)
    d = threshold_report_dict(rep)
    tag = family + (f" {params}" if params else "")
    print(f"{tag}:")
    print(f"  optimal p = {d['optimal_p']}, q >= {d['q_main']} "
          f"(uniform baseline q >= {d['q_mocktao']})")
    print(f"  improvement over uniform decay: {d['improvement']}")
