"""Watch the extension norm across field sizes, above and below threshold.

For the planar Hamming variety the averaged estimate proves bounded
extension constants for q >= 6, and constants must grow for q < 4.
Power iteration gives certified lower bounds on the norm; the fitted
slope of log(bound) against log(p) separates the two regimes.
"""

from ffrestrict import PowerIterConfig, families, growth_sweep

SIZES = [5, 7, 11, 13, 17]
build = families.builder("hamming", {"d": 2})
cfg = PowerIterConfig(random_starts=8, seed=0)

for q in [6.0, 3.0]:
    sweep = growth_sweep(build, q, SIZES, cfg)
    regime = families.regime_label("hamming", {"d": 2}, q)
    print(f"q = {q}: theory says {regime}")
    for row in sweep.rows:
        print(f"  p = {row.p:3d}  "
              f"lower bound {row.estimate.lower_bound:.6f}  "
              f"witness {row.estimate.witness_tag}")
    print(f"  fitted growth exponent {sweep.fitted_growth_exponent:+.3f}")
    print()
