"""CV-plot of a light-tailed sample with 90% asymptotic bands, written as SVG.

    python demos/02_cv_plot.py [out.svg]
"""
import sys

from evtail import GpdParams, cv_plot, gpd_sample
from evtail.residual_cv import band_coverage
from evtail.svg import emit_svg

out = sys.argv[1] if len(sys.argv) > 1 else "cv_plot.svg"
x = gpd_sample(GpdParams(-0.3, 1.0), 2000, 11)
plot = cv_plot(x, xi_ref=-0.3, level=0.90)

print(f"{len(plot)} thresholds, reference cv {plot.reference_cv:.4f}")
print(f"share of points inside the band (n(t) >= 100): {band_coverage(plot, 100):.2f}")
for k in (0, 500, 1000, 1500, 1900):
    i = list(plot.removed).index(k)
    print(f"  removed {k:4d}: n(t)={plot.n_exceed[i]:4d} cv={plot.cv[i]:.3f} "
          f"band=({plot.band_low[i]:.3f}, {plot.band_high[i]:.3f})")
emit_svg(plot, out)
print("wrote", out)
