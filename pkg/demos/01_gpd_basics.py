"""GPD basics: sampling, the residual CV and its limiting variance.

    python demos/01_gpd_basics.py
"""
import math

import numpy as np

from evtail import GpdParams, asymptotic_sd, cv_of_xi, gpd_mle_fit, gpd_sample, residual_cv, residual_params

rng = np.random.default_rng(1)

# Under a GPD the CV of the excesses does not depend on the threshold.
params = GpdParams(xi=-0.2, psi=3.0)
x = gpd_sample(params, 50_000, rng)
print(f"c_xi for xi={params.xi}: {cv_of_xi(params.xi):.4f}")
for t in (0.0, 2.0, 5.0, 8.0):
    rp = residual_params(params, t)
    print(f"  t={t:4.1f}  excesses ~ GPD({rp.xi:+.1f}, {rp.psi:.2f})  sample cv={residual_cv(x, t):.4f}")

# sqrt(n)(cv - c_xi) is approximately normal with sd sigma_xi
n = 5000
d = [math.sqrt(n) * (residual_cv(gpd_sample(params, n, rng), 0.0) - cv_of_xi(params.xi)) for _ in range(400)]
print(f"sd of sqrt(n)(cv - c): {np.std(d, ddof=1):.3f}   sigma_xi: {asymptotic_sd(params.xi):.3f}")

# Maximum likelihood for comparison
fit = gpd_mle_fit(gpd_sample(GpdParams(0.3, 2.0), 2000, rng))
print(f"MLE: xi={fit.xi:.3f} (se {fit.std_errors[0]:.3f}), psi={fit.psi:.3f} (se {fit.std_errors[1]:.3f})")
