"""Recover the timescales of a simulated two-scale model.

The estimation pipeline works on the dense AR coefficients: fit a long
autoregression by least squares, look for change-points in the fitted
coefficient vector (it is piecewise constant in truth, with jumps at the
scales), then refit the scale coefficients.  Here we watch each stage on
a model with scales 1 and 3.
"""

import pathlib

import numpy as np

from amar import (
    AmarModel,
    InnovationSpec,
    amar_fit,
    emit_plot_data,
    fit_ar_ols,
    generate_intervals,
    not_detect,
    simulate,
)

truth = AmarModel((1, 3), (0.3, 0.6), InnovationSpec(seed=20240521))
x = simulate(truth, 2000)
print(f"simulated T={len(x)} from scales {truth.scales}, coeffs {truth.coeffs}")

# stage 1: the dense fit is noisy but visibly steps at the true scales
beta_hat, _ = fit_ar_ols(x, 8)
print("\ndense AR(8) estimates:")
print("  " + "  ".join(f"{b:+.3f}" for b in beta_hat.coeffs))

# stage 2: the detector scans every subinterval of the coefficient vector
detected = not_detect(beta_hat.coeffs, generate_intervals(8), zeta=0.12)
print(f"change-points of the coefficient vector at threshold 0.12: {detected}")

# stages 1-4 with automatic threshold and order selection
report = amar_fit(x)
print(f"\nautomatic fit: p={report.chosen_p}, threshold={report.chosen_zeta:.4f}")
print(f"scales {report.scales}, coefficients {np.round(report.alpha, 4)}")
print(f"residual variance {report.residual_variance:.4f}")

OUT = pathlib.Path("demo_output")
OUT.mkdir(exist_ok=True)
emit_plot_data("coeffs-with-scales", report, OUT / "detected_coeffs.csv")
print(f"\nlag-by-lag comparison written to {OUT / 'detected_coeffs.csv'}")
print("(columns: lag, raw estimate, constrained fit, scale-boundary flag)")
