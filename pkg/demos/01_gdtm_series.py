"""
GDTM series for the fractional Riccati equation
===============================================

D^0.7 y = 1 + 2y - y^2, y(0) = 0, expanded as sum_k Y(k) t^(0.7 k).
"""

# %%
# The recurrence only needs the polynomial coefficients of the right-hand side.
from fracivp import RICCATI, FractionalIVP, eval_series, gdtm_coefficients

ivp = FractionalIVP(alpha=0.7, t0=0.0, y0=0.0, rhs=RICCATI, t_end=0.4)
series = gdtm_coefficients(ivp, N=5)

for k, c in enumerate(series.coeffs):
    print(f"Y({k}) = {c: .4f}   * t^{0.7 * k:.1f}")

# %%
# Value at the end of the first sub-interval, which seeds the next piece.
print("y(0.2) =", round(eval_series(series, 0.2), 4))

# %%
# Higher orders change the picture noticeably already at t = 0.4: the series is
# a local object around its base point.
for N in (5, 10, 20):
    s = gdtm_coefficients(ivp, N)
    print(f"N={N:2d}  y(0.2)={eval_series(s, 0.2):.5f}  y(0.4)={eval_series(s, 0.4):.5f}")
