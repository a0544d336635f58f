"""
The integer-order case
======================

For alpha = 1 the restart loses nothing and MSGDTM is a fifth-order Taylor
integrator. The closed form is y = 1 + sqrt(2) tanh(sqrt(2) t + c).
"""

# %%
import math

import numpy as np

from fracivp import RICCATI, AbmConfig, FractionalIVP, derivative_jump, sample, solve_msgdtm, solve_pece

ivp = FractionalIVP(alpha=1.0, t0=0.0, y0=0.0, rhs=RICCATI, t_end=3.0)
r2 = math.sqrt(2.0)
t = np.linspace(0.0, 3.0, 301)
exact = 1 + r2 * np.tanh(r2 * t + 0.5 * math.log((r2 - 1) / (r2 + 1)))

traj = solve_pece(ivp, AbmConfig.covering(ivp, h=0.01))
pw = solve_msgdtm(ivp, M=300, N=5)
print(f"ABM    max error {np.max(np.abs(traj.values - exact)):.2e}")
print(f"MSGDTM max error {np.max(np.abs(sample(pw, t) - exact)):.2e}")

# %%
left, right = derivative_jump(pw, 150, 1e-4)
print(f"slopes at t=1.5: left {left:.5f}, right {right:.5f}")
