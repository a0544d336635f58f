"""
300 sub-intervals on [0, 3]
===========================

With h = 0.01 each restart adds roughly f(y) h^alpha / Gamma(1 + alpha),
which is about 4.4 times what an ordinary step of length h would add. The
multi-step curve rushes to the equilibrium 1 + sqrt(2) while the fractional
solution creeps towards it.
"""

# %%
import numpy as np

from fracivp import RICCATI, AbmConfig, FractionalIVP, sample, solve_msgdtm, solve_pece

ivp = FractionalIVP(alpha=0.7, t0=0.0, y0=0.0, rhs=RICCATI, t_end=3.0)
traj = solve_pece(ivp, AbmConfig.covering(ivp, h=0.01))
pw = solve_msgdtm(ivp, M=300, N=5)
diff = np.abs(sample(pw, traj.nodes) - traj.values)

for t in (0.1, 0.2, 0.35, 0.5, 1.0, 2.0, 3.0):
    i = int(round(t / 0.01))
    print(f"t={t:4.2f}  ABM={traj.values[i]:.4f}  MSGDTM={sample(pw, t):.4f}  |diff|={diff[i]:.4f}")

# %%
# The deviation is not monotone in t: it peaks early, then shrinks as both
# curves approach the same fixed point.
peak = int(np.argmax(diff))
print(f"largest deviation {diff[peak]:.4f} at t={traj.nodes[peak]:.2f}")

# %%
# More sub-intervals make the early error worse, not better.
for M in (10, 30, 100, 300):
    pwM = solve_msgdtm(ivp, M=M, N=5)
    print(f"M={M:3d}  max |diff| on [0, 3] = {np.max(np.abs(sample(pwM, traj.nodes) - traj.values)):.4f}")
