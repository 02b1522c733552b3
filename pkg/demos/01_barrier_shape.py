"""The Hulthen barrier and how q changes it.

V(x) = V0 / (exp(a|x|) - q) is even, peaks at V0 / (1 - q) and decays
like V0 exp(-a|x|).  At fixed V0, lowering q lowers the peak while the tails
barely move.
"""

import numpy as np

from hulthen_dirac import PotentialParams, barrier_height, derivative, evaluate

x = np.linspace(-4, 4, 9)
print("x     " + "  ".join(f"{v:7.2f}" for v in x))
for q in (0.9, 0.5, 0.1):
    p = PotentialParams(V0=4.0, a=1.0, q=q)
    print(f"q={q}: " + "  ".join(f"{v:7.3f}" for v in evaluate(p, x)))

# the peak and the cusp
for q in (0.9, 0.5):
    p = PotentialParams(V0=4.0, a=1.0, q=q)
    print(f"q={q}: height {barrier_height(p):g}, slope at 0- {derivative(p, 0.0, 'left'):g}, "
          f"at 0+ {derivative(p, 0.0, 'right'):g}")

# a smaller a spreads the same height over a wider region
for a in (1.0, 0.5):
    p = PotentialParams(V0=4.0, a=a, q=0.9)
    print(f"a={a}: V(1) = {evaluate(p, 1.0):.3f}, V(3) = {evaluate(p, 3.0):.3f}")
