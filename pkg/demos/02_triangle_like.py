"""Triangle-like bounds: swapping sigma for a nearby tau moves K by a controlled amount.

Run: python demos/02_triangle_like.py
"""

import numpy as np

from infoflow import bounds as bd, states as st

rng = np.random.default_rng(7)
rho, sigma, tau = (st.random_state(3, rng) for _ in range(3))

print(f"kappa(1/2) = {bd.kappa_mu(0.5):.6f}, varsigma(1/2) = {bd.varsigma_mu(0.5):.6f}")
for eps in (0.5, 1e-2, 1e-4):
    near = (1 - eps) * sigma + eps * tau
    print(f"\ntau at distance ~{eps:g} from sigma")
    for fam in ("K", "S", "H", "sqrtJ"):
        for c in bd.check_triangle_like(rho, sigma, near, 0.3, fam):
            print(f"  {c.inequality.value:<28} lhs {c.lhs:+.2e}  rhs {c.rhs_total:.2e}")
