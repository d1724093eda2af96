"""How the distinguishability quantifiers compare on a few qubit pairs.

Run: python demos/01_quantifiers.py
"""

import numpy as np

from infoflow import divergences as dv, states as st

excited = st.pure([1, 0])
plus = st.pure([1, 1])
mixed = st.maximally_mixed(2)

pairs = {
    "excited vs mixed": (excited, mixed),
    "excited vs plus": (excited, plus),
    "excited vs ground": (excited, st.pure([0, 1])),
}

print(f"{'pair':<20}{'D':>8}{'D_0.3':>8}{'K_0.3':>8}{'S_0.3':>8}{'J':>8}{'sqrtJ':>8}")
for label, (r, s) in pairs.items():
    row = [
        dv.trace_distance(r, s),
        dv.helstrom(r, s, 0.3),
        dv.holevo_skew(r, s, 0.3),
        dv.quantum_skew(r, s, 0.3),
        dv.jensen_shannon(r, s),
        dv.sqrt_jensen_shannon(r, s),
    ]
    print(f"{label:<20}" + "".join(f"{x:8.4f}" for x in row))

# The entropic quantifiers all collapse to J at mu = 1/2.
r, s = pairs["excited vs plus"]
print("\nat mu = 1/2:", dv.holevo_skew(r, s, 0.5), dv.quantum_skew(r, s, 0.5), dv.jensen_shannon(r, s))

# A noisy channel can only shrink them.
rng = np.random.default_rng(1)
kraus = st.random_kraus(2, 3, rng)
r2, s2 = st.apply_kraus(kraus, r), st.apply_kraus(kraus, s)
print(f"K_0.3 before/after a random channel: {dv.holevo_skew(r, s, 0.3):.4f} -> {dv.holevo_skew(r2, s2, 0.3):.4f}")
