"""Two-photon interference from matrix permanents.

Output probabilities of photon-counting experiments are squared moduli of
permanents of submatrices of the interferometer unitary.  The classic
signature is the two-photon coalescence dip at a balanced beamsplitter: the
coincidence amplitude is the permanent of the beamsplitter itself, which
vanishes exactly.
"""

import numpy as np

from uaboson import (
    enumerate_basis,
    ideal_distribution,
    permanent_naive,
    permanent_ryser,
    transition_amplitude,
)

balanced = np.array([[1, 1], [1, -1]]) / np.sqrt(2)

print("Balanced beamsplitter:")
print(balanced.round(4))

print("\nPermanent of the beamsplitter (coincidence amplitude up to norm):")
print("  naive :", permanent_naive(balanced))
print("  ryser :", permanent_ryser(balanced))

print("\nAmplitudes for one photon in each input port:")
for out in enumerate_basis(2, 2).states:
    amp = transition_amplitude(balanced, (1, 1), out)
    print(f"  {out} amplitude {amp: .4f}  probability {abs(amp)**2:.4f}")

dist = ideal_distribution(balanced, (1, 1))
print("\nFull distribution:", {s: round(float(p), 4) for s, p in zip(dist.basis.states, dist.probs)})
print("The (1,1) coincidence outcome is extinguished; both photons bunch.")
