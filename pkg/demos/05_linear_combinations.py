"""Implementing a non-unitary transform with passive optics and heralding.

Any matrix of operator norm at most one splits into at most four unitaries
with coefficients (1/2, 1/2, i/2, i/2).  Feeding those unitaries into the
averaging network with encoder/decoder rows carrying the coefficients makes
the heralded action equal to the target divided by the coefficient l1 norm.
"""

import numpy as np

from uaboson import (
    build_global_unitary,
    decompose_into_unitaries,
    heralded_distribution,
    lcu_network,
    operator_norm,
    tvd,
)
from uaboson.cmatrix import haar_random

rng = np.random.default_rng(5)
target = haar_random(2, rng) @ np.diag([0.85, 0.4]) @ haar_random(2, rng)
print("target (non-unitary contraction):")
print(target.round(4))

spec = decompose_into_unitaries(target)
print(f"\nsplit into {len(spec.unitaries)} unitaries, coefficients {np.round(spec.coefficients, 3)}")
print(f"coefficient l1 norm (scale): {spec.scale}")
print(f"reconstruction error: {operator_norm(spec.reconstruct() - target):.2e}")

net = lcu_network(target)
global_unitary = build_global_unitary(net)
block = global_unitary[:2, :2]
print(f"\nglobal interferometer size: {global_unitary.shape[0]} modes")
print(f"top-left block vs target/scale: {operator_norm(block - target / spec.scale):.2e}")

d_direct = heralded_distribution(target, (1, 1))
d_network = heralded_distribution(net.effective_transform(), (1, 1))
print(f"heralded distributions agree to TVD {tvd(d_direct, d_network):.2e}")
print(f"herald probability through the network: {d_network.herald_probability:.4f}")
