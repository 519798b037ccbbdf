"""Stochastic fabrication noise and the mean damping law.

Each mesh parameter (beamsplitter angle, every phase) is jittered by an
independent zero-mean Gaussian of variance nu.  Samples stay exactly unitary,
but their entrywise mean contracts: after uniform-depth padding every optical
path crosses d noisy elements, so the mean is the target scaled by
(1 - nu/2)**d.
"""

import numpy as np

from uaboson import (
    NoiseModel,
    clements_decompose,
    haar_random,
    mean_unitary_prediction,
    mesh_to_unitary,
    operator_norm,
    perturb,
    sample_noisy_unitary,
    uniform_depth_pad,
)

rng = np.random.default_rng(7)
target = haar_random(2, rng)
nu = 0.01

noisy, depth = sample_noisy_unitary(target, NoiseModel(nu), rng)
print(f"uniform depth d = {depth}")
print(f"one sample, distance from target : {operator_norm(noisy - target):.4f}")
print(f"unitarity defect of the sample   : {operator_norm(noisy.conj().T @ noisy - np.eye(2)):.2e}")

padded = uniform_depth_pad(clements_decompose(target))
samples = [mesh_to_unitary(perturb(padded, NoiseModel(nu), rng)) for _ in range(5000)]
empirical_mean = np.mean(samples, axis=0)
predicted = mean_unitary_prediction(target, nu, depth)

print(f"\ndamping factor (1 - nu/2)**d = {(1 - nu / 2) ** depth:.6f}")
print(f"|empirical mean - prediction| = {operator_norm(empirical_mean - predicted):.2e}")
print(f"|empirical mean - target|     = {operator_norm(empirical_mean - target):.2e}")
print("The mean shrinks toward the damped target, not toward the target itself.")
