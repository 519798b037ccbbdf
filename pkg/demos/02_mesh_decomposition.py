"""Decomposing a unitary into a rectangular beamsplitter mesh.

Any m-mode unitary factors into m(m-1)/2 two-mode beamsplitters arranged in
m alternating layers, plus one layer of output phases.  The mesh serializes
to JSON, which is also what the `uaboson decompose` subcommand emits.
"""

import json

import numpy as np

from uaboson import clements_decompose, dft, haar_random, mesh_to_unitary, operator_norm
from uaboson.mesh import mesh_to_json

u = dft(4)
mesh = clements_decompose(u)

print(f"4-mode DFT -> {mesh.element_count()} beamsplitters in {len(mesh.layers)} layers")
for k, layer in enumerate(mesh.layers):
    desc = ", ".join(f"(top={el.top}, theta={el.theta:.3f}, phi={el.phi:.3f})" for el in layer)
    print(f"  layer {k}: {desc}")
print("  output phases:", [round(p, 3) for p in mesh.output_phases])

err = operator_norm(mesh_to_unitary(mesh) - u)
print(f"\nreconstruction error: {err:.2e}")

rng = np.random.default_rng(1)
print("\nround-trip errors for random targets:")
for m in range(2, 9):
    target = haar_random(m, rng)
    gap = operator_norm(mesh_to_unitary(clements_decompose(target)) - target)
    print(f"  m={m}: {gap:.2e}")

print("\nJSON form of the first layer:")
print(json.dumps(mesh_to_json(mesh)["layers"][0], indent=2))
