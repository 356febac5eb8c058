"""Support functions and distances for the separable set.

The singlet projector is the running example: its separable support value is
exactly 1/2, its q-extendible relaxations decrease as 1, 3/4, 2/3, 5/8, its
fidelity to the separable set is 1/sqrt(2), and its 2-norm distance is
1/sqrt(3) (attained on the Werner line).
"""

import math

import numpy as np

from definetti.operators import density, hermitian
from definetti.separability import (
    BipartiteCut,
    certificate_to_json,
    hqext,
    hs_distance_to_sep,
    hsep_certified_interval,
    hsep_seesaw,
    max_fidelity_to_sep,
    measured_fidelity_to_sep_upper,
    pauli_tomography_povm,
    recheck_certificate,
)

vec = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2)
singlet = hermitian(np.outer(vec, vec), (2, 2))
singlet_dm = density(np.outer(vec, vec), (2, 2))
cut = BipartiteCut((0,), (1,))

print("Seesaw lower bound")
print("------------------")
res = hsep_seesaw(singlet, cut)
print(f"  h_sep(singlet) seesaw value: {res.value:.12f} (exact value 1/2)")

print()
print("Extendibility hierarchy (exact eigenvalues)")
print("-------------------------------------------")
for q in (1, 2, 3, 4):
    print(f"  q={q}: h_qext = {hqext(singlet, cut, q).value:.12f}")
interval = hsep_certified_interval(singlet, cut, q_max=4)
print(f"  certified interval: [{interval.lower:.6f}, {interval.upper:.6f}] "
      f"(q={interval.q_used}, certified slack {interval.delta_certified:.6f})")

print()
print("Fidelity to the separable set (Frank-Wolfe)")
print("-------------------------------------------")
fw = max_fidelity_to_sep(singlet_dm, cut, iters=150, seed=0)
print(f"  F(singlet, SEP) = {fw.value:.9f}, squared {fw.value**2:.9f} (exact 1/2)")
print(f"  certificate: {len(fw.atoms)} product atoms, weights sum "
      f"{fw.weights.sum():.12f}")
cert = certificate_to_json("fidelity_mixture", singlet_dm.op, cut, fw)
claimed, recomputed, ok = recheck_certificate(cert)
print(f"  independent recheck: claimed {claimed:.9f}, recomputed {recomputed:.9f}, ok={ok}")

print()
print("2-norm distance to the separable set (Gilbert)")
print("----------------------------------------------")
gb = hs_distance_to_sep(singlet_dm, cut, iters=150, seed=0)
print(f"  upper bound {gb.value:.9f} vs Werner-line optimum {1/math.sqrt(3):.9f}")

print()
print("Measured fidelity upper bound (fixed local Pauli tomography)")
print("------------------------------------------------------------")
pauli = pauli_tomography_povm()
mu = measured_fidelity_to_sep_upper(singlet_dm, cut, pauli, pauli, iters=120, seed=0)
print(f"  certified upper bound {mu.upper:.6f} (strictly below 1), "
      f"inner value {mu.lower:.6f}")
