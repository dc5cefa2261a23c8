"""Commuting x_j^(n) past x_k and reading off the remainder.

Run from the repository root:  python demos/03_straightening.py
"""

from qcluster.golden import example_seed
from qcluster.projective import compute_family
from qcluster.straighten import comm_same_index, straighten_general, straighten_power

fam = compute_family(example_seed())

print("same index, x_k^(3) x_k - q^twist x_k x_k^(3):")
for k in range(1, 4):
    print(" ", comm_same_index(fam, k).summary())

print("\ndifferent indices, k < j:")
for j, k in ((2, 1), (3, 1), (3, 2)):
    print(" ", straighten_general(fam, j, k).summary())

# For a power x_k^l the remainder is a telescoped sum of the l = 1 remainder;
# straighten_power computes both sides and refuses to return if they differ.
cert = straighten_power(fam, 3, 1, 3)
print("\nl = 3:", cert.summary())
print("remainder expands into", len(cert.remainder_expansion.coeffs), "projective standard monomials")
