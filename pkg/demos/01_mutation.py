"""Mutating the rank-3 example seed and checking what survives.

Run from the repository root:  python demos/01_mutation.py
"""

from qcluster.golden import example_seed
from qcluster.qseed import check_compatible, mutate_seed

seed = example_seed()
print("exchange matrix B~ (rows 4-6 are the principal part):")
for row in seed.btilde:
    print("   ", row)
print("skew-symmetrizer from B~^T Lambda:", check_compatible(seed.btilde, seed.form))

# One step in each direction.  The new variable is an exact right quotient
# inside the quantum torus, so its terms come out with half-integer q powers.
for k in (1, 2, 3):
    print(f"x'{k} =", mutate_seed(seed, k).var(k).pretty())

# Mutation is an involution, on the matrices and on the variables.
for k in (1, 2, 3):
    assert mutate_seed(mutate_seed(seed, k), k) == seed
print("mu_k mu_k = id for k = 1, 2, 3")

# Walk a longer word and watch D stay put.
walk = seed
for k in (1, 2, 3, 1, 3):
    walk = mutate_seed(walk, k)
    print(f"after mu_{k}: D = {walk.D}, cluster variable x{k} has {len(walk.var(k))} terms")
