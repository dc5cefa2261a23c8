"""Quantum projective cluster variables x_k^(n) along the sink sequence.

Run from the repository root:  python demos/02_projective.py
"""

from qcluster.golden import example_seed
from qcluster.projective import (
    closed_form_check,
    compute_family,
    exchange_relation,
    first_term_closed_form,
)

fam = compute_family(example_seed())

for k in range(1, fam.n + 1):
    print(f"x{k}^(3) = {fam.xproj(k).pretty()}")

# The last matrix in the chain mu_3 mu_2 mu_1 returns to the original B.
print("B^(3) == B:", fam.seeds[-1].pair.B == fam.initial.pair.B)
print(closed_form_check(fam))

# x_k^(n) - x_k^-1, predicted from earlier projective variables without mutating.
for k in range(1, fam.n + 1):
    print(f"x{k}^(3) - x{k}^-1 = {first_term_closed_form(fam, k).pretty()}")

# x_k^(n) x_k = q^bullet S + 1, with S a product of x_j (j > k) and earlier x_j^(n).
for k in range(1, fam.n + 1):
    bullet, S = exchange_relation(fam, k)
    print(f"k={k}: bullet = {bullet}, S = {S.pretty()}")
