"""Expanding products in the projective standard monomial basis.

Run from the repository root:  python demos/04_basis_expansion.py
"""

import itertools

import numpy as np

from qcluster.golden import example_seed
from qcluster.projective import compute_family
from qcluster.straighten import projective_basis, random_word, to_projective_standard, to_standard_monomials

seed = example_seed()
fam = compute_family(seed)

u = fam.xproj(3) * fam.x(1)
exp = to_projective_standard(fam, u)
print("x3^(3) x1 =", exp.pretty())
assert exp.evaluate() == u

v = fam.x(1) * fam.x(2) ** 2 * fam.xproj(3)
print("x1 x2^2 x3^(3) in standard monomials =", to_standard_monomials(seed, v).pretty())

# Random words: expand, then multiply back out.
rng = np.random.default_rng(7)
basis = projective_basis(fam)
for _ in range(5):
    w = random_word(rng, fam, max_factors=4)
    e = to_projective_standard(fam, w)
    print(f"{len(w):3d} torus terms -> {len(e.coeffs)} basis terms, support {e.support()}")
    assert e.evaluate() == w

# Distinct exponent vectors have distinct first monomials, which is what makes
# the greedy expansion well defined.
box = list(itertools.product(range(-2, 3), repeat=3))
leads = {basis.lead(a)[0][:3] for a in box}
print(f"distinct first monomials on [-2,2]^3: {len(leads)} of {len(box)}")
