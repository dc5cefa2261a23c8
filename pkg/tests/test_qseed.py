import itertools

import numpy as np
import pytest

from conftest import random_principal_seed
from oracles import classical_mutation_chain, laurent_to_sympy, same_rational_function
from qcluster.errors import Incompatible, InvalidArgs, NotAcyclic, NotSkewSymmetrizable
from qcluster.golden import BTILDE, BTILDE_1, LAMBDA, LAMBDA_1
from qcluster.qseed import (
    admissible_order,
    check_compatible,
    initial_seed,
    is_acyclic,
    is_admissible,
    mutate_lambda,
    mutate_matrixB,
    mutate_seed,
    permute_seed,
    principal_pair,
    random_acyclic_matrix,
)
from qcluster.qtorus import SkewForm, te_specialize_q1

B3 = [r for r in BTILDE[:3]]
CYCLE = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]


def test_compatibility_of_rank3_pair():
    prod = np.array(BTILDE).T @ np.array(LAMBDA)
    assert prod.tolist() == [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]]
    assert check_compatible(BTILDE, SkewForm(LAMBDA)) == (1, 1, 1)


def test_zero_lambda_is_incompatible():
    with pytest.raises(Incompatible) as err:
        check_compatible(BTILDE, np.zeros((6, 6), dtype=int))
    assert err.value.entry == (1, 1)


def test_off_diagonal_entry_is_reported():
    lam = [list(r) for r in LAMBDA]
    lam[0][5], lam[5][0] = -1, 1
    with pytest.raises(Incompatible) as err:
        check_compatible(BTILDE, lam)
    assert err.value.entry is not None


def test_principal_pair_differs_from_rank3_lambda():
    pair = principal_pair(B3, [1, 1, 1])
    assert pair.D == (1, 1, 1)
    assert pair.form.matrix != LAMBDA
    zero = principal_pair([[0, 0], [0, 0]], [1, 1])
    assert zero.form.matrix == ((0, 0, -1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, 1, 0, 0))


def test_principal_pair_rejects_bad_symmetrizer():
    with pytest.raises(NotSkewSymmetrizable):
        principal_pair([[0, 1], [-1, 0]], [1, 0])
    with pytest.raises(NotSkewSymmetrizable):
        principal_pair([[0, 1], [-2, 0]], [1, 1])
    assert principal_pair([[0, 1], [-2, 0]], [2, 1]).D == (2, 1)


def test_matrix_and_lambda_mutation_rank3():
    assert mutate_matrixB(BTILDE, 1) == BTILDE_1
    assert mutate_lambda(SkewForm(LAMBDA), BTILDE, 1).matrix == LAMBDA_1
    assert LAMBDA_1[0][4] == -2
    with pytest.raises(InvalidArgs):
        mutate_matrixB(BTILDE, 4)
    with pytest.raises(InvalidArgs):
        mutate_lambda(SkewForm(LAMBDA), BTILDE, 0)


def test_zero_block_mutation_only_flips_signs():
    pair = principal_pair([[0, 0], [0, 0]], [1, 1])
    assert mutate_matrixB(pair.btilde, 1) == ((0, 0), (0, 0), (-1, 0), (0, 1))


def test_seed_involution_rank3(seed3):
    for k in (1, 2, 3):
        assert mutate_seed(mutate_seed(seed3, k), k) == seed3


@pytest.mark.parametrize("trial", range(20))
def test_random_seed_involution(trial):
    rng = np.random.default_rng(trial)
    n = int(rng.integers(1, 5))
    seed = random_principal_seed(rng, n, acyclic=False)
    k = int(rng.integers(1, n + 1))
    once = mutate_seed(seed, k)
    assert once.D == seed.D
    assert mutate_seed(once, k) == seed


def test_acyclicity():
    assert is_acyclic(B3)
    assert not is_acyclic(CYCLE)
    assert is_acyclic([[0, 0], [0, 0]])


def test_admissible_order():
    assert admissible_order(B3) == (1, 2, 3)
    assert admissible_order([[0, 1], [-1, 0]]) == (2, 1)
    with pytest.raises(NotAcyclic):
        admissible_order(CYCLE)


@pytest.mark.parametrize("trial", range(10))
def test_admissible_order_against_brute_force(trial):
    rng = np.random.default_rng(100 + trial)
    n = int(rng.integers(2, 5))
    perm = rng.permutation(n)
    B = np.array(random_acyclic_matrix(rng, n))[np.ix_(perm, perm)]
    assert is_acyclic(B.tolist())
    sigma = [s - 1 for s in admissible_order(B.tolist())]
    assert is_admissible(B[np.ix_(sigma, sigma)].tolist())
    valid = [p for p in itertools.permutations(range(n)) if is_admissible(B[np.ix_(p, p)].tolist())]
    assert tuple(sigma) in valid


def test_permute_seed_keeps_principal_shape():
    pair = principal_pair([[0, 1], [-1, 0]], [1, 1])
    seed = initial_seed(pair.btilde, pair.form)
    moved = permute_seed(seed, admissible_order(seed.pair.B))
    assert moved.btilde == ((0, -1), (1, 0), (1, 0), (0, 1))
    assert moved.D == (1, 1)


def test_rank3_one_step_variables(seed3):
    assert mutate_seed(seed3, 1).var(1).pretty() == "(q^(-1/2))*x1^-1*x2*x3*x4 + x1^-1"
    s2 = mutate_seed(mutate_seed(seed3, 1), 2)
    assert len(s2.var(2)) == 3
    with pytest.raises(InvalidArgs):
        mutate_seed(seed3, 0)


@pytest.mark.parametrize("trial", range(8))
def test_specialization_matches_classical_recursion(trial):
    rng = np.random.default_rng(300 + trial)
    n = int(rng.integers(1, 4))
    seed = random_principal_seed(rng, n)
    ks = [int(rng.integers(1, n + 1)) for _ in range(int(rng.integers(1, 5)))]
    oracle = classical_mutation_chain(seed.btilde, ks)
    for k in ks:
        seed = mutate_seed(seed, k)
    for i, v in enumerate(seed.vars):
        assert same_rational_function(laurent_to_sympy(te_specialize_q1(v), seed.m), oracle[i])
