import itertools

import numpy as np
import pytest

from conftest import random_families
from qcluster.coeffring import QLaurent
from qcluster.errors import InvalidArgs, NotInSpan, SupportViolation
from qcluster.golden import Q
from qcluster.qseed import mutate_seed
from qcluster.qtorus import TorusElement, te_monomial
from qcluster.straighten import (
    PSMExpansion,
    check_support,
    comm_same_index,
    expand,
    projective_basis,
    psm_evaluate,
    random_word,
    straighten_general,
    straighten_power,
    to_projective_standard,
    to_standard_monomials,
)


def mono(form, *pairs):
    """Left-to-right product of generator powers."""
    out = TorusElement.one(form)
    for i, p in pairs:
        out = out * TorusElement.generator(form, i, p)
    return out


def frozen(form, exp, c=1):
    return te_monomial(form, exp, c)


def test_psm_evaluate(fam3):
    assert psm_evaluate(fam3, (1, 0, 0)) == fam3.x(1)
    assert psm_evaluate(fam3, (-1, 0, 0)) == fam3.xproj(1)
    assert psm_evaluate(fam3, (1, -1, 0)) == fam3.x(1) * fam3.xproj(2)
    assert psm_evaluate(fam3, (0, 0, 0)) == TorusElement.one(fam3.form)
    with pytest.raises(InvalidArgs):
        psm_evaluate(fam3, (1, 0))


def test_commutator_same_index_rank3(fam3):
    form = fam3.form
    c1 = comm_same_index(fam3, 1)
    assert c1.remainder == mono(form, (2, 1), (3, 1), (4, 1)).scale(Q((-1, -1), (1, 1)))
    c3 = comm_same_index(fam3, 3)
    want = (fam3.xproj(1) * fam3.xproj(2) ** 2 * fam3.x(6)).scale(Q((3, 1), (1, -1)))
    assert c3.remainder == want
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            cert = comm_same_index(fam3, k, l)
            assert cert.holds()
            assert cert.remainder_expansion.evaluate() == cert.remainder


def test_zero_column_commutator():
    from qcluster.projective import compute_family
    from qcluster.qseed import initial_seed, principal_pair

    pair = principal_pair([[0, 0], [0, 0]], [1, 1])
    fam = compute_family(initial_seed(pair.btilde, pair.form))
    cert = comm_same_index(fam, 1)
    # remainder is g * x_3 with g = q^(-1/2)(q - 1) times a q-power
    assert cert.remainder == fam.x(3).scale(cert.g)
    assert cert.g.at_one() == 0 and len(cert.g) == 2


def test_general_straightening_rank3(fam3):
    form = fam3.form
    f21 = straighten_general(fam3, 2, 1)
    assert f21.remainder == mono(form, (3, 3), (4, 1), (5, 1)).scale(Q((-2, 1), (-4, -1)))
    f32 = straighten_general(fam3, 3, 2)
    want = (fam3.xproj(1) ** 2 * fam3.xproj(2) * mono(form, (3, 1), (5, 1), (6, 1))).scale(Q((4, 1), (0, -1)))
    assert f32.remainder == want
    f31 = straighten_general(fam3, 3, 1)
    want = (fam3.xproj(1) * fam3.xproj(2) * mono(form, (3, 2), (4, 1), (5, 1), (6, 1))).scale(Q((5, 1), (-1, -1)))
    want = want + (fam3.xproj(2) * mono(form, (4, 1), (6, 1))).scale(Q((2, 1), (0, -1)))
    assert f31.remainder == want
    with pytest.raises(InvalidArgs):
        straighten_general(fam3, 1, 2)


def test_power_straightening_rank3(fam3):
    for j, k in ((2, 1), (3, 1), (3, 2)):
        assert straighten_power(fam3, j, k, 1).remainder == straighten_general(fam3, j, k).remainder
        for l in (2, 3):
            cert = straighten_power(fam3, j, k, l)
            assert cert.holds()
    # lambda_32 = 0, so the twist vanishes
    assert fam3.lam(3, 2) == 0
    cert = straighten_power(fam3, 3, 2, 2)
    assert cert.q_twist == 0
    assert cert.remainder == cert.lhs - cert.rhs


def test_expansion_of_rank3_products(fam3):
    form = fam3.form
    exp = to_projective_standard(fam3, fam3.xproj(2) * fam3.x(1))
    assert exp.support() == [(0, 0, 3), (1, -1, 0)]
    assert exp.coeffs[(1, -1, 0)] == TorusElement.scalar(form, QLaurent({-2: 1}))
    assert exp.coeffs[(0, 0, 3)] * psm_evaluate(fam3, (0, 0, 3)) == mono(form, (3, 3), (4, 1), (5, 1)).scale(
        Q((-2, 1), (-4, -1))
    )
    exp = to_projective_standard(fam3, fam3.xproj(3) * fam3.x(1))
    assert exp.support() == [(-1, -1, 2), (0, -1, 0), (1, 0, -1)]
    assert exp.evaluate() == fam3.xproj(3) * fam3.x(1)
    zp = exp.coeffs[(-1, -1, 2)]
    assert zp.support() == [(0, 0, 0, 1, 1, 1)]


def test_single_monomial_expansion(fam3):
    for a in itertools.product(range(-2, 3), repeat=3):
        exp = to_projective_standard(fam3, psm_evaluate(fam3, a).shift(3))
        assert exp.support() == [a]
        assert exp.coeffs[a] == TorusElement.scalar(fam3.form, QLaurent({3: 1}))


def test_standard_monomials_rank3(seed3, fam3):
    form = seed3.ambient
    x2p = mutate_seed(seed3, 2).var(2)
    assert to_standard_monomials(seed3, mutate_seed(seed3, 1).var(1)).coeffs == {
        (-1, 0, 0): TorusElement.one(form)
    }
    u = fam3.x(1) * fam3.var(2, 2)
    exp = to_standard_monomials(seed3, u)
    assert exp.support() == [(0, -1, 0), (0, 0, 3)]
    assert exp.coeffs[(0, -1, 0)] == TorusElement.scalar(form, QLaurent({1: 1}))
    assert exp.evaluate() == mono(form, (3, 3), (4, 1), (5, 1)).shift(-2) + x2p.shift(1)
    u = fam3.x(1) * fam3.x(2) ** 2 * fam3.xproj(3)
    exp = to_standard_monomials(seed3, u)
    assert len(exp.coeffs) == 6 and exp.evaluate() == u
    assert exp.coeffs[(0, 0, -1)] == TorusElement.scalar(form, QLaurent({-1: 1}))


def test_not_in_span(fam3):
    # x_1^(-1) alone is not in the cluster algebra
    with pytest.raises(NotInSpan):
        to_projective_standard(fam3, TorusElement.generator(fam3.form, 1, -1))


def test_step_cap(fam3, monkeypatch):
    u = fam3.xproj(3) * fam3.x(1)
    with pytest.raises(NotInSpan):
        to_projective_standard(fam3, u, step_cap=1)
    monkeypatch.setenv("QCL_STEP_CAP", "1")
    with pytest.raises(NotInSpan):
        to_projective_standard(fam3, u)


def test_support_checker(fam3):
    exp = to_projective_standard(fam3, fam3.xproj(3) * fam3.x(1))
    check_support(exp, {1, 2, 3}, {1, 3})
    with pytest.raises(SupportViolation):
        check_support(exp, {2}, {1})


def test_expansion_json_round_trip(fam3):
    exp = to_projective_standard(fam3, fam3.xproj(3) * fam3.x(1))
    doc = exp.to_json()
    assert [t["a"] for t in doc["terms"]] == sorted(t["a"] for t in doc["terms"])
    assert PSMExpansion.from_json(doc, projective_basis(fam3)) == exp


@pytest.mark.parametrize("fam", random_families(41, 12, 3), ids=lambda f: f"n{f.n}")
def test_random_round_trip_and_uniqueness(fam):
    rng = np.random.default_rng(fam.n * 1000 + len(fam.xproj(fam.n)))
    basis = projective_basis(fam)
    for _ in range(4):
        u = random_word(rng, fam)
        assert expand(basis, u).evaluate() == u
    a1, a2 = (tuple(int(x) for x in rng.integers(-2, 3, fam.n)) for _ in range(2))
    if a1 == a2:
        a2 = tuple(x + 1 for x in a1)
    c1 = frozen(fam.form, [0] * fam.n + list(rng.integers(-1, 2, fam.n)), QLaurent({1: 2, -2: -1}))
    c2 = frozen(fam.form, [0] * fam.n + list(rng.integers(-1, 2, fam.n)), QLaurent({3: 1}))
    u = c1 * basis.evaluate(a1) + c2 * basis.evaluate(a2)
    assert expand(basis, u).coeffs == {a1: c1, a2: c2}


@pytest.mark.parametrize("fam", random_families(5, 10, 3), ids=lambda f: f"n{f.n}")
def test_random_certificates(fam):
    n = fam.n
    for j in range(1, n + 1):
        for k in range(1, j):
            cert = straighten_general(fam, j, k)
            cross = to_projective_standard(fam, cert.lhs) - to_projective_standard(fam, cert.rhs).scale(
                QLaurent({int(2 * cert.q_twist): 1})
            )
            assert cross == cert.remainder_expansion
            for l in (2, 3):
                straighten_power(fam, j, k, l)
        for l in (1, 2):
            comm_same_index(fam, j, l)
