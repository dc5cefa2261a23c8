from fractions import Fraction

import pytest

from conftest import random_families
from qcluster.errors import NotAcyclic, NotAdmissible, NotPrincipal
from qcluster.golden import LAMBDA
from qcluster.projective import (
    closed_form_check,
    compute_family,
    exchange_relation,
    first_term_closed_form,
    lower_bound_generators,
    one_step_closed_form,
)
from qcluster.qseed import (
    admissible_order,
    frame_monomial,
    initial_seed,
    mutate_seed,
    permute_seed,
    principal_pair,
)
from qcluster.qtorus import TorusElement


def gen(form, i, p=1):
    return TorusElement.generator(form, i, p)


def test_rank3_projective_variables(fam3, seed3):
    form = fam3.form
    assert fam3.xproj(1) == mutate_seed(seed3, 1).var(1)
    assert fam3.xproj(2) == fam3.var(2, 2) and len(fam3.xproj(2)) == 3
    assert fam3.seeds[-1].pair.B == seed3.pair.B
    assert fam3.xproj(1) == (gen(form, 1, -1) * gen(form, 2) * gen(form, 3) * gen(form, 4)).shift(-1) + gen(form, 1, -1)


def test_zero_exchange_matrix_family():
    pair = principal_pair([[0, 0], [0, 0]], [1, 1])
    fam = compute_family(initial_seed(pair.btilde, pair.form))
    form = fam.form
    for i in (1, 2):
        want = (gen(form, i, -1) * gen(form, 2 + i)).shift(fam.lam(i, 2 + i)) + gen(form, i, -1)
        assert fam.xproj(i) == want
        bullet, S = exchange_relation(fam, i)
        assert S == gen(form, 2 + i)
        assert fam.x(i) * fam.xproj(i) == S.shift(int(2 * bullet)) + TorusElement.one(form)


def test_preconditions():
    with pytest.raises(NotPrincipal):
        compute_family(initial_seed([[0], [2]], [[0, -1], [1, 0]]))
    pair = principal_pair([[0, 1], [-1, 0]], [1, 1])
    with pytest.raises(NotAdmissible):
        compute_family(initial_seed(pair.btilde, pair.form))
    cyc = principal_pair([[0, 1, -1], [-1, 0, 1], [1, -1, 0]], [1, 1, 1])
    with pytest.raises(NotAcyclic):
        compute_family(initial_seed(cyc.btilde, cyc.form))


def test_closed_form_report_rank3(fam3):
    report = closed_form_check(fam3)
    assert report.ok and report.checked == 8
    assert fam3.seeds[1].form.matrix[0] == tuple(
        LAMBDA[0][0:1] + tuple(-x for x in LAMBDA[0][1:])
    )


def test_closed_form_report_names_mismatch(fam3):
    broken = fam3.seeds[:1] + (fam3.seeds[2],) + fam3.seeds[2:]
    report = closed_form_check(type(fam3)(broken, fam3.proj_vars, fam3.order))
    assert not report.ok
    assert report.first_mismatch[0] == 1
    assert "mismatch at step 1" in str(report)


def test_first_term_rank3(fam3):
    form = fam3.form
    want = (gen(form, 1, -1) * gen(form, 2) * gen(form, 3) * gen(form, 4)).shift(-1)
    assert first_term_closed_form(fam3, 1) == want
    for k in (2, 3):
        first_term_closed_form(fam3, k)


def test_exchange_relation_rank3(fam3):
    bullet, S = exchange_relation(fam3, 1)
    assert bullet == Fraction(-1, 2)
    form = fam3.form
    assert S == gen(form, 2) * gen(form, 3) * gen(form, 4)
    mirrored = frame_monomial(fam3.seeds[0], fam3.initial.pair.column(1)).shift(1)
    assert fam3.xproj(1) * fam3.x(1) == mirrored + TorusElement.one(form)
    for k in (2, 3):
        exchange_relation(fam3, k)


def test_lower_bound_generators(fam3):
    gens = lower_bound_generators(fam3)
    assert gens[0::2] == [fam3.x(i) for i in (1, 2, 3)]
    assert gens[1::2] == list(fam3.proj_vars)
    assert len(set(gens)) == 6
    pair = principal_pair([[0]], [1])
    small = compute_family(initial_seed(pair.btilde, pair.form))
    x1, x2 = gen(small.form, 1), gen(small.form, 2)
    assert lower_bound_generators(small) == [x1, (x1.inverse() * x2).shift(small.lam(1, 2)) + x1.inverse()]


@pytest.mark.parametrize("fam", random_families(7, 25, 4), ids=lambda f: f"n{f.n}")
def test_random_family_properties(fam):
    assert closed_form_check(fam).ok
    for k in range(1, fam.n + 1):
        first_term_closed_form(fam, k)
        exchange_relation(fam, k)
        assert one_step_closed_form(fam.initial, k) == mutate_seed(fam.initial, k).var(k)


def test_one_step_closed_form_rank3(seed3):
    for i in (1, 2, 3):
        assert one_step_closed_form(seed3, i) == mutate_seed(seed3, i).var(i)


def test_family_after_reordering():
    pair = principal_pair([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], [1, 1, 1])
    seed = initial_seed(pair.btilde, pair.form)
    sigma = admissible_order(seed.pair.B)
    assert sigma == (3, 2, 1)
    fam = compute_family(permute_seed(seed, sigma))
    assert closed_form_check(fam).ok
