"""Induced-model vectors: explicit torus eigenvectors reproduce the
abstract correlation constants."""

import random

import pytest

from toric_correlator import CycNum, corr_constant
from toric_correlator.pgl2 import mat_mul
from toric_correlator.ps_model import PsModel, bessel_value, vector_equal


def rand_group_mat(g, rng):
    entries = [None] + [g.sub_exp(e) for e in range(g.q - 1)]
    from toric_correlator.pgl2 import mat_det

    while True:
        mat = tuple(rng.choice(entries) for _ in range(4))
        if mat_det(g.tower, mat) is not None:
            return mat


def test_apply_is_an_action(g7):
    g = g7
    model = PsModel(g, 1)
    rng = random.Random(17)
    vec = model.vector_k()
    for _ in range(8):
        x = rand_group_mat(g, rng)
        y = rand_group_mat(g, rng)
        via_product = model.apply(mat_mul(g.tower, x, y), vec)
        stepwise = model.apply(x, model.apply(y, vec))
        assert vector_equal(via_product, stepwise)


def test_scalars_act_trivially(g7):
    # the model must factor through the projective group
    g = g7
    model = PsModel(g, 2)
    vec = model.vector_h()
    for e in range(g.q - 1):
        c = g.sub_exp(e)
        scalar = (c, None, None, c)
        assert vector_equal(model.apply(scalar, vec), vec)


def test_h_vector_is_an_h_eigenvector(g7):
    g = g7
    for r in range(1, (g.q - 1) // 2):
        model = PsModel(g, r)
        vh = model.vector_h()
        for h in g.H:
            out = model.apply(h, vh)
            assert vector_equal(out, vh)


def test_k_vector_is_k_invariant(g7):
    g = g7
    for r in (1, 2):
        model = PsModel(g, r)
        vk = model.vector_k()
        for k in g.K:
            assert vector_equal(model.apply(k, vk), vk)


def test_consistency_check_passes(g5, g7, g9):
    for g in (g5, g7, g9):
        for r in range(1, (g.q - 1) // 2):
            PsModel(g, r).consistency_check()


def test_model_constant_matches_character_route(g7, g9, counts7, counts9):
    for g, counts in ((g7, counts7), (g9, counts9)):
        for r in range(1, (g.q - 1) // 2):
            model = PsModel(g, r)
            assert model.model_constant() == corr_constant(g, ("ps", r), counts)


def test_corr_sum_abs_square_is_the_constant(g7):
    g = g7
    model = PsModel(g, 2)
    s = model.corr_sum()
    want = s.abs2() / CycNum.rational(g.q**2 - 1)
    assert model.model_constant() == want


def test_bessel_value_identity_element(g7):
    # at the identity the Bessel-type value is 1
    g = g7
    t = g.tower
    ident = (t.one, None, None, t.one)
    for rep in (("ps", 1), ("cusp", 1)):
        assert bessel_value(g, rep, ident) == CycNum.rational(1)


def test_invalid_r_rejected(g5):
    with pytest.raises(ValueError):
        PsModel(g5, 0)
    with pytest.raises(ValueError):
        PsModel(g5, (g5.q - 1) // 2)  # boundary exponent is not regular
