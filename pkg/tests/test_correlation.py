"""Correlation constants: frozen values, identities, sign criterion."""

from fractions import Fraction

import pytest

from toric_correlator import (
    CycNum,
    PGL2,
    corr_constant,
    correlate_all,
    epsilon,
    epsilon_closed,
    pair_class_counts,
    regular_identity,
    tensor_identity,
)
from toric_correlator.correlation import unipotent_pair_report


# frozen exact constants for PGL2(F_5), computed once and pinned
Q5_EXPECTED = {
    ("triv",): Fraction(1),
    ("eta",): Fraction(0),
    ("st",): Fraction(0),
    ("steta",): Fraction(2, 3),
    ("ps", 1): Fraction(0),
    ("cusp", 1): Fraction(1, 6),
    ("cusp", 2): Fraction(0),
}


def test_q5_constants_frozen(g5):
    records = {r.rep: r for r in correlate_all(g5)}
    assert set(records) == set(Q5_EXPECTED)
    for rep, want in Q5_EXPECTED.items():
        assert records[rep].value.as_rational() == want


def test_q7_cuspidal_values_quadratic_irrational(g7, counts7):
    # the two nonvanishing cuspidal constants are (2 +/- sqrt2)/6
    sqrt2 = CycNum.zeta(8) + CycNum.zeta(8, 7)
    lo = (CycNum.rational(2) - sqrt2) / CycNum.rational(6)
    hi = (CycNum.rational(2) + sqrt2) / CycNum.rational(6)
    got = [corr_constant(g7, ("cusp", r), counts7) for r in (1, 2, 3)]
    nonzero = [v for v in got if not v.is_zero()]
    assert len(nonzero) == 2
    assert any(v == lo for v in nonzero)
    assert any(v == hi for v in nonzero)


def test_constants_are_real_and_nonnegative(g9):
    for rec in correlate_all(g9):
        assert rec.value.conj() == rec.value
        assert rec.value.to_complex().real >= -1e-12


def test_regular_identity_small():
    for p, f in ((3, 1), (5, 1), (7, 1), (3, 2), (11, 1)):
        regular_identity(PGL2(p, f))


def test_tensor_identity(g5, g7):
    for g in (g5, g7):
        for rep in g.reps():
            tensor_identity(g, rep)


def test_unipotent_count_follows_q_mod_4(g5, g7, g9):
    for g in (g5, g7, g9):
        rpt = unipotent_pair_report(g)
        assert rpt["agrees_with_q_rule"]
    # the p-mod-4 prediction fails precisely for even extension degree
    rpt9 = unipotent_pair_report(g9)
    assert not rpt9["agrees_with_p_rule"]


def test_epsilon_closed_forms(g7):
    assert epsilon_closed(g7, ("triv",)) == 1
    assert epsilon_closed(g7, ("steta",)) == -1  # (q-1)/2 = 3 odd
    assert epsilon_closed(g7, ("ps", 1)) == -1
    assert epsilon_closed(g7, ("ps", 2)) == 1
    assert epsilon_closed(g7, ("cusp", 1)) == 1
    assert epsilon_closed(g7, ("cusp", 2)) == -1


def test_epsilon_three_ways_agree(g5, g7, g9):
    # epsilon() cross-checks the closed form against two other routes and
    # raises on disagreement; None marks reps without multiplicity one
    for g in (g5, g7, g9):
        for rep in g.reps():
            eps = epsilon(g, rep)
            if rep[0] in ("eta", "st"):
                assert eps is None
            else:
                assert eps in (-1, 1)


def test_sign_criterion_one_directional(g5, g7, g9, g25):
    # epsilon = -1 forces vanishing; the converse fails only over
    # extension fields, in exactly these cases
    plus_vanishing = []
    for g in (g5, g7, g9, g25):
        for rec in correlate_all(g):
            if rec.epsilon == -1:
                assert rec.vanishes
            if rec.epsilon == 1 and rec.vanishes:
                plus_vanishing.append((g.q, rec.rep))
                assert g.f > 1
    assert plus_vanishing == [(9, ("steta",)), (25, ("ps", 6)), (25, ("ps", 8))]


def test_pair_class_counts_total(g7):
    counts = pair_class_counts(g7)
    assert sum(counts.values()) == (g7.q - 1) * (g7.q + 1)


def test_rep_value_independent_of_counts_argument(g5):
    counts = pair_class_counts(g5)
    for rep in (("steta",), ("cusp", 1)):
        assert corr_constant(g5, rep) == corr_constant(g5, rep, counts)


def test_records_shape(g5):
    rec = correlate_all(g5)[0]
    d = rec.to_json_dict()
    assert set(d) == {"rep", "dim", "value", "epsilon", "vanishes", "sign_criterion_ok"}
    assert d["value"]["conductor"] >= 1


def test_bad_rep_label_raises(g5):
    with pytest.raises((KeyError, ValueError)):
        corr_constant(g5, ("ps", 99))
