"""Field tower tables: representation roundtrips, Zech addition, subfields,
norms and traces. Nonzero elements are discrete logs of the tower generator;
None is zero."""

import pytest

from toric_correlator import build_tower
from toric_correlator.fields import canonical_modulus


@pytest.fixture(scope="module", params=[(3, 2), (5, 2), (7, 2), (3, 4)])
def tower(request):
    p, m = request.param
    return build_tower(p, m)


def test_coeff_roundtrip(tower):
    t = tower
    step = max(1, t.order // 200)
    for a in range(0, t.order, step):
        coeffs = t.to_coeffs(a)
        assert len(coeffs) == t.m
        assert t.from_coeffs(coeffs) == a
    assert t.to_coeffs(None) == [0] * t.m
    assert t.from_coeffs([0] * t.m) is None


def test_prime_field_roundtrip(tower):
    t = tower
    for c in range(t.p):
        assert t.to_prime(t.from_prime(c)) == c
    with pytest.raises(ValueError):
        t.to_prime(t.gen)  # generator of F_{p^m} is never in F_p for m > 1


def test_add_matches_coefficient_arithmetic(tower):
    t = tower
    p = t.p
    step = max(1, t.order // 40)
    for a in range(0, t.order, step):
        for b in range(0, t.order, step):
            want = [(x + y) % p for x, y in zip(t.to_coeffs(a), t.to_coeffs(b))]
            got = t.add(a, b)
            if got is None:
                assert all(c == 0 for c in want)
            else:
                assert t.to_coeffs(got) == want


def test_field_axioms_spot(tower):
    t = tower
    one, gen = t.one, t.gen
    assert t.mul(one, gen) == gen
    assert t.add(gen, t.neg(gen)) is None
    assert t.mul(gen, t.inv(gen)) == one
    a, b, c = 7 % t.order, 19 % t.order, 101 % t.order
    assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
    assert t.sub(a, b) == t.add(a, t.neg(b))


def test_frobenius_fixes_prime_field(tower):
    t = tower
    for c in range(1, t.p):
        a = t.from_prime(c)
        assert t.frobenius(a) == a
    b = t.gen
    for _ in range(t.m):
        b = t.frobenius(b)
    assert b == t.gen
    assert t.frobenius(t.gen, t.m - 1) != t.gen


def test_subfield_membership_count(tower):
    t = tower
    for d in range(1, t.m + 1):
        if t.m % d:
            continue
        members = sum(1 for a in range(t.order) if t.in_subfield(d, a))
        assert members == t.p**d - 1


def test_sub_dlog_exp_roundtrip(tower):
    t = tower
    d = t.m // 2
    for e in range(t.p**d - 1):
        assert t.sub_dlog(d, t.sub_exp(d, e)) == e


def test_norm_lands_in_subfield_and_is_multiplicative(tower):
    t = tower
    d = t.m // 2
    step = max(1, t.order // 60)
    for a in range(0, t.order, step):
        assert t.in_subfield(d, t.norm_to(d, a))
    a, b = 5 % t.order, 12 % t.order
    assert t.norm_to(d, t.mul(a, b)) == t.mul(t.norm_to(d, a), t.norm_to(d, b))


def test_trace_additive_and_surjective(tower):
    t = tower
    d = t.m // 2
    a, b = 5 % t.order, 12 % t.order
    assert t.trace_to(d, t.add(a, b)) == t.add(t.trace_to(d, a), t.trace_to(d, b))
    images = {t.trace_to(d, a) for a in range(t.order)}
    images.add(t.trace_to(d, None))
    assert len(images) == t.p**d
    for x in images:
        assert x is None or t.in_subfield(d, x)


def test_subfield_trace_hits_every_prime_value(tower):
    t = tower
    d = t.m // 2
    values = {t.subfield_trace(d, t.sub_exp(d, e)) for e in range(t.p**d - 1)}
    values.add(t.subfield_trace(d, None))
    assert values == set(range(t.p))


def test_minpoly_annihilates(tower):
    t = tower
    for a in (0, 1, 2, t.order // 2, t.order - 1):
        mp = t.minpoly(a)
        assert mp[-1] == 1
        assert t.eval_poly(mp, a) is None
        orbit = {a}
        b = t.frobenius(a)
        while b not in orbit:
            orbit.add(b)
            b = t.frobenius(b)
        assert len(mp) - 1 == len(orbit)


def test_sqrt_and_is_square(tower):
    t = tower
    step = max(1, t.order // 100)
    squares = 0
    for a in range(0, t.order, step):
        if t.is_square(a):
            squares += 1
            r = t.sqrt(a)
            assert t.mul(r, r) == a
        else:
            with pytest.raises(ValueError):
                t.sqrt(a)
    assert squares > 0
    assert t.sqrt(None) is None


def test_element_order_divides_group_order(tower):
    t = tower
    assert t.element_order(t.gen) == t.order
    assert t.element_order(t.one) == 1
    a = 6 % t.order
    n = t.element_order(a)
    assert t.power(a, n) == t.one
    assert t.order % n == 0


def test_canonical_modulus_deterministic():
    assert canonical_modulus(3, 2) == canonical_modulus(3, 2)
    assert canonical_modulus(7, 4) == canonical_modulus(7, 4)


def test_pinned_subfield_modulus():
    # the quadratic subfield generator's minimal polynomial is forced
    pin = [3, 6, 1]
    t = build_tower(7, 4, subfield_modulus=(2, pin))
    assert t.minpoly(t.subgen(2)) == pin
    assert t.eval_poly(pin, t.subgen(2)) is None
    # x^2 + 1 is irreducible mod 7 but its roots are not primitive
    with pytest.raises(ValueError):
        build_tower(7, 4, subfield_modulus=(2, [1, 0, 1]))
