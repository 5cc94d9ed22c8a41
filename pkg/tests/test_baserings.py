"""Base rings: arithmetic, sigma action, automorphism validation."""

import random

import pytest

from ambiskew import BaseAutomorphism, BaseRing, FieldConfig, KindMismatch


@pytest.fixture
def split3():
    field = FieldConfig(3)
    return BaseRing.split(field, 3)


def test_idempotents_are_orthogonal(split3):
    e0, e1 = split3.idempotent(0), split3.idempotent(1)
    assert (e0 * e1).is_zero()
    assert e0 * e0 == e0
    assert sum((split3.idempotent(i) for i in range(3)), split3.zero()) == split3.one()


def test_polynomial_identity():
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ("k1", "k2"))
    e = ring.variable("k1") + ring.variable("k2")
    assert e * ring.one() == e


def test_is_scalar():
    field = FieldConfig(1)
    split2 = BaseRing.split(field, 2)
    assert (split2.idempotent(0) + split2.idempotent(1)).is_scalar()
    assert not split2.idempotent(0).is_scalar()
    ring = BaseRing.polynomial(field, ("t",))
    assert ring.from_scalar(field.from_int(5)).is_scalar()
    assert not ring.variable("t").is_scalar()
    assert ring.zero().is_scalar()


def test_kind_mismatch():
    field = FieldConfig(1)
    a = BaseRing.polynomial(field, ("t",)).variable("t")
    b = BaseRing.laurent(field, ("t",)).variable("t")
    with pytest.raises(KindMismatch):
        a + b


def test_sigma_scales_monomials():
    field = FieldConfig(1, ("a", "lam"))
    ring = BaseRing.polynomial(field, ("t",))
    a, lam = field.parameter("a"), field.parameter("lam")
    sigma = BaseAutomorphism(ring, scales=(a,))
    m = 4
    u = ring.monomial((m,), lam)
    assert sigma.apply(u) == ring.monomial((m,), lam * a**m)


def test_sigma_fixes_one():
    field = FieldConfig(1, ("a",))
    ring = BaseRing.laurent(field, ("t",))
    sigma = BaseAutomorphism(ring, scales=(field.parameter("a"),))
    assert sigma.apply(ring.one(), 7) == ring.one()
    split = BaseRing.split(field, 4)
    perm = BaseAutomorphism(split, permutation=(1, 2, 3, 0))
    assert perm.apply(split.one(), 5) == split.one()


def test_affine_inverse_by_substitution_oracle():
    field = FieldConfig(1, ("gamma",))
    ring = BaseRing.polynomial(field, ("t",))
    gamma = field.parameter("gamma")
    sigma = BaseAutomorphism(ring, scales=(field.one(),), shifts=(-gamma,))
    t = ring.variable("t")
    got = sigma.apply(t * t, -1)
    # oracle: substitute the inverse image t + gamma and expand directly
    image = t + ring.from_scalar(gamma)
    assert got == image * image


def test_aut_verify():
    field = FieldConfig(1, ("q",))
    ring = BaseRing.polynomial(field, ("k1",))
    diag = BaseAutomorphism(ring, scales=(field.parameter("q"),))
    report = diag.verify()
    assert report.valid and report.diagonal

    shifted = BaseAutomorphism(ring, scales=(field.one(),), shifts=(-field.one(),))
    report = shifted.verify()
    assert report.valid and not report.diagonal

    degenerate = BaseAutomorphism(ring, scales=(field.zero(),), shifts=(field.one(),))
    report = degenerate.verify()
    assert not report.valid

    split = BaseRing.split(field, 3)
    ident = BaseAutomorphism(split, permutation=(0, 1, 2))
    assert ident.verify().diagonal
    cyc = BaseAutomorphism(split, permutation=(1, 2, 0))
    rep = cyc.verify()
    assert rep.valid and not rep.diagonal
    broken = BaseAutomorphism(split, permutation=(0, 0, 1))
    assert not broken.verify().valid


def test_laurent_forbids_shift():
    field = FieldConfig(1)
    ring = BaseRing.laurent(field, ("t",))
    with pytest.raises(ValueError):
        BaseAutomorphism(ring, scales=(field.one(),), shifts=(field.one(),))


def _random_element(ring, rng):
    out = ring.zero()
    for _ in range(3):
        if ring.kind.value == "split":
            key = rng.randrange(ring.size)
        elif ring.kind.value == "laurent":
            key = tuple(rng.randint(-2, 2) for _ in range(ring.nvars))
        else:
            key = tuple(rng.randint(0, 3) for _ in range(ring.nvars))
        out = out + ring.monomial(key, ring.field.from_int(rng.randint(-3, 3)))
    return out


def _rings_with_auts():
    field = FieldConfig(4, ("a", "b"))
    poly = BaseRing.polynomial(field, ("t", "s"))
    laurent = BaseRing.laurent(field, ("t",))
    split = BaseRing.split(field, 4)
    yield poly, BaseAutomorphism(
        poly,
        scales=(field.parameter("a"), field.from_int(2)),
        shifts=(field.parameter("b"), field.zero()),
    )
    yield laurent, BaseAutomorphism(laurent, scales=(field.parameter("a"),))
    yield split, BaseAutomorphism(split, permutation=(2, 0, 3, 1))


@pytest.mark.parametrize("ring,aut", list(_rings_with_auts()))
def test_sigma_is_a_ring_homomorphism(ring, aut):
    rng = random.Random(11)
    for power in (-2, -1, 1, 2):
        for _ in range(8):
            a = _random_element(ring, rng)
            b = _random_element(ring, rng)
            assert aut.apply(a * b, power) == aut.apply(a, power) * aut.apply(b, power)
            assert aut.apply(a + b, power) == aut.apply(a, power) + aut.apply(b, power)


@pytest.mark.parametrize("ring,aut", list(_rings_with_auts()))
def test_sigma_invertibility(ring, aut):
    rng = random.Random(13)
    for power in (-2, -1, 1, 2, 3):
        for _ in range(6):
            a = _random_element(ring, rng)
            assert aut.apply(aut.apply(a, power), -power) == a


def test_split_sigma_permutes_idempotents():
    field = FieldConfig(1)
    split = BaseRing.split(field, 3)
    cyc = BaseAutomorphism(split, permutation=(1, 2, 0))
    images = {i: cyc.apply(split.idempotent(i)) for i in range(3)}
    assert images[0] == split.idempotent(1)
    assert images[1] == split.idempotent(2)
    assert images[2] == split.idempotent(0)


def test_structural_dimension():
    field = FieldConfig(1)
    assert BaseRing.polynomial(field, 3).structural_dimension == 3
    assert BaseRing.laurent(field, 2).structural_dimension == 2
    assert BaseRing.split(field, 5).structural_dimension == 0
