"""PBW engine: normal forms, words, twists, endomorphism checks, confluence."""

import random

import pytest

from ambiskew import (
    AmbiskewPresentation,
    BaseAutomorphism,
    BaseRing,
    FieldConfig,
    GeneratorMap,
    NegativePowerNotInvertible,
    NonDiagonalSigma,
    UnknownSymbol,
    USourceUnsolvable,
    endo_check_relations,
    endo_pair_commute,
    twist_build,
)

from oracles import engine_word_eval, exhaustive_normal_forms, random_word


def make_weyl():
    field = FieldConfig(1)
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.one(), v=ring.one(), name="weyl"
    )


def make_qplane():
    field = FieldConfig(1, ("q",))
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.parameter("q").inv(),
        v=ring.zero(), name="qplane",
    )


def make_qaffine(n, field=None):
    field = field or FieldConfig(1, tuple(f"a{i+1}" for i in range(n)) + ("rho",))
    ring = BaseRing.polynomial(field, n)
    sigma = BaseAutomorphism(
        ring, scales=tuple(field.parameter(f"a{i+1}") for i in range(n))
    )
    return AmbiskewPresentation(
        ring, sigma, field.parameter("rho"), u=ring.zero(), name=f"qaffine{n}"
    )


def make_split_generic():
    field = FieldConfig(1, ("rho", "c"))
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.parameter("rho"),
        v=ring.from_scalar(field.parameter("c")), name="split-generic",
    )


def make_semiambi():
    field = FieldConfig(3)
    ring = BaseRing.split(field, 3)
    sigma = BaseAutomorphism(ring, permutation=(1, 2, 0))
    z = field.zeta()
    u = ring.element({0: field.one(), 1: z, 2: z * z})
    return AmbiskewPresentation(ring, sigma, z, u=u, name="semiambi")


def make_laurent1():
    field = FieldConfig(1, ("a1", "rho"))
    ring = BaseRing.laurent(field, 1)
    sigma = BaseAutomorphism(ring, scales=(field.parameter("a1"),))
    return AmbiskewPresentation(
        ring, sigma, field.parameter("rho"), u=ring.zero(), name="laurent1"
    )


def test_weyl_commutator():
    weyl = make_weyl()
    assert weyl.y() * weyl.x() == weyl.x() * weyl.y() + weyl.one()


def test_qaffine_y_past_base():
    pres = make_qaffine(1)
    a1 = pres.field.parameter("a1")
    k1 = pres.generator("k1")
    assert pres.y() * k1 == pres.pbw(pres.ring.variable("k1"), 0, 1).scale(a1.inv())


def test_y2x_matches_exhaustive_oracle():
    pres = make_split_generic()
    rho, c = pres.field.parameter("rho"), pres.field.parameter("c")
    got = pres.y(2) * pres.x()
    want = (
        pres.pbw(pres.ring.one(), 1, 2).scale(rho * rho)
        + pres.y().scale((rho + 1) * c)
    )
    assert got == want
    forms = exhaustive_normal_forms(pres, (("y",), ("y",), ("x",)))
    assert forms == [got]


def test_word_eval_examples():
    qplane = make_qplane()
    q = qplane.field.parameter("q")
    assert qplane.word_eval([("x", 1), ("y", 1)]) == qplane.x() * qplane.y()
    got = qplane.word_eval([("y", 1), ("x", 1)])
    assert got == (qplane.x() * qplane.y()).scale(q.inv())

    pres = make_qaffine(1)
    a1 = pres.field.parameter("a1")
    got = pres.word_eval([("k1", 2), ("x", 1), ("k1", 1)])
    assert got == pres.pbw(pres.ring.monomial((3,)), 1, 0).scale(a1)


def test_word_eval_errors():
    pres = make_qaffine(1)
    with pytest.raises(UnknownSymbol):
        pres.word_eval([("z", 1)])
    with pytest.raises(NegativePowerNotInvertible):
        pres.word_eval([("k1", -1)])
    with pytest.raises(NegativePowerNotInvertible):
        pres.word_eval([("x", -2)])
    laurent = make_laurent1()
    a1 = laurent.field.parameter("a1")
    got = laurent.word_eval([("x", 1), ("k1", -1)])
    assert got == laurent.pbw(laurent.ring.monomial((-1,)), 1, 0).scale(a1.inv())


def test_twist_images():
    pres = make_qaffine(1)
    a1, rho = pres.field.parameter("a1"), pres.field.parameter("rho")
    tw = twist_build(pres)
    k1 = pres.generator("k1")
    assert tw["x"].apply(k1) == k1.scale(a1.inv())
    assert tw["x"].apply(pres.x()) == pres.x()
    assert tw["x"].apply(pres.y()) == pres.y().scale(rho)
    assert tw["k1"].apply(pres.x()) == pres.x().scale(a1)
    assert tw["y"].apply(pres.x()) == pres.x().scale(rho.inv())

    semiambi = make_semiambi()
    tws = twist_build(semiambi)
    assert tws["y"].apply(semiambi.generator("e0")) == semiambi.generator("e1")
    assert tws["x"].apply(semiambi.generator("e1")) == semiambi.generator("e0")


def test_twist_build_rejects_affine_sigma():
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ("t",))
    sigma = BaseAutomorphism(ring, scales=(field.one(),), shifts=(field.one(),))
    pres = AmbiskewPresentation(ring, sigma, field.one(), v=ring.zero())
    with pytest.raises(NonDiagonalSigma):
        twist_build(pres)


def test_endo_check_examples():
    pres = make_qaffine(1)
    for gmap in twist_build(pres).values():
        assert endo_check_relations(pres, gmap).ok
    assert endo_check_relations(pres, GeneratorMap.identity(pres)).ok

    weyl = make_weyl()
    bad = GeneratorMap(
        weyl, [weyl.one()], weyl.x(), weyl.y().scale(weyl.field.from_int(2))
    )
    result = endo_check_relations(weyl, bad)
    assert not result.ok
    assert result.violated == "y*x = rho*x*y + v"
    assert result.residue() == weyl.one()


def test_endo_pair_commute():
    pres = make_qaffine(2)
    tw = twist_build(pres)
    assert endo_pair_commute(pres, tw["x"], tw["y"])
    assert endo_pair_commute(pres, tw["k1"], tw["k2"])
    assert endo_pair_commute(pres, tw["x"], tw["x"])


def test_balanced_twists_pass_everywhere():
    for pres in (make_weyl(), make_qplane(), make_semiambi(), make_qaffine(2)):
        tw = twist_build(pres)
        maps = list(tw.values())
        for gmap in maps:
            assert endo_check_relations(pres, gmap).ok, pres.name
        for i in range(len(maps)):
            for j in range(i + 1, len(maps)):
                assert endo_pair_commute(pres, maps[i], maps[j])


def _random_element(pres, rng, max_deg=2, terms=3):
    ring = pres.ring
    acc = pres.zero()
    for _ in range(terms):
        if ring.kind.value == "split":
            key = rng.randrange(ring.size)
            base = ring.monomial(key)
        elif ring.kind.value == "laurent":
            base = ring.monomial(tuple(rng.randint(-max_deg, max_deg) for _ in range(ring.nvars)))
        else:
            base = ring.monomial(tuple(rng.randint(0, max_deg) for _ in range(ring.nvars)))
        acc = acc + pres.pbw(base, rng.randint(0, max_deg), rng.randint(0, max_deg)).scale(
            pres.field.from_int(rng.randint(-3, 3))
        )
    return acc


ALL_PRESENTATIONS = [
    make_weyl, make_qplane, make_split_generic, make_semiambi,
    lambda: make_qaffine(1), lambda: make_qaffine(2), make_laurent1,
]


@pytest.mark.parametrize("maker", ALL_PRESENTATIONS)
def test_associativity_random(maker):
    pres = maker()
    rng = random.Random(5)
    for _ in range(15):
        a, b, c = (_random_element(pres, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("maker", ALL_PRESENTATIONS)
def test_distributivity_and_bilinearity(maker):
    pres = maker()
    rng = random.Random(6)
    s = pres.field.from_int(3)
    for _ in range(10):
        a, b, c = (_random_element(pres, rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert (a.scale(s)) * b == (a * b).scale(s)
        assert a * (b.scale(s)) == (a * b).scale(s)


@pytest.mark.parametrize("maker", ALL_PRESENTATIONS)
def test_degree_law(maker):
    pres = maker()
    rng = random.Random(8)
    for _ in range(10):
        a = _random_element(pres, rng)
        b = _random_element(pres, rng)
        p = a * b
        if p.is_zero():
            continue
        assert p.x_degree() <= a.x_degree() + b.x_degree()
        assert p.y_degree() <= a.y_degree() + b.y_degree()


@pytest.mark.parametrize("maker", ALL_PRESENTATIONS)
def test_confluence_short_words(maker):
    pres = maker()
    rng = random.Random(17)
    for _ in range(20):
        word = random_word(pres, rng, max_len=4)
        forms = exhaustive_normal_forms(pres, word)
        assert len(forms) == 1, (pres.name, word)
        assert forms[0] == engine_word_eval(pres, word)


def test_solve_u_round_trip():
    pres = make_qaffine(2)
    ring = pres.ring
    field = pres.field
    rng = random.Random(3)
    for _ in range(10):
        u = ring.zero()
        for _ in range(3):
            u = u + ring.monomial(
                (rng.randint(0, 3), rng.randint(0, 3)), field.from_int(rng.randint(1, 4))
            )
        probe = AmbiskewPresentation(ring, pres.sigma, pres.rho, v=u - pres.sigma.apply(u).scale(pres.rho))
        solved = probe.solve_u()
        assert probe.v == solved - pres.sigma.apply(solved).scale(pres.rho)


def test_solve_u_unsolvable():
    weyl = make_weyl()
    with pytest.raises(USourceUnsolvable):
        weyl.solve_u()


def test_solve_u_split_cycle():
    # the cyclic v with rho a root of unity admits no Jordan form u
    field = FieldConfig(4)
    ring = BaseRing.split(field, 4)
    z = field.zeta()
    sigma = BaseAutomorphism(ring, permutation=(1, 2, 3, 0))
    v = ring.element({i: z**i for i in range(4)})
    pres = AmbiskewPresentation(ring, sigma, z, v=v)
    with pytest.raises(USourceUnsolvable):
        pres.solve_u()
    # but a v with distinct fold is solvable
    pres2 = AmbiskewPresentation(ring, sigma, field.from_int(2), v=v)
    u = pres2.solve_u()
    assert u - sigma.apply(u).scale(field.from_int(2)) == v


def test_v_recomputed_from_u():
    semiambi = make_semiambi()
    assert semiambi.v.is_zero()
    exot_field = FieldConfig(1, ("q",))
    ring = BaseRing.polynomial(exot_field, ("t1", "t2"))
    q = exot_field.parameter("q")
    sigma = BaseAutomorphism(ring, scales=(q, q * q))
    pres = AmbiskewPresentation(ring, sigma, (q**3).inv(), u=ring.monomial((1, 1)))
    assert pres.v.is_zero()
