"""Certificates: balance residue, checker routes, GWA bridge, route dispatch."""

import random

import pytest

from ambiskew import (
    AmbiskewPresentation,
    BaseAutomorphism,
    BaseRing,
    FieldConfig,
    NonDiagonalSigma,
    VerifyOptions,
    balance_residue,
    check_auto,
    check_cor37,
    check_gwa,
    check_nosigma,
    check_sisigma,
    gwa_from_ambiskew,
    verify_calculus,
)

from test_ore import make_qaffine, make_qplane, make_semiambi, make_split_generic, make_weyl

FAST = VerifyOptions(trials=2, spot_checks=3)


def test_balance_residue_semiambi_vanishes():
    assert balance_residue(make_semiambi()).is_zero()


def test_balance_residue_zero_u():
    assert balance_residue(make_qaffine(2)).is_zero()


def test_balance_residue_monomial_family_closed_form():
    field = FieldConfig(1, ("lam", "a", "rho"))
    ring = BaseRing.polynomial(field, ("t",))
    lam, a, rho = (field.parameter(p) for p in ("lam", "a", "rho"))
    sigma = BaseAutomorphism(ring, scales=(a,))
    for m in (1, 2, 5):
        u = ring.monomial((m,), lam)
        pres = AmbiskewPresentation(ring, sigma, rho, u=u)
        factor = rho * a**m - 1
        assert balance_residue(pres) == ring.monomial((m,), lam * factor * factor)
    # and the residue vanishes exactly when rho * a^m = 1
    field2 = FieldConfig(1, ("lam", "a"))
    ring2 = BaseRing.polynomial(field2, ("t",))
    a2 = field2.parameter("a")
    sigma2 = BaseAutomorphism(ring2, scales=(a2,))
    m = 3
    pres = AmbiskewPresentation(
        ring2, sigma2, (a2**m).inv(), u=ring2.monomial((m,), field2.parameter("lam"))
    )
    assert balance_residue(pres).is_zero()
    assert check_auto(pres, FAST).verdict == "smooth"


def test_check_nosigma_semiambi():
    cert = check_nosigma(make_semiambi(), FAST)
    assert cert.verdict == "smooth"
    assert cert.dimension == 2
    assert cert.route == "nosigma"
    assert cert.calculus_verified


def test_check_nosigma_swap():
    field = FieldConfig(1)
    ring = BaseRing.split(field, 2)
    swap = BaseAutomorphism(ring, permutation=(1, 0))
    u = ring.idempotent(0) - ring.idempotent(1)
    pres = AmbiskewPresentation(ring, swap, -field.one(), u=u)
    assert balance_residue(pres).is_zero()
    cert = check_nosigma(pres, FAST)
    assert cert.verdict == "smooth"


def test_check_nosigma_unbalanced():
    field = FieldConfig(1)
    ring = BaseRing.split(field, 1)
    pres = AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.from_int(2), u=ring.one()
    )
    cert = check_nosigma(pres, FAST)
    assert cert.verdict == "inconclusive"
    bal = {c.id: c for c in cert.conditions}["balance"]
    assert bal.status == "fail"
    assert bal.witness == "1"  # (rho - 1)^2 * 1 with rho = 2


def test_check_sisigma_quantum_affine():
    cert = check_sisigma(make_qaffine(2), FAST)
    assert cert.verdict == "smooth"
    assert cert.dimension == 4
    statuses = {c.id: c.status for c in cert.conditions}
    assert statuses == {"1": "pass", "2": "pass", "3": "pass", "4": "vacuous", "5": "pass"}


def test_check_sisigma_exot():
    field = FieldConfig(1, ("q",))
    ring = BaseRing.polynomial(field, ("t1", "t2"))
    q = field.parameter("q")
    sigma = BaseAutomorphism(ring, scales=(q, q * q))
    pres = AmbiskewPresentation(ring, sigma, (q**3).inv(), u=ring.monomial((1, 1)))
    cert = check_sisigma(pres, FAST)
    assert cert.verdict == "smooth"
    statuses = {c.id: c.status for c in cert.conditions}
    assert statuses["4"] == "pass"


def _downup_case1(mu1i=2, mu2i=3, gammai=1):
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ("t",))
    mu1, mu2, gamma = (field.from_int(v) for v in (mu1i, mu2i, gammai))
    sigma = BaseAutomorphism(ring, scales=(mu2.inv(),))
    shift = mu1 * mu2 * gamma / (field.one() - mu2)
    v = (ring.variable("t") + ring.from_scalar(shift)).scale(-(mu1.inv()))
    return AmbiskewPresentation(ring, sigma, mu1.inv(), v=v, name="downup-case1")


def test_check_sisigma_downup_case1():
    cert = check_sisigma(_downup_case1(), FAST)
    assert cert.verdict == "inconclusive"
    assert cert.failing_ids() == ["2"]
    cond2 = {c.id: c for c in cert.conditions}["2"]
    assert cond2.witness is not None and "t" in cond2.witness
    statuses = {c.id: c.status for c in cert.conditions}
    assert statuses["1"] == "inapplicable" and statuses["4"] == "inapplicable"


def test_check_cor37_examples():
    for make, name in ((make_weyl, "weyl"), (make_qplane, "qplane")):
        cert = check_cor37(make(), FAST)
        assert cert.verdict == "smooth", name
        assert cert.dimension == 2
    field = FieldConfig(5)
    ring = BaseRing.split(field, 5)
    z = field.zeta()
    sigma = BaseAutomorphism(ring, permutation=tuple((i + 1) % 5 for i in range(5)))
    v = ring.element({i: z**i for i in range(5)})
    pres = AmbiskewPresentation(ring, sigma, z, v=v)
    cert = check_cor37(pres, FAST)
    assert cert.verdict == "smooth"


def test_check_auto_routes():
    assert check_auto(make_weyl(), FAST).route == "cor37"
    assert check_auto(make_qaffine(1), FAST).route == "sisigma"
    assert check_auto(make_semiambi(), FAST).route == "nosigma"


def test_check_auto_qm2():
    field = FieldConfig(1, ("q",))
    ring = BaseRing.polynomial(field, ("b1", "b2"))
    q = field.parameter("q")
    s = (q * q).inv()
    sigma = BaseAutomorphism(ring, scales=(s, s))
    v = ring.monomial((1, 1), s - q * q)
    pres = AmbiskewPresentation(ring, sigma, field.one(), v=v, name="qm2")
    cert = check_auto(pres, FAST)
    assert cert.verdict == "inconclusive"
    assert cert.failing_ids() == ["2"]


def test_auto_agrees_with_direct_route_when_unique():
    for make in (make_qaffine, ):
        pres = make(2)
        auto = check_auto(pres, FAST)
        direct = check_sisigma(pres, FAST)
        assert auto.verdict == direct.verdict
        assert auto.route == direct.route
        assert [c.status for c in auto.conditions] == [c.status for c in direct.conditions]


def test_inconclusive_certificates_carry_witnessed_failures():
    for pres in (_downup_case1(), make_split_generic()):
        cert = check_auto(pres, FAST)
        assert cert.verdict == "inconclusive"
        flagged = [c for c in cert.conditions if c.status in ("fail", "inapplicable")]
        assert flagged
        assert any(c.witness for c in cert.conditions if c.status == "fail")


def test_smooth_certificate_implies_constructive_checks():
    from ambiskew import Calculus, endo_check_relations, endo_pair_commute

    for make in (make_weyl, make_semiambi, lambda: make_qaffine(1)):
        pres = make()
        cert = check_auto(pres, FAST)
        assert cert.verdict == "smooth" and cert.calculus_verified
        calc = Calculus(pres)
        maps = list(calc.twists)
        assert all(endo_check_relations(pres, m).ok for m in maps)
        for i in range(len(maps)):
            for j in range(i + 1, len(maps)):
                assert endo_pair_commute(pres, maps[i], maps[j])
        assert calc.integrability_check(trials=1, seed=1).ok


def test_verify_calculus_rejects_broken_presentation():
    ok, detail = verify_calculus(make_split_generic(), FAST)
    assert not ok
    assert detail


def _random_conditions34_presentation(rng):
    """A random diagonal presentation satisfying conditions (3) and (4)."""
    field = FieldConfig(1, ("q",))
    q = field.parameter("q")
    n = rng.randint(1, 3)
    ring = BaseRing.polynomial(field, n)
    weights = [rng.choice([-2, -1, 1, 2, 3]) for _ in range(n)]
    sigma = BaseAutomorphism(ring, scales=tuple(q**w for w in weights))
    first = tuple(rng.randint(0, 3) for _ in range(n))
    target = sum(w * e for w, e in zip(weights, first))
    u = ring.monomial(first, field.from_int(rng.randint(1, 5)))
    for _ in range(6):
        cand = tuple(rng.randint(0, 3) for _ in range(n))
        if sum(w * e for w, e in zip(weights, cand)) == target:
            u = u + ring.monomial(cand, field.from_int(rng.randint(1, 5)))
    rho = q**-target
    return AmbiskewPresentation(ring, sigma, rho, u=u)


def test_redundancy_of_conditions_1_and_2():
    # conditions (3) + (4) force a zero balance residue and v = 0
    rng = random.Random(55)
    for _ in range(25):
        pres = _random_conditions34_presentation(rng)
        assert pres.v.is_zero()
        assert balance_residue(pres).is_zero()


# -- GWA bridge ---------------------------------------------------------------


def test_gwa_trivial_c():
    pres = make_qaffine(1)
    gwa = gwa_from_ambiskew(pres)
    assert gwa.c.is_zero()
    assert gwa.conformal
    assert gwa.sigma_omega_render() == "sigma(w) = rho*w"


def test_gwa_downup_case1_conformal():
    pres = _downup_case1()
    gwa = gwa_from_ambiskew(pres)
    assert gwa.conformal
    assert gwa.casimir_scale == pres.rho  # sigma(z) = mu1^-1 z
    # the conformal element: a = mu2/(mu2 - mu1) t + gamma mu1 mu2/((1-mu1)(1-mu2))
    field = pres.field
    ring = pres.ring
    mu1, mu2, gamma = field.from_int(2), field.from_int(3), field.one()
    expect = ring.variable("t").scale(mu2 / (mu2 - mu1)) + ring.from_scalar(
        gamma * mu1 * mu2 / ((field.one() - mu1) * (field.one() - mu2))
    )
    assert gwa.conformal_a == expect
    # and it indeed solves c = sigma(a) - p a
    lhs = pres.sigma.apply(gwa.conformal_a) - gwa.conformal_a.scale(gwa.p)
    assert lhs == gwa.c


def test_gwa_weyl_type_not_conformal():
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ())
    pres = AmbiskewPresentation(ring, BaseAutomorphism(ring), field.one(), v=ring.one())
    gwa = gwa_from_ambiskew(pres)
    assert not gwa.conformal
    assert gwa.casimir_scale is None


def test_gwa_affine_conformal_solve():
    # shift case: sigma(t) = t - gamma, p = 1, c = -t has a quadratic solution
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ("t",))
    sigma = BaseAutomorphism(ring, scales=(field.one(),), shifts=(-field.one(),))
    pres = AmbiskewPresentation(ring, sigma, field.one(), v=-ring.variable("t"))
    gwa = gwa_from_ambiskew(pres)
    assert gwa.conformal
    lhs = sigma.apply(gwa.conformal_a) - gwa.conformal_a
    assert lhs == gwa.c


def test_check_gwa_quantum_affine_data():
    field = FieldConfig(1, ("a1", "p"))
    ring = BaseRing.polynomial(field, ("b1",))
    sigma = BaseAutomorphism(ring, scales=(field.parameter("a1"),))
    pres = AmbiskewPresentation(ring, sigma, field.parameter("p"), u=ring.zero(),
                                name="gwa-corollary")
    gwa = gwa_from_ambiskew(pres)
    cert = check_gwa(gwa, u=ring.zero(), options=FAST)
    assert cert.verdict == "smooth"
    assert cert.route == "gwa"
    assert cert.dimension == 3
    statuses = {c.id: c.status for c in cert.conditions}
    assert statuses["c-match"] == "pass"
    assert statuses["1"] == "pass" and statuses["2"] == "pass"
    assert statuses["4"] == "vacuous"
    # the reduction agrees with the direct diagonal route
    direct = check_sisigma(pres, FAST)
    assert direct.verdict == cert.verdict


def test_check_gwa_downup_case1():
    gwa = gwa_from_ambiskew(_downup_case1())
    cert = check_gwa(gwa, options=FAST)
    assert cert.verdict == "inconclusive"
    assert cert.failing_ids() == ["2"]
    assert cert.route == "gwa"


def test_check_gwa_rejects_shift_sigma():
    field = FieldConfig(1)
    ring = BaseRing.polynomial(field, ("t",))
    sigma = BaseAutomorphism(ring, scales=(field.one(),), shifts=(-field.one(),))
    pres = AmbiskewPresentation(ring, sigma, field.one(), v=-ring.variable("t"))
    gwa = gwa_from_ambiskew(pres)
    with pytest.raises(NonDiagonalSigma):
        check_gwa(gwa, options=FAST)


def test_gwa_omega_var_avoids_collision():
    field = FieldConfig(1, ("a1", "rho"))
    ring = BaseRing.polynomial(field, ("w",))
    sigma = BaseAutomorphism(ring, scales=(field.parameter("a1"),))
    pres = AmbiskewPresentation(ring, sigma, field.parameter("rho"), u=ring.zero())
    gwa = gwa_from_ambiskew(pres)
    assert gwa.omega_var not in ring.var_names
