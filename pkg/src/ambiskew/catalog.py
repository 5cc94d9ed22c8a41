"""Built-in presentations with golden expected checker outcomes.

Every entry is a parameterized builder; unbound parameters stay free
transcendentals in the scalar field, so the default entries are certified
generically.  Bindings supplied through ``catalog_get``/``catalog_certify``
are validated against each entry's preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .baserings import BaseAutomorphism, BaseRing
from .errors import PreconditionViolated, UnknownEntry
from .ore import AmbiskewPresentation
from .scalars import FieldConfig, Scalar
from .smoothness import (
    DEFAULT_OPTIONS,
    Certificate,
    check_auto,
    check_gwa,
    gwa_from_ambiskew,
)
from .specfile import parse_scalar_text


@dataclass(frozen=True)
class ExpectedOutcome:
    verdict: str
    route: str
    failing: frozenset
    dimension: int | None

    def matches(self, cert: Certificate):
        return (
            cert.verdict == self.verdict
            and cert.route == self.route
            and frozenset(cert.failing_ids()) == self.failing
            and cert.dimension == self.dimension
        )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    cyclotomic_order: int
    param_names: tuple
    builder: object
    expected_fn: object
    via_gwa: bool = False

    def resolve(self, bindings=None):
        """Field with unbound names free, plus the full parameter map."""
        bindings = dict(bindings or {})
        unknown = set(bindings) - set(self.param_names)
        if unknown:
            raise PreconditionViolated(
                f"{self.name} takes parameters {list(self.param_names)}; "
                f"unknown: {sorted(unknown)}"
            )
        free = tuple(p for p in self.param_names if p not in bindings)
        field = FieldConfig(self.cyclotomic_order, free)
        params = {}
        for p in self.param_names:
            if p in bindings:
                value = bindings[p]
                if isinstance(value, Scalar):
                    if value.field != field:
                        raise PreconditionViolated(
                            f"binding for {p} uses a different field configuration"
                        )
                    params[p] = value
                elif isinstance(value, int):
                    params[p] = field.from_int(value)
                else:
                    params[p] = parse_scalar_text(str(value), field)
            else:
                params[p] = field.parameter(p)
        return field, params

    def build(self, bindings=None) -> AmbiskewPresentation:
        field, params = self.resolve(bindings)
        return self.builder(field, params)

    def expected(self, bindings=None) -> ExpectedOutcome:
        _, params = self.resolve(bindings)
        return self.expected_fn(params)

    def certify(self, bindings=None, options=DEFAULT_OPTIONS) -> Certificate:
        pres = self.build(bindings)
        if self.via_gwa:
            gwa = gwa_from_ambiskew(pres)
            return check_gwa(gwa, u=pres.u if pres.source == "u" else None,
                             options=options)
        return check_auto(pres, options)


def _require_nonzero(params, names, entry):
    for n in names:
        if params[n].is_zero():
            raise PreconditionViolated(f"{entry}: parameter {n} must be nonzero")


def _smooth(route, dimension):
    def expected(_params):
        return ExpectedOutcome("smooth", route, frozenset(), dimension)

    return expected


def _inconclusive(failing):
    def expected(_params):
        return ExpectedOutcome("inconclusive", "sisigma", frozenset(failing), None)

    return expected


# -- split-base entries ----------------------------------------------------------


def _build_commutative_plane(field, params):
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.one(), v=ring.zero(),
        name="commutative-plane",
    )


def _build_weyl(field, params):
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), field.one(), v=ring.one(), name="weyl"
    )


def _build_quantum_plane(field, params):
    _require_nonzero(params, ("q",), "quantum-plane")
    ring = BaseRing.split(field, 1)
    return AmbiskewPresentation(
        ring, BaseAutomorphism.identity(ring), params["q"].inv(), v=ring.zero(),
        name="quantum-plane",
    )


def _build_semiambi(field, params):
    ring = BaseRing.split(field, 3)
    sigma = BaseAutomorphism(ring, permutation=(1, 2, 0))
    zeta = field.zeta()
    u = ring.element({0: field.one(), 1: zeta, 2: zeta * zeta})
    return AmbiskewPresentation(ring, sigma, zeta, u=u, name="semiambi")


_SPLIT_CYCLE_M = 4


def _build_split_cycle(field, params):
    m = _SPLIT_CYCLE_M
    ring = BaseRing.split(field, m)
    sigma = BaseAutomorphism(ring, permutation=tuple((i + 1) % m for i in range(m)))
    zeta = field.zeta()
    v = ring.element({i: zeta**i for i in range(m)})
    return AmbiskewPresentation(ring, sigma, zeta, v=v, name="split-cycle")


# -- diagonal polynomial/Laurent entries -------------------------------------------


def _build_quantum_affine(n):
    def build(field, params):
        _require_nonzero(params, tuple(f"a{i + 1}" for i in range(n)) + ("rho",),
                         f"quantum-affine-{n}")
        ring = BaseRing.polynomial(field, n)
        sigma = BaseAutomorphism(
            ring, scales=tuple(params[f"a{i + 1}"] for i in range(n))
        )
        return AmbiskewPresentation(
            ring, sigma, params["rho"], u=ring.zero(), name=f"quantum-affine-{n}"
        )

    return build


def _build_laurent(n):
    def build(field, params):
        _require_nonzero(params, tuple(f"a{i + 1}" for i in range(n)) + ("rho",),
                         f"laurent-{n}")
        ring = BaseRing.laurent(field, n)
        sigma = BaseAutomorphism(
            ring, scales=tuple(params[f"a{i + 1}"] for i in range(n))
        )
        return AmbiskewPresentation(
            ring, sigma, params["rho"], u=ring.zero(), name=f"laurent-{n}"
        )

    return build


def _build_exot(field, params):
    _require_nonzero(params, ("q",), "exot")
    q = params["q"]
    ring = BaseRing.polynomial(field, ("t1", "t2"))
    sigma = BaseAutomorphism(ring, scales=(q, q * q))
    rho = (q**3).inv()
    return AmbiskewPresentation(ring, sigma, rho, u=ring.monomial((1, 1)), name="exot")


def _build_gwa_corollary(field, params):
    _require_nonzero(params, ("a1", "p"), "gwa-corollary")
    ring = BaseRing.polynomial(field, ("b1",))
    sigma = BaseAutomorphism(ring, scales=(params["a1"],))
    return AmbiskewPresentation(
        ring, sigma, params["p"], u=ring.zero(), name="gwa-corollary"
    )


def _build_qm2(field, params):
    _require_nonzero(params, ("q",), "qm2")
    q = params["q"]
    ring = BaseRing.polynomial(field, ("b1", "b2"))
    qm2inv = (q * q).inv()
    sigma = BaseAutomorphism(ring, scales=(qm2inv, qm2inv))
    v = ring.monomial((1, 1), qm2inv - q * q)
    return AmbiskewPresentation(ring, sigma, field.one(), v=v, name="qm2")


# -- down-up algebras ---------------------------------------------------------------


@dataclass(frozen=True)
class DownUpParams:
    """Defining scalars of a down-up algebra, with the eigenvalue pair.

    mu1 and mu2 are supplied (never computed): they must be the nonzero roots
    of beta*X^2 + alpha*X - 1.  When alpha and beta are omitted they are
    derived from the pair, which satisfies the equation automatically.
    """

    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    mu1: Scalar
    mu2: Scalar
    case: int

    @classmethod
    def from_mus(cls, mu1, mu2, gamma, case, alpha=None, beta=None):
        field = gamma.field
        one = field.one()
        if mu1.is_zero() or mu2.is_zero():
            raise PreconditionViolated("mu1 and mu2 must be nonzero")
        prod = mu1 * mu2
        derived_beta = -(prod.inv())
        derived_alpha = (mu1 + mu2) / prod
        beta = derived_beta if beta is None else beta
        alpha = derived_alpha if alpha is None else alpha
        if beta.is_zero():
            raise PreconditionViolated("beta must be nonzero")
        for mu in (mu1, mu2):
            if not (beta * mu * mu + alpha * mu - one).is_zero():
                raise PreconditionViolated(
                    "mu1, mu2 must solve beta*X^2 + alpha*X - 1 = 0"
                )
        params = cls(alpha, beta, gamma, mu1, mu2, case)
        params._validate_case()
        return params

    def _validate_case(self):
        one = self.gamma.field.one()
        mu1_is_1 = (self.mu1 - one).is_zero()
        mu2_is_1 = (self.mu2 - one).is_zero()
        distinct = not (self.mu1 - self.mu2).is_zero()
        if self.case == 1:
            if not distinct or mu1_is_1 or mu2_is_1:
                raise PreconditionViolated(
                    "case 1 needs mu1 != mu2 and both different from 1"
                )
        elif self.case == 2:
            if not mu1_is_1 or mu2_is_1:
                raise PreconditionViolated("case 2 needs mu1 = 1 != mu2")
        elif self.case == 3:
            if distinct or mu1_is_1:
                raise PreconditionViolated("case 3 needs mu1 = mu2 != 1")
        elif self.case == 4:
            if not (mu1_is_1 and mu2_is_1):
                raise PreconditionViolated("case 4 needs mu1 = mu2 = 1")
        else:
            raise PreconditionViolated("case must be 1..4")


def downup_build(params: DownUpParams, variant=None) -> AmbiskewPresentation:
    """The ambiskew presentation of a down-up algebra, per case."""
    field = params.gamma.field
    one = field.one()
    case = params.case
    if case == 1:
        ring = BaseRing.polynomial(field, ("t",))
        sigma = BaseAutomorphism(ring, scales=(params.mu2.inv(),))
        shift = params.mu1 * params.mu2 * params.gamma / (one - params.mu2)
        v = (ring.variable("t") + ring.from_scalar(shift)).scale(-(params.mu1.inv()))
        return AmbiskewPresentation(ring, sigma, params.mu1.inv(), v=v,
                                    name="downup-case1")
    if case == 2 and variant == "h":
        beta = params.beta
        ring = BaseRing.polynomial(field, ("h",))
        sigma = BaseAutomorphism(ring, scales=(one,), shifts=(beta.inv(),))
        v = ring.variable("h").scale(beta)
        return AmbiskewPresentation(ring, sigma, -beta, v=v, name="downup-case2-h")
    if case == 2:
        beta = params.beta
        if (beta + one).is_zero():
            raise PreconditionViolated("case 2 needs beta != -1")
        ring = BaseRing.polynomial(field, ("t",))
        sigma = BaseAutomorphism(ring, scales=(-beta,))
        v = -ring.variable("t") + ring.from_scalar(params.gamma / (beta + one))
        return AmbiskewPresentation(ring, sigma, one, v=v, name="downup-case2")
    if case == 3:
        mu = params.mu1
        ring = BaseRing.polynomial(field, ("t",))
        sigma = BaseAutomorphism(ring, scales=(mu.inv(),))
        shift = mu * mu * params.gamma / (one - mu)
        v = (ring.variable("t") + ring.from_scalar(shift)).scale(-(mu.inv()))
        return AmbiskewPresentation(ring, sigma, mu.inv(), v=v, name="downup-case3")
    if case == 4:
        ring = BaseRing.polynomial(field, ("t",))
        sigma = BaseAutomorphism(ring, scales=(one,), shifts=(-params.gamma,))
        return AmbiskewPresentation(ring, sigma, one, v=-ring.variable("t"),
                                    name="downup-case4")
    raise PreconditionViolated("case must be 1..4")


def _build_downup_case1(field, params):
    du = DownUpParams.from_mus(params["mu1"], params["mu2"], params["gamma"], case=1)
    return downup_build(du)


def _build_downup_case2(field, params):
    beta = params["beta"]
    if beta.is_zero() or (beta + field.one()).is_zero():
        raise PreconditionViolated("case 2 needs beta not in {0, -1}")
    du = DownUpParams.from_mus(field.one(), -(beta.inv()), params["gamma"], case=2)
    return downup_build(du)


def _build_downup_case2_h(field, params):
    beta = params["beta"]
    if beta.is_zero() or (beta + field.one()).is_zero():
        raise PreconditionViolated("case 2 needs beta not in {0, -1}")
    du = DownUpParams.from_mus(field.one(), -(beta.inv()), field.one(), case=2)
    return downup_build(du, variant="h")


def _build_downup_case3(field, params):
    mu = params["mu"]
    if mu.is_zero() or (mu - field.one()).is_zero():
        raise PreconditionViolated("case 3 needs mu not in {0, 1}")
    du = DownUpParams.from_mus(mu, mu, params["gamma"], case=3)
    return downup_build(du)


def _build_downup_case4(field, params):
    du = DownUpParams.from_mus(field.one(), field.one(), params["gamma"], case=4)
    return downup_build(du)


def _expected_downup_case4(params):
    failing = frozenset({"2"}) if params["gamma"].is_zero() else frozenset({"2", "3"})
    return ExpectedOutcome("inconclusive", "sisigma", failing, None)


def _expected_gwa(params):
    return ExpectedOutcome("smooth", "gwa", frozenset(), 3)


_ENTRIES = [
    CatalogEntry(
        "commutative-plane", "commutative polynomial algebra k[x, y]",
        1, (), _build_commutative_plane, _smooth("cor37", 2),
    ),
    CatalogEntry(
        "weyl", "first Weyl algebra: yx - xy = 1",
        1, (), _build_weyl, _smooth("cor37", 2),
    ),
    CatalogEntry(
        "quantum-plane", "quantum plane xy = q yx",
        1, ("q",), _build_quantum_plane, _smooth("cor37", 2),
    ),
    CatalogEntry(
        "semiambi", "split base k^3 with a cyclic twist and balanced u",
        3, (), _build_semiambi, _smooth("nosigma", 2),
    ),
    CatalogEntry(
        "split-cycle",
        f"split base k^{_SPLIT_CYCLE_M} with cyclic twist and invariant v",
        _SPLIT_CYCLE_M, (), _build_split_cycle, _smooth("cor37", 2),
    ),
    CatalogEntry(
        "quantum-affine-1", "multiparameter quantum affine 3-space",
        1, ("a1", "rho"), _build_quantum_affine(1), _smooth("sisigma", 3),
    ),
    CatalogEntry(
        "quantum-affine-2", "multiparameter quantum affine 4-space",
        1, ("a1", "a2", "rho"), _build_quantum_affine(2), _smooth("sisigma", 4),
    ),
    CatalogEntry(
        "quantum-affine-3", "multiparameter quantum affine 5-space",
        1, ("a1", "a2", "a3", "rho"), _build_quantum_affine(3), _smooth("sisigma", 5),
    ),
    CatalogEntry(
        "laurent-1", "Laurent base, one invertible variable",
        1, ("a1", "rho"), _build_laurent(1), _smooth("sisigma", 3),
    ),
    CatalogEntry(
        "laurent-2", "Laurent base, two invertible variables",
        1, ("a1", "a2", "rho"), _build_laurent(2), _smooth("sisigma", 4),
    ),
    CatalogEntry(
        "exot", "two diagonal variables with u = t1*t2 and rho = q^-3",
        1, ("q",), _build_exot, _smooth("sisigma", 4),
    ),
    CatalogEntry(
        "gwa-corollary", "generalized Weyl algebra built from diagonal data, c = 0",
        1, ("a1", "p"), _build_gwa_corollary, _expected_gwa, via_gwa=True,
    ),
    CatalogEntry(
        "qm2", "coordinate ring of quantum 2x2 matrices over k[b1, b2]",
        1, ("q",), _build_qm2, _inconclusive({"2"}),
    ),
    CatalogEntry(
        "downup-case1", "down-up algebra, distinct eigenvalues both != 1",
        1, ("mu1", "mu2", "gamma"), _build_downup_case1, _inconclusive({"2"}),
    ),
    CatalogEntry(
        "downup-case2", "down-up algebra, mu1 = 1 != mu2 (t-presentation)",
        1, ("beta", "gamma"), _build_downup_case2, _inconclusive({"2"}),
    ),
    CatalogEntry(
        "downup-case2-h", "down-up algebra, mu1 = 1 != mu2 (h-presentation, gamma = 1)",
        1, ("beta",), _build_downup_case2_h, _inconclusive({"2", "3"}),
    ),
    CatalogEntry(
        "downup-case3", "down-up algebra, repeated eigenvalue mu != 1",
        1, ("mu", "gamma"), _build_downup_case3, _inconclusive({"2"}),
    ),
    CatalogEntry(
        "downup-case4", "down-up algebra, repeated eigenvalue 1 (shift sigma)",
        1, ("gamma",), _build_downup_case4, _expected_downup_case4,
    ),
]

_BY_NAME = {e.name: e for e in _ENTRIES}


def list_entries():
    return list(_ENTRIES)


def get_entry(name) -> CatalogEntry:
    entry = _BY_NAME.get(name)
    if entry is None:
        raise UnknownEntry(f"unknown catalog entry {name!r}")
    return entry


def catalog_get(name, bindings=None) -> AmbiskewPresentation:
    return get_entry(name).build(bindings)


def catalog_expected(name, bindings=None) -> ExpectedOutcome:
    return get_entry(name).expected(bindings)


def catalog_certify(name, bindings=None, options=DEFAULT_OPTIONS) -> Certificate:
    return get_entry(name).certify(bindings, options)
