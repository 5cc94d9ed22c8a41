"""Smoothness certificates: balance residue, checker routes, GWA bridge.

The three routes check sufficient conditions only, so the verdict is either
``smooth`` or ``inconclusive`` -- never "not smooth".  A smooth verdict also
requires the constructive verification to succeed: the scaling maps must pass
the relation checks and commute pairwise, and both dual-basis reconstruction
identities must hold at every degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .baserings import BaseElement, BaseKind
from .calculus import Calculus
from .errors import KindMismatch, NonDiagonalSigma, USourceUnsolvable
from .ore import AmbiskewPresentation, endo_check_relations, endo_pair_commute
from .scalars import Scalar

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
INAPPLICABLE = "inapplicable"

SMOOTH = "smooth"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class VerifyOptions:
    """Budget knobs for the constructive part of a certificate."""

    max_degree: int = 4
    trials: int = 50
    seed: int = 0
    spot_checks: int = 8


DEFAULT_OPTIONS = VerifyOptions()


@dataclass
class Condition:
    id: str
    status: str
    witness: str | None = None
    note: str | None = None

    def to_dict(self):
        return {"id": self.id, "status": self.status, "witness": self.witness}


@dataclass
class Certificate:
    name: str
    route: str
    base_kind: str
    base_n: int
    conditions: list
    verdict: str
    dimension: int | None
    calculus_verified: bool
    detail: str | None = None

    def failing_ids(self):
        return sorted(c.id for c in self.conditions if c.status == FAIL)

    def passed_count(self):
        return sum(1 for c in self.conditions if c.status in (PASS, VACUOUS))

    def to_dict(self):
        return {
            "name": self.name,
            "route": self.route,
            "base": {"kind": self.base_kind, "n": self.base_n},
            "conditions": [c.to_dict() for c in self.conditions],
            "verdict": self.verdict,
            "dimension": self.dimension,
            "calculus_verified": self.calculus_verified,
        }

    def summary_lines(self):
        lines = [f"{self.name or 'presentation'}: route {self.route}"]
        for c in self.conditions:
            line = f"  condition {c.id}: {c.status}"
            if c.note:
                line += f" ({c.note})"
            if c.witness and c.status == FAIL:
                line += f" [witness: {c.witness}]"
            lines.append(line)
        tail = f"verdict: {self.verdict}"
        if self.dimension is not None:
            tail += f", calculus dimension {self.dimension}"
        lines.append(tail)
        return lines


def _base_info(pres):
    ring = pres.ring
    if ring.kind is BaseKind.SPLIT:
        return ring.kind.value, ring.size
    return ring.kind.value, ring.nvars


def balance_residue(pres: AmbiskewPresentation) -> BaseElement:
    """rho^2 sigma^2(u) - 2 rho sigma(u) + u, exactly.

    When the presentation is given by v, a solution u of u - rho*sigma(u) = v
    must exist (USourceUnsolvable otherwise); for any such u the residue
    equals v - rho*sigma(v), which is what is returned.
    """
    rho, sigma = pres.rho, pres.sigma
    if pres.source == "u":
        u = pres.u
        return (
            sigma.apply(u, 2).scale(rho * rho)
            - sigma.apply(u, 1).scale(rho + rho)
            + u
        )
    pres.solve_u()  # raises USourceUnsolvable when no u exists
    v = pres.v
    return v - sigma.apply(v).scale(rho)


def verify_calculus(pres, options=DEFAULT_OPTIONS):
    """Constructive verification: twists, spot identities, reconstruction.

    Returns (ok, detail) where detail names the first failure, if any.
    """
    try:
        calc = Calculus(pres)
    except NonDiagonalSigma as exc:
        return False, f"calculus construction failed: {exc}"
    for name, tw in zip(calc.gen_names, calc.twists):
        res = endo_check_relations(pres, tw)
        if not res.ok:
            return False, f"nu_{name} violates {res.violated}"
    for i in range(len(calc.twists)):
        for j in range(i + 1, len(calc.twists)):
            if not endo_pair_commute(pres, calc.twists[i], calc.twists[j]):
                return False, (
                    f"nu_{calc.gen_names[i]} and nu_{calc.gen_names[j]} "
                    "do not commute"
                )
    rng = random.Random(options.seed)
    bound = min(options.max_degree, 3)
    for _ in range(options.spot_checks):
        a = calc.random_element(rng, bound)
        b = calc.random_element(rng, bound)
        if not calc.d(calc.d(a)).is_zero():
            return False, "d(d(a)) != 0 on a random element"
        if calc.d(a * b) != calc.d(a).right_mult(b) + calc.left_mult(a, calc.d(b)):
            return False, "Leibniz rule fails on a random pair"
    report = calc.integrability_check(
        max_coeff_degree=min(options.max_degree, 3),
        trials=max(1, options.trials),
        seed=options.seed,
    )
    if not report.ok:
        return False, f"reconstruction identity failed: {report.first_failure()}"
    return True, None


def _finish(pres, route, conditions, dimension, options):
    kind, n = _base_info(pres)
    hypotheses_ok = all(c.status in (PASS, VACUOUS) for c in conditions)
    if not hypotheses_ok:
        return Certificate(
            pres.name, route, kind, n, conditions, INCONCLUSIVE, None, False
        )
    ok, detail = verify_calculus(pres, options)
    if not ok:
        return Certificate(
            pres.name, route, kind, n, conditions, INCONCLUSIVE, None, False, detail
        )
    return Certificate(pres.name, route, kind, n, conditions, SMOOTH, dimension, True)


def check_nosigma(pres, options=DEFAULT_OPTIONS) -> Certificate:
    """Split base + balanced u implies smooth, with a 2-dimensional calculus."""
    conditions = []
    is_split = pres.ring.kind is BaseKind.SPLIT
    conditions.append(
        Condition(
            "kdim0",
            PASS if is_split else FAIL,
            witness=None if is_split else f"base kind is {pres.ring.kind.value}",
            note="structural: split base has Krull dimension 0 and is reduced",
        )
    )
    try:
        residue = balance_residue(pres)
        if residue.is_zero():
            conditions.append(Condition("balance", PASS))
        else:
            conditions.append(Condition("balance", FAIL, witness=residue.render()))
    except USourceUnsolvable as exc:
        conditions.append(Condition("balance", INAPPLICABLE, note=str(exc)))
    return _finish(pres, "nosigma", conditions, 2, options)


def check_cor37(pres, options=DEFAULT_OPTIONS) -> Certificate:
    """Split base + v = rho*sigma(v) implies smooth (direct-v route)."""
    conditions = []
    is_split = pres.ring.kind is BaseKind.SPLIT
    conditions.append(
        Condition(
            "kdim0",
            PASS if is_split else FAIL,
            witness=None if is_split else f"base kind is {pres.ring.kind.value}",
            note="structural: split base has GK dimension 0",
        )
    )
    residue = pres.v - pres.sigma.apply(pres.v).scale(pres.rho)
    if residue.is_zero():
        conditions.append(Condition("v-invariant", PASS))
    else:
        conditions.append(Condition("v-invariant", FAIL, witness=residue.render()))
    return _finish(pres, "cor37", conditions, 2, options)


def check_sisigma(pres, options=DEFAULT_OPTIONS) -> Certificate:
    """The five-condition diagonal route with an (n+2)-dimensional calculus.

    Conditions (1) and (4) are statements about the Jordan-form element u.
    For a presentation given by v they are evaluated only when condition (2)
    holds and u can be solved for; otherwise they are reported inapplicable,
    mirroring the diagnosis order used for the catalog entries.
    """
    ring = pres.ring
    conditions = {}
    ok_kind = ring.kind in (BaseKind.POLYNOMIAL, BaseKind.LAURENT)
    conditions["5"] = Condition(
        "5",
        PASS if ok_kind else FAIL,
        witness=None if ok_kind else f"base kind is {ring.kind.value}",
        note=f"structural: GKdim = {ring.structural_dimension}" if ok_kind else None,
    )
    report = pres.sigma.verify() if ok_kind else None
    if ok_kind:
        if report.diagonal:
            conditions["3"] = Condition("3", PASS)
        else:
            shifts = ", ".join(
                f"sigma({n}) = {(ring.variable(i) * pres.sigma.scales[i] + ring.from_scalar(pres.sigma.shifts[i])).render()}"
                for i, n in enumerate(ring.var_names)
                if not pres.sigma.shifts[i].is_zero()
            )
            conditions["3"] = Condition("3", FAIL, witness=shifts or "not diagonal")
    else:
        conditions["3"] = Condition("3", INAPPLICABLE, note="no diagonal form on this base")
    if pres.v.is_scalar():
        conditions["2"] = Condition("2", PASS)
    else:
        conditions["2"] = Condition("2", FAIL, witness=pres.v.render())
    u = None
    u_note = None
    if pres.source == "u":
        u = pres.u
    elif conditions["2"].status == PASS:
        try:
            u = pres.solve_u()
        except USourceUnsolvable as exc:
            u_note = str(exc)
    else:
        u_note = "requires the Jordan form u; blocked by condition 2"
    if u is None:
        conditions["1"] = Condition("1", INAPPLICABLE, note=u_note)
        conditions["4"] = Condition("4", INAPPLICABLE, note=u_note)
    else:
        try:
            residue = balance_residue(pres) if pres.source == "v" else (
                pres.sigma.apply(u, 2).scale(pres.rho * pres.rho)
                - pres.sigma.apply(u).scale(pres.rho + pres.rho)
                + u
            )
            if residue.is_zero():
                conditions["1"] = Condition("1", PASS)
            else:
                conditions["1"] = Condition("1", FAIL, witness=residue.render())
        except USourceUnsolvable as exc:
            conditions["1"] = Condition("1", INAPPLICABLE, note=str(exc))
        if u.is_zero():
            conditions["4"] = Condition("4", VACUOUS, note="u = 0")
        elif not ok_kind or not report.diagonal:
            conditions["4"] = Condition("4", INAPPLICABLE, note="needs a diagonal sigma")
        else:
            bad = []
            one = pres.field.one()
            for key in sorted(u.coeffs):
                weight = pres.rho * pres.sigma.eigenvalue(key)
                if weight != one:
                    bad.append(
                        f"monomial {ring.monomial(key).render()}: "
                        f"rho * weight = {weight.render()}"
                    )
            if bad:
                conditions["4"] = Condition("4", FAIL, witness="; ".join(bad))
            else:
                conditions["4"] = Condition("4", PASS)
    ordered = [conditions[k] for k in ("1", "2", "3", "4", "5")]
    dim = ring.structural_dimension + 2
    return _finish(pres, "sisigma", ordered, dim, options)


def check_auto(pres, options=DEFAULT_OPTIONS) -> Certificate:
    """Dispatch to the applicable routes; first smooth certificate wins."""
    routes = []
    if pres.ring.kind is BaseKind.SPLIT:
        if pres.source == "v":
            routes.append(check_cor37)
        routes.append(check_nosigma)
    else:
        routes.append(check_sisigma)
    results = []
    for route in routes:
        cert = route(pres, options)
        if cert.verdict == SMOOTH:
            return cert
        results.append(cert)
    return max(results, key=lambda c: c.passed_count())


# -- generalized Weyl algebra bridge ---------------------------------------------


@dataclass
class GwaPresentation:
    """The data B[w](sigma, w) attached to an ambiskew presentation.

    sigma is extended to the adjoined variable by sigma(w) = p*w + sigma(c).
    In the conformal case (c = sigma(a) - p*a solvable for a in B) the Casimir
    normalization sigma(z) = p*z also applies.
    """

    ring: object
    sigma: object
    p: Scalar
    c: BaseElement
    omega_var: str
    conformal: bool
    conformal_a: BaseElement | None = None
    casimir_scale: Scalar | None = None
    conformal_note: str | None = None
    name: str = ""

    def sigma_omega_render(self):
        sc = self.sigma.apply(self.c)
        text = f"{self.p.render()}*{self.omega_var}"
        if not sc.is_zero():
            text += f" + {sc.render()}"
        return f"sigma({self.omega_var}) = {text}"


def _solve_conformal(ring, sigma, p, c):
    """Find a with sigma(a) - p*a = c, or None.

    Diagonal sigma: monomial-wise.  Univariate affine sigma: a bounded-degree
    linear solve.  Returns (a, note); a is None when no solution was found.
    """
    field_ = ring.field
    report = sigma.verify()
    if report.diagonal:
        coeffs = {}
        for key, v in c.coeffs.items():
            denom = sigma.eigenvalue(key) - p
            if denom.is_zero():
                return None, (
                    f"monomial {ring.monomial(key).render()} has "
                    "sigma-eigenvalue p with nonzero coefficient"
                )
            coeffs[key] = v / denom
        return BaseElement(ring, coeffs), None
    if ring.nvars != 1:
        return None, "undetermined: non-diagonal sigma on several variables"
    # univariate affine sigma(t) = a*t + b: dense linear solve up to deg(c)+1
    deg_c = max((k[0] for k in c.coeffs), default=0)
    size = deg_c + 2
    columns = []
    for dpow in range(size):
        img = sigma.apply(ring.monomial((dpow,))) - ring.monomial((dpow,)).scale(p)
        col = [field_.zero()] * size
        for key, val in img.coeffs.items():
            if key[0] < size:
                col[key[0]] = val
        columns.append(col)
    rhs = [c.coeffs.get((e,), field_.zero()) for e in range(size)]
    solution = _linear_solve(field_, columns, rhs)
    if solution is None:
        return None, "the linear system sigma(a) - p*a = c has no solution"
    coeffs = {(e,): s for e, s in enumerate(solution) if not s.is_zero()}
    return BaseElement(ring, coeffs), None


def _linear_solve(field_, columns, rhs):
    """Solve sum_j columns[j]*x_j = rhs over the scalar field, or None."""
    n_eq = len(rhs)
    n_var = len(columns)
    rows = [[columns[j][i] for j in range(n_var)] + [rhs[i]] for i in range(n_eq)]
    pivots = []
    r = 0
    for col in range(n_var):
        pivot = None
        for i in range(r, n_eq):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inv()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n_eq):
            if i != r and not rows[i][col].is_zero():
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n_eq):
        if not rows[i][-1].is_zero():
            return None
    solution = [field_.zero()] * n_var
    for i, col in enumerate(pivots):
        solution[col] = rows[i][-1]
    return solution


def gwa_from_ambiskew(pres: AmbiskewPresentation, omega_var="w") -> GwaPresentation:
    """Express the presentation as a generalized Weyl algebra B[w](sigma, w)."""
    if pres.ring.kind is BaseKind.SPLIT:
        raise KindMismatch("the GWA bridge needs a polynomial or Laurent base")
    while omega_var in pres.ring.var_names:
        omega_var += "_"
    c = pres.v
    p = pres.rho
    a, note = _solve_conformal(pres.ring, pres.sigma, p, c)
    return GwaPresentation(
        ring=pres.ring,
        sigma=pres.sigma,
        p=p,
        c=c,
        omega_var=omega_var,
        conformal=a is not None,
        conformal_a=a,
        casimir_scale=p if a is not None else None,
        conformal_note=note,
        name=pres.name,
    )


def check_gwa(gwa: GwaPresentation, u: BaseElement | None = None,
              options=DEFAULT_OPTIONS) -> Certificate:
    """Reduce the GWA to its ambiskew presentation and run the diagonal route."""
    if not gwa.sigma.verify().diagonal:
        raise NonDiagonalSigma("the GWA route needs a diagonal sigma on the base")
    extra = None
    if u is not None:
        derived = u - gwa.sigma.apply(u).scale(gwa.p)
        if derived == gwa.c:
            extra = Condition("c-match", PASS, note="c = u - p*sigma(u)")
        else:
            extra = Condition("c-match", FAIL, witness=derived.render())
        pres = AmbiskewPresentation(gwa.ring, gwa.sigma, gwa.p, u=u, name=gwa.name)
    else:
        pres = AmbiskewPresentation(gwa.ring, gwa.sigma, gwa.p, v=gwa.c, name=gwa.name)
    cert = check_sisigma(pres, options)
    conditions = ([extra] if extra else []) + cert.conditions
    verdict = cert.verdict
    dimension = cert.dimension
    calculus_verified = cert.calculus_verified
    if extra is not None and extra.status == FAIL:
        verdict = INCONCLUSIVE
        dimension = None
    return Certificate(
        gwa.name,
        "gwa",
        cert.base_kind,
        cert.base_n,
        conditions,
        verdict,
        dimension,
        calculus_verified and verdict == SMOOTH,
        cert.detail,
    )
