"""The twisted differential calculus on an ambiskew presentation.

Generators z_1..z_n are the base variables (absent for a split base), then
z_{n+1} = x and z_{n+2} = y.  One-forms are a free right module on dz_1..dz_N;
left multiplication passes through each differential via the scaling family
nu: a * dz_i = dz_i * nu_i(a).  Wedge reordering constants are forced by the
first-order structure: for r < s, dz_s ^ dz_r = -c(r,s) dz_r ^ dz_s where
nu_{z_r}(z_s) = c(r,s) * z_s.  The dual-basis family built from these
constants satisfies both reconstruction identities exactly, which is what
``integrability_check`` verifies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
import random

from .baserings import BaseElement, BaseKind
from .errors import DegreeMismatch, KindMismatch, NonDiagonalSigma
from .ore import AlgebraElement, AmbiskewPresentation, GeneratorMap, twist_build
from .scalars import guard_leading_minus


class Calculus:
    """The (n+2)-dimensional calculus (2-dimensional over a split base)."""

    def __init__(self, pres: AmbiskewPresentation):
        self.pres = pres
        ring = pres.ring
        if ring.kind is BaseKind.SPLIT:
            self.gen_names = ("x", "y")
            self.base_count = 0
        else:
            if not pres.sigma.verify().diagonal:
                raise NonDiagonalSigma("the calculus requires a diagonal sigma")
            self.gen_names = tuple(ring.var_names) + ("x", "y")
            self.base_count = ring.nvars
        self.dimension = len(self.gen_names)
        twists = twist_build(pres)
        self.twists = tuple(twists[name] for name in self.gen_names)
        self._const = {}
        field_ = pres.field
        one = field_.one()
        n = self.base_count
        for r in range(1, self.dimension + 1):
            for s in range(r + 1, self.dimension + 1):
                if s <= n:
                    c = one
                elif r <= n and s == n + 1:
                    c = pres.sigma.scales[r - 1]
                elif r <= n and s == n + 2:
                    c = pres.sigma.scales[r - 1].inv()
                else:
                    c = pres.rho
                self._const[(r, s)] = c
        self._nu_omega = self._build_nu_omega(inverse=False)
        self._nu_omega_inv = self._build_nu_omega(inverse=True)

    def _build_nu_omega(self, inverse):
        """nu_omega = nu_{z_1} o ... o nu_{z_N} written out on the generators."""
        pres = self.pres
        ring = pres.ring
        rho = pres.rho.inv() if inverse else pres.rho
        if ring.kind is BaseKind.SPLIT:
            idems = [pres.from_base(e) for e in pres.base_generators()]
            return GeneratorMap(
                pres, idems, pres.x().scale(rho.inv()), pres.y().scale(rho),
                name="nu_omega_inv" if inverse else "nu_omega",
            )
        scales = pres.sigma.scales
        prod = pres.field.one()
        for a in scales:
            prod = prod * a
        if inverse:
            prod = prod.inv()
        base_vars = [pres.from_base(g) for g in pres.base_generators()]
        return GeneratorMap(
            pres,
            base_vars,
            pres.x().scale(rho.inv() * prod),
            pres.y().scale(rho * prod.inv()),
            name="nu_omega_inv" if inverse else "nu_omega",
        )

    # -- forms -----------------------------------------------------------------

    def zero_form(self, degree=0):
        return DifferentialForm(self, degree, {})

    def from_element(self, elem: AlgebraElement):
        if elem.is_zero():
            return self.zero_form(0)
        return DifferentialForm(self, 0, {(): elem})

    def basis_form(self, indices, coeff=None):
        indices = tuple(indices)
        if any(not 1 <= i <= self.dimension for i in indices):
            raise ValueError("generator index out of range")
        if len(set(indices)) != len(indices) or tuple(sorted(indices)) != indices:
            raise ValueError("basis indices must be strictly increasing")
        coeff = self.pres.one() if coeff is None else coeff
        if coeff.is_zero():
            return self.zero_form(len(indices))
        return DifferentialForm(self, len(indices), {indices: coeff})

    def volume_form(self):
        return self.basis_form(tuple(range(1, self.dimension + 1)))

    def constant(self, r, s):
        return self._const[(r, s)]

    def _sort_indices(self, seq):
        """Sort a wedge index sequence; returns (tuple, scalar) or None."""
        idx = list(seq)
        sign = self.pres.field.one()
        for i in range(1, len(idx)):
            j = i
            while j > 0 and idx[j - 1] > idx[j]:
                if idx[j - 1] == idx[j]:
                    return None
                sign = -(sign * self._const[(idx[j], idx[j - 1])])
                idx[j - 1], idx[j] = idx[j], idx[j - 1]
                j -= 1
        for i in range(1, len(idx)):
            if idx[i - 1] == idx[i]:
                return None
        return tuple(idx), sign

    # -- partial derivatives and d ------------------------------------------------

    def partials(self, elem: AlgebraElement):
        """Right-coefficient partials, keyed by generator name."""
        pres = self.pres
        field_ = pres.field
        out = {name: pres.zero() for name in self.gen_names}
        n = self.base_count
        for (key, l1, l2), c in elem.terms.items():
            if n:
                for i in range(n):
                    t_i = key[i]
                    if t_i:
                        new_key = tuple(
                            e - 1 if j == i else e for j, e in enumerate(key)
                        )
                        term = AlgebraElement(
                            pres, {(new_key, l1, l2): c * field_.from_int(t_i)}
                        )
                        out[self.gen_names[i]] = out[self.gen_names[i]] + term
            if l1:
                moved = pres.sigma_monomial(key, -1)
                factor = c * field_.from_int(l1)
                acc = pres.zero()
                for km, cm in moved.coeffs.items():
                    acc = acc + AlgebraElement(pres, {(km, l1 - 1, l2): factor * cm})
                out["x"] = out["x"] + acc
            if l2:
                moved = pres.sigma_monomial(key, 1)
                factor = c * field_.from_int(l2) * pres._rho_pow(-l1)
                acc = pres.zero()
                for km, cm in moved.coeffs.items():
                    acc = acc + AlgebraElement(pres, {(km, l1, l2 - 1): factor * cm})
                out["y"] = out["y"] + acc
        return out

    def d(self, form):
        """Exterior derivative; accepts elements or forms of any degree."""
        if isinstance(form, AlgebraElement):
            form = self.from_element(form)
        if form.calculus is not self:
            raise KindMismatch("form from a different calculus")
        out = {}
        deg = form.degree
        sign_flip = deg % 2 == 1
        for S, alpha in form.coeffs.items():
            parts = self.partials(alpha)
            for pos, name in enumerate(self.gen_names, start=1):
                da = parts[name]
                if da.is_zero() or pos in S:
                    continue
                sorted_ = self._sort_indices(S + (pos,))
                if sorted_ is None:
                    continue
                idx, sign = sorted_
                if sign_flip:
                    sign = -sign
                _form_acc(out, idx, da.scale(sign))
        return DifferentialForm(self, min(deg + 1, self.dimension + 1), out)

    # -- module structure -----------------------------------------------------------

    def left_mult(self, a: AlgebraElement, form: "DifferentialForm"):
        """a * form, pushing a through each basis differential via nu."""
        out = {}
        for S, coeff in form.coeffs.items():
            moved = a
            for pos in S:
                moved = self.twists[pos - 1].apply(moved)
            _form_acc(out, S, moved * coeff)
        return DifferentialForm(self, form.degree, out)

    def wedge(self, f: "DifferentialForm", g: "DifferentialForm"):
        if isinstance(f, AlgebraElement):
            f = self.from_element(f)
        if isinstance(g, AlgebraElement):
            g = self.from_element(g)
        deg = f.degree + g.degree
        out = {}
        if deg <= self.dimension:
            for S, alpha in f.coeffs.items():
                for T, beta in g.coeffs.items():
                    if set(S) & set(T):
                        continue
                    sorted_ = self._sort_indices(S + T)
                    if sorted_ is None:
                        continue
                    idx, sign = sorted_
                    moved = alpha
                    for pos in T:
                        moved = self.twists[pos - 1].apply(moved)
                    _form_acc(out, idx, (moved * beta).scale(sign))
        return DifferentialForm(self, min(deg, self.dimension), out)

    def pi_omega(self, top: "DifferentialForm") -> AlgebraElement:
        """The unique a with top = omega * a."""
        if top.degree != self.dimension and top.coeffs:
            raise DegreeMismatch(
                f"pi_omega needs a top form of degree {self.dimension}"
            )
        full = tuple(range(1, self.dimension + 1))
        return top.coeffs.get(full, self.pres.zero())

    def nu_omega(self, a: AlgebraElement) -> AlgebraElement:
        return self._nu_omega.apply(a)

    def nu_omega_inv(self, a: AlgebraElement) -> AlgebraElement:
        return self._nu_omega_inv.apply(a)

    @property
    def nu_omega_map(self) -> GeneratorMap:
        return self._nu_omega

    # -- dual bases and integrability --------------------------------------------------

    def dual_basis(self, j):
        """All dual pairs (omega_i^j, omega_bar_i^{N-j}) at degree j."""
        if not 0 <= j <= self.dimension:
            raise DegreeMismatch("degree out of range")
        n_all = self.dimension
        field_ = self.pres.field
        pairs = []
        for subset in combinations(range(1, n_all + 1), j):
            complement = tuple(i for i in range(1, n_all + 1) if i not in subset)
            inversions = sum(1 for u in complement for v in subset if u > v)
            const = field_.one()
            for v in subset:
                for u in complement:
                    if v < u:
                        const = const * self._const[(v, u)].inv()
            if inversions % 2:
                const = -const
            omega = self.basis_form(subset)
            omega_bar = self.basis_form(complement, self.pres.from_scalar(const))
            pairs.append(DualPair(subset, omega, omega_bar))
        return pairs

    def random_element(self, rng, max_degree=2, terms=2):
        """A seeded random element with coefficients from a small scalar pool."""
        pres = self.pres
        ring = pres.ring
        field_ = pres.field
        pool = [field_.one(), -field_.one(), field_.from_int(2)]
        if field_.ext_degree > 1:
            pool.append(field_.zeta())
        for p in field_.parameters:
            pool.append(field_.parameter(p))
        acc = pres.zero()
        for _ in range(terms):
            if ring.kind is BaseKind.SPLIT:
                key = rng.randrange(ring.size)
            elif ring.kind is BaseKind.LAURENT:
                key = tuple(
                    rng.randint(-max_degree, max_degree) for _ in range(ring.nvars)
                )
            else:
                key = tuple(rng.randint(0, max_degree) for _ in range(ring.nvars))
            xdeg = rng.randint(0, max_degree)
            ydeg = rng.randint(0, max_degree)
            coeff = pool[rng.randrange(len(pool))]
            acc = acc + AlgebraElement(pres, {(key, xdeg, ydeg): coeff})
        return acc

    def integrability_check(self, max_coeff_degree=2, trials=3, seed=0):
        """Verify both dual-basis reconstruction identities at every degree."""
        rng = random.Random(seed)
        entries = []
        n_all = self.dimension
        for degree in range(n_all + 1):
            pairs = self.dual_basis(degree)
            pairs_comp = self.dual_basis(n_all - degree)
            checks = 0
            failure = None
            for _ in range(trials):
                for subset in combinations(range(1, n_all + 1), degree):
                    coeff = self.random_element(rng, max_coeff_degree)
                    if coeff.is_zero():
                        coeff = self.pres.one()
                    omega_prime = self.basis_form(subset, coeff)
                    checks += 1
                    lhs = self.zero_form(degree)
                    for pair in pairs:
                        piece = self.pi_omega(self.wedge(pair.omega_bar, omega_prime))
                        lhs = lhs + pair.omega.right_mult(piece)
                    if lhs != omega_prime:
                        failure = (
                            f"degree {degree}, basis {subset}: "
                            f"right reconstruction differs"
                        )
                        break
                    rhs = self.zero_form(degree)
                    for pair in pairs_comp:
                        piece = self.nu_omega_inv(
                            self.pi_omega(self.wedge(omega_prime, pair.omega))
                        )
                        rhs = rhs + self.left_mult(piece, pair.omega_bar)
                    if rhs != omega_prime:
                        failure = (
                            f"degree {degree}, basis {subset}: "
                            f"left reconstruction differs"
                        )
                        break
                if failure:
                    break
            entries.append(DegreeReport(degree, checks, failure is None, failure))
        return IntegrabilityReport(tuple(entries))


def _form_acc(out, idx, elem):
    if elem.is_zero():
        return
    cur = out.get(idx)
    cur = elem if cur is None else cur + elem
    if cur.is_zero():
        out.pop(idx, None)
    else:
        out[idx] = cur


class DifferentialForm:
    """A degree-k form: increasing index subsets with right coefficients."""

    __slots__ = ("calculus", "degree", "coeffs")

    def __init__(self, calculus, degree, coeffs):
        self.calculus = calculus
        self.degree = degree
        self.coeffs = coeffs

    def __add__(self, other):
        if self.calculus is not other.calculus:
            raise KindMismatch("forms from different calculi")
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise DegreeMismatch("cannot add forms of different degrees")
        out = dict(self.coeffs)
        for k, e in other.coeffs.items():
            _form_acc(out, k, e)
        return DifferentialForm(
            self.calculus, self.degree if self.coeffs else other.degree, out
        )

    def __neg__(self):
        return DifferentialForm(
            self.calculus, self.degree, {k: -e for k, e in self.coeffs.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def right_mult(self, a: AlgebraElement):
        out = {}
        for k, e in self.coeffs.items():
            _form_acc(out, k, e * a)
        return DifferentialForm(self.calculus, self.degree, out)

    def scale(self, s):
        out = {}
        for k, e in self.coeffs.items():
            _form_acc(out, k, e.scale(s))
        return DifferentialForm(self.calculus, self.degree, out)

    def wedge(self, other):
        return self.calculus.wedge(self, other)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if self.calculus is not other.calculus:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    __hash__ = None

    def render(self):
        if not self.coeffs:
            return "0"
        names = self.calculus.gen_names
        if self.degree == 0:
            return self.coeffs[()].render()
        terms = []
        for idx in sorted(self.coeffs):
            wedge_s = "^^".join(f"d{names[i - 1]}" for i in idx)
            cs = self.coeffs[idx].render()
            if cs == "1":
                terms.append(wedge_s)
            elif cs == "-1":
                terms.append(f"-{wedge_s}")
            else:
                if ("+" in cs) or (" - " in cs) or ("/" in cs) or ("*" in cs) or cs.startswith("-"):
                    cs = f"({cs})"
                terms.append(f"{wedge_s} * {cs}")
        text = guard_leading_minus(terms[0])
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"DifferentialForm(deg={self.degree}, {self.render()})"


@dataclass(frozen=True)
class DualPair:
    """A basis form and its signed, scaled complement."""

    indices: tuple
    omega: DifferentialForm
    omega_bar: DifferentialForm


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    checks: int
    ok: bool
    failure: str | None = None


@dataclass(frozen=True)
class IntegrabilityReport:
    entries: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def first_failure(self):
        for e in self.entries:
            if not e.ok:
                return e.failure
        return None
