"""PBW normal-form arithmetic in K[x;sigma][y;sigma^-1,delta].

The algebra is generated over the base ring K by x and y with relations

    x*k = sigma(k)*x,   y*k = sigma^-1(k)*y,   y*x = rho*x*y + v,

where v is central in K.  Elements are kept in the PBW basis {k * x^a * y^b}
with the base part on the left.  Multiplication rewrites y-past-x moves with
the closed recursion  y*x^a = rho^a x^a y + w_a x^(a-1),
w_a = sum_i rho^i sigma^i(v), memoized per presentation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .baserings import BaseAutomorphism, BaseElement, BaseKind, BaseRing
from .errors import (
    KindMismatch,
    NegativePowerNotInvertible,
    NonDiagonalSigma,
    USourceUnsolvable,
    UnknownSymbol,
)
from .scalars import Scalar, guard_leading_minus


class AmbiskewPresentation:
    """The data (K, sigma, rho, u or v) defining one algebra.

    Exactly one of ``u`` (Jordan form: v is derived as u - rho*sigma(u)) or
    ``v`` (direct ambiskew form) must be given.
    """

    def __init__(self, ring: BaseRing, sigma: BaseAutomorphism, rho: Scalar,
                 u: BaseElement | None = None, v: BaseElement | None = None,
                 name: str = ""):
        if (u is None) == (v is None):
            raise ValueError("exactly one of u and v must be given")
        if sigma.ring != ring:
            raise KindMismatch("sigma acts on a different ring")
        if rho.field != ring.field:
            raise ValueError("rho must live in the base ring's field")
        if rho.is_zero():
            raise ValueError("rho must be nonzero")
        report = sigma.verify()
        if not report.valid:
            raise ValueError(f"sigma is not invertible: {report.reason}")
        self.ring = ring
        self.sigma = sigma
        self.rho = rho
        self.name = name
        if u is not None:
            if u.ring != ring:
                raise KindMismatch("u lives in a different ring")
            self.source = "u"
            self.u = u
            self.v = u - sigma.apply(u).scale(rho)
        else:
            if v.ring != ring:
                raise KindMismatch("v lives in a different ring")
            self.source = "v"
            self.u = None
            self.v = v
        self._sigma_mono_cache = {}
        self._ybx_cache = {}
        self._w_cache = {}
        self._solved_u = None
        self._rho_pows = {0: ring.field.one(), 1: rho}

    @property
    def field(self):
        return self.ring.field

    def __eq__(self, other):
        return (
            isinstance(other, AmbiskewPresentation)
            and self.ring == other.ring
            and self.sigma == other.sigma
            and self.rho == other.rho
            and self.source == other.source
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.ring, self.sigma, self.rho, self.source))

    def __repr__(self):
        label = self.name or "ambiskew"
        return f"<AmbiskewPresentation {label}: {self.ring!r}, rho={self.rho}>"

    # -- generator bookkeeping -------------------------------------------------

    @property
    def base_generator_names(self):
        return self.ring.var_names

    def generator_names(self):
        return tuple(self.ring.var_names) + ("x", "y")

    def base_generators(self):
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            return [ring.idempotent(i) for i in range(ring.size)]
        return [ring.variable(i) for i in range(ring.nvars)]

    # -- element constructors ---------------------------------------------------

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return self.from_base(self.ring.one())

    def from_base(self, belem: BaseElement):
        if belem.ring != self.ring:
            raise KindMismatch("base element from another ring")
        return AlgebraElement(self, {(k, 0, 0): c for k, c in belem.coeffs.items()})

    def from_scalar(self, s: Scalar):
        return self.from_base(self.ring.from_scalar(s))

    def x(self, power=1):
        return self.pbw(self.ring.one(), power, 0)

    def y(self, power=1):
        return self.pbw(self.ring.one(), 0, power)

    def pbw(self, belem: BaseElement, xdeg: int, ydeg: int):
        """belem * x^xdeg * y^ydeg as an algebra element."""
        if xdeg < 0 or ydeg < 0:
            raise NegativePowerNotInvertible("x and y admit no negative powers")
        return AlgebraElement(
            self, {(k, xdeg, ydeg): c for k, c in belem.coeffs.items()}
        )

    def generator(self, name):
        if name == "x":
            return self.x()
        if name == "y":
            return self.y()
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            if name.startswith("e"):
                try:
                    i = int(name[1:])
                except ValueError:
                    raise UnknownSymbol(f"unknown generator {name!r}")
                if 0 <= i < ring.size:
                    return self.from_base(ring.idempotent(i))
            raise UnknownSymbol(f"unknown generator {name!r}")
        if name in ring.var_names:
            return self.from_base(ring.variable(name))
        raise UnknownSymbol(f"unknown generator {name!r}")

    # -- internal rewrite machinery ----------------------------------------------

    def _rho_pow(self, n):
        p = self._rho_pows.get(n)
        if p is None:
            p = self.rho**n
            self._rho_pows[n] = p
        return p

    def sigma_monomial(self, key, power):
        """sigma^power applied to a single base monomial, memoized."""
        if power == 0:
            return None  # caller keeps the key unchanged
        cached = self._sigma_mono_cache.get((key, power))
        if cached is None:
            mono = self.ring.monomial(key)
            cached = self.sigma.apply(mono, power)
            self._sigma_mono_cache[(key, power)] = cached
        return cached

    def _w(self, a):
        """w_a = sum_{i<a} rho^i sigma^i(v), the y-past-x^a correction."""
        cached = self._w_cache.get(a)
        if cached is None:
            if a <= 0:
                cached = self.ring.zero()
            else:
                prev = self._w(a - 1)
                cached = prev + self.sigma.apply(self.v, a - 1).scale(self._rho_pow(a - 1))
            self._w_cache[a] = cached
        return cached

    def ybx(self, b, a):
        """Normal form of y^b * x^a, memoized."""
        if b == 0 or a == 0:
            return self.pbw(self.ring.one(), a, b)
        cached = self._ybx_cache.get((b, a))
        if cached is None:
            head = self.ybx(b - 1, a)._shift_y(1).scale(self._rho_pow(a))
            w = self.sigma.apply(self._w(a), 1 - b) if b > 1 else self._w(a)
            tail = self.ybx(b - 1, a - 1)._base_left_mul(w)
            cached = head + tail
            self._ybx_cache[(b, a)] = cached
        return cached

    def mul(self, lhs: "AlgebraElement", rhs: "AlgebraElement") -> "AlgebraElement":
        if lhs.pres is not self and lhs.pres != self:
            raise KindMismatch("left factor belongs to another presentation")
        if rhs.pres is not self and rhs.pres != self:
            raise KindMismatch("right factor belongs to another presentation")
        ring = self.ring
        acc = {}
        for (k1, a1, b1), c1 in lhs.terms.items():
            for (k2, a2, b2), c2 in rhs.terms.items():
                c12 = c1 * c2
                moved = self.sigma_monomial(k2, a1 - b1)
                base_pre = ring.monomial(k1)
                if moved is None:
                    base_pre = base_pre * ring.monomial(k2)
                else:
                    base_pre = base_pre * moved
                if base_pre.is_zero():
                    continue
                if b1 == 0 or a2 == 0:
                    for kf, cf in base_pre.coeffs.items():
                        _acc_add(acc, (kf, a1 + a2, b1 + b2), c12 * cf)
                    continue
                for (ky, ay, by), cy in self.ybx(b1, a2).terms.items():
                    movedy = self.sigma_monomial(ky, a1)
                    base = (
                        base_pre * ring.monomial(ky)
                        if movedy is None
                        else base_pre * movedy
                    )
                    cyy = c12 * cy
                    for kf, cf in base.coeffs.items():
                        _acc_add(acc, (kf, a1 + ay, by + b2), cyy * cf)
        return AlgebraElement(self, {k: c for k, c in acc.items() if not c.is_zero()})

    # -- u <-> v ------------------------------------------------------------------

    def solve_u(self) -> BaseElement:
        """An element u with u - rho*sigma(u) = v, or USourceUnsolvable."""
        if self.source == "u":
            return self.u
        if self._solved_u is not None:
            return self._solved_u
        ring, sigma, rho, v = self.ring, self.sigma, self.rho, self.v
        field = self.field
        if ring.kind is BaseKind.SPLIT:
            perm = sigma.permutation
            coeffs = {}
            seen = set()
            for start in range(ring.size):
                if start in seen:
                    continue
                cycle = [start]
                seen.add(start)
                nxt = perm[start]
                while nxt != start:
                    cycle.append(nxt)
                    seen.add(nxt)
                    nxt = perm[nxt]
                length = len(cycle)
                # v_j = u_j - rho * u_{previous in cycle}
                rho_l = rho**length
                folded = field.zero()
                for s in range(length):
                    idx = cycle[(0 - s) % length]
                    folded = folded + rho**s * v.coeffs.get(idx, field.zero())
                one_minus = field.one() - rho_l
                if one_minus.is_zero():
                    if not folded.is_zero():
                        raise USourceUnsolvable(
                            "no u exists: rho^cycle = 1 with nonzero folded v"
                        )
                    current = field.zero()
                else:
                    current = folded / one_minus
                for t in range(length):
                    idx = cycle[t]
                    if t > 0:
                        current = v.coeffs.get(idx, field.zero()) + rho * current
                    if not current.is_zero():
                        coeffs[idx] = current
            u = BaseElement(ring, coeffs)
        else:
            if not sigma.is_diagonal:
                raise USourceUnsolvable(
                    "u can only be solved monomial-wise under a diagonal sigma"
                )
            coeffs = {}
            one = field.one()
            for key, c in v.coeffs.items():
                weight = sigma.eigenvalue(key)
                denom = one - rho * weight
                if denom.is_zero():
                    raise USourceUnsolvable(
                        f"no u exists: monomial {ring.monomial(key)} has "
                        f"sigma-eigenvalue rho^-1 with nonzero coefficient"
                    )
                coeffs[key] = c / denom
            u = BaseElement(ring, coeffs)
        self._solved_u = u
        return u

    # -- word evaluation --------------------------------------------------------

    def word_eval(self, word):
        """Left-to-right product of word factors.

        Each factor is either a Scalar or a (generator name, exponent) pair.
        Negative exponents are admitted only on Laurent base variables.
        """
        acc = self.one()
        ring = self.ring
        for item in word:
            if isinstance(item, Scalar):
                acc = acc.scale(item)
                continue
            name, exp = item
            exp = int(exp)
            if exp == 0:
                continue
            if exp < 0:
                if (
                    ring.kind is BaseKind.LAURENT
                    and name in ring.var_names
                ):
                    i = ring.var_names.index(name)
                    key = tuple(exp if j == i else 0 for j in range(ring.nvars))
                    factor = self.from_base(ring.monomial(key))
                else:
                    raise NegativePowerNotInvertible(
                        f"negative power on non-invertible generator {name!r}"
                    )
            else:
                gen = self.generator(name)
                factor = gen
                for _ in range(exp - 1):
                    factor = self.mul(factor, gen)
                acc = self.mul(acc, factor)
                continue
            acc = self.mul(acc, factor)
        return acc


def _acc_add(acc, key, c):
    s = acc.get(key)
    acc[key] = c if s is None else s + c


class AlgebraElement:
    """An element of the algebra in PBW coordinates {k * x^a * y^b}."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms):
        self.pres = pres
        self.terms = terms

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise KindMismatch(f"expected an algebra element, got {type(other).__name__}")
        if other.pres is not self.pres and other.pres != self.pres:
            raise KindMismatch("algebra elements from different presentations")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return AlgebraElement(self.pres, out)

    def __neg__(self):
        return AlgebraElement(self.pres, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(self.pres.field.from_int(other))
        self._check(other)
        return self.pres.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise NegativePowerNotInvertible("algebra elements support powers n >= 0")
        acc = self.pres.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def scale(self, s: Scalar):
        if s.is_zero():
            return self.pres.zero()
        return AlgebraElement(self.pres, {k: c * s for k, c in self.terms.items()})

    def _shift_y(self, d):
        return AlgebraElement(
            self.pres, {(k, a, b + d): c for (k, a, b), c in self.terms.items()}
        )

    def _base_left_mul(self, belem: BaseElement):
        """belem * self for belem in K (no rewriting needed on the left)."""
        ring = self.pres.ring
        acc = {}
        for (k, a, b), c in self.terms.items():
            prod = belem * ring.monomial(k)
            for kf, cf in prod.coeffs.items():
                _acc_add(acc, (kf, a, b), c * cf)
        return AlgebraElement(
            self.pres, {k: c for k, c in acc.items() if not c.is_zero()}
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def x_degree(self):
        return max((a for (_, a, _) in self.terms), default=0)

    def y_degree(self):
        return max((b for (_, _, b) in self.terms), default=0)

    def pbw_degree(self):
        if not self.terms:
            return 0
        ring = self.pres.ring
        if ring.kind is BaseKind.SPLIT:
            return max(a + b for (_, a, b) in self.terms)
        return max(sum(abs(e) for e in k) + a + b for (k, a, b) in self.terms)

    def as_base(self) -> BaseElement | None:
        """The base-ring part if no x or y occurs, else None."""
        if any(a or b for (_, a, b) in self.terms):
            return None
        return BaseElement(self.pres.ring, {k: c for (k, _, _), c in self.terms.items()})

    def is_scalar(self):
        base = self.as_base()
        return base is not None and base.is_scalar()

    def scalar_value(self):
        base = self.as_base()
        if base is None:
            raise ValueError("element involves x or y")
        return base.scalar_value()

    def render(self):
        if not self.terms:
            return "0"
        ring = self.pres.ring

        def sort_key(item):
            (k, a, b) = item
            kk = (k,) if isinstance(k, int) else k
            return (a + b, a, b, kk)

        terms = []
        for (k, a, b) in sorted(self.terms, key=sort_key, reverse=True):
            c = self.terms[(k, a, b)]
            parts = []
            if ring.kind is BaseKind.SPLIT:
                if ring.size > 1:
                    parts.append(f"e{k}")
            else:
                for name, e in zip(ring.var_names, k):
                    if e:
                        parts.append(name if e == 1 else f"{name}^{e}")
            if a:
                parts.append("x" if a == 1 else f"x^{a}")
            if b:
                parts.append("y" if b == 1 else f"y^{b}")
            mono = "*".join(parts)
            cs = c.render()
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            else:
                if ("+" in cs) or (" - " in cs) or ("/" in cs):
                    cs = f"({cs})"
                terms.append(f"{cs} * {mono}")
        text = guard_leading_minus(terms[0])
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"AlgebraElement({self.render()})"


class GeneratorMap:
    """Images of the generators, defining a candidate algebra endomorphism."""

    def __init__(self, pres, base_images, x_image, y_image, name=""):
        self.pres = pres
        self.base_images = tuple(base_images)
        self.x_image = x_image
        self.y_image = y_image
        self.name = name
        expected = pres.ring.size if pres.ring.kind is BaseKind.SPLIT else pres.ring.nvars
        if len(self.base_images) != expected:
            raise ValueError("one image per base generator is required")
        self._x_pows = {0: pres.one(), 1: x_image}
        self._y_pows = {0: pres.one(), 1: y_image}

    @classmethod
    def identity(cls, pres):
        return cls(
            pres,
            [pres.from_base(g) for g in pres.base_generators()],
            pres.x(),
            pres.y(),
            name="id",
        )

    def _pow(self, cache, img, n):
        p = cache.get(n)
        if p is None:
            p = self._pow(cache, img, n - 1) * img
            cache[n] = p
        return p

    def apply_base(self, belem: BaseElement) -> AlgebraElement:
        pres = self.pres
        ring = pres.ring
        acc = pres.zero()
        if ring.kind is BaseKind.SPLIT:
            for i, c in belem.coeffs.items():
                acc = acc + self.base_images[i].scale(c)
            return acc
        for key, c in belem.coeffs.items():
            term = pres.one()
            for i, e in enumerate(key):
                if e == 0:
                    continue
                img = self.base_images[i]
                if e > 0:
                    for _ in range(e):
                        term = term * img
                else:
                    term = term * _invert_monomial_image(img, -e)
            acc = acc + term.scale(c)
        return acc

    def apply(self, elem: AlgebraElement) -> AlgebraElement:
        pres = self.pres
        ring = pres.ring
        acc = pres.zero()
        for (k, a, b), c in elem.terms.items():
            base = self.apply_base(BaseElement(ring, {k: pres.field.one()}))
            term = base * self._pow(self._x_pows, self.x_image, a)
            term = term * self._pow(self._y_pows, self.y_image, b)
            acc = acc + term.scale(c)
        return acc

    def generator_images(self):
        """Pairs (generator element, image element), for commutation checks."""
        pres = self.pres
        gens = [pres.from_base(g) for g in pres.base_generators()] + [pres.x(), pres.y()]
        images = list(self.base_images) + [self.x_image, self.y_image]
        return list(zip(gens, images))

    def __repr__(self):
        return f"GeneratorMap({self.name or 'anonymous'})"


def _invert_monomial_image(img: AlgebraElement, power: int) -> AlgebraElement:
    """(img)^-power for a single-term pure-base image on a Laurent ring."""
    pres = img.pres
    if pres.ring.kind is not BaseKind.LAURENT or len(img.terms) != 1:
        raise NegativePowerNotInvertible(
            "negative base exponents need a Laurent-monomial image"
        )
    ((k, a, b), c), = img.terms.items()
    if a or b:
        raise NegativePowerNotInvertible("image involves x or y; cannot invert")
    key = tuple(-e * power for e in k)
    return AlgebraElement(pres, {(key, 0, 0): c ** (-power)})


@dataclass
class CheckResult:
    """Outcome of a relation-preservation check."""

    ok: bool
    violated: str | None = None
    lhs: AlgebraElement | None = None
    rhs: AlgebraElement | None = None

    def residue(self):
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs


def twist_build(pres: AmbiskewPresentation) -> dict[str, GeneratorMap]:
    """The scaling family nu_k1..nu_kn, nu_x, nu_y attached to a presentation.

    For a diagonal sigma on a polynomial or Laurent base: nu_ki fixes K and
    scales x by a_i, y by a_i^-1; nu_x acts as sigma^-1 on K, fixes x and
    scales y by rho; nu_y acts as sigma on K, scales x by rho^-1 and fixes y.
    On a split base only nu_x and nu_y exist.
    """
    ring = pres.ring
    rho = pres.rho
    maps = {}
    if ring.kind is BaseKind.SPLIT:
        idems = [pres.from_base(e) for e in pres.base_generators()]
        perm = pres.sigma.permutation
        inv = [0] * ring.size
        for i, j in enumerate(perm):
            inv[j] = i
        maps["x"] = GeneratorMap(
            pres,
            [idems[inv[i]] for i in range(ring.size)],
            pres.x(),
            pres.y().scale(rho),
            name="nu_x",
        )
        maps["y"] = GeneratorMap(
            pres,
            [idems[perm[i]] for i in range(ring.size)],
            pres.x().scale(rho.inv()),
            pres.y(),
            name="nu_y",
        )
        return maps
    report = pres.sigma.verify()
    if not report.diagonal:
        raise NonDiagonalSigma("the twisting family needs a diagonal sigma")
    scales = pres.sigma.scales
    base_vars = [pres.from_base(g) for g in pres.base_generators()]
    for i, name in enumerate(ring.var_names):
        a_i = scales[i]
        maps[name] = GeneratorMap(
            pres,
            base_vars,
            pres.x().scale(a_i),
            pres.y().scale(a_i.inv()),
            name=f"nu_{name}",
        )
    maps["x"] = GeneratorMap(
        pres,
        [base_vars[i].scale(scales[i].inv()) for i in range(ring.nvars)],
        pres.x(),
        pres.y().scale(rho),
        name="nu_x",
    )
    maps["y"] = GeneratorMap(
        pres,
        [base_vars[i].scale(scales[i]) for i in range(ring.nvars)],
        pres.x().scale(rho.inv()),
        pres.y(),
        name="nu_y",
    )
    return maps


def endo_check_relations(pres: AmbiskewPresentation, gmap: GeneratorMap) -> CheckResult:
    """Verify that the generator images respect the defining relations."""
    sigma = pres.sigma
    rho = pres.rho
    mx, my = gmap.x_image, gmap.y_image
    for gen in pres.base_generators():
        mk = gmap.apply_base(gen)
        lhs = mx * mk
        rhs = gmap.apply_base(sigma.apply(gen)) * mx
        if lhs != rhs:
            return CheckResult(False, f"x*{gen} = sigma({gen})*x", lhs, rhs)
        lhs = my * mk
        rhs = gmap.apply_base(sigma.apply(gen, -1)) * my
        if lhs != rhs:
            return CheckResult(False, f"y*{gen} = sigma^-1({gen})*y", lhs, rhs)
    lhs = my * mx
    rhs = (mx * my).scale(rho) + gmap.apply_base(pres.v)
    if lhs != rhs:
        return CheckResult(False, "y*x = rho*x*y + v", lhs, rhs)
    return CheckResult(True)


def endo_pair_commute(pres, m1: GeneratorMap, m2: GeneratorMap) -> bool:
    """True when m1 o m2 and m2 o m1 agree on every generator."""
    for gen, _ in m1.generator_images():
        if m1.apply(m2.apply(gen)) != m2.apply(m1.apply(gen)):
            return False
    return True
