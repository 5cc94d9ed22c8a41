"""Commutative base rings and their automorphisms.

Three kinds of base are supported: polynomial rings k[k1..kn], Laurent
polynomial rings k[k1^±1..kn^±1], and split semisimple bases k^m spanned by
orthogonal idempotents e0..e(m-1).  Automorphisms are per-variable affine maps
sigma(ki) = ai*ki + bi (polynomial), diagonal maps (Laurent), or idempotent
permutations (split).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import KindMismatch
from .scalars import FieldConfig, Scalar, guard_leading_minus


class BaseKind(str, Enum):
    POLYNOMIAL = "polynomial"
    LAURENT = "laurent"
    SPLIT = "split"


class BaseRing:
    """A base ring of one of the three supported kinds."""

    def __init__(self, kind: BaseKind, field: FieldConfig, var_names=(), size=None):
        self.kind = BaseKind(kind)
        self.field = field
        if self.kind is BaseKind.SPLIT:
            if size is None or size < 1:
                raise ValueError("split base needs m >= 1")
            self.size = int(size)
            self.nvars = 0
            self.var_names = tuple(f"e{i}" for i in range(self.size))
        else:
            self.var_names = tuple(var_names)
            self.nvars = len(self.var_names)
            self.size = None
            if len(set(self.var_names)) != self.nvars:
                raise ValueError("base variable names must be unique")

    @classmethod
    def polynomial(cls, field, var_names):
        if isinstance(var_names, int):
            var_names = tuple(f"k{i + 1}" for i in range(var_names))
        return cls(BaseKind.POLYNOMIAL, field, var_names=var_names)

    @classmethod
    def laurent(cls, field, var_names):
        if isinstance(var_names, int):
            var_names = tuple(f"k{i + 1}" for i in range(var_names))
        return cls(BaseKind.LAURENT, field, var_names=var_names)

    @classmethod
    def split(cls, field, m):
        return cls(BaseKind.SPLIT, field, size=m)

    def __eq__(self, other):
        return (
            isinstance(other, BaseRing)
            and self.kind == other.kind
            and self.field == other.field
            and self.var_names == other.var_names
            and self.size == other.size
        )

    def __hash__(self):
        return hash((self.kind, self.field, self.var_names, self.size))

    def __repr__(self):
        if self.kind is BaseKind.SPLIT:
            return f"BaseRing(split, m={self.size})"
        return f"BaseRing({self.kind.value}, vars={list(self.var_names)})"

    @property
    def structural_dimension(self):
        """Krull/GK dimension as fixed by the base kind."""
        return 0 if self.kind is BaseKind.SPLIT else self.nvars

    # -- element constructors -------------------------------------------------

    def zero(self):
        return BaseElement(self, {})

    def one(self):
        if self.kind is BaseKind.SPLIT:
            one = self.field.one()
            return BaseElement(self, {i: one for i in range(self.size)})
        return BaseElement(self, {(0,) * self.nvars: self.field.one()})

    def from_scalar(self, s: Scalar):
        if s.is_zero():
            return self.zero()
        if self.kind is BaseKind.SPLIT:
            return BaseElement(self, {i: s for i in range(self.size)})
        return BaseElement(self, {(0,) * self.nvars: s})

    def variable(self, name_or_index):
        if self.kind is BaseKind.SPLIT:
            raise KindMismatch("split base has idempotents, not variables")
        if isinstance(name_or_index, str):
            i = self.var_names.index(name_or_index)
        else:
            i = name_or_index
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return BaseElement(self, {exp: self.field.one()})

    def idempotent(self, i):
        if self.kind is not BaseKind.SPLIT:
            raise KindMismatch("idempotents exist only in the split base")
        if not 0 <= i < self.size:
            raise ValueError("idempotent index out of range")
        return BaseElement(self, {i: self.field.one()})

    def monomial(self, key, coeff=None):
        coeff = self.field.one() if coeff is None else coeff
        if coeff.is_zero():
            return self.zero()
        if self.kind is BaseKind.SPLIT:
            return BaseElement(self, {int(key): coeff})
        key = tuple(int(e) for e in key)
        if self.kind is BaseKind.POLYNOMIAL and any(e < 0 for e in key):
            raise ValueError("negative exponents need a Laurent base")
        return BaseElement(self, {key: coeff})

    def element(self, coeffs):
        out = {}
        for key, c in coeffs.items():
            if not c.is_zero():
                out[key] = c
        return BaseElement(self, out)


class BaseElement:
    """An element of a :class:`BaseRing`, as a zero-free coefficient map."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, BaseElement):
            raise KindMismatch(f"expected a base element, got {type(other).__name__}")
        if other.ring != self.ring:
            raise KindMismatch("base elements from different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return BaseElement(self.ring, out)

    def __neg__(self):
        return BaseElement(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(self.ring.field.from_int(other))
        self._check(other)
        out = {}
        if self.ring.kind is BaseKind.SPLIT:
            for i, c1 in self.coeffs.items():
                c2 = other.coeffs.get(i)
                if c2 is not None:
                    p = c1 * c2
                    if not p.is_zero():
                        out[i] = p
        else:
            for k1, c1 in self.coeffs.items():
                for k2, c2 in other.coeffs.items():
                    k = tuple(a + b for a, b in zip(k1, k2))
                    p = c1 * c2
                    s = out.get(k)
                    s = p if s is None else s + p
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        return BaseElement(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.__mul__(other)
        return NotImplemented

    def scale(self, s: Scalar):
        if s.is_zero():
            return self.ring.zero()
        return BaseElement(self.ring, {k: c * s for k, c in self.coeffs.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("base elements support nonnegative integer powers")
        acc = self.ring.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, BaseElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_scalar(self):
        """True when the element lies in k*1."""
        if not self.coeffs:
            return True
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            if len(self.coeffs) != ring.size:
                return False
            vals = iter(self.coeffs.values())
            first = next(vals)
            return all(v == first for v in vals)
        zero_exp = (0,) * ring.nvars
        return set(self.coeffs) <= {zero_exp}

    def scalar_value(self):
        """The scalar c with self = c*1; requires is_scalar()."""
        if not self.coeffs:
            return self.ring.field.zero()
        if not self.is_scalar():
            raise ValueError("element is not a scalar multiple of 1")
        return next(iter(self.coeffs.values()))

    def total_degree(self):
        if self.ring.kind is BaseKind.SPLIT or not self.coeffs:
            return 0
        return max(sum(abs(e) for e in k) for k in self.coeffs)

    def render(self):
        if not self.coeffs:
            return "0"
        ring = self.ring
        terms = []
        for key in sorted(self.coeffs, reverse=(ring.kind is not BaseKind.SPLIT)):
            c = self.coeffs[key]
            if ring.kind is BaseKind.SPLIT:
                mono = f"e{key}" if ring.size > 1 else ""
            else:
                factors = [
                    (n if e == 1 else f"{n}^{e}")
                    for n, e in zip(ring.var_names, key)
                    if e != 0
                ]
                mono = "*".join(factors)
            cs = c.render()
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append(f"-{mono}")
            else:
                if _scalar_needs_parens(cs):
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
        text = guard_leading_minus(terms[0])
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BaseElement({self.render()})"


def _scalar_needs_parens(s):
    return ("+" in s) or (" - " in s) or ("/" in s)


@dataclass(frozen=True)
class AutReport:
    valid: bool
    diagonal: bool
    reason: str | None = None


class BaseAutomorphism:
    """sigma on a base ring: affine-diagonal, diagonal, or a permutation."""

    def __init__(self, ring, scales=None, shifts=None, permutation=None):
        self.ring = ring
        if ring.kind is BaseKind.SPLIT:
            if permutation is None:
                permutation = tuple(range(ring.size))
            self.permutation = tuple(int(i) for i in permutation)
            self.scales = None
            self.shifts = None
        else:
            if scales is None:
                scales = tuple(ring.field.one() for _ in range(ring.nvars))
            self.scales = tuple(scales)
            if shifts is None:
                shifts = tuple(ring.field.zero() for _ in range(ring.nvars))
            self.shifts = tuple(shifts)
            self.permutation = None
            if len(self.scales) != ring.nvars or len(self.shifts) != ring.nvars:
                raise ValueError("automorphism data length must match the variable count")
            if ring.kind is BaseKind.LAURENT and any(not b.is_zero() for b in self.shifts):
                raise ValueError("laurent base forbids sigma shift")

    @classmethod
    def identity(cls, ring):
        return cls(ring)

    def __eq__(self, other):
        return (
            isinstance(other, BaseAutomorphism)
            and self.ring == other.ring
            and self.scales == other.scales
            and self.shifts == other.shifts
            and self.permutation == other.permutation
        )

    def __hash__(self):
        return hash((self.ring, self.scales, self.shifts, self.permutation))

    def verify(self) -> AutReport:
        """Check invertibility and report whether the map is diagonal."""
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            if sorted(self.permutation) != list(range(ring.size)):
                return AutReport(False, False, "permutation is not a bijection")
            diagonal = self.permutation == tuple(range(ring.size))
            return AutReport(True, diagonal)
        for i, a in enumerate(self.scales):
            if a.is_zero():
                return AutReport(
                    False, False, f"sigma({ring.var_names[i]}) has zero linear part"
                )
        diagonal = all(b.is_zero() for b in self.shifts)
        return AutReport(True, diagonal)

    @property
    def is_diagonal(self):
        return self.verify().diagonal

    def eigenvalue(self, key):
        """The sigma-eigenvalue of a base monomial, for diagonal maps."""
        acc = self.ring.field.one()
        for a, e in zip(self.scales, key):
            if e:
                acc = acc * a**e
        return acc

    def _perm_power(self, power):
        m = self.ring.size
        perm = list(range(m))
        step = self.permutation
        if power < 0:
            inv = [0] * m
            for i, j in enumerate(step):
                inv[j] = i
            step = tuple(inv)
            power = -power
        for _ in range(power):
            perm = [step[p] for p in perm]
        return perm

    def apply(self, elem: BaseElement, power: int = 1) -> BaseElement:
        """Apply sigma^power by substitution."""
        if elem.ring != self.ring:
            raise KindMismatch("automorphism applied to an element of another ring")
        if power == 0 or elem.is_zero():
            return elem
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            perm = self._perm_power(power)
            return BaseElement(ring, {perm[i]: c for i, c in elem.coeffs.items()})
        if all(b.is_zero() for b in self.shifts):
            out = {}
            for key, c in elem.coeffs.items():
                acc = c
                for a, e in zip(self.scales, key):
                    if e:
                        acc = acc * a ** (e * power)
                if not acc.is_zero():
                    out[key] = acc
            return BaseElement(ring, out)
        # affine polynomial case: substitute one step at a time
        if power > 0:
            images = [
                ring.variable(i) * a + ring.from_scalar(b)
                for i, (a, b) in enumerate(zip(self.scales, self.shifts))
            ]
            steps = power
        else:
            images = [
                (ring.variable(i) - ring.from_scalar(b)) * a.inv()
                for i, (a, b) in enumerate(zip(self.scales, self.shifts))
            ]
            steps = -power
        for _ in range(steps):
            elem = self._substitute(elem, images)
        return elem

    def _substitute(self, elem, images):
        ring = self.ring
        out = ring.zero()
        for key, c in elem.coeffs.items():
            term = ring.from_scalar(c)
            for img, e in zip(images, key):
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    def render_images(self):
        ring = self.ring
        if ring.kind is BaseKind.SPLIT:
            return [f"sigma(e{i}) = e{j}" for i, j in enumerate(self.permutation)]
        out = []
        for name, a, b in zip(ring.var_names, self.scales, self.shifts):
            img = ring.variable(name) * a + ring.from_scalar(b)
            out.append(f"sigma({name}) = {img.render()}")
        return out
