"""Exact scalars: rational functions in named parameters over a cyclotomic field.

A :class:`FieldConfig` fixes a cyclotomic order N and an ordered tuple of
parameter names.  Scalars are elements of Q(zeta_N)(q1, ..., qp): fractions of
multivariate polynomials in the parameters whose coefficients live in
Q[zeta]/(Phi_N(zeta)).  Every scalar is kept in a canonical form (fraction
fully reduced by a multivariate gcd, denominator monic in a fixed lex order),
so value equality coincides with representation equality.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import DivisionByZero

# A cyclotomic number is a tuple of mpq of length deg(Phi_N), the coordinates
# in the power basis 1, zeta, ..., zeta^(deg-1).
# A polynomial is a dict {exponent tuple -> cyclotomic number}, zero-free.

_MPQ0 = mpq(0)
_MPQ1 = mpq(1)


def _dense_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _dense_mul(a, b):
    out = [_MPQ0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _dense_trim(out)


def _dense_divexact(a, b):
    """Exact division of dense mpq polynomials; remainder must vanish."""
    a = list(a)
    out = [_MPQ0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and _dense_trim(a):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        out[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        _dense_trim(a)
    if _dense_trim(a):
        raise ArithmeticError("inexact dense division")
    return _dense_trim(out)


def cyclotomic_polynomial(n):
    """Coefficients of Phi_n as a list of mpq, low degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    phi = [-_MPQ1] + [_MPQ0] * (n - 1) + [_MPQ1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            phi = _dense_divexact(phi, cyclotomic_polynomial(d))
    return phi


class FieldConfig:
    """The coefficient field Q(zeta_N)(parameters...).

    Immutable; acts as the factory and arithmetic context for
    :class:`Scalar` values.
    """

    def __init__(self, cyclotomic_order=1, parameters=()):
        n = int(cyclotomic_order)
        if n < 1:
            raise ValueError("cyclotomic order must be a positive integer")
        params = tuple(parameters)
        if len(set(params)) != len(params):
            raise ValueError("parameter names must be unique")
        for name in params:
            if not name or not isinstance(name, str):
                raise ValueError("parameter names must be nonempty strings")
            if name == "zeta":
                raise ValueError('"zeta" is reserved for the root of unity')
        self.cyclotomic_order = n
        self.parameters = params
        self.nparams = len(params)
        self._param_index = {name: i for i, name in enumerate(params)}
        phi = cyclotomic_polynomial(n)
        self.min_poly = tuple(phi)
        self.ext_degree = len(phi) - 1
        d = self.ext_degree
        self._czero = tuple([_MPQ0] * d)
        self._cone = tuple([_MPQ1] + [_MPQ0] * (d - 1))
        # zeta^k for k = 0 .. 2d-2, reduced modulo Phi_N
        pows = [tuple([_MPQ1 if i == k else _MPQ0 for i in range(d)]) for k in range(d)]
        for k in range(d, 2 * d - 1):
            prev = list(pows[k - 1])
            shifted = [_MPQ0] + prev
            lead = shifted.pop()
            if lead:
                for i in range(d):
                    shifted[i] -= lead * phi[i]
            pows.append(tuple(shifted))
        self._zeta_pows = pows
        self._zero_exp = (0,) * self.nparams

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldConfig)
            and self.cyclotomic_order == other.cyclotomic_order
            and self.parameters == other.parameters
        )

    def __hash__(self):
        return hash((self.cyclotomic_order, self.parameters))

    def __repr__(self):
        return f"FieldConfig(N={self.cyclotomic_order}, parameters={list(self.parameters)})"

    # -- cyclotomic coefficient arithmetic -----------------------------------

    def cyc_add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def cyc_sub(self, u, v):
        return tuple(a - b for a, b in zip(u, v))

    def cyc_neg(self, u):
        return tuple(-a for a in u)

    def cyc_mul(self, u, v):
        d = self.ext_degree
        if d == 1:
            return (u[0] * v[0],)
        acc = [_MPQ0] * d
        pows = self._zeta_pows
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                k = i + j
                if k < d:
                    acc[k] += c
                else:
                    pk = pows[k]
                    for t in range(d):
                        acc[t] += c * pk[t]
        return tuple(acc)

    def cyc_is_zero(self, u):
        return not any(u)

    def cyc_inv(self, u):
        """Inverse modulo Phi_N via the extended Euclidean algorithm."""
        if self.cyc_is_zero(u):
            raise DivisionByZero("zero has no inverse")
        if self.ext_degree == 1:
            return (1 / u[0],)
        r0, r1 = list(self.min_poly), _dense_trim(list(u))
        s0, s1 = [], [_MPQ1]
        while len(r1) > 1:
            q = _dense_quorem(r0, r1)
            r0, r1 = r1, _dense_trim([a - b for a, b in _zip_pad(r0, _dense_mul(q, r1))])
            s0, s1 = s1, _dense_trim([a - b for a, b in _zip_pad(s0, _dense_mul(q, s1))])
        # r1 is a nonzero constant: u * s1 = r1 (mod Phi)
        c = 1 / r1[0]
        inv = [a * c for a in s1]
        inv.extend([_MPQ0] * (self.ext_degree - len(inv)))
        return tuple(inv[: self.ext_degree])

    def zeta_power(self, k):
        """zeta^k reduced modulo Phi_N, for any integer k >= 0."""
        d = self.ext_degree
        if k < 2 * d - 1:
            return self._zeta_pows[k]
        acc = self._cone
        base = self._zeta_pows[1] if d > 1 else self._zeta_pows[0]
        for _ in range(k):
            acc = self.cyc_mul(acc, base)
        return acc

    # -- scalar constructors --------------------------------------------------

    def zero(self):
        return Scalar(self, {}, {self._zero_exp: self._cone})

    def one(self):
        return Scalar(self, {self._zero_exp: self._cone}, {self._zero_exp: self._cone})

    def from_rational(self, num, den=1):
        q = mpq(num, den)
        if not q:
            return self.zero()
        d = self.ext_degree
        cyc = tuple([q] + [_MPQ0] * (d - 1))
        return Scalar(self, {self._zero_exp: cyc}, {self._zero_exp: self._cone})

    def from_int(self, n):
        return self.from_rational(n)

    def zeta(self):
        if self.ext_degree == 1:
            # Phi_1 = z - 1 or Phi_2 = z + 1: zeta is rational
            val = _MPQ1 if self.cyclotomic_order == 1 else -_MPQ1
            return self.from_rational(val)
        return Scalar(self, {self._zero_exp: self._zeta_pows[1]}, {self._zero_exp: self._cone})

    def parameter(self, name):
        i = self._param_index.get(name)
        if i is None:
            raise KeyError(f"unknown parameter {name!r}")
        exp = tuple(1 if j == i else 0 for j in range(self.nparams))
        return Scalar(self, {exp: self._cone}, {self._zero_exp: self._cone})

    def zeta_reduce(self, coeffs):
        """Canonical residue of a polynomial in zeta, given low-first rationals."""
        acc = self._czero
        for k, c in enumerate(coeffs):
            q = mpq(c)
            if q:
                acc = self.cyc_add(acc, tuple(q * a for a in self.zeta_power(k)))
        if self.cyc_is_zero(acc):
            return self.zero()
        return Scalar(self, {self._zero_exp: acc}, {self._zero_exp: self._cone})


def _zip_pad(a, b):
    if len(a) < len(b):
        a = a + [_MPQ0] * (len(b) - len(a))
    elif len(b) < len(a):
        b = b + [_MPQ0] * (len(a) - len(b))
    return zip(a, b)


def _dense_quorem(a, b):
    """Quotient of dense mpq polynomials (remainder discarded by caller)."""
    a = list(a)
    out = [_MPQ0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and _dense_trim(a):
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        out[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        _dense_trim(a)
    return _dense_trim(out)


# -- sparse multivariate polynomials over the cyclotomic coefficients ---------
#
# Keys are exponent tuples over the parameters; values are cyclotomic numbers.
# The monomial order used for leading terms and canonical normalization is
# plain lex on the exponent tuples.


def _p_is_zero(p):
    return not p


def _p_add(ctx, p, q):
    out = dict(p)
    for k, c in q.items():
        if k in out:
            s = ctx.cyc_add(out[k], c)
            if ctx.cyc_is_zero(s):
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = c
    return out


def _p_neg(ctx, p):
    return {k: ctx.cyc_neg(c) for k, c in p.items()}


def _p_mul(ctx, p, q):
    out = {}
    if len(p) > len(q):
        p, q = q, p
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            c = ctx.cyc_mul(c1, c2)
            if k in out:
                s = ctx.cyc_add(out[k], c)
                if ctx.cyc_is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            elif not ctx.cyc_is_zero(c):
                out[k] = c
    return out


def _p_scale(ctx, p, cyc):
    if ctx.cyc_is_zero(cyc):
        return {}
    return {k: ctx.cyc_mul(c, cyc) for k, c in p.items()}


def _p_lead(p):
    return max(p)


def _p_divexact(ctx, p, d):
    """Divide p by d exactly with respect to lex order; d must divide p."""
    if not p:
        return {}
    rem = dict(p)
    out = {}
    dk = _p_lead(d)
    dc_inv = ctx.cyc_inv(d[dk])
    while rem:
        rk = _p_lead(rem)
        qk = tuple(a - b for a, b in zip(rk, dk))
        if any(e < 0 for e in qk):
            raise ArithmeticError("inexact polynomial division")
        qc = ctx.cyc_mul(rem[rk], dc_inv)
        out[qk] = qc
        for k2, c2 in d.items():
            k = tuple(a + b for a, b in zip(qk, k2))
            s = ctx.cyc_sub(rem.get(k, ctx._czero), ctx.cyc_mul(qc, c2))
            if ctx.cyc_is_zero(s):
                rem.pop(k, None)
            else:
                rem[k] = s
    return out


def _p_monic(ctx, p):
    if not p:
        return p
    lc = p[_p_lead(p)]
    if lc == ctx._cone:
        return p
    return _p_scale(ctx, p, ctx.cyc_inv(lc))


# Recursive dense view used only by the gcd.  A polynomial at level 0 is a
# cyclotomic number; at level v >= 1 it is a list of level-(v-1) polynomials,
# the coefficients of ascending powers of the v-th remaining variable.


def _to_rec(ctx, p, nvars):
    if nvars == 0:
        return p.get((), ctx._czero)
    deg = max((k[0] for k in p), default=-1)
    buckets = [dict() for _ in range(deg + 1)]
    for k, c in p.items():
        buckets[k[0]][k[1:]] = c
    return [_to_rec(ctx, b, nvars - 1) for b in buckets]


def _from_rec(ctx, r, nvars, out=None, prefix=()):
    if out is None:
        out = {}
    if nvars == 0:
        if not ctx.cyc_is_zero(r):
            out[prefix] = r
        return out
    for i, coeff in enumerate(r):
        _from_rec(ctx, coeff, nvars - 1, out, prefix + (i,))
    return out


def _r_is_zero(ctx, r, lev):
    if lev == 0:
        return ctx.cyc_is_zero(r)
    return all(_r_is_zero(ctx, c, lev - 1) for c in r)


def _r_trim(ctx, r, lev):
    while r and _r_is_zero(ctx, r[-1], lev - 1):
        r.pop()
    return r


def _r_neg(ctx, r, lev):
    if lev == 0:
        return ctx.cyc_neg(r)
    return [_r_neg(ctx, c, lev - 1) for c in r]


def _r_add(ctx, a, b, lev):
    if lev == 0:
        return ctx.cyc_add(a, b)
    n = max(len(a), len(b))
    zero = _r_zero(ctx, lev - 1)
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(_r_add(ctx, x, y, lev - 1))
    return _r_trim(ctx, out, lev)


def _r_zero(ctx, lev):
    if lev == 0:
        return ctx._czero
    return []


def _r_mul(ctx, a, b, lev):
    if lev == 0:
        return ctx.cyc_mul(a, b)
    if not a or not b:
        return []
    out = [_r_zero(ctx, lev - 1) for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if _r_is_zero(ctx, ai, lev - 1):
            continue
        for j, bj in enumerate(b):
            out[i + j] = _r_add(ctx, out[i + j], _r_mul(ctx, ai, bj, lev - 1), lev - 1)
    return _r_trim(ctx, out, lev)


def _r_divexact(ctx, a, d, lev):
    """Exact division at a given level (both operands at the same level)."""
    if lev == 0:
        return ctx.cyc_mul(a, ctx.cyc_inv(d))
    if _r_is_zero(ctx, a, lev):
        return []
    rem = [c for c in a]
    out = [_r_zero(ctx, lev - 1) for _ in range(len(rem) - len(d) + 1)]
    while rem and len(rem) >= len(d):
        shift = len(rem) - len(d)
        q = _r_divexact(ctx, rem[-1], d[-1], lev - 1)
        out[shift] = q
        for i, di in enumerate(d):
            rem[shift + i] = _r_add(
                ctx, rem[shift + i], _r_neg(ctx, _r_mul(ctx, q, di, lev - 1), lev - 1), lev - 1
            )
        _r_trim(ctx, rem, lev)
    if rem:
        raise ArithmeticError("inexact recursive division")
    return _r_trim(ctx, out, lev)


def _r_div_ground(ctx, a, g, lev):
    """Divide every coefficient of a (level lev) by g (level lev-1)."""
    if lev == 0:
        raise AssertionError("ground division below level 1")
    return [_r_divexact(ctx, c, g, lev - 1) for c in a]


def _r_content(ctx, a, lev):
    """gcd of the coefficients of a; result lives one level down."""
    acc = _r_zero(ctx, lev - 1)
    for c in a:
        acc = _r_gcd(ctx, acc, c, lev - 1)
        if lev - 1 == 0 and not ctx.cyc_is_zero(acc):
            # units short-circuit: any nonzero field constant is a unit
            return ctx._cone
    return acc


def _r_prem(ctx, f, g, lev):
    """Pseudo-remainder of f by g in the top variable."""
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return [c for c in f]
    lc_g = g[-1]
    rem = [c for c in f]
    while rem and len(rem) - 1 >= dg:
        shift = len(rem) - 1 - dg
        lc_r = rem[-1]
        rem = [_r_mul(ctx, c, lc_g, lev - 1) for c in rem]
        for i, gi in enumerate(g):
            rem[shift + i] = _r_add(
                ctx, rem[shift + i], _r_neg(ctx, _r_mul(ctx, lc_r, gi, lev - 1), lev - 1), lev - 1
            )
        _r_trim(ctx, rem, lev)
    return rem


def _r_gcd(ctx, a, b, lev):
    if lev == 0:
        if ctx.cyc_is_zero(a):
            return b
        return ctx._cone
    a = _r_trim(ctx, [c for c in a], lev)
    b = _r_trim(ctx, [c for c in b], lev)
    if not a:
        return b
    if not b:
        return a
    ca = _r_content(ctx, a, lev)
    cb = _r_content(ctx, b, lev)
    cg = _r_gcd(ctx, ca, cb, lev - 1)
    f = _r_div_ground(ctx, a, ca, lev)
    g = _r_div_ground(ctx, b, cb, lev)
    if len(f) < len(g):
        f, g = g, f
    # primitive polynomial remainder sequence
    while True:
        r = _r_prem(ctx, f, g, lev)
        if not r:
            break
        cr = _r_content(ctx, r, lev)
        f, g = g, _r_div_ground(ctx, r, cr, lev)
    if _r_is_zero(ctx, cg, lev - 1):
        return g
    return _r_trim(ctx, [_r_mul(ctx, c, cg, lev - 1) for c in g], lev)


def _common_monomial(p, q):
    it = iter(p)
    acc = list(next(it))
    for k in it:
        for i, e in enumerate(k):
            if e < acc[i]:
                acc[i] = e
    for k in q:
        for i, e in enumerate(k):
            if e < acc[i]:
                acc[i] = e
    return tuple(acc)


def _p_shift_down(p, mono):
    if not any(mono):
        return p
    return {tuple(a - b for a, b in zip(k, mono)): c for k, c in p.items()}


def _p_gcd(ctx, p, q):
    """Monic (lex leading coefficient 1) gcd of two polynomial dicts."""
    if not p:
        return _p_monic(ctx, dict(q))
    if not q:
        return _p_monic(ctx, dict(p))
    n = ctx.nparams
    if n == 0:
        return {(): ctx._cone}
    mono = _common_monomial(p, q)
    if len(p) == 1 or len(q) == 1:
        return {mono: ctx._cone}
    p = _p_shift_down(p, mono)
    q = _p_shift_down(q, mono)
    g = _r_gcd(ctx, _to_rec(ctx, p, n), _to_rec(ctx, q, n), n)
    g = _p_monic(ctx, _from_rec(ctx, g, n))
    if any(mono):
        g = {tuple(a + b for a, b in zip(k, mono)): c for k, c in g.items()}
    return g


class Scalar:
    """An element of Q(zeta_N)(parameters), always in canonical form.

    The fraction num/den is reduced (gcd cancelled) and the denominator's
    lex-leading coefficient is normalized to 1, so equal values have equal
    representations.  Instances are immutable.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den, _normalized=False):
        self.field = field
        if not _normalized:
            num, den = self._normalize(field, num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(ctx, num, den):
        if _p_is_zero(den):
            raise DivisionByZero("scalar with zero denominator")
        if _p_is_zero(num):
            return {}, {ctx._zero_exp: ctx._cone}
        if den == {ctx._zero_exp: ctx._cone}:
            return num, den
        g = _p_gcd(ctx, num, den)
        if g != {ctx._zero_exp: ctx._cone}:
            num = _p_divexact(ctx, num, g)
            den = _p_divexact(ctx, den, g)
        lc = den[_p_lead(den)]
        if lc != ctx._cone:
            inv = ctx.cyc_inv(lc)
            num = _p_scale(ctx, num, inv)
            den = _p_scale(ctx, den, inv)
        return num, den

    # -- coercion -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars from different field configurations")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.field
        if self.den == o.den:
            return Scalar(ctx, _p_add(ctx, self.num, o.num), self.den)
        num = _p_add(ctx, _p_mul(ctx, self.num, o.den), _p_mul(ctx, o.num, self.den))
        return Scalar(ctx, num, _p_mul(ctx, self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        ctx = self.field
        return Scalar(ctx, _p_neg(ctx, self.num), self.den, _normalized=True)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.field
        return Scalar(ctx, _p_mul(ctx, self.num, o.num), _p_mul(ctx, self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("scalar division by zero")
        ctx = self.field
        return Scalar(ctx, _p_mul(ctx, self.num, o.den), _p_mul(ctx, self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        ctx = self.field
        if exponent == 0:
            return ctx.one()
        base = self
        if exponent < 0:
            base = base.inv()
            exponent = -exponent
        acc = ctx.one()
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return acc

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("zero scalar has no inverse")
        ctx = self.field
        return Scalar(ctx, dict(self.den), dict(self.num))

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        ctx = self.field
        return self.num == {ctx._zero_exp: ctx._cone} and self.den == {ctx._zero_exp: ctx._cone}

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    self.field,
                    frozenset(self.num.items()),
                    frozenset(self.den.items()),
                )
            )
        return self._hash

    # -- rendering ------------------------------------------------------------

    def render(self):
        if self.is_zero():
            return "0"
        ctx = self.field
        one = {ctx._zero_exp: ctx._cone}
        if self.den == one:
            return _poly_render(ctx, self.num)
        if len(self.den) == 1:
            # monic monomial denominator: fold as negative exponents
            (dk,) = self.den.keys()
            shifted = {tuple(a - b for a, b in zip(k, dk)): c for k, c in self.num.items()}
            return _poly_render(ctx, shifted)
        num_s = _poly_render(ctx, self.num)
        den_s = _poly_render(ctx, self.den)
        if len(self.num) > 1 or _needs_parens(num_s):
            num_s = f"({num_s})"
        den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()})"


def guard_leading_minus(text):
    """Parenthesize a leading negative term whose body contains a caret.

    In the expression grammar unary minus binds tighter than '^', so a bare
    "-x^2" would read back as (-x)^2; "-(x^2)" is unambiguous.
    """
    if text.startswith("-") and "^" in text:
        return "-(" + text[1:] + ")"
    return text


def _needs_parens(s):
    return ("+" in s) or (" - " in s) or ("/" in s) or (s.startswith("-") and "*" in s)


def _cyc_render(ctx, cyc):
    """Render a cyclotomic number; returns (text, is_sum)."""
    parts = []
    for k, c in enumerate(cyc):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            zp = "zeta" if k == 1 else f"zeta^{k}"
            if c == 1:
                parts.append(zp)
            elif c == -1:
                parts.append(f"-{zp}")
            else:
                parts.append(f"{c}*{zp}")
    if not parts:
        return "0", False
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text, len(parts) > 1


def _mono_render(ctx, key):
    factors = []
    for name, e in zip(ctx.parameters, key):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


def _poly_render(ctx, p):
    terms = []
    for key in sorted(p, reverse=True):
        cyc_s, is_sum = _cyc_render(ctx, p[key])
        mono_s = _mono_render(ctx, key)
        if not mono_s:
            terms.append(cyc_s)
        elif cyc_s == "1":
            terms.append(mono_s)
        elif cyc_s == "-1":
            terms.append(f"-{mono_s}")
        else:
            if is_sum:
                cyc_s = f"({cyc_s})"
            terms.append(f"{cyc_s}*{mono_s}")
    text = guard_leading_minus(terms[0])
    for t in terms[1:]:
        text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return text
