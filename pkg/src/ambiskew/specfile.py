"""Spec-file format and the expression language.

Spec files are line-oriented sectioned key-value text (a TOML-compatible
subset): a ``[field]`` section fixing the scalar field, ``[base]`` for the
base ring, ``[sigma]`` for the automorphism and ``[ambiskew]`` for rho and
exactly one of u/v.  Expressions follow

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/'|'^^') factor)*
    factor := atom ('^' int)?
    atom   := int | ident | '(' expr ')' | '-' atom

where '^^' is the wedge product on differential forms (symbols dx, dy,
dk<i>) and '/' is restricted to scalar denominators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dataclass_field

from .baserings import BaseAutomorphism, BaseKind, BaseRing
from .calculus import Calculus, DifferentialForm
from .errors import (
    NegativePowerNotInvertible,
    SpecSyntaxError,
    UnknownSymbol,
    ValidationError,
)
from .ore import AlgebraElement, AmbiskewPresentation
from .scalars import FieldConfig, Scalar

# -- expression tokenizer -------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\^\^|\^|\+|-|\*|/|\(|\)))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(text, line=None):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise SpecSyntaxError(
                f"unexpected character {stripped[0]!r}", line=line, column=pos + 1
            )
        if m.group("int") is not None:
            tokens.append(_Token("int", m.group("int"), m.start("int") + 1))
        elif m.group("ident") is not None:
            tokens.append(_Token("ident", m.group("ident"), m.start("ident") + 1))
        else:
            tokens.append(_Token("op", m.group("op"), m.start("op") + 1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent evaluator following the grammar above."""

    def __init__(self, tokens, context, line=None):
        self.tokens = tokens
        self.pos = 0
        self.context = context
        self.line = line

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise SpecSyntaxError("unexpected end of expression", line=self.line,
                                  column=len(self.tokens) and self.tokens[-1].column)
        self.pos += 1
        return tok

    def _expect_op(self, text):
        tok = self._next()
        if tok.kind != "op" or tok.text != text:
            raise SpecSyntaxError(
                f"expected {text!r}, found {tok.text!r}", line=self.line,
                column=tok.column,
            )

    def parse(self):
        value = self.expr()
        tok = self._peek()
        if tok is not None:
            raise SpecSyntaxError(
                f"unexpected trailing {tok.text!r}", line=self.line, column=tok.column
            )
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "op" or tok.text not in "+-":
                return value
            self._next()
            rhs = self.term()
            value = self.context.add(value, rhs) if tok.text == "+" else self.context.add(
                value, self.context.neg(rhs)
            )

    def term(self):
        value = self.factor()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "op" or tok.text not in ("*", "/", "^^"):
                return value
            self._next()
            rhs = self.factor()
            if tok.text == "*":
                value = self.context.mul(value, rhs)
            elif tok.text == "/":
                value = self.context.div(value, rhs)
            else:
                value = self.context.wedge(value, rhs)

    def factor(self):
        value = self.atom()
        tok = self._peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self._next()
            sign = 1
            tok2 = self._next()
            if tok2.kind == "op" and tok2.text == "-":
                sign = -1
                tok2 = self._next()
            if tok2.kind != "int":
                raise SpecSyntaxError(
                    "exponent must be an integer", line=self.line, column=tok2.column
                )
            value = self.context.pow(value, sign * int(tok2.text))
        return value

    def atom(self):
        tok = self._next()
        if tok.kind == "int":
            return self.context.integer(int(tok.text))
        if tok.kind == "ident":
            return self.context.lookup(tok.text, tok.column, self.line)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self._expect_op(")")
            return value
        if tok.kind == "op" and tok.text == "-":
            return self.context.neg(self.atom())
        raise SpecSyntaxError(
            f"unexpected {tok.text!r}", line=self.line, column=tok.column
        )


class _EvalContext:
    """Evaluates expression nodes over scalars, elements and forms.

    mode "scalar" admits only numbers, parameters and zeta; mode "base"
    additionally admits base variables; mode "algebra" admits x, y and the
    differentials dz_i.
    """

    def __init__(self, field_config, pres=None, mode="algebra", calculus=None):
        self.field = field_config
        self.pres = pres
        self.mode = mode
        self._calculus = calculus

    def calculus(self):
        if self._calculus is None:
            self._calculus = Calculus(self.pres)
        return self._calculus

    def integer(self, n):
        return self.field.from_int(n)

    def lookup(self, name, column=None, line=None):
        if name == "zeta":
            return self.field.zeta()
        if name in self.field.parameters:
            return self.field.parameter(name)
        if self.mode == "scalar":
            raise UnknownSymbol(f"unknown scalar symbol {name!r}")
        pres = self.pres
        ring = pres.ring
        if self.mode == "algebra":
            if name in ("x", "y"):
                return pres.generator(name)
            form = self._differential(name)
            if form is not None:
                return form
        if ring.kind is BaseKind.SPLIT:
            if re.fullmatch(r"e\d+", name):
                idx = int(name[1:])
                if 0 <= idx < ring.size:
                    return pres.from_base(ring.idempotent(idx))
        elif name in ring.var_names:
            return pres.from_base(ring.variable(name))
        raise UnknownSymbol(f"unknown symbol {name!r}")

    def _differential(self, name):
        if not name.startswith("d") or len(name) < 2:
            return None
        calc_names = None
        try:
            calc_names = self.calculus().gen_names
        except Exception:
            return None
        target = name[1:]
        if target in calc_names:
            idx = calc_names.index(target) + 1
            return self.calculus().basis_form((idx,))
        m = re.fullmatch(r"dk(\d+)", name)
        if m:
            idx = int(m.group(1))
            if 1 <= idx <= self.calculus().base_count:
                return self.calculus().basis_form((idx,))
        return None

    # -- typed operations ----------------------------------------------------------

    def _promote_pair(self, a, b):
        """Promote scalars so both operands have comparable type."""
        if isinstance(a, Scalar) and isinstance(b, (AlgebraElement, DifferentialForm)):
            a = self._scalar_to(a, b)
        elif isinstance(b, Scalar) and isinstance(a, (AlgebraElement, DifferentialForm)):
            b = self._scalar_to(b, a)
        if isinstance(a, AlgebraElement) and isinstance(b, DifferentialForm):
            a = self.calculus().from_element(a)
        elif isinstance(b, AlgebraElement) and isinstance(a, DifferentialForm):
            b = self.calculus().from_element(b)
        return a, b

    def _scalar_to(self, s, like):
        if isinstance(like, AlgebraElement):
            return self.pres.from_scalar(s)
        return self.calculus().from_element(self.pres.from_scalar(s))

    def add(self, a, b):
        a, b = self._promote_pair(a, b)
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, DifferentialForm) and isinstance(b, DifferentialForm):
            raise ValidationError("use '^^' to multiply differential forms")
        if isinstance(a, DifferentialForm):
            if isinstance(b, Scalar):
                return a.scale(b)
            return a.right_mult(b)
        if isinstance(b, DifferentialForm):
            if isinstance(a, Scalar):
                return b.scale(a)
            return self.calculus().left_mult(a, b)
        if isinstance(a, Scalar):
            return b.scale(a)
        if isinstance(b, Scalar):
            return a.scale(b)
        return a * b

    def div(self, a, b):
        if isinstance(b, AlgebraElement):
            if not b.is_scalar():
                raise ValidationError("division is only defined by scalars")
            b = b.scalar_value()
        if isinstance(b, DifferentialForm):
            raise ValidationError("cannot divide by a differential form")
        if isinstance(a, Scalar):
            return a / b
        return self.mul(a, b.inv())

    def pow(self, a, n):
        if isinstance(a, Scalar):
            return a**n
        if isinstance(a, DifferentialForm):
            raise ValidationError("differential forms admit no '^' powers; use '^^'")
        if n >= 0:
            return a**n
        if a.is_scalar():
            return self.pres.from_scalar(a.scalar_value() ** n)
        if len(a.terms) == 1:
            ((key, xd, yd), c), = a.terms.items()
            if xd == 0 and yd == 0 and self.pres.ring.kind is BaseKind.LAURENT:
                inv_key = tuple(-e for e in key)
                base = self.pres.ring.monomial(inv_key, c.inv())
                return self.pres.from_base(base) ** (-n)
        raise NegativePowerNotInvertible(
            "negative powers require a Laurent monomial or a scalar"
        )

    def wedge(self, a, b):
        a, b = self._promote_pair(a, b)
        if isinstance(a, AlgebraElement):
            a = self.calculus().from_element(a)
            b = self.calculus().from_element(b)
        if not isinstance(a, DifferentialForm) or not isinstance(b, DifferentialForm):
            raise ValidationError("'^^' applies to differential forms")
        return self.calculus().wedge(a, b)


def parse_expression(text, pres, mode="algebra", line=None, calculus=None):
    """Evaluate an expression against a presentation.

    Returns a Scalar, AlgebraElement or DifferentialForm depending on the
    symbols used.
    """
    tokens = _tokenize(text, line=line)
    if not tokens:
        raise SpecSyntaxError("empty expression", line=line, column=1)
    ctx = _EvalContext(pres.field, pres, mode=mode, calculus=calculus)
    return _Parser(tokens, ctx, line=line).parse()


def parse_scalar_text(text, field_config, line=None):
    """Evaluate an expression that must denote a scalar."""
    tokens = _tokenize(text, line=line)
    if not tokens:
        raise SpecSyntaxError("empty expression", line=line, column=1)
    ctx = _EvalContext(field_config, None, mode="scalar")
    value = _Parser(tokens, ctx, line=line).parse()
    if not isinstance(value, Scalar):
        raise ValidationError(f"expression {text!r} is not a scalar")
    return value


def parse_base_text(text, pres, line=None):
    """Evaluate an expression that must land in the base ring."""
    tokens = _tokenize(text, line=line)
    if not tokens:
        raise SpecSyntaxError("empty expression", line=line, column=1)
    ctx = _EvalContext(pres.field, pres, mode="base")
    value = _Parser(tokens, ctx, line=line).parse()
    if isinstance(value, Scalar):
        return pres.ring.from_scalar(value)
    if isinstance(value, AlgebraElement):
        base = value.as_base()
        if base is not None:
            return base
    raise ValidationError(f"expression {text!r} does not lie in the base ring")


# -- spec files -----------------------------------------------------------------


@dataclass
class SpecFileData:
    name: str = ""
    field: dict = dataclass_field(default_factory=dict)
    base: dict = dataclass_field(default_factory=dict)
    sigma: dict = dataclass_field(default_factory=dict)
    ambiskew: dict = dataclass_field(default_factory=dict)


_INT_RE = re.compile(r"-?\d+$")
_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")

_SECTIONS = {"field", "base", "sigma", "ambiskew"}
_KNOWN_KEYS = {
    None: {"name"},
    "field": {"cyclotomic_order", "parameters"},
    "base": {"kind", "m", "n", "variables"},
    "sigma": {"permutation", "scaling", "shift"},
    "ambiskew": {"rho", "u", "v"},
}


def _strip_comment(line):
    out = []
    in_string = False
    for ch in line:
        if ch == '"':
            in_string = not in_string
        if ch == "#" and not in_string:
            break
        out.append(ch)
    return "".join(out)


def _parse_value(raw, lineno, column):
    raw = raw.strip()
    if not raw:
        raise SpecSyntaxError("missing value", line=lineno, column=column)
    if raw.startswith("["):
        if not raw.endswith("]"):
            raise SpecSyntaxError("unterminated array", line=lineno, column=column)
        inner = raw[1:-1].strip()
        if not inner:
            return []
        items = [item.strip() for item in inner.split(",")]
        return [_parse_value(item, lineno, column) for item in items]
    if raw.startswith('"'):
        if len(raw) < 2 or not raw.endswith('"'):
            raise SpecSyntaxError("unterminated string", line=lineno, column=column)
        return raw[1:-1]
    if _INT_RE.match(raw):
        return int(raw)
    raise SpecSyntaxError(
        f"cannot parse value {raw!r} (use an integer, a quoted string, or an array)",
        line=lineno,
        column=column,
    )


def parse_specfile_data(text) -> SpecFileData:
    """Parse the raw sectioned key-value structure, with positions in errors."""
    data = SpecFileData()
    section = None
    seen = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise SpecSyntaxError("unterminated section header", line=lineno, column=indent)
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ValidationError(f"line {lineno}: unknown section [{name}]")
            section = name
            continue
        if "=" not in stripped:
            raise SpecSyntaxError("expected 'key = value'", line=lineno, column=indent)
        key, _, value_raw = stripped.partition("=")
        key = key.strip()
        if not _KEY_RE.match(key):
            raise SpecSyntaxError(f"invalid key {key!r}", line=lineno, column=indent)
        if key not in _KNOWN_KEYS[section]:
            where = f"[{section}]" if section else "the top level"
            raise ValidationError(f"line {lineno}: unknown key {key!r} in {where}")
        if (section, key) in seen:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        seen[(section, key)] = True
        value = _parse_value(value_raw, lineno, line.index("=") + 2)
        if section is None:
            data.name = str(value)
        else:
            getattr(data, section)[key] = (value, lineno)
    return data


def _get(section, key, default=None):
    if key in section:
        return section[key][0]
    return default


def build_presentation(data: SpecFileData) -> AmbiskewPresentation:
    """Validate parsed spec data and construct the presentation."""
    order = _get(data.field, "cyclotomic_order", 1)
    if not isinstance(order, int) or order < 1:
        raise ValidationError("cyclotomic_order must be a positive integer")
    params = _get(data.field, "parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise ValidationError("parameters must be an array of strings")
    try:
        field_config = FieldConfig(order, tuple(params))
    except ValueError as exc:
        raise ValidationError(str(exc))

    kind = _get(data.base, "kind")
    if kind not in ("polynomial", "laurent", "split"):
        raise ValidationError("base kind must be polynomial, laurent or split")
    if kind == "split":
        m = _get(data.base, "m")
        if not isinstance(m, int) or m < 1:
            raise ValidationError("split base needs m >= 1")
        ring = BaseRing.split(field_config, m)
    else:
        variables = _get(data.base, "variables")
        if variables is None:
            n = _get(data.base, "n")
            if not isinstance(n, int) or n < 0:
                raise ValidationError("polynomial/laurent base needs variables or n >= 0")
            variables = [f"k{i + 1}" for i in range(n)]
        if not all(isinstance(v, str) for v in variables):
            raise ValidationError("variables must be an array of strings")
        clash = set(variables) & ({"x", "y", "zeta"} | set(params))
        if clash:
            raise ValidationError(
                f"base variable names collide with reserved symbols: {sorted(clash)}"
            )
        maker = BaseRing.polynomial if kind == "polynomial" else BaseRing.laurent
        ring = maker(field_config, tuple(variables))

    if kind == "split":
        for bad in ("scaling", "shift"):
            if bad in data.sigma:
                raise ValidationError(f"split base takes a permutation, not {bad!r}")
        perm = _get(data.sigma, "permutation", list(range(ring.size)))
        if (
            not isinstance(perm, list)
            or len(perm) != ring.size
            or sorted(perm) != list(range(ring.size))
        ):
            raise ValidationError("permutation must list each index 0..m-1 exactly once")
        sigma = BaseAutomorphism(ring, permutation=tuple(perm))
    else:
        if "permutation" in data.sigma:
            raise ValidationError("permutation applies only to a split base")
        if kind == "laurent" and "shift" in data.sigma:
            raise ValidationError("laurent base forbids sigma shift")
        scaling = _get(data.sigma, "scaling", ["1"] * ring.nvars)
        shift = _get(data.sigma, "shift", ["0"] * ring.nvars)
        if len(scaling) != ring.nvars or len(shift) != ring.nvars:
            raise ValidationError("scaling/shift arrays must match the variable count")
        lineno = data.sigma.get("scaling", (None, None))[1]
        scales = tuple(
            parse_scalar_text(str(s), field_config, line=lineno) for s in scaling
        )
        shifts = tuple(
            parse_scalar_text(str(s), field_config, line=data.sigma.get("shift", (None, None))[1])
            for s in shift
        )
        for i, a in enumerate(scales):
            if a.is_zero():
                raise ValidationError(f"sigma({ring.var_names[i]}) has zero linear part")
        sigma = BaseAutomorphism(ring, scales=scales, shifts=shifts)

    if "rho" not in data.ambiskew:
        raise ValidationError("[ambiskew] requires rho")
    rho_raw, rho_line = data.ambiskew["rho"]
    rho = parse_scalar_text(str(rho_raw), field_config, line=rho_line)
    if rho.is_zero():
        raise ValidationError("rho must be nonzero")
    has_u = "u" in data.ambiskew
    has_v = "v" in data.ambiskew
    if has_u == has_v:
        raise ValidationError("[ambiskew] requires exactly one of u and v")

    # a throwaway presentation gives the base-mode evaluator its symbols
    probe = AmbiskewPresentation(ring, sigma, rho, v=ring.zero())
    if has_u:
        raw, lineno = data.ambiskew["u"]
        u = parse_base_text(str(raw), probe, line=lineno)
        return AmbiskewPresentation(ring, sigma, rho, u=u, name=data.name)
    raw, lineno = data.ambiskew["v"]
    v = parse_base_text(str(raw), probe, line=lineno)
    return AmbiskewPresentation(ring, sigma, rho, v=v, name=data.name)


def parse_specfile(text) -> AmbiskewPresentation:
    return build_presentation(parse_specfile_data(text))


def render_specfile(pres: AmbiskewPresentation) -> str:
    """Canonical spec-file text for a presentation; parses back to it."""
    field_config = pres.field
    ring = pres.ring
    lines = []
    if pres.name:
        lines.append(f'name = "{pres.name}"')
        lines.append("")
    lines.append("[field]")
    lines.append(f"cyclotomic_order = {field_config.cyclotomic_order}")
    params = ", ".join(f'"{p}"' for p in field_config.parameters)
    lines.append(f"parameters = [{params}]")
    lines.append("")
    lines.append("[base]")
    lines.append(f'kind = "{ring.kind.value}"')
    if ring.kind is BaseKind.SPLIT:
        lines.append(f"m = {ring.size}")
    else:
        names = ", ".join(f'"{v}"' for v in ring.var_names)
        lines.append(f"variables = [{names}]")
    lines.append("")
    lines.append("[sigma]")
    if ring.kind is BaseKind.SPLIT:
        perm = ", ".join(str(i) for i in pres.sigma.permutation)
        lines.append(f"permutation = [{perm}]")
    else:
        scaling = ", ".join(f'"{a.render()}"' for a in pres.sigma.scales)
        lines.append(f"scaling = [{scaling}]")
        if any(not b.is_zero() for b in pres.sigma.shifts):
            shift = ", ".join(f'"{b.render()}"' for b in pres.sigma.shifts)
            lines.append(f"shift = [{shift}]")
    lines.append("")
    lines.append("[ambiskew]")
    lines.append(f'rho = "{pres.rho.render()}"')
    if pres.source == "u":
        lines.append(f'u = "{pres.u.render()}"')
    else:
        lines.append(f'v = "{pres.v.render()}"')
    return "\n".join(lines) + "\n"
