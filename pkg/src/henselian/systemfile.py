"""Plain-text system files.

Example::

    # square root of 6 in Z_5
    ring zp p=5 cap=4
    vars X
    poly f = X^2 - 6
    point 1
    square

Line types: ``ring <zp|fpt> p=<prime> cap=<N>``, ``vars <names>``,
``poly <name> = <expr>`` (repeatable), ``point <c1>, <c2>, ...``, one role
line (``square``, ``implicit r=<k>`` or ``variety dim=<k>``) and
``avoid <expr>``.  Blank lines and ``#`` comments are ignored.

Expressions use integer literals, declared variables, ``+ - * ^`` and
parentheses; over ``fpt`` the symbol ``t`` denotes the uniformizer and may
appear in coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InvalidRing, ParseError
from .mvpoly import MultiPoly, PolyMap
from .ring import RingContext

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Role:
    kind: str            # "square", "implicit" or "variety"
    k: int | None = None

    def __str__(self):
        if self.kind == "implicit":
            return f"implicit r={self.k}"
        if self.kind == "variety":
            return f"variety dim={self.k}"
        return "square"


@dataclass
class SystemSpec:
    ring: RingContext
    vars: tuple
    polys: tuple = ()                 # (name, MultiPoly) pairs
    point: tuple | None = None        # exact scalars
    role: Role | None = None
    avoid: MultiPoly | None = field(default=None)

    @property
    def names(self):
        return [name for name, _ in self.polys]

    def poly_map(self):
        return PolyMap([p for _, p in self.polys])

    def base_point(self):
        if self.point is None:
            return [self.ring.zero_scalar] * len(self.vars)
        return list(self.point)


class _Tokens:
    def __init__(self, text, line, offset):
        self.items = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            col = offset + m.start(m.lastindex)
            if m.group(1) is not None:
                self.items.append(("int", int(m.group(1)), col))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), col))
            else:
                self.items.append(("op", m.group(3), col))
            pos = m.end()
        self.end_col = offset + len(text)
        self.line = line
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else ("end", None, self.end_col)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2] + 1)


class _ExprParser:
    def __init__(self, ctx, vars, tokens):
        self.ctx = ctx
        self.vars = tuple(vars)
        self.toks = tokens

    def const(self, c):
        return MultiPoly.const(self.ctx, self.vars, c)

    def parse(self):
        value = self.expr()
        kind, val, _ = self.toks.peek()
        if kind != "end":
            raise self.toks.error(f"unexpected {val!r}")
        return value

    def expr(self):
        value = self.term()
        while self.toks.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.toks.next()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.toks.peek()[:2] == ("op", "*"):
            self.toks.next()
            value = value * self.factor()
        return value

    def factor(self):
        if self.toks.peek()[:2] == ("op", "-"):
            self.toks.next()
            return -self.factor()
        if self.toks.peek()[:2] == ("op", "+"):
            self.toks.next()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.toks.peek()[:2] == ("op", "^"):
            self.toks.next()
            kind, val, _ = tok = self.toks.next()
            if kind != "int":
                raise self.toks.error("malformed exponent (expected a non-negative integer)", tok)
            base = base ** val
        return base

    def atom(self):
        kind, val, _ = tok = self.toks.next()
        if kind == "int":
            return self.const(val)
        if kind == "name":
            if val in self.vars:
                return MultiPoly.var(self.ctx, self.vars, val)
            if val == "t" and self.ctx.is_series:
                return self.const(self.ctx.uniformizer)
            raise self.toks.error(f"undefined variable {val!r}", tok)
        if (kind, val) == ("op", "("):
            value = self.expr()
            kind2, val2, _ = tok2 = self.toks.next()
            if (kind2, val2) != ("op", ")"):
                raise self.toks.error("expected ')'", tok2)
            return value
        if kind == "end":
            raise self.toks.error("unexpected end of expression", tok)
        raise self.toks.error(f"unexpected {val!r}", tok)


def parse_polynomial(text, ctx, vars, line=1, offset=0) -> MultiPoly:
    return _ExprParser(ctx, vars, _Tokens(text, line, offset)).parse()


def parse_scalar(text, ctx, line=1, offset=0):
    return parse_polynomial(text, ctx, (), line, offset).constant_term()


def parse_vector(text, ctx, line=1, offset=0):
    """Comma-separated exact scalars, e.g. ``"5, 10"`` or ``"t, 1 + t^2"``."""
    out = []
    pos = 0
    for piece in text.split(","):
        out.append(parse_scalar(piece, ctx, line, offset + pos))
        pos += len(piece) + 1
    return out


def _keyvals(rest, line, offset, keys, cols=None):
    found = {}
    for m in re.finditer(r"\S+", rest):
        word = m.group(0)
        key, eq, val = word.partition("=")
        if not eq or key not in keys:
            raise ParseError(f"unexpected {word!r} (expected {', '.join(k + '=' for k in keys)})",
                             line, offset + m.start() + 1)
        if not re.fullmatch(r"-?\d+", val):
            raise ParseError(f"{key} must be an integer, got {val!r}", line, offset + m.start() + len(key) + 2)
        found[key] = int(val)
        if cols is not None:
            cols[key] = offset + m.start() + 1
    missing = [k for k in keys if k not in found]
    if missing:
        raise ParseError(f"missing {', '.join(missing)}", line)
    return found


def parse_system(text: str) -> SystemSpec:
    ring = vars = role = avoid = point = None
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        indent = len(stripped) - len(stripped.lstrip())
        head, _, rest = stripped.strip().partition(" ")
        offset = indent + len(head) + 1
        rest_stripped = rest.lstrip()
        offset += len(rest) - len(rest_stripped)
        rest = rest_stripped

        if head != "ring" and ring is None:
            raise ParseError("the first line must be a 'ring' header", lineno, indent + 1)
        if head in ("poly", "point", "avoid") and vars is None:
            raise ParseError(f"'{head}' before 'vars'", lineno, indent + 1)

        if head == "ring":
            if ring is not None:
                raise ParseError("duplicate ring header", lineno, indent + 1)
            backend, _, kv = rest.partition(" ")
            if backend not in ("zp", "fpt"):
                raise ParseError(f"unknown backend {backend!r} (expected zp or fpt)", lineno, offset + 1)
            cols = {}
            vals = _keyvals(kv, lineno, offset + len(backend) + 1, ("p", "cap"), cols)
            try:
                ring = RingContext(backend, vals["p"], vals["cap"])
            except InvalidRing as exc:
                bad = "cap" if str(exc).startswith("cap") else "p"
                raise ParseError(str(exc), lineno, cols[bad]) from None
        elif head == "vars":
            if vars is not None:
                raise ParseError("duplicate vars declaration", lineno, indent + 1)
            names = rest.split()
            if not names:
                raise ParseError("no variables declared", lineno, offset + 1)
            for name in names:
                if not _NAME.match(name):
                    raise ParseError(f"invalid variable name {name!r}", lineno, offset + rest.index(name) + 1)
                if name == "t" and ring.is_series:
                    raise ParseError("'t' is reserved for the uniformizer of F_p[[t]]",
                                     lineno, offset + rest.index(name) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, offset + 1)
            vars = tuple(names)
        elif head == "poly":
            name, eq, expr = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME.match(name):
                raise ParseError("expected 'poly <name> = <expression>'", lineno, offset + 1)
            if name in (n for n, _ in polys):
                raise ParseError(f"duplicate polynomial name {name!r}", lineno, offset + 1)
            expr_offset = offset + rest.index("=") + 1
            polys.append((name, parse_polynomial(expr, ring, vars, lineno, expr_offset)))
        elif head == "point":
            if point is not None:
                raise ParseError("duplicate point", lineno, indent + 1)
            point = tuple(parse_vector(rest, ring, lineno, offset))
            if len(point) != len(vars):
                raise ParseError(f"point has {len(point)} coordinates, expected {len(vars)}", lineno, offset + 1)
        elif head in ("square", "implicit", "variety"):
            if role is not None:
                raise ParseError("duplicate role annotation", lineno, indent + 1)
            if head == "square":
                if rest:
                    raise ParseError(f"unexpected {rest!r} after 'square'", lineno, offset + 1)
                role = Role("square")
            else:
                key = "r" if head == "implicit" else "dim"
                role = Role(head, _keyvals(rest, lineno, offset, (key,))[key])
        elif head == "avoid":
            if avoid is not None:
                raise ParseError("duplicate avoid polynomial", lineno, indent + 1)
            avoid = parse_polynomial(rest, ring, vars, lineno, offset)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, indent + 1)

    if ring is None:
        raise ParseError("missing ring header")
    if vars is None:
        raise ParseError("missing vars declaration")
    if not polys:
        raise ParseError("no polynomials defined")
    spec = SystemSpec(ring, vars, tuple(polys), point, role, avoid)
    _check_role(spec)
    return spec


def _check_role(spec):
    n, s = len(spec.vars), len(spec.polys)
    role = spec.role
    if role is None:
        return
    if role.kind == "square" and s != n:
        raise ParseError(f"arity mismatch: square system with {s} polynomials in {n} variables")
    if role.kind == "implicit":
        if not 0 <= role.k < n:
            raise ParseError(f"implicit r={role.k} outside [0, {n})")
        if s != n - role.k:
            raise ParseError(f"arity mismatch: implicit r={role.k} needs {n - role.k} polynomials, got {s}")
    if role.kind == "variety" and not 0 <= role.k < n:
        raise ParseError(f"variety dim={role.k} outside [0, {n})")


def print_system(spec: SystemSpec) -> str:
    ring = spec.ring
    lines = [f"ring {ring.backend} p={ring.p} cap={ring.cap}", "vars " + " ".join(spec.vars)]
    lines += [f"poly {name} = {poly}" for name, poly in spec.polys]
    if spec.point is not None:
        lines.append("point " + ", ".join(ring.format_scalar(c) for c in spec.point))
    if spec.role is not None:
        lines.append(str(spec.role))
    if spec.avoid is not None:
        lines.append(f"avoid {spec.avoid}")
    return "\n".join(lines) + "\n"
