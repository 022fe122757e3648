"""A small parser for differential-form expressions.

Accepted syntax, evaluated in a given :class:`DeRhamComplex`::

    q*e_z*d*(b*c - q) - e_b b (b c - q^2)
    -(q^2/12) theta b c (1 + b c) - (q mu/12)(e_a + e_c a^2 c)

Atoms are integers, ``q``, ``mu`` (= 1 - q^-2), the generators ``a b c d``,
invariant forms ``e_a``, ``e_bd``, ``e_abc`` (letters in any order, reduced
by the wedge relations), ``e_z`` (= q e_a - q^-1 e_d), ``theta``
(= e_a + e_d), the self-dual 2-form ``e_+`` (= e_ad + e_bc) and ``Top``.
Juxtaposition means the wedge product, as does ``*``.  ``^`` takes an integer exponent, negative only for invertible atoms
(scalars and ``a``, ``d``).  Division is by scalars only.
"""

from __future__ import annotations

import re

from .derham import DeRhamComplex, Form

__all__ = ["parse_form", "ExpressionError"]


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+)"
    r"|(?P<inv>e_(?:z|\+|[abcd]+))"
    r"|(?P<name>theta|mu|Top|[abcdq])"
    r"|(?P<op>[-+*/^(){}])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, cx: DeRhamComplex, tokens):
        self.cx = cx
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ExpressionError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def expr(self) -> Form:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = _add(acc, rhs, op == "-")
        return acc

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "inv", "name") or val in ("(", "{")

    # term := power ((('*'|'/')? power))*
    def term(self) -> Form:
        acc = self.power()
        while True:
            val = self.peek()[1]
            if val == "*":
                self.take()
                acc = self.cx.wedge(acc, self.power())
            elif val == "/":
                self.take()
                acc = acc * _scalar_value(self.power()).inverse()
            elif self._starts_factor():
                acc = self.cx.wedge(acc, self.power())
            else:
                return acc

    def power(self) -> Form:
        kind, val = self.peek()
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            n = self.exponent()
            return _power(self.cx, base, n, val)
        return base

    def exponent(self) -> int:
        closing = None
        if self.peek()[1] in ("{", "("):
            closing = "}" if self.take()[1] == "{" else ")"
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, val = self.take()
        if kind != "num":
            raise ExpressionError(f"exponent must be an integer, found {val!r}")
        if closing:
            self.take(closing)
        return sign * int(val)

    def atom(self) -> Form:
        kind, val = self.take()
        cx = self.cx
        if kind == "num":
            return cx.scalar(int(val))
        if val in ("(", "{"):
            inner = self.expr()
            self.take(")" if val == "(" else "}")
            return inner
        if kind == "inv":
            return _invariant(cx, val)
        if val == "q":
            return cx.scalar(cx.field.q)
        if val == "mu":
            return cx.scalar(cx.field.mu())
        if val == "theta":
            return cx.inv(cx.ext.theta)
        if val == "Top":
            return cx.inv(cx.ext.top)
        if val in "abcd":
            return cx.function(getattr(cx.alg, val))
        raise ExpressionError(f"unexpected token {val!r}")


def _add(x: Form, y: Form, subtract: bool) -> Form:
    if x.degree != y.degree:
        if x.is_zero():
            x = Form(x.cx, y.degree, {})
        elif y.is_zero():
            y = Form(y.cx, x.degree, {})
        else:
            raise ExpressionError(f"cannot add forms of degree {x.degree} and {y.degree}")
    return x - y if subtract else x + y


def _scalar_value(f: Form):
    if f.degree != 0 or any(k != 0 for k in f.vec):
        raise ExpressionError("division is only defined by nonzero scalars")
    c = f.vec.get(0)
    if c is None:
        raise ExpressionError("division by zero")
    return c


def _invariant(cx: DeRhamComplex, tok: str) -> Form:
    if tok == "e_z":
        return cx.inv(cx.ext.e_z)
    if tok == "e_+":
        return cx.inv(cx.ext.form(2, {"e_ad": 1, "e_bc": 1}))
    letters = tok[2:]
    if len(letters) > 4:
        return Form(cx, len(letters), {})
    return cx.inv(cx.ext.form(len(letters), {tok: 1}))


def _power(cx: DeRhamComplex, base: Form, n: int, name) -> Form:
    if n >= 0:
        out = cx.scalar(1)
        for _ in range(n):
            out = cx.wedge(out, base)
        return out
    if base.degree == 0 and set(base.vec) <= {0}:
        return cx.scalar(_scalar_value(base) ** n)
    if name in ("a", "d"):
        # a^r = d^r = 1 in the reduced algebra
        r = cx.r
        return _power(cx, base, n % r, name)
    raise ExpressionError(f"negative power of a non-invertible factor {name!r}")


def parse_form(cx: DeRhamComplex, text: str) -> Form:
    """Evaluate ``text`` to a :class:`Form` in the complex ``cx``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    p = _Parser(cx, tokens)
    out = p.expr()
    if p.i != len(tokens):
        raise ExpressionError(f"trailing input at token {p.tokens[p.i][1]!r}")
    return out
