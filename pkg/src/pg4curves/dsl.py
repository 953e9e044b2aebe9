"""Curve description language.

A curve is written as four coordinate assignments in one parameter followed
by its domain::

    x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]

Expressions support ``+ - * / ^``, unary minus, the functions
``sin cos sinh cosh exp ln sqrt`` and the constants ``pi`` and ``e``.  The
exponent of ``^`` must be a number literal.  The parameter is ``s`` (already
arclength) or ``t`` (to be reparametrized); only one may appear.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from . import jets as J
from .errors import ArityError, DivisionByZeroJet, DomainErrorJet, ParseError, UnknownIdentifier
from .jets import Jet

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "exp", "ln", "sqrt")
CONSTANTS = {"pi": math.pi, "e": math.e}
PARAMS = ("s", "t")
COORDS = ("x", "y", "z", "w")


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" or a function name
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # add sub mul div pow
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Param, Const, Unary, Binary]
AST_TYPES = (Num, Param, Const, Unary, Binary)

_BINARY_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}
_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return _PREC[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return _PREC["neg"]
    return 5


def format_number(v: float) -> str:
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def to_text(e: Expr) -> str:
    """Print an expression so that parsing the text gives back ``e``."""
    if isinstance(e, Num):
        text = format_number(e.value)
        return f"({text})" if e.value < 0 else text
    if isinstance(e, (Param, Const)):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            inner = to_text(e.arg)
            return "-" + (inner if _prec(e.arg) >= 4 else f"({inner})")
        return f"{e.op}({to_text(e.arg)})"
    if e.op == "pow":
        base = to_text(e.left)
        if _prec(e.left) < 5 or (isinstance(e.left, Num) and e.left.value < 0):
            base = f"({base})"
        return f"{base}^{format_number(e.right.value)}"
    p = _PREC[e.op]
    left = to_text(e.left)
    if _prec(e.left) < p:
        left = f"({left})"
    right = to_text(e.right)
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left}{_BINARY_SYMBOL[e.op]}{right}"


# -- tokenizer ----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # number ident op end
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()\[\];=,])"
)


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line, column = line + 1, 1
        else:
            if kind != "ws":
                tokens.append(Token(kind, lexeme, line, column))
            column += len(lexeme)
        pos = m.end()
    tokens.append(Token("end", "", line, column))
    return tokens


# -- parser -------------------------------------------------------------------

_ATOM_START = ("number", "identifier", "(")


class _Parser:
    def __init__(self, tokens, params):
        self.tokens = tokens
        self.i = 0
        self.params = params
        self.used = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, message, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.column, expected)

    def expect_op(self, text, context=""):
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        self.fail(f"expected {text!r}{context}", (repr(text),))

    def at_op(self, *texts):
        return self.tok.kind == "op" and self.tok.text in texts

    # expr := term (("+"|"-") term)*
    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = "add" if self.advance().text == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    # term := factor (("*"|"/") factor)*
    def term(self):
        node = self.factor()
        while self.at_op("*", "/"):
            op = "mul" if self.advance().text == "*" else "div"
            node = Binary(op, node, self.factor())
        return node

    # factor := ("-")? power
    def factor(self):
        if self.at_op("-"):
            self.advance()
            return Unary("neg", self.power())
        return self.power()

    # power := atom ("^" exponent)?
    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            return Binary("pow", base, Num(self.exponent()))
        return base

    def exponent(self) -> float:
        sign = 1.0
        if self.at_op("-"):
            self.advance()
            sign = -1.0
        if self.tok.kind != "number":
            self.fail("exponent must be a number literal", ("number",))
        value = sign * float(self.advance().text)
        if self.at_op("^"):
            # right associative; literal exponents fold
            self.advance()
            value = value ** self.exponent()
            if not math.isfinite(value):
                self.fail("exponent overflows")
        return value

    def atom(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self.advance()
            name = t.text
            called = self.at_op("(")
            if name in FUNCTIONS:
                if not called:
                    raise ArityError(f"function {name!r} takes one argument in parentheses",
                                     t.line, t.column, ("'('",))
                self.advance()
                arg = self.expr()
                if self.at_op(","):
                    c = self.tok
                    raise ArityError(f"function {name!r} takes exactly one argument",
                                     c.line, c.column, ("')'",))
                self.expect_op(")", f" to close {name}(")
                return Unary(name, arg)
            if name in CONSTANTS:
                node = Const(name)
            elif name in self.params:
                self.used.setdefault(name, t)
                node = Param(name)
            else:
                raise UnknownIdentifier(name, t.line, t.column)
            if called:
                raise ArityError(f"{name!r} is not a function", t.line, t.column)
            return node
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail("expected an expression", _ATOM_START)


def parse_expr(text: str, param: str = "s") -> Expr:
    """Parse a single expression in the given parameter."""
    p = _Parser(tokenize(text), (param,))
    node = p.expr()
    if p.tok.kind != "end":
        p.fail("unexpected trailing input", ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
    return node


def free_params(e: Expr) -> set:
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, Unary):
        return free_params(e.arg)
    if isinstance(e, Binary):
        return free_params(e.left) | free_params(e.right)
    return set()


# -- evaluation ---------------------------------------------------------------

def eval_jet(e: Expr, s0: float, order: int = J.DEFAULT_ORDER) -> Jet:
    if isinstance(e, Num):
        return Jet.constant(e.value, order)
    if isinstance(e, Const):
        return Jet.constant(CONSTANTS[e.name], order)
    if isinstance(e, Param):
        return Jet.variable(s0, order)
    if isinstance(e, Unary):
        a = eval_jet(e.arg, s0, order)
        if e.op == "neg":
            return -a
        return J.ELEMENTARY[e.op](a)
    left = eval_jet(e.left, s0, order)
    if e.op == "pow":
        p = e.right.value
        if p.is_integer():
            return J.pow_int(left, int(p))
        return J.pow_real(left, p)
    right = eval_jet(e.right, s0, order)
    if e.op == "add":
        return left + right
    if e.op == "sub":
        return left - right
    if e.op == "mul":
        return left * right
    return J.jet_div(left, right)


_FLOAT_FN = {
    "sin": math.sin, "cos": math.cos, "sinh": math.sinh, "cosh": math.cosh,
    "exp": math.exp, "ln": math.log, "sqrt": math.sqrt,
}


def eval_float(e: Expr, s: float) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Const):
        return CONSTANTS[e.name]
    if isinstance(e, Param):
        return s
    if isinstance(e, Unary):
        a = eval_float(e.arg, s)
        if e.op == "neg":
            return -a
        if e.op in ("ln", "sqrt") and not a > 0.0:
            raise DomainErrorJet(f"{e.op} of non-positive value {a!r}")
        return _FLOAT_FN[e.op](a)
    left = eval_float(e.left, s)
    if e.op == "pow":
        p = e.right.value
        if not p.is_integer() and not left > 0.0:
            raise DomainErrorJet(f"real power of non-positive value {left!r}")
        if p < 0 and left == 0.0:
            raise DivisionByZeroJet("negative power of zero")
        return left ** p
    right = eval_float(e.right, s)
    if e.op == "add":
        return left + right
    if e.op == "sub":
        return left - right
    if e.op == "mul":
        return left * right
    if abs(right) <= 1e-300:
        raise DivisionByZeroJet(f"division by {right!r}")
    return left / right


# -- curves -------------------------------------------------------------------

@dataclass(frozen=True)
class CurveDef:
    param: str
    x: Expr
    y: Expr
    z: Expr
    w: Expr
    domain: tuple
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"degenerate domain {self.domain!r}")

    @property
    def components(self):
        return (self.x, self.y, self.z, self.w)

    def coordinate_jets(self, t0: float, order: int = J.DEFAULT_ORDER):
        return tuple(eval_jet(e, t0, order) for e in self.components)

    def evaluate(self, t: float):
        return tuple(eval_float(e, t) for e in self.components)

    def __str__(self):
        parts = "; ".join(f"{c}={to_text(e)}" for c, e in zip(COORDS, self.components))
        a, b = self.domain
        return f"{parts} on [{format_number(float(a))}, {format_number(float(b))}]"

    def to_json(self) -> dict:
        out = {"label": self.label or "", "param": self.param}
        for c, e in zip(COORDS, self.components):
            out[c] = to_text(e)
        out["domain"] = [float(self.domain[0]), float(self.domain[1])]
        return out


def _signed_number(p: _Parser) -> float:
    sign = 1.0
    if p.at_op("-", "+"):
        sign = -1.0 if p.advance().text == "-" else 1.0
    if p.tok.kind != "number":
        p.fail("expected a number", ("number",))
    return sign * float(p.advance().text)


def parse_curve(text: str, label: Optional[str] = None) -> CurveDef:
    p = _Parser(tokenize(text), PARAMS)
    exprs = {}
    for k in range(4):
        if k:
            p.expect_op(";", " between coordinate assignments")
        t = p.tok
        if t.kind != "ident" or t.text not in COORDS:
            p.fail("expected a coordinate name", tuple(f"'{c}'" for c in COORDS))
        if t.text in exprs:
            raise ParseError(f"coordinate {t.text!r} assigned twice", t.line, t.column)
        p.advance()
        p.expect_op("=")
        exprs[t.text] = p.expr()
    if not (p.tok.kind == "ident" and p.tok.text == "on"):
        p.fail("expected the domain clause", ("'on'", "'+'", "'-'", "'*'", "'/'"))
    p.advance()
    start = p.expect_op("[")
    a = _signed_number(p)
    p.expect_op(",")
    b = _signed_number(p)
    p.expect_op("]")
    if p.tok.kind != "end":
        p.fail("unexpected trailing input", ("end of input",))
    if not a < b:
        raise ParseError(f"empty domain [{a!r}, {b!r}]", start.line, start.column)
    if len(p.used) > 1:
        second = max(p.used.values(), key=lambda tk: (tk.line, tk.column))
        raise UnknownIdentifier(second.text, second.line, second.column)
    param = next(iter(p.used), "s")
    return CurveDef(param, exprs["x"], exprs["y"], exprs["z"], exprs["w"], (a, b), label)


def curve_from_json(obj: dict) -> CurveDef:
    if not isinstance(obj, dict):
        raise ParseError("curve file must hold a JSON object")
    param = obj.get("param", "s")
    if param not in PARAMS:
        raise ParseError(f"param must be 's' or 't', got {param!r}")
    exprs = []
    for c in COORDS:
        if c not in obj:
            raise ParseError(f"missing component {c!r}", expected=(f"'{c}'",))
        src = obj[c]
        if isinstance(src, (int, float)) and not isinstance(src, bool):
            src = format_number(float(src))
        if not isinstance(src, str):
            raise ParseError(f"component {c!r} must be a string")
        try:
            exprs.append(parse_expr(src, param))
        except ParseError as err:
            err.args = (f"component {c!r}: {err.args[0]}",)
            raise
    dom = obj.get("domain")
    if (not isinstance(dom, (list, tuple)) or len(dom) != 2
            or not all(isinstance(v, (int, float)) for v in dom)):
        raise ParseError("domain must be a two-element numeric list")
    a, b = float(dom[0]), float(dom[1])
    if not a < b:
        raise ParseError(f"empty domain [{a!r}, {b!r}]")
    return CurveDef(param, *exprs, (a, b), obj.get("label") or None)


def load_curve(path) -> CurveDef:
    """Read a curve from a JSON curve file or a text file in the curve grammar."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(f"invalid JSON: {err.msg}", err.lineno, err.colno) from None
        return curve_from_json(obj)
    return parse_curve(text.strip(), label=path.stem)
