"""Tiny expression language for curvature and torsion profiles.

Grammar (standard precedence, left associative)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := number | 's' | '(' expr ')' | '-' factor | ident '(' expr ')'

Functions: sin, cos, sinh, cosh, exp, ln.  The only variable is ``s``.

Expressions evaluate elementwise on numpy arrays, so a whole grid of arc
length values is handled in one call.
"""

from dataclasses import dataclass
import re

import numpy as np

from .errors import ProfileDomainError, ProfileSyntaxError, UnknownIdentifierError

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "exp": np.exp,
    "ln": np.log,
}

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_ATOM = 4


class Expr:
    """Base class of profile AST nodes."""

    precedence = _PREC_ATOM

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def __post_init__(self):
        v = float(self.value)
        if not np.isfinite(v) or v < 0:
            # negative literals would not survive a print/parse round trip
            raise ValueError(f"literal must be finite and nonnegative, got {self.value!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    precedence = _PREC_NEG


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in "+-*/" or len(self.op) != 1:
            raise ValueError(f"unknown operator {self.op!r}")

    @property
    def precedence(self):
        return _PREC_ADD if self.op in "+-" else _PREC_MUL


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")


S = Var()


def const(value):
    """Literal node for any finite real; negative values become ``Neg(Num(-v))``."""
    value = float(value)
    return Neg(Num(-value)) if value < 0 else Num(value)


# ---------------------------------------------------------------------------
# printing

def _format_number(v):
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def to_text(node):
    if isinstance(node, Num):
        return _format_number(node.value)
    if isinstance(node, Var):
        return "s"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        if node.operand.precedence < _PREC_NEG:
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, BinOp):
        p = node.precedence
        left = to_text(node.left)
        right = to_text(node.right)
        if node.left.precedence < p:
            left = f"({left})"
        if node.right.precedence <= p:
            right = f"({right})"
        if p == _PREC_ADD:
            return f"{left} {node.op} {right}"
        return f"{left}{node.op}{right}"
    raise TypeError(f"not a profile node: {node!r}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text):
    tokens = []
    pos = 0
    # offsets are reported in bytes of the UTF-8 encoding
    byte_offset = lambda i: len(text[:i].encode("utf-8"))  # noqa: E731
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ProfileSyntaxError(f"unexpected character {text[pos]!r}", byte_offset(pos))
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), byte_offset(pos)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.tok
        if t.text != text:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ProfileSyntaxError(f"expected {text!r}, found {found}", t.offset)
        return self.advance()

    def parse(self):
        if self.tok.kind == "end":
            raise ProfileSyntaxError("empty profile", 0)
        node = self.expr()
        if self.tok.kind != "end":
            raise ProfileSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.text == "-":
            self.advance()
            return Neg(self.factor())
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "ident":
            self.advance()
            if t.text == "s":
                return S
            if t.text not in FUNCTIONS:
                raise UnknownIdentifierError(f"unknown identifier {t.text!r}", t.offset)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(t.text, arg)
        if t.kind == "end":
            raise ProfileSyntaxError("unexpected end of input", t.offset)
        raise ProfileSyntaxError(f"unexpected {t.text!r}", t.offset)


def parse_profile(text):
    """Parse profile text into an AST; raises ProfileSyntaxError with a byte offset."""
    if not isinstance(text, str):
        raise TypeError("profile text must be a string")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation

def _first_bad(s, mask):
    mask = np.ravel(np.broadcast_to(mask, np.shape(s)))
    return float(np.ravel(s)[np.argmax(mask)])


def _check(node, s, value, reason="non-finite value"):
    bad = ~np.isfinite(value)
    if np.any(bad):
        raise ProfileDomainError(reason, to_text(node), _first_bad(s, bad))
    return value


def _eval(node, s):
    if isinstance(node, Num):
        return np.full(np.shape(s), node.value)
    if isinstance(node, Var):
        return s
    if isinstance(node, Neg):
        return -_eval(node.operand, s)
    if isinstance(node, Call):
        arg = _eval(node.arg, s)
        if node.func == "ln":
            bad = arg <= 0
            if np.any(bad):
                raise ProfileDomainError("ln of nonpositive argument", to_text(node), _first_bad(s, bad))
        with np.errstate(over="ignore", invalid="ignore"):
            return _check(node, s, FUNCTIONS[node.func](arg), "overflow")
    left = _eval(node.left, s)
    right = _eval(node.right, s)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if node.op == "+":
            out = left + right
        elif node.op == "-":
            out = left - right
        elif node.op == "*":
            out = left * right
        else:
            bad = right == 0
            if np.any(bad):
                raise ProfileDomainError("division by zero", to_text(node), _first_bad(s, bad))
            out = left / right
    return _check(node, s, out, "overflow")


def eval_profile(p, s):
    """Evaluate a profile at ``s`` (scalar or array).  Scalars give a float back."""
    arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("arc length must be finite")
    out = _eval(p, arr)
    if arr.ndim == 0:
        return float(out)
    return np.broadcast_to(out, arr.shape).astype(float, copy=True)


def is_constant(node):
    """True when the expression does not mention ``s``."""
    if isinstance(node, Var):
        return False
    if isinstance(node, Num):
        return True
    if isinstance(node, Neg):
        return is_constant(node.operand)
    if isinstance(node, Call):
        return is_constant(node.arg)
    return is_constant(node.left) and is_constant(node.right)
