"""Small expression language for scalar fields on charts.

Grammar (EBNF):

    expr   := term {("+"|"-") term}
    term   := factor {("*"|"/") factor}
    factor := ["-"] base ["^" factor]
    base   := number | "i" | ident | func "(" expr ")" | "(" expr ")"

Binary +, -, *, / associate left; ^ associates right and binds tighter than
unary minus.  Identifiers are ASCII words; "i" is the imaginary unit and
"zeta" is reserved for the complex combination of a chart's designated
coordinate pair.  There is deliberately no simplification pass anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "ParseError",
    "UndeclaredIdentifierError",
    "Num",
    "Imag",
    "Var",
    "Neg",
    "Bin",
    "Call",
    "parse",
    "pretty",
    "free_identifiers",
    "substitute",
    "FUNCTIONS",
    "ANALYTIC_FUNCTIONS",
]

FUNCTIONS = frozenset(
    [
        "exp",
        "log",
        "sin",
        "cos",
        "tan",
        "sinh",
        "cosh",
        "sqrt",
        "atan",
        "re",
        "im",
        "conj",
        "abs2",
    ]
)

# Functions under which an expression in zeta stays holomorphic.
ANALYTIC_FUNCTIONS = frozenset(
    ["exp", "log", "sin", "cos", "tan", "sinh", "cosh", "sqrt", "atan"]
)


class ParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UndeclaredIdentifierError(ParseError):
    def __init__(self, name, offset):
        super().__init__(f"undeclared identifier {name!r}", offset)
        self.name = name


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str  # + - * / ^
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    fn: str
    arg: object


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", len(source) - len(stripped))
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num")), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(source)))
    return tokens


class _Parser:
    def __init__(self, source, declared):
        self.tokens = _tokenize(source)
        self.k = 0
        self.declared = frozenset(declared)

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", off)
        self.advance()

    def parse(self):
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", off)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                node = Bin(val, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                node = Bin(val, node, self.factor())
            else:
                return node

    def factor(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.advance()
            negate = True
        node = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            node = Bin("^", node, self.factor())
        if negate:
            node = Neg(node)
        return node

    def base(self):
        kind, val, off = self.advance()
        if kind == "num":
            return Num(val)
        if kind == "ident":
            if val == "i":
                return Imag()
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            if val not in self.declared:
                raise UndeclaredIdentifierError(val, off)
            return Var(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {val!r}", off)


def parse(source: str, declared) -> object:
    """Parse ``source`` into an AST; all free identifiers must be declared."""
    return _Parser(source, declared).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def pretty(node) -> str:
    """Deterministic printer; pretty(parse(pretty(e))) == pretty(e)."""
    return _pretty(node, 0)


def _pretty(node, parent_prec):
    if isinstance(node, Num):
        s = repr(node.value)
        return s
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({_pretty(node.arg, 0)})"
    if isinstance(node, Neg):
        s = "-" + _pretty(node.arg, _PREC["neg"] + 1)
        return f"({s})" if parent_prec > _PREC["neg"] else s
    if isinstance(node, Bin):
        p = _PREC[node.op]
        if node.op == "^":
            # right-associative; exponent may itself start with a factor
            s = _pretty(node.left, p + 1) + "^" + _pretty(node.right, p)
        else:
            s = _pretty(node.left, p) + node.op + _pretty(node.right, p + 1)
        return f"({s})" if parent_prec > p else s
    raise TypeError(f"not an AST node: {node!r}")


def free_identifiers(node) -> set:
    out = set()
    _walk_free(node, out)
    return out


def _walk_free(node, out):
    if isinstance(node, Var):
        out.add(node.name)
    elif isinstance(node, Neg):
        _walk_free(node.arg, out)
    elif isinstance(node, Bin):
        _walk_free(node.left, out)
        _walk_free(node.right, out)
    elif isinstance(node, Call):
        _walk_free(node.arg, out)


def substitute(node, mapping: dict):
    """Replace Var(name) by mapping[name] (an AST) wherever present."""
    if isinstance(node, Var) and node.name in mapping:
        return mapping[node.name]
    if isinstance(node, Neg):
        return Neg(substitute(node.arg, mapping))
    if isinstance(node, Bin):
        return Bin(node.op, substitute(node.left, mapping), substitute(node.right, mapping))
    if isinstance(node, Call):
        return Call(node.fn, substitute(node.arg, mapping))
    return node


def uses_complex(node) -> bool:
    """True if evaluation can leave the real scalar ring."""
    if isinstance(node, Imag):
        return True
    if isinstance(node, Var):
        return node.name == "zeta"
    if isinstance(node, Neg):
        return uses_complex(node.arg)
    if isinstance(node, Bin):
        return uses_complex(node.left) or uses_complex(node.right)
    if isinstance(node, Call):
        return uses_complex(node.arg)
    return False


def is_analytic_in_zeta(node) -> bool:
    """True if the tree touches zeta only through analytic operations."""
    if isinstance(node, (Num, Imag, Var)):
        return True
    if isinstance(node, Neg):
        return is_analytic_in_zeta(node.arg)
    if isinstance(node, Bin):
        return is_analytic_in_zeta(node.left) and is_analytic_in_zeta(node.right)
    if isinstance(node, Call):
        if node.fn not in ANALYTIC_FUNCTIONS and _mentions_zeta(node.arg):
            return False
        return is_analytic_in_zeta(node.arg)
    return True


def _mentions_zeta(node):
    return "zeta" in free_identifiers(node)
