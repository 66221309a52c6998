"""Expression language: parser, printer and evaluator.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | postfix
    postfix := primary ('*')*          # star: additive inverse
    primary := number | '(' expr ')' | 'sqrt' '(' expr ')'
             | 'root' '(' int ',' expr ')' | 'e'
    number  := int ['.' digits ['(' digits ')']] | int '/' int

A ``*`` is a star when the next token cannot start a primary (a number,
``(``, ``sqrt``, ``root`` or ``e``); so ``2*(3)*`` is ``2 * (3*)`` and
``x*-y`` is ``(x*) - y``. ``p/q`` without spaces is one rational literal;
``p / q`` is a division. Decimal literals are normalized as they are read,
so ``1.4(9)`` is the literal ``1.5`` and ``2.0`` is ``2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arithmetic import exact_root, interval_add, interval_div, interval_mul, interval_root, interval_sub
from .real_core import DEFAULT_CAP, Enclosure, negate
from .sup_engine import nth_root_oracle, supremum
from .tower import PeriodicDecimal, format_periodic, periodic_to_rat


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


# -- AST ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Dec:
    value: PeriodicDecimal


@dataclass(frozen=True)
class Rat:
    num: int
    den: int


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Sqrt:
    arg: Expr


@dataclass(frozen=True)
class Root:
    k: int
    arg: Expr


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class Star:
    arg: Expr


@dataclass(frozen=True)
class Bin:
    op: str
    left: Expr
    right: Expr


Expr = Union[Int, Dec, Rat, Const, Sqrt, Root, Neg, Star, Bin]

CONSTANTS = ("e",)


def Add(a, b):
    return Bin("+", a, b)


def Sub(a, b):
    return Bin("-", a, b)


def Mul(a, b):
    return Bin("*", a, b)


def Div(a, b):
    return Bin("/", a, b)


# -- tokenizer -----------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    offset: int  # byte offset
    node: Optional[Expr] = None


def _literal(ip: str, pre: Optional[str], per: Optional[str]) -> Expr:
    if pre is None:
        return Int(int(ip))
    d = PeriodicDecimal(1, int(ip), tuple(map(int, pre)), tuple(map(int, per or ""))).normalize()
    if not d.preperiod and not d.period:
        return Int(d.integer_part)
    return Dec(d)


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, n = 0, len(text)

    def offset(k: int) -> int:
        return len(text[:k].encode("utf-8"))

    def digits_from(k: int) -> int:
        while k < n and text[k].isdigit() and text[k].isascii():
            k += 1
        return k

    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c.isdigit() and c.isascii():
            j = digits_from(i)
            ip = text[i:j]
            if j < n and text[j] == ".":
                k = digits_from(j + 1)
                pre, per = text[j + 1:k], None
                if k < n and text[k] == "(":
                    m = digits_from(k + 1)
                    if m > k + 1 and m < n and text[m] == ")":
                        per, k = text[k + 1:m], m + 1
                if not pre and per is None:
                    raise ParseError("digits expected after '.'", offset(k), frozenset({"digit"}))
                tokens.append(Token("num", text[start:k], offset(start), _literal(ip, pre, per)))
                i = k
            elif j + 1 < n and text[j] == "/" and text[j + 1].isdigit():
                k = digits_from(j + 1)
                tokens.append(Token("num", text[start:k], offset(start), Rat(int(ip), int(text[j + 1:k]))))
                i = k
            else:
                tokens.append(Token("num", ip, offset(start), Int(int(ip))))
                i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], offset(start)))
            i = j
            continue
        if c in "+-*/(),":
            tokens.append(Token("op", c, offset(start)))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", offset(i))
    tokens.append(Token("end", "", len(text.encode("utf-8"))))
    return tokens


# -- parser ----------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def fail(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"unexpected {what}", t.offset, frozenset(expected))

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        raise self.fail({text})

    @staticmethod
    def starts_primary(t: Token) -> bool:
        if t.kind == "num":
            return True
        if t.kind == "op":
            return t.text == "("
        return t.kind == "ident" and t.text in ("sqrt", "root", *CONSTANTS)

    def is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.fail({"+", "-", "*", "/", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance().text
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.is_op("*", "/"):
            op = self.advance().text
            node = Bin(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.is_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Expr:
        node = self.primary()
        while self.is_op("*") and not self.starts_primary(self.peek()):
            self.advance()
            node = Star(node)
        return node

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return t.node
        if self.is_op("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "ident":
            if t.text == "sqrt":
                self.advance()
                self.expect("(")
                node = self.expr()
                self.expect(")")
                return Sqrt(node)
            if t.text == "root":
                self.advance()
                self.expect("(")
                k = self.tok
                if k.kind != "num" or not isinstance(k.node, Int):
                    raise self.fail({"integer root index"})
                self.advance()
                self.expect(",")
                node = self.expr()
                self.expect(")")
                return Root(k.node.value, node)
            if t.text in CONSTANTS:
                self.advance()
                return Const(t.text)
            raise ParseError(f"unknown name {t.text!r}", t.offset, frozenset({"sqrt", "root", *CONSTANTS}))
        raise self.fail({"number", "(", "-", "sqrt", "root", *CONSTANTS})


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- printer ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Expr) -> int:
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Star):
        return 4
    return 5


def _wrap(node: Expr, cond: bool) -> str:
    s = to_text(node)
    return f"({s})" if cond else s


def to_text(node: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(node, Int):
        return str(node.value)
    if isinstance(node, Dec):
        return format_periodic(node.value)
    if isinstance(node, Rat):
        return f"{node.num}/{node.den}"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Sqrt):
        return f"sqrt({to_text(node.arg)})"
    if isinstance(node, Root):
        return f"root({node.k}, {to_text(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, _prec(node.arg) < 3)
    if isinstance(node, Star):
        return _wrap(node.arg, _prec(node.arg) < 4) + "*"
    if isinstance(node, Bin):
        p = _PREC[node.op]
        left = _wrap(node.left, _prec(node.left) < p)
        # a negation right of an operator would read as a star after '*'
        right = _wrap(node.right, _prec(node.right) <= p or isinstance(node.right, Neg))
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------------------------


def evaluate(node: Expr, cap: int = DEFAULT_CAP) -> Enclosure:
    """Signed enclosure of the expression's value.

    Literals stay exact; roots of rational literals go through the
    digit-by-digit supremum engine, everything else through interval
    arithmetic.
    """
    if isinstance(node, Int):
        return Enclosure.from_rational(node.value)
    if isinstance(node, Dec):
        return Enclosure.from_rational(periodic_to_rat(node.value).to_fraction())
    if isinstance(node, Rat):
        if node.den == 0:
            raise ZeroDivisionError(f"literal {node.num}/0")
        return Enclosure.from_rational(Fraction(node.num, node.den))
    if isinstance(node, Const):
        from .gallery import e_real

        return e_real()
    if isinstance(node, (Sqrt, Root)):
        k = 2 if isinstance(node, Sqrt) else node.k
        if k < 1:
            raise ValueError("root index must be >= 1")
        arg = evaluate(node.arg, cap)
        if arg.exact is not None:
            if arg.exact < 0:
                raise ValueError(f"root of negative number {arg.exact}")
            r = exact_root(arg.exact, k)
            if r is not None:
                return Enclosure.from_rational(r)
            res = supremum(nth_root_oracle(arg.exact, k), cap)
            return Enclosure.from_expansion(res.expansion)
        return interval_root(arg, k, cap)
    if isinstance(node, (Neg, Star)):
        return negate(evaluate(node.arg, cap))
    if isinstance(node, Bin):
        a, b = evaluate(node.left, cap), evaluate(node.right, cap)
        if node.op == "+":
            return interval_add(a, b)
        if node.op == "-":
            return interval_sub(a, b)
        if node.op == "*":
            return interval_mul(a, b)
        return interval_div(a, b, cap)
    raise TypeError(f"not an expression node: {node!r}")
