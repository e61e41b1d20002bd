"""Expression front end shared by the CLI and the printers.

Grammar (an optional leading minus is accepted so that every printed
value re-parses):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | ident | '(' expr ')'

Rationals are integer literals or integer/integer; powers are
non-negative integers.  Identifiers must be declared by the ambient ring
context: base variables, d1..dn for the Weyl generators, X for the Ore
variable.  Operator symbols multiply like ordinary factors and are
normalized downstream, so "d1*x1" evaluates to x1*d1 + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ore import DiffOp, OreRing
from .poly import GREVLEX, SparsePoly, TermOrder


class ParseError(ValueError):
    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(f"{message} at {span[0]}..{span[1]}")
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: tuple[int, int]


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            out.append(Token("number", text[i:j], (i, j)))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], (i, j)))
            i = j
            continue
        if c in "+-*^()":
            out.append(Token(c, c, (i, i + 1)))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", (i, i + 1))
    out.append(Token("end", "", (n, n)))
    return out


# ---------- AST ----------

@dataclass(frozen=True)
class Num:
    value: Fraction
    span: tuple[int, int]


@dataclass(frozen=True)
class Var:
    name: str
    span: tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: object
    span: tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object
    span: tuple[int, int]


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    span: tuple[int, int]


class _Parser:
    def __init__(self, tokens: list[Token], known_idents):
        self.tokens = tokens
        self.pos = 0
        self.known = known_idents

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.text or 'end of input'}", t.span)
        self.pos += 1
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"trailing input {t.text!r}", t.span)
        return e

    def expr(self):
        t = self.peek()
        if t.kind == "-":
            self.take("-")
            first = Neg(self.term(), t.span)
        else:
            first = self.term()
        node = first
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind)
            rhs = self.term()
            node = BinOp(op.kind, node, rhs, op.span)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            op = self.take("*")
            node = BinOp("*", node, self.factor(), op.span)
        return node

    def factor(self):
        base = self.atom()
        if self.peek().kind == "^":
            caret = self.take("^")
            t = self.peek()
            if t.kind != "number" or "/" in t.text:
                raise ParseError("exponent must be a non-negative integer", t.span)
            self.take("number")
            return Pow(base, int(t.text), caret.span)
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "number":
            self.take("number")
            if "/" in t.text:
                num, den = t.text.split("/")
                return Num(Fraction(int(num), int(den)), t.span)
            return Num(Fraction(int(t.text)), t.span)
        if t.kind == "ident":
            self.take("ident")
            if self.known is not None and t.text not in self.known:
                raise ParseError(f"undeclared identifier {t.text!r}", t.span)
            return Var(t.text, t.span)
        if t.kind == "(":
            self.take("(")
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"expected a value, found {t.text or 'end of input'}", t.span)


def parse_expr(text: str, known_idents=None):
    """Parse to an AST; identifiers checked against the ring context."""
    if not text.strip():
        raise ParseError("empty expression", (0, max(len(text), 1)))
    return _Parser(tokenize(text), known_idents).parse()


# ---------- evaluation ----------

def evaluate_in_ring(ast, ring: OreRing) -> DiffOp:
    """Evaluate an AST to an operator in left normal form."""
    def ev(node) -> DiffOp:
        if isinstance(node, Num):
            return DiffOp.from_poly(ring, SparsePoly.constant(ring.vars, node.value))
        if isinstance(node, Var):
            if node.name in ring.vars:
                return DiffOp.from_poly(
                    ring, SparsePoly.variable(ring.vars, ring.vars.index(node.name))
                )
            if node.name in ring.op_names:
                return DiffOp.operator(ring, ring.op_names.index(node.name))
            raise ParseError(f"identifier {node.name!r} not in the ring", node.span)
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        if isinstance(node, BinOp):
            left, right = ev(node.left), ev(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        raise TypeError(f"unknown AST node {node!r}")

    return ev(ast)


def parse_operator(text: str, ring: OreRing) -> DiffOp:
    known = set(ring.vars) | set(ring.op_names)
    return evaluate_in_ring(parse_expr(text, known), ring)


def parse_polynomial(text: str, variables) -> SparsePoly:
    """Parse a plain polynomial over the given variables."""
    vs = tuple(variables)
    ring = OreRing.weyl(vs)
    op = evaluate_in_ring(parse_expr(text, set(vs)), ring)
    return op.as_polynomial()


# ---------- printing ----------

def _coeff_factor(p: SparsePoly, order: TermOrder) -> tuple[str, bool]:
    """Render a coefficient polynomial; the flag says it is a bare '1'."""
    if p == SparsePoly.one(p.vars):
        return "", True
    if len(p.terms) == 1:
        return p.to_str(order), False
    return f"({p.to_str(order)})", False


def diffop_to_str(op: DiffOp, order: TermOrder = GREVLEX) -> str:
    """Canonical text: left form lists coefficient * operators, right form
    lists operators * coefficient; terms sorted by operator exponent."""
    if op.is_zero():
        return "0"
    ring = op.ring
    parts = []
    for alpha in sorted(op.terms, key=order.key, reverse=True):
        coeff = op.terms[alpha]
        ops = []
        for k, e in enumerate(alpha):
            if e == 1:
                ops.append(ring.op_names[k])
            elif e > 1:
                ops.append(f"{ring.op_names[k]}^{e}")
        op_part = "*".join(ops)
        negate = False
        if len(coeff.terms) == 1:
            e, c = next(iter(coeff.terms.items()))
            if c < 0:
                negate = True
                coeff = -coeff
        cs, is_one = _coeff_factor(coeff, order)
        if not op_part:
            # constant operator part: sums flatten on re-parse, so the bare
            # polynomial rendering is safe here
            body = coeff.to_str(order)
            if body.startswith("-"):
                negate, body = True, body[1:]
        elif is_one:
            body = op_part
        elif op.form == "right":
            if len(coeff.terms) == 1:
                # scalars commute: numeric factor in front, monomial after
                e, c = next(iter(coeff.terms.items()))
                mono = SparsePoly.monomial(ring.vars, e)
                pieces = []
                if c != 1:
                    pieces.append(str(c))
                pieces.append(op_part)
                if not mono.is_constant():
                    pieces.append(mono.to_str(order))
                body = "*".join(pieces)
            else:
                body = f"{op_part}*{cs}"
        else:
            body = f"{cs}*{op_part}"
        if not parts:
            parts.append(f"-{body}" if negate else body)
        else:
            parts.append(f"- {body}" if negate else f"+ {body}")
    return " ".join(parts)
