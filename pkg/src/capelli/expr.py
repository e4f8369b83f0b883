"""Expression grammar for Weyl, enveloping-algebra and polynomial elements.

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := primary ('^' uint)*
    primary := rational | atom | '(' expr ')' | 'comm' '(' expr ',' expr ')'
    atom    := name '[' uint (',' uint)* ']'
    rational:= uint ('/' uint)?

Atoms available depend on the context: ``weyl:RxC`` (x, d), ``gl:n`` (E),
``o:N`` (F), ``gl-gl:n,k[,normalized]`` (E, Ep, x, d realized as
operators), ``o-sp:N,k`` (F, Fp, x, d) and ``poly`` (any name).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import format_rational
from .dualpair import make_dual_pair
from .poly import CommutativePolynomial
from .uea import LieAlgebraSpec, UEAElement, gl, o
from .weyl import WeylElement


class ExpressionError(ValueError):
    def __init__(self, message: str, line: int, column: int, kind: str = "syntax"):
        super().__init__(f"{kind} error at {line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind  # lexical | syntax | index | atom | context


_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>\d+)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>[-+*/^(),\[\]])""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _line_col(source: str, pos: int) -> tuple[int, int]:
    line = source.count("\n", 0, pos) + 1
    start = source.rfind("\n", 0, pos) + 1
    return line, pos - start + 1


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if not m:
            line, col = _line_col(source, pos)
            raise ExpressionError(f"unexpected character {source[pos]!r}", line, col, "lexical")
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


# AST nodes are tuples: ("num", q), ("atom", name, indices, pos),
# ("add", a, b), ("sub", a, b), ("mul", a, b), ("neg", a), ("pow", a, e),
# ("comm", a, b)


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None, kind="syntax"):
        tok = tok or self.peek()
        line, col = _line_col(self.source, tok.pos)
        return ExpressionError(message, line, col, kind)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text or tok.kind not in ("op",):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def uint(self) -> int:
        tok = self.peek()
        if tok.kind != "num":
            raise self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.take()
        return int(tok.text)

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text == "*":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.primary()
        while self.peek().text == "^":
            self.take()
            node = ("pow", node, self.uint())
        return node

    def primary(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek().text == "/":
                self.take()
                den_tok = self.peek()
                den = self.uint()
                if den == 0:
                    raise self.error("division by zero", den_tok)
                value /= den
            return ("num", value)
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "name":
            self.take()
            if tok.text == "comm" and self.peek().text == "(":
                self.take()
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return ("comm", a, b)
            indices = ()
            if self.peek().text == "[":
                self.take()
                idx = [self.uint()]
                while self.peek().text == ",":
                    self.take()
                    idx.append(self.uint())
                self.expect("]")
                indices = tuple(idx)
            return ("atom", tok.text, indices, tok.pos)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")


def parse_expression(source: str):
    """Parse ``source`` into an AST (context-free)."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# contexts


class Context:
    """Maps atoms and scalars of the grammar to algebra elements."""

    name = "abstract"

    def scalar(self, q):
        raise NotImplementedError

    def atom(self, name, indices, fail):
        raise NotImplementedError

    def commutator(self, a, b):
        return a * b - b * a


def _check_range(fail, indices, bounds):
    if len(indices) != len(bounds):
        raise fail(f"expected {len(bounds)} indices, got {len(indices)}", "index")
    for v, hi in zip(indices, bounds):
        if not (1 <= v <= hi):
            raise fail(f"index {v} outside 1..{hi}", "index")


class WeylContext(Context):
    def __init__(self, rows: int, cols: int):
        self.shape = (rows, cols)
        self.name = f"weyl:{rows}x{cols}"

    def scalar(self, q):
        return WeylElement.scalar(self.shape, q)

    def atom(self, name, indices, fail):
        if name not in ("x", "d"):
            raise fail(f"atom {name!r} not available in {self.name}", "atom")
        _check_range(fail, indices, self.shape)
        ctor = WeylElement.x if name == "x" else WeylElement.d
        return ctor(self.shape, *indices)


class UEAContext(Context):
    def __init__(self, algebra: LieAlgebraSpec):
        self.algebra = algebra
        self.letter = "E" if algebra.kind == "gl" else "F"
        self.name = f"{algebra.kind}:{algebra.size}"

    def scalar(self, q):
        return UEAElement.scalar(self.algebra, q)

    def atom(self, name, indices, fail):
        if name != self.letter:
            raise fail(f"atom {name!r} not available in {self.name}", "atom")
        n = self.algebra.size
        _check_range(fail, indices, (n, n))
        return UEAElement.generator(self.algebra, *indices)


class DualPairExprContext(WeylContext):
    """Weyl algebra with the realized generators of both members."""

    def __init__(self, pair_type: str, big: int, k: int, normalized: bool = False):
        self.ctx = make_dual_pair(pair_type, (big, k), normalized)
        super().__init__(*self.ctx.shape)
        self.big_letter = "E" if self.ctx.pair_type == "gl-gl" else "F"
        suffix = ",normalized" if normalized and self.big_letter == "E" else ""
        self.name = f"{self.ctx.pair_type}:{big},{k}{suffix}"

    def atom(self, name, indices, fail):
        if name == self.big_letter:
            n = self.ctx.right.rows
            _check_range(fail, indices, (n, n))
            return self.ctx.right[indices]
        if name == self.big_letter + "p":
            m = self.ctx.left.rows
            _check_range(fail, indices, (m, m))
            return self.ctx.left[indices]
        if name in ("x", "d"):
            return super().atom(name, indices, fail)
        raise fail(f"atom {name!r} not available in {self.name}", "atom")


class PolyContext(Context):
    name = "poly"

    def scalar(self, q):
        return CommutativePolynomial.constant(q)

    def atom(self, name, indices, fail):
        var = (name,) + tuple(indices)
        return CommutativePolynomial.variable(var)


def _ints(text, count_options, decl):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"bad algebra declaration {decl!r}") from None
    if len(vals) not in count_options or any(v < 1 for v in vals):
        raise ValueError(f"bad algebra declaration {decl!r}")
    return vals


def make_context(decl: str) -> Context:
    """Parse an algebra declaration like ``weyl:2x1``, ``gl:3``, ``o:4``,
    ``gl-gl:4,2,normalized``, ``o-sp:6,1`` or ``poly``."""
    decl = decl.strip()
    if decl == "poly":
        return PolyContext()
    head, _, rest = decl.partition(":")
    if head == "weyl":
        m = re.fullmatch(r"(\d+)x(\d+)", rest)
        if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
            raise ValueError(f"bad algebra declaration {decl!r}")
        return WeylContext(int(m.group(1)), int(m.group(2)))
    if head in ("gl", "o"):
        (n,) = _ints(rest, (1,), decl)
        if head == "o" and n < 2:
            raise ValueError("o:N needs N >= 2")
        return UEAContext(gl(n) if head == "gl" else o(n))
    if head == "gl-gl":
        normalized = rest.endswith(",normalized")
        if normalized:
            rest = rest[: -len(",normalized")]
        n, k = _ints(rest, (2,), decl)
        return DualPairExprContext("gl-gl", n, k, normalized)
    if head == "o-sp":
        N, k = _ints(rest, (2,), decl)
        return DualPairExprContext("o-sp", N, k)
    raise ValueError(f"unknown algebra declaration {decl!r}")


def evaluate(node, context: Context, source: str = ""):
    """Evaluate an AST in ``context``."""
    kind = node[0]
    if kind == "num":
        return context.scalar(node[1])
    if kind == "atom":
        _, name, indices, pos = node

        def fail(message, what):
            line, col = _line_col(source, pos) if source else (1, pos + 1)
            return ExpressionError(message, line, col, what)

        return context.atom(name, indices, fail)
    if kind == "neg":
        return -evaluate(node[1], context, source)
    if kind == "pow":
        base = evaluate(node[1], context, source)
        result = context.scalar(1)
        for _ in range(node[2]):
            result = result * base
        return result
    a = evaluate(node[1], context, source)
    b = evaluate(node[2], context, source)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "comm":
        return context.commutator(a, b)
    raise ValueError(f"unknown node {kind!r}")


def evaluate_text(source: str, context: Context | str):
    if isinstance(context, str):
        context = make_context(context)
    return evaluate(parse_expression(source), context, source)


def format_element(e) -> str:
    """Canonical text of an element; the parser reads it back."""
    if isinstance(e, (int, Fraction)):
        return format_rational(Fraction(e))
    return str(e)


def format_ast(node) -> str:
    """Fully parenthesized rendering of an AST."""
    kind = node[0]
    if kind == "num":
        return format_rational(node[1]) if node[1] >= 0 else f"({format_rational(node[1])})"
    if kind == "atom":
        _, name, indices, _ = node
        return name + ("[" + ",".join(map(str, indices)) + "]" if indices else "")
    if kind == "neg":
        return f"(-{format_ast(node[1])})"
    if kind == "pow":
        return f"({format_ast(node[1])})^{node[2]}"
    if kind == "comm":
        return f"comm({format_ast(node[1])},{format_ast(node[2])})"
    op = {"add": "+", "sub": "-", "mul": "*"}[kind]
    return f"({format_ast(node[1])} {op} {format_ast(node[2])})"


def strip_positions(node):
    """AST with atom source positions removed, for structural comparison."""
    if node[0] == "atom":
        return node[:3]
    if node[0] == "num":
        return node
    if node[0] == "pow":
        return ("pow", strip_positions(node[1]), node[2])
    return (node[0],) + tuple(strip_positions(c) for c in node[1:])
