"""Textual specification language: parser, pretty-printer, elaborator.

A spec file is a sequence of statements:

    set steps 60000          # file-level settings
    clock cmrTrig            # declare an event clock
    def prd50 = periodicon ms period 50
    rel R1: cmrTrig coincides prd50 prob >= 0.95

Keywords are case-insensitive and reserved; `#` starts a line comment;
the universal clock ``ms`` is predeclared.  Clock names, definition
names, and relation ids share one flat namespace and every name must
be introduced before use (no forward references).

Relation operators: subclockof, coincides, excludes, causes (weak
ordering: coincident ticks count), precedes (strict ordering).
Expression forms: a bare name, ``periodicon <expr> period N``,
``<expr> delayfor N on <atom>`` (left-associative), ``inf(e, e)``,
``sup(e, e)``, and parentheses.  Thresholds are decimal literals kept
as exact rationals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SpecSyntaxError, SpecValidationError
from .exprs import ClockExpr, DelayFor, Inf, PeriodicOn, Ref, Sup
from .relations import RelationKind, RelationSpec

__all__ = [
    "ClockDecl",
    "Definition",
    "RelationStmt",
    "Settings",
    "SpecFile",
    "parse",
    "pretty_print",
    "elaborate",
    "SPEC_FILE_EXTENSION",
]

SPEC_FILE_EXTENSION = ".prccsl"

UNIVERSAL = "ms"

KEYWORDS = frozenset(
    {
        "clock",
        "def",
        "rel",
        "set",
        "steps",
        "samples",
        "prob",
        "subclockof",
        "coincides",
        "excludes",
        "causes",
        "precedes",
        "periodicon",
        "period",
        "delayfor",
        "on",
        "inf",
        "sup",
    }
)

_RELOPS = {
    "subclockof": RelationKind.SUBCLOCK,
    "coincides": RelationKind.COINCIDENCE,
    "excludes": RelationKind.EXCLUSION,
    "causes": RelationKind.CAUSALITY,
    "precedes": RelationKind.PRECEDENCE,
}

_KIND_TO_RELOP = {kind: word for word, kind in _RELOPS.items()}


# -- AST ----------------------------------------------------------------


@dataclass(frozen=True)
class ClockDecl:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Definition:
    name: str
    expr: ClockExpr
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RelationStmt:
    id: str
    kind: RelationKind
    left: ClockExpr
    right: ClockExpr
    threshold: Fraction
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Settings:
    steps: int | None = None
    samples: int | None = None


@dataclass(frozen=True)
class SpecFile:
    clocks: tuple[ClockDecl, ...] = ()
    definitions: tuple[Definition, ...] = ()
    relations: tuple[RelationStmt, ...] = ()
    settings: Settings = Settings()


# -- tokenizer ----------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    type: str  # "kw" | "ident" | "number" | "sym" | "eof"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<nl>\n)
      | (?P<number>\d+(?:\.\d+)?)
      | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<ge>>=)
      | (?P<sym>[(),:=])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise SpecSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = match.lastgroup
        column = match.start() - line_start + 1
        value = match.group()
        if kind == "nl":
            line += 1
            line_start = match.end()
        elif kind == "number":
            tokens.append(_Token("number", value, line, column))
        elif kind == "word":
            lowered = value.lower()
            if lowered in KEYWORDS:
                tokens.append(_Token("kw", lowered, line, column))
            else:
                tokens.append(_Token("ident", value, line, column))
        elif kind in ("ge", "sym"):
            tokens.append(_Token("sym", value, line, column))
        pos = match.end()
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# -- parser -------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        # flat namespace: name -> "clock" | "def" | "rel"
        self.names: dict[str, str] = {UNIVERSAL: "clock"}
        self.defs: dict[str, ClockExpr] = {}
        self.clocks: list[ClockDecl] = []
        self.definitions: list[Definition] = []
        self.relations: list[RelationStmt] = []
        self.steps: int | None = None
        self.samples: int | None = None

    # token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, message: str, token: _Token, expected: frozenset[str] = frozenset()):
        raise SpecSyntaxError(message, token.line, token.column, expected)

    def expect_kw(self, word: str) -> _Token:
        token = self.peek()
        if token.type == "kw" and token.text == word:
            return self.advance()
        self.fail(
            f"expected '{word}', found {_describe(token)}", token, frozenset({word})
        )

    def expect_sym(self, sym: str) -> _Token:
        token = self.peek()
        if token.type == "sym" and token.text == sym:
            return self.advance()
        self.fail(
            f"expected '{sym}', found {_describe(token)}", token, frozenset({sym})
        )

    def expect_ident(self, role: str) -> _Token:
        token = self.peek()
        if token.type == "ident":
            return self.advance()
        if token.type == "kw":
            self.fail(
                f"keyword '{token.text}' cannot be used as {role}",
                token,
                frozenset({"identifier"}),
            )
        self.fail(
            f"expected {role}, found {_describe(token)}",
            token,
            frozenset({"identifier"}),
        )

    def expect_nat(self, role: str, minimum: int = 1) -> int:
        token = self.peek()
        if token.type != "number":
            self.fail(
                f"expected {role}, found {_describe(token)}",
                token,
                frozenset({"number"}),
            )
        self.advance()
        if "." in token.text:
            raise SpecValidationError(
                f"{role} must be an integer, got {token.text}", token.line, token.column
            )
        value = int(token.text)
        if value < minimum:
            raise SpecValidationError(
                f"{role} must be at least {minimum}, got {value}",
                token.line,
                token.column,
            )
        return value

    # namespace ---------------------------------------------------------

    def declare(self, token: _Token, role: str) -> str:
        name = token.text
        if name in self.names:
            raise SpecValidationError(
                f"duplicate name {name!r}", token.line, token.column
            )
        self.names[name] = role
        return name

    def resolve(self, token: _Token) -> ClockExpr:
        name = token.text
        role = self.names.get(name)
        if role is None:
            raise SpecValidationError(f"unknown name {name!r}", token.line, token.column)
        if role == "rel":
            raise SpecValidationError(
                f"{name!r} is a relation id, not a clock or definition",
                token.line,
                token.column,
            )
        return Ref(name)

    # grammar -----------------------------------------------------------

    def parse_file(self) -> SpecFile:
        while True:
            token = self.peek()
            if token.type == "eof":
                break
            if token.type != "kw" or token.text not in ("clock", "def", "rel", "set"):
                self.fail(
                    f"expected a statement, found {_describe(token)}",
                    token,
                    frozenset({"clock", "def", "rel", "set"}),
                )
            if token.text == "clock":
                self.parse_clock()
            elif token.text == "def":
                self.parse_def()
            elif token.text == "rel":
                self.parse_rel()
            else:
                self.parse_set()
        return SpecFile(
            clocks=tuple(self.clocks),
            definitions=tuple(self.definitions),
            relations=tuple(self.relations),
            settings=Settings(steps=self.steps, samples=self.samples),
        )

    def parse_clock(self) -> None:
        keyword = self.advance()
        token = self.expect_ident("a clock name")
        self.declare(token, "clock")
        self.clocks.append(ClockDecl(token.text, keyword.line, keyword.column))

    def parse_def(self) -> None:
        keyword = self.advance()
        token = self.expect_ident("a definition name")
        self.expect_sym("=")
        expr = self.parse_expr()
        self.declare(token, "def")
        self.defs[token.text] = expr
        self.definitions.append(
            Definition(token.text, expr, keyword.line, keyword.column)
        )

    def parse_rel(self) -> None:
        keyword = self.advance()
        token = self.expect_ident("a relation id")
        self.expect_sym(":")
        left = self.parse_expr()
        op = self.peek()
        if op.type != "kw" or op.text not in _RELOPS:
            self.fail(
                f"expected a relation operator, found {_describe(op)}",
                op,
                frozenset(_RELOPS),
            )
        self.advance()
        right = self.parse_expr()
        self.expect_kw("prob")
        self.expect_sym(">=")
        number = self.peek()
        if number.type != "number":
            self.fail(
                f"expected a probability, found {_describe(number)}",
                number,
                frozenset({"number"}),
            )
        self.advance()
        threshold = Fraction(number.text)
        if not 0 <= threshold <= 1:
            raise SpecValidationError(
                f"threshold out of range: {number.text}", number.line, number.column
            )
        self.declare(token, "rel")
        self.relations.append(
            RelationStmt(
                token.text,
                _RELOPS[op.text],
                left,
                right,
                threshold,
                keyword.line,
                keyword.column,
            )
        )

    def parse_set(self) -> None:
        keyword = self.advance()
        token = self.peek()
        if token.type != "kw" or token.text not in ("steps", "samples"):
            self.fail(
                f"expected 'steps' or 'samples', found {_describe(token)}",
                token,
                frozenset({"steps", "samples"}),
            )
        self.advance()
        value = self.expect_nat(f"the {token.text} value", minimum=0 if token.text == "steps" else 1)
        if token.text == "steps":
            if self.steps is not None:
                raise SpecValidationError(
                    "duplicate 'set steps'", keyword.line, keyword.column
                )
            self.steps = value
        else:
            if self.samples is not None:
                raise SpecValidationError(
                    "duplicate 'set samples'", keyword.line, keyword.column
                )
            self.samples = value

    def parse_expr(self) -> ClockExpr:
        expr = self.parse_atom()
        while True:
            token = self.peek()
            if token.type == "kw" and token.text == "delayfor":
                self.advance()
                delay = self.expect_nat("the delay")
                self.expect_kw("on")
                ref = self.parse_atom()
                expr = DelayFor(expr, delay, ref)
            else:
                return expr

    def parse_atom(self) -> ClockExpr:
        token = self.peek()
        if token.type == "ident":
            self.advance()
            return self.resolve(token)
        if token.type == "sym" and token.text == "(":
            self.advance()
            expr = self.parse_expr()
            self.expect_sym(")")
            return expr
        if token.type == "kw" and token.text == "periodicon":
            self.advance()
            base = self.parse_expr()
            self.expect_kw("period")
            period = self.expect_nat("the period")
            return PeriodicOn(base, period)
        if token.type == "kw" and token.text in ("inf", "sup"):
            self.advance()
            self.expect_sym("(")
            left = self.parse_expr()
            self.expect_sym(",")
            right = self.parse_expr()
            self.expect_sym(")")
            return Inf(left, right) if token.text == "inf" else Sup(left, right)
        self.fail(
            f"expected an expression, found {_describe(token)}",
            token,
            frozenset({"identifier", "(", "periodicon", "inf", "sup"}),
        )


def _describe(token: _Token) -> str:
    if token.type == "eof":
        return "end of file"
    if token.type == "kw":
        return f"keyword '{token.text}'"
    return repr(token.text)


def parse(text: str) -> SpecFile:
    """Parse and validate a complete specification text."""
    return _Parser(text).parse_file()


# -- pretty printer -----------------------------------------------------


def pretty_print(spec: SpecFile) -> str:
    """Render a SpecFile in canonical form.

    Statements are grouped (settings, clocks, definitions, relations)
    preserving the order within each group, compound expressions are
    fully parenthesized, and thresholds are re-rendered as exact
    decimals.  parse(pretty_print(s)) == s up to source positions.
    """
    lines: list[str] = []
    if spec.settings.steps is not None:
        lines.append(f"set steps {spec.settings.steps}")
    if spec.settings.samples is not None:
        lines.append(f"set samples {spec.settings.samples}")
    for decl in spec.clocks:
        lines.append(f"clock {decl.name}")
    for definition in spec.definitions:
        lines.append(f"def {definition.name} = {format_expr(definition.expr)}")
    for rel in spec.relations:
        lines.append(
            f"rel {rel.id}: {format_expr(rel.left)} {_KIND_TO_RELOP[rel.kind]} "
            f"{format_expr(rel.right)} prob >= {format_threshold(rel.threshold)}"
        )
    return "".join(line + "\n" for line in lines)


def format_expr(expr: ClockExpr) -> str:
    """Canonical concrete syntax of one expression."""
    if isinstance(expr, Ref):
        return expr.clock
    if isinstance(expr, PeriodicOn):
        return f"(periodicon {format_expr(expr.base)} period {expr.period})"
    if isinstance(expr, DelayFor):
        return f"({format_expr(expr.base)} delayfor {expr.delay} on {format_expr(expr.ref)})"
    if isinstance(expr, Inf):
        return f"inf({format_expr(expr.left)}, {format_expr(expr.right)})"
    if isinstance(expr, Sup):
        return f"sup({format_expr(expr.left)}, {format_expr(expr.right)})"
    raise ValueError(f"not a clock expression: {expr!r}")


def format_threshold(value: Fraction) -> str:
    """Exact decimal rendering of a rational whose denominator is 2^a 5^b."""
    denominator = value.denominator
    if denominator == 1:
        return str(value.numerator)
    twos = fives = 0
    rest = denominator
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        raise ValueError(f"{value} has no finite decimal form")
    digits = max(twos, fives)
    scaled = value.numerator * 10**digits // denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


# -- elaborator ---------------------------------------------------------


def elaborate(spec: SpecFile) -> tuple[tuple[str, ...], list[RelationSpec]]:
    """Inline definitions and produce monitorable relation specs.

    Returns the clock alphabet (the universal clock first, then the
    declarations in order) and one RelationSpec per relation statement
    with every definition reference replaced by its expression.  The
    file-level sample size, if set, applies to every relation.
    """
    defs = {definition.name: definition.expr for definition in spec.definitions}
    memo: dict[str, ClockExpr] = {}

    def inline(expr: ClockExpr) -> ClockExpr:
        if isinstance(expr, Ref):
            if expr.clock in defs:
                if expr.clock not in memo:
                    memo[expr.clock] = inline(defs[expr.clock])
                return memo[expr.clock]
            return expr
        if isinstance(expr, PeriodicOn):
            return PeriodicOn(inline(expr.base), expr.period)
        if isinstance(expr, DelayFor):
            return DelayFor(inline(expr.base), expr.delay, inline(expr.ref))
        if isinstance(expr, Inf):
            return Inf(inline(expr.left), inline(expr.right))
        return Sup(inline(expr.left), inline(expr.right))

    alphabet = (UNIVERSAL, *(decl.name for decl in spec.clocks))
    relations = [
        RelationSpec(
            id=rel.id,
            kind=rel.kind,
            left=inline(rel.left),
            right=inline(rel.right),
            threshold=rel.threshold,
            sample_size=spec.settings.samples,
        )
        for rel in spec.relations
    ]
    return alphabet, relations
