r"""Parser and finite-model evaluator for loop identities and quasi-identities.

Grammar (one statement per line):

    statement   := equations [ '=>' conclusion ] | conclusion
    equations   := equation ( '&' equation )*          hypotheses
    conclusion  := equation [ '|' equation ]           at most two alternatives
    equation    := term '=' term
    term        := multerm ( ('\' | '/') multerm )*    left/right division
    multerm     := postfix ( '*' postfix )*
    postfix     := primary ( '^' [-]digits )*          |exponent| <= 16
    primary     := '1' | name | name '(' term (',' term)* ')' | '(' term ')'

All binary operators are left-associative; postfix binds tighter than '*',
which binds tighter than the divisions.  `x \ y` is the unique z with
x*z = y and `y / x` the unique z with z*x = y, so the inverse translations
are expressible without a permutation-valued term language.  Macros are
declared on their own lines as ``let name(args) := term`` before first use;
a line may carry an optional ``name:`` label.  ``#`` starts a comment.

A statement quantifies universally over its free variables.  Evaluation on a
loop tries every assignment in lexicographic order (variables ordered by
first appearance) and reports the first counterexample, if any.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Union

from .table import LoopTable, LoopError, NoTwoSidedInverse, NotAutomorphicWarning

MAX_EXPONENT = 16
DEFAULT_VARIABLE_CAP = 4


class ParseError(LoopError):
    def __init__(self, message: str, pos: int, expected: tuple[str, ...] = ()):
        self.pos = pos
        self.expected = expected
        text = f"{message} at column {pos + 1}"
        if expected:
            text += f" (expected {', '.join(expected)})"
        super().__init__(text)


class InverseUnavailable(LoopError):
    def __init__(self, element: int, loop: LoopTable):
        self.element = element
        self.loop = loop
        super().__init__(
            f"element {element + 1} of {loop.name or 'the loop'} has no "
            "two-sided inverse; the statement is not evaluable"
        )


class VariableCapExceeded(LoopError):
    pass


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class LDiv:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class RDiv:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inv:
    arg: "Term"


@dataclass(frozen=True)
class Pow:
    arg: "Term"
    exponent: int


@dataclass(frozen=True)
class MacroCall:
    name: str
    args: tuple["Term", ...]


Term = Union[Var, One, Mul, LDiv, RDiv, Inv, Pow, MacroCall]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class MacroDef:
    name: str
    params: tuple[str, ...]
    body: Term  # macro-free


@dataclass
class IdentityStatement:
    variables: tuple[str, ...]
    hypotheses: tuple[Equation, ...]
    conclusion: tuple[Equation, ...]  # one equation or a 2-way disjunction
    name: str | None = field(default=None, compare=False)
    macros: Mapping[str, MacroDef] = field(default_factory=dict, compare=False)
    line: int | None = field(default=None, compare=False)

    def label(self) -> str:
        if self.name:
            return self.name
        if self.line is not None:
            return f"line {self.line}"
        return "<statement>"


@dataclass
class Counterexample:
    assignment: dict[str, int]

    def items(self):
        return sorted(self.assignment.items())


# ---------------------------------------------------------------------------
# lexer

_SINGLE = {
    "*": "STAR",
    "\\": "BSLASH",
    "/": "SLASH",
    "(": "LPAREN",
    ")": "RPAREN",
    "&": "AMP",
    "|": "PIPE",
    ",": "COMMA",
}


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "#":
            break
        elif c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("NAME", text[i:j], i))
            i = j
        elif c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            out.append(("INT", int(text[i:j]), i))
            i = j
        elif c == "^":
            j = i + 1
            if j < n and text[j] == "-":
                j += 1
            k = j
            while k < n and text[k].isdigit():
                k += 1
            if k == j:
                raise ParseError("malformed exponent", i, ("integer",))
            value = int(text[i + 1 : k])
            if abs(value) > MAX_EXPONENT:
                raise ParseError(f"exponent {value} out of range", i)
            out.append(("POW", value, i))
            i = k
        elif c == ":" and i + 1 < n and text[i + 1] == "=":
            out.append(("ASSIGN", ":=", i))
            i += 2
        elif c == ":":
            out.append(("COLON", ":", i))
            i += 1
        elif c == "=" and i + 1 < n and text[i + 1] == ">":
            out.append(("IMPLIES", "=>", i))
            i += 2
        elif c == "=":
            out.append(("EQ", "=", i))
            i += 1
        elif c in _SINGLE:
            out.append((_SINGLE[c], c, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    out.append(("EOF", None, n))
    return out


class _Parser:
    def __init__(self, tokens, macros: Mapping[str, MacroDef]):
        self.tokens = tokens
        self.i = 0
        self.macros = macros

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        if self.peek() != kind:
            _, value, pos = self.tokens[self.i]
            raise ParseError(f"unexpected {value!r}", pos, (kind,))
        return self.next()

    def statement(self, name: str | None) -> IdentityStatement:
        equations = [self.equation()]
        while self.peek() == "AMP":
            self.next()
            equations.append(self.equation())
        hypotheses: tuple[Equation, ...] = ()
        if self.peek() == "IMPLIES":
            self.next()
            hypotheses = tuple(equations)
            conclusion = [self.equation()]
        else:
            if len(equations) > 1:
                _, _, pos = self.tokens[self.i]
                raise ParseError(
                    "hypothesis conjunction requires an implication", pos, ("=>",)
                )
            conclusion = equations
        if self.peek() == "PIPE":
            self.next()
            conclusion.append(self.equation())
        if self.peek() == "PIPE":
            _, _, pos = self.tokens[self.i]
            raise ParseError("at most two alternatives in a conclusion", pos)
        self.expect("EOF")
        stmt = IdentityStatement(
            variables=(),
            hypotheses=hypotheses,
            conclusion=tuple(conclusion),
            name=name,
            macros=dict(self.macros),
        )
        stmt.variables = _free_variables(stmt)
        return stmt

    def equation(self) -> Equation:
        lhs = self.term()
        self.expect("EQ")
        rhs = self.term()
        return Equation(lhs, rhs)

    def term(self) -> Term:
        node = self.multerm()
        while self.peek() in ("BSLASH", "SLASH"):
            kind, _, _ = self.next()
            rhs = self.multerm()
            node = LDiv(node, rhs) if kind == "BSLASH" else RDiv(node, rhs)
        return node

    def multerm(self) -> Term:
        node = self.postfix()
        while self.peek() == "STAR":
            self.next()
            node = Mul(node, self.postfix())
        return node

    def postfix(self) -> Term:
        node = self.primary()
        while self.peek() == "POW":
            _, value, _ = self.next()
            node = Inv(node) if value == -1 else Pow(node, value)
        return node

    def primary(self) -> Term:
        kind, value, pos = self.next()
        if kind == "INT":
            if value != 1:
                raise ParseError("only the constant 1 is a valid literal", pos)
            return One()
        if kind == "LPAREN":
            node = self.term()
            self.expect("RPAREN")
            return node
        if kind == "NAME":
            if self.peek() != "LPAREN":
                return Var(value)
            self.next()
            args = [self.term()]
            while self.peek() == "COMMA":
                self.next()
                args.append(self.term())
            self.expect("RPAREN")
            macro = self.macros.get(value)
            if macro is None:
                raise ParseError(f"unknown macro {value!r}", pos)
            if len(args) != len(macro.params):
                raise ParseError(
                    f"macro {value!r} takes {len(macro.params)} arguments, "
                    f"got {len(args)}",
                    pos,
                )
            return MacroCall(value, tuple(args))
        raise ParseError(
            f"unexpected {value!r}", pos, ("1", "name", "(")
        )


def _walk(term: Term) -> Iterator[Term]:
    yield term
    if isinstance(term, (Mul, LDiv, RDiv)):
        yield from _walk(term.left)
        yield from _walk(term.right)
    elif isinstance(term, (Inv, Pow)):
        yield from _walk(term.arg)
    elif isinstance(term, MacroCall):
        for arg in term.args:
            yield from _walk(arg)


def _free_variables(stmt: IdentityStatement) -> tuple[str, ...]:
    seen: list[str] = []
    for eq in (*stmt.hypotheses, *stmt.conclusion):
        for term in (eq.lhs, eq.rhs):
            for node in _walk(term):
                if isinstance(node, Var) and node.name not in seen:
                    seen.append(node.name)
    return tuple(seen)


def _split_label(text: str) -> tuple[str | None, str]:
    # An optional ``name:`` prefix; ':' otherwise only occurs in ':=' lines.
    i = text.find(":")
    if i > 0 and (i + 1 >= len(text) or text[i + 1] != "="):
        label = text[:i].strip()
        if label:
            return label, text[i + 1 :]
    return None, text


def parse_identity(
    text: str,
    macros: Mapping[str, MacroDef] | None = None,
    name: str | None = None,
) -> IdentityStatement:
    """Parse a single statement; `macros` supplies the definitions it may use."""
    label, body = _split_label(text)
    if label is not None:
        name = label
    tokens = _tokenize(body)
    parser = _Parser(tokens, macros or {})
    return parser.statement(name)


def parse_macro(text: str, macros: Mapping[str, MacroDef] | None = None) -> MacroDef:
    """Parse a ``let name(params) := term`` line.

    The body is expanded against the already-known macros at definition
    time, so stored bodies are always macro-free.
    """
    tokens = _tokenize(text)
    parser = _Parser(tokens, macros or {})
    kind, value, pos = parser.next()
    if kind != "NAME" or value != "let":
        raise ParseError("macro definitions start with 'let'", pos)
    _, mname, pos = parser.expect("NAME")
    parser.expect("LPAREN")
    params = [parser.expect("NAME")[1]]
    while parser.peek() == "COMMA":
        parser.next()
        params.append(parser.expect("NAME")[1])
    parser.expect("RPAREN")
    parser.expect("ASSIGN")
    body = parser.term()
    parser.expect("EOF")
    if len(set(params)) != len(params):
        raise ParseError(f"duplicate parameter in macro {mname!r}", pos)
    return MacroDef(mname, tuple(params), expand_term(body, parser.macros))


def parse_identity_file(text: str) -> list[IdentityStatement]:
    """Parse a whole identities file: comments, let-lines, then statements."""
    macros: dict[str, MacroDef] = {}
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.split(maxsplit=1)[0] == "let":
                macro = parse_macro(line, macros)
                macros[macro.name] = macro
            else:
                stmt = parse_identity(line, macros)
                stmt.line = lineno
                statements.append(stmt)
        except ParseError as err:
            raise ParseError(f"line {lineno}: {err}", err.pos) from err
    return statements


# ---------------------------------------------------------------------------
# printing

def _prec(term: Term) -> int:
    if isinstance(term, Mul):
        return 2
    if isinstance(term, (LDiv, RDiv)):
        return 1
    return 3


def term_to_text(term: Term) -> str:
    def sub(t: Term, minp: int) -> str:
        s = term_to_text(t)
        return f"({s})" if _prec(t) < minp else s

    if isinstance(term, Var):
        return term.name
    if isinstance(term, One):
        return "1"
    if isinstance(term, Mul):
        return f"{sub(term.left, 2)} * {sub(term.right, 3)}"
    # division operands are always parenthesized unless atomic; bare mixed
    # chains like "x \ y * x" are valid input but too easy to misread
    if isinstance(term, LDiv):
        return f"{sub(term.left, 3)} \\ {sub(term.right, 3)}"
    if isinstance(term, RDiv):
        return f"{sub(term.left, 3)} / {sub(term.right, 3)}"
    if isinstance(term, Inv):
        return f"{sub(term.arg, 3)}^-1"
    if isinstance(term, Pow):
        return f"{sub(term.arg, 3)}^{term.exponent}"
    if isinstance(term, MacroCall):
        return f"{term.name}({', '.join(term_to_text(a) for a in term.args)})"
    raise TypeError(f"not a term: {term!r}")


def equation_to_text(eq: Equation) -> str:
    return f"{term_to_text(eq.lhs)} = {term_to_text(eq.rhs)}"


def statement_to_text(stmt: IdentityStatement) -> str:
    concl = " | ".join(equation_to_text(eq) for eq in stmt.conclusion)
    if stmt.hypotheses:
        hyps = " & ".join(equation_to_text(eq) for eq in stmt.hypotheses)
        return f"{hyps} => {concl}"
    return concl


def macro_to_text(macro: MacroDef) -> str:
    return f"let {macro.name}({', '.join(macro.params)}) := {term_to_text(macro.body)}"


# ---------------------------------------------------------------------------
# evaluation

def expand_term(term: Term, macros: Mapping[str, MacroDef]) -> Term:
    """Replace macro calls by their bodies; the result is macro-free."""
    if isinstance(term, (Var, One)):
        return term
    if isinstance(term, Mul):
        return Mul(expand_term(term.left, macros), expand_term(term.right, macros))
    if isinstance(term, LDiv):
        return LDiv(expand_term(term.left, macros), expand_term(term.right, macros))
    if isinstance(term, RDiv):
        return RDiv(expand_term(term.left, macros), expand_term(term.right, macros))
    if isinstance(term, Inv):
        return Inv(expand_term(term.arg, macros))
    if isinstance(term, Pow):
        return Pow(expand_term(term.arg, macros), term.exponent)
    if isinstance(term, MacroCall):
        macro = macros.get(term.name)
        if macro is None:
            raise LoopError(f"undefined macro {term.name!r}")
        args = {
            p: expand_term(a, macros) for p, a in zip(macro.params, term.args)
        }
        return _substitute(macro.body, args)
    raise TypeError(f"not a term: {term!r}")


def _substitute(body: Term, args: Mapping[str, Term]) -> Term:
    if isinstance(body, Var):
        return args.get(body.name, body)
    if isinstance(body, One):
        return body
    if isinstance(body, Mul):
        return Mul(_substitute(body.left, args), _substitute(body.right, args))
    if isinstance(body, LDiv):
        return LDiv(_substitute(body.left, args), _substitute(body.right, args))
    if isinstance(body, RDiv):
        return RDiv(_substitute(body.left, args), _substitute(body.right, args))
    if isinstance(body, Inv):
        return Inv(_substitute(body.arg, args))
    if isinstance(body, Pow):
        return Pow(_substitute(body.arg, args), body.exponent)
    raise TypeError(f"macro bodies are macro-free; got {body!r}")


def eval_term(L: LoopTable, term: Term, env: Mapping[str, int]) -> int:
    """Evaluate a macro-free term under an assignment of elements to variables."""
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, One):
        return L.identity
    if isinstance(term, Mul):
        return L.table[eval_term(L, term.left, env)][eval_term(L, term.right, env)]
    if isinstance(term, LDiv):
        return L.ldiv(eval_term(L, term.left, env), eval_term(L, term.right, env))
    if isinstance(term, RDiv):
        # t1 / t2 is the z with z*t2 = t1, i.e. rdiv(divisor=t2, target=t1)
        return L.rdiv(eval_term(L, term.right, env), eval_term(L, term.left, env))
    try:
        if isinstance(term, Inv):
            return L.inverse(eval_term(L, term.arg, env))
        if isinstance(term, Pow):
            return L.power(eval_term(L, term.arg, env), term.exponent)
    except NoTwoSidedInverse as err:
        raise InverseUnavailable(err.element, L) from err
    raise TypeError(f"not an evaluable term: {term!r}")


def evaluate(
    L: LoopTable,
    stmt: IdentityStatement,
    max_vars: int = DEFAULT_VARIABLE_CAP,
    automorphic: bool | None = None,
) -> Counterexample | None:
    """Check `stmt` over all assignments; None means it holds.

    Assignments are tried in lexicographic order over the statement's
    variables, hypotheses filter assignments, and the first falsified
    conclusion is returned.  Statements built on the inverse middle
    translation are only sound on automorphic loops; pass
    ``automorphic=True`` once that has been verified to silence the warning.
    """
    names = stmt.variables
    if len(names) > max_vars:
        raise VariableCapExceeded(
            f"{stmt.label()} has {len(names)} variables (cap {max_vars})"
        )
    if automorphic is not True and any(
        isinstance(node, MacroCall) and node.name == "T_inv"
        for eq in (*stmt.hypotheses, *stmt.conclusion)
        for term in (eq.lhs, eq.rhs)
        for node in _walk(term)
    ):
        warnings.warn(
            f"{stmt.label()} uses the inverse middle translation, which is "
            "only sound on automorphic loops; the loop has not been verified "
            "automorphic",
            NotAutomorphicWarning,
            stacklevel=2,
        )
    hyps = [
        (expand_term(eq.lhs, stmt.macros), expand_term(eq.rhs, stmt.macros))
        for eq in stmt.hypotheses
    ]
    concl = [
        (expand_term(eq.lhs, stmt.macros), expand_term(eq.rhs, stmt.macros))
        for eq in stmt.conclusion
    ]
    for combo in product(range(L.order), repeat=len(names)):
        env = dict(zip(names, combo))
        if any(
            eval_term(L, lhs, env) != eval_term(L, rhs, env) for lhs, rhs in hyps
        ):
            continue
        if any(eval_term(L, lhs, env) == eval_term(L, rhs, env) for lhs, rhs in concl):
            continue
        return Counterexample(env)
    return None


def holds(L: LoopTable, stmt: IdentityStatement, **kwargs) -> bool:
    return evaluate(L, stmt, **kwargs) is None


# ---------------------------------------------------------------------------
# builtin corpus

BUILTIN_MACRO_LINES = (
    "let R_inv(y, x) := y / x",
    r"let L_inv(y, x) := x \ y",
    r"let T(y, x) := x \ (y * x)",
    r"let T_inv(y, x) := x^-1 \ (y * x^-1)",
)

# Statement texts are stored in the printer's canonical form (binary
# operators left-associative, minimal parentheses), so printing a parsed
# statement reproduces the stored text exactly.
_BUILTIN_TEXTS = [
    ("lemma31_a", "(x * y)^2 = x * R_inv(y, x^-1) * y"),
    ("lemma31_b", "(x * y)^2 = x * L_inv(x * y, y^-1)"),
    ("lemma31_c", "(x * y * x^-1)^2 = x * y * (y * x^-1)"),
    ("lemma31_d", "R_inv(x^2, y) = R_inv(x, R_inv(x, y)^-1)"),
    ("lemma31_e", "y * x * x^-1 = x^-1 * (x * y)"),
    ("lemma31_f", "x^2 = R_inv(x, y) * L_inv(x, y^-1)"),
    ("lemma31_g", "y^2 * x * x^-1 = y * x * (x^-1 * y)"),
    ("lemma31_h", "y^2 * x * x^-1 = y * x^-1 * (x * y)"),
    ("cor32_a", "x^-1 * (x * y^2) = x * y * (x^-1 * y) => x * y = y * x"),
    ("cor32_b", "x^-1 * (x * y^2) = x^-1 * y * (x * y) => x * y = y * x"),
    ("lemma34_a", "R_inv(x, R_inv(x, y)^-1)^-1 * R_inv(x, y) = R_inv(x, y)^-1 * y^-1"),
    ("lemma34_b", "R_inv(R_inv(x, x * y)^-1, x^-1)^-1 * x = R_inv(x, y * x)"),
    ("lemma34_c", "R_inv(x * R_inv(y, z) * z, y) = R_inv(x * z, y) * R_inv(z, y)^-1"),
    ("lemma34_d", "R_inv(x * y, z) * R_inv(y, z)^-1 = R_inv(x, z) * R_inv(y, z)^-1 * y"),
    (
        "lemma34_e",
        "x^-1 * (R_inv(x, T_inv(y, x)) * R_inv(R_inv(y, x), T_inv(y, x))^-1) = "
        "R_inv(x, T_inv(y, x)) * R_inv(y, T_inv(y, x))^-1",
    ),
    ("lemma34_f", "R_inv(R_inv(x, x * y)^-1, R_inv(y, x * y) * R_inv(x, x * y)^-1) = x"),
    ("prop30", "R_inv(x, T_inv(x, y)) * y = T_inv(y, x)"),
    ("aaip", "(x * y)^-1 = y^-1 * x^-1"),
    ("aaip_cor", "L_inv(y, x)^-1 = R_inv(y^-1, x^-1)"),
    ("flexibility", "x * (y * x) = x * y * x"),
    ("tx_inv", "T(T(y, x), x^-1) = y"),
    ("co1_fwd", "x * (x * y) = y * x * x => x * y = y * x"),
    ("co1_bwd", "x * y = y * x => x * (x * y) = y * x * x"),
    ("theorem31_fwd", "x * (x * y) = y * x * x => x^2 * y = y * x^2"),
    ("theorem31_bwd", "x^2 * y = y * x^2 => x * (x * y) = y * x * x"),
]

for _m in range(-2, 3):
    for _n in range(-2, 3):
        _BUILTIN_TEXTS.append(
            (f"prop22_a[{_m},{_n}]", f"x^{_m} * (x^{_n} * y) = x^{_n} * (x^{_m} * y)")
        )
for _m in range(-2, 3):
    for _n in range(-2, 3):
        _BUILTIN_TEXTS.append(
            (f"prop22_b[{_m},{_n}]", f"y * x^{_m} * x^{_n} = y * x^{_n} * x^{_m}")
        )
for _m in range(-2, 3):
    for _n in range(-2, 3):
        _BUILTIN_TEXTS.append(
            (f"prop22_c[{_m},{_n}]", f"x^{_m} * y * x^{_n} = x^{_m} * (y * x^{_n})")
        )
_BUILTIN_TEXTS.append(("prop22_d", "x * (y * x * (z * x)) = x * y * (x * z) * x"))
del _m, _n


@lru_cache(maxsize=1)
def builtin_macros() -> dict[str, MacroDef]:
    macros: dict[str, MacroDef] = {}
    for line in BUILTIN_MACRO_LINES:
        macro = parse_macro(line, macros)
        macros[macro.name] = macro
    return macros


@lru_cache(maxsize=1)
def builtin_library() -> tuple[IdentityStatement, ...]:
    """The named statements that hold in every automorphic loop.

    Every statement here is a theorem for automorphic loops (the cor32/co1/
    theorem31 quasi-identities in both directions, the two lemma families,
    AAIP and its corollary, flexibility, the middle-translation inverse law,
    and the translation power-commuting family).
    """
    macros = builtin_macros()
    return tuple(
        parse_identity(text, macros, name=name) for name, text in _BUILTIN_TEXTS
    )
