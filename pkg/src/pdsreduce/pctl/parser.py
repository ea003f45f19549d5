"""Text syntax for PCTL formulas.

    state  ::= state '|' state | state '&' state | '!' state
             | 'true' | 'false' | atom | 'P{' op r '}[' path ']' | '(' state ')'
    path   ::= 'X' state | state 'U' state
    op     ::= '>' | '=' | '>=' | '≥'

``r`` is an integer or ``p/q``.  Atoms are stack-symbol names such as
``C``, ``Z'``, ``G1^2``, ``<A,•>`` or ``X<A,B>`` (``.`` may be written for
``•``).  Inside ``[...]`` the path grammar is read as PCTL*: boolean
combinations of path formulas are accepted and produce :class:`StarPath`
nodes, which the evaluator rejects.

Example, the reduction formula for t = 1/3::

    P{>0}[true U (C & P{=1}[X (P{=1/6}[phi1] & P{=1/3}[phi2])])]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .ast import And, Atom, Next, Not, Prob, StarPath, StateFormula, TrueF, Until

RESERVED = {"true", "false", "P", "X", "U"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sym>X?<[AB•.],[AB•.]>)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<op>>=|≥|>|=)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:\^\d+)?'*)
  | (?P<punct>[{}\[\]()&|!])
    """,
    re.VERBOSE,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text[:pos]}⟨here⟩{text[pos:]}")


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "sym":
                value = value.replace(".", "•")
            elif kind == "ident" and value in RESERVED:
                kind = value
            toks.append(_Tok(kind, value, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


def _is_state(x) -> bool:
    return isinstance(x, StateFormula)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise FormulaSyntaxError(message, tok.pos, self.text)

    def accept(self, value: str) -> bool:
        if self.tok.value == value and self.tok.kind not in ("sym", "num"):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> _Tok:
        tok = self.tok
        if not self.accept(value):
            self.error(f"expected {value!r}, found {tok.value or 'end of input'!r}")
        return tok

    # state level

    def state(self) -> StateFormula:
        left = self.state_and()
        while self.accept("|"):
            right = self.state_and()
            left = Not(And(Not(left), Not(right)))
        return left

    def state_and(self) -> StateFormula:
        left = self.state_unary()
        while self.accept("&"):
            left = And(left, self.state_unary())
        return left

    def state_unary(self) -> StateFormula:
        if self.accept("!"):
            return Not(self.state_unary())
        return self.state_primary()

    def state_primary(self) -> StateFormula:
        tok = self.tok
        if tok.kind == "X":
            self.error("path formula is not a state formula")
        if self.accept("true"):
            return TrueF()
        if self.accept("false"):
            return Not(TrueF())
        if tok.kind in ("sym", "ident"):
            self.i += 1
            return Atom(tok.value)
        if tok.kind == "P":
            return self.prob()
        if self.accept("("):
            inner = self.state()
            if self.tok.kind == "U":
                self.error("path formula is not a state formula")
            self.expect(")")
            return inner
        self.error(f"unexpected {tok.value or 'end of input'!r}")

    def prob(self) -> Prob:
        self.expect("P")
        self.expect("{")
        op_tok = self.tok
        if op_tok.kind != "op":
            self.error("expected a comparison (>, =, >=)")
        self.i += 1
        num_tok = self.tok
        if num_tok.kind != "num":
            self.error("expected a rational bound")
        self.i += 1
        self.expect("}")
        self.expect("[")
        start = self.tok
        path = self.path_expr()
        self.expect("]")
        if _is_state(path):
            path = StarPath("state", (path,))
        try:
            return Prob(op_tok.value, Fraction(num_tok.value), path)
        except (ValueError, ZeroDivisionError) as exc:
            self.error(str(exc), num_tok if "bound" in str(exc) else start)

    # path level (PCTL* shaped)

    def path_expr(self):
        left = self.path_or()
        if self.accept("U"):
            right = self.path_expr()
            if _is_state(left) and _is_state(right):
                return Until(left, right)
            return StarPath("until", (left, right))
        return left

    def path_or(self):
        left = self.path_and()
        while self.accept("|"):
            right = self.path_and()
            if _is_state(left) and _is_state(right):
                left = Not(And(Not(left), Not(right)))
            else:
                left = StarPath("or", (left, right))
        return left

    def path_and(self):
        left = self.path_unary()
        while self.accept("&"):
            right = self.path_unary()
            if _is_state(left) and _is_state(right):
                left = And(left, right)
            else:
                left = StarPath("and", (left, right))
        return left

    def path_unary(self):
        if self.accept("!"):
            arg = self.path_unary()
            return Not(arg) if _is_state(arg) else StarPath("not", (arg,))
        if self.accept("X"):
            arg = self.path_unary()
            return Next(arg) if _is_state(arg) else StarPath("next", (arg,))
        if self.accept("("):
            inner = self.path_expr()
            self.expect(")")
            return inner
        return self.state_primary()


def parse_formula(text: str) -> StateFormula:
    """Parse a state formula."""
    p = _Parser(text)
    f = p.state()
    if p.tok.kind == "U":
        p.error("path formula is not a state formula")
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.value!r}")
    return f


def parse_path_formula(text: str):
    """Parse a path formula (``X ...`` or ``... U ...``, or a PCTL* shape)."""
    p = _Parser(text)
    f = p.path_expr()
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.value!r}")
    if _is_state(f):
        return StarPath("state", (f,))
    return f
