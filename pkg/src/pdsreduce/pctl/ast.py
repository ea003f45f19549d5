"""PCTL formula trees.

State formulas: ``true``, atoms, negation, conjunction and the probability
quantifier ``P{op r}[path]``.  Path formulas: ``X state`` and
``state U state``.  :class:`StarPath` holds path formulas that only make
sense in PCTL* (boolean combinations of path formulas, nested temporal
operators); they can be parsed and printed but not evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

COMPARISONS = (">", "=", ">=")


class StateFormula:
    __slots__ = ()

    def __and__(self, other: "StateFormula") -> "StateFormula":
        return And(self, other)

    def __invert__(self) -> "StateFormula":
        return Not(self)


class PathFormula:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(StateFormula):
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Atom(StateFormula):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not(StateFormula):
    arg: StateFormula

    def __str__(self) -> str:
        return "!" + _tight(self.arg)


@dataclass(frozen=True)
class And(StateFormula):
    left: StateFormula
    right: StateFormula

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, And) else str(self.right)
        return f"{self.left} & {right}"


@dataclass(frozen=True)
class Prob(StateFormula):
    op: str
    bound: Fraction
    path: "AnyPath"

    def __post_init__(self):
        if self.op == "≥":
            object.__setattr__(self, "op", ">=")
        if self.op not in COMPARISONS:
            raise ValueError(f"unsupported comparison {self.op!r}")
        bound = Fraction(self.bound)
        if not 0 <= bound <= 1:
            raise ValueError(f"probability bound {bound} outside [0, 1]")
        object.__setattr__(self, "bound", bound)

    def __str__(self) -> str:
        return f"P{{{self.op}{self.bound}}}[{self.path}]"


@dataclass(frozen=True)
class Next(PathFormula):
    arg: StateFormula

    def __str__(self) -> str:
        return "X " + _tight(self.arg)


@dataclass(frozen=True)
class Until(PathFormula):
    left: StateFormula
    right: StateFormula

    def __str__(self) -> str:
        return f"{_tight(self.left)} U {_tight(self.right)}"


@dataclass(frozen=True)
class StarPath(PathFormula):
    """PCTL*-only path formula: ``op`` in state/not/and/or/next/until."""

    op: str
    args: tuple

    def __str__(self) -> str:
        a = self.args
        if self.op == "state":
            return f"({a[0]})"
        if self.op == "not":
            return f"!({a[0]})"
        if self.op == "next":
            return f"X ({a[0]})"
        sym = {"and": "&", "or": "|", "until": "U"}[self.op]
        return f"({a[0]}) {sym} ({a[1]})"


AnyPath = Union[Next, Until, StarPath]


def _tight(f) -> str:
    if isinstance(f, And):
        return f"({f})"
    return str(f)


def Or(*args: StateFormula) -> StateFormula:
    """Disjunction, desugared to ``!(!a & !b & ...)``."""
    return Not(conj(*(Not(a) for a in args)))


def conj(*args: StateFormula) -> StateFormula:
    if not args:
        return TrueF()
    out = args[0]
    for a in args[1:]:
        out = And(out, a)
    return out


def atoms(f) -> set[str]:
    """Atomic propositions occurring anywhere in ``f``."""
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, TrueF):
        return set()
    if isinstance(f, (Not, Next)):
        return atoms(f.arg)
    if isinstance(f, (And, Until)):
        return atoms(f.left) | atoms(f.right)
    if isinstance(f, Prob):
        return atoms(f.path)
    if isinstance(f, StarPath):
        out: set[str] = set()
        for a in f.args:
            out |= atoms(a)
        return out
    raise TypeError(f"not a formula: {f!r}")


def is_pctl(f) -> bool:
    """False if a PCTL*-only path formula occurs anywhere in ``f``."""
    if isinstance(f, StarPath):
        return False
    if isinstance(f, (TrueF, Atom)):
        return True
    if isinstance(f, (Not, Next)):
        return is_pctl(f.arg)
    if isinstance(f, (And, Until)):
        return is_pctl(f.left) and is_pctl(f.right)
    if isinstance(f, Prob):
        return is_pctl(f.path)
    raise TypeError(f"not a formula: {f!r}")
