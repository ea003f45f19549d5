"""Stateless probabilistic and quantum pushdown systems (pBPA / qBPA).

Stack symbols are plain strings without whitespace.  A configuration is a
tuple of symbols read left to right, index 0 being the top of the stack;
the empty tuple is the empty stack.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .amplitude import Amplitude, Weight, format_weight, parse_weight, weight_probability

PROBABILISTIC = "probabilistic"
QUANTUM = "quantum"
FLAVORS = (PROBABILISTIC, QUANTUM)

EPSILON = "ε"
_EPSILON_SPELLINGS = {EPSILON, "eps", "epsilon"}

Configuration = tuple[str, ...]


class NoHeadError(ValueError):
    """Raised when asking for the successors of the empty configuration."""


def normalize_symbol(token: str) -> str:
    # '.' is accepted as an ASCII spelling of the blank letter
    return token.replace(".", "•")


def parse_config(text: str) -> Configuration:
    tokens = text.split()
    if len(tokens) == 1 and tokens[0] in _EPSILON_SPELLINGS:
        return ()
    return tuple(normalize_symbol(t) for t in tokens)


def format_config(config: Sequence[str]) -> str:
    return " ".join(config) if config else EPSILON


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]
    weight: Weight

    def __post_init__(self):
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.rhs) > 2:
            raise ValueError(f"rule {self.lhs} -> {self.rhs}: right-hand side longer than 2")
        if weight_probability(self.weight) <= 0:
            raise ValueError(f"rule {self.lhs} -> {format_config(self.rhs)}: weight must be positive")

    def __str__(self) -> str:
        return f"{self.lhs} -> {format_config(self.rhs)} @ {format_weight(self.weight)}"


@dataclass(frozen=True)
class Violation:
    symbol: str
    kind: str  # "no-rules" | "sum" | "duplicate" | "flavor" | "alphabet"
    total: Fraction | None = None
    detail: str = ""

    def __str__(self) -> str:
        if self.kind == "sum":
            return f"{self.symbol}: weight sum {self.total} != 1"
        return f"{self.symbol}: {self.kind} {self.detail}".rstrip()


@dataclass(frozen=True)
class PushdownSystem:
    flavor: str
    alphabet: tuple[str, ...]
    rules: tuple[Rule, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet lists a symbol twice")

    @cached_property
    def rules_by_lhs(self) -> dict[str, tuple[Rule, ...]]:
        table: dict[str, list[Rule]] = defaultdict(list)
        for rule in self.rules:
            table[rule.lhs].append(rule)
        return {k: tuple(v) for k, v in table.items()}

    def rules_for(self, symbol: str) -> tuple[Rule, ...]:
        return self.rules_by_lhs.get(symbol, ())

    def with_rules(self, rules: Iterable[Rule], alphabet: Iterable[str] | None = None) -> "PushdownSystem":
        return PushdownSystem(
            self.flavor,
            tuple(alphabet) if alphabet is not None else self.alphabet,
            tuple(rules),
            self.name,
        )


def validate(system: PushdownSystem) -> list[Violation]:
    """Report every violated side condition; an empty list means the system is well formed."""
    report: list[Violation] = []
    known = set(system.alphabet)
    for rule in system.rules:
        for sym in (rule.lhs, *rule.rhs):
            if sym not in known:
                report.append(Violation(sym, "alphabet", detail=f"used in {rule} but not declared"))
        is_amp = isinstance(rule.weight, Amplitude)
        if is_amp != (system.flavor == QUANTUM):
            report.append(Violation(rule.lhs, "flavor", detail=f"{rule} does not match {system.flavor}"))
    for sym in system.alphabet:
        rules = system.rules_for(sym)
        if not rules:
            report.append(Violation(sym, "no-rules"))
            continue
        seen = set()
        for rule in rules:
            if rule.rhs in seen:
                report.append(Violation(sym, "duplicate", detail=f"-> {format_config(rule.rhs)}"))
            seen.add(rule.rhs)
        total = sum((weight_probability(r.weight) for r in rules), Fraction(0))
        if total != 1:
            report.append(Violation(sym, "sum", total))
    return report


def successors(system: PushdownSystem, config: Sequence[str]) -> list[tuple[Configuration, Weight]]:
    """One-step prefix rewriting of the head symbol, in rule declaration order."""
    if not config:
        raise NoHeadError("the empty configuration has no head symbol")
    head, tail = config[0], tuple(config[1:])
    rules = system.rules_for(head)
    if not rules:
        raise KeyError(f"no rule for head symbol {head!r}")
    return [(rule.rhs + tail, rule.weight) for rule in rules]


def dump_system(system: PushdownSystem) -> str:
    lines = []
    if system.name:
        lines.append(f"# {system.name}")
    lines.append(f"flavor: {system.flavor}")
    lines.append("alphabet: " + " ".join(system.alphabet))
    lines.extend(str(rule) for rule in system.rules)
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> PushdownSystem:
    """Inverse of :func:`dump_system`.

    Lines are ``flavor: <flavor>``, ``alphabet: <symbols>`` and rules of the
    form ``X -> Y Z @ 1/2`` or ``X -> Y @ sq=1/2 phase=1/2*t4``; ``#``
    starts a comment line.
    """
    flavor = None
    alphabet = None
    rules = []
    name = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not name and lineno == 1:
                name = line[1:].strip()
            continue
        if line.startswith("flavor:"):
            flavor = line.split(":", 1)[1].strip()
        elif line.startswith("alphabet:"):
            alphabet = tuple(normalize_symbol(t) for t in line.split(":", 1)[1].split())
        else:
            try:
                lhs_part, rest = line.split("->", 1)
                rhs_part, weight_part = rest.split("@", 1)
                lhs = normalize_symbol(lhs_part.strip())
                rhs = parse_config(rhs_part)
                rules.append(Rule(lhs, rhs, parse_weight(weight_part)))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: cannot parse rule {line!r}: {exc}") from None
    if flavor is None:
        raise ValueError("missing 'flavor:' line")
    if alphabet is None:
        seen: dict[str, None] = {}
        for r in rules:
            seen.setdefault(r.lhs)
            for s in r.rhs:
                seen.setdefault(s)
        alphabet = tuple(seen)
    return PushdownSystem(flavor, alphabet, tuple(rules), name)
