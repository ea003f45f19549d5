"""Brute-force path enumeration used to cross-check the PCTL evaluator.

Nothing here is shared with :mod:`pdsreduce.pctl.evaluator`: until
formulas are decided on finite prefixes, path probabilities are products
of per-step probabilities, and nested probability operators are resolved
by recursive enumeration.  Enumeration stops at the first state that
satisfies the target, and at any state violating the guard.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .amplitude import weight_probability
from .markov import LazyChain
from .pctl.ast import And, Atom, Next, Not, Prob, StarPath, TrueF, Until
from .pushdown import Configuration, format_config


class OracleInconclusiveError(RuntimeError):
    pass


@dataclass(frozen=True)
class PathRecord:
    path: tuple[Configuration, ...]
    probability: Fraction
    satisfies: bool

    def __str__(self) -> str:
        body = " -> ".join(format_config(c) for c in self.path)
        return f"{body}  [{self.probability}]"


@dataclass
class Enumeration:
    records: list[PathRecord] = field(default_factory=list)
    residual: Fraction = Fraction(0)

    @property
    def satisfying(self) -> list[PathRecord]:
        return [r for r in self.records if r.satisfies]

    @property
    def probability(self) -> Fraction:
        return sum((r.probability for r in self.records if r.satisfies), Fraction(0))

    def report(self) -> str:
        lines = [str(r) for r in self.satisfying]
        lines.append(f"total {self.probability}, residual {self.residual}")
        return "\n".join(lines)


@dataclass(frozen=True)
class OracleResult:
    probability: Fraction
    residual: Fraction

    @property
    def exact(self) -> bool:
        return self.residual == 0


class _Oracle:
    def __init__(self, chain: LazyChain, assignment, max_depth: int):
        if max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        self.chain = chain
        self.assignment = assignment
        self.max_depth = max_depth
        self.memo: dict = {}

    def atom(self, name: str, config: Configuration) -> bool:
        if not config:
            return False
        heads = getattr(self.assignment, "heads", {}) if self.assignment is not None else {}
        if name in heads:
            return config[0] in heads[name]
        return config[0] == name

    def holds(self, config: Configuration, f) -> bool:
        if isinstance(f, TrueF):
            return True
        if isinstance(f, Atom):
            return self.atom(f.name, config)
        if isinstance(f, Not):
            return not self.holds(config, f.arg)
        if isinstance(f, And):
            return self.holds(config, f.left) and self.holds(config, f.right)
        if isinstance(f, Prob):
            key = (config, f)
            if key not in self.memo:
                self.memo[key] = self._decide(config, f)
            return self.memo[key]
        raise TypeError(f"not a state formula: {f!r}")

    def _decide(self, config: Configuration, f: Prob) -> bool:
        e = self.enumerate(config, f.path)
        lo, hi = e.probability, e.probability + e.residual
        if f.op == ">":
            if lo > f.bound:
                return True
            if hi <= f.bound:
                return False
        elif f.op == ">=":
            if lo >= f.bound:
                return True
            if hi < f.bound:
                return False
        elif f.op == "=":
            if lo == hi:
                return lo == f.bound
            if not lo <= f.bound <= hi:
                return False
        raise OracleInconclusiveError(
            f"depth {self.max_depth} cannot decide {f} at {format_config(config)} (mass in [{lo}, {hi}])"
        )

    def enumerate(self, config: Configuration, path) -> Enumeration:
        out = Enumeration()
        if isinstance(path, StarPath):
            raise OracleInconclusiveError(f"PCTL* path formula {path} is not supported")
        if isinstance(path, Next):
            for succ, weight in self.chain.successors(config):
                out.records.append(
                    PathRecord((config, succ), weight_probability(weight), self.holds(succ, path.arg))
                )
            return out
        if not isinstance(path, Until):
            raise TypeError(f"not a path formula: {path!r}")
        stack = [((config,), Fraction(1))]
        while stack:
            prefix, prob = stack.pop()
            state = prefix[-1]
            if self.holds(state, path.right):
                out.records.append(PathRecord(prefix, prob, True))
                continue
            if not self.holds(state, path.left):
                out.records.append(PathRecord(prefix, prob, False))
                continue
            succ = self.chain.successors(state)
            if len(succ) == 1 and succ[0][0] == state:
                # the run stays in a non-target state forever
                out.records.append(PathRecord(prefix, prob, False))
                continue
            if len(prefix) - 1 == self.max_depth:
                out.residual += prob
                continue
            # reversed so that records come out in successor order
            for nxt, weight in reversed(succ):
                stack.append((prefix + (nxt,), prob * weight_probability(weight)))
        return out


def enumerate_satisfying_paths(
    chain: LazyChain, config: Sequence[str], phi, assignment=None, max_depth: int = 16
) -> Enumeration:
    """All minimal resolved paths from ``config`` up to ``max_depth`` transitions.

    ``records`` holds both satisfying and violating paths (``satisfies``
    tells them apart); ``residual`` is the mass of prefixes still
    undecided at the depth limit.
    """
    return _Oracle(chain, assignment, max_depth).enumerate(tuple(config), phi)


def oracle_until_probability(
    chain: LazyChain, config: Sequence[str], phi, assignment=None, max_depth: int = 16
) -> OracleResult:
    e = enumerate_satisfying_paths(chain, config, phi, assignment, max_depth)
    return OracleResult(e.probability, e.residual)


def oracle_holds(chain: LazyChain, config: Sequence[str], formula, assignment=None, max_depth: int = 16) -> bool:
    """Decide a state formula by enumeration, raising if the depth is insufficient."""
    return _Oracle(chain, assignment, max_depth).holds(tuple(config), formula)
