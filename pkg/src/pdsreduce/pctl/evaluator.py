"""Exact PCTL evaluation over lazily expanded chains.

``until`` probabilities are obtained by exploring the part of the chain
that is reachable while the guard holds and the target does not, then
solving the resulting linear system over the rationals.  The exploration
is capped by a node budget; ``Bounded(depth)`` mode instead returns an
interval ``[reached, reached + unresolved]`` after ``depth`` steps.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from ..markov import LazyChain
from ..pushdown import Configuration, format_config
from .ast import And, Atom, Next, Not, Prob, StarPath, StateFormula, TrueF, Until
from .linsolve import solve_sparse

DEFAULT_BUDGET = 10**6
# stacks grow along guessing runs, so memory is capped by stored stack
# symbols as well: at most SYMBOLS_PER_NODE * budget in total
SYMBOLS_PER_NODE = 32


class BudgetExceededError(RuntimeError):
    def __init__(self, budget: int, start, symbols: bool = False):
        self.budget = budget
        self.start = start
        what = f"{budget * SYMBOLS_PER_NODE} stack symbols" if symbols else f"{budget} configurations"
        super().__init__(
            f"exploring from {format_config(start)} visited more than {what}; "
            "raise the budget or use bounded mode"
        )


class UnsupportedFormulaError(ValueError):
    pass


class IndeterminateError(RuntimeError):
    """A bounded-mode interval straddles the probability bound."""


@dataclass(frozen=True)
class Bounded:
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


EXACT = "exact"
Mode = Union[str, Bounded]


@dataclass(frozen=True)
class ProbResult:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= 1:
            raise ValueError(f"bad probability interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Fraction) -> "ProbResult":
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError(f"interval [{self.lo}, {self.hi}] is not exact")
        return self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return str(self.lo) if self.is_exact else f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class HeadAssignment:
    """Simple (head-based) valuation: atom ``p`` holds at ``X w`` iff ``X`` is in ``H_p``.

    Atoms not listed fall back to ``H_p = {p}`` unless ``identity_fallback``
    is off.  The empty configuration satisfies no atom.
    """

    heads: Mapping[str, frozenset] = field(default_factory=dict)
    identity_fallback: bool = True

    def holds(self, atom: str, config: Sequence[str]) -> bool:
        if not config:
            return False
        hs = self.heads.get(atom)
        if hs is None:
            if not self.identity_fallback:
                raise KeyError(f"atom {atom!r} has no head set")
            return config[0] == atom
        return config[0] in hs


@dataclass
class SubGraph:
    """Guarded reachable part of the chain; ``kind`` is target, fail or open."""

    nodes: list[Configuration]
    kind: list[str]
    edges: list[list[tuple[int, Fraction]]]
    index: dict[Configuration, int]

    def __len__(self) -> int:
        return len(self.nodes)

    def is_acyclic(self, ignore_self_loops: bool = False) -> bool:
        state = [0] * len(self.nodes)
        for root in range(len(self.nodes)):
            if state[root]:
                continue
            stack = [(root, iter(self.edges[root]))]
            state[root] = 1
            while stack:
                v, it = stack[-1]
                for w, _ in it:
                    if w == v and ignore_self_loops:
                        continue
                    if state[w] == 1:
                        return False
                    if state[w] == 0:
                        state[w] = 1
                        stack.append((w, iter(self.edges[w])))
                        break
                else:
                    state[v] = 2
                    stack.pop()
        return True


def _aggregate(pairs):
    out: dict[Configuration, Fraction] = {}
    for c, p in pairs:
        out[c] = out.get(c, Fraction(0)) + p
    return list(out.items())


class Evaluator:
    """Caches satisfaction and probability results for one chain and valuation."""

    def __init__(self, chain: LazyChain, assignment: HeadAssignment | None = None, budget: int = DEFAULT_BUDGET):
        if budget < 1:
            raise ValueError("budget must be positive")
        self.chain = chain
        self.assignment = assignment or HeadAssignment()
        self.budget = budget
        self._sat: dict = {}
        self._until: dict = {}

    # state formulas

    def sat(self, config: Sequence[str], f: StateFormula, mode: Mode = EXACT) -> bool:
        config = tuple(config)
        if isinstance(f, TrueF):
            return True
        if isinstance(f, Atom):
            return self.assignment.holds(f.name, config)
        if isinstance(f, Not):
            return not self.sat(config, f.arg, mode)
        if isinstance(f, And):
            return self.sat(config, f.left, mode) and self.sat(config, f.right, mode)
        if isinstance(f, Prob):
            if mode == EXACT:
                key = (f, config)
                hit = self._sat.get(key)
                if hit is None:
                    hit = _compare(self.probability(config, f.path).value, f.op, f.bound)
                    self._sat[key] = hit
                return hit
            return _decide(self.probability(config, f.path, mode), f.op, f.bound)
        raise TypeError(f"not a state formula: {f!r}")

    # path formulas

    def probability(self, config: Sequence[str], path, mode: Mode = EXACT) -> ProbResult:
        config = tuple(config)
        if isinstance(path, StarPath):
            raise UnsupportedFormulaError(f"PCTL* path formula {path} cannot be evaluated")
        if isinstance(path, Next):
            total = sum(
                (p for c, p in _aggregate(self.chain.transitions(config)) if self.sat(c, path.arg)),
                Fraction(0),
            )
            return ProbResult.point(total)
        if isinstance(path, Until):
            if mode == EXACT:
                return ProbResult.point(self._until_exact(config, path))
            if isinstance(mode, Bounded):
                return self._until_bounded(config, path, mode.depth)
            raise ValueError(f"unknown mode {mode!r}")
        raise TypeError(f"not a path formula: {path!r}")

    def classify(self, config: Configuration, guard: StateFormula, target: StateFormula) -> str:
        if self.sat(config, target):
            return "target"
        if self.sat(config, guard):
            return "open"
        return "fail"

    def subgraph(self, start: Sequence[str], guard: StateFormula, target: StateFormula) -> SubGraph:
        start = tuple(start)
        nodes = [start]
        index = {start: 0}
        kind: list[str] = []
        edges: list[list[tuple[int, Fraction]]] = []
        symbols, max_symbols = len(start), self.budget * SYMBOLS_PER_NODE
        i = 0
        while i < len(nodes):
            cfg = nodes[i]
            k = self.classify(cfg, guard, target)
            kind.append(k)
            out = []
            if k == "open":
                for succ, p in _aggregate(self.chain.transitions(cfg)):
                    j = index.get(succ)
                    if j is None:
                        if len(nodes) >= self.budget:
                            raise BudgetExceededError(self.budget, start)
                        symbols += len(succ)
                        if symbols > max_symbols:
                            raise BudgetExceededError(self.budget, start, symbols=True)
                        j = len(nodes)
                        index[succ] = j
                        nodes.append(succ)
                    out.append((j, p))
            edges.append(out)
            i += 1
        return SubGraph(nodes, kind, edges, index)

    def _until_exact(self, config: Configuration, path: Until) -> Fraction:
        key = (path, config)
        if key in self._until:
            return self._until[key]
        g = self.subgraph(config, path.left, path.right)
        # open nodes that cannot reach a target have probability 0
        preds: list[list[int]] = [[] for _ in g.nodes]
        for v, out in enumerate(g.edges):
            for w, _ in out:
                preds[w].append(v)
        live = [False] * len(g)
        queue = deque(v for v, k in enumerate(g.kind) if k == "target")
        for v in queue:
            live[v] = True
        while queue:
            w = queue.popleft()
            for v in preds[w]:
                if not live[v] and g.kind[v] == "open":
                    live[v] = True
                    queue.append(v)
        unknowns = [v for v, k in enumerate(g.kind) if k == "open" and live[v]]
        col = {v: i for i, v in enumerate(unknowns)}
        rows, rhs = [], []
        for v in unknowns:
            row = {col[v]: Fraction(1)}
            b = Fraction(0)
            for w, p in g.edges[v]:
                if g.kind[w] == "target":
                    b += p
                elif w in col:
                    row[col[w]] = row.get(col[w], Fraction(0)) - p
            rows.append(row)
            rhs.append(b)
        solution = solve_sparse(rows, rhs) if unknowns else []
        values = {v: Fraction(0) for v in range(len(g))}
        for v, k in enumerate(g.kind):
            if k == "target":
                values[v] = Fraction(1)
        for v, x in zip(unknowns, solution):
            values[v] = x
        for v, cfg in enumerate(g.nodes):
            self._until[(path, cfg)] = values[v]
        return values[0]

    def _until_bounded(self, config: Configuration, path: Until, depth: int) -> ProbResult:
        reached = Fraction(0)
        unresolved = Fraction(0)
        dist = {config: Fraction(1)}
        for step in range(depth + 1):
            nxt: dict[Configuration, Fraction] = {}
            for cfg, mass in dist.items():
                k = self.classify(cfg, path.left, path.right)
                if k == "target":
                    reached += mass
                elif k == "fail":
                    continue
                elif step == depth:
                    unresolved += mass
                else:
                    succ = self.chain.transitions(cfg)
                    if len(succ) == 1 and succ[0][0] == cfg:
                        continue  # absorbing and not a target
                    for c, p in succ:
                        nxt[c] = nxt.get(c, Fraction(0)) + mass * p
            dist = nxt
            if not dist:
                break
        return ProbResult(reached, reached + unresolved)


def _compare(value: Fraction, op: str, bound: Fraction) -> bool:
    if op == ">":
        return value > bound
    if op == "=":
        return value == bound
    if op == ">=":
        return value >= bound
    raise ValueError(f"unknown comparison {op!r}")


def _decide(res: ProbResult, op: str, bound: Fraction) -> bool:
    lo_says = _compare(res.lo, op, bound)
    hi_says = _compare(res.hi, op, bound)
    if res.is_exact:
        return lo_says
    if op in (">", ">="):
        if lo_says:
            return True
        if not hi_says:
            return False
    elif op == "=" and not (res.lo <= bound <= res.hi):
        return False
    raise IndeterminateError(f"probability in {res} does not decide {op} {bound}")


def eval_state(
    chain: LazyChain,
    config: Sequence[str],
    formula: StateFormula,
    assignment: HeadAssignment | None = None,
    mode: Mode = EXACT,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    return Evaluator(chain, assignment, budget).sat(config, formula, mode)


def path_probability(
    chain: LazyChain,
    config: Sequence[str],
    path,
    assignment: HeadAssignment | None = None,
    mode: Mode = EXACT,
    budget: int = DEFAULT_BUDGET,
) -> ProbResult:
    return Evaluator(chain, assignment, budget).probability(config, path, mode)


def reachable_subgraph(
    chain: LazyChain,
    config: Sequence[str],
    guard: StateFormula,
    target: StateFormula,
    budget: int = DEFAULT_BUDGET,
    assignment: HeadAssignment | None = None,
) -> SubGraph:
    return Evaluator(chain, assignment, budget).subgraph(config, guard, target)
