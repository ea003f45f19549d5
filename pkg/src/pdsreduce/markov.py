"""Markov chains induced by pushdown systems, and cylinder probabilities."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .amplitude import ONE, Amplitude, Weight, format_weight, weight_probability
from .pushdown import (
    PROBABILISTIC,
    QUANTUM,
    Configuration,
    PushdownSystem,
    Rule,
    format_config,
    successors,
    validate,
)


class InvalidSystemError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid pushdown system: " + "; ".join(str(v) for v in report))


class NotAPathError(ValueError):
    pass


@dataclass(frozen=True)
class LazyChain:
    """Configuration graph of a pushdown system, expanded on demand.

    The empty configuration gets a self-loop of weight one so that every
    state has a successor.
    """

    system: PushdownSystem
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def flavor(self) -> str:
        return self.system.flavor

    @property
    def unit(self) -> Weight:
        return ONE if self.flavor == QUANTUM else Fraction(1)

    def successors(self, config: Sequence[str]) -> list[tuple[Configuration, Weight]]:
        config = tuple(config)
        hit = self._cache.get(config)
        if hit is None:
            hit = [((), self.unit)] if not config else successors(self.system, config)
            self._cache[config] = hit
        return hit

    def transitions(self, config: Sequence[str]) -> list[tuple[Configuration, Fraction]]:
        """Successors with plain transition probabilities."""
        return [(c, weight_probability(w)) for c, w in self.successors(config)]

    def step_weight(self, src: Sequence[str], dst: Sequence[str]) -> Weight:
        dst = tuple(dst)
        for succ, weight in self.successors(src):
            if succ == dst:
                return weight
        raise NotAPathError(f"{format_config(src)} -> {format_config(dst)} is not a transition")


def induced_chain(system: PushdownSystem) -> LazyChain:
    report = validate(system)
    if report:
        raise InvalidSystemError(report)
    return LazyChain(system)


@dataclass(frozen=True)
class FinitePath:
    states: tuple[Configuration, ...]

    def __post_init__(self):
        states = tuple(tuple(s) for s in self.states)
        if not states:
            raise ValueError("a path has at least one state")
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.states)

    def steps(self):
        return zip(self.states, self.states[1:])


def _as_path(path) -> FinitePath:
    return path if isinstance(path, FinitePath) else FinitePath(tuple(path))


def path_amplitude(chain: LazyChain, path) -> Amplitude:
    """Product of the step amplitudes along a path of a quantum chain."""
    if chain.flavor != QUANTUM:
        raise ValueError("path amplitudes are defined for quantum chains only")
    amp = ONE
    for src, dst in _as_path(path).steps():
        amp = amp * chain.step_weight(src, dst)
    return amp


def cylinder_probability(chain: LazyChain, path) -> Fraction:
    path = _as_path(path)
    if chain.flavor == QUANTUM:
        # |prod r_k e^{i eta_k}|^2 = prod r_k^2; the summed phase drops out
        return path_amplitude(chain, path).sq
    prob = Fraction(1)
    for src, dst in path.steps():
        prob *= chain.step_weight(src, dst)
    return prob


def project_to_probabilistic(system: PushdownSystem) -> PushdownSystem:
    """Replace every amplitude by its squared modulus."""
    if system.flavor != QUANTUM:
        raise ValueError("only quantum systems can be projected")
    rules = tuple(Rule(r.lhs, r.rhs, weight_probability(r.weight)) for r in system.rules)
    return PushdownSystem(PROBABILISTIC, system.alphabet, rules, system.name)


@dataclass(frozen=True)
class UnfoldNode:
    ident: int
    config: Configuration
    depth: int
    parent: Optional[int]
    weight: Optional[Weight]
    stopped: bool


def unfold(
    chain: LazyChain,
    start: Sequence[str],
    depth: int,
    stop: Callable[[Configuration], bool] | None = None,
) -> list[UnfoldNode]:
    """Breadth-first unfolding tree of ``start`` down to ``depth`` transitions.

    Nodes for which ``stop`` holds are kept as leaves.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = tuple(start)
    nodes = [UnfoldNode(0, root, 0, None, None, bool(stop and stop(root)))]
    queue = deque([nodes[0]])
    while queue:
        node = queue.popleft()
        if node.stopped or node.depth == depth:
            continue
        for succ, weight in chain.successors(node.config):
            child = UnfoldNode(len(nodes), succ, node.depth + 1, node.ident, weight, bool(stop and stop(succ)))
            nodes.append(child)
            queue.append(child)
    return nodes


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def unfolding_to_dot(nodes: list[UnfoldNode], name: str = "unfolding") -> str:
    lines = [f'digraph "{_dot_escape(name)}" {{', "  node [fontname=\"Helvetica\"];"]
    for node in nodes:
        shape = "box" if node.stopped else "ellipse"
        lines.append(f'  n{node.ident} [label="{_dot_escape(format_config(node.config))}", shape={shape}];')
    for node in nodes:
        if node.parent is not None:
            lines.append(f'  n{node.parent} -> n{node.ident} [label="{_dot_escape(format_weight(node.weight))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
