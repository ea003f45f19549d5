"""Compile a (modified) PCP instance into a pBPA or qBPA plus PCTL formulas.

The system first guesses an index word by pushing the padded letter pairs
of the chosen words (symbols ``G<i>^<j>`` drive this), then on ``C`` it
verifies the stack: ``N`` branches to ``F`` (audit the first components)
or ``S`` (audit the second components).  The probability of
``phi1`` from ``F a Z'`` encodes the first word in binary, that of
``phi2`` from ``S a Z'`` the complement of the second word, and the two
sum to one exactly when the words coincide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .amplitude import Amplitude, Phase, to_fraction
from .markov import FinitePath, cylinder_probability, induced_chain
from .oracle import oracle_until_probability
from .pcp import (
    BLANK,
    IndexWord,
    ModifiedPcpInstance,
    PcpInstance,
    check_index_word,
    check_solution,
    pad_instance,
    trim,
)
from .pctl import And, Atom, Evaluator, HeadAssignment, Next, Not, Or, Prob, TrueF, Until, conj
from .pushdown import PROBABILISTIC, QUANTUM, Configuration, PushdownSystem, Rule

SIGMA = ("A", "B", BLANK)

Z, Z_BOTTOM, C, N, F, S = "Z", "Z'", "C", "N", "F", "S"

VARIANTS = ("eq10", "remark9a", "remark9b")


def pair(x: str, y: str) -> str:
    return f"<{x},{y}>"


def marked(x: str, y: str) -> str:
    return f"X<{x},{y}>"


def guess(i: int, j: int) -> str:
    return f"G{i}^{j}"


def chain_link(i: int) -> str:
    return f"N{i}"


def split_pair(symbol: str) -> tuple[str, str]:
    """``"<A,•>"`` -> ``("A", "•")``."""
    if not (symbol.startswith("<") and symbol.endswith(">") and len(symbol) == 5 and symbol[2] == ","):
        raise ValueError(f"{symbol!r} is not a pair symbol")
    return symbol[1], symbol[3]


def _w(flavor: str, prob, phase: Phase | None = None):
    prob = to_fraction(prob)
    if flavor == QUANTUM:
        return Amplitude(prob, phase or Phase())
    if flavor != PROBABILISTIC:
        raise ValueError(f"unknown flavor {flavor!r}")
    return prob


def alphabet_for(mp: ModifiedPcpInstance, chain_length: int = 0) -> tuple[str, ...]:
    symbols = [Z, Z_BOTTOM, C, F, S, N]
    symbols += [chain_link(i) for i in range(1, chain_length + 1)]
    symbols += [pair(x, y) for x in SIGMA for y in SIGMA]
    symbols += [marked(x, y) for x in SIGMA for y in SIGMA]
    symbols += [guess(i, j) for i in range(1, mp.n + 1) for j in range(1, mp.m + 2)]
    return tuple(symbols)


def build_guess_rules(mp: ModifiedPcpInstance, flavor: str = PROBABILISTIC) -> list[Rule]:
    n, m = mp.n, mp.m
    rules = []
    for i in range(1, n + 1):
        rules.append(Rule(Z, (guess(i, 1), Z_BOTTOM), _w(flavor, Fraction(1, n), Phase.of(t1=Fraction(i, n)))))
    for i, (u, v) in enumerate(mp.pairs, 1):
        for j in range(1, m + 1):
            step = Phase.of({f"t{i}_{j}": 1})
            rules.append(Rule(guess(i, j), (guess(i, j + 1), pair(u[j - 1], v[j - 1])), _w(flavor, 1, step)))
        last = guess(i, m + 1)
        share = Fraction(1, n + 1)
        rules.append(Rule(last, (C,), _w(flavor, share, Phase.of(t2=share))))
        for l in range(1, n + 1):
            # C takes phase index 1, G_l^1 takes index l + 1
            rules.append(Rule(last, (guess(l, 1),), _w(flavor, share, Phase.of(t2=(l + 1) * share))))
    return rules


def build_verify_rules(flavor: str = PROBABILISTIC, variant: str = "eq10", chain_length: int = 1) -> list[Rule]:
    half = Fraction(1, 2)
    rules = []
    if variant == "eq10":
        rules.append(Rule(C, (N,), _w(flavor, 1, Phase.of(t3=1))))
    elif variant == "remark9a":
        if chain_length < 1:
            raise ValueError("remark9a needs a chain of at least one N_i")
        links = [chain_link(i) for i in range(1, chain_length + 1)]
        rules.append(Rule(C, (links[0],), _w(flavor, 1, Phase.of(t3=1))))
        for a, b in zip(links, links[1:] + [N]):
            rules.append(Rule(a, (b,), _w(flavor, 1, Phase.of(t3=1))))
    elif variant == "remark9b":
        rules.append(Rule(C, (F,), _w(flavor, half, Phase.of(t3=half))))
        rules.append(Rule(C, (S,), _w(flavor, half, Phase.of(t3=1))))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    rules.append(Rule(N, (F,), _w(flavor, half, Phase.of(t4=half))))
    rules.append(Rule(N, (S,), _w(flavor, half, Phase.of(t4=1))))
    rules.append(Rule(F, (), _w(flavor, 1, Phase.of(t5=1))))
    rules.append(Rule(S, (), _w(flavor, 1, Phase.of(t6=1))))
    for x in SIGMA:
        for y in SIGMA:
            rules.append(Rule(pair(x, y), (marked(x, y),), _w(flavor, half, Phase.of(t7=half))))
            rules.append(Rule(pair(x, y), (), _w(flavor, half, Phase.of(t7=1))))
    rules.append(Rule(Z_BOTTOM, (marked("A", "B"),), _w(flavor, half, Phase.of(t8=half))))
    rules.append(Rule(Z_BOTTOM, (marked("B", "A"),), _w(flavor, half, Phase.of(t8=1))))
    for x in SIGMA:
        for y in SIGMA:
            rules.append(Rule(marked(x, y), (), _w(flavor, 1, Phase.of(t9=1))))
    return rules


def build_system(
    mp: ModifiedPcpInstance, flavor: str = PROBABILISTIC, variant: str = "eq10", chain_length: int = 1
) -> PushdownSystem:
    links = chain_length if variant == "remark9a" else 0
    rules = build_guess_rules(mp, flavor) + build_verify_rules(flavor, variant, chain_length)
    name = f"{flavor} reduction of {list(mp.pairs)} ({variant})"
    return PushdownSystem(flavor, alphabet_for(mp, links), tuple(rules), name)


def phi1() -> Until:
    guard = conj(Not(Atom(S)), *(And(Not(Atom(marked("A", z))), Not(Atom(marked("B", z)))) for z in SIGMA))
    target = Or(*(Atom(marked("A", z)) for z in SIGMA))
    return Until(guard, target)


def phi2() -> Until:
    guard = conj(Not(Atom(F)), *(And(Not(Atom(marked(z, "A"))), Not(Atom(marked(z, "B")))) for z in SIGMA))
    target = Or(*(Atom(marked(z, "B")) for z in SIGMA))
    return Until(guard, target)


def theta(x: str) -> int:
    return {"A": 1, "B": 0, Z_BOTTOM: 1}[x]


def theta_bar(x: str) -> int:
    return {"A": 0, "B": 1, Z_BOTTOM: 1}[x]


def _letters_then_bottom(word) -> list[str]:
    if isinstance(word, str):
        if not word.endswith(Z_BOTTOM):
            raise ValueError(f"{word!r} must end with {Z_BOTTOM}")
        letters = list(word[: -len(Z_BOTTOM)]) + [Z_BOTTOM]
    else:
        letters = list(word)
    if not letters or letters[-1] != Z_BOTTOM or any(x not in ("A", "B") for x in letters[:-1]):
        raise ValueError(f"{word!r} is not a word over {{A, B}} followed by {Z_BOTTOM}")
    return letters


def rho(word) -> Fraction:
    """``sum theta(x_i) / 2^i`` over ``x_1 .. x_n Z'`` (e.g. ``"AABZ'"``)."""
    return sum((Fraction(theta(x), 2**i) for i, x in enumerate(_letters_then_bottom(word), 1)), Fraction(0))


def rho_bar(word) -> Fraction:
    return sum((Fraction(theta_bar(x), 2**i) for i, x in enumerate(_letters_then_bottom(word), 1)), Fraction(0))


def _check_t(t) -> Fraction:
    t = to_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t must lie strictly between 0 and 1, got {t}")
    return t


def inner_conjunction(t) -> And:
    t = _check_t(t)
    return And(Prob("=", t / 2, phi1()), Prob("=", (1 - t) / 2, phi2()))


def witness_target(t, variant: str = "eq10"):
    """The state formula the outer ``true U ...`` looks for at ``C``-headed configurations."""
    inner = inner_conjunction(t)
    if variant == "eq10":
        return And(Atom(C), Prob("=", 1, Next(inner)))
    if variant == "remark9a":
        return And(Atom(C), Prob("=", 1, Until(TrueF(), Prob("=", 1, Next(inner)))))
    if variant == "remark9b":
        return And(And(Atom(C), inner.left), inner.right)
    raise ValueError(f"unknown variant {variant!r}")


def build_formula(t, variant: str = "eq10") -> Prob:
    return Prob(">", 0, Until(TrueF(), witness_target(t, variant)))


@dataclass(frozen=True)
class ReductionOutput:
    instance: ModifiedPcpInstance
    system: PushdownSystem
    phi1: Until
    phi2: Until
    assignment: HeadAssignment
    variant: str = "eq10"

    def formula(self, t) -> Prob:
        return build_formula(t, self.variant)

    def target(self, t):
        return witness_target(t, self.variant)


def _as_modified(instance) -> ModifiedPcpInstance:
    if isinstance(instance, ModifiedPcpInstance):
        return instance
    if isinstance(instance, PcpInstance):
        return pad_instance(instance)
    raise TypeError(f"expected a PCP instance, got {type(instance).__name__}")


def reduce_instance(instance, flavor: str = PROBABILISTIC, variant: str = "eq10", chain_length: int = 1) -> ReductionOutput:
    mp = _as_modified(instance)
    system = build_system(mp, flavor, variant, chain_length)
    assignment = HeadAssignment({s: frozenset({s}) for s in system.alphabet}, identity_fallback=False)
    return ReductionOutput(mp, system, phi1(), phi2(), assignment, variant)


@dataclass(frozen=True)
class GuessWitness:
    w: IndexWord
    alpha: tuple[str, ...]
    path: FinitePath
    probability: Fraction

    @property
    def end(self) -> Configuration:
        return self.path.states[-1]

    def firsts(self) -> str:
        """First components of the stored pairs, read from the top of the stack down."""
        return "".join(split_pair(p)[0] for p in self.alpha)

    def seconds(self) -> str:
        return "".join(split_pair(p)[1] for p in self.alpha)


def guess_path_for(mp: ModifiedPcpInstance, w: Sequence[int], system: PushdownSystem | None = None) -> GuessWitness:
    """Follow the guessing rules for the index word ``w`` from ``Z`` to ``C a Z'``."""
    w = tuple(w)
    check_index_word(w, mp.n)
    system = system or build_system(mp)
    states: list[Configuration] = [(Z,)]
    stack: Configuration = (guess(w[0], 1), Z_BOTTOM)
    states.append(stack)
    for pos, i in enumerate(w):
        u, v = mp.pairs[i - 1]
        for j in range(1, mp.m + 1):
            stack = (guess(i, j + 1), pair(u[j - 1], v[j - 1])) + stack[1:]
            states.append(stack)
        nxt = (guess(w[pos + 1], 1),) if pos + 1 < len(w) else (C,)
        stack = nxt + stack[1:]
        states.append(stack)
    path = FinitePath(tuple(states))
    prob = cylinder_probability(induced_chain(system), path)
    return GuessWitness(w, stack[1:-1], path, prob)


@dataclass
class WitnessReport:
    instance: ModifiedPcpInstance
    w: IndexWord
    flavor: str
    alpha: tuple[str, ...]
    p1: Fraction
    p2: Fraction
    t: Optional[Fraction]
    verdict: bool
    is_solution: bool
    oracle_p1: Optional[Fraction] = None
    oracle_p2: Optional[Fraction] = None
    formula_holds: Optional[bool] = None
    oracle_ran: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def oracle_agrees(self) -> Optional[bool]:
        if not self.oracle_ran:
            return None
        return self.oracle_p1 == self.p1 and self.oracle_p2 == self.p2

    @property
    def consistent(self) -> bool:
        ok = self.verdict == self.is_solution and self.oracle_agrees is not False
        if self.formula_holds is not None:
            ok = ok and self.formula_holds == self.verdict
        return ok

    def as_dict(self) -> dict:
        return {
            "instance": [list(p) for p in self.instance.pairs],
            "w": list(self.w),
            "flavor": self.flavor,
            "alpha": list(self.alpha),
            "p1": str(self.p1),
            "p2": str(self.p2),
            "t": None if self.t is None else str(self.t),
            "verdict": self.verdict,
            "is_solution": self.is_solution,
            "oracle_p1": None if self.oracle_p1 is None else str(self.oracle_p1),
            "oracle_p2": None if self.oracle_p2 is None else str(self.oracle_p2),
            "oracle_agrees": self.oracle_agrees,
            "formula_holds": self.formula_holds,
            "consistent": self.consistent,
        }


def check_witness(
    instance,
    w: Sequence[int],
    t=None,
    flavor: str = PROBABILISTIC,
    use_oracle: bool = True,
    reduction: ReductionOutput | None = None,
) -> WitnessReport:
    """Evaluate phi1 / phi2 from ``N a Z'`` for the stack built by ``w``.

    With ``t`` the verdict is ``p1 = t/2 and p2 = (1-t)/2``; without it the
    t-free form ``p1 + p2 = 1/2`` is used.
    """
    red = reduction or reduce_instance(instance, flavor)
    mp = red.instance
    witness = guess_path_for(mp, w, red.system)
    chain = induced_chain(red.system)
    ev = Evaluator(chain, red.assignment)
    start = (N,) + witness.alpha + (Z_BOTTOM,)
    p1 = ev.probability(start, red.phi1).value
    p2 = ev.probability(start, red.phi2).value
    half = Fraction(1, 2)
    formula_holds = None
    if t is None:
        verdict = p1 + p2 == half
    else:
        t = _check_t(t)
        verdict = p1 == t / 2 and p2 == (1 - t) / 2
        if red.variant == "eq10":
            formula_holds = ev.sat(witness.end, witness_target(t, "eq10"))
    report = WitnessReport(
        mp,
        witness.w,
        red.system.flavor,
        witness.alpha,
        p1,
        p2,
        t,
        verdict,
        check_solution(mp.original(), witness.w),
        formula_holds=formula_holds,
    )
    if use_oracle:
        depth = 2 * len(witness.alpha) + 8
        o1 = oracle_until_probability(chain, start, red.phi1, red.assignment, depth)
        o2 = oracle_until_probability(chain, start, red.phi2, red.assignment, depth)
        report.oracle_ran = True
        report.oracle_p1 = o1.probability if o1.residual == 0 else None
        report.oracle_p2 = o2.probability if o2.residual == 0 else None
        if o1.residual or o2.residual:
            report.notes.append("oracle enumeration left unresolved mass")
    return report


def t_for_witness(witness: GuessWitness) -> Fraction:
    """The ``t`` that makes the first conjunct true: rho of the trimmed top-down first word."""
    return rho(trim(witness.firsts()) + Z_BOTTOM)
