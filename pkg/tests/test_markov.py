import cmath
import random
from fractions import Fraction

import pytest

from conftest import WORKED_ALPHA, stack
from pdsreduce.markov import (
    InvalidSystemError,
    NotAPathError,
    cylinder_probability,
    induced_chain,
    path_amplitude,
    project_to_probabilistic,
    unfold,
    unfolding_to_dot,
)
from pdsreduce.pushdown import PROBABILISTIC, PushdownSystem, Rule

H = Fraction(1, 2)

# F a Z' -> a Z' -> X<A,A> ..., the most likely phi1 path
FIRST_PATH = [
    stack("F"),
    WORKED_ALPHA + ("Z'",),
    ("X<A,A>",) + WORKED_ALPHA[1:] + ("Z'",),
]


def test_induced_chain_rejects_invalid():
    bad = PushdownSystem(PROBABILISTIC, ("X",), (Rule("X", (), H),))
    with pytest.raises(InvalidSystemError):
        induced_chain(bad)


def test_empty_stack_self_loop(aa_chain):
    assert aa_chain.successors(()) == [((), 1)]
    assert aa_chain.transitions(()) == [((), Fraction(1))]


def test_cylinder_probability_both_flavors(aa_chain, aa_quantum):
    assert cylinder_probability(aa_chain, FIRST_PATH) == H
    q = induced_chain(aa_quantum.system)
    assert cylinder_probability(q, FIRST_PATH) == H
    amp = path_amplitude(q, FIRST_PATH)
    assert str(amp.phase) == "t5+1/2*t7"


def test_not_a_path(aa_chain):
    with pytest.raises(NotAPathError):
        cylinder_probability(aa_chain, [("F",), ("S",)])
    with pytest.raises(ValueError):
        path_amplitude(aa_chain, FIRST_PATH)


def test_projection_matches_probabilistic(aa_reduction, aa_quantum):
    projected = project_to_probabilistic(aa_quantum.system)
    assert projected.rules == aa_reduction.system.rules
    with pytest.raises(ValueError):
        project_to_probabilistic(aa_reduction.system)


def _random_path(chain, start, length, rng):
    path = [start]
    for _ in range(length):
        succ = chain.successors(path[-1])
        path.append(rng.choice(succ)[0])
    return path


def test_phase_is_irrelevant_to_probability(aa_chain, aa_quantum):
    q = induced_chain(aa_quantum.system)
    rng = random.Random(7)
    for _ in range(50):
        p = _random_path(q, ("Z",), rng.randint(0, 12), rng)
        assert cylinder_probability(q, p) == cylinder_probability(aa_chain, p)


def test_one_step_extensions_sum(aa_chain):
    rng = random.Random(3)
    for _ in range(20):
        p = _random_path(aa_chain, ("Z",), rng.randint(0, 10), rng)
        base = cylinder_probability(aa_chain, p)
        ext = sum(cylinder_probability(aa_chain, p + [c]) for c, _ in aa_chain.successors(p[-1]))
        assert ext == base


def test_amplitude_product_numerically(aa_quantum):
    q = induced_chain(aa_quantum.system)
    rng = random.Random(11)
    names = [f"t{i}" for i in range(1, 10)] + ["t1_1"]
    for _ in range(30):
        values = {n: rng.uniform(-3, 3) for n in names}
        p = _random_path(q, ("Z",), rng.randint(1, 10), rng)
        z = 1
        for a, b in zip(p, p[1:]):
            z *= q.step_weight(a, b).to_complex(values)
        assert cmath.isclose(z, path_amplitude(q, p).to_complex(values), abs_tol=1e-9)
        assert abs(abs(z) ** 2 - float(cylinder_probability(q, p))) < 1e-9


def test_unfold_and_dot(aa_chain):
    nodes = unfold(aa_chain, stack("F"), 3)
    assert nodes[0].config == stack("F") and nodes[0].parent is None
    assert [n.depth for n in nodes] == sorted(n.depth for n in nodes)
    dot = unfolding_to_dot(nodes, "F")
    assert dot == unfolding_to_dot(unfold(aa_chain, stack("F"), 3), "F")
    assert dot.startswith('digraph "F" {')
    assert "n0 -> n1" in dot
    assert dot.count("->") == len(nodes) - 1


def test_unfold_stop_predicate(aa_chain):
    nodes = unfold(aa_chain, stack("F"), 12, stop=lambda c: bool(c) and c[0].startswith("X"))
    leaves = [n for n in nodes if n.stopped]
    assert leaves and all(n.config[0].startswith("X") for n in leaves)
    assert not any(n.parent == leaf.ident for leaf in leaves for n in nodes)
    with pytest.raises(ValueError):
        unfold(aa_chain, ("F",), -1)


def test_single_state_path(aa_chain):
    assert cylinder_probability(aa_chain, [("Z",)]) == 1


def test_projection_two_pairs():
    from pdsreduce.pcp import PcpInstance
    from pdsreduce.reduction import reduce_instance

    inst = PcpInstance.of(("A", "AB"), ("BA", "A"))
    q = reduce_instance(inst, "quantum").system
    assert project_to_probabilistic(q) == reduce_instance(inst).system
