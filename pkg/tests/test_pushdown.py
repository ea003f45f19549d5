from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pdsreduce.amplitude import Amplitude, Phase
from pdsreduce.pushdown import (
    PROBABILISTIC,
    QUANTUM,
    NoHeadError,
    PushdownSystem,
    Rule,
    dump_system,
    format_config,
    parse_config,
    parse_system,
    successors,
    validate,
)

H = Fraction(1, 2)


def coin():
    rules = (Rule("X", ("X", "X"), H), Rule("X", (), H))
    return PushdownSystem(PROBABILISTIC, ("X",), rules, "coin")


def test_rule_shape():
    with pytest.raises(ValueError):
        Rule("X", ("X", "X", "X"), Fraction(1))
    with pytest.raises(ValueError):
        Rule("X", (), Fraction(0))


def test_validate_accepts_coin():
    assert validate(coin()) == []


def test_validate_reports_each_problem():
    rules = (Rule("X", ("Y",), H), Rule("X", ("Y",), H), Rule("Y", (), Fraction(1, 3)))
    kinds = {(v.symbol, v.kind) for v in validate(PushdownSystem(PROBABILISTIC, ("X", "Y", "W"), rules))}
    assert kinds == {("X", "duplicate"), ("Y", "sum"), ("W", "no-rules")}
    undeclared = PushdownSystem(PROBABILISTIC, ("X",), (Rule("X", ("Q",), Fraction(1)),))
    assert any(v.kind == "alphabet" for v in validate(undeclared))
    mixed = PushdownSystem(QUANTUM, ("X",), (Rule("X", (), Fraction(1)),))
    assert any(v.kind == "flavor" for v in validate(mixed))


def test_quantum_validation_uses_squared_moduli():
    rules = (Rule("X", ("X",), Amplitude(H, Phase.of(t1=1))), Rule("X", (), Amplitude(H)))
    assert validate(PushdownSystem(QUANTUM, ("X",), rules)) == []


def test_successors_rewrite_the_head():
    sys_ = coin()
    assert successors(sys_, ("X", "Y")) == [(("X", "X", "Y"), H), (("Y",), H)]
    with pytest.raises(NoHeadError):
        successors(sys_, ())


def test_successors_on_reduction(aa_reduction):
    s = aa_reduction.system
    assert successors(s, ("F", "<A,A>", "Z'")) == [(("<A,A>", "Z'"), Fraction(1))]
    assert successors(s, ("<A,•>", "Z'")) == [(("X<A,•>", "Z'"), H), (("Z'",), H)]
    assert successors(s, ("Z'",)) == [(("X<A,B>",), H), (("X<B,A>",), H)]


def test_config_text():
    assert parse_config("F <A,.> Z'") == ("F", "<A,•>", "Z'")
    assert parse_config("ε") == parse_config("eps") == ()
    assert format_config(()) == "ε"


@pytest.mark.parametrize("flavor", [PROBABILISTIC, QUANTUM])
def test_system_file_round_trip(flavor):
    from pdsreduce.pcp import PcpInstance
    from pdsreduce.reduction import reduce_instance

    s = reduce_instance(PcpInstance.of(("A", "AB"), ("BA", "A")), flavor).system
    back = parse_system(dump_system(s))
    assert back == s
    assert back.name == s.name


def test_parse_system_errors():
    with pytest.raises(ValueError):
        parse_system("alphabet: X\nX -> @ 1\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_system("flavor: probabilistic\nX -> Y\n")


@given(st.lists(st.sampled_from(["X", "Y"]), max_size=6))
def test_successor_probabilities_sum_to_one(tail):
    rules = (Rule("X", ("X", "Y"), Fraction(1, 3)), Rule("X", (), Fraction(2, 3)), Rule("Y", ("X",), Fraction(1)))
    s = PushdownSystem(PROBABILISTIC, ("X", "Y"), rules)
    for head in ("X", "Y"):
        out = successors(s, (head, *tail))
        assert sum(p for _, p in out) == 1
        assert all(c[len(c) - len(tail):] == tuple(tail) for c, _ in out)


def test_quantum_coin_valid():
    rules = (
        Rule("D", (), Amplitude(H, Phase.of(t1=H))),
        Rule("D", ("D", "D"), Amplitude(H, Phase.of(t1=1))),
    )
    assert validate(PushdownSystem(QUANTUM, ("D",), rules)) == []
    assert [v.kind for v in validate(PushdownSystem(PROBABILISTIC, ("D",), (Rule("D", (), H),)))] == ["sum"]


def test_verification_steps(aa_reduction):
    s = aa_reduction.system
    alpha = ("<A,A>", "<A,•>", "<•,A>", "<B,B>", "Z'")
    assert successors(s, ("C",) + alpha) == [(("N",) + alpha, Fraction(1))]
    assert successors(s, ("N",) + alpha) == [(("F",) + alpha, H), (("S",) + alpha, H)]
    assert successors(s, ("<A,B>", "Z'")) == [(("X<A,B>", "Z'"), H), (("Z'",), H)]


def test_two_way_guess_start():
    from pdsreduce.pcp import PcpInstance
    from pdsreduce.reduction import reduce_instance

    s = reduce_instance(PcpInstance.of(("A", "AB"), ("BA", "A"))).system
    assert successors(s, ("Z",)) == [(("G1^1", "Z'"), H), (("G2^1", "Z'"), H)]
