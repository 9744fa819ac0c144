import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import QUESTION
from discorel.errors import CycleError, ScaleError, TypeSyntaxError, UnknownWordError
from discorel.pregroup import (
    BasicTypePoset,
    Grammar,
    ParseDiagram,
    Ty,
    adjoint,
    brute_force_reduce,
    enumerate_parses,
    expand_induced_steps,
    grammatical,
    parse,
    parse_violations,
    poset_closure,
)
from oracles import brute_parses, random_instance, seeded

tokens = st.lists(
    st.tuples(st.sampled_from(["n", "s", "q", "i", "o"]), st.integers(-3, 3)), max_size=6
).map(lambda ts: Ty(tuple(ts)))


def test_poset_closure_example_order():
    p = poset_closure({("n", "i"), ("n", "o")}, set("sqdnio"))
    strict = {(a, b) for a, b in p.order if a != b}
    assert strict == {("n", "i"), ("n", "o")}
    assert all(p.leq(x, x) for x in "sqdnio")


def test_poset_closure_transitive_and_trivial():
    assert poset_closure({("a", "b"), ("b", "c")}, "abc").leq("a", "c")
    p = poset_closure(set(), {"s"})
    assert p.order == {("s", "s")} and p.is_discrete


def test_poset_closure_rejects_cycles():
    with pytest.raises(CycleError):
        poset_closure({("a", "b"), ("b", "a")}, {"a", "b"})
    with pytest.raises(CycleError):
        poset_closure({("a", "b"), ("b", "c"), ("c", "a")}, "abc")


def test_poset_closure_rejects_unknown_names():
    with pytest.raises(ValueError):
        poset_closure({("a", "z")}, {"a"})


@pytest.mark.parametrize(
    "text, side, expected",
    [
        ("i", "left", "*i"),
        ("*i s o*", "right", "o** s* i"),
        ("", "left", ""),
        ("", "right", ""),
    ],
)
def test_adjoint_examples(text, side, expected):
    assert adjoint(Ty.parse(text), side) == Ty.parse(expected)


def test_adjoint_example_as_tokens():
    t = Ty((("i", -1), ("s", 0), ("o", 1)))
    assert adjoint(t, "right").tokens == (("o", 2), ("s", 1), ("i", 0))


@given(tokens)
def test_adjoint_involution(t):
    assert adjoint(adjoint(t, "left"), "right") == t
    assert adjoint(adjoint(t, "right"), "left") == t


@given(tokens)
def test_type_syntax_round_trip(t):
    assert Ty.parse(str(t)) == t


@pytest.mark.parametrize("bad", ["*i*", "i**x", "(n)", "*"])
def test_type_syntax_errors(bad):
    with pytest.raises(TypeSyntaxError):
        Ty.parse(bad)


def test_expand_induced_steps_single_token():
    g = Grammar.from_entries([("calc", "n")], order=[("n", "i"), ("n", "o")], basics="sqdnio")
    expanded = expand_induced_steps(g)
    assert set(expanded.dictionary) == {("calc", Ty.parse(t)) for t in ("n", "i", "o")}
    assert expanded.dictionary[0] == ("calc", Ty.parse("n"))
    assert expanded.basics.is_discrete


def test_expand_induced_steps_discrete_is_identity():
    g = Grammar.from_entries([("w", "*a b"), ("v", "a")])
    assert expand_induced_steps(g) == g


def test_expand_induced_steps_product_of_choices():
    g = Grammar.from_entries([("w", "a c")], order=[("a", "b"), ("c", "d")])
    assert set(expand_induced_steps(g).dictionary) == {
        ("w", Ty.parse(t)) for t in ("a c", "b c", "a d", "b d")
    }


def test_expand_induced_steps_moves_adjoints_down():
    g = Grammar.from_entries([("w", "*b")], order=[("a", "b")])
    assert set(expand_induced_steps(g).dictionary) == {("w", Ty.parse("*b")), ("w", Ty.parse("*a"))}


def test_example_sentence_is_grammatical(demo_grammar, q_type):
    assert grammatical(demo_grammar, QUESTION.split(), q_type)


def test_single_word_identity(s_type):
    g = Grammar.from_entries([("rains", "s")])
    assert grammatical(g, ["rains"], s_type)
    r = parse(g, ["rains"], s_type)
    assert r.matching == () and r.output == (0,)


def test_calculus_influenced_is_not_a_sentence(demo_grammar, s_type):
    words = ["calculus", "influenced"]
    assert not grammatical(demo_grammar, words, s_type)
    assert brute_parses(demo_grammar, words, s_type) == []
    assert parse(demo_grammar, words, s_type) is None


def test_unknown_word(demo_grammar, s_type):
    with pytest.raises(UnknownWordError):
        grammatical(demo_grammar, ["Hegel"], s_type)
    with pytest.raises(UnknownWordError):
        parse(demo_grammar, ["Hegel"], s_type)


def test_example_parse_cup_pattern(demo_grammar, q_type):
    r = parse(demo_grammar, QUESTION.split(), q_type)
    assert [str(t) for t in r.assignment] == [
        "q s* i", "*i s o*", "d", "*d n", "*n n s* i", "*i s o*", "n",
    ]
    # Who-influenced (i, s), influenced-who (o* to n), the-philosopher,
    # philosopher-who, who-discovered (i, s), discovered-calculus
    assert r.matching == ((1, 4), (2, 3), (5, 10), (6, 7), (8, 9), (11, 14), (12, 13), (15, 16))
    assert r.output == (0,)
    assert parse_violations(demo_grammar, r) == []


def test_example_parses_match_oracle_on_expanded_dictionary(demo_grammar, q_type):
    words = QUESTION.split()
    parses = enumerate_parses(demo_grammar, words, q_type, limit=10)
    assert len(parses) == 1
    expanded = expand_induced_steps(demo_grammar)
    found = brute_parses(expanded, words, q_type, max_tokens=18)
    # the two induced steps can each be taken by either word of the cup
    assert len(found) == 4
    assert {m for _, m in found} == {parses[0].matching}
    again = enumerate_parses(expanded, words, q_type, limit=10)
    assert [(p.choices, p.matching) for p in again] == found


def test_enumerate_unambiguous_and_limit(s_type):
    g = Grammar.from_entries([("Alice", "n"), ("sleeps", "*n s")])
    assert len(enumerate_parses(g, ["Alice", "sleeps"], s_type, limit=5)) == 1
    with pytest.raises(ValueError):
        enumerate_parses(g, ["Alice", "sleeps"], s_type, limit=0)


def test_coordination_ambiguity():
    g = Grammar.from_entries(
        [("men", "n"), ("women", "n"), ("and", "*n n n*"), ("who", "*n n s* n"), ("read", "*n s")]
    )
    words = "men and women who read".split()
    n = Ty.parse("n")
    parses = enumerate_parses(g, words, n, limit=10)
    assert len(parses) == 2
    assert len({p.matching for p in parses}) == 2
    assert [(p.choices, p.matching) for p in parses] == brute_parses(g, words, n)
    # (men and women) who read: the relative pronoun's noun is the output
    assert parses[0].output == (6,)
    # men and (women who read): the conjunction's noun is
    assert parses[1].output == (2,)


def test_brute_force_reduce_examples():
    poset = BasicTypePoset.discrete({"n"})
    # only n* n contracts; n n* would be an expansion
    assert brute_force_reduce(Ty.parse("n n* n"), Ty.parse("n"), poset) == {frozenset({(1, 2)})}
    t = Ty.parse("n *n s")
    assert frozenset() in brute_force_reduce(t, t, _ns())
    p = poset_closure({("n", "i")}, {"n", "i"})
    assert brute_force_reduce(Ty.parse("n"), Ty.parse("i"), p) == {frozenset()}


def _ns():
    return poset_closure(set(), {"n", "s"})


def test_brute_force_scale_guard():
    with pytest.raises(ScaleError):
        brute_force_reduce(Ty.parse(" ".join(["n"] * 17)), Ty.parse("n"), _ns())


def test_empty_utterance():
    g = Grammar.from_entries([("w", "s")])
    assert grammatical(g, [], Ty())
    assert not grammatical(g, [], Ty.parse("s"))
    r = parse(g, [], Ty())
    assert r.words == () and r.matching == () and r.output == ()


def test_words_with_empty_entries():
    g = Grammar.from_entries([("Alice", "n"), ("well", ""), ("sleeps", "*n s"), ("sleeps", "")])
    s = Ty.parse("s")
    for words in (["Alice", "well", "sleeps"], ["well", "Alice", "sleeps", "well"]):
        assert grammatical(g, words, s)
        assert [(p.choices, p.matching) for p in enumerate_parses(g, words, s)] == brute_parses(g, words, s)
    assert not grammatical(g, ["well", "sleeps"], s)
    assert grammatical(g, ["well", "sleeps"], Ty())


def test_parse_is_deterministic(demo_grammar, q_type):
    words = QUESTION.split()
    assert parse(demo_grammar, words, q_type) == parse(demo_grammar, words, q_type)


def test_validator_catches_broken_diagrams(demo_grammar, q_type):
    r = parse(demo_grammar, QUESTION.split(), q_type)
    crossing = ParseDiagram(r.words, r.assignment, r.choices, ((1, 4), (2, 5)) + r.matching[2:], r.output, r.target)
    assert parse_violations(demo_grammar, crossing)
    wrong_target = ParseDiagram(r.words, r.assignment, r.choices, r.matching, r.output, Ty.parse("s"))
    assert parse_violations(demo_grammar, wrong_target)
    wrong_entry = ParseDiagram(r.words, r.assignment, (1,) + r.choices[1:], r.matching, r.output, r.target)
    assert parse_violations(demo_grammar, wrong_entry)


def test_parse_diagram_json_round_trip(demo_grammar, q_type):
    r = parse(demo_grammar, QUESTION.split(), q_type)
    assert ParseDiagram.from_json(r.to_json()) == r


def test_grammar_json_round_trip(demo_grammar):
    again = Grammar.from_json(demo_grammar.to_json())
    assert again == demo_grammar
    for entry in demo_grammar.to_json()["dictionary"]:
        assert str(Ty.parse(entry["type"])) == entry["type"]


@pytest.mark.parametrize("seed", range(100))
def test_parser_agrees_with_oracle(seed):
    rng = seeded(1000 + seed)
    for _ in range(5):
        g, words, target = random_instance(rng)
        expected = brute_parses(g, words, target)
        assert grammatical(g, words, target) == bool(expected)
        parses = enumerate_parses(g, words, target, limit=10_000)
        assert [(p.choices, p.matching) for p in parses] == expected
        for p in parses:
            assert parse_violations(g, p) == []
        assert grammatical(expand_induced_steps(g), words, target) == bool(expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_expansion_soundness(seed):
    g, words, target = random_instance(seeded(seed), max_tokens=10, max_words=4)
    assert grammatical(g, words, target) == grammatical(expand_induced_steps(g), words, target)
