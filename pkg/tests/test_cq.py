import pytest

from conftest import EXAMPLE_QUERY, QUESTION
from discorel.cq import canonical_structure, contains, entails, equivalent, evaluate, sentence_query
from discorel.errors import FreeArityMismatchError, SignatureMismatchError
from discorel.homomorphism import enumerate_homomorphisms, find_homomorphism
from discorel.lexicon import Lexicon
from discorel.pregroup import Grammar, parse
from discorel.query import Query, parse_query
from discorel.structure import RelStructure
from discorel.wiring import Wiring, box
from oracles import brute_contains, brute_eval, frozen_cm, random_query, random_signature, random_structure, seeded

SPINOZA = RelStructure(
    {"infl": 2, "phil": 1, "disc": 2, "calc": 1},
    ["Spinoza", "Leibniz", "calculus"],
    {"infl": [("Spinoza", "Leibniz")], "phil": [("Leibniz",)], "disc": [("Leibniz", "calculus")], "calc": [("calculus",)]},
)


def test_canonical_structure_of_the_example():
    k = canonical_structure(parse_query(EXAMPLE_QUERY))
    assert set(k.universe) == {"x0", "x1", "x2"}
    assert k.sorted_tables() == {
        "calc": [("x2",)], "disc": [("x1", "x2")], "infl": [("x0", "x1")], "phil": [("x1",)],
    }


def test_canonical_structure_small_cases():
    top = canonical_structure(parse_query("true"))
    assert top.universe == () and top.size == 0
    loop = canonical_structure(parse_query("R(x,x)"))
    assert loop.universe == ("x",) and loop["R"] == {("x", "x")}


def test_example_query_has_one_homomorphism():
    assert enumerate_homomorphisms(canonical_structure(parse_query(EXAMPLE_QUERY)), SPINOZA) == [
        {"x0": "Spinoza", "x1": "Leibniz", "x2": "calculus"}
    ]
    assert evaluate(parse_query(EXAMPLE_QUERY), SPINOZA) == {("Spinoza",)}


def test_true_has_the_empty_answer():
    assert evaluate(parse_query("true"), SPINOZA) == {()}
    assert evaluate(parse_query("true"), RelStructure({}, [], {})) == {()}


def test_repeated_free_variable_answers():
    q = parse_query("lambda x x . phil(x)")
    assert evaluate(q, SPINOZA) == {("Leibniz", "Leibniz")}


def test_evaluation_signature_mismatch():
    with pytest.raises(SignatureMismatchError):
        evaluate(parse_query("phil(x,y)"), SPINOZA)


@pytest.mark.parametrize("seed", range(40))
def test_evaluation_agrees_with_valuations(seed):
    rng = seeded(9000 + seed)
    for _ in range(5):
        sig = random_signature(rng)
        q = random_query(rng, sig)
        k = random_structure(rng, sig, max_universe=4)
        assert evaluate(q, k) == brute_eval(q, k)


@pytest.mark.parametrize("seed", range(20))
def test_adding_an_atom_never_adds_answers(seed):
    rng = seeded(9500 + seed)
    for _ in range(5):
        sig = random_signature(rng)
        q = random_query(rng, sig)
        if not q.variables:
            continue
        symbol = rng.choice(list(sig))
        atom = (symbol, tuple(rng.choice(q.variables) for _ in range(sig[symbol])))
        stronger = Query(q.variables, q.free, q.atoms + (atom,), q.signature)
        k = random_structure(rng, sig, max_universe=4)
        assert evaluate(stronger, k) <= evaluate(q, k)


def test_containment_examples():
    q = parse_query(EXAMPLE_QUERY)
    assert contains(q, q)
    assert contains(parse_query("R(x0,x1) & S(x1)"), parse_query("R(x0,x1)"))
    assert not contains(parse_query("R(x0,x1)"), parse_query("R(x0,x1) & S(x1)"))
    assert contains(q, parse_query("exists x1 . infl(x0,x1) & phil(x1)"))


def test_containment_is_positional_on_free_variables():
    assert contains(parse_query("R(a,b) & S(b)"), parse_query("R(x,y)"))
    assert not contains(parse_query("lambda b a . R(a,b)"), parse_query("R(x,y)"))
    # two outputs equated on the left can only meet a query that equates them too
    assert contains(parse_query("lambda x x . R(x,x)"), parse_query("R(x,y)"))
    assert not contains(parse_query("R(x,y)"), parse_query("lambda x x . R(x,x)"))


def test_containment_free_arity_mismatch():
    with pytest.raises(FreeArityMismatchError):
        contains(parse_query("R(x,y)"), parse_query("exists y . R(x,y)"))


def test_folding_gives_equivalence():
    # the second atom folds onto the first
    assert equivalent(parse_query("exists y z . R(x,y) & R(x,z)"), parse_query("exists y . R(x,y)"))


def _printed_direction(q1, q2):
    """Homomorphism CM(q1) -> CM(q2) sending fv(q1) onto fv(q2)."""
    pins = dict(zip(q1.free, q2.free))
    return find_homomorphism(canonical_structure(q1), canonical_structure(q2), pins) is not None


@pytest.mark.parametrize("seed", range(40))
def test_containment_agrees_with_canonical_database(seed):
    rng = seeded(10_000 + seed)
    for _ in range(5):
        sig = random_signature(rng)
        q1 = random_query(rng, sig)
        q2 = random_query(rng, sig)
        q2 = Query(q2.variables + q1.free, q1.free, q2.atoms, sig) if len(q2.free) != len(q1.free) else q2
        assert contains(q1, q2) == brute_contains(q1, q2)


def test_reversed_direction_fails_the_oracle():
    q1, q2 = parse_query("R(x0,x1) & S(x1)"), parse_query("R(x0,x1)")
    assert brute_contains(q1, q2) and not brute_contains(q2, q1)
    assert contains(q1, q2)
    assert not _printed_direction(q1, q2)
    assert tuple(q1.free) in brute_eval(q2, frozen_cm(q1))


def test_entailment_examples(demo_grammar, demo_lexicon, s_type, q_type):
    apposition = parse(demo_grammar, "Spinoza influenced the philosopher Leibniz".split(), s_type)
    plain = parse(demo_grammar, "Spinoza influenced Leibniz".split(), s_type)
    other = parse(demo_grammar, "Leibniz discovered calculus".split(), s_type)
    assert entails(apposition, apposition, demo_lexicon)
    assert entails(apposition, plain, demo_lexicon)
    assert not entails(plain, apposition, demo_lexicon)
    assert not entails(plain, other, demo_lexicon)
    question = parse(demo_grammar, QUESTION.split(), q_type)
    assert str(sentence_query(question, demo_lexicon)) == EXAMPLE_QUERY
    with pytest.raises(ValueError):
        entails(plain, question, demo_lexicon)


def test_entailment_between_disjoint_symbols(s_type):
    g = Grammar.from_entries([("it", "n"), ("rains", "*n s"), ("snows", "*n s")])
    lex = Lexicon(
        {"s": 0},
        {("it", g.entries("it")[0]): Wiring(1, (), (), (0,)), ("rains", g.entries("rains")[0]): box("rain", 1),
         ("snows", g.entries("snows")[0]): box("snow", 1)},
    )
    r1, r2 = parse(g, ["it", "rains"], s_type), parse(g, ["it", "snows"], s_type)
    assert not entails(r1, r2, lex) and not entails(r2, r1, lex)
