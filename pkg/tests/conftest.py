import os

import pytest

from discorel.lexicon import Lexicon
from discorel.pregroup import Grammar, Ty

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEMO = os.path.join(ROOT, "demo")

QUESTION = "Who influenced the philosopher who discovered calculus"
EXAMPLE_QUERY = "exists x1 x2 . infl(x0,x1) & phil(x1) & disc(x1,x2) & calc(x2)"


@pytest.fixture(scope="session")
def demo_grammar():
    return Grammar.load(os.path.join(DEMO, "grammar.json"))


@pytest.fixture(scope="session")
def demo_lexicon():
    return Lexicon.load(os.path.join(DEMO, "lexicon.json"))


@pytest.fixture(scope="session")
def q_type():
    return Ty.parse("q")


@pytest.fixture(scope="session")
def s_type():
    return Ty.parse("s")
