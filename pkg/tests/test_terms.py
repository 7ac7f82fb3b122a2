import random

import pytest
from hypothesis import given, settings, strategies as st

from kleeneseries.errors import NotInStarDomain, TermSyntaxError
from kleeneseries.semiring import INF, N, NINF
from kleeneseries.terms import (INF_CONST, ONE, TERMS, Letter, NatConst, NormalForm, Plus, Prod,
                                Star, Sum, eval_term, is_ideal, letters_of, normalize,
                                normalize_disjoint, parse_term, to_text)

from oracles import random_term, term_series

a, b, c = Letter("a"), Letter("b"), Letter("c")
seeds = st.integers(0, 2 ** 32 - 1)


def P(text):
    return parse_term(text)


def series(t, L, S=NINF, alphabet="ab"):
    return dict(eval_term(t, S, alphabet, L).items())


def test_parse_precedence():
    assert P("a+b.c*") == Sum(a, Prod(b, Star(c)))
    assert P("(1+a)*") == Star(Sum(ONE, a))
    assert P("2a") == Prod(NatConst(2), a)
    assert P("a b") == Prod(a, b)
    assert P("a**") == Star(Star(a))
    assert P("inf.a") == Prod(INF_CONST, a)


def test_parse_is_left_associative():
    assert P("a+b+c") == Sum(Sum(a, b), c)
    assert P("abc") == Prod(Prod(a, b), c)


@pytest.mark.parametrize("text", ["", "a+", "(a", "a)", "a#b", "*a"])
def test_parse_errors(text):
    with pytest.raises(TermSyntaxError):
        P(text)


def test_parse_error_reports_position():
    with pytest.raises(TermSyntaxError, match="position 2"):
        parse_term("a+c", alphabet="ab")
    with pytest.raises(TermSyntaxError, match="inf"):
        parse_term("inf", allow_inf=False)


def test_printing():
    assert to_text(P("a+b.c*")) == "a+b.c*"
    assert to_text(P("(a+b)*")) == "(a+b)*"
    assert to_text(P("a.(b+c)")) == "a.(b+c)"
    assert to_text(P("a+(b+c)")) == "a+(b+c)"
    assert to_text(P("(ab)c")) == "a.b.c"
    assert to_text(P("a(bc)")) == "a.(b.c)"
    assert to_text(Plus(P("a+b"))) == "(a+b).(a+b)*"


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_parse_inverts_print(seed):
    t = random_term(random.Random(seed), 5)
    assert parse_term(to_text(t)) == t


def test_eval_examples():
    assert series(P("a*"), 2, N, "a") == {"": 1, "a": 1, "aa": 1}
    assert series(P("1*"), 3, NINF, "a") == {"": INF}
    assert series(P("(1+a)*"), 1, NINF, "a") == {"": INF, "a": INF}
    with pytest.raises(NotInStarDomain, match="1\\*"):
        eval_term(P("1*"), N, "a", 2)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_eval_matches_factorization_oracle(seed):
    t = random_term(random.Random(seed), 5)
    assert series(t, 5) == term_series(t, "ab", 5)


def test_eval_over_n_matches_oracle_on_proper_stars():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        t = random_term(rng, 5, constants=(0, 1, 2))
        try:
            expected = term_series(t, "ab", 5, over_n=True)
        except Exception:
            with pytest.raises(NotInStarDomain):
                eval_term(t, N, "ab", 5)
            continue
        assert series(t, 5, N) == expected
        checked += 1


def test_eval_handles_shared_subterms():
    t = a
    for _ in range(200):
        t = Sum(t, t)           # a DAG with 2^200 leaves
    assert series(t, 1, NINF, "a") == {"a": 2 ** 200}


@pytest.mark.parametrize("text, expected", [
    ("a + 0", True), ("a.2", True), ("1", False), ("a.a*", True), ("a*.a", True),
    ("2.a", True), ("a*", False), ("a.b", True), ("a+1", False), ("inf.a", False),
    ("(a+b).(a+b)*", True), ("a.b*", False),
])
def test_is_ideal(text, expected):
    assert is_ideal(P(text)) is expected


def test_is_ideal_accepts_plus_nodes():
    assert is_ideal(Plus(P("a+b")))
    assert not is_ideal(Plus(ONE))


@pytest.mark.parametrize("text, expected", [
    ("a*", (1, "a.a*", "0")),
    ("(1+a)*", (0, "0", "1+a.a*")),
    ("2", (2, "0", "0")),
    ("0", (0, "0", "0")),
    ("inf", (0, "0", "1")),
    ("a", (0, "a", "0")),
])
def test_normalize_examples(text, expected):
    nf = normalize(P(text))
    assert (nf.tc, to_text(nf.t0), to_text(nf.tinf)) == expected


def test_normal_form_text():
    assert str(normalize(P("a*"))) == "tc=1, t0=a.a*, tinf=0"


@pytest.mark.parametrize("text, expected", [
    ("a + 1*a", (0, "0", "a")),
    ("a + 1*b", (0, "a", "b")),
    ("3", (3, "0", "0")),
])
def test_normalize_disjoint_examples(text, expected):
    nf = normalize_disjoint(P(text), "ab")
    assert (nf.tc, to_text(nf.t0), to_text(nf.tinf)) == expected


def test_normalize_disjoint_keeps_words_outside_tinf():
    nf = normalize_disjoint(P("a + b + aa + 1*(b+aa)"), "ab")
    assert series(nf.t0, 3) == {"a": 1}
    assert series(nf.to_term(), 3) == series(P("a + b + aa + 1*(b+aa)"), 3)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_normalize_preserves_behaviour(seed):
    t = random_term(random.Random(seed), 5)
    nf = normalize(t)
    assert isinstance(nf.tc, int)
    assert is_ideal(nf.t0)
    if nf.tc:
        assert is_ideal(nf.tinf)
    assert series(nf.to_term(), 5) == series(t, 5)


def test_letters_of():
    assert letters_of(P("a.(b+1)*+inf")) == {"a", "b"}


def test_term_algebra_star():
    assert TERMS.star(TERMS.zero) == ONE
    assert TERMS.star(a) == Star(a)
    assert TERMS.add(TERMS.zero, a) == a
    assert TERMS.mul(TERMS.one, a) == a
