import pytest
from hypothesis import given, settings, strategies as st

from exigraph import lang
from exigraph.lang import (AreAllQ, AreAnyQ, CategoricalStmt, DidSpoQ, IsAQ,
                           Lexicon, LexiconStmt, MembershipStmt, ParseError,
                           RuleStmt, SpoStmt, TriggerStmt,
                           UnsupportedFormError, parse_question,
                           parse_statement, render)

MOON_LEXICON = Lexicon({"people": "person", "been to": "was at"})


# -- statements -----------------------------------------------------------

def test_categorical_statement():
    assert parse_statement("All astronauts are people.") \
        == CategoricalStmt("A", "astronauts", "people")


def test_membership_statement():
    assert parse_statement("Socrates is a man.") == MembershipStmt("socrates", "man")


def test_spo_statement_with_preposition():
    assert parse_statement("American astronauts flew to the Moon.") \
        == SpoStmt("american astronauts", "flew to", "moon")


def test_spo_statement_without_preposition():
    assert parse_statement("The tractor driver sees the tractor.") \
        == SpoStmt("tractor driver", "sees", "tractor")


@pytest.mark.parametrize("line,form", [
    ("All men are mortal.", "A"),
    ("No men are mortal.", "E"),
    ("Some men are mortal.", "I"),
    ("Some men are not mortal.", "O"),
])
def test_four_categorical_forms(line, form):
    ast = parse_statement(line)
    assert ast == CategoricalStmt(form, "men", "mortal")


def test_rule_statement():
    assert parse_statement("rule: X flew to Y => X was at Y.") \
        == RuleStmt("flew to", "was at")


def test_lexicon_statement():
    assert parse_statement("lexicon: been to = was at.") \
        == LexiconStmt("been to", "was at")


def test_trigger_statement():
    ast = parse_statement('trigger: when * asked * then "answer {object}".')
    assert ast == TriggerStmt("*", "asked", "*", "answer {object}")


def test_lexicon_applies_to_terms():
    ast = parse_statement("All astronauts are people.", MOON_LEXICON)
    assert ast.predicate == "person"


def test_comments_and_case_insensitivity():
    assert parse_statement("ALL MEN ARE MORTAL.  # classic") \
        == CategoricalStmt("A", "men", "mortal")


def test_missing_period_reports_offset():
    with pytest.raises(ParseError) as err:
        parse_statement("Socrates is a man")
    assert err.value.offset == len("Socrates is a man")
    assert "." in err.value.expected


def test_parse_error_on_gibberish():
    with pytest.raises(ParseError):
        parse_statement("ha.")


def test_linking_verb_never_an_spo_verb():
    with pytest.raises(ParseError):
        parse_statement("Socrates is mortal.")


# -- questions ------------------------------------------------------------

def test_is_a_question():
    assert parse_question("Is Socrates a man?") == IsAQ("socrates", "man")


def test_are_all_and_are_any():
    assert parse_question("Are all men mortal?") == AreAllQ("men", "mortal")
    assert parse_question("Are any men mortal?") == AreAnyQ("men", "mortal")


def test_have_question_normalized_through_lexicon():
    assert parse_question("Have people been to the Moon?", MOON_LEXICON) \
        == DidSpoQ("person", "was at", "moon")


def test_did_question_needs_no_lexicon():
    assert parse_question("Did american astronauts fly to the moon?") \
        == DidSpoQ("american astronauts", "fly to", "moon")


def test_cognac_question_rejected_not_answered():
    with pytest.raises(UnsupportedFormError) as err:
        parse_question("Have you stopped drinking cognac in the morning?",
                       MOON_LEXICON)
    assert "supported question forms" in str(err.value)


def test_unsupported_shape_lists_alternatives():
    with pytest.raises(UnsupportedFormError) as err:
        parse_question("Why is the sky blue?")
    for shape in ("Is <Proper>", "Are all", "Are any"):
        assert shape in str(err.value)


def test_question_must_end_with_mark():
    with pytest.raises(ParseError):
        parse_question("Is Socrates a man")


# -- lexicon --------------------------------------------------------------

def test_lexicon_canon_is_idempotent():
    lex = Lexicon({"people": "person", "been to": "was at"})
    assert lex.canon("people") == "person"
    assert lex.canon(lex.canon("people")) == lex.canon("people")


def test_lexicon_rejects_cycles():
    lex = Lexicon({"a": "b"})
    with pytest.raises(ValueError):
        lex.add("b", "a")
    with pytest.raises(ValueError):
        lex.add("c", "c")


def test_lexicon_applies_word_wise_inside_phrases():
    lex = Lexicon({"astronauts": "astronaut"})
    assert lex.canon("american astronauts") == "american astronaut"


# -- rendering and round trips --------------------------------------------

def test_render_examples():
    assert render(CategoricalStmt("A", "men", "mortal")) == "All men are mortal."
    assert render(MembershipStmt("socrates", "man")) == "Socrates is a man."
    assert render(MembershipStmt("x", "apple")) == "X is an apple."


CORPUS = [
    "All astronauts are people.",
    "No stones are people.",
    "Some birds are singers.",
    "Some birds are not singers.",
    "Socrates is a man.",
    "Gagarin is an astronaut.",
    "American astronauts flew to the Moon.",
    "The tractor driver sees the tractor.",
    "rule: X flew to Y => X was at Y.",
    "lexicon: been to = was at.",
    'trigger: when * asked * then "answer {object}".',
    "Is Socrates a man?",
    "Are all men mortal?",
    "Are any birds singers?",
    "Did american astronauts fly to the moon?",
]


@pytest.mark.parametrize("line", CORPUS)
def test_render_parse_idempotent_on_corpus(line):
    parse = parse_question if line.endswith("?") else parse_statement
    once = render(parse(line))
    assert render(parse(once)) == once


# hypothesis generators constrained to the grammar: noun phrases avoid
# keywords/prepositions; objects are single words when the verb has no
# preposition; are-all/are-any predicates are single words
WORDS = ["moon", "apple", "garden", "tractor", "driver", "socrates",
         "plato", "athens", "star", "river", "stone", "bird", "fish",
         "cloud", "signal"]
VERB_HEADS = ["sees", "likes", "visited", "painted", "orbits", "follows"]

word = st.sampled_from(WORDS)
noun = st.lists(word, min_size=1, max_size=2, unique=True).map(" ".join)
prep_verb = st.tuples(st.sampled_from(VERB_HEADS),
                      st.sampled_from(lang.PREPOSITIONS)).map(" ".join)
bare_verb = st.sampled_from(VERB_HEADS)


def spo_parts():
    return st.one_of(
        st.tuples(noun, prep_verb, noun),
        st.tuples(noun, bare_verb, word))


ast_strategy = st.one_of(
    st.builds(MembershipStmt, noun, noun),
    st.builds(CategoricalStmt, st.sampled_from("AEIO"), noun, noun),
    spo_parts().map(lambda t: SpoStmt(*t)),
    st.builds(RuleStmt, st.one_of(prep_verb, bare_verb),
              st.one_of(prep_verb, bare_verb)),
    st.builds(LexiconStmt, word, word).filter(
        lambda a: a.surface != a.canonical),
    spo_parts().map(lambda t: TriggerStmt(*t, "react to {object}")),
    st.builds(IsAQ, noun, noun),
    st.builds(AreAllQ, noun, word),
    st.builds(AreAnyQ, noun, word),
    spo_parts().map(lambda t: DidSpoQ(*t)),
)


def reparse(line: str):
    return (parse_question if line.endswith("?") else parse_statement)(line)


@settings(max_examples=300, deadline=None)
@given(ast_strategy)
def test_parse_render_identity(ast):
    assert reparse(render(ast)) == ast


@settings(max_examples=200, deadline=None)
@given(ast_strategy)
def test_render_parse_fixpoint(ast):
    line = render(ast)
    assert render(reparse(line)) == line
