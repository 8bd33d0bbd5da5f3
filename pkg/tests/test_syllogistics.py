import pytest

from exigraph.kb import ASSERTED, Kind, KnowledgeBase
from exigraph.logic3 import FALSE, TRUE, UNKNOWN
from exigraph.syllogistics import (CategoricalProposition, InvalidMoodError,
                                   Mood, closure, contradictions,
                                   eval_proposition, infer_syllogism,
                                   valid_moods)

from oracles import oracle_countermodel, oracle_mood_names


def prop(kb, form, s, p):
    return CategoricalProposition(form, kb.upsert_entity(s), kb.upsert_entity(p))


def store(kb, form, s, p, value=TRUE, prov=ASSERTED):
    kb.assert_proposition(form, kb.upsert_entity(s), kb.upsert_entity(p),
                          value, prov)


# -- the mood table -------------------------------------------------------

def test_fifteen_unconditional_moods():
    names = {m.name for m in valid_moods(False)}
    assert len(names) == 15
    assert {"AAA-1", "EAE-1", "AII-1", "EIO-1"} <= names


def test_twenty_four_with_import():
    assert len(valid_moods(True)) == 24


def test_aaa2_absent_with_countermodel():
    assert "AAA-2" not in {m.name for m in valid_moods(True)}
    cm = oracle_countermodel(2, ("A", "A", "A"), True)
    assert cm is not None and cm[0] <= 3


def test_table_matches_independent_oracle_without_import():
    assert {m.name for m in valid_moods(False)} == oracle_mood_names(False, 3)


def test_import_only_moods_are_flagged():
    conditional = {m.name for m in valid_moods(True)} \
        - {m.name for m in valid_moods(False)}
    assert conditional == {"AAI-1", "EAO-1", "AEO-2", "EAO-2", "AAI-3",
                           "EAO-3", "AAI-4", "AEO-4", "EAO-4"}
    for m in valid_moods(True):
        assert m.requires_import == (m.name in conditional)
        if m.requires_import:
            assert m.import_term in ("S", "M", "P")


# -- single-step inference ------------------------------------------------

def mood(name):
    forms, figure = name.split("-")
    return next(m for m in valid_moods(True)
                if m.figure == int(figure) and "".join(m.forms) == forms)


def test_barbara():
    kb = KnowledgeBase()
    concl = infer_syllogism(kb, prop(kb, "A", "men", "mortal"),
                            prop(kb, "A", "greeks", "men"), mood("AAA-1"))
    assert concl == prop(kb, "A", "greeks", "mortal")


def test_darapti_needs_a_known_member():
    kb = KnowledgeBase()
    major = prop(kb, "A", "m", "p")
    minor = prop(kb, "A", "m", "s")
    assert infer_syllogism(kb, major, minor, mood("AAI-3")) is None
    kb.assert_membership(kb.upsert_entity("x"), kb.upsert_entity("m"), TRUE)
    assert infer_syllogism(kb, major, minor, mood("AAI-3")) \
        == prop(kb, "I", "s", "p")


def test_no_shared_middle_term():
    kb = KnowledgeBase()
    assert infer_syllogism(kb, prop(kb, "A", "a", "b"),
                           prop(kb, "A", "c", "d"), mood("AAA-1")) is None


def test_invalid_mood_rejected():
    kb = KnowledgeBase()
    bogus = Mood(2, ("A", "A", "A"), False)
    with pytest.raises(InvalidMoodError):
        infer_syllogism(kb, prop(kb, "A", "a", "b"),
                        prop(kb, "A", "c", "a"), bogus)


# -- evaluation -----------------------------------------------------------

def test_eval_after_closure():
    kb = KnowledgeBase()
    store(kb, "A", "men", "mortal")
    store(kb, "A", "greeks", "men")
    closure(kb)
    assert eval_proposition(kb, prop(kb, "A", "greeks", "mortal")) is TRUE


def test_eval_counterexample_beats_store():
    kb = KnowledgeBase()
    store(kb, "A", "s", "p")
    kb.assert_membership(kb.upsert_entity("socrates"), kb.upsert_entity("s"), TRUE)
    kb.assert_membership(kb.upsert_entity("socrates"), kb.upsert_entity("p"), FALSE)
    assert eval_proposition(kb, prop(kb, "A", "s", "p")) is FALSE
    assert contradictions(kb)  # reported, not silently resolved


def test_eval_fresh_pair_unknown():
    kb = KnowledgeBase()
    assert eval_proposition(kb, prop(kb, "A", "x", "y")) is UNKNOWN


def test_eval_particular_witness():
    kb = KnowledgeBase()
    kb.assert_membership(kb.upsert_entity("x"), kb.upsert_entity("s"), TRUE)
    kb.assert_membership(kb.upsert_entity("x"), kb.upsert_entity("p"), TRUE)
    assert eval_proposition(kb, prop(kb, "I", "s", "p")) is TRUE
    assert eval_proposition(kb, prop(kb, "E", "s", "p")) is FALSE


# -- closure --------------------------------------------------------------

def test_closure_transitive_chain():
    kb = KnowledgeBase()
    store(kb, "A", "a", "b")
    store(kb, "A", "b", "c")
    store(kb, "A", "c", "d")
    assert closure(kb) == 3
    for s, p in (("a", "c"), ("b", "d"), ("a", "d")):
        stored = kb.proposition("A", kb.upsert_entity(s), kb.upsert_entity(p))
        assert stored is not None and stored.value is TRUE
        assert stored.provenance.kind is Kind.DEDUCED
        assert len(stored.provenance.sources) == 2


def test_closure_fixpoint_and_empty():
    kb = KnowledgeBase()
    assert closure(kb) == 0
    store(kb, "A", "a", "b")
    store(kb, "A", "b", "c")
    closure(kb)
    assert closure(kb) == 0


def test_closure_deterministic_across_insert_order():
    def run(pairs):
        kb = KnowledgeBase()
        for s, p in pairs:
            store(kb, "A", s, p)
        closure(kb)
        return {(q.form, kb.label(q.subject), kb.label(q.predicate))
                for q in kb.propositions()}

    pairs = [("a", "b"), ("b", "c"), ("c", "d"), ("e", "b")]
    assert run(pairs) == run(list(reversed(pairs)))


def test_closure_monotone_under_added_fact():
    kb1 = KnowledgeBase()
    store(kb1, "A", "a", "b")
    store(kb1, "A", "b", "c")
    closure(kb1)
    base = {(p.form, kb1.label(p.subject), kb1.label(p.predicate))
            for p in kb1.propositions()}

    kb2 = KnowledgeBase()
    store(kb2, "A", "a", "b")
    store(kb2, "A", "b", "c")
    store(kb2, "A", "c", "d")
    closure(kb2)
    bigger = {(p.form, kb2.label(p.subject), kb2.label(p.predicate))
              for p in kb2.propositions()}
    assert base <= bigger


def test_deduced_propositions_have_no_countermodel():
    # soundness: every deduced proposition follows from the premises
    kb = KnowledgeBase()
    store(kb, "A", "men", "mortal")
    store(kb, "A", "greeks", "men")
    store(kb, "E", "mortal", "gods")
    closure(kb)
    premises = [("A", "men", "mortal"), ("A", "greeks", "men"),
                ("E", "mortal", "gods")]
    terms = sorted({t for _, s, p in premises for t in (s, p)})
    for stored in kb.propositions():
        if stored.provenance.kind is not Kind.DEDUCED:
            continue
        concl = (stored.form, kb.label(stored.subject), kb.label(stored.predicate))
        assert _entailed(premises, concl, terms), concl


def _entailed(premises, concl, terms):
    import itertools
    from oracles import _form_holds
    for n in range(4):
        for masks in itertools.product(range(1 << n), repeat=len(terms)):
            ext = dict(zip(terms, masks))
            if all(_form_holds(f, ext[s], ext[p]) for f, s, p in premises):
                f, s, p = concl
                if not _form_holds(f, ext[s], ext[p]):
                    return False
    return True
