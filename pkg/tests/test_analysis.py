import pytest

from synqa.analysis import (
    Gazetteer,
    analyze_sentence,
    chunk_phrases,
    extract_facts,
    load_gazetteers,
    recognize_entities,
    tag_pos,
)
from synqa.model import Sentence, Span
from synqa.preprocess import tokenize


def make_sentence(text, index=0, tagged=True):
    tokens = tokenize(text)
    if tagged:
        tokens = tag_pos(tokens)
    return Sentence(text=text, span=Span(0, len(text)), tokens=tuple(tokens), index=index)


PERSON_GAZ = Gazetteer(label="PERSON", entries=frozenset({"Marie Curie"}))
LOCATION_GAZ = Gazetteer(label="LOCATION", entries=frozenset({"Paris", "Geneva"}))


class TestTagPos:
    def test_discovery_sentence(self):
        tags = [t.pos for t in tag_pos(tokenize("Marie Curie discovered radium"))]
        assert tags == ["PROPN", "PROPN", "VERB", "NOUN"]

    def test_lemma_of_regular_ed_verb(self):
        tagged = tag_pos(tokenize("Marie Curie discovered radium"))
        assert tagged[2].lemma == "discover"

    def test_empty(self):
        assert tag_pos([]) == []

    def test_lexicon_and_suffix(self):
        tags = [t.pos for t in tag_pos(tokenize("the quickly"))]
        assert tags == ["DET", "ADV"]

    @pytest.mark.parametrize(
        "word, expected",
        [
            ("stopped", "stop"),
            ("making", "make"),
            ("was", "be"),
            ("met", "meet"),
            ("studied", "study"),
            ("arrived", "arrive"),
            ("agreed", "agree"),
            ("founded", "found"),
        ],
    )
    def test_verb_lemmas(self, word, expected):
        (token,) = tag_pos(tokenize(word))
        assert token.pos == "VERB"
        assert token.lemma == expected

    def test_noun_plural_lemma(self):
        tagged = tag_pos(tokenize("the dogs barked"))
        assert tagged[1].pos == "NOUN"
        assert tagged[1].lemma == "dog"

    def test_sentence_initial_common_word_not_propn(self):
        tagged = tag_pos(tokenize("Students gathered"))
        assert tagged[0].pos == "NOUN"

    def test_sentence_initial_name_is_propn(self):
        tagged = tag_pos(tokenize("Marie arrived"))
        assert tagged[0].pos == "PROPN"

    def test_numbers_and_punctuation(self):
        tagged = tag_pos(tokenize("in 1898 , 3.5"))
        assert [t.pos for t in tagged] == ["ADP", "NUM", "PUNCT", "NUM"]

    def test_suffix_adjective_and_noun(self):
        tagged = tag_pos(tokenize("a famous statement"))
        assert [t.pos for t in tagged] == ["DET", "ADJ", "NOUN"]

    def test_symbol_gets_x(self):
        (token,) = tag_pos(tokenize("&"))
        assert token.pos == "X"


class TestRecognizeEntities:
    def test_gazetteer_beats_capitalization_and_regex_dates(self):
        sentence = make_sentence("Marie Curie discovered radium in 1898")
        entities = recognize_entities(sentence, [PERSON_GAZ])
        assert [(e.label, e.token_range, e.confidence) for e in entities] == [
            ("PERSON", (0, 1), 1.0),
            ("DATE", (5, 5), 0.9),
        ]

    def test_no_detector_fires(self):
        sentence = make_sentence("it rained heavily")
        assert recognize_entities(sentence, []) == []

    def test_gazetteer_beats_capitalization(self):
        sentence = make_sentence("Paris is large")
        entities = recognize_entities(sentence, [LOCATION_GAZ])
        assert [(e.label, e.token_range, e.source) for e in entities] == [
            ("LOCATION", (0, 0), "GAZETTEER")
        ]

    def test_longest_match_wins(self):
        gaz = [
            Gazetteer(label="LOCATION", entries=frozenset({"York"})),
            Gazetteer(label="LOCATION", entries=frozenset({"New York City"})),
        ]
        sentence = make_sentence("They visited New York City")
        entities = recognize_entities(sentence, gaz)
        assert [(e.label, e.token_range) for e in entities] == [("LOCATION", (2, 4))]

    def test_label_priority_breaks_ties(self):
        gaz = [
            Gazetteer(label="ORG", entries=frozenset({"Sparta"})),
            Gazetteer(label="LOCATION", entries=frozenset({"Sparta"})),
        ]
        sentence = make_sentence("Sparta endured")
        entities = recognize_entities(sentence, gaz)
        assert [(e.label,) for e in entities] == [("LOCATION",)]

    def test_month_day_year_date(self):
        sentence = make_sentence("The summit ended on March 5, 1902")
        entities = recognize_entities(sentence, [])
        assert ("DATE", (4, 7), "REGEX") in [(e.label, e.token_range, e.source) for e in entities]

    def test_month_alone(self):
        sentence = make_sentence("The delegates arrived in January")
        entities = recognize_entities(sentence, [])
        assert [(e.label, e.token_range) for e in entities] == [("DATE", (4, 4))]

    def test_clock_time(self):
        sentence = make_sentence("It began at 9:30 sharp")
        entities = recognize_entities(sentence, [])
        assert ("TIME", (3, 5)) in [(e.label, e.token_range) for e in entities]

    def test_standalone_number(self):
        sentence = make_sentence("growth reached 3.5 percent")
        entities = recognize_entities(sentence, [])
        assert [(e.label, e.token_range) for e in entities] == [("NUMBER", (2, 2))]

    def test_year_outside_range_is_number(self):
        sentence = make_sentence("the figure 9999 appeared")
        entities = recognize_entities(sentence, [])
        assert [(e.label,) for e in entities] == [("NUMBER",)]

    def test_title_cue_makes_person(self):
        sentence = make_sentence("They met Dr. Smith today")
        entities = recognize_entities(sentence, [])
        assert [(e.label, e.token_range, e.source) for e in entities] == [
            ("PERSON", (3, 3), "CAPITALIZATION")
        ]

    def test_plain_propn_run_is_misc(self):
        sentence = make_sentence("They admired Nobel Prize winners")
        entities = recognize_entities(sentence, [])
        assert [(e.label, e.token_range) for e in entities] == [("MISC", (2, 3))]

    def test_no_overlaps(self, gazetteers):
        sentence = make_sentence("Marie Curie met Dr. Smith in Paris on March 5, 1902 at 9:30")
        entities = recognize_entities(sentence, gazetteers)
        claimed = set()
        for e in entities:
            span = set(range(e.token_range[0], e.token_range[1] + 1))
            assert not span & claimed
            claimed |= span


class TestChunkPhrases:
    def test_np_with_determiner_and_modifiers(self):
        sentence = make_sentence("the old dog barked")
        chunks = chunk_phrases(sentence)
        assert [(c.kind, c.token_range) for c in chunks] == [("NP", (0, 2))]

    def test_empty(self):
        sentence = Sentence(text="", span=Span(0, 0), tokens=(), index=0)
        assert chunk_phrases(sentence) == []

    def test_pp_contains_np(self):
        sentence = make_sentence("in 1898")
        chunks = chunk_phrases(sentence)
        assert [(c.kind, c.token_range) for c in chunks] == [("PP", (0, 1)), ("NP", (1, 1))]

    def test_nps_do_not_overlap(self):
        sentence = make_sentence("the old dog chased the quick fox into the deep forest")
        chunks = chunk_phrases(sentence)
        nps = [c for c in chunks if c.kind == "NP"]
        for a in nps:
            for b in nps:
                if a is not b:
                    assert a.token_range[1] < b.token_range[0] or b.token_range[1] < a.token_range[0]


class TestExtractFacts:
    def _facts(self, text, gazetteers=()):
        sentence = make_sentence(text)
        entities = recognize_entities(sentence, list(gazetteers))
        chunks = chunk_phrases(sentence)
        return sentence, extract_facts(sentence, entities, chunks, doc_id="d")

    def test_discovery_fact(self):
        sentence, facts = self._facts("Marie Curie discovered radium in 1898.", [PERSON_GAZ])
        assert len(facts) == 1
        fact = facts[0]
        assert fact.subject.token_range == (0, 1)
        assert fact.verb == 2
        assert fact.verb_lemma == "discover"
        assert fact.object is not None and fact.object.token_range == (3, 3)
        assert [(a.kind, a.chunk.token_range) for a in fact.adjuncts] == [("TIME", (4, 5))]
        assert fact.subject_entity == "PERSON"
        assert fact.object_entity is None

    def test_imperative_has_no_fact(self):
        _, facts = self._facts("Run!")
        assert facts == []

    def test_place_adjunct_no_object(self):
        sentence, facts = self._facts("The committee met in Geneva.", [LOCATION_GAZ])
        assert len(facts) == 1
        fact = facts[0]
        assert fact.object is None
        assert [(a.kind, a.chunk.token_range) for a in fact.adjuncts] == [("PLACE", (3, 4))]
        assert fact.verb_lemma == "meet"

    def test_subordinate_clause_blocks_all_verbs(self):
        _, facts = self._facts("The man who discovered radium died.")
        assert facts == []

    def test_sentence_initial_subordinator_does_not_block(self):
        _, facts = self._facts("When the storm passed the crew rested.")
        # "When" is sentence-initial, so it does not disqualify verbs.
        assert len(facts) == 1

    def test_subject_skips_np_inside_pp(self):
        sentence, facts = self._facts("The king of Spain abdicated quietly.")
        assert len(facts) == 1
        assert facts[0].subject.token_range == (0, 1)

    def test_object_skips_np_inside_pp(self):
        sentence, facts = self._facts("The crew sailed in the storm.")
        assert len(facts) == 1
        assert facts[0].object is None

    def test_place_by_preposition_and_propn(self):
        sentence, facts = self._facts("Students gathered in the Great Hall.")
        assert len(facts) == 1
        assert [(a.kind,) for a in facts[0].adjuncts] == [("PLACE",)]

    def test_other_adjunct(self):
        sentence, facts = self._facts("The crew worked with great care.")
        assert len(facts) == 1
        assert [(a.kind,) for a in facts[0].adjuncts] == [("OTHER",)]

    def test_determinism(self, gazetteers):
        text = "Marie Curie founded the Radium Institute in Paris."
        first = analyze_sentence(make_sentence(text, tagged=False), gazetteers, doc_id="d")
        second = analyze_sentence(make_sentence(text, tagged=False), gazetteers, doc_id="d")
        assert first == second


def test_load_gazetteers_maps_stem_to_label(tmp_path):
    (tmp_path / "person.txt").write_text("Ada Lovelace\n", encoding="utf-8")
    (tmp_path / "location.txt").write_text("# comment\nLondon\n", encoding="utf-8")
    loaded = load_gazetteers(tmp_path)
    assert [(g.label, sorted(g.entries)) for g in loaded] == [
        ("LOCATION", ["London"]),
        ("PERSON", ["Ada Lovelace"]),
    ]
