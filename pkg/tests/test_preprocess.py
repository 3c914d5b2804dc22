import pytest
from hypothesis import given, strategies as st

from synqa.model import span_text
from synqa.preprocess import (
    build_document,
    normalize,
    paragraph_spans,
    segment,
    tokenize,
)


class TestNormalize:
    def test_contraction_and_whitespace(self):
        text, report = normalize("don't  stop")
        assert text == "do not stop"
        assert report.contractions_expanded == 1
        assert report.whitespace_collapsed == 1

    def test_empty(self):
        assert normalize("") == ("", normalize("")[1])
        assert normalize("")[0] == ""

    def test_fixed_point(self):
        text, report = normalize("plain text")
        assert text == "plain text"
        assert report.contractions_expanded == 0
        assert report.quotes_normalized == 0
        assert report.whitespace_collapsed == 0

    def test_curly_quotes_folded(self):
        text, report = normalize("“it’s here”")
        assert text == '"it is here"'
        assert report.quotes_normalized == 3
        assert report.contractions_expanded == 1

    def test_capitalized_contraction(self):
        assert normalize("Don't stop. It's late.")[0] == "Do not stop. It is late."

    def test_cannot_special_case(self):
        assert normalize("can't")[0] == "cannot"

    def test_paragraph_breaks_preserved(self):
        text, _ = normalize("one\n\n\ntwo\nthree")
        assert text == "one\n\ntwo three"

    def test_lowercase_flag(self):
        assert normalize("The Storm", lowercase=True)[0] == "the storm"

    def test_possessive_apostrophe_untouched(self):
        assert normalize("Curie's lab")[0] == "Curie's lab"

    @given(st.text(max_size=200))
    def test_idempotent(self, raw):
        once, _ = normalize(raw)
        twice, report = normalize(once)
        assert twice == once


class TestSegment:
    def test_abbreviation_suppresses_boundary(self):
        text = "Dr. Smith arrived. He sat down."
        spans = segment(text)
        assert [span_text(text, s) for s in spans] == ["Dr. Smith arrived.", "He sat down."]

    def test_empty(self):
        assert segment("") == []

    def test_no_terminator_single_sentence(self):
        text = "Hello world"
        spans = segment(text)
        assert len(spans) == 1
        assert span_text(text, spans[0]) == "Hello world"

    def test_lowercase_continuation_not_split(self):
        text = "He lives in the U.S. for now. Next year he moves."
        spans = segment(text)
        assert [span_text(text, s) for s in spans] == [
            "He lives in the U.S. for now.",
            "Next year he moves.",
        ]

    def test_digit_starts_sentence(self):
        text = "The year ended. 1900 began quietly."
        spans = segment(text)
        assert len(spans) == 2

    def test_question_and_exclamation(self):
        text = "Really? Yes! Fine."
        spans = segment(text)
        assert [span_text(text, s) for s in spans] == ["Really?", "Yes!", "Fine."]

    def test_paragraph_break_always_ends_sentence(self):
        text, _ = normalize("no terminator here\n\nNext paragraph.")
        spans = segment(text)
        assert [span_text(text, s) for s in spans] == ["no terminator here", "Next paragraph."]

    def test_coverage_and_order(self):
        text, _ = normalize("One. Two! Three? e.g. four. Five")
        spans = segment(text)
        for earlier, later in zip(spans, spans[1:]):
            assert earlier.end <= later.start
        covered = set()
        for s in spans:
            covered.update(range(s.start, s.end))
        for i, ch in enumerate(text):
            if not ch.isspace():
                assert i in covered

    @given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=300))
    def test_coverage_property(self, raw):
        text, _ = normalize(raw)
        spans = segment(text)
        covered = set()
        for s in spans:
            assert s.start < s.end
            for i in range(s.start, s.end):
                assert i not in covered
                covered.add(i)
        for i, ch in enumerate(text):
            assert ch.isspace() or i in covered


class TestTokenize:
    def test_basic_split(self):
        tokens = tokenize("Marie Curie discovered radium.")
        assert [t.text for t in tokens] == ["Marie", "Curie", "discovered", "radium", "."]

    def test_single(self):
        assert [t.text for t in tokenize("x")] == ["x"]

    def test_decimal_number_kept_whole(self):
        assert [t.text for t in tokenize("3.5 percent")] == ["3.5", "percent"]

    def test_abbreviation_keeps_period(self):
        assert [t.text for t in tokenize("Dr. Smith vs. Mr. Jones")] == [
            "Dr.", "Smith", "vs.", "Mr.", "Jones",
        ]

    def test_hyphen_kept_inside_word(self):
        assert [t.text for t in tokenize("well-known facts")] == ["well-known", "facts"]

    def test_punctuation_split(self):
        assert [t.text for t in tokenize('He said: "go home" (now)!')] == [
            "He", "said", ":", '"', "go", "home", '"', "(", "now", ")", "!",
        ]

    def test_clock_colon_splits(self):
        assert [t.text for t in tokenize("at 9:30 sharp")] == ["at", "9", ":", "30", "sharp"]

    def test_spans_reconstruct_sentence(self):
        text = "Dr. Smith met Prof. Jones at 9:30."
        tokens = tokenize(text)
        rebuilt = []
        cursor = 0
        for t in tokens:
            rebuilt.append(text[cursor : t.span.start])
            rebuilt.append(text[t.span.start : t.span.end])
            assert text[t.span.start : t.span.end] == t.text
            cursor = t.span.end
        rebuilt.append(text[cursor:])
        assert "".join(rebuilt) == text

    @given(st.text(alphabet=st.characters(blacklist_categories=("Cs", "Zl", "Zp")), max_size=120))
    def test_roundtrip_property(self, raw):
        text, _ = normalize(raw)
        for span in segment(text):
            sentence = span_text(text, span)
            tokens = tokenize(sentence)
            previous_end = -1
            pieces = []
            cursor = 0
            for t in tokens:
                assert t.span.start >= previous_end >= -1 or t.span.start >= cursor
                assert sentence[t.span.start : t.span.end] == t.text
                pieces.append(sentence[cursor : t.span.start])
                pieces.append(t.text)
                cursor = t.span.end
                previous_end = t.span.end
            pieces.append(sentence[cursor:])
            assert "".join(pieces) == sentence


class TestBuildDocument:
    def test_document_invariants(self):
        doc = build_document("d1", "T", "Dr. Smith arrived. He sat down.\n\nIt rained.")
        assert [s.text for s in doc.sentences] == [
            "Dr. Smith arrived.",
            "He sat down.",
            "It rained.",
        ]
        for sentence in doc.sentences:
            assert span_text(doc.normalized_text, sentence.span) == sentence.text
            for token in sentence.tokens:
                assert span_text(sentence.text, token.span) == token.text

    def test_paragraph_spans(self):
        doc = build_document("d1", "T", "First one. Second one.\n\nThird one.")
        paragraphs = paragraph_spans(doc.normalized_text)
        assert len(paragraphs) == 2
        assert span_text(doc.normalized_text, paragraphs[0]) == "First one. Second one."
        assert span_text(doc.normalized_text, paragraphs[1]) == "Third one."
