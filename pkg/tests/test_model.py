import pytest
from hypothesis import given, strategies as st

from synqa.model import Entity, Span, Token, project_span, span_text


def test_span_text_full_range():
    assert span_text("radium", Span(0, 6)) == "radium"


def test_span_text_substring():
    assert span_text("Marie Curie", Span(6, 11)) == "Curie"


def test_span_text_counts_code_points():
    # "ï" is a single code point, so the first five cover the word.
    assert span_text("naïve cat", Span(0, 5)) == "naïve"


def test_span_text_out_of_bounds():
    with pytest.raises(ValueError):
        span_text("abc", Span(0, 4))


def test_span_rejects_negative_and_inverted():
    with pytest.raises(ValueError):
        Span(-1, 2)
    with pytest.raises(ValueError):
        Span(3, 2)


@pytest.mark.parametrize(
    "inner, outer, expected",
    [
        (Span(0, 5), Span(10, 30), Span(10, 15)),
        (Span(3, 7), Span(0, 20), Span(3, 7)),
        (Span(2, 4), Span(100, 110), Span(102, 104)),
    ],
)
def test_project_span(inner, outer, expected):
    assert project_span(inner, outer) == expected


def test_project_span_overflow():
    with pytest.raises(ValueError):
        project_span(Span(0, 11), Span(100, 110))


@given(
    a=st.integers(0, 50),
    b=st.integers(0, 50),
    c=st.integers(0, 50),
    inner_len=st.integers(0, 20),
)
def test_project_span_composes(a, b, c, inner_len):
    # Projecting through two nested levels equals projecting through
    # their composition.
    inner = Span(a, a + inner_len)
    mid = Span(b, b + a + inner_len)
    outer = Span(c, c + b + a + inner_len)
    via_mid = project_span(project_span(inner, mid), outer)
    composed = project_span(inner, project_span(mid, outer))
    assert via_mid == composed


def test_entity_confidence_fixed_by_source():
    assert Entity("PERSON", (0, 1), "GAZETTEER").confidence == 1.0
    assert Entity("DATE", (0, 0), "REGEX").confidence == 0.9
    assert Entity("MISC", (2, 3), "CAPITALIZATION").confidence == 0.6


def test_entity_rejects_unknown_label_and_source():
    with pytest.raises(ValueError):
        Entity("PLACE", (0, 0), "GAZETTEER")
    with pytest.raises(ValueError):
        Entity("PERSON", (0, 0), "ORACLE")


def test_token_requires_text():
    with pytest.raises(ValueError):
        Token(text="", span=Span(0, 0))
