import pytest
from hypothesis import given
from hypothesis import strategies as st

from bitextfilter.corpus import (SentencePair, format_score, load_scores, read_bitext, tokenize,
                                 trg_word_count, write_scores)
from bitextfilter.errors import DataError


@pytest.mark.parametrize("text, expected", [
    ("Hello world", ["Hello", "world"]),
    ("", []),
    ("  a \t b ", ["a", "b"]),
    ("Grüße, Welt!", ["Grüße,", "Welt!"]),
])
def test_tokenize(text, expected):
    assert tokenize(text) == expected


@given(st.text())
def test_tokenize_idempotent_on_join(text):
    toks = tokenize(text)
    assert tokenize(" ".join(toks)) == toks
    assert all(t and not any(c.isspace() for c in t) for t in toks)


@pytest.mark.parametrize("trg, n", [("a b c", 3), ("", 0), ("Hello, world!", 2)])
def test_trg_word_count(trg, n):
    assert trg_word_count(SentencePair(0, "x", trg)) == n


def _write(path, text):
    path.write_bytes(text.encode("utf-8") if isinstance(text, str) else text)
    return path


def test_read_bitext_ids_follow_lines(tmp_path):
    s = _write(tmp_path / "s", "eins\nzwei\ndrei\n")
    t = _write(tmp_path / "t", "one\ntwo\nthree\n")
    pairs = list(read_bitext(s, t))
    assert [p.id for p in pairs] == [0, 1, 2]
    assert pairs[1] == SentencePair(1, "zwei", "two")


def test_read_bitext_mismatch_names_both_counts(tmp_path):
    s = _write(tmp_path / "s", "a\nb\nc\n")
    t = _write(tmp_path / "t", "a\nb\nc\nd\n")
    with pytest.raises(DataError, match="line count mismatch 3 vs 4"):
        list(read_bitext(s, t))
    with pytest.raises(DataError, match="line count mismatch 4 vs 3"):
        list(read_bitext(t, s))


def test_read_bitext_empty(tmp_path):
    assert list(read_bitext(_write(tmp_path / "s", ""), _write(tmp_path / "t", ""))) == []


def test_read_bitext_invalid_utf8_reports_line(tmp_path):
    s = _write(tmp_path / "s", b"ok\n\xff\xfe bad\n")
    t = _write(tmp_path / "t", "ok\nfine\n")
    with pytest.raises(DataError, match="line 2"):
        list(read_bitext(s, t))


def test_read_bitext_strips_crlf(tmp_path):
    s = _write(tmp_path / "s", "a\r\nb")
    t = _write(tmp_path / "t", "x\r\ny")
    assert [(p.src_raw, p.trg_raw) for p in read_bitext(s, t)] == [("a", "x"), ("b", "y")]


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), max_size=30))
def test_score_file_round_trip(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("scores") / "s.txt"
    write_scores(path, values)
    back = load_scores(path)
    assert back == values


def test_score_format_precision():
    v = 0.1 + 0.2
    assert float(format_score(v)) == v


def test_load_scores_rejects_garbage(tmp_path):
    path = _write(tmp_path / "s", "0.5\nabc\n")
    with pytest.raises(DataError, match="line 2"):
        load_scores(path)
