"""Term-frequency table tests: counting, merging, purity filter, TSV format."""

import io
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psc.corpus import (
    DOMAINS,
    PurityCriterion,
    TermFrequencyTable,
    build_tf,
    count_tokens,
    extract_pure_slang,
    merge,
    read_tf,
    read_tf_path,
    top_k,
    write_tf,
    write_tf_path,
)
from psc.errors import DataError
from psc.normalizer import normalize

WORDS = ["کتاب", "خونه", "می‌شود", "123", "😂", "سلام", "یه", "چطوری"]


def _random_lines(rng, n_lines, max_len=8):
    return [" ".join(rng.choices(WORDS, k=rng.randint(1, max_len))) for _ in range(n_lines)]


def test_count_tokens_matches_counter():
    lines = ["کتاب خونه کتاب", "خونه", "", "سلام سلام سلام"]
    expected = Counter()
    for line in lines:
        expected.update(w for w in line.split(" ") if w)
    assert count_tokens(lines) == expected
    assert count_tokens([]) == Counter()


def test_count_tokens_accepts_normalized_text():
    docs = [normalize("كتاب خونه"), normalize("کتاب")]
    assert count_tokens(docs) == Counter({"کتاب": 2, "خونه": 1})


def test_build_tf_sequential():
    lines = ["کتاب خونه", "کتاب"]
    table = build_tf(lines, "slang")
    assert table.domain == "slang"
    assert table.entries == {"کتاب": 2, "خونه": 1}
    assert table.unique_words == 2
    assert table.total_frequency == 3


def test_build_tf_rejects_unknown_domain():
    with pytest.raises(DataError, match="unknown domain"):
        build_tf(["کتاب"], "blog")


@pytest.mark.parametrize("shard_size", [1, 2, 3, 7, 10_000])
def test_build_tf_parallel_equals_sequential(shard_size):
    rng = random.Random(1234 + shard_size)
    lines = _random_lines(rng, 120)
    seq = build_tf(lines, "formal")
    par = build_tf(lines, "formal", threads=2, shard_size=shard_size)
    assert par.entries == seq.entries
    assert par.domain == seq.domain


def test_merge_matches_counter_addition():
    rng = random.Random(99)
    for _ in range(25):
        a = build_tf(_random_lines(rng, rng.randint(0, 30)), "slang")
        b = build_tf(_random_lines(rng, rng.randint(0, 30)), "slang")
        c = build_tf(_random_lines(rng, rng.randint(0, 30)), "slang")
        merged = merge(a, b, c)
        assert merged.entries == dict(Counter(a.entries) + Counter(b.entries) + Counter(c.entries))
        # associativity and commutativity
        assert merge(merge(a, b), c).entries == merge(a, merge(b, c)).entries
        assert merge(b, c, a).entries == merged.entries


def test_merge_rejects_domain_mixing():
    a = TermFrequencyTable("slang", {"کتاب": 1})
    b = TermFrequencyTable("formal", {"کتاب": 1})
    with pytest.raises(DataError, match="cannot merge"):
        merge(a, b)


def _brute_pure(slang, formal, coefficient):
    frac = Fraction(coefficient)
    return {
        w: c for w, c in slang.entries.items()
        if Fraction(c) > frac * formal.entries.get(w, 0)
    }


def test_pure_slang_brute_force_random():
    rng = random.Random(777)
    for _ in range(50):
        slang = TermFrequencyTable(
            "slang", {w: rng.randint(1, 40) for w in rng.sample(WORDS, rng.randint(1, len(WORDS)))})
        formal = TermFrequencyTable(
            "formal", {w: rng.randint(1, 8) for w in rng.sample(WORDS, rng.randint(0, len(WORDS)))})
        coeff = rng.choice([1.0, 2.5, 5.0, 7.0])
        got = extract_pure_slang(slang, formal, PurityCriterion(coeff))
        assert got.domain == "pure_slang"
        assert got.entries == _brute_pure(slang, formal, coeff)


def test_pure_slang_strict_inequality_boundary():
    formal = TermFrequencyTable("formal", {"لب": 3, "رخ": 3})
    slang = TermFrequencyTable("slang", {"لب": 15, "رخ": 16, "یه": 1})
    got = extract_pure_slang(slang, formal)  # default coefficient 5
    assert "لب" not in got.entries          # 15 == 5*3 fails the strict test
    assert got.entries["رخ"] == 16          # 16 > 15 passes
    assert got.entries["یه"] == 1           # absent from formal always passes


def test_pure_slang_fractional_coefficient_is_exact():
    formal = TermFrequencyTable("formal", {"آ": 2})
    slang = TermFrequencyTable("slang", {"آ": 5})
    assert extract_pure_slang(slang, formal, PurityCriterion(2.5)).entries == {}
    slang = TermFrequencyTable("slang", {"آ": 6})
    assert extract_pure_slang(slang, formal, PurityCriterion(2.5)).entries == {"آ": 6}


def test_pure_slang_checks_domains():
    slang = TermFrequencyTable("slang", {"آ": 1})
    formal = TermFrequencyTable("formal", {})
    with pytest.raises(DataError, match="expected a slang table"):
        extract_pure_slang(formal, formal)
    with pytest.raises(DataError, match="expected a formal table"):
        extract_pure_slang(slang, slang)


def test_purity_criterion_rejects_nonpositive_coefficient():
    for bad in (0.0, -1.0):
        with pytest.raises(DataError, match="positive"):
            PurityCriterion(bad)


def test_top_k_ordering_and_ties():
    table = TermFrequencyTable("slang", {"ب": 3, "آ": 3, "ج": 5, "د": 1})
    assert top_k(table, 3) == [("ج", 5), ("آ", 3), ("ب", 3)]
    assert top_k(table, 0) == []
    assert top_k(table, 99) == [("ج", 5), ("آ", 3), ("ب", 3), ("د", 1)]
    with pytest.raises(DataError, match="non-negative"):
        top_k(table, -1)


def test_tf_round_trip_random_tables():
    rng = random.Random(4242)
    for _ in range(20):
        domain = rng.choice(DOMAINS)
        entries = {w: rng.randint(1, 10**6) for w in rng.sample(WORDS, rng.randint(0, len(WORDS)))}
        table = TermFrequencyTable(domain, entries)
        buf = io.StringIO()
        write_tf(table, buf)
        buf.seek(0)
        back = read_tf(buf, expect_domain=domain)
        assert back.domain == domain
        assert back.entries == entries


def test_tf_file_layout():
    table = TermFrequencyTable("formal", {"کتاب": 2, "آب": 7})
    buf = io.StringIO()
    write_tf(table, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "#domain\tformal"
    assert lines[1] == "#unique_words\t2\ttotal_frequency\t9"
    assert lines[2:] == ["آب\t7", "کتاب\t2"]  # rank order, ties lexicographic


def test_tf_round_trip_large_counts(tmp_path):
    # counts well past 32 bits must survive exactly
    entries = {"الف": 2**40, "ب": 7 * 10**8 + 3, "ج": 1}
    table = TermFrequencyTable("formal", entries)
    path = str(tmp_path / "big.tsv")
    write_tf_path(table, path)
    back = read_tf_path(path, expect_domain="formal")
    assert back.entries == entries
    assert back.total_frequency == 2**40 + 7 * 10**8 + 4


@pytest.mark.parametrize("text,lineno,msg", [
    ("bogus\n", 1, "expected '#domain<TAB><name>' header"),
    ("#domain\tblog\n", 1, "unknown domain"),
    ("#domain\tformal\nbogus\n", 2, "expected '#unique_words"),
    ("#domain\tformal\n#unique_words\tx\ttotal_frequency\t1\n", 2, "not integers"),
    ("#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nآ\t1\textra\n", 3, "got 3"),
    ("#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\n\t1\n", 3, "invalid word"),
    ("#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nآ ب\t1\n", 3, "invalid word"),
    ("#domain\tformal\n#unique_words\t1\ttotal_frequency\t1\nآ\tx\n", 3, "not an integer"),
    ("#domain\tformal\n#unique_words\t1\ttotal_frequency\t0\nآ\t0\n", 3, "must be positive"),
    ("#domain\tformal\n#unique_words\t2\ttotal_frequency\t4\nآ\t2\nآ\t2\n", 4, "duplicate word"),
])
def test_read_tf_rejects_malformed(text, lineno, msg):
    with pytest.raises(DataError, match=msg) as err:
        read_tf(io.StringIO(text), path="bad.tsv")
    assert err.value.line == lineno
    assert str(err.value).startswith(f"bad.tsv:{lineno}:")


def test_read_tf_rejects_header_body_mismatch():
    text = "#domain\tformal\n#unique_words\t1\ttotal_frequency\t5\nآ\t2\n"
    with pytest.raises(DataError, match="header declares 1 words / 5 total"):
        read_tf(io.StringIO(text), path="bad.tsv")


def test_read_tf_domain_expectation():
    text = "#domain\tformal\n#unique_words\t0\ttotal_frequency\t0\n"
    with pytest.raises(DataError, match="domain mismatch"):
        read_tf(io.StringIO(text), expect_domain="slang")


def test_table_rejects_unknown_domain():
    with pytest.raises(DataError, match="unknown domain"):
        TermFrequencyTable("tweets", {})


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.sampled_from(WORDS), st.integers(1, 1000), max_size=8),
       st.dictionaries(st.sampled_from(WORDS), st.integers(1, 1000), max_size=8))
def test_merge_is_counter_addition(a_entries, b_entries):
    a = TermFrequencyTable("slang", a_entries)
    b = TermFrequencyTable("slang", b_entries)
    assert merge(a, b).entries == dict(Counter(a_entries) + Counter(b_entries))


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.sampled_from(WORDS), st.integers(1, 100), max_size=8),
       st.dictionaries(st.sampled_from(WORDS), st.integers(1, 100), max_size=8),
       st.sampled_from([1.0, 2.0, 2.5, 5.0]))
def test_pure_slang_property(slang_entries, formal_entries, coeff):
    slang = TermFrequencyTable("slang", slang_entries)
    formal = TermFrequencyTable("formal", formal_entries)
    got = extract_pure_slang(slang, formal, PurityCriterion(coeff))
    assert got.entries == _brute_pure(slang, formal, coeff)
    assert set(got.entries) <= set(slang_entries)
