"""Normalizer unit tests: frozen golden cases plus structural properties."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psc.errors import DataError
from psc.normalizer import (
    NormalizerConfig,
    load_char_map,
    load_variants,
    normalize,
    tokenize,
)

ZWNJ = "‌"
ZWJ = "‍"

# (raw, expected) under the default config.  Expectations were derived by
# hand from the folding/segmentation rules and are intentionally literal.
GOLDEN_CASES = [
    ("سلام دنیا", "سلام دنیا"),
    ("كتاب", "کتاب"),                      # Arabic kaf -> Persian
    ("علي", "علی"),                        # Arabic yeh -> Persian
    ("مدرسة", "مدرسه"),                    # teh marbuta -> heh
    ("أخبار إیران", "اخبار ایران"),        # hamza-on-alef forms -> bare alef
    ("كِتَابٌ", "کتاب"),                   # harakat deleted
    ("مـــدرسه", "مدرسه"),                 # tatweel deleted
    ("۱۲۳ و 456", "123 و 456"),            # digits fold to ascii by default
    ("٤٥٦", "456"),                        # Arabic-Indic digits too
    ("سلام http://example.com دنیا", "سلام دنیا"),
    ("www.test.ir لینک", "لینک"),
    ("@user سلام", "سلام"),
    ("#کتاب_خوب عالیه", "کتاب خوب عالیه"),  # hashtag unwrapped, _ -> space
    ("RT سلام", "سلام"),                   # retweet marker dropped
    ("check این out", "این"),              # latin dropped by default
    ("عالی😂👍", "عالی 😂 👍"),             # emoji split from words and each other
    ("👍🏻 تست", "👍🏻 تست"),                 # skin-tone modifier stays glued
    ("🇮🇷🇺🇸", "🇮🇷 🇺🇸"),                    # flag pairs separate pairwise
    ("می‌شود", "می‌شود"),        # ZWNJ between letters survives
    ("‌سلام", "سلام"),                # leading ZWNJ dropped
    ("سلام‌", "سلام"),                # trailing ZWNJ dropped
    ("می‌‌شود", "می‌شود"),  # ZWNJ runs collapse
    ("یک ‌دو", "یک دو"),              # ZWNJ next to a space dropped
    ("امریکا", "آمریکا"),                  # spelling-variant table
    ("مسئول", "مسئول"),                    # hamza carriers kept by default
    ("", ""),
    ("   ", ""),
    ("check http://a.b عالی", "عالی"),
    ("کتاب123", "کتاب 123"),               # script boundary gets a space
    ("abc123", "123"),                     # latin run dropped, digits kept
    ("👨‍👩‍👧", "👨‍👩‍👧"),  # ZWJ family stays one emoji
    ("ا‍ب", "اب"),                    # ZWJ between letters is noise
    ("1️⃣", "1️⃣"),                          # keycap sequence intact
    ("سلام 😂", "سلام 😂"),
]

CONFIG_CASES = [
    (NormalizerConfig(digits="persian"), "123", "۱۲۳"),
    (NormalizerConfig(keep_latin=True), "hello دنیا", "hello دنیا"),
    (NormalizerConfig(keep_emoji=False), "سلام 😂", "سلام"),
    (NormalizerConfig(fold_hamza_carriers=True), "مسئول", "مسیول"),
]


@pytest.mark.parametrize("raw,expected", GOLDEN_CASES)
def test_golden(raw, expected):
    assert normalize(raw).content == expected


@pytest.mark.parametrize("config,raw,expected", CONFIG_CASES)
def test_golden_configs(config, raw, expected):
    assert normalize(raw, config).content == expected


@pytest.mark.parametrize("raw,expected", GOLDEN_CASES)
def test_golden_outputs_are_fixpoints(raw, expected):
    assert normalize(expected).content == expected


def test_tokenize_round_trip():
    doc = normalize("آقایون یه کتاب 123 😂")
    assert tokenize(doc) == doc.content.split(" ")
    assert " ".join(tokenize(doc)) == doc.content
    assert tokenize("") == []
    assert normalize("").tokens == []


def test_token_internal_zwnj_survives_tokenize():
    doc = normalize("می‌شود خوب")
    assert doc.tokens == ["می‌شود", "خوب"]


# characters the fold tables must remove entirely
_FOLDED_SOURCES = "يىكةأإٱـ" + "".join(chr(c) for c in range(0x064B, 0x0653))

_ALPHABET = (
    "ابپتثجچحخدذرزژسشصضطظعغفقکگلمنوهی"
    + "يىكةأإٱ"
    + "ًٌٍَُِّْـ"
    + "0123456789۰۱۲۳۴۵۶۷۸۹٠١٢٣٤٥٦٧٨٩"
    + "abcXYZ"
    + "😂👍🏻🇮🇷"
    + ZWNJ + ZWJ
    + " .,!؟#@_:/"
)

_text = st.text(alphabet=st.sampled_from(list(_ALPHABET)), max_size=60)
_configs = st.sampled_from([
    NormalizerConfig(),
    NormalizerConfig(keep_latin=True, digits="persian"),
    NormalizerConfig(keep_emoji=False, fold_hamza_carriers=True),
])


@settings(max_examples=200, deadline=None)
@given(raw=_text, config=_configs)
def test_idempotent(raw, config):
    once = normalize(raw, config).content
    assert normalize(once, config).content == once


@settings(max_examples=200, deadline=None)
@given(raw=_text)
def test_folded_characters_never_survive(raw):
    out = normalize(raw).content
    assert not set(out) & set(_FOLDED_SOURCES)


@settings(max_examples=200, deadline=None)
@given(raw=_text, config=_configs)
def test_output_shape(raw, config):
    out = normalize(raw, config).content
    assert "  " not in out
    assert out == out.strip()
    # every surviving ZWNJ sits between two Arabic-script letters
    for i, ch in enumerate(out):
        if ch == ZWNJ:
            assert 0 < i < len(out) - 1
            assert out[i - 1] not in (" ", ZWNJ) and out[i + 1] not in (" ", ZWNJ)


@settings(max_examples=100, deadline=None)
@given(raw=_text)
def test_deterministic(raw):
    assert normalize(raw).content == normalize(raw).content


def test_char_map_loader_rejects_bad_column_count(tmp_path):
    p = tmp_path / "map.tsv"
    p.write_text("ك\tک\nbroken line\n", encoding="utf-8")
    with pytest.raises(DataError) as err:
        load_char_map(str(p))
    assert err.value.line == 2
    assert str(p) in str(err.value)


def test_char_map_loader_allows_deletions_and_comments(tmp_path):
    p = tmp_path / "map.tsv"
    p.write_text("# comment\nك\tک\nـ\t\n", encoding="utf-8")
    assert load_char_map(str(p)) == {"ك": "ک", "ـ": ""}


def test_variants_loader_rejects_non_fixpoint_target(tmp_path):
    p = tmp_path / "variants.tsv"
    # target contains Arabic kaf, which the char map would rewrite
    p.write_text("تست\tكتاب\n", encoding="utf-8")
    with pytest.raises(DataError, match="fix-point"):
        load_variants(str(p))


def test_variants_loader_rejects_chained_variants(tmp_path):
    p = tmp_path / "variants.tsv"
    p.write_text("الان\tالآن\nالآن\tاکنون\n", encoding="utf-8")
    with pytest.raises(DataError, match="itself a variant source"):
        load_variants(str(p))


def test_shipped_tables_load_cleanly():
    cmap = load_char_map()
    variants = load_variants()
    assert cmap["ي"] == "ی" and cmap["ك"] == "ک"
    assert variants  # non-empty
    for src, dst in variants.items():
        assert normalize(dst).content == dst, (src, dst)
