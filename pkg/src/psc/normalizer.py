"""Canonicalize noisy social-media Persian into a stable, tokenizable form.

The cleanup mirrors what informal-text pipelines need before any counting or
rule-based conversion can work:

* links, @-mentions and hashtag markers are removed (hashtag bodies survive,
  ``_`` inside them becomes a space),
* Arabic presentation letters fold onto Persian equivalents, harakat/tanwin,
  tatweel and other Arabization are deleted,
* digits fold onto one script (ASCII by default, Persian on request),
* emoji, punctuation, digits and Latin runs are split off Persian letters
  with single spaces; Latin tokens are dropped unless configured otherwise,
* ZWNJ (half-space) survives only between two Persian letters, and runs of
  it collapse to one,
* whitespace collapses to single spaces.

``normalize`` is idempotent: ``normalize(normalize(x)) == normalize(x)``.
The function never inserts ZWNJ after «می»; splitting verb prefixes is the
rule engine's job, not the normalizer's.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import DataError

ZWNJ = "‌"
ZWJ = "‍"

ASCII_DIGITS = "0123456789"
PERSIAN_DIGITS = "۰۱۲۳۴۵۶۷۸۹"
ARABIC_DIGITS = "٠١٢٣٤٥٦٧٨٩"

# Folded only when NormalizerConfig.fold_hamza_carriers is set; the default
# keeps these letters because they are legitimate in Persian loanwords.
HAMZA_CARRIER_FOLD = {
    "ئ": "ی",  # YEH WITH HAMZA -> FARSI YEH
    "ؤ": "و",  # WAW WITH HAMZA -> WAW
}

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@[\w.]+")
_HASHTAG_RE = re.compile(r"#(\w+)")
_WS_RE = re.compile(r"\s+")
_ZWNJ_RUN_RE = re.compile(f"{ZWNJ}+")

# Pictograph ranges treated as emoji for separation purposes.
_EMOJI_RANGES = (
    (0x1F000, 0x1FAFF),
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
    (0xFE0E, 0xFE0F),
    (0x20E3, 0x20E3),
)
_SKIN_TONES = frozenset(range(0x1F3FB, 0x1F400))
_REGIONAL = (0x1F1E6, 0x1F1FF)


@dataclass(frozen=True)
class NormalizerConfig:
    """Switches for the normalization pass.

    digits: "ascii" folds Persian/Arabic-Indic digits to 0-9, "persian" folds
    the other way. keep_latin keeps Latin-script tokens instead of dropping
    them. fold_hamza_carriers additionally maps «ئ»/«ؤ» onto «ی»/«و».
    """

    keep_emoji: bool = True
    keep_latin: bool = False
    digits: str = "ascii"
    fold_hamza_carriers: bool = False

    def __post_init__(self) -> None:
        if self.digits not in ("ascii", "persian"):
            raise ValueError(f"digits must be 'ascii' or 'persian', got {self.digits!r}")


@dataclass(frozen=True)
class NormalizedText:
    """Normalized document: tokens joined by single spaces."""

    content: str

    @property
    def tokens(self) -> list[str]:
        return self.content.split(" ") if self.content else []


def tokenize(text: NormalizedText | str) -> list[str]:
    """Split normalized text on single spaces; ZWNJ stays word-internal."""
    if isinstance(text, NormalizedText):
        return text.tokens
    return text.split(" ") if text else []


def _data_path(name: str):
    return resources.files("psc.data").joinpath(name)


def _read_pair_tsv(source, allow_empty_target: bool) -> list[tuple[str, str]]:
    """Read a two-column TSV, skipping blank and '#' comment lines."""
    pairs: list[tuple[str, str]] = []
    name = getattr(source, "name", str(source))
    if hasattr(source, "read_text"):
        text = source.read_text(encoding="utf-8")
    else:
        with open(source, encoding="utf-8") as f:
            text = f.read()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise DataError(f"expected 2 tab-separated columns, got {len(cols)}", str(name), lineno)
        src, dst = cols
        if not src:
            raise DataError("empty source column", str(name), lineno)
        if not dst and not allow_empty_target:
            raise DataError("empty target column", str(name), lineno)
        pairs.append((src, dst))
    return pairs


@lru_cache(maxsize=None)
def _shipped_char_pairs() -> tuple[tuple[str, str], ...]:
    return tuple(_read_pair_tsv(_data_path("arabic_map.tsv"), allow_empty_target=True))


def load_char_map(path: str | None = None) -> dict[str, str]:
    """Character unification map; empty target means the character is deleted."""
    if path is None:
        return dict(_shipped_char_pairs())
    return dict(_read_pair_tsv(path, allow_empty_target=True))


@lru_cache(maxsize=8)
def _translation(digits: str, fold_hamza: bool) -> dict[int, str | None]:
    table: dict[int, str | None] = {}
    for src, dst in _shipped_char_pairs():
        table[ord(src)] = dst or None
    if fold_hamza:
        for src, dst in HAMZA_CARRIER_FOLD.items():
            table[ord(src)] = dst
    if digits == "ascii":
        for folded in (PERSIAN_DIGITS, ARABIC_DIGITS):
            for i, ch in enumerate(folded):
                table[ord(ch)] = ASCII_DIGITS[i]
    else:
        for folded in (ASCII_DIGITS, ARABIC_DIGITS):
            for i, ch in enumerate(folded):
                table[ord(ch)] = PERSIAN_DIGITS[i]
    return table


def load_variants(path: str | None = None, config: NormalizerConfig | None = None) -> dict[str, str]:
    """Token-level spelling-variant table (variant -> canonical).

    Targets must be fix-points of the character map in effect, otherwise the
    normalizer could not be idempotent; violations are data errors.
    """
    config = config or NormalizerConfig()
    source = _data_path("word_variants.tsv") if path is None else path
    pairs = _read_pair_tsv(source, allow_empty_target=False)
    table = _translation(config.digits, config.fold_hamza_carriers)
    out: dict[str, str] = {}
    for src, dst in pairs:
        stable = dst.translate(table) == dst and _joiner_hygiene(dst) == dst and _segment(dst) == dst
        if not stable:
            raise DataError(f"variant target {dst!r} is not a normalization fix-point", str(source))
        out[src] = dst
    for dst in out.values():
        for word in dst.split(" "):
            if word in out:
                raise DataError(f"variant target token {word!r} is itself a variant source", str(source))
    return out


@lru_cache(maxsize=8)
def _shipped_variants(digits: str, fold_hamza: bool) -> dict[str, str]:
    return load_variants(None, NormalizerConfig(digits=digits, fold_hamza_carriers=fold_hamza))


def _is_arabic_letter(ch: str) -> bool:
    return ch.isalpha() and (
        "؀" <= ch <= "ۿ"
        or "ݐ" <= ch <= "ݿ"
        or "ࢠ" <= ch <= "ࣿ"
        or "ﭐ" <= ch <= "﷿"
        or "ﹰ" <= ch <= "﻿"
    )


def _is_latin_letter(ch: str) -> bool:
    return ch.isalpha() and (ch <= "ɏ" or "Ḁ" <= ch <= "ỿ")


def _is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def _strip_social(s: str) -> str:
    s = _URL_RE.sub(" ", s)
    s = _MENTION_RE.sub(" ", s)
    s = _HASHTAG_RE.sub(lambda m: " " + m.group(1).replace("_", " "), s)
    return s.replace("#", " ").replace("@", " ")


def _strip_invisibles(s: str) -> str:
    """Drop control and format characters other than ZWNJ/ZWJ."""
    out = []
    for ch in s:
        if ch in (ZWNJ, ZWJ):
            out.append(ch)
            continue
        cat = unicodedata.category(ch)
        if cat in ("Cf", "Cc", "Cs", "Co"):
            continue
        out.append(ch)
    return "".join(out)


def _joiner_hygiene(s: str) -> str:
    """ZWNJ survives only between two Persian letters, ZWJ only between emoji.

    The left neighbor is the nearest kept non-mark character, matching how
    segmentation attaches combining marks to the preceding run; otherwise a
    joiner could survive here and still be split off by segmentation.
    """
    s = _ZWNJ_RUN_RE.sub(ZWNJ, s)
    out: list[str] = []

    def left_base() -> str:
        for prev in reversed(out):
            if unicodedata.category(prev) not in ("Mn", "Mc", "Me"):
                return prev
        return ""

    for i, ch in enumerate(s):
        if ch in (ZWNJ, ZWJ):
            nxt = s[i + 1] if i + 1 < len(s) else ""
            base = left_base()
            wanted = _is_arabic_letter if ch == ZWNJ else _is_emoji
            # a combining mark can never start the right-hand run: it would
            # inherit the previous class during segmentation instead
            if (
                base
                and nxt
                and unicodedata.category(nxt) not in ("Mn", "Mc", "Me")
                and wanted(base)
                and wanted(nxt)
            ):
                out.append(ch)
        else:
            out.append(ch)
    return "".join(out)


def _char_class(ch: str, prev_class: str) -> str:
    if ch == ZWNJ:
        return "persian"
    if ch == ZWJ:
        return "emoji"
    if unicodedata.category(ch) in ("Mn", "Mc", "Me"):
        return prev_class if prev_class != "space" else "other"
    if _is_emoji(ch):
        return "emoji"
    if _is_arabic_letter(ch):
        return "persian"
    if ch.isdigit():
        return "digit"
    if _is_latin_letter(ch):
        return "latin"
    return "other"


def _is_regional(ch: str) -> bool:
    return len(ch) == 1 and _REGIONAL[0] <= ord(ch) <= _REGIONAL[1]


def _emoji_glued(prev: str, ch: str, ri_run: int) -> bool:
    """Whether two adjacent emoji codepoints belong to one pictograph.

    ri_run is the count of consecutive regional-indicator symbols ending at
    prev; indicators pair off two-by-two into flags.
    """
    if prev == ZWJ or ch == ZWJ:
        return True
    if ord(ch) in _SKIN_TONES or ch in ("︎", "️", "⃣"):
        return True
    if _is_regional(prev) and _is_regional(ch):
        return ri_run % 2 == 1
    return False


def _segment(s: str) -> str:
    out: list[str] = []
    prev_class = "space"
    prev_char = ""
    ri_run = 0  # consecutive regional indicators ending at prev_char, unbroken
    for ch in s:
        if ch == " ":
            out.append(ch)
            prev_class, prev_char, ri_run = "space", ch, 0
            continue
        cls = _char_class(ch, prev_class)
        is_mark = unicodedata.category(ch) in ("Mn", "Mc", "Me")
        broke = False
        if prev_class != "space" and not is_mark:
            if cls == "emoji" and prev_class == "emoji":
                if not _emoji_glued(prev_char, ch, ri_run):
                    out.append(" ")
                    broke = True
            elif cls != prev_class:
                out.append(" ")
                broke = True
        out.append(ch)
        if _is_regional(ch):
            ri_run = 1 if (broke or not _is_regional(prev_char)) else ri_run + 1
        else:
            ri_run = 0
        prev_class, prev_char = cls, ch
    return "".join(out)


def _token_class(token: str) -> str:
    """Dominant class of a segmented token (its first non-mark character)."""
    for ch in token:
        if unicodedata.category(ch) in ("Mn", "Mc", "Me"):
            continue
        return _char_class(ch, "space")
    return "other"


def normalize(raw: str, config: NormalizerConfig | None = None) -> NormalizedText:
    """Normalize one document (idempotent; see module docstring)."""
    config = config or NormalizerConfig()
    s = _WS_RE.sub(" ", raw)
    s = _strip_social(s)
    s = s.translate(_translation(config.digits, config.fold_hamza_carriers))
    s = _strip_invisibles(s)
    s = _joiner_hygiene(s)
    s = _segment(s)

    variants = _shipped_variants(config.digits, config.fold_hamza_carriers)
    kept: list[str] = []
    for token in s.split(" "):
        if not token or token == "RT":
            continue
        cls = _token_class(token)
        if cls == "latin" and not config.keep_latin:
            continue
        if cls == "emoji" and not config.keep_emoji:
            continue
        kept.append(variants.get(token, token))
    return NormalizedText(" ".join(kept))
