"""Word-level conversion rules from colloquial to formal Persian.

Seven rule families, each a pure function from one token to a tuple of
output tokens. Every family except the direct lexicon consults a
FormalValidator so a rewrite is only kept when the result is attested in a
formal corpus; unvalidated candidates fall through to the next reading and
ultimately to a no-op. Rules never map a word to itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .corpus import TermFrequencyTable
from .errors import DataError
from .normalizer import ZWNJ, _data_path, _read_pair_tsv


class RuleId(str, Enum):
    DIRECT = "direct"
    VAV_TO_RA = "vav_to_ra"
    OON_TO_AAN = "oon_to_aan"
    PLURAL = "plural"
    LETTER_REPETITION = "letter_repetition"
    COLLOQUIAL_VERB = "colloquial_verb"
    POSSESSIVE_PRONOUN = "possessive_pronoun"

    def __str__(self) -> str:  # argparse/report friendliness
        return self.value


@dataclass(frozen=True)
class RuleOutcome:
    """Result of trying one rule on one token."""

    input_word: str
    output: tuple[str, ...]
    rule: RuleId | None
    applied: bool

    def __post_init__(self) -> None:
        if self.applied:
            assert self.output and self.output != (self.input_word,)
        else:
            assert self.output == (self.input_word,)

    @classmethod
    def noop(cls, word: str, rule: RuleId | None = None) -> "RuleOutcome":
        return cls(word, (word,), rule, False)

    @classmethod
    def hit(cls, word: str, output: tuple[str, ...], rule: RuleId) -> "RuleOutcome":
        return cls(word, output, rule, True)


class Lexicon:
    """Direct slang -> formal dictionary; formal side may hold spaces."""

    def __init__(self, entries: dict[str, str]):
        self.entries = entries

    @classmethod
    def from_pairs(cls, pairs: list[tuple[str, str]], path: str = "<memory>") -> "Lexicon":
        entries: dict[str, str] = {}
        for slang, formal in pairs:
            if not slang or " " in slang:
                raise DataError(f"lexicon key {slang!r} must be a single non-empty token", path)
            if slang in entries:
                raise DataError(f"duplicate lexicon key {slang!r}", path)
            if slang == formal:
                raise DataError(f"self-mapping lexicon entry {slang!r}", path)
            entries[slang] = formal
        return cls(entries)

    def lookup(self, word: str) -> str | None:
        return self.entries.get(word)

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path: str | None = None) -> Lexicon:
    source = _data_path("lexicon.tsv") if path is None else path
    return Lexicon.from_pairs(_read_pair_tsv(source, allow_empty_target=False), str(source))


def load_stems(path: str | None = None) -> tuple[tuple[str, str], ...]:
    """Irregular verb stems (colloquial -> formal), longest colloquial first."""
    source = _data_path("verb_stems.tsv") if path is None else path
    pairs = _read_pair_tsv(source, allow_empty_target=False)
    return tuple(sorted(pairs, key=lambda p: -len(p[0])))


class FormalValidator:
    """Accepts a word when the formal corpus attests it min_count times."""

    def __init__(self, formal_tf: TermFrequencyTable, min_count: int = 1):
        if min_count < 1:
            raise DataError(f"min_count must be >= 1, got {min_count}")
        self.formal_tf = formal_tf
        self.min_count = min_count

    @classmethod
    def from_words(cls, words) -> "FormalValidator":
        table = TermFrequencyTable("formal", {w: 1 for w in words})
        return cls(table, 1)

    def __call__(self, word: str) -> bool:
        return self.formal_tf.entries.get(word, 0) >= self.min_count


# --- rule families ------------------------------------------------------

_MIN_STEM = 2  # suffix rules refuse stems shorter than this


def apply_direct(word: str, lexicon: Lexicon) -> RuleOutcome:
    formal = lexicon.lookup(word)
    if formal is None or formal == word:
        return RuleOutcome.noop(word, RuleId.DIRECT)
    return RuleOutcome.hit(word, tuple(formal.split(" ")), RuleId.DIRECT)


def apply_vav_to_ra(word: str, validator: FormalValidator, standalone_ro: bool = False) -> RuleOutcome:
    """Object-marker contraction: «خودمو» -> «خودم را», «اینجارو» -> «اینجا را»."""
    if standalone_ro and word == "رو":
        return RuleOutcome.hit(word, ("را",), RuleId.VAV_TO_RA)
    for suffix in ("رو", "و"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if len(stem) >= _MIN_STEM and validator(stem):
                return RuleOutcome.hit(word, (stem, "را"), RuleId.VAV_TO_RA)
    return RuleOutcome.noop(word, RuleId.VAV_TO_RA)


_OON_CLITIC_RE = re.compile("ون([متش])$")


def apply_oon_to_aan(word: str, validator: FormalValidator) -> RuleOutcome:
    """Vowel shift «ون» -> «ان»: «شیطون» -> «شیطان», «شیطونم» -> «شیطانم»."""
    if word.endswith("ون"):
        stem = word[:-2]
        if len(stem) >= _MIN_STEM:
            candidate = stem + "ان"
            if candidate != word and validator(candidate):
                return RuleOutcome.hit(word, (candidate,), RuleId.OON_TO_AAN)
    match = _OON_CLITIC_RE.search(word)
    if match:
        stem = word[: match.start()]
        if len(stem) >= _MIN_STEM:
            candidate = stem + "ان" + match.group(1)
            if candidate != word and validator(candidate):
                return RuleOutcome.hit(word, (candidate,), RuleId.OON_TO_AAN)
    return RuleOutcome.noop(word, RuleId.OON_TO_AAN)


# Suffix -> formal plural marker; tried longest first, stem must validate.
_PLURAL_SUFFIXES = (("های", "های"), ("ها", "ها"), ("ای", "های"), ("ا", "ها"))


def apply_plural(word: str, validator: FormalValidator) -> RuleOutcome:
    """Colloquial plural: «دخترا» -> «دختر‌ها», «حرفای» -> «حرف‌های»."""
    for suffix, marker in _PLURAL_SUFFIXES:
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if len(stem) >= _MIN_STEM and validator(stem):
                candidate = stem + ZWNJ + marker
                if candidate != word:
                    return RuleOutcome.hit(word, (candidate,), RuleId.PLURAL)
    return RuleOutcome.noop(word, RuleId.PLURAL)


_RUN3_RE = re.compile(r"(.)\1{2,}")
_RUN2_RE = re.compile(r"(.)\1+")


def apply_letter_repetition(word: str, validator: FormalValidator) -> RuleOutcome:
    """Collapse emphatic letter runs: «جووون» -> «جون», «عاالی» -> «عالی».

    Runs of three or more collapse unconditionally; a doubled letter
    collapses only when the collapsed word validates and the doubled one
    does not (so «ممکن» survives). One pass, no iteration to fixpoint.
    """
    collapsed3 = _RUN3_RE.sub(r"\1", word)
    collapsed2 = _RUN2_RE.sub(r"\1", collapsed3)
    if collapsed2 != collapsed3 and validator(collapsed2) and not validator(collapsed3):
        return RuleOutcome.hit(word, (collapsed2,), RuleId.LETTER_REPETITION)
    if collapsed3 != word:
        return RuleOutcome.hit(word, (collapsed3,), RuleId.LETTER_REPETITION)
    return RuleOutcome.noop(word, RuleId.LETTER_REPETITION)


_VERB_SPLIT_RE = re.compile(f"^(نمی|می)([^{ZWNJ}].+)$")
_VERB_SPLIT_DONE_RE = re.compile(f"^(نمی|می){ZWNJ}(.+)$")
_VERB_BN_RE = re.compile("^([بن])(.{2,})$")


def _stem_variants(rest: str, stems: tuple[tuple[str, str], ...]) -> Iterator[str]:
    for colloquial, formal in stems:
        if rest.startswith(colloquial):
            yield formal + rest[len(colloquial):]
    yield rest


def _ending_variants(rest: str) -> Iterator[str]:
    if rest.endswith("ه"):
        yield rest[:-1] + "د"  # «کنه» -> «کند»
    elif rest.endswith("ن"):
        yield rest + "د"  # «خوان» -> «خواند»
    yield rest


def apply_colloquial_verb(
    word: str,
    validator: FormalValidator,
    stems: tuple[tuple[str, str], ...],
) -> RuleOutcome:
    """Colloquial verb forms: prefix split, stem repair, person endings.

    A word qualifies when it bears a verb prefix («می/نمی», split or fused,
    or «ب/ن»). Three sub-transforms compose: insert ZWNJ after «می/نمی»,
    substitute an irregular colloquial stem with its formal stem, and map
    the endings «ه» -> «د», «ن» -> «ند». The most-transformed composition
    that validates wins; each sub-transform reverts when its inclusion
    blocks validation (so «میخواستم» falls back to «می‌خواستم» after
    «می‌خواهستم» fails).
    """
    bases: list[tuple[str, str]] = []
    match = _VERB_SPLIT_RE.match(word)
    if match and len(match.group(2)) >= 2:
        bases.append((match.group(1) + ZWNJ, match.group(2)))
    match = _VERB_SPLIT_DONE_RE.match(word)
    if match:
        bases.append((match.group(1) + ZWNJ, match.group(2)))
    match = _VERB_BN_RE.match(word)
    if match:
        bases.append((match.group(1), match.group(2)))
    for prefix, rest in bases:
        for with_stem in _stem_variants(rest, stems):
            for with_ending in _ending_variants(with_stem):
                candidate = prefix + with_ending
                if candidate != word and validator(candidate):
                    return RuleOutcome.hit(word, (candidate,), RuleId.COLLOQUIAL_VERB)
    return RuleOutcome.noop(word, RuleId.COLLOQUIAL_VERB)


# Clitic suffixes tried longest first; the formal clitic is the bare person
# letter, attachment decides whether «ا» or «ی» or ZWNJ joins it.
_CLITICS = (
    ("مون", "مان"),
    ("تون", "تان"),
    ("شون", "شان"),
    ("ام", "م"),
    ("ات", "ت"),
    ("اش", "ش"),
    ("م", "م"),
    ("ت", "ت"),
    ("ش", "ش"),
)
_PLURAL_CLITICS = frozenset(("مان", "تان", "شان"))


def _possessive_stems(stem: str, validator: FormalValidator) -> Iterator[str]:
    """Formal readings of a clitic-stripped stem, most literal first."""
    if validator(stem):
        yield stem
    if stem.endswith("ا") and len(stem) - 1 >= _MIN_STEM and validator(stem[:-1]):
        yield stem[:-1] + ZWNJ + "ها"  # colloquial plural: «چشما» -> «چشم‌ها»
    if validator(stem + "ه"):
        yield stem + "ه"  # dropped heh: «قیاف» -> «قیافه»


def _attach_clitic(stem: str, clitic: str) -> str:
    plural = clitic in _PLURAL_CLITICS
    last = stem[-1]
    if last in ("ه", "ی"):
        return stem + ZWNJ + (clitic if plural else "ا" + clitic)
    if last in ("ا", "و"):
        return stem + "ی" + clitic
    return stem + clitic


def apply_possessive(word: str, validator: FormalValidator) -> RuleOutcome:
    """Possessive clitics: «لطفتون» -> «لطفتان», «قیافاش» -> «قیافه‌اش».

    Candidate (clitic, stem-reading) pairs are tried clitic-longest-first;
    the first composed word that validates and differs from the input wins.
    """
    for suffix, clitic in _CLITICS:
        if not word.endswith(suffix):
            continue
        stem = word[: -len(suffix)]
        if len(stem) < _MIN_STEM:
            continue
        for formal_stem in _possessive_stems(stem, validator):
            candidate = _attach_clitic(formal_stem, clitic)
            if candidate != word and validator(candidate):
                return RuleOutcome.hit(word, (candidate,), RuleId.POSSESSIVE_PRONOUN)
    return RuleOutcome.noop(word, RuleId.POSSESSIVE_PRONOUN)


@dataclass
class RuleEngine:
    """Bundles the resources the rule families need and dispatches on RuleId."""

    lexicon: Lexicon
    validator: FormalValidator
    stems: tuple[tuple[str, str], ...] = field(default_factory=load_stems)
    standalone_ro: bool = False

    def apply(self, rule: RuleId, word: str) -> RuleOutcome:
        if rule is RuleId.DIRECT:
            return apply_direct(word, self.lexicon)
        if rule is RuleId.VAV_TO_RA:
            return apply_vav_to_ra(word, self.validator, self.standalone_ro)
        if rule is RuleId.OON_TO_AAN:
            return apply_oon_to_aan(word, self.validator)
        if rule is RuleId.PLURAL:
            return apply_plural(word, self.validator)
        if rule is RuleId.LETTER_REPETITION:
            return apply_letter_repetition(word, self.validator)
        if rule is RuleId.COLLOQUIAL_VERB:
            return apply_colloquial_verb(word, self.validator, self.stems)
        if rule is RuleId.POSSESSIVE_PRONOUN:
            return apply_possessive(word, self.validator)
        raise ValueError(f"unknown rule {rule!r}")
