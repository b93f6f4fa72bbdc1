"""Rule composition over normalized text, plus coverage reporting.

Two consumers with different needs share the rule engine:

* `convert_text` composes the rules over a document; under
  first-match-wins each token is consumed by the first rule that fires.
* `coverage_report` measures each rule in isolation over a pure-slang
  vocabulary (plus one de-duplicated aggregate row), which is how the
  published coverage table was produced.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext

from .corpus import TermFrequencyTable
from .errors import DataError
from .normalizer import NormalizedText
from .rules import RuleEngine, RuleId, RuleOutcome

# Descending measured precision: the curated lexicon first, the broad
# vav/ro suffix strip last.
DEFAULT_RULE_ORDER: tuple[RuleId, ...] = (
    RuleId.DIRECT,
    RuleId.LETTER_REPETITION,
    RuleId.COLLOQUIAL_VERB,
    RuleId.PLURAL,
    RuleId.POSSESSIVE_PRONOUN,
    RuleId.OON_TO_AAN,
    RuleId.VAV_TO_RA,
)

AGGREGATE_ROW = "all_rules"


def pct_2dp(part: int, whole: int) -> float:
    """100*part/whole rounded half-up to two decimals; 0.0 when whole is 0."""
    if whole == 0:
        return 0.0
    with localcontext() as ctx:
        ctx.prec = 50
        value = (Decimal(part) * 100) / Decimal(whole)
        return float(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PipelineConfig:
    """Which rules run and in what priority."""

    rule_order: tuple[RuleId, ...] = DEFAULT_RULE_ORDER
    enabled: frozenset[RuleId] = frozenset(DEFAULT_RULE_ORDER)
    first_match_wins: bool = True

    def __post_init__(self) -> None:
        if len(set(self.rule_order)) != len(self.rule_order):
            raise ValueError("rule_order contains duplicates")
        if set(self.rule_order) != set(self.enabled):
            raise ValueError("rule_order must be a permutation of enabled")

    @classmethod
    def from_rules(cls, rules: tuple[RuleId, ...], first_match_wins: bool = True) -> "PipelineConfig":
        """Config running exactly `rules`, in the given priority order."""
        return cls(rule_order=tuple(rules), enabled=frozenset(rules),
                   first_match_wins=first_match_wins)


def convert_text(
    text: NormalizedText,
    engine: RuleEngine,
    config: PipelineConfig | None = None,
) -> tuple[NormalizedText, list[RuleOutcome]]:
    """Convert every token of a normalized document.

    Returns the converted document and the applied outcomes in token
    order. With first_match_wins=False every rule sees the token stream
    once, in priority order, each consuming the previous rule's output.
    """
    config = config or PipelineConfig()
    out_tokens: list[str] = []
    outcomes: list[RuleOutcome] = []
    for token in text.tokens:
        if config.first_match_wins:
            replacement = (token,)
            for rule in config.rule_order:
                outcome = engine.apply(rule, token)
                if outcome.applied:
                    outcomes.append(outcome)
                    replacement = outcome.output
                    break
            out_tokens.extend(replacement)
        else:
            stream = [token]
            for rule in config.rule_order:
                next_stream: list[str] = []
                for word in stream:
                    outcome = engine.apply(rule, word)
                    if outcome.applied:
                        outcomes.append(outcome)
                    next_stream.extend(outcome.output)
                stream = next_stream
            out_tokens.extend(stream)
    return NormalizedText(" ".join(out_tokens)), outcomes


@dataclass(frozen=True)
class RuleCoverage:
    """One report row: a rule's reach over the pure-slang vocabulary."""

    rule: str
    ucw: int
    ucw_pct: float
    cw: int
    cw_pct: float


@dataclass(frozen=True)
class ConversionReport:
    """Per-rule isolation rows plus a de-duplicated aggregate row."""

    rows: tuple[RuleCoverage, ...]
    unique_words: int
    total_frequency: int
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        payload = {
            "unique_words": self.unique_words,
            "total_frequency": self.total_frequency,
            "rows": [
                {"rule": r.rule, "ucw": r.ucw, "ucw_pct": r.ucw_pct,
                 "cw": r.cw, "cw_pct": r.cw_pct}
                for r in self.rows
            ],
        }
        if self.notes:
            payload["notes"] = list(self.notes)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, payload: dict) -> "ConversionReport":
        rows = tuple(
            RuleCoverage(r["rule"], r["ucw"], r["ucw_pct"], r["cw"], r["cw_pct"])
            for r in payload["rows"]
        )
        return cls(rows, payload["unique_words"], payload["total_frequency"],
                   tuple(payload.get("notes", ())))


# Frozen CLI report schema (one object per rule row plus the aggregate).
REPORT_SCHEMA: dict = {
    "type": "object",
    "required": ["unique_words", "total_frequency", "rows"],
    "properties": {
        "unique_words": {"type": "integer", "minimum": 0},
        "total_frequency": {"type": "integer", "minimum": 0},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rule", "ucw", "ucw_pct", "cw", "cw_pct"],
                "properties": {
                    "rule": {"type": "string"},
                    "ucw": {"type": "integer", "minimum": 0},
                    "ucw_pct": {"type": "number", "minimum": 0, "maximum": 100},
                    "cw": {"type": "integer", "minimum": 0},
                    "cw_pct": {"type": "number", "minimum": 0, "maximum": 100},
                },
                "additionalProperties": False,
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


def _shard_hits(
    engine: RuleEngine,
    order: tuple[RuleId, ...],
    shard: list[tuple[str, int]],
) -> tuple[dict[RuleId, list[int]], list[int]]:
    """Isolation and first-match tallies for one vocabulary shard."""
    per_rule = {rule: [0, 0] for rule in order}
    aggregate = [0, 0]
    for word, count in shard:
        matched = False
        for rule in order:
            if engine.apply(rule, word).applied:
                cell = per_rule[rule]
                cell[0] += 1
                cell[1] += count
                if not matched:
                    matched = True
        if matched:
            aggregate[0] += 1
            aggregate[1] += count
    return per_rule, aggregate


def coverage_report(
    pure_slang: TermFrequencyTable,
    engine: RuleEngine,
    config: PipelineConfig | None = None,
    threads: int = 1,
    shard_size: int = 2_000,
) -> ConversionReport:
    """Measure rule reach over a pure-slang vocabulary.

    Per-rule rows count words the rule converts in isolation; the
    aggregate row counts each word once no matter how many rules reach
    it. Thread counts never change the result, only the wall clock.
    """
    if pure_slang.domain != "pure_slang":
        raise DataError(
            f"coverage report needs a pure_slang table, got {pure_slang.domain!r}")
    config = config or PipelineConfig()
    order = config.rule_order
    items = list(pure_slang.entries.items())

    if threads > 1 and len(items) > shard_size:
        shards = [items[i:i + shard_size] for i in range(0, len(items), shard_size)]
        per_rule = {rule: [0, 0] for rule in order}
        aggregate = [0, 0]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_shard_hits, engine, order, s) for s in shards]
            for fut in futures:
                shard_rules, shard_agg = fut.result()
                for rule, (u, c) in shard_rules.items():
                    per_rule[rule][0] += u
                    per_rule[rule][1] += c
                aggregate[0] += shard_agg[0]
                aggregate[1] += shard_agg[1]
    else:
        per_rule, aggregate = _shard_hits(engine, order, items)

    unique = pure_slang.unique_words
    total = pure_slang.total_frequency
    rows = [
        RuleCoverage(str(rule), ucw, pct_2dp(ucw, unique), cw, pct_2dp(cw, total))
        for rule, (ucw, cw) in per_rule.items()
    ]
    rows.append(RuleCoverage(AGGREGATE_ROW, aggregate[0], pct_2dp(aggregate[0], unique),
                             aggregate[1], pct_2dp(aggregate[1], total)))
    return ConversionReport(tuple(rows), unique, total)
