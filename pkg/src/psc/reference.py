"""Published reference statistics for the original PSC corpora and models.

The 16.1M-token conversation corpus behind the published coverage table
and the neural classifiers behind the published sentiment comparison are
not distributed, so none of these numbers are reproducible here. They are
recorded because:

* the report emitted by `psc report` mirrors the coverage table's shape,
  and `--paper-compat` annotates the cells where the printed percentages
  disagree with their own underlying counts;
* the sentiment harness reproduces the protocol (balance, split, train,
  evaluate, ablate), and readers will want the originally reported
  scores next to their own desk-scale runs.
"""

from __future__ import annotations

from .pipeline import AGGREGATE_ROW, pct_2dp
from .rules import RuleId

# Vocabulary size and token count of the pure-slang corpus the published
# coverage percentages are relative to.
PUBLISHED_UNIQUE_WORDS = 1_279_607
PUBLISHED_TOTAL_FREQUENCY = 16_136_606

# (rule, unique converted words, printed UCW %, converted occurrences,
# printed CW %). Percentages are kept as printed, including the one
# three-decimal cell.
PUBLISHED_COVERAGE: tuple[tuple[str, int, str, int, str], ...] = (
    (str(RuleId.DIRECT), 1_000, "0.078", 6_514_099, "40.36"),
    (str(RuleId.VAV_TO_RA), 22_556, "1.76", 329_726, "0.043"),
    (str(RuleId.OON_TO_AAN), 3_012, "0.23", 119_466, "0.74"),
    (str(RuleId.PLURAL), 31_874, "2.49", 305_020, "1.89"),
    (str(RuleId.LETTER_REPETITION), 65_298, "5.10", 377_351, "2.33"),
    (str(RuleId.COLLOQUIAL_VERB), 4_522, "0.35", 1_021_381, "6.32"),
    (str(RuleId.POSSESSIVE_PRONOUN), 44_288, "3.46", 574_996, "3.56"),
    (AGGREGATE_ROW, 172_550, "13.48", 9_242_039, "57.27"),
)


def coverage_discrepancy_notes() -> tuple[str, ...]:
    """Cells where the printed percentage breaks its own count identity.

    Recomputes every published cell at two decimals, half-up. The printed
    table truncated instead (and one cell is a plain typo), so six cells
    disagree; the recomputed value is what this package reports.
    """
    notes: list[str] = []
    for rule, ucw, printed_ucw, cw, printed_cw in PUBLISHED_COVERAGE:
        for column, count, whole, printed in (
            ("ucw_pct", ucw, PUBLISHED_UNIQUE_WORDS, printed_ucw),
            ("cw_pct", cw, PUBLISHED_TOTAL_FREQUENCY, printed_cw),
        ):
            recomputed = f"{pct_2dp(count, whole):.2f}"
            if printed != recomputed:
                notes.append(
                    f"{rule} {column}: published table prints {printed}, "
                    f"but {count}/{whole} is {recomputed} at 2 dp half-up"
                )
    return tuple(notes)


# Published label distribution of the 60,802-comment annotation effort
# (majority vote of three annotators).
PUBLISHED_LABEL_COUNTS: dict[str, int] = {
    "positive": 25_779,
    "neutral": 15_366,
    "negative": 19_657,
}

# Published classifier comparison: (method, precision, accuracy, recall,
# F1), percentages. Paired rows differ only in whether PSC conversion
# preceded feature extraction.
PUBLISHED_SENTIMENT: tuple[tuple[str, float, float, float, float], ...] = (
    ("Word2Vec+CNN", 78.20, 78.30, 78.14, 78.20),
    ("Word2Vec+CNN+PSC", 78.90, 78.91, 78.83, 78.86),
    ("Word2Vec+LSTM", 80.71, 80.98, 80.66, 80.76),
    ("Word2Vec+LSTM+PSC", 81.49, 81.68, 81.44, 81.50),
    ("FastText+LSTM", 81.21, 81.12, 81.10, 81.11),
    ("FastText+LSTM+PSC", 81.91, 81.89, 81.84, 81.85),
    ("ELMo+CNN", 77.61, 77.87, 77.41, 77.11),
    ("ELMo+CNN+PSC", 79.10, 78.94, 78.99, 78.96),
    ("Parsbert", 80.15, 80.38, 80.10, 80.18),
    ("Parsbert+PSC", 80.61, 81.02, 80.55, 80.65),
    ("Bert_Multilingual", 70.26, 70.22, 70.17, 70.19),
)

# The headline prose quotes 81.91% accuracy for FastText+LSTM+PSC; the
# comparison table lists accuracy 81.89 and precision 81.91 for that row.
# Both are recorded; nothing downstream depends on either.
HEADLINE_ACCURACY_NOTE = (
    "best published run (FastText+LSTM+PSC): accuracy 81.89 per the "
    "comparison table, quoted as 81.91 (the row's precision) in the "
    "summary prose"
)
