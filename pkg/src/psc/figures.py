"""Figure rendering for the report path. Headless backend, file output only."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .corpus import TermFrequencyTable, top_k
from .pipeline import AGGREGATE_ROW, ConversionReport


def plot_rule_coverage(report: ConversionReport, path: str) -> None:
    """Grouped bars: each rule's share of unique words and of occurrences."""
    rows = [row for row in report.rows if row.rule != AGGREGATE_ROW]
    positions = range(len(rows))
    width = 0.38
    fig, ax = plt.subplots(figsize=(9, 4.5))
    ax.bar([p - width / 2 for p in positions], [row.ucw_pct for row in rows],
           width, label="% of unique words")
    ax.bar([p + width / 2 for p in positions], [row.cw_pct for row in rows],
           width, label="% of occurrences")
    ax.set_xticks(list(positions))
    ax.set_xticklabels([row.rule for row in rows], rotation=30, ha="right")
    ax.set_ylabel("% of pure-slang corpus")
    ax.set_title("Conversion coverage by rule")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_frequency_distribution(table: TermFrequencyTable, path: str,
                                top_n: int = 1_000) -> None:
    """Rank-frequency curve, log-scaled counts.

    The sharply falling head is why a small direct lexicon covers a large
    share of occurrences.
    """
    counts = [count for _, count in top_k(table, top_n)]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(range(1, len(counts) + 1), counts)
    if counts:
        ax.set_yscale("log")
    ax.set_xlabel("rank")
    ax.set_ylabel("frequency")
    ax.set_title(f"Rank-frequency of the {table.domain} corpus")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
