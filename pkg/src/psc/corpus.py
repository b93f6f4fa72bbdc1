"""Term-frequency tables over normalized corpora, and pure-slang extraction.

A table maps each token to its total occurrence count across a corpus.
Counts are Python ints, so totals far past 32 bits (a large formal corpus
crosses 7e8 occurrences) need no special handling. Counting is a parallel
map over line shards followed by an associative merge, which equals
sequential counting by construction.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Iterator

from .errors import DataError
from .normalizer import NormalizedText

DOMAINS = ("formal", "slang", "pure_slang")


@dataclass
class TermFrequencyTable:
    """Word -> count for one corpus domain."""

    domain: str
    entries: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.domain not in DOMAINS:
            raise DataError(f"unknown domain {self.domain!r}, expected one of {DOMAINS}")

    @property
    def unique_words(self) -> int:
        return len(self.entries)

    @property
    def total_frequency(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class PurityCriterion:
    """Threshold for calling a conversational word "pure slang".

    A word qualifies when its slang count strictly exceeds ratio_coefficient
    times its formal count; words absent from the formal corpus always
    qualify. The default coefficient of 5 was tuned empirically upstream.
    """

    ratio_coefficient: float = 5.0

    def __post_init__(self) -> None:
        if not self.ratio_coefficient > 0:
            raise DataError(f"ratio coefficient must be positive, got {self.ratio_coefficient}")


def count_tokens(lines: Iterable[str | NormalizedText]) -> Counter[str]:
    """Count space-separated tokens over normalized lines."""
    counts: Counter[str] = Counter()
    for line in lines:
        content = line.content if isinstance(line, NormalizedText) else line
        if content:
            counts.update(content.split(" "))
    counts.pop("", None)
    return counts


def merge(first: TermFrequencyTable, *rest: TermFrequencyTable) -> TermFrequencyTable:
    """Associatively merge shard tables of one domain."""
    total: Counter[str] = Counter(first.entries)
    for table in rest:
        if table.domain != first.domain:
            raise DataError(f"cannot merge domain {table.domain!r} into {first.domain!r}")
        total.update(table.entries)
    return TermFrequencyTable(first.domain, dict(total))


def _shards(lines: Iterable[str], size: int) -> Iterator[list[str]]:
    shard: list[str] = []
    for line in lines:
        shard.append(line)
        if len(shard) >= size:
            yield shard
            shard = []
    if shard:
        yield shard


def build_tf(
    lines: Iterable[str | NormalizedText],
    domain: str,
    threads: int = 1,
    shard_size: int = 50_000,
) -> TermFrequencyTable:
    """Build a term-frequency table; threads > 1 counts shards in parallel."""
    if threads <= 1:
        return TermFrequencyTable(domain, dict(count_tokens(lines)))
    contents = (line.content if isinstance(line, NormalizedText) else line for line in lines)
    counts: Counter[str] = Counter()
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for shard_counts in pool.map(count_tokens, _shards(contents, shard_size)):
            counts.update(shard_counts)
    return TermFrequencyTable(domain, dict(counts))


def extract_pure_slang(
    slang: TermFrequencyTable,
    formal: TermFrequencyTable,
    criterion: PurityCriterion | None = None,
) -> TermFrequencyTable:
    """Select slang-corpus words that barely occur in the formal corpus.

    The comparison is exact: the coefficient is applied through Fraction so
    large counts never round through floats.
    """
    if slang.domain != "slang":
        raise DataError(f"expected a slang table, got domain {slang.domain!r}")
    if formal.domain != "formal":
        raise DataError(f"expected a formal table, got domain {formal.domain!r}")
    criterion = criterion or PurityCriterion()
    coefficient = Fraction(criterion.ratio_coefficient)
    picked = {
        word: count
        for word, count in slang.entries.items()
        if count > coefficient * formal.entries.get(word, 0)
    }
    return TermFrequencyTable("pure_slang", picked)


def top_k(table: TermFrequencyTable, k: int) -> list[tuple[str, int]]:
    """Most frequent k words; ties break lexicographically ascending."""
    if k < 0:
        raise DataError(f"k must be non-negative, got {k}")
    ranked = sorted(table.entries.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def write_tf(table: TermFrequencyTable, stream: IO[str]) -> None:
    """Serialize a table: 2 header lines, then word<TAB>count rows by rank."""
    stream.write(f"#domain\t{table.domain}\n")
    stream.write(f"#unique_words\t{table.unique_words}\ttotal_frequency\t{table.total_frequency}\n")
    for word, count in top_k(table, table.unique_words):
        stream.write(f"{word}\t{count}\n")


def read_tf(stream: IO[str], path: str = "<stream>", expect_domain: str | None = None) -> TermFrequencyTable:
    """Parse a serialized table, verifying header counts and domain."""
    header = stream.readline().rstrip("\n").split("\t")
    if len(header) != 2 or header[0] != "#domain":
        raise DataError("expected '#domain<TAB><name>' header", path, 1)
    domain = header[1]
    if domain not in DOMAINS:
        raise DataError(f"unknown domain {domain!r}", path, 1)
    if expect_domain is not None and domain != expect_domain:
        raise DataError(f"domain mismatch: header says {domain!r}, expected {expect_domain!r}", path, 1)
    totals = stream.readline().rstrip("\n").split("\t")
    if len(totals) != 4 or totals[0] != "#unique_words" or totals[2] != "total_frequency":
        raise DataError("expected '#unique_words<TAB>N<TAB>total_frequency<TAB>M' header", path, 2)
    try:
        unique, total = int(totals[1]), int(totals[3])
    except ValueError:
        raise DataError("header counts are not integers", path, 2) from None

    entries: dict[str, int] = {}
    for lineno, line in enumerate(stream, start=3):
        line = line.rstrip("\n")
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise DataError(f"expected 2 tab-separated columns, got {len(cols)}", path, lineno)
        word, raw_count = cols
        if not word or " " in word:
            raise DataError(f"invalid word {word!r}", path, lineno)
        try:
            count = int(raw_count)
        except ValueError:
            raise DataError(f"count {raw_count!r} is not an integer", path, lineno) from None
        if count < 1:
            raise DataError(f"count must be positive, got {count}", path, lineno)
        if word in entries:
            raise DataError(f"duplicate word {word!r}", path, lineno)
        entries[word] = count

    table = TermFrequencyTable(domain, entries)
    if table.unique_words != unique or table.total_frequency != total:
        raise DataError(
            f"header declares {unique} words / {total} total, "
            f"file carries {table.unique_words} / {table.total_frequency}",
            path,
        )
    return table


def read_tf_path(path: str, expect_domain: str | None = None) -> TermFrequencyTable:
    with open(path, encoding="utf-8") as stream:
        return read_tf(stream, path, expect_domain)


def write_tf_path(table: TermFrequencyTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as stream:
        write_tf(table, stream)
