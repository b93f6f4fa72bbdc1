"""Sentiment-classification harness for measuring the converter's effect.

Mirrors the published protocol end to end: majority-vote ingestion,
per-class balancing, a stratified 70/15/15 split, training, evaluation,
and the with/without-conversion ablation. The classifier is a deliberate
desk-scale stand-in: a from-scratch multinomial logistic model over
hashed unigram+bigram counts. The contract is the protocol, not the
score.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadRatiosError,
    DataError,
    EmptyTestSetError,
    EmptyTrainSetError,
    InsufficientClassError,
    MissingClassError,
)
from .normalizer import NormalizerConfig, normalize
from .pipeline import PipelineConfig, convert_text
from .rules import RuleEngine

LABELS: tuple[str, ...] = ("negative", "neutral", "positive")


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: str

    def __post_init__(self) -> None:
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")


def read_labeled(lines: Iterable[str], source: str | None = None) -> list[LabeledExample]:
    """Parse labeled examples from TSV lines.

    Two formats, decided per line by column count: ``label<TAB>text``,
    or three annotator columns ``l1<TAB>l2<TAB>l3<TAB>text`` resolved by
    majority vote (rows with three distinct labels are dropped). Text
    must be tab-free; blank lines are skipped.
    """
    examples: list[LabeledExample] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) == 2:
            votes = [cells[0]]
            text = cells[1]
        elif len(cells) == 4:
            votes = cells[:3]
            text = cells[3]
        else:
            raise DataError(
                f"expected 2 or 4 tab-separated columns, got {len(cells)} "
                "(text must be tab-free)", source, lineno)
        for vote in votes:
            if vote not in LABELS:
                raise DataError(
                    f"unknown label {vote!r}, expected one of {LABELS}",
                    source, lineno)
        if not text:
            raise DataError("empty text column", source, lineno)
        label, count = Counter(votes).most_common(1)[0]
        if len(votes) > 1 and count < 2:
            continue
        examples.append(LabeledExample(text, label))
    return examples


def read_labeled_path(path: str) -> list[LabeledExample]:
    try:
        with open(path, encoding="utf-8") as handle:
            return read_labeled(handle, source=path)
    except UnicodeDecodeError as exc:
        raise DataError(f"not valid UTF-8: {exc}", path) from exc


def write_labeled_path(examples: Sequence[LabeledExample], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for ex in examples:
            if "\t" in ex.text or "\n" in ex.text:
                raise DataError("example text contains a tab or newline", path)
            handle.write(f"{ex.label}\t{ex.text}\n")


def balance(data: Sequence[LabeledExample], per_class: int, seed: int = 0) -> list[LabeledExample]:
    """Subsample without replacement to exactly per_class examples per class.

    Per-class Fisher-Yates shuffle then prefix; the RNG is seeded with
    ``f"{seed}:{label}"`` so class draws are independent of each other
    and of input interleaving across classes.
    """
    if per_class < 0:
        raise ValueError("per_class must be non-negative")
    by_class: dict[str, list[LabeledExample]] = {label: [] for label in LABELS}
    for ex in data:
        by_class[ex.label].append(ex)
    for label in LABELS:
        if len(by_class[label]) < per_class:
            raise InsufficientClassError(label, len(by_class[label]), per_class)
    out: list[LabeledExample] = []
    for label in LABELS:
        members = list(by_class[label])
        random.Random(f"{seed}:{label}").shuffle(members)
        out.extend(members[:per_class])
    return out


@dataclass(frozen=True)
class DatasetSplit:
    train: list[LabeledExample]
    validation: list[LabeledExample]
    test: list[LabeledExample]
    seed: int


def _largest_remainder(
    sizes: dict[str, int],
    ratio: Fraction,
    house: int,
    caps: dict[str, int],
) -> dict[str, int]:
    """Apportion exactly `house` seats over classes, each seat count
    within its cap, floors first then largest fractional remainders."""
    seats: dict[str, int] = {}
    remainders: list[tuple[Fraction, str]] = []
    for label in sorted(sizes):
        quota = ratio * sizes[label]
        seats[label] = min(int(quota), caps[label])
        remainders.append((quota - int(quota), label))
    remainders.sort(key=lambda item: (-item[0], item[1]))
    leftover = house - sum(seats.values())
    while leftover > 0:
        progressed = False
        for _, label in remainders:
            if leftover == 0:
                break
            if seats[label] < caps[label]:
                seats[label] += 1
                leftover -= 1
                progressed = True
        if not progressed:
            raise BadRatiosError("ratios cannot be apportioned over these classes")
    return seats


def split(
    data: Sequence[LabeledExample],
    ratios: tuple[float, float, float] = (0.70, 0.15, 0.15),
    seed: int = 0,
) -> DatasetSplit:
    """Stratified train/validation/test split.

    The train partition gets exactly round(ratios[0]*N) examples; the
    other two absorb the remainder. Within every class the three counts
    stay within one example of the exact quota. Deterministic by seed.
    """
    if len(ratios) != 3 or any(r < 0 for r in ratios):
        raise BadRatiosError("need three non-negative ratios")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise BadRatiosError(f"ratios sum to {sum(ratios)}, expected 1")
    fracs = [Fraction(str(r)) for r in ratios]
    n = len(data)

    by_class: dict[str, list[LabeledExample]] = {}
    for ex in data:
        by_class.setdefault(ex.label, []).append(ex)
    sizes = {label: len(items) for label, items in by_class.items()}

    train_house = min(int(round(fracs[0] * n)), n)
    train_seats = _largest_remainder(sizes, fracs[0], train_house, dict(sizes))
    val_house = min(int(round(fracs[1] * n)), n - train_house)
    caps_rest = {label: sizes[label] - train_seats[label] for label in sizes}
    val_seats = _largest_remainder(sizes, fracs[1], val_house, caps_rest)

    train: list[LabeledExample] = []
    validation: list[LabeledExample] = []
    test: list[LabeledExample] = []
    for label in sorted(by_class):
        members = list(by_class[label])
        random.Random(f"{seed}:split:{label}").shuffle(members)
        t = train_seats[label]
        v = val_seats[label]
        train.extend(members[:t])
        validation.extend(members[t:t + v])
        test.extend(members[t + v:])
    return DatasetSplit(train, validation, test, seed)


# Feature hashing. The builtin hash is salted per process, so a stable
# hash is required to keep saved models portable across runs.
N_BUCKETS = 1 << 20
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1
_BIGRAM_SEP = b"\x1f"


def fnv1a_64(data: bytes) -> int:
    value = _FNV_OFFSET
    for byte in data:
        value ^= byte
        value = (value * _FNV_PRIME) & _MASK64
    return value


def extract_features(text: str, n_buckets: int = N_BUCKETS) -> dict[int, int]:
    """Hashed bag of unigram and bigram counts over whitespace tokens."""
    counts: dict[int, int] = {}
    tokens = text.split()
    encoded = [tok.encode("utf-8") for tok in tokens]
    for i, blob in enumerate(encoded):
        key = fnv1a_64(blob) % n_buckets
        counts[key] = counts.get(key, 0) + 1
        if i + 1 < len(encoded):
            key = fnv1a_64(blob + _BIGRAM_SEP + encoded[i + 1]) % n_buckets
            counts[key] = counts.get(key, 0) + 1
    return counts


@dataclass(frozen=True)
class TrainParams:
    learning_rate: float = 0.5
    decay: float = 0.8
    epochs: int = 20
    l2: float = 0.0
    seed: int = 0
    n_buckets: int = N_BUCKETS


@dataclass(frozen=True, eq=False)
class LinearModel:
    """Multinomial logistic model; weights[(class, n_buckets)] is the bias."""

    weights: np.ndarray
    labels: tuple[str, ...]
    n_buckets: int
    loss_history: tuple[float, ...] = ()

    def scores(self, text: str) -> np.ndarray:
        feats = extract_features(text, self.n_buckets)
        idx = np.fromiter(feats.keys(), dtype=np.int64, count=len(feats))
        val = np.fromiter(feats.values(), dtype=np.float64, count=len(feats))
        return self.weights[:, idx] @ val + self.weights[:, self.n_buckets]

    def predict(self, text: str) -> str:
        # argmax takes the first maximum: ties break to the earlier label
        return self.labels[int(np.argmax(self.scores(text)))]


_Sample = tuple[np.ndarray, np.ndarray, int]


def _encode(examples: Sequence[LabeledExample], n_buckets: int) -> list[_Sample]:
    encoded: list[_Sample] = []
    for ex in examples:
        feats = extract_features(ex.text, n_buckets)
        idx = np.empty(len(feats) + 1, dtype=np.int64)
        val = np.empty(len(feats) + 1, dtype=np.float64)
        idx[:-1] = np.fromiter(feats.keys(), dtype=np.int64, count=len(feats))
        val[:-1] = np.fromiter(feats.values(), dtype=np.float64, count=len(feats))
        idx[-1] = n_buckets
        val[-1] = 1.0
        encoded.append((idx, val, LABELS.index(ex.label)))
    return encoded


def _mean_loss(weights: np.ndarray, encoded: list[_Sample]) -> float:
    total = 0.0
    for idx, val, y in encoded:
        scores = weights[:, idx] @ val
        peak = scores.max()
        total += peak + np.log(np.exp(scores - peak).sum()) - scores[y]
    return total / len(encoded)


def train(train_set: Sequence[LabeledExample], params: TrainParams = TrainParams()) -> LinearModel:
    """SGD on softmax cross-entropy with step-decay learning rate.

    After every epoch the full training loss is measured; an epoch that
    failed to improve is rolled back and the learning rate halved, so the
    recorded loss history is non-increasing by construction. Training is
    single-threaded on purpose: the update order is part of the result.
    """
    if not train_set:
        raise EmptyTrainSetError("training set is empty")
    present = {ex.label for ex in train_set}
    for label in LABELS:
        if label not in present:
            raise MissingClassError(label)

    encoded = _encode(train_set, params.n_buckets)
    weights = np.zeros((len(LABELS), params.n_buckets + 1))
    best = weights.copy()
    best_loss = _mean_loss(weights, encoded)
    history = [best_loss]

    lr = params.learning_rate
    rng = random.Random(params.seed)
    order = list(range(len(encoded)))
    for _ in range(params.epochs):
        rng.shuffle(order)
        for i in order:
            idx, val, y = encoded[i]
            scores = weights[:, idx] @ val
            scores -= scores.max()
            probs = np.exp(scores)
            probs /= probs.sum()
            probs[y] -= 1.0
            if params.l2:
                weights[:, idx] *= 1.0 - lr * params.l2
            weights[:, idx] -= lr * np.outer(probs, val)
        loss = _mean_loss(weights, encoded)
        if loss >= best_loss:
            weights = best.copy()
            lr *= 0.5
        else:
            best = weights.copy()
            best_loss = loss
            lr *= params.decay
        history.append(best_loss)

    return LinearModel(weights=best, labels=LABELS, n_buckets=params.n_buckets,
                       loss_history=tuple(history))


def save_model(model: LinearModel, path: str) -> None:
    meta = json.dumps({
        "labels": list(model.labels),
        "n_buckets": model.n_buckets,
        "loss_history": list(model.loss_history),
    })
    np.savez_compressed(path, weights=model.weights, meta=np.array(meta))


def load_model(path: str) -> LinearModel:
    try:
        archive = np.load(path, allow_pickle=False)
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read model: {exc}", path) from exc
    if "weights" not in archive or "meta" not in archive:
        raise DataError("model archive missing weights/meta entries", path)
    try:
        meta = json.loads(str(archive["meta"].item()))
        labels = tuple(meta["labels"])
        n_buckets = int(meta["n_buckets"])
        history = tuple(float(x) for x in meta["loss_history"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"model metadata malformed: {exc}", path) from exc
    weights = archive["weights"]
    if labels != LABELS:
        raise DataError(f"model labels {labels} do not match {LABELS}", path)
    if weights.shape != (len(LABELS), n_buckets + 1):
        raise DataError(f"weight matrix shape {weights.shape} does not match "
                        f"{(len(LABELS), n_buckets + 1)}", path)
    return LinearModel(weights=weights, labels=labels, n_buckets=n_buckets,
                       loss_history=history)


@dataclass(frozen=True)
class EvalMetrics:
    """Macro-averaged scores plus the raw confusion matrix.

    confusion[i][j] counts examples whose true label is LABELS[i] and
    predicted label LABELS[j].
    """

    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    confusion: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return sum(sum(row) for row in self.confusion)

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.macro_precision,
            "recall": self.macro_recall,
            "f1": self.macro_f1,
            "confusion": [list(row) for row in self.confusion],
            "n": self.n,
        }


def metrics_from_confusion(confusion: Sequence[Sequence[int]]) -> EvalMetrics:
    """Accuracy and macro P/R/F1; zero denominators score zero."""
    k = len(LABELS)
    total = sum(sum(row) for row in confusion)
    correct = sum(confusion[i][i] for i in range(k))
    precisions = []
    recalls = []
    f1s = []
    for i in range(k):
        col = sum(confusion[r][i] for r in range(k))
        row = sum(confusion[i])
        p = confusion[i][i] / col if col else 0.0
        r = confusion[i][i] / row if row else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(2 * p * r / (p + r) if p + r else 0.0)
    return EvalMetrics(
        accuracy=correct / total if total else 0.0,
        macro_precision=sum(precisions) / k,
        macro_recall=sum(recalls) / k,
        macro_f1=sum(f1s) / k,
        confusion=tuple(tuple(int(c) for c in row) for row in confusion),
    )


def _predict_shard(model: LinearModel, shard: list[LabeledExample]) -> list[list[int]]:
    index = {label: i for i, label in enumerate(LABELS)}
    confusion = [[0] * len(LABELS) for _ in LABELS]
    for ex in shard:
        confusion[index[ex.label]][index[model.predict(ex.text)]] += 1
    return confusion


def evaluate(model: LinearModel, test_set: Sequence[LabeledExample],
             threads: int = 1, shard_size: int = 1_000) -> EvalMetrics:
    """Confusion matrix and macro metrics over a test set.

    With threads > 1 prediction runs over example shards in parallel;
    shard matrices are summed in shard order, so the result is identical
    to the sequential run.
    """
    if not test_set:
        raise EmptyTestSetError("test set is empty")
    examples = list(test_set)
    if threads > 1 and len(examples) > shard_size:
        shards = [examples[i:i + shard_size] for i in range(0, len(examples), shard_size)]
        confusion = [[0] * len(LABELS) for _ in LABELS]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_predict_shard, model, s) for s in shards]
            for fut in futures:
                part = fut.result()
                for i in range(len(LABELS)):
                    for j in range(len(LABELS)):
                        confusion[i][j] += part[i][j]
    else:
        confusion = _predict_shard(model, examples)
    return metrics_from_confusion(confusion)


# Frozen CLI metrics schema.
METRICS_SCHEMA: dict = {
    "type": "object",
    "required": ["accuracy", "precision", "recall", "f1", "confusion", "n"],
    "properties": {
        "accuracy": {"type": "number", "minimum": 0, "maximum": 1},
        "precision": {"type": "number", "minimum": 0, "maximum": 1},
        "recall": {"type": "number", "minimum": 0, "maximum": 1},
        "f1": {"type": "number", "minimum": 0, "maximum": 1},
        "confusion": {
            "type": "array", "minItems": 3, "maxItems": 3,
            "items": {
                "type": "array", "minItems": 3, "maxItems": 3,
                "items": {"type": "integer", "minimum": 0},
            },
        },
        "n": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

ABLATION_SCHEMA: dict = {
    "type": "object",
    "required": ["with_psc", "without_psc", "delta"],
    "properties": {
        "with_psc": METRICS_SCHEMA,
        "without_psc": METRICS_SCHEMA,
        "delta": {
            "type": "object",
            "required": ["accuracy", "precision", "recall", "f1"],
            "properties": {key: {"type": "number"} for key in
                           ("accuracy", "precision", "recall", "f1")},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class AblationResult:
    with_psc: EvalMetrics
    without_psc: EvalMetrics

    def deltas(self) -> dict[str, float]:
        return {
            "accuracy": self.with_psc.accuracy - self.without_psc.accuracy,
            "precision": self.with_psc.macro_precision - self.without_psc.macro_precision,
            "recall": self.with_psc.macro_recall - self.without_psc.macro_recall,
            "f1": self.with_psc.macro_f1 - self.without_psc.macro_f1,
        }

    def to_dict(self) -> dict:
        return {
            "with_psc": self.with_psc.to_dict(),
            "without_psc": self.without_psc.to_dict(),
            "delta": self.deltas(),
        }


def ablation(
    data: Sequence[LabeledExample],
    engine: RuleEngine,
    pipeline_config: PipelineConfig | None = None,
    params: TrainParams = TrainParams(),
    seed: int = 0,
    per_class: int | None = None,
    normalizer: NormalizerConfig | None = None,
) -> AblationResult:
    """Train and evaluate twice, with and without slang conversion.

    Both arms share the same balance, split, seed, and hyperparameters;
    the only difference is whether conversion runs between normalization
    and feature extraction. Labels are never touched. per_class defaults
    to the smallest class so the protocol's balancing step always runs.
    The validation partition is reserved but unused: the linear baseline
    has no early stopping.
    """
    if per_class is None:
        counts = Counter(ex.label for ex in data)
        per_class = min(counts.get(label, 0) for label in LABELS)
    balanced = balance(data, per_class, seed)
    parts = split(balanced, (0.70, 0.15, 0.15), seed)
    norm_config = normalizer or NormalizerConfig()

    def prepare(examples: list[LabeledExample], convert: bool) -> list[LabeledExample]:
        out = []
        for ex in examples:
            doc = normalize(ex.text, norm_config)
            if convert:
                doc, _ = convert_text(doc, engine, pipeline_config)
            out.append(LabeledExample(doc.content, ex.label))
        return out

    arms: dict[str, EvalMetrics] = {}
    for name, convert in (("with_psc", True), ("without_psc", False)):
        model = train(prepare(parts.train, convert), params)
        arms[name] = evaluate(model, prepare(parts.test, convert))
    return AblationResult(arms["with_psc"], arms["without_psc"])
