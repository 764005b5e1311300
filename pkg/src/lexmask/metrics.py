"""Classification evaluation: per-class confusion counts, precision/recall/F1
under binary, macro and micro averaging, deterministic k-fold splits, and
dataset summary statistics."""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Callable, Hashable, Optional, Sequence

from .errors import ValidationError

Label = Hashable


@dataclass(frozen=True)
class LabelSet:
    classes: tuple[Label, ...]
    multi_label: bool = False

    def __post_init__(self) -> None:
        if not self.classes:
            raise ValidationError("LabelSet needs at least one class")
        if len(set(self.classes)) != len(self.classes):
            raise ValidationError("LabelSet classes must be unique")


@dataclass
class ClassCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0


def confusion_counts(
    golds: Sequence, preds: Sequence, labels: LabelSet
) -> dict[Label, ClassCounts]:
    """Per-class tp/fp/fn. Multi-label inputs are per-sample label collections,
    counted per (sample, class) pair."""
    if len(golds) != len(preds):
        raise ValidationError(f"golds ({len(golds)}) and preds ({len(preds)}) differ in length")
    known = set(labels.classes)
    counts = {c: ClassCounts() for c in labels.classes}
    if labels.multi_label:
        for gold, pred in zip(golds, preds):
            gset, pset = set(gold), set(pred)
            for lbl in gset | pset:
                if lbl not in known:
                    raise ValidationError(f"label {lbl!r} not in LabelSet")
            for c in labels.classes:
                if c in gset and c in pset:
                    counts[c].tp += 1
                elif c in pset:
                    counts[c].fp += 1
                elif c in gset:
                    counts[c].fn += 1
    else:
        for gold, pred in zip(golds, preds):
            if gold not in known:
                raise ValidationError(f"label {gold!r} not in LabelSet")
            if pred not in known:
                raise ValidationError(f"label {pred!r} not in LabelSet")
            if gold == pred:
                counts[gold].tp += 1
            else:
                counts[pred].fp += 1
                counts[gold].fn += 1
    return counts


def _prf_from(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    # 0/0 cases are defined as 0
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f1


def prf(
    counts: dict[Label, ClassCounts],
    averaging: str,
    positive: Optional[Label] = None,
) -> tuple[float, float, float]:
    """Precision, recall, F1 under the requested averaging.

    binary: metrics of the positive class (defaults to the second class).
    macro: unweighted mean of per-class metrics; macro-F1 is the mean of
    per-class F1, not the harmonic mean of macro-P and macro-R.
    micro: metrics of the summed counts.
    """
    if averaging == "binary":
        if len(counts) != 2:
            raise ValidationError(f"binary averaging needs 2 classes, got {len(counts)}")
        if positive is None:
            positive = list(counts)[1]
        if positive not in counts:
            raise ValidationError(f"positive class {positive!r} not in counts")
        c = counts[positive]
        return _prf_from(c.tp, c.fp, c.fn)
    if averaging == "macro":
        per_class = [_prf_from(c.tp, c.fp, c.fn) for c in counts.values()]
        n = len(per_class)
        return (
            sum(p for p, _, _ in per_class) / n,
            sum(r for _, r, _ in per_class) / n,
            sum(f for _, _, f in per_class) / n,
        )
    if averaging == "micro":
        tp = sum(c.tp for c in counts.values())
        fp = sum(c.fp for c in counts.values())
        fn = sum(c.fn for c in counts.values())
        return _prf_from(tp, fp, fn)
    raise ValidationError(f"unknown averaging {averaging!r}")


@dataclass
class EvalReport:
    averaging: str
    precision: float
    recall: float
    f1: float
    per_class: dict[Label, ClassCounts] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "averaging": self.averaging,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "per_class": {
                str(c): {"tp": k.tp, "fp": k.fp, "fn": k.fn}
                for c, k in self.per_class.items()
            },
        }


def evaluate(
    golds: Sequence,
    preds: Sequence,
    labels: LabelSet,
    averaging: str,
    positive: Optional[Label] = None,
) -> EvalReport:
    counts = confusion_counts(golds, preds, labels)
    p, r, f1 = prf(counts, averaging, positive)
    return EvalReport(averaging=averaging, precision=p, recall=r, f1=f1, per_class=counts)


def kfold_split(n: int, k: int = 5, seed: int = 0) -> list[list[int]]:
    """k disjoint folds covering [0, n): shuffle with the seed, deal round-robin.

    Fold sizes differ by at most one; identical (n, k, seed) gives identical folds.
    """
    if k < 2:
        raise ValidationError(f"k must be >= 2, got {k}")
    if n < k:
        raise ValidationError(f"need n >= k, got n={n}, k={k}")
    indices = list(range(n))
    Random(seed).shuffle(indices)
    return [indices[j::k] for j in range(k)]


@dataclass(frozen=True)
class DatasetSummary:
    n_train: int
    n_val: int
    n_test: int
    n_categories: int
    mean_labels_per_sample: float
    mean_words_per_sample: float

    def to_dict(self) -> dict:
        return {
            "n_train": self.n_train,
            "n_val": self.n_val,
            "n_test": self.n_test,
            "C": self.n_categories,
            "C_bar": self.mean_labels_per_sample,
            "W_bar": self.mean_words_per_sample,
        }


def dataset_summary(
    train: Sequence[tuple[str, Sequence[Label]]],
    val: Sequence[tuple[str, Sequence[Label]]],
    test: Sequence[tuple[str, Sequence[Label]]],
    word_count: Callable[[str], int],
) -> DatasetSummary:
    """Split sizes, distinct category count, mean labels and mean words per sample.

    word_count is usually len(segment_fmm(text, dictionary).word_spans).
    """
    samples = list(train) + list(val) + list(test)
    classes = {lbl for _, lbls in samples for lbl in lbls}
    n = len(samples)
    c_bar = sum(len(lbls) for _, lbls in samples) / n if n else 0.0
    w_bar = sum(word_count(text) for text, _ in samples) / n if n else 0.0
    return DatasetSummary(
        n_train=len(train),
        n_val=len(val),
        n_test=len(test),
        n_categories=len(classes),
        mean_labels_per_sample=c_bar,
        mean_words_per_sample=w_bar,
    )
