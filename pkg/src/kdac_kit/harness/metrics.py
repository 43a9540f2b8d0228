"""Span-level precision/recall/F1 over BIO tag sequences.

A span is the exact tuple (start, end, type) with end exclusive; credit
requires an exact match.  Ill-formed predictions (an I tag with no open
span of the same type) are repaired by promoting the stray I to B before
extraction, mirroring common evaluator behavior.  Empty denominators
score zero: no predicted spans -> P = 0, no gold spans -> R = 0, and
F1 = 0 whenever P + R = 0.
"""

from dataclasses import dataclass

from ..errors import DomainError, ShapeError


@dataclass(frozen=True)
class TagSequence:
    tokens: tuple
    labels: tuple  # BIO strings: "O", "B-<type>", "I-<type>"

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.tokens) != len(self.labels):
            raise ShapeError(
                f"{len(self.tokens)} tokens vs {len(self.labels)} labels"
            )
        for label in self.labels:
            _split_tag(label)


def _split_tag(label):
    if label == "O":
        return "O", None
    head, _, kind = label.partition("-")
    if head in ("B", "I") and kind:
        return head, kind
    raise DomainError(f"malformed BIO tag {label!r}")


def extract_spans(labels) -> list:
    """Typed spans [(start, end, type), ...] with end exclusive.

    Stray I tags (after O, at the start, or after a span of another type)
    are treated as span starts.
    """
    spans = []
    start = None
    kind = None
    for i, label in enumerate(labels):
        head, this_kind = _split_tag(label)
        if head == "O":
            if start is not None:
                spans.append((start, i, kind))
                start, kind = None, None
        elif head == "B" or this_kind != kind or start is None:
            if start is not None:
                spans.append((start, i, kind))
            start, kind = i, this_kind
    if start is not None:
        spans.append((start, len(labels), kind))
    return spans


def render_spans(spans, length: int) -> list:
    """Inverse of extract_spans for well-formed, disjoint spans."""
    labels = ["O"] * length
    for start, end, kind in spans:
        if not (0 <= start < end <= length):
            raise DomainError(f"span ({start}, {end}) out of range for length {length}")
        labels[start] = f"B-{kind}"
        for i in range(start + 1, end):
            labels[i] = f"I-{kind}"
    return labels


def _prf(n_gold, n_pred, n_match):
    precision = n_match / n_pred if n_pred else 0.0
    recall = n_match / n_gold if n_gold else 0.0
    if precision + recall == 0.0:
        return precision, recall, 0.0
    return precision, recall, 2.0 * precision * recall / (precision + recall)


def span_prf(gold: TagSequence, pred: TagSequence):
    """Exact-match span precision, recall, and F1 for one sequence pair."""
    if len(gold.labels) != len(pred.labels):
        raise ShapeError(
            f"gold length {len(gold.labels)} vs pred length {len(pred.labels)}"
        )
    gold_spans = set(extract_spans(gold.labels))
    pred_spans = set(extract_spans(pred.labels))
    return _prf(len(gold_spans), len(pred_spans), len(gold_spans & pred_spans))


def span_prf_corpus(golds, preds):
    """Micro-averaged P/R/F1 over parallel lists of sequences."""
    if len(golds) != len(preds):
        raise ShapeError(f"{len(golds)} gold sequences vs {len(preds)} predictions")
    n_gold = n_pred = n_match = 0
    for gold, pred in zip(golds, preds):
        if len(gold.labels) != len(pred.labels):
            raise ShapeError(
                f"gold length {len(gold.labels)} vs pred length {len(pred.labels)}"
            )
        gold_spans = set(extract_spans(gold.labels))
        pred_spans = set(extract_spans(pred.labels))
        n_gold += len(gold_spans)
        n_pred += len(pred_spans)
        n_match += len(gold_spans & pred_spans)
    return _prf(n_gold, n_pred, n_match)
