"""Synthetic desk-scale tasks and their text serialization.

Regression: inputs uniform on [-2, 2]^2, target |x1| + sin(2*x2) -- the
kink and the negative-region structure reward activations whose gradient
survives below zero.

Tagging: integer token sequences over the alphabet 0..9.  Tokens 0..5
are background (O); runs of {6, 7} form "num" entities and runs of
{8, 9} form "sym" entities, each followed by a forced background token
so adjacent entities never merge.  The label of a token is therefore a
deterministic function of a small context window, learnable by a window
classifier.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError
from .metrics import TagSequence

ALPHABET_SIZE = 10
LABEL_VOCAB = ("O", "B-num", "I-num", "B-sym", "I-sym")

_ENTITY_TOKENS = {"num": (6, 7), "sym": (8, 9)}


@dataclass
class RegressionData:
    inputs: np.ndarray  # (n, 2)
    targets: np.ndarray  # (n,)


@dataclass
class TaggingData:
    sequences: list  # TagSequence gold
    window: int
    inputs: np.ndarray  # (total_tokens, (2*window+1)*ALPHABET_SIZE) one-hot
    label_ids: np.ndarray  # (total_tokens,)
    offsets: list  # start index of each sequence in the flat arrays


def gen_regression_task(seed: int, n_samples: int) -> RegressionData:
    if n_samples < 1:
        raise ConfigurationError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    inputs = rng.uniform(-2.0, 2.0, size=(n_samples, 2))
    targets = np.abs(inputs[:, 0]) + np.sin(2.0 * inputs[:, 1])
    return RegressionData(inputs=inputs, targets=targets)


def gen_toy_tagging_task(seed: int, n_sequences: int,
                         min_len: int = 8, max_len: int = 16) -> list:
    """Deterministic list of gold TagSequences."""
    if n_sequences < 1:
        raise ConfigurationError(f"n_sequences must be >= 1, got {n_sequences}")
    rng = np.random.default_rng(seed)
    sequences = []
    for _ in range(n_sequences):
        length = int(rng.integers(min_len, max_len + 1))
        tokens = []
        labels = []
        while len(tokens) < length:
            room = length - len(tokens)
            if room >= 4 and rng.random() < 0.3:
                kind = "num" if rng.random() < 0.5 else "sym"
                span_len = int(rng.integers(1, 4))
                pool = _ENTITY_TOKENS[kind]
                for j in range(span_len):
                    tokens.append(int(rng.choice(pool)))
                    labels.append(f"B-{kind}" if j == 0 else f"I-{kind}")
                # separator: consecutive entities must not merge into one run
                tokens.append(int(rng.integers(0, 6)))
                labels.append("O")
            else:
                tokens.append(int(rng.integers(0, 6)))
                labels.append("O")
        sequences.append(TagSequence(tuple(tokens), tuple(labels)))
    return sequences


def make_tagging_data(sequences, window: int = 2) -> TaggingData:
    """One-hot window features and label ids for every token position."""
    dim = (2 * window + 1) * ALPHABET_SIZE
    total = sum(len(s.tokens) for s in sequences)
    inputs = np.zeros((total, dim))
    label_ids = np.zeros(total, dtype=np.int64)
    label_index = {label: i for i, label in enumerate(LABEL_VOCAB)}
    offsets = []
    row = 0
    for seq in sequences:
        offsets.append(row)
        n = len(seq.tokens)
        for pos in range(n):
            for k in range(-window, window + 1):
                j = pos + k
                if 0 <= j < n:
                    slot = (k + window) * ALPHABET_SIZE + seq.tokens[j]
                    inputs[row, slot] = 1.0
            label_ids[row] = label_index[seq.labels[pos]]
            row += 1
    return TaggingData(sequences=list(sequences), window=window,
                       inputs=inputs, label_ids=label_ids, offsets=offsets)


def labels_to_sequences(data: TaggingData, flat_label_ids) -> list:
    """Reassemble flat per-token label ids into TagSequences."""
    out = []
    for seq, start in zip(data.sequences, data.offsets):
        n = len(seq.tokens)
        labels = tuple(LABEL_VOCAB[int(i)] for i in flat_label_ids[start:start + n])
        out.append(TagSequence(seq.tokens, labels))
    return out


def majority_label_baseline(train_sequences) -> str:
    """Most frequent label in the training gold (ties break toward 'O')."""
    counts = {label: 0 for label in LABEL_VOCAB}
    for seq in train_sequences:
        for label in seq.labels:
            counts[label] += 1
    return max(LABEL_VOCAB, key=lambda label: (counts[label], label == "O"))


def token_frequency_baseline(train_sequences) -> dict:
    """Per-token-symbol most frequent label; unseen symbols map to 'O'."""
    counts = {}
    for seq in train_sequences:
        for token, label in zip(seq.tokens, seq.labels):
            counts.setdefault(token, {l: 0 for l in LABEL_VOCAB})[label] += 1
    table = {}
    for token, label_counts in counts.items():
        table[token] = max(LABEL_VOCAB, key=lambda label: label_counts[label])
    return table


def apply_token_baseline(table: dict, sequences) -> list:
    return [
        TagSequence(seq.tokens, tuple(table.get(tok, "O") for tok in seq.tokens))
        for seq in sequences
    ]


# -- line-oriented text formats ----------------------------------------------


def save_regression(path, data: RegressionData):
    with open(path, "w", encoding="utf-8") as fh:
        for (x1, x2), target in zip(data.inputs, data.targets):
            fh.write(f"{x1:.17g},{x2:.17g},{target:.17g}\n")


def load_regression(path) -> RegressionData:
    inputs = []
    targets = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            x1, x2, target = (float(v) for v in line.split(","))
            inputs.append((x1, x2))
            targets.append(target)
    return RegressionData(inputs=np.array(inputs), targets=np.array(targets))


def save_tagging(path, sequences):
    with open(path, "w", encoding="utf-8") as fh:
        for seq in sequences:
            for token, label in zip(seq.tokens, seq.labels):
                fh.write(f"{token}\t{label}\n")
            fh.write("\n")


def load_tagging(path) -> list:
    sequences = []
    tokens = []
    labels = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                if tokens:
                    sequences.append(TagSequence(tuple(tokens), tuple(labels)))
                    tokens, labels = [], []
                continue
            token, _, label = line.partition("\t")
            tokens.append(int(token))
            labels.append(label)
    if tokens:
        sequences.append(TagSequence(tuple(tokens), tuple(labels)))
    return sequences
