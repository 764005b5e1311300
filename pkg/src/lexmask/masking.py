"""Lexicon-guided whole-word masking.

Every lexicon word in a chunk is masked; random whole words top the selection
up to the budget (20% of tokens by default). Masked positions are then
replaced per the mask/random/keep policy, BERT-style.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass
from random import Random
from typing import Iterable, Sequence

from .chunking import TokenChunk, Vocab
from .errors import ValidationError
from .lexicon import Lexicon

IGNORE_LABEL = -100


@dataclass(frozen=True)
class MaskPolicy:
    """Masking budget, replacement probabilities and the run-level RNG seed."""

    budget: float = 0.20
    p_mask: float = 0.8
    p_random: float = 0.1
    p_keep: float = 0.1
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.budget < 1.0:
            raise ValidationError(f"budget must be in (0,1), got {self.budget}")
        if min(self.p_mask, self.p_random, self.p_keep) < 0:
            raise ValidationError("replacement probabilities must be non-negative")
        if abs(self.p_mask + self.p_random + self.p_keep - 1.0) > 1e-9:
            raise ValidationError("p_mask + p_random + p_keep must equal 1")


def derive_seed(rng_seed: int, chunk_id: int, purpose: str = "plan") -> int:
    """Stable 64-bit per-chunk seed; independent of worker count and order."""
    h = hashlib.blake2b(digest_size=8)
    h.update(purpose.encode("utf-8"))
    h.update(struct.pack("<qq", rng_seed, chunk_id))
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class MaskPlan:
    chunk_id: int
    masked_groups: frozenset[int]
    masked_positions: frozenset[int]
    lexicon_groups: frozenset[int]


@dataclass(frozen=True)
class MaskedExample:
    input_ids: tuple[int, ...]
    labels: tuple[int, ...]
    plan: MaskPlan


def plan_masks(
    chunk: TokenChunk, lexicon_group_indices: Iterable[int], policy: MaskPolicy
) -> MaskPlan:
    """Choose the word groups to mask.

    All lexicon groups are masked unconditionally. If their combined token
    count is below T = ceil(budget * len(ids)), additional non-lexicon groups
    are drawn uniformly at random (without replacement) until the masked
    position count reaches T or no groups remain; nothing is added once T is
    met, so overshoot is at most one word's length minus one.
    """
    groups = chunk.word_groups
    lexicon = frozenset(lexicon_group_indices)
    for idx in lexicon:
        if not 0 <= idx < len(groups):
            raise ValidationError(f"lexicon group index {idx} out of range")
    masked = set(lexicon)
    covered = sum(groups[i][1] for i in masked)
    target = math.ceil(policy.budget * len(chunk.ids))
    if covered < target:
        candidates = [i for i in range(len(groups)) if i not in masked]
        rng = Random(derive_seed(policy.rng_seed, chunk.chunk_id, "plan"))
        rng.shuffle(candidates)
        for idx in candidates:
            if covered >= target:
                break
            masked.add(idx)
            covered += groups[idx][1]
    positions = frozenset(
        p for i in masked for p in range(groups[i][0], groups[i][0] + groups[i][1])
    )
    return MaskPlan(
        chunk_id=chunk.chunk_id,
        masked_groups=frozenset(masked),
        masked_positions=positions,
        lexicon_groups=lexicon,
    )


def apply_masks(
    chunk: TokenChunk, plan: MaskPlan, policy: MaskPolicy, vocab: Vocab
) -> MaskedExample:
    """Replace planned positions (mask/random/keep per policy) and emit labels.

    Labels carry the original id at masked positions and -100 elsewhere.
    """
    rng = Random(derive_seed(policy.rng_seed, plan.chunk_id, "apply"))
    input_ids = list(chunk.ids)
    labels = [IGNORE_LABEL] * len(input_ids)
    p_mask = policy.p_mask
    p_mask_or_random = policy.p_mask + policy.p_random
    pool = vocab.non_special_ids
    for pos in sorted(plan.masked_positions):
        labels[pos] = input_ids[pos]
        roll = rng.random()
        if roll < p_mask:
            input_ids[pos] = vocab.mask_id
        elif roll < p_mask_or_random:
            input_ids[pos] = pool[rng.randrange(len(pool))]
        # else keep the original token
    return MaskedExample(input_ids=tuple(input_ids), labels=tuple(labels), plan=plan)


def lexicon_groups_in_chunk(chunk: TokenChunk, vocab: Vocab, lex: Lexicon) -> tuple[int, ...]:
    """Group indices whose surface (ids mapped back to tokens) is a lexicon word.

    Groups containing UNK cannot be matched; fragments of a word split across
    chunks do not match the whole word and count as ordinary groups.
    """
    table = vocab.id_to_token
    unk = vocab.unk_id
    hits = []
    for i, (start, length) in enumerate(chunk.word_groups):
        ids = chunk.ids[start : start + length]
        if unk in ids:
            continue
        surface = "".join(table[t] for t in ids)
        if surface in lex.entries:
            hits.append(i)
    return tuple(hits)


def mask_chunk(
    chunk: TokenChunk, vocab: Vocab, lex: Lexicon, policy: MaskPolicy
) -> MaskedExample:
    """Plan plus apply in one step, matching lexicon words by group surface."""
    plan = plan_masks(chunk, lexicon_groups_in_chunk(chunk, vocab, lex), policy)
    return apply_masks(chunk, plan, policy, vocab)


def example_to_record(example: MaskedExample, groups: Sequence[tuple[int, int]]) -> dict:
    """JSON-serializable record with group (start, len) pairs sorted by start."""
    masked = sorted(groups[i] for i in example.plan.masked_groups)
    lexical = sorted(groups[i] for i in example.plan.lexicon_groups)
    return {
        "input_ids": list(example.input_ids),
        "labels": list(example.labels),
        "masked_groups": [list(g) for g in masked],
        "lexicon_groups": [list(g) for g in lexical],
    }


@dataclass(frozen=True)
class ProbeRecord:
    original: str
    masked: str
    target: str
    start: int


def make_probe(sentence: str, target: str, start: int | None = None) -> ProbeRecord:
    """Replace each character of the target span with one [MASK] marker."""
    if start is None:
        start = sentence.find(target)
        if start < 0:
            raise ValidationError(f"target {target!r} does not occur in sentence")
    if start < 0 or start + len(target) > len(sentence):
        raise ValidationError(
            f"span [{start}, {start + len(target)}) out of bounds for sentence of length {len(sentence)}"
        )
    if sentence[start : start + len(target)] != target:
        raise ValidationError(f"sentence does not contain {target!r} at offset {start}")
    masked = sentence[:start] + "[MASK]" * len(target) + sentence[start + len(target) :]
    return ProbeRecord(original=sentence, masked=masked, target=target, start=start)
