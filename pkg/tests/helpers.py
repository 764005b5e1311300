"""Shared builders for synthetic documents, vocabularies, and chunks."""

import random

from lexmask.chunking import SPECIAL_TOKENS, TokenChunk, Vocab
from lexmask.segmentation import SegmentedDoc


def make_doc(words):
    chars = "".join(words)
    spans = []
    pos = 0
    for w in words:
        spans.append((pos, len(w)))
        pos += len(w)
    return SegmentedDoc(chars=chars, word_spans=tuple(spans))


def small_vocab(extra=200):
    """Specials plus `extra` synthetic single-character tokens."""
    chars = [chr(0x4E00 + i) for i in range(extra)]
    return Vocab(list(SPECIAL_TOKENS) + chars)


def random_chunk(rng: random.Random, vocab: Vocab, chunk_id=0, length=128,
                 max_word_len=4, lexicon_rate=0.15):
    """Random chunk with word groups of 1..max_word_len tokens and a random
    subset of groups flagged as lexicon hits. Returns (chunk, lexicon_indices)."""
    groups = []
    pos = 0
    while pos < length:
        g = min(rng.randint(1, max_word_len), length - pos)
        groups.append((pos, g))
        pos += g
    ids = [rng.choice(vocab.non_special_ids) for _ in range(length)]
    lexicon = tuple(i for i in range(len(groups)) if rng.random() < lexicon_rate)
    chunk = TokenChunk(chunk_id=chunk_id, ids=tuple(ids), word_groups=tuple(groups),
                       origin={})
    return chunk, lexicon
