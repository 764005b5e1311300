"""Mask planning, replacement policy, probe generation."""

import math
import random

import pytest

from helpers import random_chunk, small_vocab
from lexmask.chunking import TokenChunk
from lexmask.errors import ValidationError
from lexmask.lexicon import Lexicon
from lexmask.masking import (
    IGNORE_LABEL,
    MaskPolicy,
    apply_masks,
    derive_seed,
    lexicon_groups_in_chunk,
    make_probe,
    mask_chunk,
    plan_masks,
)

VOCAB = small_vocab()


def chunk_of(group_lens, chunk_id=0):
    groups = []
    pos = 0
    for g in group_lens:
        groups.append((pos, g))
        pos += g
    rng = random.Random(pos * 31 + chunk_id)
    ids = tuple(rng.choice(VOCAB.non_special_ids) for _ in range(pos))
    return TokenChunk(chunk_id=chunk_id, ids=ids, word_groups=tuple(groups), origin={})


def test_policy_validates_probabilities():
    with pytest.raises(ValidationError):
        MaskPolicy(p_mask=0.5, p_random=0.2, p_keep=0.2)
    with pytest.raises(ValidationError):
        MaskPolicy(budget=0.0)
    with pytest.raises(ValidationError):
        MaskPolicy(budget=1.0)
    with pytest.raises(ValidationError):
        MaskPolicy(p_mask=1.1, p_random=-0.1, p_keep=0.0)


def test_derive_seed_stable_and_distinct():
    assert derive_seed(7, 3) == derive_seed(7, 3)
    assert derive_seed(7, 3) != derive_seed(7, 4)
    assert derive_seed(7, 3) != derive_seed(8, 3)
    assert derive_seed(7, 3, "plan") != derive_seed(7, 3, "apply")


def test_plan_lexicon_exactly_fills_budget():
    # L=10, T=ceil(0.2*10)=2, one 2-token lexicon word: no random additions
    chunk = chunk_of([2, 2, 2, 2, 2])
    plan = plan_masks(chunk, [1], MaskPolicy(rng_seed=1))
    assert plan.masked_groups == frozenset({1})
    assert plan.masked_positions == frozenset({2, 3})
    assert plan.lexicon_groups == frozenset({1})


def test_plan_random_topup_without_lexicon():
    chunk = chunk_of([2, 2, 2, 2, 2])
    plan = plan_masks(chunk, [], MaskPolicy(rng_seed=5))
    assert len(plan.masked_positions) >= 2
    assert plan.lexicon_groups == frozenset()


def test_plan_all_lexicon_masks_everything():
    chunk = chunk_of([2, 3, 5])
    plan = plan_masks(chunk, [0, 1, 2], MaskPolicy(rng_seed=2))
    assert plan.masked_positions == frozenset(range(10))


def test_plan_lexicon_over_budget_not_downsampled():
    # lexicon covers 60% of a 10-token chunk; all of it stays masked
    chunk = chunk_of([3, 3, 2, 2])
    plan = plan_masks(chunk, [0, 1], MaskPolicy(rng_seed=3))
    assert plan.masked_groups == frozenset({0, 1})
    assert len(plan.masked_positions) == 6


def test_plan_rejects_bad_group_index():
    chunk = chunk_of([2, 2])
    with pytest.raises(ValidationError):
        plan_masks(chunk, [5], MaskPolicy())


def test_plan_budget_and_atomicity_randomized():
    rng = random.Random(77)
    policy = MaskPolicy(rng_seed=42)
    for i in range(1000):
        chunk, lexicon = random_chunk(rng, VOCAB, chunk_id=i)
        plan = plan_masks(chunk, lexicon, policy)
        target = math.ceil(policy.budget * len(chunk.ids))
        # whole-word atomicity both ways
        expected_positions = set()
        for g in plan.masked_groups:
            start, length = chunk.word_groups[g]
            expected_positions.update(range(start, start + length))
        assert plan.masked_positions == frozenset(expected_positions)
        # lexicon priority
        assert set(lexicon) <= plan.masked_groups
        # budget floor whenever enough groups exist
        assert len(plan.masked_positions) >= min(target, len(chunk.ids))
        # bounded overshoot when random top-up happened
        if plan.masked_groups != plan.lexicon_groups:
            max_len = max(l for _, l in chunk.word_groups)
            assert len(plan.masked_positions) <= target + max_len - 1


def test_apply_mask_only_policy():
    chunk = chunk_of([2, 2, 2, 2, 2])
    policy = MaskPolicy(p_mask=1.0, p_random=0.0, p_keep=0.0, rng_seed=9)
    plan = plan_masks(chunk, [0, 2], policy)
    example = apply_masks(chunk, plan, policy, VOCAB)
    for pos in range(len(chunk.ids)):
        if pos in plan.masked_positions:
            assert example.input_ids[pos] == VOCAB.mask_id
            assert example.labels[pos] == chunk.ids[pos]
        else:
            assert example.input_ids[pos] == chunk.ids[pos]
            assert example.labels[pos] == IGNORE_LABEL


def test_apply_labels_match_positions_exactly():
    rng = random.Random(123)
    policy = MaskPolicy(rng_seed=17)
    for i in range(200):
        chunk, lexicon = random_chunk(rng, VOCAB, chunk_id=i, length=64)
        plan = plan_masks(chunk, lexicon, policy)
        example = apply_masks(chunk, plan, policy, VOCAB)
        labelled = {p for p, lab in enumerate(example.labels) if lab != IGNORE_LABEL}
        assert labelled == plan.masked_positions
        for p in labelled:
            assert example.labels[p] == chunk.ids[p]
        for p in set(range(64)) - labelled:
            assert example.input_ids[p] == chunk.ids[p]


def test_apply_replacement_statistics():
    rng = random.Random(55)
    policy = MaskPolicy(rng_seed=2024)
    n_mask = n_random = n_keep = total = 0
    i = 0
    while total < 12_000:
        chunk, lexicon = random_chunk(rng, VOCAB, chunk_id=i)
        i += 1
        plan = plan_masks(chunk, lexicon, policy)
        example = apply_masks(chunk, plan, policy, VOCAB)
        for p in plan.masked_positions:
            total += 1
            if example.input_ids[p] == VOCAB.mask_id:
                n_mask += 1
            elif example.input_ids[p] == chunk.ids[p]:
                n_keep += 1
            else:
                n_random += 1
    assert abs(n_mask / total - 0.8) < 0.02
    assert abs(n_random / total - 0.1) < 0.02
    assert abs(n_keep / total - 0.1) < 0.02


def test_masking_deterministic_and_order_independent():
    rng = random.Random(31)
    policy = MaskPolicy(rng_seed=7)
    chunks = [random_chunk(rng, VOCAB, chunk_id=i) for i in range(20)]
    first = [apply_masks(c, plan_masks(c, lex, policy), policy, VOCAB) for c, lex in chunks]
    shuffled = list(enumerate(chunks))
    random.Random(99).shuffle(shuffled)
    second = [None] * len(chunks)
    for idx, (c, lex) in shuffled:
        second[idx] = apply_masks(c, plan_masks(c, lex, policy), policy, VOCAB)
    assert first == second


def test_lexicon_groups_in_chunk_by_surface():
    vocab = small_vocab()
    lex = Lexicon()
    word = vocab.id_to_token[10] + vocab.id_to_token[11]
    lex.add(word, 1.0, is_seed=True)
    # groups: the lexicon word, an ordinary char, and a group containing UNK
    chunk = TokenChunk(chunk_id=0, ids=(10, 11, 12, vocab.unk_id),
                       word_groups=((0, 2), (2, 1), (3, 1)), origin={})
    assert lexicon_groups_in_chunk(chunk, vocab, lex) == (0,)


def test_mask_chunk_end_to_end():
    vocab = small_vocab()
    lex = Lexicon()
    word = vocab.id_to_token[20] + vocab.id_to_token[21]
    lex.add(word, 1.0, is_seed=True)
    ids = tuple([20, 21] + [30] * 18)
    groups = tuple((p, 2) for p in range(0, 20, 2))
    chunk = TokenChunk(chunk_id=0, ids=ids, word_groups=groups, origin={})
    example = mask_chunk(chunk, vocab, lex, MaskPolicy(rng_seed=3))
    assert {0, 1} <= set(example.plan.masked_positions)
    assert example.plan.lexicon_groups == frozenset({0})
    assert len(example.plan.masked_positions) >= math.ceil(0.2 * 20)


def test_make_probe_reference_sentences():
    assert make_probe("经常责怪自己", "责怪").masked == "经常[MASK][MASK]自己"
    assert make_probe("呼吸有困难", "困难").masked == "呼吸有[MASK][MASK]"
    assert make_probe("想到死亡的事", "死亡").masked == "想到[MASK][MASK]的事"


def test_make_probe_explicit_span_and_errors():
    probe = make_probe("难受难受", "难受", start=2)
    assert probe.masked == "难受[MASK][MASK]"
    with pytest.raises(ValidationError):
        make_probe("难受", "难受", start=1)  # runs past the end
    with pytest.raises(ValidationError):
        make_probe("难受", "开心")  # not present
    with pytest.raises(ValidationError):
        make_probe("难受难受", "难受", start=1)  # span does not match target
