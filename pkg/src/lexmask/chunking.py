"""Tokenize segmented documents against a fixed vocabulary and cut the
concatenated token stream into equal-sized chunks with word-group annotations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError
from .segmentation import SegmentedDoc

SPECIAL_TOKENS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")


class Vocab:
    """Token-to-id table with the five BERT-style special tokens."""

    def __init__(self, tokens: Sequence[str]):
        self.token_to_id: dict[str, int] = {}
        for i, tok in enumerate(tokens):
            if not tok:
                raise ValidationError(f"empty vocab token at id {i}")
            if tok in self.token_to_id:
                raise ValidationError(f"duplicate vocab token {tok!r} at id {i}")
            self.token_to_id[tok] = i
        for special in SPECIAL_TOKENS:
            if special not in self.token_to_id:
                raise ValidationError(f"vocab is missing special token {special}")
        self.id_to_token: list[str] = list(tokens)
        self.pad_id = self.token_to_id["[PAD]"]
        self.unk_id = self.token_to_id["[UNK]"]
        self.cls_id = self.token_to_id["[CLS]"]
        self.sep_id = self.token_to_id["[SEP]"]
        self.mask_id = self.token_to_id["[MASK]"]
        special_ids = {self.pad_id, self.unk_id, self.cls_id, self.sep_id, self.mask_id}
        self.non_special_ids: list[int] = [
            i for i in range(len(tokens)) if i not in special_ids
        ]

    def __len__(self) -> int:
        return len(self.id_to_token)

    @classmethod
    def from_characters(cls, text: str) -> "Vocab":
        """Specials followed by the distinct characters of text, in first-seen order."""
        seen: dict[str, None] = {}
        for ch in text:
            if ch not in seen and not ch.isspace():
                seen.setdefault(ch)
        return cls(list(SPECIAL_TOKENS) + list(seen))


def load_vocab(path: str) -> Vocab:
    """One token per line; the line number is the id."""
    with open(path, encoding="utf-8") as fh:
        tokens = [line.rstrip("\n") for line in fh]
    while tokens and tokens[-1] == "":
        tokens.pop()
    return Vocab(tokens)


def save_vocab(vocab: Vocab, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for tok in vocab.id_to_token:
            fh.write(tok + "\n")


def tokenize(doc: SegmentedDoc, vocab: Vocab) -> tuple[list[int], list[tuple[int, int]]]:
    """Map a segmented document to token ids plus word groups in token space.

    One token per character; a multi-character all-ASCII-alphanumeric span
    becomes a single token (the whole run if in vocab, else UNK). Groups
    mirror the document's word spans.
    """
    ids: list[int] = []
    groups: list[tuple[int, int]] = []
    table = vocab.token_to_id
    unk = vocab.unk_id
    for start, length in doc.word_spans:
        surface = doc.chars[start : start + length]
        group_start = len(ids)
        if length > 1 and surface.isascii() and surface.isalnum():
            ids.append(table.get(surface, unk))
        else:
            for ch in surface:
                ids.append(table.get(ch, unk))
        groups.append((group_start, len(ids) - group_start))
    return ids, groups


@dataclass(frozen=True)
class TokenChunk:
    """Fixed-length window of token ids; word_groups partition [0, len(ids))."""

    chunk_id: int
    ids: tuple[int, ...]
    word_groups: tuple[tuple[int, int], ...]
    origin: dict


def chunk_stream(
    docs: Iterable[tuple[str, Sequence[int], Sequence[tuple[int, int]]]],
    length: int = 128,
) -> Iterator[TokenChunk]:
    """Concatenate (doc_id, ids, groups) records in order and emit consecutive
    windows of exactly `length` tokens.

    The trailing partial window is dropped. A word straddling a window
    boundary is split and each fragment becomes its own group in its chunk.
    """
    if length < 8:
        raise ValidationError(f"chunk length must be >= 8, got {length}")
    buf_ids: list[int] = []
    buf_groups: list[list] = []  # [remaining_len, doc_id]
    ids_base = 0  # consumed prefix, compacted periodically to stay O(n) overall
    groups_base = 0
    offset = 0
    chunk_id = 0
    for doc_id, ids, groups in docs:
        if not ids:
            continue
        buf_ids.extend(ids)
        for _, group_len in groups:
            buf_groups.append([group_len, doc_id])
        while len(buf_ids) - ids_base >= length:
            out_groups: list[tuple[int, int]] = []
            doc_ids: list[str] = []
            pos = 0
            g = groups_base
            while pos < length:
                remaining, gdoc = buf_groups[g]
                take = min(remaining, length - pos)
                out_groups.append((pos, take))
                if not doc_ids or doc_ids[-1] != gdoc:
                    doc_ids.append(gdoc)
                pos += take
                if take == remaining:
                    g += 1
                else:
                    buf_groups[g][0] = remaining - take
            groups_base = g
            chunk_ids = tuple(buf_ids[ids_base : ids_base + length])
            ids_base += length
            if ids_base >= 1 << 16:
                del buf_ids[:ids_base]
                del buf_groups[:groups_base]
                ids_base = groups_base = 0
            yield TokenChunk(
                chunk_id=chunk_id,
                ids=chunk_ids,
                word_groups=tuple(out_groups),
                origin={"doc_ids": doc_ids, "token_offset": offset},
            )
            offset += length
            chunk_id += 1
