"""Dictionary-based Chinese word segmentation via forward maximum matching.

Word spans are the groups that whole-word masking later treats as atomic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class SegmentDict:
    words: frozenset[str]
    max_word_len: int

    def __contains__(self, word: str) -> bool:
        return word in self.words


@dataclass(frozen=True)
class SegmentedDoc:
    """Character sequence plus (start, len) word spans partitioning it."""

    chars: str
    word_spans: tuple[tuple[int, int], ...]

    def words(self) -> list[str]:
        return [self.chars[s : s + l] for s, l in self.word_spans]


def build_dict(word_list: Iterable[str], lexicon_words: Iterable[str] = ()) -> SegmentDict:
    """Union the word list with the lexicon so lexicon words always segment as units."""
    words = set()
    for w in word_list:
        if not w:
            raise ValidationError("empty string in segmentation word list")
        words.add(w)
    for w in lexicon_words:
        if not w:
            raise ValidationError("empty string in lexicon word list")
        words.add(w)
    max_len = max((len(w) for w in words), default=0)
    return SegmentDict(words=frozenset(words), max_word_len=max_len)


def _is_ascii_alnum(ch: str) -> bool:
    return ch.isascii() and ch.isalnum()


def segment_fmm(text: str, dictionary: SegmentDict) -> SegmentedDoc:
    """Forward maximum matching: at each position take the longest dictionary
    word starting there. Positions with no dictionary match fall back to the
    maximal ASCII letter/digit run, or a single character.
    """
    spans: list[tuple[int, int]] = []
    n = len(text)
    words = dictionary.words
    max_len = dictionary.max_word_len
    i = 0
    while i < n:
        match_len = 0
        for length in range(min(max_len, n - i), 0, -1):
            if text[i : i + length] in words:
                match_len = length
                break
        if match_len == 0:
            if _is_ascii_alnum(text[i]):
                j = i + 1
                while j < n and _is_ascii_alnum(text[j]):
                    j += 1
                match_len = j - i
            else:
                match_len = 1
        spans.append((i, match_len))
        i += match_len
    return SegmentedDoc(chars=text, word_spans=tuple(spans))


def load_dict_files(paths: Sequence[str], lexicon_words: Iterable[str] = ()) -> SegmentDict:
    """Load one-word-per-line dictionary files (UTF-8); multiple files are unioned."""
    entries: list[str] = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                word = line.strip()
                if word:
                    entries.append(word)
    return build_dict(entries, lexicon_words)
