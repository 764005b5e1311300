"""Social-media text cleaning: strip non-linguistic artifacts, filter degenerate posts,
and aggregate per-source corpus statistics."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .errors import ValidationError

# Scheme-prefixed URLs plus the bare t.cn short-link form common on Weibo.
_URL = r"https?://\S+"
_SHORTLINK = r"(?<![A-Za-z0-9.])t\.cn/[0-9A-Za-z]+"
# Weibo mentions may contain CJK, latin, digits, underscore, hyphen, middle dot.
_MENTION = r"@[A-Za-z0-9_一-鿿·\-]{1,30}"
# Paired #topic# Weibo convention (not the single-# Twitter one).
_HASHTAG = r"#[^#]{0,32}#"

# Common kaomoji / emote artifacts. Bracket emotes like [泪] are how Weibo
# serializes its built-in emoji.
_KAOMOJI_DEFAULTS = (
    r"\[[^\[\]\s]{1,8}\]",
    r"(?:\^_+\^|>_+<|T[._]T|Q[AW]Q|=_=|(?<![A-Za-z])[oO][rR][zZ](?![A-Za-z]))",
)

# Unicode emoji and pictograph blocks, variation selectors, regional indicators.
_EMOJI_RANGES = (
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
    (0xFE00, 0xFE0F),
    (0x1F000, 0x1F0FF),
    (0x1F1E6, 0x1F1FF),
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F780, 0x1F7FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
)
_EMOJI_CLASS = "[" + "".join(f"{chr(lo)}-{chr(hi)}" for lo, hi in _EMOJI_RANGES) + "⃣]"

# Non-whitespace control characters, zero-width characters, BOM.
_CONTROL = r"[\x00-\x08\x0b\x0c\x0e-\x1f\x7f-\x9f​-‏  ﻿]"

_WS_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class CleaningConfig:
    """Rule set applied by clean_text / filter passes. Patterns are regex sources."""

    min_chars: int = 4
    drop_repeated_char_spam: bool = True
    strip_emoji: bool = True
    url_patterns: tuple[str, ...] = (_URL, _SHORTLINK)
    mention_pattern: str = _MENTION
    hashtag_pattern: str = _HASHTAG
    extra_patterns: tuple[str, ...] = _KAOMOJI_DEFAULTS


DEFAULT_CONFIG = CleaningConfig()


@lru_cache(maxsize=8)
def _compiled_rules(rules: CleaningConfig) -> list[re.Pattern]:
    parts = [_CONTROL]
    parts.extend(rules.url_patterns)
    parts.append(rules.mention_pattern)
    parts.append(rules.hashtag_pattern)
    if rules.strip_emoji:
        parts.append(_EMOJI_CLASS)
    parts.extend(rules.extra_patterns)
    return [re.compile(p) for p in parts]


def clean_text(raw: str | bytes, rules: CleaningConfig = DEFAULT_CONFIG) -> str:
    """Remove URLs, @-mentions, #...# topic spans, emoji/emoticons and control
    characters, then collapse whitespace runs to single spaces and strip the ends.

    Removal is iterated to a fixed point so deleting one artifact can never
    splice the surrounding text into a new one. Bytes input is decoded as
    UTF-8 first; invalid bytes raise UnicodeDecodeError with the offset.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    patterns = _compiled_rules(rules)
    text = raw
    for _ in range(8):
        prev = text
        for pat in patterns:
            text = pat.sub("", text)
        if text == prev:
            break
    return _WS_RUN.sub(" ", text).strip()


def content_length(text: str) -> int:
    """Number of non-whitespace characters."""
    return sum(1 for ch in text if not ch.isspace())


def filter_short(text: str, min_chars: int) -> bool:
    """True = keep. Drops texts with fewer than min_chars non-whitespace characters."""
    return content_length(text) >= min_chars


def is_repeated_char_spam(text: str) -> bool:
    """Degenerate posts where all non-whitespace characters are one repeated character."""
    distinct = {ch for ch in text if not ch.isspace()}
    return len(distinct) == 1 and content_length(text) > 1


def keep_doc(text: str, rules: CleaningConfig = DEFAULT_CONFIG) -> bool:
    """Combined post-cleaning filter: length threshold plus optional spam rule."""
    if not filter_short(text, rules.min_chars):
        return False
    if rules.drop_repeated_char_spam and is_repeated_char_spam(text):
        return False
    return True


@dataclass(frozen=True)
class RawPost:
    source_id: str
    user_id: str
    text: str


@dataclass(frozen=True)
class CleanDoc:
    source_id: str
    text: str
    original_length: int


@dataclass
class SourceCount:
    users: int = 0
    posts: int = 0


@dataclass
class CorpusStats:
    """Per-source user/post counts plus corpus totals."""

    per_source: dict[str, SourceCount] = field(default_factory=dict)
    kept_after_cleaning: Optional[int] = None

    @property
    def total_users(self) -> int:
        return sum(c.users for c in self.per_source.values())

    @property
    def total_posts(self) -> int:
        return sum(c.posts for c in self.per_source.values())

    def to_dict(self) -> dict:
        return {
            "per_source": {
                src: {"users": c.users, "posts": c.posts}
                for src, c in sorted(self.per_source.items())
            },
            "total_users": self.total_users,
            "total_posts": self.total_posts,
            "kept_after_cleaning": self.kept_after_cleaning,
        }


def aggregate_stats(
    posts: Iterable[RawPost], kept: Optional[Iterable[CleanDoc]] = None
) -> CorpusStats:
    """Count distinct users and posts per source; optionally count kept documents.

    User counts are distinct within each source; totals are sums over sources.
    """
    users: dict[str, set[str]] = {}
    n_posts: dict[str, int] = {}
    for post in posts:
        users.setdefault(post.source_id, set()).add(post.user_id)
        n_posts[post.source_id] = n_posts.get(post.source_id, 0) + 1
    kept_count = None
    if kept is not None:
        kept_count = sum(1 for _ in kept)
    stats = CorpusStats(kept_after_cleaning=kept_count)
    for src in n_posts:
        stats.per_source[src] = SourceCount(users=len(users[src]), posts=n_posts[src])
    if kept_count is not None and kept_count > stats.total_posts:
        raise ValidationError(
            f"kept_after_cleaning {kept_count} exceeds total posts {stats.total_posts}"
        )
    return stats


def stats_from_counts(
    counts: dict[str, tuple[int, int]], kept_after_cleaning: Optional[int] = None
) -> CorpusStats:
    """Build CorpusStats from precounted (users, posts) pairs per source."""
    stats = CorpusStats(kept_after_cleaning=kept_after_cleaning)
    for src, (n_users, n_posts) in counts.items():
        if n_users < 0 or n_posts < 0:
            raise ValidationError(f"negative count for source {src!r}")
        stats.per_source[src] = SourceCount(users=n_users, posts=n_posts)
    return stats
