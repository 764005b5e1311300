"""Depression lexicon: TSV loading, word matching inside segmented documents,
and lexicon expansion via a windowed-PPMI association graph plus label propagation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import RecordError, ValidationError
from .segmentation import SegmentedDoc


@dataclass(frozen=True)
class LexiconEntry:
    score: float
    is_seed: bool


@dataclass
class Lexicon:
    entries: dict[str, LexiconEntry] = field(default_factory=dict)

    @property
    def seed_count(self) -> int:
        return sum(1 for e in self.entries.values() if e.is_seed)

    @property
    def words(self) -> set[str]:
        return set(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, word: str, score: float, is_seed: bool = False) -> None:
        if not word:
            raise ValidationError("empty lexicon word")
        if not 0.0 <= score <= 1.0:
            raise ValidationError(f"lexicon score {score} outside [0,1] for {word!r}")
        if is_seed and score != 1.0:
            raise ValidationError(f"seed word {word!r} must have score 1.0, got {score}")
        old = self.entries.get(word)
        if old is not None:
            score = max(score, old.score)
            is_seed = is_seed or old.is_seed
        self.entries[word] = LexiconEntry(score=score, is_seed=is_seed)


def load_lexicon(path: str) -> Lexicon:
    """Parse a word<TAB>score<TAB>seed_flag file. Duplicates keep the max score."""
    lex = Lexicon()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise RecordError(path, lineno, f"expected 3 tab-separated fields, got {len(parts)}")
            word, score_s, seed_s = parts
            try:
                score = float(score_s)
            except ValueError:
                raise RecordError(path, lineno, f"bad score {score_s!r}") from None
            if seed_s not in ("0", "1"):
                raise RecordError(path, lineno, f"bad seed flag {seed_s!r}")
            try:
                lex.add(word, score, is_seed=seed_s == "1")
            except ValidationError as exc:
                raise RecordError(path, lineno, str(exc)) from None
    return lex


def save_lexicon(lex: Lexicon, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for word in sorted(lex.entries):
            e = lex.entries[word]
            fh.write(f"{word}\t{e.score:g}\t{1 if e.is_seed else 0}\n")


def load_seed_words(path: str) -> list[str]:
    """One word per line; returned in file order, deduplicated."""
    seen: dict[str, None] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word:
                seen.setdefault(word)
    return list(seen)


@dataclass(frozen=True)
class LexiconMatch:
    doc_id: str
    word_span_indices: tuple[int, ...]


def find_lexicon_words(doc: SegmentedDoc, lex: Lexicon, doc_id: str = "") -> LexiconMatch:
    """Indices of word spans whose surface string is a lexicon entry."""
    hits = tuple(
        i for i, (s, l) in enumerate(doc.word_spans) if doc.chars[s : s + l] in lex.entries
    )
    return LexiconMatch(doc_id=doc_id, word_span_indices=hits)


class AssociationGraph:
    """Undirected word graph with non-negative edge weights and no self-loops."""

    def __init__(self) -> None:
        self.adj: dict[str, dict[str, float]] = {}

    def add_node(self, node: str) -> None:
        self.adj.setdefault(node, {})

    def add_edge(self, u: str, v: str, weight: float) -> None:
        if u == v:
            raise ValidationError(f"self-loop on {u!r}")
        if weight < 0:
            raise ValidationError(f"negative edge weight {weight} on ({u!r}, {v!r})")
        self.add_node(u)
        self.add_node(v)
        self.adj[u][v] = weight
        self.adj[v][u] = weight

    @property
    def nodes(self) -> set[str]:
        return set(self.adj)

    def degree(self, node: str) -> float:
        return sum(self.adj[node].values())

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adj.values()) // 2


def build_association_graph(
    corpus: Iterable[SegmentedDoc], window: int = 5, min_weight: float = 0.0
) -> AssociationGraph:
    """Positive-PMI graph over word co-occurrences within a sliding window.

    With c(u,v) the symmetric pair count, c(u) its row marginal and
    C the grand total, w(u,v) = max(0, ln(c(u,v) * C / (c(u) * c(v)))).
    Edges are kept when the weight is positive and >= min_weight.
    """
    if window < 1:
        raise ValidationError(f"window must be >= 1, got {window}")
    pair_counts: dict[tuple[str, str], int] = {}
    graph = AssociationGraph()
    for doc in corpus:
        words = doc.words()
        for node in words:
            graph.add_node(node)
        for i, u in enumerate(words):
            for j in range(i + 1, min(i + 1 + window, len(words))):
                v = words[j]
                if u == v:
                    continue
                key = (u, v) if u < v else (v, u)
                pair_counts[key] = pair_counts.get(key, 0) + 1
    if not pair_counts:
        return graph

    marginal: dict[str, int] = {}
    for (u, v), c in pair_counts.items():
        marginal[u] = marginal.get(u, 0) + c
        marginal[v] = marginal.get(v, 0) + c
    total = 2 * sum(pair_counts.values())
    for (u, v), c in pair_counts.items():
        pmi = math.log(c * total / (marginal[u] * marginal[v]))
        if pmi > 0 and pmi >= min_weight:
            graph.add_edge(u, v, pmi)
    return graph


def propagate_labels(
    graph: AssociationGraph,
    seeds: Iterable[str],
    tol: float = 1e-6,
    max_iter: int = 100,
) -> dict[str, float]:
    """Clamped label propagation over the association graph.

    Each iteration replaces every node's score by the degree-normalized
    weighted average of its neighbours, then re-clamps seeds to 1.0. Stops
    when the max absolute score change drops below tol or after max_iter.
    Isolated non-seed nodes keep score 0.
    """
    if tol <= 0:
        raise ValidationError(f"tol must be > 0, got {tol}")
    seed_set = set(seeds)
    for s in sorted(seed_set):
        if s not in graph.adj:
            raise ValidationError(f"seed word {s!r} not in association graph")
    scores = {v: (1.0 if v in seed_set else 0.0) for v in graph.adj}
    degrees = {v: graph.degree(v) for v in graph.adj}
    for _ in range(max_iter):
        new_scores = {}
        for v, nbrs in graph.adj.items():
            deg = degrees[v]
            if deg > 0:
                new_scores[v] = sum(w * scores[u] for u, w in nbrs.items()) / deg
            else:
                new_scores[v] = 0.0
        for s in seed_set:
            new_scores[s] = 1.0
        residual = max((abs(new_scores[v] - scores[v]) for v in scores), default=0.0)
        scores = new_scores
        if residual < tol:
            break
    return scores


def expand_lexicon(lex: Lexicon, scores: Mapping[str, float], cutoff: float) -> Lexicon:
    """New lexicon with every scored word >= cutoff added; existing entries unchanged."""
    if not 0.0 < cutoff <= 1.0:
        raise ValidationError(f"cutoff must be in (0, 1], got {cutoff}")
    out = Lexicon(entries=dict(lex.entries))
    for word, score in scores.items():
        if word in out.entries or score < cutoff:
            continue
        out.add(word, min(max(score, 0.0), 1.0))
    return out


def match_words(words: Sequence[str], lex: Lexicon) -> tuple[int, ...]:
    """Indices of entries in a plain word sequence that are lexicon words."""
    return tuple(i for i, w in enumerate(words) if w in lex.entries)
