"""lexmask command line: composable pipeline stages with on-disk intermediates.

    lexmask clean   --input raw.jsonl --output clean.jsonl
    lexmask stats   --input raw.jsonl --kept clean.jsonl --output stats.json
    lexmask segment --input clean.jsonl --dict words.txt --lexicon lex.tsv --output seg.jsonl
    lexmask expand-lexicon --input seg.jsonl --lexicon lex.tsv --output lex2.tsv
    lexmask chunk   --input seg.jsonl --vocab vocab.txt --output chunks.jsonl
    lexmask mask    --input chunks.jsonl --vocab vocab.txt --lexicon lex.tsv --output masked.jsonl
    lexmask probe   --input probes.jsonl --output probed.jsonl
    lexmask eval    --input preds.jsonl --averaging macro --output report.json

Every option resolves as: command-line flag > LEXMASK_<NAME> environment
variable > --config JSON file > built-in default. Each command writes its
artifact plus a <output>.manifest.json recording config and input hashes.

Exit codes: 0 success, 2 missing file, 3 malformed record, 4 validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator

from . import __version__
from .cleaning import CleaningConfig, RawPost, aggregate_stats, clean_text, keep_doc, stats_from_counts
from .chunking import TokenChunk, Vocab, chunk_stream, load_vocab, tokenize
from .errors import RecordError, ValidationError
from .lexicon import (
    Lexicon,
    build_association_graph,
    expand_lexicon,
    load_lexicon,
    load_seed_words,
    propagate_labels,
    save_lexicon,
)
from .manifest import write_manifest
from .masking import MaskPolicy, example_to_record, make_probe, mask_chunk
from .metrics import LabelSet, evaluate, kfold_split
from .segmentation import SegmentDict, SegmentedDoc, build_dict, load_dict_files, segment_fmm

_POOL_CHUNKSIZE = 64


# ---------------------------------------------------------------------------
# option resolution: flag > env > config file > default
# ---------------------------------------------------------------------------

def _load_config(args) -> dict:
    if getattr(args, "_config_cache", None) is None:
        path = getattr(args, "config", None)
        if path:
            with open(path, encoding="utf-8") as fh:
                try:
                    cfg = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise ValidationError(f"config file {path}: invalid JSON: {exc.msg}") from None
            if not isinstance(cfg, dict):
                raise ValidationError(f"config file {path}: expected a JSON object")
        else:
            cfg = {}
        args._config_cache = cfg
    return args._config_cache


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"expected a boolean, got {value!r}")


def _opt(args, name: str, default=None, cast=None):
    value = getattr(args, name, None)
    if value is None:
        env = os.environ.get("LEXMASK_" + name.upper())
        if env is not None:
            value = env
    if value is None:
        value = _load_config(args).get(name)
    if value is None:
        return default
    if cast is not None and isinstance(value, str):
        try:
            value = cast(value)
        except ValueError:
            raise ValidationError(f"bad value for {name}: {value!r}") from None
    return value


def _require(args, name: str, cast=None):
    value = _opt(args, name, cast=cast)
    if value is None:
        raise ValidationError(f"missing required option --{name.replace('_', '-')}")
    return value


def _opt_paths(args, name: str) -> list[str]:
    """Repeatable path option; env/config values are path-separator lists."""
    value = getattr(args, name, None)
    if value:
        return list(value)
    env = os.environ.get("LEXMASK_" + name.upper())
    if env:
        return [p for p in env.split(os.pathsep) if p]
    cfg = _load_config(args).get(name)
    if cfg:
        return [cfg] if isinstance(cfg, str) else list(cfg)
    return []


def _parse_policy(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"policy must be mask:random:keep, got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise ValidationError(f"policy must be three numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# shared IO helpers
# ---------------------------------------------------------------------------

def _read_jsonl(path: str) -> Iterator[tuple[int, dict]]:
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise RecordError(path, lineno, f"invalid UTF-8 at byte offset {exc.start}") from None
            try:
                record = json.loads(text)
            except json.JSONDecodeError as exc:
                raise RecordError(path, lineno, f"invalid JSON: {exc.msg}") from None
            if not isinstance(record, dict):
                raise RecordError(path, lineno, "expected a JSON object")
            yield lineno, record


def _field(record: dict, name: str, path: str, lineno: int):
    if name not in record:
        raise RecordError(path, lineno, f"missing field {name!r}")
    return record[name]


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _pmap(fn, items: Iterable, workers: int, init, initargs: tuple) -> Iterator:
    if workers <= 1:
        init(*initargs)
        yield from map(fn, items)
    else:
        with Pool(workers, initializer=init, initargs=initargs) as pool:
            yield from pool.imap(fn, items, chunksize=_POOL_CHUNKSIZE)


# ---------------------------------------------------------------------------
# clean
# ---------------------------------------------------------------------------

_CLEAN_RULES: CleaningConfig = CleaningConfig()


def _init_clean(rules: CleaningConfig) -> None:
    global _CLEAN_RULES
    _CLEAN_RULES = rules


def _clean_one(item: tuple[str, str, str]) -> tuple[str, str, str, bool]:
    source, user, text = item
    cleaned = clean_text(text, _CLEAN_RULES)
    return source, user, cleaned, keep_doc(cleaned, _CLEAN_RULES)


def _iter_raw_posts(path: str, input_format: str, source: str) -> Iterator[tuple[str, str, str]]:
    if input_format == "txt":
        with open(path, "rb") as fh:
            for lineno, raw in enumerate(fh, start=1):
                try:
                    text = raw.decode("utf-8").rstrip("\n")
                except UnicodeDecodeError as exc:
                    raise RecordError(path, lineno, f"invalid UTF-8 at byte offset {exc.start}") from None
                if text.strip():
                    yield source, "", text
    else:
        for lineno, rec in _read_jsonl(path):
            yield (
                str(_field(rec, "source", path, lineno)),
                str(rec.get("user", "")),
                str(_field(rec, "text", path, lineno)),
            )


def cmd_clean(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    input_format = _opt(args, "input_format", default="txt" if input_path.endswith(".txt") else "jsonl")
    if input_format not in ("jsonl", "txt"):
        raise ValidationError(f"input-format must be jsonl or txt, got {input_format!r}")
    source = _opt(args, "source", default="unknown")
    workers = _opt(args, "workers", default=1, cast=int)
    rules = CleaningConfig(
        min_chars=_opt(args, "min_chars", default=4, cast=int),
        drop_repeated_char_spam=_opt(args, "spam_filter", default=True, cast=_parse_bool),
    )
    read = kept = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as out:
        results = _pmap(
            _clean_one,
            _iter_raw_posts(input_path, input_format, source),
            workers,
            _init_clean,
            (rules,),
        )
        for src, user, cleaned, keep in results:
            read += 1
            if keep:
                kept += 1
                out.write(_dump({"source": src, "user": user, "text": cleaned}) + "\n")
    config = {
        "input": input_path,
        "output": output_path,
        "input_format": input_format,
        "min_chars": rules.min_chars,
        "spam_filter": rules.drop_repeated_char_spam,
        "source": source,
    }
    write_manifest(output_path, "clean", config, [input_path],
                   {"read": read, "kept": kept, "dropped": read - kept}, __version__)
    print(f"clean: read {read}, kept {kept} -> {output_path}")


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def cmd_stats(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    kept_path = _opt(args, "kept")

    records = list(_read_jsonl(input_path))
    precounted = bool(records) and all("users" in r and "posts" in r for _, r in records)
    kept_count = None
    if kept_path:
        kept_count = sum(1 for _ in _read_jsonl(kept_path))
    if precounted:
        counts = {}
        for lineno, rec in records:
            src = str(_field(rec, "source", input_path, lineno))
            counts[src] = (int(rec["users"]), int(rec["posts"]))
        stats = stats_from_counts(counts, kept_after_cleaning=kept_count)
    else:
        posts = (
            RawPost(
                source_id=str(_field(rec, "source", input_path, lineno)),
                user_id=str(rec.get("user", "")),
                text=str(rec.get("text", "")),
            )
            for lineno, rec in records
        )
        stats = aggregate_stats(posts)
        if kept_count is not None:
            if kept_count > stats.total_posts:
                raise ValidationError(
                    f"kept count {kept_count} exceeds total posts {stats.total_posts}"
                )
            stats.kept_after_cleaning = kept_count
    Path(output_path).write_text(
        json.dumps(stats.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    inputs = [input_path] + ([kept_path] if kept_path else [])
    write_manifest(output_path, "stats", {"input": input_path, "kept": kept_path},
                   inputs, {"sources": len(stats.per_source)}, __version__)
    print(f"stats: {stats.total_users} users, {stats.total_posts} posts -> {output_path}")


# ---------------------------------------------------------------------------
# segment
# ---------------------------------------------------------------------------

_SEG_DICT: SegmentDict | None = None


def _init_segment(dictionary: SegmentDict) -> None:
    global _SEG_DICT
    _SEG_DICT = dictionary


def _segment_one(item: tuple[str, str]) -> str:
    source, text = item
    doc = segment_fmm(text, _SEG_DICT)
    return _dump({"source": source, "text": text, "spans": [list(s) for s in doc.word_spans]})


def cmd_segment(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    dict_paths = _opt_paths(args, "dict")
    lexicon_path = _opt(args, "lexicon")
    workers = _opt(args, "workers", default=1, cast=int)
    lexicon_words = load_lexicon(lexicon_path).words if lexicon_path else ()
    dictionary = load_dict_files(dict_paths, lexicon_words) if dict_paths else build_dict([], lexicon_words)

    def records() -> Iterator[tuple[str, str]]:
        for lineno, rec in _read_jsonl(input_path):
            yield str(rec.get("source", "")), str(_field(rec, "text", input_path, lineno))

    count = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as out:
        for line in _pmap(_segment_one, records(), workers, _init_segment, (dictionary,)):
            out.write(line + "\n")
            count += 1
    config = {"input": input_path, "output": output_path, "dict": dict_paths, "lexicon": lexicon_path}
    inputs = [input_path] + dict_paths + ([lexicon_path] if lexicon_path else [])
    write_manifest(output_path, "segment", config, inputs, {"docs": count}, __version__)
    print(f"segment: {count} docs ({len(dictionary.words)} dictionary words) -> {output_path}")


def _read_segmented(path: str) -> Iterator[tuple[int, SegmentedDoc]]:
    for lineno, rec in _read_jsonl(path):
        text = str(_field(rec, "text", path, lineno))
        spans = _field(rec, "spans", path, lineno)
        try:
            word_spans = tuple((int(s), int(l)) for s, l in spans)
        except (TypeError, ValueError):
            raise RecordError(path, lineno, "bad spans field") from None
        pos = 0
        for start, span_len in word_spans:
            if start != pos or span_len < 1:
                raise RecordError(path, lineno, "spans do not partition the text")
            pos += span_len
        if pos != len(text):
            raise RecordError(path, lineno, "spans do not partition the text")
        yield lineno, SegmentedDoc(chars=text, word_spans=word_spans)


# ---------------------------------------------------------------------------
# expand-lexicon
# ---------------------------------------------------------------------------

def cmd_expand_lexicon(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    lexicon_path = _opt(args, "lexicon")
    seeds_path = _opt(args, "seeds")
    if not lexicon_path and not seeds_path:
        raise ValidationError("expand-lexicon needs --lexicon and/or --seeds")
    window = _opt(args, "window", default=5, cast=int)
    min_weight = _opt(args, "min_weight", default=0.0, cast=float)
    tol = _opt(args, "tol", default=1e-6, cast=float)
    max_iter = _opt(args, "max_iter", default=100, cast=int)
    cutoff = _opt(args, "cutoff", default=0.9, cast=float)
    ignore_missing = _opt(args, "ignore_missing_seeds", default=False, cast=_parse_bool)

    base = load_lexicon(lexicon_path) if lexicon_path else Lexicon()
    if seeds_path:
        for word in load_seed_words(seeds_path):
            base.add(word, 1.0, is_seed=True)
    seeds = {w for w, e in base.entries.items() if e.is_seed} or base.words
    if not seeds:
        raise ValidationError("no seed words available for propagation")

    graph = build_association_graph(
        (doc for _, doc in _read_segmented(input_path)), window=window, min_weight=min_weight
    )
    if ignore_missing:
        present = {s for s in seeds if s in graph.adj}
        skipped = sorted(seeds - present)
        if skipped:
            print(f"expand-lexicon: {len(skipped)} seeds not in corpus graph, skipped", file=sys.stderr)
        seeds = present
        if not seeds:
            raise ValidationError("no seed words occur in the corpus")
    scores = propagate_labels(graph, seeds, tol=tol, max_iter=max_iter)
    expanded = expand_lexicon(base, scores, cutoff)
    save_lexicon(expanded, output_path)

    config = {
        "input": input_path, "output": output_path, "lexicon": lexicon_path, "seeds": seeds_path,
        "window": window, "min_weight": min_weight, "tol": tol, "max_iter": max_iter,
        "cutoff": cutoff, "ignore_missing_seeds": ignore_missing,
    }
    inputs = [input_path] + [p for p in (lexicon_path, seeds_path) if p]
    write_manifest(output_path, "expand-lexicon", config, inputs,
                   {"graph_nodes": len(graph.adj), "graph_edges": graph.edge_count(),
                    "base_entries": len(base), "expanded_entries": len(expanded)}, __version__)
    print(f"expand-lexicon: {len(base)} -> {len(expanded)} entries -> {output_path}")


# ---------------------------------------------------------------------------
# chunk
# ---------------------------------------------------------------------------

def cmd_chunk(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    vocab_path = _require(args, "vocab")
    length = _opt(args, "chunk_len", default=128, cast=int)
    vocab = load_vocab(vocab_path)

    totals = {"docs": 0, "tokens": 0}

    def tokenized() -> Iterator[tuple[str, list[int], list[tuple[int, int]]]]:
        for lineno, doc in _read_segmented(input_path):
            ids, groups = tokenize(doc, vocab)
            totals["docs"] += 1
            totals["tokens"] += len(ids)
            yield str(lineno - 1), ids, groups

    chunks = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as out:
        for chunk in chunk_stream(tokenized(), length=length):
            out.write(_dump({
                "ids": list(chunk.ids),
                "groups": [list(g) for g in chunk.word_groups],
                "origin": chunk.origin,
            }) + "\n")
            chunks += 1
    config = {"input": input_path, "output": output_path, "vocab": vocab_path, "chunk_len": length}
    counts = {"docs": totals["docs"], "chunks": chunks, "tokens_in": totals["tokens"],
              "tokens_dropped": totals["tokens"] - chunks * length}
    write_manifest(output_path, "chunk", config, [input_path, vocab_path], counts, __version__)
    print(f"chunk: {chunks} chunks of {length} tokens -> {output_path}")


# ---------------------------------------------------------------------------
# mask
# ---------------------------------------------------------------------------

_MASK_STATE: tuple[Vocab, Lexicon, MaskPolicy] | None = None


def _init_mask(vocab: Vocab, lexicon: Lexicon, policy: MaskPolicy) -> None:
    global _MASK_STATE
    _MASK_STATE = (vocab, lexicon, policy)


def _mask_one(item: tuple[int, list[int], list[tuple[int, int]]]) -> tuple[str, int, int]:
    chunk_id, ids, groups = item
    vocab, lexicon, policy = _MASK_STATE
    chunk = TokenChunk(chunk_id=chunk_id, ids=tuple(ids),
                       word_groups=tuple(tuple(g) for g in groups), origin={})
    example = mask_chunk(chunk, vocab, lexicon, policy)
    record = example_to_record(example, chunk.word_groups)
    return _dump(record), len(example.plan.masked_positions), len(example.plan.lexicon_groups)


def cmd_mask(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    vocab_path = _require(args, "vocab")
    lexicon_path = _require(args, "lexicon")
    budget = _opt(args, "budget", default=0.20, cast=float)
    p_mask, p_random, p_keep = _parse_policy(_opt(args, "policy", default="0.8:0.1:0.1"))
    seed = _opt(args, "seed", default=0, cast=int)
    workers = _opt(args, "workers", default=1, cast=int)
    vocab = load_vocab(vocab_path)
    lexicon = load_lexicon(lexicon_path)
    policy = MaskPolicy(budget=budget, p_mask=p_mask, p_random=p_random, p_keep=p_keep, rng_seed=seed)

    def items() -> Iterator[tuple[int, list[int], list[tuple[int, int]]]]:
        for lineno, rec in _read_jsonl(input_path):
            ids = _field(rec, "ids", input_path, lineno)
            groups = _field(rec, "groups", input_path, lineno)
            if not isinstance(ids, list) or not all(isinstance(t, int) for t in ids):
                raise RecordError(input_path, lineno, "ids must be a list of integers")
            pos = 0
            try:
                for start, group_len in groups:
                    if start != pos or group_len < 1:
                        raise RecordError(input_path, lineno,
                                          "groups do not partition the chunk")
                    pos += group_len
            except (TypeError, ValueError):
                raise RecordError(input_path, lineno, "bad groups field") from None
            if pos != len(ids):
                raise RecordError(input_path, lineno, "groups do not partition the chunk")
            yield lineno - 1, ids, groups

    chunks = masked_total = lexicon_total = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as out:
        for line, n_masked, n_lex in _pmap(_mask_one, items(), workers, _init_mask,
                                           (vocab, lexicon, policy)):
            out.write(line + "\n")
            chunks += 1
            masked_total += n_masked
            lexicon_total += n_lex
    config = {
        "input": input_path, "output": output_path, "vocab": vocab_path, "lexicon": lexicon_path,
        "budget": budget, "policy": f"{p_mask}:{p_random}:{p_keep}", "seed": seed,
    }
    counts = {"chunks": chunks, "masked_positions": masked_total, "lexicon_groups": lexicon_total}
    write_manifest(output_path, "mask", config, [input_path, vocab_path, lexicon_path],
                   counts, __version__)
    print(f"mask: {chunks} chunks, {masked_total} masked positions -> {output_path}")


# ---------------------------------------------------------------------------
# probe
# ---------------------------------------------------------------------------

def cmd_probe(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    count = 0
    with open(output_path, "w", encoding="utf-8", newline="\n") as out:
        for lineno, rec in _read_jsonl(input_path):
            sentence = str(_field(rec, "sentence", input_path, lineno))
            target = str(_field(rec, "target", input_path, lineno))
            start = rec.get("start")
            try:
                probe = make_probe(sentence, target, start)
            except ValidationError as exc:
                raise RecordError(input_path, lineno, str(exc)) from None
            out.write(_dump({"original": probe.original, "masked": probe.masked,
                             "target": probe.target}) + "\n")
            count += 1
    write_manifest(output_path, "probe", {"input": input_path, "output": output_path},
                   [input_path], {"probes": count}, __version__)
    print(f"probe: {count} probes -> {output_path}")


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def cmd_eval(args) -> None:
    input_path = _require(args, "input")
    output_path = _require(args, "output")
    averaging = _opt(args, "averaging", default="macro")
    if averaging not in ("binary", "macro", "micro"):
        raise ValidationError(f"averaging must be binary, macro or micro, got {averaging!r}")
    explicit_labels = _opt(args, "labels")
    force_multi = _opt(args, "multi_label", default=False, cast=_parse_bool)
    folds = _opt(args, "folds", default=5, cast=int)
    folds_out = _opt(args, "folds_out")
    seed = _opt(args, "seed", default=0, cast=int)

    golds, preds = [], []
    for lineno, rec in _read_jsonl(input_path):
        golds.append(_field(rec, "gold", input_path, lineno))
        preds.append(_field(rec, "pred", input_path, lineno))
    multi = force_multi or any(isinstance(v, list) for v in golds + preds)
    if multi:
        golds = [v if isinstance(v, list) else [v] for v in golds]
        preds = [v if isinstance(v, list) else [v] for v in preds]
        observed = {lbl for sample in golds + preds for lbl in sample}
    else:
        observed = set(golds) | set(preds)
    if explicit_labels:
        classes = tuple(explicit_labels.split(","))
        golds = [[str(v) for v in s] for s in golds] if multi else [str(v) for v in golds]
        preds = [[str(v) for v in s] for s in preds] if multi else [str(v) for v in preds]
    else:
        classes = tuple(sorted(observed, key=str))
    labels = LabelSet(classes=classes, multi_label=multi)
    report = evaluate(golds, preds, labels, averaging)

    out = report.to_dict()
    if folds_out:
        assignment = kfold_split(len(golds), k=folds, seed=seed)
        Path(folds_out).write_text(
            json.dumps({"n": len(golds), "k": folds, "seed": seed, "folds": assignment},
                       sort_keys=True) + "\n",
            encoding="utf-8",
        )
        out["folds_file"] = folds_out
    Path(output_path).write_text(
        json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    config = {"input": input_path, "averaging": averaging, "labels": explicit_labels,
              "multi_label": multi, "folds": folds, "folds_out": folds_out, "seed": seed}
    write_manifest(output_path, "eval", config, [input_path],
                   {"samples": len(golds), "classes": len(classes)}, __version__)
    print(f"eval: {averaging} P={report.precision:.4f} R={report.recall:.4f} "
          f"F1={report.f1:.4f} -> {output_path}")


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexmask", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lexmask {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def command(name: str, func, help_text: str):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--config", help="JSON config file (flags and env override it)")
        sp.add_argument("--input", help="input file")
        sp.add_argument("--output", help="output file")
        return sp

    sp = command("clean", cmd_clean, "clean raw posts and drop degenerate texts")
    sp.add_argument("--input-format", dest="input_format", choices=["jsonl", "txt"])
    sp.add_argument("--source", help="source name for txt input")
    sp.add_argument("--min-chars", dest="min_chars", type=int)
    sp.add_argument("--spam-filter", dest="spam_filter", choices=["true", "false"])
    sp.add_argument("--workers", type=int)

    sp = command("stats", cmd_stats, "aggregate per-source corpus statistics")
    sp.add_argument("--kept", help="cleaned JSONL to count kept documents")

    sp = command("segment", cmd_segment, "segment cleaned text into word spans")
    sp.add_argument("--dict", action="append", help="dictionary file (repeatable)")
    sp.add_argument("--lexicon", help="lexicon TSV whose words are force-added")
    sp.add_argument("--workers", type=int)

    sp = command("expand-lexicon", cmd_expand_lexicon, "grow the lexicon by label propagation")
    sp.add_argument("--lexicon", help="base lexicon TSV")
    sp.add_argument("--seeds", help="plain word-per-line seed file")
    sp.add_argument("--window", type=int)
    sp.add_argument("--min-weight", dest="min_weight", type=float)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--max-iter", dest="max_iter", type=int)
    sp.add_argument("--cutoff", type=float)
    sp.add_argument("--ignore-missing-seeds", dest="ignore_missing_seeds",
                    choices=["true", "false"])

    sp = command("chunk", cmd_chunk, "tokenize and cut into fixed-length chunks")
    sp.add_argument("--vocab", help="vocab file, one token per line")
    sp.add_argument("--chunk-len", dest="chunk_len", type=int)

    sp = command("mask", cmd_mask, "produce masked training examples")
    sp.add_argument("--vocab")
    sp.add_argument("--lexicon")
    sp.add_argument("--budget", type=float)
    sp.add_argument("--policy", help="mask:random:keep probabilities, e.g. 0.8:0.1:0.1")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int)

    command("probe", cmd_probe, "mask target spans in probe sentences")

    sp = command("eval", cmd_eval, "compute precision/recall/F1 from predictions")
    sp.add_argument("--averaging", choices=["binary", "macro", "micro"])
    sp.add_argument("--labels", help="comma-separated class list (else inferred)")
    sp.add_argument("--multi-label", dest="multi_label", choices=["true", "false"])
    sp.add_argument("--folds", type=int)
    sp.add_argument("--folds-out", dest="folds_out", help="write k-fold assignment JSON")
    sp.add_argument("--seed", type=int)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 1
    try:
        args.func(args)
    except FileNotFoundError as exc:
        missing = exc.filename if exc.filename else str(exc)
        print(f"lexmask: missing file: {missing}", file=sys.stderr)
        return 2
    except RecordError as exc:
        print(f"lexmask: malformed record: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"lexmask: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
