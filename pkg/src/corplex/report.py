"""Corpus comparison reports and plot-data export.

Reports are reproducible artifacts: floats are rounded to 6 significant
digits, JSON keys are sorted, and all randomness flows from one recorded
seed, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from collections import Counter
from typing import Iterable, Sequence

from . import lexstats, posstats, readability, sampling
from .errors import CorplexError
from .lexstats import BOUNDARY  # noqa: F401  (re-exported for report consumers)
from .textpipe import Sentence, Token


def _round6(value):
    if isinstance(value, float):
        return float(f"{value:.6g}")
    if isinstance(value, dict):
        return {k: _round6(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round6(v) for v in value]
    return value


def render_json(payload) -> str:
    """Canonical JSON: sorted keys, 6-significant-digit floats, newline end."""
    return json.dumps(_round6(payload), sort_keys=True, ensure_ascii=False) + "\n"


def _doc_lines(doc) -> list[str]:
    body = doc if isinstance(doc, str) else doc.body
    return [line for line in body.splitlines() if line.strip()]


def _fold_sentences(sentences: Iterable[Sentence]) -> list[tuple[str, ...]]:
    return [tuple(t.surface.lower() for t in s.tokens) for s in sentences]


def _token_stream(sentences: Iterable[Sentence]) -> list[str]:
    return [t.surface for s in sentences for t in s.tokens]


def _group_block(stats: readability.GroupStats) -> dict:
    return {
        "n": stats.n,
        "mean": stats.mean,
        "stderr": stats.stderr,
        "variance": stats.variance,
    }


def _fog_block(report: readability.FogReport) -> dict:
    return {
        "words": report.words,
        "sentences": report.sentences,
        "complex_words": report.complex_words,
        "F": report.F,
    }


def _corpus_block(sentences: list[Sentence], ngram_max_n: int, boundary_policy: str) -> dict:
    stream = _token_stream(sentences)
    V, N = lexstats.type_token_counts(stream)
    folded = _fold_sentences(sentences)
    ngram_entropy = {}
    for n in range(1, ngram_max_n + 1):
        table = lexstats.ngram_counts(folded, n, boundary_policy)
        ngram_entropy[str(n)] = lexstats.table_entropy(table) if table.total else 0.0
    stats = lexstats.corpus_stats(sentences)
    try:
        fog = _fog_block(readability.gunning_fog(sentences))
    except ValueError:  # no word-kind tokens survived the condition
        fog = None
    return {
        "V": V,
        "N": N,
        "C": lexstats.herdan_c(V, N) if V >= 2 and N >= 2 else None,
        "entropy_bits": lexstats.unigram_entropy(stream),
        "ngram_entropy_bits": ngram_entropy,
        "fog": fog,
        "corpus_stats": {
            "chars_per_word": stats.chars_per_word,
            "words_per_sentence": stats.words_per_sentence,
            "separators_per_sentence": stats.separators_per_sentence,
            "content_words_per_subsentence": stats.content_words_per_subsentence,
        },
    }


_SEED_STRIDE = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def _condition_seed(seed: int, code: str) -> int:
    # stable per-condition stream: offset by the code's fixed ordinal
    ordinal = sampling.ConditionSpec.all_codes().index(code)
    return (seed + (ordinal + 1) * _SEED_STRIDE) & _MASK64


def compare_corpora(
    docs_a: Sequence,
    docs_b: Sequence,
    conditions: Sequence[str] | None = None,
    ngram_max_n: int = 3,
    seed: int = 0,
    exclude_patterns: Sequence[str] | None = None,
    boundary_policy: str = "postprocessed",
    warnings: Counter | None = None,
) -> dict:
    """Compare corpus A against a size-balanced sample of corpus B.

    A is the reference and is used whole; per condition, B is drawn down to
    A's size in the condition's unit (article-level draw, line-granular
    stop).  Fog and the Welch test run per document over the full corpora,
    since readability needs raw, unprocessed text.
    """
    docs_a = list(docs_a)
    docs_b = list(docs_b)
    if not docs_a or not docs_b:
        raise CorplexError("compare needs two non-empty corpora")
    codes = list(conditions) if conditions else list(sampling.ConditionSpec.all_codes())
    warnings = warnings if warnings is not None else Counter()

    groups_a = [_doc_lines(d) for d in docs_a]
    groups_b = [_doc_lines(d) for d in docs_b]
    sample_a = sampling.Sample.from_lines([l for g in groups_a for l in g], seed)

    fog_stats_a, _ = readability.corpus_fog(docs_a, warnings=warnings)
    fog_stats_b, _ = readability.corpus_fog(docs_b, warnings=warnings)
    try:
        t, df, p = readability.welch_t_test(fog_stats_a, fog_stats_b)
        welch_block = {"t": t, "df": df, "p_two_sided": p}
    except ValueError:
        welch_block = None
        warnings["welch_degenerate"] += 1

    report = {
        "seed": seed,
        "boundary_policy": boundary_policy,
        "ngram_max_n": ngram_max_n,
        "corpus_a": {"documents": len(docs_a), "chars": sample_a.size_chars, "words": sample_a.size_words},
        "corpus_b": {"documents": len(docs_b)},
        "fog_per_document": {
            "a": _group_block(fog_stats_a),
            "b": _group_block(fog_stats_b),
            "welch": welch_block,
        },
        "conditions": {},
    }

    for code in codes:
        try:
            report["conditions"][code] = _condition_block(
                code, sample_a, groups_b, ngram_max_n, seed, exclude_patterns, boundary_policy
            )
        except (ValueError, CorplexError) as exc:
            raise CorplexError(f"condition {code}: {exc}") from exc
    return report


def _condition_block(
    code, sample_a, groups_b, ngram_max_n, seed, exclude_patterns, boundary_policy
) -> dict:
    cond = sampling.ConditionSpec.parse(code)
    unit = cond.unit
    target = sample_a.size(unit)
    sample_b = sampling.build_balanced_sample_grouped(
        groups_b, target, unit, _condition_seed(seed, code)
    )
    sentences_a = sampling.apply_condition(sample_a, cond, exclude_patterns)
    sentences_b = sampling.apply_condition(sample_b, cond, exclude_patterns)
    block_a = _corpus_block(sentences_a, ngram_max_n, boundary_policy)
    block_b = _corpus_block(sentences_b, ngram_max_n, boundary_policy)

    folded_a = _fold_sentences(sentences_a)
    folded_b = _fold_sentences(sentences_b)
    angles = {}
    entropy_delta = {}
    for n in range(1, ngram_max_n + 1):
        table_a = lexstats.ngram_counts(folded_a, n, boundary_policy)
        table_b = lexstats.ngram_counts(folded_b, n, boundary_policy)
        similarity, angle = posstats.cosine_angle(table_a, table_b)
        angles[str(n)] = {"similarity": similarity, "angle_degrees": angle}
        entropy_delta[str(n)] = (
            block_a["ngram_entropy_bits"][str(n)] - block_b["ngram_entropy_bits"][str(n)]
        )

    c_a, c_b = block_a["C"], block_b["C"]
    return {
        "a": block_a,
        "b": block_b,
        "sample_b": {
            "target": target,
            "achieved": sample_b.size(unit),
            "size_ratio": sampling.size_ratio(sample_b, sample_a, unit),
            "balanced": sampling.balanced(sample_b, sample_a, unit),
            "lines": len(sample_b.lines),
        },
        "cross": {
            "C_ratio": (c_a / c_b) if (c_a and c_b) else None,
            "entropy_delta_bits": entropy_delta,
            "cosine_angles": angles,
        },
    }


def zipf_tsv_lines(ranked) -> Iterable[str]:
    yield "rank\tfreq"
    for rank, _key, count in ranked:
        yield f"{rank}\t{count}"


def heaps_tsv_lines(checkpoints) -> Iterable[str]:
    yield "N\tV"
    for n, v in checkpoints:
        yield f"{n}\t{v}"


def pos_dist_tsv_lines(distribution) -> Iterable[str]:
    yield "tag\trelative_frequency"
    for tag, freq in distribution:
        yield f"{tag}\t{freq:.6g}"


def emit_plot_data(result, kind: str, path: str) -> None:
    """Write one plot's TSV: zipf/ngram_zipf (rank, freq), heaps (N, V) or
    pos_dist (tag, relative freq)."""
    if kind in ("zipf", "ngram_zipf"):
        ranked = result.ranked() if isinstance(result, lexstats.CountTable) else result
        lines = zipf_tsv_lines(ranked)
    elif kind == "heaps":
        checkpoints = result.checkpoints if isinstance(result, lexstats.HeapsFit) else result
        lines = heaps_tsv_lines(checkpoints)
    elif kind == "pos_dist":
        dist = posstats.pos_distribution(result) if isinstance(result, lexstats.CountTable) else result
        lines = pos_dist_tsv_lines(dist)
    else:
        raise ValueError(f"unknown plot kind {kind!r}")
    with open(path, "w", encoding="utf-8") as fp:
        for line in lines:
            fp.write(line + "\n")


def angle_table_tsv_lines(rows: Sequence[tuple[int, float]]) -> Iterable[str]:
    """Angle-by-n TSV (n = 2..5 shape used for tag n-gram comparisons)."""
    yield "n\tangle_degrees"
    for n, angle in rows:
        yield f"{n}\t{angle:.6g}"
