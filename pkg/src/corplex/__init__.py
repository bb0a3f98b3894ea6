"""Corpus complexity toolkit: tokenization, lexical statistics, balanced
sampling, readability, tag-distribution comparison, and edit-war scoring."""

from .errors import CorplexError, InsufficientPoolError, MarkupError, ParseError
from .textpipe import (
    NUMBER,
    PUNCTUATION,
    Sentence,
    Token,
    WORD,
    count_syllables,
    detokenize,
    filter_punctuation,
    is_complex_word,
    split_sentences,
    tokenize,
)
from .porter import porter_stem
from .lexstats import (
    BOUNDARY,
    CorpusStats,
    CountTable,
    HeapsFit,
    corpus_stats,
    count_corpus_ngrams,
    heaps_checkpoints,
    heaps_fit,
    herdan_c,
    ngram_counts,
    table_entropy,
    type_token_counts,
    unigram_entropy,
    zipf_table,
)
from .sampling import (
    BALANCE_TOLERANCE,
    CHARACTER,
    ConditionSpec,
    Sample,
    SplitMix64,
    WORD_UNIT,
    apply_condition,
    balanced,
    build_balanced_sample,
    build_balanced_sample_grouped,
    sample_manifest,
    size_ratio,
)
from .readability import (
    FogReport,
    GroupStats,
    corpus_fog,
    gunning_fog,
    regularized_incomplete_beta,
    text_fog,
    welch_t_test,
)
from .posstats import (
    PENN_TAGS,
    POS_CONDITIONS,
    TaggedSentence,
    apply_pos_condition,
    cosine_angle,
    format_tagged,
    merge_adjacent_proper_nouns,
    parse_tagged,
    pos_distribution,
    tag_ngram_table,
)
from .controversy import (
    ControversyScore,
    RevertEvent,
    controversy_m,
    detect_reverts,
    score_pages,
)
from .ingest import (
    Document,
    RevisionRecord,
    count_unknown_entities,
    docs_to_jsonl,
    parse_article_dump,
    parse_revision_dump,
    strip_markup,
)
from .report import compare_corpora, emit_plot_data, render_json

__version__ = "0.1.0"

__all__ = [
    "BALANCE_TOLERANCE",
    "BOUNDARY",
    "CHARACTER",
    "ConditionSpec",
    "ControversyScore",
    "CorplexError",
    "CorpusStats",
    "CountTable",
    "Document",
    "FogReport",
    "GroupStats",
    "HeapsFit",
    "InsufficientPoolError",
    "MarkupError",
    "NUMBER",
    "PENN_TAGS",
    "POS_CONDITIONS",
    "PUNCTUATION",
    "ParseError",
    "RevertEvent",
    "RevisionRecord",
    "Sample",
    "Sentence",
    "SplitMix64",
    "TaggedSentence",
    "Token",
    "WORD",
    "WORD_UNIT",
    "apply_condition",
    "apply_pos_condition",
    "balanced",
    "build_balanced_sample",
    "build_balanced_sample_grouped",
    "compare_corpora",
    "controversy_m",
    "corpus_fog",
    "corpus_stats",
    "cosine_angle",
    "count_corpus_ngrams",
    "count_syllables",
    "count_unknown_entities",
    "detect_reverts",
    "detokenize",
    "docs_to_jsonl",
    "emit_plot_data",
    "filter_punctuation",
    "format_tagged",
    "gunning_fog",
    "heaps_checkpoints",
    "heaps_fit",
    "herdan_c",
    "is_complex_word",
    "merge_adjacent_proper_nouns",
    "ngram_counts",
    "parse_article_dump",
    "parse_revision_dump",
    "parse_tagged",
    "porter_stem",
    "pos_distribution",
    "regularized_incomplete_beta",
    "render_json",
    "sample_manifest",
    "score_pages",
    "size_ratio",
    "split_sentences",
    "strip_markup",
    "table_entropy",
    "tag_ngram_table",
    "text_fog",
    "tokenize",
    "type_token_counts",
    "unigram_entropy",
    "welch_t_test",
    "zipf_table",
]
