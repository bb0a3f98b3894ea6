"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors.  Results go
to stdout (or --output), diagnostics and warning tallies to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.request
from collections import Counter

from . import __version__, lexstats, posstats, readability, report, sampling
from .errors import CorplexError
from .ingest import docs_to_jsonl, parse_article_dump, parse_revision_dump
from .controversy import controversy_m


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _print_warnings(warnings: Counter) -> None:
    for name in sorted(warnings):
        print(f"warning: {name} x{warnings[name]}", file=sys.stderr)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fp:
            fp.write(text)


def _write_lines(path: str, lines) -> None:
    _write_text(path, "".join(line + "\n" for line in lines))


def _load_docs(path: str, warnings: Counter) -> list:
    source = sys.stdin if path == "-" else path
    return list(parse_article_dump(source, format="jsonl", warnings=warnings))


def _load_patterns(path: str | None) -> list[str]:
    if not path:
        return []
    with open(path, encoding="utf-8") as fp:
        return [line.rstrip("\n") for line in fp if line.strip()]


def _load_tagged(path: str, warnings: Counter):
    with open(path, encoding="utf-8") as fp:
        return posstats.parse_tagged(fp, warnings)


def _doc_sentence_groups(docs, cond, patterns) -> list:
    """Condition-processed sentences, one group per document."""
    groups = []
    for doc in docs:
        lines = [l for l in doc.body.splitlines() if l.strip()]
        sample = sampling.Sample.from_lines(lines, seed=0)
        groups.append(sampling.apply_condition(sample, cond, patterns))
    return groups


def _cmd_extract(args) -> int:
    warnings: Counter = Counter()
    source = sys.stdin.buffer if args.input == "-" and args.format != "jsonl" else (
        sys.stdin if args.input == "-" else args.input
    )
    docs = parse_article_dump(
        source, format=args.format, skip_redirects=not args.keep_redirects, warnings=warnings
    )
    if args.output == "-":
        docs_to_jsonl(docs, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8") as fp:
            docs_to_jsonl(docs, fp)
    _print_warnings(warnings)
    return 0


def _cmd_sample(args) -> int:
    warnings: Counter = Counter()
    docs = _load_docs(args.input, warnings)
    unit = sampling.CHARACTER if args.unit.startswith("char") else sampling.WORD_UNIT
    if args.granularity == "article":
        groups = [[l for l in doc.body.splitlines() if l.strip()] for doc in docs]
        sample = sampling.build_balanced_sample_grouped(groups, args.target, unit, args.seed)
    else:
        pool = [l for doc in docs for l in doc.body.splitlines() if l.strip()]
        sample = sampling.build_balanced_sample(pool, args.target, unit, args.seed)
    _write_lines(args.output + ".txt", sample.lines)
    manifest = sampling.sample_manifest(sample, unit, args.target, source=args.input)
    _write_text(args.output + ".manifest.json", report.render_json(manifest))
    _print_warnings(warnings)
    return 0


def _cmd_stats(args) -> int:
    warnings: Counter = Counter()
    docs = _load_docs(args.input, warnings)
    cond = sampling.ConditionSpec.parse(args.condition)
    patterns = _load_patterns(args.exclude_patterns)
    groups = _doc_sentence_groups(docs, cond, patterns)
    sentences = [s for g in groups for s in g]
    if not sentences:
        raise CorplexError("no sentences left after processing")
    stream = [t.surface for s in sentences for t in s.tokens]
    V, N = lexstats.type_token_counts(stream)
    stats = lexstats.corpus_stats(sentences)
    payload = {
        "condition": cond.code,
        "V": V,
        "N": N,
        "C": lexstats.herdan_c(V, N) if V >= 2 else None,
        "entropy_bits": lexstats.unigram_entropy(stream),
        "chars_per_word": stats.chars_per_word,
        "words_per_sentence": stats.words_per_sentence,
        "separators_per_sentence": stats.separators_per_sentence,
        "content_words_per_subsentence": stats.content_words_per_subsentence,
    }
    if args.format == "json":
        _write_text(args.output, report.render_json(payload))
    else:
        def fmt(v):
            if v is None:
                return "NA"
            return f"{v:.6g}" if isinstance(v, float) else str(v)

        _write_lines(args.output, (f"{k}\t{fmt(v)}" for k, v in payload.items()))
    _print_warnings(warnings)
    return 0


def _cmd_ngram(args) -> int:
    warnings: Counter = Counter()
    if args.kind == "word":
        docs = _load_docs(args.input, warnings)
        cond = sampling.ConditionSpec.parse(args.condition)
        patterns = _load_patterns(args.exclude_patterns)
        groups = _doc_sentence_groups(docs, cond, patterns)
        sections = [
            [tuple(t.surface.lower() for t in s.tokens) for s in group] for group in groups
        ]
    else:
        tagged = _load_tagged(args.input, warnings)
        tagged = posstats.apply_pos_condition(tagged, args.pos_condition)
        sections = [[s.tags() for s in tagged]]
    table = lexstats.count_corpus_ngrams(
        sections, args.n, args.boundary, processes=args.processes
    )
    if table.total < 1:
        raise CorplexError("empty n-gram table")
    if args.format == "tsv":
        _write_lines(args.output, table.to_tsv_lines())
    else:
        payload = {
            "n": args.n,
            "boundary": args.boundary,
            "total": table.total,
            "distinct": len(table),
            "entropy_bits": lexstats.table_entropy(table),
        }
        _write_text(args.output, report.render_json(payload))
    _print_warnings(warnings)
    return 0


def _cmd_pos(args) -> int:
    warnings: Counter = Counter()
    tagged_a = posstats.apply_pos_condition(_load_tagged(args.input_a, warnings), args.pos_condition)
    tagged_b = posstats.apply_pos_condition(_load_tagged(args.input_b, warnings), args.pos_condition)
    if args.format == "tsv":
        rows = []
        for n in range(2, 6):
            table_a = posstats.tag_ngram_table(tagged_a, n, args.boundary)
            table_b = posstats.tag_ngram_table(tagged_b, n, args.boundary)
            _, angle = posstats.cosine_angle(table_a, table_b)
            rows.append((n, angle))
        _write_lines(args.output, report.angle_table_tsv_lines(rows))
    else:
        table_a = posstats.tag_ngram_table(tagged_a, args.n, args.boundary)
        table_b = posstats.tag_ngram_table(tagged_b, args.n, args.boundary)
        similarity, angle = posstats.cosine_angle(table_a, table_b)
        payload = {"n": args.n, "similarity": similarity, "angle_degrees": angle}
        _write_text(args.output, report.render_json(payload))
    _print_warnings(warnings)
    return 0


def _cmd_fog(args) -> int:
    warnings: Counter = Counter()
    docs = _load_docs(args.input, warnings)
    if not docs:
        raise CorplexError("no documents")
    if args.pooled:
        fog = readability.corpus_fog(docs, granularity="pooled", warnings=warnings)
        payload = {
            "mode": "pooled",
            "words": fog.words,
            "sentences": fog.sentences,
            "complex_words": fog.complex_words,
            "F": fog.F,
        }
        _write_text(args.output, report.render_json(payload))
    else:
        try:
            stats, reports = readability.corpus_fog(docs, warnings=warnings)
        except ValueError as exc:
            raise CorplexError(str(exc)) from exc
        if args.format == "tsv":
            lines = [f"{doc_id}\t{r.F:.6g}" for doc_id, r in reports]
            _write_lines(args.output, lines)
        else:
            payload = {
                "mode": "per_document",
                "group": {"n": stats.n, "mean": stats.mean, "stderr": stats.stderr},
                "documents": [
                    {
                        "id": doc_id,
                        "words": r.words,
                        "sentences": r.sentences,
                        "complex_words": r.complex_words,
                        "F": r.F,
                    }
                    for doc_id, r in reports
                ],
            }
            _write_text(args.output, report.render_json(payload))
    _print_warnings(warnings)
    return 0


def _cmd_conflict(args) -> int:
    warnings: Counter = Counter()
    source = sys.stdin.buffer if args.input == "-" else args.input
    scored = []
    for page_id, history in parse_revision_dump(source, warnings):
        if not history:
            warnings["empty_history"] += 1
            continue
        scored.append((page_id, controversy_m(history, match_policy=args.match)))
    lines = []
    for page_id, score in scored:
        payload = {
            "page_id": page_id,
            "M": score.M,
            "E": score.E,
            "pairs": [{"x": x, "y": y, "weight": w} for x, y, w in score.pairs],
            "excluded_pair": (
                {"x": score.excluded_pair[0], "y": score.excluded_pair[1], "weight": score.excluded_pair[2]}
                if score.excluded_pair
                else None
            ),
            "revert_events": [
                {
                    "restored_rev": e.restored_rev,
                    "reverting_rev": e.reverting_rev,
                    "reverting_editor": e.reverting_editor,
                    "reverted_editor": e.reverted_editor,
                    "self_revert": e.self_revert,
                }
                for e in score.events
            ],
        }
        lines.append(report.render_json(payload).rstrip("\n"))
    _write_lines(args.output, lines)
    if args.ranking:
        ranked = sorted(scored, key=lambda ps: (-ps[1].M, str(ps[0])))
        _write_lines(args.ranking, (f"{page_id}\t{score.M}" for page_id, score in ranked))
    _print_warnings(warnings)
    return 0


def _cmd_compare(args) -> int:
    warnings: Counter = Counter()
    docs_a = _load_docs(args.input_a, warnings)
    docs_b = _load_docs(args.input_b, warnings)
    if args.paired:
        titles_a = {d.title for d in docs_a}
        docs_b = [d for d in docs_b if d.title in titles_a]
        if not docs_b:
            raise CorplexError("paired mode found no title matches in corpus B")
    codes = args.conditions.split(",") if args.conditions else None
    result = report.compare_corpora(
        docs_a,
        docs_b,
        conditions=codes,
        ngram_max_n=args.ngram_max_n,
        seed=args.seed,
        exclude_patterns=_load_patterns(args.exclude_patterns),
        boundary_policy=args.boundary,
        warnings=warnings,
    )
    _write_text(args.output, report.render_json(result))
    _print_warnings(warnings)
    return 0


def _cmd_plotdata(args) -> int:
    warnings: Counter = Counter()
    if args.kind == "pos_dist":
        tagged = posstats.apply_pos_condition(_load_tagged(args.input, warnings), args.pos_condition)
        table = posstats.tag_ngram_table(tagged, 1, args.boundary)
        report.emit_plot_data(table, "pos_dist", args.output)
    else:
        docs = _load_docs(args.input, warnings)
        cond = sampling.ConditionSpec.parse(args.condition)
        patterns = _load_patterns(args.exclude_patterns)
        groups = _doc_sentence_groups(docs, cond, patterns)
        if args.kind == "zipf":
            stream = [t.surface for g in groups for s in g for t in s.tokens]
            report.emit_plot_data(lexstats.zipf_table(stream), "zipf", args.output)
        elif args.kind == "heaps":
            stream = [t.surface for g in groups for s in g for t in s.tokens]
            checkpoints = lexstats.heaps_checkpoints(stream, args.checkpoints)
            report.emit_plot_data(checkpoints, "heaps", args.output)
        else:  # ngram_zipf
            sections = [
                [tuple(t.surface.lower() for t in s.tokens) for s in g] for g in groups
            ]
            table = lexstats.count_corpus_ngrams(sections, args.n, args.boundary)
            report.emit_plot_data(table, "ngram_zipf", args.output)
    _print_warnings(warnings)
    return 0


def _cmd_fetch(args) -> int:
    try:
        urllib.request.urlretrieve(args.url, args.output)
    except OSError as exc:
        raise CorplexError(f"fetch failed: {exc}") from exc
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="corplex", description="Corpus complexity toolkit")
    parser.add_argument("--version", action="version", version=f"corplex {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("extract", help="dump -> JSONL documents")
    p.add_argument("input")
    p.add_argument("--format", choices=["xml", "xml-export", "jsonl"], default="xml-export")
    p.add_argument("--keep-redirects", action="store_true")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("sample", help="balanced sample + manifest")
    p.add_argument("input")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--unit", choices=["character", "char", "word"], default="word")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--granularity", choices=["article", "line"], default="article")
    p.add_argument("--output", "-o", default="sample")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("stats", help="V, N, C, entropy, corpus ratios")
    p.add_argument("input")
    p.add_argument("--condition", choices=sampling.ConditionSpec.all_codes(), default="WB")
    p.add_argument("--exclude-patterns")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("ngram", help="word or tag n-gram table")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["word", "tag"], default="word")
    p.add_argument("--boundary", choices=["raw", "post"], default="post")
    p.add_argument("--condition", choices=sampling.ConditionSpec.all_codes(), default="WB")
    p.add_argument("--pos-condition", choices=posstats.POS_CONDITIONS, default="O")
    p.add_argument("--exclude-patterns")
    p.add_argument("--processes", type=int, default=1)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_ngram)

    p = sub.add_parser("pos", help="compare tag n-gram distributions")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.add_argument("--pos-condition", choices=posstats.POS_CONDITIONS, default="O")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--boundary", choices=["raw", "post"], default="post")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_pos)

    p = sub.add_parser("fog", help="readability per document or pooled")
    p.add_argument("input")
    p.add_argument("--pooled", action="store_true")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_fog)

    p = sub.add_parser("conflict", help="controversy scores from a history dump")
    p.add_argument("input")
    p.add_argument("--match", choices=["latest", "earliest"], default="latest")
    p.add_argument("--ranking", help="also write a page_id/M TSV, descending")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_conflict)

    p = sub.add_parser("compare", help="full balanced comparison report")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.add_argument("--conditions", help="comma-separated codes, default all eight")
    p.add_argument("--paired", action="store_true",
                   help="restrict corpus B to titles present in corpus A")
    p.add_argument("--ngram-max-n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--boundary", choices=["raw", "post"], default="post")
    p.add_argument("--exclude-patterns")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("plotdata", help="TSV data behind the standard plots")
    p.add_argument("input")
    p.add_argument("--kind", choices=["zipf", "heaps", "ngram_zipf", "pos_dist"], required=True)
    p.add_argument("--condition", choices=sampling.ConditionSpec.all_codes(), default="WB")
    p.add_argument("--pos-condition", choices=posstats.POS_CONDITIONS, default="O")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--checkpoints", type=int, default=50)
    p.add_argument("--boundary", choices=["raw", "post"], default="post")
    p.add_argument("--exclude-patterns")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_plotdata)

    p = sub.add_parser("fetch", help="download a dump to a local file")
    p.add_argument("url")
    p.add_argument("output")
    p.set_defaults(func=_cmd_fetch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except CorplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
