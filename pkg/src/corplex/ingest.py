"""Dump ingestion: MediaWiki XML / JSONL parsing and markup stripping.

strip_markup runs a battery of removal passes to a fixpoint, so its output
is idempotent by construction: link anchors survive, templates, tables,
refs, comments, and tag/entity noise do not.  Dump parsing is streaming —
memory is bounded by one <page> element, and a concatenation of dumps
parses as the concatenation of their pages.
"""

from __future__ import annotations

import html.entities
import json
import re
import xml.etree.ElementTree as ET
from collections import Counter
from datetime import datetime, timezone
from typing import IO, Iterable, Iterator, NamedTuple

from .errors import MarkupError, ParseError


class Document(NamedTuple):
    id: str
    title: str
    body: str


class RevisionRecord(NamedTuple):
    page_id: str
    rev_index: int
    timestamp: datetime
    editor: str
    raw_text: str


_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_REF_RE = re.compile(r"<ref\b[^<>]*?/\s*>|<ref\b[^<>]*?>.*?</ref\s*>", re.DOTALL | re.IGNORECASE)
_PARAM_RE = re.compile(r"\{\{\{[^{}]*\}\}\}")
_HEADING_RE = re.compile(r"^[ \t]*=+[ \t]*(.*?)[ \t]*=+[ \t]*$", re.MULTILINE)
_LIST_RE = re.compile(r"^[ \t]*[*#;:]+[ \t]*", re.MULTILINE)
_HR_RE = re.compile(r"^-{4,}[ \t]*$", re.MULTILINE)
_LINK_RE = re.compile(r"\[\[([^\[\]]*)\]\]")
_EXT_LINK_RE = re.compile(r"\[(?:https?|ftp)://[^\s\]]*(?:[ \t]+([^\]]*))?\]", re.IGNORECASE)
_TAG_RE = re.compile(r"</?[A-Za-z][^<>]*>")
_MAGIC_RE = re.compile(r"__[A-Z]+__")
_QUOTES_RE = re.compile(r"'{2,}")
_ENTITY_RE = re.compile(r"&(#[0-9]+|#x[0-9A-Fa-f]+|[A-Za-z][A-Za-z0-9]*);")

_DROP_LINK_PREFIXES = {"category", "file", "image", "media"}

_NAMED_ENTITIES = dict(html.entities.name2codepoint)
_NAMED_ENTITIES["apos"] = 0x27


def _remove_comments(s: str) -> str:
    s = _COMMENT_RE.sub("", s)
    start = s.find("<!--")
    return s[:start] if start != -1 else s


def _remove_braced(s: str, open_tok: str, close_tok: str, max_depth: int | None) -> str:
    """Drop every balanced open..close span, nesting included.

    An unclosed opener drops everything to the end; depth beyond max_depth
    raises with the byte offset of the offending opener.
    """
    parts = []
    i = 0
    n = len(s)
    while True:
        start = s.find(open_tok, i)
        if start == -1:
            parts.append(s[i:])
            break
        parts.append(s[i:start])
        depth = 1
        j = start + len(open_tok)
        while depth:
            nxt_open = s.find(open_tok, j)
            nxt_close = s.find(close_tok, j)
            if nxt_close == -1:
                j = n
                break
            if nxt_open != -1 and nxt_open < nxt_close:
                depth += 1
                if max_depth is not None and depth > max_depth:
                    raise MarkupError(
                        f"{open_tok!r} nesting deeper than {max_depth}", offset=nxt_open
                    )
                j = nxt_open + len(open_tok)
            else:
                depth -= 1
                j = nxt_close + len(close_tok)
        if j >= n and depth:
            break
        i = j
    return "".join(parts)


def _link_repl(m: re.Match) -> str:
    inner = m.group(1)
    target = inner.split("|", 1)[0].strip()
    if ":" in target:
        prefix = target.split(":", 1)[0].strip()
        if prefix.lower() in _DROP_LINK_PREFIXES:
            return ""
        if 2 <= len(prefix) <= 3 and prefix.isalpha() and prefix.islower():
            return ""  # interlanguage link
    parts = inner.split("|")
    return parts[-1].strip() if len(parts) > 1 else target


def _resolve_internal_links(s: str) -> str:
    # innermost first, so links nested in file captions resolve before the
    # enclosing file link is judged
    while True:
        new = _LINK_RE.sub(_link_repl, s)
        if new == s:
            return s
        s = new


def _ext_link_repl(m: re.Match) -> str:
    label = m.group(1)
    return label.strip() if label else ""


def _decode_entities(s: str) -> str:
    def repl(m: re.Match) -> str:
        name = m.group(1)
        if name.startswith("#"):
            try:
                code = int(name[2:], 16) if name[1] in "xX" else int(name[1:])
                if 0 < code <= 0x10FFFF and not 0xD800 <= code <= 0xDFFF:
                    return chr(code)
            except ValueError:
                pass
            return m.group(0)
        code = _NAMED_ENTITIES.get(name)
        return chr(code) if code is not None else m.group(0)

    return _ENTITY_RE.sub(repl, s)


def count_unknown_entities(s: str, warnings: Counter | None = None) -> int:
    found = 0
    for m in _ENTITY_RE.finditer(s):
        name = m.group(1)
        if not name.startswith("#") and name not in _NAMED_ENTITIES:
            found += 1
    if warnings is not None and found:
        warnings["unknown_entity"] += found
    return found


def _normalize_whitespace(s: str) -> str:
    s = re.sub(r"[ \t]+$", "", s, flags=re.MULTILINE)
    s = re.sub(r"^[ \t]+", "", s, flags=re.MULTILINE)
    s = re.sub(r"[ \t]+", " ", s)
    s = re.sub(r"\n{3,}", "\n\n", s)
    return s.strip()


def _strip_pass(s: str, max_depth: int) -> str:
    s = s.replace("\r\n", "\n").replace("\r", "\n")
    s = _remove_comments(s)
    s = _REF_RE.sub("", s)
    while _PARAM_RE.search(s):
        s = _PARAM_RE.sub("", s)
    s = _remove_braced(s, "{{", "}}", max_depth)
    s = _remove_braced(s, "{|", "|}", None)
    s = _HEADING_RE.sub(r"\1", s)
    s = _LIST_RE.sub("", s)
    s = _HR_RE.sub("", s)
    s = _resolve_internal_links(s)
    s = _EXT_LINK_RE.sub(_ext_link_repl, s)
    s = _TAG_RE.sub("", s)
    s = _MAGIC_RE.sub("", s)
    s = _QUOTES_RE.sub("", s)
    for stray in ("[[", "]]", "{{", "}}", "{|", "|}"):
        s = s.replace(stray, "")
    s = _decode_entities(s)
    return _normalize_whitespace(s)


def strip_markup(raw: str, max_depth: int = 16, warnings: Counter | None = None) -> str:
    """Reduce wikitext to plain text, keeping link anchor texts.

    Passes repeat until nothing changes, so markup revealed by an earlier
    removal (or by entity decoding) is cleaned up too.  Unknown entity names
    survive literally and are counted once against the final text.
    """
    s = raw
    for _ in range(100):
        new = _strip_pass(s, max_depth)
        if new == s:
            break
        s = new
    if warnings is not None:
        count_unknown_entities(s, warnings)
    return s


# ---------------------------------------------------------------------------
# dump readers

_OPEN_TAG = b"<page>"
_CLOSE_TAG = b"</page>"


def _iter_page_chunks(stream: IO[bytes]) -> Iterator[tuple[bytes, int]]:
    """Yield (page bytes, absolute offset) per <page>...</page> element.

    Memory stays bounded by one page; anything between pages (headers,
    siteinfo, a second dump's preamble) is skipped, so concatenated dumps
    chunk exactly like the dumps chunked separately.
    """
    buf = b""
    base = 0
    eof = False
    while True:
        if not eof:
            block = stream.read(1 << 16)
            if block:
                buf += block
            else:
                eof = True
        while True:
            start = buf.find(_OPEN_TAG)
            if start == -1:
                # keep a tail in case "<page>" straddles the block boundary
                keep = len(_OPEN_TAG) - 1 if not eof else 0
                cut = max(len(buf) - keep, 0)
                base += cut
                buf = buf[cut:]
                break
            end = buf.find(_CLOSE_TAG, start)
            if end == -1:
                if eof:
                    raise ParseError(
                        "unterminated <page> element", location=f"byte {base + start}"
                    )
                base += start
                buf = buf[start:]
                break
            stop = end + len(_CLOSE_TAG)
            yield buf[start:stop], base + start
            base += stop
            buf = buf[stop:]
        if eof:
            return


def _parse_page_chunk(chunk: bytes, offset: int) -> ET.Element:
    try:
        return ET.fromstring(chunk)
    except ET.ParseError as exc:
        raise ParseError(f"malformed page XML: {exc}", location=f"byte {offset}") from None


def _parse_timestamp(text: str | None):
    if not text:
        return None
    try:
        return datetime.fromisoformat(text.strip().replace("Z", "+00:00"))
    except ValueError:
        return None


_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def parse_article_dump(
    source,
    format: str = "xml-export",
    skip_redirects: bool = True,
    warnings: Counter | None = None,
) -> Iterator[Document]:
    """Stream Documents out of an article dump (latest revision per page).

    source may be a path or an open stream (binary for xml-export).  Empty
    pages and (by default) redirects are skipped with counted warnings.
    """
    warnings = warnings if warnings is not None else Counter()
    if format in ("jsonl",):
        yield from _parse_jsonl(source, warnings)
        return
    if format not in ("xml-export", "xml"):
        raise ValueError(f"unknown dump format {format!r}")
    with _open_maybe(source, "rb") as stream:
        for chunk, offset in _iter_page_chunks(stream):
            page = _parse_page_chunk(chunk, offset)
            title = (page.findtext("title") or "").strip()
            if not title:
                raise ParseError("page without a title", location=f"byte {offset}")
            revisions = page.findall("revision")
            if not revisions:
                warnings["page_without_revision"] += 1
                continue
            latest = max(
                enumerate(revisions),
                key=lambda iv: (_parse_timestamp(iv[1].findtext("timestamp")) or _EPOCH, iv[0]),
            )[1]
            raw = latest.findtext("text") or ""
            if not raw.strip():
                warnings["empty_page"] += 1
                continue
            if skip_redirects and raw.lstrip()[:9].lower() == "#redirect":
                warnings["redirect_skipped"] += 1
                continue
            body = strip_markup(raw, warnings=warnings)
            if not body:
                warnings["empty_page"] += 1
                continue
            page_id = (page.findtext("id") or "").strip() or title
            yield Document(id=page_id, title=title, body=body)


def parse_revision_dump(
    source, warnings: Counter | None = None
) -> Iterator[tuple[str, list[RevisionRecord]]]:
    """Stream (page_id, history) groups out of a full-history dump.

    Histories come back timestamp-sorted (stable) with rev_index 0..k-1;
    raw_text is preserved exactly as stored, never cleaned.
    """
    warnings = warnings if warnings is not None else Counter()
    with _open_maybe(source, "rb") as stream:
        for chunk, offset in _iter_page_chunks(stream):
            page = _parse_page_chunk(chunk, offset)
            title = (page.findtext("title") or "").strip()
            page_id = (page.findtext("id") or "").strip() or title
            if not page_id:
                raise ParseError("page without id or title", location=f"byte {offset}")
            rows = []
            last_ts = _EPOCH
            for idx, rev in enumerate(page.findall("revision")):
                ts = _parse_timestamp(rev.findtext("timestamp"))
                if ts is None:
                    warnings["missing_timestamp"] += 1
                    ts = last_ts
                last_ts = ts
                editor = (
                    (rev.findtext("contributor/username") or "").strip()
                    or (rev.findtext("contributor/ip") or "").strip()
                )
                if not editor:
                    editor = "UNKNOWN"
                    warnings["missing_contributor"] += 1
                rows.append((ts, idx, editor, rev.findtext("text") or ""))
            ordered = sorted(rows, key=lambda r: r[0])
            if [r[1] for r in ordered] != list(range(len(rows))):
                warnings["reordered_revisions"] += 1
            history = [
                RevisionRecord(page_id, i, ts, editor, raw)
                for i, (ts, _, editor, raw) in enumerate(ordered)
            ]
            yield page_id, history


def _parse_jsonl(source, warnings: Counter) -> Iterator[Document]:
    with _open_maybe(source, "r") as stream:
        for line_no, line in enumerate(stream, start=1):
            if isinstance(line, bytes):
                line = line.decode("utf-8")
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON: {exc}", location=f"line {line_no}") from None
            try:
                doc_id, title, text = record["id"], record["title"], record["text"]
            except (TypeError, KeyError):
                raise ParseError(
                    "record needs id, title and text fields", location=f"line {line_no}"
                ) from None
            if not str(text).strip():
                warnings["empty_page"] += 1
                continue
            yield Document(id=str(doc_id), title=str(title), body=str(text))


def docs_to_jsonl(docs: Iterable[Document], fp: IO[str]) -> int:
    count = 0
    for doc in docs:
        fp.write(
            json.dumps(
                {"id": doc.id, "title": doc.title, "text": doc.body}, ensure_ascii=False
            )
        )
        fp.write("\n")
        count += 1
    return count


class _open_maybe:
    """Context manager: open paths, pass streams through without closing."""

    def __init__(self, source, mode: str):
        self._source = source
        self._mode = mode
        self._opened = None

    def __enter__(self):
        source = self._source
        if isinstance(source, str) or hasattr(source, "__fspath__"):
            kwargs = {} if "b" in self._mode else {"encoding": "utf-8"}
            self._opened = open(source, self._mode, **kwargs)
            return self._opened
        return source

    def __exit__(self, *exc):
        if self._opened is not None:
            self._opened.close()
        return False
