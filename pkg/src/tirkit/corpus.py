"""Parsers for TREC-format documents, topics, and relevance judgments.

The document parser streams ``<DOC>`` blocks from a byte stream, so
memory use stays bounded by the largest single document.  Gzip input is
detected from its magic bytes.  Text content is preserved byte for byte
apart from the declared trimming of DOCNO values.
"""

from __future__ import annotations

import gzip
import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Callable, Iterable, Iterator


@dataclass(frozen=True)
class Document:
    docno: str
    text: str


@dataclass(frozen=True)
class Topic:
    qid: str
    text: str


@dataclass(frozen=True)
class Judgment:
    qid: str
    docno: str
    relevance: int

    @property
    def relevant(self) -> bool:
        return self.relevance >= 1


class CorpusParseError(ValueError):
    """A malformed record, with enough location info to find it."""

    def __init__(self, message: str, *, offset: int | None = None,
                 line: int | None = None):
        where = ""
        if offset is not None:
            where = f" (byte offset {offset})"
        elif line is not None:
            where = f" (line {line})"
        super().__init__(message + where)
        self.offset = offset
        self.line = line


_DOC_OPEN = b"<DOC>"
_DOC_CLOSE = b"</DOC>"
_DOCNO_RE = re.compile(rb"<DOCNO>(.*?)</DOCNO>", re.DOTALL)
_TEXT_RE = re.compile(rb"<TEXT>(.*?)</TEXT>", re.DOTALL)
_GZIP_MAGIC = b"\x1f\x8b"


def _open_stream(source) -> BinaryIO:
    if isinstance(source, (str, Path)):
        stream: BinaryIO = open(source, "rb")
    else:
        stream = source
    head = stream.read(2)
    if head == _GZIP_MAGIC:
        if stream.seekable():
            stream.seek(0)
            return gzip.GzipFile(fileobj=stream)
        return gzip.GzipFile(fileobj=_Prepended(head, stream))
    if stream.seekable():
        stream.seek(0)
        return stream
    return _Prepended(head, stream)


class _Prepended(io.RawIOBase):
    """Byte stream with a sniffed prefix pushed back in front."""

    def __init__(self, head: bytes, rest: BinaryIO):
        self._head = head
        self._rest = rest

    def read(self, size: int = -1) -> bytes:
        if self._head:
            if size < 0 or size >= len(self._head):
                head, self._head = self._head, b""
                return head + self._rest.read(-1 if size < 0 else size - len(head))
            head, self._head = self._head[:size], self._head[size:]
            return head
        return self._rest.read(size)

    def readable(self) -> bool:
        return True


def parse_trec_docs(
    source,
    *,
    encoding: str = "utf-8",
    on_error: Callable[[CorpusParseError], None] | None = None,
) -> Iterator[Document]:
    """Yield one :class:`Document` per well-formed ``<DOC>`` block.

    *source* is a path or binary stream; gzip is detected automatically.
    *encoding* may be ``iso-8859-9`` for Latin-5 archives.  Malformed
    blocks raise :class:`CorpusParseError` carrying the byte offset, or
    are reported to *on_error* and skipped when a handler is given.
    Unknown tags inside a block are ignored.
    """
    stream = _open_stream(source)
    buffer = b""
    consumed = 0  # bytes handed off from previous buffer states
    chunk_size = 1 << 16

    def fail(message: str, offset: int) -> None:
        err = CorpusParseError(message, offset=offset)
        if on_error is None:
            raise err
        on_error(err)

    while True:
        start = buffer.find(_DOC_OPEN)
        if start < 0:
            chunk = stream.read(chunk_size)
            if not chunk:
                break
            consumed += max(0, len(buffer) - len(_DOC_OPEN))
            buffer = buffer[-len(_DOC_OPEN):] + chunk if buffer else chunk
            continue
        end = buffer.find(_DOC_CLOSE, start)
        if end < 0:
            chunk = stream.read(chunk_size)
            if not chunk:
                fail("unclosed <DOC> block", consumed + start)
                break
            buffer += chunk
            continue
        block = buffer[start : end + len(_DOC_CLOSE)]
        block_offset = consumed + start
        consumed += end + len(_DOC_CLOSE)
        buffer = buffer[end + len(_DOC_CLOSE):]

        docno_match = _DOCNO_RE.search(block)
        if docno_match is None:
            fail("block is missing <DOCNO>", block_offset)
            continue
        docno = docno_match.group(1).decode(encoding).strip()
        if not docno:
            fail("block has an empty DOCNO", block_offset)
            continue
        bodies = [m.group(1).decode(encoding) for m in _TEXT_RE.finditer(block)]
        yield Document(docno=docno, text=" ".join(bodies))


def parse_topics(source, *, encoding: str = "utf-8") -> list[Topic]:
    """Parse a topic file in either accepted syntax.

    Files whose first non-blank character is ``<`` are ``<top>`` blocks
    with ``<num>`` and ``<title>`` fields; anything else is treated as
    ``qid<TAB>text`` lines.  Duplicate qids are an error.
    """
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    text = data.decode(encoding) if isinstance(data, bytes) else data

    stripped = text.lstrip()
    if stripped.startswith("<"):
        topics = _parse_sgml_topics(text)
    else:
        topics = _parse_tabbed_topics(text)

    seen: set[str] = set()
    for topic in topics:
        if topic.qid in seen:
            raise CorpusParseError(f"duplicate qid {topic.qid}")
        seen.add(topic.qid)
    return topics


_TOP_RE = re.compile(r"<top>(.*?)</top>", re.DOTALL | re.IGNORECASE)
_NUM_RE = re.compile(r"<num>(.*?)(?=<|$)", re.DOTALL | re.IGNORECASE)
_TITLE_RE = re.compile(r"<title>(.*?)(?=<|$)", re.DOTALL | re.IGNORECASE)


def _clean_field(value: str, label: str) -> str:
    value = value.strip()
    if value.lower().startswith(label):
        value = value[len(label):].strip()
    return value


def _parse_sgml_topics(text: str) -> list[Topic]:
    topics = []
    for match in _TOP_RE.finditer(text):
        block = match.group(1)
        num = _NUM_RE.search(block)
        title = _TITLE_RE.search(block)
        if num is None or title is None:
            raise CorpusParseError(
                "topic block is missing <num> or <title>", offset=match.start()
            )
        qid = _clean_field(num.group(1), "number:")
        if not qid:
            raise CorpusParseError("topic block has empty <num>",
                                   offset=match.start())
        topics.append(Topic(qid=qid, text=_clean_field(title.group(1), "topic:")))
    return topics


def _parse_tabbed_topics(text: str) -> list[Topic]:
    topics = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "\t" not in line:
            raise CorpusParseError("expected qid<TAB>text", line=lineno)
        qid, query = line.split("\t", 1)
        qid = qid.strip()
        if not qid:
            raise CorpusParseError("empty qid", line=lineno)
        topics.append(Topic(qid=qid, text=query.strip()))
    return topics


def parse_qrels(source, *, encoding: str = "utf-8") -> list[Judgment]:
    """Parse 4-column ``qid iter docno rel`` judgment lines."""
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    text = data.decode(encoding) if isinstance(data, bytes) else data

    judgments = []
    seen: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        columns = line.split()
        if len(columns) != 4:
            raise CorpusParseError(
                f"expected 4 columns, got {len(columns)}", line=lineno
            )
        qid, _iteration, docno, rel_text = columns
        try:
            relevance = int(rel_text)
        except ValueError:
            raise CorpusParseError(
                f"relevance {rel_text!r} is not an integer", line=lineno
            ) from None
        if relevance < 0:
            raise CorpusParseError(
                f"relevance {relevance} is negative", line=lineno
            )
        key = (qid, docno)
        if key in seen:
            raise CorpusParseError(
                f"duplicate judgment for ({qid}, {docno})", line=lineno
            )
        seen.add(key)
        judgments.append(Judgment(qid=qid, docno=docno, relevance=relevance))
    return judgments


def write_trec_docs(documents: Iterable[Document], path: str | Path) -> None:
    """Serialize documents back to TREC format (fixtures and tests)."""
    with open(path, "wb") as f:
        for doc in documents:
            f.write(b"<DOC>\n<DOCNO>")
            f.write(doc.docno.encode("utf-8"))
            f.write(b"</DOCNO>\n<TEXT>")
            f.write(doc.text.encode("utf-8"))
            f.write(b"</TEXT>\n</DOC>\n")
