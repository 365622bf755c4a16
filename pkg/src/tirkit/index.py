"""Inverted index: construction, lookup, global statistics, persistence.

The index keeps postings fully in memory; an experiment-scale news
collection fits comfortably and the ranking code stays simple.  A
built or loaded index is immutable and safe for concurrent readers.

On disk the index is a "TIR1" file: ``TIR`` magic plus a version byte,
little-endian fixed-width integers, three length-prefixed sections
(header, document table, dictionary with postings) and a trailing
CRC-32 over everything before it.  Construction is deterministic, so
equal inputs produce byte-identical files.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

from .analysis import Analyzer
from .corpus import Document

_MAGIC = b"TIR"
_VERSION = b"1"


class Posting(NamedTuple):
    docid: int
    tf: int


class DocEntry(NamedTuple):
    docno: str
    dl: int  # document length in terms, post-analysis
    uniq: int  # distinct terms


@dataclass(frozen=True)
class DictionaryEntry:
    term: str
    df: int
    cf: int
    postings: tuple[Posting, ...]


@dataclass(frozen=True)
class IndexStats:
    n_docs: int
    total_terms: int
    vocab_size: int

    @property
    def avdl(self) -> float:
        return self.total_terms / self.n_docs if self.n_docs else 0.0


class DuplicateDocnoError(ValueError):
    pass


class EmptyCollectionError(ValueError):
    pass


class IndexFileError(Exception):
    """Base for index file reading failures."""


class IndexFormatError(IndexFileError):
    pass


class IndexVersionError(IndexFileError):
    pass


class IndexTruncatedError(IndexFileError):
    pass


class IndexChecksumError(IndexFileError):
    pass


class InvertedIndex:
    """Term dictionary with postings, document table and statistics."""

    def __init__(
        self,
        postings: dict[str, list[Posting]],
        cf: dict[str, int],
        doc_table: list[DocEntry],
        fingerprint: str,
    ):
        self._postings = postings
        self._cf = cf
        self.doc_table = doc_table
        self.fingerprint = fingerprint
        total = sum(entry.dl for entry in doc_table)
        self.stats = IndexStats(
            n_docs=len(doc_table), total_terms=total, vocab_size=len(postings)
        )

    # -- queries ---------------------------------------------------------

    def lookup(self, term: str) -> DictionaryEntry | None:
        plist = self._postings.get(term)
        if plist is None:
            return None
        return DictionaryEntry(
            term=term, df=len(plist), cf=self._cf[term], postings=tuple(plist)
        )

    def postings(self, term: str) -> list[Posting]:
        return self._postings.get(term, [])

    def cf(self, term: str) -> int:
        return self._cf.get(term, 0)

    def df(self, term: str) -> int:
        return len(self._postings.get(term, ()))

    def terms(self) -> list[str]:
        return sorted(self._postings)

    def collection_prob(self, term: str) -> float:
        """p(term | collection): cf / total terms; 0.0 for unseen terms."""
        if self.stats.total_terms == 0:
            raise EmptyCollectionError("collection has no terms")
        return self._cf.get(term, 0) / self.stats.total_terms

    def docno(self, docid: int) -> str:
        return self.doc_table[docid].docno

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvertedIndex):
            return NotImplemented
        return (
            self._postings == other._postings
            and self._cf == other._cf
            and self.doc_table == other.doc_table
            and self.fingerprint == other.fingerprint
        )


def build_index(documents: Iterable[Document], analyzer: Analyzer) -> InvertedIndex:
    """Index every document with *analyzer*; docids follow input order."""
    postings: dict[str, list[Posting]] = {}
    cf: dict[str, int] = {}
    doc_table: list[DocEntry] = []
    seen_docnos: set[str] = set()

    for docid, doc in enumerate(documents):
        if not doc.docno:
            raise ValueError(f"document {docid} has an empty docno")
        if doc.docno in seen_docnos:
            raise DuplicateDocnoError(f"duplicate docno {doc.docno!r}")
        seen_docnos.add(doc.docno)

        counts: dict[str, int] = {}
        dl = 0
        for term in analyzer.analyze(doc.text):
            counts[term] = counts.get(term, 0) + 1
            dl += 1
        doc_table.append(DocEntry(docno=doc.docno, dl=dl, uniq=len(counts)))
        for term, tf in counts.items():
            postings.setdefault(term, []).append(Posting(docid, tf))
            cf[term] = cf.get(term, 0) + tf

    return InvertedIndex(postings, cf, doc_table, analyzer.fingerprint())


# -- persistence ----------------------------------------------------------

_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")


class _Writer:
    def __init__(self):
        self.parts: list[bytes] = []

    def u32(self, value: int) -> None:
        self.parts.append(_U32.pack(value))

    def u64(self, value: int) -> None:
        self.parts.append(_U64.pack(value))

    def blob(self, data: bytes) -> None:
        self.parts.append(_U32.pack(len(data)))
        self.parts.append(data)

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise IndexTruncatedError(
                f"needed {n} bytes at offset {self.pos}, file ends early"
            )
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def blob(self) -> bytes:
        return self.take(self.u32())


def _encode_index(index: InvertedIndex) -> bytes:
    header = _Writer()
    header.blob(index.fingerprint.encode("utf-8"))
    header.u64(index.stats.n_docs)
    header.u64(index.stats.total_terms)
    header.u64(index.stats.vocab_size)

    docs = _Writer()
    for entry in index.doc_table:
        docs.blob(entry.docno.encode("utf-8"))
        docs.u32(entry.dl)
        docs.u32(entry.uniq)

    dictionary = _Writer()
    for term in sorted(index._postings):
        plist = index._postings[term]
        dictionary.blob(term.encode("utf-8"))
        dictionary.u32(len(plist))
        dictionary.u64(index._cf[term])
        for docid, tf in plist:
            dictionary.u32(docid)
            dictionary.u32(tf)

    body = _Writer()
    body.parts.append(_MAGIC + _VERSION)
    for section in (header, docs, dictionary):
        payload = section.getvalue()
        body.u64(len(payload))
        body.parts.append(payload)
    payload = body.getvalue()
    return payload + _U32.pack(zlib.crc32(payload))


def write_index(index: InvertedIndex, path: str | Path) -> None:
    Path(path).write_bytes(_encode_index(index))


def read_index(path: str | Path) -> InvertedIndex:
    data = Path(path).read_bytes()
    if len(data) < 4 or data[:3] != _MAGIC:
        raise IndexFormatError(f"{path}: not a TIR index file")
    if data[3:4] != _VERSION:
        raise IndexVersionError(
            f"{path}: unsupported index version {data[3:4]!r}"
        )
    if len(data) < 8:
        raise IndexTruncatedError(f"{path}: file ends before any section")

    reader = _Reader(data[:-4])
    reader.pos = 4

    header_len = reader.u64()
    header = _Reader(reader.take(header_len))
    fingerprint = header.blob().decode("utf-8")
    n_docs = header.u64()
    total_terms = header.u64()
    vocab_size = header.u64()

    docs_len = reader.u64()
    docs = _Reader(reader.take(docs_len))
    doc_table = []
    for _ in range(n_docs):
        docno = docs.blob().decode("utf-8")
        dl = docs.u32()
        uniq = docs.u32()
        doc_table.append(DocEntry(docno=docno, dl=dl, uniq=uniq))

    dict_len = reader.u64()
    dictionary = _Reader(reader.take(dict_len))
    postings: dict[str, list[Posting]] = {}
    cf: dict[str, int] = {}
    for _ in range(vocab_size):
        term = dictionary.blob().decode("utf-8")
        df = dictionary.u32()
        term_cf = dictionary.u64()
        plist = []
        for _ in range(df):
            docid = dictionary.u32()
            tf = dictionary.u32()
            plist.append(Posting(docid, tf))
        postings[term] = plist
        cf[term] = term_cf

    stored_crc = _U32.unpack(data[-4:])[0]
    actual_crc = zlib.crc32(data[:-4])
    if stored_crc != actual_crc:
        raise IndexChecksumError(
            f"{path}: checksum mismatch "
            f"(stored {stored_crc:#010x}, computed {actual_crc:#010x})"
        )

    index = InvertedIndex(postings, cf, doc_table, fingerprint)
    if index.stats.total_terms != total_terms:
        raise IndexChecksumError(
            f"{path}: header total_terms {total_terms} disagrees with "
            f"document table sum {index.stats.total_terms}"
        )
    return index
