"""Index tests: counting correctness, invariants, persistence, determinism."""

import random

import pytest

from tirkit.analysis import Analyzer, AnalyzerConfig
from tirkit.corpus import Document
from tirkit.index import (
    DuplicateDocnoError,
    EmptyCollectionError,
    IndexChecksumError,
    IndexFormatError,
    IndexTruncatedError,
    IndexVersionError,
    build_index,
    read_index,
    write_index,
)

PLAIN = Analyzer(AnalyzerConfig())


def tiny_index():
    docs = [Document("A", "kedi kedi köpek"), Document("B", "kedi")]
    return build_index(docs, PLAIN)


def random_documents(rng: random.Random, n_docs: int, vocab: int):
    words = [f"w{i:03d}" for i in range(vocab)]
    docs = []
    for i in range(n_docs):
        length = rng.randint(0, 30)
        text = " ".join(rng.choice(words) for _ in range(length))
        docs.append(Document(f"D{i:04d}", text))
    return docs


class TestBuildIndex:
    def test_counts_match_hand_tally(self):
        idx = tiny_index()
        kedi = idx.lookup("kedi")
        assert kedi.df == 2 and kedi.cf == 3
        assert kedi.postings == ((0, 2), (1, 1))
        kopek = idx.lookup("köpek")
        assert kopek.df == 1 and kopek.cf == 1
        assert idx.stats.n_docs == 2
        assert idx.stats.avdl == 2.0

    def test_empty_corpus(self):
        idx = build_index([], PLAIN)
        assert idx.stats.n_docs == 0
        assert idx.stats.vocab_size == 0

    def test_single_empty_document(self):
        idx = build_index([Document("A", "")], PLAIN)
        assert idx.stats.n_docs == 1
        assert idx.doc_table[0].dl == 0
        assert idx.stats.vocab_size == 0

    def test_duplicate_docno_rejected(self):
        docs = [Document("A", "x"), Document("A", "y")]
        with pytest.raises(DuplicateDocnoError, match="A"):
            build_index(docs, PLAIN)

    def test_empty_docno_rejected(self):
        with pytest.raises(ValueError, match="empty docno"):
            build_index([Document("", "x")], PLAIN)

    def test_doc_table_lengths(self):
        idx = tiny_index()
        assert idx.doc_table[0] == ("A", 3, 2)
        assert idx.doc_table[1] == ("B", 1, 1)


class TestLookup:
    def test_present(self):
        assert tiny_index().lookup("kedi").df == 2

    def test_absent(self):
        assert tiny_index().lookup("fil") is None

    def test_unanalyzed_casing_misses(self):
        assert tiny_index().lookup("KEDI") is None


class TestCollectionProb:
    def test_value(self):
        assert tiny_index().collection_prob("kedi") == pytest.approx(0.75)

    def test_unseen_term(self):
        assert tiny_index().collection_prob("fil") == 0.0

    def test_whole_collection_single_term(self):
        idx = build_index([Document("A", "a a")], PLAIN)
        assert idx.collection_prob("a") == 1.0

    def test_empty_collection_rejected(self):
        idx = build_index([], PLAIN)
        with pytest.raises(EmptyCollectionError):
            idx.collection_prob("kedi")


class TestInvariants:
    """df/cf/dl bookkeeping, checked exhaustively on random small corpora."""

    def test_counting_invariants_on_random_corpora(self):
        rng = random.Random(7)
        for round_ in range(20):
            docs = random_documents(rng, rng.randint(1, 40), rng.randint(1, 30))
            idx = build_index(docs, PLAIN)

            # independent tally straight from the documents
            expected_postings = {}
            for docid, doc in enumerate(docs):
                for term in doc_terms(doc):
                    expected_postings.setdefault(term, {}).setdefault(docid, 0)
                    expected_postings[term][docid] += 1

            assert idx.stats.vocab_size == len(expected_postings)
            total_cf = 0
            for term, by_doc in expected_postings.items():
                entry = idx.lookup(term)
                assert entry.df == len(by_doc)
                assert entry.cf == sum(by_doc.values())
                assert list(entry.postings) == sorted(
                    (docid, tf) for docid, tf in by_doc.items()
                )
                docids = [p.docid for p in entry.postings]
                assert docids == sorted(set(docids)), "docids strictly increasing"
                total_cf += entry.cf
            assert total_cf == idx.stats.total_terms
            assert sum(e.dl for e in idx.doc_table) == idx.stats.total_terms


def doc_terms(doc):
    return PLAIN.analyze(doc.text)


class TestPersistence:
    def test_roundtrip_identity(self, tmp_path):
        idx = tiny_index()
        path = tmp_path / "t.tir"
        write_index(idx, path)
        loaded = read_index(path)
        assert loaded == idx
        assert loaded.stats == idx.stats
        assert loaded.fingerprint == idx.fingerprint
        assert loaded.lookup("kedi") == idx.lookup("kedi")

    def test_deterministic_bytes(self, tmp_path):
        p1, p2 = tmp_path / "a.tir", tmp_path / "b.tir"
        docs = [Document("A", "kedi kedi köpek"), Document("B", "kedi")]
        write_index(build_index(docs, PLAIN), p1)
        write_index(build_index(list(docs), Analyzer(AnalyzerConfig())), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "bad.tir"
        path.write_bytes(b"NOPE" + b"\x00" * 64)
        with pytest.raises(IndexFormatError):
            read_index(path)

    def test_wrong_version(self, tmp_path):
        path = tmp_path / "v2.tir"
        write_index(tiny_index(), path)
        data = bytearray(path.read_bytes())
        data[3] = ord("2")
        path.write_bytes(bytes(data))
        with pytest.raises(IndexVersionError):
            read_index(path)

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "cut.tir"
        write_index(tiny_index(), path)
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])
        with pytest.raises(IndexTruncatedError):
            read_index(path)

    def test_corrupted_byte(self, tmp_path):
        path = tmp_path / "flip.tir"
        write_index(tiny_index(), path)
        data = bytearray(path.read_bytes())
        data[-10] ^= 0xFF  # inside the postings payload
        path.write_bytes(bytes(data))
        with pytest.raises((IndexChecksumError, IndexTruncatedError)):
            read_index(path)

    def test_roundtrip_on_random_corpora(self, tmp_path):
        rng = random.Random(11)
        docs = random_documents(rng, 60, 40)
        idx = build_index(docs, PLAIN)
        path = tmp_path / "r.tir"
        write_index(idx, path)
        assert read_index(path) == idx

    def test_empty_index_roundtrip(self, tmp_path):
        idx = build_index([], PLAIN)
        path = tmp_path / "empty.tir"
        write_index(idx, path)
        loaded = read_index(path)
        assert loaded == idx
        assert loaded.stats.n_docs == 0
        assert loaded.stats.avdl == 0.0

    def test_unicode_docnos_and_terms_roundtrip(self, tmp_path):
        docs = [Document("HABER-ağaç-1", "çiçek ğü ışık öğle")]
        idx = build_index(docs, PLAIN)
        path = tmp_path / "u.tir"
        write_index(idx, path)
        loaded = read_index(path)
        assert loaded.doc_table[0].docno == "HABER-ağaç-1"
        assert loaded.lookup("ğü") == idx.lookup("ğü")
