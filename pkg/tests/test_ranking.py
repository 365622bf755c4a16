"""Ranking model tests.

The numeric expectations are computed independently: each expected
value is either written out arithmetically in the test (hand evaluation
of the published formulas) or produced by the brute-force scorers in
oracles.py, which rescore every document directly from raw term counts.
"""

import math
import random

import pytest

from tirkit.analysis import Analyzer, AnalyzerConfig
from tirkit.corpus import Document
from tirkit.index import build_index
from tirkit.ranking import (
    ABSOLUTE_DISCOUNT,
    DIRICHLET,
    JELINEK_MERCER,
    PRESETS,
    Bm25Params,
    EmptyQueryError,
    LmParams,
    QueryVector,
    TfIdfParams,
    bm25_doc_term,
    bm25_query_term,
    lm_alpha,
    lm_score,
    lm_smoothed_prob,
    rank,
    tfidf_doc_term,
    tfidf_query_term,
)

from oracles import (
    CorpusCounts,
    brute_force_rank,
    lm_direct_score,
    random_corpus,
    smoothed_distribution,
)

PLAIN = Analyzer(AnalyzerConfig())


def index_of(*texts):
    docs = [Document(f"D{i}", text) for i, text in enumerate(texts)]
    return build_index(docs, PLAIN)


class TestBm25DocTerm:
    def test_hand_evaluated_example(self):
        """tf=2, dl=4, avdl=4, df=1, N=3 under the reported best
        unstemmed setting k1=1.4, b=0.1."""
        idf = math.log((3 - 1 + 0.5) / (1 + 0.5))
        k = 1.4 * ((1 - 0.1) + 0.1 * 4 / 4)
        expected = idf * ((1.4 + 1) * 2) / (k + 2)
        got = bm25_doc_term(2, 4, 4.0, 1, 3, Bm25Params(k1=1.4, k3=1000, b=0.1))
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx(0.72117, abs=5e-6)

    def test_b_zero_disables_length_normalization(self):
        params = Bm25Params(k1=1.2, b=0.0)
        short = bm25_doc_term(3, 2, 10.0, 2, 10, params)
        long_ = bm25_doc_term(3, 50, 10.0, 2, 10, params)
        assert short == long_

    def test_common_term_clamped_to_zero(self):
        params = Bm25Params(clamp_negative_idf=True)
        assert bm25_doc_term(5, 10, 10.0, 8, 10, params) == 0.0

    def test_unclamped_idf_goes_negative(self):
        params = Bm25Params(clamp_negative_idf=False)
        assert bm25_doc_term(5, 10, 10.0, 8, 10, params) < 0.0

    def test_strictly_increases_with_tf(self):
        params = Bm25Params(k1=1.4, b=0.4)
        weights = [bm25_doc_term(tf, 20, 15.0, 3, 50, params) for tf in range(1, 40)]
        assert all(b > a for a, b in zip(weights, weights[1:]))

    def test_bounded_by_saturation_limit(self):
        params = Bm25Params(k1=1.4, b=0.4)
        idf = math.log((50 - 3 + 0.5) / 3.5)
        for tf in (1, 5, 100, 10_000):
            assert bm25_doc_term(tf, 20, 15.0, 3, 50, params) < (1.4 + 1) * idf

    def test_idf_decreases_with_df(self):
        params = Bm25Params(clamp_negative_idf=False)
        weights = [bm25_doc_term(2, 10, 10.0, df, 100, params) for df in range(1, 50)]
        assert all(b < a for a, b in zip(weights, weights[1:]))

    def test_precondition_violations(self):
        with pytest.raises(ValueError):
            bm25_doc_term(0, 4, 4.0, 1, 3, Bm25Params())
        with pytest.raises(ValueError):
            bm25_doc_term(2, 4, 4.0, 0, 3, Bm25Params())
        with pytest.raises(ValueError):
            bm25_doc_term(2, 4, 4.0, 5, 3, Bm25Params())
        with pytest.raises(ValueError):
            bm25_doc_term(2, 0, 4.0, 1, 3, Bm25Params())
        with pytest.raises(ValueError):
            bm25_doc_term(2, 4, 0.0, 1, 3, Bm25Params())


class TestBm25QueryTerm:
    def test_qtf_one_is_fixed_point(self):
        assert bm25_query_term(1, 1000.0) == 1.0

    def test_hand_evaluated(self):
        assert bm25_query_term(2, 1000.0) == pytest.approx(2002 / 1002)
        assert bm25_query_term(2, 1000.0) == pytest.approx(1.99800, abs=5e-6)

    def test_k3_zero_collapses_to_one(self):
        for qtf in (1, 2, 17):
            assert bm25_query_term(qtf, 0.0) == 1.0

    def test_range(self):
        for qtf in (1, 3, 50):
            assert 1.0 <= bm25_query_term(qtf, 1000.0) <= 1001.0


class TestTfIdf:
    def test_hand_evaluated_doc_weight(self):
        """tf=2, dl=4, avdl=4, df=1, N=3 under the reported best
        unstemmed setting k1=1, b=0.2."""
        idf = math.log(3 / 1)
        expected = idf * (1.0 * 2) / (2 + 1.0 * (0.8 + 0.2 * 1.0))
        got = tfidf_doc_term(2, 4, 4.0, 1, 3, TfIdfParams(k1=1.0, k3=1000, b=0.2))
        assert got == pytest.approx(expected, abs=1e-12)
        assert got == pytest.approx(0.73241, abs=5e-6)

    def test_df_equals_n_gives_zero(self):
        assert tfidf_doc_term(2, 4, 4.0, 3, 3, TfIdfParams()) == 0.0

    def test_tf_saturates_at_k1(self):
        params = TfIdfParams(k1=1.3, b=0.5)
        idf = math.log(100 / 5)
        w = tfidf_doc_term(10**9, 10, 10.0, 5, 100, params)
        assert w == pytest.approx(1.3 * idf, rel=1e-6)
        assert w < 1.3 * idf

    def test_query_weight(self):
        idf = math.log(100 / 5)
        got = tfidf_query_term(2, 5, 100, TfIdfParams(k3=1000.0))
        assert got == pytest.approx(idf * 2000 / 1002)

    def test_idf_monotonic_in_df(self):
        params = TfIdfParams()
        ws = [tfidf_doc_term(2, 10, 10.0, df, 100, params) for df in range(1, 100)]
        assert all(b < a for a, b in zip(ws, ws[1:]))


class TestSmoothedProb:
    def test_jelinek_mercer_hand_evaluated(self):
        # lambda = 0.3: the reported best unstemmed interpolation weight
        got = lm_smoothed_prob(2, 10, 5, 0.01, LmParams(JELINEK_MERCER, 0.3))
        assert got == pytest.approx(0.7 * 0.2 + 0.3 * 0.01, abs=1e-12)
        assert got == pytest.approx(0.143)

    def test_dirichlet_hand_evaluated(self):
        got = lm_smoothed_prob(2, 10, 5, 0.01, LmParams(DIRICHLET, 100.0))
        assert got == pytest.approx(3 / 110, abs=1e-12)

    def test_jelinek_mercer_lambda_one_is_collection_prob(self):
        params = LmParams(JELINEK_MERCER, 1.0)
        for tf in (0, 1, 5):
            assert lm_smoothed_prob(tf, 5, 3, 0.02, params) == pytest.approx(0.02)

    def test_absolute_discount_hand_evaluated(self):
        # delta = 0.7: the reported best stemmed discount
        params = LmParams(ABSOLUTE_DISCOUNT, 0.7)
        got = lm_smoothed_prob(2, 10, 5, 0.01, params)
        assert got == pytest.approx((2 - 0.7) / 10 + (0.7 * 5 / 10) * 0.01)

    def test_absolute_discount_floors_at_zero(self):
        params = LmParams(ABSOLUTE_DISCOUNT, 0.7)
        got = lm_smoothed_prob(0, 10, 5, 0.01, params)
        assert got == pytest.approx((0.7 * 5 / 10) * 0.01)

    def test_parameter_ranges_validated(self):
        with pytest.raises(ValueError):
            LmParams(JELINEK_MERCER, 1.5)
        with pytest.raises(ValueError):
            LmParams(DIRICHLET, 0.0)
        with pytest.raises(ValueError):
            LmParams(ABSOLUTE_DISCOUNT, 1.0)
        with pytest.raises(ValueError):
            LmParams("laplace", 1.0)

    def test_preconditions(self):
        params = LmParams(DIRICHLET, 100.0)
        with pytest.raises(ValueError):
            lm_smoothed_prob(3, 2, 1, 0.1, params)  # tf > dl
        with pytest.raises(ValueError):
            lm_smoothed_prob(1, 0, 1, 0.1, params)
        with pytest.raises(ValueError):
            lm_smoothed_prob(1, 2, 0, 0.1, params)
        with pytest.raises(ValueError):
            lm_smoothed_prob(1, 2, 1, 0.0, params)


class TestLmAlpha:
    def test_dirichlet_hand_evaluated(self):
        assert lm_alpha(10, 5, LmParams(DIRICHLET, 100.0)) == pytest.approx(
            100 / 110
        )

    def test_jelinek_mercer_is_lambda(self):
        params = LmParams(JELINEK_MERCER, 0.4)
        for dl in (1, 10, 500):
            assert lm_alpha(dl, min(dl, 3), params) == 0.4

    def test_absolute_discount_hand_evaluated(self):
        got = lm_alpha(10, 5, LmParams(ABSOLUTE_DISCOUNT, 0.7))
        assert got == pytest.approx(0.35)


class TestSmoothingNormalization:
    """For every method the smoothed document model must be a proper
    distribution over the vocabulary, with unseen terms taking
    alpha * p(t|C)."""

    @pytest.mark.parametrize(
        "params",
        [
            LmParams(JELINEK_MERCER, 0.4),
            LmParams(DIRICHLET, 500.0),
            LmParams(ABSOLUTE_DISCOUNT, 0.7),
        ],
        ids=["jm", "dirichlet", "abs-discount"],
    )
    def test_sums_to_one(self, params):
        rng = random.Random(3)
        docs = random_corpus(rng, n_docs=25, vocab=40, max_len=30)
        corpus = CorpusCounts(docs)
        checked = 0
        for docid in range(corpus.n_docs):
            if corpus.dl[docid] == 0:
                continue
            total = sum(smoothed_distribution(corpus, docid, params).values())
            assert total == pytest.approx(1.0, abs=1e-9)
            checked += 1
        assert checked > 0


class TestLmScore:
    def test_jm_lambda_one_ties_all_documents(self):
        idx = index_of("kedi kedi", "kedi köpek", "köpek ağaç")
        query = QueryVector.from_terms(["kedi"])
        ranked = rank(query, idx, LmParams(JELINEK_MERCER, 1.0), 10)
        assert [d.score for d in ranked] == [0.0, 0.0]
        assert [d.docno for d in ranked] == ["D0", "D1"]  # docno tiebreak

    def test_higher_tf_wins_at_equal_length(self):
        idx = index_of("kedi kedi köpek", "kedi köpek köpek")
        query = QueryVector.from_terms(["kedi"])
        for mu in (1.0, 100.0, 5000.0):
            ranked = rank(query, idx, LmParams(DIRICHLET, mu), 10)
            assert ranked[0].docno == "D0"
            assert ranked[0].score > ranked[1].score

    def test_efficient_form_matches_direct_form_up_to_constant(self):
        """Efficient KL scores differ from full-vocabulary scores by a
        per-query constant, so rankings are identical."""
        rng = random.Random(17)
        docs = random_corpus(rng, n_docs=15, vocab=25, max_len=20, min_len=1)
        idx = build_index(docs, PLAIN)
        corpus = CorpusCounts(docs)
        query = QueryVector.from_terms(["w000", "w001", "w001", "w003"])
        params = LmParams(DIRICHLET, 500.0)
        diffs = []
        for docid in range(len(idx.doc_table)):
            efficient = lm_score(query, docid, idx, params)
            direct = lm_direct_score(query, docid, corpus, params)
            diffs.append(efficient - direct)
        spread = max(diffs) - min(diffs)
        assert spread < 1e-9

    def test_unseen_collection_terms_are_dropped(self):
        idx = index_of("kedi köpek", "kedi")
        query = QueryVector.from_terms(["kedi", "zzz"])
        params = LmParams(DIRICHLET, 100.0)
        pruned = QueryVector.from_terms(["kedi"])
        for docid in range(2):
            assert lm_score(query, docid, idx, params) == pytest.approx(
                lm_score(pruned, docid, idx, params)
            )

    def test_fully_unseen_query_is_an_error(self):
        idx = index_of("kedi köpek")
        query = QueryVector.from_terms(["zzz"])
        with pytest.raises(EmptyQueryError):
            lm_score(query, 0, idx, LmParams(DIRICHLET, 100.0))
        with pytest.raises(EmptyQueryError):
            rank(query, idx, LmParams(DIRICHLET, 100.0), 5)


class TestRank:
    def test_absent_term_yields_empty_list(self):
        idx = index_of("kedi köpek", "kedi")
        query = QueryVector.from_terms(["zzz"])
        assert rank(query, idx, Bm25Params(), 10) == []
        assert rank(query, idx, TfIdfParams(), 10) == []

    def test_k_larger_than_candidates(self):
        idx = index_of("kedi", "kedi", "ağaç")
        query = QueryVector.from_terms(["kedi"])
        assert len(rank(query, idx, Bm25Params(), 1000)) == 2

    def test_k_truncates(self):
        idx = index_of("kedi", "kedi kedi", "kedi kedi kedi")
        query = QueryVector.from_terms(["kedi"])
        assert len(rank(query, idx, Bm25Params(k1=1.2, b=0.0), 2)) == 2

    def test_two_doc_corpus_matches_brute_force(self):
        docs = [Document("D0", "kedi kedi köpek"), Document("D1", "kedi")]
        idx = build_index(docs, PLAIN)
        query = QueryVector.from_terms(["kedi"])
        params = Bm25Params(k1=1.4, k3=1000.0, b=0.1)
        assert rank(query, idx, params, 10) == brute_force_rank(
            query, CorpusCounts(docs), params, 10
        )

    def test_fingerprint_mismatch_rejected(self):
        from tirkit.ranking import FingerprintMismatchError

        idx = index_of("kedi")
        query = QueryVector.from_terms(["kedi"])
        with pytest.raises(FingerprintMismatchError):
            rank(query, idx, Bm25Params(), 5, analyzer_fingerprint="bogus")

    def test_deterministic_ties_break_by_docno(self):
        idx = index_of("kedi", "kedi", "kedi")
        query = QueryVector.from_terms(["kedi"])
        params = LmParams(DIRICHLET, 100.0)
        first = rank(query, idx, params, 10)
        assert [d.docno for d in first] == ["D0", "D1", "D2"]
        assert rank(query, idx, params, 10) == first


class TestRankAgainstBruteForce:
    """Pipeline scores must equal exhaustive per-document rescoring."""

    @pytest.mark.parametrize(
        "params",
        [
            Bm25Params(k1=1.4, k3=1000.0, b=0.1),
            Bm25Params(k1=1.0, k3=0.0, b=1.0, clamp_negative_idf=False),
            TfIdfParams(k1=1.0, k3=1000.0, b=0.2),
            TfIdfParams(k1=2.0, k3=10.0, b=0.9),
            LmParams(JELINEK_MERCER, 0.3),
            LmParams(DIRICHLET, 2000.0),
            LmParams(ABSOLUTE_DISCOUNT, 0.75),
        ],
        ids=["okapi", "okapi-alt", "tfidf", "tfidf-alt", "jm", "dir", "ad"],
    )
    def test_small_random_corpora(self, params):
        rng = random.Random(99)
        for _ in range(8):
            docs = random_corpus(rng, n_docs=rng.randint(2, 50), vocab=30,
                                 max_len=25)
            idx = build_index(docs, PLAIN)
            corpus = CorpusCounts(docs)
            terms = [f"w{rng.randrange(30):03d}" for _ in range(rng.randint(1, 4))]
            query = QueryVector.from_terms(terms)
            try:
                mine = rank(query, idx, params, 20)
            except EmptyQueryError:
                continue
            oracle = brute_force_rank(query, corpus, params, 20)
            assert [d.docno for d in mine] == [d.docno for d in oracle]
            for got, want in zip(mine, oracle):
                assert abs(got.score - want.score) < 1e-9


class TestPresets:
    def test_reported_best_settings(self):
        """Each named preset resolves to exactly its published values."""
        assert PRESETS["tfidf-nostem"] == TfIdfParams(k1=1.0, k3=1000.0, b=0.2)
        assert PRESETS["tfidf-stem"] == TfIdfParams(k1=1.0, k3=1000.0, b=0.4)
        assert PRESETS["okapi-nostem"] == Bm25Params(k1=1.4, k3=1000.0, b=0.1)
        assert PRESETS["okapi-stem"] == Bm25Params(k1=1.0, k3=1000.0, b=0.75)
        assert PRESETS["lm-dirichlet-nostem"] == LmParams(DIRICHLET, 2000.0)
        assert PRESETS["lm-dirichlet-stem"] == LmParams(DIRICHLET, 500.0)

    def test_exactly_the_documented_presets_exist(self):
        assert sorted(PRESETS) == [
            "lm-dirichlet-nostem",
            "lm-dirichlet-stem",
            "okapi-nostem",
            "okapi-stem",
            "tfidf-nostem",
            "tfidf-stem",
        ]
