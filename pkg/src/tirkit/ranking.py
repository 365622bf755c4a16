"""Ranking models: TF-IDF dot product, Okapi BM25, and KL-divergence
query-likelihood language models with three smoothing methods.

All scores use natural logarithms and are rank-only quantities; the
base matters solely for reproducibility.  Scoring is read-only over the
index, so queries may be evaluated concurrently.

Candidates are the union of the query terms' postings for every model.
For the language models this drops documents containing no query term;
their scores are dominated in practice and the run files stay
comparable across models.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Union

from .index import InvertedIndex

JELINEK_MERCER = "jelinek-mercer"
DIRICHLET = "dirichlet"
ABSOLUTE_DISCOUNT = "absolute-discount"
SMOOTHING_METHODS = (JELINEK_MERCER, DIRICHLET, ABSOLUTE_DISCOUNT)


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.4
    k3: float = 1000.0
    b: float = 0.1
    clamp_negative_idf: bool = True

    def __post_init__(self) -> None:
        if self.k1 < 0 or self.k3 < 0:
            raise ValueError("k1 and k3 must be >= 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


@dataclass(frozen=True)
class TfIdfParams:
    k1: float = 1.0
    k3: float = 1000.0
    b: float = 0.2

    def __post_init__(self) -> None:
        if self.k1 < 0 or self.k3 < 0:
            raise ValueError("k1 and k3 must be >= 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


@dataclass(frozen=True)
class LmParams:
    smoothing: str = DIRICHLET
    value: float = 2000.0  # lambda, mu, or delta depending on the method

    def __post_init__(self) -> None:
        if self.smoothing == JELINEK_MERCER:
            if not 0.0 <= self.value <= 1.0:
                raise ValueError("jelinek-mercer lambda must be in [0, 1]")
        elif self.smoothing == DIRICHLET:
            if self.value <= 0.0:
                raise ValueError("dirichlet mu must be > 0")
        elif self.smoothing == ABSOLUTE_DISCOUNT:
            if not 0.0 <= self.value < 1.0:
                raise ValueError("absolute discounting delta must be in [0, 1)")
        else:
            raise ValueError(f"smoothing must be one of {SMOOTHING_METHODS}")


ModelParams = Union[Bm25Params, TfIdfParams, LmParams]

# best settings reported for each model and stemming choice
PRESETS: dict[str, ModelParams] = {
    "tfidf-nostem": TfIdfParams(k1=1.0, k3=1000.0, b=0.2),
    "tfidf-stem": TfIdfParams(k1=1.0, k3=1000.0, b=0.4),
    "okapi-nostem": Bm25Params(k1=1.4, k3=1000.0, b=0.1),
    "okapi-stem": Bm25Params(k1=1.0, k3=1000.0, b=0.75),
    "lm-dirichlet-nostem": LmParams(DIRICHLET, 2000.0),
    "lm-dirichlet-stem": LmParams(DIRICHLET, 500.0),
}


@dataclass(frozen=True)
class QueryVector:
    """Distinct analyzed query terms with their repeat counts."""

    terms: tuple[tuple[str, int], ...]
    qlen: int

    @classmethod
    def from_terms(cls, analyzed_terms: list[str]) -> "QueryVector":
        counts = Counter(analyzed_terms)
        return cls(terms=tuple(sorted(counts.items())), qlen=sum(counts.values()))


class ScoredDoc(NamedTuple):
    docid: int
    docno: str
    score: float


RankedList = list[ScoredDoc]


class EmptyQueryError(ValueError):
    """No query term survives collection-frequency filtering."""


class FingerprintMismatchError(ValueError):
    """Query analyzer differs from the analyzer the index was built with."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


# -- Okapi BM25 -------------------------------------------------------------


def bm25_doc_term(
    tf: int, dl: int, avdl: float, df: int, n_docs: int, params: Bm25Params
) -> float:
    """Document-side BM25 weight of one term occurrence.

    w = idf * ((k1 + 1) * tf) / (K + tf) with
    K = k1 * ((1 - b) + b * dl / avdl) and the Robertson/Sparck Jones
    idf = ln((N - df + 0.5) / (df + 0.5)), clamped at zero when
    configured so frequent terms cannot penalize a document.
    """
    _require(tf >= 1, "tf must be >= 1")
    _require(df >= 1, "df must be >= 1")
    _require(n_docs >= df, "df cannot exceed the document count")
    _require(dl >= 1, "dl must be >= 1")
    _require(avdl > 0, "avdl must be positive")
    idf = math.log((n_docs - df + 0.5) / (df + 0.5))
    if params.clamp_negative_idf and idf < 0.0:
        idf = 0.0
    k = params.k1 * ((1.0 - params.b) + params.b * dl / avdl)
    return idf * ((params.k1 + 1.0) * tf) / (k + tf)


def bm25_query_term(qtf: int, k3: float) -> float:
    """Query-side BM25 factor ((k3 + 1) * qtf) / (k3 + qtf), in [1, k3+1]."""
    _require(qtf >= 1, "qtf must be >= 1")
    _require(k3 >= 0, "k3 must be >= 0")
    return ((k3 + 1.0) * qtf) / (k3 + qtf)


# -- dot-product TF-IDF with BM25-style tf saturation ------------------------


def _tfidf_idf(df: int, n_docs: int) -> float:
    return math.log(n_docs / df)


def tfidf_doc_term(
    tf: int, dl: int, avdl: float, df: int, n_docs: int, params: TfIdfParams
) -> float:
    """Document weight idf * (k1 * tf) / (tf + k1 * ((1-b) + b*dl/avdl))."""
    _require(tf >= 1, "tf must be >= 1")
    _require(df >= 1, "df must be >= 1")
    _require(n_docs >= df, "df cannot exceed the document count")
    _require(dl >= 1, "dl must be >= 1")
    _require(avdl > 0, "avdl must be positive")
    saturation = (params.k1 * tf) / (
        tf + params.k1 * ((1.0 - params.b) + params.b * dl / avdl)
    )
    return _tfidf_idf(df, n_docs) * saturation


def tfidf_query_term(qtf: int, df: int, n_docs: int, params: TfIdfParams) -> float:
    """Query weight idf * (k3 * qtf) / (qtf + k3); idf enters the dot
    product once more on the document side."""
    _require(qtf >= 1, "qtf must be >= 1")
    _require(df >= 1, "df must be >= 1")
    _require(n_docs >= df, "df cannot exceed the document count")
    return _tfidf_idf(df, n_docs) * (params.k3 * qtf) / (qtf + params.k3)


# -- query-likelihood language models ----------------------------------------


def lm_smoothed_prob(
    tf: int, dl: int, uniq: int, p_c: float, params: LmParams
) -> float:
    """Smoothed document-model probability of a term seen tf times."""
    _require(dl >= 1, "dl must be >= 1")
    _require(0 <= tf <= dl, "tf must be within [0, dl]")
    _require(uniq >= 1, "uniq must be >= 1")
    _require(0.0 < p_c <= 1.0, "p_c must be in (0, 1]")
    v = params.value
    if params.smoothing == JELINEK_MERCER:
        return (1.0 - v) * (tf / dl) + v * p_c
    if params.smoothing == DIRICHLET:
        return (tf + v * p_c) / (dl + v)
    return max(tf - v, 0.0) / dl + (v * uniq / dl) * p_c


def lm_alpha(dl: int, uniq: int, params: LmParams) -> float:
    """Mass coefficient for unseen terms: p(t|D) = alpha * p(t|C)."""
    _require(dl >= 1, "dl must be >= 1")
    _require(uniq >= 1, "uniq must be >= 1")
    if params.smoothing == JELINEK_MERCER:
        return params.value
    if params.smoothing == DIRICHLET:
        return params.value / (dl + params.value)
    return params.value * uniq / dl


def lm_effective_terms(
    query: QueryVector, index: InvertedIndex
) -> list[tuple[str, int]]:
    """Query terms usable for language-model scoring (cf > 0)."""
    return [(term, qtf) for term, qtf in query.terms if index.cf(term) > 0]


def lm_score(
    query: QueryVector, docid: int, index: InvertedIndex, params: LmParams
) -> float:
    """Query-likelihood score of one document, efficient form.

    score = sum over matched terms of qtf * ln(p_s(t|D) / (alpha * p(t|C)))
            + |Q| * ln(alpha), which ranks identically to the full
    sum of qtf * ln p_s(t|D) over every query term.
    """
    effective = lm_effective_terms(query, index)
    if not effective:
        raise EmptyQueryError("no query term occurs in the collection")
    entry = index.doc_table[docid]
    seen_part = 0.0
    matched_qtf = 0
    for term, qtf in effective:
        tf = 0
        for posting in index.postings(term):
            if posting.docid == docid:
                tf = posting.tf
                break
        if tf == 0:
            continue
        p_c = index.collection_prob(term)
        p_seen = lm_smoothed_prob(tf, entry.dl, entry.uniq, p_c, params)
        seen_part += qtf * (math.log(p_seen) - math.log(p_c))
        matched_qtf += qtf
    qlen = sum(qtf for _, qtf in effective)
    return _fold_unseen_mass(seen_part, matched_qtf, qlen, entry, params)


def _fold_unseen_mass(seen_part, matched_qtf, qlen, entry, params) -> float:
    """Add the (|Q| - matched) * ln(alpha) remainder of the efficient form."""
    alpha = lm_alpha(entry.dl, entry.uniq, params)
    if alpha > 0.0:
        return seen_part + (qlen - matched_qtf) * math.log(alpha)
    # alpha can only vanish for lambda=0 or delta=0: an unsmoothed model
    # assigns zero probability to any unmatched term
    return seen_part if matched_qtf == qlen else float("-inf")


# -- ranking ------------------------------------------------------------------


def _check_fingerprint(index: InvertedIndex, analyzer_fingerprint: str | None):
    if analyzer_fingerprint is not None and analyzer_fingerprint != index.fingerprint:
        raise FingerprintMismatchError(
            "query analyzer fingerprint does not match the index; "
            "re-analyze queries with the indexing configuration"
        )


def rank(
    query: QueryVector,
    index: InvertedIndex,
    params: ModelParams,
    k: int,
    *,
    analyzer_fingerprint: str | None = None,
) -> RankedList:
    """Top-k documents by (score desc, docno asc).

    Candidates are documents matching at least one query term.  Passing
    the querying analyzer's fingerprint enforces that it matches the
    index's stored one.
    """
    _require(k >= 1, "k must be >= 1")
    _check_fingerprint(index, analyzer_fingerprint)
    if isinstance(params, LmParams):
        scores = _score_lm(query, index, params)
    elif isinstance(params, Bm25Params):
        scores = _score_bm25(query, index, params)
    elif isinstance(params, TfIdfParams):
        scores = _score_tfidf(query, index, params)
    else:
        raise TypeError(f"unsupported params type {type(params).__name__}")

    ranked = [
        ScoredDoc(docid, index.docno(docid), score)
        for docid, score in scores.items()
    ]
    ranked.sort(key=lambda d: (-d.score, d.docno))
    return ranked[:k]


def _score_bm25(
    query: QueryVector, index: InvertedIndex, params: Bm25Params
) -> dict[int, float]:
    stats = index.stats
    scores: dict[int, float] = {}
    for term, qtf in query.terms:
        plist = index.postings(term)
        if not plist:
            continue
        df = len(plist)
        qw = bm25_query_term(qtf, params.k3)
        for docid, tf in plist:
            dl = index.doc_table[docid].dl
            w = bm25_doc_term(tf, dl, stats.avdl, df, stats.n_docs, params)
            scores[docid] = scores.get(docid, 0.0) + w * qw
    return scores


def _score_tfidf(
    query: QueryVector, index: InvertedIndex, params: TfIdfParams
) -> dict[int, float]:
    stats = index.stats
    scores: dict[int, float] = {}
    for term, qtf in query.terms:
        plist = index.postings(term)
        if not plist:
            continue
        df = len(plist)
        qw = tfidf_query_term(qtf, df, stats.n_docs, params)
        for docid, tf in plist:
            dl = index.doc_table[docid].dl
            w = tfidf_doc_term(tf, dl, stats.avdl, df, stats.n_docs, params)
            scores[docid] = scores.get(docid, 0.0) + w * qw
    return scores


def _score_lm(
    query: QueryVector, index: InvertedIndex, params: LmParams
) -> dict[int, float]:
    effective = lm_effective_terms(query, index)
    if not effective:
        raise EmptyQueryError("no query term occurs in the collection")
    qlen = sum(qtf for _, qtf in effective)

    # Accumulate the seen-term part per document, then fold in the
    # unseen-mass coefficient once per candidate.
    matched: dict[int, float] = {}
    matched_qtf: dict[int, int] = {}
    for term, qtf in effective:
        p_c = index.collection_prob(term)
        log_pc = math.log(p_c)
        for docid, tf in index.postings(term):
            entry = index.doc_table[docid]
            p_seen = lm_smoothed_prob(tf, entry.dl, entry.uniq, p_c, params)
            matched[docid] = matched.get(docid, 0.0) + qtf * (
                math.log(p_seen) - log_pc
            )
            matched_qtf[docid] = matched_qtf.get(docid, 0) + qtf

    scores: dict[int, float] = {}
    for docid, seen_part in matched.items():
        entry = index.doc_table[docid]
        scores[docid] = _fold_unseen_mass(
            seen_part, matched_qtf[docid], qlen, entry, params
        )
    return scores
