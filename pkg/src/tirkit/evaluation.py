"""bpref evaluation over TREC run files and relevance judgments.

bpref only looks at judged documents, which makes it robust to
incomplete judgment pools: unjudged documents can be inserted anywhere
in a ranking without changing the score.  Topics without judged
relevant documents are reported as unevaluable and excluded from the
mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .corpus import Judgment

TREC_EVAL_VARIANT = "trec_eval"
ORIGINAL_VARIANT = "original"
BPREF_VARIANTS = (TREC_EVAL_VARIANT, ORIGINAL_VARIANT)


class RunEntry(NamedTuple):
    qid: str
    docno: str
    rank: int
    score: float
    tag: str


@dataclass(frozen=True)
class TopicEval:
    qid: str
    bpref: float | None  # None when the topic is unevaluable (R = 0)
    judged_relevant: int
    judged_nonrelevant: int

    @property
    def evaluable(self) -> bool:
        return self.bpref is not None


class RunFormatError(ValueError):
    """A malformed run file or an internally inconsistent ranking."""


def read_run(source, *, encoding: str = "utf-8") -> dict[str, list[RunEntry]]:
    """Parse ``qid Q0 docno rank score tag`` lines, grouped by qid.

    Entries are sorted by rank per topic; duplicate documents or ranks
    within one topic are an error.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding)
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode(encoding)

    grouped: dict[str, list[RunEntry]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        columns = line.split()
        if len(columns) != 6:
            raise RunFormatError(
                f"line {lineno}: expected 6 columns, got {len(columns)}"
            )
        qid, _q0, docno, rank_text, score_text, tag = columns
        try:
            rank_value = int(rank_text)
            score = float(score_text)
        except ValueError:
            raise RunFormatError(
                f"line {lineno}: bad rank or score in {line!r}"
            ) from None
        grouped.setdefault(qid, []).append(
            RunEntry(qid, docno, rank_value, score, tag)
        )

    for qid, entries in grouped.items():
        entries.sort(key=lambda e: e.rank)
        seen_docs: set[str] = set()
        for position, entry in enumerate(entries, start=1):
            if entry.docno in seen_docs:
                raise RunFormatError(
                    f"topic {qid}: document {entry.docno} appears twice"
                )
            seen_docs.add(entry.docno)
            if entry.rank != position:
                raise RunFormatError(
                    f"topic {qid}: ranks are not 1..n without gaps "
                    f"(saw {entry.rank} at position {position})"
                )
    return grouped


def write_run(entries: Iterable[RunEntry], path: str | Path) -> None:
    """Write run entries in TREC format with a pinned float format."""
    with open(path, "w", encoding="utf-8") as f:
        for e in entries:
            f.write(f"{e.qid} Q0 {e.docno} {e.rank} {e.score:.6f} {e.tag}\n")


def _split_judgments(judgments: Iterable[Judgment]):
    relevant: set[str] = set()
    nonrelevant: set[str] = set()
    for j in judgments:
        if j.relevance >= 1:
            relevant.add(j.docno)
        else:
            nonrelevant.add(j.docno)
    return relevant, nonrelevant


def bpref(
    qid: str,
    ranking: Sequence[str],
    judgments: Iterable[Judgment],
    *,
    variant: str = TREC_EVAL_VARIANT,
) -> TopicEval:
    """bpref of one topic's ranking (docnos in rank order).

    Every retrieved judged-relevant document r contributes
    1 - min(n_r, R) / min(R, N) where n_r counts judged-nonrelevant
    documents ranked above it, R and N are the judged relevant and
    nonrelevant counts.  The ``original`` variant divides by plain R.
    Unjudged documents are invisible; relevant documents never
    retrieved contribute zero; with N = 0 every retrieved relevant
    document contributes one.
    """
    if variant not in BPREF_VARIANTS:
        raise ValueError(f"variant must be one of {BPREF_VARIANTS}")
    relevant, nonrelevant = _split_judgments(judgments)
    conflicted = relevant & nonrelevant
    if conflicted:
        raise ValueError(
            f"topic {qid}: conflicting judgments for {sorted(conflicted)}"
        )
    r_count = len(relevant)
    n_count = len(nonrelevant)
    if r_count == 0:
        return TopicEval(qid, None, 0, n_count)

    seen: set[str] = set()
    for docno in ranking:
        if docno in seen:
            raise RunFormatError(f"topic {qid}: document {docno} appears twice")
        seen.add(docno)

    denominator = r_count if variant == ORIGINAL_VARIANT else min(r_count, n_count)
    total = 0.0
    nonrel_above = 0
    for docno in ranking:
        if docno in relevant:
            if denominator == 0:  # no judged nonrelevant: full credit
                total += 1.0
            else:
                total += 1.0 - min(nonrel_above, r_count) / denominator
        elif docno in nonrelevant:
            nonrel_above += 1
    return TopicEval(qid, total / r_count, r_count, n_count)


def evaluate_run(
    run: dict[str, list[RunEntry]],
    qrels: Iterable[Judgment],
    *,
    variant: str = TREC_EVAL_VARIANT,
) -> list[TopicEval]:
    """Per-topic bpref for every judged topic, in ascending qid order.

    Topics present in the qrels but absent from the run still count:
    their relevant documents were never retrieved, so bpref is 0 when
    evaluable.
    """
    by_topic: dict[str, list[Judgment]] = {}
    for j in qrels:
        by_topic.setdefault(j.qid, []).append(j)

    results = []
    for qid in sorted(by_topic, key=_qid_sort_key):
        ranking = [e.docno for e in run.get(qid, [])]
        results.append(bpref(qid, ranking, by_topic[qid], variant=variant))
    return results


def mean_bpref(results: Iterable[TopicEval]) -> float:
    """Arithmetic mean over evaluable topics; error if there are none."""
    values = [r.bpref for r in results if r.bpref is not None]
    if not values:
        raise ValueError("no evaluable topics (every topic has R = 0)")
    return sum(values) / len(values)


def _qid_sort_key(qid: str):
    return (0, int(qid)) if qid.isdigit() else (1, qid)
