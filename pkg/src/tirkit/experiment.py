"""Batch experiment machinery: topic runs, parameter sweeps, run files.

The sweep evaluates a cartesian parameter grid against pre-built
indexes (one per stemming option; ranking parameters never change the
index).  Rows come out in deterministic grid order and the argmax row
per (model, stemming) cell is flagged, earliest row winning ties.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .analysis import Analyzer, AnalyzerConfig
from .corpus import Judgment, Topic
from .evaluation import RunEntry, evaluate_run, mean_bpref
from .index import InvertedIndex
from .ranking import (
    ABSOLUTE_DISCOUNT,
    DIRICHLET,
    JELINEK_MERCER,
    PRESETS,
    Bm25Params,
    EmptyQueryError,
    LmParams,
    ModelParams,
    QueryVector,
    TfIdfParams,
    rank,
)

MODELS = ("tfidf", "okapi", "lm")
DEFAULT_TOP_K = 1000


class ConfigError(ValueError):
    """Bad experiment configuration (unknown model, preset, or grid)."""


def resolve_preset(name: str) -> ModelParams:
    if name not in PRESETS:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {name!r}; available presets: {known}")
    return PRESETS[name]


def load_param_file(path: str | Path) -> dict[str, str]:
    """Read ``key = value`` lines; '#' comments; later keys win."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}: line {lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def make_params(model: str, settings: dict[str, float | str]) -> ModelParams:
    """Build model parameters from a flat settings mapping."""
    if model == "tfidf":
        return TfIdfParams(
            k1=float(settings.get("k1", 1.0)),
            k3=float(settings.get("k3", 1000.0)),
            b=float(settings.get("b", 0.2)),
        )
    if model == "okapi":
        return Bm25Params(
            k1=float(settings.get("k1", 1.4)),
            k3=float(settings.get("k3", 1000.0)),
            b=float(settings.get("b", 0.1)),
            clamp_negative_idf=bool(settings.get("clamp_negative_idf", True)),
        )
    if model == "lm":
        smoothing = str(settings.get("smoothing", DIRICHLET))
        if smoothing == JELINEK_MERCER:
            value = settings.get("lambda", settings.get("value"))
        elif smoothing == DIRICHLET:
            value = settings.get("mu", settings.get("value"))
        elif smoothing == ABSOLUTE_DISCOUNT:
            value = settings.get("delta", settings.get("value"))
        else:
            raise ConfigError(f"unknown smoothing {smoothing!r}")
        if value is None:
            raise ConfigError(f"smoothing {smoothing} needs a parameter value")
        return LmParams(smoothing, float(value))
    raise ConfigError(f"unknown model {model!r}; expected one of {MODELS}")


@dataclass(frozen=True)
class ExperimentConfig:
    """One batch experiment: corpus, analysis pipeline, model, outputs.

    The model comes either from a named preset or from ``model`` plus
    free-form ``settings``; :meth:`resolve_params` turns either into
    concrete parameters.
    """

    docs: tuple[str, ...]
    analyzer: AnalyzerConfig
    model: str | None = None
    preset: str | None = None
    settings: dict = field(default_factory=dict)
    k: int = DEFAULT_TOP_K
    index_path: str | None = None
    run_path: str | None = None
    tag: str = "tirkit"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ConfigError("top-k must be >= 1")
        if self.preset is None and self.model is None:
            raise ConfigError("give either a preset or a model")

    def resolve_params(self) -> ModelParams:
        if self.preset is not None:
            return resolve_preset(self.preset)
        return make_params(self.model, self.settings)


@dataclass
class BatchResult:
    entries: list[RunEntry]
    skipped_topics: list[str]  # empty effective query after analysis


def batch_topics(
    index: InvertedIndex,
    analyzer: Analyzer,
    topics: Sequence[Topic],
    params: ModelParams,
    *,
    k: int = DEFAULT_TOP_K,
    tag: str = "tirkit",
) -> BatchResult:
    """Rank every topic; topics with empty effective queries emit nothing."""
    entries: list[RunEntry] = []
    skipped: list[str] = []
    fingerprint = analyzer.fingerprint()
    for topic in topics:
        query = QueryVector.from_terms(analyzer.analyze(topic.text))
        if query.qlen == 0:
            skipped.append(topic.qid)
            continue
        try:
            ranked = rank(
                query, index, params, k, analyzer_fingerprint=fingerprint
            )
        except EmptyQueryError:
            skipped.append(topic.qid)
            continue
        for position, doc in enumerate(ranked, start=1):
            entries.append(
                RunEntry(topic.qid, doc.docno, position, doc.score, tag)
            )
    return BatchResult(entries=entries, skipped_topics=skipped)


@dataclass(frozen=True)
class SweepSpec:
    """A parameter grid swept over one model and several stemming options."""

    model: str
    grid: tuple[tuple[str, tuple[float, ...]], ...]  # (axis, values), in order
    fixed: dict[str, float | str] = field(default_factory=dict)
    k: int = DEFAULT_TOP_K
    metric: str = "bpref"

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if not self.grid or any(not values for _, values in self.grid):
            raise ConfigError("every grid axis needs at least one value")
        if self.metric != "bpref":
            raise ConfigError("bpref is the only supported sweep metric")

    def points(self) -> list[dict[str, float]]:
        axes = [axis for axis, _ in self.grid]
        combos = itertools.product(*(values for _, values in self.grid))
        return [dict(zip(axes, combo)) for combo in combos]


@dataclass(frozen=True)
class SweepRow:
    model: str
    stemming: str
    point: tuple[tuple[str, float], ...]
    bpref: float
    is_best: bool = False


def run_sweep(
    spec: SweepSpec,
    indexes: dict[str, tuple[InvertedIndex, Analyzer]],
    topics: Sequence[Topic],
    qrels: Iterable[Judgment],
    *,
    tag: str = "sweep",
) -> list[SweepRow]:
    """Evaluate the full grid; any failing grid point aborts the sweep."""
    qrels = list(qrels)
    rows: list[SweepRow] = []
    for stemming, (index, analyzer) in indexes.items():
        best_at = -1
        best_value = float("-inf")
        cell_rows: list[SweepRow] = []
        for point in spec.points():
            settings: dict[str, float | str] = dict(spec.fixed)
            settings.update(point)
            try:
                params = make_params(spec.model, settings)
                result = batch_topics(
                    index, analyzer, topics, params, k=spec.k, tag=tag
                )
                grouped: dict[str, list[RunEntry]] = {}
                for entry in result.entries:
                    grouped.setdefault(entry.qid, []).append(entry)
                value = mean_bpref(evaluate_run(grouped, qrels))
            except Exception as exc:
                raise ConfigError(
                    f"sweep point {spec.model}/{stemming} {point} failed: {exc}"
                ) from exc
            if value > best_value:
                best_value = value
                best_at = len(cell_rows)
            cell_rows.append(
                SweepRow(
                    model=spec.model,
                    stemming=stemming,
                    point=tuple(point.items()),
                    bpref=value,
                )
            )
        cell_rows[best_at] = SweepRow(
            model=cell_rows[best_at].model,
            stemming=cell_rows[best_at].stemming,
            point=cell_rows[best_at].point,
            bpref=cell_rows[best_at].bpref,
            is_best=True,
        )
        rows.extend(cell_rows)
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    """Render sweep rows as CSV: one row per grid point, argmax flagged."""
    if not rows:
        return ""
    axes = [axis for axis, _ in rows[0].point]
    lines = ["model,stemming," + ",".join(axes) + ",bpref,is_best"]
    for row in rows:
        values = dict(row.point)
        cells = [row.model, row.stemming]
        cells += [_format_number(values[axis]) for axis in axes]
        cells.append(f"{row.bpref:.4f}")
        cells.append("1" if row.is_best else "0")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def sweep_summary(rows: Sequence[SweepRow]) -> str:
    """The argmax row per (model, stemming) cell, one line each."""
    lines = []
    for row in rows:
        if row.is_best:
            params = " ".join(
                f"{axis}={_format_number(v)}" for axis, v in row.point
            )
            lines.append(
                f"best {row.model} {row.stemming}: {params} bpref={row.bpref:.4f}"
            )
    return "\n".join(lines)


def _format_number(value: float) -> str:
    return f"{value:g}"
