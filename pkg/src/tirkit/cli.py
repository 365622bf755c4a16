"""Command-line interface: index, search, batch, eval, sweep.

Values resolve in priority order: explicit flag, then the parameter
file (``--config`` or the TIRKIT_CONFIG environment variable), then the
built-in default.  Every error path exits nonzero.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, corpus, evaluation, experiment, index as index_mod, ranking

CONFIG_ENV_VAR = "TIRKIT_CONFIG"


def _analyzer_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--casefold", choices=analysis.CASEFOLD_MODES)
    parser.add_argument("--apostrophes", choices=analysis.APOSTROPHE_POLICIES)
    parser.add_argument("--stopwords", metavar="FILE")
    parser.add_argument("--stemmer", choices=analysis.STEMMERS)
    parser.add_argument("--lemma-dict", metavar="FILE")


def _model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=experiment.MODELS)
    parser.add_argument("--preset", help="named parameter preset")
    parser.add_argument("--k1", type=float)
    parser.add_argument("--k3", type=float)
    parser.add_argument("--b", type=float)
    parser.add_argument("--smoothing", choices=ranking.SMOOTHING_METHODS)
    parser.add_argument("--lambda", dest="lambda_", type=float, metavar="LAMBDA")
    parser.add_argument("--mu", type=float)
    parser.add_argument("--delta", type=float)
    parser.add_argument("--no-idf-clamp", action="store_true",
                        help="allow negative BM25 idf")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tirkit",
        description="Turkish-aware ad-hoc retrieval experiment toolkit",
    )
    parser.add_argument("--config", metavar="FILE",
                        help=f"parameter file (default: ${CONFIG_ENV_VAR})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build and persist an index")
    p_index.add_argument("--docs", action="append", required=True, metavar="FILE")
    p_index.add_argument("--out", required=True, metavar="FILE")
    p_index.add_argument("--encoding", choices=("utf-8", "iso-8859-9"),
                         default="utf-8")
    _analyzer_args(p_index)

    p_search = sub.add_parser("search", help="run one query against an index")
    p_search.add_argument("--index", required=True, metavar="FILE")
    p_search.add_argument("--query", required=True)
    p_search.add_argument("--k", type=int)
    p_search.add_argument("--tag")
    _analyzer_args(p_search)
    _model_args(p_search)

    p_batch = sub.add_parser("batch", help="rank a topic file into a run file")
    p_batch.add_argument("--index", required=True, metavar="FILE")
    p_batch.add_argument("--topics", required=True, metavar="FILE")
    p_batch.add_argument("--out", required=True, metavar="FILE")
    p_batch.add_argument("--k", type=int)
    p_batch.add_argument("--tag")
    p_batch.add_argument("--encoding", choices=("utf-8", "iso-8859-9"),
                         default="utf-8", help="topic file encoding")
    _analyzer_args(p_batch)
    _model_args(p_batch)

    p_eval = sub.add_parser("eval", help="bpref of a run file against qrels")
    p_eval.add_argument("--run", required=True, metavar="FILE")
    p_eval.add_argument("--qrels", required=True, metavar="FILE")
    p_eval.add_argument("--csv", metavar="FILE")
    p_eval.add_argument("--bpref-variant", choices=evaluation.BPREF_VARIANTS,
                        default=evaluation.TREC_EVAL_VARIANT)

    p_sweep = sub.add_parser("sweep", help="parameter grid over stemming options")
    p_sweep.add_argument("--model", required=True, choices=experiment.MODELS)
    p_sweep.add_argument("--index", action="append", required=True,
                         metavar="STEMMER=FILE",
                         help="one per stemming option, e.g. affix=idx.tir")
    p_sweep.add_argument("--topics", required=True, metavar="FILE")
    p_sweep.add_argument("--qrels", required=True, metavar="FILE")
    p_sweep.add_argument("--grid", action="append", required=True,
                         metavar="PARAM=V1,V2,...")
    p_sweep.add_argument("--fixed", action="append", default=[],
                         metavar="PARAM=VALUE")
    p_sweep.add_argument("--smoothing", choices=ranking.SMOOTHING_METHODS)
    p_sweep.add_argument("--out", required=True, metavar="FILE")
    p_sweep.add_argument("--k", type=int)
    _analyzer_args(p_sweep)

    return parser


def _load_config(args) -> dict[str, str]:
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return {}
    if not Path(path).exists():
        raise experiment.ConfigError(f"config file not found: {path}")
    return experiment.load_param_file(path)


def _resolve(args, config: dict[str, str], key: str, default=None, cast=None):
    """Flag value if given, else config file value, else *default*."""
    value = getattr(args, key, None)
    if value is None:
        raw = config.get(key.replace("_", "-"), config.get(key))
        if raw is None:
            return default
        value = raw
    if cast is not None and isinstance(value, str):
        return cast(value)
    return value


def _build_analyzer(args, config) -> analysis.Analyzer:
    stopwords_path = _resolve(args, config, "stopwords")
    casefold = _resolve(args, config, "casefold", "turkish")
    stopwords = (
        analysis.load_stopwords(stopwords_path, casefold)
        if stopwords_path
        else frozenset()
    )
    cfg = analysis.AnalyzerConfig(
        casefold=casefold,
        apostrophes=_resolve(args, config, "apostrophes", "truncate-after"),
        stopwords=stopwords,
        stemmer=_resolve(args, config, "stemmer", "none"),
        lemma_dict=_resolve(args, config, "lemma_dict"),
    )
    return analysis.Analyzer(cfg)


def _build_params(args, config) -> ranking.ModelParams:
    preset = _resolve(args, config, "preset")
    if preset is not None:
        return experiment.resolve_preset(preset)
    model = _resolve(args, config, "model")
    if model is None:
        raise experiment.ConfigError("give either --preset or --model")
    settings: dict[str, float | str] = {}
    for key in ("k1", "k3", "b"):
        value = _resolve(args, config, key, cast=float)
        if value is not None:
            settings[key] = value
    smoothing = _resolve(args, config, "smoothing")
    if smoothing is not None:
        settings["smoothing"] = smoothing
    for key, name in (("lambda_", "lambda"), ("mu", "mu"), ("delta", "delta")):
        value = _resolve(args, config, key, cast=float)
        if value is None and name in config:
            value = float(config[name])
        if value is not None:
            settings[name] = value
    if getattr(args, "no_idf_clamp", False):
        settings["clamp_negative_idf"] = False
    return experiment.make_params(model, settings)


def _parse_docs(paths: list[str], encoding: str, warn):
    """Stream documents from every input file in order."""
    for path in paths:
        if not Path(path).exists():
            raise experiment.ConfigError(f"document file not found: {path}")
        with open(path, "rb") as stream:
            yield from corpus.parse_trec_docs(
                stream,
                encoding=encoding,
                on_error=lambda err, p=path: warn(f"{p}: {err}"),
            )


def cmd_index(args, config) -> int:
    analyzer = _build_analyzer(args, config)
    errors: list[str] = []

    def warn(message: str) -> None:
        errors.append(message)
        print(f"warning: {message}", file=sys.stderr)

    documents = _parse_docs(args.docs, args.encoding, warn)
    built = index_mod.build_index(documents, analyzer)
    if errors and built.stats.n_docs == 0:
        print("error: no documents indexed", file=sys.stderr)
        return 1
    index_mod.write_index(built, args.out)
    stats = built.stats
    print(
        f"indexed {stats.n_docs} documents, vocabulary {stats.vocab_size}, "
        f"avdl {stats.avdl:.2f} -> {args.out}"
    )
    return 0


def _print_run_lines(entries) -> None:
    for e in entries:
        print(f"{e.qid} Q0 {e.docno} {e.rank} {e.score:.6f} {e.tag}")


def cmd_search(args, config) -> int:
    analyzer = _build_analyzer(args, config)
    params = _build_params(args, config)
    idx = index_mod.read_index(args.index)
    k = _resolve(args, config, "k", experiment.DEFAULT_TOP_K, cast=int)
    tag = _resolve(args, config, "tag", "tirkit")
    query = ranking.QueryVector.from_terms(analyzer.analyze(args.query))
    if query.qlen == 0:
        print("error: query is empty after analysis", file=sys.stderr)
        return 1
    try:
        ranked = ranking.rank(
            query, idx, params, k, analyzer_fingerprint=analyzer.fingerprint()
        )
    except ranking.EmptyQueryError:
        print("error: no query term occurs in the collection", file=sys.stderr)
        return 1
    _print_run_lines(
        evaluation.RunEntry("0", doc.docno, position, doc.score, tag)
        for position, doc in enumerate(ranked, start=1)
    )
    return 0


def cmd_batch(args, config) -> int:
    analyzer = _build_analyzer(args, config)
    params = _build_params(args, config)
    idx = index_mod.read_index(args.index)
    k = _resolve(args, config, "k", experiment.DEFAULT_TOP_K, cast=int)
    tag = _resolve(args, config, "tag", "tirkit")
    topics = corpus.parse_topics(args.topics, encoding=args.encoding)
    if analyzer.fingerprint() != idx.fingerprint:
        print(
            "error: analyzer fingerprint does not match the index; "
            "pass the same analysis flags used at indexing time",
            file=sys.stderr,
        )
        return 1
    result = experiment.batch_topics(idx, analyzer, topics, params, k=k, tag=tag)
    evaluation.write_run(result.entries, args.out)
    for qid in result.skipped_topics:
        print(f"topic {qid}: empty effective query, no results emitted",
              file=sys.stderr)
    print(
        f"ranked {len(topics) - len(result.skipped_topics)}/{len(topics)} "
        f"topics -> {args.out}"
    )
    return 0


def cmd_eval(args, config) -> int:
    run = evaluation.read_run(args.run)
    qrels = corpus.parse_qrels(args.qrels)
    results = evaluation.evaluate_run(run, qrels, variant=args.bpref_variant)
    for r in results:
        if r.evaluable:
            print(f"bpref {r.qid} {r.bpref:.4f}")
        else:
            print(f"bpref {r.qid} unevaluable (no judged relevant documents)")
    mean = evaluation.mean_bpref(results)
    evaluable = sum(1 for r in results if r.evaluable)
    print(f"bpref all {mean:.4f} ({evaluable} topics)")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as f:
            f.write("qid,bpref,judged_relevant,judged_nonrelevant\n")
            for r in results:
                value = f"{r.bpref:.4f}" if r.evaluable else ""
                f.write(
                    f"{r.qid},{value},{r.judged_relevant},{r.judged_nonrelevant}\n"
                )
            f.write(f"all,{mean:.4f},,\n")
    return 0


def _parse_axis(spec: str) -> tuple[str, tuple[float, ...]]:
    if "=" not in spec:
        raise experiment.ConfigError(f"bad grid axis {spec!r}; use PARAM=V1,V2")
    name, values = spec.split("=", 1)
    try:
        parsed = tuple(float(v) for v in values.split(",") if v != "")
    except ValueError:
        raise experiment.ConfigError(f"bad grid values in {spec!r}") from None
    if not parsed:
        raise experiment.ConfigError(f"grid axis {name} has no values")
    return name.strip(), parsed


def cmd_sweep(args, config) -> int:
    fixed: dict[str, float | str] = {}
    if args.smoothing:
        fixed["smoothing"] = args.smoothing
    for item in args.fixed:
        if "=" not in item:
            raise experiment.ConfigError(f"bad --fixed {item!r}; use PARAM=VALUE")
        key, value = item.split("=", 1)
        fixed[key.strip()] = float(value)
    spec = experiment.SweepSpec(
        model=args.model,
        grid=tuple(_parse_axis(axis) for axis in args.grid),
        fixed=fixed,
        k=_resolve(args, config, "k", experiment.DEFAULT_TOP_K, cast=int),
    )

    indexes: dict[str, tuple[index_mod.InvertedIndex, analysis.Analyzer]] = {}
    for item in args.index:
        if "=" not in item:
            raise experiment.ConfigError(
                f"bad --index {item!r}; use STEMMER=FILE with stemmer one of "
                f"{analysis.STEMMERS}"
            )
        stemmer, path = item.split("=", 1)
        if stemmer not in analysis.STEMMERS:
            raise experiment.ConfigError(f"unknown stemming option {stemmer!r}")
        sub_args = argparse.Namespace(**vars(args))
        sub_args.stemmer = stemmer
        analyzer = _build_analyzer(sub_args, config)
        idx = index_mod.read_index(path)
        if analyzer.fingerprint() != idx.fingerprint:
            raise experiment.ConfigError(
                f"analyzer for stemming option {stemmer!r} does not match "
                f"index {path}"
            )
        indexes[stemmer] = (idx, analyzer)

    topics = corpus.parse_topics(args.topics)
    qrels = corpus.parse_qrels(args.qrels)
    rows = experiment.run_sweep(spec, indexes, topics, qrels)
    Path(args.out).write_text(experiment.sweep_csv(rows), encoding="utf-8")
    summary = experiment.sweep_summary(rows)
    if summary:
        print(summary)
    print(f"{len(rows)} grid rows -> {args.out}")
    return 0


_COMMANDS = {
    "index": cmd_index,
    "search": cmd_search,
    "batch": cmd_batch,
    "eval": cmd_eval,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        return _COMMANDS[args.command](args, config)
    except (
        experiment.ConfigError,
        corpus.CorpusParseError,
        evaluation.RunFormatError,
        index_mod.DuplicateDocnoError,
        index_mod.EmptyCollectionError,
        index_mod.IndexFileError,
        ranking.EmptyQueryError,
        ranking.FingerprintMismatchError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
