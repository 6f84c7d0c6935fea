"""Pipeline orchestration: stage subcommands over serialized artifacts,
a flat key = value configuration file, digest-based stage caching, and
logging to standard error.

Every subcommand accepts ``--config``; explicit flags win over config
values. Stages write their artifact plus a manifest line (input digests,
parameters, timestamp) under the output directory, and ``pipeline``
skips any stage whose manifest still matches its inputs.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, fields

from . import align as align_mod
from . import evaluation, xling
from .corpus import (
    CooccurrenceTable,
    count_cooccurrences,
    load_stoplist,
    read_sentences,
    split_words,
)
from .embeddings import SkipgramParams, load_vectors, save_vectors, train_skipgram
from .errors import DataFormatError, MfskitError, NumericalError, UsageError
from .mfs import (
    Chi,
    MfsResources,
    predict_many,
    read_predictions,
    write_predictions,
)
from .stoplist import DEFAULT_STOPLIST
from .wordnet import compute_ic, load_ic, load_wordnet, save_ic

logger = logging.getLogger("mfskit")


# ---------------------------------------------------------------------------
# configuration


@dataclass
class PipelineConfig:
    corpus: str = ""
    bitext_source: str = ""
    bitext_target: str = ""
    wordnet: str = ""
    gold: str = ""
    stoplist: str = ""
    output_dir: str = "out"
    k: int = 20
    chi: str = "0.5,0.4,0.1"
    keyword_mode: str = "extended"
    method: str = "wct"
    dim: int = 200
    window: int = 5
    negatives: int = 5
    min_count: int = 5
    subsample: float = 1e-3
    epochs: int = 5
    lr0: float = 0.025
    align_iterations: int = 10
    pairs: int = 5000
    min_total: int = 5
    seed: int = 1
    no_examples: bool = False
    backoff: str = "random"

    def validate(self) -> None:
        Chi.parse(self.chi)  # raises on malformed or non-normalized weights
        if self.k < 1:
            raise UsageError("k must be >= 1")
        if self.keyword_mode not in ("extended", "umfswe", "light"):
            raise UsageError(f"unknown keyword_mode {self.keyword_mode!r}")
        if self.method not in ("wct", "companion", "umfswe", "random"):
            raise UsageError(f"unknown method {self.method!r}")
        if self.backoff not in ("none", "random"):
            raise UsageError(f"unknown backoff {self.backoff!r}")

    def to_text(self) -> str:
        lines = ["# mfskit pipeline configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"


def _coerce(name: str, kind: type, raw: str):
    if kind is bool:
        lowered = raw.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"config key {name}: expected a boolean, got {raw!r}")
    try:
        return kind(raw.strip())
    except ValueError:
        raise UsageError(f"config key {name}: expected {kind.__name__}, got {raw!r}")


def parse_config(text: str) -> PipelineConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name: f.type for f in fields(PipelineConfig)}
    types = {
        name: (bool if "bool" in str(t) else int if "int" in str(t)
               else float if "float" in str(t) else str)
        for name, t in known.items()
    }
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise UsageError(f"config line {lineno}: expected 'key = value'")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in known:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, types[key], raw)
    return PipelineConfig(**values)


def load_config(path: str | os.PathLike) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    """Explicit command-line flags win over config file values."""
    updates = {}
    for f in fields(PipelineConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            updates[f.name] = value
    if not updates:
        return config
    merged = {f.name: getattr(config, f.name) for f in fields(PipelineConfig)}
    merged.update(updates)
    return PipelineConfig(**merged)


# ---------------------------------------------------------------------------
# manifests and stage caching


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


class Manifest:
    """Append-only JSONL of stage runs; the last entry per stage wins."""

    def __init__(self, output_dir: str):
        self.path = os.path.join(output_dir, "manifest.jsonl")

    def _latest(self) -> dict[str, dict]:
        latest: dict[str, dict] = {}
        if os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        entry = json.loads(line)
                        latest[entry["stage"]] = entry
        return latest

    def is_current(
        self, stage: str, inputs: list[str], params: dict, outputs: list[str]
    ) -> bool:
        entry = self._latest().get(stage)
        if entry is None:
            return False
        if not all(os.path.exists(p) for p in outputs):
            return False
        current = {p: _sha256(p) for p in inputs}
        if entry.get("inputs") != current or entry.get("params") != params:
            logger.info("stage %s: manifest stale, re-running", stage)
            return False
        return True

    def record(
        self, stage: str, inputs: list[str], params: dict, outputs: list[str]
    ) -> None:
        entry = {
            "stage": stage,
            "inputs": {p: _sha256(p) for p in inputs},
            "params": params,
            "outputs": outputs,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
        }
        os.makedirs(os.path.dirname(self.path), exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


class StageContext:
    """Shared lazy-loaded resources across the stages of one run."""

    def __init__(self, config: PipelineConfig):
        config.validate()
        self.config = config
        self._db = None
        self._stoplist = None
        os.makedirs(config.output_dir, exist_ok=True)
        self.manifest = Manifest(config.output_dir)

    def artifact(self, name: str) -> str:
        return os.path.join(self.config.output_dir, name)

    @property
    def db(self):
        if self._db is None:
            self._require("wordnet", self.config.wordnet, "wordnet directory")
            self._db = load_wordnet(self.config.wordnet)
        return self._db

    @property
    def stop(self) -> frozenset[str]:
        if self._stoplist is None:
            if self.config.stoplist:
                self._stoplist = load_stoplist(self.config.stoplist)
            else:
                self._stoplist = DEFAULT_STOPLIST
        return self._stoplist

    @staticmethod
    def _require(stage: str, path: str, what: str) -> None:
        if not path:
            raise DataFormatError(f"stage {stage}: no {what} configured")
        if not os.path.exists(path):
            raise DataFormatError(f"stage {stage}: missing {what} {path!r}")

    def run(self, stage, inputs, params, outputs, runner, force=False) -> str:
        for path in inputs:
            if not os.path.exists(path):
                raise DataFormatError(f"stage {stage}: missing input {path!r}")
        if not force and self.manifest.is_current(stage, inputs, params, outputs):
            logger.info("stage %s: cached, skipping", stage)
            return "cached"
        logger.info("stage %s: running", stage)
        runner()
        self.manifest.record(stage, inputs, params, outputs)
        return "run"


# ---------------------------------------------------------------------------
# stages


def stage_corpus_stats(ctx: StageContext, force=False) -> str:
    cfg = ctx.config
    ctx._require("corpus-stats", cfg.corpus, "corpus")
    ctx._require("corpus-stats", cfg.wordnet, "wordnet directory")
    inputs = [cfg.corpus] + ([cfg.stoplist] if cfg.stoplist else [])
    params = {"min_total": cfg.min_total, "wordnet": cfg.wordnet}
    outputs = [ctx.artifact("cooc.tsv"), ctx.artifact("ic.tsv")]

    def runner():
        table = count_cooccurrences(read_sentences(cfg.corpus, ctx.db), ctx.stop)
        if cfg.min_total > 1:
            table.prune(cfg.min_total)
        table.save(outputs[0])
        save_ic(compute_ic(table.totals, ctx.db), outputs[1])

    return ctx.run("corpus-stats", inputs, params, outputs, runner, force)


def _skipgram_params(cfg: PipelineConfig, seed: int) -> SkipgramParams:
    return SkipgramParams(
        dim=cfg.dim,
        window=cfg.window,
        negatives=cfg.negatives,
        min_count=cfg.min_count,
        subsample=cfg.subsample,
        epochs=cfg.epochs,
        lr0=cfg.lr0,
        seed=seed,
    )


def stage_train_vectors(ctx: StageContext, side: str, force=False) -> str:
    """``english`` trains on the lemmatized corpus, ``foreign`` on the
    surface tokens of the bitext target side."""
    cfg = ctx.config
    if side == "english":
        ctx._require("train-vectors-en", cfg.corpus, "corpus")
        source, out_name, seed = cfg.corpus, "vectors.en.txt", cfg.seed
    elif side == "foreign":
        ctx._require("train-vectors-fr", cfg.bitext_target, "bitext target side")
        source, out_name, seed = cfg.bitext_target, "vectors.fr.txt", cfg.seed + 1
    else:
        raise UsageError(f"unknown side {side!r}")
    stage = f"train-vectors-{'en' if side == 'english' else 'fr'}"
    params = {
        "dim": cfg.dim, "window": cfg.window, "negatives": cfg.negatives,
        "min_count": cfg.min_count, "subsample": cfg.subsample,
        "epochs": cfg.epochs, "lr0": cfg.lr0, "seed": seed, "side": side,
    }
    outputs = [ctx.artifact(out_name)]

    def runner():
        if side == "english":
            sentences = [
                [t.lemma for t in sentence]
                for sentence in read_sentences(source, ctx.db)
            ]
        else:
            with open(source, encoding="utf-8") as fh:
                sentences = [split_words(line) for line in fh]
        sentences = [s for s in sentences if s]
        space = train_skipgram(
            sentences, _skipgram_params(cfg, seed), language=side
        )
        save_vectors(space, outputs[0])

    return ctx.run(stage, [source], params, outputs, runner, force)


def stage_align(ctx: StageContext, force=False) -> str:
    cfg = ctx.config
    ctx._require("align", cfg.bitext_source, "bitext source side")
    ctx._require("align", cfg.bitext_target, "bitext target side")
    inputs = [cfg.bitext_source, cfg.bitext_target]
    params = {"iterations": cfg.align_iterations, "wordnet": cfg.wordnet}
    outputs = [ctx.artifact("mft.tsv")]

    def runner():
        bitext = align_mod.load_bitext(cfg.bitext_source, cfg.bitext_target)
        forward = align_mod.train_model1(bitext, cfg.align_iterations)
        reverse = align_mod.train_model1(
            bitext, cfg.align_iterations, direction="reverse"
        )
        links = align_mod.align_bitext(bitext, forward, reverse)
        align_mod.save_mft(align_mod.extract_mft(bitext, links, ctx.db), outputs[0])

    return ctx.run("align", inputs, params, outputs, runner, force)


def stage_learn_matrix(ctx: StageContext, force=False) -> str:
    cfg = ctx.config
    inputs = [
        ctx.artifact("mft.tsv"),
        ctx.artifact("vectors.en.txt"),
        ctx.artifact("vectors.fr.txt"),
        ctx.artifact("cooc.tsv"),
    ]
    params = {"pairs": cfg.pairs}
    outputs = [ctx.artifact("tmatrix.txt")]

    def runner():
        mft = align_mod.load_mft(inputs[0])
        english = load_vectors(inputs[1], language="english")
        foreign = load_vectors(inputs[2], language="foreign")
        totals = CooccurrenceTable.load(inputs[3]).totals
        pairs = xling.build_training_pairs(mft, english, foreign, totals, n=cfg.pairs)
        xling.save_matrix(xling.learn_matrix_lsq(pairs), outputs[0])

    return ctx.run("learn-matrix", inputs, params, outputs, runner, force)


def _prediction_words(ctx: StageContext, cooc: CooccurrenceTable | None):
    cfg = ctx.config
    if cfg.gold:
        ctx._require("predict", cfg.gold, "gold file")
        gold, _ = evaluation.load_gold(cfg.gold, ctx.db)
        return sorted(w for w in gold.words() if ctx.db.senses(w))
    if cooc is None:
        raise DataFormatError(
            "stage predict: need a gold file or a co-occurrence table "
            "to choose the word types to predict"
        )
    return sorted(w for w in cooc.words() if ctx.db.senses(w))


def stage_predict(ctx: StageContext, method: str | None = None, force=False) -> str:
    cfg = ctx.config
    method = method or cfg.method
    stage = f"predict-{method}"
    inputs: list[str] = []
    if cfg.gold:
        inputs.append(cfg.gold)
    needs_cooc = method in ("wct", "companion") or not cfg.gold
    if needs_cooc:
        inputs.append(ctx.artifact("cooc.tsv"))
    if method == "companion":
        inputs.append(ctx.artifact("ic.tsv"))
    if method in ("wct", "umfswe"):
        inputs.append(ctx.artifact("vectors.en.txt"))
    if method == "wct":
        for name in ("vectors.fr.txt", "mft.tsv", "tmatrix.txt"):
            if os.path.exists(ctx.artifact(name)):
                inputs.append(ctx.artifact(name))
    params = {
        "method": method, "k": cfg.k, "chi": cfg.chi,
        "keyword_mode": cfg.keyword_mode, "no_examples": cfg.no_examples,
        "seed": cfg.seed,
    }
    outputs = [ctx.artifact(f"predictions.{method}.tsv")]

    def runner():
        cooc = (
            CooccurrenceTable.load(ctx.artifact("cooc.tsv")) if needs_cooc else None
        )
        resources = MfsResources(db=ctx.db, cooc=cooc, k=cfg.k, stoplist=ctx.stop)
        if method == "companion":
            resources.ic = load_ic(ctx.artifact("ic.tsv"))
        if method in ("wct", "umfswe"):
            resources.english = load_vectors(ctx.artifact("vectors.en.txt"))
        if method == "wct":
            if os.path.exists(ctx.artifact("vectors.fr.txt")):
                resources.foreign = load_vectors(ctx.artifact("vectors.fr.txt"))
            if os.path.exists(ctx.artifact("mft.tsv")):
                resources.mft = align_mod.load_mft(ctx.artifact("mft.tsv"))
            if os.path.exists(ctx.artifact("tmatrix.txt")):
                resources.tmatrix = xling.load_matrix(ctx.artifact("tmatrix.txt"))
        words = _prediction_words(ctx, cooc)
        predictions, skipped = predict_many(
            words,
            method,
            resources,
            chi=Chi.parse(cfg.chi),
            mode=cfg.keyword_mode,
            include_examples=not cfg.no_examples,
            seed=cfg.seed,
        )
        logger.info(
            "predict %s: %d predictions, %d words without one",
            method, len(predictions), len(skipped),
        )
        write_predictions(predictions, outputs[0])

    return ctx.run(stage, inputs, params, outputs, runner, force)


# ---------------------------------------------------------------------------
# evaluation commands (report to stdout, never cached)


def command_eval_intrinsic(ctx: StageContext, args) -> None:
    cfg = ctx.config
    ctx._require("eval-intrinsic", cfg.gold, "gold file")
    predictions_path = args.predictions or ctx.artifact(
        f"predictions.{cfg.method}.tsv"
    )
    ctx._require("eval-intrinsic", predictions_path, "predictions file")
    gold, _ = evaluation.load_gold(cfg.gold, ctx.db)
    predictions = read_predictions(predictions_path)
    words = None
    if args.noun_sample:
        words = sorted(evaluation.noun_sample_filter(gold, ctx.db))
    result = evaluation.intrinsic_accuracy(
        predictions, gold, ctx.db,
        scope=args.scope, backoff_seed=cfg.seed, words=words,
    )
    expectation = evaluation.random_baseline_expectation(
        gold, ctx.db, scope=args.scope, words=words
    )
    print(f"words\t{result.n_words}")
    print(f"accuracy\t{result.accuracy:.6g}")
    print(f"coverage\t{result.coverage:.6g}")
    print(f"backoffs\t{result.n_backoff}")
    print(f"random_expectation\t{expectation:.6g}")


def command_eval_wsd(ctx: StageContext, args) -> None:
    cfg = ctx.config
    ctx._require("eval-wsd", cfg.gold, "gold file")
    predictions_path = args.predictions or ctx.artifact(
        f"predictions.{cfg.method}.tsv"
    )
    ctx._require("eval-wsd", predictions_path, "predictions file")
    _, dataset = evaluation.load_gold(cfg.gold, ctx.db)
    predictions = read_predictions(predictions_path)
    result = evaluation.wsd_f1(
        predictions, dataset, ctx.db, backoff=cfg.backoff, backoff_seed=cfg.seed
    )
    print(f"instances\t{result.total}")
    print(f"attempted\t{result.attempted}")
    print(f"precision\t{result.precision:.6g}")
    print(f"recall\t{result.recall:.6g}")
    print(f"f1\t{result.f1:.6g}")


def command_ablate(ctx: StageContext, args) -> None:
    cfg = ctx.config
    ctx._require("ablate", cfg.gold, "gold file")
    gold, dataset = evaluation.load_gold(cfg.gold, ctx.db)
    cooc = CooccurrenceTable.load(ctx.artifact("cooc.tsv"))
    resources = MfsResources(
        db=ctx.db,
        english=load_vectors(ctx.artifact("vectors.en.txt")),
        cooc=cooc,
        ic=load_ic(ctx.artifact("ic.tsv")),
        k=cfg.k,
        stoplist=ctx.stop,
    )
    for name, loader in (
        ("vectors.fr.txt", lambda p: setattr(resources, "foreign", load_vectors(p))),
        ("mft.tsv", lambda p: setattr(resources, "mft", align_mod.load_mft(p))),
        ("tmatrix.txt", lambda p: setattr(resources, "tmatrix", xling.load_matrix(p))),
    ):
        path = ctx.artifact(name)
        if os.path.exists(path):
            loader(path)
    rows = evaluation.run_ablations(
        resources, gold, dataset=dataset, backoff_seed=cfg.seed
    )
    out = args.out or ctx.artifact("ablation.tsv")
    evaluation.write_ablation_tsv(rows, out)
    print(evaluation.format_ablation_table(rows))
    logger.info("ablation table written to %s", out)


# ---------------------------------------------------------------------------
# pipeline


def run_pipeline(
    config: PipelineConfig, force: bool = False
) -> list[tuple[str, str]]:
    """All stages in dependency order; cached stages are skipped."""
    ctx = StageContext(config)
    statuses = [("corpus-stats", stage_corpus_stats(ctx, force))]
    statuses.append(("train-vectors-en", stage_train_vectors(ctx, "english", force)))
    bitext = bool(config.bitext_source and config.bitext_target)
    if bitext:
        statuses.append(
            ("train-vectors-fr", stage_train_vectors(ctx, "foreign", force))
        )
        statuses.append(("align", stage_align(ctx, force)))
        statuses.append(("learn-matrix", stage_learn_matrix(ctx, force)))
    statuses.append((f"predict-{config.method}", stage_predict(ctx, force=force)))
    return statuses


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        raise UsageError(message)


def _add_config_args(parser, *names):
    parser.add_argument("--config", help="configuration file (flags win)")
    registry = {
        "corpus": dict(help="one sentence per line, UTF-8"),
        "bitext_source": dict(help="source side of the bitext"),
        "bitext_target": dict(help="target side of the bitext"),
        "wordnet": dict(help="WordNet 3.0 database directory"),
        "gold": dict(help="sense-annotated gold TSV"),
        "stoplist": dict(help="stoplist file overriding the built-in list"),
        "output_dir": dict(help="artifact directory"),
        "k": dict(type=int, help="companions per word"),
        "chi": dict(help="three comma-separated feature weights"),
        "keyword_mode": dict(choices=["extended", "umfswe", "light"]),
        "method": dict(choices=["wct", "companion", "umfswe", "random"]),
        "dim": dict(type=int), "window": dict(type=int),
        "negatives": dict(type=int), "min_count": dict(type=int),
        "subsample": dict(type=float), "epochs": dict(type=int),
        "lr0": dict(type=float),
        "align_iterations": dict(type=int),
        "pairs": dict(type=int, help="translation pairs for the matrix"),
        "min_total": dict(type=int, help="prune words below this sentence count"),
        "seed": dict(type=int),
        "backoff": dict(choices=["none", "random"]),
    }
    for name in names:
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, dest=name, default=None, **registry[name])


def build_parser() -> _Parser:
    parser = _Parser(prog="mfskit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = ["wordnet", "output_dir", "stoplist", "seed"]

    p = sub.add_parser("corpus-stats", help="co-occurrence table and ic values")
    _add_config_args(p, "corpus", "min_total", *common)

    p = sub.add_parser("train-vectors", help="skip-gram vectors for one side")
    p.add_argument("--side", choices=["english", "foreign"], default="english")
    _add_config_args(
        p, "corpus", "bitext_target", "dim", "window", "negatives",
        "min_count", "subsample", "epochs", "lr0", *common,
    )

    p = sub.add_parser("align", help="bidirectional alignment and MFT table")
    _add_config_args(p, "bitext_source", "bitext_target", "align_iterations", *common)

    p = sub.add_parser("learn-matrix", help="cross-lingual translation matrix")
    _add_config_args(p, "pairs", *common)

    p = sub.add_parser("predict", help="most-frequent-sense predictions")
    _add_config_args(p, "method", "gold", "k", "chi", "keyword_mode", *common)
    p.add_argument(
        "--no-examples", dest="no_examples", action="store_const", const=True,
        default=None, help="suppress usage examples in keyword extraction",
    )

    p = sub.add_parser("eval-intrinsic", help="type-level MFS accuracy")
    _add_config_args(p, "gold", "method", *common)
    p.add_argument("--predictions", help="predictions TSV to score")
    p.add_argument("--noun-sample", action="store_true",
                   help="restrict to polysemous nouns with a unique MFS seen >= 3 times")
    p.add_argument("--scope", choices=["all", "polysemous"], default="all")

    p = sub.add_parser("eval-wsd", help="token-level disambiguation F1")
    _add_config_args(p, "gold", "method", "backoff", *common)
    p.add_argument("--predictions", help="predictions TSV to score")

    p = sub.add_parser("ablate", help="run the scorer variants and report")
    _add_config_args(p, "gold", "k", *common)
    p.add_argument("--out", help="ablation TSV path")

    p = sub.add_parser("pipeline", help="run every stage in dependency order")
    _add_config_args(
        p, "corpus", "bitext_source", "bitext_target", "gold", "method",
        "k", "chi", "keyword_mode", "min_total", "dim", "epochs",
        "align_iterations", "pairs", *common,
    )
    p.add_argument("--force", action="store_true", help="ignore cached manifests")

    return parser


def _effective_config(args) -> PipelineConfig:
    config = load_config(args.config) if args.config else PipelineConfig()
    return apply_overrides(config, args)


def _context(args) -> StageContext:
    return StageContext(_effective_config(args))


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s"
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "corpus-stats":
            stage_corpus_stats(_context(args))
        elif args.command == "train-vectors":
            stage_train_vectors(_context(args), args.side)
        elif args.command == "align":
            stage_align(_context(args))
        elif args.command == "learn-matrix":
            stage_learn_matrix(_context(args))
        elif args.command == "predict":
            stage_predict(_context(args))
        elif args.command == "eval-intrinsic":
            command_eval_intrinsic(_context(args), args)
        elif args.command == "eval-wsd":
            command_eval_wsd(_context(args), args)
        elif args.command == "ablate":
            command_ablate(_context(args), args)
        elif args.command == "pipeline":
            for stage, status in run_pipeline(_effective_config(args), force=args.force):
                print(f"{stage}\t{status}")
        return 0
    except UsageError as exc:
        logger.error("usage: %s", exc)
        return 1
    except DataFormatError as exc:
        logger.error("data: %s", exc)
        return 2
    except NumericalError as exc:
        logger.error("numerical: %s", exc)
        return 3
    except MfskitError as exc:
        logger.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
