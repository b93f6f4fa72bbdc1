"""Command-line entry point: every pipeline stage as one subcommand.

Exit codes: 0 success, 1 usage error, 2 data error (malformed file,
domain mismatch, insufficient class, ...). Wherever a single file is
expected, ``-`` means stdin or stdout. Every run emits a manifest
recording the resolved configuration, input digests, and duration:
to ``--manifest PATH`` when given, else next to the primary output file
(``<out>.manifest.json``), else as one ``psc-manifest:`` line on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import io
import json
import os
import sys
import time
from importlib import resources

from . import __version__
from .corpus import (DOMAINS, PurityCriterion, build_tf, extract_pure_slang,
                     read_tf, top_k, write_tf)
from .errors import DataError, PscError
from .normalizer import NormalizedText, NormalizerConfig, normalize
from .pipeline import (DEFAULT_RULE_ORDER, PipelineConfig, convert_text,
                       coverage_report)
from .reference import coverage_discrepancy_notes
from .rules import FormalValidator, RuleEngine, RuleId, load_lexicon
from .sentiment import (TrainParams, ablation, balance, evaluate, load_model,
                        read_labeled, save_model, split, train,
                        write_labeled_path)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this CLI reserves 2 for data errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _VersionAction(argparse.Action):
    """Print version and data digests verbatim (no help-text rewrapping)."""

    def __init__(self, option_strings, dest, **kwargs):
        kwargs.setdefault("nargs", 0)
        kwargs.setdefault("help", "show the version and shipped data digests")
        super().__init__(option_strings, dest, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        print(_version_text())
        parser.exit(0)


class _RunContext:
    """Tracks digests of everything a run reads, for the manifest."""

    def __init__(self) -> None:
        self.inputs: dict[str, str] = {}

    def read_bytes(self, path: str) -> bytes:
        if path == "-":
            blob = sys.stdin.buffer.read()
            self.inputs["<stdin>"] = hashlib.sha256(blob).hexdigest()
            return blob
        try:
            with open(path, "rb") as handle:
                blob = handle.read()
        except OSError as exc:
            raise DataError(f"cannot read: {exc.strerror or exc}", path) from exc
        self.inputs[path] = hashlib.sha256(blob).hexdigest()
        return blob

    def read_text(self, path: str) -> str:
        blob = self.read_bytes(path)
        try:
            return blob.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataError(f"not valid UTF-8: {exc}", path) from exc

    def read_lines(self, path: str) -> list[str]:
        return self.read_text(path).splitlines()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise PscError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _read_tf_arg(ctx: _RunContext, path: str, expect_domain: str | None):
    display = "<stdin>" if path == "-" else path
    return read_tf(io.StringIO(ctx.read_text(path)), path=display,
                   expect_domain=expect_domain)


def _write_tf_arg(table, path: str) -> None:
    buffer = io.StringIO()
    write_tf(table, buffer)
    _write_text(path, buffer.getvalue())


def _version_text() -> str:
    lines = [f"psc {__version__}"]
    data_root = resources.files("psc").joinpath("data")
    for entry in sorted(data_root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".tsv"):
            digest = hashlib.sha256(entry.read_bytes()).hexdigest()
            lines.append(f"data/{entry.name} sha256:{digest}")
    return "\n".join(lines)


def _rule_csv(text: str) -> tuple[RuleId, ...]:
    rules: list[RuleId] = []
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            rule = RuleId(name)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown rule {name!r}; valid: {', '.join(r.value for r in RuleId)}")
        if rule not in rules:
            rules.append(rule)
    return tuple(rules)


def _ratio_csv(text: str) -> tuple[float, float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("need three comma-separated ratios")
    try:
        a, b, c = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return (a, b, c)


def _pipeline_config(rules: tuple[RuleId, ...] | None,
                     order: tuple[RuleId, ...] | None) -> PipelineConfig:
    if order is not None:
        if rules is not None and set(rules) != set(order):
            raise DataError("--rules and --order name different rule sets")
        return PipelineConfig.from_rules(order)
    if rules is not None:
        kept = tuple(rule for rule in DEFAULT_RULE_ORDER if rule in rules)
        return PipelineConfig.from_rules(kept)
    return PipelineConfig()


def _engine_from_flags(ctx: _RunContext, ns) -> RuleEngine:
    formal = _read_tf_arg(ctx, ns.formal_tf, "formal")
    lexicon_path = getattr(ns, "lexicon", None)
    if lexicon_path is not None:
        ctx.read_bytes(lexicon_path)
    return RuleEngine(
        lexicon=load_lexicon(lexicon_path),
        validator=FormalValidator(formal, getattr(ns, "min_count", 1)),
        standalone_ro=getattr(ns, "standalone_ro", False),
    )


_PSC_CONFIG_KEYS = {"formal_tf", "lexicon", "min_count", "rules", "order",
                    "standalone_ro", "normalizer"}
_NORMALIZER_KEYS = {"keep_emoji", "keep_latin", "digits", "fold_hamza_carriers"}


def _config_rules(value, path: str) -> tuple[RuleId, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DataError("rules/order must be a list of rule names", path)
    try:
        return tuple(dict.fromkeys(RuleId(name) for name in value))
    except ValueError as exc:
        raise DataError(str(exc), path) from exc


def _load_psc_config(ctx: _RunContext, path: str) -> tuple[RuleEngine, PipelineConfig, NormalizerConfig]:
    """Conversion setup for train/eval/ablate, from a JSON file.

    Keys: formal_tf (required), lexicon, min_count, rules, order,
    standalone_ro, normalizer. Relative paths resolve against the config
    file's directory.
    """
    text = ctx.read_text(path)
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}", path) from exc
    if not isinstance(payload, dict):
        raise DataError("config must be a JSON object", path)
    unknown = set(payload) - _PSC_CONFIG_KEYS
    if unknown:
        raise DataError(f"unknown config keys: {', '.join(sorted(unknown))}", path)
    if "formal_tf" not in payload:
        raise DataError("config needs a formal_tf path (the validator corpus)", path)

    base = os.path.dirname(os.path.abspath(path)) if path != "-" else os.getcwd()

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(base, p)

    formal = _read_tf_arg(ctx, resolve(payload["formal_tf"]), "formal")
    min_count = payload.get("min_count", 1)
    if not isinstance(min_count, int) or isinstance(min_count, bool):
        raise DataError("min_count must be an integer", path)

    lexicon_path = payload.get("lexicon")
    if lexicon_path is not None:
        if not isinstance(lexicon_path, str):
            raise DataError("lexicon must be a path string", path)
        lexicon_path = resolve(lexicon_path)
        ctx.read_bytes(lexicon_path)
    lexicon = load_lexicon(lexicon_path)

    rules = _config_rules(payload["rules"], path) if "rules" in payload else None
    order = _config_rules(payload["order"], path) if "order" in payload else None
    if order is not None and rules is not None and set(rules) != set(order):
        raise DataError("rules and order name different rule sets", path)
    if order is not None:
        config = PipelineConfig.from_rules(order)
    elif rules is not None:
        config = PipelineConfig.from_rules(
            tuple(rule for rule in DEFAULT_RULE_ORDER if rule in rules))
    else:
        config = PipelineConfig()

    standalone_ro = payload.get("standalone_ro", False)
    if not isinstance(standalone_ro, bool):
        raise DataError("standalone_ro must be a boolean", path)

    norm_payload = payload.get("normalizer", {})
    if not isinstance(norm_payload, dict):
        raise DataError("normalizer must be an object", path)
    bad = set(norm_payload) - _NORMALIZER_KEYS
    if bad:
        raise DataError(f"unknown normalizer keys: {', '.join(sorted(bad))}", path)
    try:
        norm_config = NormalizerConfig(**norm_payload)
    except (TypeError, ValueError) as exc:
        raise DataError(f"bad normalizer config: {exc}", path) from exc

    engine = RuleEngine(lexicon=lexicon,
                        validator=FormalValidator(formal, min_count),
                        standalone_ro=standalone_ro)
    return engine, config, norm_config


def _convert_examples(examples, engine, config, norm_config):
    from .sentiment import LabeledExample

    out = []
    for ex in examples:
        doc = normalize(ex.text, norm_config)
        doc, _ = convert_text(doc, engine, config)
        out.append(LabeledExample(doc.content, ex.label))
    return out


def _resolve_threads(ns) -> int:
    threads = getattr(ns, "threads", None)
    if not threads:
        threads = os.cpu_count() or 1
        ns.threads = threads
    return threads


# --- subcommand handlers --------------------------------------------------
# Each returns the primary output path (or None when it wrote to stdout);
# the manifest lands next to that path.

def _cmd_normalize(ns, ctx: _RunContext) -> str | None:
    config = NormalizerConfig(keep_emoji=not ns.drop_emoji,
                              keep_latin=ns.keep_latin,
                              digits=ns.digits,
                              fold_hamza_carriers=ns.fold_hamza)
    out_lines = []
    for line in ctx.read_lines(ns.infile):
        doc = normalize(line, config)
        if ns.jsonl:
            out_lines.append(json.dumps({"text": doc.content}, ensure_ascii=False))
        else:
            out_lines.append(doc.content)
    _write_text(ns.out, "".join(line + "\n" for line in out_lines))
    return None if ns.out == "-" else ns.out


def _cmd_build_tf(ns, ctx: _RunContext) -> str | None:
    table = build_tf(ctx.read_lines(ns.infile), ns.domain,
                     threads=_resolve_threads(ns))
    _write_tf_arg(table, ns.out)
    return None if ns.out == "-" else ns.out


def _cmd_pure_slang(ns, ctx: _RunContext) -> str | None:
    slang = _read_tf_arg(ctx, ns.slang, "slang")
    formal = _read_tf_arg(ctx, ns.formal, "formal")
    pure = extract_pure_slang(slang, formal, PurityCriterion(ns.coefficient))
    _write_tf_arg(pure, ns.out)
    return None if ns.out == "-" else ns.out


def _cmd_top(ns, ctx: _RunContext) -> str | None:
    table = _read_tf_arg(ctx, ns.infile, None)
    lines = [f"{rank}\t{word}\t{count}\n"
             for rank, (word, count) in enumerate(top_k(table, ns.k), start=1)]
    _write_text(ns.out, "".join(lines))
    if ns.plot:
        from .figures import plot_frequency_distribution
        plot_frequency_distribution(table, ns.plot)
    return None if ns.out == "-" else ns.out


def _cmd_convert(ns, ctx: _RunContext) -> str | None:
    engine = _engine_from_flags(ctx, ns)
    config = _pipeline_config(ns.rules, ns.order)
    out_lines = []
    for line in ctx.read_lines(ns.infile):
        converted, _ = convert_text(NormalizedText(line), engine, config)
        out_lines.append(converted.content)
    _write_text(ns.out, "".join(line + "\n" for line in out_lines))
    return None if ns.out == "-" else ns.out


def _cmd_report(ns, ctx: _RunContext) -> str | None:
    pure = _read_tf_arg(ctx, ns.pure_slang, "pure_slang")
    engine = _engine_from_flags(ctx, ns)
    config = _pipeline_config(ns.rules, ns.order)
    report = coverage_report(pure, engine, config, threads=_resolve_threads(ns))
    if ns.paper_compat:
        report = dataclasses.replace(report, notes=coverage_discrepancy_notes())
    _write_text(ns.out, report.to_json() + "\n")
    if ns.tsv:
        rows = ["rule\tucw\tucw_pct\tcw\tcw_pct\n"]
        rows += [f"{r.rule}\t{r.ucw}\t{r.ucw_pct:.2f}\t{r.cw}\t{r.cw_pct:.2f}\n"
                 for r in report.rows]
        _write_text(ns.tsv, "".join(rows))
    if ns.figures:
        from .figures import plot_frequency_distribution, plot_rule_coverage
        try:
            os.makedirs(ns.figures, exist_ok=True)
        except OSError as exc:
            raise PscError(f"cannot create {ns.figures}: {exc.strerror or exc}") from exc
        plot_rule_coverage(report, os.path.join(ns.figures, "rule_coverage.png"))
        plot_frequency_distribution(pure, os.path.join(ns.figures, "rank_frequency.png"))
    if ns.out != "-":
        return ns.out
    return ns.tsv if ns.tsv and ns.tsv != "-" else None


def _cmd_split(ns, ctx: _RunContext) -> str | None:
    source = "<stdin>" if ns.infile == "-" else ns.infile
    examples = read_labeled(ctx.read_lines(ns.infile), source=source)
    if ns.balance is not None:
        examples = balance(examples, ns.balance, ns.seed)
    parts = split(examples, ns.ratios, ns.seed)
    try:
        os.makedirs(ns.out_dir, exist_ok=True)
    except OSError as exc:
        raise PscError(f"cannot create {ns.out_dir}: {exc.strerror or exc}") from exc
    for name, part in (("train", parts.train), ("validation", parts.validation),
                       ("test", parts.test)):
        write_labeled_path(part, os.path.join(ns.out_dir, f"{name}.tsv"))
    print(f"train {len(parts.train)}  validation {len(parts.validation)}  "
          f"test {len(parts.test)}", file=sys.stderr)
    return os.path.join(ns.out_dir, "split")


def _train_params(ns) -> TrainParams:
    return TrainParams(learning_rate=ns.learning_rate, decay=ns.decay,
                       epochs=ns.epochs, l2=ns.l2, seed=ns.seed)


def _cmd_train(ns, ctx: _RunContext) -> str | None:
    source = "<stdin>" if ns.train == "-" else ns.train
    examples = read_labeled(ctx.read_lines(ns.train), source=source)
    if ns.psc:
        engine, config, norm_config = _load_psc_config(ctx, ns.psc)
        examples = _convert_examples(examples, engine, config, norm_config)
    model = train(examples, _train_params(ns))
    model_path = ns.model if ns.model.endswith(".npz") else ns.model + ".npz"
    try:
        save_model(model, model_path)
    except OSError as exc:
        raise PscError(f"cannot write {model_path}: {exc.strerror or exc}") from exc
    print(f"trained on {len(examples)} examples, "
          f"final loss {model.loss_history[-1]:.6f}", file=sys.stderr)
    return model_path


def _format_metrics(metrics) -> str:
    lines = [f"n          {metrics.n}",
             f"accuracy   {metrics.accuracy:.4f}",
             f"precision  {metrics.macro_precision:.4f}",
             f"recall     {metrics.macro_recall:.4f}",
             f"f1         {metrics.macro_f1:.4f}",
             "confusion (rows true, columns predicted; "
             "negative/neutral/positive):"]
    for row in metrics.confusion:
        lines.append("  " + "  ".join(f"{cell:>7}" for cell in row))
    return "\n".join(lines) + "\n"


def _cmd_eval(ns, ctx: _RunContext) -> str | None:
    ctx.read_bytes(ns.model)
    model = load_model(ns.model)
    source = "<stdin>" if ns.test == "-" else ns.test
    examples = read_labeled(ctx.read_lines(ns.test), source=source)
    if ns.psc:
        engine, config, norm_config = _load_psc_config(ctx, ns.psc)
        examples = _convert_examples(examples, engine, config, norm_config)
    metrics = evaluate(model, examples, threads=_resolve_threads(ns))
    if ns.json:
        sys.stdout.write(json.dumps(metrics.to_dict(), ensure_ascii=False,
                                    indent=2) + "\n")
    else:
        sys.stdout.write(_format_metrics(metrics))
    return None


def _cmd_ablate(ns, ctx: _RunContext) -> str | None:
    source = "<stdin>" if ns.infile == "-" else ns.infile
    data = read_labeled(ctx.read_lines(ns.infile), source=source)
    engine, config, norm_config = _load_psc_config(ctx, ns.psc)
    result = ablation(data, engine, config, _train_params(ns), seed=ns.seed,
                      per_class=ns.per_class, normalizer=norm_config)
    if ns.json:
        sys.stdout.write(json.dumps(result.to_dict(), ensure_ascii=False,
                                    indent=2) + "\n")
    else:
        deltas = result.deltas()
        lines = ["arm          accuracy  precision  recall      f1"]
        for name, metrics in (("with_psc", result.with_psc),
                              ("without_psc", result.without_psc)):
            lines.append(f"{name:<12} {metrics.accuracy:8.4f}  "
                         f"{metrics.macro_precision:9.4f}  "
                         f"{metrics.macro_recall:6.4f}  {metrics.macro_f1:6.4f}")
        lines.append(f"{'delta':<12} {deltas['accuracy']:+8.4f}  "
                     f"{deltas['precision']:+9.4f}  "
                     f"{deltas['recall']:+6.4f}  {deltas['f1']:+6.4f}")
        sys.stdout.write("\n".join(lines) + "\n")
    return None


# --- parser wiring ---------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="psc", description=__doc__.split("\n\n")[0],
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument("--version", action=_VersionAction)
    subparsers = parser.add_subparsers(dest="subcommand", required=True,
                                       metavar="SUBCOMMAND")

    manifest_parent = _Parser(add_help=False)
    manifest_parent.add_argument("--manifest", metavar="PATH",
                                 help="write the run manifest to this path")

    threads_parent = _Parser(add_help=False)
    threads_parent.add_argument("--threads", type=int, default=None,
                                help="worker processes (default: all cores)")

    seed_parent = _Parser(add_help=False)
    seed_parent.add_argument("--seed", type=int, default=0,
                             help="seed for every random choice in the run")

    train_parent = _Parser(add_help=False)
    train_parent.add_argument("--epochs", type=int, default=20)
    train_parent.add_argument("--learning-rate", type=float, default=0.5)
    train_parent.add_argument("--decay", type=float, default=0.8)
    train_parent.add_argument("--l2", type=float, default=0.0)

    engine_parent = _Parser(add_help=False)
    engine_parent.add_argument("--formal-tf", required=True, metavar="TSV",
                               help="formal TF table backing the validator")
    engine_parent.add_argument("--lexicon", metavar="TSV",
                               help="direct-conversion lexicon (default: shipped)")
    engine_parent.add_argument("--min-count", type=int, default=1,
                               help="formal count needed to validate a word")
    engine_parent.add_argument("--rules", type=_rule_csv, default=None,
                               metavar="LIST", help="comma-separated rule subset")
    engine_parent.add_argument("--order", type=_rule_csv, default=None,
                               metavar="LIST", help="full custom rule priority")
    engine_parent.add_argument("--standalone-ro", action="store_true",
                               help="also rewrite the standalone word «رو» to «را»")

    sub = subparsers.add_parser(
        "normalize", parents=[manifest_parent],
        help="normalize raw social-media text, one line per line")
    sub.add_argument("--in", dest="infile", required=True, metavar="FILE")
    sub.add_argument("--out", default="-", metavar="FILE")
    sub.add_argument("--jsonl", action="store_true",
                     help='emit {"text": ...} JSON objects instead of plain lines')
    sub.add_argument("--keep-latin", action="store_true")
    sub.add_argument("--drop-emoji", action="store_true")
    sub.add_argument("--digits", choices=["ascii", "persian"], default="ascii")
    sub.add_argument("--fold-hamza", action="store_true",
                     help="fold the hamza carriers «ئ»/«ؤ» to «ی»/«و»")
    sub.set_defaults(handler=_cmd_normalize)

    sub = subparsers.add_parser(
        "build-tf", parents=[manifest_parent, threads_parent],
        help="count tokens of normalized lines into a TF table")
    sub.add_argument("--in", dest="infile", required=True, metavar="FILE")
    sub.add_argument("--domain", required=True, choices=list(DOMAINS))
    sub.add_argument("--out", default="-", metavar="TSV")
    sub.set_defaults(handler=_cmd_build_tf)

    sub = subparsers.add_parser(
        "pure-slang", parents=[manifest_parent],
        help="extract the pure-slang table from slang and formal TF tables")
    sub.add_argument("--slang", required=True, metavar="TSV")
    sub.add_argument("--formal", required=True, metavar="TSV")
    sub.add_argument("--out", default="-", metavar="TSV")
    sub.add_argument("--coefficient", type=float, default=5.0,
                     help="slang/formal frequency ratio a pure-slang word must exceed")
    sub.set_defaults(handler=_cmd_pure_slang)

    sub = subparsers.add_parser(
        "top", parents=[manifest_parent],
        help="rank the most frequent words of a TF table")
    sub.add_argument("--in", dest="infile", required=True, metavar="TSV")
    sub.add_argument("--k", type=int, default=50)
    sub.add_argument("--out", default="-", metavar="FILE")
    sub.add_argument("--plot", metavar="PNG",
                     help="also render the rank-frequency curve")
    sub.set_defaults(handler=_cmd_top)

    sub = subparsers.add_parser(
        "convert", parents=[manifest_parent, engine_parent],
        help="convert normalized text to formal register, line by line")
    sub.add_argument("--in", dest="infile", required=True, metavar="FILE")
    sub.add_argument("--out", default="-", metavar="FILE")
    sub.set_defaults(handler=_cmd_convert)

    sub = subparsers.add_parser(
        "report", parents=[manifest_parent, engine_parent, threads_parent],
        help="coverage report of every rule over a pure-slang table")
    sub.add_argument("--pure-slang", required=True, metavar="TSV")
    sub.add_argument("--out", default="-", metavar="JSON")
    sub.add_argument("--tsv", metavar="PATH",
                     help="also write the rows as a delimited table")
    sub.add_argument("--figures", metavar="DIR",
                     help="render coverage and rank-frequency figures here")
    sub.add_argument("--paper-compat", action="store_true",
                     help="append notes on cells where the originally published "
                          "coverage table disagrees with its own counts")
    sub.set_defaults(handler=_cmd_report)

    sub = subparsers.add_parser(
        "split", parents=[manifest_parent, seed_parent],
        help="stratified 70/15/15 split of a labeled TSV")
    sub.add_argument("--in", dest="infile", required=True, metavar="TSV")
    sub.add_argument("--out-dir", required=True, metavar="DIR")
    sub.add_argument("--ratios", type=_ratio_csv, default=(0.70, 0.15, 0.15),
                     metavar="A,B,C")
    sub.add_argument("--balance", type=int, default=None, metavar="N",
                     help="subsample to N examples per class before splitting")
    sub.set_defaults(handler=_cmd_split)

    sub = subparsers.add_parser(
        "train", parents=[manifest_parent, seed_parent, train_parent],
        help="train the linear baseline on a labeled TSV")
    sub.add_argument("--train", required=True, metavar="TSV")
    sub.add_argument("--model", required=True, metavar="NPZ")
    sub.add_argument("--psc", metavar="CONFIG",
                     help="JSON conversion config applied before training")
    sub.set_defaults(handler=_cmd_train)

    sub = subparsers.add_parser(
        "eval", parents=[manifest_parent, threads_parent],
        help="evaluate a trained model on a labeled TSV")
    sub.add_argument("--model", required=True, metavar="NPZ")
    sub.add_argument("--test", required=True, metavar="TSV")
    sub.add_argument("--psc", metavar="CONFIG",
                     help="JSON conversion config applied before evaluation")
    sub.add_argument("--json", action="store_true",
                     help="emit metrics JSON instead of the text summary")
    sub.set_defaults(handler=_cmd_eval)

    sub = subparsers.add_parser(
        "ablate", parents=[manifest_parent, seed_parent, train_parent],
        help="train and evaluate twice, with and without conversion")
    sub.add_argument("--in", dest="infile", required=True, metavar="TSV")
    sub.add_argument("--psc", required=True, metavar="CONFIG")
    sub.add_argument("--per-class", type=int, default=None,
                     help="balance to N per class (default: smallest class)")
    sub.add_argument("--json", action="store_true",
                     help="emit the two metric sets plus deltas as JSON")
    sub.set_defaults(handler=_cmd_ablate)

    return parser


def _jsonable(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, RuleId):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


def _emit_manifest(ns, ctx: _RunContext, primary_out: str | None,
                   duration: float) -> None:
    args = {key: _jsonable(val) for key, val in vars(ns).items()
            if key not in ("handler", "manifest")}
    manifest = {
        "subcommand": ns.subcommand,
        "version": __version__,
        "seed": getattr(ns, "seed", None),
        "threads": getattr(ns, "threads", None),
        "args": args,
        "inputs": ctx.inputs,
        "duration_seconds": round(duration, 6),
    }
    explicit = getattr(ns, "manifest", None)
    if explicit:
        _write_text(explicit, json.dumps(manifest, ensure_ascii=False, indent=2) + "\n")
    elif primary_out:
        _write_text(primary_out + ".manifest.json",
                    json.dumps(manifest, ensure_ascii=False, indent=2) + "\n")
    else:
        print("psc-manifest: " + json.dumps(manifest, ensure_ascii=False),
              file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    ctx = _RunContext()
    start = time.monotonic()
    try:
        primary_out = ns.handler(ns, ctx)
        _emit_manifest(ns, ctx, primary_out, time.monotonic() - start)
    except PscError as err:
        print(f"psc: error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
