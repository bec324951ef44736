"""Command-line interface: one subcommand per pipeline stage.

Every subcommand is a thin wrapper over a library call, streams line-oriented
I/O where the data can be large, and keeps all randomness behind --seed so
reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from .align import (
    align_morphemes,
    format_annotation,
    format_segmentation,
    load_sigmorphon,
    segmentation_to_tags,
)
from .errors import MorphotokError
from .evaluation import evaluate_segmenter, fertility_report, sample_frequency_bins
from .segment import (
    ExternalSegmentations,
    WordpieceSegmenter,
    load_external_segmentations,
    segment_word,
)
from .tagger import FeatureTemplate, TrainConfig, load_model, save_model, train_tagger
from .tokenizer import TokenizerConfig, tokenize_text
from .vocab import load_vocab, save_vocab
from .vocabuild import (
    assemble_vocab,
    count_subwords,
    extract_unique_words,
    filter_biomedical_subset,
    parse_rrf,
)


@contextlib.contextmanager
def _open_input(path: str | None):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, "r", encoding="utf-8") as handle:
            yield handle


@contextlib.contextmanager
def _open_output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _add_tokenizer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--no-lowercase", dest="lowercase", action="store_false",
                        help="keep the input case")
    parser.add_argument("--strip-accents", choices=["auto", "yes", "no"], default="auto",
                        help="accent stripping (auto follows lowercasing)")
    parser.add_argument("--max-word-chars", type=int, default=100,
                        help="words longer than this map to the unknown token")
    parser.add_argument("--unk-token", default="[UNK]")


def _tokenizer_config(args: argparse.Namespace) -> TokenizerConfig:
    strip = {"auto": None, "yes": True, "no": False}[args.strip_accents]
    return TokenizerConfig(
        lowercase=args.lowercase,
        strip_accents=strip,
        max_word_chars=args.max_word_chars,
        unknown_token=args.unk_token,
    )


def _add_segmenter_flags(parser: argparse.ArgumentParser, backends: tuple[str, ...]) -> None:
    parser.add_argument("--backend", choices=backends, required=True,
                        help="what produces the segmentations")
    parser.add_argument("--vocab", help="vocab.txt for the vocab backend")
    parser.add_argument("--model", help="tagger model file for the tagger backend")
    parser.add_argument("--segmentations", help="word<TAB>segments file for the external backend")


def _build_segmenter(args: argparse.Namespace, gold_annotations=None):
    if args.backend == "vocab":
        if not args.vocab:
            raise MorphotokError("--backend vocab requires --vocab")
        return WordpieceSegmenter(load_vocab(args.vocab), _tokenizer_config(args))
    if args.backend == "tagger":
        if not args.model:
            raise MorphotokError("--backend tagger requires --model")
        return load_model(args.model)
    if args.backend == "external":
        if not args.segmentations:
            raise MorphotokError("--backend external requires --segmentations")
        return load_external_segmentations(args.segmentations)
    if args.backend == "gold":
        if gold_annotations is None:
            raise MorphotokError("--backend gold is only available for evaluate")
        return ExternalSegmentations.from_annotations(gold_annotations)
    raise MorphotokError(f"unknown backend {args.backend!r}")


def _write_json(payload: dict, stream, pretty: bool) -> None:
    if pretty:
        stream.write(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        stream.write(json.dumps(payload, ensure_ascii=False))
    stream.write("\n")


def _cmd_tokenize(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab)
    cfg = _tokenizer_config(args)
    with _open_input(args.input) as src, _open_output(args.output) as dst:
        for line in src:
            tokens = tokenize_text(line.rstrip("\n"), vocab, cfg)
            dst.write(" ".join(tokens))
            dst.write("\n")
    return 0


def _cmd_segment(args: argparse.Namespace) -> int:
    segmenter = _build_segmenter(args)
    with _open_input(args.input) as src, _open_output(args.output) as dst:
        for lineno, line in enumerate(src, start=1):
            word = line.strip()
            if not word:
                continue
            try:
                segmentation = segment_word(segmenter, word)
            except MorphotokError as exc:
                raise MorphotokError(f"line {lineno}: {exc}") from exc
            dst.write(format_segmentation(segmentation))
            dst.write("\n")
    return 0


def _cmd_align(args: argparse.Namespace) -> int:
    annotations = load_sigmorphon(args.input, separator=args.separator)
    warning_count = 0
    with _open_output(args.output) as dst:
        for ann in annotations:
            segmentation, warnings = align_morphemes(ann)
            warning_count += len(warnings)
            for warning in warnings:
                print(f"warning: {warning}", file=sys.stderr)
            dst.write(f"{ann.surface}\t{segmentation_to_tags(segmentation)}\n")
    if warning_count:
        print(f"{warning_count} alignment warning(s)", file=sys.stderr)
    return 0


def _cmd_train_tagger(args: argparse.Namespace) -> int:
    annotations = load_sigmorphon(args.data, separator=args.separator)
    pairs = []
    dropped = 0
    for ann in annotations:
        segmentation, warnings = align_morphemes(ann)
        dropped += len(warnings)
        pairs.append((ann.surface, segmentation_to_tags(segmentation)))
    template = FeatureTemplate(
        radius=args.radius,
        ngram_orders=tuple(int(n) for n in args.ngram_orders.split(",")),
    )
    cfg = TrainConfig(epochs=args.epochs, seed=args.seed,
                      shuffle=args.shuffle, averaging=args.average)
    model = train_tagger(pairs, cfg, template)
    save_model(model, args.output)
    print(
        f"trained on {len(pairs)} words ({dropped} alignment warning(s)); "
        f"{len(model.weights)} feature weights",
        file=sys.stderr,
    )
    return 0


def _cmd_build_vocab(args: argparse.Namespace) -> int:
    cfg = _tokenizer_config(args)
    if args.phrases:
        with _open_input(args.phrases) as src:
            words = extract_unique_words((line.rstrip("\n") for line in src), cfg)
        skipped = 0
    else:
        stream = parse_rrf(args.rrf, column=args.rrf_column, delimiter=args.rrf_delimiter)
        words = extract_unique_words(stream, cfg)
        skipped = stream.skipped
    segmenter = _build_segmenter(args)
    counts = count_subwords(segmenter, words, weight_by_count=args.weight_by_count)
    base = load_vocab(args.base) if args.base else None
    vocab = assemble_vocab(counts, min_count=args.min_count, base=base)
    save_vocab(vocab, args.output)

    kept = sum(1 for c in counts.counts.values() if c >= args.min_count)
    stages = [
        {"stage": "unique_words", "count": len(words)},
        {"stage": "unique_subwords", "count": len(counts)},
        {"stage": "post_filter", "count": kept},
        {"stage": "post_merge", "count": len(vocab)},
    ]
    if skipped:
        print(f"skipped {skipped} malformed line(s)", file=sys.stderr)
    with _open_output(args.report) as report:
        for stage in stages:
            report.write(json.dumps(stage, ensure_ascii=False))
            report.write("\n")
    return 0


def _load_lexicon(args: argparse.Namespace) -> dict[str, int]:
    if args.phrases:
        cfg = _tokenizer_config(args)
        with _open_input(args.phrases) as src:
            return extract_unique_words((line.rstrip("\n") for line in src), cfg)
    lexicon: dict[str, int] = {}
    with _open_input(args.lexicon) as src:
        for lineno, line in enumerate(src, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            columns = line.split("\t")
            try:
                lexicon[columns[0]] = int(columns[1]) if len(columns) > 1 else 1
            except ValueError as exc:
                raise MorphotokError(f"lexicon line {lineno}: bad count {columns[1]!r}") from exc
    return lexicon


def _cmd_filter_biomed(args: argparse.Namespace) -> int:
    annotations = load_sigmorphon(args.data, separator=args.separator)
    lexicon = _load_lexicon(args)
    subset = filter_biomedical_subset(annotations, lexicon, min_count=args.min_count)
    with _open_output(args.output) as dst:
        for ann in subset:
            dst.write(format_annotation(ann, separator=args.separator))
            dst.write("\n")
    print(f"kept {len(subset)} of {len(annotations)} annotations", file=sys.stderr)
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    annotations = load_sigmorphon(args.data, separator=args.separator)
    segmenter = _build_segmenter(args, gold_annotations=annotations)
    warnings: list[str] = []
    score = evaluate_segmenter(segmenter, annotations, mode=args.mode, warnings_out=warnings)
    payload = {"mode": args.mode, "words": len(annotations),
               "alignment_warnings": len(warnings)}
    payload.update(score.as_dict())
    with _open_output(args.output) as dst:
        if args.pretty:
            dst.write(f"words      {len(annotations)}\n")
            dst.write(f"mode       {args.mode}\n")
            dst.write(f"precision  {score.precision:.4f}\n")
            dst.write(f"recall     {score.recall:.4f}\n")
            dst.write(f"f1         {score.f1:.4f}\n")
        else:
            _write_json(payload, dst, pretty=False)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab)
    cfg = _tokenizer_config(args)
    with _open_input(args.input) as src:
        report = fertility_report(vocab, cfg, (line for line in src))
    with _open_output(args.output) as dst:
        _write_json(report.as_dict(), dst, pretty=args.pretty)
    return 0


def _cmd_sample_bins(args: argparse.Namespace) -> int:
    vocab = load_vocab(args.vocab) if args.vocab else None
    cfg = _tokenizer_config(args)
    bins = tuple(int(b) for b in args.bins.split(","))
    with _open_input(args.input) as src:
        records, report = sample_frequency_bins(
            src, bins=bins, n_per_bin=args.n_per_bin, seed=args.seed,
            vocab=vocab, cfg=cfg,
        )
    with _open_output(args.output) as dst:
        for record in records:
            dst.write(json.dumps(record, ensure_ascii=False))
            dst.write("\n")
    with _open_output(args.report) as dst:
        _write_json(report.as_dict(), dst, pretty=args.pretty)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphotok",
        description="Morpheme-aware subword tokenization toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tokenize", help="tokenize text, one line of tokens per input line")
    p.add_argument("--vocab", required=True)
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_tokenize)

    p = sub.add_parser("segment", help="segment words (one per line) with a chosen backend")
    _add_segmenter_flags(p, ("vocab", "tagger", "external"))
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("align", help="convert gold TSV rows to per-character B/I tags")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default="-")
    p.add_argument("--separator", default="@@")
    p.set_defaults(func=_cmd_align)

    p = sub.add_parser("train-tagger", help="train the character tagger on gold TSV rows")
    p.add_argument("--data", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--separator", default="@@")
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-shuffle", dest="shuffle", action="store_false")
    p.add_argument("--no-average", dest="average", action="store_false")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--ngram-orders", default="1,2,3,4")
    p.set_defaults(func=_cmd_train_tagger)

    p = sub.add_parser("build-vocab", help="build a vocabulary from concept phrases")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--phrases", help="text file, one phrase per line")
    group.add_argument("--rrf", help="pipe-delimited concept table")
    p.add_argument("--rrf-column", type=int, default=14)
    p.add_argument("--rrf-delimiter", default="|")
    _add_segmenter_flags(p, ("vocab", "tagger", "external"))
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--weight-by-count", action="store_true")
    p.add_argument("--base", help="base vocab.txt whose tokens keep their ids")
    p.add_argument("--output", required=True)
    p.add_argument("--report", default="-")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_build_vocab)

    p = sub.add_parser("filter-biomed", help="keep gold rows whose word is frequent in a lexicon")
    p.add_argument("--data", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--phrases", help="phrase file to build the lexicon from")
    group.add_argument("--lexicon", help="word<TAB>count file")
    p.add_argument("--min-count", type=int, default=5)
    p.add_argument("--separator", default="@@")
    p.add_argument("--output", default="-")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_filter_biomed)

    p = sub.add_parser("evaluate", help="score a segmenter against gold TSV rows")
    p.add_argument("--data", required=True)
    _add_segmenter_flags(p, ("vocab", "tagger", "external", "gold"))
    p.add_argument("--mode", choices=["micro", "macro"], default="micro")
    p.add_argument("--separator", default="@@")
    p.add_argument("--output", default="-")
    p.add_argument("--pretty", action="store_true")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("stats", help="fertility and unknown-rate report for a corpus")
    p.add_argument("--vocab", required=True)
    p.add_argument("--input", default="-")
    p.add_argument("--output", default="-")
    p.add_argument("--pretty", action="store_true")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("sample-bins", help="sample word instances per frequency bin")
    p.add_argument("--input", required=True)
    p.add_argument("--bins", default="1,10,100,500,5000")
    p.add_argument("--n-per-bin", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vocab", help="optional vocab.txt for per-bin token statistics")
    p.add_argument("--output", required=True, help="masked-instance JSON-lines file")
    p.add_argument("--report", default="-")
    p.add_argument("--pretty", action="store_true")
    _add_tokenizer_flags(p)
    p.set_defaults(func=_cmd_sample_bins)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MorphotokError, ValueError) as exc:
        print(f"morphotok: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"morphotok: {exc}", file=sys.stderr)
        return 1


run = main
