"""Command-line pipeline: validate, enrich, correct, stats, convert-it, eval.

Data flows on stdout, diagnostics on stderr, so stages compose in shell
pipelines (`udmorph enrich x.conllu | udmorph correct - | ...`).  Sentences
stream one at a time; outputs are byte-deterministic for identical inputs.
Exit codes: 0 success, 1 validation failure, 2 I/O or format error.
"""

from __future__ import annotations

import argparse
import dataclasses
import functools
import logging
import os
import sys
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from typing import Callable, Iterable, Iterator, TextIO

from . import conllu, corrections, evaluate, itdata, rules

RULES_ENV_VAR = "UDMORPH_RULES"


def _open_input(stack: ExitStack, path: str) -> TextIO:
    if path == "-":
        return sys.stdin
    return stack.enter_context(open(path, encoding="utf-8"))


def _open_output(stack: ExitStack, path: str) -> TextIO:
    if path == "-":
        return sys.stdout
    return stack.enter_context(open(path, "w", encoding="utf-8"))


def _load_pack(path: str | None) -> rules.RulePack:
    if path is None:
        path = os.environ.get(RULES_ENV_VAR)
    if path is None:
        return rules.load_default_pack()
    with open(path, encoding="utf-8") as stream:
        return rules.load_rule_pack(stream)


def _map_sentences(
    func: Callable[[conllu.Sentence], object],
    sentences: Iterable[conllu.Sentence],
    jobs: int,
) -> Iterator[object]:
    """Order-preserving map; with jobs > 1, a bounded window keeps memory flat."""
    if jobs <= 1:
        yield from map(func, sentences)
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        window: deque = deque()
        for sentence in sentences:
            window.append(executor.submit(func, sentence))
            if len(window) >= jobs * 8:
                yield window.popleft().result()
        while window:
            yield window.popleft().result()


def _require_readable(paths: Iterable[str | None]) -> None:
    """Fail fast on unreadable inputs before any output is produced."""
    for path in paths:
        if path is not None and path != "-":
            with open(path, encoding="utf-8"):
                pass


def _stream_sentences(stack: ExitStack, args: argparse.Namespace) -> Iterator[conllu.Sentence]:
    for path in args.inputs:
        stream = _open_input(stack, path)
        try:
            yield from conllu.iter_sentences(
                stream, lenient=args.lenient, strip_bom=args.strip_bom
            )
        except conllu.ConlluError as error:
            raise conllu.ConlluError(f"{path}: {error}") from None


def _add_io_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "inputs", nargs="*", default=["-"], help="CoNLL-U file(s), '-' for stdin"
    )
    parser.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    parser.add_argument("--lenient", action="store_true", help="map unknown XPOS tags to NA")
    parser.add_argument("--strip-bom", action="store_true", help="tolerate a leading BOM")


def _add_rules_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--rules",
        default=None,
        help=f"rule-pack file (default: ${RULES_ENV_VAR} or the packaged Korean pack)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udmorph",
        description="Morphosyntactic enrichment, correction and evaluation for CoNLL-U treebanks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check structural and annotation invariants")
    _add_io_arguments(p)

    p = sub.add_parser("enrich", help="assign morphosyntactic features from the rule pack")
    _add_io_arguments(p)
    _add_rules_argument(p)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers over sentences")

    p = sub.add_parser("correct", help="apply systematic POS/XPOS corrections")
    _add_io_arguments(p)
    _add_rules_argument(p)
    p.add_argument("--aux", default=None, help="NER/tagger sidecar file")
    p.add_argument("--records", default=None, help="write the correction log here")

    p = sub.add_parser("stats", help="summarize a correction log as conversion tables")
    p.add_argument("input", nargs="?", default="-", help="correction log, '-' for stdin")
    p.add_argument("-o", "--output", default="-")
    p.add_argument(
        "--total-tokens",
        type=int,
        default=None,
        help="ratio denominator (default: the log's total_tokens header)",
    )

    p = sub.add_parser("convert-it", help="convert a treebank to instruction-tuning JSONL")
    _add_io_arguments(p)
    p.add_argument(
        "--instruction",
        default=itdata.DEFAULT_INSTRUCTION,
        help="instruction text placed before the input block",
    )
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("eval", help="score predictions against gold (UAS/LAS)")
    p.add_argument("gold", help="gold CoNLL-U file")
    p.add_argument("predictions", help="predicted blocks, blank-line separated")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--strip-bom", action="store_true")
    p.add_argument(
        "--exclude-punct", action="store_true", help="skip PUNCT gold tokens when scoring"
    )
    return parser


def _cmd_validate(args: argparse.Namespace) -> int:
    with ExitStack() as stack:
        failures = 0
        for index, sentence in enumerate(_stream_sentences(stack, args), start=1):
            for diagnostic in conllu.validate([sentence]):
                if sentence.sent_id is None:
                    diagnostic = dataclasses.replace(diagnostic, sent_id=str(index))
                print(diagnostic, file=sys.stderr)
                failures += 1
    return 1 if failures else 0


def _cmd_enrich(args: argparse.Namespace) -> int:
    _require_readable(args.inputs)
    pack = _load_pack(args.rules)
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        worker = functools.partial(rules.enrich_sentence, pack=pack)
        for sentence in _map_sentences(worker, _stream_sentences(stack, args), args.jobs):
            conllu.write_conllu([sentence], sink)
    return 0


def _cmd_correct(args: argparse.Namespace) -> int:
    _require_readable(args.inputs + [args.aux])
    pack = _load_pack(args.rules)
    aux_entries: list[corrections.AuxAnnotation] = []
    if args.aux is not None:
        with open(args.aux, encoding="utf-8") as stream:
            aux_entries = corrections.read_aux_sidecar(stream)
    aux_by_sentence: dict[str, list[corrections.AuxAnnotation]] = {}
    for entry in aux_entries:
        aux_by_sentence.setdefault(entry.sent_id, []).append(entry)

    all_records: list[corrections.CorrectionRecord] = []
    total_tokens = 0
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        for sentence in _stream_sentences(stack, args):
            total_tokens += len(sentence.tokens)
            entries = aux_by_sentence.get(sentence.sent_id or "", [])
            corrected, records = corrections.correct_sentence(sentence, entries, pack)
            all_records.extend(records)
            conllu.write_conllu([corrected], sink)
    if args.records is not None:
        with open(args.records, "w", encoding="utf-8") as sink:
            corrections.write_records(all_records, total_tokens, sink)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    with ExitStack() as stack:
        stream = _open_input(stack, args.input)
        records, total = corrections.read_records(stream)
        if args.total_tokens is not None:
            total = args.total_tokens
        if total is None:
            raise corrections.CorrectionError(
                "no total_tokens header in the log; pass --total-tokens"
            )
        stats = corrections.aggregate_stats(records, total)
        sink = _open_output(stack, args.output)
        sink.write(corrections.format_stats(stats))
    return 0


def _cmd_convert_it(args: argparse.Namespace) -> int:
    _require_readable(args.inputs)
    with ExitStack() as stack:
        sink = _open_output(stack, args.output)
        worker = functools.partial(itdata.to_it_record, instruction=args.instruction)
        for record in _map_sentences(worker, _stream_sentences(stack, args), args.jobs):
            itdata.emit_jsonl([record], sink)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    with ExitStack() as stack:
        with open(args.gold, encoding="utf-8") as stream:
            gold = conllu.parse_conllu(stream, lenient=args.lenient, strip_bom=args.strip_bom)
        with open(args.predictions, encoding="utf-8") as stream:
            predicted = itdata.read_prediction_blocks(stream)
        report = evaluate.score(gold, predicted, exclude_punct=args.exclude_punct)
        sink = _open_output(stack, args.output)
        sink.write(evaluate.format_report(report))
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "enrich": _cmd_enrich,
    "correct": _cmd_correct,
    "stats": _cmd_stats,
    "convert-it": _cmd_convert_it,
    "eval": _cmd_eval,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (
        conllu.ConlluError,
        rules.RulePackError,
        corrections.CorrectionError,
        evaluate.EvalError,
        OSError,
        ValueError,
    ) as error:
        print(f"udmorph {args.command}: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
