"""Command-line front end.

    gluelfg analyze "Every candidate appointed a manager."
    gluelfg prove --fstructure admirer.fs --ant i=g

Exit status: 0 when readings were found, 1 when none were (no parse or no
derivation), 2 when an input file cannot be loaded.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path

from . import __version__
from ._lexer import ParseError
from .glue.formulas import FragmentError
from .glue.syntax import load_lexicon
from .grammar import GrammarError, load_rules
from .interpret import Interpretation, SelectionError, analyze_sentence, prove_fstructure
from .structures import SigmaLink, StructureError, format_fstructure, parse_fstructure

FIXTURES = files("gluelfg") / "fixtures"
DEFAULT_LEXICON = FIXTURES / "example.lex"
DEFAULT_GRAMMAR = FIXTURES / "example.grammar"


class LoadError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gluelfg", description="Glue-semantics interpretation of LFG analyses.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", type=Path, help="lexicon file (default: bundled example lexicon)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--trace", action="store_true", help="show one derivation per reading")
    common.add_argument("--oracle", action="store_true", help="use the exhaustive reference prover")
    common.add_argument("--max-readings", type=int, metavar="N", help="print at most N readings")

    analyze = sub.add_parser("analyze", parents=[common], help="parse and interpret sentences")
    analyze.add_argument("sentence", nargs="?", help="sentence to interpret")
    analyze.add_argument("--grammar", type=Path, help="grammar file (default: bundled rules)")
    analyze.add_argument("--sentences", type=Path, metavar="FILE", help="interpret each line of FILE")

    prove = sub.add_parser("prove", parents=[common], help="interpret an f-structure file")
    prove.add_argument("--fstructure", type=Path, required=True, help="f-structure file")
    prove.add_argument(
        "--ant", action="append", default=[], metavar="A=B", help="set the ANT of A's semantic structure to B's"
    )
    return parser


# ---------------------------------------------------------------- loading


def _load(what: str, loader, path):
    try:
        return loader(path)
    except OSError as exc:
        raise LoadError(f"cannot read {what} {path}: {exc.strerror or exc}") from None
    except (ParseError, FragmentError, StructureError) as exc:
        raise LoadError(f"{what} {path}: {exc}") from None


def _parse_ant(spec: str) -> SigmaLink:
    source, sep, target = spec.partition("=")
    if not sep or not source.strip() or not target.strip():
        raise LoadError(f"--ant expects A=B, got {spec!r}")
    return SigmaLink(source.strip(), "ANT", target.strip())


# ---------------------------------------------------------------- output


def _reading_texts(it: Interpretation) -> list[str]:
    return [r.text for r in it.readings]


def _interpretation_json(it: Interpretation, args) -> dict:
    readings = it.readings[: args.max_readings] if args.max_readings is not None else it.readings
    out = {
        "tree": it.tree.bracket() if it.tree else None,
        "fstructure": format_fstructure(it.analysis.fstructure) if it.analysis else None,
        "premises": [str(p) for p in it.premises],
        "readings": [r.text for r in readings],
        "count": len(it.readings),
        "diagnosis": it.diagnosis,
    }
    if it.error:
        out["error"] = it.error
    if args.trace:
        out["traces"] = [r.derivation.trace() for r in readings]
    return out


def _result_json(sentence, results: list[Interpretation], args) -> dict:
    readings = []
    for it in results:
        for text in _reading_texts(it):
            if text not in readings:
                readings.append(text)
    shown = readings[: args.max_readings] if args.max_readings is not None else readings
    first = next((it for it in results if it.analysis), None)
    return {
        "sentence": sentence,
        "fstructure": format_fstructure(first.analysis.fstructure) if first else None,
        "readings": shown,
        "count": len(readings),
        "parses": [_interpretation_json(it, args) for it in results],
    }


def _print_text(results: list[Interpretation], args, out):
    for k, it in enumerate(results, 1):
        if len(results) > 1:
            print(f"# parse {k}: {it.tree.bracket()}", file=out)
        readings = it.readings[: args.max_readings] if args.max_readings is not None else it.readings
        for r in readings:
            print(r.text, file=out)
            if args.trace:
                for line in r.derivation.trace():
                    print(f"  {line}", file=out)


def _report_failure(label: str, results: list[Interpretation], err):
    for it in results:
        where = f" ({it.tree.bracket()})" if it.tree and len(results) > 1 else ""
        reason = it.error or it.diagnosis
        print(f"{label}: no-derivation{where}: {reason}", file=err)


# ---------------------------------------------------------------- modes


def _run_analyze(args, out, err) -> int:
    if (args.sentence is None) == (args.sentences is None):
        raise LoadError("give either a sentence or --sentences FILE")
    lexicon = _load("lexicon", load_lexicon, args.lexicon or DEFAULT_LEXICON)
    rules = _load("grammar", load_rules, args.grammar or DEFAULT_GRAMMAR)
    if args.sentences is not None:
        text = _load("sentence file", lambda p: Path(p).read_text(encoding="utf-8"), args.sentences)
        sentences = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    else:
        sentences = [args.sentence]

    status = 0
    documents = []
    for sentence in sentences:
        try:
            results = analyze_sentence(sentence, lexicon, rules, oracle=args.oracle)
        except GrammarError as exc:
            print(f"{sentence}: {exc}", file=err)
            status = 1
            if args.json:
                documents.append(
                    {"sentence": sentence, "fstructure": None, "readings": [], "count": 0, "parses": [], "error": str(exc)}
                )
            continue
        if not any(it.readings for it in results):
            _report_failure(sentence, results, err)
            status = 1
        if args.json:
            documents.append(_result_json(sentence, results, args))
        else:
            if len(sentences) > 1:
                print(f"## {sentence}", file=out)
            _print_text(results, args, out)
    if args.json:
        doc = documents[0] if args.sentences is None else documents
        print(json.dumps(doc, indent=2, ensure_ascii=False), file=out)
    return status


def _run_prove(args, out, err) -> int:
    lexicon = _load("lexicon", load_lexicon, args.lexicon or DEFAULT_LEXICON)
    fs, links = _load(
        "f-structure", lambda p: parse_fstructure(Path(p).read_text(encoding="utf-8")), args.fstructure
    )
    links = list(links) + [_parse_ant(spec) for spec in args.ant]
    try:
        result = prove_fstructure(fs, links, lexicon, oracle=args.oracle)
    except (StructureError, SelectionError) as exc:
        raise LoadError(f"{args.fstructure}: {exc}") from None
    if args.json:
        print(json.dumps(_result_json(None, [result], args), indent=2, ensure_ascii=False), file=out)
    else:
        _print_text([result], args, out)
    if not result.readings:
        _report_failure(str(args.fstructure), [result], err)
        return 1
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.max_readings is not None and args.max_readings < 0:
        print("gluelfg: --max-readings must be non-negative", file=err)
        return 2
    try:
        if args.mode == "analyze":
            return _run_analyze(args, out, err)
        return _run_prove(args, out, err)
    except LoadError as exc:
        print(f"gluelfg: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
