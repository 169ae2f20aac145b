"""Command line: ``generate``, ``stats`` and ``validate``.

Exit codes: 0 success, 1 usage error, 2 generation, validation or I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from .corpus import GenerationConfig, generate_corpus, read_config_file
from .emit import (
    compute_stats,
    emit_jsonl,
    emit_nif,
    read_corpus,
    span_problems,
    stats_tsv,
)
from .errors import TripleBenchError
from .kb import IRI, load_ntriples

BUNDLED = {
    "bundled:synthetic": "synthetic_kb.nt",
    "bundled:einstein": "einstein.nt",
}
STRATEGIES = ("star", "symstar", "path", "hybrid", "summary")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_kb_path(value: str) -> str:
    if value in BUNDLED:
        return str(resources.files("triplebench.data").joinpath(BUNDLED[value]))
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="triplebench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    gen = sub.add_parser("generate", help="generate a corpus")
    gen.add_argument("--config", help="flat key = value file; flags override it")
    gen.add_argument("--kb", help="N-Triples file (.nt or .nt.gz) or bundled:synthetic / bundled:einstein")
    gen.add_argument("--classes", help="comma-separated class IRIs or CURIEs (dbo:Person)")
    gen.add_argument("--strategy", choices=STRATEGIES)
    gen.add_argument("--docs", type=int)
    gen.add_argument("--dmin", type=int)
    gen.add_argument("--dmax", type=int)
    gen.add_argument("--paraphrase", action="store_true", default=None)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--lexicon")
    gen.add_argument("--synonyms")
    gen.add_argument("--coverage-threshold", type=float)
    gen.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--name", default="corpus", help="base name of the output files")
    gen.add_argument("--format", choices=("nif", "jsonl", "both"), default="both")

    st = sub.add_parser("stats", help="corpus features as TSV or JSON")
    st.add_argument("--in", dest="inputs", nargs="+", required=True)
    st.add_argument("--format", choices=("tsv", "json"), default="tsv")

    va = sub.add_parser("validate", help="re-check every annotation span of a corpus file")
    va.add_argument("--in", dest="input", required=True)
    va.add_argument("--kb", help="also require span text to be a label of the linked resource")
    return parser


def _generate(args) -> int:
    values = read_config_file(args.config) if args.config else {}
    flags = {
        "kb": args.kb,
        "classes": args.classes,
        "strategy": args.strategy,
        "docs": args.docs,
        "dmin": args.dmin,
        "dmax": args.dmax,
        "paraphrase": args.paraphrase,
        "seed": args.seed,
        "lexicon": args.lexicon,
        "synonyms": args.synonyms,
        "coverage_threshold": args.coverage_threshold,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    try:
        config = GenerationConfig.from_mapping(values)
    except (ValueError, TypeError) as err:
        raise UsageError(str(err)) from err
    if config.kb_path is None:
        raise UsageError("--kb is required")
    config = replace(config, kb_path=resolve_kb_path(config.kb_path))
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    corpus = generate_corpus(config, jobs=jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format in ("jsonl", "both"):
        (out / f"{args.name}.jsonl").write_text(emit_jsonl(corpus), encoding="utf-8")
    if args.format in ("nif", "both"):
        (out / f"{args.name}.ttl").write_text(emit_nif(corpus), encoding="utf-8")
    return 0


def _stats(args) -> int:
    rows = [(Path(p).name, compute_stats(d for d, _ in read_corpus(p))) for p in args.inputs]
    if args.format == "tsv":
        sys.stdout.write(stats_tsv(rows))
    else:
        payload = {name: s.__dict__ for name, s in rows}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def _validate(args) -> int:
    docs = read_corpus(args.input)
    labels = None
    if args.kb:
        kb = load_ntriples(resolve_kb_path(args.kb))
        iris = {iri for doc, _ in docs for _, _, iri in doc.annotations}
        labels = {
            iri: {text for text, _ in kb.labels_of(IRI(iri))} | {kb.label_of(IRI(iri))}
            for iri in iris
        }
    bad = 0
    for doc, anchors in docs:
        for problem in span_problems(doc, anchors, labels):
            print(f"{doc.id}: {problem}", file=sys.stderr)
            bad += 1
    if bad:
        print(f"{bad} annotation problem(s) in {len(docs)} document(s)", file=sys.stderr)
        return 2
    print(f"ok: {len(docs)} document(s), {sum(len(d.annotations) for d, _ in docs)} annotation(s)")
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: generate, stats or validate")
        handler = {"generate": _generate, "stats": _stats, "validate": _validate}[args.command]
        return handler(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except (TripleBenchError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
