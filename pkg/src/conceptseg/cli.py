"""Command-line interface.

Every subcommand accepts ``--config FILE`` (``key = value`` lines) and the
individual parameter flags; flags win over the file. Failures exit non-zero
with one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .config import PipelineConfig, read_rename_map
from .errors import ConceptSegError
from .fca import build_lattice
from .formats import context_to_dict, dumps, lattice_to_dict, lattice_to_dot, load_context, write_cxt
from .pipeline import concept_terms, context_from_pairs, run_pipeline, segment
from .taxonomy import extract_taxonomy, taxonomy_from_dict, taxonomy_to_dict, taxonomy_to_dot
from .textio import extract_pairs, read_corpus, read_pairs, write_pairs

FORMATS = ("json", "cxt", "dot", "tsv")


def _params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("parameters")
    g.add_argument("--config", type=Path, help="key = value parameter file")
    g.add_argument("--min-pair-freq", type=int, help="minimum pair occurrences per term (default 2)")
    g.add_argument("--window", type=int, help="tokens scanned after a verb (default 5)")
    g.add_argument("--term-fraction", help="share of concept terms kept as features (default 1/2)")
    g.add_argument("--k", type=int, help="number of clusters (default 4)")
    g.add_argument("--max-iter", type=int, help="k-means iteration cap (default 100)")
    g.add_argument("--min-share", help="cluster share needed to explain a cluster (default 1/2)")
    g.add_argument("--seed", type=int, help="use seeded random k-means initialisation")
    g.add_argument("--out-dir", type=Path, help="write artifacts here instead of stdout")
    g.add_argument("--format", choices=FORMATS, help="output format for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conceptseg",
        description="Taxonomy learning by formal concept analysis and concept-oriented text segmentation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract-pairs", help="annotated corpus -> verb/noun pair TSV")
    p.add_argument("corpus", type=Path)
    _params(p)

    p = sub.add_parser("build-context", help="pair TSV -> formal context (CXT or JSON)")
    p.add_argument("pairs", type=Path)
    _params(p)

    p = sub.add_parser("lattice", help="context (CXT or JSON) -> lattice JSON and DOT")
    p.add_argument("context", type=Path)
    _params(p)

    p = sub.add_parser("taxonomy", help="context (CXT or JSON) -> taxonomy JSON or DOT")
    p.add_argument("context", type=Path)
    p.add_argument("--rename", type=Path, help="old = new term rename file")
    _params(p)

    p = sub.add_parser("segment", help="corpus + taxonomy JSON -> segmentation report")
    p.add_argument("corpus", type=Path)
    p.add_argument("taxonomy", type=Path)
    p.add_argument("--context", type=Path, help="take the concept terms from this context")
    _params(p)

    p = sub.add_parser("pipeline", help="run every stage and write all artifacts")
    p.add_argument("corpus", type=Path)
    p.add_argument("--rename", type=Path, help="old = new term rename file")
    _params(p)
    return parser


def _config(args: argparse.Namespace) -> PipelineConfig:
    base = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    return base.updated(
        {
            "min_pair_freq": args.min_pair_freq,
            "window": args.window,
            "term_fraction": args.term_fraction,
            "k": args.k,
            "max_iter": args.max_iter,
            "min_share": args.min_share,
            "seed": args.seed,
            "out_dir": str(args.out_dir) if args.out_dir else None,
        }
    )


def _emit(args: argparse.Namespace, outputs: dict[str, tuple[str, str]], default: str) -> None:
    """Write ``{format: (filename, text)}`` to ``--out-dir``, or one format to stdout."""
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        for filename, text in outputs.values():
            (args.out_dir / filename).write_text(text, encoding="utf-8")
        return
    fmt = args.format or default
    if fmt not in outputs:
        raise ConceptSegError(f"format {fmt!r} not available here; choose from {sorted(outputs)}")
    sys.stdout.write(outputs[fmt][1])


def cmd_extract_pairs(args: argparse.Namespace, config: PipelineConfig) -> None:
    pairs = extract_pairs(read_corpus(args.corpus), config.window)
    _emit(args, {"tsv": ("pairs.tsv", write_pairs(pairs))}, "tsv")
    print(f"{len(pairs)} pairs extracted", file=sys.stderr)


def cmd_build_context(args: argparse.Namespace, config: PipelineConfig) -> None:
    context = context_from_pairs(read_pairs(args.pairs), config.min_pair_freq)
    _emit(
        args,
        {"cxt": ("context.cxt", write_cxt(context)), "json": ("context.json", dumps(context_to_dict(context)))},
        "cxt",
    )


def cmd_lattice(args: argparse.Namespace, config: PipelineConfig) -> None:
    lattice = build_lattice(load_context(args.context))
    _emit(
        args,
        {"json": ("lattice.json", dumps(lattice_to_dict(lattice))), "dot": ("lattice.dot", lattice_to_dot(lattice))},
        "json",
    )


def cmd_taxonomy(args: argparse.Namespace, config: PipelineConfig) -> None:
    rename = read_rename_map(args.rename) if args.rename else None
    taxonomy = extract_taxonomy(build_lattice(load_context(args.context)), rename)
    _emit(
        args,
        {"json": ("taxonomy.json", dumps(taxonomy_to_dict(taxonomy))), "dot": ("taxonomy.dot", taxonomy_to_dot(taxonomy))},
        "json",
    )


def cmd_segment(args: argparse.Namespace, config: PipelineConfig) -> None:
    corpus = read_corpus(args.corpus)
    try:
        data = json.loads(args.taxonomy.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConceptSegError(f"{args.taxonomy}: invalid JSON: {exc}") from None
    taxonomy = taxonomy_from_dict(data)
    terms = concept_terms(load_context(args.context)) if args.context else None
    report = segment(corpus, taxonomy, config, terms)
    _emit(args, {"json": ("segmentation.json", dumps(report))}, "json")


def cmd_pipeline(args: argparse.Namespace, config: PipelineConfig) -> None:
    if not args.out_dir:
        raise ConceptSegError("pipeline requires --out-dir")
    rename = read_rename_map(args.rename) if args.rename else None
    result = run_pipeline(args.corpus, config, args.out_dir, rename)
    print("wrote " + ", ".join(sorted(result.files)), file=sys.stderr)


COMMANDS = {
    "extract-pairs": cmd_extract_pairs,
    "build-context": cmd_build_context,
    "lattice": cmd_lattice,
    "taxonomy": cmd_taxonomy,
    "segment": cmd_segment,
    "pipeline": cmd_pipeline,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _config(args)
        COMMANDS[args.command](args, config)
    except (ConceptSegError, OSError) as exc:
        error = {
            "error": type(exc).__name__,
            "command": args.command,
            "stage": getattr(exc, "stage", None),
            "message": str(exc),
        }
        line = getattr(exc, "line", None) or getattr(getattr(exc, "cause", None), "line", None)
        if line is not None:
            error["line"] = line
        print(json.dumps(error, ensure_ascii=False), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
