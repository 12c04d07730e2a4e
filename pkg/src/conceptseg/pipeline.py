"""End-to-end composition: corpus -> pairs -> context -> lattice -> taxonomy -> segmentation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .config import PipelineConfig
from .errors import ConceptSegError, InputError
from .fca import ConceptLattice, FormalContext, build_lattice
from .formats import dumps, lattice_to_dict, lattice_to_dot, write_cxt
from .segmentation import (
    build_vectors,
    compute_frequencies,
    kmeans,
    segmentation_report,
    select_terms,
)
from .taxonomy import SYNTHETIC_ROOT, Taxonomy, extract_taxonomy, taxonomy_to_dict, taxonomy_to_dot
from .textio import AnnotatedCorpus, VerbNounPair, build_context, extract_pairs, filter_frequent, read_corpus, write_pairs

log = logging.getLogger(__name__)


class PipelineError(ConceptSegError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, cause: Exception | str):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage} failed: {cause}")


def context_from_pairs(pairs: Iterable[VerbNounPair], min_freq: int) -> FormalContext:
    verbs, nouns, kept = filter_frequent(list(pairs), min_freq)
    if not kept:
        raise InputError(
            f"no verb/noun pair has both terms occurring in >= {min_freq} pairs; "
            "the formal context would be empty"
        )
    return build_context(kept, nouns, verbs)


def concept_terms(context: FormalContext) -> list[str]:
    return sorted(set(context.objects) | set(context.attributes))


def taxonomy_terms(taxonomy: Taxonomy) -> list[str]:
    return sorted(taxonomy.nodes - {SYNTHETIC_ROOT})


def segment(
    corpus: AnnotatedCorpus,
    taxonomy: Taxonomy,
    config: PipelineConfig,
    terms: Iterable[str] | None = None,
) -> dict:
    """Run the clustering segmentation and return the JSON-ready report."""
    terms = list(terms) if terms is not None else taxonomy_terms(taxonomy)
    table = compute_frequencies(corpus, terms, taxonomy)
    selected = select_terms(table, config.term_fraction)
    vectors = build_vectors(table, selected)
    result = kmeans(vectors, config.k, config.max_iter, seed=config.seed)
    log.info(
        "k-means: %d clusters after %d iterations (converged=%s)",
        len(result.clusters), result.iterations, result.converged,
    )
    return segmentation_report(table, selected, result, config.k, config.min_share)


@dataclass(frozen=True)
class PipelineResult:
    pairs: list[VerbNounPair]
    context: FormalContext
    lattice: ConceptLattice
    taxonomy: Taxonomy
    report: dict
    files: Mapping[str, Path]


def run_pipeline(
    corpus_path: str | Path,
    config: PipelineConfig,
    out_dir: str | Path,
    rename: Mapping[str, str] | None = None,
) -> PipelineResult:
    """Run every stage, writing each artifact into ``out_dir`` as soon as it exists.

    Raises :class:`PipelineError` naming the first stage that fails.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, Path] = {}

    def write(name: str, text: str) -> None:
        path = out / name
        path.write_text(text, encoding="utf-8")
        files[name] = path

    def stage(name: str, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConceptSegError, OSError) as exc:
            raise PipelineError(name, exc) from exc

    write("config.txt", config.to_text())
    corpus = stage("parse-corpus", read_corpus, corpus_path)
    pairs = stage("extract-pairs", extract_pairs, corpus, config.window)
    write("pairs.tsv", write_pairs(pairs))
    log.info("extracted %d pairs from %d sentences", len(pairs), len(corpus))
    context = stage("build-context", context_from_pairs, pairs, config.min_pair_freq)
    write("context.cxt", write_cxt(context))
    lattice = stage("lattice", build_lattice, context)
    write("lattice.json", dumps(lattice_to_dict(lattice)))
    write("lattice.dot", lattice_to_dot(lattice))
    taxonomy = stage("taxonomy", extract_taxonomy, lattice, rename)
    write("taxonomy.json", dumps(taxonomy_to_dict(taxonomy)))
    write("taxonomy.dot", taxonomy_to_dot(taxonomy))
    terms = concept_terms(context)
    if rename:
        terms = sorted({rename.get(t, t) for t in terms})
    report = stage("segment", segment, corpus, taxonomy, config, terms)
    write("segmentation.json", dumps(report))
    return PipelineResult(pairs, context, lattice, taxonomy, report, files)
