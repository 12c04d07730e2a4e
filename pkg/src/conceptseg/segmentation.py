"""Concept-oriented clustering segmentation.

Sentences become vectors of taxonomy-smoothed concept-term counts, are
clustered with a cosine k-means, and each cluster's members become the
boundaries of one linear segmentation of the text.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError
from .taxonomy import Taxonomy
from .textio import AnnotatedCorpus


@dataclass(frozen=True)
class TermFrequencyTable:
    """Per-sentence counts for each concept term.

    ``f[i][t]`` is the raw lemma count of ``t`` in sentence ``i + 1``;
    ``total_s[i][t]`` adds the counts of the term's direct descendants;
    ``total[t]`` sums ``total_s`` over all sentences.
    """

    terms: tuple[str, ...]
    f: tuple[Mapping[str, int], ...]
    total_s: tuple[Mapping[str, int], ...]
    total: Mapping[str, int]

    @property
    def n(self) -> int:
        return len(self.f)

    def freq(self, sentence: int, term: str) -> int:
        return self.f[sentence - 1][term]

    def smoothed(self, sentence: int, term: str) -> int:
        return self.total_s[sentence - 1][term]


@dataclass(frozen=True)
class SentenceVector:
    sentence_index: int
    values: tuple[float, ...]

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class IterationStats:
    """Within-cluster dissimilarity for one pass, measured against the same centroids.

    ``before`` scores the previous assignment and ``after`` the new
    argmax-cosine assignment; on the first pass the two coincide.
    """

    before: float
    after: float


@dataclass(frozen=True)
class ClusteringResult:
    clusters: tuple[frozenset[int], ...]
    centroids: tuple[tuple[float, ...], ...]
    iterations: int
    excluded: frozenset[int]
    converged: bool = True
    history: tuple[IterationStats, ...] = ()


@dataclass(frozen=True)
class Segmentation:
    segments: tuple[tuple[int, int], ...]
    source_cluster: int | None = None
    explanation: tuple[str, ...] = ()


def compute_frequencies(
    corpus: AnnotatedCorpus, terms: Iterable[str], taxonomy: Taxonomy
) -> TermFrequencyTable:
    terms = tuple(sorted(set(terms)))
    if not terms:
        raise InputError("at least one concept term is required")
    children = {
        t: taxonomy.children(t) if t in taxonomy.nodes else [] for t in terms
    }
    wanted = set(terms)
    for kids in children.values():
        wanted.update(kids)
    f_rows = []
    ts_rows = []
    for sentence in corpus.sentences:
        counts = Counter(tok.lemma for tok in sentence if tok.lemma in wanted)
        f_rows.append({t: counts[t] for t in terms})
        ts_rows.append(
            {t: counts[t] + sum(counts[c] for c in children[t]) for t in terms}
        )
    total = {t: sum(row[t] for row in ts_rows) for t in terms}
    return TermFrequencyTable(terms, tuple(f_rows), tuple(ts_rows), total)


def select_terms(table: TermFrequencyTable, fraction: Fraction | float | str = Fraction(1, 2)) -> list[str]:
    """The ``ceil(fraction * |terms|)`` terms with highest total, ties lexicographic."""
    fraction = Fraction(fraction)
    if not 0 < fraction <= 1:
        raise InputError(f"fraction must lie in (0, 1], got {fraction}")
    m = math.ceil(fraction * len(table.terms))
    ranked = sorted(table.terms, key=lambda t: (-table.total[t], t))
    return ranked[:m]


def build_vectors(table: TermFrequencyTable, selected: Sequence[str]) -> list[SentenceVector]:
    if not selected:
        raise InputError("selected term list must be non-empty")
    unknown = [t for t in selected if t not in table.total]
    if unknown:
        raise InputError(f"selected terms not in the frequency table: {unknown}")
    return [
        SentenceVector(i, tuple(float(row[t]) for t in selected))
        for i, row in enumerate(table.total_s, start=1)
    ]


def cosine_similarity(u: Sequence[float], v: Sequence[float]) -> float:
    """Cosine of the angle between ``u`` and ``v``; 0 when either is the zero vector."""
    if len(u) != len(v):
        raise InputError(f"dimension mismatch: {len(u)} != {len(v)}")
    a = np.asarray(u, dtype=float)
    b = np.asarray(v, dtype=float)
    na = math.sqrt(float(a @ a))
    nb = math.sqrt(float(b @ b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(a @ b) / (na * nb)


def _cosine_matrix(x: np.ndarray, c: np.ndarray) -> np.ndarray:
    xn = np.linalg.norm(x, axis=1, keepdims=True)
    cn = np.linalg.norm(c, axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        sims = (x @ c.T) / (xn * cn.T)
    return np.nan_to_num(sims, nan=0.0)


def _objective(sims: np.ndarray, labels: np.ndarray) -> float:
    return float(np.sum(1.0 - sims[np.arange(len(labels)), labels]))


def _farthest_first(x: np.ndarray, k: int) -> list[int]:
    norms = np.linalg.norm(x, axis=1)
    # argmax returns the first maximum, i.e. the lowest sentence index.
    chosen = [int(np.argmax(norms))]
    dissim = 1.0 - _cosine_matrix(x, x[chosen[0] : chosen[0] + 1])[:, 0]
    for _ in range(1, k):
        masked = dissim.copy()
        masked[chosen] = -np.inf
        nxt = int(np.argmax(masked))
        chosen.append(nxt)
        dissim = np.minimum(dissim, 1.0 - _cosine_matrix(x, x[nxt : nxt + 1])[:, 0])
    return chosen


def kmeans(
    vectors: Sequence[SentenceVector],
    k: int,
    max_iter: int = 100,
    seed: int | None = None,
) -> ClusteringResult:
    """Cosine k-means over the non-zero sentence vectors.

    Seeds are chosen by farthest-first traversal unless ``seed`` is given, in
    which case ``k`` distinct non-zero vectors are drawn with that seed. Each
    vector joins the centroid of highest cosine (lowest cluster id on ties),
    centroids are member means, and clusters left empty are dropped. Stops
    when an assignment repeats or after ``max_iter`` passes.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if max_iter < 1:
        raise InputError(f"max_iter must be >= 1, got {max_iter}")
    live = sorted((v for v in vectors if not v.is_zero()), key=lambda v: v.sentence_index)
    excluded = frozenset(v.sentence_index for v in vectors if v.is_zero())
    if len(live) < k:
        raise InputError(
            f"k={k} clusters requested but only {len(live)} of {len(vectors)} "
            "sentence vectors are non-zero; use a smaller k"
        )
    ids = np.array([v.sentence_index for v in live])
    x = np.array([v.values for v in live], dtype=float)

    if seed is None:
        seeds = _farthest_first(x, k)
    else:
        rng = np.random.default_rng(seed)
        seeds = sorted(int(i) for i in rng.choice(len(live), size=k, replace=False))
    centroids = x[seeds].copy()

    labels = None
    history = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        sims = _cosine_matrix(x, centroids)
        new = np.argmax(sims, axis=1)
        old = labels if labels is not None else new
        history.append(IterationStats(_objective(sims, old), _objective(sims, new)))
        if labels is not None and np.array_equal(new, labels):
            converged = True
            break
        used = sorted(set(new.tolist()))
        remap = {c: j for j, c in enumerate(used)}
        labels = np.array([remap[c] for c in new.tolist()])
        centroids = np.array([x[labels == j].mean(axis=0) for j in range(len(used))])

    clusters = tuple(frozenset(int(i) for i in ids[labels == j]) for j in range(len(centroids)))
    return ClusteringResult(
        clusters=clusters,
        centroids=tuple(tuple(float(v) for v in c) for c in centroids),
        iterations=iterations,
        excluded=excluded,
        converged=converged,
        history=tuple(history),
    )


def cluster_to_segmentation(cluster: Iterable[int], n: int) -> Segmentation:
    """Contiguous segments of 1..n that start at each cluster member."""
    members = sorted(set(cluster))
    if not members:
        raise InputError("cluster must be non-empty")
    bad = [i for i in members if not 1 <= i <= n]
    if bad:
        raise InputError(f"cluster members {bad} outside 1..{n}")
    starts = members if members[0] == 1 else [1] + members
    ends = [s - 1 for s in starts[1:]] + [n]
    return Segmentation(tuple(zip(starts, ends)))


def explain_cluster(
    cluster: Iterable[int],
    table: TermFrequencyTable,
    selected: Sequence[str],
    min_share: Fraction | float | str = Fraction(1, 2),
) -> list[str]:
    """Selected terms whose smoothed mass falls at least ``min_share`` inside the cluster."""
    members = sorted(set(cluster))
    if not members:
        raise InputError("cluster must be non-empty")
    min_share = Fraction(min_share)
    out = []
    for t in selected:
        inside = sum(table.smoothed(i, t) for i in members)
        if inside > 0 and Fraction(inside, table.total[t]) >= min_share:
            out.append(t)
    return sorted(out)


def segmentation_report(
    table: TermFrequencyTable,
    selected: Sequence[str],
    result: ClusteringResult,
    k: int,
    min_share: Fraction | float | str = Fraction(1, 2),
) -> dict:
    clusters = []
    for cid, members in enumerate(result.clusters, start=1):
        seg = cluster_to_segmentation(members, table.n)
        clusters.append(
            {
                "id": cid,
                "members": sorted(members),
                "terms": explain_cluster(members, table, selected, min_share),
                "segments": [list(s) for s in seg.segments],
            }
        )
    return {
        "k": k,
        "m": len(selected),
        "selected_terms": list(selected),
        "excluded": sorted(result.excluded),
        "clusters": clusters,
    }
