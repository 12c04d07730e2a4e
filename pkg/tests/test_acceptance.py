"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""

import time

import numpy as np
import pytest

from conceptseg.fca import (
    FormalContext,
    build_lattice,
    clarify,
    derive_attrs,
    derive_objs,
    enumerate_concepts,
    reduce,
)
from conceptseg.segmentation import (
    SentenceVector,
    cluster_to_segmentation,
    compute_frequencies,
    kmeans,
)
from conceptseg.taxonomy import extract_taxonomy, root_to_leaf_paths

from .conftest import TOURISM_CONCEPTS, TOURISM_TAXONOMY, named
from .oracles import brute_concepts, random_incidence
from .test_segmentation import C1, C1_SEGMENTS, C2, C2_SEGMENTS, LAW_STUB


def report(number, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def random_context(rng):
    rows, n, m = random_incidence(rng)
    return FormalContext(
        tuple(f"g{i}" for i in range(n)),
        tuple(f"m{j}" for j in range(m)),
        tuple(tuple(r) for r in rows),
    )


def concept_count(context):
    return len(enumerate_concepts(context))


def test_1_tourism_concepts(tourism):
    start = time.perf_counter()
    concepts = enumerate_concepts(tourism)
    elapsed = time.perf_counter() - start
    got = {(frozenset(a), frozenset(b)) for a, b in (named(tourism, c) for c in concepts)}
    want = {(frozenset(a), frozenset(b)) for a, b in TOURISM_CONCEPTS.values()}
    report(1, got == want and len(concepts) == 6 and elapsed < 1.0,
           f"{len(concepts)} concepts, set-equal={got == want}, {elapsed * 1000:.2f} ms (< 1 s)")


def test_2_tourism_lattice(tourism):
    lattice = build_lattice(tourism)
    label = {}
    for i, c in enumerate(lattice.concepts):
        extent, _ = named(tourism, c)
        label[i] = next(k for k, (a, _) in TOURISM_CONCEPTS.items() if a == extent)
    covers = {(label[a], label[b]) for a, b in lattice.covers}
    want_covers = {("C2", "C1"), ("C5", "C1"), ("C3", "C2"), ("C4", "C3"), ("C6", "C4"), ("C6", "C5")}
    intro = {
        label[i]: (set(lattice.objects_at(i)), set(lattice.attributes_at(i)))
        for i in range(len(lattice))
    }
    want_intro = {
        "C1": ({"hotel"}, {"bookable"}),
        "C2": ({"apartment"}, {"rentable"}),
        "C3": ({"car"}, {"driveable"}),
        "C4": ({"motor-bike"}, {"rideable"}),
        "C5": ({"excursion", "trip"}, {"joinable"}),
        "C6": (set(), set()),
    }
    report(2, covers == want_covers and intro == want_intro,
           f"covers exact={covers == want_covers}, introduction labels exact={intro == want_intro}")


def test_3_tourism_taxonomy(tourism):
    taxonomy = extract_taxonomy(build_lattice(tourism))
    path = ("bookable", "rentable", "driveable", "rideable", "motor-bike")
    has_path = path in root_to_leaf_paths(taxonomy)
    report(3, set(taxonomy.edges) == TOURISM_TAXONOMY and has_path,
           f"{len(taxonomy.edges)} edges, exact={set(taxonomy.edges) == TOURISM_TAXONOMY}, "
           f"path {'->'.join(path)} present={has_path}")


def test_4_worked_frequency(law_corpus):
    table = compute_frequencies(law_corpus, ["concern", "justice", "system"], LAW_STUB)
    value = table.smoothed(14, "concern")
    report(4, value == 2, f"Total_S(14, concern) = {value} (expected 2)")


def test_5_segment_lists():
    s1 = cluster_to_segmentation(C1, 102).segments
    s2 = cluster_to_segmentation(C2, 102).segments
    ok = s1 == C1_SEGMENTS and s2 == C2_SEGMENTS
    report(5, ok, f"C1 {len(s1)} segments ending {list(s1[-1])}, C2 {len(s2)} segments "
                  f"with singleton [53,53]={(53, 53) in s2}, exact={ok}")


def test_6_oracle_equivalence():
    rng = np.random.default_rng(6)
    start = time.perf_counter()
    runs = 150
    mismatches = []
    for r in range(runs):
        ctx = random_context(rng)
        n, m = ctx.shape
        got = {(c.extent, c.intent) for c in enumerate_concepts(ctx)}
        if got != brute_concepts(ctx.incidence, n, m):
            mismatches.append((r, "enumeration"))
            continue
        clarified, _ = clarify(ctx)
        if concept_count(clarified) != len(got):
            mismatches.append((r, "clarify"))
        elif concept_count(reduce(clarified)) != len(got):
            mismatches.append((r, "reduce"))
    elapsed = time.perf_counter() - start
    report(6, not mismatches and elapsed < 10.0,
           f"{runs} random contexts <= 6x6, mismatches={mismatches[:3]}, {elapsed:.2f} s (< 10 s)")


def test_7_galois_properties():
    rng = np.random.default_rng(7)
    runs = 250
    failures = []
    for r in range(runs):
        ctx = random_context(rng)
        n, m = ctx.shape
        for _ in range(4):
            a = frozenset(np.flatnonzero(rng.random(n) < 0.5).tolist())
            a2 = a | frozenset(np.flatnonzero(rng.random(n) < 0.3).tolist())
            b = frozenset(np.flatnonzero(rng.random(m) < 0.5).tolist())
            b2 = b | frozenset(np.flatnonzero(rng.random(m) < 0.3).tolist())
            a_up, b_down = derive_attrs(ctx, a), derive_objs(ctx, b)
            checks = {
                "extensivity": a <= derive_objs(ctx, a_up) and b <= derive_attrs(ctx, b_down),
                "idempotence": derive_attrs(ctx, derive_objs(ctx, a_up)) == a_up
                and derive_objs(ctx, derive_attrs(ctx, b_down)) == b_down,
                "antitonicity": derive_attrs(ctx, a2) <= a_up and derive_objs(ctx, b2) <= b_down,
                "adjunction": (a <= b_down) == (b <= a_up),
            }
            failures += [(r, name) for name, ok in checks.items() if not ok]
    report(7, not failures,
           f"{runs} random contexts <= 6x6, 4 properties x 4 samples each, failures={failures[:3]}")


def test_8_clustering_properties():
    rng = np.random.default_rng(8)
    runs = 120
    problems = []
    for r in range(runs):
        n = int(rng.integers(1, 51))
        m = int(rng.integers(1, 11))
        raw = rng.integers(0, 4, size=(n, m)) * (rng.random((n, m)) < 0.6)
        vectors = [SentenceVector(i + 1, tuple(float(x) for x in row)) for i, row in enumerate(raw)]
        live = {v.sentence_index for v in vectors if not v.is_zero()}
        if not live:
            continue
        k = int(rng.integers(1, min(5, len(live)) + 1))
        max_iter = int(rng.integers(1, 30))
        seed = None if r % 2 else int(rng.integers(0, 1000))
        res = kmeans(vectors, k, max_iter, seed=seed)
        again = kmeans(vectors, k, max_iter, seed=seed)
        members = [i for c in res.clusters for i in c]
        if res.iterations > max_iter:
            problems.append((r, "iterations"))
        if sorted(members) != sorted(live) or any(not c for c in res.clusters) or len(res.clusters) > k:
            problems.append((r, "partition"))
        if any(s.after > s.before + 1e-9 for s in res.history):
            problems.append((r, "objective"))
        if repr(res) != repr(again):
            problems.append((r, "determinism"))
    report(8, not problems,
           f"{runs} random vector sets (n <= 50, m <= 10, k <= 5), objective checked per assignment "
           f"step, problems={problems[:3]}")


def test_9_law_experiment_not_reproducible():
    print("\nN/A criterion 9: full 320-sentence law experiment not reproducible; only the 30-sentence "
          "extract is available. Substituted by criteria 4-5 and the property suites 6-8.")
    pytest.skip("full law corpus unavailable; covered by criteria 4-8")
