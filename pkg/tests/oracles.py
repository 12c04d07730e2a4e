"""Brute-force reference computations, deliberately independent of the library code."""

from __future__ import annotations

from itertools import chain, combinations

import numpy as np


def powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def up(incidence, objs, n_attrs):
    return frozenset(m for m in range(n_attrs) if all(incidence[g][m] for g in objs))


def down(incidence, attrs, n_objs):
    return frozenset(g for g in range(n_objs) if all(incidence[g][m] for m in attrs))


def brute_concepts(incidence, n_objs, n_attrs):
    """All (A'', A') for A ranging over every subset of objects."""
    out = set()
    for a in powerset(range(n_objs)):
        b = up(incidence, a, n_attrs)
        out.add((down(incidence, b, n_objs), b))
    return out


def brute_covers(extents):
    """Hasse diagram of extent inclusion by checking every triple."""
    n = len(extents)
    less = {(i, j) for i in range(n) for j in range(n) if extents[i] < extents[j]}
    return {
        (i, j)
        for (i, j) in less
        if not any((i, k) in less and (k, j) in less for k in range(n))
    }


def brute_attribute_reducible(incidence, m, n_objs, n_attrs):
    """Smallest S with the intersection of column extents equal to m's, or None."""
    target = down(incidence, [m], n_objs)
    others = [j for j in range(n_attrs) if j != m]
    for s in powerset(others):
        meet = frozenset(range(n_objs))
        for j in s:
            meet &= down(incidence, [j], n_objs)
        if meet == target:
            return frozenset(s)
    return None


def cos(u, v):
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    return 0.0 if nu == 0 or nv == 0 else float(u @ v / (nu * nv))


def best_two_partition(vectors):
    """The 2-partition minimising total 1 - cosine to member means."""
    idx = list(range(len(vectors)))
    best = None
    for r in range(1, len(idx)):
        for left in combinations(idx, r):
            right = [i for i in idx if i not in left]
            cost = 0.0
            for part in (left, right):
                centre = np.mean([vectors[i] for i in part], axis=0)
                cost += sum(1 - cos(vectors[i], centre) for i in part)
            key = (round(cost, 12), frozenset(map(frozenset, (left, right))))
            if best is None or key[0] < best[0]:
                best = key
    return best[1]


def random_incidence(rng, max_objs=6, max_attrs=6, density=None):
    n = int(rng.integers(0, max_objs + 1))
    m = int(rng.integers(0, max_attrs + 1))
    p = rng.uniform(0.2, 0.8) if density is None else density
    return (rng.random((n, m)) < p).tolist(), n, m
