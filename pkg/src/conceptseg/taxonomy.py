"""Quasi-tree taxonomy read off a concept lattice.

Internal nodes are attribute terms (verbs), leaves are object terms (nouns).
Each lattice node gets a set of *anchors*: the attributes it introduces, or,
when it introduces none, the anchors inherited from every parent. An anchor
receives an edge to each object introduced at the node and to each attribute
introduced at a node directly below it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

from .errors import FormatError, InputError
from .fca import ConceptLattice
from .formats import dot_label

SYNTHETIC_ROOT = "⊤"


@dataclass(frozen=True)
class EdgeReason:
    """Why an edge exists: ``rule`` is ``"introduction"``, ``"cover"`` or ``"root"``.

    ``concept`` is the lattice node holding the anchor; ``target`` the node
    that introduces the child term (same as ``concept`` for introductions).
    """

    rule: str
    concept: int | None
    target: int | None


@dataclass(frozen=True)
class Taxonomy:
    verbs: frozenset[str]
    nouns: frozenset[str]
    edges: frozenset[tuple[str, str]]
    root: str
    trace: Mapping[tuple[str, str], tuple[EdgeReason, ...]] = field(
        default_factory=lambda: MappingProxyType({}), compare=False, repr=False
    )

    @property
    def nodes(self) -> frozenset[str]:
        return self.verbs | self.nouns | {self.root}

    def children(self, term: str) -> list[str]:
        return sorted(c for p, c in self.edges if p == term)

    def parents(self, term: str) -> list[str]:
        return sorted(p for p, c in self.edges if c == term)


def extract_taxonomy(
    lattice: ConceptLattice, rename: Mapping[str, str] | None = None
) -> Taxonomy:
    """Build the quasi-tree for ``lattice``.

    A synthetic root ``⊤`` is used when the top concept introduces no
    attribute or more than one. ``rename`` optionally relabels terms, e.g.
    ``{"joinable": "join"}``.
    """
    n = len(lattice)
    empty_bottom = not lattice.concepts[lattice.bottom].extent
    skip = {lattice.bottom} if empty_bottom else set()
    edges: dict[tuple[str, str], list[EdgeReason]] = {}

    def add(parent: str, child: str, reason: EdgeReason) -> None:
        if parent != child:
            edges.setdefault((parent, child), []).append(reason)

    top_attrs = lattice.attributes_at(lattice.top)
    root = top_attrs[0] if len(top_attrs) == 1 else SYNTHETIC_ROOT

    # Concepts are sorted by decreasing extent size, so parents come first.
    anchors: dict[int, list[str]] = {}
    for i in range(n):
        if i in skip and i != lattice.top:
            continue
        own = lattice.attributes_at(i)
        if own:
            anchors[i] = own
        elif i == lattice.top:
            anchors[i] = [SYNTHETIC_ROOT]
        else:
            inherited: set[str] = set()
            for p in lattice.parents(i):
                inherited.update(anchors.get(p, ()))
            anchors[i] = sorted(inherited)

    if root == SYNTHETIC_ROOT:
        for a in top_attrs:
            add(root, a, EdgeReason("root", None, lattice.top))

    for i in range(n):
        if i not in anchors or (i in skip):
            continue
        for alpha in anchors[i]:
            for o in lattice.objects_at(i):
                add(alpha, o, EdgeReason("introduction", i, i))
            for j in lattice.children(i):
                if j in skip:
                    continue
                for a in lattice.attributes_at(j):
                    add(alpha, a, EdgeReason("cover", i, j))

    # Attributes shared by no object sit at an empty bottom and are left out.
    verbs = {
        m
        for m, i in lattice.introduced_attributes.items()
        if i not in skip or i == lattice.top
    }
    tax = Taxonomy(
        verbs=frozenset(verbs),
        nouns=frozenset(lattice.context.objects),
        edges=frozenset(edges),
        root=root,
        trace=MappingProxyType({e: tuple(r) for e, r in edges.items()}),
    )
    return rename_terms(tax, rename) if rename else tax


def rename_terms(taxonomy: Taxonomy, mapping: Mapping[str, str]) -> Taxonomy:
    def r(t: str) -> str:
        return mapping.get(t, t)

    return Taxonomy(
        verbs=frozenset(map(r, taxonomy.verbs)),
        nouns=frozenset(map(r, taxonomy.nouns)),
        edges=frozenset((r(p), r(c)) for p, c in taxonomy.edges),
        root=r(taxonomy.root),
        trace=MappingProxyType(
            {(r(p), r(c)): why for (p, c), why in taxonomy.trace.items()}
        ),
    )


def direct_descendants(taxonomy: Taxonomy, term: str) -> frozenset[str]:
    if term not in taxonomy.nodes:
        raise InputError(f"term {term!r} is not in the taxonomy")
    return frozenset(c for p, c in taxonomy.edges if p == term)


def root_to_leaf_paths(taxonomy: Taxonomy) -> list[tuple[str, ...]]:
    """Every simple path from the root to a leaf, depth first with sorted children."""
    children = {t: taxonomy.children(t) for t in taxonomy.nodes}
    paths: list[tuple[str, ...]] = []
    stack: list[tuple[str, ...]] = [(taxonomy.root,)]
    while stack:
        path = stack.pop()
        kids = [c for c in children[path[-1]] if c not in path]
        if not kids:
            paths.append(path)
            continue
        for c in reversed(kids):
            stack.append(path + (c,))
    return paths


def taxonomy_to_dict(taxonomy: Taxonomy) -> dict[str, Any]:
    return {
        "root": taxonomy.root,
        "nodes": {"verbs": sorted(taxonomy.verbs), "nouns": sorted(taxonomy.nouns)},
        "edges": [list(e) for e in sorted(taxonomy.edges)],
    }


def taxonomy_from_dict(data: Mapping[str, Any]) -> Taxonomy:
    try:
        nodes = data["nodes"]
        verbs = frozenset(nodes["verbs"])
        nouns = frozenset(nodes["nouns"])
        edges = frozenset((str(p), str(c)) for p, c in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"taxonomy JSON invalid: {exc!r}") from None
    root = data.get("root")
    if root is None:
        # The root is the only node without a parent that has children.
        children = {c for _, c in edges}
        candidates = sorted({p for p, _ in edges} - children) or sorted(verbs | nouns)[:1]
        if len(candidates) != 1:
            raise FormatError(f"taxonomy JSON has no unique root: {candidates}")
        root = candidates[0]
    known = verbs | nouns | {root}
    for p, c in edges:
        if p not in known or c not in known:
            raise FormatError(f"taxonomy edge {p!r}->{c!r} uses an undeclared node")
    return Taxonomy(verbs=verbs, nouns=nouns, edges=edges, root=str(root))


def taxonomy_to_dot(taxonomy: Taxonomy) -> str:
    lines = ["digraph taxonomy {", "  node [shape=ellipse];"]
    for t in sorted(taxonomy.nodes):
        shape = "shape=box, " if t in taxonomy.nouns and t not in taxonomy.verbs else ""
        lines.append(f"  {dot_label(t)} [{shape}label={dot_label(t)}];")
    for p, c in sorted(taxonomy.edges):
        lines.append(f"  {dot_label(p)} -> {dot_label(c)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
