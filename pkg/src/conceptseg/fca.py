"""Formal contexts, derivation operators, concept enumeration and lattices.

Object and attribute sets are exchanged as ``frozenset`` of indices into the
context's ``objects`` / ``attributes`` tuples. Internally every set is an
integer bitmask, which keeps closure computation cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InputError, PreconditionError

MERGE_JOINER = "+"


def _bits(indices: Iterable[int], size: int, kind: str) -> int:
    mask = 0
    for i in indices:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < size:
            raise InputError(f"{kind} index {i!r} out of range 0..{size - 1}")
        mask |= 1 << i
    return mask


def _members(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class FormalContext:
    """A triple (objects, attributes, incidence).

    ``incidence[g][m]`` is true when object ``g`` has attribute ``m``.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: tuple[tuple[bool, ...], ...]
    _rows: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _cols: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        objects = tuple(str(o) for o in self.objects)
        attributes = tuple(str(a) for a in self.attributes)
        incidence = tuple(tuple(bool(x) for x in row) for row in self.incidence)
        if len(set(objects)) != len(objects):
            raise InputError("object names must be pairwise distinct")
        if len(set(attributes)) != len(attributes):
            raise InputError("attribute names must be pairwise distinct")
        if len(incidence) != len(objects):
            raise InputError(
                f"incidence has {len(incidence)} rows, expected {len(objects)}"
            )
        for g, row in enumerate(incidence):
            if len(row) != len(attributes):
                raise InputError(
                    f"incidence row {g} has {len(row)} columns, expected {len(attributes)}"
                )
        rows = tuple(
            sum(1 << m for m, x in enumerate(row) if x) for row in incidence
        )
        cols = tuple(
            sum(1 << g for g, row in enumerate(incidence) if row[m])
            for m in range(len(attributes))
        )
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "incidence", incidence)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_cols", cols)

    @classmethod
    def from_pairs(
        cls,
        objects: Sequence[str],
        attributes: Sequence[str],
        pairs: Iterable[tuple[str, str]],
    ) -> "FormalContext":
        """Build a context from ``(object, attribute)`` name pairs."""
        gi = {g: i for i, g in enumerate(objects)}
        mi = {m: i for i, m in enumerate(attributes)}
        matrix = [[False] * len(attributes) for _ in objects]
        for g, m in pairs:
            if g not in gi:
                raise InputError(f"unknown object {g!r}")
            if m not in mi:
                raise InputError(f"unknown attribute {m!r}")
            matrix[gi[g]][mi[m]] = True
        return cls(tuple(objects), tuple(attributes), tuple(map(tuple, matrix)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.objects), len(self.attributes)

    def object_index(self, name: str | int) -> int:
        return self._index(name, self.objects, "object")

    def attribute_index(self, name: str | int) -> int:
        return self._index(name, self.attributes, "attribute")

    @staticmethod
    def _index(name: str | int, names: tuple[str, ...], kind: str) -> int:
        if isinstance(name, int) and not isinstance(name, bool):
            if not 0 <= name < len(names):
                raise InputError(f"{kind} index {name} out of range")
            return name
        try:
            return names.index(name)
        except ValueError:
            raise InputError(f"unknown {kind} {name!r}") from None

    def object_names(self, indices: Iterable[int]) -> list[str]:
        return [self.objects[i] for i in sorted(indices)]

    def attribute_names(self, indices: Iterable[int]) -> list[str]:
        return [self.attributes[i] for i in sorted(indices)]

    # bitmask primitives

    @property
    def _all_objects(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def _all_attributes(self) -> int:
        return (1 << len(self.attributes)) - 1

    def _up(self, objs: int) -> int:
        out = self._all_attributes
        g = 0
        while objs and out:
            if objs & 1:
                out &= self._rows[g]
            objs >>= 1
            g += 1
        return out

    def _down(self, attrs: int) -> int:
        out = self._all_objects
        m = 0
        while attrs and out:
            if attrs & 1:
                out &= self._cols[m]
            attrs >>= 1
            m += 1
        return out


def derive_attrs(context: FormalContext, object_set: Iterable[int]) -> frozenset[int]:
    """Attributes shared by every object in ``object_set`` (all attributes for an empty set)."""
    return _members(context._up(_bits(object_set, len(context.objects), "object")))


def derive_objs(context: FormalContext, attribute_set: Iterable[int]) -> frozenset[int]:
    """Objects having every attribute in ``attribute_set`` (all objects for an empty set)."""
    return _members(
        context._down(_bits(attribute_set, len(context.attributes), "attribute"))
    )


@dataclass(frozen=True, order=True)
class FormalConcept:
    extent: frozenset[int]
    intent: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "extent", frozenset(self.extent))
        object.__setattr__(self, "intent", frozenset(self.intent))


def is_concept(context: FormalContext, extent: Iterable[int], intent: Iterable[int]) -> bool:
    a = _bits(extent, len(context.objects), "object")
    b = _bits(intent, len(context.attributes), "attribute")
    return context._up(a) == b and context._down(b) == a


def concept_leq(c1: FormalConcept, c2: FormalConcept) -> bool:
    """Subconcept order: ``c1 <= c2`` iff the extent of ``c1`` is contained in that of ``c2``."""
    return c1.extent <= c2.extent


def _lectic_extents(context: FormalContext) -> Iterator[int]:
    """Yield every closed object set once, in lectic order (NextClosure)."""
    n = len(context.objects)
    full = context._all_objects

    def close(a: int) -> int:
        return context._down(context._up(a))

    a = close(0)
    yield a
    while a != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                a &= ~bit
                continue
            b = close(a | bit)
            if (b & ~a) & (bit - 1) == 0:
                a = b
                break
        yield a


def _concept_key(c: FormalConcept) -> tuple:
    return (-len(c.extent), tuple(sorted(c.extent)))


def enumerate_concepts(context: FormalContext) -> list[FormalConcept]:
    """All formal concepts, largest extent first, ties broken by the sorted extent."""
    concepts = [
        FormalConcept(_members(a), _members(context._up(a)))
        for a in _lectic_extents(context)
    ]
    concepts.sort(key=_concept_key)
    return concepts


@dataclass(frozen=True)
class ConceptLattice:
    """Concepts of a context together with their Hasse diagram.

    ``covers`` holds ``(child, parent)`` index pairs where ``parent`` covers
    ``child``. ``introduced_objects`` / ``introduced_attributes`` map a name
    to the index of the concept introducing it.
    """

    context: FormalContext
    concepts: tuple[FormalConcept, ...]
    covers: frozenset[tuple[int, int]]
    top: int
    bottom: int
    introduced_objects: Mapping[str, int]
    introduced_attributes: Mapping[str, int]

    def __len__(self) -> int:
        return len(self.concepts)

    def parents(self, index: int) -> list[int]:
        return sorted(p for c, p in self.covers if c == index)

    def children(self, index: int) -> list[int]:
        return sorted(c for c, p in self.covers if p == index)

    def objects_at(self, index: int) -> list[str]:
        """Object names introduced at concept ``index``, in context order."""
        return [g for g in self.context.objects if self.introduced_objects[g] == index]

    def attributes_at(self, index: int) -> list[str]:
        """Attribute names introduced at concept ``index``, in context order."""
        return [
            m for m in self.context.attributes if self.introduced_attributes[m] == index
        ]

    def index_of_extent(self, extent: Iterable[int]) -> int:
        target = frozenset(extent)
        for i, c in enumerate(self.concepts):
            if c.extent == target:
                return i
        raise InputError(f"no concept with extent {sorted(target)}")


def _hasse(concepts: Sequence[FormalConcept]) -> frozenset[tuple[int, int]]:
    order = sorted(range(len(concepts)), key=lambda i: len(concepts[i].extent))
    covers = set()
    for i in order:
        ext = concepts[i].extent
        above = [j for j in order if ext < concepts[j].extent]
        # ``above`` is sorted by extent size, so any element strictly between
        # i and j appears before j.
        minimal: list[int] = []
        for j in above:
            if not any(concepts[k].extent < concepts[j].extent for k in minimal):
                minimal.append(j)
        covers.update((i, j) for j in minimal)
    return frozenset(covers)


def build_lattice(context: FormalContext) -> ConceptLattice:
    concepts = tuple(enumerate_concepts(context))
    by_extent = {c.extent: i for i, c in enumerate(concepts)}
    by_intent = {c.intent: i for i, c in enumerate(concepts)}
    top = by_extent[_members(context._all_objects)]
    bottom = by_intent[_members(context._all_attributes)]
    objs = {}
    for g, name in enumerate(context.objects):
        objs[name] = by_extent[_members(context._down(context._rows[g]))]
    attrs = {}
    for m, name in enumerate(context.attributes):
        attrs[name] = by_intent[_members(context._up(context._cols[m]))]
    return ConceptLattice(
        context=context,
        concepts=concepts,
        covers=_hasse(concepts),
        top=top,
        bottom=bottom,
        introduced_objects=MappingProxyType(objs),
        introduced_attributes=MappingProxyType(attrs),
    )


@dataclass(frozen=True)
class MergeReport:
    """Groups of original names merged by :func:`clarify`, keyed by the merged name."""

    objects: Mapping[str, tuple[str, ...]]
    attributes: Mapping[str, tuple[str, ...]]

    def __bool__(self) -> bool:
        return bool(self.objects or self.attributes)


def _groups(masks: Sequence[int]) -> list[list[int]]:
    seen: dict[int, list[int]] = {}
    for i, mask in enumerate(masks):
        seen.setdefault(mask, []).append(i)
    return list(seen.values())


def is_clarified(context: FormalContext) -> bool:
    return len(set(context._rows)) == len(context._rows) and len(
        set(context._cols)
    ) == len(context._cols)


def clarify(context: FormalContext) -> tuple[FormalContext, MergeReport]:
    """Merge objects with equal intents and attributes with equal extents.

    A merged name is the sorted member names joined by ``+``. The merged item
    keeps the position of its first member.
    """
    obj_groups = _groups(context._rows)
    objects = []
    obj_report = {}
    for grp in obj_groups:
        names = sorted(context.objects[g] for g in grp)
        name = MERGE_JOINER.join(names)
        objects.append(name)
        if len(grp) > 1:
            obj_report[name] = tuple(names)
    rows = [context.incidence[grp[0]] for grp in obj_groups]

    col_masks = [
        sum(1 << k for k, row in enumerate(rows) if row[m])
        for m in range(len(context.attributes))
    ]
    attr_groups = _groups(col_masks)
    attributes = []
    attr_report = {}
    for grp in attr_groups:
        names = sorted(context.attributes[m] for m in grp)
        name = MERGE_JOINER.join(names)
        attributes.append(name)
        if len(grp) > 1:
            attr_report[name] = tuple(names)
    incidence = tuple(tuple(row[grp[0]] for grp in attr_groups) for row in rows)
    clarified = FormalContext(tuple(objects), tuple(attributes), incidence)
    report = MergeReport(MappingProxyType(obj_report), MappingProxyType(attr_report))
    return clarified, report


@dataclass(frozen=True)
class Reducibility:
    """Outcome of a reducibility test; truthy when the item is reducible.

    ``witness`` is an inclusion-minimal set of other items whose derived sets
    intersect to the tested item's derived set, or ``None``.
    """

    reducible: bool
    witness: frozenset[int] | None

    def __bool__(self) -> bool:
        return self.reducible


def _reducibility(target: int, others: Sequence[tuple[int, int]], full: int) -> Reducibility:
    # Only items whose derived set contains the target's can occur in a witness.
    candidates = [(i, mask) for i, mask in others if mask & target == target]
    meet = full
    for _, mask in candidates:
        meet &= mask
    if meet != target:
        return Reducibility(False, None)
    chosen = list(candidates)
    for item in list(candidates):
        trial = [c for c in chosen if c is not item]
        meet = full
        for _, mask in trial:
            meet &= mask
        if meet == target:
            chosen = trial
    return Reducibility(True, frozenset(i for i, _ in chosen))


def _require_clarified(context: FormalContext) -> None:
    if not is_clarified(context):
        raise PreconditionError("context must be clarified first (see clarify())")


def is_reducible_attribute(context: FormalContext, attribute: str | int) -> Reducibility:
    """Whether the attribute's extent is an intersection of other attribute extents.

    The intersection of an empty family is the full object set, so an
    attribute shared by every object is reducible with an empty witness.
    """
    _require_clarified(context)
    m = context.attribute_index(attribute)
    others = [(j, c) for j, c in enumerate(context._cols) if j != m]
    return _reducibility(context._cols[m], others, context._all_objects)


def is_reducible_object(context: FormalContext, obj: str | int) -> Reducibility:
    _require_clarified(context)
    g = context.object_index(obj)
    others = [(h, r) for h, r in enumerate(context._rows) if h != g]
    return _reducibility(context._rows[g], others, context._all_attributes)


def _drop(context: FormalContext, obj: int | None = None, attr: int | None = None) -> FormalContext:
    objects = [g for i, g in enumerate(context.objects) if i != obj]
    attributes = [m for j, m in enumerate(context.attributes) if j != attr]
    incidence = tuple(
        tuple(x for j, x in enumerate(row) if j != attr)
        for i, row in enumerate(context.incidence)
        if i != obj
    )
    return FormalContext(tuple(objects), tuple(attributes), incidence)


def reduce(context: FormalContext) -> FormalContext:
    """Delete reducible attributes, then reducible objects, until none remain.

    Items are examined in list order and reducibility is re-checked after
    every deletion.
    """
    _require_clarified(context)
    changed = True
    while changed:
        changed = False
        for kind in ("attribute", "object"):
            progress = True
            while progress:
                progress = False
                names = context.attributes if kind == "attribute" else context.objects
                for i in range(len(names)):
                    if kind == "attribute":
                        if is_reducible_attribute(context, i):
                            context = _drop(context, attr=i)
                            progress = changed = True
                            break
                    elif is_reducible_object(context, i):
                        context = _drop(context, obj=i)
                        progress = changed = True
                        break
    return context
