"""Finite categories: representation, validation and construction."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

logger = logging.getLogger("eulercat")

NatMatrix = Tuple[Tuple[int, ...], ...]

IDENTITY_PREFIX = "id_"


class CategoryError(ValueError):
    """Base class for invalid category data."""


class MissingComposite(CategoryError):
    """A composable pair of non-identity morphisms has no composite."""


class NonAssociative(CategoryError):
    """Composition fails associativity on the reported triple."""

    def __init__(self, h: str, g: str, f: str, left: str, right: str):
        self.triple = (h, g, f)
        super().__init__(
            f"Not associative: ({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}"
        )


class DuplicateLabel(CategoryError):
    """Two objects or two morphisms share a label."""


class DanglingReference(CategoryError):
    """A label refers to an object or morphism that was never declared."""


class InvalidComposite(CategoryError):
    """A composite has the wrong domain/codomain or breaks a unit law."""


class CyclicRelation(CategoryError):
    """Poset relations contain a directed cycle."""


class NotAMonoid(CategoryError):
    """A multiplication table is not total, unital and associative."""


class NotAcyclic(CategoryError):
    """An operation that needs an acyclic category got a cyclic one."""


@dataclass(frozen=True, order=True)
class ObjId:
    index: int
    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, order=True)
class MorId:
    index: int
    label: str
    dom: ObjId
    cod: ObjId
    is_identity: bool = False

    def __str__(self) -> str:
        return self.label


class FinCat:
    """A finite category with a total composition table.

    Objects and morphisms are identified by dense indices; every enumeration
    is in index order. Construction validates closure, unit laws and
    associativity, and the value is immutable afterwards.
    """

    __slots__ = ("objects", "morphisms", "_compose", "_identity", "_hom", "_out", "_by_label")

    def __init__(
        self,
        objects: Sequence[ObjId],
        morphisms: Sequence[MorId],
        compose: Mapping[Tuple[int, int], int],
    ):
        self.objects: Tuple[ObjId, ...] = tuple(objects)
        self.morphisms: Tuple[MorId, ...] = tuple(morphisms)
        self._compose: Dict[Tuple[int, int], int] = dict(compose)
        self._identity: Dict[int, MorId] = {}
        self._hom: Dict[Tuple[int, int], List[MorId]] = {}
        self._out: Dict[int, List[MorId]] = {o.index: [] for o in self.objects}
        self._by_label: Dict[str, MorId] = {}
        for m in self.morphisms:
            self._hom.setdefault((m.dom.index, m.cod.index), []).append(m)
            self._out[m.dom.index].append(m)
            self._by_label[m.label] = m
            if m.is_identity:
                self._identity[m.dom.index] = m
        self.validate()

    # -- lookup ---------------------------------------------------------------

    def identity(self, obj: ObjId) -> MorId:
        return self._identity[obj.index]

    def hom(self, x: ObjId, y: ObjId) -> Tuple[MorId, ...]:
        return tuple(self._hom.get((x.index, y.index), ()))

    def out_of(self, x: ObjId) -> Tuple[MorId, ...]:
        return tuple(self._out[x.index])

    def morphism(self, label: str) -> MorId:
        try:
            return self._by_label[label]
        except KeyError:
            raise DanglingReference(f"Unknown morphism: {label}") from None

    def object(self, label: str) -> ObjId:
        for o in self.objects:
            if o.label == label:
                return o
        raise DanglingReference(f"Unknown object: {label}")

    def compose(self, g: MorId, f: MorId) -> MorId:
        """g∘f, defined exactly when cod(f) = dom(g)."""
        if f.cod != g.dom:
            raise ValueError(f"{g}∘{f} is not composable")
        return self.morphisms[self._compose[(g.index, f.index)]]

    @property
    def non_identity_morphisms(self) -> Tuple[MorId, ...]:
        return tuple(m for m in self.morphisms if not m.is_identity)

    def composition_items(self) -> Iterable[Tuple[MorId, MorId, MorId]]:
        """(g, f, g∘f) for every composable pair, in index order."""
        for (gi, fi), hi in sorted(self._compose.items()):
            yield self.morphisms[gi], self.morphisms[fi], self.morphisms[hi]

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        """Check every category law exhaustively; raise CategoryError on failure."""
        for i, o in enumerate(self.objects):
            if o.index != i:
                raise CategoryError(f"Object indices must be dense, got {o.index} at {i}")
        if len({o.label for o in self.objects}) != len(self.objects):
            raise DuplicateLabel("Duplicate object label")
        if len(self._by_label) != len(self.morphisms):
            raise DuplicateLabel("Duplicate morphism label")
        for i, m in enumerate(self.morphisms):
            if m.index != i:
                raise CategoryError(f"Morphism indices must be dense, got {m.index} at {i}")
            if m.dom not in self.objects or m.cod not in self.objects:
                raise DanglingReference(f"Morphism {m} has an undeclared endpoint")
            if m.is_identity and m.dom != m.cod:
                raise CategoryError(f"Identity {m} must be an endomorphism")
        for o in self.objects:
            if sum(1 for m in self._hom.get((o.index, o.index), ()) if m.is_identity) != 1:
                raise CategoryError(f"Object {o} needs exactly one identity")

        for f in self.morphisms:
            for g in self._out[f.cod.index]:
                key = (g.index, f.index)
                if key not in self._compose:
                    raise MissingComposite(f"Missing composite {g}∘{f}")
                h = self.morphisms[self._compose[key]]
                if h.dom != f.dom or h.cod != g.cod:
                    raise InvalidComposite(f"{g}∘{f} = {h} has the wrong endpoints")
                if (g.is_identity and h != f) or (f.is_identity and h != g):
                    raise InvalidComposite(f"Unit law violated: {g}∘{f} = {h}")

        for f in self.morphisms:
            if f.is_identity:
                continue
            for g in self._out[f.cod.index]:
                if g.is_identity:
                    continue
                gf = self._compose[(g.index, f.index)]
                for h in self._out[g.cod.index]:
                    if h.is_identity:
                        continue
                    left = self._compose[(self._compose[(h.index, g.index)], f.index)]
                    right = self._compose[(h.index, gf)]
                    if left != right:
                        raise NonAssociative(
                            h.label, g.label, f.label,
                            self.morphisms[left].label, self.morphisms[right].label,
                        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self._compose == other._compose
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms))

    def __repr__(self) -> str:
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def identity_label(obj_label: str) -> str:
    return f"{IDENTITY_PREFIX}{obj_label}"


def assemble(
    object_labels: Sequence[str],
    morphisms: Sequence[Tuple[str, str, str]],
    composition: Mapping[Tuple[str, str], str],
) -> FinCat:
    """Build a FinCat keeping the given object and morphism order.

    ``morphisms`` lists non-identity (label, dom, cod) triples; identities are
    synthesized after each object's arrows are placed, and unit-law composites
    are filled in. ``composition`` maps (g, f) labels to g∘f.
    """
    if len(set(object_labels)) != len(object_labels):
        raise DuplicateLabel(f"Duplicate object labels in {list(object_labels)}")
    objects = [ObjId(i, label) for i, label in enumerate(object_labels)]
    by_obj = {o.label: o for o in objects}

    entries: List[Tuple[str, ObjId, ObjId, bool]] = [
        (identity_label(o.label), o, o, True) for o in objects
    ]
    for label, dom, cod in morphisms:
        if dom not in by_obj or cod not in by_obj:
            raise DanglingReference(f"Morphism {label} refers to an unknown object")
        entries.append((label, by_obj[dom], by_obj[cod], False))
    labels = [e[0] for e in entries]
    if len(set(labels)) != len(labels):
        seen = set()
        dup = next(x for x in labels if x in seen or seen.add(x))
        raise DuplicateLabel(f"Duplicate morphism label: {dup}")
    mors = [MorId(i, label, dom, cod, ident) for i, (label, dom, cod, ident) in enumerate(entries)]
    by_label = {m.label: m for m in mors}

    table: Dict[Tuple[int, int], int] = {}
    for (g_label, f_label), h_label in composition.items():
        for label in (g_label, f_label, h_label):
            if label not in by_label:
                raise DanglingReference(f"Composition refers to unknown morphism: {label}")
        g, f, h = by_label[g_label], by_label[f_label], by_label[h_label]
        if f.cod != g.dom:
            raise InvalidComposite(f"{g_label}∘{f_label} is not composable")
        table[(g.index, f.index)] = h.index
    for m in mors:
        ident_cod = by_label[identity_label(m.cod.label)]
        ident_dom = by_label[identity_label(m.dom.label)]
        table.setdefault((ident_cod.index, m.index), m.index)
        table.setdefault((m.index, ident_dom.index), m.index)
    return FinCat(objects, mors, table)


def section_list(raw: Mapping[str, Any], key: str, path: str) -> List[Any]:
    """``raw[key]`` as a list; absent or null reads as empty."""
    value = raw.get(key)
    if value is None:
        return []
    if not isinstance(value, list):
        raise CategoryError(f"{path}.{key} must be a list, got {type(value).__name__}")
    return value


def section_mapping(raw: Mapping[str, Any], key: str, path: str) -> Dict[Any, Any]:
    """``raw[key]`` as a mapping; absent or null reads as empty."""
    value = raw.get(key)
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise CategoryError(f"{path}.{key} must be a mapping, got {type(value).__name__}")
    return value


def scalar_labels(raw: Mapping[str, Any], key: str, path: str) -> List[str]:
    labels = []
    for i, item in enumerate(section_list(raw, key, path)):
        if isinstance(item, (dict, list)):
            raise CategoryError(f"{path}.{key}[{i}] must be a label, got {item!r}")
        labels.append(str(item))
    return labels


def build_category(raw: Mapping[str, Any], path: str = "category") -> FinCat:
    """Build a category from the raw ``category`` record of a category file.

    Objects and morphisms are indexed lexicographically by label. Errors
    name the offending entry by its path in the document.
    """
    if not isinstance(raw, Mapping):
        raise CategoryError(f"{path} must be a mapping, got {type(raw).__name__}")
    object_labels = scalar_labels(raw, "objects", path)
    if len(set(object_labels)) != len(object_labels):
        raise DuplicateLabel(f"Duplicate object labels in {object_labels}")
    reserved = {identity_label(o) for o in object_labels}

    morphisms = []
    for i, m in enumerate(section_list(raw, "morphisms", path)):
        where = f"{path}.morphisms[{i}]"
        if not isinstance(m, dict):
            raise CategoryError(f"{where} must be a mapping with name, dom and cod, got {m!r}")
        try:
            label, dom, cod = str(m["name"]), str(m["dom"]), str(m["cod"])
        except KeyError as e:
            raise CategoryError(f"{where} is missing field {e}") from None
        if label in reserved:
            raise DuplicateLabel(f"Morphism name {label} is reserved for an identity")
        morphisms.append((label, dom, cod))
    morphisms.sort(key=lambda t: t[0])

    composition: Dict[Tuple[str, str], str] = {}
    for key, value in section_mapping(raw, "composition", path).items():
        composition[split_composite(str(key))] = str(value)

    cat = assemble(sorted(object_labels), morphisms, composition)
    logger.debug(f"Built {cat!r}")
    return cat


def split_composite(key: str) -> Tuple[str, str]:
    """Split "g∘f" (or ASCII "g.f") into (g, f)."""
    if "∘" in key:
        parts = key.split("∘")
    else:
        parts = key.split(".")
    if len(parts) != 2 or not all(p.strip() for p in parts):
        raise CategoryError(f"Cannot parse composite key: {key!r}")
    return parts[0].strip(), parts[1].strip()


def from_poset(
    elements: Sequence[Hashable], cover_relations: Iterable[Tuple[Hashable, Hashable]]
) -> FinCat:
    """Category with one arrow x→y iff x ≤ y in the reflexive-transitive closure."""
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for lesser, greater in cover_relations:
        if lesser not in graph or greater not in graph:
            raise DanglingReference(f"Relation ({lesser}, {greater}) uses an unknown element")
        graph.add_edge(lesser, greater)
    if not nx.is_directed_acyclic_graph(graph):
        raise CyclicRelation(f"Relations contain a cycle: {nx.find_cycle(graph)}")
    closure = nx.transitive_closure_dag(graph)

    def arrow(x: Hashable, y: Hashable) -> str:
        return identity_label(str(x)) if x == y else f"{x}<{y}"

    morphisms = sorted((arrow(x, y), str(x), str(y)) for x, y in closure.edges())
    composition = {}
    for x, y in closure.edges():
        for z in closure.successors(y):
            composition[(arrow(y, z), arrow(x, y))] = arrow(x, z)
    return assemble(sorted(str(e) for e in elements), morphisms, composition)


MONOID_OBJECT = "*"


def from_monoid(
    elements: Sequence[Hashable],
    unit: Hashable,
    table: Mapping[Tuple[Hashable, Hashable], Hashable],
) -> FinCat:
    """One-object category whose endomorphisms are the monoid elements.

    ``table[(a, b)] = a·b`` and composition is ``compose(a, b) = a·b``. The
    unit becomes the identity ``id_*``.
    """
    elems = list(elements)
    if unit not in elems:
        raise NotAMonoid(f"Unit {unit!r} is not an element")
    for a, b in product(elems, repeat=2):
        if (a, b) not in table and a != unit and b != unit:
            raise NotAMonoid(f"Product {a}·{b} is missing")

    def mul(a: Hashable, b: Hashable) -> Hashable:
        if a == unit:
            expected = b
        elif b == unit:
            expected = a
        else:
            return table[(a, b)]
        if table.get((a, b), expected) != expected:
            raise NotAMonoid(f"Unit law fails at {a}·{b}")
        return expected

    for a, b in product(elems, repeat=2):
        if mul(a, b) not in elems:
            raise NotAMonoid(f"Product {a}·{b} = {mul(a, b)} is not an element")
    for a, b, c in product(elems, repeat=3):
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            raise NotAMonoid(f"Not associative at ({a}, {b}, {c})")

    def name(a: Hashable) -> str:
        return identity_label(MONOID_OBJECT) if a == unit else str(a)

    others = [a for a in elems if a != unit]
    morphisms = sorted((name(a), MONOID_OBJECT, MONOID_OBJECT) for a in others)
    composition = {(name(a), name(b)): name(mul(a, b)) for a, b in product(others, repeat=2)}
    return assemble([MONOID_OBJECT], morphisms, composition)


def opposite(cat: FinCat) -> FinCat:
    """Opposite category; indices and labels are kept, so Z(C^op) = Z(C)^T."""
    mors = [MorId(m.index, m.label, m.cod, m.dom, m.is_identity) for m in cat.morphisms]
    table = {(f.index, g.index): h.index for g, f, h in cat.composition_items()}
    return FinCat(cat.objects, mors, table)


def non_identity_graph(cat: FinCat) -> nx.DiGraph:
    """Directed graph with an edge x→y whenever a non-identity arrow x→y exists."""
    graph = nx.DiGraph()
    graph.add_nodes_from(o.index for o in cat.objects)
    graph.add_edges_from((m.dom.index, m.cod.index) for m in cat.non_identity_morphisms)
    return graph


def is_acyclic(cat: FinCat) -> bool:
    if any(m.dom == m.cod for m in cat.non_identity_morphisms):
        return False
    return nx.is_directed_acyclic_graph(non_identity_graph(cat))


def require_acyclic(cat: FinCat, what: str) -> None:
    if not is_acyclic(cat):
        raise NotAcyclic(f"{what} needs an acyclic category, got {cat!r}")


def incidence_matrix(cat: FinCat) -> NatMatrix:
    """Z with entry (i, j) = #Hom(x_i, x_j)."""
    n = len(cat.objects)
    rows = [[0] * n for _ in range(n)]
    for m in cat.morphisms:
        rows[m.dom.index][m.cod.index] += 1
    return tuple(tuple(r) for r in rows)


def topological_order(cat: FinCat) -> Optional[List[ObjId]]:
    """Objects in a deterministic topological order, or None if cyclic."""
    if not is_acyclic(cat):
        return None
    order = nx.lexicographical_topological_sort(non_identity_graph(cat))
    return [cat.objects[i] for i in order]
