"""Barycentric subdivision Sd(C) of a finite category.

Objects of Sd(C) are non-degenerate chains of C. A morphism X → Y is a class
of order-preserving injections α with Y∘α = X, two injections being
identified when Y sends every min{α(i), β(i)} → max{α(i), β(i)} to an
identity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .disjoint_set import DisjointSet
from .euler import NFiltration
from .fincat import FinCat, InvalidComposite, MorId, ObjId, assemble, is_acyclic, require_acyclic
from .nerve import (
    INFINITE,
    ChainOfMorphisms,
    max_nondegenerate_length,
    nondegenerate_chains,
    restrict,
    segment,
)

logger = logging.getLogger("eulercat")

Injection = Tuple[int, ...]


@dataclass(frozen=True)
class SdObject:
    chain: ChainOfMorphisms

    @property
    def level(self) -> int:
        return self.chain.length

    @property
    def objects_along(self) -> Tuple[ObjId, ...]:
        return self.chain.objects_along

    def label(self, ascii_only: bool = False) -> str:
        return self.chain.label(ascii_only)


@dataclass(frozen=True)
class SdMorphismClass:
    """A class of injections source → target, keyed by its least member."""

    source: SdObject
    target: SdObject
    representative: Injection
    members: Tuple[Injection, ...]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target

    def label(self, ascii_only: bool = False, target_label: Optional[str] = None) -> str:
        positions = ",".join(str(i) for i in self.representative)
        return f"{target_label or self.target.label(ascii_only)}[{positions}]"


@dataclass(frozen=True)
class SdCategory:
    """Sd(C), or its full subcategory on chains of length ≤ ``truncated_at``.

    ``objects[i]`` and ``levels[i]`` describe ``category.objects[i]``;
    ``classes[j]`` is the injection class behind ``category.morphisms[j]``.
    """

    category: FinCat
    base: FinCat
    objects: Tuple[SdObject, ...]
    levels: Tuple[int, ...]
    classes: Tuple[SdMorphismClass, ...]
    truncated_at: Optional[int] = None

    def sd_object(self, obj: ObjId) -> SdObject:
        return self.objects[obj.index]

    @cached_property
    def _positions(self) -> Dict[ChainOfMorphisms, int]:
        return {o.chain: i for i, o in enumerate(self.objects)}

    def object_for(self, chain: ChainOfMorphisms) -> ObjId:
        if chain not in self._positions:
            raise KeyError(f"{chain} is not an object of this subdivision")
        return self.category.objects[self._positions[chain]]

    @cached_property
    def injection_lookup(self) -> Dict[Tuple[int, Injection], MorId]:
        """(target index, injection) to the morphism whose class contains it."""
        return {
            (m.cod.index, member): m
            for m, cls in zip(self.category.morphisms, self.classes)
            for member in cls.members
        }

    def level_counts(self) -> List[int]:
        counts = [0] * (max(self.levels, default=-1) + 1)
        for level in self.levels:
            counts[level] += 1
        return counts


def _equivalent(cat: FinCat, target: ChainOfMorphisms, a: Injection, b: Injection) -> bool:
    return all(
        segment(cat, target, min(i, j), max(i, j)).is_identity for i, j in zip(a, b)
    )


def _quotient(
    cat: FinCat, source: SdObject, target: SdObject, injections: Sequence[Injection]
) -> List[SdMorphismClass]:
    ds: DisjointSet[Injection] = DisjointSet(injections)
    for a, b in combinations(injections, 2):
        if _equivalent(cat, target.chain, a, b):
            ds.union(a, b)
    return [SdMorphismClass(source, target, members[0], members) for members in ds.sorted()]


def hom_sd(cat: FinCat, f: SdObject, g: SdObject) -> Tuple[SdMorphismClass, ...]:
    """All morphism classes f → g of Sd(C), ordered by representative."""
    if f.level > g.level:
        return ()
    valid = [
        alpha
        for alpha in combinations(range(g.level + 1), f.level + 1)
        if restrict(cat, g.chain, alpha) == f.chain
    ]
    return tuple(_quotient(cat, f, g, valid))


def object_labels(objects: Sequence[SdObject], ascii_only: bool = False) -> List[str]:
    """Chain labels, all qualified by length and key when two chains print alike."""
    labels = [o.label(ascii_only) for o in objects]
    if len(set(labels)) == len(labels):
        return labels
    logger.debug(f"Chain labels collide in {labels}; qualifying them")
    return [o.chain.qualified_label(ascii_only) for o in objects]


def _build(cat: FinCat, top: int, truncated_at: Optional[int], ascii_only: bool) -> SdCategory:
    chains: List[ChainOfMorphisms] = []
    for n in range(top + 1):
        chains.extend(sorted(nondegenerate_chains(cat, n), key=lambda c: c.key))
    objects = tuple(SdObject(c) for c in chains)
    position = {o.chain: i for i, o in enumerate(objects)}

    check_singletons = is_acyclic(cat) and logger.isEnabledFor(logging.DEBUG)
    quotient = not is_acyclic(cat)
    incoming: Dict[int, List[SdMorphismClass]] = {}
    for gi, g in enumerate(objects):
        by_source: Dict[int, List[Injection]] = {}
        for k in range(g.level):
            for alpha in combinations(range(g.level + 1), k + 1):
                restricted = restrict(cat, g.chain, alpha)
                if restricted.is_nondegenerate and restricted in position:
                    by_source.setdefault(position[restricted], []).append(alpha)
        found: List[SdMorphismClass] = []
        for fi in sorted(by_source):
            injections = by_source[fi]
            if quotient or check_singletons:
                classes = _quotient(cat, objects[fi], g, injections)
                if check_singletons and any(len(c.members) > 1 for c in classes):
                    raise AssertionError(f"Non-trivial injection class into {g.label()}")
            else:
                classes = [SdMorphismClass(objects[fi], g, a, (a,)) for a in injections]
            found.extend(classes)
        incoming[gi] = found

    labels = object_labels(objects, ascii_only)

    def arrow_label(cls: SdMorphismClass) -> str:
        return cls.label(ascii_only, labels[position[cls.target.chain]])

    class_by_key: Dict[Tuple[int, Injection], SdMorphismClass] = {}
    morphisms = []
    for gi, classes in incoming.items():
        for cls in classes:
            for member in cls.members:
                class_by_key[(gi, member)] = cls
            source = labels[position[cls.source.chain]]
            morphisms.append((arrow_label(cls), source, labels[gi]))

    composition: Dict[Tuple[str, str], str] = {}
    for gi, outer in incoming.items():
        for beta_cls in outer:
            fi = position[beta_cls.source.chain]
            for alpha_cls in incoming[fi]:
                composite = {
                    class_by_key[(gi, tuple(beta[i] for i in alpha))]
                    for beta in beta_cls.members
                    for alpha in alpha_cls.members
                }
                if len(composite) != 1:
                    raise InvalidComposite(
                        f"Composition of {beta_cls.label()} and {alpha_cls.label()} "
                        "depends on the chosen injections"
                    )
                composition[(arrow_label(beta_cls), arrow_label(alpha_cls))] = arrow_label(
                    composite.pop()
                )

    category = assemble(labels, morphisms, composition)
    identity_classes = {
        o.chain: SdMorphismClass(o, o, tuple(range(o.level + 1)), (tuple(range(o.level + 1)),))
        for o in objects
    }
    by_label = {arrow_label(cls): cls for classes in incoming.values() for cls in classes}
    classes_in_order = tuple(
        identity_classes[objects[m.dom.index].chain] if m.is_identity else by_label[m.label]
        for m in category.morphisms
    )
    logger.debug(
        f"Sd of {cat!r}: {len(category.objects)} objects, {len(category.morphisms)} morphisms"
    )
    return SdCategory(
        category=category,
        base=cat,
        objects=objects,
        levels=tuple(o.level for o in objects),
        classes=classes_in_order,
        truncated_at=truncated_at,
    )


def sd(cat: FinCat, ascii_only: bool = False) -> SdCategory:
    """The full subdivision; finite exactly when C is acyclic."""
    require_acyclic(cat, "Barycentric subdivision")
    top = max_nondegenerate_length(cat)
    assert top is not INFINITE
    return _build(cat, top, None, ascii_only)


def sd_truncated(cat: FinCat, max_level: int, ascii_only: bool = False) -> SdCategory:
    """Full subcategory of Sd(C) on chains of length at most ``max_level``."""
    if max_level < 0:
        raise ValueError(f"max_level must be non-negative, got {max_level}")
    return _build(cat, max_level, max_level, ascii_only)


def length_filtration(sd_cat: SdCategory) -> NFiltration:
    return NFiltration(sd_cat.levels)
