"""Nerves and non-degenerate nerves of finite categories."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .fincat import FinCat, MorId, ObjId

logger = logging.getLogger("eulercat")


class Unbounded(Enum):
    """Marker for a category with non-degenerate chains of every length."""

    INFINITE = "Infinite"

    def __str__(self) -> str:
        return self.value


INFINITE = Unbounded.INFINITE


@dataclass(frozen=True)
class ChainOfMorphisms:
    """A composable chain x_0 → x_1 → … → x_n given by its steps.

    A chain of length 0 is a single object and has no steps.
    """

    start: ObjId
    steps: Tuple[MorId, ...] = ()

    def __post_init__(self) -> None:
        prev = self.start
        for f in self.steps:
            if f.dom != prev:
                raise ValueError(f"Chain step {f} does not start at {prev}")
            prev = f.cod

    @classmethod
    def of_object(cls, x: ObjId) -> "ChainOfMorphisms":
        return cls(x, ())

    @classmethod
    def of_steps(cls, steps: Sequence[MorId]) -> "ChainOfMorphisms":
        if not steps:
            raise ValueError("of_steps needs at least one step; use of_object")
        return cls(steps[0].dom, tuple(steps))

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def objects_along(self) -> Tuple[ObjId, ...]:
        return (self.start,) + tuple(f.cod for f in self.steps)

    @property
    def end(self) -> ObjId:
        return self.steps[-1].cod if self.steps else self.start

    @property
    def is_nondegenerate(self) -> bool:
        return not any(f.is_identity for f in self.steps)

    @property
    def key(self) -> Tuple[int, ...]:
        """Sort key: the object index for length 0, step indices otherwise."""
        if not self.steps:
            return (self.start.index,)
        return tuple(f.index for f in self.steps)

    def label(self, ascii_only: bool = False) -> str:
        inner = ";".join(f.label for f in self.steps) if self.steps else self.start.label
        return f"<{inner}>" if ascii_only else f"⟨{inner}⟩"

    def qualified_label(self, ascii_only: bool = False) -> str:
        """Label suffixed with @length:key, distinct for distinct chains."""
        key = ".".join(str(i) for i in self.key)
        return f"{self.label(ascii_only)}@{self.length}:{key}"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class NerveLevel:
    n: int
    chains: Tuple[ChainOfMorphisms, ...]

    def __len__(self) -> int:
        return len(self.chains)

    def __iter__(self) -> Iterator[ChainOfMorphisms]:
        return iter(self.chains)


def segment(cat: FinCat, chain: ChainOfMorphisms, i: int, j: int) -> MorId:
    """The composite of steps i..j-1, a morphism x_i → x_j (identity when i = j)."""
    if not 0 <= i <= j <= chain.length:
        raise IndexError(f"Segment ({i}, {j}) outside chain of length {chain.length}")
    acc = cat.identity(chain.objects_along[i])
    for f in chain.steps[i:j]:
        acc = cat.compose(f, acc)
    return acc


def restrict(cat: FinCat, chain: ChainOfMorphisms, positions: Sequence[int]) -> ChainOfMorphisms:
    """Restrict a chain along a strictly increasing position map.

    The result visits the objects at ``positions`` with the composites of
    the chain between consecutive positions as its steps.
    """
    if not positions:
        raise ValueError("positions must be non-empty")
    if len(positions) == 1:
        return ChainOfMorphisms.of_object(chain.objects_along[positions[0]])
    steps = tuple(segment(cat, chain, a, b) for a, b in zip(positions, positions[1:]))
    return ChainOfMorphisms(chain.objects_along[positions[0]], steps)


def face(cat: FinCat, chain: ChainOfMorphisms, j: int) -> ChainOfMorphisms:
    """The j-th face: drop object x_j, composing across it when interior."""
    return restrict(cat, chain, [p for p in range(chain.length + 1) if p != j])


def _extend(cat: FinCat, prefix: List[MorId], remaining: int) -> Iterator[Tuple[MorId, ...]]:
    if remaining == 0:
        yield tuple(prefix)
        return
    for g in cat.out_of(prefix[-1].cod):
        if g.is_identity:
            continue
        prefix.append(g)
        yield from _extend(cat, prefix, remaining - 1)
        prefix.pop()


def iter_nondegenerate_chains(
    cat: FinCat, n: int, end: Optional[ObjId] = None
) -> Iterator[ChainOfMorphisms]:
    """Stream N̄_n(C) in lexicographic order of step indices.

    With ``end`` set, only chains finishing at that object are produced.
    """
    if n < 0:
        raise ValueError(f"Chain length must be non-negative, got {n}")
    if n == 0:
        for x in cat.objects:
            if end is None or x == end:
                yield ChainOfMorphisms.of_object(x)
        return
    for f in cat.non_identity_morphisms:
        for steps in _extend(cat, [f], n - 1):
            if end is None or steps[-1].cod == end:
                yield ChainOfMorphisms(f.dom, steps)


def nondegenerate_chains(cat: FinCat, n: int) -> NerveLevel:
    level = NerveLevel(n, tuple(iter_nondegenerate_chains(cat, n)))
    logger.debug(f"N̄_{n}: {len(level)} chains")
    return level


def chains_ending_at(cat: FinCat, n: int, y: ObjId) -> NerveLevel:
    return NerveLevel(n, tuple(iter_nondegenerate_chains(cat, n, end=y)))


def strict_entries(cat: FinCat) -> Dict[Tuple[int, int], int]:
    """Non-zero entries of Z − E, keyed by (row, column)."""
    entries: Dict[Tuple[int, int], int] = {}
    for m in cat.non_identity_morphisms:
        key = (m.dom.index, m.cod.index)
        entries[key] = entries.get(key, 0) + 1
    return entries


def end_counts(cat: FinCat, up_to: int) -> List[List[int]]:
    """Row n is 1ᵀ(Z − E)^n: entry y counts the chains of N̄_n ending at y."""
    entries = strict_entries(cat)
    vec = [1] * len(cat.objects)
    rows = [vec]
    for _ in range(up_to):
        nxt = [0] * len(vec)
        for (i, j), v in entries.items():
            if vec[i]:
                nxt[j] += vec[i] * v
        vec = nxt
        rows.append(vec)
    return rows


def level_counts(cat: FinCat, up_to: int) -> List[int]:
    """sum((Z − E)^n) for n = 0..up_to."""
    return [sum(row) for row in end_counts(cat, up_to)]


def count_nondegenerate_by_matrix(cat: FinCat, n: int) -> int:
    """Sum of all entries of (Z − E)^n, the matrix count of N̄_n."""
    if n < 0:
        raise ValueError(f"Chain length must be non-negative, got {n}")
    return level_counts(cat, n)[n]


def max_nondegenerate_length(cat: FinCat) -> Union[int, Unbounded]:
    """Largest n with N̄_n non-empty, or INFINITE when Z − E is not nilpotent.

    Entries are non-negative, so (Z − E)^k vanishes exactly when its entry
    sum does; a nilpotent matrix of size d already vanishes at k = d.
    """
    size = len(cat.objects)
    counts = level_counts(cat, size)
    for k, count in enumerate(counts):
        if count == 0:
            return max(k - 1, 0)
    return INFINITE
