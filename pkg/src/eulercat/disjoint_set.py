# https://en.wikipedia.org/wiki/Disjoint-set_data_structure

from __future__ import annotations

import collections
from typing import Dict, Generic, Hashable, Iterable, Tuple, TypeVar

T = TypeVar("T", bound=Hashable)


class DisjointSet(Generic[T]):
    """Union-find over hashable, orderable elements."""

    def __init__(self, elements: Iterable[T] = ()):
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        for e in elements:
            self.make_set(e)

    def make_set(self, e: T) -> None:
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    # find with path compression
    def find(self, e: T) -> T:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    # union by rank
    def union(self, x: T, y: T) -> None:
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def sorted(self) -> Tuple[Tuple[T, ...], ...]:
        """Classes as sorted tuples, ordered by their least element."""
        sets = collections.defaultdict(list)
        for e in self.parent:
            sets[self.find(e)].append(e)
        return tuple(sorted(tuple(sorted(s)) for s in sets.values()))
