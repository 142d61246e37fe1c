"""Named categories and generated families for tests and the verify harness."""

from __future__ import annotations

import logging
import random
from itertools import permutations, product
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

from .fincat import FinCat, NotAMonoid, assemble, from_monoid, from_poset

logger = logging.getLogger("eulercat")

Relation = FrozenSet[Tuple[int, int]]

RANDOM_MODES = ("poset", "free", "truncated")


def empty() -> FinCat:
    return assemble([], [], {})


def one_point() -> FinCat:
    return assemble(["*"], [], {})


def discrete(k: int) -> FinCat:
    return assemble([str(i) for i in range(k)], [], {})


def chain_poset(size: int) -> FinCat:
    """The totally ordered poset 0 < 1 < … < size-1."""
    return from_poset(range(size), [(i, i + 1) for i in range(size - 1)])


def monoid_m() -> FinCat:
    """M = {0, 1} under addition with 1 + 1 = 1."""
    return from_monoid(["0", "1"], "0", {("1", "1"): "1"})


def cyclic_group_2() -> FinCat:
    return from_monoid(["e", "a"], "e", {("a", "a"): "e"})


def iso_pair() -> FinCat:
    """Two objects joined by mutually inverse arrows u: a → b and v: b → a."""
    return assemble(
        ["a", "b"],
        [("u", "a", "b"), ("v", "b", "a")],
        {("v", "u"): "id_a", ("u", "v"): "id_b"},
    )


def pole_witness() -> FinCat:
    """A two-object category whose series characteristic has a pole at -1.

    Z = [[2, 1], [4, 2]], so det(E − (Z − E)t) = (1 − 3t)(1 + t) while the
    adjugate entry sum is 2 + 3t. Z is singular with no weighting.
    """
    qs = [f"q{i}" for i in range(1, 5)]
    morphisms = [("e", "x", "x"), ("f", "y", "y"), ("p", "x", "y")] + [(q, "y", "x") for q in qs]
    composition = {("e", "e"): "e", ("f", "f"): "f", ("p", "e"): "p", ("f", "p"): "p"}
    for q in qs:
        composition[(q, "p")] = "e"
        composition[("p", q)] = "f"
        composition[("e", q)] = "q1"
        composition[(q, "f")] = "q1"
    return assemble(["x", "y"], morphisms, composition)


NAMED: Dict[str, Callable[[], FinCat]] = {
    "empty": empty,
    "one-point": one_point,
    "M": monoid_m,
    "Z2": cyclic_group_2,
    "iso-pair": iso_pair,
    "pole-witness": pole_witness,
}


# -- posets ----------------------------------------------------------------


def _extensions(size: int, order: Relation) -> Iterator[Relation]:
    """Ways to add element ``size`` to a strict order on 0..size-1."""
    elems = range(size)
    below = {b: {a for a, c in order if c == b} for b in elems}
    above = {a: {c for b, c in order if b == a} for a in elems}
    for down_bits in product((False, True), repeat=size):
        down = {x for x, bit in zip(elems, down_bits) if bit}
        if any(not below[x] <= down for x in down):
            continue
        for up_bits in product((False, True), repeat=size):
            up = {x for x, bit in zip(elems, up_bits) if bit}
            if up & down or any(not above[x] <= up for x in up):
                continue
            if any((d, u) not in order for d in down for u in up):
                continue
            yield frozenset(order | {(d, size) for d in down} | {(size, u) for u in up})


def labeled_posets(size: int) -> List[Relation]:
    """Every strict partial order on 0..size-1 as a set of pairs a < b."""
    orders: List[Relation] = [frozenset()]
    for k in range(size):
        orders = [ext for order in orders for ext in _extensions(k, order)]
    return sorted(orders, key=lambda r: sorted(r))


def _canonical(size: int, order: Relation) -> Tuple[Tuple[int, int], ...]:
    return min(
        tuple(sorted((perm[a], perm[b]) for a, b in order)) for perm in permutations(range(size))
    )


def unlabeled_posets(size: int) -> List[Relation]:
    """One representative per isomorphism class, as its canonical relation."""
    seen = set()
    out = []
    for order in labeled_posets(size):
        key = _canonical(size, order)
        if key not in seen:
            seen.add(key)
            out.append(frozenset(key))
    return sorted(out, key=lambda r: sorted(r))


def poset_category(size: int, order: Relation) -> FinCat:
    return from_poset(range(size), sorted(order))


# -- random acyclic categories ------------------------------------------------


def _random_dag(rng: random.Random, size: int, max_multiplicity: int) -> Dict[Tuple[int, int], int]:
    edges = {}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.5:
                edges[(i, j)] = rng.randint(1, max_multiplicity)
    return edges


def _edge_labels(edges: Dict[Tuple[int, int], int]) -> List[Tuple[str, int, int]]:
    return [
        (f"{i}{j}{'abcdefgh'[k]}", i, j)
        for (i, j), mult in sorted(edges.items())
        for k in range(mult)
    ]


def _free_category(size: int, edges: Dict[Tuple[int, int], int]) -> FinCat:
    """Path category of the multigraph; a path is labelled by its edges."""
    out_edges: Dict[int, List[Tuple[str, int, int]]] = {}
    for e in _edge_labels(edges):
        out_edges.setdefault(e[1], []).append(e)
    paths: List[Tuple[Tuple[str, ...], int, int]] = []
    frontier = [((label,), i, j) for label, i, j in _edge_labels(edges)]
    while frontier:
        paths.extend(frontier)
        frontier = [
            (path + (label,), start, j)
            for path, start, end in frontier
            for label, _, j in out_edges.get(end, [])
        ]
    name = "_".join
    morphisms = [(name(p), str(s), str(t)) for p, s, t in paths]
    by_end: Dict[int, List[Tuple[Tuple[str, ...], int, int]]] = {}
    for p in paths:
        by_end.setdefault(p[2], []).append(p)
    composition = {}
    for g, g_start, _ in paths:
        for f, _, _ in by_end.get(g_start, []):
            composition[(name(g), name(f))] = name(f + g)
    return assemble([str(i) for i in range(size)], sorted(morphisms), composition)


def _truncated_category(size: int, edges: Dict[Tuple[int, int], int]) -> FinCat:
    """Free category with every path of length ≥ 2 from x to y identified."""
    reach = {i: set() for i in range(size)}
    for i in reversed(range(size)):
        for (a, b) in edges:
            if a == i:
                reach[i] |= {b} | reach[b]
    long_paths = {(i, k) for (i, j) in edges for k in reach[j]}
    morphisms = [(label, str(i), str(j)) for label, i, j in _edge_labels(edges)]
    morphisms += [(f"c{i}{k}", str(i), str(k)) for i, k in sorted(long_paths)]
    by_cod: Dict[str, List[Tuple[str, str, str]]] = {}
    for m in morphisms:
        by_cod.setdefault(m[2], []).append(m)
    composition = {}
    for g, g_dom, g_cod in morphisms:
        for f, f_dom, _ in by_cod.get(g_dom, []):
            composition[(g, f)] = f"c{f_dom}{g_cod}"
    return assemble([str(i) for i in range(size)], sorted(morphisms), composition)


def random_acyclic(
    rng: random.Random, size: int, mode: Optional[str] = None, max_multiplicity: int = 2
) -> FinCat:
    """A random finite acyclic category on ``size`` objects.

    Edges only go from lower to higher object numbers, so every mode is
    acyclic by construction.
    """
    mode = mode or rng.choice(RANDOM_MODES)
    if mode not in RANDOM_MODES:
        raise ValueError(f"Unknown random mode: {mode}")
    edges = _random_dag(rng, size, 1 if mode == "poset" else max_multiplicity)
    if mode == "poset":
        return from_poset(range(size), sorted(edges))
    if mode == "free":
        return _free_category(size, edges)
    return _truncated_category(size, edges)


def random_poset(size: int, seed: int) -> FinCat:
    return random_acyclic(random.Random(seed), size, "poset")


# -- small monoids -------------------------------------------------------------


MONOID_NAMES = "eabcdefg"


def small_monoids(size: int) -> List[FinCat]:
    """Every monoid structure on {e, a, b, …} of the given size with unit e."""
    if size < 1:
        raise ValueError("A monoid has at least one element")
    elems = list(MONOID_NAMES[:size])
    others = elems[1:]
    pairs = list(product(others, repeat=2))
    out = []
    for values in product(elems, repeat=len(pairs)):
        table = dict(zip(pairs, values))
        try:
            out.append(from_monoid(elems, "e", table))
        except NotAMonoid:
            continue
    logger.debug(f"{len(out)} monoid tables of size {size}")
    return out
