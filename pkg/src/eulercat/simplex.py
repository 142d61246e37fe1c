"""Equivalence simplices, their augmented chain complexes, and the
objectwise projective resolution of a subdivision.

All complexes are over Q and carry an explicit degree -1 slot for the
augmentation target.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .disjoint_set import DisjointSet
from .exactalg import QQ, RingMatrix, rank
from .fincat import FinCat, MorId, NotAcyclic, ObjId, is_acyclic
from .nerve import ChainOfMorphisms, segment
from .subdivision import SdCategory, SdObject

logger = logging.getLogger("eulercat")

DEFAULT_MAX_N = 6

Tup = Tuple[int, ...]


class BoundExceeded(ValueError):
    """Requested size is above the configured enumeration bound."""


class NotAComplex(ValueError):
    """Boundary matrices do not compose to zero or do not chain."""


class InadmissibleRelation(ValueError):
    """A partition of [n] relates two adjacent indices."""


class InsufficientTruncation(ValueError):
    """The subdivision does not contain the chains a computation needs."""


class ResolutionMismatch(ArithmeticError):
    """The resolution is not chain-isomorphic to its equivalence simplex."""


# -- admissible relations ---------------------------------------------------


@dataclass(frozen=True)
class AdmissibleEqRel:
    """A partition of [n] = {0, …, n} with no two adjacent indices related."""

    n: int
    classes: Tuple[Tup, ...]

    def __post_init__(self) -> None:
        flat = sorted(i for c in self.classes for i in c)
        if flat != list(range(self.n + 1)):
            raise InadmissibleRelation(f"{self.classes} is not a partition of [0..{self.n}]")
        for i in range(self.n):
            if self.label(i) == self.label(i + 1):
                raise InadmissibleRelation(f"{i} and {i + 1} are related in {self.rel_id}")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "AdmissibleEqRel":
        groups: Dict[int, List[int]] = {}
        for i, a in enumerate(labels):
            groups.setdefault(a, []).append(i)
        return cls(len(labels) - 1, tuple(sorted(tuple(g) for g in groups.values())))

    @classmethod
    def trivial(cls, n: int) -> "AdmissibleEqRel":
        return cls(n, tuple((i,) for i in range(n + 1)))

    def label(self, i: int) -> int:
        """Least element of the class of i."""
        for c in self.classes:
            if i in c:
                return c[0]
        raise IndexError(f"{i} is outside [0..{self.n}]")

    def related(self, i: int, j: int) -> bool:
        return self.label(i) == self.label(j)

    @property
    def is_trivial(self) -> bool:
        return len(self.classes) == self.n + 1

    @property
    def rel_id(self) -> str:
        return f"{self.n}:" + "/".join(",".join(str(i) for i in c) for c in self.classes)

    def __str__(self) -> str:
        return self.rel_id


def _growth_strings(n: int) -> List[Tup]:
    out: List[Tup] = []

    def extend(prefix: List[int], top: int) -> None:
        if len(prefix) == n + 1:
            out.append(tuple(prefix))
            return
        for a in range(top + 2):
            if a != prefix[-1]:
                prefix.append(a)
                extend(prefix, max(top, a))
                prefix.pop()

    extend([0], 0)
    return out


def enumerate_admissible_relations(n: int, bound: int = DEFAULT_MAX_N) -> List[AdmissibleEqRel]:
    """Every admissible relation on [n], via restricted growth strings."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > bound:
        raise BoundExceeded(f"n = {n} is above the bound {bound}")
    return [AdmissibleEqRel.from_labels(s) for s in _growth_strings(n)]


# -- equivalence simplices --------------------------------------------------


@dataclass(frozen=True)
class EqSimplex:
    """Levels C_k for k = -1..n; each class is a sorted tuple of member tuples."""

    rel: AdmissibleEqRel
    levels: Tuple[Tuple[Tuple[Tup, ...], ...], ...]
    _index: Dict[Tup, Tuple[int, int]] = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.rel.n

    def classes(self, k: int) -> Tuple[Tuple[Tup, ...], ...]:
        if not -1 <= k <= self.n:
            return ()
        return self.levels[k + 1]

    def reps(self, k: int) -> List[Tup]:
        return [members[0] for members in self.classes(k)]

    def size(self, k: int) -> int:
        return len(self.classes(k))

    def sizes(self) -> List[int]:
        return [self.size(k) for k in range(-1, self.n + 1)]

    def is_degenerate(self, x: Tup) -> bool:
        """x lies in B_k: two consecutive entries are related."""
        return any(self.rel.related(a, b) for a, b in zip(x, x[1:]))

    def contains(self, x: Tup) -> bool:
        return x in self._index

    def class_index(self, x: Tup) -> int:
        """Position in C_{len(x)-1} of the class of x."""
        return self._index[x][1]

    def reduced_euler_characteristic(self) -> int:
        return sum((-1) ** k * self.size(k) for k in range(-1, self.n + 1))


def build_eq_simplex(rel: AdmissibleEqRel) -> EqSimplex:
    levels = []
    index: Dict[Tup, Tuple[int, int]] = {}
    for k in range(-1, rel.n + 1):
        groups: Dict[Tup, List[Tup]] = {}
        for x in combinations(range(rel.n + 1), k + 1):
            if any(rel.related(a, b) for a, b in zip(x, x[1:])):
                continue
            groups.setdefault(tuple(rel.label(i) for i in x), []).append(x)
        level = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
        for pos, members in enumerate(level):
            for x in members:
                index[x] = (k, pos)
        levels.append(level)
    return EqSimplex(rel, tuple(levels), index)


def _drop(x: Tup, j: int) -> Tup:
    return x[:j] + x[j + 1:]


def face_index_set(s: EqSimplex, x: Tup) -> FrozenSet[int]:
    """Positions ℓ whose face d_ℓ(x) stays outside B_{k-1}."""
    k = len(x) - 1
    if k < 0:
        raise ValueError("face_index_set needs k >= 0")
    faces = frozenset(j for j in range(k + 1) if not s.is_degenerate(_drop(x, j)))
    if logger.isEnabledFor(logging.DEBUG):
        for member in s.classes(k)[s.class_index(x)]:
            other = frozenset(j for j in range(k + 1) if not s.is_degenerate(_drop(member, j)))
            if other != faces:
                raise AssertionError(f"Face set of {x} differs on {member}")
    return faces


# -- chain complexes --------------------------------------------------------


class ChainComplexQ:
    """Finite chain complex of Q-vector spaces in degrees lowest..top.

    ``boundaries[i]`` is the map from degree ``lowest + i + 1`` to degree
    ``lowest + i``, a matrix of shape (dim(k-1), dim(k)).
    """

    def __init__(
        self,
        dims: Sequence[int],
        boundaries: Sequence[RingMatrix],
        lowest_degree: int = -1,
    ):
        self.dims = tuple(dims)
        self.lowest = lowest_degree
        if len(boundaries) != max(len(self.dims) - 1, 0):
            raise NotAComplex(
                f"{len(self.dims)} degrees need {len(self.dims) - 1} boundaries, "
                f"got {len(boundaries)}"
            )
        for i, d in enumerate(boundaries):
            expected = (self.dims[i], self.dims[i + 1])
            if d.shape != expected:
                raise NotAComplex(
                    f"Boundary out of degree {lowest_degree + i + 1} has shape {d.shape}, "
                    f"expected {expected}"
                )
        self.boundaries = tuple(boundaries)

    @property
    def top(self) -> int:
        return self.lowest + len(self.dims) - 1

    def dim(self, k: int) -> int:
        if self.lowest <= k <= self.top:
            return self.dims[k - self.lowest]
        return 0

    def boundary(self, k: int) -> RingMatrix:
        """D_k : degree k → degree k-1 (a zero matrix outside the stored range)."""
        if self.lowest < k <= self.top:
            return self.boundaries[k - self.lowest - 1]
        return RingMatrix.zeros(self.dim(k - 1), self.dim(k))

    def is_complex(self) -> bool:
        return all(
            (self.boundary(k - 1) @ self.boundary(k)).is_zero()
            for k in range(self.lowest + 2, self.top + 1)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in range(self.lowest, self.top + 1))


def homology_ranks(c: ChainComplexQ) -> List[int]:
    """dim H_k for k = lowest..top by exact elimination."""
    if not c.is_complex():
        raise NotAComplex("Consecutive boundaries do not compose to zero")
    ranks = {k: rank(c.boundary(k)) for k in range(c.lowest, c.top + 2)}
    return [c.dim(k) - ranks[k] - ranks[k + 1] for k in range(c.lowest, c.top + 1)]


def boundary_complex(s: EqSimplex) -> ChainComplexQ:
    """D_k[x] = Σ_{j ∈ F(x)} (−1)^j [d_j x]; D_0 is the augmentation."""
    dims = s.sizes()
    boundaries = []
    for k in range(0, s.n + 1):
        rows = [[0] * s.size(k) for _ in range(s.size(k - 1))]
        for col, x in enumerate(s.reps(k)):
            for j in face_index_set(s, x):
                rows[s.class_index(_drop(x, j))][col] += (-1) ** j
        boundaries.append(RingMatrix(rows, QQ, cols=s.size(k)))
    return ChainComplexQ(dims, boundaries)


def contracting_homotopy(s: EqSimplex) -> List[RingMatrix]:
    """h_k for k = -1..n-1: [x] ↦ [(0, x)] when 0 is unrelated to x_0, else 0."""
    out = []
    for k in range(-1, s.n):
        rows = [[0] * s.size(k) for _ in range(s.size(k + 1))]
        for col, x in enumerate(s.reps(k)):
            if x and s.rel.related(0, x[0]):
                continue
            rows[s.class_index((0,) + x)][col] = 1
        out.append(RingMatrix(rows, QQ, cols=s.size(k)))
    return out


def homotopy_identity_holds(s: EqSimplex, c: ChainComplexQ, h: Sequence[RingMatrix]) -> bool:
    """h_{k-1}D_k + D_{k+1}h_k = 1 on every C_k, with h_{-2} = h_n = 0."""

    def h_at(k: int) -> RingMatrix:
        if -1 <= k <= s.n - 1:
            return h[k + 1]
        return RingMatrix.zeros(c.dim(k + 1), c.dim(k))

    for k in range(-1, s.n + 1):
        total = h_at(k - 1) @ c.boundary(k) + c.boundary(k + 1) @ h_at(k)
        if total != RingMatrix.identity(c.dim(k)):
            logger.debug(f"Homotopy identity fails at degree {k} for {s.rel}")
            return False
    return True


@dataclass(frozen=True)
class EqSimplexCheck:
    rel: AdmissibleEqRel
    sizes: Tuple[int, ...]
    boundary_squares_zero: bool
    homotopy_identity: bool
    homology: Tuple[int, ...]
    euler_sum: int

    @property
    def passed(self) -> bool:
        return (
            self.boundary_squares_zero
            and self.homotopy_identity
            and not any(self.homology)
            and self.euler_sum == 0
        )

    @property
    def verdict(self) -> str:
        return "exact" if self.passed else "FAIL"


def check_eq_simplex(rel: AdmissibleEqRel) -> EqSimplexCheck:
    s = build_eq_simplex(rel)
    c = boundary_complex(s)
    squares_zero = c.is_complex()
    homology = tuple(homology_ranks(c)) if squares_zero else ()
    check = EqSimplexCheck(
        rel=rel,
        sizes=tuple(s.sizes()),
        boundary_squares_zero=squares_zero,
        homotopy_identity=homotopy_identity_holds(s, c, contracting_homotopy(s)),
        homology=homology,
        euler_sum=s.reduced_euler_characteristic(),
    )
    logger.debug(f"{rel}: sizes {check.sizes} -> {check.verdict}")
    return check


# -- resolution of a subdivision, evaluated at one object -------------------


def rel_from_chain(cat: FinCat, chain: Union[ChainOfMorphisms, SdObject]) -> AdmissibleEqRel:
    """i ∼ j iff the chain's composite from min(i, j) to max(i, j) is an identity."""
    if isinstance(chain, SdObject):
        chain = chain.chain
    n = chain.length
    ds: DisjointSet[int] = DisjointSet(range(n + 1))
    for i, j in combinations(range(n + 1), 2):
        if segment(cat, chain, i, j).is_identity:
            ds.union(i, j)
    return AdmissibleEqRel(n, ds.sorted())


def _target(sd_cat: SdCategory, g: Union[ObjId, SdObject, ChainOfMorphisms]) -> ObjId:
    if isinstance(g, ObjId):
        if g not in sd_cat.category.objects:
            raise InsufficientTruncation(f"{g} is not an object of the subdivision")
        return g
    chain = g.chain if isinstance(g, SdObject) else g
    try:
        return sd_cat.object_for(chain)
    except KeyError:
        raise InsufficientTruncation(
            f"{chain} is not an object of the subdivision (truncated at {sd_cat.truncated_at})"
        ) from None


@dataclass(frozen=True)
class ResolutionBasis:
    """Degree k basis of ⊕_{f_k} Q[Hom(f_k, g)]: (source object, morphism) pairs."""

    target: ObjId
    degrees: Tuple[Tuple[Tuple[ObjId, MorId], ...], ...]


def _resolution_basis(sd_cat: SdCategory, g: ObjId) -> ResolutionBasis:
    top = sd_cat.levels[g.index]
    degrees: List[List[Tuple[ObjId, MorId]]] = [[] for _ in range(top + 1)]
    for f in sd_cat.category.objects:
        level = sd_cat.levels[f.index]
        if level > top:
            continue
        homs = sorted(
            sd_cat.category.hom(f, g), key=lambda m: sd_cat.classes[m.index].representative
        )
        degrees[level].extend((f, m) for m in homs)
    return ResolutionBasis(g, tuple(tuple(d) for d in degrees))


def _face_morphism(sd_cat: SdCategory, f: ObjId, j: int) -> Optional[MorId]:
    """The Sd morphism d_j f → f given by the injection skipping j, if d_j f is an object."""
    level = sd_cat.levels[f.index]
    skip = tuple(p for p in range(level + 1) if p != j)
    return sd_cat.injection_lookup.get((f.index, skip))


def resolution_at(sd_cat: SdCategory, g: Union[ObjId, SdObject, ChainOfMorphisms]) -> ChainComplexQ:
    """The augmented complex P(Sd(C))_* evaluated at g.

    Degree k is ⊕ Q[Hom(f_k, g)] over level-k objects f_k with basis ordered
    by (source, representative); ∂_k(φ) = Σ_{j ∈ F(f_k)} (−1)^j φ∘d^j where
    F(f_k) holds the j whose face d_j f_k is non-degenerate.
    """
    target = _target(sd_cat, g)
    basis = _resolution_basis(sd_cat, target)
    cat = sd_cat.category
    dims = [1] + [len(d) for d in basis.degrees]
    boundaries = [RingMatrix([[1] * dims[1]], QQ, cols=dims[1])]
    for k in range(1, len(basis.degrees)):
        position = {m: i for i, (_, m) in enumerate(basis.degrees[k - 1])}
        rows = [[0] * dims[k + 1] for _ in range(dims[k])]
        for col, (f, phi) in enumerate(basis.degrees[k]):
            for j in range(k + 1):
                d = _face_morphism(sd_cat, f, j)
                if d is None:
                    continue
                rows[position[cat.compose(phi, d)]][col] += (-1) ** j
        boundaries.append(RingMatrix(rows, QQ, cols=dims[k + 1]))
    return ChainComplexQ(dims, boundaries)


@dataclass(frozen=True)
class ResolutionIsomorphism:
    """Permutation matrices φ_k (resolution → simplex) and ψ_k, k = -1..n."""

    resolution: ChainComplexQ
    simplex: ChainComplexQ
    phi: Tuple[RingMatrix, ...]
    psi: Tuple[RingMatrix, ...]


def resolution_isomorphism(
    sd_cat: SdCategory, g: Union[ObjId, SdObject, ChainOfMorphisms]
) -> ResolutionIsomorphism:
    """Identify resolution_at(S, g) with the complex of rel_from_chain(g).

    A basis morphism φ: f_k → g with representative α goes to the class of
    α in C_k. Raises ResolutionMismatch unless both maps are mutually
    inverse chain maps.
    """
    target = _target(sd_cat, g)
    chain = sd_cat.objects[target.index].chain
    rel = rel_from_chain(sd_cat.base, chain)
    s = build_eq_simplex(rel)
    simplex_complex = boundary_complex(s)
    resolution = resolution_at(sd_cat, target)
    basis = _resolution_basis(sd_cat, target)

    phi = [RingMatrix([[1]], QQ)]
    for k, degree in enumerate(basis.degrees):
        if len(degree) != s.size(k):
            raise ResolutionMismatch(
                f"Degree {k}: resolution has {len(degree)} generators, simplex has {s.size(k)}"
            )
        rows = [[0] * len(degree) for _ in range(s.size(k))]
        for col, (_, m) in enumerate(degree):
            alpha = sd_cat.classes[m.index].representative
            if not s.contains(alpha):
                raise ResolutionMismatch(f"{alpha} is degenerate for the relation {rel}")
            rows[s.class_index(alpha)][col] = 1
        phi.append(RingMatrix(rows, QQ, cols=len(degree)))
    psi = [p.transpose() for p in phi]

    for k in range(-1, rel.n + 1):
        p, q = phi[k + 1], psi[k + 1]
        size = s.size(k)
        if p @ q != RingMatrix.identity(size) or q @ p != RingMatrix.identity(size):
            raise ResolutionMismatch(f"φ and ψ are not inverse in degree {k} for {chain}")
        if k >= 0 and simplex_complex.boundary(k) @ p != phi[k] @ resolution.boundary(k):
            raise ResolutionMismatch(f"φ is not a chain map in degree {k} for {chain}")
    return ResolutionIsomorphism(resolution, simplex_complex, tuple(phi), tuple(psi))


def splitting_dim(cat: FinCat, x: ObjId, y: ObjId) -> int:
    """dim S_x P_y: the cokernel of ⊕ u*: ⊕ Q[Hom(z, y)] → Q[Hom(x, y)].

    The sum runs over non-identity u: x → z.
    """
    if not is_acyclic(cat):
        raise NotAcyclic(f"Splitting dimensions need an acyclic category, got {cat!r}")
    targets = cat.hom(x, y)
    position = {m: i for i, m in enumerate(targets)}
    columns: List[List[int]] = []
    for u in cat.out_of(x):
        if u.is_identity:
            continue
        for v in cat.hom(u.cod, y):
            col = [0] * len(targets)
            col[position[cat.compose(v, u)]] += 1
            columns.append(col)
    if not targets or not columns:
        return len(targets)
    image = RingMatrix([list(r) for r in zip(*columns)], QQ, cols=len(columns))
    return len(targets) - rank(image)
