"""Euler characteristics of finite categories.

Every characteristic returns an ``EulerResult``; non-existence is reported
as a value carrying an ``UndefinedReason``, never as an exception.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

from . import exactalg
from .exactalg import QQ, QQ_T, Poly, RationalFunction, RingMatrix
from .fincat import (
    FinCat,
    NotAcyclic,
    ObjId,
    incidence_matrix,
    is_acyclic,
    opposite,
    topological_order,
)
from .nerve import INFINITE, end_counts, level_counts, max_nondegenerate_length

if TYPE_CHECKING:
    from .subdivision import SdCategory

logger = logging.getLogger("eulercat")

SERIES_METHODS = ("adjugate", "levels")


class UndefinedReason(Enum):
    NOT_FINITE = "NotFinite"
    NO_WEIGHTING = "NoWeighting"
    NO_COWEIGHTING = "NoCoweighting"
    POLE_AT_MINUS_ONE = "PoleAtMinusOne"
    NOT_ACYCLIC = "NotAcyclic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EulerResult:
    """An exact rational value, or the reason none exists."""

    value: Optional[Fraction] = None
    reason: Optional[UndefinedReason] = None

    def __post_init__(self) -> None:
        if (self.value is None) == (self.reason is None):
            raise ValueError("EulerResult needs exactly one of value and reason")

    @classmethod
    def of(cls, value: Union[int, Fraction]) -> "EulerResult":
        return cls(value=Fraction(value))

    @classmethod
    def undefined(cls, reason: UndefinedReason) -> "EulerResult":
        return cls(reason=reason)

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        if self.value is None:
            return f"UNDEFINED({self.reason})"
        return exactalg.format_rational(self.value)


@dataclass(frozen=True)
class Weighting:
    """w with Z·w = (1, …, 1)ᵀ."""

    w: Tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.w, Fraction(0))


@dataclass(frozen=True)
class Coweighting:
    """c with c·Z = (1, …, 1)."""

    c: Tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.c, Fraction(0))


class InvalidFiltration(ValueError):
    """The values do not strictly increase along non-identity morphisms."""


@dataclass(frozen=True)
class NFiltration:
    """μ(x_i) = mu[i]; strictly increasing along every non-identity arrow."""

    mu: Tuple[int, ...]

    def __getitem__(self, obj: ObjId) -> int:
        return self.mu[obj.index]

    def validate(self, cat: FinCat) -> None:
        if len(self.mu) != len(cat.objects):
            raise InvalidFiltration(
                f"Filtration has {len(self.mu)} values for {len(cat.objects)} objects"
            )
        for i, v in enumerate(self.mu):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidFiltration(f"Value {v!r} at position {i} is not a natural number")
        for m in cat.non_identity_morphisms:
            if self[m.dom] >= self[m.cod]:
                raise InvalidFiltration(
                    f"μ({m.dom}) = {self[m.dom]} is not below μ({m.cod}) = {self[m.cod]} "
                    f"although {m} : {m.dom} → {m.cod}"
                )

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.mu)


def _z(cat: FinCat) -> RingMatrix:
    return RingMatrix(incidence_matrix(cat), QQ, cols=len(cat.objects))


def weighting(cat: FinCat) -> Optional[Weighting]:
    w = exactalg.solve(_z(cat), [1] * len(cat.objects))
    return None if w is None else Weighting(w)


def coweighting(cat: FinCat) -> Optional[Coweighting]:
    c = exactalg.solve(_z(cat).transpose(), [1] * len(cat.objects))
    return None if c is None else Coweighting(c)


def chi_leinster(cat: FinCat) -> EulerResult:
    """Σw for a weighting w, when a weighting and a coweighting both exist."""
    w = weighting(cat)
    if w is None:
        return EulerResult.undefined(UndefinedReason.NO_WEIGHTING)
    c = coweighting(cat)
    if c is None:
        return EulerResult.undefined(UndefinedReason.NO_COWEIGHTING)
    if w.total != c.total:
        raise ArithmeticError(f"Σw = {w.total} differs from Σc = {c.total}")
    return EulerResult.of(w.total)


def mobius_inversion(cat: FinCat) -> Optional[RingMatrix]:
    """Z⁻¹, or None when Z is singular."""
    return exactalg.inverse(_z(cat))


def _series_matrix(cat: FinCat) -> RingMatrix:
    """E − (Z − E)t over Q[t]."""
    n = len(cat.objects)
    z = incidence_matrix(cat)
    t = Poly.t()
    rows = [
        [Poly((int(i == j),)) - t * (z[i][j] - int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    return RingMatrix(rows, QQ_T, cols=n)


def level_series(cat: FinCat) -> RationalFunction:
    """Σ #N̄_n t^n over 1, from enumerated chain counts of a finite acyclic C."""
    top = max_nondegenerate_length(cat)
    if top is INFINITE:
        raise NotAcyclic(f"Chains of {cat!r} are unbounded; no level polynomial")
    return exactalg.reduce(Poly(level_counts(cat, top)), Poly((1,)))


def series_rational_function(cat: FinCat, method: str = "adjugate") -> RationalFunction:
    """The reduced rational function whose expansion is Σ #N̄_n t^n.

    ``adjugate`` divides the entry sum of adj(E − (Z − E)t) by its
    determinant and works for every finite category. ``levels`` reads the
    finite polynomial off enumerated chain counts and needs C acyclic.
    """
    if method not in SERIES_METHODS:
        raise ValueError(f"Unknown series method: {method}")
    if method == "levels":
        return level_series(cat)
    a = _series_matrix(cat)
    num = exactalg.sum_of_entries(exactalg.adjugate(a))
    den = exactalg.det(a)
    rf = exactalg.reduce(num, den)
    logger.debug(f"Series of {cat!r}: ({num})/({den}) reduces to {rf}")
    return rf


def _evaluate(rf: RationalFunction) -> EulerResult:
    value = exactalg.eval_at_minus_one(rf)
    if value is None:
        return EulerResult.undefined(UndefinedReason.POLE_AT_MINUS_ONE)
    return EulerResult.of(value)


def chi_series(cat: FinCat, method: str = "adjugate") -> EulerResult:
    return _evaluate(series_rational_function(cat, method))


def chi_l2_acyclic(cat: FinCat) -> EulerResult:
    """Alternating count of non-degenerate chains; defined on finite acyclic C only."""
    top = max_nondegenerate_length(cat)
    if top is INFINITE:
        return EulerResult.undefined(UndefinedReason.NOT_ACYCLIC)
    counts = level_counts(cat, top)
    return EulerResult.of(sum((-1) ** n * c for n, c in enumerate(counts)))


def filtered_polynomial(cat: FinCat, mu: Union[NFiltration, Sequence[int]]) -> Poly:
    """f_χ(A, μ) with coefficient of t^n equal to (−1)^n Σ_i (−1)^i #N̄_i(A)_n.

    N̄_i(A)_n holds the length-i chains whose largest μ value is n. μ strictly
    increases along a chain, so that value is μ of the final object.
    """
    if not is_acyclic(cat):
        raise NotAcyclic(f"Filtered characteristic needs an acyclic category, got {cat!r}")
    mu = mu if isinstance(mu, NFiltration) else NFiltration(tuple(mu))
    mu.validate(cat)
    top = max_nondegenerate_length(cat)
    coeffs: Dict[int, int] = {}
    for i, row in enumerate(end_counts(cat, top)):
        for x, count in zip(cat.objects, row):
            if count:
                coeffs[mu[x]] = coeffs.get(mu[x], 0) + (-1) ** i * count
    degree = max(coeffs, default=-1)
    return Poly((-1) ** n * coeffs.get(n, 0) for n in range(degree + 1))


def chi_fil(cat: FinCat, mu: Union[NFiltration, Sequence[int]]) -> EulerResult:
    if not is_acyclic(cat):
        return EulerResult.undefined(UndefinedReason.NOT_ACYCLIC)
    return EulerResult.of(filtered_polynomial(cat, mu)(-1))


def filtration_from_topological_order(cat: FinCat) -> NFiltration:
    """μ(x) = position of x in the lexicographically least topological order."""
    order = topological_order(cat)
    if order is None:
        raise NotAcyclic(f"No N-filtration exists on {cat!r}")
    mu = [0] * len(cat.objects)
    for pos, x in enumerate(order):
        mu[x.index] = pos
    return NFiltration(tuple(mu))


def longest_path_filtration(cat: FinCat) -> NFiltration:
    """μ(x) = length of the longest non-degenerate chain ending at x."""
    order = topological_order(cat)
    if order is None:
        raise NotAcyclic(f"No N-filtration exists on {cat!r}")
    mu = [0] * len(cat.objects)
    for y in order:
        for x in cat.objects:
            if x != y and cat.hom(x, y):
                mu[y.index] = max(mu[y.index], mu[x.index] + 1)
    return NFiltration(tuple(mu))


def chi_ext_l2_of_sd_op(cat: FinCat) -> EulerResult:
    """Extended L² characteristic of Sd(C)^op.

    Its level series is Σ #N̄_n(C) z^n, continued to −1 through the adjugate
    form regardless of whether C is acyclic.
    """
    return _evaluate(series_rational_function(cat))


def chi_l2_of_sd_op(sd_cat: "SdCategory") -> EulerResult:
    """L² characteristic of Sd(C)^op from splitting-functor dimensions.

    Sums (−1)^L(f) · dim S_g P_f over all pairs of objects of Sd(C)^op.
    """
    from .simplex import splitting_dim

    if sd_cat.truncated_at is not None:
        return EulerResult.undefined(UndefinedReason.NOT_FINITE)
    dual = opposite(sd_cat.category)
    levels = sd_cat.levels
    total = 0
    for g in dual.objects:
        for f in dual.objects:
            total += (-1) ** levels[f.index] * splitting_dim(dual, g, f)
    return EulerResult.of(total)


def alternating_sums_by_object(cat: FinCat) -> List[int]:
    """Σ_n (−1)^n #N̄_n(C)_y for each object y of a finite acyclic C."""
    top = max_nondegenerate_length(cat)
    if top is INFINITE:
        raise NotAcyclic(f"Chains of {cat!r} are unbounded")
    totals = [0] * len(cat.objects)
    for n, row in enumerate(end_counts(cat, top)):
        for j, count in enumerate(row):
            totals[j] += (-1) ** n * count
    return totals
