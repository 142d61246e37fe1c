"""Exact arithmetic over Q and Q[t] on top of sympy.

Polynomials wrap ``sympy.Poly`` over ``QQ`` and matrices go through
``DomainMatrix`` or ``Matrix``. Values cross the module boundary as
``Fraction`` and :class:`Poly` so callers never handle sympy numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Matrix, Rational, Symbol
from sympy.polys.domains import Domain
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed

Scalar = Union[int, Fraction]

T = Symbol("t")
QQ: Domain = sympy.QQ
QQ_T: Domain = sympy.QQ[T]


class NotSquare(ValueError):
    """Raised when a square matrix is required."""


class ZeroDenominator(ZeroDivisionError):
    """Raised when a rational function is built over the zero polynomial."""


class DenominatorVanishesAtZero(ArithmeticError):
    """Raised when a power-series expansion at t=0 does not exist."""


def _rational(value: Any) -> Rational:
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return Rational(value)


def _fraction(value: Any) -> Fraction:
    r = Rational(value)
    return Fraction(int(r.p), int(r.q))


class Poly:
    """Polynomial over Q, coefficients read lowest degree first.

    Instances are immutable; the zero polynomial has no coefficients.
    """

    __slots__ = ("_rep", "_coeffs")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)
        self._rep = sympy.Poly([_rational(c) for c in reversed(cs)] or [0], T, domain=QQ)

    @classmethod
    def _wrap(cls, rep: sympy.Poly) -> "Poly":
        return cls(_fraction(c) for c in reversed(rep.all_coeffs()))

    @classmethod
    def from_expr(cls, expr: Any) -> "Poly":
        """Polynomial in ``t`` from a sympy expression."""
        return cls._wrap(sympy.Poly(expr, T, domain=QQ))

    @classmethod
    def t(cls) -> "Poly":
        """The indeterminate."""
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls((c,))

    def as_sympy(self) -> sympy.Poly:
        return self._rep

    def as_expr(self) -> sympy.Expr:
        return self._rep.as_expr()

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, n: int) -> Fraction:
        return self._coeffs[n] if 0 <= n < len(self._coeffs) else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        return _fraction(self._rep.eval(_rational(x)))

    evaluate = __call__

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return Poly._wrap(self._rep.monic())

    @staticmethod
    def _coerce(other: Any) -> Optional["Poly"]:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self._rep + o._rep)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap(-self._rep)

    def __sub__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self._rep - o._rep)

    def __rsub__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Any) -> "Poly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._wrap(self._rep * o._rep)

    __rmul__ = __mul__

    def __divmod__(self, other: Any) -> Tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = self._rep.div(o._rep)
        return Poly._wrap(q), Poly._wrap(r)

    def __floordiv__(self, other: Any) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: Any) -> "Poly":
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ArithmeticError(f"Cannot divide {self!r} by {other!r}")
        try:
            return Poly._wrap(self._rep.exquo(o._rep))
        except ExactQuotientFailed as e:
            raise ArithmeticError(f"{other!r} does not divide {self!r}") from e

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._coeffs == o._coeffs

    def __hash__(self) -> int:
        if len(self._coeffs) <= 1:
            return hash(self.coefficient(0))
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({[format_rational(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c in (1, -1):
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                coef = format_rational(abs(c))
                terms.append(("-" if c < 0 else "+") + coef + mono)
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; gcd(0, 0) is 0."""
    return Poly._wrap(a.as_sympy().gcd(b.as_sympy())).monic()


def format_rational(q: Scalar) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_poly(p: Poly) -> List[str]:
    return [format_rational(c) for c in p.coeffs]


def _zero(ring: Domain) -> Any:
    return Poly() if ring == QQ_T else Fraction(0)


def _one(ring: Domain) -> Any:
    return Poly((1,)) if ring == QQ_T else Fraction(1)


def _to_sympy(value: Any) -> sympy.Expr:
    return value.as_expr() if isinstance(value, Poly) else _rational(value)


def _from_sympy(value: Any, ring: Domain) -> Any:
    return Poly.from_expr(value) if ring == QQ_T else _fraction(value)


def _join(a: Domain, b: Domain) -> Domain:
    return QQ_T if QQ_T in (a, b) else QQ


class RingMatrix:
    """Dense rectangular matrix over Q (``QQ``) or Q[t] (``QQ_T``).

    Entries read back as ``Fraction`` over ``QQ`` and :class:`Poly` over
    ``QQ_T``. A matrix may have zero rows or zero columns, which chain
    complexes need at their ends.
    """

    __slots__ = ("rows", "cols", "ring", "_entries")

    def __init__(
        self,
        entries: Sequence[Sequence[Any]],
        ring: Domain = QQ,
        cols: Optional[int] = None,
    ):
        if ring not in (QQ, QQ_T):
            raise ValueError(f"Unknown ring: {ring}")
        rows = [tuple(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("RingMatrix rows must all have the same length")
        if ring == QQ_T:
            rows = [tuple(e if isinstance(e, Poly) else Poly((e,)) for e in r) for r in rows]
        else:
            rows = [tuple(Fraction(e) for e in r) for r in rows]
        self.rows = len(rows)
        self.cols = cols
        self.ring = ring
        self._entries: Tuple[Tuple[Any, ...], ...] = tuple(rows)

    @classmethod
    def identity(cls, n: int, ring: Domain = QQ) -> "RingMatrix":
        z, o = _zero(ring), _one(ring)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], ring, cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Domain = QQ) -> "RingMatrix":
        z = _zero(ring)
        return cls([[z] * cols for _ in range(rows)], ring, cols=cols)

    @classmethod
    def from_sympy(cls, m: Matrix, ring: Domain = QQ) -> "RingMatrix":
        return cls(
            [[_from_sympy(m[i, j], ring) for j in range(m.cols)] for i in range(m.rows)],
            ring,
            cols=m.cols,
        )

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix, ring: Domain) -> "RingMatrix":
        return cls.from_sympy(dm.to_Matrix(), ring)

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows, self.cols, [_to_sympy(e) for r in self._entries for e in r])

    def to_domain_matrix(self, ring: Optional[Domain] = None) -> DomainMatrix:
        ring = ring or self.ring
        return DomainMatrix(
            [[ring.from_sympy(_to_sympy(e)) for e in r] for r in self._entries],
            self.shape,
            ring,
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> Any:
        i, j = ij
        return self._entries[i][j]

    def row(self, i: int) -> Tuple[Any, ...]:
        return self._entries[i]

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(r[j] for r in self._entries)

    def to_lists(self) -> List[List[Any]]:
        return [list(r) for r in self._entries]

    def transpose(self) -> "RingMatrix":
        return RingMatrix(
            [list(self.column(j)) for j in range(self.cols)], self.ring, cols=self.rows
        )

    def _check_same_shape(self, other: "RingMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same_shape(other)
        ring = _join(self.ring, other.ring)
        total = self.to_domain_matrix(ring) + other.to_domain_matrix(ring)
        return RingMatrix.from_domain_matrix(total, ring)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_same_shape(other)
        ring = _join(self.ring, other.ring)
        diff = self.to_domain_matrix(ring) - other.to_domain_matrix(ring)
        return RingMatrix.from_domain_matrix(diff, ring)

    def scale(self, c: Any) -> "RingMatrix":
        ring = QQ_T if isinstance(c, Poly) or self.ring == QQ_T else QQ
        return RingMatrix.from_sympy(self.to_sympy() * _to_sympy(c), ring)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        ring = _join(self.ring, other.ring)
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return RingMatrix.zeros(self.rows, other.cols, ring)
        product = self.to_domain_matrix(ring).matmul(other.to_domain_matrix(ring))
        return RingMatrix.from_domain_matrix(product, ring)

    def is_zero(self) -> bool:
        return all(e == 0 for r in self._entries for e in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.shape, self._entries))

    def __repr__(self) -> str:
        def cell(e: Any) -> str:
            return str(e) if isinstance(e, Poly) else format_rational(e)

        body = [[cell(e) for e in r] for r in self._entries]
        return f"RingMatrix({body}, ring={self.ring})"


def sum_of_entries(m: RingMatrix) -> Any:
    total = _zero(m.ring)
    for r in m.to_lists():
        for e in r:
            total = total + e
    return total


def det(m: RingMatrix) -> Any:
    """Determinant; the 0x0 matrix has determinant 1.

    ``DomainMatrix.det`` eliminates fraction-free over Q[t], so every
    division it performs is exact.
    """
    if not m.is_square:
        raise NotSquare(f"Determinant needs a square matrix, got {m.shape}")
    if m.rows == 0:
        return _one(m.ring)
    value = m.to_domain_matrix().det()
    return _from_sympy(m.ring.to_sympy(value), m.ring)


def _scalar_matrix(n: int, c: Any, ring: Domain) -> DomainMatrix:
    return DomainMatrix(
        [[c if i == j else ring.zero for j in range(n)] for i in range(n)], (n, n), ring
    )


def adjugate(m: RingMatrix) -> RingMatrix:
    """Classical adjoint, checked against M·adj(M) = det(M)·E.

    With the Berkowitz characteristic polynomial λ^n + c_1 λ^(n-1) + … + c_n
    of M, adj(M) = (-1)^(n-1) (M^(n-1) + c_1 M^(n-2) + … + c_(n-1) E). No
    step divides, so this holds over Q[t] and for singular M.
    """
    if not m.is_square:
        raise NotSquare(f"Adjugate needs a square matrix, got {m.shape}")
    n = m.rows
    if n == 0:
        return RingMatrix([], m.ring, cols=0)
    if n == 1:
        return RingMatrix([[_one(m.ring)]], m.ring)
    ring = m.ring
    a = m.to_domain_matrix()
    coeffs = a.charpoly()
    acc = _scalar_matrix(n, coeffs[0], ring)
    for c in coeffs[1:n]:
        acc = acc.matmul(a) + _scalar_matrix(n, c, ring)
    if n % 2 == 0:
        acc = -acc
    determinant = coeffs[n] if n % 2 == 0 else -coeffs[n]
    if a.matmul(acc) != _scalar_matrix(n, determinant, ring):
        raise ArithmeticError("adjugate identity M·adj(M) = det(M)·E failed")
    return RingMatrix.from_domain_matrix(acc, ring)


def _require_qq(m: RingMatrix) -> None:
    if m.ring != QQ:
        raise ValueError("Expected a matrix over QQ")


def rank(m: RingMatrix) -> int:
    """Rank over Q."""
    _require_qq(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.to_domain_matrix().rank()


def inverse(m: RingMatrix) -> Optional[RingMatrix]:
    """Exact inverse over Q, or ``None`` when the matrix is singular."""
    if not m.is_square:
        raise NotSquare(f"Inverse needs a square matrix, got {m.shape}")
    _require_qq(m)
    if m.rows == 0:
        return RingMatrix([], QQ, cols=0)
    if det(m) == 0:
        return None
    return RingMatrix.from_domain_matrix(m.to_domain_matrix().inv(), QQ)


def solve(a: RingMatrix, b: Sequence[Scalar]) -> Optional[Tuple[Fraction, ...]]:
    """One exact solution of ``a x = b``, or ``None`` when inconsistent.

    Nonsingular square systems go through ``LUsolve``. Otherwise
    Gauss-Jordan elimination parametrizes the solutions and every free
    parameter is set to 0.
    """
    _require_qq(a)
    if len(b) != a.rows:
        raise ValueError(f"Right-hand side has length {len(b)}, expected {a.rows}")
    if a.cols == 0:
        return () if all(v == 0 for v in b) else None
    if a.rows == 0:
        return tuple(Fraction(0) for _ in range(a.cols))
    lhs = a.to_sympy()
    rhs = Matrix(a.rows, 1, [_rational(v) for v in b])
    if a.is_square and det(a) != 0:
        x = lhs.LUsolve(rhs)
    else:
        try:
            x, params = lhs.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        x = x.xreplace({p: 0 for p in params})
    return tuple(_fraction(v) for v in x)


@dataclass(frozen=True)
class RationalFunction:
    """A reduced quotient num/den: gcd(num, den) = 1 and den monic."""

    num: Poly
    den: Poly

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    def to_dict(self) -> dict:
        return {"num": format_poly(self.num), "den": format_poly(self.den)}


def reduce(num: Poly, den: Poly) -> RationalFunction:
    """Cancel common factors and make the denominator monic."""
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return RationalFunction(Poly(), Poly((1,)))
    p, q = num.as_sympy().cancel(den.as_sympy(), include=True)
    p, q = Poly._wrap(p), Poly._wrap(q)
    return RationalFunction(p * (1 / q.leading), q.monic())


def eval_at_minus_one(f: RationalFunction) -> Optional[Fraction]:
    """Value at t = -1, or ``None`` when -1 is a pole of the reduced form."""
    d = f.den(-1)
    if d == 0:
        return None
    return f.num(-1) / d


def taylor_coefficients(f: RationalFunction, k: int) -> List[Fraction]:
    """First k+1 power-series coefficients of num/den around t = 0.

    den(0) ≠ 0 makes den a unit modulo t^(k+1), so the series is num times
    that inverse truncated at degree k.
    """
    if f.den.coefficient(0) == 0:
        raise DenominatorVanishesAtZero(f"{f} has no power series at t=0")
    modulus = sympy.Poly(T ** (k + 1), T, domain=QQ)
    inv = f.den.as_sympy().invert(modulus)
    series = Poly._wrap((f.num.as_sympy() * inv).rem(modulus))
    return [series.coefficient(n) for n in range(k + 1)]
