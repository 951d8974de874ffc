"""Dense fuzzy vectors and matrices over a linear Heyting algebra.

A fuzzy relation between finite world sets is a matrix of truth values;
a fuzzy set over a world set is a vector.  Composition is max-min in all
four arities:

    (phi o psi)(a, c) = join_b  phi(a, b) /\ psi(b, c)
    (f o phi)(b)      = join_a  f(a) /\ phi(a, b)
    (phi o g)(a)      = join_b  phi(a, b) /\ g(b)
    f o g             = join_a  f(a) /\ g(a)

and the inverse of a relation is its transpose.  The module also provides
the four residual updates used by the greatest-(pre)simulation fixpoint
iteration: each returns the entrywise greatest matrix chi such that
replacing phi by phi /\ chi re-imposes one relational inequality with the
current phi on the right-hand side.  By adjunction that greatest solution
is a meet of residua, e.g. for phi^-1 o R <= R' o phi^-1:

    chi(u, u') = meet_v  R(u, v) -> (R' o phi^-1)(u', v)

All entries stay inside the (finite) set of input values plus {0, 1}, which
is what makes the downstream fixpoint iterations terminate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .algebra import Algebra, ONE, ZERO


def _check_fractions(algebra: Algebra, values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        if not isinstance(v, Fraction):
            if isinstance(v, int):
                v = Fraction(v)
            else:
                raise TypeError(f"truth values must be Fraction, got {type(v).__name__}")
        algebra.check_value(v)
        out.append(v)
    return tuple(out)


class FuzzyVec:
    """A fuzzy set over a finite world set: an immutable value vector."""

    __slots__ = ("algebra", "values")

    def __init__(self, algebra: Algebra, values: Iterable[Fraction]):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "values", _check_fractions(algebra, values))
        if len(self.values) == 0:
            raise ValueError("fuzzy vector must be nonempty")

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyVec is immutable")

    @classmethod
    def constant(cls, algebra: Algebra, size: int, value: Fraction) -> "FuzzyVec":
        return cls(algebra, (value,) * size)

    @classmethod
    def zeros(cls, algebra: Algebra, size: int) -> "FuzzyVec":
        return cls.constant(algebra, size, ZERO)

    @classmethod
    def ones(cls, algebra: Algebra, size: int) -> "FuzzyVec":
        return cls.constant(algebra, size, ONE)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i) -> Fraction:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, FuzzyVec):
            return NotImplemented
        return self.algebra == other.algebra and self.values == other.values

    def __hash__(self):
        return hash((self.algebra, self.values))

    def __repr__(self):
        return f"FuzzyVec({[str(v) for v in self.values]})"

    def _check_compatible(self, other: "FuzzyVec") -> None:
        self.algebra.check_same(other.algebra)
        if len(self) != len(other):
            raise ValueError(f"vector length mismatch: {len(self)} vs {len(other)}")

    def meet(self, other: "FuzzyVec") -> "FuzzyVec":
        self._check_compatible(other)
        return FuzzyVec(self.algebra, (min(a, b) for a, b in zip(self.values, other.values)))

    def join(self, other: "FuzzyVec") -> "FuzzyVec":
        self._check_compatible(other)
        return FuzzyVec(self.algebra, (max(a, b) for a, b in zip(self.values, other.values)))

    def leq(self, other: "FuzzyVec") -> bool:
        self._check_compatible(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def first_violation(self, other: "FuzzyVec"):
        """First index where self > other, as (index, lhs, rhs), or None."""
        self._check_compatible(other)
        for i, (a, b) in enumerate(zip(self.values, other.values)):
            if a > b:
                return (i, a, b)
        return None

    def compose_mat(self, phi: "FuzzyMat") -> "FuzzyVec":
        """(self o phi)(b) = join_a self(a) /\\ phi(a, b)."""
        self.algebra.check_same(phi.algebra)
        k, m = phi.shape
        if len(self) != k:
            raise ValueError(f"dimension mismatch: vector {len(self)} vs matrix {phi.shape}")
        f = self.values
        return FuzzyVec(
            self.algebra,
            (max(min(f[a], phi.rows[a][b]) for a in range(k)) for b in range(m)),
        )

    def compose_vec(self, other: "FuzzyVec") -> Fraction:
        """self o other = join_a self(a) /\\ other(a)."""
        self._check_compatible(other)
        return max(min(a, b) for a, b in zip(self.values, other.values))


class FuzzyMat:
    """A fuzzy relation between two finite world sets: an immutable matrix."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra: Algebra, rows: Iterable[Iterable[Fraction]]):
        checked = tuple(_check_fractions(algebra, row) for row in rows)
        if not checked:
            raise ValueError("fuzzy matrix must have at least one row")
        width = len(checked[0])
        if width == 0 or any(len(r) != width for r in checked):
            raise ValueError("fuzzy matrix rows must be nonempty and equally long")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "rows", checked)

    def __setattr__(self, name, value):
        raise AttributeError("FuzzyMat is immutable")

    @classmethod
    def constant(cls, algebra: Algebra, shape: tuple[int, int], value: Fraction) -> "FuzzyMat":
        k, m = shape
        return cls(algebra, ((value,) * m for _ in range(k)))

    @classmethod
    def zeros(cls, algebra: Algebra, shape: tuple[int, int]) -> "FuzzyMat":
        return cls.constant(algebra, shape, ZERO)

    @classmethod
    def ones(cls, algebra: Algebra, shape: tuple[int, int]) -> "FuzzyMat":
        return cls.constant(algebra, shape, ONE)

    @classmethod
    def identity(cls, algebra: Algebra, size: int) -> "FuzzyMat":
        return cls(
            algebra,
            ((ONE if i == j else ZERO for j in range(size)) for i in range(size)),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, FuzzyMat):
            return NotImplemented
        return self.algebra == other.algebra and self.rows == other.rows

    def __hash__(self):
        return hash((self.algebra, self.rows))

    def __repr__(self):
        return f"FuzzyMat({[[str(v) for v in row] for row in self.rows]})"

    def _check_compatible(self, other: "FuzzyMat") -> None:
        self.algebra.check_same(other.algebra)
        if self.shape != other.shape:
            raise ValueError(f"matrix shape mismatch: {self.shape} vs {other.shape}")

    def meet(self, other: "FuzzyMat") -> "FuzzyMat":
        self._check_compatible(other)
        return FuzzyMat(
            self.algebra,
            ((min(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)),
        )

    def join(self, other: "FuzzyMat") -> "FuzzyMat":
        self._check_compatible(other)
        return FuzzyMat(
            self.algebra,
            ((max(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)),
        )

    def leq(self, other: "FuzzyMat") -> bool:
        self._check_compatible(other)
        return all(
            a <= b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def first_violation(self, other: "FuzzyMat"):
        """First entry where self > other, as ((i, j), lhs, rhs), or None."""
        self._check_compatible(other)
        for i, (ra, rb) in enumerate(zip(self.rows, other.rows)):
            for j, (a, b) in enumerate(zip(ra, rb)):
                if a > b:
                    return ((i, j), a, b)
        return None

    def inverse(self) -> "FuzzyMat":
        """The inverse relation: the transpose."""
        return FuzzyMat(self.algebra, zip(*self.rows))

    def compose(self, other: "FuzzyMat") -> "FuzzyMat":
        """(self o other)(a, c) = join_b self(a, b) /\\ other(b, c)."""
        self.algebra.check_same(other.algebra)
        k, n = self.shape
        n2, m = other.shape
        if n != n2:
            raise ValueError(f"dimension mismatch: {self.shape} o {other.shape}")
        cols = other.inverse().rows
        return FuzzyMat(
            self.algebra,
            (
                (max(min(row[b], col[b]) for b in range(n)) for col in cols)
                for row in self.rows
            ),
        )

    def compose_vec(self, g: FuzzyVec) -> FuzzyVec:
        """(self o g)(a) = join_b self(a, b) /\\ g(b)."""
        self.algebra.check_same(g.algebra)
        k, m = self.shape
        if len(g) != m:
            raise ValueError(f"dimension mismatch: matrix {self.shape} vs vector {len(g)}")
        return FuzzyVec(
            self.algebra,
            (max(min(row[b], g.values[b]) for b in range(m)) for row in self.rows),
        )

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.rows for v in row)

    def min_value(self) -> Fraction:
        return min(v for row in self.rows for v in row)

    def values_used(self) -> set[Fraction]:
        return {v for row in self.rows for v in row}


def nonzero_profile(phi: FuzzyMat) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-row and per-column counts of nonzero entries.

    A relation is image-finite when every row count is finite, domain-finite
    when every column count is, and degree-finite when both are; for the
    dense matrices here all counts are finite, and the profile reports them.
    """
    rows = tuple(sum(1 for v in row if v != 0) for row in phi.rows)
    cols = tuple(
        sum(1 for i in range(len(phi.rows)) if phi.rows[i][j] != 0)
        for j in range(len(phi.rows[0]))
    )
    return rows, cols


# -- residual updates ------------------------------------------------------
#
# Each update takes the two endo-relations R (on the left-hand worlds) and
# Rp (on the right-hand worlds) plus the current iterate phi, and returns
# the greatest chi making the indicated inequality hold for phi /\ chi
# against compositions of the current phi.


def _check_update_args(r: FuzzyMat, rp: FuzzyMat, phi: FuzzyMat) -> tuple[int, int]:
    r.algebra.check_same(rp.algebra)
    r.algebra.check_same(phi.algebra)
    k, k2 = r.shape
    m, m2 = rp.shape
    if k != k2 or m != m2:
        raise ValueError("relation matrices must be square")
    if phi.shape != (k, m):
        raise ValueError(f"phi shape {phi.shape} does not match relations {(k, m)}")
    return k, m


def update_forward(r: FuzzyMat, rp: FuzzyMat, phi: FuzzyMat) -> FuzzyMat:
    """Greatest chi for:  (phi /\\ chi)^-1 o R  <=  R' o phi^-1."""
    k, m = _check_update_args(r, rp, phi)
    res = phi.algebra.residuum
    bound = rp.compose(phi.inverse())  # m x k, entry (u', v)
    return FuzzyMat(
        phi.algebra,
        (
            (
                min(res(r.rows[u][v], bound.rows[up][v]) for v in range(k))
                for up in range(m)
            )
            for u in range(k)
        ),
    )


def update_forward_inv(r: FuzzyMat, rp: FuzzyMat, phi: FuzzyMat) -> FuzzyMat:
    """Greatest chi for:  (phi /\\ chi) o R'  <=  R o phi."""
    k, m = _check_update_args(r, rp, phi)
    res = phi.algebra.residuum
    bound = r.compose(phi)  # k x m, entry (u, v')
    return FuzzyMat(
        phi.algebra,
        (
            (
                min(res(rp.rows[up][vp], bound.rows[u][vp]) for vp in range(m))
                for up in range(m)
            )
            for u in range(k)
        ),
    )


def update_backward(r: FuzzyMat, rp: FuzzyMat, phi: FuzzyMat) -> FuzzyMat:
    """Greatest chi for:  R o (phi /\\ chi)  <=  phi o R'."""
    k, m = _check_update_args(r, rp, phi)
    res = phi.algebra.residuum
    bound = phi.compose(rp)  # k x m, entry (v, u')
    return FuzzyMat(
        phi.algebra,
        (
            (
                min(res(r.rows[v][u], bound.rows[v][up]) for v in range(k))
                for up in range(m)
            )
            for u in range(k)
        ),
    )


def update_backward_inv(r: FuzzyMat, rp: FuzzyMat, phi: FuzzyMat) -> FuzzyMat:
    """Greatest chi for:  R' o (phi /\\ chi)^-1  <=  phi^-1 o R."""
    k, m = _check_update_args(r, rp, phi)
    res = phi.algebra.residuum
    bound = phi.inverse().compose(r)  # m x k, entry (v', u)
    return FuzzyMat(
        phi.algebra,
        (
            (
                min(res(rp.rows[vp][up], bound.rows[vp][u]) for vp in range(m))
                for up in range(m)
            )
            for u in range(k)
        ),
    )


RESIDUAL_UPDATES: dict[str, Callable[[FuzzyMat, FuzzyMat, FuzzyMat], FuzzyMat]] = {
    "fwd": update_forward,
    "fwd_inv": update_forward_inv,
    "bwd": update_backward,
    "bwd_inv": update_backward_inv,
}
