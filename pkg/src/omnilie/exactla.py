"""Exact rational linear algebra.

Matrices are tuples of row tuples of rationals, vectors are tuples of
rationals.  The rational type :data:`Rat` is ``gmpy2.mpq`` when gmpy2 is
importable and :class:`fractions.Fraction` otherwise; the two compare and
hash alike.  Everything is immutable; no function mutates its input.
Subspaces are stored by their reduced row-echelon basis, which is unique, so
two :class:`Subspace` values compare equal exactly when they describe the same
subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)
HALF = Rat(1, 2)
THIRD = Rat(1, 3)

Vec = tuple  # tuple[Rat, ...]
Mat = tuple  # tuple[Vec, ...]


class DimensionError(ValueError):
    """Raised when operand shapes do not agree."""


# ---------------------------------------------------------------------------
# conversion and serialization


def rat(x):
    """Coerce ``x`` (int, Fraction, mpq or ``"p/q"`` string) to :data:`Rat`.

    Floats are refused: they would silently bring rounding into exact code.
    """
    if type(x) is Rat:
        return x
    if isinstance(x, (bool, float)):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, str):
        if "." in x or "e" in x.lower():
            raise ValueError(f"rational strings have the form p/q, got {x!r}")
        return Rat(x.strip())
    if isinstance(x, (int, Fraction)) or type(x).__name__ in ("mpq", "mpz"):
        return Rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def vec(xs: Iterable) -> Vec:
    return tuple(rat(x) for x in xs)


def mat(rows: Iterable[Iterable], ncols: Optional[int] = None) -> Mat:
    out = tuple(vec(r) for r in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise DimensionError(f"ragged matrix with row lengths {sorted(widths)}")
    if ncols is not None and widths and widths != {ncols}:
        raise DimensionError(f"expected {ncols} columns, got {widths.pop()}")
    return out


def rat_to_str(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s):
    return rat(s)


def vec_to_json(v: Sequence) -> list:
    return [rat_to_str(x) for x in v]


def vec_from_json(data: Sequence) -> Vec:
    return tuple(rat_from_str(x) for x in data)


def mat_to_json(m: Sequence[Sequence]) -> list:
    return [vec_to_json(r) for r in m]


def mat_from_json(data: Sequence[Sequence], ncols: Optional[int] = None) -> Mat:
    return mat(([rat_from_str(x) for x in r] for r in data), ncols)


# ---------------------------------------------------------------------------
# basic arithmetic


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def zero_matrix(rows: int, cols: int) -> Mat:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if k == i else ZERO for k in range(n))


def _check_same(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")


def vadd(u: Vec, v: Vec) -> Vec:
    _check_same(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    _check_same(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec):
    _check_same(u, v)
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero(u: Iterable) -> bool:
    return all(x == 0 for x in u)


def ncols_of(m: Mat, default: int = 0) -> int:
    return len(m[0]) if m else default


def matvec(m: Mat, v: Vec) -> Vec:
    if m and len(m[0]) != len(v):
        raise DimensionError(f"matrix has {len(m[0])} columns, vector length {len(v)}")
    return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    inner = ncols_of(a)
    if inner != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{inner} by {len(b)}x{ncols_of(b)}")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a
    )


def madd(a: Mat, b: Mat) -> Mat:
    _check_same(a, b)
    return tuple(vadd(r, s) for r, s in zip(a, b))


def msub(a: Mat, b: Mat) -> Mat:
    _check_same(a, b)
    return tuple(vsub(r, s) for r, s in zip(a, b))


def mscale(c, a: Mat) -> Mat:
    return tuple(vscale(c, r) for r in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def commutator(a: Mat, b: Mat) -> Mat:
    return msub(matmul(a, b), matmul(b, a))


# ---------------------------------------------------------------------------
# row reduction


class RREF(NamedTuple):
    matrix: Mat
    pivots: tuple
    rank: int


def rref(m: Sequence[Sequence], ncols: Optional[int] = None) -> RREF:
    """Reduced row-echelon form of ``m``.

    Zero rows are kept at the bottom so the result has the shape of ``m``.
    ``ncols`` is only needed when ``m`` has no rows.
    """
    rows = [list(vec(r)) for r in m]
    width = len(rows[0]) if rows else (ncols or 0)
    if any(len(r) != width for r in rows):
        raise DimensionError("ragged matrix")
    pivots = []
    r = 0
    for c in range(width):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return RREF(tuple(tuple(row) for row in rows), tuple(pivots), len(pivots))


def rank(m: Sequence[Sequence]) -> int:
    return rref(m).rank


def kernel_basis(m: Sequence[Sequence], ncols: Optional[int] = None) -> list:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    red = rref(m, ncols)
    width = ncols_of(red.matrix, ncols or 0)
    pivset = set(red.pivots)
    basis = []
    for free in range(width):
        if free in pivset:
            continue
        x = [ZERO] * width
        x[free] = ONE
        for row, pc in zip(red.matrix, red.pivots):
            x[pc] = -row[free]
        basis.append(tuple(x))
    return basis


class Solution(NamedTuple):
    particular: Vec
    kernel: "Subspace"


def solve_linear(a: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None):
    """Solve ``a x = b`` exactly.

    Returns a :class:`Solution` (one particular solution plus the kernel of
    ``a``) or ``None`` when the system is inconsistent.
    """
    a = mat(a)
    b = vec(b)
    if len(a) != len(b):
        raise DimensionError(f"{len(a)} equations but {len(b)} right-hand sides")
    width = ncols_of(a, ncols or 0)
    if ncols is not None and a and width != ncols:
        raise DimensionError(f"expected {ncols} unknowns, matrix has {width}")
    aug = [row + (rhs,) for row, rhs in zip(a, b)]
    red = rref(aug, width + 1)
    if width in red.pivots:
        return None
    x = [ZERO] * width
    for row, pc in zip(red.matrix, red.pivots):
        x[pc] = row[width]
    return Solution(tuple(x), span(kernel_basis(a, width), width))


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim held in canonical RREF form."""

    ambient_dim: int
    basis: Mat
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, x) -> bool:
        return subspace_contains(self, x)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": mat_to_json(self.basis)}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        n = int(data["ambient_dim"])
        return span(mat_from_json(data["basis"], n), n)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [vec(v) for v in vectors]
    for v in rows:
        if len(v) != ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
    red = rref(rows, ambient_dim)
    return Subspace(ambient_dim, red.matrix[: red.rank], red.pivots)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, (), ())


def full_space(ambient_dim: int) -> Subspace:
    return span(identity(ambient_dim), ambient_dim)


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return span(u.basis + v.basis, u.ambient_dim)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection from the kernel of ``[U^T | -V^T]``.

    A kernel vector ``(a, b)`` gives ``a U = b V``, a common element.
    """
    _same_ambient(u, v)
    n = u.ambient_dim
    if not u.dim or not v.dim:
        return zero_subspace(n)
    system = [
        tuple(row_u[c] for row_u in u.basis) + tuple(-row_v[c] for row_v in v.basis)
        for c in range(n)
    ]
    coeffs = kernel_basis(system, u.dim + v.dim)
    common = []
    for k in coeffs:
        x = [ZERO] * n
        for a, row in zip(k[: u.dim], u.basis):
            if a:
                x = [xi + a * ri for xi, ri in zip(x, row)]
        common.append(x)
    return span(common, n)


def reduce_against(u: Subspace, x: Sequence) -> Vec:
    """Remainder of ``x`` after clearing the pivot columns of ``u``."""
    x = list(vec(x))
    if len(x) != u.ambient_dim:
        raise DimensionError(f"vector of length {len(x)} in ambient dimension {u.ambient_dim}")
    for row, pc in zip(u.basis, u.pivots):
        f = x[pc]
        if f:
            x = [xi - f * ri for xi, ri in zip(x, row)]
    return tuple(x)


def subspace_contains(u: Subspace, x: Sequence) -> bool:
    return is_zero(reduce_against(u, x))


def subspace_leq(u: Subspace, v: Subspace) -> bool:
    """True when ``u`` is contained in ``v``."""
    _same_ambient(u, v)
    return all(subspace_contains(v, b) for b in u.basis)


def complement_in(small: Subspace, big: Subspace) -> list:
    """Vectors of ``big`` completing a basis of ``small`` to one of ``big``.

    Assumes ``small`` is contained in ``big``; picks from the canonical basis
    of ``big`` greedily, so the result is deterministic.
    """
    _same_ambient(small, big)
    current = small
    extra = []
    for b in big.basis:
        if not subspace_contains(current, b):
            extra.append(b)
            current = subspace_sum(current, span([b], big.ambient_dim))
    return extra


def coordinates(u: Subspace, x: Sequence) -> Vec:
    """Coordinates of ``x`` in the canonical basis of ``u`` (x must lie in u)."""
    x = vec(x)
    if not subspace_contains(u, x):
        raise ValueError("vector is not in the subspace")
    return tuple(x[pc] for pc in u.pivots)
