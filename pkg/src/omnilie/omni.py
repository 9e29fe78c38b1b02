"""The omni-Lie algebra E_n = gl(n) x R^n over the rationals.

Elements are pairs ``(A, v)``.  The bracket is::

    [[(A1, v1), (A2, v2)]] = ([A1, A2], (A1 v2 - A2 v1) / 2)

and the R^n-valued pairing is ``<(A1, v1), (A2, v2)> = (A1 v2 + A2 v1) / 2``.
The bracket is antisymmetric but fails the Jacobi identity; the failure is
exactly ``(0, T)`` where ``T`` is the Cartan 3-form.

Flattening convention used everywhere subspaces of E_n appear: the matrix
entries row by row, followed by the vector, giving a point of Q^(n*n + n).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import exactla as la
from .exactla import HALF, DimensionError, Subspace


@dataclass(frozen=True)
class OmniElement:
    a: la.Mat
    v: la.Vec

    def __post_init__(self):
        a = la.mat(self.a)
        v = la.vec(self.v)
        n = len(v)
        if len(a) != n or any(len(r) != n for r in a):
            raise DimensionError(f"matrix part must be {n}x{n} to match vector of length {n}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)

    @classmethod
    def _make(cls, a, v) -> "OmniElement":
        # internal: parts are already tuples of Rat with matching sizes
        e = object.__new__(cls)
        object.__setattr__(e, "a", a)
        object.__setattr__(e, "v", v)
        return e

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(map(la.rat_to_str, r)) + "]" for r in self.a)
        return f"OmniElement(a=[{rows}], v=[{', '.join(map(la.rat_to_str, self.v))}])"

    @property
    def n(self) -> int:
        return len(self.v)

    def __add__(self, other: "OmniElement") -> "OmniElement":
        _check(self, other)
        return OmniElement._make(la.madd(self.a, other.a), la.vadd(self.v, other.v))

    def __sub__(self, other: "OmniElement") -> "OmniElement":
        _check(self, other)
        return OmniElement._make(la.msub(self.a, other.a), la.vsub(self.v, other.v))

    def __neg__(self) -> "OmniElement":
        return OmniElement._make(la.mscale(-1, self.a), la.vscale(-1, self.v))

    def __rmul__(self, c) -> "OmniElement":
        c = la.rat(c)
        return OmniElement._make(la.mscale(c, self.a), la.vscale(c, self.v))

    def is_zero(self) -> bool:
        return la.is_zero(self.v) and all(la.is_zero(r) for r in self.a)

    def flatten(self) -> la.Vec:
        return tuple(x for row in self.a for x in row) + self.v

    @classmethod
    def unflatten(cls, x: Sequence, n: int) -> "OmniElement":
        x = la.vec(x)
        if len(x) != n * n + n:
            raise DimensionError(f"flat vector of length {len(x)} does not match n={n}")
        a = tuple(x[i * n:(i + 1) * n] for i in range(n))
        return cls._make(a, x[n * n:])

    @classmethod
    def zero(cls, n: int) -> "OmniElement":
        return cls(la.zero_matrix(n, n), la.zeros(n))

    def to_json(self) -> dict:
        return {"a": la.mat_to_json(self.a), "v": la.vec_to_json(self.v)}

    @classmethod
    def from_json(cls, data: dict) -> "OmniElement":
        return cls(la.mat_from_json(data["a"]), la.vec_from_json(data["v"]))


def _check(*es: OmniElement) -> None:
    ns = {e.n for e in es}
    if len(ns) != 1:
        raise DimensionError(f"omni elements of different sizes {sorted(ns)}")


def ambient_dim(n: int) -> int:
    return n * n + n


def elementary(n: int, i: int, j: int) -> la.Mat:
    """The matrix unit E_ij (0-based indices)."""
    return tuple(
        tuple(la.ONE if (r, c) == (i, j) else la.ZERO for c in range(n)) for r in range(n)
    )


def matrix_element(a: Sequence[Sequence]) -> OmniElement:
    a = la.mat(a)
    return OmniElement(a, la.zeros(len(a)))


def vector_element(v: Sequence) -> OmniElement:
    v = la.vec(v)
    return OmniElement(la.zero_matrix(len(v), len(v)), v)


def basis(n: int) -> list:
    """Basis of E_n in flattening order: E_11, E_12, ..., E_nn, e_1, ..., e_n."""
    return [OmniElement.unflatten(la.unit(ambient_dim(n), k), n) for k in range(ambient_dim(n))]


# ---------------------------------------------------------------------------
# structure maps


def _mv(a, v):
    return tuple(sum([x * y for x, y in zip(row, v)], la.ZERO) for row in a)


def _mm(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum([x * y for x, y in zip(row, col)], la.ZERO) for col in bt) for row in a)


def omni_bracket(e1: OmniElement, e2: OmniElement) -> OmniElement:
    _check(e1, e2)
    p, q = _mm(e1.a, e2.a), _mm(e2.a, e1.a)
    a = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(p, q))
    v = tuple(HALF * (x - y) for x, y in zip(_mv(e1.a, e2.v), _mv(e2.a, e1.v)))
    return OmniElement._make(a, v)


def omni_pairing(e1: OmniElement, e2: OmniElement) -> la.Vec:
    _check(e1, e2)
    return tuple(HALF * (x + y) for x, y in zip(_mv(e1.a, e2.v), _mv(e2.a, e1.v)))


def quadratic(e: OmniElement) -> la.Vec:
    """``<e, e> = A v``."""
    return _mv(e.a, e.v)


def cartan_form(e1: OmniElement, e2: OmniElement, e3: OmniElement) -> la.Vec:
    """``T = (<[[e1,e2]],e3> + <[[e2,e3]],e1> + <[[e3,e1]],e2>) / 3``."""
    _check(e1, e2, e3)
    total = la.zeros(e1.n)
    for x, y, z in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        total = la.vadd(total, omni_pairing(omni_bracket(x, y), z))
    return la.vscale(la.THIRD, total)


def jacobiator(e1: OmniElement, e2: OmniElement, e3: OmniElement) -> OmniElement:
    """Cyclic sum of double brackets ``[[[[e1,e2]],e3]] + c.p.``, computed literally."""
    _check(e1, e2, e3)
    total = OmniElement.zero(e1.n)
    for x, y, z in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        total = total + omni_bracket(omni_bracket(x, y), z)
    return total


def anomaly_holds(e1: OmniElement, e2: OmniElement, e3: OmniElement) -> bool:
    """Whether the jacobiator equals ``(0, T(e1, e2, e3))``."""
    return jacobiator(e1, e2, e3) == vector_element(cartan_form(e1, e2, e3))


# ---------------------------------------------------------------------------
# random elements


def random_rational(rng: random.Random):
    return la.Rat(rng.randint(-9, 9), rng.randint(1, 4))


def random_element(rng: random.Random, n: int) -> OmniElement:
    """Entries uniform on {-9..9}/{1..4}; reproducible for a seeded ``rng``."""
    a = tuple(tuple(random_rational(rng) for _ in range(n)) for _ in range(n))
    v = tuple(random_rational(rng) for _ in range(n))
    return OmniElement(a, v)


# ---------------------------------------------------------------------------
# subspaces of E_n


@dataclass(frozen=True)
class OmniSubspace:
    """A subspace of E_n, stored through the global flattening."""

    n: int
    sub: Subspace

    def __post_init__(self):
        if self.sub.ambient_dim != ambient_dim(self.n):
            raise DimensionError(
                f"subspace of Q^{self.sub.ambient_dim} cannot live in E_{self.n}"
            )

    @property
    def dim(self) -> int:
        return self.sub.dim

    def elements(self) -> list:
        return [OmniElement.unflatten(b, self.n) for b in self.sub.basis]

    def __contains__(self, e: OmniElement) -> bool:
        if e.n != self.n:
            raise DimensionError(f"element of E_{e.n} tested against subspace of E_{self.n}")
        return la.subspace_contains(self.sub, e.flatten())

    def to_json(self) -> dict:
        return {"n": self.n, "basis": [e.to_json() for e in self.elements()]}

    @classmethod
    def from_json(cls, data: dict) -> "OmniSubspace":
        n = int(data["n"])
        return omni_span((OmniElement.from_json(e) for e in data["basis"]), n)


def omni_span(elements: Iterable[OmniElement], n: int) -> OmniSubspace:
    rows = []
    for e in elements:
        if e.n != n:
            raise DimensionError(f"element of E_{e.n} in span over E_{n}")
        rows.append(e.flatten())
    return OmniSubspace(n, la.span(rows, ambient_dim(n)))


def horizontal(n: int) -> OmniSubspace:
    """gl(n) + {0}."""
    return omni_span((matrix_element(elementary(n, i, j)) for i in range(n) for j in range(n)), n)


def vertical(n: int) -> OmniSubspace:
    """{0} + R^n, the graph of the zero operation."""
    return omni_span((vector_element(la.unit(n, i)) for i in range(n)), n)
