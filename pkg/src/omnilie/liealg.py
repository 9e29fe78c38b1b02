"""Bilinear operations on R^n given by structure constants.

``c[i][j][k]`` is the coefficient of ``e_k`` in ``B(e_i, e_j)``.  Indices
are 0-based in code and 1-based in structure-constant files.

Catalog bases and sign conventions:

* ``abelian(n)`` -- all constants zero.
* ``heisenberg3`` -- ``[e1, e2] = e3``.
* ``so3`` -- ``[e_i, e_j] = eps_ijk e_k`` (cross product).
* ``sl2`` -- basis ``(h, e, f)``: ``[h, e] = 2e``, ``[h, f] = -2f``, ``[e, f] = h``.
* ``affine1`` -- ``[e1, e2] = e2`` in dimension 2.
* ``nonlie3`` -- ``B(e1,e2) = e2``, ``B(e2,e3) = e3``, ``B(e3,e1) = e1``,
  extended skew; skew but not Lie.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Sequence

from . import exactla as la
from .exactla import DimensionError, ZERO
from .omni import OmniElement, OmniSubspace, omni_span


class NotSkewError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearOp:
    n: int
    c: tuple

    def __post_init__(self):
        c = tuple(tuple(la.vec(row) for row in plane) for plane in self.c)
        n = self.n
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise DimensionError(f"structure constants must have shape {n}x{n}x{n}")
        object.__setattr__(self, "c", c)

    def __call__(self, x: Sequence, y: Sequence) -> la.Vec:
        x, y = la.vec(x), la.vec(y)
        if len(x) != self.n or len(y) != self.n:
            raise DimensionError(f"arguments must have length {self.n}")
        out = [ZERO] * self.n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] += f * ck
        return tuple(out)

    @classmethod
    def from_dict(cls, n: int, entries: dict) -> "BilinearOp":
        """Build from ``{(i, j, k): value}`` with 0-based indices."""
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), val in entries.items():
            c[i][j][k] = la.rat(val)
        return cls(n, c)

    @classmethod
    def from_brackets(cls, n: int, brackets: dict) -> "BilinearOp":
        """Skew operation from ``{(i, j): vector}`` given for ``i < j``."""
        entries = {}
        for (i, j), v in brackets.items():
            for k, x in enumerate(la.vec(v)):
                if x:
                    entries[i, j, k] = x
                    entries[j, i, k] = -x
        return cls.from_dict(n, entries)

    def entries(self) -> dict:
        return {
            (i, j, k): x
            for i, plane in enumerate(self.c)
            for j, row in enumerate(plane)
            for k, x in enumerate(row)
            if x
        }

    def to_json(self) -> list:
        return [
            {"i": i + 1, "j": j + 1, "k": k + 1, "val": la.rat_to_str(x)}
            for (i, j, k), x in sorted(self.entries().items())
        ]

    @classmethod
    def from_json(cls, records, n: int | None = None) -> "BilinearOp":
        """Parse a structure-constant file body.

        ``records`` is either the bare list of ``{i, j, k, val}`` records or
        ``{"n": ..., "constants": [...]}``; without an explicit ``n`` the
        largest index seen is used.
        """
        if isinstance(records, dict):
            n = records.get("n", n)
            records = records["constants"]
        entries = {}
        top = 0
        for rec in records:
            i, j, k = int(rec["i"]), int(rec["j"]), int(rec["k"])
            if min(i, j, k) < 1:
                raise ValueError(f"indices are 1-based, got {(i, j, k)}")
            top = max(top, i, j, k)
            entries[i - 1, j - 1, k - 1] = la.rat_from_str(rec["val"])
        if n is None:
            n = top
        if top > n:
            raise DimensionError(f"index {top} out of range for n={n}")
        return cls.from_dict(int(n), entries)


def load(path) -> BilinearOp:
    with open(path) as fh:
        return BilinearOp.from_json(json.load(fh))


def is_skew(b: BilinearOp) -> bool:
    n = b.n
    return all(
        b.c[i][j][k] == -b.c[j][i][k] for i in range(n) for j in range(i, n) for k in range(n)
    )


def jacobi_defect(b: BilinearOp, i: int, j: int, k: int) -> la.Vec:
    """``B(B(e_i,e_j),e_k) + c.p.`` for 0-based basis indices."""
    if not is_skew(b):
        raise NotSkewError("jacobi_defect needs a skew operation")
    e = lambda t: la.unit(b.n, t)  # noqa: E731
    total = la.zeros(b.n)
    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
        total = la.vadd(total, b(b.c[x][y], e(z)))
    return total


def jacobi_failure(b: BilinearOp):
    """First ``((i, j, k), defect)`` with nonzero defect, or ``None``."""
    n = b.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                d = jacobi_defect(b, i, j, k)
                if not la.is_zero(d):
                    return (i, j, k), d
    return None


def is_lie(b: BilinearOp) -> bool:
    return is_skew(b) and jacobi_failure(b) is None


def ad_matrix(b: BilinearOp, v: Sequence) -> la.Mat:
    """Matrix of ``w -> B(v, w)``; column ``j`` is ``B(v, e_j)``."""
    v = la.vec(v)
    if len(v) != b.n:
        raise DimensionError(f"vector of length {len(v)} for n={b.n}")
    cols = [b(v, la.unit(b.n, j)) for j in range(b.n)]
    return la.transpose(cols) if cols else ()


def graph_subspace(b: BilinearOp) -> OmniSubspace:
    """The graph ``{(ad_B(v), v)}`` inside E_n."""
    n = b.n
    gens = [OmniElement(ad_matrix(b, la.unit(n, i)), la.unit(n, i)) for i in range(n)]
    return omni_span(gens, n)


# ---------------------------------------------------------------------------
# constructions


def change_basis(b: BilinearOp, p: Sequence[Sequence]) -> BilinearOp:
    """Transport ``b`` along ``p``: ``B'(x, y) = P^-1 B(P x, P y)``."""
    n = b.n
    p = la.mat(p, n)
    pinv = inverse(p)
    cols = la.transpose(p)
    entries = {}
    for i in range(n):
        for j in range(n):
            img = la.matvec(pinv, b(cols[i], cols[j]))
            for k, x in enumerate(img):
                if x:
                    entries[i, j, k] = x
    return BilinearOp.from_dict(n, entries)


def direct_sum(b1: BilinearOp, b2: BilinearOp) -> BilinearOp:
    off = b1.n
    entries = dict(b1.entries())
    for (i, j, k), x in b2.entries().items():
        entries[i + off, j + off, k + off] = x
    return BilinearOp.from_dict(b1.n + b2.n, entries)


def inverse(p: la.Mat) -> la.Mat:
    n = len(p)
    red = la.rref([row + la.unit(n, i) for i, row in enumerate(p)], 2 * n)
    if red.pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in red.matrix)


def random_skew(rng: random.Random, n: int, density: float = 1.0) -> BilinearOp:
    """Random skew operation with entries from {-9..9}/{1..4}."""
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            brackets[i, j] = [
                la.Rat(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < density else 0
                for _ in range(n)
            ]
    return BilinearOp.from_brackets(n, brackets)


def random_invertible(rng: random.Random, n: int) -> la.Mat:
    while True:
        p = tuple(tuple(la.Rat(rng.randint(-3, 3)) for _ in range(n)) for _ in range(n))
        if la.rank(p) == n:
            return p


def lie_algebras_of_dim(n: int) -> list:
    """Catalog Lie algebras of dimension ``n`` plus direct sums reaching ``n``."""
    found = {("abelian", n): catalog(f"abelian({n})")}
    small = {
        2: [("affine1", catalog("affine1"))],
        3: [("heisenberg3", catalog("heisenberg3")), ("so3", catalog("so3")), ("sl2", catalog("sl2"))],
    }
    for d, algs in small.items():
        for name, alg in algs:
            if d == n:
                found[(name,)] = alg
            elif d < n:
                found[(name, "+abelian", n - d)] = direct_sum(alg, catalog(f"abelian({n - d})"))
    if n == 4:
        found[("affine1+affine1",)] = direct_sum(catalog("affine1"), catalog("affine1"))
    return list(found.values())


def random_lie(rng: random.Random, n: int) -> BilinearOp:
    """A Lie algebra of dimension ``n`` in a random basis."""
    pool = lie_algebras_of_dim(n)
    return change_basis(rng.choice(pool), random_invertible(rng, n))


# ---------------------------------------------------------------------------
# catalog


CATALOG_NAMES = ("abelian(n)", "heisenberg3", "so3", "sl2", "affine1", "nonlie3")

_ABELIAN = re.compile(r"abelian\((\d+)\)$")


def catalog(name: str) -> BilinearOp:
    m = _ABELIAN.match(name)
    if m:
        return BilinearOp.from_dict(int(m.group(1)), {})
    if name == "heisenberg3":
        return BilinearOp.from_brackets(3, {(0, 1): (0, 0, 1)})
    if name == "so3":
        return BilinearOp.from_brackets(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)})
    if name == "sl2":
        return BilinearOp.from_brackets(3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)})
    if name == "affine1":
        return BilinearOp.from_brackets(2, {(0, 1): (0, 1)})
    if name == "nonlie3":
        return BilinearOp.from_brackets(3, {(0, 1): (0, 1, 0), (1, 2): (0, 0, 1), (0, 2): (-1, 0, 0)})
    raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG_NAMES)}")


def catalog_entries() -> dict:
    """The six standard test operations (abelian at n=2)."""
    return {
        name: catalog(name)
        for name in ("abelian(2)", "heisenberg3", "so3", "sl2", "affine1", "nonlie3")
    }
