"""Finite-dimensional (R, A) C-algebras and an axiom checker.

An instance is given by tensors over Q in fixed bases ``f_1..f_dimA`` of
``A`` and ``e_1..e_dimE`` of ``E``:

* ``mulA[i][j][k]``    -- coefficient of ``f_k`` in ``f_i f_j``
* ``act[i][a][b]``     -- coefficient of ``e_b`` in ``f_i . e_a``
* ``pairing[a][b][k]`` -- coefficient of ``f_k`` in ``<e_a, e_b>``
* ``bracket[a][b][c]`` -- coefficient of ``e_c`` in ``[[e_a, e_b]]``
* ``rho[a]``           -- ``dimA x dimA`` matrix of the derivation
  ``rho(e_a)`` acting on coordinate columns of ``A``

All axioms are multilinear over R in their E-arguments and in the function
argument, so checking them on basis tuples is a complete check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import exactla as la
from .exactla import HALF, ZERO
from .omni import OmniElement, ambient_dim, basis as omni_basis, omni_bracket, omni_pairing


def _tensor3(t, d0, d1, d2, name):
    t = tuple(tuple(la.vec(r) for r in plane) for plane in t)
    if len(t) != d0 or any(len(p) != d1 or any(len(r) != d2 for r in p) for p in t):
        raise la.DimensionError(f"{name} must have shape {d0}x{d1}x{d2}")
    return t


@dataclass(frozen=True)
class CAlgebraInstance:
    dimA: int
    dimE: int
    mulA: tuple
    act: tuple
    pairing: tuple
    bracket: tuple
    rho: tuple

    def __post_init__(self):
        a, e = self.dimA, self.dimE
        object.__setattr__(self, "mulA", _tensor3(self.mulA, a, a, a, "mulA"))
        object.__setattr__(self, "act", _tensor3(self.act, a, e, e, "act"))
        object.__setattr__(self, "pairing", _tensor3(self.pairing, e, e, a, "pairing"))
        object.__setattr__(self, "bracket", _tensor3(self.bracket, e, e, e, "bracket"))
        object.__setattr__(self, "rho", _tensor3(self.rho, e, a, a, "rho"))

    # --- structure maps on coordinate vectors --------------------------------

    def mul(self, f: Sequence, g: Sequence) -> la.Vec:
        return _bilinear(self.mulA, f, g, self.dimA)

    def scal(self, f: Sequence, e: Sequence) -> la.Vec:
        """The A-module action ``f . e``."""
        return _bilinear(self.act, f, e, self.dimE)

    def pair(self, x: Sequence, y: Sequence) -> la.Vec:
        return _bilinear(self.pairing, x, y, self.dimA)

    def br(self, x: Sequence, y: Sequence) -> la.Vec:
        return _bilinear(self.bracket, x, y, self.dimE)

    def anchor(self, e: Sequence) -> la.Mat:
        out = la.zero_matrix(self.dimA, self.dimA)
        for c, m in zip(e, self.rho):
            if c:
                out = la.madd(out, la.mscale(c, m))
        return out

    def derive(self, e: Sequence, f: Sequence) -> la.Vec:
        """``rho(e) f``."""
        return la.matvec(self.anchor(e), la.vec(f))

    # --- files ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dimA": self.dimA,
            "dimE": self.dimE,
            "mulA": _sparse(self.mulA),
            "act": _sparse(self.act),
            "pairing": _sparse(self.pairing),
            "bracket": _sparse(self.bracket),
            "rho": [la.mat_to_json(m) for m in self.rho],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CAlgebraInstance":
        a, e = int(data["dimA"]), int(data["dimE"])
        return cls(
            a,
            e,
            _dense(data.get("mulA", []), (a, a, a)),
            _dense(data.get("act", []), (a, e, e)),
            _dense(data.get("pairing", []), (e, e, a)),
            _dense(data.get("bracket", []), (e, e, e)),
            tuple(la.mat_from_json(m, a) for m in data["rho"]),
        )


def load(path) -> CAlgebraInstance:
    with open(path) as fh:
        return CAlgebraInstance.from_json(json.load(fh))


def _bilinear(t, x, y, dim) -> la.Vec:
    out = [ZERO] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            f = xi * yj
            for k, c in enumerate(t[i][j]):
                if c:
                    out[k] += f * c
    return tuple(out)


def _sparse(t) -> list:
    """Sparse triples ``[i, j, k, "p/q"]`` with 0-based indices."""
    return [
        [i, j, k, la.rat_to_str(x)]
        for i, plane in enumerate(t)
        for j, row in enumerate(plane)
        for k, x in enumerate(row)
        if x
    ]


def _dense(triples, shape):
    d0, d1, d2 = shape
    t = [[[ZERO] * d2 for _ in range(d1)] for _ in range(d0)]
    for i, j, k, x in triples:
        t[int(i)][int(j)][int(k)] = la.rat_from_str(x)
    return t


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Failure:
    check: str
    witness: tuple
    residual: tuple

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "witness": [w if isinstance(w, int) else la.rat_to_str(w) for w in self.witness],
            "residual": la.vec_to_json(self.residual),
        }


@dataclass
class CheckReport:
    """Named checks, each passing or failing with its first witness."""

    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, failure: Optional[Failure]) -> None:
        self.checks[name] = failure is None
        if failure is not None:
            self.failures.append(failure)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "checks": dict(self.checks),
            "failures": [f.to_json() for f in self.failures],
        }


def _first(name, cases):
    """First ``(witness, residual)`` from ``cases`` whose residual is nonzero."""
    for witness, residual in cases:
        if not la.is_zero(residual):
            return Failure(name, witness, tuple(residual))
    return None


def _flat(m: la.Mat) -> la.Vec:
    return tuple(x for row in m for x in row)


# ---------------------------------------------------------------------------
# prerequisites


def validate_instance(c: CAlgebraInstance) -> CheckReport:
    A, E = range(c.dimA), range(c.dimE)
    fa = lambda i: la.unit(c.dimA, i)  # noqa: E731
    fe = lambda i: la.unit(c.dimE, i)  # noqa: E731
    rep = CheckReport()
    rep.record("commutative", _first("commutative", (
        ((i, j), la.vsub(c.mul(fa(i), fa(j)), c.mul(fa(j), fa(i)))) for i in A for j in A
    )))
    rep.record("associative", _first("associative", (
        ((i, j, k), la.vsub(c.mul(c.mul(fa(i), fa(j)), fa(k)), c.mul(fa(i), c.mul(fa(j), fa(k)))))
        for i in A for j in A for k in A
    )))
    rep.record("module", _first("module", (
        ((i, j, a), la.vsub(c.scal(c.mul(fa(i), fa(j)), fe(a)), c.scal(fa(i), c.scal(fa(j), fe(a)))))
        for i in A for j in A for a in E
    )))
    rep.record("pairing_symmetric", _first("pairing_symmetric", (
        ((a, b), la.vsub(c.pair(fe(a), fe(b)), c.pair(fe(b), fe(a)))) for a in E for b in E
    )))
    rep.record("pairing_A_bilinear", _first("pairing_A_bilinear", (
        ((i, a, b), la.vsub(c.pair(c.scal(fa(i), fe(a)), fe(b)), c.mul(fa(i), c.pair(fe(a), fe(b)))))
        for i in A for a in E for b in E
    )))
    rep.record("bracket_antisymmetric", _first("bracket_antisymmetric", (
        ((a, b), la.vadd(c.br(fe(a), fe(b)), c.br(fe(b), fe(a)))) for a in E for b in E
    )))
    rep.record("rho_derivation", _first("rho_derivation", (
        ((a, i, j), la.vsub(
            c.derive(fe(a), c.mul(fa(i), fa(j))),
            la.vadd(c.mul(c.derive(fe(a), fa(i)), fa(j)), c.mul(fa(i), c.derive(fe(a), fa(j)))),
        ))
        for a in E for i in A for j in A
    )))
    # rho(f e) = f rho(e) as derivations: compare on every g
    rep.record("rho_A_linear", _first("rho_A_linear", (
        ((i, a, j), la.vsub(c.derive(c.scal(fa(i), fe(a)), fa(j)), c.mul(fa(i), c.derive(fe(a), fa(j)))))
        for i in A for a in E for j in A
    )))
    rep.record("weakly_nondegenerate", _beta_failure(c))
    return rep


def _beta_matrix(c: CAlgebraInstance) -> la.Mat:
    """Row ``a`` holds ``<e_a, e_b>_k`` for all ``(b, k)``; beta injective iff full row rank."""
    return tuple(
        tuple(c.pairing[a][b][k] for b in range(c.dimE) for k in range(c.dimA))
        for a in range(c.dimE)
    )


def _beta_failure(c: CAlgebraInstance) -> Optional[Failure]:
    m = _beta_matrix(c)
    ker = la.kernel_basis(la.transpose(m), c.dimE) if c.dimE else []
    if not ker:
        return None
    return Failure("weakly_nondegenerate", ker[0], ())


# ---------------------------------------------------------------------------
# gradient and the Cartan form


def gradient(c: CAlgebraInstance, f: Sequence) -> Optional[la.Vec]:
    """``Df`` with ``<Df, e_j> = rho(e_j) f / 2`` for all j, or None if undefined."""
    f = la.vec(f)
    rows, rhs = [], []
    for j in range(c.dimE):
        target = la.vscale(HALF, c.derive(la.unit(c.dimE, j), f))
        for k in range(c.dimA):
            rows.append(tuple(c.pairing[a][j][k] for a in range(c.dimE)))
            rhs.append(target[k])
    sol = la.solve_linear(rows, rhs, c.dimE)
    if sol is None:
        return None
    return sol.particular


def cartan_T(c: CAlgebraInstance, e1: Sequence, e2: Sequence, e3: Sequence) -> la.Vec:
    total = la.zeros(c.dimA)
    for x, y, z in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        total = la.vadd(total, c.pair(c.br(x, y), z))
    return la.vscale(la.THIRD, total)


def jacobiator(c: CAlgebraInstance, e1: Sequence, e2: Sequence, e3: Sequence) -> la.Vec:
    total = la.zeros(c.dimE)
    for x, y, z in ((e1, e2, e3), (e2, e3, e1), (e3, e1, e2)):
        total = la.vadd(total, c.br(c.br(x, y), z))
    return total


# ---------------------------------------------------------------------------
# axioms


class GradientUndefined(ValueError):
    pass


def check_axioms(
    c: CAlgebraInstance, gradient_fn: Optional[Callable] = None
) -> CheckReport:
    """Check axioms 0-5 on basis tuples.

    ``gradient_fn(c, f)`` replaces the computed gradient; it exists for
    negative controls.  When given, the defining relation of the gradient is
    also checked as ``gradient_relation``.
    """
    A, E = range(c.dimA), range(c.dimE)
    fa = lambda i: la.unit(c.dimA, i)  # noqa: E731
    fe = lambda i: la.unit(c.dimE, i)  # noqa: E731
    rep = CheckReport()

    computed = {i: gradient(c, fa(i)) for i in A}
    missing = [i for i, g in computed.items() if g is None]
    rep.record("axiom0_gradient_defined", Failure("axiom0_gradient_defined", (missing[0],), ()) if missing else None)
    if missing:
        return rep

    if gradient_fn is None:
        grads = computed
    else:
        grads = {i: la.vec(gradient_fn(c, fa(i))) for i in A}
        rep.record("gradient_relation", _first("gradient_relation", (
            ((i, j), la.vsub(c.pair(grads[i], fe(j)), la.vscale(HALF, c.derive(fe(j), fa(i)))))
            for i in A for j in E
        )))

    def D(f):
        out = la.zeros(c.dimE)
        for i, x in enumerate(f):
            if x:
                out = la.vadd(out, la.vscale(x, grads[i]))
        return out

    rep.record("axiom1_jacobiator", _first("axiom1_jacobiator", (
        ((a, b, d), la.vsub(jacobiator(c, fe(a), fe(b), fe(d)), D(cartan_T(c, fe(a), fe(b), fe(d)))))
        for a in E for b in E for d in E
    )))
    rep.record("axiom2_anchor_homomorphism", _first("axiom2_anchor_homomorphism", (
        ((a, b), _flat(la.msub(c.anchor(c.br(fe(a), fe(b))), la.commutator(c.anchor(fe(a)), c.anchor(fe(b))))))
        for a in E for b in E
    )))

    def leibniz(a, b, i):
        lhs = c.br(fe(a), c.scal(fa(i), fe(b)))
        rhs = la.vadd(c.scal(fa(i), c.br(fe(a), fe(b))), c.scal(c.derive(fe(a), fa(i)), fe(b)))
        rhs = la.vsub(rhs, c.scal(c.pair(fe(a), fe(b)), D(fa(i))))
        return la.vsub(lhs, rhs)

    rep.record("axiom3_leibniz", _first("axiom3_leibniz", (
        ((a, b, i), leibniz(a, b, i)) for a in E for b in E for i in A
    )))
    rep.record("axiom4_anchor_kills_gradient", _first("axiom4_anchor_kills_gradient", (
        ((i,), _flat(c.anchor(D(fa(i))))) for i in A
    )))
    rep.record("axiom4_gradients_orthogonal", _first("axiom4_gradients_orthogonal", (
        ((i, j), c.pair(D(fa(i)), D(fa(j)))) for i in A for j in A
    )))

    def invariance(a, b, d):
        e, h1, h2 = fe(a), fe(b), fe(d)
        lhs = c.derive(e, c.pair(h1, h2))
        x1 = la.vadd(c.br(e, h1), D(c.pair(e, h1)))
        x2 = la.vadd(c.br(e, h2), D(c.pair(e, h2)))
        return la.vsub(lhs, la.vadd(c.pair(x1, h2), c.pair(h1, x2)))

    rep.record("axiom5_invariance", _first("axiom5_invariance", (
        ((a, b, d), invariance(a, b, d)) for a in E for b in E for d in E
    )))
    return rep


# ---------------------------------------------------------------------------
# the omni-Lie algebra as a C-algebra


def build_omni_instance(n: int) -> CAlgebraInstance:
    """E_n over A = R^n with zero products and zero module action.

    Every linear map of A is a derivation of the zero product, so Der(A) is
    identified with gl(n) and ``rho(A, v) = A``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    basis = omni_basis(n)
    dimE = ambient_dim(n)
    pairing = [[omni_pairing(x, y) for y in basis] for x in basis]
    bracket = [[omni_bracket(x, y).flatten() for y in basis] for x in basis]
    rho = [x.a for x in basis]
    zero_mul = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    zero_act = [[[ZERO] * dimE for _ in range(dimE)] for _ in range(n)]
    return CAlgebraInstance(n, dimE, zero_mul, zero_act, pairing, bracket, rho)


def omni_vector_gradient(v: Sequence) -> OmniElement:
    """Closed form of the gradient on the omni instance: ``Dv = (0, v)``."""
    v = la.vec(v)
    return OmniElement(la.zero_matrix(len(v), len(v)), v)
