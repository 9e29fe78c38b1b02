"""The Courant bracket on polynomial sections of T + T* over R^n.

Functions are sparse polynomials with rational coefficients.  Vector
fields and 1-forms are tuples of ``n`` polynomials (coefficients of
``d/dx_i`` and ``dx_i``); 2-forms and bivectors are skew ``n x n`` matrices of
polynomials.  Nothing is truncated, so every identity is checked exactly.

Sign conventions:

* ``pi_sharp(theta)_i = sum_j pi_ij theta_j``
* ``omega_flat(xi)_j = sum_i xi_i omega_ij``
* the omni-Lie algebra embeds by ``(A, v) -> (xi_{A^T}, v . dx)`` with
  ``xi_M = sum_i (M x)_i d/dx_i``.  Linear fields satisfy
  ``[xi_M, xi_N] = xi_{[N, M]}``, so the transpose is what makes the first
  component reproduce ``[A1, A2]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import exactla as la
from .exactla import HALF, ZERO


class Poly:
    """Sparse polynomial in ``nvars`` variables over Q.

    ``terms`` maps exponent tuples to nonzero rationals.  Instances are
    treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping] = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise la.DimensionError(f"exponent {exps} for {nvars} variables")
                c = la.rat(c)
                if c:
                    clean[exps] = clean.get(exps, ZERO) + c
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = la.rat(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): la.ONE})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """``sum_i c_i x_i``."""
        n = len(coeffs)
        return cls(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs) if c})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise la.DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = la.rat(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == Poly.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Poly._raw(self.nvars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence) -> la.Rat:
        point = la.vec(point)
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def linear_part(self) -> la.Vec:
        """Coefficients of ``x_1 .. x_n``."""
        return tuple(
            self.terms.get(tuple(1 if k == i else 0 for k in range(self.nvars)), ZERO)
            for i in range(self.nvars)
        )

    def coefficient_items(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(la.rat_to_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{la.rat_to_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [{"coeff": la.rat_to_str(c), "exps": list(e)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Iterable, nvars: int) -> "Poly":
        p = cls.zero(nvars)
        for term in data:
            p = p + cls(nvars, {tuple(int(k) for k in term["exps"]): la.rat_from_str(term["coeff"])})
        return p


# ---------------------------------------------------------------------------
# fields and forms


def _nv(*objs) -> int:
    ns = {len(o) for o in objs}
    if len(ns) != 1:
        raise la.DimensionError(f"mismatched variable counts {sorted(ns)}")
    return ns.pop()


def zero_field(n: int) -> tuple:
    return tuple(Poly.zero(n) for _ in range(n))


def coordinate_field(n: int, i: int) -> tuple:
    """``d/dx_i`` (equivalently the form ``dx_i``)."""
    return tuple(Poly.const(n, 1 if k == i else 0) for k in range(n))


def linear_field(m: Sequence[Sequence]) -> tuple:
    """``xi_M = sum_i (M x)_i d/dx_i``."""
    m = la.mat(m)
    return tuple(Poly.linear(row) for row in m)


def constant_form(v: Sequence) -> tuple:
    v = la.vec(v)
    return tuple(Poly.const(len(v), x) for x in v)


def add(u: Sequence[Poly], w: Sequence[Poly]) -> tuple:
    _nv(u, w)
    return tuple(a + b for a, b in zip(u, w))


def sub(u: Sequence[Poly], w: Sequence[Poly]) -> tuple:
    _nv(u, w)
    return tuple(a - b for a, b in zip(u, w))


def scale(f, u: Sequence[Poly]) -> tuple:
    return tuple(a * f for a in u)


def all_zero(ps: Iterable[Poly]) -> bool:
    return all(p.is_zero() for p in ps)


def apply_field(x: Sequence[Poly], f: Poly) -> Poly:
    """The derivation ``xi(f) = sum_i xi_i df/dx_i``."""
    total = Poly.zero(f.nvars)
    for i, xi in enumerate(x):
        if xi:
            total = total + xi * f.diff(i)
    return total


def vf_bracket(x1: Sequence[Poly], x2: Sequence[Poly]) -> tuple:
    _nv(x1, x2)
    return tuple(apply_field(x1, b) - apply_field(x2, a) for a, b in zip(x1, x2))


def exterior_d(f: Poly) -> tuple:
    return tuple(f.diff(i) for i in range(f.nvars))


def exterior_d1(t: Sequence[Poly]) -> tuple:
    """``(d theta)_ij = d_i theta_j - d_j theta_i`` as a skew matrix."""
    n = len(t)
    return tuple(tuple(t[j].diff(i) - t[i].diff(j) for j in range(n)) for i in range(n))


def exterior_d2(w: Sequence[Sequence[Poly]]) -> tuple:
    """``(d omega)_ijk = d_i w_jk - d_j w_ik + d_k w_ij`` as an n x n x n tensor."""
    n = len(w)
    return tuple(
        tuple(
            tuple(w[j][k].diff(i) - w[i][k].diff(j) + w[i][j].diff(k) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def interior(x: Sequence[Poly], t: Sequence[Poly]) -> Poly:
    n = _nv(x, t)
    total = Poly.zero(x[0].nvars if n else 0)
    for a, b in zip(x, t):
        if a and b:
            total = total + a * b
    return total


def interior2(x: Sequence[Poly], w: Sequence[Sequence[Poly]]) -> tuple:
    """``(i_xi omega)_j = sum_i xi_i omega_ij``."""
    n = len(x)
    out = []
    for j in range(n):
        total = Poly.zero(n)
        for i in range(n):
            if x[i] and w[i][j]:
                total = total + x[i] * w[i][j]
        out.append(total)
    return tuple(out)


def lie_derivative_1form(x: Sequence[Poly], t: Sequence[Poly]) -> tuple:
    """Cartan formula ``L_xi theta = i_xi d theta + d i_xi theta``."""
    _nv(x, t)
    return add(interior2(x, exterior_d1(t)), exterior_d(interior(x, t)))


def lie_derivative_function(x: Sequence[Poly], f: Poly) -> Poly:
    return apply_field(x, f)


# ---------------------------------------------------------------------------
# sections


@dataclass(frozen=True)
class CourantSection:
    xi: tuple
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(self.xi))
        object.__setattr__(self, "theta", tuple(self.theta))
        _nv(self.xi, self.theta)

    @property
    def nvars(self) -> int:
        return len(self.xi)

    def __add__(self, other: "CourantSection") -> "CourantSection":
        return CourantSection(add(self.xi, other.xi), add(self.theta, other.theta))

    def __sub__(self, other: "CourantSection") -> "CourantSection":
        return CourantSection(sub(self.xi, other.xi), sub(self.theta, other.theta))

    def scaled(self, f) -> "CourantSection":
        return CourantSection(scale(f, self.xi), scale(f, self.theta))

    def is_zero(self) -> bool:
        return all_zero(self.xi) and all_zero(self.theta)

    def to_json(self) -> dict:
        return {"xi": [p.to_json() for p in self.xi], "theta": [p.to_json() for p in self.theta]}

    @classmethod
    def from_json(cls, data: dict) -> "CourantSection":
        n = len(data["xi"])
        return cls(
            tuple(Poly.from_json(p, n) for p in data["xi"]),
            tuple(Poly.from_json(p, n) for p in data["theta"]),
        )

    @classmethod
    def zero(cls, n: int) -> "CourantSection":
        return cls(zero_field(n), zero_field(n))


def courant_bracket(s1: CourantSection, s2: CourantSection) -> CourantSection:
    xi = vf_bracket(s1.xi, s2.xi)
    theta = sub(lie_derivative_1form(s1.xi, s2.theta), lie_derivative_1form(s2.xi, s1.theta))
    corr = interior(s1.xi, s2.theta) - interior(s2.xi, s1.theta)
    theta = sub(theta, scale(HALF, exterior_d(corr)))
    return CourantSection(xi, theta)


def bracket_without_correction(s1: CourantSection, s2: CourantSection) -> CourantSection:
    """The bracket with the ``d(i theta)`` correction dropped (negative control)."""
    xi = vf_bracket(s1.xi, s2.xi)
    theta = sub(lie_derivative_1form(s1.xi, s2.theta), lie_derivative_1form(s2.xi, s1.theta))
    return CourantSection(xi, theta)


def courant_pairing(s1: CourantSection, s2: CourantSection) -> Poly:
    return (interior(s1.xi, s2.theta) + interior(s2.xi, s1.theta)) * HALF


def anchor(s: CourantSection) -> tuple:
    return s.xi


def gradient(f: Poly) -> CourantSection:
    """``Df = (0, df)``: indeed ``<(0, df), (xi, theta)> = xi(f) / 2``."""
    return CourantSection(zero_field(f.nvars), exterior_d(f))


def cartan_T(s1, s2, s3, bracket: Callable = courant_bracket) -> Poly:
    total = Poly.zero(s1.nvars)
    for x, y, z in ((s1, s2, s3), (s2, s3, s1), (s3, s1, s2)):
        total = total + courant_pairing(bracket(x, y), z)
    return total * la.THIRD


def courant_jacobiator(s1, s2, s3, bracket: Callable = courant_bracket) -> CourantSection:
    total = CourantSection.zero(s1.nvars)
    for x, y, z in ((s1, s2, s3), (s2, s3, s1), (s3, s1, s2)):
        total = total + bracket(bracket(x, y), z)
    return total


# ---------------------------------------------------------------------------
# bivectors, 2-forms, Dirac candidates


def _skew(m: Sequence[Sequence[Poly]], what: str) -> tuple:
    m = tuple(tuple(r) for r in m)
    n = len(m)
    if any(len(r) != n for r in m):
        raise la.DimensionError(f"{what} must be square")
    for i in range(n):
        for j in range(i, n):
            if m[i][j] != -m[j][i]:
                raise ValueError(f"{what} is not skew at ({i + 1}, {j + 1})")
    return m


def skew_from_upper(n: int, upper: Mapping) -> tuple:
    """Skew matrix from ``{(i, j): Poly}`` with ``i < j`` (0-based)."""
    m = [[Poly.zero(n) for _ in range(n)] for _ in range(n)]
    for (i, j), p in upper.items():
        if not i < j:
            raise ValueError(f"upper-triangle entry needs i < j, got {(i, j)}")
        m[i][j] = p
        m[j][i] = -p
    return tuple(tuple(r) for r in m)


def upper_to_json(m) -> list:
    n = len(m)
    return [
        {"i": i + 1, "j": j + 1, "poly": m[i][j].to_json()}
        for i in range(n)
        for j in range(i + 1, n)
        if m[i][j]
    ]


def upper_from_json(entries: Iterable, n: int) -> tuple:
    upper = {}
    for e in entries:
        upper[int(e["i"]) - 1, int(e["j"]) - 1] = Poly.from_json(e["poly"], n)
    return skew_from_upper(n, upper)


@dataclass(frozen=True)
class GraphOfBivector:
    pi: tuple

    def __post_init__(self):
        object.__setattr__(self, "pi", _skew(self.pi, "bivector"))

    @property
    def nvars(self) -> int:
        return len(self.pi)


@dataclass(frozen=True)
class GraphOf2Form:
    omega: tuple

    def __post_init__(self):
        object.__setattr__(self, "omega", _skew(self.omega, "2-form"))

    @property
    def nvars(self) -> int:
        return len(self.omega)


@dataclass(frozen=True)
class Foliation:
    """A constant distribution ``B`` of R^n, given as a subspace of Q^n."""

    b: la.Subspace

    @property
    def nvars(self) -> int:
        return self.b.ambient_dim


def pi_sharp(pi, theta: Sequence[Poly]) -> tuple:
    n = len(pi)
    out = []
    for i in range(n):
        total = Poly.zero(n)
        for j in range(n):
            if pi[i][j] and theta[j]:
                total = total + pi[i][j] * theta[j]
        out.append(total)
    return tuple(out)


def omega_flat(omega, xi: Sequence[Poly]) -> tuple:
    return interior2(xi, omega)


def annihilator(b: la.Subspace) -> la.Subspace:
    n = b.ambient_dim
    return la.span(la.kernel_basis(b.basis, n), n)


_CANDIDATES = (GraphOfBivector, GraphOf2Form, Foliation)


def generators(candidate) -> list:
    if not isinstance(candidate, _CANDIDATES):
        raise TypeError(f"not a Dirac candidate: {candidate!r}")
    n = candidate.nvars
    if isinstance(candidate, GraphOfBivector):
        return [
            CourantSection(pi_sharp(candidate.pi, coordinate_field(n, i)), coordinate_field(n, i))
            for i in range(n)
        ]
    if isinstance(candidate, GraphOf2Form):
        return [
            CourantSection(coordinate_field(n, i), omega_flat(candidate.omega, coordinate_field(n, i)))
            for i in range(n)
        ]
    fields = [CourantSection(constant_form(v), zero_field(n)) for v in candidate.b.basis]
    forms = [CourantSection(zero_field(n), constant_form(v)) for v in annihilator(candidate.b).basis]
    return fields + forms


def _coefficient_vectors(ps: Sequence[Poly]) -> list:
    """For each monomial, the vector of its coefficients across ``ps``."""
    monos = sorted({e for p in ps for e in p.terms})
    return [tuple(p.terms.get(e, ZERO) for p in ps) for e in monos]


def membership_residual(candidate, s: CourantSection):
    """Zero (empty/all-zero) exactly when ``s`` is a section of the candidate."""
    if isinstance(candidate, GraphOfBivector):
        return sub(s.xi, pi_sharp(candidate.pi, s.theta))
    if isinstance(candidate, GraphOf2Form):
        return sub(s.theta, omega_flat(candidate.omega, s.xi))
    if isinstance(candidate, Foliation):
        ann = annihilator(candidate.b)
        bad = [la.reduce_against(candidate.b, v) for v in _coefficient_vectors(s.xi)]
        bad += [la.reduce_against(ann, v) for v in _coefficient_vectors(s.theta)]
        n = candidate.nvars
        return tuple(Poly.const(n, x) for v in bad for x in v if x)
    raise TypeError(f"not a Dirac candidate: {candidate!r}")


@dataclass
class DiracReport:
    kind: str
    isotropic: bool
    closed: bool
    fiber_rank: int
    nvars: int
    isotropy_witness: Optional[tuple] = None
    closure_witness: Optional[tuple] = None
    d_omega_zero: Optional[bool] = None
    justification: str = (
        "generators are pairwise isotropic and their brackets stay in the subbundle; "
        "since the Leibniz correction <e1,e2>Df vanishes on isotropic pairs, "
        "closure passes to all function multiples"
    )

    @property
    def passed(self) -> bool:
        return self.isotropic and self.closed and self.fiber_rank == self.nvars

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "isotropic": self.isotropic,
            "closed": self.closed,
            "fiber_rank": self.fiber_rank,
            "dirac": self.passed,
            "justification": self.justification,
            "witnesses": {},
        }
        if self.isotropy_witness:
            i, j, p = self.isotropy_witness
            out["witnesses"]["isotropy"] = {"generators": [i + 1, j + 1], "pairing": p.to_json()}
        if self.closure_witness:
            i, j, res = self.closure_witness
            out["witnesses"]["closure"] = {
                "generators": [i + 1, j + 1],
                "residual": [p.to_json() for p in res],
            }
        if self.d_omega_zero is not None:
            out["d_omega_zero"] = self.d_omega_zero
        return out


def dirac_check(candidate) -> DiracReport:
    """Isotropy and bracket closure of the generating sections."""
    gens = generators(candidate)
    n = candidate.nvars
    kind = {GraphOfBivector: "bivector", GraphOf2Form: "2form", Foliation: "foliation"}[type(candidate)]
    iso_bad = None
    close_bad = None
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            p = courant_pairing(gens[i], gens[j])
            if p and iso_bad is None:
                iso_bad = (i, j, p)
            if j > i and close_bad is None:
                res = membership_residual(candidate, courant_bracket(gens[i], gens[j]))
                if not all_zero(res):
                    close_bad = (i, j, res)
    rank = n if not isinstance(candidate, Foliation) else candidate.b.dim + annihilator(candidate.b).dim
    rep = DiracReport(kind, iso_bad is None, close_bad is None, rank, n, iso_bad, close_bad)
    if isinstance(candidate, GraphOf2Form):
        rep.d_omega_zero = all(p.is_zero() for plane in exterior_d2(candidate.omega) for r in plane for p in r)
    return rep


def poisson_bracket(pi, f: Poly, g: Poly) -> Poly:
    n = len(pi)
    df, dg = exterior_d(f), exterior_d(g)
    total = Poly.zero(n)
    for a in range(n):
        if not df[a]:
            continue
        for b in range(n):
            if pi[a][b] and dg[b]:
                total = total + pi[a][b] * df[a] * dg[b]
    return total


def schouten_oracle(pi) -> dict:
    """``{{x_i,x_j},x_k} + c.p.`` for all ``i < j < k``; all zero iff Poisson."""
    pi = _skew(pi, "bivector")
    n = len(pi)
    xs = [Poly.var(n, i) for i in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = Poly.zero(n)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    total = total + poisson_bracket(pi, poisson_bracket(pi, xs[a], xs[b]), xs[c])
                out[i, j, k] = total
    return out


def is_poisson(pi) -> bool:
    return all(p.is_zero() for p in schouten_oracle(pi).values())


def lie_poisson(c) -> tuple:
    """``pi_ij = sum_k c[i][j][k] x_k`` for structure constants ``c``."""
    n = len(c)
    return tuple(tuple(Poly.linear(c[i][j]) for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Leibniz rule and axiom sampling


def leibniz_check(s1: CourantSection, s2: CourantSection, f: Poly, bracket: Callable = courant_bracket) -> CourantSection:
    """``[s1, f s2] - f [s1, s2] - xi1(f) s2 + <s1, s2> (0, df)``."""
    res = bracket(s1, s2.scaled(f)) - bracket(s1, s2).scaled(f)
    res = res - s2.scaled(apply_field(s1.xi, f))
    return res + gradient(f).scaled(courant_pairing(s1, s2))


def random_poly(rng: random.Random, nvars: int, degree_bound: int, density: float = 0.5) -> Poly:
    terms = {}
    for d in range(degree_bound + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            if rng.random() < density:
                exps = [0] * nvars
                for i in combo:
                    exps[i] += 1
                terms[tuple(exps)] = la.Rat(rng.randint(-5, 5), rng.randint(1, 3))
    return Poly(nvars, terms)


def random_section(rng: random.Random, nvars: int, degree_bound: int) -> CourantSection:
    return CourantSection(
        tuple(random_poly(rng, nvars, degree_bound) for _ in range(nvars)),
        tuple(random_poly(rng, nvars, degree_bound) for _ in range(nvars)),
    )


@dataclass
class AxiomSampleReport:
    nvars: int
    degree_bound: int
    trials: int
    seed: int
    passed: dict
    failure: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        out = {
            "nvars": self.nvars,
            "degree_bound": self.degree_bound,
            "trials": self.trials,
            "seed": self.seed,
            "passed": dict(self.passed),
            "ok": self.ok,
        }
        if self.failure:
            out["failure"] = self.failure
        return out


AXIOMS = ("axiom1_jacobiator", "axiom2_anchor", "axiom3_leibniz", "axiom4_gradient", "axiom5_invariance")


def _section_residual_zero(s: CourantSection) -> bool:
    return s.is_zero()


def axioms_sample_check(
    nvars: int,
    degree_bound: int = 2,
    trials: int = 100,
    seed: int = 0,
    bracket: Callable = courant_bracket,
) -> AxiomSampleReport:
    """Check axioms 1-5 with ``rho(xi, theta) = xi`` and ``Df = (0, df)`` on random triples.

    Stops at the first failing trial and records the witness.
    """
    if nvars < 1:
        raise ValueError("nvars must be at least 1")
    rng = random.Random(seed)
    passed = {a: 0 for a in AXIOMS}
    for t in range(trials):
        s1, s2, s3 = (random_section(rng, nvars, degree_bound) for _ in range(3))
        f = random_poly(rng, nvars, degree_bound)
        g = random_poly(rng, nvars, degree_bound)
        b12 = bracket(s1, s2)
        checks = {}
        jac = courant_jacobiator(s1, s2, s3, bracket)
        checks["axiom1_jacobiator"] = (jac - gradient(cartan_T(s1, s2, s3, bracket))).is_zero()
        checks["axiom2_anchor"] = all_zero(sub(b12.xi, vf_bracket(s1.xi, s2.xi)))
        checks["axiom3_leibniz"] = leibniz_check(s1, s2, f, bracket).is_zero()
        checks["axiom4_gradient"] = all_zero(anchor(gradient(f))) and courant_pairing(gradient(f), gradient(g)).is_zero()
        lhs = apply_field(s1.xi, courant_pairing(s2, s3))
        x2 = bracket(s1, s2) + gradient(courant_pairing(s1, s2))
        x3 = bracket(s1, s3) + gradient(courant_pairing(s1, s3))
        checks["axiom5_invariance"] = (lhs - courant_pairing(x2, s3) - courant_pairing(s2, x3)).is_zero()
        for name, ok in checks.items():
            if ok:
                passed[name] += 1
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failure = {
                "trial": t,
                "axioms": bad,
                "sections": [s.to_json() for s in (s1, s2, s3)],
                "f": f.to_json(),
                "g": g.to_json(),
            }
            return AxiomSampleReport(nvars, degree_bound, t + 1, seed, passed, failure)
    return AxiomSampleReport(nvars, degree_bound, trials, seed, passed)


# ---------------------------------------------------------------------------
# linearization at the origin


def embed(e) -> CourantSection:
    """``(A, v) -> (xi_{A^T}, v . dx)``."""
    return CourantSection(linear_field(la.transpose(e.a)), constant_form(e.v))


@dataclass
class LinearizationReport:
    bracket_matches: bool
    pairing_matches: bool
    courant_bracket: CourantSection
    embedded_omni_bracket: CourantSection
    pairing_linear_part: la.Vec
    omni_pairing: la.Vec

    @property
    def ok(self) -> bool:
        return self.bracket_matches and self.pairing_matches

    def to_json(self) -> dict:
        return {
            "bracket_matches": self.bracket_matches,
            "pairing_matches": self.pairing_matches,
            "pairing_linear_part": la.vec_to_json(self.pairing_linear_part),
            "omni_pairing": la.vec_to_json(self.omni_pairing),
        }


def linearize_roundtrip(e1, e2) -> LinearizationReport:
    """Compare the Courant structure on embedded elements with the omni one.

    The pairing of two embedded elements is a linear function
    ``x -> w . x``; it is compared with the omni pairing through its
    coefficient vector ``w``, matching the reading of A = R^n as linear
    functions vanishing at the origin.
    """
    from .omni import omni_bracket, omni_pairing

    if e1.n != e2.n:
        raise la.DimensionError("elements of different E_n")
    lhs = courant_bracket(embed(e1), embed(e2))
    rhs = embed(omni_bracket(e1, e2))
    p = courant_pairing(embed(e1), embed(e2))
    w = omni_pairing(e1, e2)
    pairing_ok = p == Poly.linear(w) if e1.n else True
    return LinearizationReport((lhs - rhs).is_zero(), pairing_ok, lhs, rhs, p.linear_part(), w)
