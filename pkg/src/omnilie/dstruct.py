"""Isotropy, maximality and bracket closure of subspaces of E_n.

A D-structure is an isotropic subspace of E_n that is maximal for inclusion
among isotropic subspaces and closed under the omni bracket.  Maximality is
decided through the orthogonal ``F^perp``: an isotropic ``F`` extends by
``e`` exactly when ``e`` lies in ``F^perp`` and ``<e, e> = 0``.  Writing
``F^perp = F + W``, it suffices to look for a nonzero null vector of the
quadratic map ``w -> <w, w>`` on ``W``.  That search is exact when
``dim W <= 2`` and sampled otherwise.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from typing import Optional

from . import exactla as la
from .exactla import Subspace
from .liealg import BilinearOp, graph_subspace, lie_algebras_of_dim, random_lie
from .omni import (
    OmniElement,
    OmniSubspace,
    ambient_dim,
    cartan_form,
    horizontal,
    jacobiator,
    omni_bracket,
    omni_pairing,
    omni_span,
    quadratic,
)


class NotIsotropicError(ValueError):
    pass


class NotAGraphError(ValueError):
    pass


# ---------------------------------------------------------------------------
# isotropy and orthogonals


def is_isotropic(f: OmniSubspace) -> bool:
    return isotropy_failure(f) is None


def isotropy_failure(f: OmniSubspace):
    """First basis pair with nonzero pairing, as ``(b_i, b_j, pairing)``."""
    elems = f.elements()
    for i, x in enumerate(elems):
        for y in elems[i:]:
            p = omni_pairing(x, y)
            if not la.is_zero(p):
                return x, y, p
    return None


def omni_orthogonal(f: OmniSubspace) -> OmniSubspace:
    """``{e : <e, b> = 0 for every basis element b of F}``.

    Row ``k`` of the block for ``b = (B, w)`` is the linear functional
    ``(A, v) -> (A w + B v)_k`` (the factor 1/2 is irrelevant for a kernel).
    """
    n = f.n
    rows = []
    for b in f.elements():
        for k in range(n):
            row = [la.ZERO] * ambient_dim(n)
            for j in range(n):
                row[k * n + j] = b.v[j]
                row[n * n + j] = b.a[k][j]
            rows.append(row)
    return OmniSubspace(n, la.span(la.kernel_basis(rows, ambient_dim(n)), ambient_dim(n)))


# ---------------------------------------------------------------------------
# null vectors of the quadratic map


@dataclass(frozen=True)
class NullDirection:
    """A null vector ``base + sqrt(radicand) * surd`` of ``q(e) = <e, e>``.

    ``radicand`` is 0 (and ``surd`` is None) for a rational direction.  An
    irrational direction spans a real line that is not defined over Q.
    """

    base: OmniElement
    surd: Optional[OmniElement] = None
    radicand: object = la.ZERO

    @property
    def rational(self) -> bool:
        return self.surd is None

    def is_null(self) -> bool:
        if self.rational:
            return la.is_zero(quadratic(self.base))
        # q(p + r s) = q(p) + d q(s) + 2 sqrt(d) <p, s>
        qb, qs = quadratic(self.base), quadratic(self.surd)
        return la.is_zero(la.vadd(qb, la.vscale(self.radicand, qs))) and la.is_zero(
            omni_pairing(self.base, self.surd)
        )

    def to_json(self) -> dict:
        out = {"base": self.base.to_json()}
        if not self.rational:
            out["surd"] = self.surd.to_json()
            out["radicand"] = la.rat_to_str(self.radicand)
        return out


def _sqrt_rational(x):
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(int(p)), math.isqrt(int(q))
    if rp * rp == p and rq * rq == q:
        return la.Rat(rp, rq)
    return None


def binary_null_directions(w1: OmniElement, w2: OmniElement):
    """Null directions of ``q(s w1 + t w2)`` in the real projective line.

    Each component of ``q`` is the binary form ``a s^2 + 2 b s t + c t^2``
    with ``a = q(w1)``, ``b = <w1, w2>``, ``c = q(w2)``.  Returns ``None``
    when every component vanishes identically (the whole plane is null),
    otherwise the list of common real roots, as :class:`NullDirection`.
    """
    qa, qb, qc = quadratic(w1), omni_pairing(w1, w2), quadratic(w2)
    forms = [(a, b, c) for a, b, c in zip(qa, qb, qc) if a or b or c]
    if not forms:
        return None
    a, b, c = forms[0]
    # candidate roots of the first nonzero form, as (s, t) or (p, r, d) with s/t = p + r sqrt(d)
    rational, irrational = [], []
    if a == 0:
        rational.append((la.ONE, la.ZERO))
        if b:
            rational.append((-c / (2 * b), la.ONE))
    else:
        disc = b * b - a * c
        if disc == 0:
            rational.append((-b / a, la.ONE))
        elif disc > 0:
            root = _sqrt_rational(disc)
            if root is not None:
                rational.append(((-b + root) / a, la.ONE))
                rational.append(((-b - root) / a, la.ONE))
            else:
                irrational.append((-b / a, 1 / a, disc))
                irrational.append((-b / a, -1 / a, disc))
    found = []
    for s, t in rational:
        if all(a2 * s * s + 2 * b2 * s * t + c2 * t * t == 0 for a2, b2, c2 in forms):
            found.append(NullDirection(s * w1 + t * w2))
    for p, r, d in irrational:
        # x = p + r sqrt(d); x^2 = p^2 + r^2 d + 2 p r sqrt(d)
        if all(
            a2 * (p * p + r * r * d) + 2 * b2 * p + c2 == 0 and 2 * a2 * p * r + 2 * b2 * r == 0
            for a2, b2, c2 in forms
        ):
            found.append(NullDirection(p * w1 + w2, r * w1, d))
    return found


def _rational_null_lines(w1: OmniElement, w2: OmniElement):
    dirs = binary_null_directions(w1, w2)
    if dirs is None:
        return [w1, w2]
    return [d.base for d in dirs if d.rational]


# ---------------------------------------------------------------------------
# maximality


class Maximality(enum.Enum):
    MAXIMAL = "yes"
    NOT_MAXIMAL = "no"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class MaximalityVerdict:
    status: Maximality
    witness: Optional[NullDirection] = None
    reason: str = ""

    def recheck(self, f: OmniSubspace) -> bool:
        """Re-verify the verdict from scratch."""
        if self.status is Maximality.MAXIMAL and self.reason == "self-orthogonal":
            return omni_orthogonal(f) == f
        if self.status is Maximality.NOT_MAXIMAL:
            w = self.witness
            perp = omni_orthogonal(f)
            parts = [w.base] if w.rational else [w.base, w.surd]
            in_perp = all(p in perp for p in parts)
            outside = not all(p in f for p in parts)
            return in_perp and outside and w.is_null()
        return True

    def to_json(self) -> dict:
        out = {"maximal": self.status.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def maximality_check(f: OmniSubspace, samples: int = 64, seed: int = 0) -> MaximalityVerdict:
    """Decide inclusion-maximality of an isotropic subspace.

    Exact when ``F^perp = F`` or the complement ``W`` of ``F`` in ``F^perp``
    has dimension at most 2.  For larger ``W`` every basis vector and basis
    plane of ``W`` is tried exactly, then ``samples`` random planes; if no
    null vector turns up the verdict is UNDETERMINED.
    """
    if not is_isotropic(f):
        raise NotIsotropicError("maximality is only defined for isotropic subspaces")
    perp = omni_orthogonal(f)
    if perp == f:
        return MaximalityVerdict(Maximality.MAXIMAL, reason="self-orthogonal")
    w = [OmniElement.unflatten(x, f.n) for x in la.complement_in(f.sub, perp.sub)]
    if len(w) == 1:
        if la.is_zero(quadratic(w[0])):
            return MaximalityVerdict(Maximality.NOT_MAXIMAL, NullDirection(w[0]), "null complement line")
        return MaximalityVerdict(Maximality.MAXIMAL, reason="complement line is not null")
    if len(w) == 2:
        dirs = binary_null_directions(w[0], w[1])
        if dirs is None:
            return MaximalityVerdict(Maximality.NOT_MAXIMAL, NullDirection(w[0]), "null complement plane")
        if dirs:
            return MaximalityVerdict(Maximality.NOT_MAXIMAL, dirs[0], "null direction in complement plane")
        return MaximalityVerdict(Maximality.MAXIMAL, reason="complement plane has no null direction")
    witness = _search_null(w, samples, random.Random(seed))
    if witness is not None:
        return MaximalityVerdict(Maximality.NOT_MAXIMAL, witness, "null vector found by search")
    return MaximalityVerdict(
        Maximality.UNDETERMINED, reason=f"no null vector among {len(w)}-dim complement samples"
    )


def _search_null(w: list, samples: int, rng: random.Random) -> Optional[NullDirection]:
    for x in w:
        if la.is_zero(quadratic(x)):
            return NullDirection(x)
    for i, x in enumerate(w):
        for y in w[i + 1:]:
            dirs = binary_null_directions(x, y)
            if dirs is None:
                return NullDirection(x)
            if dirs:
                return dirs[0]
    for _ in range(samples):
        x = _random_combination(w, rng)
        y = _random_combination(w, rng)
        if x.is_zero() or y.is_zero():
            continue
        dirs = binary_null_directions(x, y)
        if dirs is None:
            return NullDirection(x)
        if dirs:
            return dirs[0]
    return None


def _random_combination(w: list, rng: random.Random) -> OmniElement:
    total = OmniElement.zero(w[0].n)
    for x in w:
        total = total + rng.randint(-3, 3) * x
    return total


# ---------------------------------------------------------------------------
# bracket closure


def closure_counterexample(f: OmniSubspace):
    """First basis pair whose bracket leaves ``F``: ``(b_i, b_j, bracket)``."""
    elems = f.elements()
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            br = omni_bracket(x, y)
            if br not in f:
                return x, y, br
    return None


def bracket_closed(f: OmniSubspace) -> bool:
    return closure_counterexample(f) is None


def bracket_closure(f: OmniSubspace, stop_if_not_isotropic: bool = False) -> Optional[OmniSubspace]:
    """Smallest bracket-closed subspace containing ``F``.

    With ``stop_if_not_isotropic`` the iteration returns ``None`` as soon as
    the growing subspace stops being isotropic.
    """
    while True:
        if stop_if_not_isotropic and not is_isotropic(f):
            return None
        bad = closure_counterexample(f)
        if bad is None:
            return f
        elems = f.elements()
        extra = [omni_bracket(x, y) for i, x in enumerate(elems) for y in elems[i + 1:]]
        f = omni_span(elems + extra, f.n)


# ---------------------------------------------------------------------------
# classification


@dataclass
class DStructureReport:
    isotropic: bool
    maximality: Optional[MaximalityVerdict]
    closed: bool
    d_structure: bool
    isotropy_witness: Optional[tuple] = None
    closure_witness: Optional[tuple] = None
    restricted_jacobi: Optional[bool] = None

    @property
    def undetermined(self) -> bool:
        return self.maximality is not None and self.maximality.status is Maximality.UNDETERMINED

    def to_json(self) -> dict:
        out = {
            "isotropic": self.isotropic,
            "maximal": self.maximality.status.value if self.maximality else "no",
            "closed": self.closed,
            "d_structure": self.d_structure,
            "witnesses": {},
        }
        w = out["witnesses"]
        if self.isotropy_witness:
            x, y, p = self.isotropy_witness
            w["isotropy"] = {"e1": x.to_json(), "e2": y.to_json(), "pairing": la.vec_to_json(p)}
        if self.maximality and self.maximality.witness:
            w["maximality"] = self.maximality.witness.to_json()
        if self.closure_witness:
            x, y, br = self.closure_witness
            w["closure"] = {"e1": x.to_json(), "e2": y.to_json(), "bracket": br.to_json()}
        if self.restricted_jacobi is not None:
            out["restricted_jacobi"] = self.restricted_jacobi
        return out


def restricted_jacobi_holds(f: OmniSubspace) -> bool:
    """On basis triples: jacobiator is zero and the Cartan form vanishes."""
    elems = f.elements()
    for i, x in enumerate(elems):
        for j in range(i + 1, len(elems)):
            for z in elems[j + 1:]:
                y = elems[j]
                if not la.is_zero(cartan_form(x, y, z)) or not jacobiator(x, y, z).is_zero():
                    return False
    return True


def classify(f: OmniSubspace, samples: int = 64, seed: int = 0) -> DStructureReport:
    iso_bad = isotropy_failure(f)
    isotropic = iso_bad is None
    verdict = maximality_check(f, samples, seed) if isotropic else None
    close_bad = closure_counterexample(f)
    closed = close_bad is None
    d = isotropic and closed and verdict.status is Maximality.MAXIMAL
    report = DStructureReport(isotropic, verdict, closed, d, iso_bad, close_bad)
    if d:
        report.restricted_jacobi = restricted_jacobi_holds(f)
    return report


# ---------------------------------------------------------------------------
# graphs


def _lift_to_graph(f: OmniSubspace):
    """For each unit vector e_i the unique element of ``F`` projecting to it."""
    n = f.n
    elems = f.elements()
    if len(elems) != n:
        raise NotAGraphError(f"a graph over R^{n} has dimension {n}, got {len(elems)}")
    proj = la.transpose([e.v for e in elems]) if elems else ()
    lifts = []
    for i in range(n):
        sol = la.solve_linear(proj, la.unit(n, i), len(elems))
        if sol is None or sol.kernel.dim:
            raise NotAGraphError("projection to R^n is not bijective")
        total = OmniElement.zero(n)
        for c, e in zip(sol.particular, elems):
            if c:
                total = total + c * e
        lifts.append(total)
    return lifts


def recover_bilinear(f: OmniSubspace) -> BilinearOp:
    """The unique ``B`` with ``graph_subspace(B) == F``."""
    lifts = _lift_to_graph(f)
    n = f.n
    entries = {}
    for i, lift in enumerate(lifts):
        for j in range(n):
            for k in range(n):
                if lift.a[k][j]:
                    entries[i, j, k] = lift.a[k][j]
    return BilinearOp.from_dict(n, entries)


def induced_bracket(f: OmniSubspace, x, y) -> la.Vec:
    """Bracket on R^n obtained by lifting to ``F``, bracketing, projecting."""
    lifts = _lift_to_graph(f)

    def lift(u):
        total = OmniElement.zero(f.n)
        for c, e in zip(la.vec(u), lifts):
            if c:
                total = total + c * e
        return total

    return omni_bracket(lift(x), lift(y)).v


def isotropic_graph_space(n: int) -> Subspace:
    """Linear maps ``L: gl(n) -> R^n`` whose graph is isotropic.

    Unknown ``L[k][p][q]`` (component ``k`` of ``L(E_pq)``) sits at flat
    index ``k*n*n + p*n + q``.  Isotropy on the pair ``(E_pq, E_rs)`` reads
    ``E_pq L(E_rs) + E_rs L(E_pq) = 0``, i.e. component ``p`` gains
    ``L(E_rs)_q`` and component ``r`` gains ``L(E_pq)_s``.
    """
    nvar = n ** 3
    idx = lambda k, p, q: k * n * n + p * n + q  # noqa: E731
    cells = [(p, q) for p in range(n) for q in range(n)]
    rows = []
    for a, (p, q) in enumerate(cells):
        for r, s in cells[a:]:
            for m in range(n):
                row = [la.ZERO] * nvar
                if m == p:
                    row[idx(q, r, s)] += 1
                if m == r:
                    row[idx(s, p, q)] += 1
                if any(row):
                    rows.append(row)
    return la.span(la.kernel_basis(rows, nvar), nvar)


# ---------------------------------------------------------------------------
# search


@dataclass
class SearchResult:
    structures: list
    undetermined: list = field(default_factory=list)
    complete: bool = False
    budget_exhausted: bool = False

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "budget_exhausted": self.budget_exhausted,
            "d_structures": [s.to_json() for s in self.structures],
            "undetermined": [s.to_json() for s in self.undetermined],
        }


def _key(f: OmniSubspace):
    return (f.dim, f.sub.basis)


class _Budget:
    def __init__(self, total: int):
        self.left = total
        self.exhausted = False

    def take(self) -> bool:
        if self.left <= 0:
            self.exhausted = True
            return False
        self.left -= 1
        return True


def _collect(candidates, structures: dict, undetermined: dict, samples: int, seed: int) -> None:
    for f in candidates:
        k = _key(f)
        if k in structures or k in undetermined:
            continue
        rep = classify(f, samples, seed)
        if rep.d_structure:
            structures[k] = f
        elif rep.isotropic and rep.closed and rep.undetermined:
            undetermined[k] = f


def _graph_candidates(n: int, rng: random.Random, budget: _Budget) -> list:
    cands = [graph_subspace(b) for b in lie_algebras_of_dim(n)]
    while budget.take():
        cands.append(graph_subspace(random_lie(rng, n)))
        if len(cands) >= 4 * len(lie_algebras_of_dim(n)) + 4:
            break
    return cands


def _exhaustive_candidates(n: int, budget: _Budget):
    """Expand isotropic subspaces from ``{0}`` along null directions.

    Exact at a node whose complement ``W`` has dimension at most 2 (all
    isotropic extensions then live in ``F + W``).  Larger complements branch
    only on null basis vectors and null lines of basis planes, so the run is
    then marked incomplete.
    """
    complete = True
    start = OmniSubspace(n, la.zero_subspace(ambient_dim(n)))
    frontier = [start]
    seen = {_key(start)}
    leaves = []
    while frontier:
        if not budget.take():
            return leaves, False
        f = frontier.pop(0)
        perp = omni_orthogonal(f)
        if perp == f:
            leaves.append(f)
            continue
        w = [OmniElement.unflatten(x, n) for x in la.complement_in(f.sub, perp.sub)]
        extensions = []
        if len(w) == 1:
            if la.is_zero(quadratic(w[0])):
                extensions = [w]
        elif len(w) == 2:
            dirs = binary_null_directions(w[0], w[1])
            if dirs is None:
                extensions = [w]
            else:
                if any(not d.rational for d in dirs):
                    complete = False
                extensions = [[d.base] for d in dirs if d.rational]
        else:
            complete = False
            extensions = [[x] for x in w if la.is_zero(quadratic(x))]
            for i, x in enumerate(w):
                for y in w[i + 1:]:
                    extensions.extend([e] for e in _rational_null_lines(x, y))
        if not extensions:
            leaves.append(f)
        for extra in extensions:
            g = omni_span(f.elements() + extra, n)
            k = _key(g)
            if k not in seen:
                seen.add(k)
                frontier.append(g)
    return leaves, complete


def _greedy_candidates(n: int, rng: random.Random, budget: _Budget, tries: int = 24) -> list:
    """Grow isotropic, bracket-closed subspaces from random null directions."""
    results = []
    while not budget.exhausted:
        f = OmniSubspace(n, la.zero_subspace(ambient_dim(n)))
        while True:
            perp = omni_orthogonal(f)
            if perp == f:
                break
            w = [OmniElement.unflatten(x, n) for x in la.complement_in(f.sub, perp.sub)]
            grown = None
            for _ in range(tries):
                if not budget.take():
                    break
                if rng.random() < 0.5 or len(w) < 2:
                    cands = [rng.choice(w)]
                else:
                    cands = _rational_null_lines(_random_combination(w, rng), _random_combination(w, rng))
                for e in cands:
                    if e.is_zero() or not la.is_zero(quadratic(e)):
                        continue
                    g = bracket_closure(omni_span(f.elements() + [e], n), stop_if_not_isotropic=True)
                    if g is not None:
                        grown = g
                        break
                if grown is not None:
                    break
            if grown is None:
                break
            f = grown
        results.append(f)
    return results


STRATEGIES = ("exhaustive", "graph", "greedy")


def search_d_structures(
    n: int, strategy: str = "graph", seed: int = 0, budget: int = 200, samples: int = 64
) -> SearchResult:
    """Best-effort enumeration of D-structures in E_n.

    The horizontal subspace is always included.  ``complete`` is True only
    for an exhaustive run that stayed exact at every node (n = 1).
    Output is sorted canonically and depends only on the arguments.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if strategy == "exhaustive" and n > 4:
        raise ValueError("exhaustive search is limited to n <= 4")
    rng = random.Random(seed)
    pool = _Budget(budget)
    complete = False
    if strategy == "graph":
        cands = _graph_candidates(n, rng, pool)
    elif strategy == "greedy":
        cands = _greedy_candidates(n, rng, pool)
    else:
        cands, complete = _exhaustive_candidates(n, pool)
    structures, undetermined = {}, {}
    _collect([horizontal(n)] + cands, structures, undetermined, samples, seed)
    return SearchResult(
        [structures[k] for k in sorted(structures)],
        [undetermined[k] for k in sorted(undetermined)],
        complete=complete and not pool.exhausted,
        budget_exhausted=pool.exhausted,
    )
