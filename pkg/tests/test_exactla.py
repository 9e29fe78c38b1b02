from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from omnilie import exactla as la

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def subspaces(dim):
    return st.lists(st.lists(small, min_size=dim, max_size=dim), max_size=dim).map(
        lambda rows: la.span(rows, dim)
    )


def test_rref_examples():
    r = la.rref([[2, 4], [1, 2]])
    assert r.matrix == la.mat([[1, 2], [0, 0]]) and r.rank == 1
    r = la.rref(la.identity(3))
    assert r.matrix == la.identity(3) and r.rank == 3
    r = la.rref([[0, 1], [1, 0]])
    assert r.matrix == la.identity(2) and r.rank == 2


def test_solve_examples():
    s = la.solve_linear(la.identity(2), [1, 2])
    assert s.particular == la.vec([1, 2]) and s.kernel.dim == 0
    s = la.solve_linear([[1, 1]], [0])
    assert s.particular == la.vec([0, 0])
    assert s.kernel == la.span([[1, -1]], 2)
    assert la.solve_linear([[1], [1]], [1, 2]) is None


def test_span_examples():
    assert la.span([[2, 0], [0, 3]], 2).basis == la.identity(2)
    assert la.span([[1, 1], [2, 2]], 2).basis == la.mat([[1, 1]])
    assert la.span([], 3) == la.zero_subspace(3)
    with pytest.raises(la.DimensionError):
        la.span([[1, 2, 3]], 2)


def test_sum_intersect_examples():
    x, y = la.span([[1, 0]], 2), la.span([[0, 1]], 2)
    assert la.subspace_sum(x, y) == la.full_space(2)
    assert la.subspace_intersect(x, y) == la.zero_subspace(2)
    d = la.span([[1, 1]], 2)
    assert la.subspace_intersect(la.span([[1, 1], [1, 0]], 2), d) == d
    with pytest.raises(la.DimensionError):
        la.subspace_sum(x, la.zero_subspace(3))


def test_contains_examples():
    d = la.span([[1, 1]], 2)
    assert la.subspace_contains(d, [2, 2])
    assert not la.subspace_contains(d, [1, 0])
    assert la.subspace_contains(la.zero_subspace(2), [0, 0])
    with pytest.raises(la.DimensionError):
        la.subspace_contains(d, [1, 1, 1])


def test_rational_parsing():
    assert la.rat_to_str(la.rat(Fraction(6, -4))) == "-3/2"
    assert la.rat_to_str(la.rat(5)) == "5"
    assert la.rat_from_str("-3/2") == Fraction(-3, 2)
    with pytest.raises((TypeError, ValueError)):
        la.rat(0.5)
    with pytest.raises((TypeError, ValueError)):
        la.rat_from_str("0.5")


def test_dimension_checks():
    with pytest.raises(la.DimensionError):
        la.vadd(la.vec([1]), la.vec([1, 2]))
    with pytest.raises(la.DimensionError):
        la.matmul(la.mat([[1, 2]]), la.mat([[1, 2]]))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_agrees_with_sympy(m):
    ours = la.rref(m)
    ref, piv = sympy.Matrix(m).rref()
    assert ours.pivots == tuple(piv)
    expect = [[Fraction(int(x.p), int(x.q)) for x in ref.row(i)] for i in range(ref.rows)]
    assert [list(r) for r in ours.matrix] == expect


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    once = la.rref(m)
    assert la.rref(once.matrix) == once


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(lambda d: st.tuples(subspaces(d), subspaces(d))))
def test_dimension_formula(pair):
    u, v = pair
    assert u.dim + v.dim == la.subspace_sum(u, v).dim + la.subspace_intersect(u, v).dim
    meet = la.subspace_intersect(u, v)
    assert la.subspace_leq(meet, u) and la.subspace_leq(meet, v)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_by_substitution(a, data):
    b = data.draw(st.lists(small, min_size=len(a), max_size=len(a)))
    sol = la.solve_linear(a, b)
    am = la.mat(a)
    if sol is None:
        # inconsistent iff the augmented system has larger rank
        aug = [list(r) + [x] for r, x in zip(a, b)]
        assert la.rank(aug) > la.rank(a)
        return
    assert la.matvec(am, sol.particular) == la.vec(b)
    for k in sol.kernel.basis:
        assert la.is_zero(la.matvec(am, k))
    assert sol.kernel.dim == len(a[0]) - la.rank(a)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.randoms(use_true_random=False), st.lists(st.integers(1, 5), min_size=5, max_size=5))
def test_span_invariant_under_scaling_and_order(m, rnd, scales):
    base = la.span(m, len(m[0]))
    rows = [[s * x for x in r] for r, s in zip(m, scales)]
    rnd.shuffle(rows)
    assert la.span(rows, len(m[0])) == base


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(subspaces))
def test_subspace_json_round_trip(u):
    assert la.Subspace.from_json(u.to_json()) == u
