import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from omnilie import exactla as la
from omnilie import omni
from omnilie.omni import OmniElement

E = omni.elementary


def el(a=None, v=None, n=2):
    return OmniElement(a if a is not None else la.zero_matrix(n, n), v if v is not None else la.zeros(n))


# independent evaluator on sympy matrices
def _sym(e):
    return sympy.Matrix(e.n, e.n, [sympy.Rational(int(x.numerator), int(x.denominator)) for r in e.a for x in r]), \
        sympy.Matrix([sympy.Rational(int(x.numerator), int(x.denominator)) for x in e.v])


def oracle_bracket(p, q):
    (a1, v1), (a2, v2) = p, q
    return a1 * a2 - a2 * a1, (a1 * v2 - a2 * v1) / 2


def oracle_pairing(p, q):
    (a1, v1), (a2, v2) = p, q
    return (a1 * v2 + a2 * v1) / 2


def oracle_t_and_j(e1, e2, e3):
    s = [_sym(e) for e in (e1, e2, e3)]
    t = sympy.zeros(e1.n, 1)
    ja, jv = sympy.zeros(e1.n, e1.n), sympy.zeros(e1.n, 1)
    for x, y, z in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        b = oracle_bracket(s[x], s[y])
        t += oracle_pairing(b, s[z])
        bb = oracle_bracket(b, s[z])
        ja += bb[0]
        jv += bb[1]
    return t / 3, ja, jv


def _to_frac(m):
    return [Fraction(int(x.p), int(x.q)) for x in m]


def elements(n):
    entry = st.fractions(min_value=-9, max_value=9, max_denominator=4)
    return st.builds(
        lambda a, v: OmniElement(a, v),
        st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(entry, min_size=n, max_size=n),
    )


triples = st.integers(1, 3).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n)))
pairs = st.integers(1, 3).flatmap(lambda n: st.tuples(elements(n), elements(n)))


def test_bracket_examples():
    assert omni.omni_bracket(el(E(2, 0, 0)), el(E(2, 0, 1))) == el(E(2, 0, 1))
    v = la.vec([3, -1])
    assert omni.omni_bracket(el(la.identity(2)), el(v=v)) == el(v=la.vscale(la.HALF, v))
    rng = random.Random(5)
    e = omni.random_element(rng, 3)
    assert omni.omni_bracket(e, e).is_zero()


def test_pairing_examples():
    v = la.vec([3, -1])
    assert omni.omni_pairing(el(la.identity(2)), el(v=v)) == la.vscale(la.HALF, v)
    rng = random.Random(1)
    a, b = (omni.random_element(rng, 2).a for _ in range(2))
    assert la.is_zero(omni.omni_pairing(el(a), el(b)))
    assert la.is_zero(omni.omni_pairing(el(v=v), el(v=la.vec([7, 2]))))


def test_cartan_examples():
    e1, e2, e3 = el(E(2, 0, 1)), el(E(2, 1, 0)), el(v=la.unit(2, 0))
    quarter = la.vec([Fraction(1, 4), 0])
    assert omni.cartan_form(e1, e2, e3) == quarter
    assert omni.jacobiator(e1, e2, e3) == el(v=quarter)
    t, ja, jv = oracle_t_and_j(e1, e2, e3)
    assert _to_frac(t) == list(quarter) and ja.is_zero_matrix and _to_frac(jv) == list(quarter)
    rng = random.Random(2)
    ms = [el(omni.random_element(rng, 2).a) for _ in range(3)]
    assert la.is_zero(omni.cartan_form(*ms))
    assert omni.jacobiator(*ms).is_zero()
    e = omni.random_element(rng, 2)
    assert la.is_zero(omni.cartan_form(e, e, e))


def test_dimension_mismatch():
    with pytest.raises(la.DimensionError):
        omni.omni_bracket(OmniElement.zero(2), OmniElement.zero(3))
    with pytest.raises(la.DimensionError):
        OmniElement(la.identity(2), la.zeros(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_matrix_and_two_vectors_have_zero_jacobiator(t):
    a, x, y = t
    assert omni.jacobiator(el(a.a, n=a.n), el(v=x.v, n=a.n), el(v=y.v, n=a.n)).is_zero()


@settings(max_examples=60, deadline=None)
@given(triples)
def test_against_independent_evaluator(t):
    o_t, o_ja, o_jv = oracle_t_and_j(*t)
    assert list(omni.cartan_form(*t)) == _to_frac(o_t)
    j = omni.jacobiator(*t)
    assert o_ja.is_zero_matrix and j.a == la.zero_matrix(t[0].n, t[0].n)
    assert list(j.v) == _to_frac(o_jv)


@settings(max_examples=60, deadline=None)
@given(triples)
def test_anomaly_identity(t):
    assert omni.jacobiator(*t) == el(v=omni.cartan_form(*t), n=t[0].n)


@settings(max_examples=60, deadline=None)
@given(pairs, st.fractions(min_value=-5, max_value=5, max_denominator=3))
def test_bracket_and_pairing_forms(p, c):
    x, y = p
    z = OmniElement(la.transpose(x.a), y.v)
    assert omni.omni_bracket(x, y) == -omni.omni_bracket(y, x)
    assert omni.omni_pairing(x, y) == omni.omni_pairing(y, x)
    assert omni.omni_bracket(c * x + z, y) == c * omni.omni_bracket(x, y) + omni.omni_bracket(z, y)
    assert omni.omni_pairing(c * x + z, y) == la.vadd(
        la.vscale(c, omni.omni_pairing(x, y)), omni.omni_pairing(z, y)
    )
    assert omni.quadratic(x) == omni.omni_pairing(x, x)


@settings(max_examples=40, deadline=None)
@given(triples)
def test_cartan_totally_antisymmetric(t):
    a, b, c = t
    base = omni.cartan_form(a, b, c)
    assert omni.cartan_form(b, c, a) == base
    assert omni.cartan_form(c, a, b) == base
    neg = la.vscale(-1, base)
    assert omni.cartan_form(b, a, c) == neg
    assert omni.cartan_form(a, c, b) == neg


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(elements))
def test_flatten_and_json(e):
    assert OmniElement.unflatten(e.flatten(), e.n) == e
    assert OmniElement.from_json(e.to_json()) == e
    assert len(e.flatten()) == omni.ambient_dim(e.n)


def test_flattening_order():
    b = omni.basis(2)
    assert b[1] == el(E(2, 0, 1)) and b[2] == el(E(2, 1, 0)) and b[4] == el(v=la.unit(2, 0))


def test_random_elements_are_seeded():
    a = [omni.random_element(random.Random(9), 3) for _ in range(2)]
    assert a[0] == a[1]
    for r in a[0].a:
        for x in r:
            assert -9 <= x <= 9 and (x * 12).denominator == 1


def test_horizontal_and_vertical():
    assert omni.horizontal(3).dim == 9 and omni.vertical(3).dim == 3
    assert el(E(2, 1, 0)) in omni.horizontal(2)
    assert el(v=la.unit(2, 1)) not in omni.horizontal(2)
    h = omni.horizontal(2)
    assert omni.OmniSubspace.from_json(h.to_json()) == h
