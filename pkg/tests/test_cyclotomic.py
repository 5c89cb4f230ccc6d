import cmath
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from thetacorr.cyclotomic import CycNum, CycVal

primes = st.sampled_from([3, 5, 7])


def root(p, m, e):
    return cmath.exp(2j * cmath.pi * e / p**m)


@st.composite
def cycvals(draw, p=None):
    p = p or draw(primes)
    m = draw(st.integers(0, 3))
    return CycVal(p, m, draw(st.integers(-100, 100)))


def test_canonical_form_strips_p_powers():
    assert CycVal(3, 2, 3) == CycVal(3, 1, 1)
    assert CycVal(3, 2, 9) == CycVal(3)
    assert CycVal(5, 1, 5).is_one()
    assert CycVal(3, 1, -1) == CycVal(3, 1, 2)


@given(st.data())
def test_product_matches_complex_exponentials(data):
    p = data.draw(primes)
    a, b = data.draw(cycvals(p)), data.draw(cycvals(p))
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs(a.to_complex() - root(p, a.m, a.e)) < 1e-9


@given(cycvals())
def test_inverse_and_powers(a):
    assert (a * a.inverse()).is_one()
    assert (a ** (a.p ** a.m)).is_one()
    assert a.conj() == a.inverse()


@given(cycvals(), st.integers(1, 2))
def test_root_is_a_root(a, k):
    if a.m == 0:
        return
    assert a.root(k) ** (a.p**k) == a


def test_sum_of_primitive_roots_vanishes():
    for p in (3, 5):
        s = CycNum.from_terms(p, [(1, CycVal(p, 1, e)) for e in range(p)])
        assert s.is_zero()
        t = CycNum.from_terms(p, [(1, CycVal(p, 2, e)) for e in range(1, p * p) if e % p])
        assert t.rational() == 0


def test_rational_values():
    p = 3
    x = CycNum.of(CycVal(p, 1, 1)) + CycNum.of(CycVal(p, 1, 2))
    assert x.rational() == -1
    assert CycNum.of(Fraction(2, 3), p).rational() == Fraction(2, 3)
    assert CycNum.of(CycVal(p, 1, 1)).rational() is None


@given(st.data())
def test_cycnum_ring_operations_match_complex(data):
    p = data.draw(primes)
    terms = st.lists(st.tuples(st.integers(-3, 3), cycvals(p)), max_size=4)
    x = CycNum.from_terms(p, data.draw(terms))
    y = CycNum.from_terms(p, data.draw(terms))
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-7
    assert abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-7
    assert abs(x.conj().to_complex() - x.to_complex().conjugate()) < 1e-7
    assert (x - x).is_zero()
    assert x * y == y * x
