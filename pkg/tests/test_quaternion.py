import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from thetacorr.local_field import FieldParams
from thetacorr.quaternion import QuatNum, cayley, cayley_series, delta, quat_subgroup_member

F = FieldParams(3, N=10)
ints = st.integers(-10**5, 10**5)


@st.composite
def quats(draw):
    return QuatNum(F.ext(draw(ints), draw(ints)), F.ext(draw(ints), draw(ints)))


@st.composite
def traceless(draw, level=1):
    pa, pc = 3 ** ((level + 1) // 2), 3 ** (level // 2)
    return QuatNum(F.alpha * (draw(ints) * pa), F.ext(draw(ints) * pc, draw(ints) * pc))


def test_delta_relations(ctx):
    d = delta(ctx)
    assert d * d == QuatNum.of(ctx, ctx.p)
    e = QuatNum(ctx.ext(2, 1), ctx.ext(0))
    assert d * e == QuatNum(e.a.conj(), ctx.ext(0)) * d
    assert d.norm() == -ctx.p
    assert d.valuation() == 1


@given(quats(), quats(), quats())
def test_algebra_axioms(x, y, w):
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert (x * y).invol() == y.invol() * x.invol()
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()


@given(quats())
def test_norm_trace_and_inverse(x):
    assert x * x.invol() == QuatNum.of(F, x.norm())
    assert x + x.invol() == QuatNum.of(F, x.trace())
    assume(not x.is_zero())
    assert x * x.inv() == QuatNum.of(F, 1)
    assert x.valuation() == x.norm().valuation()


@given(quats())
def test_valuation_via_filtration(x):
    assume(not x.is_zero())
    v = x.valuation()
    assert x.val_at_least(v) and not x.val_at_least(v + 1)


@given(traceless(1))
def test_cayley_is_an_involution_into_D1(x):
    h = cayley(x)
    assert quat_subgroup_member("D1", h)
    assert quat_subgroup_member("D1_r", h, 1)
    assert cayley(h) == x


@given(traceless(3))
def test_cayley_series_expands_c_of_one_plus_x(x):
    assert cayley_series(x, 12) == cayley(x + 1)
    # the head -x/2 already agrees modulo level 2 v(x)
    assert (cayley(x + 1) - cayley_series(x, 1)).val_at_least(2 * x.valuation() if not x.is_zero() else 0)


def test_cayley_preserves_levels():
    for level in (1, 2, 3, 4):
        x = QuatNum(F.alpha * 3 ** ((level + 1) // 2), F.ext(3 ** (level // 2)))
        assert x.valuation() == level
        h = cayley(x)
        assert quat_subgroup_member("D1_r", h, level)
        assert not quat_subgroup_member("D1_r", h, level + 1)


def test_membership_errors():
    with pytest.raises(ValueError):
        quat_subgroup_member("D9", QuatNum.of(F, 1))
