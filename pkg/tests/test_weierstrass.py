import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerlab.numring import EISENSTEIN, RATIONAL, NumberRing
from kummerlab.weierstrass import (CoordinateChange, IntegralityError, SingularModelError, WeierstrassModel,
                                   compute_invariants, key_identity, transform, vanishing_equivalence)
from kummerlab.numring import primes_above

RINGS = [RATIONAL, EISENSTEIN, NumberRing.quadratic(-1), NumberRing.quadratic(7), NumberRing.quadratic(65)]
small = st.integers(-20, 20)


@st.composite
def elements(draw, ring):
    if ring.kind == "rational":
        return ring(draw(small))
    return ring(draw(small), draw(small))


@st.composite
def models(draw):
    ring = draw(st.sampled_from(RINGS))
    coeffs = [draw(elements(ring)) for _ in range(5)]
    try:
        return WeierstrassModel(ring, *coeffs)
    except SingularModelError:
        return WeierstrassModel(ring, 0, 0, 1, 0, 0)  # y^2 + y = x^3, nonsingular


@st.composite
def changes(draw, ring):
    u = draw(elements(ring))
    if u.is_zero():
        u = ring.one()
    return CoordinateChange(u, draw(elements(ring)), draw(elements(ring)), draw(elements(ring)))


def test_identities_symbolic():
    """The b/c identities hold as polynomial identities (sympy oracle)."""
    a1, a2, a3, a4, a6 = sympy.symbols("a1 a2 a3 a4 a6")
    b2, b4, b6 = a1**2 + 4 * a2, 2 * a4 + a1 * a3, a3**2 + 4 * a6
    b8 = a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2
    c4, c6 = b2**2 - 24 * b4, -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    assert sympy.expand(4 * b8 - (b2 * b6 - b4**2)) == 0
    assert sympy.expand(c4**3 - c6**2 - 1728 * disc) == 0
    assert sympy.expand(b2 * a4 + b6 - (4 * (a2 * a4 + a6) + a1**2 * a4 + a3**2)) == 0
    # the library agrees with the symbolic formulas at integer points
    for vals in [(1, -1, 1, -10, -20), (0, 0, 1, -1, 0), (1, 2, 3, 4, 5), (-3, 7, 0, 2, -9)]:
        inv = compute_invariants(*vals)
        sub = dict(zip((a1, a2, a3, a4, a6), vals))
        for name, expr in (("b2", b2), ("b4", b4), ("b6", b6), ("b8", b8), ("c4", c4), ("c6", c6), ("disc", disc)):
            assert getattr(inv, name) == expr.subs(sub)


@settings(max_examples=1000)
@given(models())
def test_invariant_identities(E):
    inv = E.invariants
    assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4
    assert inv.c4**3 - inv.c6**2 == 1728 * inv.disc


@settings(max_examples=1000)
@given(models())
def test_key_identity_decomposition(E):
    a1, a2, a3, a4, a6 = E.coefficients
    assert key_identity(E) == 4 * (a2 * a4 + a6) + a1 * a1 * a4 + a3 * a3


@settings(max_examples=1000)
@given(st.data())
def test_transformation_covariance(data):
    E = data.draw(models())
    ch = data.draw(changes(E.ring))
    F = transform(E, ch, check=False)
    u = E.ring.coerce(ch.u)
    assert F.disc == E.disc / u**12
    assert F.c4 == E.c4 / u**4
    assert F.invariants.c6 == E.invariants.c6 / u**6


@given(st.data())
def test_compose_and_inverse(data):
    E = data.draw(models())
    c1 = data.draw(changes(E.ring)).on(E.ring)
    c2 = data.draw(changes(E.ring)).on(E.ring)
    step = transform(transform(E, c1, check=False), c2, check=False)
    assert step == transform(E, c1.compose(c2), check=False)
    assert transform(transform(E, c1, check=False), c1.inverse(), check=False) == E


def test_singular_rejected():
    with pytest.raises(SingularModelError, match="disc"):
        WeierstrassModel(RATIONAL, 0, 0, 0, 0, 0)


def test_integrality_check():
    E = WeierstrassModel(RATIONAL, 0, 0, 0, -1, 0)
    with pytest.raises(IntegralityError):
        transform(E, CoordinateChange(2, 0, 0, 0))
    (P,) = primes_above(RATIONAL, 3)
    transform(E, CoordinateChange(2, 0, 0, 0), P=P)  # integral away from 2


def test_pinch_invariants():
    w = EISENSTEIN.gen()
    for sign in (1, -1):
        E = WeierstrassModel(EISENSTEIN, 0, sign * (1 + w), 0, w, 0)
        assert E.disc == 16 and E.c4 == 0
        assert E.invariants.j_value() == 0


def test_vanishing_equivalence_at_two():
    E = WeierstrassModel(NumberRing.quadratic(-1), NumberRing.quadratic(-1)(1, 1), 0, 0, 0, 1)
    (P,) = primes_above(E.ring, 2)
    left, right = vanishing_equivalence(E, P)
    assert left == right


def test_from_coefficients_dict():
    E = WeierstrassModel.from_coefficients(RATIONAL, {"a3": 1, "a4": -1})
    assert E.coefficients == (0, 0, 1, -1, 0)
    assert E.disc == 37
