import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valuata.as_extension import ASExtension
from valuata.errors import TrivialExtensionError
from valuata.hahn_series import agrees_to_precision
from valuata.sampling import random_ext_elt
from valuata.value_group import ge

seeds = st.integers(min_value=0, max_value=10**9)


def build(field, expr):
    from valuata.dsl import parse_expr
    return ASExtension(field, parse_expr(expr, field))


def test_alpha_satisfies_its_equation(gf2_laurent):
    ext = build(gf2_laurent, "X^(-3)")
    a = ext.alpha()
    lhs = a * a - a
    assert agrees_to_precision(lhs.constant(), ext.f)
    assert lhs.is_base()


def test_sigma_shifts_alpha(gf2_laurent):
    ext = build(gf2_laurent, "X^(-3)")
    a = ext.alpha()
    assert str(a.sigma()) == "(1) + (1)*a"
    assert a.sigma(2) == a


def test_sigma_is_a_ring_morphism(gf3_laurent, rng):
    ext = build(gf3_laurent, "X^(-1)")
    x = random_ext_elt(ext, rng, ge(-3), ge(3))
    y = random_ext_elt(ext, rng, ge(-3), ge(3))
    assert agrees_elt((x + y).sigma(), x.sigma() + y.sigma())
    assert agrees_elt((x * y).sigma(), x.sigma() * y.sigma())


def agrees_elt(u, v):
    return all(not c.has_terms() for c in (u - v).coeffs)


def test_norm_of_alpha_is_minus_f(gf3_laurent):
    # the constant term of X^p - X - f is -f, so the norm of alpha is
    # (-1)^p * (-f) = f for odd p
    ext = build(gf3_laurent, "X^(-1)")
    n = ext.alpha().norm()
    assert agrees_to_precision(n, ext.f)


def test_norm_of_alpha_p2(gf2_laurent):
    ext = build(gf2_laurent, "X^(-3)")
    assert agrees_to_precision(ext.alpha().norm(), ext.f)


def test_trace_of_alpha(gf2_laurent):
    # alpha + sigma(alpha) = 2 alpha + 1 = 1 in characteristic 2
    ext = build(gf2_laurent, "X^(-3)")
    t = ext.alpha().trace()
    assert agrees_to_precision(t, gf2_laurent.one())


def test_norm_dual_route_on_witnesses(gf2_laurent, gf3_laurent):
    e2 = build(gf2_laurent, "X^(-3)")
    e3 = build(gf3_laurent, "X^(-1)")
    for ext in (e2, e3):
        items = [ext.alpha(), ext.one() + ext.alpha(),
                 ext.from_base(ext.base.monomial(ext.base.residue.one(),
                                                 ge(-2))) + ext.alpha()]
        for x in items:
            assert agrees_to_precision(x.norm(), x.norm_via_matrix())


def test_trace_dual_route(gf3_laurent, rng):
    ext = build(gf3_laurent, "X^(-1)")
    for _ in range(5):
        x = random_ext_elt(ext, rng, ge(-3), ge(3))
        assert agrees_to_precision(x.trace(), x.trace_via_matrix())


def test_invert_round_trip(gf2_laurent, rng):
    ext = build(gf2_laurent, "X^(-3)")
    for _ in range(5):
        x = random_ext_elt(ext, rng, ge(-2), ge(2), generator=True)
        inv = x.invert()
        assert agrees_elt(x * inv, ext.one())


def test_valuation_L_of_alpha(gf2_laurent, gf3_laurent):
    assert build(gf2_laurent, "X^(-3)").alpha().valuation_L() == ge(-3).divide(2)
    assert build(gf3_laurent, "X^(-1)").alpha().valuation_L() == ge(-1).divide(3)


def test_trivial_extension_refused(gf2_laurent):
    ext = build(gf2_laurent, "X^(2)")
    assert ext.trivial
    with pytest.raises(TrivialExtensionError):
        ext.require_nontrivial()
    with pytest.raises(TrivialExtensionError):
        ext.alpha().invert()


def _preset(name):
    from valuata.corpus import FIELD_PRESETS
    return FIELD_PRESETS[name].build()


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_norm_is_multiplicative(seed):
    ext = build(_preset("gf2-laurent"), "X^(-3)")
    rng = random.Random(seed)
    x = random_ext_elt(ext, rng, ge(-2), ge(2))
    y = random_ext_elt(ext, rng, ge(-2), ge(2))
    assert agrees_to_precision((x * y).norm(), x.norm() * y.norm())


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_trace_is_additive(seed):
    ext = build(_preset("gf3-laurent"), "X^(-1)")
    rng = random.Random(seed)
    x = random_ext_elt(ext, rng, ge(-2), ge(2))
    y = random_ext_elt(ext, rng, ge(-2), ge(2))
    assert agrees_to_precision((x + y).trace(), x.trace() + y.trace())


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_norm_routes_agree_random(seed):
    ext = build(_preset("gf3-laurent"), "X^(-1)")
    rng = random.Random(seed)
    x = random_ext_elt(ext, rng, ge(-2), ge(2))
    assert agrees_to_precision(x.norm(), x.norm_via_matrix())
