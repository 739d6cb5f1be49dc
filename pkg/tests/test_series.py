import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from forminv.coefficients import GaussianRational, I
from forminv.errors import DimensionError, PreconditionError, TruncationError
from forminv.series import (
    FormalMap,
    Poly,
    TruncatedSeries,
    add,
    compose,
    equal_mod,
    gradient,
    hessian,
    homogeneous_component,
    inner_product,
    is_zero_matrix,
    jacobian,
    mat_mul,
    mul,
    order,
    partial_derivative,
)

from oracles import gaussian_power, random_potential, random_terms


def S(n, trunc, terms):
    return TruncatedSeries.from_terms(n, trunc, terms)


def z(n, trunc, i):
    return TruncatedSeries.variable(n, trunc, i)


def to_sympy(s: TruncatedSeries, syms):
    out = 0
    for exps, c in s.items():
        mono = 1
        for v, e in zip(syms, exps):
            mono *= v**e
        out += (sympy.Rational(str(c.re)) + sympy.I * sympy.Rational(str(c.im))) * mono
    return sympy.expand(out)


def from_sympy(expr, syms, trunc):
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for exps, c in poly.terms():
        if sum(exps) <= trunc:
            re, im = c.as_real_imag()
            terms[exps] = GaussianRational(Fraction(str(re)), Fraction(str(im)))
    return S(len(syms), trunc, terms)


def test_add_examples():
    a = z(2, 4, 0) + z(2, 4, 1)
    b = z(2, 4, 0) - z(2, 4, 1)
    assert add(a, b) == S(2, 4, {(1, 0): 2})
    assert add(a, TruncatedSeries.zero(2, 4)) == a
    r = add(S(1, 2, {(2,): 1}), S(1, 3, {(3,): 1}))
    assert r == S(1, 2, {(2,): 1})


def test_add_dimension_mismatch():
    with pytest.raises(DimensionError):
        add(z(1, 3, 0), z(2, 3, 0))


def test_mul_examples():
    a = z(2, 4, 0) + z(2, 4, 1)
    assert mul(a, a) == S(2, 4, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert mul(a, TruncatedSeries.constant(2, 4)) == a
    sq = S(1, 3, {(2,): 1})
    assert mul(sq, sq).is_zero()


def test_mul_trunc_override_is_bounded_by_orders():
    a = S(1, 4, {(2,): 1, (3,): 1})
    b = S(1, 4, {(1,): 1})
    # o(b) = 1, so a*b is known through degree 5
    assert mul(a, b, 5) == S(1, 5, {(3,): 1, (4,): 1})
    with pytest.raises(TruncationError):
        mul(a, b, 6)


def test_partial_derivative_examples():
    p = S(2, 5, {(2, 1): 1})
    assert partial_derivative(p, 0) == S(2, 4, {(1, 1): 2})
    assert partial_derivative(S(2, 5, {(3, 0): 1}), 1).is_zero()
    assert partial_derivative(S(1, 5, {(3,): Fraction(1, 3)}), 0) == S(1, 4, {(2,): 1})
    with pytest.raises(IndexError):
        partial_derivative(p, 2)


def test_gradient_examples():
    half = S(2, 4, {(2, 0): Fraction(1, 2), (0, 2): Fraction(1, 2)})
    assert gradient(half) == FormalMap.identity(2, 3)
    assert gradient(TruncatedSeries.constant(2, 4, 7)).is_zero()


def test_gradient_of_gaussian_cube_against_sympy():
    z1, z2 = sympy.symbols("z1 z2")
    P = gaussian_power(2, 6, 3)
    g = gradient(P)
    expected = 3 * (z1 + sympy.I * z2) ** 2
    assert to_sympy(g[0], (z1, z2)) == sympy.expand(expected)
    assert to_sympy(g[1], (z1, z2)) == sympy.expand(sympy.I * expected)


def test_inner_product_examples():
    ident = FormalMap.identity(2, 4)
    assert inner_product(ident, ident) == S(2, 4, {(2, 0): 1, (0, 2): 1})
    g = gradient(gaussian_power(2, 8, 3))
    assert inner_product(g, g).is_zero()
    assert inner_product(ident, FormalMap.zero(2, 4)).is_zero()


def test_jacobian_and_hessian_examples():
    one = TruncatedSeries.constant(2, 3)
    zero = TruncatedSeries.zero(2, 3)
    assert jacobian(FormalMap.identity(2, 4)) == ((one, zero), (zero, one))
    F = FormalMap([S(2, 4, {(0, 2): 1}), TruncatedSeries.zero(2, 4)])
    assert jacobian(F) == ((zero, S(2, 3, {(0, 1): 2})), (zero, zero))
    H = hessian(S(2, 4, {(1, 1): 1}))
    assert H == ((TruncatedSeries.zero(2, 2), TruncatedSeries.constant(2, 2)),
                 (TruncatedSeries.constant(2, 2), TruncatedSeries.zero(2, 2)))
    Hq = hessian(gaussian_power(2, 4, 2))
    c = TruncatedSeries.constant
    assert Hq == ((c(2, 2, 2), c(2, 2, 2 * I)), (c(2, 2, 2 * I), c(2, 2, -2)))
    assert is_zero_matrix(mat_mul(Hq, Hq))
    assert all(x.is_zero() for row in hessian(S(2, 4, {(1, 0): 3, (0, 1): 1})) for x in row)


def test_jacobian_of_gradient_is_hessian():
    rng = random.Random(3)
    for _ in range(5):
        P = random_potential(rng, 3, 6)
        assert jacobian(gradient(P)) == hessian(P)


def test_compose_examples():
    a = S(2, 4, {(2, 0): 1})
    G = FormalMap([z(2, 4, 0) + z(2, 4, 1), z(2, 4, 1)])
    assert compose(a, G) == S(2, 4, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    p = S(2, 4, {(1, 0): 3, (1, 2): 1, (0, 4): Fraction(-1, 2)})
    assert compose(p, FormalMap.identity(2, 4)) == p
    catalan = FormalMap([S(1, 4, {(1,): 1, (2,): 1, (3,): 2, (4,): 5})])
    assert compose(S(1, 4, {(1,): 1, (2,): -1}), catalan) == z(1, 4, 0)


def test_compose_rejects_constant_terms():
    G = FormalMap([S(1, 4, {(0,): 1, (1,): 1})])
    with pytest.raises(PreconditionError):
        compose(z(1, 4, 0), G)


def test_compose_against_sympy():
    rng = random.Random(11)
    syms = sympy.symbols("z1 z2")
    D = 6
    for _ in range(4):
        a = S(2, D, random_terms(rng, 2, 0, 4))
        G = FormalMap(S(2, D, random_terms(rng, 2, 1, 3)) for _ in range(2))
        expr = to_sympy(a, syms).subs(
            {syms[0]: to_sympy(G[0], syms), syms[1]: to_sympy(G[1], syms)}, simultaneous=True
        )
        assert compose(a, G) == from_sympy(expr, syms, D)


def test_compose_associative():
    rng = random.Random(5)
    D = 7
    for _ in range(3):
        a = S(2, D, random_terms(rng, 2, 0, 3))
        F = FormalMap(S(2, D, random_terms(rng, 2, 1, 3)) for _ in range(2))
        G = FormalMap(S(2, D, random_terms(rng, 2, 1, 3)) for _ in range(2))
        assert compose(compose(a, F), G) == compose(a, F.compose(G))


def test_order_examples():
    assert order(S(2, 6, {(2, 1): 1, (5, 0): 1})) == 3
    assert order(TruncatedSeries.zero(2, 3)) == math.inf
    assert order(S(1, 3, {(0,): 5, (1,): 1})) == 0


def test_homogeneous_component_examples():
    a = S(2, 4, {(1, 0): 1, (1, 1): 1})
    assert homogeneous_component(a, 2) == Poly(2, {(1, 1): 1})
    assert homogeneous_component(a, 3).is_zero()
    total = Poly.zero(2)
    for d in range(a.trunc + 1):
        total = total + homogeneous_component(a, d)
    assert total == a.poly
    with pytest.raises(TruncationError):
        homogeneous_component(a, 5)


def test_equal_mod_respects_degree():
    a = S(1, 5, {(1,): 1, (4,): 2})
    b = S(1, 3, {(1,): 1})
    assert equal_mod(a, b)
    assert not equal_mod(a, S(1, 5, {(1,): 1}), 4)
    with pytest.raises(TruncationError):
        equal_mod(a, b, 4)


def test_formal_map_requires_square_shape():
    with pytest.raises(DimensionError):
        FormalMap([z(2, 3, 0)])


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=6),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=6))
def test_product_matches_untruncated_sympy_product(ta, tb):
    syms = sympy.symbols("z1 z2")
    D = 5
    a, b = S(2, D, {e: c for e, c in ta.items() if sum(e) <= D}), S(2, D, {e: c for e, c in tb.items() if sum(e) <= D})
    expected = from_sympy(to_sympy(a, syms) * to_sympy(b, syms), syms, D)
    assert mul(a, b) == expected
