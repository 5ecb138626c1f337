import itertools
import random
from fractions import Fraction as Q

import pytest

from transgerm import gps
from transgerm.errors import ArityMismatch, OrderNotPositive, ZeroWithinBound
from transgerm.gps import (
    ExponentSet,
    GenSeries,
    compose_ps,
    constant,
    from_terms,
    geometric_in,
    is_natural,
    monomial,
)
from transgerm.support import SupportUniverse


def geom(n):
    return Q(1)


def test_is_natural_basic():
    a = ExponentSet.of(2, [(1, 0), (0, 1)])
    cert = is_natural(a)
    assert cert.natural
    assert cert.minima == (Q(1), Q(1))


def test_is_natural_zero():
    a = ExponentSet.of(1, [(0,)])
    cert = is_natural(a)
    assert cert.natural
    assert cert.minima == (None,)


def test_is_natural_block_counts():
    # B({(1/2,0),(0,3)}) meets [0,5)^2 in finitely many points, about b/(1/2)
    a = ExponentSet.of(2, [(Q(1, 2), 0), (0, 3)])
    assert is_natural(a).natural
    uni = a.universe()
    pts = uni.box_points((Q(9, 2), Q(9, 2)))
    # brute force: i*(1/2,0) + j*(0,3) <= (4.5,4.5)
    expect = {(Q(i, 2), Q(3 * j)) for i in range(10) for j in range(2)}
    assert set(pts) == expect


def test_mul_difference_of_squares():
    one_plus = from_terms(1, {(0,): 1, (1,): 1})
    one_minus = from_terms(1, {(0,): 1, (1,): -1})
    prod = one_plus * one_minus
    assert prod.coeff((0,)) == 1
    assert prod.coeff((1,)) == 0
    assert prod.coeff((2,)) == -1
    assert prod.coeff((3,)) == 0


def test_add_identity():
    g = from_terms(2, {(1, 0): 3, (0, 2): Q(1, 2)})
    z = constant(2, 0)
    s = g + z
    for v in [(1, 0), (0, 2), (0, 0), (5, 5)]:
        assert s.coeff(v) == g.coeff(v)


def test_geometric_product_grid():
    # (sum X0^m)(sum X1^n): all coefficients 1 on the grid
    g0 = geometric_in(2, (1, 0))
    g1 = geometric_in(2, (0, 1))
    prod = g0 * g1
    # oracle: brute-force convolution over the finite grid
    for a in range(3):
        for b in range(3):
            assert prod.coeff((a, b)) == 1


def test_ord_and_min_direct():
    g = from_terms(2, {(2, 0): 1, (1, 1): 5})
    o, antichain = g.ord_and_min()
    assert o == 2
    assert antichain == [(Q(1), Q(1)), (Q(2), Q(0))]


def test_ord_and_min_constant():
    g = from_terms(1, {(0,): 1, (1,): 1})
    o, antichain = g.ord_and_min()
    assert o == 0
    assert antichain == [(Q(0),)]


def test_ord_and_min_grid_minus_constant():
    full = geometric_in(2, (1, 0)) * geometric_in(2, (0, 1))
    g = full - constant(2, 1)
    o, antichain = g.ord_and_min()
    assert o == 1
    assert antichain == [(Q(0), Q(1)), (Q(1), Q(0))]


def test_zero_within_bound():
    g = from_terms(1, {})
    with pytest.raises(ZeroWithinBound):
        g.ord_and_min(budget=50)


def test_partial_deriv_weighted():
    g = from_terms(1, {(2,): 1})
    d = g.partial_deriv(0)
    assert d.coeff((2,)) == 2  # exponent-weighted, not shifted
    g2 = from_terms(2, {(1, 0): 1})
    assert g2.partial_deriv(1).coeff((1, 0)) == 0
    g3 = from_terms(2, {(Q(1, 2), 1): 1})
    assert g3.partial_deriv(0).coeff((Q(1, 2), 1)) == Q(1, 2)


def test_partial_deriv_is_derivation():
    rng = random.Random(13)
    for _ in range(5):
        g = from_terms(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                           for _ in range(3)})
        h = from_terms(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                           for _ in range(3)})
        for i in range(2):
            lhs = (g * h).partial_deriv(i)
            rhs = g.partial_deriv(i) * h + g * h.partial_deriv(i)
            assert lhs.equal_to_bound(rhs, (4, 4))


def test_compose_geometric_with_x():
    g = monomial(1, (1,))
    comp = compose_ps(geom, g)
    for n in range(6):
        assert comp.coeff((n,)) == 1


def test_compose_identity_series():
    g = from_terms(2, {(1, 0): 2, (0, 1): -1})
    ident = compose_ps(lambda n: Q(1) if n == 1 else Q(0), g)
    assert ident.equal_to_bound(g, (3, 3))


def test_compose_binomial_grid():
    # P = geometric, G = X0 + X1: coefficient of X0^a X1^b is C(a+b, a)
    import math
    g = from_terms(2, {(1, 0): 1, (0, 1): 1})
    comp = compose_ps(geom, g)
    for a in range(5):
        for b in range(5 - a):
            assert comp.coeff((a, b)) == math.comb(a + b, a)


def test_compose_requires_positive_order():
    g = from_terms(1, {(0,): 1, (1,): 1})
    with pytest.raises(OrderNotPositive):
        compose_ps(geom, g)


def test_compose_associativity():
    # Q o (P o G) = (Q o P) o G with ord(P) > 0
    g = from_terms(1, {(1,): 1, (2,): 1})
    p = [Q(0), Q(1), Q(1)]  # P(T) = T + T^2, ord 1
    q = [Q(0), Q(2), Q(0), Q(1)]  # Q(T) = 2T + T^3

    def series_mul(a, b, n):
        out = [Q(0)] * n
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                if i + j < n:
                    out[i + j] += ai * bj
        return out

    def series_compose(outer, inner, n):
        out = [Q(0)] * n
        power = [Q(1)] + [Q(0)] * (n - 1)
        for k, c in enumerate(outer):
            if k > 0:
                power = series_mul(power, inner, n)
            for idx in range(n):
                out[idx] += c * power[idx]
        return out

    qop = series_compose(q, p, 8)
    lhs = compose_ps(lambda n: p[n] if n < len(p) else Q(0), g)
    lhs = compose_ps(lambda n: q[n] if n < len(q) else Q(0), lhs)
    rhs = compose_ps(lambda n: qop[n] if n < len(qop) else Q(0), g)
    assert lhs.equal_to_bound(rhs, (6,))


def test_ring_laws_random():
    rng = random.Random(99)

    def rand_series():
        return from_terms(2, {(rng.randint(0, 2), rng.randint(0, 2)):
                              Q(rng.randint(-4, 4), rng.choice([1, 2]))
                              for _ in range(4)})

    for _ in range(10):
        g, h, k = rand_series(), rand_series(), rand_series()
        bound = (4, 4)
        assert ((g + h) + k).equal_to_bound(g + (h + k), bound)
        assert ((g * h) * k).equal_to_bound(g * (h * k), bound)
        assert (g * (h + k)).equal_to_bound(g * h + g * k, bound)
        assert (g * h).equal_to_bound(h * g, bound)


def test_ord_multiplicative():
    rng = random.Random(5)
    for _ in range(8):
        g = from_terms(2, {(rng.randint(0, 2) + 1, rng.randint(0, 2)): 1 + rng.randint(0, 3)})
        h = from_terms(2, {(rng.randint(0, 2), rng.randint(0, 2) + 1): 1 + rng.randint(0, 3)})
        assert (g * h).order() == g.order() + h.order()


def test_naturality_closure_under_ops():
    g = from_terms(2, {(1, 0): 1, (Q(1, 2), 1): 2})
    h = geometric_in(2, (0, 1))
    for out in (g + h, g * h, g.partial_deriv(0)):
        assert is_natural(out.skeleton()).natural


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        from_terms(1, {(1,): 1}) + from_terms(2, {(1, 0): 1})


def test_enumeration_stable():
    g = geometric_in(1, (Q(1, 2),))
    first = g.enumerate((2,))
    second = g.enumerate((2,))
    assert first == second
    assert [v for v, _ in first] == [(Q(0),), (Q(1, 2),), (Q(1),), (Q(3, 2),), (Q(2),)]
