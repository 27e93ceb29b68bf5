import random

import pytest

from sexticforms.exact import (
    GaussianRational, MultiPoly, Rational, gaussian, parse_rational,
)

VARS = ("a", "b", "c")


def rand_poly(rng, nterms=4, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randrange(maxdeg + 1) for _ in VARS)
        terms[exps] = Rational(rng.randint(-9, 9), rng.randint(1, 7))
    return MultiPoly(VARS, terms)


def test_rational_invariants():
    q = Rational(6, -4)
    assert q.denominator > 0
    assert (q.numerator, q.denominator) == (-3, 2)
    assert parse_rational("-3/2") == q
    assert not Rational(0, 5)


def test_difference_of_squares():
    V = ("x1", "x2")
    x1 = MultiPoly.variable(V, "x1")
    x2 = MultiPoly.variable(V, "x2")
    assert (x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2


def test_multiplication_by_zero_annihilates():
    rng = random.Random(1)
    p = rand_poly(rng)
    assert not (p * MultiPoly.zero(VARS)).terms


def test_square_of_two_term_sextic():
    V = ("a0", "a6", "x1", "x2")
    p = (MultiPoly.monomial(V, 1, a0=1, x1=6)
         + MultiPoly.monomial(V, 1, a6=1, x2=6))
    sq = p * p
    assert sq.coefficient(a0=2, x1=12) == 1
    assert sq.coefficient(a0=1, a6=1, x1=6, x2=6) == 2
    assert sq.coefficient(a6=2, x2=12) == 1
    assert len(sq.terms) == 3


def test_ring_axioms_randomized():
    rng = random.Random(42)
    for _ in range(100):
        p, q, r = (rand_poly(rng) for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + q == q + p
        assert p * q == q * p


def test_iterated_derivative_factorial():
    V = ("x1", "x2")
    p = MultiPoly.monomial(V, 1, x1=6)
    assert p.diff("x1", 6) == 720
    assert not p.diff("x2").terms


def test_mixed_derivative_example():
    V = ("a3", "x1", "x2")
    p = MultiPoly.monomial(V, 20, a3=1, x1=3, x2=3)
    d = p.diff("x1").diff("x2")
    assert d == MultiPoly.monomial(V, 180, a3=1, x1=2, x2=2)


def test_derivatives_commute():
    rng = random.Random(7)
    V = ("x1", "x2", "t")
    for _ in range(50):
        terms = {tuple(rng.randrange(5) for _ in V): Rational(rng.randint(-5, 5))
                 for _ in range(5)}
        p = MultiPoly(V, terms)
        assert p.diff("x1").diff("x2") == p.diff("x2").diff("x1")


def test_substitution_cusp_example():
    V = ("u", "v")
    W = ("c", "t")
    p = MultiPoly.monomial(V, 1, u=2) - MultiPoly.monomial(V, 1, v=3)
    image = p.subs({
        "u": MultiPoly.monomial(W, 1, c=2, t=3),
        "v": MultiPoly.monomial(W, 1, c=1, t=2),
    })
    expected = (MultiPoly.monomial(W, 1, c=4, t=6)
                - MultiPoly.monomial(W, 1, c=3, t=6))
    assert image == expected


def test_substitution_identity():
    rng = random.Random(3)
    p = rand_poly(rng)
    ident = {v: MultiPoly.variable(VARS, v) for v in VARS}
    assert p.subs(ident) == p


def test_substitution_binomial():
    V = ("x1", "x2", "a", "b")
    p = MultiPoly.monomial(V, 1, x1=2)
    image = p.subs({"x1": MultiPoly.monomial(V, 1, a=1, x1=1)
                    + MultiPoly.monomial(V, 1, b=1, x2=1)})
    assert image.coefficient(a=2, x1=2) == 1
    assert image.coefficient(a=1, b=1, x1=1, x2=1) == 2
    assert image.coefficient(b=2, x2=2) == 1


def test_substitution_is_ring_homomorphism():
    rng = random.Random(11)
    target = {v: rand_poly(rng, 2, 2) for v in VARS}
    for _ in range(20):
        p, q = rand_poly(rng, 3, 2), rand_poly(rng, 3, 2)
        assert (p * q).subs(target) == p.subs(target) * q.subs(target)


def test_serialization_roundtrip():
    rng = random.Random(5)
    p = rand_poly(rng, 6)
    assert MultiPoly.loads(p.dumps()) == p
    assert MultiPoly.loads(p.dumps()).dumps() == p.dumps()


def test_gaussian_field_axioms():
    rng = random.Random(9)
    vals = [gaussian(Rational(rng.randint(-5, 5), rng.randint(1, 4)),
                     Rational(rng.randint(-5, 5), rng.randint(1, 4)))
            for _ in range(30)]
    for i in range(0, 30, 3):
        x, y, z = vals[i], vals[i + 1], vals[i + 2]
        assert x * (y + z) == x * y + x * z
        if x:
            inv = 1 / x if isinstance(x, GaussianRational) else Rational(1) / x
            assert x * inv == 1


def test_gaussian_conjugation_involution():
    z = gaussian(Rational(3, 4), Rational(-2, 7))
    assert z.conjugate().conjugate() == z
    assert gaussian(1, 1) * gaussian(1, -1) == 2


def test_gaussian_demotes_to_rational():
    z = gaussian(2, 3) * gaussian(2, -3)
    assert isinstance(z, type(Rational(1)))
    assert z == 13
