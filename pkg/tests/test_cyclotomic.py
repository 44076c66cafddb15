from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_complex
from kummer_cy.arith import divisors, is_prime, legendre, primes_up_to
from kummer_cy.cyclotomic import MU, ONE, ZERO, ComplexBox, Cyc, Disc, NotIntegralError, QuadInt, embed_eta

small = st.integers(-6, 6)
cycs = st.lists(small, min_size=6, max_size=6).map(lambda c: Cyc(tuple(c)))
nonzero_cycs = cycs.filter(lambda x: not x.is_zero())
units_mod7 = st.sampled_from([1, 2, 3, 4, 5, 6])


def test_mu_has_order_seven_and_minimal_relation():
    assert MU ** 7 == ONE
    assert MU ** 1 != ONE
    assert sum((MU ** k for k in range(7)), ZERO) == ZERO


def test_cyclotomic_identities():
    prod = ONE
    for k in range(1, 7):
        prod = prod * (ONE - Cyc.mu(k))
    assert prod == Cyc.rational(7)
    eta = embed_eta()
    assert eta * eta + eta + 2 == ZERO


def test_rational_embedding_and_division():
    half = Cyc.rational(Fraction(1, 2))
    assert half.is_rational() and not half.is_integral()
    assert half * 2 == ONE
    with pytest.raises(NotIntegralError):
        ONE.exact_div(Cyc.rational(2))


@given(cycs, cycs)
def test_multiplication_matches_complex_numerics(x, y):
    assert abs(to_complex(x * y) - to_complex(x) * to_complex(y)) < 1e-6


@given(cycs, cycs, units_mod7)
def test_galois_is_a_ring_homomorphism(x, y, k):
    assert (x * y).galois(k) == x.galois(k) * y.galois(k)
    assert (x + y).galois(k) == x.galois(k) + y.galois(k)


@given(cycs, cycs)
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(nonzero_cycs)
def test_inverse(x):
    assert x * x.inverse() == ONE


@given(cycs)
def test_conjugation_is_galois_minus_one(x):
    assert x.conj() == x.galois(6)
    assert abs(to_complex(x.conj()) - to_complex(x).conjugate()) < 1e-6


@given(cycs)
def test_integral_norm_is_integer(x):
    assert x.norm().denominator == 1


def _tau_complex(tag):
    return complex(-0.5, (4 * tag.c - 1) ** 0.5 / 2)


def _qc(x: QuadInt) -> complex:
    return x.a + x.b * _tau_complex(x.tag)


@given(small, small, small, small, st.sampled_from(list(Disc)))
def test_quadint_arithmetic_matches_complex_numerics(a, b, c, d, tag):
    x, y = QuadInt(a, b, tag), QuadInt(c, d, tag)
    assert abs(_qc(x * y) - _qc(x) * _qc(y)) < 1e-9
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.trace() ** 2 - 4 * x.norm() == tag.discriminant * b * b


@given(small, small)
def test_eta_embeds_into_cyclotomic_integers(a, b):
    x = QuadInt(a, b, Disc.ETA)
    assert abs(to_complex(x.to_cyc()) - _qc(x)) < 1e-9
    with pytest.raises(ValueError):
        QuadInt(a, b, Disc.OMEGA).to_cyc()


def test_tau_satisfies_its_quadratic():
    for tag in Disc:
        tau = QuadInt(0, 1, tag)
        assert tau * tau + tau + tag.c == QuadInt(0, 0, tag)


def test_quadint_rejects_mixed_rings():
    with pytest.raises(TypeError):
        QuadInt(1, 1, Disc.OMEGA) + QuadInt(1, 1, Disc.ETA)


def test_arith_helpers_against_naive_definitions():
    naive = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert primes_up_to(199) == naive
    assert all(is_prime(p) for p in naive)
    assert divisors(28) == [1, 2, 4, 7, 14, 28]
    for p in (3, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        assert all(legendre(a, p) == (1 if a in squares else -1) for a in range(1, p))


# -- rigorous enclosures -----------------------------------------------------


@given(cycs)
def test_enclosure_is_tight_around_the_numeric_value(x):
    box = ComplexBox.of_cyc(x)
    assert box.width() < Fraction(1, 2 ** 100)
    assert abs(box.midpoint() - to_complex(x)) < 1e-9


@given(cycs, cycs)
def test_enclosures_respect_exact_identities(x, y):
    """x*y - x*y evaluated through boxes must contain 0."""
    box = ComplexBox.of_cyc(x) * ComplexBox.of_cyc(y) - ComplexBox.of_cyc(x * y)
    assert box.contains(0, 0)


def test_eta_quadratic_encloses_zero():
    eta = ComplexBox.of_cyc(embed_eta())
    assert (eta * eta + eta + ComplexBox.exact(2)).contains(0, 0)
    for tag in Disc:
        tau = ComplexBox.of_quad(QuadInt(0, 1, tag))
        assert (tau * tau + tau + ComplexBox.exact(tag.c)).contains(0, 0)
