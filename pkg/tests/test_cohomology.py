from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kummer_cy import cohomology as c
from kummer_cy import intlattice as il
from kummer_cy.cyclotomic import Disc

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
radicands = st.sampled_from([Fraction(2), Fraction(3, 4), Fraction(7, 4), Fraction(5)])


def _qb_float(q) -> float:
    return float(q.x) + float(q.y) * float(q.v) ** 0.5


def _complex_tau(tau: c.TauData) -> complex:
    return complex(float(tau.alpha), float(tau.beta_sq) ** 0.5)


@given(fracs, fracs, fracs, fracs, fracs, fracs, radicands)
def test_qbeta_field_axioms(a, b, x, y, u, w, v):
    p, q, r = c.QBeta(a, b, v), c.QBeta(x, y, v), c.QBeta(u, w, v)
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q).norm() == p.norm() * q.norm()
    if p.norm() != 0:
        assert p * p.inverse() == c.QBeta(1, 0, v)
    assert abs(_qb_float(p * q) - _qb_float(p) * _qb_float(q)) < 1e-9


six_by_six = st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=6, max_size=6)


@given(six_by_six, six_by_six)
def test_exterior_cube_is_functorial(A, B):
    assert c.exterior_cube(il.matmul(A, B)) == il.matmul(c.exterior_cube(A), c.exterior_cube(B))


def test_exterior_cube_of_identity_and_determinant():
    assert c.exterior_cube(il.identity(6)) == il.identity(20)
    D = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    assert il.det(c.exterior_cube(D)) == 8 ** 20


@given(st.permutations(range(6)))
def test_wedge_sign_is_permutation_parity(order):
    assert c.top_form_sign(list(order)) == c.permutation_parity(list(order))


@pytest.mark.parametrize("tau", [c.TauData.of(Disc.OMEGA), c.TauData.of(Disc.ETA), c.TAU_I], ids=lambda t: t.name())
def test_volume_form_matches_numeric_minors(tau):
    """Coefficient of e_I on dz1^dz2^dz3 is the 3x3 minor of the covector matrix."""
    t = _complex_tau(tau)
    M = np.zeros((3, 6), dtype=complex)
    for j in range(3):
        M[j, 2 * j] = 1
        M[j, 2 * j + 1] = t
    re, im = c.omega_expansion(tau)
    zero = c.QBeta(0, 0, tau.beta_sq)
    for T, r, i in zip(c.TRIPLES, re.vector(zero), im.vector(zero)):
        expected = np.linalg.det(M[:, list(T)])
        assert abs(expected - complex(_qb_float(r), _qb_float(i))) < 1e-9


def test_generic_expansion_and_specialisations():
    assert c.verify_generic_expansion()["all_coefficients_match"]
    for tag in Disc:
        res = c.check_specialization(tag)
        assert all(v for k, v in res.items() if k != "beta_squared")


@pytest.mark.parametrize("tag", list(Disc))
def test_invariant_lattice_has_rank_two_with_reference_basis(tag):
    res = c.verify_AB_basis(tag)
    assert res["rank"] == 2
    assert res["A_invariant"] and res["B_invariant"]
    assert abs(res["determinant"]) == 1 and abs(res["coefficient_minor_det"]) == 1
    assert c.hodge_plane_rank(tag) == 2


@pytest.mark.parametrize("tag", list(Disc))
def test_whole_group_preserves_the_invariant_lattice(tag):
    from kummer_cy import torus as t

    model = t.e_omega_cube_model() if tag is Disc.OMEGA else t.e_eta_cube_model()
    A, B = c.REFERENCE_AB[tag]
    for name in model.names():
        act = c.induced_h1_action(model, name)
        assert c.acts_trivially(act, A) and c.acts_trivially(act, B)


moduli = st.tuples(fracs, st.fractions(min_value=Fraction(1, 5), max_value=4, max_denominator=6), radicands).map(
    lambda x: c.LatticeModulus(*x)
)


@given(moduli, st.integers(-4, 4))
def test_modulus_reduction_is_a_normal_form(z, n):
    r = z.reduce()
    assert r.is_reduced()
    assert r.reduce() == r
    assert z.translate(n).reduce() == r
    assert z.invert().reduce() == r


def _j(re, im_coeff, v):
    return mpmath.kleinj(mpmath.mpc(float(re), float(im_coeff) * float(v) ** 0.5))


@given(moduli)
def test_reduction_preserves_the_j_invariant(z):
    r = z.reduce()
    assume(float(z.im_coeff) * float(z.beta_sq) ** 0.5 > 0.05)
    a, b = _j(z.re, z.im_coeff, z.beta_sq), _j(r.re, r.im_coeff, r.beta_sq)
    assert abs(a - b) <= 1e-6 * max(1, abs(a))


@pytest.mark.parametrize("tau", [c.TauData.of(Disc.OMEGA), c.TauData.of(Disc.ETA), c.TAU_I], ids=lambda t: t.name())
def test_intermediate_jacobian_is_homothetic_to_the_curve(tau):
    res = c.intermediate_jacobian(tau)
    assert res.homothetic_to_tau
    # numeric cross-check through the j-invariant of the generator ratio
    beta = float(tau.beta_sq) ** 0.5
    w1 = complex(1, -float(tau.alpha) / beta)
    w2 = complex(0, 1 / beta)
    ratio = w2 / w1 if (w2 / w1).imag > 0 else w1 / w2
    j_lattice = mpmath.kleinj(mpmath.mpc(ratio.real, ratio.imag))
    t = _complex_tau(tau)
    assert abs(j_lattice - mpmath.kleinj(mpmath.mpc(t.real, t.imag))) < 1e-6 * max(1, abs(j_lattice))


def test_integral_basis_rejects_non_lattice_class():
    tag = Disc.ETA
    act = c.group_actions()[tag]
    basis = c.invariant_sublattice(act)
    doubled = [[2 * x for x in v] for v in basis]
    assert il.in_span(doubled, basis[0]) is None
