import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_complex
from kummer_cy import intlattice as il
from kummer_cy import torus as t
from kummer_cy.cyclotomic import Cyc, Disc, QuadInt

ETA = Disc.ETA
coeffs = st.lists(st.integers(-9, 9), min_size=6, max_size=6)


def _brute_fixed_count(R, N):
    """Number of x in (1/N)Z^6 / Z^6 with R x = x, by enumeration."""
    pts = np.array(list(itertools.product(range(N), repeat=6)), dtype=np.int64)
    diff = (pts @ (np.array(R, dtype=np.int64) - np.eye(6, dtype=np.int64)).T) % N
    return int(np.count_nonzero(~diff.any(axis=1)))


def test_eta_matrices_match_multiplication_on_cyclotomic_integers():
    assert t.mu_matrix_in_eta_basis() == t.G_ETA
    assert t.h_matrix_in_eta_basis() == t.H_TILDE


def test_group_relations_over_z_eta():
    I = t.qidentity(ETA)
    assert t.qmatpow(t.G_ETA, 7) == I
    assert t.qmatpow(t.H_TILDE, 3) == I
    conj = t.qmatmul(t.qmatmul(t.qmatinv(t.H_TILDE), t.G_ETA), t.H_TILDE)
    assert conj == t.qmatpow(t.G_ETA, 2)


def test_characteristic_polynomial_roots():
    assert t.charpoly_roots_at(t.G_ETA) == {1: True, 2: True, 4: True}
    assert not any(t.charpoly_roots_at(t.G_ETA, ks=(3, 5, 6)).values())


def test_cm_type_partitions_the_units_mod_7():
    conj = {(7 - k) % 7 for k in t.CM_TYPE}
    assert set(t.CM_TYPE) | conj == set(range(1, 7)) and not set(t.CM_TYPE) & conj


@given(coeffs)
def test_eta_coordinates_round_trip(c):
    x = Cyc(tuple(c))
    coords = t.to_eta_coordinates(x)
    assert all(v.denominator == 1 for v in coords)
    assert t.from_eta_coordinates(coords) == x


@given(coeffs)
def test_mu_matrix_acts_like_multiplication_by_mu(c):
    x = Cyc(tuple(c))
    before = t.eta_triple(x)
    after = t.eta_triple(Cyc.mu(1) * x)
    image = tuple(sum((t.G_ETA[i][j] * before[j] for j in range(3)), QuadInt(0, 0, ETA)) for i in range(3))
    assert image == after


@given(st.integers(-5, 5), st.integers(-5, 5), st.sampled_from(list(Disc)))
def test_real_block_is_multiplication(a, b, tag):
    x = QuadInt(a, b, tag)
    blk = t.real_block(x)
    for basis, vec in ((QuadInt(1, 0, tag), [1, 0]), (QuadInt(0, 1, tag), [0, 1])):
        prod = x * basis
        assert il.matvec(blk, vec) == [prod.a, prod.b]


def test_restriction_of_scalars_is_multiplicative():
    R = t.restrict_scalars
    assert R(t.qmatmul(t.G_ETA, t.H_TILDE)) == il.matmul(R(t.G_ETA), R(t.H_TILDE))
    assert il.det(R(t.G_ETA)) == t.qdet(t.G_ETA).norm()


@given(st.lists(st.integers(-50, 50), min_size=6, max_size=6), st.integers(1, 30), st.integers(-5, 5))
def test_torsion_points_are_canonical(num, N, k):
    p = t.TorsionPoint.of(num, N)
    shifted = t.TorsionPoint.of([x + k * N for x in num], N)
    assert p == shifted
    assert all(0 <= x < p.denominator for x in p.numerator)
    assert p.scale(p.order()).is_zero()
    assert t.TorsionPoint.from_fractions([Fraction(x, N) for x in num]) == p


def test_g_eta_fixed_subgroup_matches_enumeration():
    R = t.e_eta_cube_model().real_matrix("g_eta")
    fs = t.fixed_set_of_matrix(R)
    assert fs.order == 7 and fs.dimension == 0
    assert _brute_fixed_count(R, 7) == 7
    assert t.ETA_FIXED_GENERATOR in t.subgroup_elements(fs.generators)
    assert t.is_fixed(t.ETA_FIXED_GENERATOR, R)


def test_omega_fixed_subgroup_matches_enumeration():
    R = t.e_omega_cube_model().real_matrix("omega")
    assert t.fixed_set_of_matrix(R).order == 27
    assert _brute_fixed_count(R, 3) == 27


def test_h_tilde_fixes_the_first_factor():
    fs = t.fixed_subgroup(t.e_eta_cube_model(), "h_tilde")
    assert fs.dimension == 2 and fs.order == 1
    assert all(v[2:] == [0, 0, 0, 0] for v in fs.kernel_basis)
    assert abs(il.det([v[:2] for v in fs.kernel_basis])) == 1


def test_a_mu_fixed_points():
    fs = t.fixed_subgroup(t.a_mu_model(), "m_mu")
    assert fs.order == 7 and fs.dimension == 0


def test_alpha_truth_table():
    res = t.verify_alpha_claims()
    assert res["six_term_expression_fixed"] is True
    assert res["first_expression_fixed"] is False
    assert res["h_sends_alpha_to_2alpha"] is True
    assert res["matches_eta_fixed_generator"] is True


def test_lattice_integrality_of_generators():
    assert t.r_lattice_integrality() == {"g": True, "h": True, "r": False}


def test_eta_embedding_is_in_upper_half_plane():
    tau = to_complex(t.from_eta_coordinates([0, 1, 0, 0, 0, 0]))
    assert abs(tau - complex(-0.5, 7 ** 0.5 / 2)) < 1e-9
