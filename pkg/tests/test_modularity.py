import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummer_cy import modularity as m
from kummer_cy.arith import primes_up_to
from kummer_cy.finitefield import CubicExtension, PrimeField, field_of_order

MODELS = [m.OMEGA_CUBIC, m.ETA_WEIERSTRASS]
ids = lambda model: model.kind.value


@pytest.fixture(scope="module")
def tables():
    return {model.kind: m.frobenius_table(model, 200) for model in MODELS}


# -- finite fields -----------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_cubic_extension_is_a_field(p):
    F = CubicExtension(p)
    q = F.q
    for a in range(1, q):
        assert F.pow(a, q - 1) == 1
    frob = lambda x: F.pow(x, p)
    for a in range(0, q, max(1, q // 40)):
        for b in range(0, q, max(1, q // 40)):
            assert frob(F.add(a, b)) == F.add(frob(a), frob(b))
            assert frob(F.mul(a, b)) == F.mul(frob(a), frob(b))
    fixed = [x for x in range(q) if frob(x) == x]
    assert fixed == list(range(p))  # the prime subfield


@given(st.sampled_from([2, 3, 5]), st.data())
def test_cubic_extension_ring_axioms(p, data):
    F = CubicExtension(p)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0 and F.sub(a, b) == F.add(a, F.neg(b))


def test_field_of_order():
    assert isinstance(field_of_order(11), PrimeField)
    assert isinstance(field_of_order(27), CubicExtension)
    with pytest.raises(ValueError):
        field_of_order(9)


# -- point counts ------------------------------------------------------------


@pytest.mark.parametrize("model", MODELS, ids=ids)
@pytest.mark.parametrize("q", [5, 11, 13, 17, 8, 125])
def test_histogram_count_matches_brute_force(model, q):
    if q % 2 == 0 and model is m.ETA_WEIERSTRASS:
        pytest.skip("the Weierstrass model is singular in characteristic 2")
    assert m.count_points(model, q) == m.count_points_brute(model, q)


def test_bad_primes():
    assert m.bad_primes(m.OMEGA_CUBIC, 200) == [3]
    assert m.bad_primes(m.ETA_WEIERSTRASS, 200) == [2, 7]
    with pytest.raises(m.BadReductionError):
        m.count_points(m.OMEGA_CUBIC, 3)


def _cm_norm_traces(p, d):
    """All |A| with 4p = A^2 + d B^2, an independent description of |a_p| at split p."""
    return {A for A in range(int(2 * math.isqrt(p)) + 2) for B in range(1, 2 * math.isqrt(p) + 2) if A * A + d * B * B == 4 * p}


@pytest.mark.parametrize("model,d", [(m.OMEGA_CUBIC, 3), (m.ETA_WEIERSTRASS, 7)], ids=["omega", "eta"])
def test_traces_are_cm_norms(tables, model, d):
    table, _ = tables[model.kind]
    for p, fd in table.items():
        assert fd.hasse_ok and fd.inert_ok
        if fd.split.split:
            assert abs(fd.a_p) in _cm_norm_traces(p, d)
        else:
            assert fd.a_p == 0


def test_known_small_counts():
    assert m.count_points(m.OMEGA_CUBIC, 2) == 3
    assert m.count_points(m.OMEGA_CUBIC, 8) == 9
    assert m.count_points(m.ETA_WEIERSTRASS, 11) == 8


def test_table_is_independent_of_worker_count():
    serial = m.frobenius_table(m.ETA_WEIERSTRASS, 80, jobs=1)
    parallel = m.frobenius_table(m.ETA_WEIERSTRASS, 80, jobs=3)
    assert serial == parallel


def test_jobs_default_reads_environment(monkeypatch):
    monkeypatch.setenv(m.JOBS_ENV, "3")
    assert m.default_jobs() == 3
    monkeypatch.setenv(m.JOBS_ENV, "nonsense")
    assert m.default_jobs() == 1


# -- calibration and Euler factors ------------------------------------------


@pytest.mark.parametrize("model", MODELS, ids=ids)
def test_calibration_has_no_held_out_mismatch(tables, model):
    table, _ = tables[model.kind]
    cal = m.calibrate_grossencharacter(model, table, 50)
    assert cal.ok and cal.mismatches == [] and cal.unique_trace_class
    assert all(p > 50 for p in cal.test_primes) and all(p <= 50 for p in cal.train_primes)
    for fd in table.values():
        if fd.split.split:
            assert cal.rule.predict(fd.split) == fd.a_p
            assert m.chi_cubed_check(cal.rule, fd)


@pytest.mark.parametrize("model", MODELS, ids=ids)
def test_h3_euler_factor(tables, model):
    table, _ = tables[model.kind]
    for fd in table.values():
        ef = m.euler_factor_h3(fd)
        assert ef.cubes_of_roots_ok()
        assert ef.b_p == fd.a_p ** 3 - 3 * fd.p * fd.a_p


@pytest.mark.parametrize("model,p", [(m.OMEGA_CUBIC, 2), (m.OMEGA_CUBIC, 5), (m.ETA_WEIERSTRASS, 3), (m.ETA_WEIERSTRASS, 5)])
def test_cube_field_count(model, p):
    assert m.cube_count_check(model, p)["matches"]


# -- Dirichlet series --------------------------------------------------------


@pytest.fixture(scope="module")
def eta_coefficients(tables):
    table, bad = tables[m.ETA_WEIERSTRASS.kind]
    traces = {p: fd.a_p for p, fd in table.items()}
    return m.dirichlet_coefficients(traces, 200, 1, {p: 0 for p in bad}), traces


def test_dirichlet_prime_powers_and_products(eta_coefficients):
    a, traces = eta_coefficients
    for p in primes_up_to(14):
        if p in traces:
            assert a[p * p] == traces[p] ** 2 - p
    for x in range(2, 15):
        for y in range(2, 15):
            if math.gcd(x, y) == 1 and x * y <= 200:
                assert a[x * y] == a[x] * a[y]


def test_dirichlet_leading_coefficients():
    traces = {2: 1, 3: 0, 5: 0, 11: 4}
    a = m.dirichlet_coefficients(traces, 11, 1, {7: 0})
    assert a[1:] == [1, 1, 0, -1, 0, 0, 0, -3, -3, 0, 4]


def test_dirichlet_requires_every_prime():
    with pytest.raises(m.MissingPrimeError):
        m.dirichlet_coefficients({2: 1}, 10, 1)


def test_qexp_comparison(tmp_path, eta_coefficients):
    a, _ = eta_coefficients
    path = tmp_path / "qexp.txt"
    path.write_text("# header\n" + "\n".join(str(x) for x in a[1:30]) + "\n")
    ext = m.read_qexp_file(path)
    res = m.compare_qexp(ext, a, [2, 7])
    assert res["mismatches"] == [] and res["compared"] + res["skipped_bad"] == 29
    ext[11] += 1
    assert m.compare_qexp(ext, a, [2, 7])["mismatches"] == [11]


# -- Klein quartic trace comparison -----------------------------------------


def test_klein_trace_is_a_cubic_twist(tables):
    table, _ = tables[m.ETA_WEIERSTRASS.kind]
    res = m.klein_jacobian_trace_check(100, table)
    assert res["cubic_twist_holds"] and res["weil_ok"]
    assert not res["all_equal"]
    assert res["unequal_primes"] == [11, 23, 37, 53, 67, 79]
    assert res["quartic_only_primes"] == [2]
