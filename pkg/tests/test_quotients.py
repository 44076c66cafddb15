import itertools

from hypothesis import given
from hypothesis import strategies as st

from kummer_cy import quotients as q


def test_index_set_is_all_cubic_exponents():
    brute = {n for n in itertools.product(range(4), repeat=3) if sum(n) == 3}
    assert set(q.index_set()) == brute and len(q.index_set()) == 10


def test_invariant_relations():
    res = q.z3_invariant_presentation()
    assert res["count"] == 10 and res["all_identities"]


def test_a_false_relation_is_detected():
    rel = q.BinomialRelation((((1, 1, 1), 3),), (((3, 0, 0), 2),))
    images = {n: q.z_monomial(n) for n in q.index_set()}
    assert not rel.is_identity(images, 3)


def test_toric_charts():
    res = q.toric_charts_z3()
    assert res["all_ok"]
    assert res["fan"]["covers"]
    assert set(res["charts"]) == {"U1", "U2", "U3"}
    for chart in res["charts"].values():
        assert chart["unimodular"] and chart["crepant"] and chart["rays_in_N"]


def test_birational_model():
    res = q.kummer_z3_birational_model()
    assert res["count"] == 7 and res["relations_hold"] and res["omega_invariant"]


def test_sigma_box_matches_enumeration():
    brute = [n for n in itertools.product(range(7), repeat=3) if (n[0] + 2 * n[1] + 3 * n[2]) % 7 == 0]
    assert sorted(q.sigma_box_exponents()) == sorted(brute)
    assert len(brute) == 49


def test_z7_generators_are_invariant():
    res = q.z7_invariant_generators()
    assert res["box_count"] == 49 and res["all_invariant"]
    assert all(res["symmetric_definitions"].values())
    for g in res["generators"]:
        assert sum(w * e for w, e in zip(q.Z7_WEIGHTS, g.exponents)) % 7 == 0


def test_symmetric_functions():
    assert all(q.symmetric_function_check().values())


weights = st.lists(st.integers(0, 6), min_size=2, max_size=4)


@given(weights, st.integers(2, 7), st.integers(0, 8))
def test_invariant_monomials_match_enumeration(w, n, D):
    brute = {
        e
        for e in itertools.product(range(D + 1), repeat=len(w))
        if sum(e) <= D and sum(a * b for a, b in zip(w, e)) % n == 0
    }
    assert set(q.invariant_monomials(w, n, D)) == brute


@given(weights, st.integers(2, 5), st.integers(1, 6), st.integers(0, 6))
def test_generation_is_monotone_in_the_degree_bound(w, n, D, drop):
    """A generating set at bound D also generates at every smaller bound."""
    gens = q.invariant_monomials(w, n, n)
    gens = [g for i, g in enumerate(gens) if i != drop]
    big = q.verify_invariant_generation(w, n, gens, D)
    if big.generated:
        for d in range(D):
            assert q.verify_invariant_generation(w, n, gens, d).generated
    else:
        cex = big.counterexample
        assert sum(cex) <= D and sum(a * b for a, b in zip(w, cex)) % n == 0


def test_z3_generation_at_default_bound():
    res = q.z3_generation(12)
    assert res.generated and res.invariant_count == 185


def test_missing_generator_produces_counterexample():
    gens = [n for n in q.index_set() if n != (1, 1, 1)]
    res = q.verify_invariant_generation(q.Z3_WEIGHTS, 3, gens, 6)
    assert not res.generated and res.counterexample == (1, 1, 1)
