import itertools

import numpy as np
import pytest

from conftest import to_complex
from kummer_cy import klein as k
from kummer_cy.cyclotomic import ONE, ZERO, Cyc


def _numeric(M):
    return np.array([[to_complex(x) for x in row] for row in M])


def _numeric_closure(gens):
    """Group generated by complex matrices; elements keyed by rounded entries."""
    key = lambda A: tuple(np.round(A, 6).ravel().tolist())
    seen = {key(np.eye(3)): np.eye(3)}
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for A in frontier:
            for G in gens:
                B = A @ G
                if key(B) not in seen:
                    seen[key(B)] = B
                    nxt.append(B)
        frontier = nxt
    return seen


def test_group_orders_agree_with_floating_point_closure():
    gens = k.klein_generators()
    numeric = {n: _numeric(M) for n, M in gens.items()}
    assert len(_numeric_closure([numeric["g"], numeric["h"]])) == 21
    assert len(_numeric_closure(list(numeric.values()))) == 168


def test_generators_are_unitary():
    for M in k.klein_generators().values():
        A = _numeric(M)
        assert np.allclose(A @ A.conj().T, np.eye(3))


def test_presentation():
    res = k.verify_group_presentation()
    assert all(res["relations"].values())
    assert (res["order_gh"], res["order_ghr"]) == (21, 168)
    assert res["dets_one"]


def test_quartic_is_invariant_and_a_non_invariant_is_detected():
    g = k.klein_generators()["g"]
    assert k.quartic_invariance(g)
    twist = k.mat([[Cyc.mu(1), 0, 0], [0, 1, 0], [0, 0, 1]])
    assert not k.quartic_invariance(twist)


def test_named_points_lie_on_the_quartic():
    for P in k.NAMED_POINTS.values():
        assert k.eval_phi4(P) == 0
    assert k.eval_phi4((1, 1, 1)) == 3


@pytest.mark.parametrize(
    "q, expected",
    [("q0", {"q0": 3, "q1": 1}), ("q1", {"q1": 3, "qinf": 1}), ("qinf", {"qinf": 3, "q0": 1})],
)
def test_tangent_divisors(q, expected):
    td = k.tangent_divisor(q)
    assert td["divisor"] == k.CurveDivisor.of(expected)
    assert td["degree"] == 4 and td["residual_degree"] == 0


def test_fixed_point_relations():
    res = k.phiq_identities()
    assert all(res["identities"].values())
    assert res["s3_size"] == 10 and res["class_count"] == 7
    assert res["pairs_match"] and res["singletons_match"]


def test_coordinate_maps_and_pullbacks():
    assert all(k.coordinate_maps().values())
    mu = Cyc.mu
    assert k.pullback_differentials("g") == ((mu(4), ZERO, ZERO), (ZERO, mu(2), ZERO), (ZERO, ZERO, mu(1)))
    assert k.pullback_differentials("h") == ((ZERO, ZERO, ONE), (ONE, ZERO, ZERO), (ZERO, ONE, ZERO))


def _brute_projective_count(p):
    pts = set()
    for v in itertools.product(range(p), repeat=3):
        if any(v) and k.eval_phi4(v) % p == 0:
            pts.add(k.ProjPoint.of(v, p).coords)
    return len(pts)


@pytest.mark.parametrize("p", [2, 3, 5, 11, 13])
def test_quartic_point_count_matches_brute_force(p):
    assert k.count_points_quartic(p) == _brute_projective_count(p)


@pytest.mark.parametrize("p", [13, 29])
def test_quartic_count_is_independent_of_chunking(p):
    chunks = [range(0, 5), range(5, p)]
    assert sum(k.count_points_quartic_chunk(p, c) for c in chunks) + 2 == k.count_points_quartic(p)


def test_quartic_count_respects_weil_bound():
    for p in (2, 3, 5, 11, 13, 17, 19, 23):
        assert abs(p + 1 - k.count_points_quartic(p)) <= 6 * p ** 0.5
