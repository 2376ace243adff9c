from itertools import combinations

import numpy as np
import pytest

import moranlab as ml
from moranlab.errors import CapacityError, DomainError, ParameterError, StructureError
from moranlab.exact import WalkClosedFormQuery

from conftest import random_connected_graphs


def dense_absorption(graph, s, variant):
    """Independent oracle: dense absorbing-chain solve over explicit subsets.

    Builds the one-step matrix straight from the process definition
    (reproducer choice, then victim/replacement), with no shared code with
    the package solver. Returns (extinction, fixation) vectors indexed by
    subset, plus the subset index map.
    """
    n = graph.n
    verts = list(range(n))
    states = [frozenset(c) for k in range(n + 1) for c in combinations(verts, k)]
    index = {x: i for i, x in enumerate(states)}
    size = len(states)
    P = np.zeros((size, size))
    for x in states:
        i = index[x]
        if len(x) in (0, n):
            P[i, i] = 1.0
            continue
        stay = 1.0
        if variant == "bd":
            w = (s - 1.0) * len(x) + n
            for v in verts:
                nbrs = [int(u) for u in graph.neighbors(v)]
                fit = s if v in x else 1.0
                for u in nbrs:
                    pr = fit / w / len(nbrs)
                    if (u in x) != (v in x):
                        y = x | {u} if v in x else x - {u}
                        P[i, index[y]] += pr
                        stay -= pr
        else:
            for v in verts:
                nbrs = [int(u) for u in graph.neighbors(v)]
                kx = sum(1 for u in nbrs if u in x)
                p_mut = s * kx / (s * kx + (len(nbrs) - kx))
                if v in x:
                    pr = (1.0 - p_mut) / n
                    y = x - {v}
                else:
                    pr = p_mut / n
                    y = x | {v}
                if pr > 0.0:
                    P[i, index[y]] += pr
                    stay -= pr
        P[i, i] += stay
    trans = [i for i, x in enumerate(states) if 0 < len(x) < n]
    empty, full = index[frozenset()], index[frozenset(verts)]
    Q = P[np.ix_(trans, trans)]
    lhs = np.eye(len(trans)) - Q
    b_ext = np.linalg.solve(lhs, P[trans, empty])
    b_fix = np.linalg.solve(lhs, P[trans, full])
    ext = {states[i]: b_ext[k] for k, i in enumerate(trans)}
    fix = {states[i]: b_fix[k] for k, i in enumerate(trans)}
    return ext, fix


@pytest.mark.parametrize("variant", ["bd", "db"])
@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test_solver_matches_dense_oracle(variant, s):
    graphs = [ml.path_graph(4), ml.star_graph(4), ml.cycle_graph(5)]
    graphs += random_connected_graphs(2, 5, 6, seed0=777)
    var = ml.Variant.BIRTH_DEATH if variant == "bd" else ml.Variant.DEATH_BIRTH
    for g in graphs:
        ext, fix = dense_absorption(g, s, variant)
        params = ml.ProcessParams(s, var)
        for v in range(g.n):
            got = ml.exact_fixation(g, v, params)
            assert got == pytest.approx(fix[frozenset([v])], abs=1e-9)
            # complementarity: the only absorbing classes are empty and full
            assert ext[frozenset([v])] + fix[frozenset([v])] == pytest.approx(1.0, abs=1e-9)


def test_complete_graph_classical_value():
    g = ml.complete_graph(4)
    got = ml.exact_fixation(g, 0, ml.ProcessParams(2.0))
    assert got == pytest.approx(8.0 / 15.0, abs=1e-12)


def test_neutral_closed_forms_star():
    g = ml.star_graph(3)
    params = ml.ProcessParams(1.0)
    assert ml.exact_fixation(g, 0, params) == pytest.approx(0.1, abs=1e-10)
    assert ml.exact_fixation(g, 1, params) == pytest.approx(0.3, abs=1e-10)
    db = ml.ProcessParams(1.0, ml.Variant.DEATH_BIRTH)
    want = ml.neutral_db_fixation(g)
    got = ml.exact_fixation_all(g, db)
    assert np.allclose(got, want, atol=1e-10)


def test_single_vertex_fixates():
    assert ml.exact_fixation(ml.Graph(1, []), 0, ml.ProcessParams(2.0)) == 1.0


def test_isothermal_bd_across_regular_graphs():
    params = ml.ProcessParams(2.0)
    vals = []
    for g in (ml.cycle_graph(6), ml.complete_graph(6), ml.complete_bipartite_graph(3, 3)):
        f = ml.exact_fixation_all(g, params)
        assert f.max() - f.min() < 1e-9
        vals.append(f[0])
    target = ml.classical_moran_fixation(6, 2.0)
    assert np.allclose(vals, target, atol=1e-9)


def test_vertex_label_equivariance():
    g = random_connected_graphs(1, 6, 6, seed0=4242)[0]
    perm = np.random.default_rng(3).permutation(g.n)
    relabeled = ml.from_edges(g.n, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
    params = ml.ProcessParams(1.7, ml.Variant.DEATH_BIRTH)
    f = ml.exact_fixation_all(g, params)
    f2 = ml.exact_fixation_all(relabeled, params)
    assert np.allclose(f2[perm], f, atol=1e-9)


def test_fixation_strictly_increasing_in_s():
    for g in (ml.path_graph(5), random_connected_graphs(1, 7, 8, seed0=31)[0]):
        vals = [ml.exact_fixation(g, 0, ml.ProcessParams(s)) for s in (1.0, 1.5, 2.0)]
        assert vals[0] < vals[1] < vals[2]


def test_capacity_and_structure_errors():
    big = ml.complete_graph(17)
    with pytest.raises(CapacityError):
        ml.exact_fixation(big, 0, ml.ProcessParams(2.0))
    disconnected = ml.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(StructureError):
        ml.exact_fixation(disconnected, 0, ml.ProcessParams(2.0))
    with pytest.raises(ParameterError):
        ml.exact_fixation(ml.complete_graph(3), 5, ml.ProcessParams(2.0))


# --- gambler's ruin closed forms ------------------------------------------

def test_gambler_phi_boundaries():
    assert ml.gambler_phi(WalkClosedFormQuery(alpha=0.6, beta=0.4, z0=0, z1=5)) == 1.0
    assert ml.gambler_phi(WalkClosedFormQuery(alpha=0.6, beta=0.4, z0=5, z1=5)) == 0.0


def test_gambler_phi_frozen_and_linear_system():
    q = WalkClosedFormQuery(alpha=2.0 / 3.0, beta=1.0 / 3.0, z0=1, z1=3)
    assert ml.gambler_phi(q) == pytest.approx(3.0 / 7.0, abs=1e-15)
    # independent 2-unknown absorbing solve for states {1, 2}:
    # f1 = b + a f2, f2 = b f1 with a = 2/3 up, b = 1/3 down (f = P(hit 0))
    a, b = 2.0 / 3.0, 1.0 / 3.0
    mat = np.array([[1.0, -a], [-b, 1.0]])
    rhs = np.array([b, 0.0])
    f1 = np.linalg.solve(mat, rhs)[0]
    assert ml.gambler_phi(q) == pytest.approx(f1, abs=1e-14)


def test_gambler_phi_decreasing_in_z0():
    vals = [ml.gambler_phi(WalkClosedFormQuery(alpha=0.7, beta=0.3, z0=z, z1=8))
            for z in range(9)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_gambler_phi_domain_error():
    with pytest.raises(DomainError):
        ml.gambler_phi(WalkClosedFormQuery(alpha=0.4, beta=0.6, z0=1, z1=3))


def test_durations_trivial_and_frozen():
    q0 = WalkClosedFormQuery(alpha=0.6, beta=0.4, a=0, m=5)
    assert ml.oracle_duration(q0) == 0.0
    assert ml.expected_duration(q0) == 0.0
    q1 = WalkClosedFormQuery(alpha=0.77, beta=0.23, a=1, m=2)
    assert ml.oracle_duration(q1) == pytest.approx(1.0, abs=1e-12)
    q = WalkClosedFormQuery(alpha=2.0 / 3.0, beta=1.0 / 3.0, a=1, m=3)
    # oracle: E1 = (1+alpha)/(1-alpha*beta) = 15/7; the printed form gives 57/7
    assert ml.oracle_duration(q) == pytest.approx(15.0 / 7.0, abs=1e-12)
    assert ml.expected_duration(q) == pytest.approx(57.0 / 7.0, abs=1e-12)


def test_duration_sign_convention_exposed_at_a_equals_m():
    q = WalkClosedFormQuery(alpha=0.6, beta=0.4, a=7, m=7)
    assert ml.oracle_duration(q) == 0.0
    assert ml.expected_duration(q) == pytest.approx(2 * 7 / 0.2)


def test_duration_rejects_bad_band():
    with pytest.raises(ParameterError):
        ml.oracle_duration(WalkClosedFormQuery(alpha=0.6, beta=0.4, a=8, m=7))
