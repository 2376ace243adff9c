import math

import numpy as np
import pytest

import moranlab as ml
from moranlab.errors import ParameterError


def test_gnp_p_one_is_complete():
    g = ml.generate_gnp(3, 1.0, 0)
    assert g.edge_count == 3
    assert all(g.degree(v) == 2 for v in range(3))


def test_gnp_p_zero_is_empty():
    g = ml.generate_gnp(5, 0.0, 9)
    assert g.edge_count == 0


def test_gnp_edge_count_within_binomial_band():
    # mean C(1000,2) * 0.01 = 4995, sd = sqrt(499500 * 0.01 * 0.99) = 70.32
    g = ml.generate_gnp(1000, 0.01, 42)
    assert abs(g.edge_count - 4995.0) <= 4 * 70.32104948022321


def test_gnp_deterministic_and_seed_sensitive():
    a = ml.generate_gnp(100, 0.1, 1)
    b = ml.generate_gnp(100, 0.1, 1)
    c = ml.generate_gnp(100, 0.1, 2)
    assert a.edges() == b.edges()
    assert a.edges() != c.edges()


@pytest.mark.parametrize("seed", [3, 17, 99])
def test_gnp_structural_invariants(seed):
    g = ml.generate_gnp(300, 0.03, seed)
    assert int(g.degrees.sum()) == 2 * g.edge_count
    for v in range(g.n):
        nb = g.neighbors(v)
        assert np.all(np.diff(nb) > 0)  # sorted, duplicate-free
        assert v not in nb  # no self-loops
        for u in nb:
            assert g.has_edge(int(u), v)  # symmetry


def test_gnp_rejects_bad_probability():
    with pytest.raises(ParameterError):
        ml.generate_gnp(10, 1.5, 0)
    with pytest.raises(ParameterError):
        ml.generate_gnp(10, -0.1, 0)
    with pytest.raises(ParameterError):
        ml.generate_gnp(0, 0.5, 0)


def test_thresholds_frozen_values():
    n = 3000
    p = (math.log(n) + 2.0) / n
    params = ml.derive_thresholds(n, p, eps_override=0.3)
    assert params.np_nominal == pytest.approx(10.006367567650246, abs=1e-12)
    assert params.omega0 == pytest.approx(0.003910058253474555, rel=1e-12)
    assert params.s0_cutoff == pytest.approx(params.np_nominal / 10.0)
    assert params.i_eps[0] < params.i_eps[1]
    # default eps clamps to 1 at this size (1/log log log n > 1)
    assert ml.derive_thresholds(n, p).eps == 1.0


def test_thresholds_np_equal_e():
    n = 1000
    p = math.e / n
    params = ml.derive_thresholds(n, p, eps_override=0.4)
    assert params.omega0 == pytest.approx(0.4 ** 2 * math.e / 100.0, rel=1e-12)


def test_thresholds_n1_formula():
    params = ml.derive_thresholds(10 ** 6, 20.0 / 10 ** 6, eps_override=0.3)
    assert params.n1 == pytest.approx(776393.202250021, abs=1e-6)


def test_thresholds_reject_small_np():
    with pytest.raises(ParameterError):
        ml.derive_thresholds(100, 0.01)
    with pytest.raises(ParameterError):
        ml.derive_thresholds(100, 1.0 / 100.0)


def test_thresholds_json_echo():
    params = ml.derive_thresholds(3000, 10.0 / 3000.0, eps_override=0.3)
    d = params.to_json_dict()
    assert set(d) == {"eps", "omega0", "n1", "s0_cutoff"}


def test_classify_star():
    g = ml.star_graph(9)
    params = ml.derive_thresholds(10, 1.0, eps_override=0.3)  # np_nominal = 10
    classes = ml.classify(g, params)
    leaves = set(range(1, 10))
    assert classes.s0 == frozenset(leaves)  # d=1 <= 1
    assert classes.s1 == frozenset(leaves)  # 1 outside [7, 13]
    assert 0 not in classes.s1  # center d=9 inside [7, 13]


def test_classify_triangle_all_typical():
    g = ml.complete_graph(3)
    params = ml.derive_thresholds(3, 2.0 / 3.0, eps_override=0.5)  # np_nominal = 2
    classes = ml.classify(g, params)
    assert classes.s0 == frozenset()
    assert classes.s1 == frozenset()


def test_classify_wide_band_empties_s1():
    g = ml.generate_gnp(50, 0.3, 5)
    params = ml.derive_thresholds(50, 0.3, eps_override=1.0)
    # I_eps = [0, 2 np] covers every possible degree up to the max observed
    if g.max_degree() <= params.i_eps[1]:
        assert ml.classify(g, params).s1 == frozenset()


def test_classify_is_pure_function_of_degrees():
    g = ml.generate_gnp(40, 0.2, 11)
    perm = np.random.default_rng(0).permutation(40)
    relabeled = ml.from_edges(40, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
    params = ml.derive_thresholds(40, 0.2, eps_override=0.3)
    c1 = ml.classify(g, params)
    c2 = ml.classify(relabeled, params)
    assert {int(perm[v]) for v in c1.s0} == set(c2.s0)
    assert {int(perm[v]) for v in c1.s1} == set(c2.s1)


def test_bfs_distances_path():
    g = ml.path_graph(3)
    d = ml.bfs_distances(g, 0)
    assert list(d) == [0, 1, 2]
    assert ml.bfs_distances(g, 1)[1] == 0


def test_bfs_distances_disconnected_sentinel():
    g = ml.from_edges(4, [(0, 1), (2, 3)])
    d = ml.bfs_distances(g, 0)
    assert d[2] == ml.UNREACHABLE and d[3] == ml.UNREACHABLE


def test_bfs_source_out_of_range():
    with pytest.raises(ParameterError):
        ml.bfs_distances(ml.path_graph(3), 5)


def test_edge_list_round_trip(tmp_path):
    g = ml.generate_gnp(30, 0.2, 8)
    path = tmp_path / "g.edges"
    ml.save_edge_list(g, str(path))
    text = path.read_text().splitlines()
    assert text[0] == f"{g.n} {g.edge_count}"
    g2 = ml.load_edge_list(str(path))
    assert g2.edges() == g.edges()


def test_edge_list_rejects_wrong_count(tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("3 2\n0 1\n")
    with pytest.raises(ParameterError):
        ml.load_edge_list(str(path))


def test_graph_rejects_duplicates_and_loops():
    with pytest.raises(ParameterError):
        ml.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(ParameterError):
        ml.from_edges(3, [(1, 1)])
