import math

import numpy as np
import pytest

import moranlab as ml
from moranlab.engine import derive_run_seed
from moranlab.errors import ParameterError, StateError, StructureError

from conftest import random_connected_graphs

BD = ml.ProcessParams(2.0)
DB = ml.ProcessParams(2.0, ml.Variant.DEATH_BIRTH)


def test_transition_probs_triangle_bd():
    g = ml.complete_graph(3)
    st = ml.MutantState(g, BD, [0])
    p_plus, p_minus = ml.transition_probs(g, st, BD)
    assert p_plus == pytest.approx(0.5, abs=1e-14)
    assert p_minus == pytest.approx(0.25, abs=1e-14)


def test_transition_probs_triangle_db():
    g = ml.complete_graph(3)
    st = ml.MutantState(g, DB, [0])
    p_plus, p_minus = ml.transition_probs(g, st, DB)
    assert p_plus == pytest.approx(4.0 / 9.0, abs=1e-14)
    assert p_minus == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_transition_probs_k2():
    g = ml.complete_graph(2)
    st = ml.MutantState(g, BD, [0])
    p_plus, p_minus = ml.transition_probs(g, st, BD)
    assert p_plus == pytest.approx(2.0 / 3.0)
    assert p_minus == pytest.approx(1.0 / 3.0)


def test_transition_probs_absorbing_states():
    g = ml.complete_graph(3)
    assert ml.transition_probs(g, ml.MutantState(g, BD), BD) == (0.0, 0.0)
    assert ml.transition_probs(g, ml.MutantState(g, BD, [0, 1, 2]), BD) == (0.0, 0.0)


@pytest.mark.parametrize("params", [BD, DB, ml.ProcessParams(0.7),
                                    ml.ProcessParams(0.7, ml.Variant.DEATH_BIRTH)])
def test_incremental_aggregates_match_recompute(params):
    g = ml.generate_gnp(60, 0.12, 21)
    assert g.is_connected()
    rng = np.random.default_rng(5)
    st = ml.MutantState(g, params, [0])
    for step in range(2000):
        if st.size in (0, g.n):
            st = ml.MutantState(g, params, [int(rng.integers(g.n))])
        p_plus, p_minus = ml.transition_probs(g, st, params)
        assert p_plus >= 0.0 and p_minus >= 0.0 and p_plus + p_minus <= 1.0 + 1e-12
        assert (p_plus + p_minus > 0.0) == (0 < st.size < g.n)
        ml.step_active(g, st, params, rng)
        up, down = st.recompute_aggregates()
        scale = max(1.0, abs(up), abs(down))
        assert abs(st.agg_up - up) / scale < 1e-9
        assert abs(st.agg_down - down) / scale < 1e-9


def test_step_active_changes_size_by_one():
    g = ml.generate_gnp(30, 0.2, 9)
    rng = np.random.default_rng(0)
    st = ml.MutantState(g, BD, [3])
    for _ in range(200):
        if st.size in (0, g.n):
            break
        before = st.size
        ml.step_active(g, st, BD, rng)
        assert abs(st.size - before) == 1


def test_step_active_rejects_absorbing_and_disconnected():
    g = ml.complete_graph(3)
    with pytest.raises(StateError):
        ml.step_active(g, ml.MutantState(g, BD), BD, np.random.default_rng(0))
    dis = ml.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(StructureError):
        ml.step_active(dis, ml.MutantState(dis, BD, [0]), BD, np.random.default_rng(0))


def test_path_shrink_recolors_the_boundary_mutant():
    # on a-b-c with X={a,b}, the only reproducing non-mutant is c, so every
    # shrink event flips b
    g = ml.path_graph(3)
    rng = np.random.default_rng(11)
    shrinks = 0
    for _ in range(400):
        st = ml.MutantState(g, BD, [0, 1])
        ml.step_active(g, st, BD, rng)
        if st.size == 1:
            shrinks += 1
            assert st.x == frozenset([0])
    assert shrinks > 20


def test_star_grow_from_center_uniform_over_leaves():
    g = ml.star_graph(6)
    rng = np.random.default_rng(3)
    counts = np.zeros(7)
    for _ in range(3000):
        st = ml.MutantState(g, BD, [0])
        ml.step_active(g, st, BD, rng)
        assert st.size == 2  # the center cannot leave before any leaf joins
        (leaf,) = st.x - {0}
        counts[leaf] += 1
    expected = 3000 / 6.0
    assert np.all(np.abs(counts[1:] - expected) < 5 * math.sqrt(expected))


def test_run_single_vertex_and_one_step_cap():
    assert ml.run(ml.Graph(1, []), 0, BD, seed=1).terminal is ml.Terminal.FIXATION
    out = ml.run(ml.complete_graph(2), 0, BD, seed=7, max_active_steps=1)
    assert out.terminal in (ml.Terminal.EXTINCTION, ml.Terminal.FIXATION)
    assert out.active_steps <= 1
    with pytest.raises(ParameterError):
        ml.run(ml.complete_graph(2), 0, BD, seed=7, max_active_steps=0)


def test_run_k2_fixation_frequency():
    g = ml.complete_graph(2)
    est = ml.estimate_fixation(g, 0, BD, 50_000, 31337)
    sd = math.sqrt((2.0 / 3.0) * (1.0 / 3.0) / 50_000)
    assert abs(est.p_hat - 2.0 / 3.0) < 3 * sd


def test_estimate_complete_graph_neutral():
    g = ml.complete_graph(5)
    est = ml.estimate_fixation(g, 2, ml.ProcessParams(1.0), 100_000, 99)
    sd = math.sqrt(0.2 * 0.8 / 100_000)
    assert abs(est.p_hat - 0.2) < 3 * sd


def test_estimate_single_run_and_validation():
    g = ml.complete_graph(3)
    est = ml.estimate_fixation(g, 0, BD, 1, 5)
    assert est.p_hat in (0.0, 1.0)
    assert est.ci_low <= est.p_hat <= est.ci_high
    with pytest.raises(ParameterError):
        ml.estimate_fixation(g, 0, BD, 0, 5)
    with pytest.raises(StructureError):
        ml.estimate_fixation(ml.from_edges(4, [(0, 1), (2, 3)]), 0, BD, 10, 5)


def test_estimate_deterministic_and_thread_invariant():
    g = random_connected_graphs(1, 8, 8, seed0=55)[0]
    a = ml.estimate_fixation(g, 0, BD, 600, 123, threads=1)
    b = ml.estimate_fixation(g, 0, BD, 600, 123, threads=1)
    c = ml.estimate_fixation(g, 0, BD, 600, 123, threads=3)
    assert a == b == c
    d = ml.estimate_fixation(g, 0, BD, 600, 124)
    assert d.fixations != a.fixations or d.p_hat != a.p_hat


def test_single_step_grow_law_triangle():
    # one active step from X={v} on K3: grow w.p. p+/(p+ + p-) = 2/3;
    # growth leaves the chain unabsorbed (timeout at cap 1)
    g = ml.complete_graph(3)
    grew = 0
    trials = 100_000
    for r in range(trials):
        out = ml.run(g, 0, BD, seed=derive_run_seed(2024, r), max_active_steps=1)
        grew += out.terminal is ml.Terminal.TIMEOUT
    sd = math.sqrt((2.0 / 3.0) * (1.0 / 3.0) / trials)
    assert abs(grew / trials - 2.0 / 3.0) < 3 * sd


def test_kernel_agrees_with_reference_stepper():
    # the jitted episode-collapsed kernel and the plain python jump chain are
    # two implementations of the same law; compare fixation frequencies
    for g in (ml.star_graph(5), ml.path_graph(4)):
        for params in (BD, DB):
            runs = 4000
            rng = np.random.default_rng(17)
            ref_fix = 0
            for _ in range(runs):
                st = ml.MutantState(g, params, [1])
                while 0 < st.size < g.n:
                    ml.step_active(g, st, params, rng)
                ref_fix += st.size == g.n
            est = ml.estimate_fixation(g, 1, params, runs, 2718)
            p_ref = ref_fix / runs
            pooled = (ref_fix + est.fixations) / (2 * runs)
            sd = math.sqrt(2 * pooled * (1 - pooled) / runs)
            assert abs(p_ref - est.p_hat) < 4 * max(sd, 1e-3)


def test_raw_steps_accounting():
    g = ml.complete_graph(3)
    # from any state of K3, p+ + p- = 3/4 at |X|=1 or 2, so raw >= active and
    # the mean ratio should approach 4/3
    ratios = []
    for r in range(300):
        out = ml.run(g, 0, BD, seed=derive_run_seed(55, r), track_raw_steps=True)
        assert out.raw_steps is not None and out.raw_steps >= out.active_steps
        ratios.append(out.raw_steps / max(out.active_steps, 1))
    assert 1.1 < np.mean(ratios) < 1.6


def test_timeout_reported_and_excluded():
    g = ml.generate_gnp(40, 0.2, 3)
    assert g.is_connected()
    est = ml.estimate_fixation(g, 0, BD, 50, 7, max_active_steps=2)
    assert est.timeouts > 0
    assert est.warning
    completed = est.runs - est.timeouts
    if completed:
        assert est.p_hat == est.fixations / completed


def test_outcome_invariant_extinction_fixation():
    g = ml.complete_graph(2)
    for r in range(50):
        out = ml.run(g, 0, BD, seed=derive_run_seed(9, r))
        assert out.terminal in (ml.Terminal.EXTINCTION, ml.Terminal.FIXATION)
        assert out.active_steps >= 1
