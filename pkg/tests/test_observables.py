import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cpbnr.dynamics import AmplitudeState, IntegratorConfig, evolve_state, initial_state
from cpbnr.model import ModelParams, Zero, cat_coefficients
from cpbnr.observables import (
    LN2,
    ConsistencyError,
    ObservableSeries,
    eigenvalues,
    entropy,
    entropy_from_products,
    inner_products,
    inversion,
    series,
)


def state(ce, cg, t=0.0):
    return AmplitudeState(t, np.asarray(ce, dtype=complex), np.asarray(cg, dtype=complex))


def random_states(max_len=12):
    comps = st.floats(-1.0, 1.0)
    vec = st.integers(2, max_len).flatmap(
        lambda n: st.tuples(arrays(float, 4 * n, elements=comps), st.floats(1e-3, 1.0)))

    def build(args):
        raw, norm = args
        n = len(raw) // 4
        ce = raw[:n] + 1j * raw[n:2 * n]
        cg = raw[2 * n:3 * n] + 1j * raw[3 * n:]
        total = np.sum(np.abs(ce) ** 2 + np.abs(cg) ** 2)
        if total == 0:
            ce[0] = 1.0
            total = 1.0
        scale = math.sqrt(norm / total)
        return state(ce * scale, cg * scale)

    return vec.map(build)


def test_initial_products():
    p = inner_products(initial_state(cat_coefficients(5.0, 75)))
    assert p.r11 == pytest.approx(1.0, abs=1e-12)
    assert p.r22 == 0.0 and p.r12 == 0.0


def test_single_block_products_have_no_overlap():
    s = state([1 / math.sqrt(2), 0, 0], [-1j / math.sqrt(2), 0, 0])
    p = inner_products(s)
    assert p.r11 == pytest.approx(0.5) and p.r22 == pytest.approx(0.5)
    assert p.r12 == 0


def test_cross_term_index_pairing():
    # C_{e,1} overlaps C_{g,1} (stored at cg[0])
    s = state([0, 0.6, 0], [0.8j, 0, 0])
    assert inner_products(s).r12 == pytest.approx(0.6 * 0.8j)


@given(random_states())
@settings(max_examples=60)
def test_cross_term_equals_natural_pairing(s):
    # full C_g vector with C_{g,0} = 0 prepended: sum_m C*_{e,m} C_{g,m}
    cg_full = np.concatenate([[0.0], s.cg])
    ce_full = np.concatenate([s.ce, [0.0]])
    natural = np.sum(np.conj(ce_full) * cg_full)
    # the stored ladder ends at C_{g,n_max+1}, which has no partner inside the truncation
    assert inner_products(s).r12 == pytest.approx(natural, abs=1e-14)


@given(random_states())
@settings(max_examples=80)
def test_reduced_state_properties(s):
    p = inner_products(s)
    assert p.r11 >= 0 and p.r22 >= 0
    assert abs(p.r12) ** 2 <= p.r11 * p.r22 + 1e-15
    lp, lm = eigenvalues(p.r11, p.r22, p.r12)
    assert lp + lm == pytest.approx(1.0, abs=1e-15)
    assert -1e-12 <= lm <= lp <= 1.0 + 1e-12
    S = entropy(s)
    assert 0.0 <= S <= LN2
    assert -1.0 - 1e-12 <= inversion(s) <= 1.0 + 1e-12
    assert inversion(s) == pytest.approx(p.r11 - p.r22, abs=1e-15)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 0.5), st.floats(0, 2 * math.pi))
def test_entropy_swap_symmetry(a, b, c, phi):
    r12 = c * math.sqrt(a * b) * complex(math.cos(phi), math.sin(phi))
    assert entropy_from_products(a, b, r12) == entropy_from_products(b, a, r12)


def test_entropy_extremes():
    assert entropy_from_products(1.0, 0.0, 0.0) == 0.0
    assert entropy_from_products(0.5, 0.5, 0.0) == pytest.approx(LN2, abs=1e-15)
    assert entropy(initial_state(cat_coefficients(5.0, 75))) <= 1e-12


def test_clamping_and_consistency_error():
    assert entropy_from_products(1.0 + 5e-13, 0.0, 0.0) == 0.0
    with pytest.raises(ConsistencyError):
        entropy_from_products(1.1, 0.0, 0.0)


def test_renormalize_switch():
    s = state([0.3, 0.0], [0.1j, 0.0])
    plain = entropy(s)
    renorm = entropy(s, renormalize=True)
    x = 0.09 / 0.1
    assert renorm == pytest.approx(-(x * math.log(x) + (1 - x) * math.log(1 - x)))
    lp = 0.5 * (1 + 0.08)
    assert plain == pytest.approx(-(lp * math.log(lp) + (1 - lp) * math.log(1 - lp)))


def test_initial_inversion():
    assert inversion(initial_state(cat_coefficients(3.0, 60))) == pytest.approx(1.0, abs=1e-12)


def test_single_state_series():
    obs = series([initial_state(cat_coefficients(0.0, 5))])
    assert list(obs.entropy) == [0.0] and list(obs.inversion) == [1.0] and list(obs.norm2) == [1.0]


def test_series_of_list_matches_trajectory():
    traj = evolve_state(ModelParams(alpha=2.0, gamma=0.05), Zero(), IntegratorConfig(t_max=5.0, n_samples=51))
    a = series(traj)
    b = series(list(traj))
    np.testing.assert_array_equal(a.entropy, b.entropy)
    np.testing.assert_array_equal(a.inversion, b.inversion)


def test_rabi_inversion():
    traj = evolve_state(ModelParams(alpha=0.0), Zero(), IntegratorConfig(t_max=20.0, n_samples=401))
    obs = series(traj)
    np.testing.assert_allclose(obs.inversion, np.cos(2 * obs.tau), atol=1e-8)


def test_strong_decay_drains_excited_population():
    traj = evolve_state(ModelParams(alpha=0.0, gamma=20.0), Zero(), IntegratorConfig(t_max=40.0, n_samples=81))
    obs = series(traj)
    r22 = (np.abs(traj.cg) ** 2).sum(axis=1)
    late = obs.tau >= 10
    assert np.all(obs.inversion[late] <= 0)
    np.testing.assert_allclose(obs.inversion[late], -r22[late], rtol=0.02)


def test_resonant_cat_trajectory_products():
    traj = evolve_state(ModelParams(gamma=0.0), Zero(), IntegratorConfig(t_max=10.0, n_samples=11))
    p = inner_products(traj[-1])
    assert p.r11 + p.r22 == pytest.approx(1.0, abs=1e-9)


def test_series_validation():
    with pytest.raises(ValueError):
        ObservableSeries(np.array([0.0, 0.0]), np.zeros(2), np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        ObservableSeries(np.array([0.0, 1.0]), np.zeros(3), np.zeros(2), np.zeros(2))
