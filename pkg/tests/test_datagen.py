import numpy as np
import pytest

from tpds.datagen import (
    STREAM_DATA,
    STREAM_SYSTEM,
    Trajectory,
    assemble,
    make_rng,
    random_data,
    random_system,
    random_tensor,
    simulate,
    simulate_controlled,
    simulated_data,
)
from tpds.decomp import spectral_radius
from tpds.errors import DimensionMismatch, ShapeMismatch
from tpds.tensor3 import t_add, t_product


def test_same_seed_same_tensor():
    a = random_tensor(3, 2, 4, seed=42)
    b = random_tensor(3, 2, 4, seed=42)
    assert np.array_equal(a.data, b.data)
    assert not np.array_equal(a.data, random_tensor(3, 2, 4, seed=43).data)


def test_streams_are_independent():
    first = make_rng(7, STREAM_DATA).standard_normal(5)
    other = make_rng(7, STREAM_SYSTEM).standard_normal(5)
    assert not np.array_equal(first, other)
    assert np.array_equal(first, make_rng(7, STREAM_DATA).standard_normal(5))


def test_uniform_draws_stay_in_range():
    t = random_tensor(4, 4, 8, seed=1, dist='uniform')
    assert np.all(np.abs(t.data) < 1.0)
    with pytest.raises(ValueError):
        random_tensor(2, 2, 2, seed=1, dist='cauchy')


def test_random_system_hits_target_radius():
    a = random_system(3, 5, seed=11, target_radius=0.7)
    assert spectral_radius(a) == pytest.approx(0.7, rel=1e-10)


def test_simulate_follows_the_dynamics():
    a = random_system(2, 4, seed=1, target_radius=0.9)
    x_init = random_tensor(2, 3, 4, seed=2)
    traj = simulate(a, x_init, steps=3)
    assert traj.steps == 3
    for prev, nxt in zip(traj.states, traj.states[1:]):
        assert np.allclose(t_product(a, prev).data, nxt.data, atol=1e-12)


def test_simulate_controlled_adds_input_term():
    a = random_system(2, 3, seed=1)
    b = random_tensor(2, 1, 3, seed=2)
    x_init = random_tensor(2, 2, 3, seed=3)
    inputs = [random_tensor(1, 2, 3, seed=4 + k) for k in range(2)]
    traj = simulate_controlled(a, b, x_init, inputs)
    expected = t_add(t_product(a, traj.states[1]), t_product(b, inputs[1]))
    assert np.allclose(traj.states[2].data, expected.data, atol=1e-12)
    with pytest.raises(DimensionMismatch):
        simulate_controlled(a, b, x_init, [random_tensor(2, 2, 3, seed=5)])


def test_simulate_rejects_mismatched_state():
    a = random_system(2, 3, seed=1)
    with pytest.raises(DimensionMismatch):
        simulate(a, random_tensor(3, 1, 3, seed=1), steps=2)
    with pytest.raises(ValueError):
        simulate(a, random_tensor(2, 1, 3, seed=1), steps=0)


def test_trajectory_validation():
    with pytest.raises(ShapeMismatch):
        Trajectory([])
    x = random_tensor(2, 1, 3, seed=0)
    with pytest.raises(DimensionMismatch):
        Trajectory([x, random_tensor(2, 2, 3, seed=0)])
    with pytest.raises(ShapeMismatch):
        Trajectory([x, x], inputs=[])


def test_assemble_shifts_by_one_step():
    states = [random_tensor(2, 3, 4, seed=k) for k in range(4)]
    data = assemble(Trajectory(states))
    assert data.x0.dims == (2, 9, 4)
    assert np.array_equal(data.x0.data[:, :, 3:6], states[1].data)
    assert np.array_equal(data.x1.data[:, :, 6:9], states[3].data)
    assert data.u0 is None


def test_random_data_inputs_do_not_shift_states():
    plain = random_data(2, 2, 3, 4, seed=5)
    controlled = random_data(2, 2, 3, 4, seed=5, m=2)
    assert np.array_equal(plain.x0.data, controlled.x0.data)
    assert controlled.u0.dims == (2, 6, 4)


def test_simulated_data_records_generators():
    data = simulated_data(3, 2, 4, 5, seed=9, radius=0.5)
    assert set(data.extras) == {'a'}
    assert spectral_radius(data.extras['a']) == pytest.approx(0.5, rel=1e-10)
    assert np.allclose(t_product(data.extras['a'], data.x0).data, data.x1.data, atol=1e-12)

    controlled = simulated_data(3, 2, 4, 5, seed=9, m=2)
    assert set(controlled.extras) == {'a', 'b'}
    assert controlled.u0.dims == (2, 8, 5)
