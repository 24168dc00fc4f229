import numpy as np
import pytest

from tpds.datagen import random_tensor
from tpds.decomp import (
    dense_eig,
    dense_rank,
    eig_order,
    eigentuples,
    singular_tuples,
    spectral_radius,
    t_eig,
    t_svd,
)
from tpds.errors import DefectiveBlock, ShapeMismatch
from tpds.tensor3 import Tensor3, bcirc, is_t_diagonal, is_t_orthogonal, t_transpose


def symmetric_slices(n, r, seed):
    t = random_tensor(n, n, r, seed=seed)
    return Tensor3(t.data + t.data.transpose(0, 2, 1))


def nearest_distance(values, targets):
    return np.max(np.min(np.abs(values[:, None] - targets[None, :]), axis=1))


@pytest.mark.parametrize('r', [1, 2, 5, 6])
def test_eigentuples_are_the_spectrum_of_bcirc(r):
    t = random_tensor(3, 3, r, seed=10 + r)
    tuples = eigentuples(t)
    assert tuples.values.shape == (r, 3)
    flat = tuples.flat()
    dense = dense_eig(bcirc(t))
    assert nearest_distance(flat, dense) < 1e-8
    assert nearest_distance(dense, flat) < 1e-8
    assert spectral_radius(t) == pytest.approx(np.max(np.abs(dense)), rel=1e-10)


def test_eig_order_is_deterministic():
    values = np.array([0.5, -2.0, 1j, 2.0, -1j])
    ordered = values[eig_order(values)]
    assert list(ordered) == [2.0, -2.0, -1j, 1j, 0.5]


def test_t_eig_real_factors_for_symmetric_slices():
    t = symmetric_slices(3, 6, seed=1)
    evd = t_eig(t)
    assert not evd.complex_factors
    assert evd.u.dims == (3, 3, 6)
    assert is_t_diagonal(evd.d, tol=1e-8)
    assert evd.reconstruction_error(t) < 1e-8


@pytest.mark.parametrize('r', [3, 4, 7])
def test_t_eig_reconstructs_general_tensors(r):
    t = random_tensor(3, 3, r, seed=r)
    evd = t_eig(t)
    assert evd.reconstruction_error(t) < 1e-8
    assert np.allclose(evd.tuples.values, eigentuples(t).values, atol=1e-10)


def test_t_eig_flags_defective_blocks():
    jordan = np.array([[2.0, 1.0], [0.0, 2.0]])
    t = Tensor3.from_slices([jordan, np.zeros((2, 2))])
    with pytest.raises(DefectiveBlock) as excinfo:
        t_eig(t)
    assert excinfo.value.tuples is not None
    assert np.allclose(excinfo.value.tuples.values, 2.0)


def test_t_eig_needs_square_slices():
    with pytest.raises(ShapeMismatch):
        t_eig(random_tensor(2, 3, 2, seed=0))


@pytest.mark.parametrize('shape', [(3, 3, 4), (2, 5, 3), (4, 2, 6), (3, 3, 1)])
def test_t_svd_reconstructs_with_orthogonal_factors(shape):
    n, m, r = shape
    t = random_tensor(n, m, r, seed=sum(shape))
    svd = t_svd(t)
    assert svd.u.dims == (n, n, r)
    assert svd.s.dims == (n, m, r)
    assert svd.v.dims == (m, m, r)
    assert np.allclose(svd.reconstruct().data, t.data, atol=1e-10)
    assert is_t_orthogonal(svd.u)
    assert is_t_orthogonal(svd.v)
    assert is_t_diagonal(svd.s)


def test_singular_tuples_match_t_svd_and_transpose():
    t = random_tensor(3, 4, 5, seed=9)
    tuples = singular_tuples(t)
    assert tuples.values.shape == (5, 3)
    assert np.all(np.diff(tuples.values, axis=1) <= 0)
    assert np.allclose(tuples.values, t_svd(t).tuples.values, atol=1e-10)
    assert np.allclose(np.sort(singular_tuples(t_transpose(t)).flat()), np.sort(tuples.flat()), atol=1e-10)


def test_thread_count_does_not_change_results():
    t = random_tensor(3, 3, 12, seed=4)
    assert np.array_equal(eigentuples(t, threads=1).values, eigentuples(t, threads=4).values)
    assert np.array_equal(singular_tuples(t, threads=1).values, singular_tuples(t, threads=3).values)


def test_dense_rank():
    assert dense_rank(np.zeros((3, 4))) == 0
    low = np.outer([1.0, 2.0, 3.0], [1.0, -1.0, 0.5])
    assert dense_rank(low) == 1
    assert dense_rank(np.eye(4)) == 4
    assert dense_rank(np.diag([1.0, 1e-3]), tol_rank=1e-2) == 1


@pytest.mark.parametrize('r', [4, 5])
def test_mirrored_tuples_hold_conjugates_in_the_same_positions(r):
    t = random_tensor(3, 3, r, seed=40 + r)
    values = eigentuples(t).values
    for k in range(r // 2 + 1):
        assert np.array_equal(eig_order(values[k]), np.arange(3))
    for k in range(r // 2 + 1, r):
        assert np.array_equal(values[k], np.conj(values[r - k]))
    assert np.allclose(t_eig(t).tuples.values[r - 1], np.conj(t_eig(t).tuples.values[1]), atol=1e-12)
