"""
Decompositions
T-eigenvalue and T-singular-value decompositions, tuple extractors, and dense oracles.

Per-block work runs on frequencies 0..floor(r/2); the mirrored blocks are the
complex conjugates, which keeps assembled factors real whenever the
self-conjugate blocks (frequency 0, and r/2 for even r) have real factors.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import Tolerances
from .errors import DefectiveBlock, ShapeMismatch
from .fourier import (
    FourierBlocks,
    block_apply,
    dft_mode3,
    half_indices,
    idft_mode3,
    is_self_conjugate,
    mirror_index,
)
from .tensor3 import Tensor3, t_inverse, t_product, t_transpose

logger = logging.getLogger(__name__)

EIGEN = 'eigen'
SINGULAR = 'singular'


@dataclass(frozen=True, eq=False)
class TupleSet:
    """
    Eigentuples or singular tuples in the Fourier domain.

    Attributes:
        kind (str): 'eigen' or 'singular'
        values (np.ndarray): shape (r, k); row j holds the values of block j
            (complex for eigen, nonnegative real for singular)
    """
    kind: str
    values: np.ndarray

    @property
    def r(self):
        return self.values.shape[0]

    def flat(self):
        """All entries as one 1-D array (the multiset union over blocks)."""
        return self.values.reshape(-1)


@dataclass(frozen=True, eq=False)
class TEig:
    """
    T-EVD T = U * D * U^-1.

    When a self-conjugate block has complex eigenpairs the factors cannot be
    real; ``u`` and ``d`` are then None, ``complex_factors`` is set, and the
    factors are only available as Fourier blocks.
    """
    u: Tensor3
    d: Tensor3
    u_blocks: FourierBlocks
    d_blocks: FourierBlocks
    tuples: TupleSet
    complex_factors: bool

    def reconstruction_error(self, t):
        """Max-abs error of U * D * U^-1 against t (Fourier domain if complex)."""
        if not self.complex_factors:
            rebuilt = t_product(t_product(self.u, self.d), t_inverse(self.u))
            return float(np.max(np.abs(rebuilt.data - t.data)))
        u = self.u_blocks.blocks
        rebuilt = np.matmul(u * self.tuples.values[:, None, :], np.linalg.inv(u))
        return float(np.max(np.abs(rebuilt - dft_mode3(t).blocks))) / t.r


@dataclass(frozen=True, eq=False)
class TSvd:
    """T-SVD T = U * S * V^T with T-orthogonal U, V."""
    u: Tensor3
    s: Tensor3
    v: Tensor3
    tuples: TupleSet

    def reconstruct(self):
        return t_product(t_product(self.u, self.s), t_transpose(self.v))


def _require_square(t, op):
    if t.n != t.m:
        raise ShapeMismatch(f"{op} needs square frontal slices, got {t.dims}")


def eig_order(values):
    """
    Deterministic eigenvalue order: |lambda| descending, then argument
    ascending, then real part ascending.

    Applied to the blocks at frequencies 0..r//2 only. A mirrored block
    k > r//2 holds the conjugates of block r - k in the same positions, so
    its tuple is in conjugated order (argument descending within a modulus).
    """
    mags = np.round(np.abs(values), 12)
    args = np.round(np.angle(values), 12)
    return np.lexsort((values.real, args, -mags))


def _half_blocks(b):
    """Yield (k, block) for frequencies 0..r//2, self-conjugate blocks as real arrays."""
    for k in half_indices(b.r):
        block = b.blocks[k]
        yield k, (block.real if is_self_conjugate(k, b.r) else block)


def _mirror_fill(r, half_results, shape, dtype=np.complex128):
    out = np.empty((r,) + shape, dtype=dtype)
    for k, res in half_results:
        out[k] = res
        if not is_self_conjugate(k, r):
            out[mirror_index(k, r)] = np.conj(res)
    return out


# ===== Eigen =====

def _block_eig(block):
    values, vectors = np.linalg.eig(block)
    order = eig_order(values)
    return values[order], vectors[:, order]


def t_eig(t, tol_rank=None, threads=1):
    """
    T-eigenvalue decomposition through per-block eigendecompositions.

    Args:
        t (Tensor3): n x n x r tensor
        tol_rank (float, optional): a block whose eigenvector matrix has
            condition number above 1 / tol_rank is defective
        threads (int): worker threads for the per-block work

    Returns:
        TEig: factors plus eigentuples (in the Fourier domain); tuples of
            frequencies 0..r//2 follow eig_order, mirrored tuples are their
            conjugates in the same positions

    Raises:
        DefectiveBlock: carries the eigentuples of the whole tensor
    """
    _require_square(t, 't_eig')
    b = dft_mode3(t)
    n, r = t.n, t.r

    half = list(_half_blocks(b))
    results = block_apply([blk for _, blk in half], _block_eig, threads=threads)
    ks = [k for k, _ in half]

    values = _mirror_fill(r, [(k, res[0]) for k, res in zip(ks, results)], (n,))
    vectors = _mirror_fill(r, [(k, res[1]) for k, res in zip(ks, results)], (n, n))
    tuples = TupleSet(EIGEN, values)

    factor = tol_rank if tol_rank is not None else Tolerances().rank_factor((n * r, n * r))
    for k, (_, vecs) in zip(ks, results):
        cond = float(np.linalg.cond(vecs))
        if not np.isfinite(cond) or cond > 1.0 / factor:
            logger.warning(f"Fourier block {k} is defective (eigenvector condition {cond:.3e})")
            raise DefectiveBlock(k, tuples=tuples, condition=cond)

    complex_factors = any(
        np.iscomplexobj(res[1]) and np.max(np.abs(np.imag(res[1]))) > 0
        for k, res in zip(ks, results) if is_self_conjugate(k, r)
    )

    u_blocks = FourierBlocks(vectors)
    d_blocks = FourierBlocks(values[:, :, None] * np.eye(n)[None, :, :])
    if complex_factors:
        return TEig(None, None, u_blocks, d_blocks, tuples, True)

    u = idft_mode3(u_blocks)
    d = idft_mode3(d_blocks)
    return TEig(u, d, u_blocks, d_blocks, tuples, False)


def eigentuples(t, threads=1):
    """
    Eigentuples only, skipping eigenvectors and factor assembly.

    Args:
        t (Tensor3): n x n x r tensor

    Returns:
        TupleSet: r tuples of n complex values, ordered as in t_eig (eig_order
            up to r//2, conjugated order for the mirrored frequencies)
    """
    _require_square(t, 'eigentuples')
    return eigentuples_of_blocks(dft_mode3(t), threads=threads)


def eigentuples_of_blocks(b, threads=1):
    """Eigentuples of square Fourier blocks taken from a real tensor."""
    half = list(_half_blocks(b))

    def vals(block):
        v = np.linalg.eigvals(block)
        return v[eig_order(v)]

    results = block_apply([blk for _, blk in half], vals, threads=threads)
    values = _mirror_fill(b.r, [(k, res) for (k, _), res in zip(half, results)], (b.n,))
    return TupleSet(EIGEN, values)


def spectral_radius(t):
    """Largest |lambda| over all eigentuple entries (= spectral radius of bcirc(t))."""
    return float(np.max(np.abs(eigentuples(t).values)))


# ===== Singular =====

def t_svd(t, threads=1):
    """
    T-SVD through per-block SVDs.

    Args:
        t (Tensor3): n x m x r tensor
        threads (int): worker threads for the per-block work

    Returns:
        TSvd: real factors U (n x n x r), S (n x m x r), V (m x m x r) and
            singular tuples sorted descending within each block
    """
    b = dft_mode3(t)
    n, m, r = t.n, t.m, t.r
    k_min = min(n, m)

    half = list(_half_blocks(b))
    results = block_apply([blk for _, blk in half], lambda blk: np.linalg.svd(blk, full_matrices=True),
                          threads=threads)
    ks = [k for k, _ in half]

    u_blocks = _mirror_fill(r, [(k, res[0]) for k, res in zip(ks, results)], (n, n))
    v_blocks = _mirror_fill(r, [(k, res[2].conj().T) for k, res in zip(ks, results)], (m, m))
    sv = np.empty((r, k_min))
    for k, res in zip(ks, results):
        sv[k] = res[1]
        sv[mirror_index(k, r)] = res[1]

    s_blocks = np.zeros((r, n, m), dtype=np.complex128)
    s_blocks[:, np.arange(k_min), np.arange(k_min)] = sv

    return TSvd(
        u=idft_mode3(FourierBlocks(u_blocks)),
        s=idft_mode3(FourierBlocks(s_blocks)),
        v=idft_mode3(FourierBlocks(v_blocks)),
        tuples=TupleSet(SINGULAR, sv),
    )


def singular_tuples(t, threads=1):
    """Singular tuples only: per-block singular values, descending, shape (r, min(n, m))."""
    b = dft_mode3(t)
    half = list(_half_blocks(b))
    results = block_apply([blk for _, blk in half], lambda blk: np.linalg.svd(blk, compute_uv=False),
                          threads=threads)
    sv = np.empty((b.r, min(b.n, b.m)))
    for (k, _), res in zip(half, results):
        sv[k] = res
        sv[mirror_index(k, b.r)] = res
    return TupleSet(SINGULAR, sv)


# ===== Dense oracles =====

def dense_eig(matrix):
    """Eigenvalues of a dense square matrix."""
    return scipy.linalg.eigvals(matrix)


def dense_svd(matrix):
    """Singular values of a dense matrix, descending."""
    return scipy.linalg.svdvals(matrix)


def dense_rank(matrix, tol_rank=None):
    """
    Numerical rank: singular values above tol_rank * sigma_max.

    Args:
        matrix (np.ndarray): dense matrix
        tol_rank (float, optional): relative cutoff, default max(shape) * eps

    Returns:
        int: numerical rank
    """
    sv = dense_svd(matrix)
    if sv.size == 0 or sv[0] == 0:
        return 0
    factor = tol_rank if tol_rank is not None else Tolerances().rank_factor(np.shape(matrix))
    return int(np.sum(sv > factor * sv[0]))
