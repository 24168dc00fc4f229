"""
Fourier Blocks
Mode-3 DFT that block-diagonalizes bcirc(T), plus the per-block plumbing every fast path runs on.

Forward transform is unnormalized (block k = sum_j w^(j k) T_j, w = exp(-2 pi i / r));
the inverse carries 1/r. Blocks are indexed 0..r-1 by frequency.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .config import Tolerances
from .errors import BlockError, ImaginaryResidualExceeded, ShapeMismatch, Singular
from .tensor3 import Tensor3

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FourierBlocks:
    """
    The r complex n x m blocks of a tensor in the Fourier domain.

    Attributes:
        blocks (np.ndarray): complex array of shape (r, n, m); blocks[k] is
            the block at frequency k
    """
    blocks: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.blocks)
        if arr.ndim != 3:
            raise ShapeMismatch(f"Fourier blocks must have shape (r, n, m), got {arr.shape}")
        object.__setattr__(self, 'blocks', arr.astype(np.complex128, copy=False))

    @property
    def n(self):
        return self.blocks.shape[1]

    @property
    def m(self):
        return self.blocks.shape[2]

    @property
    def r(self):
        return self.blocks.shape[0]

    def block(self, k):
        return self.blocks[k]

    def __len__(self):
        return self.r


def mirror_index(k, r):
    """Frequency whose block is the conjugate of block k for real tensors."""
    return (r - k) % r


def is_self_conjugate(k, r):
    return k == mirror_index(k, r)


def half_indices(r):
    """Frequencies 0..floor(r/2): enough to determine every block of a real tensor."""
    return list(range(r // 2 + 1))


# ===== Transforms =====

def dft_mode3(t, workers=None):
    """
    Forward mode-3 DFT of a real tensor.

    Args:
        t (Tensor3): n x m x r tensor
        workers (int, optional): scipy.fft worker threads

    Returns:
        FourierBlocks: r complex n x m blocks
    """
    return FourierBlocks(scipy.fft.fft(t.data, axis=0, workers=workers))


def idft_mode3(b, strict=True, tol_imag=None, return_residual=False, workers=None):
    """
    Inverse mode-3 DFT back to a real tensor.

    Args:
        b (FourierBlocks): blocks sharing one shape
        strict (bool): raise when the imaginary residual is not negligible;
            otherwise the imaginary part is dropped
        tol_imag (float, optional): residual tolerance, default 1e-8 * max-abs
        return_residual (bool): also return the max imaginary residual
        workers (int, optional): scipy.fft worker threads

    Returns:
        Tensor3, or (Tensor3, float) when return_residual is set
    """
    full = scipy.fft.ifft(b.blocks, axis=0, workers=workers)
    real = full.real
    residual = float(np.max(np.abs(full.imag)))

    if tol_imag is None:
        tol_imag = 1e-8 * max(float(np.max(np.abs(real))), np.finfo(np.float64).tiny)

    if residual > 0 and residual >= tol_imag:
        if strict:
            raise ImaginaryResidualExceeded(residual, tol_imag)
        logger.debug(f"Dropping imaginary residual {residual:.3e} (tol {tol_imag:.3e})")

    t = Tensor3(real)
    if return_residual:
        return t, residual
    return t


def is_conjugate_symmetric(b, tol=None):
    """True when block k equals conj(block r-k) for every k (within tol)."""
    mirrored = np.conj(b.blocks[(-np.arange(b.r)) % b.r])
    if tol is None:
        tol = 1e-10 * max(float(np.max(np.abs(b.blocks))), 1.0)
    return bool(np.max(np.abs(b.blocks - mirrored)) <= tol)


# ===== Per-block maps =====

def block_apply(b, f, threads=1, indices=None):
    """
    Apply f to each block independently and collect the results in order.

    Args:
        b (FourierBlocks or np.ndarray): blocks, or any (r, ...) stack
        f (callable): function of a single block
        threads (int): worker threads; results do not depend on it
        indices (list, optional): restrict to these block indices

    Returns:
        list: f(block) for each requested index, in index order
    """
    stack = b.blocks if isinstance(b, FourierBlocks) else b
    indices = list(range(len(stack))) if indices is None else list(indices)

    def run(k):
        try:
            return f(stack[k])
        except BlockError:
            raise
        except Exception as e:
            raise BlockError(k, e) from e

    if threads > 1 and len(indices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, indices))
    return [run(k) for k in indices]


def block_map(b, f, threads=1):
    """
    Apply a matrix function to every block.

    Args:
        b (FourierBlocks): input blocks
        f (callable): matrix -> matrix; must return a common shape
        threads (int): worker threads

    Returns:
        FourierBlocks: the mapped blocks, order preserved
    """
    return FourierBlocks(np.stack(block_apply(b, f, threads=threads)))


def symmetric_block_map(b, f, threads=1):
    """
    block_map for conjugate-symmetric blocks of a real tensor.

    f runs on frequencies 0..floor(r/2) only (self-conjugate blocks are passed
    as real matrices); the remaining blocks are filled in as conjugates, so
    the result inverse-transforms to a real tensor. f must commute with
    complex conjugation (inv, pinv, transpose and friends do).
    """
    r = b.r
    half = half_indices(r)

    def g(k):
        block = b.blocks[k]
        if is_self_conjugate(k, r):
            block = block.real
        return f(block)

    results = block_apply(np.arange(r), g, threads=threads, indices=half)
    out = np.empty((r,) + np.shape(results[0]), dtype=np.complex128)
    for k, res in zip(half, results):
        out[k] = res
        if not is_self_conjugate(k, r):
            out[mirror_index(k, r)] = np.conj(res)
    return FourierBlocks(out)


# ===== Fourier-path algebra =====

def fourier_product(a, b):
    """T-product through blockwise products: idft(dft(a) . dft(b))."""
    blocks = np.matmul(dft_mode3(a).blocks, dft_mode3(b).blocks)
    return idft_mode3(FourierBlocks(blocks))


def block_singular_values(b):
    """Singular values of every block, shape (r, min(n, m)), descending per block."""
    if min(b.n, b.m) == 0:
        return np.zeros((b.r, 0))
    return np.linalg.svd(b.blocks, compute_uv=False)


def pinv_with_cutoff(matrix, cutoff):
    """Moore-Penrose pseudoinverse dropping singular values <= cutoff (absolute)."""
    u, s, vh = np.linalg.svd(matrix, full_matrices=False)
    s_inv = np.zeros_like(s)
    keep = s > cutoff
    s_inv[keep] = 1.0 / s[keep]
    return (vh.conj().T * s_inv) @ u.conj().T


def fourier_inverse(t, tol_rank=None):
    """T-inverse by inverting every Fourier block; raises Singular on the first bad block."""
    b = dft_mode3(t)
    sv = block_singular_values(b)
    sigma_max = float(np.max(sv))
    factor = tol_rank if tol_rank is not None else Tolerances().rank_factor((t.n * t.r, t.m * t.r))
    cutoff = factor * sigma_max

    for k in range(b.r):
        if sv[k, -1] <= cutoff:
            raise Singular(k, float(sv[k, -1]))

    return idft_mode3(symmetric_block_map(b, np.linalg.inv))


def fourier_right_pinv(t, tol_rank=None):
    """
    Per-block pseudoinverse with a cutoff shared across blocks.

    The cutoff is tol_rank * sigma_max(bcirc(t)), the same one a dense pinv of
    bcirc(t) would use, so both paths drop the same singular values.

    Returns:
        tuple: (Tensor3 m x n x r, list of per-block ranks)
    """
    b = dft_mode3(t)
    sv = block_singular_values(b)
    sigma_max = float(np.max(sv)) if sv.size else 0.0
    factor = tol_rank if tol_rank is not None else Tolerances().rank_factor((t.n * t.r, t.m * t.r))
    cutoff = factor * sigma_max

    ranks = [int(np.sum(sv[k] > cutoff)) for k in range(b.r)]
    pinv_blocks = symmetric_block_map(b, lambda block: pinv_with_cutoff(block, cutoff))
    return idft_mode3(pinv_blocks), ranks
