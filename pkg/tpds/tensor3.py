"""
Tensor3
Dense real third-order tensors and the T-product algebra built on block-circulant unfoldings.

Storage is frontal-slice-major: ``data`` has shape (r, n, m) and ``data[k]`` is
frontal slice k+1, an n x m matrix stored row-major. The T3v1 file format
(tensor_io.py) writes slices in the same order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, DimensionMismatch, NotCirculant

# Smallest r at which t_product(path='auto') takes the Fourier path.
FOURIER_MIN_R = 4


@dataclass(frozen=True, eq=False)
class Tensor3:
    """
    Immutable n x m x r real tensor.

    Attributes:
        data (np.ndarray): float64 array of shape (r, n, m), read-only
    """
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64, copy=True)
        if arr.ndim != 3 or min(arr.shape) < 1:
            raise ShapeMismatch(f"tensor data must have shape (r, n, m) with positive sizes, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, 'data', arr)

    @property
    def n(self):
        return self.data.shape[1]

    @property
    def m(self):
        return self.data.shape[2]

    @property
    def r(self):
        return self.data.shape[0]

    @property
    def dims(self):
        return (self.n, self.m, self.r)

    def frontal_slice(self, k):
        """Return frontal slice k (1-based, as in the T-product literature)."""
        if not 1 <= k <= self.r:
            raise IndexError(f"slice index {k} outside 1..{self.r}")
        return self.data[k - 1]

    @classmethod
    def from_slices(cls, slices):
        return cls(np.stack([np.asarray(s, dtype=np.float64) for s in slices]))

    @classmethod
    def zeros(cls, n, m, r):
        return cls(np.zeros((r, n, m)))

    def max_abs(self):
        return float(np.max(np.abs(self.data)))

    def __repr__(self):
        return f"Tensor3(n={self.n}, m={self.m}, r={self.r})"


def _require_dims(dims):
    n, m, r = (int(d) for d in dims)
    if n < 1 or m < 1 or r < 1:
        raise ShapeMismatch(f"dimensions must be positive, got {dims}")
    return n, m, r


# ===== Unfoldings =====

def bcirc(t):
    """
    Block-circulant matrix of a tensor.

    Block (i, j) is frontal slice 1 + ((i - j) mod r), so the first block
    column lists slices 1..r top to bottom.

    Args:
        t (Tensor3): n x m x r tensor

    Returns:
        np.ndarray: (n*r) x (m*r) matrix
    """
    r, n, m = t.data.shape
    idx = (np.arange(r)[:, None] - np.arange(r)[None, :]) % r
    blocks = t.data[idx]  # (r, r, n, m)
    return blocks.transpose(0, 2, 1, 3).reshape(n * r, m * r)


def unfold(t):
    """Stack the frontal slices vertically: (n*r) x m."""
    return t.data.reshape(t.r * t.n, t.m).copy()


def fold(matrix, dims):
    """
    Inverse of unfold.

    Args:
        matrix (np.ndarray): (n*r) x m matrix
        dims (tuple): (n, m, r)

    Returns:
        Tensor3: the tensor whose unfolding is ``matrix``
    """
    n, m, r = _require_dims(dims)
    matrix = np.asarray(matrix)
    if matrix.shape != (n * r, m):
        raise ShapeMismatch(f"fold expects a {(n * r, m)} matrix for dims {dims}, got {matrix.shape}")
    return Tensor3(matrix.reshape(r, n, m))


def un_bcirc(matrix, dims, tol_circ=None, return_deviation=False):
    """
    Recover a tensor from its block-circulant matrix.

    The first block column is read as slices 1..r; the whole matrix is then
    checked against the block-circulant pattern.

    Args:
        matrix (np.ndarray): (n*r) x (m*r) matrix
        dims (tuple): (n, m, r)
        tol_circ (float, optional): allowed max-abs deviation from the pattern
        return_deviation (bool): also return the measured deviation

    Returns:
        Tensor3, or (Tensor3, float) when return_deviation is set
    """
    n, m, r = _require_dims(dims)
    matrix = np.asarray(matrix)
    if matrix.shape != (n * r, m * r):
        raise ShapeMismatch(f"un_bcirc expects a {(n * r, m * r)} matrix for dims {dims}, got {matrix.shape}")
    if np.iscomplexobj(matrix):
        matrix = matrix.real

    t = fold(matrix[:, :m], (n, m, r))
    max_dev = float(np.max(np.abs(bcirc(t) - matrix)))
    if tol_circ is None:
        tol_circ = 1e-9 * float(np.max(np.abs(matrix)))
    if max_dev > tol_circ:
        raise NotCirculant(max_dev, tol_circ)

    if return_deviation:
        return t, max_dev
    return t


# ===== Linear structure =====

def _require_same_dims(a, b, op):
    if a.dims != b.dims:
        raise DimensionMismatch(f"{op} needs equal dimensions, got {a.dims} and {b.dims}")


def t_add(a, b):
    _require_same_dims(a, b, 't_add')
    return Tensor3(a.data + b.data)


def t_sub(a, b):
    _require_same_dims(a, b, 't_sub')
    return Tensor3(a.data - b.data)


def t_scale(t, c):
    return Tensor3(float(c) * t.data)


def t_concat_mode2(tensors):
    """
    Concatenate tensors along the second mode, in order.

    Args:
        tensors (list): Tensor3 objects sharing n and r

    Returns:
        Tensor3: n x (sum of m) x r tensor
    """
    tensors = list(tensors)
    if not tensors:
        raise ShapeMismatch("t_concat_mode2 needs at least one tensor")
    n, r = tensors[0].n, tensors[0].r
    for t in tensors:
        if t.n != n or t.r != r:
            raise DimensionMismatch(f"mode-2 concatenation needs common n={n}, r={r}, got {t.dims}")
    return Tensor3(np.concatenate([t.data for t in tensors], axis=2))


# ===== T-product algebra =====

def t_product(a, b, path='auto'):
    """
    T-product a * b = fold(bcirc(a) unfold(b)).

    Args:
        a (Tensor3): n x m x r
        b (Tensor3): m x p x r
        path (str): 'literal' (dense block-circulant product), 'fourier'
            (per-block products in the Fourier domain) or 'auto' (fourier for
            r >= 4)

    Returns:
        Tensor3: n x p x r tensor
    """
    if a.m != b.n:
        raise DimensionMismatch(f"inner modes differ: {a.dims} * {b.dims}")
    if a.r != b.r:
        raise DimensionMismatch(f"third modes differ: {a.dims} * {b.dims}")

    if path == 'auto':
        path = 'fourier' if a.r >= FOURIER_MIN_R else 'literal'

    if path == 'literal':
        return fold(bcirc(a) @ unfold(b), (a.n, b.m, a.r))
    if path == 'fourier':
        from .fourier import fourier_product
        return fourier_product(a, b)
    raise ValueError(f"unknown t_product path {path!r}")


def t_identity(n, r):
    """T-identity: first frontal slice I_n, the remaining slices zero."""
    n, _, r = _require_dims((n, n, r))
    data = np.zeros((r, n, n))
    data[0] = np.eye(n)
    return Tensor3(data)


def t_transpose(t):
    """Transpose every frontal slice and reverse the order of slices 2..r."""
    order = (-np.arange(t.r)) % t.r
    return Tensor3(t.data[order].transpose(0, 2, 1))


def t_diagonal(diagonals, m=None):
    """
    Build a T-diagonal (or T-rectangular-diagonal) tensor.

    Args:
        diagonals (np.ndarray): shape (r, k); row j is the diagonal of slice j+1
        m (int, optional): number of columns; defaults to k (square slices)

    Returns:
        Tensor3: k x m x r tensor with diagonal frontal slices
    """
    diagonals = np.asarray(diagonals, dtype=np.float64)
    r, k = diagonals.shape
    m = k if m is None else m
    n = k
    data = np.zeros((r, n, m))
    d = min(n, m)
    data[:, np.arange(d), np.arange(d)] = diagonals[:, :d]
    return Tensor3(data)


def is_t_diagonal(t, tol=1e-10):
    """True when every frontal slice is diagonal to within tol (max-abs)."""
    off = t.data.copy()
    d = min(t.n, t.m)
    off[:, np.arange(d), np.arange(d)] = 0.0
    return bool(np.max(np.abs(off)) <= tol)


def t_inverse(t, tol_rank=None):
    """
    T-inverse via per-Fourier-block inversion.

    Args:
        t (Tensor3): n x n x r tensor
        tol_rank (float, optional): relative singularity cutoff

    Returns:
        Tensor3: the tensor S with t * S = S * t = I
    """
    if t.n != t.m:
        raise ShapeMismatch(f"t_inverse needs square frontal slices, got {t.dims}")
    from .fourier import fourier_inverse
    return fourier_inverse(t, tol_rank=tol_rank)


def t_right_pinv(t, tol_rank=None, return_ranks=False):
    """
    Right T-inverse: per-Fourier-block Moore-Penrose pseudoinverse.

    When bcirc(t) has full row rank, t * t_right_pinv(t) is the T-identity.
    Rank deficiency is not an error.

    Args:
        t (Tensor3): n x m x r tensor
        tol_rank (float, optional): relative cutoff passed to the block pinv
        return_ranks (bool): also return the per-block numerical ranks

    Returns:
        Tensor3 (m x n x r), or (Tensor3, list of int)
    """
    from .fourier import fourier_right_pinv
    pinv, ranks = fourier_right_pinv(t, tol_rank=tol_rank)
    if return_ranks:
        return pinv, ranks
    return pinv


def is_t_orthogonal(t, tol=1e-8):
    """True when t * t^T and t^T * t are both within tol of the T-identity."""
    if t.n != t.m:
        return False
    ident = t_identity(t.n, t.r).data
    tt = t_transpose(t)
    left = t_product(t, tt).data
    right = t_product(tt, t).data
    return bool(max(np.max(np.abs(left - ident)), np.max(np.abs(right - ident))) <= tol)
