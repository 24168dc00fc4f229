"""
Configuration
Tolerances and run settings shared by the library, the benchmark harness and the CLI.
"""

import os
from dataclasses import dataclass, field, asdict

import numpy as np

EPS = np.finfo(np.float64).eps

METHODS = ('fourier', 'dense')
FORMATS = ('text', 'machine')
THREADS_ENV = 'TPDS_THREADS'


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances. ``None`` means "derive from the data".

    Attributes:
        tol_rank (float): relative rank cutoff; singular values at or below
            tol_rank * sigma_max are treated as zero. Default max(dims) * eps
            of the unfolded (bcirc) matrix.
        tol_stab (float): stability margin; a block is stable when its
            spectral radius is below 1 - tol_stab. ``-inf`` reproduces the
            non-strict "radius <= 1" reading.
        tol_circ (float): absolute block-circulant deviation allowed by
            un_bcirc. Default 1e-9 * max-abs of the input.
        tol_imag (float): absolute imaginary residual allowed by a strict
            inverse transform. Default 1e-8 * max-abs of the result.
        tol_pencil (float): explicit rank cutoff for X1 - lam * X0, relative to
            ||X1||_2 + |lam| * ||X0||_2. Default: the tol_rank factor of the
            unfolded pencil.
        tol_cluster (float): relative distance under which candidate roots
            are merged into one cluster (single linkage).
    """
    tol_rank: float = None
    tol_stab: float = 1e-9
    tol_circ: float = None
    tol_imag: float = None
    tol_pencil: float = None
    tol_cluster: float = 1e-3

    def rank_factor(self, shape):
        """Relative rank cutoff for a matrix of the given (unfolded) shape."""
        if self.tol_rank is not None:
            return self.tol_rank
        return max(shape) * EPS

    def pencil_factor(self, shape):
        """Relative cutoff for a pencil whose unfolded matrices have the given shape."""
        if self.tol_pencil is not None:
            return self.tol_pencil
        return self.rank_factor(shape)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RunConfig:
    """Settings for one informativity run or CLI invocation."""
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 0
    method: str = 'fourier'
    threads: int = 1
    output_format: str = 'text'

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


def resolve_threads(flag_value=None):
    """
    Resolve the worker count: explicit flag, then TPDS_THREADS, then 1.

    Args:
        flag_value (int, optional): value given on the command line

    Returns:
        int: number of worker threads (>= 1)
    """
    if flag_value is not None:
        return max(1, int(flag_value))

    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            return max(1, int(env_value))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env_value!r}")

    return 1
