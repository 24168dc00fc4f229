"""
Errors
Exception hierarchy shared by the tensor algebra, the informativity tests and the CLI.
"""


class TPDSError(Exception):
    """Base class for every error raised by the tpds package."""


class ShapeMismatch(TPDSError, ValueError):
    """An input does not have the shape an operation requires."""


class DimensionMismatch(TPDSError, ValueError):
    """Two tensors are not conformable (inner mode or third mode differ)."""


class NotCirculant(TPDSError):
    """A matrix handed to un_bcirc is not block-circulant within tolerance."""

    def __init__(self, max_dev, tol):
        self.max_dev = max_dev
        self.tol = tol
        super().__init__(f"matrix is not block-circulant: max deviation {max_dev:.3e} > tol {tol:.3e}")


class Singular(TPDSError):
    """A Fourier block is numerically singular, so no T-inverse exists."""

    def __init__(self, block_index, min_singular_value):
        self.block_index = block_index
        self.min_singular_value = min_singular_value
        super().__init__(
            f"Fourier block {block_index} is singular (smallest singular value {min_singular_value:.3e})"
        )


class ImaginaryResidualExceeded(TPDSError):
    """An inverse mode-3 transform left a non-negligible imaginary part."""

    def __init__(self, max_imag, tol):
        self.max_imag = max_imag
        self.tol = tol
        super().__init__(f"imaginary residual {max_imag:.3e} exceeds tol {tol:.3e}")


class DefectiveBlock(TPDSError):
    """
    A Fourier block has a numerically singular eigenvector matrix.

    The eigentuples are still available on the exception, since every
    informativity test consumes eigenvalues only.
    """

    def __init__(self, block_index, tuples=None, condition=None):
        self.block_index = block_index
        self.tuples = tuples
        self.condition = condition
        detail = f" (eigenvector condition {condition:.3e})" if condition is not None else ""
        super().__init__(f"Fourier block {block_index} is defective{detail}")


class BlockError(TPDSError):
    """A per-block function failed; carries the index of the failing block."""

    def __init__(self, block_index, cause):
        self.block_index = block_index
        self.cause = cause
        super().__init__(f"block {block_index}: {cause}")


class OutOfBudget(TPDSError):
    """A benchmark point ran longer than the configured time cap."""

    def __init__(self, elapsed, cap):
        self.elapsed = elapsed
        self.cap = cap
        super().__init__(f"benchmark point took {elapsed:.1f}s, cap is {cap:.1f}s")


class InsufficientData(TPDSError, ValueError):
    """Not enough records to fit a scaling slope."""


class TensorFormatError(TPDSError, ValueError):
    """A T3v1 file could not be parsed."""

    def __init__(self, source, line, message):
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")
