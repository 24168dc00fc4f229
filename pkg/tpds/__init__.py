"""
TPDS Package
T-product tensor algebra and data-informativity tests for T-product dynamical systems.
"""

from .config import Tolerances, RunConfig, resolve_threads
from .tensor3 import (
    Tensor3,
    bcirc,
    unfold,
    fold,
    un_bcirc,
    t_product,
    t_identity,
    t_transpose,
    t_inverse,
    t_right_pinv,
    is_t_orthogonal,
)
from .fourier import FourierBlocks, dft_mode3, idft_mode3, block_map
from .decomp import (
    TupleSet,
    TEig,
    TSvd,
    t_eig,
    t_svd,
    eigentuples,
    singular_tuples,
    spectral_radius,
    dense_eig,
    dense_svd,
    dense_rank,
)
from .datagen import (
    Trajectory,
    DataTensors,
    simulate,
    simulate_controlled,
    assemble,
    random_tensor,
    random_system,
    random_data,
    simulated_data,
)
from .informativity import (
    InformativityReport,
    identify,
    informative_sysid,
    informative_stability,
    informative_controllability,
    informative_stabilizability,
    pencil_rank,
    format_report,
)

__all__ = [
    'Tolerances', 'RunConfig', 'resolve_threads',
    'Tensor3', 'bcirc', 'unfold', 'fold', 'un_bcirc', 't_product', 't_identity',
    't_transpose', 't_inverse', 't_right_pinv', 'is_t_orthogonal',
    'FourierBlocks', 'dft_mode3', 'idft_mode3', 'block_map',
    'TupleSet', 'TEig', 'TSvd', 't_eig', 't_svd', 'eigentuples', 'singular_tuples',
    'spectral_radius', 'dense_eig', 'dense_svd', 'dense_rank',
    'Trajectory', 'DataTensors', 'simulate', 'simulate_controlled', 'assemble',
    'random_tensor', 'random_system', 'random_data', 'simulated_data',
    'InformativityReport', 'identify', 'informative_sysid', 'informative_stability',
    'informative_controllability', 'informative_stabilizability', 'pencil_rank',
    'format_report',
]
