"""
Data Generation
T-product dynamical system simulation and assembly of the data tensors X0, X1, U0.

Random numbers come from numpy's PCG64 bit generator. Each role (data, system,
inputs, compression) draws from its own stream, SeedSequence(seed, spawn_key=(role,)),
so adding draws for one role never shifts another.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .decomp import spectral_radius
from .errors import DimensionMismatch, ShapeMismatch
from .tensor3 import Tensor3, t_add, t_concat_mode2, t_product, t_scale

logger = logging.getLogger(__name__)

STREAM_DATA = 0
STREAM_SYSTEM = 1
STREAM_INPUTS = 2
STREAM_COMPRESSION = 3

DISTRIBUTIONS = ('normal', 'uniform')
MODES = ('random', 'simulate')


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    States X(0..l) of a TPDS run, plus inputs U(0..l-1) for controlled runs.
    """
    states: list
    inputs: list = None

    def __post_init__(self):
        if not self.states:
            raise ShapeMismatch("a trajectory needs at least one state")
        dims = self.states[0].dims
        for x in self.states:
            if x.dims != dims:
                raise DimensionMismatch(f"states must share dimensions {dims}, got {x.dims}")
        if self.inputs is not None and len(self.inputs) != len(self.states) - 1:
            raise ShapeMismatch(
                f"{len(self.states)} states need {len(self.states) - 1} inputs, got {len(self.inputs)}"
            )

    @property
    def steps(self):
        return len(self.states) - 1


@dataclass(frozen=True, eq=False)
class DataTensors:
    """
    Data tensors collected along the second mode.

    Attributes:
        x0 (Tensor3): [X(0) ... X(l-1)], n x lh x r
        x1 (Tensor3): [X(1) ... X(l)], n x lh x r
        u0 (Tensor3, optional): [U(0) ... U(l-1)], m x lh x r
        extras (dict): generating tensors (e.g. 'a', 'b') when known
    """
    x0: Tensor3
    x1: Tensor3
    u0: Tensor3 = None
    extras: dict = field(default_factory=dict)


def make_rng(seed, stream=STREAM_DATA):
    """PCG64 generator for one named stream of a 64-bit seed."""
    seq = np.random.SeedSequence(int(seed) % (1 << 64), spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(seq))


def _draw(rng, shape, dist):
    if dist == 'normal':
        return rng.standard_normal(shape)
    if dist == 'uniform':
        return rng.uniform(-1.0, 1.0, shape)
    raise ValueError(f"dist must be one of {DISTRIBUTIONS}, got {dist!r}")


# ===== Random fixtures =====

def random_tensor(n, m, r, seed=None, dist='normal', rng=None):
    """
    Random n x m x r tensor.

    Args:
        n, m, r (int): dimensions
        seed (int): 64-bit seed (ignored when rng is given)
        dist (str): 'normal' (standard normal) or 'uniform' (on (-1, 1))
        rng (np.random.Generator, optional): draw from this generator instead

    Returns:
        Tensor3: entries drawn slice by slice, row-major within a slice
    """
    if rng is None:
        rng = make_rng(0 if seed is None else seed, STREAM_DATA)
    return Tensor3(_draw(rng, (r, n, m), dist))


def random_system(n, r, seed=None, target_radius=None, dist='normal', rng=None):
    """
    Random state-transition tensor A (n x n x r).

    Args:
        target_radius (float, optional): rescale A so that its spectral
            radius (over all eigentuples) equals this value

    Returns:
        Tensor3: the transition tensor
    """
    if rng is None:
        rng = make_rng(0 if seed is None else seed, STREAM_SYSTEM)
    a = Tensor3(_draw(rng, (r, n, n), dist))
    if target_radius is None:
        return a

    rho = spectral_radius(a)
    if rho == 0:
        raise ValueError("random system has zero spectral radius; cannot rescale")
    return t_scale(a, target_radius / rho)


# ===== Simulation =====

def simulate(a, x_init, steps):
    """
    Iterate X(t+1) = A * X(t).

    Args:
        a (Tensor3): n x n x r transition tensor
        x_init (Tensor3): n x h x r initial state
        steps (int): number of transitions l (>= 1)

    Returns:
        Trajectory: states X(0..l)
    """
    if a.n != a.m:
        raise DimensionMismatch(f"transition tensor needs square slices, got {a.dims}")
    if x_init.n != a.n or x_init.r != a.r:
        raise DimensionMismatch(f"initial state {x_init.dims} does not match A {a.dims}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")

    states = [x_init]
    for _ in range(steps):
        states.append(t_product(a, states[-1]))
    return Trajectory(states)


def simulate_controlled(a, b, x_init, inputs):
    """
    Iterate X(t+1) = A * X(t) + B * U(t).

    Args:
        a (Tensor3): n x n x r
        b (Tensor3): n x m x r control tensor
        x_init (Tensor3): n x h x r
        inputs (list): U(0..l-1), each m x h x r

    Returns:
        Trajectory: states X(0..l) and the inputs
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("simulate_controlled needs at least one input")
    if b.n != a.n or b.r != a.r:
        raise DimensionMismatch(f"control tensor {b.dims} does not match A {a.dims}")
    for u in inputs:
        if u.dims != (b.m, x_init.m, a.r):
            raise DimensionMismatch(f"input {u.dims} does not match (m, h, r) = {(b.m, x_init.m, a.r)}")
    if a.n != a.m or x_init.n != a.n or x_init.r != a.r:
        raise DimensionMismatch(f"initial state {x_init.dims} does not match A {a.dims}")

    states = [x_init]
    for u in inputs:
        states.append(t_add(t_product(a, states[-1]), t_product(b, u)))
    return Trajectory(states, inputs)


def assemble(traj):
    """
    Collect a trajectory into X0 = [X(0)..X(l-1)], X1 = [X(1)..X(l)] (and U0).

    Args:
        traj (Trajectory): at least two states

    Returns:
        DataTensors
    """
    if len(traj.states) < 2:
        raise ShapeMismatch("assemble needs at least two states")
    x0 = t_concat_mode2(traj.states[:-1])
    x1 = t_concat_mode2(traj.states[1:])
    u0 = t_concat_mode2(traj.inputs) if traj.inputs else None
    return DataTensors(x0, x1, u0)


# ===== Experiment fixtures =====

def random_data(n, h, l, r, seed, dist='normal', m=0):
    """
    "Random data" mode: states X(0..l) drawn independently, as in the scaling experiments.

    Returns:
        DataTensors: x0, x1 of shape n x lh x r (and u0 when m > 0)
    """
    rng = make_rng(seed, STREAM_DATA)
    states = [random_tensor(n, h, r, dist=dist, rng=rng) for _ in range(l + 1)]
    inputs = None
    if m > 0:
        urng = make_rng(seed, STREAM_INPUTS)
        inputs = [random_tensor(m, h, r, dist=dist, rng=urng) for _ in range(l)]
    return assemble(Trajectory(states, inputs))


def simulated_data(n, h, l, r, seed, radius=None, dist='normal', m=0):
    """
    "Simulated trajectory" mode: random A (optionally rescaled to ``radius``),
    random X(0), then l steps of the TPDS (controlled when m > 0).

    Returns:
        DataTensors: with the generating tensors in ``extras``
    """
    a = random_system(n, r, seed=seed, target_radius=radius, dist=dist)
    x_init = random_tensor(n, h, r, dist=dist, rng=make_rng(seed, STREAM_DATA))

    if m > 0:
        srng = make_rng(seed, STREAM_INPUTS)
        b = random_tensor(n, m, r, dist=dist, rng=srng)
        inputs = [random_tensor(m, h, r, dist=dist, rng=srng) for _ in range(l)]
        data = assemble(simulate_controlled(a, b, x_init, inputs))
        extras = {'a': a, 'b': b}
    else:
        data = assemble(simulate(a, x_init, l))
        extras = {'a': a}

    logger.info(f"Simulated {l} steps of a {n}x{n}x{r} system (h={h}, m={m})")
    return DataTensors(data.x0, data.x1, data.u0, extras)
