"""
Informativity
Data-informativity tests for T-product dynamical systems: system identification,
stability, controllability and stabilizability.

Every test has two methods that always reach the same verdict:
  - 'fourier': per-block decisions on the Fourier blocks of the data tensors
    (cost linear in r up to the FFT)
  - 'dense': the same decision on the unfolded bcirc matrices (cost cubic in r)

Rank cutoffs are global in both methods: tol_rank * sigma_max(bcirc(X0)), and
the same factor times (||X1||_2 + |lam| * ||X0||_2) for pencils, where the norms are
those of the bcirc matrices (the largest block norms).
"""

import logging
import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .config import Tolerances, METHODS
from .datagen import STREAM_COMPRESSION, make_rng
from .decomp import dense_eig, dense_svd, eigentuples_of_blocks
from .errors import ShapeMismatch
from .fourier import (
    FourierBlocks,
    block_apply,
    dft_mode3,
    half_indices,
    is_self_conjugate,
    mirror_index,
    pinv_with_cutoff,
    symmetric_block_map,
)
from .tensor3 import bcirc, t_product, t_right_pinv, un_bcirc

logger = logging.getLogger(__name__)

SYSID = 'sysid'
STABILITY = 'stability'
CONTROLLABILITY = 'controllability'
STABILIZABILITY = 'stabilizability'
TESTS = (SYSID, STABILITY, CONTROLLABILITY, STABILIZABILITY)

TEST_NAMES = {
    SYSID: 'system identification',
    STABILITY: 'stability',
    CONTROLLABILITY: 'controllability',
    STABILIZABILITY: 'stabilizability',
}


@dataclass
class BlockRow:
    """Evidence for one Fourier block."""
    index: int
    rank: int
    radius: float = None
    min_singular: float = None
    candidates: int = None


@dataclass
class CandidateRow:
    """A candidate lambda at which the pencil rank was checked."""
    value: complex
    rank: int
    block: int = None
    exempt: bool = False


@dataclass
class PencilDraws:
    """Random quantities for one pencil: generic lam scale, root compressions, screen."""
    z: complex
    compressions: list
    screen: np.ndarray
    start: np.ndarray


@dataclass
class InformativityReport:
    """
    Verdict plus the evidence behind it.

    per_block has one row per Fourier block for the fourier method and is
    empty for the dense method, which reports total_rank instead.
    """
    test: str
    verdict: bool
    method: str
    r: int
    rows: int
    per_block: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    time_s: float = 0.0
    total_rank: int = None
    max_radius: float = None
    seed: int = None
    explanation: str = ''


@dataclass
class Identification:
    """Result of identify: the estimated transition tensor and its diagnostics."""
    a: object
    residual: float
    relative_residual: float
    unique: bool
    ranks: list
    method: str


def _check_method(method):
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def _check_pair(x0, x1):
    if x0.dims != x1.dims:
        raise ShapeMismatch(f"x0 and x1 must have equal dimensions, got {x0.dims} and {x1.dims}")


def _check_inputs(u0, x0):
    if u0 is None:
        return
    if u0.m != x0.m or u0.r != x0.r:
        raise ShapeMismatch(f"u0 {u0.dims} does not match x0 {x0.dims} in modes 2 and 3")


def _is_stable(radius, tol_stab):
    if tol_stab == -np.inf:
        return radius <= 1.0
    return radius < 1.0 - tol_stab


def _is_interior(modulus, tol_stab):
    if tol_stab == -np.inf:
        return modulus < 1.0
    return modulus < 1.0 - tol_stab


# ===== System identification =====

def _sysid_fourier(x0, tols, threads):
    b0 = dft_mode3(x0)
    n, lh, r = x0.dims
    sv = block_apply(b0, lambda blk: np.linalg.svd(blk, compute_uv=False), threads=threads)
    sigma_max = max(float(s[0]) for s in sv)
    cutoff = tols.rank_factor((n * r, lh * r)) * sigma_max

    rows = []
    for k, s in enumerate(sv):
        rank = int(np.sum(s > cutoff))
        min_sv = float(s[n - 1]) if len(s) >= n else 0.0
        rows.append(BlockRow(index=k, rank=rank, min_singular=min_sv))
    total = sum(row.rank for row in rows)
    return total == n * r, rows, total, cutoff


def _sysid_dense(x0, tols):
    n, lh, r = x0.dims
    m0 = bcirc(x0)
    sv = dense_svd(m0)
    cutoff = tols.rank_factor(m0.shape) * float(sv[0])
    total = int(np.sum(sv > cutoff))
    return total == n * r, total, cutoff, m0


def informative_sysid(x0, method='fourier', tolerances=None, threads=1):
    """
    Are the data informative for system identification?

    True iff bcirc(X0) has rank n*r; with the fourier method, iff every
    Fourier block of X0 has rank n (its singular tuple has n non-zero entries).

    Args:
        x0 (Tensor3): n x lh x r state data
        method (str): 'fourier' or 'dense'
        tolerances (Tolerances, optional): rank cutoff settings
        threads (int): worker threads for per-block work

    Returns:
        InformativityReport
    """
    _check_method(method)
    tols = tolerances or Tolerances()
    n, lh, r = x0.dims
    start = time.perf_counter()

    if method == 'fourier':
        verdict, rows, total, cutoff = _sysid_fourier(x0, tols, threads)
    else:
        verdict, total, cutoff, _ = _sysid_dense(x0, tols)
        rows = []
    elapsed = time.perf_counter() - start

    if verdict:
        explanation = f"rank(bcirc(X0)) = {total} = nr; A is uniquely determined"
    else:
        deficient = [row.index for row in rows if row.rank < n]
        where = f" (rank-deficient blocks: {deficient[:8]})" if deficient else ""
        explanation = f"rank(bcirc(X0)) = {total} < nr = {n * r}{where}"

    logger.info(f"sysid/{method}: r={r}, rank {total}/{n * r}, verdict={verdict}")
    return InformativityReport(
        test=SYSID, verdict=verdict, method=method, r=r, rows=n * r, per_block=rows,
        tolerances={**tols.as_dict(), 'rank_cutoff': cutoff}, time_s=elapsed,
        total_rank=total, explanation=explanation,
    )


def identify(x0, x1, method='fourier', tolerances=None):
    """
    Estimate A from X1 = A * X0 as A = X1 * X0^+ (Moore-Penrose right T-inverse).

    Args:
        x0, x1 (Tensor3): n x lh x r data tensors
        method (str): 'fourier' (per-block pinv) or 'dense' (pinv of bcirc(X0))
        tolerances (Tolerances, optional): rank cutoff settings

    Returns:
        Identification: the estimate (minimum-norm when not unique), the
            residual max|X1 - A * X0|, and the uniqueness flag
    """
    _check_method(method)
    _check_pair(x0, x1)
    tols = tolerances or Tolerances()
    n, lh, r = x0.dims

    if method == 'fourier':
        pinv, ranks = t_right_pinv(x0, tol_rank=tols.rank_factor((n * r, lh * r)), return_ranks=True)
        a = t_product(x1, pinv)
        unique = all(rank == n for rank in ranks)
    else:
        m0 = bcirc(x0)
        sv = dense_svd(m0)
        cutoff = tols.rank_factor(m0.shape) * float(sv[0])
        dense_a = bcirc(x1) @ pinv_with_cutoff(m0, cutoff)
        a = un_bcirc(dense_a, (n, n, r), tol_circ=tols.tol_circ)
        ranks = [int(np.sum(sv > cutoff))]
        unique = ranks[0] == n * r

    residual = float(np.max(np.abs(x1.data - t_product(a, x0).data)))
    relative = residual / max(x1.max_abs(), np.finfo(np.float64).tiny)
    if not unique:
        logger.warning("X0 is rank deficient: returning the minimum-norm solution, A is not unique")
    return Identification(a, residual, relative, unique, ranks, method)


# ===== Stability =====

def informative_stability(x0, x1, method='fourier', tolerances=None, threads=1):
    """
    Are the data informative for stability?

    Conditions: (i) bcirc(X0) has rank n*r and (ii) every eigenvalue of
    bcirc(X1 * X0^+) lies strictly inside the unit circle (margin tol_stab).
    The fourier method checks (ii) block by block on the eigentuples of
    X1 * X0^+. Condition (ii) is not evaluated when (i) fails.

    Returns:
        InformativityReport: per-block spectral radii for the fourier method
    """
    _check_method(method)
    _check_pair(x0, x1)
    tols = tolerances or Tolerances()
    n, lh, r = x0.dims
    start = time.perf_counter()
    max_radius = None

    if method == 'fourier':
        full_rank, rows, total, cutoff = _sysid_fourier(x0, tols, threads)
        if full_rank:
            b0, b1 = dft_mode3(x0), dft_mode3(x1)
            stacked = FourierBlocks(np.concatenate([b0.blocks, b1.blocks], axis=2))
            a_blocks = symmetric_block_map(
                stacked, lambda blk: blk[:, lh:] @ pinv_with_cutoff(blk[:, :lh], cutoff), threads=threads
            )
            radii = np.max(np.abs(eigentuples_of_blocks(a_blocks, threads=threads).values), axis=1)
            for row, radius in zip(rows, radii):
                row.radius = float(radius)
            max_radius = float(np.max(radii))
    else:
        full_rank, total, cutoff, m0 = _sysid_dense(x0, tols)
        rows = []
        if full_rank:
            dense_a = bcirc(x1) @ pinv_with_cutoff(m0, cutoff)
            max_radius = float(np.max(np.abs(dense_eig(dense_a))))

    verdict = full_rank and _is_stable(max_radius, tols.tol_stab)
    elapsed = time.perf_counter() - start

    if not full_rank:
        explanation = f"condition (i) fails: rank(bcirc(X0)) = {total} < nr = {n * r}"
    elif verdict:
        explanation = f"identified system is stable: spectral radius {max_radius:.6g} < 1"
    else:
        unstable = [row.index for row in rows if row.radius is not None and not _is_stable(row.radius, tols.tol_stab)]
        where = f" (unstable blocks: {unstable[:8]})" if unstable else ""
        explanation = f"identified system is not stable: spectral radius {max_radius:.6g}{where}"

    logger.info(f"stability/{method}: r={r}, rank {total}/{n * r}, radius={max_radius}, verdict={verdict}")
    return InformativityReport(
        test=STABILITY, verdict=verdict, method=method, r=r, rows=n * r, per_block=rows,
        tolerances={**tols.as_dict(), 'rank_cutoff': cutoff}, time_s=elapsed,
        total_rank=total, max_radius=max_radius, explanation=explanation,
    )


# ===== Pencil rank tests =====

ROOT_COMPRESSIONS = 2
SCREEN_ITERATIONS = 4


def _rank_at(m0, m1, lam, scale0, scale1, factor):
    sv = np.linalg.svd(m1 - lam * m0, compute_uv=False)
    return int(np.sum(sv > factor * (scale1 + abs(lam) * scale0)))


def _reduce_pencil(m0, m1):
    """
    Replace an N x K pencil with K > 2N by an N x 2N pencil that has the same
    singular values at every lam: [M0; M1] = R^H Q^H, Q with orthonormal columns.
    """
    rows, cols = m0.shape
    if cols <= 2 * rows:
        return m0, m1
    _, r = scipy.linalg.qr(np.vstack([m0, m1]).conj().T, mode='economic')
    rh = r.conj().T
    return rh[:rows], rh[rows:]


def _compressed_roots(m0, m1, w):
    """Roots of det((M1 - lam M0) W): finite generalized eigenvalues of (M1 W, M0 W)."""
    vals = scipy.linalg.eigvals(m1 @ w, m0 @ w)
    return vals[np.isfinite(vals)]


def _cluster_roots(roots, tol_cluster):
    """
    Single-linkage clusters: two roots are linked when they lie within
    tol_cluster * (1 + |lam|) of each other.

    Returns:
        list: index arrays into ``roots``, one per cluster
    """
    if roots.size == 0:
        return []
    points = np.column_stack([roots.real, roots.imag])
    neighbours = cKDTree(points).query_ball_point(points, r=tol_cluster * (1.0 + np.abs(roots)))
    src = np.repeat(np.arange(roots.size), [len(nb) for nb in neighbours])
    dst = np.concatenate([np.asarray(nb, dtype=int) for nb in neighbours])
    graph = coo_matrix((np.ones(src.size), (src, dst)), shape=(roots.size, roots.size))
    count, labels = connected_components(graph, directed=False)
    return [np.flatnonzero(labels == c) for c in range(count)]


def _screen_form(m0, m1, w):
    """Complex generalized Schur form (S, T) of the screening compression (M1 W, M0 W)."""
    s, t, _, _ = scipy.linalg.qz(m1 @ w, m0 @ w, output='complex')
    return s, t


def _screen_sigma(form, lam, start):
    """
    Upper estimate of sigma_min((M1 - lam M0) W) by inverse iteration on the
    triangular S - lam T; 0.0 when S - lam T is numerically singular.
    """
    s, t = form
    tri = s - lam * t
    x = start
    norm = 0.0
    try:
        for _ in range(SCREEN_ITERATIONS):
            y = scipy.linalg.solve_triangular(tri, x, trans='C', check_finite=False)
            w = scipy.linalg.solve_triangular(tri, y, check_finite=False)
            norm = float(np.linalg.norm(w))
            if not np.isfinite(norm) or norm == 0.0:
                return 0.0
            x = w / norm
    except np.linalg.LinAlgError:
        return 0.0
    return 1.0 / np.sqrt(norm)


def _analyse_pencil(m0, m1, draws, scale0, scale1, factor, tols, exempt_interior):
    """
    Decide whether M1 - lam M0 keeps full row rank for all lam (or all |lam| >= 1).

    Candidates are the finite roots of every compression, pooled and clustered.
    Each cluster is examined at its centroid and, when the centroid keeps full
    rank and the cluster has several members, at every member. A point is
    first screened against a separate compression (a rank drop is a root of
    every compression) and then verified by the pencil rank. A root of
    (M1 - lam M0) W is exact for a pencil perturbed by about eps * cond(W), so
    candidate cutoffs are scaled by the largest cond(W) in the cluster.

    Returns:
        dict: generic_rank, roots (candidates found), clusters, screened
            (points dismissed by the screen), checked (list of
            (lam, rank, exempt)), ok (bool)
    """
    rows = m0.shape[0]
    m0, m1 = _reduce_pencil(m0, m1)

    lam0 = draws.z * (scale1 / scale0 if scale0 > 0 and scale1 > 0 else 1.0)
    generic = _rank_at(m0, m1, lam0, scale0, scale1, factor)
    if generic < rows:
        return {'generic_rank': generic, 'roots': 0, 'clusters': 0, 'screened': 0, 'checked': [], 'ok': False}

    roots, conds = [], []
    for w in draws.compressions:
        found = _compressed_roots(m0, m1, w)
        roots.append(found)
        conds.append(np.full(found.size, np.linalg.cond(w)))
    roots, conds = np.concatenate(roots), np.concatenate(conds)
    clusters = _cluster_roots(roots, tols.tol_cluster)

    form = _screen_form(m0, m1, draws.screen)
    screen_norm = float(np.linalg.norm(draws.screen, 2))
    checked = []
    screened = 0

    def examine(lam, cutoff_factor):
        nonlocal screened
        bound = np.sqrt(min(cutoff_factor, 1.0)) * screen_norm * (scale1 + abs(lam) * scale0)
        if _screen_sigma(form, lam, draws.start) > bound:
            screened += 1
            return rows
        rank = _rank_at(m0, m1, lam, scale0, scale1, cutoff_factor)
        checked.append((lam, rank, exempt_interior and _is_interior(abs(lam), tols.tol_stab)))
        return rank

    for members in clusters:
        cutoff_factor = factor * float(np.max(conds[members]))
        centroid = complex(np.mean(roots[members]))
        if examine(centroid, cutoff_factor) == rows and members.size > 1:
            for i in members:
                examine(complex(roots[i]), cutoff_factor)

    ok = all(rank == rows or exempt for _, rank, exempt in checked)
    return {'generic_rank': generic, 'roots': int(roots.size), 'clusters': len(clusters),
            'screened': screened, 'checked': checked, 'ok': ok}


def _complex_normal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _draws(rng, rows, cols):
    """Draws for an N x K pencil; compressions are K' x N with K' = min(K, 2N) after reduction."""
    inner = min(cols, 2 * rows)
    z = _complex_normal(rng, ())
    compressions = [_complex_normal(rng, (inner, rows)) for _ in range(ROOT_COMPRESSIONS)]
    screen = _complex_normal(rng, (inner, rows))
    start = _complex_normal(rng, (rows,))
    return PencilDraws(z, compressions, screen, start / np.linalg.norm(start))


def pencil_rank(x0, x1, lam, method='fourier', tolerances=None):
    """
    Rank of bcirc(X1 - lam X0) at one complex lam.

    The fourier method sums the per-block ranks; both methods use the same
    cutoff, pencil_factor * (||bcirc(X1)||_2 + |lam| ||bcirc(X0)||_2), where
    pencil_factor defaults to the tol_rank factor of the unfolded pencil.

    Returns:
        int: numerical rank (at most n*r)
    """
    _check_method(method)
    _check_pair(x0, x1)
    tols = tolerances or Tolerances()
    n, lh, r = x0.dims
    factor = tols.pencil_factor((n * r, lh * r))

    if method == 'fourier':
        b0, b1 = dft_mode3(x0).blocks, dft_mode3(x1).blocks
        scale0, scale1 = _block_norm(b0), _block_norm(b1)
        return sum(_rank_at(b0[k], b1[k], lam, scale0, scale1, factor) for k in range(r))

    m0, m1 = bcirc(x0), bcirc(x1)
    scale0, scale1 = _matrix_norm(m0), _matrix_norm(m1)
    return _rank_at(m0, m1, lam, scale0, scale1, factor)


def _block_norm(blocks):
    return float(np.max(np.linalg.svd(blocks, compute_uv=False)))


def _matrix_norm(matrix):
    return float(dense_svd(matrix)[0])


def _procedure(factor):
    return {
        'pencil_factor': factor,
        'generic_check': 'random-lambda',
        'root_procedure': f"union-of-{ROOT_COMPRESSIONS}-compressions",
        'root_clustering': 'single-linkage',
        'candidate_screen': 'inverse-iteration-on-third-compression',
        'candidate_cutoff': 'pencil_factor*cond(W)*(|X1|+|lam||X0|)',
    }


def _pencil_test(test, u0, x0, x1, method, tolerances, seed, threads):
    _check_method(method)
    _check_pair(x0, x1)
    _check_inputs(u0, x0)
    tols = tolerances or Tolerances()
    exempt_interior = test == STABILIZABILITY
    n, lh, r = x0.dims
    factor = tols.pencil_factor((n * r, lh * r))
    rng = make_rng(seed, STREAM_COMPRESSION)
    start = time.perf_counter()

    per_block, candidates = [], []
    if method == 'fourier':
        b0, b1 = dft_mode3(x0).blocks, dft_mode3(x1).blocks
        scale0, scale1 = _block_norm(b0), _block_norm(b1)
        half = half_indices(r)
        draws = {k: _draws(rng, n, lh) for k in half}

        def analyse(k):
            m0, m1 = b0[k], b1[k]
            if is_self_conjugate(k, r):
                m0, m1 = m0.real, m1.real
            return _analyse_pencil(m0, m1, draws[k], scale0, scale1, factor, tols, exempt_interior)

        results = dict(zip(half, block_apply(np.arange(r), analyse, threads=threads, indices=half)))
        sources = [k if k in results else mirror_index(k, r) for k in range(r)]
        for k, source in enumerate(sources):
            res = results[source]
            per_block.append(BlockRow(index=k, rank=res['generic_rank'], candidates=len(res['checked'])))
            for lam, rank, exempt in res['checked']:
                value = np.conj(lam) if source != k else lam
                candidates.append(CandidateRow(value, rank, block=k, exempt=exempt))
        ok = all(res['ok'] for res in results.values())
        total = sum(row.rank for row in per_block)
        roots = sum(results[source]['roots'] for source in sources)
        clusters = sum(results[source]['clusters'] for source in sources)
        screened = sum(results[source]['screened'] for source in sources)
    else:
        m0, m1 = bcirc(x0), bcirc(x1)
        scale0, scale1 = _matrix_norm(m0), _matrix_norm(m1)
        res = _analyse_pencil(m0, m1, _draws(rng, n * r, lh * r), scale0, scale1, factor, tols, exempt_interior)
        for lam, rank, exempt in res['checked']:
            candidates.append(CandidateRow(lam, rank, exempt=exempt))
        ok = res['ok']
        total = res['generic_rank']
        roots, clusters, screened = res['roots'], res['clusters'], res['screened']

    elapsed = time.perf_counter() - start
    verdict = bool(ok)
    generic_full = total == n * r
    failing = [c for c in candidates if c.rank < (n if method == 'fourier' else n * r) and not c.exempt]

    if not generic_full:
        explanation = f"X1 - lam X0 is rank deficient for every lam (generic rank {total} < nr = {n * r})"
    elif verdict:
        scope = "|lam| >= 1" if exempt_interior else "all lam"
        explanation = (f"full row rank for {scope}; {len(candidates)} point(s) verified, {screened} screened out, "
                       f"over {clusters} cluster(s) of {roots} candidate root(s)")
    else:
        lam = failing[0].value
        explanation = f"rank drops at lam = {_format_complex(lam)} (|lam| = {abs(lam):.6g})"

    logger.info(f"{test}/{method}: r={r}, generic rank {total}/{n * r}, "
                f"{roots} root(s) in {clusters} cluster(s), verdict={verdict}")
    return InformativityReport(
        test=test, verdict=verdict, method=method, r=r, rows=n * r, per_block=per_block,
        candidates=candidates, tolerances={**tols.as_dict(), **_procedure(factor)}, time_s=elapsed,
        total_rank=total, seed=seed, explanation=explanation,
    )


def informative_controllability(u0, x0, x1, method='fourier', tolerances=None, seed=0, threads=1):
    """
    Are the data informative for controllability?

    True iff X1 - lam X0 has full row rank for every complex lam; the fourier
    method asks this of every Fourier block (rank n each). Candidate lam are
    the roots of det((X1_k - lam X0_k) W) for two random complex compressions
    W drawn from ``seed``. Roots from both draws are pooled and clustered;
    every cluster centroid (and every member of a cluster whose centroid
    keeps full rank) is screened against a third compression and then
    verified by the pencil rank. u0 completes the data set but does not
    enter the rank test.

    Returns:
        InformativityReport: generic rank per block plus the verified candidates
    """
    return _pencil_test(CONTROLLABILITY, u0, x0, x1, method, tolerances, seed, threads)


def informative_stabilizability(u0, x0, x1, method='fourier', tolerances=None, seed=0, threads=1):
    """
    Are the data informative for stabilizability?

    As informative_controllability, except that candidate roots with
    |lam| < 1 - tol_stab are exempt from the rank requirement. Generic rank
    deficiency still fails.
    """
    return _pencil_test(STABILIZABILITY, u0, x0, x1, method, tolerances, seed, threads)


# ===== Reports =====

def _format_complex(z):
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _format_bool(value):
    return 'true' if value else 'false'


def format_report(report, fmt='text'):
    """
    Render a report as human-readable text or line-oriented key=value.

    Args:
        report (InformativityReport): the report
        fmt (str): 'text' or 'machine'

    Returns:
        str: the rendered report, newline terminated
    """
    if fmt == 'machine':
        lines = [
            f"test={report.test}",
            f"method={report.method}",
            f"verdict={_format_bool(report.verdict)}",
            f"r={report.r}",
            f"rows={report.rows}",
        ]
        if report.total_rank is not None:
            lines.append(f"total_rank={report.total_rank}")
        if report.max_radius is not None:
            lines.append(f"max_radius={report.max_radius:.17g}")
        if report.seed is not None:
            lines.append(f"seed={report.seed}")
        for key, value in report.tolerances.items():
            lines.append(f"{key}={'auto' if value is None else value}")
        lines.append(f"time_s={report.time_s:.6g}")
        for row in report.per_block:
            line = f"block {row.index} rank={row.rank}"
            if row.radius is not None:
                line += f" radius={row.radius:.17g}"
            if row.min_singular is not None:
                line += f" min_sv={row.min_singular:.17g}"
            if row.candidates is not None:
                line += f" candidates={row.candidates}"
            lines.append(line)
        for cand in report.candidates:
            line = f"candidate λ={_format_complex(cand.value)} rank={cand.rank}"
            if cand.block is not None:
                line += f" block={cand.block}"
            line += f" exempt={_format_bool(cand.exempt)}"
            lines.append(line)
        lines.append(f"explanation={report.explanation}")
        return "\n".join(lines) + "\n"

    if fmt != 'text':
        raise ValueError(f"unknown report format {fmt!r}")

    mark = "✅ INFORMATIVE" if report.verdict else "❌ NOT INFORMATIVE"
    lines = [
        f"{mark} for {TEST_NAMES[report.test]} ({report.method} method, r = {report.r})",
        f"   {report.explanation}",
    ]
    if report.total_rank is not None:
        lines.append(f"   rank: {report.total_rank} of {report.rows}")
    if report.max_radius is not None:
        lines.append(f"   spectral radius: {report.max_radius:.6g}")
    for row in report.per_block:
        detail = f"rank {row.rank}"
        if row.radius is not None:
            detail += f", radius {row.radius:.6g}"
        if row.candidates:
            detail += f", {row.candidates} candidate(s)"
        lines.append(f"   block {row.index}: {detail}")
    for cand in report.candidates:
        tag = " (exempt, |λ| < 1)" if cand.exempt else ""
        lines.append(f"   candidate λ = {_format_complex(cand.value)}: rank {cand.rank}{tag}")
    lines.append(f"   decided in {report.time_s:.4g} s")
    return "\n".join(lines) + "\n"
