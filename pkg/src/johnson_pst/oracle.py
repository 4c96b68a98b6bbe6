"""Independent numeric verification of transfer claims.

Builds the explicit subset-indexed weighted adjacency matrix, diagonalizes
it as a real symmetric matrix, and evaluates U(t) = exp(-itA) spectrally:
U(tau) = V exp(-i tau Lambda) V^T.  No dual Hahn formula enters this path.

Tolerances: the eigendecomposition residual must stay below 1e-8 relative
to max(1, |spectrum|), else NumericFailure; a report is marked invalid
when the unitarity defect of U reaches 1e-9.  Times enter only as the
exact rational tau/pi times float pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import NumericFailure
from .scheme import DEFAULT_ADJACENCY_CAP, WeightVector, adjacency, colex_rank
from .unweighted import UnionSelector

RESIDUAL_TOL = 1e-8
UNITARITY_TOL = 1e-9

System = Union[WeightVector, UnionSelector, Sequence]


@dataclass(frozen=True)
class WalkReport:
    """fidelity = |U(tau)| at the antipodal pair; invalid if U drifted."""

    fidelity: float
    unitarity_defect: float
    pair: tuple[tuple[int, ...], tuple[int, ...]]
    valid: bool


def _as_weight_list(k: int, system: System) -> list[Fraction]:
    if isinstance(system, WeightVector):
        if system.k != k:
            raise ValueError(f"weight vector has k={system.k}, expected {k}")
        return list(system.entries)
    if isinstance(system, UnionSelector):
        if system.k != k:
            raise ValueError(f"selector has k={system.k}, expected {k}")
        return [Fraction(0)] + [Fraction(b) for b in system.bits]
    return [Fraction(w) for w in system]


def _antipodal_pair(n: int, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(range(1, k + 1)), tuple(range(k + 1, n + 1))


def _diagonalize(n: int, k: int, system: System, cap: int):
    if n != 2 * k:
        raise ValueError(f"the antipodal pair needs n = 2k, got n={n}, k={k}")
    weights = _as_weight_list(k, system)
    if len(weights) > k + 1:
        raise ValueError(f"at most k+1 = {k + 1} weights allowed, got {len(weights)}")
    size = None
    A = None
    for r, w in enumerate(weights):
        if w == 0:
            continue
        block = adjacency(n, k, r, cap=cap).astype(np.float64)
        A = float(w) * block if A is None else A + float(w) * block
        size = block.shape[0]
    if A is None:
        # all-zero weighting still has a well-defined (trivial) walk
        from .exactmath import binom
        size = binom(n, k)
        A = np.zeros((size, size))
    lam, V = np.linalg.eigh(A)
    scale = max(1.0, float(np.max(np.abs(lam))))
    residual = float(np.max(np.abs(A @ V - V * lam)))
    if residual > RESIDUAL_TOL * scale:
        raise NumericFailure(
            f"eigendecomposition residual {residual:.3e} above {RESIDUAL_TOL:.0e} * {scale:.3e}",
            residual=residual,
        )
    pair = _antipodal_pair(n, k)
    iu, iv = colex_rank(pair[0]), colex_rank(pair[1])
    return lam, V, pair, iu, iv


def walk_fidelity(
    n: int,
    k: int,
    system: System,
    tau_over_pi: Fraction | int | float,
    cap: int = DEFAULT_ADJACENCY_CAP,
) -> WalkReport:
    """|U(tau)| at the antipodal pair, plus the unitarity defect of U."""
    lam, V, pair, iu, iv = _diagonalize(n, k, system, cap)
    tau = float(tau_over_pi) * math.pi
    phases = np.exp(-1j * tau * lam)
    U = (V * phases) @ V.T
    fidelity = float(np.abs(U[iu, iv]))
    defect = float(np.max(np.abs(U @ U.conj().T - np.identity(U.shape[0]))))
    return WalkReport(
        fidelity=fidelity,
        unitarity_defect=defect,
        pair=pair,
        valid=defect < UNITARITY_TOL,
    )


def fidelity_curve(
    n: int,
    k: int,
    system: System,
    t_grid: Sequence,
    cap: int = DEFAULT_ADJACENCY_CAP,
) -> list[tuple[float, float]]:
    """Fidelity |U(t pi)| at the antipodal pair sampled over t in t_grid.

    Only the pair entry of U is evaluated: with z_s = V[u,s] V[v,s],
    U(t)_{uv} = sum_s z_s exp(-i pi t lambda_s).
    """
    lam, V, _, iu, iv = _diagonalize(n, k, system, cap)
    z = V[iu, :] * V[iv, :]
    out = []
    for t in t_grid:
        tf = float(t)
        amp = np.sum(z * np.exp(-1j * math.pi * tf * lam))
        out.append((tf, float(abs(amp))))
    return out
