"""Replicator-dynamics fixed-point iteration on a similarity graph.

Each node holds a probability vector over senses; the multiplicative update
``x <- x * (Wx) / (x . Wx)`` promotes senses with better-than-average support
from similar nodes. One-hot rows are fixed points, zeros are absorbed, and
for symmetric nonnegative weights the global agreement potential
``sum_ij w_ij <x_i, x_j>`` never decreases.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InputError, NumericalFailureError
from .graph import SimilarityGraph
from .model import AssignmentMatrix, SenseInventory


@dataclass
class DynamicsConfig:
    max_iterations: int = 100
    tolerance: float = 1e-6  # max absolute per-entry change between iterates
    renormalize_each_step: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InputError("max_iterations must be >= 1")
        if self.tolerance <= 0:
            raise InputError("tolerance must be > 0")


@dataclass
class DynamicsTrace:
    iterations_run: int
    final_residual: float
    potential_history: list[float]  # length = iterations_run + 1
    converged: bool
    zero_payoff_nodes: list[int] = field(default_factory=list)


@dataclass
class ConsistencyReport:
    """Per-node check that no single sense beats the node's current mix."""

    ok: np.ndarray  # (n,) bool
    worst_violation: np.ndarray  # (n,) float, max over candidates of u_h - x.u

    @property
    def all_ok(self) -> bool:
        return bool(self.ok.all())


def _as_values(x) -> np.ndarray:
    return x.values if isinstance(x, AssignmentMatrix) else np.asarray(x, dtype=np.float64)


def support_payoff(w: SimilarityGraph | np.ndarray, x) -> np.ndarray:
    """Per-node, per-sense support received from all other nodes: W @ X."""
    wm = w.weights if isinstance(w, SimilarityGraph) else np.asarray(w, dtype=np.float64)
    xv = _as_values(x)
    if wm.shape[0] != wm.shape[1] or wm.shape[1] != xv.shape[0]:
        raise DimensionMismatchError("weights vs assignment", wm.shape, xv.shape)
    return wm @ xv


def _step_from_payoff(
    xv: np.ndarray, u: np.ndarray, renormalize: bool
) -> tuple[np.ndarray, np.ndarray]:
    """One multiplicative update given the payoff matrix; returns (X', zero-payoff rows)."""
    denom = np.einsum("ij,ij->i", xv, u)
    zero = denom <= 0.0
    safe = np.where(zero, 1.0, denom)
    out = xv * u / safe[:, None]
    if zero.any():
        out[zero] = xv[zero]
    if not np.isfinite(out).all():
        bad = int(np.where(~np.isfinite(out).all(axis=1))[0][0])
        raise NumericalFailureError(bad)
    if renormalize:
        sums = out.sum(axis=1)
        np.divide(out, sums[:, None], out=out, where=sums[:, None] > 0)
    return out, zero


def rd_step(
    w: SimilarityGraph | np.ndarray, x, renormalize: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """One replicator step. Returns (X', zero_payoff_row_mask).

    Rows whose total payoff is zero (isolated nodes) are returned unchanged
    and flagged in the mask.
    """
    xv = _as_values(x)
    u = support_payoff(w, xv)
    return _step_from_payoff(xv, u, renormalize)


def potential(w: SimilarityGraph | np.ndarray, x) -> float:
    """Global agreement score sum_ij w_ij <x_i, x_j>."""
    xv = _as_values(x)
    return float(np.einsum("ij,ij->", support_payoff(w, xv), xv))


def run_dynamics(
    w: SimilarityGraph | np.ndarray,
    x0: AssignmentMatrix,
    cfg: DynamicsConfig | None = None,
) -> tuple[AssignmentMatrix, DynamicsTrace]:
    """Iterate rd_step until the max per-entry change drops below tolerance.

    Non-convergence within max_iterations is reported in the trace, not raised.
    """
    cfg = cfg or DynamicsConfig()
    wm = w.weights if isinstance(w, SimilarityGraph) else np.asarray(w, dtype=np.float64)
    xv = x0.values.copy()
    u = support_payoff(wm, xv)
    history = [float(np.einsum("ij,ij->", u, xv))]
    zero_nodes: set[int] = set()
    residual = np.inf
    converged = False
    iters = 0
    try:
        for iters in range(1, cfg.max_iterations + 1):
            xn, zero = _step_from_payoff(xv, u, cfg.renormalize_each_step)
            if zero.any():
                zero_nodes.update(np.where(zero)[0].tolist())
            residual = float(np.abs(xn - xv).max(initial=0.0))
            xv = xn
            u = support_payoff(wm, xv)
            history.append(float(np.einsum("ij,ij->", u, xv)))
            if residual < cfg.tolerance:
                converged = True
                break
    except NumericalFailureError as exc:
        raise NumericalFailureError(exc.node_index, x0.node_ids[exc.node_index]) from None
    trace = DynamicsTrace(
        iterations_run=iters,
        final_residual=residual,
        potential_history=history,
        converged=converged,
        zero_payoff_nodes=sorted(zero_nodes),
    )
    return AssignmentMatrix(list(x0.node_ids), xv), trace


def check_consistency(
    w: SimilarityGraph | np.ndarray, x, tol: float = 1e-6
) -> ConsistencyReport:
    """Verify, per node, that the current mix earns at least the payoff of any
    single candidate sense (within tol). Candidates are the row's support."""
    xv = _as_values(x)
    u = support_payoff(w, xv)
    mixed = np.einsum("ij,ij->i", xv, u)
    candidate_payoff = np.where(xv > 0, u, -np.inf)
    best = candidate_payoff.max(axis=1)
    violation = best - mixed
    # nodes with empty support have no candidates to beat
    violation = np.where(np.isneginf(best), 0.0, violation)
    return ConsistencyReport(ok=violation <= tol, worst_violation=violation)


def predict(x: AssignmentMatrix, inventory: SenseInventory) -> dict[str, str]:
    """Argmax readout; ties broken by the inventory's global sense order."""
    preds: dict[str, str] = {}
    for i, node in enumerate(x.node_ids):
        row = x.values[i]
        if row.max(initial=0.0) <= 0:
            raise InputError(f"node {node!r} has an all-zero assignment row")
        preds[node] = inventory.sense_ids[int(np.argmax(row))]
    return preds
