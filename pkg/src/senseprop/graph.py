"""Similarity-graph construction and embedding fusion.

Embeddings are unit-norm row vectors; the graph weight between two nodes is
their cosine similarity, clamped at zero (the dynamics require nonnegative
payoffs, and mean-pooled word vectors can produce negative cosines).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InputError

UNIT_NORM_TOL = 1e-6


@dataclass
class EmbeddingSet:
    """Node ids paired with unit-norm feature vectors for one modality."""

    node_ids: list[str]
    vectors: np.ndarray  # (n, d) float64
    modality_tag: str = ""

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.node_ids):
            raise DimensionMismatchError(
                "embedding matrix vs node ids", self.vectors.shape, (len(self.node_ids),)
            )
        if len(set(self.node_ids)) != len(self.node_ids):
            raise InputError("duplicate node ids in embedding set")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def validate_norms(self, tol: float = UNIT_NORM_TOL):
        norms = np.linalg.norm(self.vectors, axis=1)
        bad = np.where(np.abs(norms - 1.0) > tol)[0]
        if bad.size:
            i = int(bad[0])
            raise InputError(
                f"embedding row for node {self.node_ids[i]!r} has norm {norms[i]:.6g}, "
                f"expected 1 within {tol:g}"
            )


@dataclass
class SimilarityGraph:
    """Symmetric nonnegative weight matrix with zero diagonal."""

    weights: np.ndarray  # (n, n) float64

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        w = self.weights
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionMismatchError("similarity matrix", w.shape, "square")

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def validate(self, sym_tol: float = 1e-12):
        w = self.weights
        if np.abs(w - w.T).max(initial=0.0) > sym_tol:
            raise InputError("similarity matrix is not symmetric")
        if np.diagonal(w).any():
            raise InputError("similarity matrix has nonzero diagonal")
        if w.min(initial=0.0) < 0:
            raise InputError("similarity matrix has negative entries")


def build_similarity(emb: EmbeddingSet, top_k: int | None = None) -> SimilarityGraph:
    """Pairwise clamped-cosine graph over an embedding set.

    ``top_k`` keeps only each node's k strongest neighbours (symmetrized by
    max); default is the full dense graph.
    """
    norms = np.linalg.norm(emb.vectors, axis=1)
    zero = np.where(norms == 0)[0]
    if zero.size:
        raise InputError(f"zero-norm embedding for node {emb.node_ids[int(zero[0])]!r}")
    unit = emb.vectors / norms[:, None]
    w = unit @ unit.T
    np.clip(w, 0.0, None, out=w)
    np.fill_diagonal(w, 0.0)
    if top_k is not None:
        if top_k < 1:
            raise InputError(f"top_k must be >= 1, got {top_k}")
        keep = np.zeros_like(w, dtype=bool)
        order = np.argsort(-w, axis=1)[:, :top_k]
        np.put_along_axis(keep, order, True, axis=1)
        w = np.where(keep | keep.T, w, 0.0)
    w = (w + w.T) / 2.0  # exact symmetry despite fp rounding
    return SimilarityGraph(w)


def fuse_concat(a: EmbeddingSet, b: EmbeddingSet) -> EmbeddingSet:
    """Concatenate two modalities row-wise and re-normalize to unit length."""
    if a.node_ids != b.node_ids:
        diverge = next(
            (i for i, (x, y) in enumerate(zip(a.node_ids, b.node_ids)) if x != y),
            min(len(a.node_ids), len(b.node_ids)),
        )
        raise InputError(
            f"node-id mismatch between modalities {a.modality_tag!r} and {b.modality_tag!r} "
            f"at position {diverge}"
        )
    fused = np.concatenate([a.vectors, b.vectors], axis=1)
    norms = np.linalg.norm(fused, axis=1)
    zero = np.where(norms == 0)[0]
    if zero.size:
        raise InputError(f"zero-norm fused vector for node {a.node_ids[int(zero[0])]!r}")
    fused /= norms[:, None]
    tag = "+".join(t for t in (a.modality_tag, b.modality_tag) if t)
    return EmbeddingSet(list(a.node_ids), fused, tag)


def mean_pool_unit(vectors) -> np.ndarray:
    """Arithmetic mean of a non-empty list of vectors, scaled to unit norm."""
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.shape[0] == 0:
        raise InputError("cannot mean-pool an empty vector list")
    mean = arr.mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0:
        raise InputError("mean of pooled vectors has zero norm")
    return mean / norm
