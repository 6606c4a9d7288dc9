"""Synthetic Gaussian-cluster datasets for desk-scale benchmarking.

Each cluster is one sense of a single shared verb, so the candidate set of
every node spans all clusters. Cluster centers are mutually orthogonal unit
vectors; points are unit-normalized noisy copies of their center.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .graph import EmbeddingSet
from .model import NodeLabeling, SenseInventory

SYNTH_VERB = "verb"


def make_clusters(
    clusters: int, points: int, dim: int, noise: float, seed: int
) -> tuple[EmbeddingSet, SenseInventory, NodeLabeling]:
    if clusters < 2:
        raise InputError(f"need at least 2 clusters, got {clusters}")
    if points < clusters:
        raise InputError(f"need at least one point per cluster ({points} < {clusters})")
    if dim < clusters:
        raise InputError(f"dim must be >= clusters for orthogonal centers ({dim} < {clusters})")
    if noise < 0:
        raise InputError("noise must be >= 0")

    rng = np.random.default_rng(seed)
    centers, _ = np.linalg.qr(rng.standard_normal((dim, clusters)))
    centers = centers.T  # (clusters, dim), orthonormal rows

    assignments = np.arange(points) % clusters
    vecs = centers[assignments] + noise * rng.standard_normal((points, dim))
    norms = np.linalg.norm(vecs, axis=1)
    if (norms == 0).any():
        raise InputError("degenerate noise produced a zero vector")
    vecs /= norms[:, None]

    width = len(str(points - 1))
    node_ids = [f"n{i:0{width}d}" for i in range(points)]
    sense_ids = [f"sense{c}" for c in range(clusters)]
    inventory = SenseInventory([SYNTH_VERB], {SYNTH_VERB: sense_ids})
    labeling = NodeLabeling(
        node_ids,
        {n: SYNTH_VERB for n in node_ids},
        {n: sense_ids[assignments[i]] for i, n in enumerate(node_ids)},
    )
    emb = EmbeddingSet(node_ids, vecs, "SYNTH")
    return emb, inventory, labeling


def nearest_labeled_centroid(
    emb: EmbeddingSet,
    truth: NodeLabeling,
    labeled: list[str],
    unlabeled: list[str],
    inventory: SenseInventory,
) -> dict[str, str]:
    """Independent readout: assign each unlabeled node to the sense whose
    labeled-centroid is closest in cosine. Used as a benchmark oracle."""
    index = {n: i for i, n in enumerate(emb.node_ids)}
    sums: dict[str, np.ndarray] = {}
    for node in labeled:
        sense = truth.senses[node]
        sums.setdefault(sense, np.zeros(emb.dim))
        sums[sense] += emb.vectors[index[node]]
    centroids = {}
    for sense, total in sums.items():
        norm = np.linalg.norm(total)
        if norm == 0:
            raise InputError(f"labeled centroid for sense {sense!r} is degenerate")
        centroids[sense] = total / norm
    preds = {}
    for node in unlabeled:
        verb = truth.verbs[node]
        vec = emb.vectors[index[node]]
        best_s, best_c = None, -np.inf
        for sense in inventory.senses[verb]:
            if sense not in centroids:
                continue
            c = float(vec @ centroids[sense])
            if c > best_c:
                best_c, best_s = c, sense
        if best_s is None:
            raise InputError(f"no labeled centroid available for node {node!r}")
        preds[node] = best_s
    return preds
