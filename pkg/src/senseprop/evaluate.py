"""Baselines, accuracy on the unlabeled partition, and multi-seed sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .dynamics import DynamicsConfig, predict, run_dynamics
from .errors import InputError
from .graph import EmbeddingSet, build_similarity
from .model import (
    NodeLabeling,
    SamplingPlan,
    SenseInventory,
    init_assignment,
    sample_labeled_set,
)


@dataclass
class SenseEmbeddingSet:
    """Unit-norm dictionary-definition vector per (verb, sense)."""

    vectors: dict[tuple[str, str], np.ndarray]

    def __post_init__(self):
        self.vectors = {
            k: np.asarray(v, dtype=np.float64) for k, v in self.vectors.items()
        }

    def validate_norms(self, tol: float = 1e-6):
        for (verb, sense), v in self.vectors.items():
            norm = float(np.linalg.norm(v))
            if abs(norm - 1.0) > tol:
                raise InputError(
                    f"sense embedding ({verb!r}, {sense!r}) has norm {norm:.6g}"
                )


@dataclass
class ExperimentResult:
    modality_tag: str
    protocol: str
    class_filter: str  # "all" | "motion" | "non-motion"
    labels_per_class: int
    seeds: list[int]
    accuracies: list[float]
    mean: float = field(init=False)
    std: float = field(init=False)

    def __post_init__(self):
        acc = np.asarray(self.accuracies, dtype=np.float64)
        self.mean = float(acc.mean())
        # sample std; a single seed carries no spread information
        self.std = float(acc.std(ddof=1)) if len(acc) > 1 else 0.0


def accuracy(
    predictions: Mapping[str, str], truth: NodeLabeling, unlabeled: Iterable[str]
) -> float:
    unlabeled = list(unlabeled)
    if not unlabeled:
        raise InputError("empty unlabeled set")
    correct = 0
    for node in unlabeled:
        if node not in predictions:
            raise InputError(f"no prediction for unlabeled node {node!r}")
        if node not in truth.senses:
            raise InputError(f"no ground-truth sense for node {node!r}")
        correct += predictions[node] == truth.senses[node]
    return correct / len(unlabeled)


def baseline_fs(
    inventory: SenseInventory, labeling: NodeLabeling, unlabeled: Iterable[str]
) -> dict[str, str]:
    """First sense in the inventory's (dictionary) order, per verb."""
    return {n: inventory.senses[labeling.verbs[n]][0] for n in unlabeled}


def baseline_mfs(
    inventory: SenseInventory, truth: NodeLabeling, unlabeled: Iterable[str]
) -> dict[str, str]:
    """Most frequent sense of each verb over the full ground truth; ties go to
    inventory order. Supervised reference: needs all labels."""
    counts: dict[str, dict[str, int]] = {v: {} for v in inventory.verbs}
    for node in truth.node_ids:
        sense = truth.senses.get(node)
        if sense is None:
            raise InputError(f"MFS baseline needs full ground truth; node {node!r} unlabeled")
        vc = counts[truth.verbs[node]]
        vc[sense] = vc.get(sense, 0) + 1
    mfs: dict[str, str] = {}
    for verb in inventory.verbs:
        vc = counts[verb]
        best = -1
        pick = inventory.senses[verb][0]
        for s in inventory.senses[verb]:  # inventory order wins ties
            if vc.get(s, 0) > best:
                best = vc.get(s, 0)
                pick = s
        mfs[verb] = pick
    return {n: mfs[truth.verbs[n]] for n in unlabeled}


def baseline_unsupervised(
    emb: EmbeddingSet,
    sense_emb: SenseEmbeddingSet,
    labeling: NodeLabeling,
    unlabeled: Iterable[str],
    inventory: SenseInventory,
) -> dict[str, str]:
    """Cosine between each node's embedding and its verb's candidate sense
    embeddings; argmax, ties by inventory order."""
    index = {n: i for i, n in enumerate(emb.node_ids)}
    preds: dict[str, str] = {}
    for node in unlabeled:
        verb = labeling.verbs[node]
        vec = emb.vectors[index[node]]
        best_s, best_c = None, -np.inf
        for sense in inventory.senses[verb]:
            key = (verb, sense)
            if key not in sense_emb.vectors:
                raise InputError(f"missing sense embedding for ({verb!r}, {sense!r})")
            c = float(vec @ sense_emb.vectors[key])
            if c > best_c:
                best_c, best_s = c, sense
        preds[node] = best_s
    return preds


def _filter_by_class(
    emb: EmbeddingSet, inventory: SenseInventory, truth: NodeLabeling, class_filter: str
) -> tuple[EmbeddingSet, SenseInventory, NodeLabeling]:
    if class_filter == "all":
        return emb, inventory, truth
    verbs = [v for v in inventory.verbs if inventory.motion_class.get(v) == class_filter]
    if not verbs:
        raise InputError(f"no verbs in class {class_filter!r}")
    inv = inventory.subset(verbs)
    keep = [n for n in truth.node_ids if truth.verbs[n] in set(verbs)]
    truth_sub = truth.subset(keep)
    index = {n: i for i, n in enumerate(emb.node_ids)}
    rows = np.array([index[n] for n in keep], dtype=np.intp)
    emb_sub = EmbeddingSet(keep, emb.vectors[rows], emb.modality_tag)
    return emb_sub, inv, truth_sub


def run_experiment(
    emb: EmbeddingSet,
    inventory: SenseInventory,
    truth: NodeLabeling,
    lpc_grid: list[int],
    seeds: list[int],
    protocol: str = "per_sense",
    dynamics_cfg: DynamicsConfig | None = None,
    class_filter: str = "all",
    collect_traces: list | None = None,
) -> list[ExperimentResult]:
    """Full sweep: for each (lpc, seed) sample a split, propagate, score.

    The similarity graph is split-independent and built once. Results come
    back one per lpc value, each holding the per-seed accuracy list.
    """
    if not lpc_grid:
        raise InputError("empty labels-per-class grid")
    if not seeds:
        raise InputError("empty seed list")
    emb, inventory, truth = _filter_by_class(emb, inventory, truth, class_filter)
    if emb.node_ids != truth.node_ids:
        raise InputError("embedding node order differs from labeling node order")
    w = build_similarity(emb)
    cfg = dynamics_cfg or DynamicsConfig()
    results = []
    for lpc in lpc_grid:
        accs = []
        for seed in seeds:
            try:
                plan = SamplingPlan(protocol, lpc, seed)
                labeled, unlabeled = sample_labeled_set(truth, inventory, plan)
                labeling = truth.restrict_labels(set(labeled))
                x0 = init_assignment(labeling, inventory)
                x, trace = run_dynamics(w, x0, cfg)
                if collect_traces is not None:
                    collect_traces.append(trace)
                preds = predict(x, inventory)
                accs.append(accuracy(preds, truth, unlabeled))
            except Exception as exc:
                exc.args = (f"(lpc={lpc}, seed={seed}) {exc}",)
                raise
        results.append(
            ExperimentResult(emb.modality_tag, protocol, class_filter, lpc, list(seeds), accs)
        )
    return results
