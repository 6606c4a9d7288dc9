"""Sense inventory, node labelings, initial assignments and labeled-set sampling."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InputError

ROW_SUM_TOL = 1e-9


@dataclass
class SenseInventory:
    """Ordered verbs, each with an ordered candidate sense list.

    The order of verbs and of senses within a verb is meaningful: it defines
    the global sense-column order, first-sense baselines and all tie-breaks.
    """

    verbs: list[str]
    senses: dict[str, list[str]]  # verb -> ordered sense ids
    motion_class: dict[str, str] = field(default_factory=dict)  # verb -> "motion"/"non-motion"

    def __post_init__(self):
        if len(set(self.verbs)) != len(self.verbs):
            raise InputError("duplicate verbs in inventory")
        for verb in self.verbs:
            cand = self.senses.get(verb, [])
            if not cand:
                raise InputError(f"verb {verb!r} has no senses")
            if len(set(cand)) != len(cand):
                raise InputError(f"verb {verb!r} has duplicate sense ids")
        # Global column order: verbs in order, senses in order, first occurrence wins.
        order: list[str] = []
        seen: set[str] = set()
        for verb in self.verbs:
            for s in self.senses[verb]:
                if s not in seen:
                    seen.add(s)
                    order.append(s)
        self.sense_ids: list[str] = order
        self.sense_to_col: dict[str, int] = {s: i for i, s in enumerate(order)}

    @property
    def m(self) -> int:
        return len(self.sense_ids)

    def candidate_cols(self, verb: str) -> np.ndarray:
        if verb not in self.senses:
            raise InputError(f"unknown verb {verb!r}")
        return np.array([self.sense_to_col[s] for s in self.senses[verb]], dtype=np.intp)

    def subset(self, verbs: list[str]) -> "SenseInventory":
        """Inventory restricted to the given verbs, preserving order."""
        keep = [v for v in self.verbs if v in set(verbs)]
        return SenseInventory(
            keep,
            {v: list(self.senses[v]) for v in keep},
            {v: self.motion_class[v] for v in keep if v in self.motion_class},
        )


@dataclass
class NodeLabeling:
    """Per-node verb, plus a sense for labeled nodes (None = unlabeled)."""

    node_ids: list[str]
    verbs: dict[str, str]  # node -> verb
    senses: dict[str, str] = field(default_factory=dict)  # node -> sense, labeled only

    def __post_init__(self):
        if len(set(self.node_ids)) != len(self.node_ids):
            raise InputError("duplicate node ids in labeling")
        missing = [n for n in self.node_ids if n not in self.verbs]
        if missing:
            raise InputError(f"node {missing[0]!r} has no verb")

    @property
    def n(self) -> int:
        return len(self.node_ids)

    def labeled_ids(self) -> list[str]:
        return [n for n in self.node_ids if n in self.senses]

    def unlabeled_ids(self) -> list[str]:
        return [n for n in self.node_ids if n not in self.senses]

    def restrict_labels(self, labeled: set[str]) -> "NodeLabeling":
        """Same nodes, keeping sense annotations only on ``labeled``."""
        return NodeLabeling(
            list(self.node_ids),
            dict(self.verbs),
            {n: s for n, s in self.senses.items() if n in labeled},
        )

    def subset(self, node_ids: list[str]) -> "NodeLabeling":
        keep = set(node_ids)
        ids = [n for n in self.node_ids if n in keep]
        return NodeLabeling(
            ids,
            {n: self.verbs[n] for n in ids},
            {n: s for n, s in self.senses.items() if n in keep},
        )


@dataclass
class AssignmentMatrix:
    """Row-stochastic matrix of per-node sense probabilities.

    Rows live on the simplex; entries outside a node's candidate set are
    exactly zero and stay zero under the multiplicative dynamics.
    """

    node_ids: list[str]
    values: np.ndarray  # (n, m) float64

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.shape[0] != len(self.node_ids):
            raise DimensionMismatchError(
                "assignment matrix vs node ids", self.values.shape, (len(self.node_ids),)
            )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def validate(self, row_tol: float = ROW_SUM_TOL):
        v = self.values
        if v.min(initial=0.0) < 0 or v.max(initial=0.0) > 1 + row_tol:
            raise InputError("assignment entries outside [0, 1]")
        sums = v.sum(axis=1)
        bad = np.where(np.abs(sums - 1.0) > row_tol)[0]
        if bad.size:
            i = int(bad[0])
            raise InputError(
                f"assignment row for node {self.node_ids[i]!r} sums to {sums[i]!r}, expected 1"
            )

    def copy(self) -> "AssignmentMatrix":
        return AssignmentMatrix(list(self.node_ids), self.values.copy())


@dataclass
class SamplingPlan:
    """How to draw the labeled set: per sense class or per verb, seeded."""

    protocol: str  # "per_sense" | "per_verb"
    labels_per_class: int
    seed: int = 0

    def __post_init__(self):
        if self.protocol not in ("per_sense", "per_verb"):
            raise InputError(f"unknown sampling protocol {self.protocol!r}")
        if self.labels_per_class < 1:
            raise InputError("labels_per_class must be >= 1")


def init_assignment(labeling: NodeLabeling, inventory: SenseInventory) -> AssignmentMatrix:
    """Labeled rows one-hot on their sense; unlabeled rows uniform over candidates."""
    n, m = labeling.n, inventory.m
    x = np.zeros((n, m), dtype=np.float64)
    for i, node in enumerate(labeling.node_ids):
        verb = labeling.verbs[node]
        cols = inventory.candidate_cols(verb)
        sense = labeling.senses.get(node)
        if sense is not None:
            if sense not in inventory.senses[verb]:
                raise InputError(
                    f"node {node!r} labeled with sense {sense!r}, "
                    f"not a candidate of verb {verb!r}"
                )
            x[i, inventory.sense_to_col[sense]] = 1.0
        else:
            x[i, cols] = 1.0 / len(cols)
    return AssignmentMatrix(list(labeling.node_ids), x)


def sample_labeled_set(
    labeling: NodeLabeling, inventory: SenseInventory, plan: SamplingPlan
) -> tuple[list[str], list[str]]:
    """Split nodes into (labeled, unlabeled) under the plan's protocol.

    ``labeling`` must be full ground truth (a sense on every node). Each class
    (sense or verb, per protocol) contributes min(labels_per_class, size - 1)
    labeled nodes so that at least one evaluation point survives; singleton
    classes stay fully unlabeled and raise a warning.
    """
    missing = [n for n in labeling.node_ids if n not in labeling.senses]
    if missing:
        raise InputError(f"ground truth is incomplete: node {missing[0]!r} has no sense")

    if plan.protocol == "per_sense":
        class_of = lambda node: labeling.senses[node]
        class_order = list(inventory.sense_ids)
    else:
        class_of = lambda node: labeling.verbs[node]
        class_order = list(inventory.verbs)

    members: dict[str, list[str]] = {c: [] for c in class_order}
    for node in labeling.node_ids:
        c = class_of(node)
        if c not in members:
            raise InputError(f"node {node!r} references unknown class {c!r}")
        members[c].append(node)

    rng = np.random.default_rng(plan.seed)
    labeled: set[str] = set()
    for c in class_order:
        nodes = members[c]
        if not nodes:
            continue
        if len(nodes) == 1:
            warnings.warn(
                f"class {c!r} has a single member; it stays unlabeled", stacklevel=2
            )
            continue
        k = min(plan.labels_per_class, len(nodes) - 1)
        labeled.update(rng.choice(np.array(nodes, dtype=object), size=k, replace=False))

    if not labeled:
        raise InputError(
            "no class could contribute a labeled node "
            f"(labels_per_class={plan.labels_per_class})"
        )
    labeled_ids = [n for n in labeling.node_ids if n in labeled]
    unlabeled_ids = [n for n in labeling.node_ids if n not in labeled]
    if not unlabeled_ids:
        raise InputError("sampling left no unlabeled nodes to evaluate")
    return labeled_ids, unlabeled_ids
