import numpy as np
import pytest

from senseprop.errors import InputError
from senseprop.model import (
    NodeLabeling,
    SamplingPlan,
    SenseInventory,
    init_assignment,
    sample_labeled_set,
)


@pytest.fixture
def inventory():
    return SenseInventory(
        ["run", "play"],
        {"run": ["run#1", "run#2", "run#3", "run#4"], "play": ["play#1", "play#2"]},
        {"run": "motion", "play": "non-motion"},
    )


def make_truth(inventory, counts, seed=0):
    """Ground-truth labeling with `counts[sense]` nodes per sense."""
    node_ids, verbs, senses = [], {}, {}
    verb_of = {s: v for v in inventory.verbs for s in inventory.senses[v]}
    i = 0
    for sense, c in counts.items():
        for _ in range(c):
            node = f"n{i}"
            node_ids.append(node)
            verbs[node] = verb_of[sense]
            senses[node] = sense
            i += 1
    return NodeLabeling(node_ids, verbs, senses)


def test_inventory_global_sense_order(inventory):
    assert inventory.sense_ids == ["run#1", "run#2", "run#3", "run#4", "play#1", "play#2"]
    assert inventory.m == 6
    assert list(inventory.candidate_cols("play")) == [4, 5]


def test_labeled_row_is_one_hot(inventory):
    lab = NodeLabeling(["a"], {"a": "run"}, {"a": "run#3"})
    x = init_assignment(lab, inventory)
    assert x.values[0].tolist() == [0, 0, 1, 0, 0, 0]


def test_unlabeled_row_uniform_over_candidates(inventory):
    lab = NodeLabeling(["a"], {"a": "run"})
    x = init_assignment(lab, inventory)
    assert x.values[0].tolist() == [0.25, 0.25, 0.25, 0.25, 0, 0]
    assert x.values[0].sum() == 1.0


def test_single_sense_verb_inits_one_hot():
    inv = SenseInventory(["sit"], {"sit": ["sit#1"]})
    x = init_assignment(NodeLabeling(["a"], {"a": "sit"}), inv)
    assert x.values[0].tolist() == [1.0]


def test_init_assignment_rejects_foreign_sense(inventory):
    lab = NodeLabeling(["a"], {"a": "play"}, {"a": "run#1"})
    with pytest.raises(InputError, match="run#1"):
        init_assignment(lab, inventory)


def test_init_assignment_support_is_exact(inventory):
    rng = np.random.default_rng(0)
    nodes = [f"n{i}" for i in range(30)]
    verbs = {n: inventory.verbs[int(rng.integers(2))] for n in nodes}
    senses = {
        n: inventory.senses[verbs[n]][int(rng.integers(len(inventory.senses[verbs[n]])))]
        for n in nodes[:10]
    }
    x = init_assignment(NodeLabeling(nodes, verbs, senses), inventory)
    x.validate()
    for i, n in enumerate(nodes):
        support = set(np.where(x.values[i] > 0)[0])
        if n in senses:
            assert support == {inventory.sense_to_col[senses[n]]}
        else:
            assert support == set(inventory.candidate_cols(verbs[n]))


def test_sampling_same_seed_identical(inventory):
    truth = make_truth(inventory, {"run#1": 5, "run#2": 5, "play#1": 4})
    plan = SamplingPlan("per_sense", 2, seed=9)
    assert sample_labeled_set(truth, inventory, plan) == sample_labeled_set(
        truth, inventory, plan
    )


def test_sampling_partitions_nodes(inventory):
    truth = make_truth(inventory, {"run#1": 6, "run#3": 3, "play#2": 5})
    labeled, unlabeled = sample_labeled_set(truth, inventory, SamplingPlan("per_sense", 2, 1))
    assert set(labeled) | set(unlabeled) == set(truth.node_ids)
    assert set(labeled) & set(unlabeled) == set()


def test_singleton_class_stays_unlabeled_with_warning(inventory):
    truth = make_truth(inventory, {"run#1": 1, "run#2": 4})
    with pytest.warns(UserWarning, match="single member"):
        labeled, unlabeled = sample_labeled_set(
            truth, inventory, SamplingPlan("per_sense", 2, 0)
        )
    assert truth.node_ids[0] in unlabeled  # the singleton run#1 node


def test_class_smaller_than_lpc_is_clamped(inventory):
    truth = make_truth(inventory, {"run#1": 3, "run#2": 5})
    labeled, unlabeled = sample_labeled_set(truth, inventory, SamplingPlan("per_sense", 20, 0))
    by_sense = {}
    for n in labeled:
        by_sense[truth.senses[n]] = by_sense.get(truth.senses[n], 0) + 1
    assert by_sense == {"run#1": 2, "run#2": 4}  # count - 1 each
    # at least one unlabeled representative per class survives
    for sense in ("run#1", "run#2"):
        assert any(truth.senses[n] == sense for n in unlabeled)


def test_all_singletons_is_an_error(inventory):
    truth = make_truth(inventory, {"run#1": 1, "play#1": 1})
    with pytest.raises(InputError), pytest.warns(UserWarning):
        sample_labeled_set(truth, inventory, SamplingPlan("per_sense", 1, 0))


def test_incomplete_ground_truth_is_an_error(inventory):
    truth = make_truth(inventory, {"run#1": 3})
    del truth.senses["n1"]
    with pytest.raises(InputError, match="n1"):
        sample_labeled_set(truth, inventory, SamplingPlan("per_sense", 1, 0))


def test_per_verb_protocol_counts(inventory):
    truth = make_truth(inventory, {"run#1": 4, "run#2": 4, "play#1": 6})
    labeled, _ = sample_labeled_set(truth, inventory, SamplingPlan("per_verb", 3, 2))
    by_verb = {}
    for n in labeled:
        by_verb[truth.verbs[n]] = by_verb.get(truth.verbs[n], 0) + 1
    assert by_verb == {"run": 3, "play": 3}


def test_seed_sweep_produces_distinct_valid_splits(inventory):
    truth = make_truth(inventory, {"run#1": 10, "run#2": 10, "play#1": 8, "play#2": 7})
    seen = set()
    for seed in range(15):
        labeled, unlabeled = sample_labeled_set(
            truth, inventory, SamplingPlan("per_sense", 3, seed)
        )
        # exhaustive per-class count verification
        counts = {}
        for n in labeled:
            counts[truth.senses[n]] = counts.get(truth.senses[n], 0) + 1
        assert counts == {"run#1": 3, "run#2": 3, "play#1": 3, "play#2": 3}
        assert sorted(labeled + unlabeled) == sorted(truth.node_ids)
        seen.add(tuple(sorted(labeled)))
    assert len(seen) > 10  # distinct with high probability


def test_plan_validation():
    with pytest.raises(InputError):
        SamplingPlan("per_word", 1, 0)
    with pytest.raises(InputError):
        SamplingPlan("per_sense", 0, 0)
