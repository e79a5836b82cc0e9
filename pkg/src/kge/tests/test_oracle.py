from exceptions import DimensionError
from exceptions import GroundTruthError
from model import ModelKind
from model import ModelParams
from model import score_cp
from model import score_simple
from oracle import GroundTruth
from oracle import all_triples
from oracle import construct_grid
from oracle import construct_incremental
from oracle import construct_minimal
from oracle import load_ground_truth
from oracle import random_ground_truth
from oracle import verify
import numpy as np
import pytest


def _one_fact():
    gt = GroundTruth(2, 1)
    gt.add(0, 0, 1)
    return gt


def test_grid_vectors():
    params = construct_grid(_one_fact())
    np.testing.assert_array_equal(params.head, [[1, 0], [0, 1]])
    np.testing.assert_array_equal(params.rel_fwd, [[1, 1]])
    np.testing.assert_array_equal(params.tail, [[-1, -1], [1, -1]])
    np.testing.assert_array_equal(params.rel_inv, [[0, 0]])

    assert score_cp(params, (0, 0, 1)) == 1.0
    assert score_cp(params, (1, 0, 1)) == -1.0
    assert score_simple(params, (0, 0, 1)) == 0.5


def test_no_facts_needs_one_dimension():
    params = construct_incremental(GroundTruth(3, 2))
    assert params.dim == 1
    heads, relations, tails = all_triples(3, 2)
    for triple in zip(heads, relations, tails):
        assert score_cp(params, triple) == -1.0


def test_one_fact_needs_two_dimensions():
    params = construct_incremental(_one_fact())
    assert params.dim == 2
    assert score_cp(params, (0, 0, 1)) == 1.0
    for triple in [(0, 0, 0), (1, 0, 0), (1, 0, 1)]:
        assert score_cp(params, triple) < 0
    assert verify(params, _one_fact()) == (True, [])


def test_all_triples_order():
    heads, relations, tails = all_triples(2, 2)
    assert list(zip(relations, heads, tails)) == sorted(zip(relations, heads, tails))
    assert len(heads) == 8


def test_random_ground_truths():
    rng = np.random.default_rng(0)
    for _ in range(200):
        num_entities = int(rng.integers(1, 7))
        num_relations = int(rng.integers(1, 5))
        gt = random_ground_truth(num_entities, num_relations, rng.uniform(0.0, 1.0), rng)

        grid = construct_grid(gt)
        incremental = construct_incremental(gt)
        assert grid.dim == num_entities * num_relations
        assert incremental.dim == gt.gamma + 1
        assert verify(grid, gt) == (True, [])
        assert verify(incremental, gt) == (True, [])
        assert construct_minimal(gt).dim == min(grid.dim, incremental.dim)


def test_earlier_facts_keep_their_sign():
    gt = random_ground_truth(4, 3, 0.3, np.random.default_rng(1))
    partial = GroundTruth(4, 3)
    steps = []

    def check(step, fact, prefix):
        partial.add(*fact)
        assert prefix.dim == step + 1
        assert verify(prefix, partial) == (True, [])
        steps.append(fact)

    construct_incremental(gt, on_step=check)
    assert steps == gt.facts()


def test_facts_order():
    gt = GroundTruth(3, 2)
    gt.add(2, 1, 0)
    gt.add(1, 0, 2)
    gt.add(0, 1, 1)
    assert gt.facts() == [(1, 0, 2), (0, 1, 1), (2, 1, 0)]
    assert gt.gamma == 3
    assert (1, 0, 2) in gt
    assert (2, 0, 1) not in gt


def test_zero_embeddings_fail():
    gt = random_ground_truth(3, 2, 0.5, np.random.default_rng(2))
    ok, violations = verify(ModelParams.zeros(ModelKind.simple, 3, 2, 4), gt)
    assert not ok
    # zero is neither positive nor negative
    assert len(violations) == 3 * 3 * 2
    assert set(gt.facts()) <= set(violations)


def test_wrong_sizes():
    with pytest.raises(DimensionError):
        verify(construct_grid(_one_fact()), GroundTruth(3, 1))


def test_ground_truth_file(tmp_path):
    path = tmp_path / 'truth.txt'
    path.write_text('# two entities\n2 1\n\n0 0 1  # the only fact\n')
    gt = load_ground_truth(str(path))
    assert (gt.num_entities, gt.num_relations, gt.gamma) == (2, 1, 1)
    assert gt.facts() == [(0, 0, 1)]


@pytest.mark.parametrize("text,where", [
    ('2 1\n0 0 2\n', ':2:'),
    ('2 1\n0 0\n', ':2:'),
    ('2 1\n0 x 1\n', ':2:'),
    ('2\n', ':1:'),
    ('# nothing\n', 'empty'),
])
def test_bad_ground_truth_file(tmp_path, text, where):
    path = tmp_path / 'truth.txt'
    path.write_text(text)
    with pytest.raises(GroundTruthError) as err:
        load_ground_truth(str(path))
    assert where in str(err.value)


def test_ground_truth_validation():
    with pytest.raises(GroundTruthError):
        GroundTruth(0, 1)
    with pytest.raises(GroundTruthError):
        GroundTruth(2, 1, np.zeros((1, 2, 3)))
    with pytest.raises(GroundTruthError):
        random_ground_truth(2, 1, 1.5, np.random.default_rng(3))
