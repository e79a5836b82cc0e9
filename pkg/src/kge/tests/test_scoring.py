from exceptions import DimensionError
from exceptions import UnsupportedModelError
from model import ModelKind
from model import ModelParams
from model import bilinear_score
from model import build_bilinear_matrix
from model import entity_vector
from model import score
from model import score_complex
from model import score_cp
from model import score_distmult
from model import score_simple
from model import score_simple_ignr
from model import score_triple
from model import trilinear
import numpy as np
import pytest


def random_params(kind, rng, num_entities=5, num_relations=3, dim=4):
    return ModelParams(
        kind,
        rng.uniform(-1, 1, (num_entities, dim)),
        rng.uniform(-1, 1, (num_entities, dim)),
        rng.uniform(-1, 1, (num_relations, dim)),
        rng.uniform(-1, 1, (num_relations, dim)))


@pytest.mark.parametrize("a,b,c,expected", [
    ([1, 2], [3, 4], [5, 6], 63.0),
    ([1, 0, -1], [1, 1, 1], [2, 2, 2], 0.0),
    ([0.5], [2], [-3], -3.0),
])
def test_trilinear(a, b, c, expected):
    assert trilinear(a, b, c) == expected


def test_trilinear_length_mismatch():
    with pytest.raises(DimensionError):
        trilinear([1, 2], [1, 2, 3], [1, 2])


def test_simple_averages_forward_and_inverse():
    params = ModelParams(
        ModelKind.simple,
        [[1.0, 2.0], [3.0, 1.0]],
        [[0.5, 1.0], [2.0, -1.0]],
        [[1.0, 1.0]],
        [[2.0, 0.0]])
    forward = trilinear([1, 2], [1, 1], [2, -1])
    inverse = trilinear([3, 1], [2, 0], [0.5, 1])
    assert score_cp(params, (0, 0, 1)) == forward
    assert score_simple_ignr(params, (0, 0, 1)) == forward
    assert score_simple(params, (0, 0, 1)) == 0.5 * (forward + inverse)


def test_complex_redundancy_fixture():
    # e1 = 1 + 4i, e2 = 1 + 6i, e3 = 3 + 2i, r = 1 + i
    params = ModelParams(
        ModelKind.complex,
        [[1.0], [1.0], [3.0]],
        [[4.0], [6.0], [2.0]],
        [[1.0]],
        [[1.0]])
    assert score_complex(params, (0, 0, 2)) == 1.0
    assert score_complex(params, (1, 0, 2)) == -1.0


def test_distmult_is_symmetric():
    rng = np.random.default_rng(0)
    params = random_params(ModelKind.distmult, rng)
    for h in range(5):
        for t in range(5):
            assert score_distmult(params, (h, 1, t)) == score_distmult(params, (t, 1, h))


def test_vectorised_scores_match_single_ones():
    rng = np.random.default_rng(1)
    for kind in ModelKind:
        params = random_params(kind, rng)
        heads = np.array([0, 1, 4, 2])
        rels = np.array([0, 2, 1, 1])
        tails = np.array([3, 1, 0, 2])
        expected = [score_triple(params, triple) for triple in zip(heads, rels, tails)]
        np.testing.assert_allclose(score(params, heads, rels, tails), expected, rtol=1e-12)


def test_out_of_range_ids():
    params = random_params(ModelKind.simple, np.random.default_rng(2))
    with pytest.raises(IndexError):
        score_simple(params, (0, 0, 5))
    with pytest.raises(IndexError):
        score_simple(params, (0, 3, 0))


@pytest.mark.parametrize("kind,single,factor", [
    (ModelKind.simple, score_simple, 2.0),
    (ModelKind.cp, score_cp, 1.0),
    (ModelKind.distmult, score_distmult, 1.0),
    (ModelKind.complex, score_complex, 1.0),
])
def test_bilinear_forms(kind, single, factor):
    rng = np.random.default_rng(3)
    for _ in range(100):
        params = random_params(kind, rng)
        h, r, t = rng.integers(0, 5), rng.integers(0, 3), rng.integers(0, 5)
        matrix = build_bilinear_matrix(params, r)
        value = bilinear_score(
            matrix, entity_vector(params, h), entity_vector(params, t))
        expected = factor * single(params, (h, r, t))
        assert abs(value - expected) <= 1e-10 * max(1.0, abs(expected))


def test_bilinear_shapes():
    params = random_params(ModelKind.simple, np.random.default_rng(4))
    matrix = build_bilinear_matrix(params, 0)
    assert matrix.shape == (8, 8)
    # CP keeps only the upper right block
    cp = build_bilinear_matrix(params, 0, ModelKind.cp)
    assert np.any(cp[:4, 4:])
    assert not np.any(cp[4:])
    assert not np.any(cp[:4, :4])

    with pytest.raises(DimensionError):
        bilinear_score(matrix, np.ones(4), np.ones(8))


def test_no_bilinear_form_for_simple_ignr():
    params = random_params(ModelKind.simple_ignr, np.random.default_rng(5))
    with pytest.raises(UnsupportedModelError):
        build_bilinear_matrix(params, 0)


def test_params_validation():
    with pytest.raises(DimensionError):
        ModelParams(ModelKind.cp, np.zeros((2, 3)), np.zeros((2, 3)), np.zeros((1, 4)), np.zeros((1, 4)))
    with pytest.raises(DimensionError):
        ModelParams(ModelKind.cp, np.zeros((2, 3)), np.zeros((3, 3)), np.zeros((1, 3)), np.zeros((1, 3)))


def test_initialization_bounds():
    params = ModelParams.initialize(ModelKind.simple, 50, 7, 24, np.random.default_rng(6))
    bound = np.sqrt(6.0 / 24)
    for array in params.storage.values():
        assert np.all(np.abs(array) <= bound)
    assert params.dim == 24
    assert params.num_entities == 50
    assert params.num_relations == 7
