from dataset import Triple
from dataset import TripleSet
from dataset import Vocabulary
from dataset import load_dataset
from evaluation import EvalReport
from evaluation import RankMode
from evaluation import RankPair
from evaluation import Side
from evaluation import evaluate
from evaluation import rank_entity
from evaluation import rank_from_scores
from evaluation import rank_triple
from model import ModelKind
from model import ModelParams
from model import get_scorer
from model import score_triple
import csv
import numpy as np
import pytest


def test_ties_count_half():
    assert rank_from_scores(np.array([5.0, 7.0, 5.0, 3.0, 1.0]), 0) == 2.5


def test_excluded_candidates_do_not_compete():
    scores = np.array([5.0, 7.0, 5.0, 3.0, 1.0])
    assert rank_from_scores(scores, 0, np.array([1])) == 1.5
    # the target itself is never removed
    assert rank_from_scores(scores, 0, np.array([0, 1, 2])) == 1.0


def test_constant_scorer_ranks_in_the_middle():
    params = ModelParams.zeros(ModelKind.simple, 9, 2, 3)
    for side in Side:
        assert rank_entity(params, (0, 1, 4), side, RankMode.raw) == 5.0


def test_filtered_mode_needs_known_triples():
    params = ModelParams.zeros(ModelKind.simple, 3, 1, 2)
    with pytest.raises(ValueError):
        rank_entity(params, (0, 0, 1), Side.tail, RankMode.filtered)


def _integer_params(rng, kind=ModelKind.simple, num_entities=10, num_relations=2, dim=2):
    def draw(rows):
        return rng.integers(-1, 2, (rows, dim)).astype(float)
    return ModelParams(
        kind, draw(num_entities), draw(num_entities), draw(num_relations), draw(num_relations))


def _sorted_rank(params, triple, side, known):
    """Position of the true entity in the sorted candidate list, averaged
    over its group of equal scores."""
    h, r, t = triple
    target = h if side is Side.head else t
    candidates = []
    for e in range(params.num_entities):
        candidate = (e, r, t) if side is Side.head else (h, r, e)
        if e != target and candidate in known:
            continue
        candidates.append((score_triple(params, candidate), e))
    ordered = sorted((s for s, _ in candidates), reverse=True)
    own = score_triple(params, triple)
    positions = [n + 1 for n, s in enumerate(ordered) if s == own]
    return (positions[0] + positions[-1]) / 2.0


def test_ranks_match_sorting():
    rng = np.random.default_rng(0)
    for _ in range(20):
        params = _integer_params(rng)
        triples = sorted({
            Triple(int(h), int(r), int(t)) for h, r, t in zip(
                rng.integers(0, 10, 30), rng.integers(0, 2, 30), rng.integers(0, 10, 30))})
        data = TripleSet(triples[:20], [], triples[20:])
        for triple in triples[20:]:
            for side in Side:
                assert rank_entity(params, triple, side, RankMode.raw) == \
                    _sorted_rank(params, triple, side, set())
                assert rank_entity(params, triple, side, RankMode.filtered, data) == \
                    _sorted_rank(params, triple, side, data.known)


def test_filtered_never_worse_than_raw(toy_dataset):
    data, vocab = load_dataset(toy_dataset)
    params = ModelParams.initialize(ModelKind.simple, 20, 4, 6, np.random.default_rng(1))
    scorer = get_scorer(params.kind)
    for triple in data.test:
        raw, filtered = rank_triple(params, triple, data, scorer)
        assert filtered.head <= raw.head
        assert filtered.tail <= raw.tail
        assert raw.head == rank_entity(params, triple, Side.head, RankMode.raw)
        assert filtered.tail == rank_entity(params, triple, Side.tail, RankMode.filtered, known=data)


def test_report_of_one_triple():
    report = EvalReport([(Triple(0, 0, 1), RankPair(1, 2), RankPair(1, 2))])
    assert report.mrr_filtered == 0.75
    assert report.mrr_raw == 0.75
    assert report.hits[1] == 0.5


def test_report_of_three_triples():
    report = EvalReport([
        (Triple(0, 0, 1), RankPair(3, 2), RankPair(1, 2)),
        (Triple(1, 0, 2), RankPair(4, 1), RankPair(4, 1)),
        (Triple(2, 0, 0), RankPair(2, 12), RankPair(2, 10)),
    ])
    assert report.mrr_filtered == pytest.approx(3.35 / 6)
    assert round(report.mrr_filtered, 4) == 0.5583
    assert report.hits == {1: 2.0 / 6, 3: 4.0 / 6, 10: 1.0}
    assert report.hits_raw[10] == 5.0 / 6
    assert report.n_test == 3


def test_empty_report():
    with pytest.raises(ValueError):
        EvalReport([])


def test_report_formats(tmp_path):
    report = EvalReport([(Triple(0, 0, 1), RankPair(1, 2), RankPair(1, 2))])
    assert report.to_json() == {
        'mrr_raw': 0.75,
        'mrr_filtered': 0.75,
        'hits': {'1': 0.5, '3': 1.0, '10': 1.0},
        'hits_raw': {'1': 0.5, '3': 1.0, '10': 1.0},
        'n_test': 1,
    }
    assert 'MRR' in report.table()

    path = str(tmp_path / 'ranks.csv')
    report.save_per_triple_csv(path, Vocabulary(['a', 'b'], ['r']))
    with open(path, newline='') as fp:
        rows = list(csv.reader(fp))
    assert rows[0][:3] == ['head', 'relation', 'tail']
    assert rows[1][:3] == ['a', 'r', 'b']
    assert [float(x) for x in rows[1][3:]] == [1.0, 2.0, 1.0, 2.0]


def test_order_of_test_triples_does_not_matter(toy_dataset):
    data, _ = load_dataset(toy_dataset)
    params = ModelParams.initialize(ModelKind.simple, 20, 4, 6, np.random.default_rng(2))
    report = evaluate(params, data.test, data)
    order = np.random.default_rng(3).permutation(len(data.test))
    shuffled = evaluate(params, [data.test[i] for i in order], data)

    assert shuffled.mrr_filtered == report.mrr_filtered
    assert shuffled.mrr_raw == report.mrr_raw
    assert shuffled.hits == report.hits


def test_worker_processes_give_the_same_report(toy_dataset):
    data, _ = load_dataset(toy_dataset)
    params = ModelParams.initialize(ModelKind.complex, 20, 4, 6, np.random.default_rng(4))
    single = evaluate(params, data.test, data, threads=1)
    pooled = evaluate(params, data.test, data, threads=2)
    assert pooled.per_triple == single.per_triple
    assert pooled.mrr_filtered == single.mrr_filtered


def test_other_scorer(toy_dataset):
    data, _ = load_dataset(toy_dataset)
    params = ModelParams.initialize(ModelKind.simple, 20, 4, 6, np.random.default_rng(5))
    report = evaluate(params, data.test, known=data, scorer=get_scorer(ModelKind.cp))
    assert report.n_test == len(data.test)


def test_nothing_to_evaluate():
    params = ModelParams.zeros(ModelKind.simple, 3, 1, 2)
    with pytest.raises(ValueError):
        evaluate(params, [], TripleSet([], [], []))
