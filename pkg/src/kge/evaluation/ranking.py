"""Entity ranking protocol.

A test triple (h, r, t) is ranked twice: against every (h', r, t) and against
every (h, r, t'). Ties count half, so a constant scorer ranks (|E| + 1) / 2.
In filtered mode candidates known to be true anywhere in the dataset are
removed, except the test triple itself.
"""
from dataset.triples import Triple
from enum import Enum
from enum import unique
from evaluation.report import EvalReport
from evaluation.report import RankPair
from model.scoring import get_scorer
import logging
import multiprocessing as mp
import numpy as np


LOG = logging.getLogger(__name__)


@unique
class RankMode(Enum):
    raw = 'raw'
    filtered = 'filtered'


@unique
class Side(Enum):
    """Which entity of the triple gets replaced."""
    head = 'head'
    tail = 'tail'


def rank_from_scores(scores, target, excluded=None):
    """Average-tie rank of `scores[target]` among the kept candidates.

    :param scores: Score of every candidate entity
    :type scores: :class:`numpy.ndarray`

    :param target: Index of the true entity
    :type target: int

    :param excluded: Candidate ids removed from the competition; the target
        is never removed
    :type excluded: :class:`numpy.ndarray` or None

    :returns: 1 + #greater + 0.5 * #other equal
    :rtype: float
    """
    scores = np.asarray(scores)
    keep = np.ones(len(scores), dtype=bool)
    if excluded is not None and len(excluded):
        keep[excluded] = False
    keep[target] = False
    others = scores[keep]
    own = scores[target]
    return 1.0 + float(np.count_nonzero(others > own)) + 0.5 * float(np.count_nonzero(others == own))


def candidate_scores(params, triple, side, scorer):
    """Scores of the triple with the `side` entity replaced by every entity."""
    h, r, t = triple
    candidates = np.arange(params.num_entities)
    if Side(side) is Side.head:
        return np.asarray(scorer(params, candidates, r, t), dtype=np.float64)
    return np.asarray(scorer(params, h, r, candidates), dtype=np.float64)


def _known_ids(known, triple, side):
    h, r, t = triple
    if Side(side) is Side.head:
        return known.known_heads(r, t)
    return known.known_tails(h, r)


def rank_entity(params, triple, side, mode, known=None, scorer=None):
    """Rank of the true head or tail of a triple.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param triple: The test triple
    :type triple: :class:`dataset.Triple`

    :param side: The replaced entity
    :type side: :class:`evaluation.Side`

    :param mode: Raw or filtered ranking
    :type mode: :class:`evaluation.RankMode`

    :param known: Known triples, required in filtered mode
    :type known: :class:`dataset.TripleSet` or None

    :param scorer: Vectorised scorer, defaults to the params' test-time one
    :type scorer: function or None

    :rtype: float
    """
    triple = Triple(*(int(x) for x in triple))
    triple.check(params.num_entities, params.num_relations)
    scorer = scorer or get_scorer(params.kind)
    side = Side(side)
    scores = candidate_scores(params, triple, side, scorer)
    target = triple.head if side is Side.head else triple.tail

    excluded = None
    if RankMode(mode) is RankMode.filtered:
        if known is None:
            raise ValueError('filtered ranking needs the known triples')
        excluded = _known_ids(known, triple, side)
    return rank_from_scores(scores, target, excluded)


def rank_triple(params, triple, known, scorer):
    """Raw and filtered rank pairs of one triple, scoring each side once.

    :returns: (raw :class:`RankPair`, filtered :class:`RankPair`)
    :rtype: tuple
    """
    raw, filtered = [], []
    for side in (Side.head, Side.tail):
        scores = candidate_scores(params, triple, side, scorer)
        target = triple.head if side is Side.head else triple.tail
        raw.append(rank_from_scores(scores, target))
        filtered.append(rank_from_scores(scores, target, _known_ids(known, triple, side)))
    return RankPair(*raw), RankPair(*filtered)


# Per-process state of the ranking pool.
_WORKER = {}


def _init_worker(params, known, scorer):
    _WORKER['args'] = (params, known, scorer)


def _rank_chunk(chunk):
    params, known, scorer = _WORKER['args']
    return [rank_triple(params, triple, known, scorer) for triple in chunk]


def evaluate(params, testset, known, scorer=None, threads=1):
    """Ranks every test triple in raw and filtered mode.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param testset: Triples to rank
    :type testset: list

    :param known: Known triples
    :type known: :class:`dataset.TripleSet`

    :param scorer: Vectorised scorer, defaults to the params' test-time one
    :type scorer: function or None

    :param threads: Worker processes; results do not depend on it
    :type threads: int

    :rtype: :class:`evaluation.EvalReport`
    """
    triples = [Triple(*(int(x) for x in triple)) for triple in testset]
    if not triples:
        raise ValueError('nothing to evaluate')
    for triple in triples:
        triple.check(params.num_entities, params.num_relations)
    scorer = scorer or get_scorer(params.kind)

    threads = max(1, min(int(threads), len(triples)))
    if threads == 1:
        ranks = [rank_triple(params, triple, known, scorer) for triple in triples]
    else:
        size = -(-len(triples) // threads)
        chunks = [triples[i:i + size] for i in range(0, len(triples), size)]
        LOG.debug('Ranking {} triples in {} chunks'.format(len(triples), len(chunks)))
        with mp.Pool(threads, initializer=_init_worker, initargs=(params, known, scorer)) as pool:
            results = pool.map(_rank_chunk, chunks)
            pool.close()
            pool.join()
        ranks = [pair for chunk in results for pair in chunk]

    report = EvalReport([
        (triple, raw, filtered) for triple, (raw, filtered) in zip(triples, ranks)])
    LOG.info('Evaluated {} triples: raw MRR {:.4f}, filtered MRR {:.4f}'.format(
        report.n_test, report.mrr_raw, report.mrr_filtered))
    return report
