"""Explicit SimplE embeddings separating any ground truth.

Two constructions are provided, of size |E| * |R| and gamma + 1. Both build
the forward vectors only and leave every v_{r^-1} at zero: the inverse half
of the SimplE score is then exactly 0 and the score is half the forward one,
with the same sign. Entity vectors are shared between the two halves, so no
choice of inverse vectors could also separate the transposed truth at these
sizes in general.
"""
from dataset.triples import Triple
from exceptions import DimensionError
from model.params import ModelKind
from model.params import ModelParams
from model.scoring import get_scorer
import logging
import numpy as np


LOG = logging.getLogger(__name__)


def construct_grid(gt):
    """Embeddings of size d = |E| * |R|.

    Coordinate n = j * |E| + i belongs to (entity e_i, relation r_j):
    h_{e_i}[n] = 1 iff n mod |E| = i, v_{r_j}[n] = 1 iff n div |E| = j and
    t_{e_k}[n] = +1 if (e_i, r_j, e_k) holds, -1 otherwise. The forward
    score of (e_i, r_j, e_k) is therefore exactly +1 or -1.

    :param gt: The ground truth
    :type gt: :class:`oracle.GroundTruth`

    :rtype: :class:`model.ModelParams`
    """
    E, R = gt.num_entities, gt.num_relations
    head = np.tile(np.eye(E), R)
    rel_fwd = np.repeat(np.eye(R), E, axis=1)
    tail = np.where(gt.truth.transpose(2, 0, 1).reshape(E, R * E), 1.0, -1.0)
    rel_inv = np.zeros_like(rel_fwd)
    LOG.debug('Grid construction of {}: d={}'.format(gt, E * R))
    return ModelParams(ModelKind.simple, head, tail, rel_fwd, rel_inv)


def construct_incremental(gt, on_step=None):
    """Embeddings of size d = gamma + 1.

    Coordinate 0 holds 1 for every entity vector and -1 for every relation,
    so every forward score starts at -1. Each true fact (e_i, r_j, e_k), in
    (relation, head, tail) order, then gets its own coordinate: h_{e_i} and
    v_{r_j} set to 1 and t_{e_k} to 1 - q, where q is the fact's current
    forward score. The fact scores exactly 1 and no other score changes.

    :param gt: The ground truth
    :type gt: :class:`oracle.GroundTruth`

    :param on_step: Called as `on_step(step, fact, params)` after each fact
    :type on_step: function or None

    :rtype: :class:`model.ModelParams`
    """
    E, R = gt.num_entities, gt.num_relations
    facts = gt.facts()
    d = len(facts) + 1

    head = np.zeros((E, d))
    tail = np.zeros((E, d))
    rel_fwd = np.zeros((R, d))
    head[:, 0] = 1.0
    tail[:, 0] = 1.0
    rel_fwd[:, 0] = -1.0

    for step, (i, j, k) in enumerate(facts, 1):
        q = float(np.sum(head[i] * rel_fwd[j] * tail[k]))
        head[i, step] = 1.0
        rel_fwd[j, step] = 1.0
        tail[k, step] = 1.0 - q
        if on_step is not None:
            prefix = ModelParams(
                ModelKind.simple, head[:, :step + 1], tail[:, :step + 1],
                rel_fwd[:, :step + 1], np.zeros((R, step + 1)))
            on_step(step, Triple(i, j, k), prefix)

    LOG.debug('Incremental construction of {}: d={}'.format(gt, d))
    return ModelParams(ModelKind.simple, head, tail, rel_fwd, np.zeros((R, d)))


def construct_minimal(gt):
    """The smaller of the two constructions, size min(|E| * |R|, gamma + 1).

    The grid construction wins ties.
    """
    if gt.num_entities * gt.num_relations <= gt.gamma + 1:
        return construct_grid(gt)
    return construct_incremental(gt)


def all_triples(num_entities, num_relations):
    """(heads, relations, tails) id arrays of every triple, in (r, h, t) order."""
    r, h, t = np.meshgrid(
        np.arange(num_relations), np.arange(num_entities), np.arange(num_entities),
        indexing='ij')
    return h.reshape(-1), r.reshape(-1), t.reshape(-1)


def verify(params, gt, scorer=None):
    """Checks that the score sign of every triple matches the ground truth.

    True triples need a score > 0 and false ones a score < 0; a zero score is
    always a violation.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param gt: The ground truth
    :type gt: :class:`oracle.GroundTruth`

    :param scorer: Vectorised scorer, defaults to the params' test-time one
    :type scorer: function or None

    :returns: (passed, violating triples in (r, h, t) order)
    :rtype: tuple
    """
    if (params.num_entities, params.num_relations) != (gt.num_entities, gt.num_relations):
        raise DimensionError('embeddings for |E|={}, |R|={} cannot represent {}'.format(
            params.num_entities, params.num_relations, gt))
    scorer = scorer or get_scorer(params.kind)
    heads, relations, tails = all_triples(gt.num_entities, gt.num_relations)
    scores = np.asarray(scorer(params, heads, relations, tails))
    expected = gt.truth[relations, heads, tails]
    wrong = np.where(expected, ~(scores > 0), ~(scores < 0))

    violations = [
        Triple(int(heads[n]), int(relations[n]), int(tails[n]))
        for n in np.flatnonzero(wrong)]
    if violations:
        LOG.debug('{} sign violations, first {}'.format(len(violations), violations[0]))
    return not violations, violations
