"""Scoring functions.

Every scorer is a sum of element-wise products over the embedding axis, so
its cost is linear in d. The vectorised forms take id arrays (or scalars) and
broadcast; the per-triple forms validate ids and return a float.
"""
from background.ties import Slot
from exceptions import DimensionError
from model.params import ModelKind
import logging
import numpy as np


LOG = logging.getLogger(__name__)


def trilinear(a, b, c):
    """Returns sum_j a[j] * b[j] * c[j] (over the last axis).

    :raises: :class:`exceptions.DimensionError` on length mismatch
    """
    a, b, c = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64), np.asarray(c, dtype=np.float64)
    if not (a.shape[-1:] == b.shape[-1:] == c.shape[-1:]):
        raise DimensionError('trilinear product of lengths {}, {}, {}'.format(
            a.shape[-1:], b.shape[-1:], c.shape[-1:]))
    out = np.sum(a * b * c, axis=-1)
    return out if out.ndim else float(out)


def forward_terms(params, heads, relations, tails):
    """<h_head, v_r, t_tail>, the CP score."""
    return np.sum(
        params.head[heads] * params.relation_rows(Slot.fwd, relations) * params.tail[tails],
        axis=-1)


def inverse_terms(params, heads, relations, tails):
    """<h_tail, v_{r^-1}, t_head>."""
    return np.sum(
        params.head[tails] * params.relation_rows(Slot.inv, relations) * params.tail[heads],
        axis=-1)


def simple_scores(params, heads, relations, tails):
    return 0.5 * (
        forward_terms(params, heads, relations, tails) +
        inverse_terms(params, heads, relations, tails))


def distmult_scores(params, heads, relations, tails):
    # (v_h * v_t) first keeps score(h, r, t) == score(t, r, h) bit for bit
    return np.sum(
        (params.head[heads] * params.head[tails]) * params.relation_rows(Slot.fwd, relations),
        axis=-1)


def complex_parts(params, heads, relations, tails):
    """The four real trilinear terms of Re(<e_h, w_r, conj(e_t)>)."""
    re_h, im_h = params.head[heads], params.tail[heads]
    re_t, im_t = params.head[tails], params.tail[tails]
    re_r = params.relation_rows(Slot.fwd, relations)
    im_r = params.relation_rows(Slot.inv, relations)
    return (
        np.sum(re_h * re_r * re_t, axis=-1),
        np.sum(re_h * im_r * im_t, axis=-1),
        np.sum(im_h * re_r * im_t, axis=-1),
        np.sum(im_h * im_r * re_t, axis=-1))


def complex_scores(params, heads, relations, tails):
    rrr, rii, iri, iir = complex_parts(params, heads, relations, tails)
    return rrr + rii + iri - iir


#: Test-time scorer of every model kind. SimplE-ignr ranks by the forward
#: term alone.
SCORERS = {
    ModelKind.simple: simple_scores,
    ModelKind.simple_ignr: forward_terms,
    ModelKind.cp: forward_terms,
    ModelKind.distmult: distmult_scores,
    ModelKind.complex: complex_scores,
}


def get_scorer(kind):
    """Returns the vectorised test-time scorer of a model kind.

    :param kind: The model kind
    :type kind: :class:`model.ModelKind`

    :returns: function (params, heads, relations, tails) -> scores
    :rtype: function
    """
    return SCORERS[ModelKind(kind)]


def score(params, heads, relations, tails, kind=None):
    """Vectorised test-time scores, `kind` defaults to the params' own."""
    return get_scorer(kind or params.kind)(
        params, np.asarray(heads), np.asarray(relations), np.asarray(tails))


def _single(scorer, params, triple):
    h, r, t = (int(x) for x in triple)
    if not (0 <= h < params.num_entities and 0 <= t < params.num_entities):
        raise IndexError('entity id out of range in {}'.format(tuple(triple)))
    if not 0 <= r < params.num_relations:
        raise IndexError('relation id out of range in {}'.format(tuple(triple)))
    return float(scorer(params, h, r, t))


def score_cp(params, triple):
    return _single(forward_terms, params, triple)


def score_simple(params, triple):
    return _single(simple_scores, params, triple)


def score_simple_ignr(params, triple):
    return _single(forward_terms, params, triple)


def score_distmult(params, triple):
    return _single(distmult_scores, params, triple)


def score_complex(params, triple):
    return _single(complex_scores, params, triple)


def score_triple(params, triple, kind=None):
    """Test-time score of one triple for the given (or the params') kind."""
    return _single(get_scorer(kind or params.kind), params, triple)
