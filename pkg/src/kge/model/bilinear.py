"""Bilinear view of the factorization models.

Every supported model scores (h, r, t) as v_h^T M_r v_t for a structured
M_r. With d the embedding size:

    DistMult  d x d     diag(v_r)
    ComplEx   2d x 2d   [[diag(re_r), diag(im_r)], [-diag(im_r), diag(re_r)]]
    CP        2d x 2d   [[0, diag(v_r)], [0, 0]]
    SimplE    2d x 2d   [[0, diag(v_r)], [diag(v_{r^-1}), 0]]

Entity vectors are [h_e; t_e] for CP and SimplE, [re; im] for ComplEx and the
single entity vector for DistMult. The SimplE form sums both terms, so it
equals twice the averaged SimplE score.
"""
from background.ties import Slot
from exceptions import DimensionError
from exceptions import UnsupportedModelError
from model.params import ModelKind
import numpy as np


def build_bilinear_matrix(params, relation, kind=None):
    """Builds M_r with the sparsity and tying pattern of the model kind.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param relation: The relation id
    :type relation: int

    :param kind: The model kind, defaults to the params' own
    :type kind: :class:`model.ModelKind` or None

    :returns: The relation matrix
    :rtype: :class:`numpy.ndarray`
    """
    kind = ModelKind(kind or params.kind)
    v_fwd = params.relation_rows(Slot.fwd, relation)
    v_inv = params.relation_rows(Slot.inv, relation)
    d = params.dim

    if kind is ModelKind.distmult:
        return np.diag(v_fwd)

    m = np.zeros((2 * d, 2 * d))
    if kind is ModelKind.complex:
        m[:d, :d] = np.diag(v_fwd)
        m[:d, d:] = np.diag(v_inv)
        m[d:, :d] = -np.diag(v_inv)
        m[d:, d:] = np.diag(v_fwd)
    elif kind is ModelKind.cp:
        m[:d, d:] = np.diag(v_fwd)
    elif kind is ModelKind.simple:
        m[:d, d:] = np.diag(v_fwd)
        m[d:, :d] = np.diag(v_inv)
    else:
        raise UnsupportedModelError(
            'no bilinear form for {}'.format(kind.label))
    return m


def entity_vector(params, entity, kind=None):
    """The entity vector multiplied against M_r."""
    kind = ModelKind(kind or params.kind)
    if kind is ModelKind.distmult:
        return params.head[entity].copy()
    return np.concatenate([params.head[entity], params.tail[entity]])


def bilinear_score(matrix, v_head, v_tail):
    """Returns v_head^T M v_tail.

    :raises: :class:`exceptions.DimensionError` on mismatching sizes
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    v_head = np.asarray(v_head, dtype=np.float64)
    v_tail = np.asarray(v_tail, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape != (v_head.shape[0], v_tail.shape[0]):
        raise DimensionError('cannot apply {} matrix to vectors of size {} and {}'.format(
            matrix.shape, v_head.shape, v_tail.shape))
    return float(v_head @ matrix @ v_tail)
