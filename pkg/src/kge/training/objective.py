"""Logistic loss, its analytic gradients and a finite-difference check.

The objective of a batch is

    sum softplus(-l * phi(h, r, t)) + lambda * ||theta_B||^2

where theta_B are the parameter rows read by the batch, counted once each
(tied relation slots count through their canonical rows). SimplE-ignr
trains each of its two terms with its own softplus.
"""
from background.ties import Slot
from collections import defaultdict
from model.params import ModelKind
from training.sampling import LabelledBatch
from utils import sigmoid
from utils import softplus
import logging
import numpy as np


LOG = logging.getLogger(__name__)


class Gradients:
    """Row-sparse gradients, storage name -> (unique rows, values)."""

    def __init__(self, dim):
        self.dim = dim
        self._parts = defaultdict(list)
        self.rows = {}

    def add(self, name, rows, values):
        self._parts[name].append((np.atleast_1d(rows), np.reshape(values, (-1, self.dim))))

    def reduce(self):
        """Merges repeated rows, in a fixed order."""
        for name, parts in self._parts.items():
            rows = np.concatenate([p[0] for p in parts])
            values = np.concatenate([p[1] for p in parts])
            unique, inverse = np.unique(rows, return_inverse=True)
            acc = np.zeros((len(unique), self.dim))
            np.add.at(acc, inverse.reshape(-1), values)
            self.rows[name] = (unique, acc)
        self._parts.clear()
        return self

    def items(self):
        return sorted(self.rows.items())

    def __getitem__(self, name):
        return self.rows[name]

    def __contains__(self, name):
        return name in self.rows

    def dense(self, params):
        """Full-size gradient arrays, zero where a row was not touched."""
        out = {}
        for name, array in params.storage.items():
            full = np.zeros_like(array)
            if name in self.rows:
                rows, values = self.rows[name]
                full[rows] = values
            out[name] = full
        return out


def _add_relation(grads, params, slot, relations, values):
    c_slot, c_rel, sign = params.canonical(slot, relations)
    values = values * sign[:, None]
    for index, name in ((0, 'rel_fwd'), (1, 'rel_inv')):
        mask = c_slot == index
        if np.any(mask):
            grads.add(name, c_rel[mask], values[mask])


def _terms(params, h, r, t, labels, kind):
    """Per-kind loss terms and the raw (unregularized) gradients."""
    grads = Gradients(params.dim)

    if kind in (ModelKind.simple, ModelKind.simple_ignr, ModelKind.cp):
        h_h, t_t = params.head[h], params.tail[t]
        v_f = params.relation_rows(Slot.fwd, r)
        s_f = np.sum(h_h * v_f * t_t, axis=-1)
        if kind is ModelKind.cp:
            loss = softplus(-labels * s_f)
            c_f = -labels * sigmoid(-labels * s_f)
        else:
            h_t, t_h = params.head[t], params.tail[h]
            v_i = params.relation_rows(Slot.inv, r)
            s_i = np.sum(h_t * v_i * t_h, axis=-1)
            if kind is ModelKind.simple:
                phi = 0.5 * (s_f + s_i)
                loss = softplus(-labels * phi)
                c_f = c_i = -0.5 * labels * sigmoid(-labels * phi)
            else:
                loss = softplus(-labels * s_f) + softplus(-labels * s_i)
                c_f = -labels * sigmoid(-labels * s_f)
                c_i = -labels * sigmoid(-labels * s_i)
            grads.add('head', t, c_i[:, None] * v_i * t_h)
            grads.add('tail', h, c_i[:, None] * v_i * h_t)
            _add_relation(grads, params, Slot.inv, r, c_i[:, None] * h_t * t_h)
        grads.add('head', h, c_f[:, None] * v_f * t_t)
        grads.add('tail', t, c_f[:, None] * v_f * h_h)
        _add_relation(grads, params, Slot.fwd, r, c_f[:, None] * h_h * t_t)

    elif kind is ModelKind.distmult:
        e_h, e_t = params.head[h], params.head[t]
        v = params.relation_rows(Slot.fwd, r)
        phi = np.sum((e_h * e_t) * v, axis=-1)
        loss = softplus(-labels * phi)
        c = (-labels * sigmoid(-labels * phi))[:, None]
        grads.add('head', h, c * e_t * v)
        grads.add('head', t, c * e_h * v)
        _add_relation(grads, params, Slot.fwd, r, c * e_h * e_t)

    elif kind is ModelKind.complex:
        a, b = params.head[h], params.tail[h]
        e, f = params.head[t], params.tail[t]
        c_r = params.relation_rows(Slot.fwd, r)
        d_r = params.relation_rows(Slot.inv, r)
        phi = (np.sum(a * c_r * e, axis=-1) + np.sum(a * d_r * f, axis=-1) +
               np.sum(b * c_r * f, axis=-1) - np.sum(b * d_r * e, axis=-1))
        loss = softplus(-labels * phi)
        c = (-labels * sigmoid(-labels * phi))[:, None]
        grads.add('head', h, c * (c_r * e + d_r * f))
        grads.add('tail', h, c * (c_r * f - d_r * e))
        grads.add('head', t, c * (a * c_r - b * d_r))
        grads.add('tail', t, c * (a * d_r + b * c_r))
        _add_relation(grads, params, Slot.fwd, r, c * (a * e + b * f))
        _add_relation(grads, params, Slot.inv, r, c * (a * f - b * e))

    else:
        raise ValueError('unknown model kind {}'.format(kind))

    return float(np.sum(loss)), grads.reduce()


def objective(params, batch, lam, kind=None):
    """Loss and gradients of a batch in one pass.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param batch: The labelled triples
    :type batch: :class:`training.LabelledBatch`

    :param lam: L2 coefficient
    :type lam: float

    :param kind: Training formula, defaults to the params' kind
    :type kind: :class:`model.ModelKind` or None

    :returns: (loss, gradients)
    :rtype: tuple
    """
    kind = ModelKind(kind or params.kind)
    h, r, t = batch.triples[:, 0], batch.triples[:, 1], batch.triples[:, 2]
    loss, grads = _terms(params, h, r, t, batch.labels, kind)

    if lam:
        for name, (rows, values) in grads.items():
            theta = getattr(params, name)[rows]
            loss += lam * float(np.sum(theta * theta))
            values += 2.0 * lam * theta
    return loss, grads


def batch_loss(params, batch, lam, kind=None):
    """Regularized logistic loss of a batch."""
    return objective(params, batch, lam, kind)[0]


def batch_gradients(params, batch, lam, kind=None):
    """Gradients of :func:`batch_loss`, accumulated into canonical storage.

    :rtype: :class:`training.Gradients`
    """
    return objective(params, batch, lam, kind)[1]


def gradient_check(params, triple, label, lam, kind=None, step=1e-6):
    """Compares analytic and central finite-difference gradients.

    Every element of every row touched by the single-triple batch is
    perturbed by +/- step in a copy of the parameters.

    :returns: max |a - n| / max(1e-12, |a| + |n|) over the touched elements
    :rtype: float
    """
    if step <= 0:
        raise ValueError('step must be positive')
    batch = LabelledBatch([triple], [label])
    grads = batch_gradients(params, batch, lam, kind)
    work = params.copy()

    worst = 0.0
    for name, (rows, values) in grads.items():
        array = getattr(work, name)
        for i, row in enumerate(rows):
            for j in range(work.dim):
                original = array[row, j]
                array[row, j] = original + step
                plus = batch_loss(work, batch, lam, kind)
                array[row, j] = original - step
                minus = batch_loss(work, batch, lam, kind)
                array[row, j] = original

                numeric = (plus - minus) / (2.0 * step)
                analytic = values[i, j]
                err = abs(analytic - numeric) / max(1e-12, abs(analytic) + abs(numeric))
                worst = max(worst, err)
    LOG.debug('Gradient check of {}: max relative error {:.3e}'.format(tuple(triple), worst))
    return worst
