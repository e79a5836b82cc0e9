"""Mini-batch training loop with validation-based model selection."""
from dataset.triples import as_array
from evaluation.ranking import evaluate
from exceptions import KGEError
from exceptions import TrainingError
from model.checkpoint import save_params
from model.params import ModelParams
from training.objective import objective
from training.optimizer import OptimizerState
from training.optimizer import adagrad_step
from training.sampling import make_batch
from utils import rng_stream
import csv
import logging
import numpy as np


LOG = logging.getLogger(__name__)

HISTORY_HEADER = ('epoch', 'train_loss', 'valid_filtered_mrr')


class TrainHistory:
    """One (epoch, train loss, validation filtered MRR or None) row per epoch."""

    def __init__(self):
        self.rows = []
        self.best_epoch = None
        self.best_mrr = None

    def append(self, epoch, loss, mrr=None):
        self.rows.append((epoch, loss, mrr))
        if mrr is not None and (self.best_mrr is None or mrr > self.best_mrr):
            self.best_epoch = epoch
            self.best_mrr = mrr

    def evaluations(self):
        """Rows that carry a validation MRR."""
        return [row for row in self.rows if row[2] is not None]

    def save_csv(self, path):
        """Writes `epoch,train_loss,valid_filtered_mrr`, the MRR cell empty
        for epochs without evaluation."""
        with open(path, 'w', newline='') as fp:
            writer = csv.writer(fp)
            writer.writerow(HISTORY_HEADER)
            for epoch, loss, mrr in self.rows:
                writer.writerow((epoch, repr(loss), '' if mrr is None else repr(mrr)))

    @classmethod
    def load_csv(cls, path):
        history = cls()
        with open(path, 'r', newline='') as fp:
            reader = csv.reader(fp)
            header = next(reader, None)
            if tuple(header or ()) != HISTORY_HEADER:
                raise ValueError('{} is not a training history'.format(path))
            for epoch, loss, mrr in reader:
                history.append(int(epoch), float(loss), float(mrr) if mrr else None)
        return history

    def __len__(self):
        return len(self.rows)


def _sizes(data, vocab):
    if vocab is not None:
        return vocab.num_entities, vocab.num_relations
    known = as_array(sorted(data.known))
    return int(max(known[:, 0].max(), known[:, 2].max())) + 1, int(known[:, 1].max()) + 1


def train(config, data, vocab=None, ties=None, threads=1, snapshot_dir=None):
    """Trains embeddings with AdaGrad on the logistic loss.

    Each epoch shuffles the training split, then takes it in batches of
    `config.batch_size` positives, each followed by `config.neg_ratio`
    corruptions. Every `config.eval_every` epochs, and at the last epoch, the
    filtered MRR on the validation split is computed and the best parameters
    so far are kept.

    :param config: Hyper-parameters
    :type config: :class:`training.TrainConfig`

    :param data: The splits, also used as the filter index
    :type data: :class:`dataset.TripleSet`

    :param vocab: Vocabulary fixing |E| and |R|; derived from the ids if None
    :type vocab: :class:`dataset.Vocabulary` or None

    :param ties: Parameter ties from background rules
    :type ties: :class:`background.TieSpec` or None

    :param threads: Worker processes for validation ranking
    :type threads: int

    :param snapshot_dir: Directory where every new best snapshot is written
    :type snapshot_dir: str or None

    :returns: (best parameters, history)
    :rtype: tuple

    :raises: :class:`exceptions.TrainingError` on a non-finite loss
    """
    positives = as_array(data.train)
    if not len(positives):
        raise KGEError('the training split is empty')
    num_entities, num_relations = _sizes(data, vocab)

    init_rng = rng_stream(config.seed, 'init')
    shuffle_rng = rng_stream(config.seed, 'shuffle')
    corruption_rng = rng_stream(config.seed, 'corruption')

    params = ModelParams.initialize(
        config.model_kind, num_entities, num_relations, config.dim, init_rng, ties)
    state = OptimizerState(params)
    history = TrainHistory()
    best = None

    LOG.info('Training {} d={} on {} triples for {} epochs'.format(
        params.kind.label, config.dim, len(positives), config.max_epochs))

    for epoch in range(1, config.max_epochs + 1):
        order = shuffle_rng.permutation(len(positives))
        epoch_loss = 0.0
        for index, start in enumerate(range(0, len(order), config.batch_size)):
            batch = make_batch(
                positives[order[start:start + config.batch_size]],
                config.neg_ratio, corruption_rng, num_entities)
            loss, grads = objective(params, batch, config.lam)
            if not np.isfinite(loss):
                raise TrainingError(epoch, index, loss)
            adagrad_step(params, grads, state, config.learning_rate)
            epoch_loss += loss
        LOG.debug('Epoch {}: loss {:.6f}'.format(epoch, epoch_loss))

        mrr = None
        last = epoch == config.max_epochs
        if data.valid and (epoch % config.eval_every == 0 or last):
            mrr = evaluate(params, data.valid, data, threads=threads).mrr_filtered
            LOG.info('Epoch {}: loss {:.4f}, valid filtered MRR {:.4f}'.format(
                epoch, epoch_loss, mrr))
            if history.best_mrr is None or mrr > history.best_mrr:
                best = params.copy()
                if snapshot_dir:
                    save_params(best, snapshot_dir, vocab)
        history.append(epoch, epoch_loss, mrr)

    if best is None:
        best = params.copy()
    if history.best_epoch is not None:
        LOG.info('Best valid filtered MRR {:.4f} at epoch {}'.format(
            history.best_mrr, history.best_epoch))
    return best, history
