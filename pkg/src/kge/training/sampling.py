from dataset.triples import Triple
from dataset.triples import as_array
from exceptions import CorruptionError
import numpy as np


class LabelledBatch:
    """Triples with their +1 / -1 labels."""

    def __init__(self, triples, labels):
        """Constructor.

        :param triples: (n, 3) head, relation, tail ids
        :type triples: :class:`numpy.ndarray` or list

        :param labels: n labels in {+1, -1}
        :type labels: :class:`numpy.ndarray` or list
        """
        self.triples = as_array(triples)
        self.labels = np.asarray(labels, dtype=np.float64).reshape(-1)
        if len(self.triples) != len(self.labels):
            raise ValueError('{} triples but {} labels'.format(
                len(self.triples), len(self.labels)))
        if not np.all(np.abs(self.labels) == 1.0):
            raise ValueError('labels must be +1 or -1')

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return '<LabelledBatch({} triples, {} positive)>'.format(
            len(self), int(np.sum(self.labels > 0)))


def corrupt_array(triples, num_entities, rng):
    """Corrupts every row of an (n, 3) array once.

    Each row gets its head (probability 1/2) or its tail replaced by an entity
    drawn uniformly among the |E| - 1 others.

    :param triples: (n, 3) ids
    :type triples: :class:`numpy.ndarray`

    :param num_entities: |E|
    :type num_entities: int

    :param rng: The `corruption` stream
    :type rng: :class:`numpy.random.Generator`

    :returns: The corrupted copy
    :rtype: :class:`numpy.ndarray`
    """
    if num_entities < 2:
        raise CorruptionError('cannot corrupt with fewer than 2 entities')
    out = np.array(triples, dtype=np.int64).reshape(-1, 3)
    n = len(out)
    on_head = rng.random(n) < 0.5
    column = np.where(on_head, 0, 2)
    rows = np.arange(n)
    original = out[rows, column]
    draws = rng.integers(0, num_entities - 1, size=n)
    draws += draws >= original
    out[rows, column] = draws
    return out


def corrupt(positive, num_entities, rng):
    """Returns a negative triple differing from `positive` in exactly one entity.

    :rtype: :class:`dataset.Triple`
    """
    row = corrupt_array(np.asarray([positive]), num_entities, rng)[0]
    return Triple(*(int(x) for x in row))


def make_batch(positives, neg_ratio, rng, num_entities):
    """Labels the positives +1 and appends `neg_ratio` corruptions of each as -1.

    :param positives: (n, 3) positive triples
    :type positives: :class:`numpy.ndarray` or list

    :returns: Batch of n * (1 + neg_ratio) triples
    :rtype: :class:`training.LabelledBatch`
    """
    positives = as_array(positives)
    if not len(positives):
        raise ValueError('cannot build a batch from no positives')
    negatives = corrupt_array(np.tile(positives, (neg_ratio, 1)), num_entities, rng)
    labels = np.concatenate([np.ones(len(positives)), -np.ones(len(negatives))])
    return LabelledBatch(np.concatenate([positives, negatives]), labels)
