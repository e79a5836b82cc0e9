from dataset.triples import Triple
from exceptions import GroundTruthError
import logging
import numpy as np


LOG = logging.getLogger(__name__)


class GroundTruth:
    """Truth value of every one of the |R| * |E|^2 triples.

    `truth[r, h, t]` is True when (h, r, t) holds.
    """

    def __init__(self, num_entities, num_relations, truth=None):
        if num_entities < 1 or num_relations < 1:
            raise GroundTruthError('need at least one entity and one relation, got {} and {}'.format(
                num_entities, num_relations))
        self.num_entities = num_entities
        self.num_relations = num_relations
        shape = (num_relations, num_entities, num_entities)
        if truth is None:
            self.truth = np.zeros(shape, dtype=bool)
        else:
            self.truth = np.array(truth, dtype=bool)
            if self.truth.shape != shape:
                raise GroundTruthError('truth table has shape {}, expected {}'.format(
                    self.truth.shape, shape))

    @property
    def gamma(self):
        """Number of true triples."""
        return int(np.count_nonzero(self.truth))

    def add(self, head, relation, tail):
        if not (0 <= head < self.num_entities and 0 <= tail < self.num_entities):
            raise GroundTruthError('entity id out of range in {}'.format((head, relation, tail)))
        if not 0 <= relation < self.num_relations:
            raise GroundTruthError('relation id out of range in {}'.format((head, relation, tail)))
        self.truth[relation, head, tail] = True

    def facts(self):
        """The true triples, ordered by (relation, head, tail)."""
        return [Triple(int(h), int(r), int(t)) for r, h, t in np.argwhere(self.truth)]

    def __contains__(self, triple):
        h, r, t = triple
        return bool(self.truth[r, h, t])

    def __repr__(self):
        return '<GroundTruth(|E|={}, |R|={}, gamma={})>'.format(
            self.num_entities, self.num_relations, self.gamma)


def _ints(fields, path, lineno):
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise GroundTruthError('{}:{}: expected integers, got {!r}'.format(
            path, lineno, ' '.join(fields)))


def load_ground_truth(path):
    """Reads a ground truth file.

    The first line holds `|E| |R|`, every following line one true triple
    `h r t` as integer ids. Blank lines and `#` comments are skipped.

    :param path: The file
    :type path: str

    :rtype: :class:`oracle.GroundTruth`

    :raises: :class:`exceptions.GroundTruthError`
    """
    gt = None
    with open(path, 'r') as fp:
        for lineno, line in enumerate(fp, 1):
            fields = line.split('#', 1)[0].split()
            if not fields:
                continue
            if gt is None:
                if len(fields) != 2:
                    raise GroundTruthError('{}:{}: header must be "|E| |R|"'.format(path, lineno))
                gt = GroundTruth(*_ints(fields, path, lineno))
                continue
            if len(fields) != 3:
                raise GroundTruthError('{}:{}: expected "h r t"'.format(path, lineno))
            try:
                gt.add(*_ints(fields, path, lineno))
            except GroundTruthError as err:
                raise GroundTruthError('{}:{}: {}'.format(path, lineno, err))
    if gt is None:
        raise GroundTruthError('{}: empty ground truth file'.format(path))
    LOG.info('Loaded {} from {}'.format(gt, path))
    return gt


def random_ground_truth(num_entities, num_relations, density, rng):
    """Marks every triple true independently with probability `density`.

    :param rng: The random generator
    :type rng: :class:`numpy.random.Generator`
    """
    if not 0.0 <= density <= 1.0:
        raise GroundTruthError('density must lie in [0, 1], got {}'.format(density))
    truth = rng.random((num_relations, num_entities, num_entities)) < density
    return GroundTruth(num_entities, num_relations, truth)
