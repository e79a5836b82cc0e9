from background.ties import Slot
from background.ties import TieSpec
from enum import Enum
from enum import unique
from exceptions import DimensionError
from exceptions import UnsupportedModelError
import logging
import numpy as np


LOG = logging.getLogger(__name__)

MATRICES = ('head', 'tail', 'rel_fwd', 'rel_inv')


@unique
class ModelKind(Enum):
    """Enumeration of the supported scoring models."""
    simple = 'simple'
    simple_ignr = 'simple-ignr'
    cp = 'cp'
    distmult = 'distmult'
    complex = 'complex'

    @property
    def label(self):
        return {
            ModelKind.simple: 'SimplE',
            ModelKind.simple_ignr: 'SimplE-ignr',
            ModelKind.cp: 'CP',
            ModelKind.distmult: 'DistMult',
            ModelKind.complex: 'ComplEx',
        }[self]

    @property
    def supports_ties(self):
        return self in (ModelKind.simple, ModelKind.simple_ignr, ModelKind.cp)


class ModelParams:
    """Entity and relation embeddings.

    `head` and `tail` hold h_e and t_e per entity, `rel_fwd` and `rel_inv` hold
    v_r and v_{r^-1} per relation. DistMult shares one entity matrix (`tail`
    is the same array as `head`); ComplEx reads `head`/`tail` as real and
    imaginary entity parts and `rel_fwd`/`rel_inv` as real and imaginary
    relation parts.

    Relation reads go through the tie table: a tied slot is never read nor
    written, its value is the sign times its canonical slot.
    """

    def __init__(self, kind, head, tail, rel_fwd, rel_inv, ties=None):
        """Constructor.

        :param kind: The model kind
        :type kind: :class:`model.ModelKind`

        :param head: |E| x d head (or DistMult entity, ComplEx real) vectors
        :type head: :class:`numpy.ndarray`

        :param tail: |E| x d tail vectors; ignored for DistMult
        :type tail: :class:`numpy.ndarray`

        :param rel_fwd: |R| x d forward relation vectors
        :type rel_fwd: :class:`numpy.ndarray`

        :param rel_inv: |R| x d inverse relation vectors
        :type rel_inv: :class:`numpy.ndarray`

        :param ties: Parameter ties
        :type ties: :class:`background.TieSpec` or None
        """
        self.kind = ModelKind(kind)
        self.head = np.array(head, dtype=np.float64)
        if self.kind is ModelKind.distmult:
            self.tail = self.head
        else:
            self.tail = np.array(tail, dtype=np.float64)
        self.rel_fwd = np.array(rel_fwd, dtype=np.float64)
        self.rel_inv = np.array(rel_inv, dtype=np.float64)

        for name in MATRICES:
            if getattr(self, name).ndim != 2:
                raise DimensionError('{} must be a matrix'.format(name))
        if self.tail.shape != self.head.shape:
            raise DimensionError('head and tail shapes differ: {} vs {}'.format(
                self.head.shape, self.tail.shape))
        if self.rel_inv.shape != self.rel_fwd.shape:
            raise DimensionError('rel_fwd and rel_inv shapes differ: {} vs {}'.format(
                self.rel_fwd.shape, self.rel_inv.shape))
        if self.head.shape[1] != self.rel_fwd.shape[1]:
            raise DimensionError('entity dim {} != relation dim {}'.format(
                self.head.shape[1], self.rel_fwd.shape[1]))

        self.ties = ties if ties is not None else TieSpec()
        if len(self.ties) and not self.kind.supports_ties:
            raise UnsupportedModelError(
                '{} does not support parameter ties'.format(self.kind.label))
        self._slots, self._rels, self._signs = self.ties.resolution_arrays(
            self.num_relations)

    @property
    def dim(self):
        return self.head.shape[1]

    @property
    def num_entities(self):
        return self.head.shape[0]

    @property
    def num_relations(self):
        return self.rel_fwd.shape[0]

    @property
    def storage(self):
        """Mapping name -> array of the matrices actually stored."""
        names = MATRICES
        if self.kind is ModelKind.distmult:
            names = ('head', 'rel_fwd', 'rel_inv')
        return {name: getattr(self, name) for name in names}

    def relation_rows(self, slot, relations):
        """Tie-resolved relation vectors.

        :param slot: Forward or inverse slot
        :type slot: :class:`background.Slot`

        :param relations: Relation ids
        :type relations: int or :class:`numpy.ndarray`

        :returns: The vectors, one row per relation id
        :rtype: :class:`numpy.ndarray`
        """
        k = slot.index
        c_slot = self._slots[k, relations]
        c_rel = self._rels[k, relations]
        sign = self._signs[k, relations]
        rows = np.where(
            np.expand_dims(c_slot == 0, -1),
            self.rel_fwd[c_rel],
            self.rel_inv[c_rel])
        return rows * np.expand_dims(sign, -1)

    def relation_vectors(self):
        """Tie-resolved (forward, inverse) relation matrices."""
        rels = np.arange(self.num_relations)
        return self.relation_rows(Slot.fwd, rels), self.relation_rows(Slot.inv, rels)

    def canonical(self, slot, relations):
        """Where reads of the given relation slots come from.

        :returns: (canonical slot index per row, canonical relation ids, signs)
        :rtype: tuple
        """
        k = slot.index
        return self._slots[k, relations], self._rels[k, relations], self._signs[k, relations]

    def canonical_mask(self):
        """Boolean (2, |R|) mask of the relation slots that are not tied."""
        mask = np.ones((2, self.num_relations), dtype=bool)
        for tie in self.ties:
            mask[tie.target.index, tie.relation] = False
        return mask

    def copy(self):
        return ModelParams(
            self.kind,
            self.head,
            self.tail,
            self.rel_fwd,
            self.rel_inv,
            self.ties)

    @classmethod
    def zeros(cls, kind, num_entities, num_relations, dim, ties=None):
        shape_e, shape_r = (num_entities, dim), (num_relations, dim)
        return cls(
            kind, np.zeros(shape_e), np.zeros(shape_e),
            np.zeros(shape_r), np.zeros(shape_r), ties)

    @classmethod
    def initialize(cls, kind, num_entities, num_relations, dim, rng, ties=None):
        """Draws every element i.i.d. uniform on [-sqrt(6/d), sqrt(6/d)].

        Storage rows of tied slots are zeroed since they are never read.

        :param rng: The generator of the `init` stream
        :type rng: :class:`numpy.random.Generator`
        """
        if dim < 1:
            raise DimensionError('embedding size must be positive, got {}'.format(dim))
        bound = np.sqrt(6.0 / dim)
        shape_e, shape_r = (num_entities, dim), (num_relations, dim)
        head = rng.uniform(-bound, bound, size=shape_e)
        tail = rng.uniform(-bound, bound, size=shape_e)
        rel_fwd = rng.uniform(-bound, bound, size=shape_r)
        rel_inv = rng.uniform(-bound, bound, size=shape_r)
        params = cls(kind, head, tail, rel_fwd, rel_inv, ties)

        mask = params.canonical_mask()
        params.rel_fwd[~mask[0]] = 0.0
        params.rel_inv[~mask[1]] = 0.0
        LOG.debug('Initialized {} params |E|={} |R|={} d={} ({} ties)'.format(
            params.kind.label, num_entities, num_relations, dim, len(params.ties)))
        return params

    def __repr__(self):
        return '<ModelParams({}, |E|={}, |R|={}, d={})>'.format(
            self.kind.label, self.num_entities, self.num_relations, self.dim)
