from background.rules import RuleKind
from collections import namedtuple
from enum import Enum
from enum import unique
from exceptions import RuleError
from exceptions import TieConflictError
import logging
import numpy as np


LOG = logging.getLogger(__name__)

MAX_TIE_HOPS = 2


@unique
class Slot(Enum):
    """The two relation vectors of a relation."""
    fwd = 'fwd'
    inv = 'inv'

    @property
    def index(self):
        return 0 if self is Slot.fwd else 1


class Tie(namedtuple('Tie', 'relation target canonical_relation canonical_slot sign rule')):
    """Reads of (relation, target) are redirected to the canonical slot."""

    __slots__ = ()

    def to_json(self):
        return {
            'relation': int(self.relation),
            'target': self.target.value,
            'canonical_relation': int(self.canonical_relation),
            'canonical_slot': self.canonical_slot.value,
            'sign': int(self.sign),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            int(data['relation']),
            Slot(data['target']),
            int(data['canonical_relation']),
            Slot(data['canonical_slot']),
            int(data['sign']),
            None)


class TieSpec:
    """Validated set of ties with every slot resolved to its canonical storage.

    Chains (a tie whose canonical slot is itself tied) are followed at
    construction so every read is a single lookup. A chain may have at most
    MAX_TIE_HOPS ties.
    """

    def __init__(self, ties=()):
        """Constructor.

        :param ties: The ties
        :type ties: iterable of :class:`background.ties.Tie`

        :raises: :class:`exceptions.TieConflictError` when a slot is tied
            twice or the ties form a cycle
        :raises: :class:`exceptions.RuleError` on a chain longer than
            MAX_TIE_HOPS
        """
        self.ties = []
        self._by_slot = {}
        for tie in ties:
            if tie.sign not in (1, -1):
                raise RuleError('tie sign must be +1 or -1, got {}'.format(tie.sign))
            key = (tie.relation, tie.target)
            if key == (tie.canonical_relation, tie.canonical_slot):
                raise RuleError('slot tied to itself by {}'.format(tie.rule))
            previous = self._by_slot.get(key)
            if previous is not None:
                if previous[:5] == tie[:5]:
                    continue
                raise TieConflictError(
                    previous.rule or previous, tie.rule or tie,
                    'relation {} {} tied twice'.format(tie.relation, tie.target.value))
            self._by_slot[key] = tie
            self.ties.append(tie)

        self._resolved = {key: self._follow(key) for key in self._by_slot}

    def _follow(self, key):
        sign = 1
        seen = [key]
        tie = None
        start = key
        while key in self._by_slot:
            tie = self._by_slot[key]
            sign *= tie.sign
            key = (tie.canonical_relation, tie.canonical_slot)
            if key in seen:
                first = self._by_slot[seen[0]]
                raise TieConflictError(
                    first.rule or first, tie.rule or tie, 'cyclic ties')
            seen.append(key)
        if len(seen) - 1 > MAX_TIE_HOPS:
            raise RuleError('relation {} {} reaches its storage in {} ties, at most {} allowed'.format(
                start[0], start[1].value, len(seen) - 1, MAX_TIE_HOPS))
        return key[0], key[1], sign

    def __len__(self):
        return len(self.ties)

    def __iter__(self):
        return iter(self.ties)

    def resolve(self, relation, slot):
        """Returns (canonical relation, canonical slot, sign) of a slot."""
        return self._resolved.get((relation, slot), (relation, slot, 1))

    def resolution_arrays(self, num_relations):
        """Vectorised form of :meth:`resolve`.

        :returns: (slot_index, relation_index, sign) arrays of shape
            (2, num_relations); row 0 describes forward slots, row 1 inverse.
        :rtype: tuple
        """
        slots = np.empty((2, num_relations), dtype=np.int64)
        rels = np.empty((2, num_relations), dtype=np.int64)
        signs = np.ones((2, num_relations), dtype=np.float64)
        slots[0], slots[1] = 0, 1
        rels[:] = np.arange(num_relations)
        for (rel, slot), (c_rel, c_slot, sign) in self._resolved.items():
            if not 0 <= rel < num_relations or not 0 <= c_rel < num_relations:
                raise RuleError('tie references relation outside 0..{}'.format(
                    num_relations - 1))
            slots[slot.index, rel] = c_slot.index
            rels[slot.index, rel] = c_rel
            signs[slot.index, rel] = sign
        return slots, rels, signs

    def to_json(self):
        return [tie.to_json() for tie in self.ties]

    @classmethod
    def from_json(cls, data):
        return cls(Tie.from_json(entry) for entry in data)

    def __repr__(self):
        return '<TieSpec({} ties)>'.format(len(self.ties))


def ties_from_rules(rules, vocab):
    """Translates background rules into parameter ties.

    symmetric r      v_{r^-1} <- v_r
    antisymmetric r  v_{r^-1} <- -v_r
    inverse r1 r2    v_{r1^-1} <- v_{r2}, v_{r2^-1} <- v_{r1}
    equivalence r1 r2  v_{r2} <- v_{r1}, v_{r2^-1} <- v_{r1^-1}

    :param rules: The rules
    :type rules: list of :class:`background.Rule`

    :param vocab: Vocabulary the relation names resolve in
    :type vocab: :class:`dataset.Vocabulary`

    :returns: The validated ties
    :rtype: :class:`background.TieSpec`
    """
    ties = []

    def relation_id(name, rule):
        if name not in vocab.relations:
            raise RuleError('rule "{}" names unknown relation {!r}'.format(rule, name))
        return vocab.relations.id_of(name)

    for rule in rules:
        ids = [relation_id(name, rule) for name in rule.relations]
        kind = rule.kind
        if kind is RuleKind.inverse and ids[0] == ids[1]:
            kind = RuleKind.symmetric

        if kind is RuleKind.symmetric:
            ties.append(Tie(ids[0], Slot.inv, ids[0], Slot.fwd, 1, rule))
        elif kind is RuleKind.antisymmetric:
            ties.append(Tie(ids[0], Slot.inv, ids[0], Slot.fwd, -1, rule))
        elif kind is RuleKind.inverse:
            r1, r2 = ids
            ties.append(Tie(r1, Slot.inv, r2, Slot.fwd, 1, rule))
            ties.append(Tie(r2, Slot.inv, r1, Slot.fwd, 1, rule))
        else:
            r1, r2 = ids
            if r1 == r2:
                LOG.warning('Ignoring "{}": relation equivalent to itself'.format(rule))
                continue
            ties.append(Tie(r2, Slot.fwd, r1, Slot.fwd, 1, rule))
            ties.append(Tie(r2, Slot.inv, r1, Slot.inv, 1, rule))

    spec = TieSpec(ties)
    LOG.info('Bound {} rules into {} ties'.format(len(rules), len(spec)))
    return spec
