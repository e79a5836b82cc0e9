from background.rules import RuleKind
from dataset.triples import Triple
from exceptions import RuleError
from utils import rng_stream
import logging


LOG = logging.getLogger(__name__)


def redundant_pairs(triples, rules, vocab):
    """Yields pairs of training triples that imply each other under a rule.

    Pairs come out sorted and without repetition. Self-loops under a
    symmetric rule are never paired since both members are the same triple.

    :param triples: Training triples
    :type triples: list

    :param rules: Background rules
    :type rules: list of :class:`background.Rule`

    :param vocab: Vocabulary the rule names resolve in
    :type vocab: :class:`dataset.Vocabulary`

    :returns: Sorted list of (triple, triple) pairs
    :rtype: list
    """
    present = set(triples)
    pairs = set()

    def rel_id(name, rule):
        if name not in vocab.relations:
            raise RuleError('rule "{}" names unknown relation {!r}'.format(rule, name))
        return vocab.relations.id_of(name)

    for rule in rules:
        ids = [rel_id(name, rule) for name in rule.relations]
        if rule.kind is RuleKind.antisymmetric:
            continue
        if rule.kind is RuleKind.symmetric:
            r1 = r2 = ids[0]
        else:
            r1, r2 = ids
        for triple in present:
            h, r, t = triple
            if r != r1:
                continue
            if rule.kind is RuleKind.equivalence:
                other = Triple(h, r2, t)
            else:
                other = Triple(t, r2, h)
            if other != triple and other in present:
                pairs.add(tuple(sorted((triple, other))))
    return sorted(pairs)


def remove_redundant(train, rules, vocab, seed):
    """Removes one member of every pair of mutually implied training triples.

    :param train: Training triples
    :type train: list

    :param rules: Background rules
    :type rules: list of :class:`background.Rule`

    :param vocab: Vocabulary the rule names resolve in
    :type vocab: :class:`dataset.Vocabulary`

    :param seed: Run seed, the `dedupe` stream picks the dropped member
    :type seed: int

    :returns: The remaining triples, in input order
    :rtype: list
    """
    pairs = redundant_pairs(train, rules, vocab)
    rng = rng_stream(seed, 'dedupe')
    coins = rng.integers(0, 2, size=len(pairs))
    removed = set()
    for (first, second), coin in zip(pairs, coins):
        if first in removed or second in removed:
            continue
        removed.add(second if coin else first)

    kept = [triple for triple in train if triple not in removed]
    LOG.info('Removed {} redundant triples out of {} ({} candidate pairs)'.format(
        len(train) - len(kept), len(train), len(pairs)))
    return kept
