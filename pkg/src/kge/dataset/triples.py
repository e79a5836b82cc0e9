"""Triple files, dataset splits and the filter index.

A triple file holds one `head<TAB>relation<TAB>tail` triple per line, UTF-8.
"""
from collections import defaultdict
from collections import namedtuple
from dataset.vocabulary import Vocabulary
from exceptions import InputFileError
from exceptions import ParseError
from exceptions import VocabularyError
import logging
import numpy as np
import os


LOG = logging.getLogger(__name__)

SPLITS = ('train', 'valid', 'test')


class Triple(namedtuple('Triple', 'head relation tail')):
    """(head, relation, tail) id triple."""

    __slots__ = ()

    def check(self, num_entities, num_relations):
        if not (0 <= self.head < num_entities and 0 <= self.tail < num_entities):
            raise IndexError('entity id out of range in {}'.format(self))
        if not 0 <= self.relation < num_relations:
            raise IndexError('relation id out of range in {}'.format(self))


def as_array(triples):
    """Packs triples into an (n, 3) int64 array of head, relation, tail."""
    if not len(triples):
        return np.zeros((0, 3), dtype=np.int64)
    return np.asarray(triples, dtype=np.int64).reshape(-1, 3)


def parse_triples(lines, vocab, extend, path='<input>'):
    """Parses an iterable of TSV lines into triples.

    :param lines: Lines of text
    :type lines: iterable

    :param vocab: The vocabulary to index names with
    :type vocab: :class:`dataset.Vocabulary`

    :param extend: Whether unknown names get new ids
    :type extend: bool

    :param path: Name of the source, used in error messages
    :type path: str

    :returns: Indexed triples, in file order
    :rtype: list
    """
    triples = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip('\r\n')
        if not line.strip():
            continue
        fields = line.split('\t')
        if len(fields) != 3:
            raise ParseError(
                path, lineno,
                'expected 3 tab separated fields, got {}'.format(len(fields)))
        head, rel, tail = fields
        if extend:
            h = vocab.entities.add(head)
            r = vocab.relations.add(rel)
            t = vocab.entities.add(tail)
        else:
            try:
                h = vocab.entities.id_of(head)
                r = vocab.relations.id_of(rel)
                t = vocab.entities.id_of(tail)
            except VocabularyError as err:
                raise VocabularyError('{}:{}: {}'.format(path, lineno, err))
        triples.append(Triple(h, r, t))
    return triples


def load_triples(path, vocab=None, extend=None):
    """Loads a triple file.

    Without a vocabulary a new one is built in first-seen order. A given
    vocabulary is fixed (unknown names are an error) unless `extend` is set.

    :param path: The TSV file
    :type path: str

    :param vocab: Vocabulary to index with
    :type vocab: :class:`dataset.Vocabulary` or None

    :param extend: Allow new names; defaults to True only without `vocab`
    :type extend: bool or None

    :returns: (triples, vocabulary)
    :rtype: tuple

    :raises: :class:`exceptions.InputFileError` when the file is missing or
        not UTF-8
    """
    if vocab is None:
        vocab = Vocabulary()
        extend = True if extend is None else extend
    elif extend is None:
        extend = False

    LOG.info('Loading triples from {}'.format(path))
    try:
        with open(path, 'r', encoding='utf8') as fp:
            triples = parse_triples(fp, vocab, extend, path)
    except OSError as err:
        raise InputFileError('cannot read {}: {}'.format(path, err.strerror or err))
    except UnicodeDecodeError:
        raise InputFileError('{} is not UTF-8 text'.format(path))
    LOG.debug('Loaded {} triples from {}'.format(len(triples), path))
    return triples, vocab


def write_triples(path, triples, vocab):
    """Writes triples back in the TSV format."""
    with open(path, 'w', encoding='utf8') as fp:
        for h, r, t in triples:
            fp.write('{}\t{}\t{}\n'.format(
                vocab.entities.name_of(h),
                vocab.relations.name_of(r),
                vocab.entities.name_of(t)))


def collapse_duplicates(triples, split='split'):
    """Drops repeated triples keeping the first occurrence.

    :returns: The triples without repetitions, in original order
    :rtype: list
    """
    seen = set()
    unique = []
    for triple in triples:
        if triple not in seen:
            seen.add(triple)
            unique.append(triple)
    dropped = len(triples) - len(unique)
    if dropped:
        LOG.warning('Collapsed {} duplicate triples in {}'.format(dropped, split))
    return unique


class TripleSet:
    """The three dataset splits and the membership index over their union.

    Instances are not modified after construction.
    """

    def __init__(self, train, valid, test):
        """Constructor.

        :param train: Training triples
        :type train: list

        :param valid: Validation triples
        :type valid: list

        :param test: Test triples
        :type test: list
        """
        self.train = list(train)
        self.valid = list(valid)
        self.test = list(test)

        self.known = frozenset(self.train) | frozenset(self.valid) | frozenset(self.test)

        heads = defaultdict(list)
        tails = defaultdict(list)
        for h, r, t in self.known:
            heads[(r, t)].append(h)
            tails[(h, r)].append(t)
        self._heads = {k: np.array(sorted(v), dtype=np.int64) for k, v in heads.items()}
        self._tails = {k: np.array(sorted(v), dtype=np.int64) for k, v in tails.items()}

        self.overlaps = {
            'train/valid': len(set(self.train) & set(self.valid)),
            'train/test': len(set(self.train) & set(self.test)),
            'valid/test': len(set(self.valid) & set(self.test)),
        }

    def __len__(self):
        return len(self.known)

    def __contains__(self, triple):
        return tuple(triple) in self.known

    def contains(self, triple):
        return tuple(triple) in self.known

    def split(self, name):
        if name not in SPLITS:
            raise ValueError('unknown split {!r}'.format(name))
        return getattr(self, name)

    def known_heads(self, relation, tail):
        """Ids h such that (h, relation, tail) is a known triple."""
        return self._heads.get((relation, tail), np.zeros(0, dtype=np.int64))

    def known_tails(self, head, relation):
        """Ids t such that (head, relation, t) is a known triple."""
        return self._tails.get((head, relation), np.zeros(0, dtype=np.int64))

    def __repr__(self):
        return '<TripleSet(train={}, valid={}, test={}, known={})>'.format(
            len(self.train), len(self.valid), len(self.test), len(self.known))


def build_filter_index(train, valid, test):
    """Builds the :class:`TripleSet` used for filtered ranking.

    :returns: The indexed splits
    :rtype: :class:`dataset.TripleSet`
    """
    triples = TripleSet(train, valid, test)
    for pair, count in sorted(triples.overlaps.items()):
        if count:
            LOG.warning('{} triples shared by {}'.format(count, pair))
    LOG.info('Filter index holds {} triples'.format(len(triples)))
    return triples


def load_dataset(directory, filenames=None, vocab=None):
    """Loads the three splits of a dataset directory with one vocabulary.

    Ids are assigned in first-seen order over train, then valid, then test.
    A given vocabulary (e.g. the one stored with a checkpoint) is used as is
    and names missing from it are an error.

    :param directory: The dataset directory
    :type directory: str

    :param filenames: Mapping split -> file name inside `directory`
    :type filenames: dict or None

    :param vocab: Fixed vocabulary
    :type vocab: :class:`dataset.Vocabulary` or None

    :returns: (triples, vocabulary)
    :rtype: tuple
    """
    filenames = filenames or {s: '{}.txt'.format(s) for s in SPLITS}
    extend = vocab is None
    vocab = vocab if vocab is not None else Vocabulary()
    splits = {}
    for split in SPLITS:
        path = os.path.join(directory, filenames[split])
        triples, _ = load_triples(path, vocab, extend=extend)
        splits[split] = collapse_duplicates(triples, split)

    LOG.info('Dataset {}: |E|={}, |R|={}, train={}, valid={}, test={}'.format(
        directory, vocab.num_entities, vocab.num_relations,
        len(splits['train']), len(splits['valid']), len(splits['test'])))
    return build_filter_index(**splits), vocab
