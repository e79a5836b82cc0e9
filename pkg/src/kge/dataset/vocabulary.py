from difflib import get_close_matches
from exceptions import NameLookupError
from exceptions import ParseError
from exceptions import VocabularyError
import logging
import os


LOG = logging.getLogger(__name__)

ENTITIES_FILE = 'entities.tsv'
RELATIONS_FILE = 'relations.tsv'


class NameIndex:
    """Dense, insertion ordered id assignment for a set of names."""

    def __init__(self, kind, names=()):
        """Constructor.

        :param kind: Human readable kind of the names ("entity", "relation")
        :type kind: str

        :param names: Initial names, ids follow their order
        :type names: iterable
        """
        self.kind = kind
        self.names = []
        self.ids = {}
        for name in names:
            self.add(name)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.ids

    def add(self, name):
        """Returns the id of the name, assigning the next free id if new."""
        try:
            return self.ids[name]
        except KeyError:
            self.ids[name] = len(self.names)
            self.names.append(name)
            return self.ids[name]

    def id_of(self, name):
        try:
            return self.ids[name]
        except KeyError:
            raise VocabularyError('unknown {} {!r}'.format(self.kind, name))

    def lookup(self, name):
        """Like :meth:`id_of` but reports the closest known names on failure.

        :raises: :class:`exceptions.NameLookupError`
        """
        try:
            return self.ids[name]
        except KeyError:
            raise NameLookupError(
                self.kind, name, get_close_matches(name, self.names, n=3))

    def name_of(self, idx):
        return self.names[idx]

    def save(self, path):
        with open(path, 'w', encoding='utf8') as fp:
            for idx, name in enumerate(self.names):
                fp.write('{}\t{}\n'.format(idx, name))

    @classmethod
    def load(cls, kind, path):
        index = cls(kind)
        with open(path, 'r', encoding='utf8') as fp:
            for lineno, line in enumerate(fp, 1):
                line = line.rstrip('\r\n')
                if not line:
                    continue
                fields = line.split('\t')
                if len(fields) != 2:
                    raise ParseError(path, lineno, 'expected "id<TAB>name"')
                try:
                    idx = int(fields[0])
                except ValueError:
                    raise ParseError(path, lineno, 'invalid id {!r}'.format(fields[0]))
                if idx != len(index):
                    raise ParseError(
                        path, lineno,
                        'ids must be contiguous, expected {}'.format(len(index)))
                if fields[1] in index:
                    raise ParseError(
                        path, lineno, 'duplicate name {!r}'.format(fields[1]))
                index.add(fields[1])
        return index


class Vocabulary:
    """Bidirectional name <-> id mapping of entities and relations."""

    def __init__(self, entity_names=(), relation_names=()):
        """Constructor.

        :param entity_names: Entity names in id order
        :type entity_names: iterable

        :param relation_names: Relation names in id order
        :type relation_names: iterable
        """
        self.entities = NameIndex('entity', entity_names)
        self.relations = NameIndex('relation', relation_names)

    @property
    def entity_names(self):
        return self.entities.names

    @property
    def relation_names(self):
        return self.relations.names

    @property
    def num_entities(self):
        return len(self.entities)

    @property
    def num_relations(self):
        return len(self.relations)

    def save(self, directory):
        """Writes `entities.tsv` and `relations.tsv` into the directory."""
        os.makedirs(directory, exist_ok=True)
        self.entities.save(os.path.join(directory, ENTITIES_FILE))
        self.relations.save(os.path.join(directory, RELATIONS_FILE))
        LOG.debug('Saved vocabulary to {}'.format(directory))

    @classmethod
    def load(cls, directory):
        vocab = cls()
        vocab.entities = NameIndex.load(
            'entity', os.path.join(directory, ENTITIES_FILE))
        vocab.relations = NameIndex.load(
            'relation', os.path.join(directory, RELATIONS_FILE))
        return vocab

    def __repr__(self):
        return '<Vocabulary(|E|={}, |R|={})>'.format(
            self.num_entities, self.num_relations)
