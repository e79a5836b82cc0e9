"""Background knowledge rule files.

One rule per line, `#` starts a comment:

    symmetric R
    antisymmetric R
    inverse R1 R2
    equivalence R1 R2
"""
from collections import namedtuple
from enum import Enum
from enum import unique
from exceptions import ParseError
import logging


LOG = logging.getLogger(__name__)


@unique
class RuleKind(Enum):
    """Enumeration of the supported rule kinds."""
    symmetric = 'symmetric'
    antisymmetric = 'antisymmetric'
    inverse = 'inverse'
    equivalence = 'equivalence'

    @property
    def arity(self):
        if self in (RuleKind.symmetric, RuleKind.antisymmetric):
            return 1
        return 2


class Rule(namedtuple('Rule', 'kind relations')):
    """A background rule over one or two relation names."""

    __slots__ = ()

    def __new__(cls, kind, relations):
        if isinstance(relations, str):
            relations = (relations,)
        return super(Rule, cls).__new__(cls, RuleKind(kind), tuple(relations))

    def __str__(self):
        return '{} {}'.format(self.kind.value, ' '.join(self.relations))


def parse_rule_lines(lines, path='<input>'):
    """Parses rule lines.

    :param lines: Lines of text
    :type lines: iterable

    :param path: Name of the source, used in error messages
    :type path: str

    :returns: The rules in file order
    :rtype: list
    """
    rules = []
    for lineno, line in enumerate(lines, 1):
        tokens = line.split('#', 1)[0].split()
        if not tokens:
            continue
        keyword, names = tokens[0], tokens[1:]
        try:
            kind = RuleKind(keyword)
        except ValueError:
            raise ParseError(path, lineno, 'unknown rule {!r}'.format(keyword))
        if len(names) != kind.arity:
            raise ParseError(
                path, lineno,
                '{} expects {} relation(s), got {}'.format(
                    kind.value, kind.arity, len(names)))
        rules.append(Rule(kind, names))
    return rules


def parse_rules(path):
    """Loads a rule file.

    :param path: The rule file
    :type path: str

    :returns: The parsed rules
    :rtype: list
    """
    with open(path, 'r', encoding='utf8') as fp:
        rules = parse_rule_lines(fp, path)
    LOG.info('Loaded {} rules from {}'.format(len(rules), path))
    return rules
