from background.rules import Rule  # noqa
from background.rules import RuleKind  # noqa
from background.rules import parse_rule_lines  # noqa
from background.rules import parse_rules  # noqa
from background.ties import Slot  # noqa
from background.ties import Tie  # noqa
from background.ties import TieSpec  # noqa
from background.ties import ties_from_rules  # noqa
