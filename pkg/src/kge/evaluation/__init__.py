from evaluation.ranking import RankMode  # noqa
from evaluation.ranking import Side  # noqa
from evaluation.ranking import evaluate  # noqa
from evaluation.ranking import rank_entity  # noqa
from evaluation.ranking import rank_from_scores  # noqa
from evaluation.ranking import rank_triple  # noqa
from evaluation.report import HITS_AT  # noqa
from evaluation.report import EvalReport  # noqa
from evaluation.report import RankPair  # noqa
