from model.bilinear import bilinear_score  # noqa
from model.bilinear import build_bilinear_matrix  # noqa
from model.bilinear import entity_vector  # noqa
from model.checkpoint import load_meta  # noqa
from model.checkpoint import load_params  # noqa
from model.checkpoint import save_params  # noqa
from model.params import ModelKind  # noqa
from model.params import ModelParams  # noqa
from model.scoring import get_scorer  # noqa
from model.scoring import score  # noqa
from model.scoring import score_complex  # noqa
from model.scoring import score_cp  # noqa
from model.scoring import score_distmult  # noqa
from model.scoring import score_simple  # noqa
from model.scoring import score_simple_ignr  # noqa
from model.scoring import score_triple  # noqa
from model.scoring import trilinear  # noqa
