from oracle.construction import all_triples  # noqa
from oracle.construction import construct_grid  # noqa
from oracle.construction import construct_incremental  # noqa
from oracle.construction import construct_minimal  # noqa
from oracle.construction import verify  # noqa
from oracle.groundtruth import GroundTruth  # noqa
from oracle.groundtruth import load_ground_truth  # noqa
from oracle.groundtruth import random_ground_truth  # noqa
