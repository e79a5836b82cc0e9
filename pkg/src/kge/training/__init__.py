from training.config import TrainConfig  # noqa
from training.objective import Gradients  # noqa
from training.objective import batch_gradients  # noqa
from training.objective import batch_loss  # noqa
from training.objective import gradient_check  # noqa
from training.objective import objective  # noqa
from training.optimizer import OptimizerState  # noqa
from training.optimizer import adagrad_step  # noqa
from training.sampling import LabelledBatch  # noqa
from training.sampling import corrupt  # noqa
from training.sampling import corrupt_array  # noqa
from training.sampling import make_batch  # noqa
from training.trainer import TrainHistory  # noqa
from training.trainer import train  # noqa
