import logging
import numpy as np


LOG = logging.getLogger(__name__)

EPSILON = 1e-8


class OptimizerState:
    """AdaGrad squared-gradient accumulators, one per stored matrix."""

    def __init__(self, params, epsilon=EPSILON):
        """Constructor.

        :param params: The embeddings being optimized
        :type params: :class:`model.ModelParams`

        :param epsilon: Denominator offset
        :type epsilon: float
        """
        self.epsilon = epsilon
        self.accumulators = {
            name: np.zeros_like(array) for name, array in params.storage.items()
        }


def adagrad_step(params, grads, state, lr):
    """Applies one AdaGrad update in place.

    For every touched element x with gradient g: G += g^2 and
    x -= lr * g / (sqrt(G) + eps). Tied slots have no storage of their own
    and are updated through their canonical rows.

    :param params: The embeddings
    :type params: :class:`model.ModelParams`

    :param grads: Row-sparse gradients
    :type grads: :class:`training.Gradients`

    :param state: The accumulators
    :type state: :class:`training.OptimizerState`

    :param lr: Learning rate
    :type lr: float
    """
    for name, (rows, g) in grads.items():
        acc = state.accumulators[name]
        array = getattr(params, name)
        acc[rows] += g * g
        array[rows] -= lr * g / (np.sqrt(acc[rows]) + state.epsilon)
