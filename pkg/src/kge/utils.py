import numpy as np
import zlib


SOFTPLUS_LINEAR_FROM = 30.0


def softplus(x):
    """Overflow-safe log(1 + exp(x)).

    :param x: Input values
    :type x: float or :class:`numpy.ndarray`

    :returns: softplus of every element
    :rtype: float or :class:`numpy.ndarray`
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.where(
        x > SOFTPLUS_LINEAR_FROM,
        x,
        np.log1p(np.exp(np.minimum(x, SOFTPLUS_LINEAR_FROM))))
    return out if out.ndim else float(out)


def sigmoid(x):
    """Logistic function, stable for large magnitudes.

    :param x: Input values
    :type x: float or :class:`numpy.ndarray`

    :returns: 1 / (1 + exp(-x)) element-wise
    :rtype: float or :class:`numpy.ndarray`
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.exp(-np.logaddexp(0.0, -x))
    return out if out.ndim else float(out)


def crc32_hex(data):
    """CRC32 of a byte string as 8 lowercase hex digits."""
    return '{:08x}'.format(zlib.crc32(data) & 0xffffffff)


def rng_stream(seed, name):
    """Returns the random generator of a named sub-stream of the run seed.

    Every stage of a pipeline (init, shuffle, corruption, dedupe) draws from
    its own stream so that changing one stage does not perturb the others.

    :param seed: The run seed
    :type seed: int

    :param name: The stream name
    :type name: str

    :returns: An independent generator
    :rtype: :class:`numpy.random.Generator`
    """
    return np.random.default_rng([int(seed), zlib.crc32(name.encode('utf8'))])
