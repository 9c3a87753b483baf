import numpy as np

__all__ = [
    "complex_normal",
    "split_complex",
    "merge_complex",
]


def complex_normal(rng, size=None, variance=1.0):
    """
    Draw circularly symmetric complex gaussian samples CN(0, variance).

    ``variance`` is the total complex variance, each of the real
    and imaginary part has variance ``variance / 2``.

    Parameters
    ----------
    rng: numpy.random.Generator
        Source of randomness
    size: int or tuple or None
        Output shape
    variance: float
        Total variance of each complex sample

    Returns
    -------
    samples: complex or numpy.ndarray[complex]
    """
    scale = np.sqrt(variance / 2)
    # real parts are drawn before imaginary parts, keep this order stable
    re = rng.normal(0, scale, size)
    im = rng.normal(0, scale, size)
    return re + 1j * im


def split_complex(values):
    """
    Stack real parts followed by imaginary parts along the last axis.

    A complex array of shape (..., n) becomes a real array of shape (..., 2 * n).
    """
    values = np.asanyarray(values)
    if values.ndim == 0:
        values = values[np.newaxis]
    return np.concatenate([values.real, values.imag], axis=-1)


def merge_complex(values):
    """Inverse of `split_complex`"""
    values = np.asanyarray(values, dtype=np.float64)
    n = values.shape[-1] // 2
    return values[..., :n] + 1j * values[..., n:]
