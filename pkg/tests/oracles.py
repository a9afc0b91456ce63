"""Independent reference computations.

These avoid the block formulas entirely: the quotient oracle works on the full
n x n skew embedding and the Gauss oracle on the stacked n x p picture.
"""
import numpy as np


def _sq(a):
    return float(np.sum(a * a))


def quotient_curvature(x, y, horizontal_mask):
    """K = 1/4 <[X,Y]_m, [X,Y]_m> + <[X,Y]_h, [X,Y]_h> in the metric 1/2 tr,
    for X, Y orthonormal in that metric. ``horizontal_mask`` marks the entries
    of the isotropy (vertical) subalgebra h; the rest is m."""
    c = x @ y - y @ x
    ch = np.where(horizontal_mask, c, 0.0)
    cm = c - ch
    return 0.25 * 0.5 * _sq(cm) + 0.5 * _sq(ch)


def stiefel_vertical_mask(n, p):
    m = np.zeros((n, n), dtype=bool)
    m[p:, p:] = True
    return m


def grassmann_vertical_mask(n, p):
    m = np.zeros((n, n), dtype=bool)
    m[:p, :p] = True
    m[p:, p:] = True
    return m


def so_curvature(x, y):
    """Bi-invariant case: h = 0, K = 1/8 ||[X,Y]||_F^2."""
    return quotient_curvature(x, y, np.zeros(x.shape, dtype=bool))


def gauss_euclidean_stiefel(x, y):
    """Euclidean Stiefel curvature at [I; 0] from the Gauss equation with the
    normal-space second fundamental form II(X, Y) = -[I; 0] sym(X^T Y).

    For Frobenius-orthonormal X, Y in R^{n x p}:
    K = <II(X,X), II(Y,Y)> - ||II(X,Y)||^2
      = tr(sym(X^T X) sym(Y^T Y)) - ||sym(X^T Y)||^2.
    """
    def sym(a):
        return 0.5 * (a + a.T)
    return float(np.sum(sym(x.T @ x) * sym(y.T @ y)) - _sq(sym(x.T @ y)))


def embed_stiefel(a, b):
    m = b.shape[0]
    return np.block([[a, -b.T], [b, np.zeros((m, m))]])


def embed_grassmann(b):
    m, p = b.shape
    return np.block([[np.zeros((p, p)), -b.T], [b, np.zeros((m, m))]])


def unit_sphere_samples(rng, shape, count):
    """``count`` samples uniform on the unit Frobenius sphere of ``shape``."""
    z = rng.standard_normal((count,) + tuple(shape))
    norms = np.linalg.norm(z.reshape(count, -1), axis=1)
    return z / norms.reshape((count,) + (1,) * len(shape))
