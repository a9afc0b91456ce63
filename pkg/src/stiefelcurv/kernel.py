"""Dense real matrix utilities shared by every other module.

Matrices are plain 2-D float64 :class:`numpy.ndarray` objects. ``as_matrix``
is the single validating entry point; everything else assumes its output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionError, NumericalError, StructureError

SKEW_TOL = 1e-12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D float64 array (copying only if needed)."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"{name} has non-finite entries")
    return m


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")


def _square(a: np.ndarray, name: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")


def frobenius_inner(a, b) -> float:
    """tr(a^T b)."""
    a, b = as_matrix(a), as_matrix(b)
    _same_shape(a, b)
    return float(np.sum(a * b))


def frobenius_norm(a) -> float:
    return float(np.sqrt(frobenius_inner(a, a)))


def sqnorm(a: np.ndarray) -> float:
    """Squared Frobenius norm without validation (hot path)."""
    return float(np.sum(a * a))


def commutator(a, b) -> np.ndarray:
    """[a, b] = ab - ba."""
    a, b = as_matrix(a), as_matrix(b)
    _square(a)
    _same_shape(a, b)
    return a @ b - b @ a


def skew_part(a) -> np.ndarray:
    a = as_matrix(a)
    _square(a)
    return 0.5 * (a - a.T)


def is_skew(a, tol: float = SKEW_TOL) -> bool:
    """Skewness test, absolute for ||a||_F <= 1 and relative above."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = max(1.0, float(np.linalg.norm(a)))
    return float(np.linalg.norm(a + a.T)) <= tol * scale


def check_skew(a, name: str = "matrix") -> np.ndarray:
    a = as_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise StructureError(f"{name} must be square to be skew-symmetric, got {a.shape}")
    if not is_skew(a):
        raise StructureError(f"{name} is not skew-symmetric")
    return a


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Full SVD ``a = u @ diag(sigma) @ v.T`` (``sigma`` padded into m x p)."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def sigma_matrix(self) -> np.ndarray:
        m, p = self.u.shape[0], self.v.shape[0]
        s = np.zeros((m, p))
        k = len(self.sigma)
        s[:k, :k] = np.diag(self.sigma)
        return s

    def reconstruct(self) -> np.ndarray:
        return self.u @ self.sigma_matrix() @ self.v.T


def _first_nonzero_sign(col: np.ndarray) -> float:
    idx = np.flatnonzero(np.abs(col) > 1e-12)
    if idx.size == 0:
        return 1.0
    return -1.0 if col[idx[0]] < 0 else 1.0


def svd(a) -> SvdResult:
    """Full SVD with a deterministic sign convention.

    Singular values are descending (LAPACK order, which keeps equal values in
    column order). Each left singular vector is flipped so its first nonzero
    entry is non-negative; the paired right vector is flipped with it.
    Unpaired trailing columns of u or v are normalized the same way.
    """
    a = as_matrix(a)
    m, p = a.shape
    if not np.any(a):
        return SvdResult(np.eye(m), np.zeros(min(m, p)), np.eye(p))
    u, s, vt = np.linalg.svd(a, full_matrices=True)
    v = vt.T.copy()
    u = u.copy()
    k = len(s)
    for j in range(u.shape[1]):
        sign = _first_nonzero_sign(u[:, j])
        if sign < 0:
            u[:, j] *= -1.0
            if j < k:
                v[:, j] *= -1.0
    for j in range(k, v.shape[1]):
        if _first_nonzero_sign(v[:, j]) < 0:
            v[:, j] *= -1.0
    return SvdResult(u, s, v)


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def spectral_norm(a) -> float:
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(singular_values(a)[0])


def expm(a) -> np.ndarray:
    """Matrix exponential (Pade scaling-and-squaring)."""
    a = as_matrix(a)
    _square(a)
    return scipy.linalg.expm(a)


def skew3(v) -> np.ndarray:
    """Map (a, b1, b2) to [[0, -a, -b1], [a, 0, -b2], [b1, b2, 0]]."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise StructureError(f"skew3 expects a 3-vector, got shape {v.shape}")
    a, b1, b2 = v
    return np.array([[0.0, -a, -b1], [a, 0.0, -b2], [b1, b2, 0.0]])


def vec3(x) -> np.ndarray:
    """Inverse of :func:`skew3`."""
    x = np.asarray(x, dtype=float)
    if x.shape != (3, 3):
        raise StructureError(f"vec3 expects a 3x3 matrix, got shape {x.shape}")
    if not is_skew(x):
        raise StructureError("vec3 expects a skew-symmetric matrix")
    return np.array([x[1, 0], x[2, 0], x[2, 1]])
