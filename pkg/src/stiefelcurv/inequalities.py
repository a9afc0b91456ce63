"""Matrix-norm inequalities, trace extremization and scalar bound functions.

Each inequality check returns an :class:`InequalityReport` carrying both sides
and the slack; nothing here raises on a violated inequality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, StructureError
from .kernel import as_matrix, check_skew, is_skew, singular_values, spectral_norm, sqnorm, svd

TIGHT_TOL = 1e-10
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    witness: tuple | None = None

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def tight(self) -> bool:
        return abs(self.slack) <= TIGHT_TOL * max(1.0, self.rhs)

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "tight": self.tight}


def submult_bound(a, b) -> InequalityReport:
    """||AB||_F <= min(||A||_2 ||B||_F, ||A||_F ||B||_2), tightened by
    ||A||_F ||B||_F / sqrt(2) when either factor is skew-symmetric."""
    a, b = as_matrix(a, "A"), as_matrix(b, "B")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    lhs = math.sqrt(sqnorm(a @ b))
    na, nb = math.sqrt(sqnorm(a)), math.sqrt(sqnorm(b))
    rhs = min(spectral_norm(a) * nb, na * spectral_norm(b))
    if is_skew(a) or is_skew(b):
        rhs = min(rhs, na * nb / SQRT2)
    return InequalityReport("submultiplicative", lhs, rhs, (a, b))


def submult_skew_bound(a, b) -> InequalityReport:
    """Only the skew variant: ||AB||_F <= ||A||_F ||B||_F / sqrt(2)."""
    a, b = as_matrix(a, "A"), as_matrix(b, "B")
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if not (is_skew(a) or is_skew(b)):
        raise StructureError("one factor must be skew-symmetric")
    lhs = math.sqrt(sqnorm(a @ b))
    return InequalityReport("submultiplicative_skew", lhs, math.sqrt(sqnorm(a) * sqnorm(b) / 2.0), (a, b))


def _tall(b2, name: str = "B2") -> np.ndarray:
    b2 = as_matrix(b2, name)
    m, p = b2.shape
    if m < p:
        raise DimensionError(f"{name} must be m x p with m >= p, got {b2.shape}")
    return b2


def trace_left(b1: np.ndarray, b2: np.ndarray) -> float:
    """tr(B1^T B2 B2^T B1)."""
    return sqnorm(b2.T @ b1)


def trace_right(b1: np.ndarray, b2: np.ndarray) -> float:
    """tr(B1 B2^T B2 B1^T)."""
    return sqnorm(b1 @ b2.T)


def trace_quad(b1: np.ndarray, b2: np.ndarray) -> float:
    """tr(B1^T B2 B1^T B2)."""
    c = b1.T @ b2
    return float(np.sum(c * c.T))


def trace_term_max(b2, variant: str = "left") -> tuple[float, np.ndarray]:
    """Maximize tr(B1^T B2 B2^T B1) ("left") or tr(B1 B2^T B2 B1^T) ("right")
    over unit-Frobenius B1. Both optima are sigma_1^2, attained at u1 v1^T."""
    b2 = _tall(b2)
    if variant not in ("left", "right"):
        raise DimensionError(f"variant must be 'left' or 'right', got {variant!r}")
    s = svd(b2)
    sigma1 = float(s.sigma[0]) if len(s.sigma) else 0.0
    argmax = np.outer(s.u[:, 0], s.v[:, 0])
    return sigma1 ** 2, argmax


@dataclass(frozen=True, eq=False)
class QuadExtrema:
    max: float
    min: float
    argmax: np.ndarray
    argmin: np.ndarray


def trace_quad_extrema(b2) -> QuadExtrema:
    """Extrema of tr(B1^T B2 B1^T B2) over unit-Frobenius B1.

    max = sigma_1^2 at U E11 V^T; min = -sigma_1 sigma_2 at
    U (E12 - E21)/sqrt(2) V^T. With p == 1 there is no second singular value:
    the minimum is 0 at U e2 V^T when m >= 2; for a 1 x 1 input both extrema
    equal sigma_1^2.
    """
    b2 = _tall(b2)
    m, p = b2.shape
    s = svd(b2)
    sig = np.concatenate([s.sigma, [0.0, 0.0]])
    tilde_plus = np.zeros((m, p))
    tilde_plus[0, 0] = 1.0
    tilde_minus = np.zeros((m, p))
    if p >= 2:
        tilde_minus[0, 1] = 1.0 / SQRT2
        tilde_minus[1, 0] = -1.0 / SQRT2
        vmin = -sig[0] * sig[1]
    elif m >= 2:
        tilde_minus[1, 0] = 1.0
        vmin = 0.0
    else:
        tilde_minus[0, 0] = 1.0
        vmin = sig[0] ** 2
    return QuadExtrema(
        max=float(sig[0] ** 2),
        min=float(vmin),
        argmax=s.u @ tilde_plus @ s.v.T,
        argmin=s.u @ tilde_minus @ s.v.T,
    )


@dataclass(frozen=True, eq=False)
class WuChenReport:
    classic: tuple[InequalityReport, InequalityReport]
    refined: tuple[InequalityReport, InequalityReport]

    def all_reports(self):
        return self.classic + self.refined


def _top2_sq(a: np.ndarray) -> float:
    s = np.concatenate([singular_values(a), [0.0, 0.0]])
    return float(s[0] ** 2 + s[1] ** 2)


def wu_chen_refined(b1, b2) -> WuChenReport:
    """Classic Wu-Chen bounds and their singular-value refinement.

    lhs_t = 1/2 ||B1^T B2 - B2^T B1||^2, lhs_n = 1/2 ||B1 B2^T - B2 B1^T||^2.
    Classic rhs ||B1||^2 ||B2||^2; refined rhs
    min(||B1||^2 (s1^2 + s2^2), ||B2||^2 (r1^2 + r2^2)) with s from B2, r from B1.
    """
    b1, b2 = as_matrix(b1, "B1"), as_matrix(b2, "B2")
    if b1.shape != b2.shape:
        raise DimensionError(f"shape mismatch: {b1.shape} vs {b2.shape}")
    n1, n2 = sqnorm(b1), sqnorm(b2)
    c = b1.T @ b2
    d = b1 @ b2.T
    lhs_t = 0.5 * sqnorm(c - c.T)
    lhs_n = 0.5 * sqnorm(d - d.T)
    classic_rhs = n1 * n2
    refined_rhs = min(n1 * _top2_sq(b2), n2 * _top2_sq(b1))
    w = (b1, b2)
    return WuChenReport(
        classic=(InequalityReport("wu_chen_BtB", lhs_t, classic_rhs, w),
                 InequalityReport("wu_chen_BBt", lhs_n, classic_rhs, w)),
        refined=(InequalityReport("refined_BtB", lhs_t, refined_rhs, w),
                 InequalityReport("refined_BBt", lhs_n, refined_rhs, w)),
    )


def skew_commutator_constant(p: int) -> float:
    if p >= 4:
        return 1.0
    if p == 3:
        return 0.5
    return 0.0


def skew_commutator_bound(a1, a2) -> InequalityReport:
    """||[A1,A2]||_F^2 <= c_p ||A1||_F^2 ||A2||_F^2, c_p = 1, 1/2, 0 for p >= 4, 3, <= 2."""
    a1, a2 = check_skew(a1, "A1"), check_skew(a2, "A2")
    if a1.shape != a2.shape:
        raise DimensionError(f"shape mismatch: {a1.shape} vs {a2.shape}")
    p = a1.shape[0]
    lhs = sqnorm(a1 @ a2 - a2 @ a1)
    rhs = skew_commutator_constant(p) * sqnorm(a1) * sqnorm(a2)
    return InequalityReport(f"skew_commutator_p{p}", lhs, rhs, (a1, a2))


def _check_range(name: str, value: float, hi: float) -> float:
    value = float(value)
    if not (0.0 <= value <= hi):
        raise DomainError(f"{name}={value!r} outside [0, {hi}]")
    return value


def _sqrt_clip(v):
    # rounding at the right endpoint (e.g. sqrt(2)**2/2 > 1) must not produce NaN
    return np.sqrt(np.maximum(v, 0.0))


def _canonical_bound(a1, a2):
    return (1.25 + (5.0 / 16.0) * a1**2 * a2**2 - 0.5 * (a1**2 + a2**2)
            + (1.0 + SQRT2) / 4.0 * a1 * a2
            * _sqrt_clip(1.0 - 0.5 * a1**2) * _sqrt_clip(1.0 - 0.5 * a2**2))


def canonical_bound_fn(alpha1: float, alpha2: float) -> float:
    """Upper bound on the canonical Stiefel curvature in terms of the A-block
    norms alpha_i = ||A_i||_F in [0, sqrt(2)]."""
    a1 = _check_range("alpha1", alpha1, SQRT2)
    a2 = _check_range("alpha2", alpha2, SQRT2)
    return float(_canonical_bound(a1, a2))


def canonical_bound_diagonal(alpha):
    """Restriction alpha1 = alpha2 = alpha, a quadratic in alpha^2."""
    alpha = np.asarray(alpha, dtype=float)
    return 1.25 + (3.0 - 2.0 * SQRT2) / 16.0 * alpha**4 - (3.0 - SQRT2) / 4.0 * alpha**2


def verify_bound_fn_max(grid_n: int = 400) -> tuple[tuple[float, float], float]:
    """Grid maximum of :func:`canonical_bound_fn` over [0, sqrt(2)]^2."""
    if grid_n < 100:
        raise DomainError(f"grid_n must be >= 100, got {grid_n}")
    g = np.linspace(0.0, SQRT2, grid_n)
    a1, a2 = np.meshgrid(g, g, indexing="ij")
    vals = _canonical_bound(a1, a2)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    return (float(g[i]), float(g[j])), float(vals[i, j])


def _euclid_lower(b1, b2):
    return -0.5 * (b1 * b2 * (SQRT2 * _sqrt_clip(1 - b1**2) * _sqrt_clip(1 - b2**2) + b1 * b2))


def _euclid_upper(b1, b2):
    s1, s2 = _sqrt_clip(1 - b1**2), _sqrt_clip(1 - b2**2)
    return (0.5 * (1 - b2**2) * b1**2 + 0.5 * (1 - b1**2) * b2**2 + s1 * s2 * b1 * b2
            + b1**2 * b2**2 + 0.5 * (1 - b1**2) * (1 - b2**2))


def euclidean_bound_fns(beta1: float, beta2: float) -> tuple[float, float]:
    """(lower, upper) bounds on the Euclidean Stiefel curvature in terms of the
    B-block norms beta_i = ||B_i||_F in [0, 1]."""
    b1 = _check_range("beta1", beta1, 1.0)
    b2 = _check_range("beta2", beta2, 1.0)
    return float(_euclid_lower(b1, b2)), float(_euclid_upper(b1, b2))


def euclidean_bound_grid(grid_n: int = 400) -> dict:
    """Grid extrema of the Euclidean lower/upper bound functions on [0,1]^2."""
    g = np.linspace(0.0, 1.0, grid_n)
    b1, b2 = np.meshgrid(g, g, indexing="ij")
    lo, up = _euclid_lower(b1, b2), _euclid_upper(b1, b2)
    i = np.unravel_index(int(np.argmin(lo)), lo.shape)
    j = np.unravel_index(int(np.argmax(up)), up.shape)
    return {
        "lower_min": float(lo[i]), "lower_argmin": (float(g[i[0]]), float(g[i[1]])),
        "upper_max": float(up[j]), "upper_argmax": (float(g[j[0]]), float(g[j[1]])),
    }
