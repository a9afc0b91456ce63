"""Sectional curvature formulas for SO(n), Gr(n,p) and St(n,p).

Every ``k_*`` function expects an orthonormal pair in its metric (checked to
``NORMALIZATION_TOL``) and returns the curvature split into its summands.
:func:`sectional_curvature` accepts any spanning pair and orthonormalizes it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NormalizationError, UsageError
from .kernel import sqnorm
from .tangents import (
    GrassmannTangent,
    Manifold,
    MetricKind,
    OrthonormalPair,
    SkewTangent,
    StiefelTangent,
    gram_residual,
    orthonormalize_pair,
    resolve_metric,
)

NORMALIZATION_TOL = 1e-10


@dataclass(frozen=True)
class CurvatureReport:
    """Curvature value with its named summands.

    ``identities`` holds alternative evaluations (e.g. the trace form of the
    Grassmann curvature) that are not part of the sum. ``certificate`` is the
    Gram residual of the input pair.
    """

    value: float
    terms: dict
    metric: MetricKind
    dims: tuple
    certificate: float
    identities: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "terms": dict(self.terms),
            "metric": self.metric.value,
            "dims": list(self.dims),
            "certificate": self.certificate,
            "identities": dict(self.identities),
        }


def _report(terms: dict, metric: MetricKind, dims, cert: float, identities=None) -> CurvatureReport:
    return CurvatureReport(float(sum(terms.values())), terms, metric, tuple(dims), cert, identities or {})


def _certify(metric: MetricKind, x, y) -> float:
    res = gram_residual(metric, x, y)
    if res > NORMALIZATION_TOL:
        raise NormalizationError(
            f"inputs are not orthonormal in the {metric.value} metric (Gram residual {res:.3e})"
        )
    return res


def _as_skew(x) -> SkewTangent:
    return x if isinstance(x, SkewTangent) else SkewTangent(x)


def _as_grassmann(x) -> GrassmannTangent:
    if isinstance(x, GrassmannTangent):
        return x
    if isinstance(x, (StiefelTangent, SkewTangent)):
        raise UsageError(f"expected a Grassmann tangent or B-block, got {type(x).__name__}")
    return GrassmannTangent(x)


def _as_stiefel(x) -> StiefelTangent:
    if isinstance(x, StiefelTangent):
        return x
    if isinstance(x, GrassmannTangent):
        return x.as_stiefel()
    raise UsageError(f"expected a StiefelTangent, got {type(x).__name__}")


def k_so(x, y) -> CurvatureReport:
    """Bi-invariant curvature on SO(n) for a pair orthonormal in 1/2 tr(X^T Y).

    K = 1/4 ||[X,Y]||_I^2 = 1/8 ||[X,Y]||_F^2, i.e. 1/2 ||[X',Y']||_F^2 for
    the Frobenius-orthonormal rescaling X' = X / sqrt(2).
    """
    x, y = _as_skew(x), _as_skew(y)
    if x.n < 2:
        raise UsageError("SO(n) curvature needs n >= 2")
    if x.n != y.n:
        raise DimensionError(f"size mismatch: {x.n} vs {y.n}")
    cert = _certify(MetricKind.SO_CANONICAL, x, y)
    c = x.x @ y.x - y.x @ x.x
    return _report({"eighth_bracket": 0.125 * sqnorm(c)}, MetricKind.SO_CANONICAL, (x.n, x.n), cert)


def k_grassmann(b1, b2) -> CurvatureReport:
    """K = 1/2 ||B1^T B2 - B2^T B1||^2 + 1/2 ||B1 B2^T - B2 B1^T||^2 for
    Frobenius-orthonormal B-blocks."""
    x, y = _as_grassmann(b1), _as_grassmann(b2)
    if x.b.shape != y.b.shape:
        raise DimensionError(f"B-block shape mismatch: {x.b.shape} vs {y.b.shape}")
    cert = _certify(MetricKind.GRASSMANN, x, y)
    B1, B2 = x.b, y.b
    B1tB2 = B1.T @ B2
    B1B2t = B1 @ B2.T
    terms = {
        "half_BtB": 0.5 * sqnorm(B1tB2 - B1tB2.T),
        "half_BBt": 0.5 * sqnorm(B1B2t - B1B2t.T),
    }
    t1 = float(np.trace(B1tB2 @ B1tB2.T))
    t2 = float(np.trace(B1B2t @ B1B2t.T))
    t3 = -2.0 * float(np.trace(B1tB2 @ B1tB2))
    identities = {
        "trace_BtBBtB": t1,
        "trace_BBtBBt": t2,
        "minus_two_trace_BtBBtB_cross": t3,
        "trace_form": t1 + t2 + t3,
    }
    return _report(terms, MetricKind.GRASSMANN, (x.n, x.p), cert, identities)


def _stiefel_blocks(x, y):
    x, y = _as_stiefel(x), _as_stiefel(y)
    if x.a.shape != y.a.shape or x.b.shape != y.b.shape:
        raise DimensionError("Stiefel tangents have different dimensions")
    return x, y


def k_stiefel_canonical(x, y) -> CurvatureReport:
    """Canonical-metric Stiefel curvature.

    K = 1/2 ||B2 B1^T - B1 B2^T||^2 + 1/4 ||B1 A2 - B2 A1||^2
        + 1/8 ||[A1, A2] - (B1^T B2 - B2^T B1)||^2
    """
    x, y = _stiefel_blocks(x, y)
    cert = _certify(MetricKind.STIEFEL_CANONICAL, x, y)
    A1, B1, A2, B2 = x.a, x.b, y.a, y.b
    B1tB2 = B1.T @ B2
    terms = {
        "half_BBt": 0.5 * sqnorm(B2 @ B1.T - B1 @ B2.T),
        "quarter_BA": 0.25 * sqnorm(B1 @ A2 - B2 @ A1),
        "eighth_bracket": 0.125 * sqnorm(A1 @ A2 - A2 @ A1 - (B1tB2 - B1tB2.T)),
    }
    return _report(terms, MetricKind.STIEFEL_CANONICAL, (x.n, x.p), cert)


def k_stiefel_euclidean(x, y) -> CurvatureReport:
    """Euclidean-metric Stiefel curvature.

    K = ||B1 A2 - B2 A1||^2 + 1/2 ||B1 B2^T - B2 B1^T||^2
        - 1/2 ||B1^T B2 - B2^T B1||^2 + 1/4 ||[A1, A2] - (B2^T B1 - B1^T B2)||^2
    """
    x, y = _stiefel_blocks(x, y)
    cert = _certify(MetricKind.STIEFEL_EUCLIDEAN, x, y)
    A1, B1, A2, B2 = x.a, x.b, y.a, y.b
    B1tB2 = B1.T @ B2
    B1B2t = B1 @ B2.T
    terms = {
        "BA": sqnorm(B1 @ A2 - B2 @ A1),
        "half_BBt": 0.5 * sqnorm(B1B2t - B1B2t.T),
        "neg_half_BtB": -0.5 * sqnorm(B1tB2 - B1tB2.T),
        "quarter_bracket": 0.25 * sqnorm(A1 @ A2 - A2 @ A1 - (B1tB2.T - B1tB2)),
    }
    return _report(terms, MetricKind.STIEFEL_EUCLIDEAN, (x.n, x.p), cert)


_DISPATCH = {
    MetricKind.SO_CANONICAL: k_so,
    MetricKind.GRASSMANN: k_grassmann,
    MetricKind.STIEFEL_CANONICAL: k_stiefel_canonical,
    MetricKind.STIEFEL_EUCLIDEAN: k_stiefel_euclidean,
}


def curvature_of(pair: OrthonormalPair) -> CurvatureReport:
    return _DISPATCH[pair.metric](pair.first, pair.second)


def _coerce(manifold: Manifold, x):
    if manifold is Manifold.SO:
        return _as_skew(x)
    if manifold is Manifold.STIEFEL:
        return _as_stiefel(x)
    if isinstance(x, StiefelTangent):
        if np.any(x.a != 0.0):
            raise UsageError("Grassmann tangents have no A-block; got a nonzero one")
        return GrassmannTangent(x.b)
    return _as_grassmann(x)


def sectional_curvature(manifold, metric, x, y) -> CurvatureReport:
    """Curvature of the plane spanned by (x, y), which need not be orthonormal."""
    manifold = Manifold(manifold)
    kind = resolve_metric(manifold, metric)
    x, y = _coerce(manifold, x), _coerce(manifold, y)
    return curvature_of(orthonormalize_pair(kind, x, y))


def _bsq(x: np.ndarray) -> np.ndarray:
    return np.einsum("tij,tij->t", x, x)


def k_stiefel_euclidean_batch(a1, b1, a2, b2) -> np.ndarray:
    """Vectorized :func:`k_stiefel_euclidean` over a leading batch axis.

    Inputs are stacks of blocks (T x p x p and T x (n-p) x p) that the caller
    guarantees to be Euclidean-orthonormal; no certificate is computed.
    """
    tr = np.swapaxes
    b1tb2 = tr(b1, 1, 2) @ b2
    b1b2t = b1 @ tr(b2, 1, 2)
    bracket = a1 @ a2 - a2 @ a1 - (tr(b1tb2, 1, 2) - b1tb2)
    return (_bsq(b1 @ a2 - b2 @ a1) + 0.5 * _bsq(b1b2t - tr(b1b2t, 1, 2))
            - 0.5 * _bsq(b1tb2 - tr(b1tb2, 1, 2)) + 0.25 * _bsq(bracket))
