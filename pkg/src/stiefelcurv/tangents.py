"""Tangent vectors at the identity coset, metrics, projections and sampling.

All tangents live at the base point I (resp. the coset [I]); by homogeneity
this loses no generality for curvature.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .errors import DegenerateSectionError, DimensionError, NormalizationError, UsageError
from .kernel import as_matrix, check_skew

GRAM_TOL = 1e-12
DEGENERATE_TOL = 1e-10


class MetricKind(str, Enum):
    SO_CANONICAL = "so_canonical"
    STIEFEL_CANONICAL = "stiefel_canonical"
    STIEFEL_EUCLIDEAN = "stiefel_euclidean"
    GRASSMANN = "grassmann"


class Manifold(str, Enum):
    SO = "so"
    STIEFEL = "stiefel"
    GRASSMANN = "grassmann"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class _BlockTangent:
    """Linear-space arithmetic over the tuple returned by ``blocks``."""

    def blocks(self) -> tuple:
        raise NotImplementedError

    def _rebuild(self, blocks):
        raise NotImplementedError

    def _check_like(self, other):
        if type(other) is not type(self):
            raise UsageError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        for s, o in zip(self.blocks(), other.blocks()):
            if s.shape != o.shape:
                raise DimensionError(f"tangent dimension mismatch: {s.shape} vs {o.shape}")

    def __add__(self, other):
        self._check_like(other)
        return self._rebuild([s + o for s, o in zip(self.blocks(), other.blocks())])

    def __sub__(self, other):
        self._check_like(other)
        return self._rebuild([s - o for s, o in zip(self.blocks(), other.blocks())])

    def __mul__(self, c):
        c = float(c)
        return self._rebuild([c * s for s in self.blocks()])

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / float(c))

    def __neg__(self):
        return self * -1.0

    def allclose(self, other, atol: float = 1e-14) -> bool:
        return type(other) is type(self) and all(
            s.shape == o.shape and np.allclose(s, o, rtol=0.0, atol=atol)
            for s, o in zip(self.blocks(), other.blocks())
        )


@dataclass(frozen=True, eq=False)
class SkewTangent(_BlockTangent):
    """Element of so(n) = T_I SO(n)."""

    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _frozen(check_skew(self.x, "x")))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def blocks(self):
        return (self.x,)

    def _rebuild(self, blocks):
        return SkewTangent(blocks[0])

    def embed(self) -> np.ndarray:
        return np.array(self.x)


@dataclass(frozen=True, eq=False)
class StiefelTangent(_BlockTangent):
    """Horizontal Stiefel tangent with blocks A (p x p skew) and B ((n-p) x p).

    ``embed`` gives the quotient picture [[A, -B^T], [B, 0]]; ``stacked`` the
    embedded picture (A; B) in R^{n x p}.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = check_skew(self.a, "A")
        b = np.asarray(self.b, dtype=float)
        if b.ndim == 1 and b.size == 0:
            b = b.reshape(0, a.shape[1])
        b = as_matrix(b, "B")
        if b.shape[1] != a.shape[0]:
            raise DimensionError(f"B must have {a.shape[0]} columns, got shape {b.shape}")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))

    @property
    def p(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.p + self.b.shape[0]

    def blocks(self):
        return (self.a, self.b)

    def _rebuild(self, blocks):
        return StiefelTangent(*blocks)

    def embed(self) -> np.ndarray:
        m = self.b.shape[0]
        return np.block([[self.a, -self.b.T], [self.b, np.zeros((m, m))]])

    def stacked(self) -> np.ndarray:
        return np.vstack([self.a, self.b])


@dataclass(frozen=True, eq=False)
class GrassmannTangent(_BlockTangent):
    """Horizontal Grassmann tangent with block B ((n-p) x p)."""

    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "b", _frozen(as_matrix(self.b, "B")))

    @property
    def p(self) -> int:
        return self.b.shape[1]

    @property
    def n(self) -> int:
        return self.p + self.b.shape[0]

    def blocks(self):
        return (self.b,)

    def _rebuild(self, blocks):
        return GrassmannTangent(blocks[0])

    def embed(self) -> np.ndarray:
        m, p = self.b.shape
        return np.block([[np.zeros((p, p)), -self.b.T], [self.b, np.zeros((m, m))]])

    def as_stiefel(self) -> StiefelTangent:
        return StiefelTangent(np.zeros((self.p, self.p)), self.b)


Tangent = Union[SkewTangent, StiefelTangent, GrassmannTangent]

TANGENT_TYPE = {
    MetricKind.SO_CANONICAL: SkewTangent,
    MetricKind.STIEFEL_CANONICAL: StiefelTangent,
    MetricKind.STIEFEL_EUCLIDEAN: StiefelTangent,
    MetricKind.GRASSMANN: GrassmannTangent,
}

METRIC_MANIFOLD = {
    MetricKind.SO_CANONICAL: Manifold.SO,
    MetricKind.STIEFEL_CANONICAL: Manifold.STIEFEL,
    MetricKind.STIEFEL_EUCLIDEAN: Manifold.STIEFEL,
    MetricKind.GRASSMANN: Manifold.GRASSMANN,
}


def resolve_metric(manifold, metric) -> MetricKind:
    """Map a (manifold, short metric name) pair such as ("stiefel", "euclidean")
    onto a :class:`MetricKind`. Full MetricKind values pass through after a
    compatibility check."""
    manifold = Manifold(manifold)
    try:
        kind = MetricKind(metric)
    except ValueError:
        table = {
            (Manifold.SO, "canonical"): MetricKind.SO_CANONICAL,
            (Manifold.STIEFEL, "canonical"): MetricKind.STIEFEL_CANONICAL,
            (Manifold.STIEFEL, "euclidean"): MetricKind.STIEFEL_EUCLIDEAN,
            (Manifold.GRASSMANN, "canonical"): MetricKind.GRASSMANN,
        }
        key = (manifold, str(metric))
        if key not in table:
            raise UsageError(f"metric {metric!r} is not available on {manifold.value}")
        return table[key]
    if METRIC_MANIFOLD[kind] is not manifold:
        raise UsageError(f"metric {kind.value} does not belong to manifold {manifold.value}")
    return kind


def metric_inner(metric, x: Tangent, y: Tangent) -> float:
    """Riemannian inner product of two tangents at the identity coset.

    The canonical family uses 1/2 tr(X^T Y) on the skew embedding, which on
    blocks is 1/2 tr(A1^T A2) + tr(B1^T B2) (Stiefel) or tr(B1^T B2)
    (Grassmann). The Euclidean Stiefel metric is tr(A1^T A2) + tr(B1^T B2).
    """
    metric = MetricKind(metric)
    expected = TANGENT_TYPE[metric]
    if not (isinstance(x, expected) and isinstance(y, expected)):
        raise UsageError(
            f"metric {metric.value} needs {expected.__name__} inputs, "
            f"got {type(x).__name__} and {type(y).__name__}"
        )
    x._check_like(y)
    if metric is MetricKind.SO_CANONICAL:
        return 0.5 * float(np.sum(x.x * y.x))
    if metric is MetricKind.GRASSMANN:
        return float(np.sum(x.b * y.b))
    wa = 0.5 if metric is MetricKind.STIEFEL_CANONICAL else 1.0
    return wa * float(np.sum(x.a * y.a)) + float(np.sum(x.b * y.b))


def metric_norm(metric, x: Tangent) -> float:
    return float(np.sqrt(max(metric_inner(metric, x, x), 0.0)))


def manifold_dimension(manifold, n: int, p: int | None = None) -> int:
    manifold = Manifold(manifold)
    if manifold is Manifold.SO:
        return n * (n - 1) // 2
    return (p * (p - 1) // 2 if manifold is Manifold.STIEFEL else 0) + (n - p) * p


def project_horizontal(manifold, x, p: int) -> Tangent:
    """Horizontal part of X in so(n) for Stiefel (drop C) or Grassmann (drop A, C)."""
    manifold = Manifold(manifold)
    xm = x.x if isinstance(x, SkewTangent) else check_skew(x, "x")
    n = xm.shape[0]
    if not 1 <= p <= n:
        raise UsageError(f"need 1 <= p <= n, got p={p}, n={n}")
    if manifold is Manifold.STIEFEL:
        return StiefelTangent(xm[:p, :p], xm[p:, :p])
    if manifold is Manifold.GRASSMANN:
        return GrassmannTangent(xm[p:, :p])
    raise UsageError("horizontal projection is defined for stiefel and grassmann only")


@dataclass(frozen=True, eq=False)
class OrthonormalPair:
    """Two tangents certified orthonormal in ``metric`` up to ``gram_residual``."""

    first: Tangent
    second: Tangent
    metric: MetricKind
    gram_residual: float

    @property
    def dims(self) -> tuple[int, int]:
        p = getattr(self.first, "p", self.first.n)
        return self.first.n, p


def gram_residual(metric, x: Tangent, y: Tangent) -> float:
    """max |G - I| for the 2x2 Gram matrix of (x, y)."""
    gxx = metric_inner(metric, x, x)
    gyy = metric_inner(metric, y, y)
    gxy = metric_inner(metric, x, y)
    return max(abs(gxx - 1.0), abs(gyy - 1.0), abs(gxy))


def certify_pair(metric, x: Tangent, y: Tangent, tol: float = GRAM_TOL) -> OrthonormalPair:
    """Wrap an already orthonormal pair, raising NormalizationError otherwise."""
    metric = MetricKind(metric)
    res = gram_residual(metric, x, y)
    if res > tol:
        raise NormalizationError(
            f"pair is not orthonormal in the {metric.value} metric (Gram residual {res:.3e})"
        )
    return OrthonormalPair(x, y, metric, res)


def orthonormalize_pair(metric, x: Tangent, y: Tangent) -> OrthonormalPair:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    metric = MetricKind(metric)
    nx = metric_norm(metric, x)
    ny = metric_norm(metric, y)
    if nx == 0.0 or ny == 0.0:
        raise DegenerateSectionError("zero tangent vector does not span a plane")
    xh = x / nx
    r = y - metric_inner(metric, xh, y) * xh
    nr = metric_norm(metric, r)
    if nr <= DEGENERATE_TOL * ny:
        raise DegenerateSectionError(
            f"tangents are parallel to relative tolerance {DEGENERATE_TOL:g}; "
            "sectional curvature is undefined"
        )
    r = r - metric_inner(metric, xh, r) * xh
    yh = r / metric_norm(metric, r)
    return certify_pair(metric, xh, yh)


def _random_skew(rng: np.random.Generator, n: int) -> np.ndarray:
    """Skew matrix with i.i.d. N(0,1) strict upper triangle (row-major draw order)."""
    s = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    s[iu] = rng.standard_normal(len(iu[0]))
    return s - s.T


def random_skew(rng: np.random.Generator, n: int) -> np.ndarray:
    return _random_skew(rng, n)


def _random_tangent(rng, manifold: Manifold, n: int, p: int) -> Tangent:
    if manifold is Manifold.SO:
        return SkewTangent(_random_skew(rng, n))
    if manifold is Manifold.STIEFEL:
        a = _random_skew(rng, p)
        return StiefelTangent(a, rng.standard_normal((n - p, p)))
    return GrassmannTangent(rng.standard_normal((n - p, p)))


def check_dims(manifold, n: int, p: int | None) -> tuple[int, int]:
    manifold = Manifold(manifold)
    if manifold is Manifold.SO:
        p = n if p is None else p
        if p != n:
            raise UsageError(f"SO(n) tangents need p == n, got n={n}, p={p}")
    if p is None or n < 1 or not 1 <= p <= n:
        raise UsageError(f"need 1 <= p <= n, got n={n}, p={p}")
    dim = manifold_dimension(manifold, n, p)
    if dim < 2:
        raise UsageError(
            f"{manifold.value}({n},{p}) has dimension {dim}; "
            "sectional curvature needs at least a 2-dimensional manifold"
        )
    return n, p


def random_tangent_pair(manifold, metric, n: int, p: int | None, seed: int) -> OrthonormalPair:
    """Seeded Gaussian tangent pair, orthonormalized in ``metric``.

    Uses numpy's PCG64 generator seeded with ``seed``; x is drawn fully before
    y, free entries in row-major order (A strict upper triangle, then B).
    """
    manifold = Manifold(manifold)
    kind = resolve_metric(manifold, metric)
    n, p = check_dims(manifold, n, p)
    rng = np.random.default_rng(seed)
    x = _random_tangent(rng, manifold, n, p)
    y = _random_tangent(rng, manifold, n, p)
    return orthonormalize_pair(kind, x, y)
