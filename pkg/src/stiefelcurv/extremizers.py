"""Curvature-extremal tangent sections, injectivity-radius bounds and a closed
geodesic on St(4,2)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .curvature import curvature_of
from .errors import DomainError, UsageError
from .kernel import expm
from .tangents import (
    GrassmannTangent,
    MetricKind,
    OrthonormalPair,
    SkewTangent,
    StiefelTangent,
    certify_pair,
    metric_inner,
    metric_norm,
    orthonormalize_pair,
)

ATTAIN_TOL = 1e-12
_R2 = 1.0 / math.sqrt(2.0)


class ExtremizerKind(str, Enum):
    GRASSMANN_MAX = "grassmann_max"
    STIEFEL_CANONICAL_MAX = "stiefel_canonical_max"
    STIEFEL_RANK1_MAX = "stiefel_rank1_max"
    STIEFEL_EUCLID_MAX = "stiefel_euclid_max"
    STIEFEL_EUCLID_MIN = "stiefel_euclid_min"
    SO4_COMMUTATOR_MAX = "so4_commutator_max"
    ST32_EUCLID_MAX = "st32_euclid_max"


EXPECTED_CURVATURE = {
    ExtremizerKind.GRASSMANN_MAX: 2.0,
    ExtremizerKind.STIEFEL_CANONICAL_MAX: 1.25,
    ExtremizerKind.STIEFEL_RANK1_MAX: 1.0,
    ExtremizerKind.STIEFEL_EUCLID_MAX: 1.0,
    ExtremizerKind.STIEFEL_EUCLID_MIN: -0.5,
    ExtremizerKind.SO4_COMMUTATOR_MAX: 0.5,
    ExtremizerKind.ST32_EUCLID_MAX: 0.5,
}

EXTREMIZER_METRIC = {
    ExtremizerKind.GRASSMANN_MAX: MetricKind.GRASSMANN,
    ExtremizerKind.STIEFEL_CANONICAL_MAX: MetricKind.STIEFEL_CANONICAL,
    ExtremizerKind.STIEFEL_RANK1_MAX: MetricKind.STIEFEL_CANONICAL,
    ExtremizerKind.STIEFEL_EUCLID_MAX: MetricKind.STIEFEL_EUCLIDEAN,
    ExtremizerKind.STIEFEL_EUCLID_MIN: MetricKind.STIEFEL_EUCLIDEAN,
    ExtremizerKind.SO4_COMMUTATOR_MAX: MetricKind.SO_CANONICAL,
    ExtremizerKind.ST32_EUCLID_MAX: MetricKind.STIEFEL_EUCLIDEAN,
}

# A-blocks of the SO(4) pair with maximal commutator, ||[A1, A2]||_F^2 = 16
SO4_A1 = np.array([[0.0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
SO4_A2 = np.array([[0.0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])

ROT_HALF = _R2 * np.array([[0.0, 1.0], [-1.0, 0.0]])
ID_HALF = _R2 * np.eye(2)
E11 = np.array([[1.0, 0.0], [0.0, 0.0]])
E12 = np.array([[0.0, 1.0], [0.0, 0.0]])
E21 = np.array([[0.0, 0.0], [1.0, 0.0]])

_REQUIREMENTS = {
    ExtremizerKind.GRASSMANN_MAX: ("p >= 2 and n - p >= 2", lambda n, p: p >= 2 and n - p >= 2),
    ExtremizerKind.STIEFEL_CANONICAL_MAX: ("p >= 2 and n - p >= 2", lambda n, p: p >= 2 and n - p >= 2),
    ExtremizerKind.STIEFEL_RANK1_MAX: ("p >= 1 and n - p >= 2", lambda n, p: p >= 1 and n - p >= 2),
    ExtremizerKind.STIEFEL_EUCLID_MAX: ("p >= 1 and n - p >= 2", lambda n, p: p >= 1 and n - p >= 2),
    ExtremizerKind.STIEFEL_EUCLID_MIN: ("p >= 2 and n - p >= 1", lambda n, p: p >= 2 and n - p >= 1),
    ExtremizerKind.SO4_COMMUTATOR_MAX: ("n >= 4", lambda n, p: n >= 4),
    ExtremizerKind.ST32_EUCLID_MAX: ("p >= 2 and n - p >= 1", lambda n, p: p >= 2 and n - p >= 1),
}

MINIMAL_DIMS = {
    ExtremizerKind.GRASSMANN_MAX: (4, 2),
    ExtremizerKind.STIEFEL_CANONICAL_MAX: (4, 2),
    ExtremizerKind.STIEFEL_RANK1_MAX: (3, 1),
    ExtremizerKind.STIEFEL_EUCLID_MAX: (3, 1),
    ExtremizerKind.STIEFEL_EUCLID_MIN: (3, 2),
    ExtremizerKind.SO4_COMMUTATOR_MAX: (4, 4),
    ExtremizerKind.ST32_EUCLID_MAX: (3, 2),
}


def _require(kind: ExtremizerKind, n: int, p: int) -> None:
    text, ok = _REQUIREMENTS[kind]
    if not ok(n, p):
        raise UsageError(f"{kind.value} needs {text}, got n={n}, p={p}")


def _pad(block: np.ndarray, rows: int, cols: int) -> np.ndarray:
    out = np.zeros((rows, cols))
    r, c = min(rows, block.shape[0]), min(cols, block.shape[1])
    out[:r, :c] = block[:r, :c]
    return out


def _stiefel(a: np.ndarray | None, b: np.ndarray, n: int, p: int) -> StiefelTangent:
    a = np.zeros((p, p)) if a is None else _pad(a, p, p)
    return StiefelTangent(a, _pad(b, n - p, p))


def _raw_pair(kind: ExtremizerKind, n: int, p: int):
    if kind is ExtremizerKind.GRASSMANN_MAX:
        return GrassmannTangent(_pad(ROT_HALF, n - p, p)), GrassmannTangent(_pad(ID_HALF, n - p, p))
    if kind is ExtremizerKind.STIEFEL_CANONICAL_MAX:
        return _stiefel(None, ROT_HALF, n, p), _stiefel(None, ID_HALF, n, p)
    if kind in (ExtremizerKind.STIEFEL_RANK1_MAX, ExtremizerKind.STIEFEL_EUCLID_MAX):
        # with p == 1 the padding keeps the first column: (0, 1)^T and (1, 0)^T
        return _stiefel(None, E21, n, p), _stiefel(None, E11, n, p)
    if kind is ExtremizerKind.STIEFEL_EUCLID_MIN:
        # with n - p == 1 the padding keeps the first row: (0, 1) and (1, 0)
        return _stiefel(None, E12, n, p), _stiefel(None, E11, n, p)
    if kind is ExtremizerKind.SO4_COMMUTATOR_MAX:
        return SkewTangent(_pad(SO4_A1, n, n)), SkewTangent(_pad(SO4_A2, n, n))
    a2 = np.array([[0.0, -_R2], [_R2, 0.0]])
    return _stiefel(None, np.array([[-1.0, 0.0]]), n, p), _stiefel(a2, np.zeros((1, 2)), n, p)


def build_extremizer(kind, n: int, p: int | None = None) -> OrthonormalPair:
    """Zero-padded extremal pair for ``kind`` in St(n,p), Gr(n,p) or SO(n).

    ``p`` is ignored for the SO(n) kind. Each tangent is rescaled to unit
    length in its metric; the displayed pairs are already orthogonal.
    """
    kind = ExtremizerKind(kind)
    if kind is ExtremizerKind.SO4_COMMUTATOR_MAX:
        p = n
    if p is None:
        raise UsageError(f"{kind.value} needs p")
    _require(kind, n, p)
    metric = EXTREMIZER_METRIC[kind]
    x, y = _raw_pair(kind, n, p)
    x = x / metric_norm(metric, x)
    y = y / metric_norm(metric, y)
    return certify_pair(metric, x, y)


@dataclass(frozen=True)
class Attainment:
    kind: ExtremizerKind
    expected: float
    computed: float

    @property
    def passed(self) -> bool:
        return abs(self.expected - self.computed) <= ATTAIN_TOL

    def __iter__(self):
        return iter((self.expected, self.computed, self.passed))


def verify_attainment(kind, n: int, p: int | None = None) -> Attainment:
    kind = ExtremizerKind(kind)
    pair = build_extremizer(kind, n, p)
    return Attainment(kind, EXPECTED_CURVATURE[kind], curvature_of(pair).value)


@dataclass(frozen=True)
class InjectivityBound:
    value: float
    curvature_bound: float
    geodesic_evaluated: bool


GLOBAL_MAX_CURVATURE = {
    MetricKind.STIEFEL_CANONICAL: 1.25,
    MetricKind.STIEFEL_EUCLIDEAN: 1.0,
}


def injectivity_lower_bound(metric, shortest_closed_geodesic_length: float | None = None) -> InjectivityBound:
    """min(pi / sqrt(C), l / 2) with C the global curvature maximum of the metric.

    Without ``l`` only the curvature branch is returned and flagged as such.
    """
    name = {"canonical": MetricKind.STIEFEL_CANONICAL, "euclidean": MetricKind.STIEFEL_EUCLIDEAN}
    try:
        kind = name[metric] if metric in name else MetricKind(metric)
    except ValueError:
        raise UsageError(f"unknown metric {metric!r}") from None
    if kind not in GLOBAL_MAX_CURVATURE:
        raise UsageError(f"injectivity bound is available for Stiefel metrics only, got {kind.value}")
    c = GLOBAL_MAX_CURVATURE[kind]
    bound = math.pi / math.sqrt(c)
    if shortest_closed_geodesic_length is None:
        return InjectivityBound(bound, bound, False)
    length = float(shortest_closed_geodesic_length)
    if not length > 0.0 or not math.isfinite(length):
        raise DomainError(f"closed geodesic length must be positive, got {length!r}")
    return InjectivityBound(min(bound, 0.5 * length), bound, True)


_ST42_GENERATOR = np.block([
    [np.zeros((2, 2)), -np.diag([2 * math.pi, 0.0])],
    [np.diag([2 * math.pi, 0.0]), np.zeros((2, 2))],
])


def closed_geodesic_st42(t: float) -> np.ndarray:
    """Closed geodesic of period 1 through [I2; 0] on St(4,2); A = 0, so the
    right factor exp(-tA) is the identity."""
    return expm(float(t) * _ST42_GENERATOR)[:, :2]


def geodesic_length(samples: int = 10_000) -> float:
    """Arc length of :func:`closed_geodesic_st42` on [0, 1]: central-difference
    speeds at ``samples + 1`` uniform nodes, integrated by the trapezoid rule."""
    if samples < 100:
        raise DomainError(f"samples must be >= 100, got {samples}")
    h = 1.0 / samples
    t = np.linspace(0.0, 1.0, samples + 1)
    speed = np.array([
        np.linalg.norm(closed_geodesic_st42(ti + h) - closed_geodesic_st42(ti - h)) / (2 * h)
        for ti in t
    ])
    return float(np.trapezoid(speed, t) if hasattr(np, "trapezoid") else np.trapz(speed, t))


@dataclass(frozen=True)
class MaximalityProbe:
    trials: int
    max_curvature: float
    max_moved_curvature: float
    moved: int
    violations: int


def _plane_change(metric, pair: OrthonormalPair, other: OrthonormalPair) -> float:
    """2 - ||P||_F^2 with P the Gram matrix between the two orthonormal bases;
    zero iff the planes coincide."""
    e, f = (pair.first, pair.second), (other.first, other.second)
    g = np.array([[metric_inner(metric, a, b) for b in f] for a in e])
    return float(2.0 - np.sum(g * g))


def probe_local_maximality(n: int = 4, p: int = 2, trials: int = 1000, eps: float = 1e-3,
                           seed: int = 0, moved_tol: float = 1e-6) -> MaximalityProbe:
    """Perturb the canonical Stiefel maximizer by Gaussian tangent noise of size
    ``eps`` and re-orthonormalize. ``violations`` counts perturbed planes with
    K > 1.25 + 1e-10, or K >= 1.25 despite moving more than ``moved_tol``."""
    metric = MetricKind.STIEFEL_CANONICAL
    base = build_extremizer(ExtremizerKind.STIEFEL_CANONICAL_MAX, n, p)
    rng = np.random.default_rng(seed)
    best = -math.inf
    best_moved = -math.inf
    moved = violations = 0
    for _ in range(trials):
        noisy = []
        for t in (base.first, base.second):
            a = rng.standard_normal((p, p))
            noise = StiefelTangent(a - a.T, rng.standard_normal((n - p, p)))
            noisy.append(t + (eps / metric_norm(metric, noise)) * noise)
        pert = orthonormalize_pair(metric, *noisy)
        k = curvature_of(pert).value
        best = max(best, k)
        change = _plane_change(metric, base, pert)
        if k > 1.25 + 1e-10:
            violations += 1
        if change > moved_tol:
            moved += 1
            best_moved = max(best_moved, k)
            if k >= 1.25:
                violations += 1
    return MaximalityProbe(trials, best, best_moved, moved, violations)
