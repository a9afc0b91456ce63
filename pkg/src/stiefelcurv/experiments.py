"""Curvature sweeps over structured and random tangent sections.

Every runner returns a list of :class:`ExperimentRecord` in sweep order and
checks each value against the global curvature interval of its manifold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curvature import curvature_of, k_stiefel_euclidean_batch
from .errors import UsageError, VerificationError
from .extremizers import SO4_A1, SO4_A2
from .tangents import (
    GrassmannTangent,
    MetricKind,
    SkewTangent,
    StiefelTangent,
    orthonormalize_pair,
    random_skew,
)

BOUND_TOL = 1e-12
EXP2_DEFAULT_MAX_P = 200
EXP2_HARD_MAX_P = 1000

# global curvature intervals; the SO(n) one is valid for every n >= 2
GLOBAL_BOUNDS = {
    "k_so": (0.0, 0.5),
    "k_st_canonical": (0.0, 1.25),
    "k_st_euclidean": (-0.5, 1.0),
    "k_grassmann": (0.0, 2.0),
}


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    coords: dict
    values: dict
    seed: int | None = None
    trials: int | None = None
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"experiment": self.experiment, "coords": dict(self.coords),
               "values": dict(self.values), "seed": self.seed, "trials": self.trials}
        if self.meta:
            out["meta"] = dict(self.meta)
        return out


def check_bounds(records, tol: float = BOUND_TOL) -> None:
    """Raise VerificationError if a recorded curvature leaves its global interval."""
    for r in records:
        for name, value in r.values.items():
            if name not in GLOBAL_BOUNDS:
                continue
            lo, hi = GLOBAL_BOUNDS[name]
            if not lo - tol <= value <= hi + tol:
                raise VerificationError(
                    f"{r.experiment} {r.coords}: {name}={value!r} outside [{lo}, {hi}]"
                )


def _k(metric: MetricKind, x, y) -> float:
    return curvature_of(orthonormalize_pair(metric, x, y)).value


def _four_curvatures(x: np.ndarray, y: np.ndarray, p: int, euclid_x: np.ndarray | None = None) -> dict:
    """K on SO(n), St(n,p) (both metrics) and Gr(n,p) for the pair (x, y) of
    n x n skew matrices and its horizontal projections. ``euclid_x`` replaces
    x for the Euclidean Stiefel curve only."""
    ex = x if euclid_x is None else euclid_x
    return {
        "k_so": _k(MetricKind.SO_CANONICAL, SkewTangent(x), SkewTangent(y)),
        "k_st_canonical": _k(MetricKind.STIEFEL_CANONICAL, StiefelTangent(x[:p, :p], x[p:, :p]),
                             StiefelTangent(y[:p, :p], y[p:, :p])),
        "k_st_euclidean": _k(MetricKind.STIEFEL_EUCLIDEAN, StiefelTangent(ex[:p, :p], ex[p:, :p]),
                             StiefelTangent(y[:p, :p], y[p:, :p])),
        "k_grassmann": _k(MetricKind.GRASSMANN, GrassmannTangent(x[p:, :p]), GrassmannTangent(y[p:, :p])),
    }


def _embed_b(b: np.ndarray) -> np.ndarray:
    m, p = b.shape
    return np.block([[np.zeros((p, p)), -b.T], [b, np.zeros((m, m))]])


def exp1_blocks(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """B1(u): block diagonal of [[0, u_{2k+1}], [-u_{2k+2}, 0]]; B2(u) = diag(u)
    with u_1 fixed to 1 by the caller. ``u`` has even length p."""
    p = len(u)
    b1 = np.zeros((p, p))
    for k in range(p // 2):
        b1[2 * k, 2 * k + 1] = u[2 * k]
        b1[2 * k + 1, 2 * k] = -u[2 * k + 1]
    return b1, np.diag(u)


def exp1_schedule(p: int, steps_per_parameter: int):
    """Yield (step, u_index, u_value, u) with u_2, ..., u_p ramped one after the
    other; u_index is 1-based."""
    u = np.zeros(p)
    u[0] = 1.0
    yield 0, 2, 0.0, u.copy()
    step = 0
    for idx in range(1, p):
        for j in range(1, steps_per_parameter + 1):
            step += 1
            u[idx] = j / steps_per_parameter
            yield step, idx + 1, float(u[idx]), u.copy()


def run_exp1(n: int = 20, p: int = 10, steps_per_parameter: int = 50,
             transpose_b1: bool = False) -> list[ExperimentRecord]:
    """Sweep the block-structured sections on SO(n), St(n,p) and Gr(n,p).

    With ``transpose_b1`` the Euclidean Stiefel curve uses B1(u)^T in place of
    B1(u); the other three curves are unaffected.
    """
    if p < 2 or p % 2 or n != 2 * p:
        raise UsageError(f"need even p >= 2 and n = 2p, got n={n}, p={p}")
    if steps_per_parameter < 1:
        raise UsageError("steps_per_parameter must be >= 1")
    records = []
    for step, idx, val, u in exp1_schedule(p, steps_per_parameter):
        b1, b2 = exp1_blocks(u)
        x, y = _embed_b(b1), _embed_b(b2)
        ex = _embed_b(b1.T) if transpose_b1 else None
        records.append(ExperimentRecord(
            "exp1", {"step": step, "u_index": idx, "u_value": val},
            _four_curvatures(x, y, p, ex),
            meta={"n": n, "p": p, "transpose_b1": transpose_b1},
        ))
    check_bounds(records)
    return records


def run_exp2(p_values, trials: int = 100, seed: int = 0, allow_large: bool = False) -> list[ExperimentRecord]:
    """Average curvature of random sections in Skew(2p).

    Trial t draws X then Y from ``numpy.random.default_rng(seed + t)``, each
    with i.i.d. standard normal strict upper triangle. The same draw feeds all
    four curves: SO(2p) on (X, Y), canonical St(2p,p) on the (A, B) blocks,
    Euclidean St(2p,p) on the stacked (A; B), Gr(2p,p) on B.
    """
    p_values = [int(p) for p in p_values]
    if not p_values:
        raise UsageError("p_values is empty")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    cap = EXP2_HARD_MAX_P if allow_large else EXP2_DEFAULT_MAX_P
    for p in p_values:
        if p < 2:
            raise UsageError(f"p must be >= 2, got {p}")
        if p > cap:
            hint = "" if allow_large else " (use --allow-large / allow_large=True for p up to 1000)"
            raise UsageError(f"p={p} exceeds the limit {cap}{hint}")
    records = []
    for p in p_values:
        sums = dict.fromkeys(GLOBAL_BOUNDS, 0.0)
        for t in range(trials):
            rng = np.random.default_rng(seed + t)
            x = random_skew(rng, 2 * p)
            y = random_skew(rng, 2 * p)
            for name, value in _four_curvatures(x, y, p).items():
                sums[name] += value
        records.append(ExperimentRecord(
            "exp2", {"p": p}, {k: v / trials for k, v in sums.items()}, seed, trials,
            meta={"distribution": "standard normal upper triangle",
                  "draws": "one pair per trial shared by all four curves"},
        ))
    check_bounds(records)
    return records


def exp3_surface_blocks(u: float, v: float) -> tuple[np.ndarray, np.ndarray]:
    b1 = np.array([[0.0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, u], [0, 0, -v, 0]])
    return b1, np.diag([1.0, 1.0, u, v])


def _stiefel_pair_values(x: StiefelTangent, y: StiefelTangent) -> dict:
    return {
        "k_st_canonical": _k(MetricKind.STIEFEL_CANONICAL, x, y),
        "k_st_euclidean": _k(MetricKind.STIEFEL_EUCLIDEAN, x, y),
    }


def run_exp3_surface(grid_n: int = 50) -> list[ExperimentRecord]:
    """Both Stiefel metrics on St(8,4) over the (u, v) grid, A-blocks zero.
    Records are ordered with u as the slow index."""
    if grid_n < 2:
        raise UsageError("grid_n must be >= 2")
    z = np.zeros((4, 4))
    grid = np.linspace(0.0, 1.0, grid_n)
    records = []
    for i, u in enumerate(grid):
        for j, v in enumerate(grid):
            b1, b2 = exp3_surface_blocks(u, v)
            records.append(ExperimentRecord(
                "exp3_surface", {"i": i, "j": j, "u": float(u), "v": float(v)},
                _stiefel_pair_values(StiefelTangent(z, b1), StiefelTangent(z, b2)),
            ))
    check_bounds(records)
    return records


def run_exp3_mix(steps: int = 100) -> list[ExperimentRecord]:
    """Shift weight from the B-blocks at (u, v) = (0, 0) to the SO(4) A-pair:
    X(u) = (u A1, (1-u) B1), Y(u) = (u A2, (1-u) B2), u on ``steps + 1`` nodes."""
    if steps < 1:
        raise UsageError("steps must be >= 1")
    b1, b2 = exp3_surface_blocks(0.0, 0.0)
    records = []
    for i, u in enumerate(np.linspace(0.0, 1.0, steps + 1)):
        x = StiefelTangent(u * SO4_A1, (1 - u) * b1)
        y = StiefelTangent(u * SO4_A2, (1 - u) * b2)
        records.append(ExperimentRecord("exp3_mix", {"i": i, "u": float(u)}, _stiefel_pair_values(x, y)))
    check_bounds(records)
    return records


def _batch_skew(rng: np.random.Generator, trials: int, p: int) -> np.ndarray:
    iu = np.triu_indices(p, 1)
    s = np.zeros((trials, p, p))
    s[:, iu[0], iu[1]] = rng.standard_normal((trials, len(iu[0])))
    return s - np.swapaxes(s, 1, 2)


def _binner(a1, b1, a2, b2):
    return np.einsum("tij,tij->t", a1, a2) + np.einsum("tij,tij->t", b1, b2)


def random_euclidean_pairs(n: int, p: int, trials: int, seed: int):
    """``trials`` Gaussian tangent pairs on St(n,p), Euclidean-orthonormalized
    (Gram-Schmidt, one re-orthogonalization pass). Returns (a1, b1, a2, b2)."""
    rng = np.random.default_rng(seed)
    a1, b1 = _batch_skew(rng, trials, p), rng.standard_normal((trials, n - p, p))
    a2, b2 = _batch_skew(rng, trials, p), rng.standard_normal((trials, n - p, p))
    s = 1.0 / np.sqrt(_binner(a1, b1, a1, b1))[:, None, None]
    a1, b1 = a1 * s, b1 * s
    for _ in range(2):
        c = _binner(a1, b1, a2, b2)[:, None, None]
        a2, b2 = a2 - c * a1, b2 - c * b1
    s = 1.0 / np.sqrt(_binner(a2, b2, a2, b2))[:, None, None]
    return a1, b1, a2 * s, b2 * s


@dataclass(frozen=True)
class ConjectureProbe:
    n: int
    trials: int
    seed: int
    max_seen: float
    min_seen: float
    max_gram_residual: float

    @property
    def lower_bound_holds(self) -> bool:
        return self.min_seen >= -0.5 - BOUND_TOL

    @property
    def upper_bound_holds(self) -> bool:
        return self.max_seen <= 2.0 / 3.0 + BOUND_TOL

    @property
    def within_half(self) -> bool:
        """Empirical support only; sampling cannot settle the conjectured bound."""
        return self.max_seen <= 0.5 + BOUND_TOL

    def record(self) -> ExperimentRecord:
        return ExperimentRecord(
            "conjecture", {"n": self.n, "p": self.n - 1},
            {"max_seen": self.max_seen, "min_seen": self.min_seen,
             "lower_bound_holds": self.lower_bound_holds,
             "upper_bound_holds": self.upper_bound_holds,
             "max_within_half": self.within_half},
            self.seed, self.trials, meta={"status": "empirical"},
        )


def probe_conjecture(n: int = 4, trials: int = 100_000, seed: int = 0, chunk: int = 20_000) -> ConjectureProbe:
    """Empirical extremes of the Euclidean curvature on St(n, n-1)."""
    if n < 4:
        raise UsageError(f"probe needs n >= 4, got n={n}")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    hi, lo, res = -math.inf, math.inf, 0.0
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        a1, b1, a2, b2 = random_euclidean_pairs(n, n - 1, m, seed + done)
        g = np.stack([_binner(a1, b1, a1, b1) - 1, _binner(a2, b2, a2, b2) - 1, _binner(a1, b1, a2, b2)])
        res = max(res, float(np.max(np.abs(g))))
        k = k_stiefel_euclidean_batch(a1, b1, a2, b2)
        hi, lo = max(hi, float(k.max())), min(lo, float(k.min()))
        done += m
    return ConjectureProbe(n, trials, seed, hi, lo, res)
