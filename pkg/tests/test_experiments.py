import numpy as np
import pytest

from stiefelcurv.errors import UsageError, VerificationError
from stiefelcurv.experiments import (
    ExperimentRecord, check_bounds, exp1_blocks, exp1_schedule, probe_conjecture,
    random_euclidean_pairs, run_exp1, run_exp2, run_exp3_mix, run_exp3_surface,
)


@pytest.fixture(scope="module")
def exp1():
    return run_exp1(), run_exp1(transpose_b1=True)


def _curve(records, key):
    return np.array([r.values[key] for r in records])


def test_exp1_schedule():
    steps = list(exp1_schedule(10, 50))
    assert len(steps) == 451
    assert steps[0][:3] == (0, 2, 0.0)
    assert steps[50][:3] == (50, 2, 1.0)
    assert steps[51][:3] == (51, 3, 0.02)
    assert np.array_equal(steps[-1][3], np.ones(10))


def test_exp1_blocks():
    b1, b2 = exp1_blocks(np.array([1.0, 0.5, 0.25, 0.125]))
    assert np.array_equal(b1, [[0, 1, 0, 0], [-0.5, 0, 0, 0], [0, 0, 0, 0.25], [0, 0, -0.125, 0]])
    assert np.array_equal(b2, np.diag([1.0, 0.5, 0.25, 0.125]))


@pytest.mark.parametrize("key,peak", [("k_st_canonical", 1.25), ("k_grassmann", 2.0), ("k_so", 0.5)])
def test_exp1_maxima_at_completed_first_block(exp1, key, peak):
    for records in exp1:
        v = _curve(records, key)
        assert abs(v.max() - peak) <= 1e-12
        assert np.flatnonzero(np.abs(v - peak) <= 1e-12).tolist() == [50]


def test_exp1_euclidean_extremes_at_start(exp1):
    plain, transposed = (_curve(r, "k_st_euclidean") for r in exp1)
    assert plain[0] == pytest.approx(-0.5, abs=1e-12) and plain.min() == plain[0]
    assert transposed[0] == pytest.approx(1.0, abs=1e-12) and transposed.max() == transposed[0]


def test_exp1_transpose_only_touches_euclidean(exp1):
    plain, transposed = exp1
    for key in ("k_so", "k_st_canonical", "k_grassmann"):
        assert np.array_equal(_curve(plain, key), _curve(transposed, key))


def test_exp1_invalid():
    with pytest.raises(UsageError):
        run_exp1(20, 9)
    with pytest.raises(UsageError):
        run_exp1(10, 4)


def test_exp2_reproducible_and_bounded():
    a = run_exp2([2, 3], trials=20, seed=11)
    b = run_exp2([2, 3], trials=20, seed=11)
    assert [r.values for r in a] == [r.values for r in b]
    assert a[0].seed == 11 and a[0].trials == 20
    assert a[0].meta["draws"].startswith("one pair")


def test_exp2_limits():
    with pytest.raises(UsageError):
        run_exp2([201])
    with pytest.raises(UsageError):
        run_exp2([1001], allow_large=True)
    with pytest.raises(UsageError):
        run_exp2([1])
    with pytest.raises(UsageError):
        run_exp2([])


def test_exp2_trend():
    recs = run_exp2([2, 4, 8, 16], trials=300, seed=0)
    v = [r.values["k_st_canonical"] for r in recs]
    assert all(x > y for x, y in zip(v, v[1:]))


def test_exp3_surface_small():
    recs = run_exp3_surface(11)
    assert len(recs) == 121
    first, last = recs[0], recs[-1]
    assert first.coords == {"i": 0, "j": 0, "u": 0.0, "v": 0.0}
    assert first.values["k_st_canonical"] == pytest.approx(1.25, abs=1e-12)
    for key in ("k_st_canonical", "k_st_euclidean"):
        assert first.values[key] >= last.values[key]


def test_exp3_mix_endpoints():
    recs = run_exp3_mix(20)
    assert len(recs) == 21
    assert recs[0].values["k_st_canonical"] == pytest.approx(1.25, abs=1e-12)
    # u = 1: only the SO(4) A-pair remains; 1/8 ||[A1,A2]||^2 / (2 * 2) = 0.5
    assert recs[-1].values["k_st_canonical"] == pytest.approx(0.5, abs=1e-12)
    # Euclidean: 1/4 ||[A1,A2]||^2 / (4 * 4) = 0.25
    assert recs[-1].values["k_st_euclidean"] == pytest.approx(0.25, abs=1e-12)
    assert recs[0].values["k_st_euclidean"] == pytest.approx(0.5, abs=1e-12)


def test_exp3_mix_euclidean_monotone():
    e = _curve(run_exp3_mix(100), "k_st_euclidean")
    assert np.all(np.diff(e) <= 1e-12)


def test_random_euclidean_pairs_orthonormal():
    a1, b1, a2, b2 = random_euclidean_pairs(5, 4, 100, 0)
    g12 = np.einsum("tij,tij->t", a1, a2) + np.einsum("tij,tij->t", b1, b2)
    assert np.abs(g12).max() <= 1e-14
    assert np.allclose(np.einsum("tij,tij->t", a2, a2) + np.einsum("tij,tij->t", b2, b2), 1.0)


def test_conjecture_probe():
    pr = probe_conjecture(4, 5000, 1)
    assert pr.lower_bound_holds and pr.upper_bound_holds
    assert pr.max_gram_residual <= 1e-12
    rec = pr.record()
    assert rec.meta["status"] == "empirical" and rec.coords == {"n": 4, "p": 3}
    with pytest.raises(UsageError):
        probe_conjecture(3, 10, 0)


def test_conjecture_chunking_is_deterministic():
    a = probe_conjecture(5, 3000, 2, chunk=1000)
    b = probe_conjecture(5, 3000, 2, chunk=1000)
    assert (a.max_seen, a.min_seen) == (b.max_seen, b.min_seen)


def test_check_bounds_raises():
    bad = ExperimentRecord("x", {"i": 0}, {"k_st_canonical": 1.3})
    with pytest.raises(VerificationError):
        check_bounds([bad])
    check_bounds([ExperimentRecord("x", {"i": 0}, {"k_grassmann": 2.0, "other": 99.0})])


def test_exp3_mix_canonical_dip_is_intrinsic():
    """The canonical curve falls below its u = 1 value in the interior; the
    quotient oracle on the full skew embedding agrees, so the dip is not an
    artefact of the block formula."""
    from oracles import quotient_curvature, stiefel_vertical_mask
    from stiefelcurv.extremizers import SO4_A1, SO4_A2
    from stiefelcurv.experiments import exp3_surface_blocks
    from stiefelcurv.tangents import MetricKind, StiefelTangent, orthonormalize_pair

    recs = run_exp3_mix(100)
    c = _curve(recs, "k_st_canonical")
    i = int(np.argmin(c))
    assert 0 < i < 100 and c[i] < c[-1] - 0.05
    u = recs[i].coords["u"]
    b1, b2 = exp3_surface_blocks(0.0, 0.0)
    pair = orthonormalize_pair(MetricKind.STIEFEL_CANONICAL,
                               StiefelTangent(u * SO4_A1, (1 - u) * b1),
                               StiefelTangent(u * SO4_A2, (1 - u) * b2))
    k = quotient_curvature(pair.first.embed(), pair.second.embed(), stiefel_vertical_mask(8, 4))
    assert k == pytest.approx(c[i], abs=1e-12)
