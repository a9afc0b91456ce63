import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    embed_grassmann, embed_stiefel, gauss_euclidean_stiefel, grassmann_vertical_mask,
    quotient_curvature, so_curvature, stiefel_vertical_mask,
)
from stiefelcurv.curvature import (
    curvature_of, k_grassmann, k_so, k_stiefel_canonical, k_stiefel_euclidean,
    k_stiefel_euclidean_batch, sectional_curvature,
)
from stiefelcurv.errors import DegenerateSectionError, NormalizationError, UsageError
from stiefelcurv.tangents import (
    GrassmannTangent, MetricKind, SkewTangent, StiefelTangent, random_tangent_pair,
)

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(3, 7))
def test_so_matches_oracle(seed, n):
    pair = random_tangent_pair("so", "canonical", n, None, seed)
    assert curvature_of(pair).value == pytest.approx(so_curvature(pair.first.x, pair.second.x), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([(3, 1), (3, 2), (4, 2), (5, 3), (7, 4), (6, 6)]))
def test_stiefel_canonical_matches_quotient_oracle(seed, dims):
    n, p = dims
    pair = random_tangent_pair("stiefel", "canonical", n, p, seed)
    x, y = pair.first.embed(), pair.second.embed()
    expected = quotient_curvature(x, y, stiefel_vertical_mask(n, p))
    assert curvature_of(pair).value == pytest.approx(expected, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([(3, 1), (4, 2), (5, 2), (7, 3)]))
def test_grassmann_matches_quotient_oracle(seed, dims):
    n, p = dims
    pair = random_tangent_pair("grassmann", "canonical", n, p, seed)
    x, y = embed_grassmann(pair.first.b), embed_grassmann(pair.second.b)
    report = curvature_of(pair)
    assert report.value == pytest.approx(quotient_curvature(x, y, grassmann_vertical_mask(n, p)), abs=1e-12)
    assert report.identities["trace_form"] == pytest.approx(report.value, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.sampled_from([(3, 1), (3, 2), (3, 3), (5, 2), (6, 4), (7, 6)]))
def test_stiefel_euclidean_matches_gauss_oracle(seed, dims):
    n, p = dims
    pair = random_tangent_pair("stiefel", "euclidean", n, p, seed)
    expected = gauss_euclidean_stiefel(pair.first.stacked(), pair.second.stacked())
    assert curvature_of(pair).value == pytest.approx(expected, abs=1e-12)


def test_report_terms_sum(rng):
    pair = random_tangent_pair("stiefel", "euclidean", 6, 3, 1)
    r = curvature_of(pair)
    assert r.value == sum(r.terms.values())
    assert set(r.terms) == {"BA", "half_BBt", "neg_half_BtB", "quarter_bracket"}
    d = r.to_dict()
    assert d["metric"] == "stiefel_euclidean" and d["dims"] == [6, 3]


@pytest.mark.parametrize("manifold,metric,n,p,value", [
    ("stiefel", "canonical", 3, 2, 0.25),
    ("stiefel", "canonical", 3, 3, 0.25),
    ("stiefel", "euclidean", 3, 3, 0.125),
    ("stiefel", "euclidean", 5, 1, 1.0),
    ("so", "canonical", 3, 3, 0.25),
    ("grassmann", "canonical", 3, 1, 1.0),
])
def test_constant_curvature_cases(manifold, metric, n, p, value):
    for seed in range(50):
        pair = random_tangent_pair(manifold, metric, n, p, seed)
        assert curvature_of(pair).value == pytest.approx(value, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seeds, st.floats(0.0, 2 * np.pi), st.floats(0.1, 10.0), st.floats(-5.0, 5.0))
def test_plane_not_basis(seed, theta, scale, shear):
    """K depends only on span(x, y)."""
    pair = random_tangent_pair("stiefel", "canonical", 6, 3, seed)
    x, y = pair.first, pair.second
    c, s = np.cos(theta), np.sin(theta)
    u = scale * (c * x + s * y)
    v = -s * x + c * y + shear * u
    k0 = curvature_of(pair).value
    k1 = sectional_curvature("stiefel", "canonical", u, v).value
    assert k1 == pytest.approx(k0, abs=1e-10)


def test_unnormalized_input_rejected(rng):
    a = rng.standard_normal((3, 2))
    with pytest.raises(NormalizationError):
        k_grassmann(a, rng.standard_normal((3, 2)))
    x = SkewTangent(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    with pytest.raises(NormalizationError):
        k_so(x, x)


def test_so2_is_rejected_by_sectional():
    x = np.array([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(DegenerateSectionError):
        sectional_curvature("so", "canonical", x, 2 * x)


def test_grassmann_coercion(rng):
    b1, b2 = rng.standard_normal((3, 2)), rng.standard_normal((3, 2))
    z = np.zeros((2, 2))
    k_plain = sectional_curvature("grassmann", "canonical", b1, b2).value
    k_st = sectional_curvature("grassmann", "canonical", StiefelTangent(z, b1), StiefelTangent(z, b2)).value
    assert k_plain == k_st
    with pytest.raises(UsageError):
        sectional_curvature("grassmann", "canonical",
                            StiefelTangent(np.array([[0, 1.0], [-1, 0]]), b1), StiefelTangent(z, b2))


def test_stiefel_block_functions_accept_grassmann_tangents():
    b1 = np.array([[0.0, 1.0], [-1.0, 0.0]]) / 2
    b2 = np.eye(2) / 2
    # these B-blocks have Frobenius norm 1/sqrt(2); rescale to unit length
    x, y = GrassmannTangent(np.sqrt(2) * b1), GrassmannTangent(np.sqrt(2) * b2)
    assert k_stiefel_canonical(x, y).value == pytest.approx(1.25, abs=1e-12)
    assert k_stiefel_euclidean(x, y).value == pytest.approx(0.5, abs=1e-12)


def test_batch_matches_scalar():
    for seed in range(20):
        pair = random_tangent_pair("stiefel", "euclidean", 5, 3, seed)
        a1, b1, a2, b2 = (m[None] for m in (pair.first.a, pair.first.b, pair.second.a, pair.second.b))
        assert k_stiefel_euclidean_batch(a1, b1, a2, b2)[0] == pytest.approx(curvature_of(pair).value, abs=1e-13)


def test_block_formula_vs_embedding_literal():
    """A hand-checkable case: the rank-2 canonical maximizer in St(4,2)."""
    r = np.array([[0.0, 1.0], [-1.0, 0.0]]) / np.sqrt(2)
    i = np.eye(2) / np.sqrt(2)
    z = np.zeros((2, 2))
    x, y = StiefelTangent(z, r), StiefelTangent(z, i)
    rep = k_stiefel_canonical(x, y)
    assert rep.terms["half_BBt"] == pytest.approx(1.0)
    assert rep.terms["quarter_BA"] == 0.0
    assert rep.terms["eighth_bracket"] == pytest.approx(0.25)
    xe, ye = embed_stiefel(z, r), embed_stiefel(z, i)
    assert quotient_curvature(xe, ye, stiefel_vertical_mask(4, 2)) == pytest.approx(1.25)
    assert rep.metric is MetricKind.STIEFEL_CANONICAL
