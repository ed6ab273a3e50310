import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from polytope_eval import (
    Aspect,
    AspectFilter,
    InstancePoint,
    PairedSeries,
    instance_correlation,
    inter_annotator_agreement,
    pearson,
    system_correlation,
)
from polytope_eval.errors import (
    DegenerateSeriesError,
    EmptyFilterError,
    InsufficientOverlapError,
    TooFewPointsError,
)

# (ROUGE-1, ROUGE-2, ROUGE-L, quality score) per system, from the ten-system
# evaluation table; the basis of the system-level correlation reproduction.
TEN_SYSTEM_TABLE = {
    "Lead-3": (41.63, 19.62, 35.55, 81.96),
    "TextRank": (33.81, 13.71, 26.47, 77.07),
    "SummaRuNNer": (41.11, 20.15, 36.40, 85.43),
    "BertSumExt": (42.69, 21.19, 35.95, 86.03),
    "S2S": (31.87, 13.07, 29.48, 36.61),
    "PG": (38.89, 19.64, 35.92, 72.55),
    "PG-Coverage": (39.90, 19.00, 35.01, 77.80),
    "Bottom-Up": (41.19, 19.98, 36.52, 67.99),
    "BertSumExtAbs": (41.87, 21.02, 34.16, 81.52),
    "BART": (43.28, 21.28, 38.13, 89.37),
}


def test_exact_positive_linearity():
    assert pearson([(1, 2), (2, 4), (3, 6)]) == pytest.approx(1.0)


def test_exact_negative_linearity():
    assert pearson([(1, 3), (2, 2), (3, 1)]) == pytest.approx(-1.0)


def test_hand_derived_point_eight():
    # cov = 4, var_x = var_y = 5 -> r = 4/5
    assert pearson([(1, 1), (2, 3), (3, 2), (4, 4)]) == pytest.approx(0.8)


def test_matches_scipy_on_random_series():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(3, 40)
        xs = [rng.uniform(-10, 10) for _ in range(n)]
        ys = [rng.uniform(-10, 10) for _ in range(n)]
        expected = scipy_stats.pearsonr(xs, ys).statistic
        assert pearson(list(zip(xs, ys))) == pytest.approx(expected, abs=1e-12)


def test_too_few_points():
    with pytest.raises(TooFewPointsError):
        pearson([(1.0, 2.0)])


def test_degenerate_series():
    with pytest.raises(DegenerateSeriesError):
        pearson([(1, 1), (1, 2), (1, 3)])
    with pytest.raises(DegenerateSeriesError):
        pearson([(1, 5), (2, 5), (3, 5)])


def test_nan_rejected():
    with pytest.raises(ValueError):
        pearson([(1, float("nan")), (2, 3)])


def test_symmetry_and_affine_invariance():
    points = [(1.0, 4.0), (2.0, 1.0), (3.0, 5.0), (4.0, 2.0)]
    swapped = [(y, x) for x, y in points]
    assert pearson(points) == pytest.approx(pearson(swapped))
    scaled = [(3 * x + 7, y) for x, y in points]
    assert pearson(scaled) == pytest.approx(pearson(points))
    flipped = [(-2 * x, y) for x, y in points]
    assert pearson(flipped) == pytest.approx(-pearson(points))


@given(
    st.lists(
        st.tuples(
            st.floats(-100, 100, allow_nan=False),
            st.floats(-100, 100, allow_nan=False),
        ),
        min_size=2,
        max_size=30,
    )
)
@settings(max_examples=300, deadline=None)
def test_r_bounded(points):
    try:
        r = pearson(points)
    except DegenerateSeriesError:
        return
    assert -1.0 <= r <= 1.0


def test_system_correlation_reproduces_published_row():
    rows = list(TEN_SYSTEM_TABLE.values())
    r1 = system_correlation([(r[0], r[3]) for r in rows], "rouge-1")
    r2 = system_correlation([(r[1], r[3]) for r in rows], "rouge-2")
    rl = system_correlation([(r[2], r[3]) for r in rows], "rouge-l")
    assert r1 == pytest.approx(0.78, abs=0.02)
    assert r2 == pytest.approx(0.73, abs=0.02)
    assert rl == pytest.approx(0.52, abs=0.03)


def test_two_systems_always_collinear():
    assert abs(system_correlation([(1.0, 5.0), (2.0, 9.0)])) == pytest.approx(1.0)


def test_instance_correlation_identity():
    points = [InstancePoint(v, v, frozenset()) for v in (1.0, 2.0, 5.0)]
    assert instance_correlation(points) == pytest.approx(1.0)


def test_instance_correlation_affine():
    points = [InstancePoint(0.5 * s + 3, s, frozenset()) for s in (10.0, 40.0, 90.0)]
    assert instance_correlation(points) == pytest.approx(1.0)


def test_aspect_filters():
    acc = frozenset({Aspect.ACCURACY})
    flu = frozenset({Aspect.FLUENCY})
    both = frozenset({Aspect.ACCURACY, Aspect.FLUENCY})
    points = [
        InstancePoint(1.0, 80.0, acc),
        InstancePoint(2.0, 85.0, acc),
        InstancePoint(3.0, 90.0, flu),
        InstancePoint(4.0, 95.0, both),
        InstancePoint(5.0, 100.0, frozenset()),
    ]
    assert instance_correlation(points, AspectFilter.ACCURACY_ONLY) == pytest.approx(1.0)
    with pytest.raises(TooFewPointsError):
        instance_correlation(points, AspectFilter.FLUENCY_ONLY)


def test_empty_filter():
    points = [InstancePoint(1.0, 2.0, frozenset({Aspect.FLUENCY}))]
    with pytest.raises(EmptyFilterError):
        instance_correlation(points, AspectFilter.ACCURACY_ONLY)


def test_zero_error_instances_excluded_from_aspect_filters():
    points = [InstancePoint(1.0, 100.0, frozenset())] * 3
    with pytest.raises(EmptyFilterError):
        instance_correlation(points, AspectFilter.ACCURACY_ONLY)


def test_agreement_identical_annotators():
    scores = {
        "a": {"d1": 100.0, "d2": 90.0, "d3": 80.0},
        "b": {"d1": 100.0, "d2": 90.0, "d3": 80.0},
    }
    assert inter_annotator_agreement(scores) == pytest.approx(1.0)


def test_agreement_three_annotators_mean_of_pairs():
    scores = {
        "a": {"d1": 100.0, "d2": 90.0, "d3": 80.0},
        "b": {"d1": 98.0, "d2": 88.0, "d3": 78.0},
        "c": {"d1": 50.0, "d2": 45.0, "d3": 40.0},
    }
    assert inter_annotator_agreement(scores) == pytest.approx(1.0)


def test_agreement_decreasing_but_positively_correlated():
    scores = {
        "a": {"d1": 100.0, "d2": 90.0, "d3": 80.0},
        "b": {"d1": 95.0, "d2": 90.0, "d3": 85.0},
    }
    assert inter_annotator_agreement(scores) == pytest.approx(1.0)


def test_agreement_mixed_pairwise_values():
    scores = {
        "a": {"d1": 1.0, "d2": 2.0, "d3": 3.0, "d4": 4.0},
        "b": {"d1": 1.0, "d2": 3.0, "d3": 2.0, "d4": 4.0},
    }
    assert inter_annotator_agreement(scores) == pytest.approx(0.8)


def test_agreement_requires_overlap():
    with pytest.raises(InsufficientOverlapError):
        inter_annotator_agreement({"a": {"d1": 1.0}})
    with pytest.raises(InsufficientOverlapError):
        inter_annotator_agreement({"a": {"d1": 1.0, "d2": 2.0}, "b": {"d3": 1.0}})


def test_agreement_uses_common_documents_only():
    scores = {
        "a": {"d1": 1.0, "d2": 2.0, "d3": 3.0, "x": 99.0},
        "b": {"d1": 2.0, "d2": 4.0, "d3": 6.0, "y": -5.0},
    }
    assert inter_annotator_agreement(scores) == pytest.approx(1.0)


def test_paired_series_wrapper():
    series = PairedSeries.of([(1, 2), (2, 4)], label_x="rouge", label_y="quality")
    assert pearson(series) == pytest.approx(1.0)
    assert series.label_x == "rouge"


def test_pearson_never_exceeds_unit_interval_numerically():
    # near-collinear large values should stay clamped
    points = [(x, 2 * x + 1e-12 * math.sin(x)) for x in range(1, 30)]
    assert abs(pearson(points)) <= 1.0
