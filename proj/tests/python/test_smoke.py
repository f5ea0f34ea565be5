import math

import numpy as np
import pytest

import tsequiv


def test_detection_and_embedding():
    values = [0.0] * 100 + [5.0] * 100
    series = tsequiv.TimeSeries("x", values)
    params = tsequiv.DetectionParams()
    assert tsequiv.detect_change_points(series, params) == [100]
    f = tsequiv.embed(series, params)
    assert f.breakpoints == [0.0, 100.0, 199.0]
    assert f.values == [0.0, 5.0]
    assert f(150.0) == 5.0


def test_norms_and_distances():
    f = tsequiv.StepFunction([0.0, 1.0, 2.0], [1.0, -1.0])
    g = tsequiv.StepFunction.constant(0.0, 2.0)
    assert tsequiv.lp_distance(f, g, 1) == pytest.approx(1.0)
    assert tsequiv.lp_norm(f, math.inf) == 1.0
    assert tsequiv.inner_product(f, f) == pytest.approx(1.0)
    assert tsequiv.are_equivalent(f, tsequiv.StepFunction([0.0, 0.5, 1.0, 2.0], [1.0, 1.0, -1.0]))
    assert tsequiv.StepFunction.from_json(f.to_json()) == f
    with pytest.raises(tsequiv.Error):
        tsequiv.normalize(g, 2)


def test_set_metrics():
    assert tsequiv.hausdorff([10, 20], [10, 20]) == 0.0
    assert tsequiv.hausdorff([10], [30]) == 20.0
    assert tsequiv.modified_hausdorff([10], [10, 30]) == pytest.approx(10.0)
    with pytest.raises(tsequiv.Error):
        tsequiv.hausdorff([], [1])


def test_matrices_and_clustering():
    fs = [
        tsequiv.StepFunction([0.0, 1.0, 2.0], [1.0, 0.0]),
        tsequiv.StepFunction([0.0, 1.0, 2.0], [1.1, 0.0]),
        tsequiv.StepFunction([0.0, 1.0, 2.0], [0.0, 4.0]),
    ]
    d = tsequiv.unscaled_distance_matrix(fs, 1, ["a", "b", "c"])
    assert d.labels == ["a", "b", "c"]
    entries = np.asarray(d.entries)
    assert entries.shape == (3, 3)
    assert np.allclose(entries, entries.T)
    tree = tsequiv.hierarchical_cluster(d, tsequiv.Linkage.Average)
    assert tree.last_merged_leaf() == 2
    assert tree.to_newick().endswith(";")
    assignment = tsequiv.spectral_cluster(tsequiv.to_affinity(d), 2, 0)
    assert assignment.cluster[0] == assignment.cluster[1] != assignment.cluster[2]


def test_geo():
    a = tsequiv.StationMetadata("a", 0.0, 0.0)
    b = tsequiv.StationMetadata("b", 0.0, 180.0)
    assert tsequiv.haversine_km(a, b) == pytest.approx(math.pi * 6371.0088)
    g = tsequiv.geo_distance_matrix([a, b])
    assert np.asarray(g.entries)[0, 1] == pytest.approx(math.pi * 6371.0088)


def test_synthetic_suite():
    suite = tsequiv.figure2_suite()
    assert len(suite) == 10
    assert suite[0].id == "S1"
    shifted = tsequiv.perturb(suite[0], 10, 5, 0.5)
    assert np.asarray(shifted.values)[10] == pytest.approx(np.asarray(suite[0].values)[10] + 0.5)
