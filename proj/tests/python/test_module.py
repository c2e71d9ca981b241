import math

import pytest

discthin = pytest.importorskip("discthin")

from schema_support import validate


def test_round_trip_through_module():
    xs = discthin.gen_dataset(400, d=2, seed=1)
    ys = discthin.gen_dataset(400, d=2, seed=2)
    out = discthin.thin_two_samples(xs, ys, T=2.0, seed=3)
    report = out["report"]
    validate(report, "thinning_report")
    assert len(out["kept_x"]) == report["kept_x"]
    assert all(xs[i] == p for i, p in zip(out["kept_x_index"], out["kept_x"]))
    before = discthin.two_sample_discrepancy(xs, ys)
    after = discthin.two_sample_discrepancy(out["kept_x"], out["kept_y"])
    validate(before, "discrepancy_result")
    assert after["value"] >= 0


def test_oracle_examples():
    assert discthin.two_sample_discrepancy([[0.1], [0.2]], [[0.9], [0.95]])["value"] == 2
    assert discthin.prefix_sign_sup([[0.3], [0.3]], [1, -1])["value"] == 1
    assert discthin.dyadic_prefix_sup([[0.4], [0.4]], [1, 1], 3)["value"] == 2
    assert discthin.lattice_prefix_sup([], [], 3)["value"] == 0
    assert discthin.max_slice_count([[0.1], [0.2], [0.6]], 2)["value"] == 2
    assert discthin.star_discrepancy([[0.5]])["value"] == 0.5


def test_encode_and_transform():
    enc = discthin.encode_point([0.3, 0.8], 2)
    assert len(enc) == 4 and set(enc.values()) == {1.0}
    models = [{"kind": "uniform", "a": 0, "b": 1}, {"kind": "uniform", "a": 0, "b": 2}]
    assert discthin.transform_point([0.3, 0.8], models, 0.5) == pytest.approx([0.3, 0.4])
    assert discthin.default_levels(1000) == 10


def test_balance_and_walk():
    signs, stats = discthin.balance([{i % 5: 1.0} for i in range(200)], bound=1.0, seed=4)
    validate(stats, "balance_stats")
    assert set(signs) <= {-1, 1} and len(signs) == 200
    walk = discthin.CubeWalk(2.0, 5)
    start = walk.initial_value(7)
    assert -1 <= start <= 1
    kept = walk.step(1, {7: 0.5})
    assert walk.value(7) == (start + 0.5 if kept else start)


def test_thin_signed_stream_bound():
    pts = discthin.gen_dataset(500, d=1, seed=8)
    signs = [1 if i % 3 else -1 for i in range(500)]
    out = discthin.thin_signed_stream(pts, signs, T=2.0, levels=9, seed=1)
    assert out["dyadic_max"] <= 2.0 * 9
    assert out["accepted"] + out["discarded"] == 500


def test_errors_raise():
    with pytest.raises(discthin.DiscthinError):
        discthin.star_discrepancy([[0.1, 0.2, 0.3]])
    with pytest.raises(discthin.DiscthinError):
        discthin.thin_two_samples([[0.1]], [[0.1], [0.2]], T=1.0)


def test_experiment():
    summary, records = discthin.run_experiment({"n": 64, "trials": 2, "seed": 5})
    validate(summary, "experiment_summary")
    assert records.count("\n") == 3
    assert math.isfinite(summary["groups"][0]["metrics"]["disc_after"]["mean"])
