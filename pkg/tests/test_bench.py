import numpy as np
import pytest

from tpds.bench import (
    CSV_COLUMNS,
    STATUS_DISAGREEMENT,
    STATUS_OK,
    STATUS_OVER_BUDGET,
    STATUS_SKIPPED,
    BenchConfig,
    BenchRecord,
    expected_orders,
    fit_slope,
    run_experiment,
    summarize_slopes,
    write_csv,
)
import tpds.bench
from tpds.errors import InsufficientData


def synthetic_records(method, exponent, rs=(4, 8, 16, 32, 64)):
    return [BenchRecord('sysid', method, r, 2, 2, 10, 1, 1, time_s=1e-6 * r ** exponent) for r in rs]


def test_fit_slope_recovers_exponents():
    records = synthetic_records('unfold', 3.0) + synthetic_records('fourier', 1.0)
    assert fit_slope(records, 'unfold') == pytest.approx(3.0)
    assert fit_slope(records, 'dense') == pytest.approx(3.0)
    assert fit_slope(records, 'fourier') == pytest.approx(1.0)
    assert summarize_slopes(records) == pytest.approx({'unfold': 3.0, 'fourier': 1.0})


def test_fit_slope_uses_the_largest_points():
    records = synthetic_records('fourier', 2.0, rs=(2, 4)) + synthetic_records('fourier', 1.0, rs=(8, 16, 32, 64))
    assert fit_slope(records, 'fourier', top=4) == pytest.approx(1.0)


def test_fit_slope_needs_three_points():
    with pytest.raises(InsufficientData):
        fit_slope(synthetic_records('unfold', 3.0, rs=(4, 8)), 'unfold')
    assert summarize_slopes([])['fourier'] is None


def test_expected_orders():
    assert expected_orders('stability') == {'unfold': 3, 'fourier': 1}
    with pytest.raises(ValueError):
        expected_orders('stabilizability')


def test_config_validation():
    assert BenchConfig.for_test('controllability').p_range == tuple(range(2, 10))
    with pytest.raises(ValueError):
        BenchConfig(test='sysid', p_range=(3, 2))
    with pytest.raises(ValueError):
        BenchConfig(test='stabilizability')


@pytest.mark.parametrize('test', ['sysid', 'stability', 'controllability'])
def test_small_grid_times_both_methods(test):
    cfg = BenchConfig(test=test, n=2, h=2, l=3, p_range=(1, 2), repetitions=2, seed=1)
    records = run_experiment(cfg)
    assert [(rec.method, rec.r) for rec in records] == [('unfold', 2), ('fourier', 2), ('unfold', 4), ('fourier', 4)]
    assert all(rec.status == STATUS_OK and rec.time_s > 0 for rec in records)
    assert records[0].verdict == records[1].verdict
    assert records[2].time_per_r3 == pytest.approx(records[2].time_s / 64)


def test_time_cap_skips_larger_points():
    cfg = BenchConfig(test='sysid', p_range=(1, 2), repetitions=1, time_cap=0.0)
    records = run_experiment(cfg)
    assert [rec.status for rec in records] == [STATUS_OVER_BUDGET, STATUS_OVER_BUDGET, STATUS_SKIPPED, STATUS_SKIPPED]
    assert np.isnan(records[-1].time_s)


def test_csv_and_sidecar(tmp_path):
    records = synthetic_records('unfold', 3.0, rs=(4, 8))
    records.append(BenchRecord('sysid', 'unfold', 16, 2, 2, 10, 1, 1, time_s=float('nan'), status=STATUS_SKIPPED))
    path = tmp_path / "bench.csv"
    csv_path, meta_path = write_csv(records, str(path), {'seed': 0})

    raw = path.read_bytes()
    assert raw.startswith((",".join(CSV_COLUMNS) + "\r\n").encode())
    lines = raw.decode().split("\r\n")
    assert lines[1].startswith("sysid,unfold,4,2,2,10,1,1,")
    assert lines[3] == "sysid,unfold,16,2,2,10,1,1,,,"

    meta = (tmp_path / "bench.csv.meta.txt").read_text()
    assert meta.startswith("seed=0\nhost=")
    assert "marker method=unfold r=16 status=skipped" in meta


def test_verdict_disagreement_is_marked_in_the_sidecar(tmp_path, monkeypatch):
    monkeypatch.setattr(tpds.bench, '_measure', lambda cfg, data, method: (0.01, method == 'dense'))
    cfg = BenchConfig(test='sysid', p_range=(1, 2), repetitions=1)
    records = run_experiment(cfg)
    assert all(rec.disagrees for rec in records)

    _, meta_path = write_csv(records, str(tmp_path / "bench.csv"), {'seed': 0})
    meta = open(meta_path, encoding='utf-8').read().splitlines()
    assert f"marker r=2 status={STATUS_DISAGREEMENT} fourier=false unfold=true" in meta
    assert f"marker r=4 status={STATUS_DISAGREEMENT} fourier=false unfold=true" in meta


def test_agreeing_methods_leave_no_disagreement_marker(tmp_path):
    records = run_experiment(BenchConfig(test='controllability', l=3, p_range=(1, 2), repetitions=1))
    assert not any(rec.disagrees for rec in records)
    _, meta_path = write_csv(records, str(tmp_path / "bench.csv"))
    assert STATUS_DISAGREEMENT not in open(meta_path, encoding='utf-8').read()


@pytest.mark.slow
def test_sysid_scaling_reproduces_the_complexity_orders():
    cfg = BenchConfig(test='sysid', n=2, h=2, l=10, p_range=tuple(range(2, 10)), repetitions=5, seed=0)
    records = run_experiment(cfg)
    assert all(rec.status == STATUS_OK for rec in records)

    slopes = summarize_slopes(records)
    assert 2.5 <= slopes['unfold'] <= 3.5
    assert 0.7 <= slopes['fourier'] <= 1.8

    times = {tag: [rec.time_s for rec in records if rec.method == tag] for tag in ('unfold', 'fourier')}
    for series in times.values():
        assert all(later >= earlier / 1.5 for earlier, later in zip(series, series[1:]))
    assert times['unfold'][-1] >= 5.0 * times['fourier'][-1]
