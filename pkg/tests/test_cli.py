import pytest

from cli import main


def gen(out, *extra):
    return main(['gen', '--n', '2', '--h', '2', '--l', '3', '--r', '4', '--out', str(out), *extra])


def test_gen_is_byte_identical_for_a_seed(tmp_path):
    assert gen(tmp_path / "a", '--seed', '5', '--mode', 'simulate', '--radius', '0.6', '--m', '1') == 0
    assert gen(tmp_path / "b", '--seed', '5', '--mode', 'simulate', '--radius', '0.6', '--m', '1') == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == ['a.t3', 'b.t3', 'manifest.txt', 'u0.t3', 'x0.t3', 'x1.t3']
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert gen(tmp_path / "c", '--seed', '6') == 0
    assert (tmp_path / "c" / "x0.t3").read_bytes() != (tmp_path / "a" / "x0.t3").read_bytes()


def test_check_exit_codes(tmp_path, capsys):
    gen(tmp_path, '--mode', 'simulate', '--radius', '0.6')
    x0, x1 = str(tmp_path / "x0.t3"), str(tmp_path / "x1.t3")
    capsys.readouterr()

    assert main(['check', 'sysid', '--x0', x0]) == 0
    assert main(['check', 'stability', '--x0', x0, '--x1', x1, '--method', 'dense']) == 0
    assert main(['check', 'controllability', '--x0', x0, '--x1', x1]) == 1
    assert main(['check', 'stabilizability', '--x0', x0, '--x1', x1, '--threads', '2']) == 0
    assert main(['check', 'all', '--x0', x0, '--x1', x1]) == 1
    out = capsys.readouterr().out
    assert "✅ INFORMATIVE for stability" in out
    assert "❌ NOT INFORMATIVE for controllability" in out


def test_check_machine_format(tmp_path, capsys):
    gen(tmp_path)
    capsys.readouterr()
    assert main(['check', 'sysid', '--x0', str(tmp_path / "x0.t3"), '--format', 'machine']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ['test=sysid', 'method=fourier', 'verdict=true']


def test_tolerance_flags(tmp_path, capsys):
    gen(tmp_path, '--mode', 'simulate', '--radius', '0.6')
    capsys.readouterr()
    x0, x1 = str(tmp_path / "x0.t3"), str(tmp_path / "x1.t3")
    assert main(['check', 'stability', '--x0', x0, '--x1', x1, '--tol-stab', '0.5']) == 1
    assert main(['check', 'stability', '--x0', x0, '--x1', x1, '--tol-stab=-inf']) == 0


def test_identify_unique_and_not(tmp_path, capsys):
    gen(tmp_path / "full", '--mode', 'simulate')
    full = tmp_path / "full"
    out = tmp_path / "a_hat.t3"
    assert main(['identify', '--x0', str(full / "x0.t3"), '--x1', str(full / "x1.t3"), '--out', str(out)]) == 0
    assert out.read_text().splitlines()[1] == "t3 2 2 4"

    main(['gen', '--n', '4', '--h', '1', '--l', '2', '--r', '3', '--out', str(tmp_path / "thin")])
    thin = tmp_path / "thin"
    assert main(['identify', '--x0', str(thin / "x0.t3"), '--x1', str(thin / "x1.t3"),
                 '--out', str(tmp_path / "thin.t3"), '--format', 'machine']) == 3
    assert "unique=false" in capsys.readouterr().out


def test_malformed_input_exits_2(tmp_path, capsys):
    gen(tmp_path)
    x0 = tmp_path / "x0.t3"
    x0.write_text("\n".join(x0.read_text().splitlines()[:-2]) + "\n")
    assert main(['check', 'sysid', '--x0', str(x0)]) == 2
    assert "x0.t3:" in capsys.readouterr().err

    assert main(['check', 'sysid', '--x0', str(tmp_path / "missing.t3")]) == 2
    assert main(['check', 'stability', '--x0', str(tmp_path / "x1.t3")]) == 2
    assert main(['check', 'stability', '--x0', str(tmp_path / "x1.t3"), '--x1', str(x0)]) == 2


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as excinfo:
        main(['check', 'sysid', '--x0', 'x.t3', '--method', 'qr'])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main(['gen', '--n', '0', '--h', '1', '--l', '1', '--r', '1'])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        main(['frobnicate'])
    assert excinfo.value.code == 2


def test_gen_rejects_radius_without_simulation(tmp_path):
    assert gen(tmp_path, '--radius', '0.5') == 2


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(['bench', 'sysid', '--pmin', '1', '--pmax', '3', '--reps', '1', '--l', '3', '--out', str(out)]) == 0
    assert out.exists()
    assert (tmp_path / "bench.csv.meta.txt").exists()
    printed = capsys.readouterr().out
    assert "slope[unfold]" in printed and "slope[fourier]" in printed
    assert main(['bench', 'stability', '--pmin', '3', '--pmax', '2']) == 2


def test_threads_env(monkeypatch, tmp_path):
    monkeypatch.setenv('TPDS_THREADS', '3')
    gen(tmp_path)
    assert main(['check', 'sysid', '--x0', str(tmp_path / "x0.t3")]) == 0
    monkeypatch.setenv('TPDS_THREADS', 'many')
    assert main(['check', 'sysid', '--x0', str(tmp_path / "x0.t3")]) == 2


def test_duplicate_slices_report_the_empty_block(tmp_path, capsys):
    x0 = tmp_path / "dup.t3"
    x0.write_text("t3 2 3 2\n1 0 2\n0 1 -1\n\n1 0 2\n0 1 -1\n")
    assert main(['check', 'sysid', '--x0', str(x0), '--format', 'machine']) == 1
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("block 1 rank=0") for line in lines)
    assert main(['check', 'sysid', '--x0', str(x0), '--format', 'machine', '--method', 'dense']) == 1
