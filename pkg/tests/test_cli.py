import json

from queryvote.cli import main
from queryvote.election_io import load_election, read_native
from queryvote.experiments import read_csv_rows


def run_cli(*args):
    return main([str(a) for a in args])


def test_generate_native(tmp_path, capsys):
    out = tmp_path / "e.elec"
    assert run_cli("generate", "IC", "--m", 6, "--n", 4, "--k", 2, "--seed", 3, "--out", out) == 0
    election = read_native(out)
    assert (election.m, election.n, election.k) == (6, 4, 2)
    assert "wrote IC election" in capsys.readouterr().out


def test_generate_preflib_with_params(tmp_path):
    out = tmp_path / "e.soc"
    assert (
        run_cli(
            "generate", "mallows", "--m", 5, "--n", 6, "--k", 2, "--seed", 1,
            "--param", "phi=0.3", "--out", out, "--format", "preflib",
        )
        == 0
    )
    election = load_election(out, k=2)
    assert election.n == 6


def test_generate_is_seed_deterministic(tmp_path):
    a, b = tmp_path / "a.elec", tmp_path / "b.elec"
    run_cli("generate", "urn", "--m", 5, "--n", 5, "--k", 2, "--seed", 9, "--out", a)
    run_cli("generate", "urn", "--m", 5, "--n", 5, "--k", 2, "--seed", 9, "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_generate_rejects_bad_culture(tmp_path, capsys):
    code = run_cli("generate", "nope", "--m", 5, "--n", 5, "--k", 2, "--out", tmp_path / "x")
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_generate_rejects_bad_param(tmp_path, capsys):
    code = run_cli(
        "generate", "mallows", "--m", 5, "--n", 5, "--k", 2,
        "--param", "phi=2.0", "--out", tmp_path / "x",
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def config_file(tmp_path, **overrides):
    data = {
        "m": 6, "n": 4, "k": 3,
        "elections_per_culture": 2,
        "cultures": [{"kind": "IC", "seed": 1}, {"kind": "AN", "seed": 2}],
        "strategies": ["S-EQ", "N-FCFS"],
        "cost": "variance_aware",
        "budget_grid": [0, 25, "unlimited"],
        "voter_order_repeats": 2,
        "master_seed": 7,
    }
    data.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def test_run_writes_csv(tmp_path, capsys):
    config = config_file(tmp_path)
    out = tmp_path / "rows.csv"
    assert run_cli("run", config, "--out", out) == 0
    rows = read_csv_rows(out)
    assert len(rows) == 2 * 2 * 2 * 2 * 3
    assert "result rows" in capsys.readouterr().out


def test_run_jobs_do_not_change_output(tmp_path):
    config = config_file(tmp_path)
    one, two = tmp_path / "one.csv", tmp_path / "two.csv"
    assert run_cli("run", config, "--out", one, "--jobs", 1) == 0
    assert run_cli("run", config, "--out", two, "--jobs", 2) == 0
    assert one.read_bytes() == two.read_bytes()


def test_run_seed_override_changes_rows(tmp_path):
    config = config_file(tmp_path)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli("run", config, "--out", a)
    run_cli("run", config, "--out", b, "--seed", 123)
    assert a.read_bytes() != b.read_bytes()


def test_run_difficulty_summary(tmp_path, capsys):
    config = config_file(tmp_path)
    assert run_cli("run", config, "--out", tmp_path / "r.csv", "--difficulty") == 0
    assert "mean difficulty" in capsys.readouterr().out


def test_run_rejects_bad_config(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 5}))
    assert run_cli("run", bad, "--out", tmp_path / "r.csv") == 1
    assert "error:" in capsys.readouterr().err
    missing = tmp_path / "missing.json"
    assert run_cli("run", missing, "--out", tmp_path / "r.csv") == 1


def test_audit_costs_prints_grid(tmp_path, capsys):
    csv_path = tmp_path / "grid.csv"
    assert run_cli("audit-costs", "--trials", 200, "--seed", 3, "--csv", csv_path) == 0
    out = capsys.readouterr().out
    for name in ("candidates", "last_bucket", "bucket_count", "variance_aware", "computational"):
        assert name in out
    assert "counterexamples:" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "function,axiom,holds,counterexample"
    assert len(lines) == 1 + 5 * 3


def test_sweep_prints_table(tmp_path, capsys):
    elec = tmp_path / "e.elec"
    run_cli("generate", "IC", "--m", 6, "--n", 4, "--k", 2, "--seed", 5, "--out", elec)
    capsys.readouterr()
    assert run_cli("sweep", elec, "--budgets", "0,20,inf", "--repeats", 2) == 0
    out = capsys.readouterr().out
    assert "S-EQ" in out and "NL-FCFS" in out
    # unlimited budget column should be all zeros
    lines = out.splitlines()
    assert lines[0].startswith("strategy")
    for line in lines[1:]:
        assert line.rstrip().endswith("0.00")


def test_sweep_auto_grid(tmp_path, capsys):
    elec = tmp_path / "e.elec"
    run_cli("generate", "IC", "--m", 6, "--n", 3, "--k", 2, "--seed", 5, "--out", elec)
    assert run_cli("sweep", elec, "--points", 4) == 0
    assert "strategy" in capsys.readouterr().out


def test_sweep_preflib_needs_k(tmp_path, capsys):
    elec = tmp_path / "e.soc"
    run_cli(
        "generate", "IC", "--m", 5, "--n", 3, "--k", 2, "--seed", 5,
        "--out", elec, "--format", "preflib",
    )
    assert run_cli("sweep", elec, "--budgets", "0") == 1
    assert run_cli("sweep", elec, "--budgets", "0", "--k", 2) == 0
