import csv
import io
import json
import math

import pytest

from dirichlet_biquad import cli
from dirichlet_biquad.experiments import (
    CSV_COLUMNS,
    density_report,
    eta,
    fk_joint_density,
    omega3_concentration,
    rk4_quadratic_histogram,
    scan,
    verify_all,
    write_csv,
    write_json,
)
from dirichlet_biquad.forms import FormClassOracle, rk2k
from dirichlet_biquad.quadratic import fundamental_discriminants


def test_eta_values():
    assert eta(2, 2) == pytest.approx(0.375)
    assert eta(0, 2) == 1.0
    assert eta(math.inf, 2) == pytest.approx(0.2887880950, abs=1e-10)
    with pytest.raises(ValueError):
        eta(3, 1)


def test_fk_joint_density():
    assert fk_joint_density(0) == pytest.approx(eta(math.inf, 2), rel=1e-12)
    assert fk_joint_density(1) == pytest.approx(0.2887880951, abs=1e-10)
    assert fk_joint_density(2) == pytest.approx(0.0320875661, abs=1e-10)
    assert sum(fk_joint_density(r) for r in range(40)) < 1


def test_scan_small():
    assert [r.n for r in scan(10)] == [5, 7]
    assert list(scan(4)) == []


def test_scan_only_N_matches_oracle():
    recs = list(scan(30, only_N=True, oracle_max=30))
    oracle = FormClassOracle(200)
    want = []
    for n in range(5, 31, 2):
        if any(n % (p * p) == 0 for p in (3, 5)):
            continue
        plus, minus = fundamental_discriminants(n)
        if rk2k(oracle.narrow_class_group(plus), 2) == 0 and rk2k(oracle.narrow_class_group(minus), 2) == 0:
            want.append(n)
    assert [r.n for r in recs] == want
    for r in recs:
        assert r.hypothesis_ordinary is True
        assert r.dirichlet_check == "pass"


def test_scan_record_fields():
    (r,) = [r for r in scan(105, oracle_max=105) if r.n == 105]
    assert (r.omega, r.omega1, r.omega3, r.has_p5mod8) == (3, 1, 2, True)
    assert (r.in_E, r.Q, r.delta, r.epsilon) == (False, 1, 0, 0)
    assert (r.rk2_plus, r.rk2_minus, r.rk2_K, r.in_N, r.rk4_K) == (1, 3, 2, True, 1)
    assert (r.h_plus, r.h_minus, r.dirichlet_check) == (2, 8, "pass")


def _csv_text(jobs):
    buf = io.StringIO()
    write_csv(scan(6000, oracle_max=1500, jobs=jobs), buf)
    return buf.getvalue()


def test_scan_deterministic_across_jobs():
    one = _csv_text(1)
    assert one == _csv_text(3)
    rows = list(csv.reader(io.StringIO(one)))
    assert rows[0] == CSV_COLUMNS
    assert all(len(row) == len(CSV_COLUMNS) for row in rows)


def test_write_json_roundtrip():
    buf = io.StringIO()
    count = write_json(scan(50), buf)
    data = json.loads(buf.getvalue())
    assert len(data) == count and data[0]["n"] == 5
    assert list(data[0]) == CSV_COLUMNS


def test_density_report_small():
    rep = density_report(10**4)
    assert rep.count_odd_squarefree == sum(1 for _ in scan(10**4))
    assert sum(rep.rk4_histogram.values()) == rep.count_in_N
    assert rep.anomalies == []
    assert 0 < rep.fraction_in_E < rep.fraction_in_N < 1


def test_rk4_histogram_shape():
    h = rk4_quadratic_histogram(10**5)
    for side in ("plus", "minus"):
        d = h[side]
        assert d[0] > d[1] > d[2]
        total = sum(d.values())
        assert sum(v for k, v in d.items() if k >= 4) / total < 1e-3
    small = rk4_quadratic_histogram(1000)
    n_count = sum(1 for _ in scan(1000))
    assert sum(small["plus"].values()) == sum(small["minus"].values()) == n_count


def test_omega3_concentration_range():
    assert 0 <= omega3_concentration(10**4) <= 1


def test_verify_small():
    res = verify_all(1000, 1000)
    assert res.status == 0, res.failures[:5]
    assert res.checked["dirichlet"] >= 150


# --- command line -------------------------------------------------------------


def test_cli_invariants(capsys):
    assert cli.main(["invariants", "105"]) == 0
    out = capsys.readouterr().out
    assert "rk4 Cl(K_n) = 1" in out and "3 = 3 pass" in out


def test_cli_bad_input(capsys):
    assert cli.main(["invariants", "45"]) == 2
    assert "not squarefree" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--max", "-3", "--oracle-max", "10"])
    assert exc.value.code == 2
    assert cli.main(["density", "--max", "10"]) == 2


def test_cli_scan_to_file(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["scan", "--max", "100", "--only-N", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert rows and all(r["in_N"] == "1" for r in rows)


def test_cli_verify_and_density(capsys):
    assert cli.main(["verify", "--max", "300", "--oracle-max", "300"]) == 0
    assert "FAIL" not in capsys.readouterr().out
    assert cli.main(["density", "--max", "2000"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["limit"] == 2000 and "fraction_in_N" in rep
