import json

import pytest

from cfreeconv import verify
from cfreeconv.cli import main
from cfreeconv.measures import CircleMeasure, boolean_convolve
from cfreeconv.series import TruncatedSeries


def write(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def delta(turns):
    return {"type": "atomic", "atoms": [{"turns": turns, "weight": "1"}]}


MIX = {"type": "atomic", "atoms": [{"turns": "0", "weight": "3/4"}, {"turns": "1/4", "weight": "1/4"}]}


def test_nc_counts_and_listing(capsys):
    assert main(["nc", "--n", "4", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "14"

    assert main(["nc", "--n", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 5
    parsed = [json.loads(line) for line in lines]
    assert all(p["n"] == 3 for p in parsed)
    assert {"n": 3, "blocks": [[1, 2, 3]]} in parsed

    for cls, want in (("nc_s", "3"), ("nc_0", "2")):
        assert main(["nc", "--n", "4", "--class", cls, "--count-only"]) == 0
        assert capsys.readouterr().out.strip() == want


def test_nc_odd_parity_class_fails(capsys):
    assert main(["nc", "--n", "3", "--class", "nc_0"]) == 2
    assert "error:" in capsys.readouterr().err


def test_ncl_listing_and_classification(capsys):
    assert main(["ncl", "--n", "3"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 6

    assert main(["ncl", "--n", "3", "--classify"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    whole = next(r for r in rows if r["blocks"] == [[1, 2, 3]])
    assert whole["exterior"] == [[1, 2, 3]]
    assert whole["interior"] == []
    assert whole["singly_covered"] == [1, 2, 3]
    assert whole["doubly_covered"] == []
    linked = next(r for r in rows if r["blocks"] == [[1, 2], [2, 3]])
    assert linked["doubly_covered"] == [2]
    assert linked["interior"] == [[2, 3]]


def test_transform_single_measure(tmp_path, capsys):
    src = write(tmp_path / "m.json", MIX)
    assert main(["transform", "--in", src, "--what", "eta", "--order", "3"]) == 0
    got = TruncatedSeries.from_json(json.loads(capsys.readouterr().out))
    m = CircleMeasure.from_json(MIX).moment_series(3)
    from cfreeconv.transforms import eta

    assert got == eta(m)


def test_transform_pair_sigma_constant_for_point_mass(tmp_path, capsys):
    src = write(tmp_path / "p.json", {"mu": delta("1/4"), "nu": MIX})
    assert main(["transform", "--in", src, "--what", "sigma", "--order", "4"]) == 0
    got = TruncatedSeries.from_json(json.loads(capsys.readouterr().out))
    assert [c.to_complex() for c in got.coeffs] == [1j, 0, 0, 0]


def test_transform_shape_mismatch(tmp_path, capsys):
    measure = write(tmp_path / "m.json", MIX)
    pair = write(tmp_path / "p.json", {"mu": delta("1/4"), "nu": MIX})
    assert main(["transform", "--in", pair, "--what", "t", "--order", "3"]) == 2
    assert "single measure" in capsys.readouterr().err
    assert main(["transform", "--in", measure, "--what", "cr", "--order", "3"]) == 2
    assert "mu" in capsys.readouterr().err


def test_convolve_matches_library(tmp_path, capsys):
    a = write(tmp_path / "a.json", MIX)
    b = write(tmp_path / "b.json", delta("1/2"))
    assert main(["convolve", "--kind", "boolean", "--a", a, "--b", b, "--order", "4"]) == 0
    got = CircleMeasure.from_json(json.loads(capsys.readouterr().out))
    want = boolean_convolve(CircleMeasure.from_json(MIX), CircleMeasure.from_json(delta("1/2")), 4)
    assert got.moment_series(4) == want.moment_series(4)


def test_convolve_cfree_point_masses(tmp_path, capsys):
    a = write(tmp_path / "a.json", {"mu": delta("1/4"), "nu": delta("1/2")})
    b = write(tmp_path / "b.json", {"mu": delta("1/2"), "nu": delta("3/4")})
    assert main(["convolve", "--kind", "cfree", "--a", a, "--b", b, "--order", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    got_mu = CircleMeasure.from_json(out["mu"]).moment_series(4)
    got_nu = CircleMeasure.from_json(out["nu"]).moment_series(4)
    from fractions import Fraction

    assert got_mu == CircleMeasure.point_mass(Fraction(3, 4)).moment_series(4)
    assert got_nu == CircleMeasure.point_mass(Fraction(1, 4)).moment_series(4)


def test_convolve_rejects_pair_for_single_kind(tmp_path, capsys):
    a = write(tmp_path / "a.json", {"mu": delta("1/4"), "nu": MIX})
    b = write(tmp_path / "b.json", MIX)
    assert main(["convolve", "--kind", "free", "--a", a, "--b", b]) == 2
    assert "single measure" in capsys.readouterr().err


def test_idiv_gamma_forms(tmp_path, capsys):
    sigma = write(tmp_path / "s.json", {"type": "atomic", "atoms": [{"turns": "0", "weight": "1/2"}]})
    assert main(["idiv", "--gamma", "1,0", "--sigma", sigma, "--kind", "boolean", "--order", "3"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(["idiv", "--gamma", "1+0j", "--sigma", sigma, "--kind", "boolean", "--order", "3"]) == 0
    assert json.loads(capsys.readouterr().out) == first
    import math

    assert abs(first["values"][0][0] - math.exp(-0.5)) < 1e-12

    assert main(["idiv", "--gamma", "2,0", "--kind", "free"]) == 2
    assert "unit circle" in capsys.readouterr().err


def test_semigroup_time_zero_is_the_unit_pair(tmp_path, capsys):
    gen = write(
        tmp_path / "gen.json",
        {"gamma": [1.0, 0.0], "sigma": {"type": "atomic", "atoms": [{"turns": "1/3", "weight": "1/4"}]}},
    )
    target = write(
        tmp_path / "target.json",
        {"order": 5, "mode": "approx", "coeffs": [[0.9, 0.1], [0.0, 0.0], [0.1, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]},
    )
    assert main(["semigroup", "--gen", gen, "--sigma-target", target, "--t", "0", "--order", "6"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mu"] == {"type": "atomic", "atoms": [{"turns": "0", "weight": "1"}]}
    assert out["nu"] == out["mu"]

    assert main(["semigroup", "--gen", gen, "--sigma-target", target, "--t", "-1", "--order", "6"]) == 2
    assert "error:" in capsys.readouterr().err


def test_limit_report(tmp_path, capsys):
    report = tmp_path / "report.csv"
    argv = ["limit", "--s", "1/2", "--omega", "1/4", "--n-list", "2,4", "--order", "3", "--out", str(report)]
    assert main(argv) == 0
    summary = json.loads(capsys.readouterr().out)
    assert set(summary) == {"fit", "gamma_n", "sigma_n_moments"}
    assert set(summary["gamma_n"]) == {"2", "4"}

    lines = report.read_text().strip().splitlines()
    assert lines[0] == "n,j,gap"
    assert len(lines) == 1 + 2 * 4
    assert all(float(line.split(",")[2]) >= 0 for line in lines[1:])

    first = report.read_text()
    assert main(argv) == 0
    capsys.readouterr()
    assert report.read_text() == first


def test_verify_exit_codes(capsys, monkeypatch):
    assert main(["verify", "--suite", "partitions", "--order", "4", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out
    assert "FAIL" not in out

    monkeypatch.setattr(verify, "run", lambda *a, **k: [("demo", False, "boom")])
    assert main(["verify"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_unknown_flags_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["nc", "--n", "4", "--bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["transform", "--in", "x.json", "--what", "nope"])
