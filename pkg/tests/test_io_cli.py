from __future__ import annotations

import json
from math import comb

import numpy as np
import pytest

from syzlab.cli import main
from syzlab.harness import (
    analyze_model,
    construct_model,
    default_split,
    recovered_bidegrees,
    render_betti,
    sweep_summary,
    theorem_sweep,
)
from syzlab.io import (
    export_ideal_text,
    load_model,
    load_report,
    model_digest,
    model_from_dict,
    model_to_dict,
    parse_ideal_text,
    polynomial_string,
    save_model,
    strip_timings,
)
from syzlab.linalg import DEFAULT_PRIME, Subspace
from syzlab.ring import GradedRing
from syzlab.scroll import ScrollFrame, fourgonal_curve
from syzlab.surfaces import bielliptic_curve, delpezzo_surface

P = DEFAULT_PRIME


def test_model_dict_round_trip_curve():
    model = bielliptic_curve(7, seed=80)
    back = model_from_dict(model_to_dict(model))
    assert back.family == model.family
    assert back.genus == model.genus and back.prime == model.prime
    assert back.quadrics == model.quadrics
    assert back.surface_quadrics == model.surface_quadrics
    assert np.array_equal(back.sample_points, model.sample_points)
    assert back.params == model.params


def test_model_dict_round_trip_surface():
    surface = delpezzo_surface(9, seed=81)
    back = model_from_dict(model_to_dict(surface))
    assert back.kind == surface.kind
    assert back.quadrics == surface.quadrics
    assert back.params == surface.params


def test_model_file_round_trip(tmp_path):
    model = fourgonal_curve(ScrollFrame((2, 2, 2)), 3, 1, seed=82)
    path = tmp_path / "model.json"
    save_model(model, path)
    back = load_model(path)
    assert back.quadrics == model.quadrics
    assert back.params["frame"] == [2, 2, 2]
    assert model_digest(back) == model_digest(model)


def test_digest_distinguishes_models():
    a = bielliptic_curve(7, seed=83)
    b = bielliptic_curve(7, seed=84)
    assert model_digest(a) != model_digest(b)
    assert len(model_digest(a)) == 64


def test_analysis_reports_are_deterministic_up_to_timings():
    model = construct_model("fourgonal", genus=8, seed=85)
    r1 = strip_timings(analyze_model(model))
    r2 = strip_timings(analyze_model(model))
    assert r1 == r2
    assert r1["verdict"] == "EqualsCurve"
    assert r1["kappa21"] == 35
    assert "timings" not in r1


def test_polynomial_string_formatting():
    ring = GradedRing(3, P)
    coeffs = np.zeros(ring.dim(2), dtype=np.int64)
    coeffs[ring.index_of((2, 0, 0))] = 1
    coeffs[ring.index_of((1, 0, 1))] = 5
    assert polynomial_string(ring, 2, coeffs) == "Z1^2 + 5*Z1*Z3"
    assert polynomial_string(ring, 2, np.zeros(ring.dim(2), dtype=np.int64)) == "0"


def test_export_parse_round_trip():
    model = bielliptic_curve(7, seed=86)
    text = export_ideal_text(model)
    prime, nvars, rows, pts = parse_ideal_text(text)
    assert prime == P and nvars == 7
    assert Subspace.from_rows(rows, comb(8, 2), P) == model.quadrics
    assert pts is not None and np.array_equal(pts, model.sample_points)
    # a second export of the parsed payload is byte-identical
    back = model_from_dict(model_to_dict(model))
    assert export_ideal_text(back) == text


def test_parse_rejects_malformed_text():
    with pytest.raises(ValueError):
        parse_ideal_text("Z1*Z2\n")  # missing headers
    with pytest.raises(ValueError):
        parse_ideal_text("# prime 7\n# nvars 3\nZ9^2\n")  # variable out of range


def test_default_split_and_recovery():
    assert default_split(9) == (2, 2)
    assert default_split(8) == (2, 1)
    model = construct_model("fourgonal", genus=9, a=3, b=1, seed=87)
    assert recovered_bidegrees(model) == (3, 1)


def test_construct_model_validation():
    with pytest.raises(ValueError):
        construct_model("fourgonal")  # genus required
    with pytest.raises(ValueError):
        construct_model("genus5", genus=7)
    with pytest.raises(ValueError):
        construct_model("veronese", genus=9)
    with pytest.raises(ValueError):
        construct_model("fourgonal", genus=9, a=2)  # b missing
    with pytest.raises(ValueError):
        construct_model("no-such-family", genus=9)


def test_render_betti_marks_gaps():
    table = {"genus": 6, "entries": [[1, -1], [0, 3]], "truncated": True}
    text = render_betti(table)
    assert "?" in text and "--" in text
    assert "truncated" in text


def test_theorem_sweep_small_window():
    records, ok = theorem_sweep(5, 6, trials=1, seed=88)
    assert ok
    families = {r["family"] for r in records}
    assert "genus5" in families and "delpezzo" in families
    summary = sweep_summary(records)
    assert "PASS" in summary and "FAIL" not in summary
    with pytest.raises(ValueError):
        theorem_sweep(4, 6)


def test_cli_construct_analyze_export(tmp_path, capsys):
    model_path = tmp_path / "m.json"
    report_path = tmp_path / "r.json"
    ideal_path = tmp_path / "i.txt"
    assert main([
        "construct", "fourgonal", "--genus", "8", "--a", "2", "--b", "1",
        "--seed", "89", "--out", str(model_path),
    ]) == 0
    out = capsys.readouterr().out
    assert "dim I2 = 15" in out

    assert main(["analyze", str(model_path), "--out", str(report_path)]) == 0
    out = capsys.readouterr().out
    assert "EqualsCurve" in out
    report = load_report(report_path)
    assert report["kappa21"] == 35 and report["verdict"] == "EqualsCurve"

    assert main([
        "export-ideal", str(model_path), "--out", str(ideal_path),
    ]) == 0
    prime, nvars, rows, _ = parse_ideal_text(ideal_path.read_text())
    assert nvars == 8 and len(rows) == 15


def test_cli_verify_theorem(tmp_path, capsys):
    out_path = tmp_path / "sweep.json"
    code = main([
        "verify-theorem", "--genus-range", "5..6", "--seed", "90",
        "--out", str(out_path),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    data = json.loads(out_path.read_text())
    assert data["all_passed"] is True


def test_cli_bad_input_exits_2(tmp_path, capsys):
    assert main(["construct", "fourgonal", "--out", str(tmp_path / "x.json")]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["construct", "genus5", "--genus", "9",
                 "--out", str(tmp_path / "x.json")]) == 2
    capsys.readouterr()


def test_cli_prime_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SYZLAB_PRIME", "10007")
    model_path = tmp_path / "m.json"
    assert main(["construct", "genus5", "--seed", "91",
                 "--out", str(model_path)]) == 0
    capsys.readouterr()
    assert load_model(model_path).prime == 10007
