import csv
import io
import json
import math

import numpy as np
import pytest

from mixedstars import cli, files, oracles
from mixedstars.oracles import OneHalfParams


def write_state(path, two_s, d_down, d_up, **extra):
    data = {
        "two_s": two_s,
        "d_down": [[complex(z).real, complex(z).imag] for z in d_down],
        "d_up": [[complex(z).real, complex(z).imag] for z in d_up],
        **extra,
    }
    path.write_text(json.dumps(data))
    return path


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_stars_up_up(tmp_path):
    src = write_state(tmp_path / "s.json", 1, [0, 0], [0, 1])
    out = tmp_path / "out.json"
    assert run("stars", "--input", src, "--output", out) == 0
    data = json.loads(out.read_text())
    assert data["metadata"]["two_s"] == 1
    assert data["stars"] == [
        {"set": "upper", "theta": 0.0, "phi": 0.0, "multiplicity": 2},
        {"set": "pseudo", "theta": 0.0, "phi": 0.0, "multiplicity": 1},
    ]


def test_stars_one_half_example(tmp_path):
    state = oracles.example_state_one_half(OneHalfParams(math.pi / 4))
    src = tmp_path / "s.json"
    src.write_text(files.dumps(files.state_to_dict(state, {"t": 0.0, "varphi": math.pi / 4, "delta": 0.0})))
    out = tmp_path / "out.json"
    assert run("stars", "--input", src, "--output", out) == 0
    data = json.loads(out.read_text())
    pseudo = [r for r in data["stars"] if r["set"] == "pseudo"]
    assert pseudo[0]["theta"] < 1e-9
    assert data["metadata"]["varphi"] == pytest.approx(math.pi / 4)


def test_stars_output_round_trips(tmp_path, rng):
    vec = rng.normal(size=8) + 1j * rng.normal(size=8)
    vec /= np.linalg.norm(vec)
    src = write_state(tmp_path / "s.json", 3, vec[0::2], vec[1::2])
    out = tmp_path / "out.json"
    assert run("stars", "--input", src, "--output", out) == 0
    text = out.read_text()
    data = json.loads(text)
    assert sum(r["multiplicity"] for r in data["stars"]) == 7
    assert files.dumps(files.parse_star_file(text)) == text


def test_stars_malformed_json(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text("{not json")
    assert run("stars", "--input", src, "--output", tmp_path / "o.json") == 2
    assert "malformed" in capsys.readouterr().err


@pytest.mark.parametrize(
    "payload",
    [
        {"two_s": 1, "d_down": [[1, 0]], "d_up": [[0, 0], [0, 0]]},
        {"two_s": 0, "d_down": [[1, 0]], "d_up": [[0, 0]]},
        {"two_s": 1, "d_down": [[1, 0], [0]], "d_up": [[0, 0], [0, 0]]},
        [1, 2, 3],
    ],
)
def test_stars_schema_errors(tmp_path, payload):
    src = tmp_path / "bad.json"
    src.write_text(json.dumps(payload))
    assert run("stars", "--input", src, "--output", tmp_path / "o.json") == 2


def test_stars_zero_state(tmp_path):
    src = write_state(tmp_path / "z.json", 1, [0, 0], [0, 0])
    assert run("stars", "--input", src, "--output", tmp_path / "o.json") == 3


def test_stars_renormalizes_with_warning(tmp_path, capsys):
    src = write_state(tmp_path / "s.json", 1, [0, 0], [0, 2])
    assert run("stars", "--input", src, "--output", tmp_path / "o.json") == 0
    assert "renormalizing" in capsys.readouterr().err


def test_small_norm_error_is_silent(tmp_path, capsys):
    src = write_state(tmp_path / "s.json", 1, [0, 0], [0, 1 + 1e-9])
    assert run("stars", "--input", src, "--output", tmp_path / "o.json") == 0
    assert capsys.readouterr().err == ""


def sweep(tmp_path, name, *extra):
    out = tmp_path / name
    code = run("sweep", *extra, "--output", out)
    return code, out


def test_sweep_varphi_half_half_pseudo_on_meridian(tmp_path):
    code, out = sweep(
        tmp_path, "s.csv", "--family", "half_half", "--var", "varphi", "--start", 0, "--stop", math.pi / 2,
        "--steps", 30, "--open", "--t", 0, "--delta", 0, "--format", "csv",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert list(rows[0]) == list(files.CSV_HEADER)
    pseudo = [r for r in rows if r["set"] == "pseudo"]
    assert len(pseudo) == 30
    assert all(float(r["phi"]) == 0.0 for r in pseudo)
    assert all(0 < float(r["varphi"]) < math.pi / 2 for r in rows)


def test_sweep_one_half_delta_one_constant(tmp_path):
    code, out = sweep(
        tmp_path, "s.json", "--family", "one_half", "--var", "t", "--start", 0, "--stop", 4 * math.pi,
        "--steps", 40, "--delta", 1, "--varphi", math.pi / 6,
    )
    assert code == 0
    records = files.parse_trajectory(out.read_text())
    first = {(r.set_label, r.star_index): r for r in records if r.t == 0.0}
    for r in records:
        ref = first[(r.set_label, r.star_index)]
        assert abs(r.theta - ref.theta) < 1e-9
        assert min(abs(r.phi - ref.phi), 2 * math.pi - abs(r.phi - ref.phi)) < 1e-9


@pytest.mark.parametrize(
    "extra",
    [
        ("--steps", 1, "--start", 0, "--stop", 1),
        ("--steps", 5, "--start", 1, "--stop", 1),
        ("--steps", 5, "--start", 2, "--stop", 1),
    ],
)
def test_sweep_invalid_ranges(tmp_path, extra):
    code, _ = sweep(tmp_path, "s.json", "--family", "half_half", "--var", "t", *extra)
    assert code == 2


def test_sweep_bad_flag_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run("sweep", "--family", "nope", "--var", "t", "--start", 0, "--stop", 1, "--steps", 3, "--output", tmp_path / "x")
    assert exc.value.code == 2


def test_sweep_file_family(tmp_path):
    src = write_state(tmp_path / "s.json", 2, [0.5, 0.5, 0], [0, 0.5, 0.5])
    code, out = sweep(
        tmp_path, "s.json", "--family", "file", "--state", src, "--var", "t", "--start", 0, "--stop", 2,
        "--steps", 5, "--delta", 0.3,
    )
    assert code == 0
    assert len(files.parse_trajectory(out.read_text())) == 5 * 5
    code, _ = sweep(tmp_path, "x.json", "--family", "file", "--var", "t", "--start", 0, "--stop", 2, "--steps", 5)
    assert code == 2


def test_sweep_csv_json_parity(tmp_path):
    common = ("--family", "one_half", "--var", "t", "--start", 0, "--stop", 3, "--steps", 12, "--delta", 0.4,
              "--varphi", 0.9)
    _, js = sweep(tmp_path, "a.json", *common, "--format", "json")
    _, cs = sweep(tmp_path, "a.csv", *common, "--format", "csv")
    assert files.parse_trajectory(js.read_text()) == files.parse_trajectory(cs.read_text())


def test_sweep_is_deterministic(tmp_path):
    common = ("--family", "half_half", "--var", "t", "--start", 0, "--stop", 3, "--steps", 20, "--delta", 0.5,
              "--varphi", 1.0)
    _, a = sweep(tmp_path, "a.json", *common)
    _, b = sweep(tmp_path, "b.json", *common, "--workers", 4)
    assert a.read_bytes() == b.read_bytes()


def test_validate_all_passes(capsys):
    assert run("validate") == 0
    assert "invariants passed" in capsys.readouterr().out


def test_validate_scope(capsys):
    assert run("validate", "--scope", "majorana") == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert lines and all(ln.split()[1] == "majorana" for ln in lines)


def test_validate_unknown_scope():
    assert run("validate", "--scope", "nonsense") == 2


def test_validate_detects_corrupted_coupling(capsys):
    assert run("validate", "--scope", "spinops", "--inject-fault", "coupling") == 1
    out = capsys.readouterr().out
    assert "FAIL  spinops    coupling transform is real and unitary" in out


def test_plot_star_file(tmp_path):
    src = write_state(tmp_path / "s.json", 1, [0, 0], [0, 1])
    stars = tmp_path / "stars.json"
    assert run("stars", "--input", src, "--output", stars) == 0
    svg = tmp_path / "p.svg"
    assert run("plot", "--input", stars, "--view", "front", "--output", svg) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and "</svg>" in text
    # north pole: top of the projected sphere
    assert 'cx="200" cy="40"' in text


def test_plot_trajectory_and_determinism(tmp_path):
    _, traj = sweep(tmp_path, "t.csv", "--family", "half_half", "--var", "t", "--start", 0, "--stop", 3,
                    "--steps", 10, "--varphi", 1.0, "--format", "csv")
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run("plot", "--input", traj, "--view", "right", "--output", a) == 0
    assert run("plot", "--input", traj, "--view", "right", "--output", b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_plot_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert run("plot", "--input", bad, "--output", tmp_path / "p.svg") == 2
    bad.write_text("a,b\n1,2\n")
    assert run("plot", "--input", bad, "--output", tmp_path / "p.svg") == 2


def test_plot_empty_records(tmp_path):
    empty = tmp_path / "e.json"
    empty.write_text(json.dumps({"metadata": {}, "records": []}))
    out = tmp_path / "p.svg"
    assert run("plot", "--input", empty, "--output", out) == 0
    text = out.read_text()
    assert '<g class="stars">\n</g>' in text
    assert 'r="160"' in text
