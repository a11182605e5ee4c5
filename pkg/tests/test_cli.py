import json

import numpy as np
import pytest

from siocalc import cli


def base_scene(**overrides):
    scene = {
        "version": "sio-scene/1",
        "curve": {"family": "unit_circle", "radius": 1.0, "center": [0.0, 0.0]},
        "exponent": {"constant": 2.0},
        "weight": {},
        "config": {"truncations": [16, 32, 64], "seed": 3},
        "symbols": {
            "one": [{"arc": [0.0, 1.0], "kind": "constant", "value": [1.0, 0.0]}],
            "sign": [
                {"arc": [0.0, 0.5], "kind": "constant", "value": [1.0, 0.0]},
                {"arc": [0.5, 1.0], "kind": "constant", "value": [-1.0, 0.0]},
            ],
            "ijump": [
                {"arc": [0.0, 0.5], "kind": "constant", "value": [0.0, 1.0]},
                {"arc": [0.5, 1.0], "kind": "constant", "value": [1.0, 0.0]},
            ],
            "tau": [{"arc": [0.0, 1.0], "kind": "trig", "coeffs": [[1, 1.0, 0.0]]}],
        },
        "pairs": {"shift": {"a": "tau", "b": "one"}},
        "elements": {
            "e1": {
                "N": 1,
                "terms": [
                    [{"a": "tau", "b": "one"}],
                    [{"a": "one", "b": "tau"}, {"a": "tau", "b": "one"}],
                ],
            }
        },
    }
    scene.update(overrides)
    return scene


def write_scene(tmp_path, scene, name="scene.json"):
    path = tmp_path / name
    path.write_text(json.dumps(scene))
    return str(path)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_space_check_bounded(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["space-check", "--scene", path], capsys)
    assert code == 0
    assert report["verdict"] == "bounded"


def test_space_check_unbounded_weight(tmp_path, capsys):
    scene = base_scene(weight={"marked": [{"point": [0.0, 1.0], "lambda": 0.6}]})
    path = write_scene(tmp_path, scene)
    code, report = run(["space-check", "--scene", path], capsys)
    assert code == 2
    assert report["verdict"] == "unbounded"


def test_space_check_discontinuous_exponent(tmp_path, capsys):
    scene = base_scene(
        exponent={
            "pieces": [
                {"arc": [0.0, 0.5], "kind": "constant", "value": 2.0},
                {"arc": [0.5, 1.0], "kind": "constant", "value": 3.0},
            ]
        }
    )
    path = write_scene(tmp_path, scene)
    code, report = run(["space-check", "--scene", path], capsys)
    assert code == 3
    assert report["verdict"] == "hypothesis-violated"


def test_classify_exit_codes(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["classify", "one", "--scene", path], capsys)
    assert code == 0 and report["verdict"] == "Fredholm"
    code, report = run(["classify", "sign", "--scene", path], capsys)
    assert code == 2 and report["verdict"] == "NotSemiFredholm"
    code, report = run(["classify", "ijump", "--scene", path], capsys)
    assert code == 0
    # jump at parameter 0.5 gives zeta = i, and the wrap jump at 0 gives -i
    assert report["criterion_table"][1]["v"] == pytest.approx(0.25)
    assert report["criterion_table"][0]["v"] == pytest.approx(0.75)


def test_classify_unknown_target_is_malformed(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["classify", "missing", "--scene", path], capsys)
    assert code == 1
    assert report["error"] == "malformed-scene"


def test_malformed_scene_version(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene(version="nope/9"))
    code, report = run(["space-check", "--scene", path], capsys)
    assert code == 1


def test_missing_scene_file(capsys):
    code, report = run(["space-check", "--scene", "/does/not/exist.json"], capsys)
    assert code == 1


def test_dilate_round_trip(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    out = str(tmp_path / "dilated.json")
    code = cli.main(["dilate", "e1", "--scene", path, "--out", out])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["D"] == 7  # N=1, k=2, r=2
    # the emitted scene is itself ingestible
    code2, report2 = run(
        ["classify", "dilated", "--scene", out, "--trunc", "16,32,64"], capsys
    )
    # e1 = (tau P + Q) + (P + tau Q)(tau P + Q) has total Q-coefficient
    # 1 + tau, which vanishes on the circle
    assert code2 == 2
    assert report2["verdict"] == "NotSemiFredholm"


def test_norm_constant_function(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["norm", "--scene", path], capsys)
    assert code == 0
    assert report["norm"] == pytest.approx(np.sqrt(2 * np.pi), rel=1e-8)


def test_verify_projection_suite(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["verify", "projections", "--scene", path], capsys)
    assert code == 0
    assert report["passed"]
    assert all(row["residual"] == 0.0 for row in report["rows"])


def test_verify_adjoint_suite(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["verify", "adjoint", "--scene", path], capsys)
    assert code == 0 and report["passed"]


def test_verify_dilation_suite(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code, report = run(["verify", "dilation", "--scene", path], capsys)
    assert code == 0 and report["passed"]


def test_csv_side_file(tmp_path, capsys):
    scene = base_scene()
    scene["symbols"]["twobytwo_a"] = {
        "size": 2,
        "entries": [
            [
                [{"arc": [0.0, 1.0], "kind": "trig", "coeffs": [[1, 1.0, 0.0]]}],
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [0.0, 0.0]}],
            ],
            [
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [0.0, 0.0]}],
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [1.0, 0.0]}],
            ],
        ],
    }
    scene["symbols"]["twobytwo_b"] = {
        "size": 2,
        "entries": [
            [
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [1.0, 0.0]}],
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [0.0, 0.0]}],
            ],
            [
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [0.0, 0.0]}],
                [{"arc": [0.0, 1.0], "kind": "constant", "value": [1.0, 0.0]}],
            ],
        ],
    }
    scene["pairs"]["mat"] = {"a": "twobytwo_a", "b": "twobytwo_b"}
    path = write_scene(tmp_path, scene)
    csv = str(tmp_path / "sweep.csv")
    code, report = run(
        ["classify", "mat", "--scene", path, "--csv", csv, "--trunc", "16,32,64"],
        capsys,
    )
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert lines[0] == "n,sigma_index,sigma_value"
    assert len(lines) > 1


def test_reports_are_reproducible(tmp_path, capsys):
    path = write_scene(tmp_path, base_scene())
    code1, r1 = run(["classify", "sign", "--scene", path], capsys)
    code2, r2 = run(["classify", "sign", "--scene", path], capsys)
    assert (code1, r1) == (code2, r2)
