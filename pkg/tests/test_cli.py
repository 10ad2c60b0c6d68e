import json

import pytest

from convexlab import cli

SQUARE = '{"type": "named", "name": "cube", "dim": 2}'
DISC = '{"type": "named", "name": "ball", "dim": 2}'


def run(argv):
    return cli.main(argv)


def test_mahler_square(capsys):
    assert run(["mahler", "--body", SQUARE]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["volume_product"] == pytest.approx(8.0, abs=1e-9)


def test_check_prop11(capsys):
    code = run(["check", "--ineq", "prop11", "--body", SQUARE, "--body2", DISC])
    assert code == 0
    lines = capsys.readouterr().out
    assert '"pass": true' in lines


def test_check_theorem11_single_body(capsys):
    assert run(["check", "--ineq", "theorem11", "--body", SQUARE]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["name"] == "volume-product-evr-bound"


def test_check_cor22_disc(capsys):
    assert run(["check", "--ineq", "cor22", "--body", DISC]) == 0


def test_evr(capsys):
    assert run(["evr", "--body", SQUARE]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["evr"] == pytest.approx((4.0 / (2 * 3.141592653589793)) ** 0.5, rel=1e-4)


def test_constants(capsys):
    assert run(["constants", "--dim", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["symmetric_bound"] > out["general_bound"] > 0


def test_optimize_position(capsys):
    spec = '{"type": "ellipsoid", "shape": [[0.25, 0.0], [0.0, 4.0]]}'
    assert run(["optimize-position", "--body", spec, "--restarts", "2", "--seed", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["M_star"] == pytest.approx(3.141592653589793, abs=1e-3)


def test_body_from_file(tmp_path, capsys):
    path = tmp_path / "body.json"
    path.write_text(SQUARE)
    assert run(["mahler", "--body", f"@{path}"]) == 0


def test_suite_small(tmp_path, capsys):
    out_path = tmp_path / "report.csv"
    code = run(
        [
            "suite",
            "--dims", "2",
            "--resolution", "512",
            "--random-symmetric", "2",
            "--random-general", "1",
            "--out", str(out_path),
        ]
    )
    assert code == 0
    assert "failed=0" in capsys.readouterr().out
    assert out_path.read_text().startswith("suite,inequality,")


def test_suite_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "dims": [2],
                "resolutions": {"2": 512},
                "n_random_symmetric": 5,
                "n_random_general": 1,
            }
        )
    )
    code = run(["suite", "--config", str(cfg), "--random-symmetric", "1"])
    assert code == 0


def test_malformed_body_exit_2(capsys):
    code = run(["check", "--ineq", "chain", "--body", '{"type": "nope"}', "--body2", DISC])
    assert code == 2
    assert "error[InvalidArgumentError]" in capsys.readouterr().err


def test_unreadable_spec_exit_2(capsys):
    code = run(["mahler", "--body", "@/does/not/exist.json"])
    assert code == 2
    assert "error[" in capsys.readouterr().err


def test_unknown_inequality_exit_2(capsys):
    code = run(["check", "--ineq", "frobnicate", "--body", SQUARE])
    assert code == 2
