import json
import math

import pytest

from ptcoh import cli
from ptcoh.cli import main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("PTCOH_SERVER", raising=False)
    monkeypatch.delenv("PTCOH_THREADS", raising=False)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParser:
    def test_help_documents_units(self, capsys):
        code, out, _ = run(capsys, ["--help"])
        assert code == 0
        assert "dimensionless" in out

    def test_subcommand_help_documents_units(self, capsys):
        code, out, _ = run(capsys, ["evolve", "--help"])
        assert code == 0
        assert "dimensionless" in out
        assert "--t-max" in out

    def test_version(self, capsys):
        code, out, _ = run(capsys, ["--version"])
        assert code == 0
        assert out.startswith("ptcoh ")

    def test_no_subcommand_fails(self, capsys):
        code, _, err = run(capsys, [])
        assert code == 2
        assert "COMMAND" in err

    def test_unknown_flag_fails(self, capsys):
        code, _, _ = run(capsys, ["evolve", "--state", "bell", "--r", "0.6", "--frobnicate"])
        assert code == 2


class TestEvolve:
    ARGS = ["evolve", "--state", "bell", "--r", "0.6", "--t-max", "1", "--dt", "0.5"]

    def test_csv_to_stdout(self, capsys):
        code, out, _ = run(capsys, self.ARGS)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "t,C_T,C_G,C_L,purity"
        assert lines[1] == "0,1,1,0,1"
        assert len(lines) == 4

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "sweep.csv"
        code, out, err = run(capsys, self.ARGS + ["--output", str(target)])
        assert code == 0
        assert out == ""
        assert "wrote" in err
        assert target.read_text().splitlines()[1] == "0,1,1,0,1"

    def test_dilation_adds_success_column(self, capsys):
        code, out, _ = run(capsys, self.ARGS + ["--method", "dilation"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "t,C_T,C_G,C_L,purity,success_prob"
        assert lines[1].split(",")[-1] == "0.5"

    def test_rerun_is_byte_identical(self, capsys):
        _, first, _ = run(capsys, self.ARGS)
        _, second, _ = run(capsys, self.ARGS)
        assert first == second

    def test_thread_count_does_not_change_bytes(self, capsys):
        _, one, _ = run(capsys, self.ARGS + ["--threads", "1"])
        _, three, _ = run(capsys, self.ARGS + ["--threads", "3"])
        assert one == three

    def test_threads_env_override(self, capsys, monkeypatch):
        _, flag_out, _ = run(capsys, self.ARGS + ["--threads", "2"])
        monkeypatch.setenv("PTCOH_THREADS", "2")
        code, env_out, _ = run(capsys, self.ARGS)
        assert code == 0
        assert env_out == flag_out

    def test_bad_threads_env_fails(self, capsys, monkeypatch):
        monkeypatch.setenv("PTCOH_THREADS", "many")
        code, _, err = run(capsys, self.ARGS)
        assert code == 2
        assert "PTCOH_THREADS" in err

    def test_negative_r_fails(self, capsys):
        code, _, err = run(capsys, ["evolve", "--state", "bell", "--r", "-1"])
        assert code == 2
        assert "--r" in err

    def test_pair_requires_ghz(self, capsys):
        code, _, err = run(capsys, self.ARGS + ["--pair", "23"])
        assert code == 2
        assert "ghz" in err

    def test_ghz_pair_sweep(self, capsys):
        code, out, _ = run(
            capsys,
            ["evolve", "--state", "ghz", "--r", "0.6", "--t-max", "1", "--dt", "0.5",
             "--pair", "23"],
        )
        assert code == 0
        for line in out.splitlines()[1:]:
            assert float(line.split(",")[3]) <= 1e-6


class TestContour:
    ARGS = ["contour", "--state", "bell", "--r", "0.6", "--angle-steps", "3",
            "--t-max", "1", "--dt", "0.5"]

    def test_json_to_stdout(self, capsys):
        code, out, _ = run(capsys, self.ARGS)
        assert code == 0
        payload = json.loads(out)
        assert list(payload) == ["angles", "times", "C_T", "C_G", "C_L"]
        assert len(payload["angles"]) == 3
        assert len(payload["C_G"][0]) == 3
        assert out.endswith("\n")

    def test_bad_angle_steps(self, capsys):
        code, _, err = run(capsys, ["contour", "--state", "bell", "--r", "0.6",
                                    "--angle-steps", "1"])
        assert code == 2
        assert "angle-steps" in err


class TestDilate:
    def test_report(self, capsys):
        code, out, _ = run(capsys, ["dilate", "--r", "1.4", "--t", "4", "--check"])
        assert code == 0
        values = {}
        for line in out.splitlines():
            key, _, text = line.partition(" = ")
            values[key] = text
        assert set(values) == {"r", "t", "theta", "phi", "success_scale",
                               "success_probability", "max_deviation"}
        assert float(values["max_deviation"]) <= 1e-9
        assert abs(float(values["success_probability"]) - 0.5) <= 1e-9
        assert 0.0 < float(values["success_scale"]) <= 1.0

    def test_no_check_omits_deviation(self, capsys):
        code, out, _ = run(capsys, ["dilate", "--r", "0.6", "--t", "2"])
        assert code == 0
        assert "max_deviation" not in out

    def test_negative_t_fails(self, capsys):
        code, _, _ = run(capsys, ["dilate", "--r", "0.6", "--t", "-2"])
        assert code == 2


class TestTomo:
    def test_noiseless_report(self, capsys):
        code, out, _ = run(capsys, ["tomo", "--state", "bell"])
        assert code == 0
        values = dict(line.partition(" = ")[::2] for line in out.splitlines())
        assert float(values["fidelity"]) >= 1.0 - 1e-9
        assert float(values["residual"]) <= 1e-10
        assert values["state"] == "bell"
        assert int(values["n_labels"]) == 15

    def test_noisy_deterministic(self, capsys):
        argv = ["tomo", "--state", "ghz", "--noise", "0.01", "--seed", "5"]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second
        values = dict(line.partition(" = ")[::2] for line in first.splitlines())
        assert float(values["fidelity"]) >= 0.9

    def test_negative_noise_fails(self, capsys):
        code, _, _ = run(capsys, ["tomo", "--state", "bell", "--noise", "-0.1"])
        assert code == 2


class TestState:
    def test_export_import_round_trip(self, capsys, tmp_path):
        exported = tmp_path / "ghz.json"
        reissued = tmp_path / "ghz2.json"
        code, _, _ = run(capsys, ["state", "--export", str(exported), "--state", "ghz"])
        assert code == 0
        code, _, err = run(capsys, ["state", "--import", str(exported),
                                    "--output", str(reissued)])
        assert code == 0
        assert "valid state: 3 qubit(s)" in err
        assert reissued.read_bytes() == exported.read_bytes()

    def test_export_pseudopure(self, capsys, tmp_path):
        target = tmp_path / "pps.json"
        code, _, _ = run(capsys, ["state", "--export", str(target), "--state", "pps",
                                  "--epsilon", "0.5", "--qubits", "2"])
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload["n_qubits"] == 2
        assert payload["rho"][0][0][0] == pytest.approx(0.625, abs=1e-12)

    def test_requires_exactly_one_mode(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["state"])
        assert code == 2
        code, _, _ = run(capsys, ["state", "--export", str(tmp_path / "a.json"),
                                  "--import", str(tmp_path / "a.json")])
        assert code == 2

    def test_import_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["state", "--import", str(tmp_path / "nope.json")])
        assert code == 2
        assert "cannot read" in err

    def test_import_invalid_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, _ = run(capsys, ["state", "--import", str(bad)])
        assert code == 2

    def test_import_wrong_schema_hits_service_validation(self, capsys, tmp_path):
        bad = tmp_path / "schema.json"
        bad.write_text(json.dumps({"n_qubits": "two", "rho": []}))
        code, _, err = run(capsys, ["state", "--import", str(bad)])
        assert code == 2
        assert "invalid request" in err

    def test_import_unphysical_state(self, capsys, tmp_path):
        bad = tmp_path / "unphysical.json"
        bad.write_text(json.dumps({
            "n_qubits": 1,
            "rho": [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
        }))
        code, _, err = run(capsys, ["state", "--import", str(bad)])
        assert code == 2
        assert "invalid request" in err


class TestErrorMapping:
    def test_numerics_maps_to_exit_3(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli, "_post",
            lambda path, payload: (500, {"detail": {"type": "numerics", "message": "bad"}}),
        )
        code, _, err = run(capsys, ["dilate", "--r", "0.6", "--t", "1"])
        assert code == 3
        assert "numerical invariant" in err

    def test_other_errors_map_to_exit_1(self, capsys, monkeypatch):
        monkeypatch.setattr(
            cli, "_post", lambda path, payload: (503, {"detail": "overloaded"})
        )
        code, _, err = run(capsys, ["dilate", "--r", "0.6", "--t", "1"])
        assert code == 1
        assert "503" in err
