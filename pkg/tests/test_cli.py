import json
import math

import numpy as np
import pytest

from gravatom.cli import (
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_rows(text):
    return [line.split(",") for line in text.splitlines() if not line.startswith("#")]


class TestOutputContract:
    def test_schema_first_line(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "3", "--l", "0", "--strain", "1e-3")
        assert code == EXIT_OK
        assert out.splitlines()[0].startswith("# schema: ")

    def test_byte_identical_reruns(self, capsys):
        argv = ("figure2", "--lower", "50s", "--upper", "51p",
                "--strain", "1e-20", "--omega", "47kHz", "--cycles", "20")
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_stamp_adds_timestamp_only_in_header(self, capsys):
        argv = ("detuning", "--lower", "1s", "--upper", "2p", "--strain", "1e-20")
        _, plain, _ = run(capsys, *argv)
        _, stamped, _ = run(capsys, *argv, "--stamp")
        assert "generated_at" not in plain
        assert "# generated_at: " in stamped
        # data section identical
        assert data_rows(plain) == data_rows(stamped)

    def test_json_mirror(self, capsys):
        argv = ("detuning", "--lower", "1s", "--upper", "2p", "--strain", "1e-20")
        _, csv_out, _ = run(capsys, *argv)
        code, json_out, _ = run(capsys, *argv, "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(json_out)
        schema_line = csv_out.splitlines()[0]
        assert doc["schema"] == schema_line[len("# schema: "):].split(",")
        assert doc["rows"] == data_rows(csv_out)

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "out.csv"
        code, out, _ = run(
            capsys, "detuning", "--lower", "1s", "--upper", "2p",
            "--strain", "1e-20", "--output", str(path),
        )
        assert code == EXIT_OK
        assert out == ""
        assert path.read_text().startswith("# schema: ")

    def test_floats_roundtrip(self, capsys):
        _, out, _ = run(capsys, "detuning", "--lower", "1s", "--upper", "2p",
                        "--strain", "1e-20")
        row = data_rows(out)[0]
        slope = float(row[9])
        assert repr(slope) == row[9]
        assert slope == pytest.approx(88.0 / 15.0, rel=1e-15)


class TestDecompose:
    def test_closed_form_three_rows(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "3", "--l", "0",
                           "--strain", "1e-3", "--method", "closed-form")
        assert code == EXIT_OK
        rows = data_rows(out)
        assert len(rows) == 3
        by_l = {int(r[2]): float(r[4]) for r in rows}
        assert by_l[-2] == 0.0
        assert by_l[0] == pytest.approx(1.0 - 1e-3 * 64.0 / 3.0, rel=1e-12)
        assert by_l[2] == pytest.approx(6.033977866125207e-4, rel=1e-12)

    def test_zero_strain_single_row(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "1", "--l", "0", "--strain", "0")
        assert code == EXIT_OK
        rows = data_rows(out)
        assert len(rows) == 1
        assert float(rows[0][4]) == 1.0

    def test_invalid_quantum_numbers_exit_2(self, capsys):
        code, out, err = run(capsys, "decompose", "--n", "2", "--l", "5", "--strain", "0")
        assert code == EXIT_USAGE
        assert out == ""
        assert "l" in err

    def test_series_method(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "4", "--l", "0",
                           "--strain", "1e-4", "--method", "series", "--k-max", "2")
        assert code == EXIT_OK
        rows = data_rows(out)
        assert [int(r[2]) for r in rows] == [0, 2]

    def test_numeric_nonconvergence_exit_3(self, capsys):
        code, _, err = run(capsys, "decompose", "--n", "6", "--l", "0",
                           "--strain", "1e-2", "--method", "numeric",
                           "--radial-nodes", "4", "--angular-nodes", "4",
                           "--tol", "1e-16")
        assert code == EXIT_NO_CONVERGENCE
        assert "converge" in err


class TestDetuning:
    def test_golden_1s2p(self, capsys):
        code, out, _ = run(capsys, "detuning", "--lower", "1s", "--upper", "2p",
                           "--strain", "1e-20")
        assert code == EXIT_OK
        row = data_rows(out)[0]
        assert float(row[9]) == pytest.approx(88.0 / 15.0, rel=1e-15)
        assert float(row[10]) == pytest.approx(88.0 / 15.0 * 1e-20, rel=1e-15)

    def test_zero_strain_zero_detuning(self, capsys):
        _, out, _ = run(capsys, "detuning", "--lower", "1s", "--upper", "2p",
                        "--strain", "0")
        assert float(data_rows(out)[0][10]) == 0.0

    def test_species_and_defects_file(self, capsys, tmp_path):
        cfg = tmp_path / "rb.cfg"
        cfg.write_text("[rb]\ns = 3.1311\np = 2.6548\n")
        code, out, _ = run(capsys, "detuning", "--lower", "50s", "--upper", "51p",
                           "--strain", "1e-20", "--species", "rb",
                           "--defects", str(cfg))
        assert code == EXIT_OK
        assert "# fractional_enhancement_vs_1s2p: " in out
        row = data_rows(out)[0]
        n_eff = 50 - 3.1311
        assert float(row[4]) == pytest.approx(-0.5 / n_eff**2, rel=1e-12)

    def test_unknown_species_exit_2(self, capsys):
        code, _, err = run(capsys, "detuning", "--lower", "1s", "--upper", "2p",
                           "--strain", "0", "--species", "nope")
        assert code == EXIT_USAGE
        assert "unknown species" in err


class TestRabi:
    def test_cycle_series_slope(self, capsys):
        code, out, _ = run(capsys, "rabi", "--omega", "47kHz",
                           "--detuning-from", "50s:51p", "--strain", "1e-20",
                           "--cycles", "1e6")
        assert code == EXIT_OK
        rows = data_rows(out)
        n = np.array([float(r[0]) for r in rows])
        dev = np.abs(np.array([float(r[3]) for r in rows]))
        slope = np.polyfit(np.log(n), np.log(dev), 1)[0]
        assert slope == pytest.approx(2.0, abs=1e-3)

    def test_explicit_times(self, capsys):
        code, out, _ = run(capsys, "rabi", "--omega", "1rad/s",
                           "--detuning-rad-s", "0.01",
                           "--time", "1.0", "--time", "2.0")
        assert code == EXIT_OK
        assert len(data_rows(out)) == 2

    def test_requires_detuning_source(self, capsys):
        code, _, err = run(capsys, "rabi", "--omega", "47kHz", "--cycles", "5")
        assert code == EXIT_USAGE

    def test_malformed_pair_exit_2(self, capsys):
        code, _, err = run(capsys, "rabi", "--omega", "47kHz",
                           "--detuning-from", "50s-51p", "--cycles", "5")
        assert code == EXIT_USAGE


class TestFigure2:
    def test_zero_cycles_header_only(self, capsys):
        code, out, _ = run(capsys, "figure2", "--lower", "50s", "--upper", "51p",
                           "--strain", "1e-20", "--omega", "47kHz", "--cycles", "0")
        assert code == EXIT_OK
        assert all(line.startswith("#") for line in out.splitlines())
        assert out.splitlines()[0].startswith("# schema: ")

    def test_rows_and_regime_column(self, capsys):
        code, out, _ = run(capsys, "figure2", "--lower", "50s", "--upper", "51p",
                           "--strain", "1e-20", "--omega", "47kHz", "--cycles", "10")
        assert code == EXIT_OK
        rows = data_rows(out)
        assert len(rows) == 10
        assert all(r[6] == "short_time" for r in rows)


class TestVerify:
    def test_table1_reports_the_printed_discrepancy(self, capsys):
        # the (3,0) cell of the printed table disagrees with its defining
        # integral; the suite reports it honestly and exits 1
        code, out, _ = run(capsys, "verify", "--suite", "table1")
        assert code == EXIT_VERIFY_FAILED
        rows = data_rows(out)
        assert len(rows) == 16
        failing = [r for r in rows if r[2] == "fail"]
        assert [(r[1]) for r in failing] == ["theta_k3_l0"]
        assert "-9/35" in failing[0][6]

    def test_basis_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "basis")
        assert code == EXIT_OK
        assert all(r[2] == "pass" for r in data_rows(out))

    def test_identity_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "identity")
        assert code == EXIT_OK

    def test_claims_suite_informational(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "claims")
        assert code == EXIT_OK
        assert all(r[2] == "report" for r in data_rows(out))

    def test_linearity_fails_honestly(self, capsys):
        # the same-n Delta-l = 2 response is quadratic in strain (see the
        # project ledger); the gated 1% constancy check fails, exit 1
        code, out, _ = run(capsys, "verify", "--suite", "linearity")
        assert code == EXIT_VERIFY_FAILED


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE
        capsys.readouterr()

    def test_bad_state_token(self, capsys):
        code, _, err = run(capsys, "detuning", "--lower", "xx", "--upper", "2p",
                           "--strain", "0")
        assert code == EXIT_USAGE

    def test_bad_frequency(self, capsys):
        code, _, _ = run(capsys, "rabi", "--omega", "47", "--detuning-rad-s", "0",
                         "--time", "1")
        assert code == EXIT_USAGE
