"""
Tests for the command-line surface.
"""

import json

import pytest

from main import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def test_fibonacci_all_methods(capsys):
    status, out = run(capsys, "compute", "transform", "--restricted", "2", "--seed", "1,1",
                      "--n", "1..10", "--method", "all")
    assert status == 0
    assert json.loads(out) == ["1", "2", "3", "5", "8", "13", "21", "34", "55", "89"]


def test_classical_bernoulli(capsys):
    status, out = run(capsys, "compute", "hyper", "--family", "bernoulli", "--N", "1",
                      "--associated", "1", "--n", "0..4")
    assert status == 0
    assert json.loads(out) == ["1", "-1/2", "1/6", "0", "-1/30"]


def test_hyper_all_methods_agree(capsys):
    status, out = run(capsys, "compute", "hyper", "--family", "euler", "--N", "1",
                      "--restricted", "2", "--n", "0..6", "--method", "all", "--format", "csv")
    assert status == 0
    assert out.splitlines()[0] == "n,value"
    assert len(out.splitlines()) == 8


def test_geometric_closed_form(capsys):
    status, out = run(capsys, "compute", "closed-form", "--geometric", "1,1", "--m", "2", "--n", "7")
    assert status == 0
    assert json.loads(out) == ["8"]


def test_closed_form_below_m_is_a_domain_error(capsys):
    status, _ = run(capsys, "compute", "closed-form", "--ones", "--m", "3", "--n", "1..4")
    assert status == 2


def test_arithmetic_closed_form_cross_check(capsys):
    status, out = run(capsys, "compute", "closed-form", "--arithmetic", "1,2", "--m", "1",
                      "--n", "1..4", "--method", "all", "--format", "bfile")
    assert status == 0
    assert out == "1 2\n2 7\n3 24\n4 82\n"


def test_bfile_refuses_rationals(capsys):
    status, _ = run(capsys, "compute", "hyper", "--family", "cauchy", "--N", "1",
                    "--associated", "1", "--n", "0..3", "--format", "bfile")
    assert status == 2


def test_missing_family_order(capsys):
    status, _ = run(capsys, "compute", "hyper", "--family", "bernoulli", "--associated", "1")
    assert status == 2


def test_bad_family_order(capsys):
    status, _ = run(capsys, "compute", "hyper", "--family", "bernoulli", "--N", "0", "--associated", "1")
    assert status == 2


def test_unparsable_seed(capsys):
    status, _ = run(capsys, "compute", "transform", "--restricted", "2", "--seed", "1,1/0")
    assert status == 2


def test_argument_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["compute", "transform", "--restricted", "0"])
    assert exc.value.code == 2


def test_forward_then_invert_round_trip(tmp_path, capsys):
    seed = tmp_path / "seed.json"
    seed.write_text('["1", "1"]')
    forward = tmp_path / "z.json"
    status, _ = run(capsys, "transform", str(seed), "--restricted", "2", "--n-max", "5", "--out", str(forward))
    assert status == 0
    assert json.loads(forward.read_text()) == ["1", "1", "2", "3", "5", "8"]

    status, out = run(capsys, "transform", str(forward), "--direction", "invert", "--n-max", "5",
                      "--method", "all")
    assert status == 0
    assert json.loads(out) == ["1", "1", "0", "0", "0"]


def test_invert_tribonacci(tmp_path, capsys):
    z = tmp_path / "tribonacci.json"
    z.write_text(json.dumps(["1", "1", "2", "4", "7", "13"]))
    status, out = run(capsys, "transform", str(z), "--direction", "invert", "--n-max", "5",
                      "--method", "composition")
    assert status == 0
    assert json.loads(out) == ["1", "1", "1", "0", "0"]


def test_forward_of_empty_associated_seed(tmp_path, capsys):
    seed = tmp_path / "zero.json"
    seed.write_text('{"m": 2, "values": ["0", "0", "0"]}')
    status, out = run(capsys, "transform", str(seed), "--n-max", "4", "--method", "all")
    assert status == 0
    assert json.loads(out) == ["1", "0", "0", "0", "0"]


def test_invert_rejects_bad_constant(tmp_path, capsys):
    z = tmp_path / "bad.json"
    z.write_text('["3", "1"]')
    status, _ = run(capsys, "transform", str(z), "--direction", "invert", "--n-max", "1")
    assert status == 2


def test_missing_seed_file(tmp_path, capsys):
    status, _ = run(capsys, "transform", str(tmp_path / "absent.json"))
    assert status == 2


def test_verify_is_reproducible(tmp_path, capsys):
    argv = ["verify", "--scope", "section-2", "--seed-count", "3", "--n-limit", "6",
            "--rng-seed", "42", "--composition-limit", "6"]
    status, first = run(capsys, *argv)
    assert status == 0
    status, second = run(capsys, *argv)
    assert first == second
    report = json.loads(first)
    assert report['passed'] is True
    assert report['rng_seed'] == 42

    path = tmp_path / "report.json"
    status, out = run(capsys, *argv, "--report", str(path), "--timings")
    assert status == 0
    assert out == ""
    assert 'seconds' in json.loads(path.read_text())['identities'][0]


def test_euler_second_reading_flag(capsys):
    argv = ["compute", "hyper", "--family", "euler-second", "--N", "0", "--restricted", "1", "--n", "2"]
    status, printed = run(capsys, *argv)
    assert status == 0
    assert json.loads(printed) == ["0"]
    status, wide = run(capsys, *argv, "--euler-second-reading", "m")
    assert status == 0
    assert json.loads(wide) == ["-1/3"]


def test_no_arguments_prints_help(capsys):
    assert main([]) == 0
    assert "subcommands" in capsys.readouterr().out


def test_closed_form_rejects_restricted_mode(capsys):
    status, out = run(capsys, "compute", "closed-form", "--geometric", "1,1", "--restricted", "2", "--n", "2..5")
    assert status == 2
    assert out == ""


def test_invert_by_recurrence(tmp_path, capsys):
    z = tmp_path / "tribonacci.json"
    z.write_text(json.dumps(["1", "1", "2", "4", "7", "13"]))
    status, out = run(capsys, "transform", str(z), "--direction", "invert", "--n-max", "5",
                      "--method", "recurrence")
    assert status == 0
    assert json.loads(out) == ["1", "1", "1", "0", "0"]
