import io
import subprocess
import sys

import pytest

from cycleflow import cli
from cycleflow.explorer import parse_report
from cycleflow.model import parse_flow, parse_instance

PAPER_INSTANCE = "cycle 6\ncommodity 0 3 3\ncommodity 1 4 3\ncommodity 2 5 3\n"

PAPER_K3_OUTPUT = """\
cycle 6
commodity 0 3 3
commodity 1 4 3
commodity 2 5 3
flow 2 1 2
flow 1 2 1

j\t1\t2\t3\t4\t5\t6
f(e_j)\t5\t4\t5\t4\t5\t4
f'(e_j)\t4\t5\t4\t5\t4\t5

f vs f': no dominating path
  cert 0 0 3 1 4 5
  cert 0 3 0 3 4 5
  cert 1 1 4 1 4 5
  cert 1 4 1 5 4 5
  cert 2 2 5 3 4 5
  cert 2 5 2 1 4 5
f' vs f: no dominating path
  cert 0 0 3 0 4 5
  cert 0 3 0 4 4 5
  cert 1 1 4 2 4 5
  cert 1 4 1 0 4 5
  cert 2 2 5 2 4 5
  cert 2 5 2 0 4 5
no dominating path in either direction
"""


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_check_paper_pair_brute(files):
    inst = files("paper.txt", PAPER_INSTANCE)
    code, out = run("check", "--instance", inst, "--flow", files("f", "flow 2 1 2\n"),
                    "--flow-prime", files("fp", "flow 1 2 1\n"))
    assert code == 1
    assert out.splitlines()[0] == "violation: no dominating path"
    assert sum(line.startswith("cert ") for line in out.splitlines()) == 6


def test_check_identical_flows(files):
    inst = files("paper.txt", PAPER_INSTANCE)
    f = files("f", "flow 1 1/2 3\n")
    code, out = run("check", "--instance", inst, "--flow", f, "--flow-prime", f)
    assert code == 0 and out.startswith("witness 0 ")


def test_check_constructive_crossing(files):
    inst = files("sq.txt", "cycle 4\ncommodity 0 2 1\ncommodity 1 3 1\n")
    args = ["--instance", inst, "--flow", files("f", "flow 1 1\n"),
            "--flow-prime", files("fp", "flow 0 0\n")]
    code, out = run("check", *args, "--method", "constructive")
    assert code == 0
    _, brute = run("check", *args)
    assert out.strip() in brute.splitlines()


def test_check_constructive_refuses_k3(files, capsys):
    inst = files("paper.txt", PAPER_INSTANCE)
    f = files("f", "flow 2 1 2\n")
    code, _ = run("check", "--instance", inst, "--flow", f, "--flow-prime", f,
                  "--method", "constructive")
    assert code == 2
    assert "paper-k3" in capsys.readouterr().err


def test_check_parse_error_exit_2(files, capsys):
    inst = files("paper.txt", PAPER_INSTANCE)
    code, _ = run("check", "--instance", inst, "--flow", files("f", "flow 7/2 0 0\n"),
                  "--flow-prime", files("fp", "flow 0 0 0\n"))
    assert code == 2
    assert "line 1: x exceeds demand" in capsys.readouterr().err


def test_missing_file_exit_2(files):
    code, _ = run("check", "--instance", "/nonexistent", "--flow", "a", "--flow-prime", "b")
    assert code == 2


def test_usage_errors_exit_2():
    assert run()[0] == 2
    assert run("search", "--instance", "x")[0] == 2
    assert run("verify", "--k", "2", "--trials", "0", "--seed", "1")[0] == 2
    assert run("frobnicate")[0] == 2


def test_search_random_needs_trials_and_seed(files):
    inst = files("paper.txt", PAPER_INSTANCE)
    assert run("search", "--instance", inst, "--random", "--trials", "5")[0] == 2


def test_search_grid_paper(files):
    code, out = run("search", "--instance", files("paper.txt", PAPER_INSTANCE), "--grid-step", "1")
    assert code == 1
    report = parse_report(out)
    assert any(v.f.x == (2, 1, 2) and v.f_prime.x == (1, 2, 1) for v in report.violations)


def test_search_grid_single_commodity(files):
    inst = files("one.txt", "cycle 5\ncommodity 4 2 2\n")
    code, out = run("search", "--instance", inst, "--grid-step", "1/2")
    assert code == 0 and "violations 0" in out


def test_search_random_deterministic(files):
    inst = files("two.txt", "cycle 6\ncommodity 0 3 1\ncommodity 5 2 3/2\n")
    first = run("search", "--instance", inst, "--random", "--trials", "2000", "--seed", "42")
    second = run("search", "--instance", inst, "--random", "--trials", "2000", "--seed", "42")
    assert first == second and first[0] == 0


def test_search_bad_step(files):
    inst = files("paper.txt", PAPER_INSTANCE)
    assert run("search", "--instance", inst, "--grid-step", "0")[0] == 2
    assert run("search", "--instance", inst, "--grid-step", "abc")[0] == 2


def test_paper_k3_golden():
    code, out = run("paper-k3")
    assert code == 0
    assert out == PAPER_K3_OUTPUT


def test_paper_k3_subprocess_byte_stable():
    outs = [subprocess.run([sys.executable, "-m", "cycleflow", "paper-k3"], capture_output=True,
                           check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] == PAPER_K3_OUTPUT.encode()


def test_verify_small_runs():
    assert run("verify", "--k", "1", "--trials", "300", "--seed", "7")[0] == 0
    code, out = run("verify", "--k", "2", "--trials", "300", "--seed", "7", "--max-n", "6")
    assert code == 0 and out.startswith("ok: 300 trials")


def test_verify_rejects_k3(capsys):
    assert run("verify", "--k", "3", "--trials", "10", "--seed", "1")[0] == 2
    assert "k = 1 or 2" in capsys.readouterr().err
    assert run("verify", "--k", "2", "--trials", "10", "--seed", "1", "--max-n", "2")[0] == 2


def test_verify_failure_prints_reproduction(monkeypatch):
    monkeypatch.setattr(cli, "verify_one", lambda *a: "forced failure")
    code, out = run("verify", "--k", "2", "--trials", "5", "--seed", "3")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "FAIL trial 0: forced failure"
    body = "\n".join(lines[1:-2])
    inst = parse_instance(body)
    assert parse_flow(lines[-2], inst).x and parse_flow(lines[-1], inst).x


def test_help_documents_indexing(capsys):
    assert run("--help")[0] == 0
    assert "e_j is edge j-1" in capsys.readouterr().out
