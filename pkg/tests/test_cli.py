"""The ``taufan`` command-line driver."""

import io
import re
import subprocess
import sys

import pytest

from taufan.cli import EXIT_INCONSISTENT, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    human, _, machine = text.partition("--- machine-readable ---\n")
    fields = dict(line.split(": ", 1) for line in machine.splitlines())
    return code, human, fields


def test_check(tmp_path):
    path = tmp_path / "a.alg"
    path.write_text("field f3\nvertices 2\narrow a 1 2\n")
    code, human, fields = invoke("check", str(path))
    assert code == EXIT_OK and fields["dimension"] == "3" and fields["field"] == "f3"


def test_check_reports_syntax_error_location(tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text("vertices 2\narrow a 1\n")
    code, human, fields = invoke("check", str(path))
    assert code == EXIT_USAGE and "line 2" in human and fields["error"] == "AlgebraSyntaxError"


def test_pairs_a2():
    code, human, fields = invoke("pairs", "a2")
    assert code == EXIT_OK and fields["pairs"] == "5" and fields["graph_status"] == "complete"
    assert len(re.findall(r"^\d+\t\(T:", human, re.M)) == 5


def test_pairs_kronecker_is_partial():
    code, _, fields = invoke("pairs", "kronecker", "--max-nodes", "12")
    assert code == EXIT_PARTIAL and fields["infinite_suspect"] == "yes"
    assert fields["graph_status"] == "cap-nodes"


def test_walls_and_chambers():
    assert invoke("walls", "cycle3")[2]["walls"] == "6"
    assert invoke("chambers", "cycle3")[2]["chambers"] == "14"


def test_kronecker_walls_listing():
    code, human, fields = invoke("walls", "kronecker", "--kronecker-depth", "2")
    assert code == EXIT_OK
    assert "FAMILY tau^-m(2) m=2 dim=(4,5) ray=(5,-4)" in human
    assert "LIMIT ray=(1,-1)" in human


def test_matrices_for_one_pair():
    code, human, _ = invoke("gmatrix", "cycle3", "--pair", "1")
    assert code == EXIT_OK and "G=[[1,0,0],[0,1,0],[0,0,1]]" in human
    code, _, fields = invoke("cmatrix", "cycle3", "--pair", "no-such-pair")
    assert code == EXIT_USAGE


def test_table_has_fourteen_chambers():
    code, human, _ = invoke("table", "cycle3")
    assert code == EXIT_OK and len(re.findall(r"^chamber \d+", human, re.M)) == 14


def test_stability(tmp_path):
    mod = tmp_path / "p1.mod"
    mod.write_text("module P1\ndim 1 1\nmap a [[1]]\n")
    code, human, fields = invoke("stability", "a2", "--module", str(mod), "--vector", "1,-1")
    assert code == EXIT_OK and "semistable: yes, stable: yes" in human
    assert invoke("stability", "a2", "--module", str(mod), "--vector", "1,1")[2]["semistable"] == "no"
    assert invoke("stability", "a2", "--module", str(mod), "--vector", "1,x")[0] == EXIT_USAGE


def test_render_and_dot_files(tmp_path):
    svg = tmp_path / "k.svg"
    code, _, fields = invoke("render", "kronecker", "--out", str(svg), "--kronecker-depth", "3")
    assert code == EXIT_OK and fields["walls_drawn"] == "8" and fields["limit_walls"] == "1"
    assert svg.read_text().count('class="wall"') == 8
    dot = tmp_path / "g.dot"
    assert invoke("mutation-graph", "a2", "--dot", str(dot), "--labels")[0] == EXIT_OK
    assert dot.read_text().count("->") == 5


def test_selfcheck_finite_passes():
    code, _, fields = invoke("selfcheck", "a2")
    assert code == EXIT_OK and fields["failed"] == "0" and fields["skipped"] == "0"


def test_selfcheck_kronecker_is_partial():
    code, _, fields = invoke("selfcheck", "kronecker", "--max-nodes", "12")
    assert code == EXIT_PARTIAL
    assert fields["suite.kronecker-walls"] == "pass" and fields["suite.fan"] == "skip"


def test_usage_errors(monkeypatch):
    assert invoke("pairs", "missing.alg")[0] == EXIT_USAGE
    assert invoke("pairs", "a2", "--max-nodes", "0")[0] == EXIT_USAGE
    monkeypatch.setenv("TAUFAN_THREADS", "zero")
    assert invoke("pairs", "a2")[0] == EXIT_USAGE
    monkeypatch.setenv("TAUFAN_THREADS", "3")
    assert invoke("pairs", "a2")[2]["threads"] == "3"
    with pytest.raises(SystemExit) as info:
        run(["no-such-command"])
    assert info.value.code == EXIT_USAGE


def test_inconsistency_exit_code(monkeypatch):
    import taufan.cli as cli
    from taufan.tautheory import InconsistencyError

    def broken(*args):
        raise InconsistencyError("forced")

    monkeypatch.setitem(cli.COMMANDS, "pairs", broken)
    assert invoke("pairs", "a2")[0] == EXIT_INCONSISTENT


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "taufan.cli", "pairs", "a2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "pairs: 5" in proc.stdout
