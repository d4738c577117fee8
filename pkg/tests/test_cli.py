"""Command line behavior: output text and exit codes."""

import io
import subprocess
import sys

import pytest

from coda.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestEval:
    def test_prints_the_final_data(self, capsys):
        code, out = run_cli(capsys, "eval", "first 2 : a b c d")
        assert code == 0
        assert out == "a b\n"

    def test_arithmetic(self, capsys):
        code, out = run_cli(capsys, "eval", "sum n : 3 5")
        assert out == "(n:8)\n"

    def test_verdict_line(self, capsys):
        code, out = run_cli(capsys, "eval", "last : nat : 0",
                            "--budget", "20", "--verdict")
        lines = out.splitlines()
        assert lines[-1] == \
            "verdict Undecided status budget undecidable_hint=true"

    def test_verdict_on_decided_data(self, capsys):
        code, out = run_cli(capsys, "eval", "null : a", "--verdict")
        assert "verdict True status fixed undecidable_hint=false" in out


class TestStep:
    def test_trace_lines(self, capsys):
        code, out = run_cli(capsys, "step", "nat : 0", "--budget", "3")
        assert out.splitlines() == [
            "0 (nat : 1)",
            "0 1 (nat : 2)",
            "0 1 2 (nat : 3)",
        ]

    def test_final_line_is_the_answer(self, capsys):
        code, out = run_cli(capsys, "step", "first 2 : a b c d")
        assert out.splitlines()[-1] == "a b"


class TestRepl:
    def run_script(self, capsys, monkeypatch, text):
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))
        code = main(["repl"])
        return code, capsys.readouterr().out

    def test_definitions_persist(self, capsys, monkeypatch):
        code, out = self.run_script(
            capsys, monkeypatch,
            "def twice : {B B}\ntwice : q\nexit\n")
        assert code == 0
        assert out.splitlines() == ["()", "q q"]

    def test_step_prefix_shows_trace(self, capsys, monkeypatch):
        code, out = self.run_script(capsys, monkeypatch,
                                    "step : nat : 0\nexit\n")
        assert out.splitlines()[0] == "0 (nat : 1)"

    def test_bindings_persist(self, capsys, monkeypatch):
        code, out = self.run_script(
            capsys, monkeypatch,
            "let W : a b\nfirst 1 : (W?)\nexit\n")
        assert out.splitlines() == ["()", "a"]

    def test_survives_garbage(self, capsys, monkeypatch):
        code, out = self.run_script(
            capsys, monkeypatch,
            ")(}{*=?<\nnull : x\nexit\n")
        assert code == 0
        assert out.splitlines()[-1] == "()"

    def test_eof_ends_cleanly(self, capsys, monkeypatch):
        code, out = self.run_script(capsys, monkeypatch, "null : x\n")
        assert code == 0


class TestCheck:
    def test_space_pass_exits_zero(self, capsys):
        code, out = run_cli(capsys, "check", "space", "sum n",
                            "--samples", "40")
        assert code == 0
        assert out.startswith("PASS")

    def test_space_fail_exits_one(self, capsys):
        code, out = run_cli(capsys, "check", "space", "aps not",
                            "--samples", "40")
        assert code == 1
        assert out.startswith("FAIL")
        assert "lhs" in out and "rhs" in out

    def test_law_is_an_alias(self, capsys):
        code, out = run_cli(capsys, "check", "law", "null",
                            "--samples", "20")
        assert code == 0

    def test_morphism(self, capsys):
        code, out = run_cli(capsys, "check", "morphism", "dbl n",
                            "--samples", "40")
        assert code == 0

    def test_antispace(self, capsys):
        code, out = run_cli(capsys, "check", "antispace", "sum z",
                            "--samples", "40")
        assert code == 0


class TestSearch:
    def test_finds_parity(self, capsys, tmp_path):
        pos = tmp_path / "pos.txt"
        neg = tmp_path / "neg.txt"
        pos.write_text("()\n(:) (:)\n(:) (:) (:) (:)\n")
        neg.write_text("(:)\n(:) (:) (:)\n")
        code, out = run_cli(capsys, "search", "--pos", str(pos),
                            "--neg", str(neg),
                            "--vocabulary", "aps,not,null,pass")
        assert code == 0
        assert "aps not" in out.splitlines()

    def test_no_hit_exits_one(self, capsys, tmp_path):
        pos = tmp_path / "pos.txt"
        neg = tmp_path / "neg.txt"
        pos.write_text("(:)\n")
        neg.write_text("(:) (:)\n")
        code, out = run_cli(capsys, "search", "--pos", str(pos),
                            "--neg", str(neg), "--vocabulary", "null,rev")
        assert code == 1


class TestDemo:
    def test_demo_verdict(self, capsys):
        code, out = run_cli(capsys, "demo", "godel")
        assert code == 0
        assert "verdict Undecided" in out

    def test_demo_trace_flag(self, capsys):
        code, out = run_cli(capsys, "demo", "consistency", "--trace")
        assert code == 0
        assert len(out.splitlines()) > 3

    def test_unknown_demo_is_usage_error(self, capsys):
        code = main(["demo", "nonsense"])
        assert code == 2


class TestUsage:
    def test_unknown_subcommand_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["definitely-not-a-command"])
        assert exc.value.code == 2

    def test_console_script_is_wired(self):
        proc = subprocess.run(
            [sys.executable, "-m", "coda.cli", "eval", "prod n : 5 3"],
            capture_output=True, text=True, timeout=60)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "(n:15)"
