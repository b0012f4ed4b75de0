"""End-to-end checks of the command line interface via main()."""

from fractions import Fraction as F
from pathlib import Path

import pytest

from normcheck.cli import main
from normcheck.decision import component_analysis
from normcheck.weighted import parse_weighted

MACHINES = Path(__file__).resolve().parent.parent / "machines"

SKEWED = str(MACHINES / "skewed.t")
EVEN_GAP = str(MACHINES / "even_gap_selector.t")
IDENTITY = str(MACHINES / "identity.t")
BRANCHING = str(MACHINES / "branching.a")
SUFFIX_ONE = str(MACHINES / "suffix_one.a")


class TestCheck:
    def test_failing_machine(self, capsys):
        rc = main(["check", SKEWED])
        out = capsys.readouterr().out
        assert rc == 1
        assert "does not preserve normality" in out
        assert "freq(0) = 3/5, uniform value is 1/2" in out

    def test_passing_machine(self, capsys):
        rc = main(["check", EVEN_GAP])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.strip().endswith("preserves normality")
        assert "output block frequencies are uniform" in out
        assert "skipped, spectral radius below one" in out

    def test_machine_format(self, capsys):
        rc = main(["check", "--format", "machine", SKEWED])
        out = capsys.readouterr().out
        assert rc == 1
        pairs = dict(line.split(" = ", 1) for line in out.splitlines())
        assert pairs["preserves"] == "0"
        assert pairs["empty_normal_domain"] == "0"
        assert pairs["components"] == "1"
        assert pairs["component.0.states"] == "1 2 3 4"
        assert pairs["component.0.witness"] == "0"
        assert F(pairs["component.0.weight"]) == F(3, 5)
        assert F(pairs["component.0.expected"]) == F(1, 2)

    def test_machine_format_passing(self, capsys):
        rc = main(["check", "--format", "machine", EVEN_GAP])
        pairs = dict(
            line.split(" = ", 1) for line in capsys.readouterr().out.splitlines()
        )
        assert rc == 0
        assert pairs["preserves"] == "1"
        assert pairs["components"] == "2"
        assert pairs["component.0.preserves"] == "1"
        assert pairs["component.1.analyzed"] == "0"
        assert "component.1.preserves" not in pairs


class TestInfo:
    def test_automaton(self, capsys):
        assert main(["info", BRANCHING]) == 0
        out = capsys.readouterr().out
        assert "component 0: states 1, 2, 3, 4" in out
        assert "spectral radius: 1" in out
        assert "alpha = 1 1/2 1/2 1" in out
        assert "pi = 4/9 2/9 4/9 2/9" in out

    def test_transducer_components(self, capsys):
        assert main(["info", EVEN_GAP]) == 0
        out = capsys.readouterr().out
        assert "component 0" in out and "component 1" in out
        assert "spectral radius: 1/2" in out

    def test_empty_after_trim(self, capsys, tmp_path):
        path = tmp_path / "dead.t"
        path.write_text(
            "transducer\nin 0\nout 0\nstates a b\ninitial a\nfinal b\nt a 0 0 a\n"
        )
        assert main(["info", str(path)]) == 0
        assert "empty after trim" in capsys.readouterr().out


class TestMatrices:
    def test_skewed(self, capsys, skewed):
        assert main(["matrices", SKEWED]) == 0
        out = capsys.readouterr().out
        assert out.startswith("states: 1 2 3 4 5")
        for header in ("E:", "E*:", "D_0:", "D_1:", "P_hat:"):
            assert f"\n{header}\n" in out
        assert "pi_hat: 8/15 2/15 1/5 0 2/15" in out
        dump = out.split("\n\n", 1)[1]
        assert parse_weighted(dump) == component_analysis(skewed).automaton


class TestWeights:
    def test_single_letters(self, capsys):
        assert main(["weights", SKEWED]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "0 = 3/5" in lines
        assert "1 = 2/5" in lines

    def test_empty_word_weight(self, capsys):
        assert main(["weights", "--max-len", "0", SKEWED]) == 0
        assert capsys.readouterr().out.splitlines() == ["ε = 1"]

    def test_dump_round_trip(self, capsys, even_gap):
        assert main(["weights", "--dump", EVEN_GAP]) == 0
        dumped = capsys.readouterr().out
        assert parse_weighted(dumped) == component_analysis(even_gap).automaton


class TestSelect:
    def test_both_modes(self, capsys):
        assert main(["select", SUFFIX_ONE, "011010"]) == 0
        assert capsys.readouterr().out.strip() == "100"
        assert main(["select", "--mode", "nonoblivious", SUFFIX_ONE, "011010"]) == 0
        assert capsys.readouterr().out.strip() == "111"


class TestFreq:
    def test_csv(self, capsys):
        rc = main(["freq", SKEWED, "--len", "2000", "--max-block", "1",
                   "--report", "csv"])
        out = capsys.readouterr().out
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == "block,count,empirical,predicted,deviation"
        assert len(lines) == 3
        assert lines[1].startswith("0,")
        assert ",3/5," in lines[1]

    def test_text(self, capsys):
        rc = main(["freq", IDENTITY, "--len", "1000", "--max-block", "1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "1000 input symbols" in out
        assert "predicted 1/2" in out

    def test_tolerance_failure(self, capsys):
        rc = main(["freq", SKEWED, "--len", "2000", "--max-block", "1",
                   "--tolerance", "1e-9"])
        captured = capsys.readouterr()
        assert rc == 1
        assert "exceeds tolerance" in captured.err


class TestErrors:
    def test_missing_file(self, capsys):
        rc = main(["check", "no_such_machine.t"])
        assert rc == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "broken.t"
        path.write_text("transducer\nin 0\nt a 0 0 a\n")
        assert main(["check", str(path)]) == 2
        assert "error:" in capsys.readouterr().err

    def test_wrong_machine_kind(self, capsys):
        assert main(["check", BRANCHING]) == 2
        assert "needs a transducer" in capsys.readouterr().err
        assert main(["select", SKEWED, "01"]) == 2
        assert "needs an automaton" in capsys.readouterr().err
