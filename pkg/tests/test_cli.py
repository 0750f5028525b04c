"""End-to-end tests for the lrckit command line."""

import json

import pytest

from lrckit.cli import build_parser, main
from lrckit.code_model import encode
from lrckit.codefile import format_word, load_code, save_code
from lrckit.constructions import build_pyramid

pytestmark = pytest.mark.integration


@pytest.fixture
def pyramid_file(tmp_path):
    """Write the [8, 4] pyramid code over GF(7) to a code file."""
    path = tmp_path / "pyramid.lrc"
    save_code(build_pyramid(4, 2, 4, 7), path)
    return path


def _word_file(tmp_path, code, message, erased):
    word = encode(code, message)
    path = tmp_path / "word.txt"
    erased_word = [None if i in erased else v for i, v in enumerate(word)]
    path.write_text(format_word(erased_word) + "\n")
    return path, word


class TestParser:
    def test_common_flags_after_subcommand(self):
        args = build_parser().parse_args(
            ["analyze", "code.lrc", "--json", "--seed", "3", "--r", "2"]
        )
        assert args.json
        assert args.seed == 3
        assert args.r == 2

    def test_usage_error(self, capsys):
        assert main(["frobnicate"]) == 2
        assert main(["construct", "pyramid"]) == 2


class TestConstruct:
    """Test the construct subcommand."""

    def test_writes_code_file(self, tmp_path, capsys):
        out = tmp_path / "p.lrc"
        argv = ["construct", "pyramid", "--k", "4", "--r", "2", "--d", "4", "--q", "7"]
        assert main(argv + ["-o", str(out)]) == 0
        assert "pyramid [8, 4] over GF(7)" in capsys.readouterr().out
        assert load_code(out).n == 8

    def test_json_summary(self, tmp_path, capsys):
        out = tmp_path / "d4.lrc"
        argv = ["construct", "canonical-d4", "--k", "4", "--r", "2", "--q", "5"]
        assert main(argv + ["-o", str(out), "--json", "--verify"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["n"] == 8
        assert summary["distance"] == 4
        assert summary["path"] == str(out)

    def test_missing_parameter(self, tmp_path, capsys):
        out = tmp_path / "p.lrc"
        assert main(["construct", "pyramid", "--k", "4", "-o", str(out)]) == 2
        assert "--r" in capsys.readouterr().err
        assert not out.exists()

    def test_sampling_failure(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"budgets": {"sampling_retries": 3}}))
        argv = ["construct", "gpc", "--graph", "0,1;0,1", "--q", "2"]
        argv += ["-o", str(tmp_path / "g.lrc"), "--config", str(config)]
        assert main(argv) == 3


class TestAnalyze:
    def test_report(self, pyramid_file, capsys):
        assert main(["analyze", str(pyramid_file)]) == 0
        out = capsys.readouterr().out
        assert "distance: 4" in out
        assert "optimal: true" in out
        assert "localities: 2 2 2 2 2 2" in out

    def test_json(self, pyramid_file, capsys):
        assert main(["analyze", str(pyramid_file), "--json", "--r", "2"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["optimal"] is True
        assert report["bound"] == 4

    def test_output_independent_of_threads(self, pyramid_file, capsys):
        outputs = []
        for threads in ("1", "4"):
            argv = ["analyze", str(pyramid_file), "--json", "--threads", threads]
            assert main(argv) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_stale_metadata(self, tmp_path, capsys):
        path = tmp_path / "stale.lrc"
        save_code(build_pyramid(4, 2, 4, 7).with_metadata(distance=5), path)
        assert main(["analyze", str(path), "--verify"]) == 6
        assert "distance" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["analyze", str(tmp_path / "absent.lrc")]) == 2

    def test_bad_config(self, pyramid_file, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"budgets": {"no_such_budget": 1}}))
        assert main(["analyze", str(pyramid_file), "--config", str(config)]) == 2
        assert "Invalid configuration" in capsys.readouterr().err


class TestDecode:
    """Test the decode subcommand and its exit codes."""

    def test_recovers_word(self, pyramid_file, tmp_path, capsys):
        code = load_code(pyramid_file)
        word_file, word = _word_file(tmp_path, code, [1, 2, 3, 4], {0, 4, 6})
        assert main(["decode", str(pyramid_file), str(word_file)]) == 0
        assert capsys.readouterr().out.strip() == format_word(list(word))

    def test_writes_output(self, pyramid_file, tmp_path, capsys):
        code = load_code(pyramid_file)
        word_file, word = _word_file(tmp_path, code, [6, 5, 4, 3], {1})
        out = tmp_path / "decoded.txt"
        assert main(["decode", str(pyramid_file), str(word_file), "-o", str(out)]) == 0
        assert out.read_text().strip() == format_word(list(word))

    def test_undecodable(self, pyramid_file, tmp_path, capsys):
        code = load_code(pyramid_file)
        word_file, _ = _word_file(tmp_path, code, [1, 2, 3, 4], {0, 1, 4, 6, 7})
        assert main(["decode", str(pyramid_file), str(word_file)]) == 5
        assert capsys.readouterr().out.strip() == "UNDECODABLE"

    def test_undecodable_json(self, pyramid_file, tmp_path, capsys):
        code = load_code(pyramid_file)
        word_file, _ = _word_file(tmp_path, code, [1, 2, 3, 4], {0, 1, 4, 6, 7})
        assert main(["decode", str(pyramid_file), str(word_file), "--json"]) == 5
        outcome = json.loads(capsys.readouterr().out)
        assert outcome["success"] is False
        assert outcome["reason"]

    def test_inconsistent_word(self, pyramid_file, tmp_path):
        code = load_code(pyramid_file)
        word = list(encode(code, [1, 2, 3, 4]))
        word[7] = (word[7] + 1) % 7
        word[0] = None
        path = tmp_path / "word.txt"
        path.write_text(format_word(word) + "\n")
        assert main(["decode", str(pyramid_file), str(path)]) == 6

    def test_wrong_length(self, pyramid_file, tmp_path):
        path = tmp_path / "word.txt"
        path.write_text("1 2 3\n")
        assert main(["decode", str(pyramid_file), str(path)]) == 2


class TestGpcCheck:
    def test_sampled_graph(self, capsys):
        argv = ["gpc-check", "--graph", "0,1;2,3;0,1,2,3", "--q", "65537", "--no-sweep"]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert "general position: true" in out
        assert "parity localities: 2 2 4" in out
        assert "holds: true" in out

    def test_needs_input(self, capsys):
        assert main(["gpc-check"]) == 2


class TestSimulateRepair:
    def test_named_failure(self, pyramid_file, capsys):
        assert main(["simulate-repair", str(pyramid_file), "--failures", "1"]) == 0
        out = capsys.readouterr().out
        assert "local repairs: 1" in out
        assert "symbols read: 2" in out

    def test_json_trials(self, pyramid_file, capsys):
        argv = ["simulate-repair", str(pyramid_file), "--count", "2", "--trials", "4"]
        assert main(argv + ["--json", "--seed", "7"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert len(report["trials"]) == 4

    def test_bad_failure_list(self, pyramid_file):
        assert main(["simulate-repair", str(pyramid_file), "--failures", "a,b"]) == 2

    def test_budget_exit_code(self, pyramid_file, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"budgets": {"repair_subsets": 1}}))
        argv = ["simulate-repair", str(pyramid_file), "--failures", "6"]
        assert main(argv + ["--config", str(config)]) == 4
