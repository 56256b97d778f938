"""Tests for cli/main.py - the ssm2d command line."""

import numpy as np
import pytest

from ssm2d.cli import main
from ssm2d.cli.bench import cmd_bench
from ssm2d.cli.commands import cmd_rank
from ssm2d.cli.config_file import load_param_file
from ssm2d.cli.verify import cmd_verify
from ssm2d.constants import (
    EXIT_BAD_ARGUMENTS,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_SHAPE_MISMATCH,
)
from ssm2d.kernel.export import parse_csv
from ssm2d.layer import apply_layer, read_tensor, tensor_to_bytes, write_tensor
from ssm2d.params import pascal_kernel

ZERO_IO_CONFIG = """\
field = real
n = 2
mode = normalized
seed = 4
b1 = 0, 0
b2 = 0, 0
c1 = 0, 0
c2 = 0, 0
"""


def _report(text: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in text.splitlines())


class TestKernelCommand:
    """Tests for `ssm2d kernel`."""

    def test_pascal_csv(self, pascal_config, temp_dir, capsys):
        """The Pascal file exports the lower Pascal matrix."""
        out = temp_dir / "k.csv"
        assert main(["kernel", str(pascal_config), "--size", "5x5", "--out", str(out)]) == EXIT_OK
        np.testing.assert_array_equal(parse_csv(out.read_text()), pascal_kernel(5))
        assert _report(capsys.readouterr().out)["size"] == "5x5"

    def test_zero_a_gives_delta(self, delta_config, temp_dir):
        """Zero A exports a unit delta."""
        out = temp_dir / "k.csv"
        assert main(["kernel", str(delta_config), "--size", "4x3", "--out", str(out)]) == EXIT_OK
        expected = np.zeros((4, 3))
        expected[0, 0] = 1.0
        np.testing.assert_array_equal(parse_csv(out.read_text()), expected)

    def test_deterministic(self, pascal_config, temp_dir):
        """Two runs write identical files."""
        first, second = temp_dir / "a.bin", temp_dir / "b.bin"
        for out in (first, second):
            main(["kernel", str(pascal_config), "--size", "6x4", "--format", "bin", "--out", str(out)])
        assert first.read_bytes() == second.read_bytes()

    def test_group_out_of_range(self, pascal_config, temp_dir):
        """Asking for a missing group is a shape error."""
        args = ["kernel", str(pascal_config), "--size", "3x3", "--out", str(temp_dir / "k.csv")]
        assert main([*args, "--group", "1"]) == EXIT_SHAPE_MISMATCH

    def test_missing_config(self, temp_dir):
        """Unreadable files exit with the I/O code."""
        args = ["kernel", str(temp_dir / "absent.cfg"), "--size", "3x3", "--out", str(temp_dir / "k")]
        assert main(args) == EXIT_IO_ERROR

    @pytest.mark.parametrize("size", ["0x4", "axb", "3x3x3"])
    def test_bad_size(self, pascal_config, temp_dir, size):
        """Malformed or empty sizes are argument errors."""
        args = ["kernel", str(pascal_config), "--size", size, "--out", str(temp_dir / "k")]
        assert main(args) == EXIT_BAD_ARGUMENTS


class TestApplyCommand:
    """Tests for `ssm2d apply`."""

    def test_delta_doubles_input(self, delta_config, temp_dir, rng):
        """Delta kernel plus D = 1 doubles the tensor."""
        x = rng.standard_normal((2, 4, 5, 1))
        src, out = temp_dir / "x.bin", temp_dir / "y.bin"
        write_tensor(src, x)
        assert main(["apply", str(src), str(delta_config), "--out", str(out)]) == EXIT_OK
        np.testing.assert_allclose(read_tensor(out), 2.0 * x, atol=1e-13)

    def test_matches_library(self, temp_dir, rng):
        """The command writes exactly what apply_layer returns."""
        config = temp_dir / "layer.cfg"
        config.write_text("n = 3\nh = 4\nn_ssm = 2\ndirections = 2\nseed = 11\n", encoding="utf-8")
        x = rng.standard_normal((2, 6, 5, 4))
        src, out = temp_dir / "x.bin", temp_dir / "y.bin"
        write_tensor(src, x)
        assert main(["apply", str(src), str(config), "--out", str(out)]) == EXIT_OK

        cfg, params = load_param_file(config).build(6, 5)
        np.testing.assert_array_equal(read_tensor(out), apply_layer(x, params, cfg))

    def test_truncated_tensor(self, delta_config, temp_dir):
        """A truncated tensor file is a format error."""
        src = temp_dir / "x.bin"
        src.write_bytes(tensor_to_bytes(np.ones((1, 3, 3, 1)))[:-4])
        args = ["apply", str(src), str(delta_config), "--out", str(temp_dir / "y.bin")]
        assert main(args) == EXIT_BAD_ARGUMENTS

    def test_channel_mismatch(self, delta_config, temp_dir):
        """Tensor channels must match the file's h."""
        src = temp_dir / "x.bin"
        write_tensor(src, np.ones((1, 3, 3, 2)))
        args = ["apply", str(src), str(delta_config), "--out", str(temp_dir / "y.bin")]
        assert main(args) == EXIT_SHAPE_MISMATCH


class TestRankCommand:
    """Tests for `ssm2d rank`."""

    def test_separable_rank_one(self, capsys):
        """Random separable kernels have rank 1."""
        assert main(["rank", "--s4nd", "--size", "16x16", "--n", "4"]) == EXIT_OK
        assert _report(capsys.readouterr().out)["rank"] == "1"

    def test_pascal_full_rank(self, pascal_config, capsys):
        """The Pascal kernel is full rank."""
        assert main(["rank", str(pascal_config), "--size", "5x5"]) == EXIT_OK
        assert _report(capsys.readouterr().out)["rank"] == "5"

    def test_zero_io_rank_zero(self, temp_dir):
        """B = C = 0 gives the zero kernel."""
        path = temp_dir / "zero.cfg"
        path.write_text(ZERO_IO_CONFIG, encoding="utf-8")
        assert cmd_rank((6, 6), path).values["rank"] == 0

    def test_needs_source(self):
        """Without a file or --s4nd there is nothing to measure."""
        assert main(["rank", "--size", "4x4"]) == EXIT_BAD_ARGUMENTS


class TestVerifyCommand:
    """Tests for `ssm2d verify`."""

    def test_small_run_passes(self, capsys):
        """A small suite passes and prints the same report twice."""
        args = ["verify", "--trials", "2", "--max-size", "6"]
        assert main(args) == EXIT_OK
        first = capsys.readouterr().out
        assert main(args) == EXIT_OK
        assert capsys.readouterr().out == first
        assert _report(first)["failed"] == "0"

    def test_default_example_covers_complex(self, capsys):
        """Seed 0 on grids up to 12x12 reaches every field and mode and still passes."""
        report = cmd_verify(seed=0, max_size=12, trials=18)
        assert report.ok, report.failures
        assert report.values["oracle.status"] == "pass"
        assert report.values["oracle.max_error"] <= 1e-10
        args = ["verify", "--seed", "0", "--max-size", "12", "--trials", "18"]
        assert main(args) == EXIT_OK
        assert _report(capsys.readouterr().out)["oracle.status"] == "pass"

    def test_report_seeded(self):
        """Different seeds give different reports."""
        a = cmd_verify(seed=1, max_size=5, trials=1)
        b = cmd_verify(seed=2, max_size=5, trials=1)
        assert a.ok and b.ok
        assert a.digest != b.digest

    def test_zero_trials(self):
        """At least one trial is required."""
        assert main(["verify", "--trials", "0"]) == EXIT_BAD_ARGUMENTS


class TestBenchCommand:
    """Tests for `ssm2d bench`."""

    def test_zero_reps(self):
        """At least one repetition is required."""
        assert main(["bench", "--reps", "0"]) == EXIT_BAD_ARGUMENTS

    def test_small_run(self):
        """A tiny benchmark reports every phase."""
        report = cmd_bench([(4, 4)], n=2, n_ssm=1, h=2, batch=1, reps=1)
        assert {"4x4.scan", "4x4.cache", "4x4.compile", "4x4.forward"} <= set(report.timings)


class TestInfoAndParser:
    """Tests for `ssm2d info` and argument handling."""

    def test_info(self, pascal_config, capsys):
        """info describes the file's layer."""
        assert main(["info", str(pascal_config), "--size", "4x4"]) == EXIT_OK
        report = _report(capsys.readouterr().out)
        assert report["mode"] == "unnormalized"
        assert report["parameters"] == "9"
        assert "group0.digest" in report

    def test_unknown_command(self):
        """Unknown commands are argument errors."""
        assert main(["transmogrify"]) == EXIT_BAD_ARGUMENTS

    def test_version(self, capsys):
        """--version exits cleanly."""
        assert main(["--version"]) == EXIT_OK
        assert "ssm2d" in capsys.readouterr().out
