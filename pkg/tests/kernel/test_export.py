"""Tests for kernel/export.py - CSV, PGM and binary kernel files."""

import struct

import numpy as np
import pytest

from ssm2d.exceptions import BadMagic, FormatError, TruncatedPayload
from ssm2d.kernel import KernelFormat, kernel_digest, read_kernel_bin, write_kernel
from ssm2d.kernel.export import from_bytes, parse_csv, to_bytes, to_csv, to_pgm
from ssm2d.models import Kernel2D
from ssm2d.params import pascal_kernel


class TestCsv:
    """Tests for CSV export."""

    def test_rows_of_decimals(self):
        """One line per kernel row."""
        text = to_csv(np.array([[1.0, 0.5], [0.25, -2.0]]))
        assert text == "1.0,0.5\n0.25,-2.0\n"

    def test_exact_values(self, rng):
        """repr formatting keeps every bit."""
        values = rng.standard_normal((3, 4))
        np.testing.assert_array_equal(parse_csv(to_csv(values)), values)

    def test_complex_kernel_writes_real_part(self):
        """Only the real part is exported."""
        kernel = Kernel2D(values=np.array([[1 + 1j, 2 - 3j]]))
        assert to_csv(kernel) == "1.0,2.0\n"


class TestPgm:
    """Tests for PGM export."""

    def test_header_and_scale(self):
        """P2 header, scale comment, width height, max gray."""
        lines = to_pgm(np.array([[0.0, 1.0], [0.5, 1.0]])).splitlines()
        assert lines[0] == "P2"
        assert lines[1].startswith("#")
        assert "0 = 0.0" in lines[1] and "255 = 1.0" in lines[1]
        assert lines[2] == "2 2"
        assert lines[3] == "255"
        assert lines[4:] == ["0 255", "128 255"]

    def test_constant_kernel(self):
        """A constant kernel maps to zeros."""
        lines = to_pgm(np.full((1, 3), 7.0)).splitlines()
        assert lines[-1] == "0 0 0"

    def test_width_first(self):
        """Header gives width (L2) then height (L1)."""
        assert to_pgm(np.zeros((2, 5))).splitlines()[2] == "5 2"


class TestBinary:
    """Tests for the binary kernel format."""

    def test_layout(self):
        """Magic, two uint32 extents, row-major little-endian f64."""
        data = to_bytes(np.array([[1.0, 2.0, 3.0]]))
        assert data[:8] == b"SSM2DKRN"
        assert struct.unpack("<II", data[8:16]) == (1, 3)
        assert struct.unpack("<3d", data[16:]) == (1.0, 2.0, 3.0)

    def test_read_back(self, rng):
        """from_bytes returns the written values."""
        values = rng.standard_normal((4, 2))
        np.testing.assert_array_equal(from_bytes(to_bytes(values)), values)

    def test_bad_magic(self):
        """Other magics are rejected."""
        data = b"NOTAKERN" + to_bytes(np.zeros((1, 1)))[8:]
        with pytest.raises(BadMagic):
            from_bytes(data)

    def test_truncated(self):
        """Short payloads are rejected."""
        with pytest.raises(TruncatedPayload):
            from_bytes(to_bytes(np.zeros((2, 2)))[:-1])

    def test_short_header(self):
        """Files shorter than the header are rejected."""
        with pytest.raises(TruncatedPayload):
            from_bytes(b"SSM2D")

    def test_zero_extent(self):
        """Zero extents are a format error."""
        with pytest.raises(FormatError):
            from_bytes(b"SSM2DKRN" + struct.pack("<II", 0, 3))


class TestWriteKernel:
    """Tests for write_kernel / read_kernel_bin."""

    @pytest.mark.parametrize("fmt", list(KernelFormat))
    def test_deterministic(self, temp_dir, fmt):
        """Writing twice gives byte-identical files."""
        kernel = Kernel2D(values=pascal_kernel(5))
        first, second = temp_dir / "a", temp_dir / "b"
        write_kernel(kernel, fmt, first)
        write_kernel(kernel, fmt, second)
        assert first.read_bytes() == second.read_bytes()

    def test_bin_round_trip(self, temp_dir):
        """read_kernel_bin reads what write_kernel wrote."""
        path = temp_dir / "k.bin"
        write_kernel(pascal_kernel(4), "bin", path)
        np.testing.assert_array_equal(read_kernel_bin(path), pascal_kernel(4))


class TestKernelDigest:
    """Tests for kernel_digest."""

    def test_hex_digest(self):
        """BLAKE3 digests are 64 hex characters."""
        assert len(kernel_digest(np.zeros((2, 2)))) == 64

    def test_sensitive_to_values(self):
        """Any changed value changes the digest."""
        values = pascal_kernel(3)
        changed = values.copy()
        changed[2, 2] = 2.0
        assert kernel_digest(values) != kernel_digest(changed)

    def test_same_for_kernel_and_array(self):
        """Kernel2D and its real array hash the same."""
        values = pascal_kernel(3)
        assert kernel_digest(Kernel2D(values=values)) == kernel_digest(values)
