import json
import os
import struct
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_field
from fracbouss import io
from fracbouss.diagnostics import ShellSpectrum
from fracbouss.region import RegionCell, RegionMap, find_witness, verify_witness
from fracbouss.solver import SimState
from fracbouss.spectral import Grid, SpectralField


def state(seed=0, n=16, t=0.25):
    rng = np.random.default_rng(seed)
    g = Grid(n)
    return SimState(random_field(g, rng), random_field(g, rng, mean_zero=False), t, 3)


class TestDump:
    def test_round_trip_is_bit_exact(self, tmp_path):
        s = state()
        path = tmp_path / "final.bin"
        io.dump_state(path, s, 0.8, 0.3)
        fields, meta = io.load_dump(path)
        assert meta == {"t": 0.25, "alpha": 0.8, "beta": 0.3, "n": 16}
        assert list(fields) == ["omega", "theta"]
        assert fields["omega"].coeffs.tobytes() == s.omega.coeffs.tobytes()
        assert fields["theta"].coeffs.tobytes() == s.theta.coeffs.tobytes()

    @given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([8, 16, 32]))
    def test_bytes_round_trip(self, seed, n, tmp_path_factory):
        s = state(seed, n)
        blob = io.dump_bytes({"omega": s.omega}, s.t, 1.5, 0.5)
        path = tmp_path_factory.mktemp("d") / "x.bin"
        path.write_bytes(blob)
        fields, _ = io.load_dump(path)
        assert np.array_equal(fields["omega"].coeffs, s.omega.coeffs)

    def test_layout(self):
        s = state(n=8)
        blob = io.dump_bytes({"omega": s.omega}, 1.0, 0.8, 0.3)
        magic, version, n, count, t, a, b = struct.unpack_from("<4sIIIddd", blob)
        assert (magic, version, n, count, t, a, b) == (b"FBSD", 1, 8, 1, 1.0, 0.8, 0.3)
        off = struct.calcsize("<4sIIIddd")
        assert blob[off : off + 8] == b"omega\0\0\0"
        # first record is the zero mode, second is ξ = (0, 1)
        xi1, xi2, re, im = struct.unpack_from("<iidd", blob, off + 8)
        assert (xi1, xi2) == (0, 0)
        assert complex(re, im) == s.omega.coeffs[0, 0]
        assert struct.unpack_from("<ii", blob, off + 8 + 24)[0:2] == (0, 1)
        assert len(blob) == off + 8 + 64 * 24

    def test_bad_magic(self, tmp_path):
        blob = bytearray(io.dump_bytes({"omega": state(n=8).omega}, 0.0, 1.0, 1.0))
        blob[:4] = b"XXXX"
        p = tmp_path / "bad.bin"
        p.write_bytes(bytes(blob))
        with pytest.raises(io.DumpFormatError):
            io.load_dump(p)

    def test_truncated(self, tmp_path):
        blob = io.dump_bytes({"omega": state(n=8).omega}, 0.0, 1.0, 1.0)
        p = tmp_path / "short.bin"
        for cut in (10, len(blob) - 1):
            p.write_bytes(blob[:cut])
            with pytest.raises(io.DumpFormatError):
                io.load_dump(p)

    def test_mixed_grids(self):
        with pytest.raises(ValueError):
            io.dump_bytes({"a": SpectralField.zeros(Grid(8)), "b": SpectralField.zeros(Grid(16))}, 0, 1, 1)

    def test_long_name(self):
        with pytest.raises(ValueError):
            io.dump_bytes({"temperature": SpectralField.zeros(Grid(8))}, 0, 1, 1)


class TestCsv:
    @pytest.mark.parametrize(
        "value, text",
        [
            (3, "3"),
            (np.int64(-2), "-2"),
            (True, "1"),
            (False, "0"),
            (F(3, 10), "3/10"),
            (0.1, "0.10000000000000001"),
            (1e-300, "1e-300"),
            (float("inf"), "inf"),
        ],
    )
    def test_format_value(self, value, text):
        assert io.format_value(value) == text

    @given(x=st.floats(allow_nan=False, allow_infinity=False))
    def test_floats_round_trip(self, x):
        assert float(io.format_value(x)) == x

    def test_csv_text(self):
        text = io.csv_text(["a", "b"], [[1, 0.5], [2, None]])
        assert text == "a,b\n1,0.5\n2,\n"

    def test_row_width(self):
        with pytest.raises(ValueError):
            io.csv_text(["a", "b"], [[1]])

    def test_region_csv(self):
        w = find_witness(F(4, 5), F(3, 10))
        rmap = RegionMap([RegionCell(F(4, 5), F(3, 10), True, w), RegionCell(F(1, 2), F(1, 2), False, None)])
        lines = io.region_csv_text(rmap).splitlines()
        assert lines[0] == ",".join(io.REGION_COLUMNS)
        assert lines[1].startswith("4/5,3/10,1,")
        assert lines[2] == "1/2,1/2,0" + "," * len(io.REGION_COLUMNS[3:])

    def test_shells_csv(self):
        sp = ShellSpectrum(np.array([-1, 0, 1]), np.array([1.0, 2.0, 3.0]), np.array([0.5, 1.0, 1.5]))
        text = io.shells_csv_text(sp, [0.0, 1.0])
        assert text.splitlines() == [
            "j,L2,Linf,weight_s0,weight_s1",
            "-1,1,0.5,1,0.5",
            "0,2,1,1,1",
            "1,3,1.5,1,2",
        ]


class TestWitnessJson:
    def test_round_trip(self):
        w = find_witness(F(4, 5), F(3, 10))
        doc = json.loads(io.witness_json(w))
        assert io.witness_from_dict(doc) == w
        assert verify_witness(io.witness_from_dict(doc)) == []
        assert doc["alpha"] == [4, 5] and doc["m"] == [25, 8]
        assert set(doc["derived"]) == {"mu", "varsigma", "lambda", "l", "s1", "s2"}

    def test_stable_text(self):
        w = find_witness(F(4, 5), F(3, 10))
        assert io.witness_json(w) == io.witness_json(find_witness(F(4, 5), F(3, 10)))
        assert io.witness_json(w).endswith("}\n")


class TestAtomic:
    def test_writes_and_replaces(self, tmp_path):
        p = tmp_path / "out.txt"
        io.write_atomic(p, "one")
        io.write_atomic(p, b"two")
        assert p.read_bytes() == b"two"
        assert os.listdir(tmp_path) == ["out.txt"]

    def test_failure_leaves_nothing(self, tmp_path, monkeypatch):
        p = tmp_path / "out.txt"

        def boom(*a, **k):
            raise OSError("disk full")

        monkeypatch.setattr(io.os, "replace", boom)
        with pytest.raises(OSError):
            io.write_atomic(p, "data")
        assert os.listdir(tmp_path) == []
