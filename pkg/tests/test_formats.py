import numpy as np
import pytest

from varjump.errors import DomainError
from varjump.fields import Grid, SampledField, band_limited_field, convolution_family
from varjump.formats import parse_sequence, read_blob, read_field_csv, write_blob, write_field_csv
from varjump.kernels import lacunary_scales, make_kernel


@pytest.mark.parametrize("grid", [Grid(1, 16, 128), Grid(2, 8, 64)], ids=["1d", "2d"])
def test_field_csv_roundtrip(tmp_path, grid):
    f = band_limited_field(grid, np.random.default_rng(0))
    back = read_field_csv(write_field_csv(tmp_path / "f.csv", f))
    assert back.grid == grid
    assert np.array_equal(back.values, f.values)


def test_integer_fields_written_as_integers(tmp_path):
    grid = Grid(1, 4, 64)
    path = write_field_csv(tmp_path / "j.csv", SampledField(grid, np.arange(64)))
    assert path.read_text().splitlines()[3].endswith(",2")


def test_blob_roundtrip(tmp_path):
    grid = Grid(1, 16, 128)
    f = band_limited_field(grid, np.random.default_rng(1))
    write_blob(tmp_path / "f", f.values, grid)
    back, header = read_blob(tmp_path / "f")
    assert np.array_equal(back.values, f.values) and header["dtype"] == "float64-le"

    scales = lacunary_scales(2, 1 / 16, 3)
    fam = convolution_family(f, make_kernel("gaussian"), scales)
    write_blob(tmp_path / "fam", fam.values, grid, scales)
    back, _ = read_blob(tmp_path / "fam")
    assert back.scales == scales and np.array_equal(back.values, fam.values)
    assert (tmp_path / "fam.bin").stat().st_size == 3 * 128 * 8


class TestSequences:
    def test_one_column(self):
        seq = parse_sequence("0\n1\n0\n")
        assert seq.values == (0.0, 1.0, 0.0) and seq.indices == (1.0, 2.0, 3.0)

    def test_two_columns_with_header_and_comments(self):
        seq = parse_sequence("t,value\n# a comment\n0.5, 2\n1.5, -1  # inline\n\n")
        assert seq.indices == (0.5, 1.5) and seq.values == (2.0, -1.0)

    @pytest.mark.parametrize("text", ["1\nx\n", "1,2,3\n", "1\n2,3\n", "2,0\n1,1\n"])
    def test_bad_input(self, text):
        with pytest.raises(DomainError):
            parse_sequence(text)

    def test_empty(self):
        assert parse_sequence("").values == ()
