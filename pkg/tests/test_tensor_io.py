import numpy as np
import pytest

from tensor_io import format_t3, parse_t3, read_archive, read_t3, write_archive, write_t3
from tpds.datagen import random_tensor
from tpds.errors import TensorFormatError
from tpds.tensor3 import Tensor3


def test_format_layout():
    t = Tensor3.from_slices([[[1.0, 2.0]], [[0.1, -3.5]]])
    text = format_t3(t, comment="two slices")
    assert text == "# two slices\nt3 1 2 2\n1 2\n\n0.10000000000000001 -3.5\n"


def test_written_values_are_exact(tmp_path):
    t = random_tensor(3, 4, 5, seed=1)
    path = tmp_path / "x.t3"
    write_t3(path, t)
    assert np.array_equal(read_t3(path).data, t.data)


def test_parse_accepts_crlf_and_comments():
    text = "# made by hand\r\nt3 2 1 2\r\n1\r\n2\r\n\r\n# second slice\r\n3\r\n4\r\n"
    t = parse_t3(text)
    assert t.dims == (2, 1, 2)
    assert np.array_equal(t.frontal_slice(2), [[3.0], [4.0]])


@pytest.mark.parametrize('text, line, fragment', [
    ("", 0, "missing"),
    ("t4 1 1 1\n1\n", 1, "header"),
    ("t3 1 x 1\n1\n", 1, "integers"),
    ("t3 0 1 1\n", 1, "positive"),
    ("t3 2 2 1\n1 2\n3\n", 3, "expected 2 values"),
    ("t3 1 1 1\nabc\n", 2, "non-numeric"),
    ("t3 2 1 2\n1\n2\n\n3\n", 5, "truncated"),
    ("t3 1 1 1\n1\n2\n", 3, "unexpected data"),
])
def test_malformed_files_name_the_line(text, line, fragment):
    with pytest.raises(TensorFormatError) as excinfo:
        parse_t3(text, source="bad.t3")
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"bad.t3:{line}:")
    assert fragment in str(excinfo.value)


def test_archive_round_trip(tmp_path):
    tensors = {'x0': random_tensor(2, 3, 4, seed=1), 'x1': random_tensor(2, 3, 4, seed=2)}
    written = write_archive(tmp_path / "run", tensors, {'seed': 1, 'mode': 'random'})
    assert [p.rsplit('/', 1)[-1] for p in map(str, written)] == ['x0.t3', 'x1.t3', 'manifest.txt']

    manifest = (tmp_path / "run" / "manifest.txt").read_text()
    assert manifest == "seed=1\nmode=random\nfile x0.t3 2 3 4\nfile x1.t3 2 3 4\n"

    back, meta = read_archive(tmp_path / "run")
    assert list(back) == ['x0', 'x1']
    assert meta == {'seed': '1', 'mode': 'random'}
    assert np.array_equal(back['x1'].data, tensors['x1'].data)


def test_archive_dimension_mismatch(tmp_path):
    write_archive(tmp_path, {'x0': random_tensor(2, 3, 4, seed=1)}, {})
    (tmp_path / "manifest.txt").write_text("file x0.t3 2 3 5\n")
    with pytest.raises(TensorFormatError):
        read_archive(tmp_path)
