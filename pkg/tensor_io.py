"""
Tensor I/O
Reads and writes T3v1 tensor files and trajectory archives (directories of T3v1 files plus manifest.txt).

T3v1 layout:
    line 1           t3 n m r
    then r blocks    n lines of m whitespace-separated values (17 significant digits)
    blank line between slices; lines starting with '#' are comments
"""

import logging
import os

import numpy as np

from tpds.errors import TensorFormatError
from tpds.tensor3 import Tensor3

logger = logging.getLogger(__name__)

MANIFEST = 'manifest.txt'


def format_t3(t, comment=None):
    """
    Render a tensor in T3v1.

    Args:
        t (Tensor3): tensor to render
        comment (str, optional): written as '#' lines before the header

    Returns:
        str: file contents, '\\n' line endings
    """
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"t3 {t.n} {t.m} {t.r}")
    for k in range(t.r):
        if k > 0:
            lines.append("")
        for row in t.data[k]:
            lines.append(" ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_t3(text, source='<string>'):
    """
    Parse T3v1 text. Accepts '\\n' and '\\r\\n' line endings.

    Args:
        text (str): file contents
        source (str): name used in diagnostics

    Returns:
        Tensor3: the parsed tensor
    """
    header = None
    rows = []
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        last_line = lineno
        tokens = line.split()

        if header is None:
            if len(tokens) != 4 or tokens[0] != 't3':
                raise TensorFormatError(source, lineno, f"expected header 't3 n m r', got {line!r}")
            try:
                header = tuple(int(tok) for tok in tokens[1:])
            except ValueError:
                raise TensorFormatError(source, lineno, f"dimensions must be integers, got {line!r}")
            if min(header) < 1:
                raise TensorFormatError(source, lineno, f"dimensions must be positive, got {header}")
            continue

        n, m, r = header
        if len(rows) == n * r:
            raise TensorFormatError(source, lineno, f"unexpected data after {n * r} rows")
        if len(tokens) != m:
            raise TensorFormatError(source, lineno, f"expected {m} values, found {len(tokens)}")
        try:
            rows.append([float(tok) for tok in tokens])
        except ValueError:
            raise TensorFormatError(source, lineno, f"non-numeric value in {line!r}")

    if header is None:
        raise TensorFormatError(source, 0, "missing 't3 n m r' header")
    n, m, r = header
    if len(rows) != n * r:
        raise TensorFormatError(source, last_line, f"truncated: expected {n * r} rows, found {len(rows)}")

    return Tensor3(np.array(rows).reshape(r, n, m))


def read_t3(path):
    """Read one T3v1 file."""
    with open(path, 'r', encoding='utf-8', newline='') as f:
        return parse_t3(f.read(), source=str(path))


def write_t3(path, t, comment=None):
    """Write one T3v1 file (byte-identical output for identical tensors)."""
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(format_t3(t, comment))


# ===== Archives =====

def write_archive(directory, tensors, meta):
    """
    Write a trajectory archive: one T3v1 file per tensor plus manifest.txt.

    Args:
        directory (str): target directory (created if missing)
        tensors (dict): name -> Tensor3, written as <name>.t3 in insertion order
        meta (dict): key -> value pairs (dims, seed, mode, ...)

    Returns:
        list: paths written, manifest last
    """
    os.makedirs(directory, exist_ok=True)
    written = []
    manifest = [f"{key}={value}" for key, value in meta.items()]

    for name, t in tensors.items():
        filename = f"{name}.t3"
        path = os.path.join(directory, filename)
        write_t3(path, t)
        manifest.append(f"file {filename} {t.n} {t.m} {t.r}")
        written.append(path)

    manifest_path = os.path.join(directory, MANIFEST)
    with open(manifest_path, 'w', encoding='utf-8', newline='\n') as f:
        f.write("\n".join(manifest) + "\n")
    written.append(manifest_path)

    logger.info(f"Wrote {len(tensors)} tensor(s) to {directory}")
    return written


def read_manifest(directory):
    """
    Parse manifest.txt.

    Returns:
        tuple: (meta dict, ordered list of (filename, (n, m, r)))
    """
    path = os.path.join(directory, MANIFEST)
    meta, files = {}, []
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, raw in enumerate(f.read().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            if line.startswith('file '):
                parts = line.split()
                if len(parts) != 5:
                    raise TensorFormatError(path, lineno, f"expected 'file NAME n m r', got {line!r}")
                files.append((parts[1], tuple(int(p) for p in parts[2:])))
            elif '=' in line:
                key, value = line.split('=', 1)
                meta[key] = value
            else:
                raise TensorFormatError(path, lineno, f"unrecognized manifest line {line!r}")
    return meta, files


def read_archive(directory):
    """
    Read every tensor listed in an archive manifest.

    Returns:
        tuple: (dict name -> Tensor3 in manifest order, meta dict)
    """
    meta, files = read_manifest(directory)
    tensors = {}
    for filename, dims in files:
        t = read_t3(os.path.join(directory, filename))
        if t.dims != dims:
            raise TensorFormatError(filename, 1, f"manifest lists dims {dims}, file has {t.dims}")
        tensors[os.path.splitext(filename)[0]] = t
    return tensors, meta
