"""CodeFile: a plain-text generator matrix with rows in hex.

Format::

    # optional comments
    n=64 k=32
    0a3f...
    ...

Each row has ceil(n/4) hex digits; coordinate 1 is the most significant
bit of the first digit and the trailing pad bits are zero.
"""

from __future__ import annotations

from pathlib import Path

from .codes import LinearCode
from .gf2 import BitMatrix, BitVector


class CodeFileError(ValueError):
    pass


def vector_to_hex(v: BitVector) -> str:
    digits = -(-v.length // 4)
    s = v.to_string().ljust(4 * digits, "0")
    return f"{int(s, 2):0{digits}x}" if digits else ""


def hex_to_vector(h: str, n: int) -> BitVector:
    digits = -(-n // 4)
    h = h.strip().lower()
    if len(h) != digits:
        raise CodeFileError(f"row {h!r} has {len(h)} hex digits, expected {digits}")
    try:
        s = bin(int(h, 16))[2:].zfill(4 * digits)
    except ValueError:
        raise CodeFileError(f"row {h!r} is not hexadecimal") from None
    if "1" in s[n:]:
        raise CodeFileError(f"row {h!r} has nonzero pad bits")
    return BitVector.from_string(s[:n])


def dumps(c: LinearCode) -> str:
    lines = []
    if c.name:
        lines.append(f"# {c.name}")
    lines.append(f"n={c.n} k={c.k}")
    lines += [vector_to_hex(r) for r in c.rows()]
    return "\n".join(lines) + "\n"


def loads(text: str, name: str | None = None) -> LinearCode:
    header = None
    rows: list[BitVector] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if name is None and line.startswith("#") and header is None and line[1:].strip():
                name = line[1:].strip()
            continue
        if header is None:
            try:
                fields = dict(tok.split("=", 1) for tok in line.split())
                header = (int(fields["n"]), int(fields["k"]))
            except (ValueError, KeyError):
                raise CodeFileError(f"line {lineno}: expected header 'n=<int> k=<int>'") from None
            continue
        try:
            rows.append(hex_to_vector(line, header[0]))
        except CodeFileError as exc:
            raise CodeFileError(f"line {lineno}: {exc}") from None
    if header is None:
        raise CodeFileError("missing 'n=... k=...' header")
    n, k = header
    if len(rows) != k:
        raise CodeFileError(f"header says k={k} but {len(rows)} rows follow")
    code = LinearCode(BitMatrix.from_rows(rows, n), name=name)
    if code.k != k:
        raise CodeFileError(f"rows have rank {code.k}, header says k={k}")
    return code


def read(path: str | Path) -> LinearCode:
    return loads(Path(path).read_text())


def write(c: LinearCode, path: str | Path) -> None:
    Path(path).write_text(dumps(c))
