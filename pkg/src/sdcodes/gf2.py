"""Bit-packed vectors and matrices over GF(2).

Coordinates are 0-based in code.  Text renderings (bitstrings, hex rows,
1-based supports) always put coordinate 1 first / in the most significant
bit, which is the convention of the printed tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K

WORD = 64

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def nwords(n: int) -> int:
    return max(1, (n + WORD - 1) // WORD)


def popcount_portable(words: np.ndarray) -> np.ndarray:
    """SWAR popcount of a uint64 array (elementwise)."""
    x = np.asarray(words, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = x - ((x >> np.uint64(1)) & _M1)
        x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
        x = (x + (x >> np.uint64(4))) & _M4
        return ((x * _H01) >> np.uint64(56)).astype(np.int64)


def popcount_native(words: np.ndarray) -> np.ndarray:
    """Row popcounts of a 2-D uint64 array using the hardware instruction."""
    a = np.ascontiguousarray(words, dtype=np.uint64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return K.popcount_array(a)


def int_to_words(value: int, n: int) -> np.ndarray:
    nw = nwords(n)
    mask = (1 << WORD) - 1
    return np.array([(value >> (WORD * i)) & mask for i in range(nw)], dtype=np.uint64)


def words_to_int(words: Sequence[int]) -> int:
    value = 0
    for i, w in enumerate(words):
        value |= int(w) << (WORD * i)
    return value


@dataclass(frozen=True)
class BitVector:
    """An immutable binary vector; bit ``j`` of ``value`` is coordinate j."""

    length: int
    value: int = 0

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("BitVector length must be positive")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits beyond the vector length")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int], one_based: bool = True) -> "BitVector":
        value = 0
        off = 1 if one_based else 0
        for i in support:
            j = i - off
            if not 0 <= j < n:
                raise ValueError(f"coordinate {i} out of range for length {n}")
            value ^= 1 << j
        return cls(n, value)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse ``"0110..."`` with coordinate 1 first."""
        s = s.strip().strip("()")
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {s!r}")
        value = 0
        for j, ch in enumerate(s):
            if ch == "1":
                value |= 1 << j
        return cls(len(s), value)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        value = 0
        for j, b in enumerate(bits):
            if b:
                value |= 1 << j
        return cls(len(bits), value)

    @classmethod
    def from_words(cls, words: Sequence[int], n: int) -> "BitVector":
        return cls(n, words_to_int(words) & ((1 << n) - 1))

    def words(self) -> np.ndarray:
        return int_to_words(self.value, self.length)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def support(self, one_based: bool = True) -> list[int]:
        off = 1 if one_based else 0
        out = []
        v = self.value
        while v:
            low = v & -v
            out.append(low.bit_length() - 1 + off)
            v ^= low
        return out

    def bits(self) -> np.ndarray:
        return np.array([(self.value >> j) & 1 for j in range(self.length)], dtype=np.uint8)

    def to_string(self) -> str:
        return "".join("1" if (self.value >> j) & 1 else "0" for j in range(self.length))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.value >> j) & 1

    def _check(self, other: "BitVector") -> None:
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.value ^ other.value)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.value & other.value)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def permute(self, perm: Sequence[int]) -> "BitVector":
        """Move coordinate j to position perm[j]."""
        value = 0
        for j in self.support(one_based=False):
            value |= 1 << perm[j]
        return BitVector(self.length, value)

    def __repr__(self) -> str:
        return f"BitVector({self.to_string()})"


class BitMatrix:
    """Immutable packed binary matrix of shape (rows, cols)."""

    __slots__ = ("words", "cols")

    def __init__(self, words: np.ndarray, cols: int):
        a = np.array(words, dtype=np.uint64, copy=True)
        if a.ndim != 2:
            a = a.reshape(-1, nwords(cols))
        if a.shape[1] != nwords(cols):
            raise ValueError("word count does not match column count")
        # trailing bits must stay clear
        tail = cols % WORD
        if tail and a.size and np.any(a[:, -1] >> np.uint64(tail)):
            raise ValueError("bits set beyond the column count")
        a.setflags(write=False)
        self.words = a
        self.cols = cols

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, nwords(cols)), np.uint64), cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_rows([BitVector(n, 1 << i) for i in range(n)], n)

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = rows[0].length
        for r in rows:
            if r.length != cols:
                raise ValueError("rows must share the same length")
        a = np.zeros((len(rows), nwords(cols)), np.uint64)
        for i, r in enumerate(rows):
            a[i] = r.words()
        return cls(a, cols)

    @classmethod
    def from_bits(cls, bits) -> "BitMatrix":
        b = np.asarray(bits, dtype=np.uint8)
        if b.ndim != 2:
            raise ValueError("expected a 2-D array of bits")
        rows, cols = b.shape
        nw = nwords(cols)
        padded = np.zeros((rows, nw * WORD), np.uint8)
        padded[:, :cols] = b & 1
        packed = np.packbits(padded.reshape(rows, nw, WORD), axis=2, bitorder="little")
        words = packed.view(np.uint64).reshape(rows, nw) if rows else np.zeros((0, nw), np.uint64)
        if words.dtype.byteorder == ">":  # pragma: no cover - big-endian hosts
            words = words.byteswap()
        return cls(words, cols)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_rows([BitVector.from_string(s) for s in rows])

    # views --------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector.from_words(self.words[i], self.cols)

    def row_vectors(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def to_bits(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), np.uint8)
        raw = np.ascontiguousarray(self.words).view(np.uint8).reshape(self.rows, -1)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        return bits[:, : self.cols]

    def row_weights(self) -> np.ndarray:
        return popcount_native(self.words) if self.rows else np.zeros(0, np.int64)

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_bits(self.to_bits().T)

    def submatrix(self, cols: Sequence[int]) -> "BitMatrix":
        return BitMatrix.from_bits(self.to_bits()[:, list(cols)])

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """Move column j to position perm[j]."""
        bits = self.to_bits()
        out = np.zeros_like(bits)
        out[:, list(perm)] = bits
        return BitMatrix.from_bits(out)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return BitMatrix(np.vstack([self.words, other.words]), self.cols)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.rows != self.rows:
            raise ValueError("row mismatch")
        return BitMatrix.from_bits(np.hstack([self.to_bits(), other.to_bits()]))

    # arithmetic ---------------------------------------------------------
    def mul_vec(self, v: BitVector) -> BitVector:
        """Return m·vᵀ as a vector of length ``rows``."""
        if v.length != self.cols:
            raise ValueError("dimension mismatch")
        if self.rows == 0:
            raise ValueError("matrix has no rows")
        par = popcount_native(self.words & v.words()) & 1
        return BitVector.from_bits(par)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a = self.to_bits().astype(np.int64)
        b = other.to_bits().astype(np.int64)
        return BitMatrix.from_bits((a @ b) & 1)

    def is_zero(self) -> bool:
        return not np.any(self.words)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.cols == other.cols and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        body = "\n ".join(self.row(i).to_string() for i in range(min(self.rows, 8)))
        more = " ..." if self.rows > 8 else ""
        return f"BitMatrix({self.rows}x{self.cols}\n {body}{more})"


def rref(m: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns the reduced matrix (same shape, zero rows last), the rank and the
    0-based pivot columns.
    """
    a = np.array(m.words, dtype=np.uint64, copy=True)
    rank, piv = K.rref_inplace(a, m.cols)
    return BitMatrix(a, m.cols), int(rank), [int(p) for p in piv]


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def row_basis(m: BitMatrix) -> BitMatrix:
    red, r, _ = rref(m)
    return BitMatrix(red.words[:r], m.cols)


def nullspace(m: BitMatrix) -> BitMatrix:
    """Basis (as rows) of {x : m·xᵀ = 0}."""
    n = m.cols
    red, r, piv = rref(m)
    bits = red.to_bits()[:r]
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(piv):
            if bits[row, f]:
                basis[i, p] = 1
    if not free:
        return BitMatrix.zeros(0, n)
    return BitMatrix.from_bits(basis)


def solve(m: BitMatrix, b: BitVector) -> tuple[BitVector, BitMatrix] | None:
    """Solve m·xᵀ = bᵀ.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    if b.length != m.rows:
        raise ValueError(f"right-hand side has length {b.length}, matrix has {m.rows} rows")
    n = m.cols
    aug = np.hstack([m.to_bits(), b.bits().reshape(-1, 1)])
    red, r, piv = rref(BitMatrix.from_bits(aug))
    if n in piv:
        return None
    bits = red.to_bits()
    x = np.zeros(n, np.uint8)
    for row, p in enumerate(piv):
        x[p] = bits[row, n]
    return BitVector.from_bits(x), nullspace(m)


def in_rowspace(basis_rref: BitMatrix, pivots: Sequence[int], v: BitVector) -> bool:
    return reduce_vector(basis_rref, pivots, v).value == 0


def reduce_vector(basis_rref: BitMatrix, pivots: Sequence[int], v: BitVector) -> BitVector:
    """Clear the pivot positions of ``v`` using an RREF basis.

    The result is the lexicographically smallest member of the coset
    ``v + rowspace`` when coordinate 1 is read as most significant.
    """
    value = v.value
    for row, p in enumerate(pivots):
        if (value >> p) & 1:
            value ^= words_to_int(basis_rref.words[row])
    return BitVector(v.length, value)
