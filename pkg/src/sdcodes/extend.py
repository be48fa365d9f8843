"""Extending a self-dual [n, n/2] code to length n + 2 through an
odd-weight vector (Tsai's construction)."""

from __future__ import annotations

from dataclasses import dataclass

from .codes import LinearCode, require_self_dual
from .errors import CodeError, EvenWeight
from .gf2 import BitMatrix, BitVector, rref, reduce_vector
from .neighbors import orthogonal_subcode

TABLE4_LISTED_BITS = 32


@dataclass(frozen=True)
class CosetSplit:
    """C = C0 ∪ C2 and x + C = C1 ∪ C3, with C0 = C ∩ ⟨x⟩⊥.

    C1 is the C0-coset containing x.  Each rep is the lexicographically
    smallest member of its coset (coordinate 1 most significant)."""

    n: int
    c0_basis: BitMatrix
    c0_pivots: tuple[int, ...]
    c2_rep: BitVector
    c1_rep: BitVector
    c3_rep: BitVector

    def reduce(self, v: BitVector) -> BitVector:
        return reduce_vector(self.c0_basis, list(self.c0_pivots), v)

    def c0_code(self) -> LinearCode | None:
        return LinearCode(self.c0_basis) if self.c0_basis.rows else None


def split_cosets(c: LinearCode, x: BitVector) -> CosetSplit:
    require_self_dual(c)
    if x.length != c.n:
        raise CodeError(f"vector length {x.length} != code length {c.n}")
    if x.weight % 2 == 0:
        raise EvenWeight("the extension vector must have odd weight")
    basis, y = orthogonal_subcode(c, x)
    # x has odd weight, so x·1 = 1 and y always exists
    red, _, piv = rref(basis)
    split = CosetSplit(c.n, red, tuple(piv), y, x, x ^ y)
    return CosetSplit(c.n, red, tuple(piv), split.reduce(y), split.reduce(x), split.reduce(x ^ y))


def tsai_extend(c: LinearCode, x: BitVector, name: str | None = None) -> LinearCode:
    """The [n+2, n/2+1] self-dual code
    (0,0,C0) ∪ (1,1,C2) ∪ (1,0,C1) ∪ (0,1,C3)."""
    s = split_cosets(c, x)
    rows = [_prefix(0, 0, b) for b in s.c0_basis.row_vectors()]
    rows.append(_prefix(1, 1, s.c2_rep))
    rows.append(_prefix(1, 0, s.c1_rep))
    return LinearCode(BitMatrix.from_rows(rows, c.n + 2), name=name)


def _prefix(a: int, b: int, v: BitVector) -> BitVector:
    return BitVector(v.length + 2, a | (b << 1) | (v.value << 2))


@dataclass(frozen=True)
class ExtensionRecipe:
    """Line format ``parent:bitstring``."""

    parent: str
    x: BitVector

    def to_line(self) -> str:
        return f"{self.parent}:{self.x.to_string()}"

    @classmethod
    def from_line(cls, line: str) -> "ExtensionRecipe":
        parent, _, rest = line.strip().partition(":")
        if not parent or not rest:
            raise ValueError(f"expected 'parent:bits', got {line!r}")
        return cls(parent, BitVector.from_string(rest))


def table4_vector(listed: str, n: int = 64) -> BitVector:
    """Full extension vector from a 32-bit listing: the listed bits
    followed by 32 ones."""
    bits = listed.strip().strip("()").replace(",", "").replace(" ", "")
    if len(bits) != TABLE4_LISTED_BITS or set(bits) - {"0", "1"}:
        raise ValueError(f"expected {TABLE4_LISTED_BITS} listed bits, got {listed!r}")
    return BitVector.from_string(bits + "1" * (n - TABLE4_LISTED_BITS))
