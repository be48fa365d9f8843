"""Self-dual neighbors: ⟨C ∩ ⟨x⟩⊥, x⟩, the two doubly even neighbors of a
singly even code, and the weight-10 elimination method."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .codes import (
    LinearCode,
    ParityClass,
    min_weight,
    parity_class,
    require_self_dual,
    shadow,
)
from .errors import CodeError, NotANeighbor, NotApplicable, OddWeight
from .gf2 import BitMatrix, BitVector, rank, solve


@dataclass(frozen=True)
class NeighborDescriptor:
    """Recipe ``parent:support`` with a 1-based, sorted support."""

    parent: str
    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))

    def vector(self, n: int) -> BitVector:
        return BitVector.from_support(n, self.support)

    def to_line(self) -> str:
        return f"{self.parent}:{','.join(map(str, self.support))}"

    @classmethod
    def from_line(cls, line: str) -> "NeighborDescriptor":
        parent, _, rest = line.strip().partition(":")
        if not parent or not rest:
            raise ValueError(f"expected 'parent:i,j,...', got {line!r}")
        support = tuple(int(t) for t in rest.replace(" ", "").strip("{}").split(",") if t)
        if len(support) % 2:
            raise ValueError("a neighbor support must have even size")
        return cls(parent, support)


def orthogonal_subcode(c: LinearCode, x: BitVector) -> tuple[BitMatrix, BitVector | None]:
    """Basis of C ∩ ⟨x⟩⊥ and a codeword y with y·x = 1 (None if x ⊥ C)."""
    rows = c.rows()
    dots = [r.dot(x) for r in rows]
    if not any(dots):
        return c.generator, None
    lead = dots.index(1)
    y = rows[lead]
    basis = [r ^ y if dots[i] else r for i, r in enumerate(rows) if i != lead]
    return (BitMatrix.from_rows(basis, c.n) if basis else BitMatrix.zeros(0, c.n)), y


def neighbor(c: LinearCode, x: BitVector, name: str | None = None) -> LinearCode:
    """The self-dual neighbor ⟨C ∩ ⟨x⟩⊥, x⟩ of C."""
    require_self_dual(c)
    if x.length != c.n:
        raise CodeError(f"vector length {x.length} != code length {c.n}")
    if x.weight % 2:
        raise OddWeight("neighbor construction needs an even-weight vector")
    if c.contains(x):
        raise NotANeighbor("x lies in C; the construction would return C itself")
    basis, _ = orthogonal_subcode(c, x)
    return LinearCode(basis.vstack(BitMatrix.from_rows([x])), name=name)


def doubly_even_neighbors(c: LinearCode) -> tuple[LinearCode, LinearCode]:
    """The two doubly even self-dual codes C0 ∪ C1 and C0 ∪ C3.

    Ordered by the lexicographically smallest member of the shadow half
    each one adds to C0."""
    if c.n % 8:
        raise CodeError("doubly even self-dual codes need length divisible by 8")
    if parity_class(c) is not ParityClass.SINGLY_EVEN:
        raise CodeError("input is already doubly even")
    sh = shadow(c, max_weight=0)
    c0 = sh.subcode
    return tuple(LinearCode(c0.generator.vstack(BitMatrix.from_rows([h]))) for h in sh.half_coset_reps)


# ---------------------------------------------------------------------------
# weight-10 elimination


@dataclass
class Weight10Solution:
    """Even-weight x with M·xᵀ = 1ᵀ, M the weight-10 codewords of C.

    ``unique`` means the solutions form a single coset x + C (the weight-10
    words span C), so the two neighbors below are the only self-dual
    neighbors free of those words."""

    code: LinearCode
    x: BitVector
    unique: bool
    n_words: int

    def subcode(self) -> LinearCode:
        basis, _ = orthogonal_subcode(self.code, self.x)
        return LinearCode(basis)

    def neighbors(self) -> tuple[LinearCode, LinearCode]:
        basis, y = orthogonal_subcode(self.code, self.x)
        return (
            LinearCode(basis.vstack(BitMatrix.from_rows([self.x]))),
            LinearCode(basis.vstack(BitMatrix.from_rows([self.x ^ y]))),
        )


def weight10_neighbor_vector(c: LinearCode, weight: int = 10) -> Weight10Solution | None:
    """Solve M·xᵀ = 1ᵀ for even-weight x; None if there is no solution."""
    require_self_dual(c)
    words = c.words_of_weight(weight)
    if words.shape[0] == 0:
        raise NotApplicable(f"no codewords of weight {weight}")
    m = BitMatrix(words, c.n)
    sol = solve(m, BitVector.ones(m.rows))
    if sol is None:
        return None
    x, kernel = sol
    if x.weight % 2:
        flip = next((v for v in kernel.row_vectors() if v.weight % 2), None)
        if flip is None:
            return None
        x = x ^ flip
    unique = rank(m) == c.k
    return Weight10Solution(c, x, unique, m.rows)


# ---------------------------------------------------------------------------
# enumeration


class _Dedup:
    """Exact equivalence dedup: fingerprint buckets, canonical forms inside."""

    def __init__(self):
        self.buckets: dict = {}

    def add(self, code: LinearCode) -> bool:
        from .equivalence import are_equivalent, fingerprint

        key = fingerprint(code)
        bucket = self.buckets.setdefault(key, [])
        if any(are_equivalent(code, other) for other in bucket):
            return False
        bucket.append(code)
        return True


def enumerate_neighbors(
    c: LinearCode,
    mode: str = "bounded",
    *,
    parent: str = "C",
    supports: Sequence[Sequence[int]] = (),
    w_max: int = 4,
    budget: int | None = None,
    min_d: int = 0,
    seed: int = 0,
    dedup: bool = True,
) -> Iterator[tuple[NeighborDescriptor, LinearCode]]:
    """Stream neighbors of ``c``.

    ``targeted`` replays ``supports``; ``bounded`` walks even-weight x of
    weight <= ``w_max`` in lexicographic order of supports, keeping the first
    x of each coset x + C and producing both neighbors of C ∩ ⟨x⟩⊥;
    ``random`` samples even-weight x with a seeded generator.  ``budget``
    caps the number of vectors tried.  Neighbors with minimum weight below
    ``min_d`` are dropped, and with ``dedup`` only one code per equivalence
    class is emitted.
    """
    require_self_dual(c)
    n = c.n
    seen = _Dedup() if dedup else None

    def emit(x: BitVector, code: LinearCode):
        if min_d and min_weight(code) < min_d:
            return None
        if seen is not None and not seen.add(code):
            return None
        return NeighborDescriptor(parent, tuple(x.support())), code

    if mode == "targeted":
        for sup in supports[:budget] if budget else supports:
            x = BitVector.from_support(n, sup)
            out = emit(x, neighbor(c, x))
            if out:
                yield out
        return

    if mode == "bounded":
        cosets: set[int] = set()
        tried = 0
        for w in range(2, w_max + 1, 2):
            for sup in itertools.combinations(range(n), w):
                if budget is not None and tried >= budget:
                    return
                tried += 1
                x = BitVector.from_support(n, sup, one_based=False)
                red = c.reduce(x)
                if red.value == 0 or red.value in cosets:
                    continue
                cosets.add(red.value)
                basis, y = orthogonal_subcode(c, x)
                for vec in (x, x ^ y):
                    out = emit(vec, LinearCode(basis.vstack(BitMatrix.from_rows([vec]))))
                    if out:
                        yield out
        return

    if mode == "random":
        rng = np.random.default_rng(seed)
        limit = 1000 if budget is None else budget
        for _ in range(limit):
            w = 2 * int(rng.integers(1, w_max // 2 + 1))
            sup = rng.choice(n, size=w, replace=False)
            x = BitVector.from_support(n, sup.tolist(), one_based=False)
            if c.contains(x):
                continue
            out = emit(x, neighbor(c, x))
            if out:
                yield out
        return

    raise ValueError(f"unknown mode {mode!r}")
