"""Binary linear codes: duality, parity, weights, shadows and the
length 64/66 weight-enumerator classifier."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numba
import numpy as np

from . import _kernels as K
from .errors import NotSelfDual, NotSinglyEven, TooLarge, Unclassifiable
from .gf2 import (
    BitMatrix,
    BitVector,
    nullspace,
    nwords,
    reduce_vector,
    rref,
    words_to_int,
)

DEFAULT_MAX_K = 34


class ParityClass(enum.Enum):
    DOUBLY_EVEN = "DoublyEven"
    SINGLY_EVEN = "SinglyEven"


class LinearCode:
    """An [n, k] binary code held by a full-rank generator matrix.

    Dependent input rows are dropped.  Equality and hashing use the reduced
    row echelon form, so two ``LinearCode`` objects are equal exactly when
    they span the same subspace.
    """

    def __init__(self, generator: BitMatrix, name: str | None = None):
        red, r, piv = rref(generator)
        if r == 0:
            raise ValueError("the zero code (k = 0) is not supported")
        if r < generator.rows:
            generator = BitMatrix(red.words[:r], generator.cols)
        self.generator = generator
        self.name = name
        self._rref = BitMatrix(red.words[:r], generator.cols)
        self._pivots = list(piv)
        self._cache: dict = {}

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector | str], name: str | None = None) -> "LinearCode":
        vecs = [BitVector.from_string(r) if isinstance(r, str) else r for r in rows]
        return cls(BitMatrix.from_rows(vecs), name=name)

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def k(self) -> int:
        return self.generator.rows

    @property
    def rref(self) -> BitMatrix:
        return self._rref

    @property
    def pivots(self) -> list[int]:
        return list(self._pivots)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self._rref == other._rref

    def __hash__(self) -> int:
        return hash(self._rref)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}]>"

    def __contains__(self, v: BitVector) -> bool:
        return self.contains(v)

    def contains(self, v: BitVector) -> bool:
        if v.length != self.n:
            return False
        return reduce_vector(self._rref, self._pivots, v).value == 0

    def reduce(self, v: BitVector) -> BitVector:
        """Lexicographically smallest member of the coset v + C."""
        return reduce_vector(self._rref, self._pivots, v)

    def rows(self) -> list[BitVector]:
        return self.generator.row_vectors()

    def codewords(self) -> list[BitVector]:
        if self.k > 24:
            raise TooLarge(f"refusing to list 2^{self.k} codewords")
        words = K.all_words(np.ascontiguousarray(self.generator.words))
        return [BitVector.from_words(w, self.n) for w in words]

    def permuted(self, perm: Sequence[int]) -> "LinearCode":
        """Image under the coordinate map j -> perm[j]."""
        return LinearCode(self.generator.permute_columns(perm), name=self.name)

    def intersection(self, other: "LinearCode") -> "LinearCode | None":
        # C ∩ D = (C⊥ + D⊥)⊥
        h = dual_matrix(self).vstack(dual_matrix(other))
        basis = nullspace(h)
        return LinearCode(basis) if basis.rows else None

    def is_self_orthogonal(self) -> bool:
        g = self.generator.to_bits().astype(np.int64)
        return not np.any((g @ g.T) & 1)

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    # information sets ----------------------------------------------------
    def systematic(self, cols: Sequence[int]) -> tuple[np.ndarray, list[int]]:
        """Generator words reduced on ``cols``; returns (words, pivots).

        Row i carries the only 1 among the pivot columns at pivots[i].
        """
        a = np.array(self.generator.words, dtype=np.uint64, copy=True)
        r, piv = K.rref_columns_inplace(a, np.asarray(list(cols), dtype=np.int64))
        return a, [int(p) for p in piv[:r]]

    def disjoint_information_sets(self) -> tuple[list[int], list[int]] | None:
        """Two disjoint information sets, or None if the complement of the
        RREF pivots has rank below k."""
        key = "info2"
        if key not in self._cache:
            first = self.pivots
            rest = [j for j in range(self.n) if j not in set(first)]
            _, piv = self.systematic(rest)
            self._cache[key] = (first, piv) if len(piv) == self.k else None
        return self._cache[key]

    # enumeration helpers ---------------------------------------------------
    def _coset_base(self, words: np.ndarray, pivots: list[int], u: BitVector | None) -> np.ndarray:
        nw = nwords(self.n)
        if u is None:
            return np.zeros(nw, np.uint64)
        value = u.value
        for row, p in enumerate(pivots):
            if (value >> p) & 1:
                value ^= words_to_int(words[row])
        return BitVector(self.n, value).words()

    def low_weight_scan(
        self,
        wmax: int,
        coset: BitVector | None = None,
        collect: tuple[int, int] | None = None,
    ) -> tuple[np.ndarray, np.ndarray | None]:
        """Exact counts of weights ``0..wmax`` in the code (or in ``coset + C``).

        With two disjoint information sets I, J every vector of weight w has
        weight at most w/2 on one of them, so enumerating at most ``wmax//2``
        message bits on each side (skipping repeats) finds everything up to
        ``wmax``.  Otherwise falls back to a full Gray-code sweep.

        ``collect=(lo, hi)`` also returns the vectors with weight in [lo, hi].
        """
        n = self.n
        info = self.disjoint_information_sets()
        if info is None:
            return self._scan_by_gray(wmax, coset, collect)
        t = wmax // 2
        I, J = info
        nw = nwords(n)
        mask_i = BitVector.from_support(n, I, one_based=False).words()
        mask_j = BitVector.from_support(n, J, one_based=False).words()
        hist = np.zeros(n + 1, np.int64)
        chunks = []
        for cols, other, skip in ((I, mask_j, -1), (J, mask_i, t)):
            gs, piv = self.systematic(cols)
            base = self._coset_base(gs, piv, coset)
            if collect is None:
                K.combo_scan(gs, base, t, other, skip, wmax, hist, False, np.zeros((0, nw), np.uint64), 0)
                continue
            # counts for collect range first, then fill
            part = np.zeros(n + 1, np.int64)
            K.combo_scan(gs, base, t, other, skip, collect[1], part, False, np.zeros((0, nw), np.uint64), 0)
            total = int(part[: collect[1] + 1].sum())
            out = np.zeros((total, nw), np.uint64)
            part[:] = 0
            got = K.combo_scan(gs, base, t, other, skip, collect[1], part, True, out, 0)
            assert got == total
            wts = K.popcount_array(out) if total else np.zeros(0, np.int64)
            chunks.append(out[wts >= collect[0]])
            K.combo_scan(gs, base, t, other, skip, wmax, hist, False, np.zeros((0, nw), np.uint64), 0)
        words = None
        if collect is not None:
            words = np.vstack(chunks) if chunks else np.zeros((0, nw), np.uint64)
        return hist[: wmax + 1], words

    def _scan_by_gray(self, wmax, coset, collect):
        if self.k > DEFAULT_MAX_K:
            raise TooLarge(f"no disjoint information sets and k = {self.k} is too large to sweep")
        g = np.ascontiguousarray(self.generator.words)
        base = coset.words() if coset is not None else np.zeros(nwords(self.n), np.uint64)
        hist = K.gray_histogram(g, base, self.n, _top_bits(self.k))
        words = None
        if collect is not None:
            if self.k > 24:
                raise TooLarge("collecting words needs k <= 24 without disjoint information sets")
            allw = K.all_words(g) ^ base
            wts = K.popcount_array(allw)
            words = allw[(wts >= collect[0]) & (wts <= collect[1])]
        return hist[: wmax + 1], words

    def low_weight_counts(self, wmax: int) -> np.ndarray:
        key = ("lw", wmax)
        if key not in self._cache:
            self._cache[key] = self.low_weight_scan(wmax)[0]
        return self._cache[key]

    def words_of_weight(self, lo: int, hi: int | None = None) -> np.ndarray:
        """Packed codewords with weight in [lo, hi]."""
        hi = lo if hi is None else hi
        key = ("words", lo, hi)
        if key not in self._cache:
            self._cache[key] = self.low_weight_scan(hi, collect=(lo, hi))[1]
        return self._cache[key]


def _top_bits(k: int) -> int:
    threads = numba.get_num_threads()
    bits = 0
    while (1 << bits) < 4 * threads and bits < 8:
        bits += 1
    return min(bits, max(k - 1, 0))


def dual_matrix(c: LinearCode) -> BitMatrix:
    return nullspace(c.generator)


def dual(c: LinearCode) -> LinearCode:
    """The dual code C⊥."""
    h = dual_matrix(c)
    if h.rows == 0:
        raise ValueError("dual of the full space is the zero code")
    return LinearCode(h)


def require_self_dual(c: LinearCode) -> None:
    if not c.is_self_dual():
        raise NotSelfDual(f"{c!r} is not self-dual")


def parity_class(c: LinearCode) -> ParityClass:
    require_self_dual(c)
    if np.all(c.generator.row_weights() % 4 == 0):
        return ParityClass.DOUBLY_EVEN
    return ParityClass.SINGLY_EVEN


def rains_bound(n: int) -> int:
    """Largest minimum weight a self-dual code of length n can have."""
    if n < 2 or n % 2:
        raise ValueError("self-dual codes need an even length n >= 2")
    base = 4 * (n // 24)
    return base + 6 if n % 24 == 22 else base + 4


# ---------------------------------------------------------------------------
# minimum weight


def _bz_matrices(c: LinearCode) -> list[tuple[np.ndarray, int]]:
    remaining = list(range(c.n))
    used: list[int] = []
    mats = []
    while remaining:
        gs, piv = c.systematic(remaining + used)
        fresh = [p for p in piv if p in set(remaining)]
        if not fresh:
            break
        mats.append((gs, len(fresh)))
        fresh_set = set(fresh)
        remaining = [j for j in remaining if j not in fresh_set]
        used.extend(fresh)
    return mats


def min_weight(c: LinearCode) -> int:
    """Exact minimum nonzero weight (Brouwer–Zimmermann).

    Messages are enumerated by increasing weight over disjoint information
    sets; after finishing weight w, every unseen codeword has weight at least
    sum_j max(0, w + 1 - (k - r_j)), where r_j is the rank contributed by the
    j-th set.  Enumeration stops once that bound reaches the best weight seen.
    """
    if "d" in c._cache:
        return c._cache["d"]
    k = c.k
    mats = _bz_matrices(c)
    best = int(c.generator.row_weights().min())
    for gs, _ in mats:
        best = min(best, int(K.popcount_array(gs).min()))
    d = best
    for w in range(1, k + 1):
        for gs, _ in mats:
            d = K.combo_min_exact(gs, w, d)
        lower = sum(max(0, w + 1 - (k - r)) for _, r in mats)
        if lower >= d:
            break
    c._cache["d"] = int(d)
    return int(d)


def min_weight_bruteforce(c: LinearCode) -> int:
    """Full enumeration; independent of the information-set machinery."""
    if c.k > DEFAULT_MAX_K:
        raise TooLarge(f"k = {c.k}")
    g = np.ascontiguousarray(c.generator.words)
    hist = K.gray_histogram(g, np.zeros(g.shape[1], np.uint64), c.n, _top_bits(c.k))
    return int(np.nonzero(hist[1:])[0][0] + 1)


# ---------------------------------------------------------------------------
# weight distributions


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __len__(self) -> int:
        return len(self.counts)

    def nonzero_weights(self) -> list[int]:
        return [i for i, a in enumerate(self.counts) if a and i > 0]

    @property
    def min_weight(self) -> int:
        nz = self.nonzero_weights()
        return nz[0] if nz else 0

    def as_dict(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.counts) if a}


def weight_distribution(c: LinearCode, max_k: int = DEFAULT_MAX_K) -> WeightDistribution:
    """All 2^k codeword weights by a chunked Gray-code sweep."""
    if c.k > max_k:
        raise TooLarge(f"weight distribution of a code with k = {c.k} exceeds the budget k <= {max_k}")
    if "wd" not in c._cache:
        g = np.ascontiguousarray(c.generator.words)
        hist = K.gray_histogram(g, np.zeros(g.shape[1], np.uint64), c.n, _top_bits(c.k))
        c._cache["wd"] = WeightDistribution(tuple(int(a) for a in hist))
    return c._cache["wd"]


def krawtchouk(n: int, j: int, i: int) -> int:
    return sum((-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams_transform(w: WeightDistribution, n: int, k: int) -> WeightDistribution:
    """Weight distribution of the dual code."""
    if w.total != 2**k:
        raise ValueError(f"distribution sums to {w.total}, expected 2^{k}")
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(n, j, i) for i, a in enumerate(w.counts) if a)
        q, r = divmod(s, 2**k)
        if r:
            raise ValueError("not the weight distribution of a linear code")
        out.append(q)
    return WeightDistribution(tuple(out))


# ---------------------------------------------------------------------------
# doubly even subcode and shadow


def _half_weight_parity(c: LinearCode) -> np.ndarray:
    return (c.generator.row_weights() // 2) % 2


def doubly_even_subcode(c: LinearCode) -> LinearCode:
    """C0: the codewords of weight divisible by four (index 2 in C)."""
    if parity_class(c) is not ParityClass.SINGLY_EVEN:
        raise NotSinglyEven("a doubly even code has no proper doubly even subcode")
    f = _half_weight_parity(c)
    rows = c.rows()
    lead = int(np.nonzero(f)[0][0])
    basis = [r ^ rows[lead] if f[i] else r for i, r in enumerate(rows) if i != lead]
    return LinearCode(BitMatrix.from_rows(basis, c.n))


@dataclass(frozen=True)
class ShadowReport:
    """The shadow S = C0⊥ \\ C of a singly even self-dual code.

    ``half_coset_reps`` are the lexicographically smallest members of the two
    C0-cosets making up S.  ``distribution`` counts shadow weights
    0..``max_weight``; ``complete`` says whether that covers every weight.
    """

    half_coset_reps: tuple[BitVector, BitVector]
    min_weight: int
    distribution: tuple[int, ...]
    max_weight: int
    complete: bool
    subcode: LinearCode = field(repr=False, compare=False)

    def count(self, w: int) -> int:
        if w > self.max_weight:
            raise ValueError(f"shadow weights counted only up to {self.max_weight}")
        return self.distribution[w]


def shadow_vector(c: LinearCode) -> BitVector:
    """A vector u with u·c = wt(c)/2 mod 2 for all c in C; u + C is the shadow."""
    f = _half_weight_parity(c)
    from .gf2 import solve

    sol = solve(c.generator, BitVector.from_bits(f))
    assert sol is not None  # always solvable: the generator has full rank
    return sol[0]


def shadow(c: LinearCode, max_weight: int | None = None) -> ShadowReport:
    """Shadow decomposition with exact weight counts.

    ``max_weight=None`` counts up to 14 (enough for the length 64/66
    families) and keeps going until the minimum weight is found;
    ``max_weight=c.n`` runs a full sweep.
    """
    c0 = doubly_even_subcode(c)
    u = shadow_vector(c)
    lead = next(r for r in c.rows() if (r.weight // 2) % 2)
    h1 = c0.reduce(u)
    h3 = c0.reduce(u ^ lead)
    reps = tuple(sorted((h1, h3), key=lambda v: v.to_string()))
    if max_weight is not None and max_weight >= c.n:
        g = np.ascontiguousarray(c.generator.words)
        hist = K.gray_histogram(g, u.words(), c.n, _top_bits(c.k)) if c.k <= DEFAULT_MAX_K else None
        if hist is None:
            raise TooLarge("full shadow distribution needs k <= 34")
        dist = tuple(int(a) for a in hist)
        return ShadowReport(reps, _first_nonzero(dist, 0), dist, c.n, True, c0)
    wmax = 14 if max_weight is None else max_weight
    while True:
        hist, _ = c.low_weight_scan(wmax, coset=u)
        dist = tuple(int(a) for a in hist)
        smin = _first_nonzero(dist, 0)
        if smin is not None or max_weight is not None or wmax >= c.n:
            return ShadowReport(reps, smin if smin is not None else -1, dist, wmax, wmax >= c.n, c0)
        wmax = min(c.n, wmax + 4)


def _first_nonzero(seq: Iterable[int], start: int) -> int | None:
    for i, a in enumerate(seq):
        if i >= start and a:
            return i
    return None


# ---------------------------------------------------------------------------
# weight enumerator families at lengths 64 and 66


BETA_RANGES = {
    "W64_1": (14, 104),
    "W64_2": (0, 277),
    "W66_1": (0, 778),
    "W66_3": (14, 756),
}


@dataclass(frozen=True)
class EnumeratorClass:
    family: str
    beta: int | None

    @property
    def family_index(self) -> int:
        return int(self.family.split("_")[1])

    def __str__(self) -> str:
        return self.family if self.beta is None else f"{self.family}(beta={self.beta})"


def _expected(family: str, beta: int | None) -> tuple[dict[int, int], dict[int, int]]:
    """Leading code and shadow coefficients of each family."""
    b = beta or 0
    return {
        "W64_1": ({12: 1312 + 16 * b, 14: 22016 - 64 * b}, {4: 1, 8: b - 14, 12: 3419 - 12 * b}),
        "W64_2": ({12: 1312 + 16 * b, 14: 23040 - 64 * b}, {4: 0, 8: b, 12: 3328 - 12 * b}),
        "W66_1": ({12: 858 + 8 * b, 14: 18678 - 24 * b}, {1: 0, 5: 0, 9: b, 13: 10032 - 12 * b}),
        "W66_2": ({12: 1690, 14: 7990}, {1: 1, 5: 0, 9: 0, 13: 9680}),
        "W66_3": ({12: 858 + 8 * b, 14: 18166 - 24 * b}, {1: 0, 5: 1, 9: b - 14, 13: 10123 - 12 * b}),
    }[family]


def classify_enumerator(c: LinearCode) -> EnumeratorClass:
    """Family and beta of an extremal singly even self-dual [64,32,12] or
    [66,33,12] code.

    The family is read off the shadow minimum weight and beta off A_12; the
    A_14 and low shadow coefficients must then agree with the family's
    polynomial, otherwise the code is rejected.
    """
    if c.n not in (64, 66):
        raise Unclassifiable(f"no enumerator families at length {c.n}")
    require_self_dual(c)
    if parity_class(c) is not ParityClass.SINGLY_EVEN:
        raise Unclassifiable("code is doubly even")
    d = min_weight(c)
    if d != rains_bound(c.n):
        raise Unclassifiable(f"minimum weight {d} is not extremal")
    a = c.low_weight_counts(14)
    sh = shadow(c, max_weight=14)
    smin = sh.min_weight
    if c.n == 64:
        if smin == 4:
            family = "W64_1"
        elif smin in (8, 12):
            family = "W64_2"
        else:
            raise Unclassifiable(f"shadow minimum weight {smin} fits no length-64 family")
        beta, rem = divmod(int(a[12]) - 1312, 16)
    else:
        family = {9: "W66_1", 13: "W66_1", 1: "W66_2", 5: "W66_3"}.get(smin)
        if family is None:
            raise Unclassifiable(f"shadow minimum weight {smin} fits no length-66 family")
        if family == "W66_2":
            beta, rem = None, 0
        else:
            beta, rem = divmod(int(a[12]) - 858, 8)
    if rem:
        raise Unclassifiable(f"A_12 = {a[12]} gives a non-integral beta")
    if beta is not None:
        lo, hi = BETA_RANGES[family]
        if not lo <= beta <= hi:
            raise Unclassifiable(f"beta = {beta} outside [{lo}, {hi}] for {family}")
    want_code, want_shadow = _expected(family, beta)
    for w, v in want_code.items():
        if a[w] != v:
            raise Unclassifiable(f"{family}: A_{w} = {a[w]}, expected {v}")
    for w, v in want_shadow.items():
        if sh.distribution[w] != v:
            raise Unclassifiable(f"{family}: shadow count at {w} is {sh.distribution[w]}, expected {v}")
    return EnumeratorClass(family, beta)
