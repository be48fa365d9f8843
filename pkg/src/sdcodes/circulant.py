"""Four-circulant self-dual codes and their exhaustive search.

A four-circulant code of length 4n has generator ``(I_2n | A B ; Bᵀ Aᵀ)``
with A, B circulant; it is self-dual iff AAᵀ + BBᵀ = I.  A circulant is
stored by its first row, an n-bit integer whose bit i is entry r_i.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Callable

import numpy as np

from . import _kernels as K
from .codes import LinearCode, min_weight
from .gf2 import BitMatrix, BitVector

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CirculantRow:
    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1 or self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"invalid circulant row {self.bits:#x} of order {self.n}")

    @classmethod
    def from_string(cls, s: str) -> "CirculantRow":
        v = BitVector.from_string(s)
        return cls(v.length, v.value)

    def to_string(self) -> str:
        return BitVector(self.n, self.bits).to_string()

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __getitem__(self, i: int) -> int:
        return (self.bits >> (i % self.n)) & 1


@dataclass(frozen=True)
class FourCirculantSpec:
    ra: CirculantRow
    rb: CirculantRow

    def __post_init__(self):
        if self.ra.n != self.rb.n:
            raise ValueError("circulant orders differ")

    @classmethod
    def from_strings(cls, ra: str, rb: str) -> "FourCirculantSpec":
        return cls(CirculantRow.from_string(ra), CirculantRow.from_string(rb))

    @property
    def order(self) -> int:
        return self.ra.n


def circulant_bits(r: CirculantRow) -> np.ndarray:
    n = r.n
    row = np.array([r[i] for i in range(n)], dtype=np.uint8)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[idx]


def circulant(r: CirculantRow) -> BitMatrix:
    """Matrix whose (i, j) entry is r[(j - i) mod n]."""
    return BitMatrix.from_bits(circulant_bits(r))


def autocorrelation(r: CirculantRow) -> BitVector:
    """First row of R·Rᵀ: component s is sum_j r_j r_{j+s} mod 2."""
    return BitVector(r.n, int(K.circulant_signature_one(r.bits, r.n)))


def is_self_dual_pair(ra: CirculantRow, rb: CirculantRow) -> bool:
    if ra.n != rb.n:
        raise ValueError("circulant orders differ")
    return (autocorrelation(ra) ^ autocorrelation(rb)).value == 1


def four_circulant_generator(spec: FourCirculantSpec) -> BitMatrix:
    n = spec.order
    a = circulant_bits(spec.ra)
    b = circulant_bits(spec.rb)
    top = np.hstack([a, b])
    bottom = np.hstack([b.T, a.T])
    return BitMatrix.from_bits(np.hstack([np.eye(2 * n, dtype=np.uint8), np.vstack([top, bottom])]))


def four_circulant_code(spec: FourCirculantSpec, require_self_dual: bool = False, name: str | None = None) -> LinearCode:
    if require_self_dual and not is_self_dual_pair(spec.ra, spec.rb):
        raise ValueError("AAᵀ + BBᵀ != I for this pair")
    return LinearCode(four_circulant_generator(spec), name=name)


# ---------------------------------------------------------------------------
# search


def units(n: int) -> list[int]:
    return [u for u in range(n) if gcd(u, n) == 1] if n > 1 else [0]


def multiplier_table(n: int, u: int) -> np.ndarray:
    """Image of every row under r'_{u·i mod n} = r_i."""
    size = 1 << n
    rows = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for i in range(n):
        out |= ((rows >> i) & 1) << ((u * i) % n)
    return out


def min_rotation_table(n: int) -> np.ndarray:
    size = 1 << n
    mask = size - 1
    rows = np.arange(size, dtype=np.int64)
    best = rows.copy()
    for s in range(1, n):
        rot = ((rows << s) | (rows >> (n - s))) & mask
        np.minimum(best, rot, out=best)
    return best


def orbit_maps(n: int) -> np.ndarray:
    """Row maps (for A and B) generating the equivalences used to pre-merge
    search hits: one multiplier on both rows, optionally composed with the
    transpose (multiplier -1) on B.  Independent cyclic shifts and the A/B
    swap are handled by the key itself."""
    us = units(n)
    tables = {u: multiplier_table(n, u) for u in us}
    maps = []
    for u in us:
        for eps in (1, -1):
            maps.append(np.stack([tables[u], tables[(eps * u) % n if n > 1 else 0]]))
    return np.ascontiguousarray(np.stack(maps))


@dataclass(frozen=True)
class SearchHit:
    spec: FourCirculantSpec
    orbit_key: int
    min_weight: int


@dataclass
class SearchResult:
    order: int
    target_d: int
    pairs_scanned: int
    orbits: int
    hits: list[SearchHit]
    classes: list[list[SearchHit]]

    @property
    def representatives(self) -> list[SearchHit]:
        return [c[0] for c in self.classes]


LENGTH64_ORDER = 16
LENGTH64_MIN_WEIGHT_SUM = 13


def default_min_weight_sum(n: int, target_d: int) -> int:
    """13 for order 16 (the published search filter), otherwise the weakest
    bound target_d - 1 implied by the generator rows of weight 1 + sum."""
    return LENGTH64_MIN_WEIGHT_SUM if n == LENGTH64_ORDER else max(target_d - 1, 0)


def candidate_orbits(
    n: int, target_d: int, min_weight_sum: int | None = None
) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    """All self-dual pairs passing the filters, collapsed to orbit keys.

    Filters: weight(ra)+weight(rb) ≡ 1 (mod 4) (singly even), the sum is at
    least ``min_weight_sum``, and the last entry of rb is 1.  Returns
    (pair count, keys, ra, rb) where (ra, rb) is the lexicographically first
    filtered pair of each orbit.
    """
    if n > 20:
        raise ValueError("circulant order too large for an exhaustive search")
    sig = K.circulant_signatures(n)
    order = np.argsort(sig, kind="stable").astype(np.int64)
    nsig = 1 << n
    counts = np.bincount(sig, minlength=nsig).astype(np.int64)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
    weights = np.array([bin(r).count("1") for r in range(1 << n)], dtype=np.int64)
    maps = orbit_maps(n)
    minrot = min_rotation_table(n)
    min_sum = default_min_weight_sum(n, target_d) if min_weight_sum is None else min_weight_sum
    empty = np.zeros(0, np.int64)
    total = K.join_pairs(n, sig, order, starts, counts, weights, min_sum, maps, minrot, False, empty, empty, empty)
    ra = np.zeros(total, np.int64)
    rb = np.zeros(total, np.int64)
    key = np.zeros(total, np.int64)
    K.join_pairs(n, sig, order, starts, counts, weights, min_sum, maps, minrot, True, ra, rb, key)
    idx = np.lexsort((rb, ra, key))
    key, ra, rb = key[idx], ra[idx], rb[idx]
    first = np.ones(total, dtype=bool)
    first[1:] = key[1:] != key[:-1]
    return int(total), key[first], ra[first], rb[first]


def search_four_circulant(
    n: int,
    target_d: int,
    checkpoint: Path | None = None,
    progress: Callable[[int, int], None] | None = None,
    min_weight_sum: int | None = None,
) -> SearchResult:
    """Equivalence classes of singly even self-dual four-circulant codes of
    length 4n with minimum weight exactly ``target_d``.

    Orbit keys only merge pairs related by known equivalences (independent
    cyclic shifts of A and B, a common multiplier, transposing one block,
    swapping A and B); the remaining orbits are split into classes by
    :func:`sdcodes.equivalence.partition_classes`.
    """
    from .equivalence import partition_classes

    total, keys, ras, rbs = candidate_orbits(n, target_d, min_weight_sum)
    log.info("order %d: %d filtered pairs in %d orbits", n, total, len(keys))
    done = _load_checkpoint(checkpoint)
    hits: list[SearchHit] = []
    for i, (key, ra, rb) in enumerate(zip(keys.tolist(), ras.tolist(), rbs.tolist())):
        if key in done:
            d = done[key]
        else:
            spec = FourCirculantSpec(CirculantRow(n, ra), CirculantRow(n, rb))
            d = min_weight(four_circulant_code(spec))
            done[key] = d
            if checkpoint is not None and (i % 256 == 255 or i == len(keys) - 1):
                _save_checkpoint(checkpoint, done, i + 1)
        if progress is not None:
            progress(i + 1, len(keys))
        if d == target_d:
            hits.append(SearchHit(FourCirculantSpec(CirculantRow(n, ra), CirculantRow(n, rb)), key, d))
    if checkpoint is not None:
        _save_checkpoint(checkpoint, done, len(keys))
    codes = [four_circulant_code(h.spec) for h in hits]
    groups = partition_classes(codes)
    classes = [[hits[i] for i in g] for g in groups]
    return SearchResult(n, target_d, total, len(keys), hits, classes)


def _load_checkpoint(path: Path | None) -> dict[int, int]:
    done: dict[int, int] = {}
    if path is None or not Path(path).exists():
        return done
    for line in Path(path).read_text().splitlines():
        if line.startswith("orbit:"):
            key, d = line[6:].split(":")
            done[int(key, 16)] = int(d)
    return done


def _save_checkpoint(path: Path, done: dict[int, int], upto: int) -> None:
    tmp = Path(str(path) + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"done:0-{upto}\n")
        for key, d in sorted(done.items()):
            fh.write(f"orbit:{key:x}:{d}\n")
    tmp.replace(path)
