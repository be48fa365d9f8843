"""Permutation equivalence of binary codes.

Codes are compared through the bipartite incidence structure between
coordinates and the low-weight codewords (weights d..w, with w the least
weight at which those words span the code).  Any permutation equivalence
maps that word set onto the other code's, so a labelling of the structure
found by individualization-refinement is labelling-independent; the
reduced generator of the relabelled code is then a normal form whose bytes
decide equivalence.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import LinearCode, min_weight
from .gf2 import BitMatrix, rank, rref

PAIR_BLOCK = 4096


def _incidence(words: np.ndarray, n: int) -> np.ndarray:
    if words.shape[0] == 0:
        return np.zeros((0, n), np.float32)
    raw = np.ascontiguousarray(words).view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :n].astype(np.float32)


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    n: int
    k: int
    d: int
    a_d: int
    a_d2: int
    coordinate_counts: tuple[int, ...]
    intersections: tuple[tuple[int, int], ...]


def _intersection_histogram(inc: np.ndarray) -> dict[int, int]:
    n_words = inc.shape[0]
    hist: dict[int, int] = {}
    for lo in range(0, n_words, PAIR_BLOCK):
        block = inc[lo : lo + PAIR_BLOCK]
        gram = (block @ inc[lo:].T).astype(np.int64)
        # keep pairs (i, j) with i < j only
        iu = np.triu_indices(gram.shape[0], k=1, m=gram.shape[1])
        vals, cnt = np.unique(gram[iu], return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            hist[v] = hist.get(v, 0) + c
    return hist


def fingerprint(c: LinearCode) -> Fingerprint:
    """Cheap permutation invariants; unequal fingerprints mean inequivalent."""
    if "fingerprint" in c._cache:
        return c._cache["fingerprint"]
    d = min_weight(c)
    counts = c.low_weight_counts(min(d + 2, c.n))
    a_d2 = int(counts[d + 2]) if d + 2 <= c.n else 0
    inc = _incidence(c.words_of_weight(d), c.n)
    coord = tuple(sorted(inc.sum(axis=0).astype(np.int64).tolist()))
    inter = tuple(sorted(_intersection_histogram(inc).items()))
    fp = Fingerprint(c.n, c.k, d, int(counts[d]), a_d2, coord, inter)
    c._cache["fingerprint"] = fp
    return fp


# ---------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True)
class CanonicalForm:
    """``order[j]`` is the canonical position of coordinate j;
    ``generator`` is the RREF of the relabelled code."""

    n: int
    k: int
    order: tuple[int, ...]
    generator: bytes

    def hex(self) -> str:
        head = f"{self.n:04x}{self.k:04x}"
        return head + self.generator.hex()

    def __lt__(self, other: "CanonicalForm") -> bool:
        return (self.n, self.k, self.generator) < (other.n, other.k, other.generator)


def _digest(*arrays: np.ndarray) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    for a in arrays:
        h.update(np.ascontiguousarray(a).tobytes())
        h.update(b"|")
    return h.digest()


_MIX = np.random.default_rng(0x5DC0DE).integers(1, 2**63, size=(2, 1 << 16), dtype=np.uint64)


def _ranks(*keys: np.ndarray) -> tuple[np.ndarray, int, np.ndarray]:
    """Dense ranks of rows under lexicographic order of ``keys`` (last key is
    most significant, as in np.lexsort).  Returns (ranks, count, sorted
    distinct keys stacked)."""
    order = np.lexsort(keys)
    stacked = np.stack([k[order] for k in keys], axis=1)
    new = np.ones(len(order), dtype=bool)
    new[1:] = np.any(stacked[1:] != stacked[:-1], axis=1)
    dense = np.cumsum(new) - 1
    ranks = np.empty(len(order), np.int64)
    ranks[order] = dense
    return ranks, int(dense[-1]) + 1 if len(order) else 0, stacked[new]


class _Labeler:
    """Colour refinement on the coordinate/word incidence structure.

    Neighbourhood multisets are summarized by sums of fixed random 64-bit
    keys; colours are ranks of those sums, so everything depends only on the
    structure, never on the input labelling.  A hash collision merely
    weakens refinement and cannot make the labelling unsound, because the
    certificate is the relabelled generator itself.
    """

    def __init__(self, c: LinearCode, inc: np.ndarray):
        self.code = c
        self.n = c.n
        self.gen_bits = c.generator.to_bits()
        w_idx, c_idx = np.nonzero(inc)
        self.n_words = inc.shape[0]
        self.w_idx = w_idx
        self.c_idx = c_idx
        order = np.argsort(c_idx, kind="stable")
        self.c_sorted = c_idx[order]
        self.w_by_c = w_idx[order]

    @staticmethod
    def _group_sum(values: np.ndarray, owner: np.ndarray, size: int) -> np.ndarray:
        """Sum ``values`` per owner (``owner`` sorted); empty groups give 0."""
        out = np.zeros(size, np.uint64)
        if values.size:
            present = np.unique(owner)
            out[present] = np.add.reduceat(values, np.searchsorted(owner, present))
        return out

    def refine(self, colors: np.ndarray) -> tuple[np.ndarray, bytes]:
        """Coarsest equitable refinement of an ordered coordinate colouring."""
        n = self.n
        h = hashlib.blake2b(digest_size=16)
        while True:
            m = int(colors.max()) + 1
            if self.n_words:
                wsum = self._group_sum(_MIX[0][colors[self.c_idx] % _MIX.shape[1]], self.w_idx, self.n_words)
                wcol, n_wcol, wkeys = _ranks(wsum)
                csum = self._group_sum(_MIX[1][wcol[self.w_by_c] % _MIX.shape[1]], self.c_sorted, n)
                h.update(wkeys.tobytes())
                h.update(np.bincount(wcol, minlength=n_wcol).tobytes())
            else:
                csum = np.zeros(n, np.uint64)
            newc, count, ckeys = _ranks(csum, colors.astype(np.uint64))
            h.update(ckeys.tobytes())
            h.update(np.bincount(newc, minlength=count).tobytes())
            if count == m:
                return colors, h.digest()
            colors = newc

    @staticmethod
    def individualize(colors: np.ndarray, v: int) -> np.ndarray:
        # v goes first within its cell
        key = colors * 2 + 1
        key[v] -= 1
        _, out = np.unique(key, return_inverse=True)
        return out.reshape(-1).astype(np.int64)

    def certificate(self, colors: np.ndarray) -> bytes:
        bits = np.zeros_like(self.gen_bits)
        bits[:, colors] = self.gen_bits
        red, _, _ = rref(BitMatrix.from_bits(bits))
        return red.words.tobytes()


def _orbit_of(v: int, gens: list[np.ndarray]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


MAX_LABELLING_WORDS = 1 << 17


def labelling_words(c: LinearCode) -> np.ndarray:
    """Words used to refine the labelling: all words of weight d..w for the
    least w at which they span the code.

    Once they span, every permutation preserving the word set is an
    automorphism, so equal refinements lead to equal certificates and the
    automorphism pruning bites.  The window stops growing past
    ``MAX_LABELLING_WORDS``; the labelling stays sound, only slower."""
    d = min_weight(c)
    w = d
    words = c.words_of_weight(d, w)
    while w < c.n and rank(BitMatrix(words, c.n)) < c.k:
        nxt = c.words_of_weight(d, w + 1)
        if nxt.shape[0] > MAX_LABELLING_WORDS:
            break
        w, words = w + 1, nxt
    return words


def canonical_form(c: LinearCode) -> CanonicalForm:
    """Canonical relabelling of ``c``.

    Search tree: individualize each coordinate of the first non-singleton
    cell and refine; the canonical leaf minimises (trace path, certificate)
    where the certificate is the RREF of the relabelled generator.  Subtrees
    whose trace prefix already exceeds the best one are cut, and siblings in
    the same orbit of the automorphisms found so far (restricted to those
    fixing the current path) are skipped.
    """
    if "canonical" in c._cache:
        return c._cache["canonical"]
    lab = _Labeler(c, _incidence(labelling_words(c), c.n))
    root, root_trace = lab.refine(np.zeros(c.n, np.int64))

    best: list = [None]  # (trace path, certificate, colors)
    autos: list[np.ndarray] = []

    def visit(colors: np.ndarray, path: tuple[bytes, ...], fixed: tuple[int, ...]) -> None:
        if best[0] is not None and path > best[0][0][: len(path)]:
            return
        m = int(colors.max()) + 1
        if m == c.n:
            cert = lab.certificate(colors)
            cand = (path, cert)
            if best[0] is None or cand < best[0][:2]:
                best[0] = (path, cert, colors)
            elif cand == best[0][:2]:
                inv = np.empty(c.n, np.int64)
                inv[colors] = np.arange(c.n)
                autos.append(inv[best[0][2]])
            return
        sizes = np.bincount(colors, minlength=m)
        target = int(np.nonzero(sizes > 1)[0][0])
        cell = [int(v) for v in np.nonzero(colors == target)[0]]
        explored: list[int] = []
        for v in cell:
            gens = [g for g in autos if all(g[f] == f for f in fixed)]
            if gens and any(v in _orbit_of(u, gens) for u in explored):
                continue
            explored.append(v)
            child, tr = lab.refine(lab.individualize(colors, v))
            visit(child, path + (tr,), fixed + (v,))

    visit(root, (root_trace,), ())
    _, cert, colors = best[0]
    form = CanonicalForm(c.n, c.k, tuple(int(x) for x in colors), cert)
    c._cache["canonical"] = form
    return form


def are_equivalent(c1: LinearCode, c2: LinearCode) -> bool:
    """True iff some coordinate permutation maps c1 onto c2.

    Codes with different (n, k) are reported inequivalent rather than
    raising."""
    if (c1.n, c1.k) != (c2.n, c2.k):
        return False
    if fingerprint(c1) != fingerprint(c2):
        return False
    return canonical_form(c1).generator == canonical_form(c2).generator


def partition_classes(codes: Sequence[LinearCode]) -> list[list[int]]:
    """Split ``codes`` into equivalence classes (lists of input indices).

    Fingerprints separate most codes cheaply; canonical forms are computed
    only inside fingerprint collisions.  Classes are listed in order of their
    first member, members in input order."""
    groups: dict[tuple, list[int]] = {}
    for i, c in enumerate(codes):
        groups.setdefault((c.n, c.k, fingerprint(c)), []).append(i)
    classes: list[list[int]] = []
    for members in groups.values():
        if len(members) == 1:
            classes.append(members)
            continue
        by_form: dict[bytes, list[int]] = {}
        for i in members:
            by_form.setdefault(canonical_form(codes[i]).generator, []).append(i)
        classes.extend(by_form.values())
    classes.sort(key=lambda cl: cl[0])
    return classes


def permutation_mapping(c1: LinearCode, c2: LinearCode) -> list[int] | None:
    """A coordinate map p with c1.permuted(p) == c2, or None."""
    if not are_equivalent(c1, c2):
        return None
    f1 = canonical_form(c1).order
    f2 = canonical_form(c2).order
    inv2 = {pos: j for j, pos in enumerate(f2)}
    return [inv2[f1[j]] for j in range(c1.n)]
