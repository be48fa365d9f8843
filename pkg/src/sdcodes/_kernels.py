"""Compiled inner loops.

Everything here works on packed uint64 words: coordinate ``j`` of a vector
lives in word ``j >> 6`` at bit ``j & 63``.  A matrix is a 2-D ``(rows, nw)``
array.  Nothing in this module knows about codes; the callers own the
semantics.
"""

from __future__ import annotations

import numpy as np
from llvmlite import ir
from numba import njit, prange
from numba.core import types
from numba.extending import intrinsic


@intrinsic
def popcnt(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@intrinsic
def cttz(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], ir.Constant(ir.IntType(1), 0))

    return sig, codegen


@njit(cache=True)
def popcount_array(a):
    out = np.empty(a.shape[0], np.int64)
    for i in range(a.shape[0]):
        s = 0
        for t in range(a.shape[1]):
            s += popcnt(a[i, t])
        out[i] = s
    return out


# --------------------------------------------------------------------------
# elimination


@njit(cache=True)
def rref_inplace(a, ncols):
    """Reduce ``a`` in place; returns (rank, pivots).  Pivot ties go to the
    smallest column."""
    r = a.shape[0]
    nw = a.shape[1]
    pivots = np.empty(min(r, ncols), np.int64)
    rank = 0
    for col in range(ncols):
        if rank == r:
            break
        w = col >> 6
        b = np.uint64(1) << np.uint64(col & 63)
        p = -1
        for i in range(rank, r):
            if a[i, w] & b:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for t in range(nw):
                tmp = a[p, t]
                a[p, t] = a[rank, t]
                a[rank, t] = tmp
        for i in range(r):
            if i != rank and (a[i, w] & b):
                for t in range(nw):
                    a[i, t] ^= a[rank, t]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank].copy()


@njit(cache=True)
def rref_columns_inplace(a, cols):
    """Gauss-Jordan using only the columns listed in ``cols`` (in that order)
    as pivot candidates.  Returns (rank, pivots)."""
    r = a.shape[0]
    nw = a.shape[1]
    pivots = np.empty(min(r, cols.shape[0]), np.int64)
    rank = 0
    for ci in range(cols.shape[0]):
        if rank == r:
            break
        col = cols[ci]
        w = col >> 6
        b = np.uint64(1) << np.uint64(col & 63)
        p = -1
        for i in range(rank, r):
            if a[i, w] & b:
                p = i
                break
        if p < 0:
            continue
        if p != rank:
            for t in range(nw):
                tmp = a[p, t]
                a[p, t] = a[rank, t]
                a[rank, t] = tmp
        for i in range(r):
            if i != rank and (a[i, w] & b):
                for t in range(nw):
                    a[i, t] ^= a[rank, t]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank].copy()


# --------------------------------------------------------------------------
# Gray-code sweeps


@njit(cache=True)
def _gray_hist_range(G, base, lo_bits, prefix, hist):
    """Histogram of weights of base + prefix-combination + all 2^lo_bits
    combinations of the first ``lo_bits`` rows of G."""
    nw = G.shape[1]
    k = G.shape[0]
    cur = base.copy()
    for j in range(lo_bits, k):
        if (prefix >> (j - lo_bits)) & 1:
            for t in range(nw):
                cur[t] ^= G[j, t]
    w = 0
    for t in range(nw):
        w += popcnt(cur[t])
    hist[w] += 1
    total = np.uint64(1) << np.uint64(lo_bits)
    if nw == 1:
        c = cur[0]
        g = G[:, 0].copy()
        for i in range(np.uint64(1), total):
            c ^= g[cttz(i)]
            hist[popcnt(c)] += 1
    else:
        for i in range(np.uint64(1), total):
            j = cttz(i)
            w = 0
            for t in range(nw):
                cur[t] ^= G[j, t]
                w += popcnt(cur[t])
            hist[w] += 1


@njit(cache=True, parallel=True)
def gray_histogram(G, base, ncols, top_bits):
    """Weight histogram of the coset base + rowspace(G) (all 2^k vectors).

    The top ``top_bits`` message bits are fixed per chunk; chunks run in
    parallel and their histograms are summed, so the result does not depend
    on the chunking."""
    k = G.shape[0]
    if top_bits > k:
        top_bits = k
    lo = k - top_bits
    nchunks = 1 << top_bits
    parts = np.zeros((nchunks, ncols + 1), np.int64)
    for c in prange(nchunks):
        _gray_hist_range(G, base, lo, c, parts[c])
    out = np.zeros(ncols + 1, np.int64)
    for c in range(nchunks):
        for w in range(ncols + 1):
            out[w] += parts[c, w]
    return out


@njit(cache=True)
def gray_min_weight(G, base):
    """Minimum weight over base + rowspace(G)."""
    nw = G.shape[1]
    k = G.shape[0]
    cur = base.copy()
    best = 0
    for t in range(nw):
        best += popcnt(cur[t])
    total = np.uint64(1) << np.uint64(k)
    for i in range(np.uint64(1), total):
        j = cttz(i)
        w = 0
        for t in range(nw):
            cur[t] ^= G[j, t]
            w += popcnt(cur[t])
        if w < best:
            best = w
    return best


@njit(cache=True)
def all_words(G):
    k = G.shape[0]
    nw = G.shape[1]
    total = 1 << k
    out = np.zeros((total, nw), np.uint64)
    cur = np.zeros(nw, np.uint64)
    for i in range(1, total):
        j = cttz(np.uint64(i))
        for t in range(nw):
            cur[t] ^= G[j, t]
            out[i, t] = cur[t]
    return out


# --------------------------------------------------------------------------
# low-weight enumeration over a systematic generator


@njit(cache=True)
def combo_scan(Gs, base, t, other_mask, skip_le, wmax, hist, collect, out, nout):
    """Visit base + XOR of every set of at most ``t`` rows of ``Gs``.

    Vectors whose weight on ``other_mask`` is ``<= skip_le`` are skipped
    (they were seen by the scan over the other information set).  Weights up
    to ``wmax`` are histogrammed; when ``collect`` is set, those vectors are
    appended to ``out`` starting at ``nout``.  Returns the new ``nout``
    (which may exceed ``out``'s capacity; the caller re-runs with room)."""
    k = Gs.shape[0]
    nw = Gs.shape[1]
    acc = np.zeros((t + 1, nw), np.uint64)
    for q in range(nw):
        acc[0, q] = base[q]
    idx = np.zeros(t + 1, np.int64)
    cap = out.shape[0]
    depth = 0
    # visit the root
    w = 0
    wo = 0
    for q in range(nw):
        w += popcnt(acc[0, q])
        wo += popcnt(acc[0, q] & other_mask[q])
    if wo > skip_le and w <= wmax:
        hist[w] += 1
        if collect:
            if nout < cap:
                for q in range(nw):
                    out[nout, q] = acc[0, q]
            nout += 1
    if t == 0:
        return nout
    idx[0] = 0
    depth = 1
    while depth > 0:
        i = idx[depth - 1]
        if i >= k:
            depth -= 1
            if depth > 0:
                idx[depth - 1] += 1
            continue
        w = 0
        wo = 0
        for q in range(nw):
            v = acc[depth - 1, q] ^ Gs[i, q]
            acc[depth, q] = v
            w += popcnt(v)
            wo += popcnt(v & other_mask[q])
        if wo > skip_le and w <= wmax:
            hist[w] += 1
            if collect:
                if nout < cap:
                    for q in range(nw):
                        out[nout, q] = acc[depth, q]
                nout += 1
        if depth < t:
            idx[depth] = i + 1
            depth += 1
        else:
            idx[depth - 1] += 1
    return nout


@njit(cache=True)
def combo_min_exact(Gs, size, best):
    """Minimum weight over XORs of exactly ``size`` rows of Gs, or ``best``
    if nothing lighter turns up."""
    k = Gs.shape[0]
    nw = Gs.shape[1]
    if size == 0 or size > k:
        return best
    acc = np.zeros((size + 1, nw), np.uint64)
    idx = np.zeros(size + 1, np.int64)
    idx[0] = 0
    depth = 1
    while depth > 0:
        i = idx[depth - 1]
        # not enough rows left to reach the requested size
        if i > k - (size - depth + 1):
            depth -= 1
            if depth > 0:
                idx[depth - 1] += 1
            continue
        for q in range(nw):
            acc[depth, q] = acc[depth - 1, q] ^ Gs[i, q]
        if depth == size:
            w = 0
            for q in range(nw):
                w += popcnt(acc[depth, q])
            if w < best:
                best = w
            idx[depth - 1] += 1
        else:
            idx[depth] = i + 1
            depth += 1
    return best


# --------------------------------------------------------------------------
# covering radius


@njit(cache=True)
def syndrome_bfs(columns, r):
    """Coset-leader weights of all 2^r syndromes (255 = unreachable).

    ``columns`` holds the parity-check columns as integers.  Levels are
    expanded in weight order, so the first visit is a leader."""
    size = np.int64(1) << np.int64(r)
    dist = np.full(size, 255, np.uint8)
    dist[0] = 0
    frontier = np.zeros(1, np.int64)
    level = 0
    while frontier.shape[0] > 0:
        nxt = np.empty(min(size, frontier.shape[0] * columns.shape[0]), np.int64)
        m = 0
        for f in frontier:
            for c in columns:
                s = f ^ c
                if dist[s] == 255:
                    dist[s] = level + 1
                    nxt[m] = s
                    m += 1
        frontier = nxt[:m].copy()
        level += 1
    return dist


# --------------------------------------------------------------------------
# circulant search


@njit(cache=True)
def circulant_signature_one(r, n):
    mask = (1 << n) - 1
    sig = 0
    for s in range(n):
        rot = ((r << s) | (r >> (n - s))) & mask if s else r
        if popcnt(np.uint64(r & rot)) & 1:
            sig |= 1 << s
    return sig


@njit(cache=True)
def circulant_signatures(n):
    """Autocorrelation vector (packed, bit s) of every n-bit row."""
    size = 1 << n
    mask = (1 << n) - 1
    out = np.empty(size, np.int64)
    for r in range(size):
        sig = 0
        for s in range(n):
            rot = ((r << s) | (r >> (n - s))) & mask if s else r
            if popcnt(np.uint64(r & rot)) & 1:
                sig |= 1 << s
        out[r] = sig
    return out


@njit(cache=True)
def join_pairs(n, sig, order, starts, counts, weights, min_sum, pair_maps, minrot, fill, out_ra, out_rb, out_key):
    """Enumerate (ra, rb) with sig[ra] ^ sig[rb] == 1 passing the search
    filters; for each, record the orbit key under the known equivalences.

    ``pair_maps`` is (m, 2, 2^n): for each combined multiplier choice the
    images of ra and rb.  Returns the number of pairs found (``fill`` false
    only counts)."""
    size = 1 << n
    last = 1 << (n - 1)
    shift = n
    m = 0
    nmaps = pair_maps.shape[0]
    for ra in range(size):
        target = sig[ra] ^ 1
        if counts[target] == 0:
            continue
        st = starts[target]
        for q in range(counts[target]):
            rb = order[st + q]
            if (rb & last) == 0:
                continue
            s = weights[ra] + weights[rb]
            if (s & 3) != 1 or s < min_sum:
                continue
            if fill:
                best = -1
                for u in range(nmaps):
                    a = minrot[pair_maps[u, 0, ra]]
                    b = minrot[pair_maps[u, 1, rb]]
                    key1 = (a << shift) | b
                    key2 = (b << shift) | a
                    if best < 0 or key1 < best:
                        best = key1
                    if key2 < best:
                        best = key2
                out_ra[m] = ra
                out_rb[m] = rb
                out_key[m] = best
            m += 1
    return m
