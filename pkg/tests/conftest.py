import itertools
import random

import numpy as np
import pytest
from hypothesis import settings

from sdcodes.codes import LinearCode
from sdcodes.gf2 import BitMatrix, BitVector
from sdcodes.tables import Registry

# first calls trigger JIT compilation
settings.register_profile("sdcodes", deadline=None)
settings.load_profile("sdcodes")


def golay24() -> LinearCode:
    """Extended cyclic Golay code from g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11."""
    g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]
    rows = []
    for s in range(12):
        bits = [0] * 23
        for i, b in enumerate(g):
            bits[i + s] = b
        rows.append(bits + [sum(bits) % 2])
    return LinearCode(BitMatrix.from_bits(np.array(rows, np.uint8)), name="g24")


def hamming8() -> LinearCode:
    return LinearCode.from_rows(["11110000", "00111100", "00001111", "01010101"], name="e8")


def i2_power(m: int) -> LinearCode:
    """Direct sum of m copies of {00, 11}: the singly even code i2^m."""
    rows = [BitVector.from_support(2 * m, [2 * i + 1, 2 * i + 2]) for i in range(m)]
    return LinearCode(BitMatrix.from_rows(rows), name=f"i2^{m}")


def random_code(rng: random.Random, n: int, k: int) -> LinearCode:
    while True:
        rows = [BitVector(n, rng.getrandbits(n)) for _ in range(k)]
        try:
            c = LinearCode(BitMatrix.from_rows(rows, n))
        except ValueError:
            continue
        if c.k == k:
            return c


def random_self_dual(rng: random.Random, n: int, steps: int = 6) -> LinearCode:
    """Random walk through neighbors starting from i2^(n/2)."""
    from sdcodes.neighbors import neighbor

    c = i2_power(n // 2)
    for _ in range(steps):
        while True:
            sup = rng.sample(range(1, n + 1), 2 * rng.randint(1, n // 2 - 1) if n > 2 else 2)
            x = BitVector.from_support(n, sup)
            if not c.contains(x):
                c = neighbor(c, x)
                break
    return c


def brute_equivalent(c1: LinearCode, c2: LinearCode) -> bool:
    """Backtracking over coordinate maps; the projections of the two codes on
    the mapped coordinates must agree at every depth."""
    if (c1.n, c1.k) != (c2.n, c2.k):
        return False
    n = c1.n
    w1 = [w.bits() for w in c1.codewords()]
    w2 = [w.bits() for w in c2.codewords()]
    a = np.array(w1, np.uint8)
    b = np.array(w2, np.uint8)
    if sorted(a.sum(axis=1)) != sorted(b.sum(axis=1)):
        return False

    def proj(m, cols):
        return {tuple(r) for r in m[:, cols]}

    perm: list[int] = []
    used = [False] * n

    def extend(j: int) -> bool:
        if j == n:
            return True
        for t in range(n):
            if used[t] or a[:, j].sum() != b[:, t].sum():
                continue
            perm.append(t)
            if proj(a, list(range(j + 1))) == proj(b, perm):
                used[t] = True
                if extend(j + 1):
                    return True
                used[t] = False
            perm.pop()
        return False

    return extend(0)


def shuffled(c: LinearCode, rng: random.Random) -> tuple[LinearCode, list[int]]:
    perm = list(range(c.n))
    rng.shuffle(perm)
    return c.permuted(perm), perm


@pytest.fixture(scope="session")
def registry() -> Registry:
    return Registry()


def all_vectors(n: int):
    for v in range(1 << n):
        yield BitVector(n, v)


def pairs(seq):
    return itertools.combinations(seq, 2)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
