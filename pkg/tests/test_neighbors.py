import itertools
import random

import pytest

from conftest import hamming8, i2_power, random_self_dual
from sdcodes.codes import LinearCode, ParityClass, min_weight, parity_class
from sdcodes.errors import CodeError, NotANeighbor, NotApplicable, NotSelfDual, OddWeight
from sdcodes.gf2 import BitVector
from sdcodes.neighbors import (
    NeighborDescriptor,
    doubly_even_neighbors,
    enumerate_neighbors,
    neighbor,
    orthogonal_subcode,
    weight10_neighbor_vector,
)


def self_dual_codes(n: int) -> set[LinearCode]:
    """Every self-dual code of length n, by brute force over row sets."""
    even = [BitVector(n, v) for v in range(1, 1 << n) if bin(v).count("1") % 2 == 0]
    found = set()
    for rows in itertools.combinations(even, n // 2):
        try:
            c = LinearCode.from_rows(list(rows))
        except ValueError:
            continue
        if c.k == n // 2 and c.is_self_dual():
            found.add(c)
    return found


def test_neighbor_shape():
    c = i2_power(4)
    x = BitVector.from_support(8, [1, 3])
    d = neighbor(c, x)
    assert d.is_self_dual()
    assert d.contains(x)
    inter = c.intersection(d)
    assert inter is not None and inter.k == c.k - 1


def test_neighbor_errors():
    c = i2_power(2)
    with pytest.raises(OddWeight):
        neighbor(c, BitVector.from_string("1000"))
    with pytest.raises(NotANeighbor):
        neighbor(c, BitVector.from_string("1100"))
    with pytest.raises(NotSelfDual):
        neighbor(LinearCode.from_rows(["1100"]), BitVector.from_string("1010"))
    with pytest.raises(CodeError):
        neighbor(c, BitVector.from_string("110000"))


def test_bounded_enumeration_finds_every_neighbor_at_length_four():
    c = LinearCode.from_rows(["1100", "0011"])
    brute = {d for d in self_dual_codes(4) if d != c and c.intersection(d) is not None and c.intersection(d).k == 1}
    got = {code for _, code in enumerate_neighbors(c, "bounded", w_max=2, dedup=False)}
    assert got == brute and len(got) == 2
    # the two neighbors are equivalent
    assert len(list(enumerate_neighbors(c, "bounded", w_max=2))) == 1


def test_bounded_enumeration_at_length_six():
    c = i2_power(3)
    brute = {d for d in self_dual_codes(6) if d != c and c.intersection(d) is not None and c.intersection(d).k == 2}
    got = {code for _, code in enumerate_neighbors(c, "bounded", w_max=6, dedup=False)}
    assert got == brute


def test_descriptors_rebuild_their_codes():
    c = i2_power(4)
    for desc, code in enumerate_neighbors(c, "bounded", w_max=4, dedup=False, parent="P"):
        assert desc.parent == "P"
        assert neighbor(c, desc.vector(8)) == code


def test_random_mode_is_seeded():
    c = i2_power(6)
    a = [d.to_line() for d, _ in enumerate_neighbors(c, "random", w_max=6, budget=20, seed=3, dedup=False)]
    b = [d.to_line() for d, _ in enumerate_neighbors(c, "random", w_max=6, budget=20, seed=3, dedup=False)]
    assert a == b and a


def test_targeted_mode_and_min_weight_filter():
    c = i2_power(4)
    sups = [[1, 3], [1, 3, 5, 7]]
    out = list(enumerate_neighbors(c, "targeted", supports=sups, dedup=False))
    assert [d.support for d, _ in out] == [(1, 3), (1, 3, 5, 7)]
    kept = list(enumerate_neighbors(c, "targeted", supports=sups, min_d=4, dedup=False))
    assert all(min_weight(code) >= 4 for _, code in kept)
    assert len(kept) < len(out) or all(min_weight(code) >= 4 for _, code in out)


def test_unknown_mode():
    with pytest.raises(ValueError):
        list(enumerate_neighbors(i2_power(2), "sideways"))


def test_descriptor_round_trip():
    d = NeighborDescriptor.from_line("C64_24:57,1,2,3")
    assert d.support == (1, 2, 3, 57)
    assert NeighborDescriptor.from_line(d.to_line()) == d
    with pytest.raises(ValueError):
        NeighborDescriptor.from_line("C64_24:1,2,3")
    with pytest.raises(ValueError):
        NeighborDescriptor.from_line("nothing")


def test_doubly_even_neighbors_of_i2_power():
    c = i2_power(4)
    de = doubly_even_neighbors(c)
    assert len(de) == 2 and de[0] != de[1]
    for d in de:
        assert parity_class(d) is ParityClass.DOUBLY_EVEN
        assert c.intersection(d).k == c.k - 1


def test_doubly_even_neighbors_preconditions():
    with pytest.raises(CodeError):
        doubly_even_neighbors(i2_power(3))
    with pytest.raises(CodeError):
        doubly_even_neighbors(hamming8())


def test_orthogonal_subcode_has_index_two():
    rng = random.Random(8)
    c = random_self_dual(rng, 12)
    x = BitVector.from_support(12, [1, 2, 3, 5])
    basis, y = orthogonal_subcode(c, x)
    if y is None:
        assert c.contains(x)
    else:
        assert basis.rows == c.k - 1 and y.dot(x) == 1


def test_weight_method_on_a_small_code():
    # the weight-2 words of i2^4 are the four pairs; x meets each pair once
    c = i2_power(4)
    sol = weight10_neighbor_vector(c, weight=2)
    assert sol is not None
    for w in c.codewords():
        if w.weight == 2:
            assert w.dot(sol.x) == 1
    assert sol.x.weight % 2 == 0
    assert sol.unique
    for d in sol.neighbors():
        assert d.is_self_dual()
        assert all(w.weight != 2 for w in d.codewords() if c.contains(w))


def test_weight_method_without_words():
    with pytest.raises(NotApplicable):
        weight10_neighbor_vector(hamming8())
