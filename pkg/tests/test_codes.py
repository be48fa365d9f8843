import random

import numpy as np
import pytest

from conftest import golay24, hamming8, i2_power, random_code, random_self_dual
from sdcodes.codes import (
    LinearCode,
    ParityClass,
    classify_enumerator,
    doubly_even_subcode,
    dual,
    krawtchouk,
    macwilliams_transform,
    min_weight,
    min_weight_bruteforce,
    parity_class,
    rains_bound,
    shadow,
    shadow_vector,
    weight_distribution,
)
from sdcodes.errors import NotSelfDual, NotSinglyEven, TooLarge, Unclassifiable
from sdcodes.gf2 import BitVector


def test_dependent_rows_are_dropped():
    c = LinearCode.from_rows(["1100", "0011", "1111"])
    assert c.k == 2
    assert c == LinearCode.from_rows(["1111", "1100"])


def test_zero_code_rejected():
    with pytest.raises(ValueError):
        LinearCode.from_rows(["0000"])


def test_membership_and_reduce():
    c = hamming8()
    assert BitVector.from_string("11000011") in c
    v = BitVector.from_string("10000000")
    assert v not in c
    assert c.reduce(v) == c.reduce(v ^ c.rows()[0])


def test_dual_of_hamming_is_itself():
    c = hamming8()
    assert dual(c) == c
    assert c.is_self_dual()


@pytest.mark.parametrize("n, d", [(8, 4), (22, 6), (24, 8), (64, 12), (66, 12), (72, 16)])
def test_rains_bound(n, d):
    assert rains_bound(n) == d


def test_rains_bound_needs_even_length():
    with pytest.raises(ValueError):
        rains_bound(7)


def test_parity_classes():
    assert parity_class(golay24()) is ParityClass.DOUBLY_EVEN
    assert parity_class(i2_power(4)) is ParityClass.SINGLY_EVEN
    with pytest.raises(NotSelfDual):
        parity_class(LinearCode.from_rows(["1100"]))


def test_golay_parameters():
    g = golay24()
    assert min_weight(g) == 8
    assert weight_distribution(g).as_dict() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_min_weight_matches_enumeration_on_random_codes():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(6, 40)
        k = rng.randint(1, min(12, n - 1))
        c = random_code(rng, n, k)
        assert min_weight(c) == min_weight_bruteforce(c), (n, k)


def test_low_weight_counts_match_full_distribution():
    rng = random.Random(3)
    for n in (16, 20, 24):
        c = random_self_dual(rng, n)
        full = weight_distribution(c).counts
        assert c.low_weight_counts(10).tolist() == list(full[:11])


def test_words_of_weight():
    g = golay24()
    words = g.words_of_weight(8)
    assert words.shape[0] == 759
    assert {BitVector.from_words(w, 24).weight for w in words} == {8}


def test_weight_distribution_budget():
    with pytest.raises(TooLarge):
        weight_distribution(golay24(), max_k=10)


def test_krawtchouk_small_values():
    # K_j(i) for n = 3
    assert [krawtchouk(3, 1, i) for i in range(4)] == [3, 1, -1, -3]


@pytest.mark.parametrize("make", [hamming8, golay24, lambda: i2_power(5)])
def test_macwilliams_fixed_point_on_self_dual_codes(make):
    c = make()
    wd = weight_distribution(c)
    assert macwilliams_transform(wd, c.n, c.k) == wd


def test_macwilliams_gives_dual_distribution():
    rng = random.Random(11)
    c = random_code(rng, 14, 5)
    assert macwilliams_transform(weight_distribution(c), 14, 5) == weight_distribution(dual(c))


def test_macwilliams_rejects_garbage():
    wd = weight_distribution(hamming8())
    with pytest.raises(ValueError):
        macwilliams_transform(wd, 8, 3)


def test_doubly_even_subcode_has_index_two():
    c = i2_power(4)
    c0 = doubly_even_subcode(c)
    assert c0.k == c.k - 1
    assert np.all(c0.generator.row_weights() % 4 == 0)
    with pytest.raises(NotSinglyEven):
        doubly_even_subcode(hamming8())


def test_shadow_of_i2_power():
    c = i2_power(4)
    sh = shadow(c, max_weight=8)
    # every shadow vector has one coordinate of each pair
    assert sh.min_weight == 4
    assert sh.count(4) == 16
    assert sum(sh.distribution) == 16
    u = shadow_vector(c)
    assert all(r.dot(u) == (r.weight // 2) % 2 for r in c.rows())


def test_shadow_full_sweep_matches_bounded_counts():
    rng = random.Random(5)
    c = random_self_dual(rng, 20)
    if parity_class(c) is ParityClass.DOUBLY_EVEN:
        pytest.skip("walk ended on a doubly even code")
    full = shadow(c, max_weight=c.n)
    part = shadow(c, max_weight=10)
    assert list(full.distribution[:11]) == list(part.distribution)
    assert sum(full.distribution) == 2 ** c.k
    assert all(a == 0 for w, a in enumerate(full.distribution) if w % 4 != (c.n // 2) % 4)


def test_shadow_half_cosets_are_ordered_and_distinct():
    c = i2_power(4)
    h1, h3 = shadow(c, max_weight=0).half_coset_reps
    assert h1.to_string() < h3.to_string()
    c0 = doubly_even_subcode(c)
    assert not c0.contains(h1 ^ h3)


def test_classify_known_table_codes(registry):
    assert classify_enumerator(registry.code("C64_1")).family == "W64_2"
    assert classify_enumerator(registry.code("C64_1")).beta == 0
    assert classify_enumerator(registry.code("C64_67")).beta == 72


def test_classify_rejects_non_extremal():
    with pytest.raises(Unclassifiable):
        classify_enumerator(i2_power(32))
