import random
from math import comb

import pytest

from artifact import (
    GF,
    QQ,
    ZZ,
    ChainMap,
    ConnComplex,
    Matrix,
    boxtimes_generator_tests,
    classify,
    compose_maps,
    disk,
    dk,
    ez_map,
    homology,
    identity,
    identity_chain_map,
    is_exact,
    mapping_cone,
    nor_tensor_compare,
    shuffle_map_left,
    shuffle_map_right,
    shuffle_product,
    shuffle_to_json,
    sphere,
    tensor,
    tensor_map,
)
from artifact.deltacat import enumerate_jointly_monic_pairs
from artifact.errors import DomainError, RingError

from oracles import random_chain_map, random_complex


def zmat(rows, cols, grid):
    return Matrix(ZZ, rows, cols, tuple(tuple(r) for r in grid))


def torsion_circle():
    # H_0 = Z/2
    return ConnComplex(ZZ, (1, 1), {1: zmat(1, 1, [[2]])})


# ---------------------------------------------------------------------------
# the shuffle product complex


def test_shuffle_blocks_follow_the_pair_enumeration():
    rng = random.Random(5)
    x = random_complex(rng, ZZ, max_top=2, max_rank=2)
    y = random_complex(rng, ZZ, max_top=2, max_rank=2)
    s = shuffle_product(x, y)
    assert s.top == x.top + y.top
    for n in range(s.top + 1):
        pairs = enumerate_jointly_monic_pairs(n, x.top, y.top)
        assert list(s.blocks[n]) == pairs
        assert s.rank(n) == sum(
            x.rank(f.target_top) * y.rank(g.target_top) for f, g in pairs
        )


def test_shuffle_with_the_unit_is_the_identity():
    rng = random.Random(6)
    for ring in (ZZ, GF(3)):
        for _ in range(5):
            x = random_complex(rng, ring, max_top=3, max_rank=3)
            right = shuffle_product(x, sphere(0, ring)).underlying
            left = shuffle_product(sphere(0, ring), x).underlying
            assert right.ranks == x.ranks
            assert left.ranks == x.ranks
            for n in range(1, x.top + 1):
                assert right.diff(n) == x.diff(n)
                assert left.diff(n) == x.diff(n)


def test_shuffle_of_two_one_spheres_is_pinned():
    s = shuffle_product(sphere(1), sphere(1))
    assert s.underlying.ranks == (0, 1, 2)
    assert s.diff(2).entries == ((-1, -1),)
    assert [(f.values, g.values) for f, g in s.blocks[2]] == [
        ((0, 1, 1), (0, 0, 1)),
        ((0, 0, 1), (0, 1, 1)),
    ]
    hs = homology(s.underlying)
    assert [h.free_rank for h in hs] == [0, 0, 1]
    assert all(h.torsion == () for h in hs)


def test_shuffle_squares_to_zero_and_respects_rings():
    rng = random.Random(7)
    for ring in (ZZ, QQ, GF(2)):
        x = random_complex(rng, ring, max_top=2, max_rank=2)
        y = random_complex(rng, ring, max_top=2, max_rank=2)
        s = shuffle_product(x, y).underlying
        for n in range(2, s.top + 1):
            assert (s.diff(n - 1) @ s.diff(n)).is_zero
    with pytest.raises(RingError):
        shuffle_product(sphere(1), sphere(1, QQ))


# ---------------------------------------------------------------------------
# functoriality


def test_shuffle_map_of_identities_is_the_identity():
    x = torsion_circle()
    y = sphere(1)
    s = shuffle_product(x, y).underlying
    assert shuffle_map_left(identity_chain_map(x), y) == identity_chain_map(s)
    assert shuffle_map_right(x, identity_chain_map(y)) == identity_chain_map(s)
    with pytest.raises(RingError):
        shuffle_map_left(identity_chain_map(x), sphere(1, QQ))
    with pytest.raises(RingError):
        shuffle_map_right(sphere(1, QQ), identity_chain_map(y))


def test_shuffle_maps_compose():
    rng = random.Random(8)
    y = random_complex(rng, ZZ, max_top=2, max_rank=2)
    f = random_chain_map(rng, ZZ, max_top=2, max_rank=2)
    g = ChainMap(
        f.target,
        f.target,
        {n: identity(ZZ, f.target.rank(n)).scale(2) for n in range(f.target.top + 1)},
    )
    left = shuffle_map_left(compose_maps(g, f), y)
    assert left == compose_maps(shuffle_map_left(g, y), shuffle_map_left(f, y))
    right = shuffle_map_right(y, compose_maps(g, f))
    assert right == compose_maps(shuffle_map_right(y, g), shuffle_map_right(y, f))


def test_comparison_map_is_natural():
    mu = ChainMap(sphere(1), sphere(1), {1: zmat(1, 1, [[3]])})
    y = torsion_circle()
    lhs = compose_maps(shuffle_map_left(mu, y), ez_map(sphere(1), y))
    rhs = compose_maps(ez_map(sphere(1), y), tensor_map(mu, identity_chain_map(y)))
    assert lhs == rhs


# ---------------------------------------------------------------------------
# the comparison map


def test_comparison_map_on_two_circles_is_signed():
    nabla = ez_map(sphere(1), sphere(1))
    assert nabla.component(2).entries == ((1,), (-1,))
    assert is_exact(mapping_cone(nabla))


def test_comparison_map_is_an_equivalence_on_small_torsion_examples():
    cases = [
        (torsion_circle(), torsion_circle()),
        (disk(1), sphere(1)),
        (sphere(2), torsion_circle()),
    ]
    for x, y in cases:
        nabla = ez_map(x, y)
        assert is_exact(mapping_cone(nabla))
        assert homology(tensor(x, y)) == homology(shuffle_product(x, y).underlying)


def test_torsion_appears_on_both_routes():
    x = torsion_circle()
    hs_tensor = homology(tensor(x, x))
    hs_shuffle = homology(shuffle_product(x, x).underlying)
    assert hs_tensor == hs_shuffle
    assert hs_tensor[1].torsion == (2,)


def test_random_comparison_maps_are_equivalences():
    rng = random.Random(9)
    for ring in (ZZ, GF(2)):
        for _ in range(10):
            x = random_complex(rng, ring, max_top=2, max_rank=2)
            y = random_complex(rng, ring, max_top=2, max_rank=2)
            nabla = ez_map(x, y)
            assert is_exact(mapping_cone(nabla))


# ---------------------------------------------------------------------------
# the two routes to the product of simplicial modules


def test_normalized_tensor_matches_shuffle_on_circles():
    report = nor_tensor_compare(dk(sphere(1), 2), dk(sphere(1), 2))
    assert report.left_ranks == (0, 1, 2)
    assert report.ranks_match and report.homology_matches and report.passed


def test_normalized_tensor_comparison_rejects_mismatches():
    with pytest.raises(RingError):
        nor_tensor_compare(dk(sphere(1), 2), dk(sphere(1, QQ), 2))
    with pytest.raises(DomainError):
        nor_tensor_compare(dk(sphere(1), 2), dk(sphere(1), 3))


def test_normalized_tensor_matches_shuffle_on_random_pairs():
    rng = random.Random(10)
    for ring in (ZZ, GF(2)):
        for _ in range(3):
            m = dk(random_complex(rng, ring, max_top=2, max_rank=2), 2)
            n = dk(random_complex(rng, ring, max_top=2, max_rank=2), 2)
            assert nor_tensor_compare(m, n).passed


# ---------------------------------------------------------------------------
# generator stability


def test_generator_tests_on_a_boundary_inclusion():
    mu = ChainMap(sphere(0), disk(1), {0: identity(ZZ, 1)})
    assert classify(mu).cofibration and not classify(mu).weak_equivalence
    for n in (1, 2):
        disk_class, unit_class = boxtimes_generator_tests(mu, n)
        assert disk_class.cofibration and disk_class.weak_equivalence
        assert unit_class.cofibration and not unit_class.weak_equivalence
    with pytest.raises(DomainError):
        boxtimes_generator_tests(mu, 0)


def test_generator_tests_on_a_trivial_cofibration():
    mu = ChainMap(sphere(1), disk(2) , {1: identity(ZZ, 1)})
    cls = classify(mu)
    assert cls.cofibration and cls.weak_equivalence is False
    # a genuinely trivial cofibration: 0 -> D(1)
    zero = ConnComplex(ZZ, (0,), {})
    iota = ChainMap(zero, disk(1), {})
    cls = classify(iota)
    assert cls.cofibration and cls.weak_equivalence
    disk_class, unit_class = boxtimes_generator_tests(iota, 2)
    assert disk_class.cofibration and disk_class.weak_equivalence
    assert unit_class.cofibration and unit_class.weak_equivalence


# ---------------------------------------------------------------------------
# serialization


def test_shuffle_json_carries_the_block_layout():
    s = shuffle_product(sphere(1), sphere(1))
    obj = shuffle_to_json(s)
    assert obj["ranks"] == [0, 1, 2]
    assert obj["blocks"][2] == [
        {"f": [0, 1, 1], "g": [0, 0, 1], "k": 1, "l": 1},
        {"f": [0, 0, 1], "g": [0, 1, 1], "k": 1, "l": 1},
    ]
