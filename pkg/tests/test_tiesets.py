import io
import math

import pytest

from circbal.core import BalanceCondition, SystemConfig, TooLarge, UnitSet, ValidationError
from circbal.tiesets import (
    catalog_from_dict,
    catalog_to_dict,
    dump_catalog,
    dumps_catalog,
    enumerate_minimum_tiesets,
    enumerate_tiesets,
    load_catalog,
    loads_catalog,
    minimal_filter,
)

from conftest import all_subsets, naive_cog, reflection_axes

BC1, BC2, BC3 = BalanceCondition

TABLE1 = {
    (2, 6): (3, 5, 5), (4, 6): (3, 3, 3),
    (2, 8): (4, 4, 4), (4, 8): (6, 6, 6), (6, 8): (4, 4, 4),
    (2, 10): (5, 7, 7), (4, 10): (10, 12, 12), (6, 10): (10, 10, 10), (8, 10): (5, 5, 5),
    (2, 12): (6, 10, 10), (4, 12): (15, 19, 31), (6, 12): (11, 15, 36),
    (8, 12): (15, 15, 19), (10, 12): (6, 6, 6),
    (2, 14): (7, 9, 9), (4, 14): (21, 23, 23), (6, 14): (21, 23, 37),
    (8, 14): (21, 21, 35), (10, 14): (21, 21, 21), (12, 14): (7, 7, 7),
}


def oracle_balanced(units, n, condition):
    """Independent predicate: geometric reflections, plain CoG sum, sector arcs."""
    axes = reflection_axes(units, n)
    if condition is BC1:
        return axes > 0 and axes % 2 == 0
    if condition is BC2:
        m = len(units)
        arcs = [(units[(i + 2) % m] - units[i]) % n or n for i in range(m)]
        if m == 2:
            arcs = [n, n]
        pattern = len(set(arcs)) == 1 or (m % 2 == 0 and arcs[: m // 2] == arcs[m // 2:])
        return axes > 1 and pattern
    return math.hypot(*naive_cog(units, n)) < 1e-6


def oracle_minimum_tiesets(n, k, condition):
    ties = [set(u) for u in all_subsets(n) if len(u) >= k and oracle_balanced(u, n, condition)]
    minimal = [t for t in ties if not any(o < t for o in ties)]
    return sorted((tuple(sorted(t)) for t in minimal), key=lambda t: (len(t), t))


def test_enumerate_tiesets_small_bc1():
    sets = {t.units for t in enumerate_tiesets(SystemConfig(6, 2), BC1)}
    assert {(1, 4), (2, 5), (3, 6), (1, 2, 4, 5)} <= sets
    expected = {u for u in all_subsets(6) if len(u) >= 2 and oracle_balanced(u, 6, BC1)}
    assert sets == expected


def test_enumerate_tiesets_k_equals_n():
    assert [t.units for t in enumerate_tiesets(SystemConfig(4, 4), BC3)] == [(1, 2, 3, 4)]


def test_enumerate_tiesets_canonical_order():
    sets = enumerate_tiesets(SystemConfig(8, 2), BC3)
    keys = [(len(t), t.units) for t in sets]
    assert keys == sorted(keys)


def test_minimal_filter_examples():
    a, b = UnitSet((1, 4), 12), UnitSet((1, 4, 7, 10), 12)
    assert minimal_filter([a, b]) == [a]
    c, d, e = UnitSet((1, 3, 5), 6), UnitSet((2, 4, 6), 6), UnitSet((1, 4), 6)
    assert set(minimal_filter([c, d, e])) == {c, d, e}


def test_minimal_filter_of_generation_stage():
    assert len(minimal_filter(enumerate_tiesets(SystemConfig(12, 4), BC3))) == 31


@pytest.mark.parametrize("condition", list(BalanceCondition))
@pytest.mark.parametrize("n, k", [(6, 2), (8, 4), (9, 3), (10, 4), (12, 4), (12, 8)])
def test_sweep_matches_generate_then_filter(n, k, condition):
    config = SystemConfig(n, k)
    two_stage = minimal_filter(enumerate_tiesets(config, condition))
    assert list(enumerate_minimum_tiesets(config, condition).tiesets) == two_stage


@pytest.mark.parametrize("condition", list(BalanceCondition))
@pytest.mark.parametrize("n, k", [(6, 2), (7, 2), (8, 3), (10, 4), (12, 6), (12, 8)])
def test_catalog_matches_oracle(n, k, condition):
    got = [t.units for t in enumerate_minimum_tiesets(SystemConfig(n, k), condition)]
    assert got == oracle_minimum_tiesets(n, k, condition)


def test_bc2_six_two_members():
    cat = enumerate_minimum_tiesets(SystemConfig(6, 2), BC2)
    assert [t.units for t in cat] == [(1, 4), (2, 5), (3, 6), (1, 3, 5), (2, 4, 6)]


@pytest.mark.parametrize("k, n", sorted(TABLE1, key=lambda kn: (kn[1], kn[0])))
def test_table1_counts(k, n):
    counts = tuple(len(enumerate_minimum_tiesets(SystemConfig(n, k), c)) for c in BalanceCondition)
    assert counts == TABLE1[(k, n)]


@pytest.mark.parametrize("k, n", sorted(TABLE1))
def test_catalog_invariants(k, n):
    config = SystemConfig(n, k)
    cats = {c: enumerate_minimum_tiesets(config, c) for c in BalanceCondition}
    assert len(cats[BC1]) <= len(cats[BC2]) <= len(cats[BC3])
    for c, cat in cats.items():
        masks = [t.mask for t in cat]
        assert len(set(masks)) == len(masks)
        keys = [(len(t), t.units) for t in cat]
        assert keys == sorted(keys)
        for i, a in enumerate(masks):
            for j, b in enumerate(masks):
                assert i == j or a & b != a
        members = {t.units for t in cat}
        for t in cat:
            assert len(t) >= k
            assert oracle_balanced(t.units, n, c)
            for shift in range(1, n):
                assert t.rotate(shift).units in members
    bc3 = [t.mask for t in cats[BC3]]
    for t in cats[BC1].tiesets + cats[BC2].tiesets:
        assert any(m & t.mask == m for m in bc3)


def test_degenerate_k_equals_n():
    assert len(enumerate_minimum_tiesets(SystemConfig(7, 7), BC1)) == 0
    full = enumerate_minimum_tiesets(SystemConfig(8, 8), BC1)
    assert [t.units for t in full] == [tuple(range(1, 9))]
    assert len(enumerate_minimum_tiesets(SystemConfig(7, 7), BC3)) == 1


def test_too_large():
    with pytest.raises(TooLarge):
        enumerate_minimum_tiesets(SystemConfig(25, 4), BC3)
    with pytest.raises(TooLarge):
        enumerate_tiesets(SystemConfig(10, 4), BC3, max_n=8)


def test_catalog_text_format():
    cat = enumerate_minimum_tiesets(SystemConfig(6, 2), BC2)
    assert dumps_catalog(cat) == (
        "# n=6,k=2,condition=BC2,tol=1e-09,count=5\n"
        "1,4\n2,5\n3,6\n1,3,5\n2,4,6\n"
    )


@pytest.mark.parametrize("condition", list(BalanceCondition))
def test_catalog_roundtrip(condition, tmp_path):
    cat = enumerate_minimum_tiesets(SystemConfig(12, 4), condition)
    assert loads_catalog(dumps_catalog(cat)) == cat
    assert catalog_from_dict(catalog_to_dict(cat)) == cat
    path = tmp_path / "cat.txt"
    with open(path, "w") as fh:
        dump_catalog(cat, fh)
    with open(path) as fh:
        assert load_catalog(fh) == cat


def test_empty_catalog_roundtrip():
    cat = enumerate_minimum_tiesets(SystemConfig(7, 7), BC1)
    assert loads_catalog(dumps_catalog(cat)) == cat


@pytest.mark.parametrize(
    "text",
    ["", "n=6\n1,4\n", "# n=6,k=2,condition=BC2,tol=1e-09,count=2\n1,4\n"],
)
def test_catalog_reader_rejects(text):
    with pytest.raises(ValidationError):
        loads_catalog(text)
