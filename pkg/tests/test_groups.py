import pytest

from gradedtwist.groups import (
    FiniteGroup,
    IntegerWindow,
    check_group,
    cyclic_group,
    identity,
    inv,
    is_cyclic_table,
    mul,
    same_group,
    symmetric_group,
)


def test_z2_table_passes():
    g = FiniteGroup([[0, 1], [1, 0]])
    r = check_group(g)
    assert r.passed


def test_missing_inverse_fails_with_witness():
    # table[1][1] = 1 and table[1][0] = 1: element 1 has no inverse
    g = FiniteGroup([[0, 1], [1, 1]])
    r = check_group(g)
    assert not r.passed
    assert r.witness[0] in ("identity", "inverse")
    assert r.witness[1] == 1


def test_broken_associativity_has_triple_witness():
    # a quasigroup-style table that is unital but not associative
    g = FiniteGroup(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    r = check_group(g)
    assert not r.passed
    assert r.witness[0] == "associativity"
    a, b, c = r.witness[1]
    lhs = g.table[g.table[a][b]][c]
    rhs = g.table[a][g.table[b][c]]
    assert lhs != rhs


def test_s3_passes_exhaustive_216_triples():
    s3 = symmetric_group(3)
    assert s3.order == 6
    assert check_group(s3).passed
    # nonabelian witness
    assert any(s3.mul(a, b) != s3.mul(b, a) for a in s3.elements() for b in s3.elements())


def test_cyclic_group_ops():
    z2 = cyclic_group(2)
    assert mul(z2, 1, 1) == 0
    assert inv(z2, 1) == 1
    assert identity(z2) == 0
    assert is_cyclic_table(z2)
    assert not is_cyclic_table(symmetric_group(3))


def test_s3_matches_table_on_all_pairs():
    s3 = symmetric_group(3)
    for a in s3.elements():
        for b in s3.elements():
            assert s3.mul(a, b) == s3.table[a][b]
    for a in s3.elements():
        assert s3.mul(a, s3.inv(a)) == s3.identity


def test_integer_window():
    z = IntegerWindow(-2, 3)
    assert z.mul(2, 3) == 5
    assert inv(z, 5) == -5
    assert z.identity == 0
    assert list(z.elements()) == [-2, -1, 0, 1, 2, 3]
    assert z.contains(3) and not z.contains(4)
    assert check_group(z).passed
    with pytest.raises(ValueError):
        IntegerWindow(1, 3)


def test_window_compatibility():
    assert same_group(IntegerWindow(0, 3), IntegerWindow(-1, 5))
    assert not same_group(IntegerWindow(0, 3), cyclic_group(3))
    assert same_group(cyclic_group(3), cyclic_group(3))
    assert not same_group(cyclic_group(3), cyclic_group(4))


def test_index_range_errors():
    z3 = cyclic_group(3)
    with pytest.raises(ValueError):
        z3.mul(0, 3)
    with pytest.raises(ValueError):
        z3.inv(-1)
