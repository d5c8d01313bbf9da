import pytest
from hypothesis import given, strategies as st

from loopcheck.table import (
    LoopError,
    NoIdentity,
    NoTwoSidedInverse,
    NotLatinSquare,
    NotUniquely2Divisible,
    OrderTooLarge,
    aaip_violation,
    associativity_violation,
    commutativity_violation,
    cyclic_group,
    direct_product,
    flexibility_violation,
    has_aaip,
    is_associative,
    is_commutative,
    is_flexible,
    is_power_associative,
    is_uniquely_2_divisible,
    make_loop,
    opposite,
    power_associativity_violation,
    squaring_map,
)


def test_make_loop_rejects_repeated_row():
    with pytest.raises(NotLatinSquare) as exc:
        make_loop([[0, 0], [1, 1]])
    assert exc.value.axis == "row"
    assert exc.value.index == 0


def test_make_loop_rejects_repeated_column():
    # rows are permutations but column 0 repeats
    with pytest.raises(NotLatinSquare) as exc:
        make_loop([[0, 1, 2], [0, 2, 1], [2, 1, 0]])
    assert exc.value.axis == "column"


def test_make_loop_rejects_no_identity():
    # Latin square where no row/column pair gives a two-sided identity
    with pytest.raises(NoIdentity):
        make_loop([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_make_loop_rejects_bad_entries():
    with pytest.raises(LoopError):
        make_loop([[0, 1], [1, 7]])
    with pytest.raises(LoopError):
        make_loop([[0, 1], [1]])
    with pytest.raises(LoopError):
        make_loop([])


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        make_loop([[(i + j) % 65 for j in range(65)] for i in range(65)])


def test_identity_autodetected_off_zero():
    # relabel c3 so the identity sits at index 2
    rows = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    L = make_loop(rows)
    assert L.identity == 2


def test_example_tables_validate(star, dot):
    assert star.order == dot.order == 7
    assert star.identity == dot.identity == 0
    assert is_associative(star) and is_commutative(star)
    assert not is_associative(dot)


def test_mul_examples(star, dot):
    # 1-based facts read off the printed tables: 3*2 = 4 and 2.3 = 7
    assert star.mul(2, 1) == 3
    assert dot.mul(1, 2) == 6
    assert all(star.mul(0, b) == b for b in star.elements)


def test_divisions(star, dot):
    # 2 \ 1 = 7 in the cyclic table; 1 / 2 = 7 in the dot table (7.2 = 1)
    assert star.ldiv(1, 0) == 6
    assert dot.rdiv(1, 0) == 6
    for L in (star, dot):
        for a in L.elements:
            for b in L.elements:
                assert L.mul(a, L.ldiv(a, b)) == b
                assert L.mul(L.rdiv(a, b), a) == b


def test_translations(star, dot):
    assert star.left_translation(star.identity) == tuple(star.elements)
    # right translation by 2 in the cyclic table shifts every label by one
    assert star.right_translation(1) == tuple((i + 1) % 7 for i in range(7))
    for L in (star, dot):
        for a in L.elements:
            assert sorted(L.left_translation(a)) == list(L.elements)
            assert sorted(L.right_translation(a)) == list(L.elements)
            for b in L.elements:
                assert L.left_translation(a)[L.ldiv(a, b)] == b


def test_two_sided_inverse(star, dot):
    assert star.inverse(1) == 6  # 2 and 7 are mutually inverse in c7
    assert star.inverse(star.identity) == star.identity
    with pytest.raises(NoTwoSidedInverse) as exc:
        dot.inverse(1)  # element 2: left inverse 7, right inverse 6
    assert exc.value.left == 6
    assert exc.value.right == 5


def test_power(star, dot):
    for L in (star, dot):
        for a in L.elements:
            assert L.power(a, 0) == L.identity
            assert L.power(a, 1) == a
    assert star.power(1, 7) == 0
    assert dot.power(1, 2) == 2  # 2.2 = 3 in the printed table
    with pytest.raises(NoTwoSidedInverse):
        dot.power(1, -1)


def test_element_order(star, dot):
    assert star.element_order(star.identity) == 1
    assert all(star.element_order(a) == 7 for a in range(1, 7))
    # computed by direct iteration over the printed table
    direct = {}
    for a in dot.elements:
        x, k = a, 1
        while x != dot.identity:
            x, k = dot.mul(x, a), k + 1
        direct[a] = k
    assert direct == {a: dot.element_order(a) for a in dot.elements}
    assert [dot.element_order(a) for a in dot.elements] == [1, 7, 5, 7, 7, 5, 5]


def test_predicates_on_examples(star, dot):
    assert is_commutative(star) and is_flexible(star) and has_aaip(star)
    assert is_power_associative(star)
    assert commutativity_violation(dot) == (1, 2)  # 2.3 = 7 but 3.2 = 4
    assert associativity_violation(dot) is not None
    assert not is_flexible(dot)
    # element 2 of the dot table has no two-sided inverse
    assert aaip_violation(dot) == (1,)
    # its generated closure is the whole (non-associative) loop
    assert power_associativity_violation(dot) == (1,)


def test_aaip_on_group(s3):
    assert has_aaip(s3)  # (xy)^-1 = y^-1 x^-1 holds in every group


def test_squaring(star):
    assert is_uniquely_2_divisible(star)
    assert star.sqrt(star.identity) == star.identity
    for a in star.elements:
        assert star.power(star.sqrt(a), 2) == a
        assert star.sqrt(star.power(a, 2)) == a
    c4 = cyclic_group(4)
    assert not is_uniquely_2_divisible(c4)
    assert len(set(squaring_map(c4))) < 4
    with pytest.raises(NotUniquely2Divisible):
        c4.sqrt(1)


def test_cyclic_group_matches_example(star):
    assert cyclic_group(7).table == star.table


def test_opposite(dot, star):
    assert opposite(opposite(dot)).table == dot.table
    assert is_commutative(opposite(star))
    op = opposite(dot)
    assert op.mul(2, 1) == dot.mul(1, 2)
    assert is_commutative(op) == is_commutative(dot)


def test_direct_product():
    c2, c3 = cyclic_group(2), cyclic_group(3)
    L = direct_product(c2, c3)
    assert L.order == 6
    assert is_commutative(L) and is_associative(L)
    assert L.identity == 0


@given(st.integers(min_value=-7, max_value=7), st.integers(min_value=-7, max_value=7),
       st.integers(min_value=0, max_value=6))
def test_power_additivity_on_cyclic(m, n, a):
    L = cyclic_group(7)
    assert L.power(a, m + n) == L.mul(L.power(a, m), L.power(a, n))


@given(st.integers(min_value=1, max_value=12))
def test_cyclic_group_is_addition(n):
    L = cyclic_group(n)
    assert L.identity == 0
    for a in range(n):
        for b in range(n):
            assert L.mul(a, b) == (a + b) % n
