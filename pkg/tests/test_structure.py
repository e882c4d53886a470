import pytest

from permclass.exprs import Dec, Inc, parse_class
from permclass.perms import (
    EMPTY,
    all_perms,
    contains,
    decreasing,
    direct_sum,
    from_text,
    identity,
    pattern_of,
)
from permclass.structure import (
    Block,
    Coloring,
    LayerShape,
    NotLayeredError,
    SplitContractError,
    _is_alternating,
    alternating_superpattern,
    colayers,
    coloring_search,
    deletion_distance_to,
    gamma_pattern,
    horizontal_split,
    is_close,
    jv_split,
    layers,
    merge_split,
    min_blocks,
    normalize_short_layers,
    vertical_split,
)


def test_layers_oracles():
    assert layers(from_text("2143")).lengths == (2, 2)
    assert layers(from_text("13245")).lengths == (1, 2, 1, 1)
    assert layers(from_text("321")).lengths == (3,)
    assert layers(from_text("231")) is None
    assert layers(EMPTY).lengths == ()


def test_layers_roundtrip():
    for n in range(0, 7):
        for p in all_perms(n):
            shape = layers(p)
            if shape is not None:
                assert shape.realize() == p


def test_colayers():
    # complement of a layered permutation is co-layered
    assert colayers(from_text("3412")).lengths == (2, 2)
    assert colayers(from_text("2143")) is None


def test_layer_shape_validation():
    with pytest.raises(ValueError):
        LayerShape((1, 0))
    assert LayerShape((2, 1)).to_json() == [2, 1]


def test_min_blocks_oracles():
    count, dec = min_blocks(from_text("2413"))
    assert count == 4
    assert [b.length for b in dec.blocks] == [1, 1, 1, 1]
    count, dec = min_blocks(from_text("346512"))
    assert count == 3
    assert dec.blocks[0] == Block(1, 2, "inc")
    assert min_blocks(identity(5)) == (1, min_blocks(identity(5))[1])
    assert min_blocks(EMPTY)[0] == 0


def test_min_blocks_leftmost_longest():
    count, dec = min_blocks(from_text("123654"))
    assert count == 2
    assert dec.blocks == (Block(1, 3, "inc"), Block(4, 3, "dec"))
    # concatenation of blocks reconstructs the permutation's positions
    total = sum(b.length for b in dec.blocks)
    assert total == 6


def test_gamma_pattern():
    assert gamma_pattern(0) == from_text("21")
    assert gamma_pattern(1) == from_text("2143")
    assert gamma_pattern(2) == from_text("214365")
    with pytest.raises(ValueError):
        gamma_pattern(-1)


def test_normalize_short_layers():
    p = from_text("21354")  # layers 2,1,2
    assert normalize_short_layers(p, 2) == from_text("12345")
    q = from_text("3214")  # layers 3,1
    assert normalize_short_layers(q, 2) == from_text("3214")
    assert normalize_short_layers(q, 3) == from_text("1234")
    with pytest.raises(NotLayeredError):
        normalize_short_layers(from_text("231"), 2)


def test_is_close():
    assert is_close(from_text("2143"), from_text("1234"), 1, 0)
    assert not is_close(from_text("4321"), from_text("1234"), 1, 1)
    assert is_close(from_text("4321"), from_text("1234"), 1, 2)
    with pytest.raises(ValueError):
        is_close(from_text("21"), from_text("321"), 1, 0)


def test_coloring_search_oracle():
    col = merge_split(from_text("2143"), [Inc(), Inc()])
    assert col == Coloring((1, 2, 1, 2))
    assert col.part_positions(1) == (1, 3)
    assert col.part_positions(2) == (2, 4)
    assert merge_split(from_text("321"), [Inc(), Inc()]) is None
    assert merge_split(from_text("321"), [Inc(), Dec()]) is not None


def test_coloring_search_prunes_with_predicates():
    calls = []

    def pred(q):
        calls.append(q)
        return len(q) <= 1

    assert coloring_search(from_text("12"), [pred]) is None
    assert coloring_search(from_text("12"), [pred, pred]) is not None


def test_vertical_horizontal_split_oracles():
    assert vertical_split(from_text("2413"), [Inc(), Inc()]) == (2,)
    assert vertical_split(from_text("321"), [Inc(), Inc()]) is None
    assert horizontal_split(from_text("1324"), [Inc(), Inc()]) == (2,)
    assert horizontal_split(from_text("321"), [Inc(), Inc()]) is None
    # empty segments are allowed
    assert vertical_split(from_text("12"), [Inc(), Inc()]) == (0,)
    assert vertical_split(EMPTY, [Inc(), Inc()]) == (0,)


def test_jv_split_oracles():
    one = from_text("1")
    assert jv_split(from_text("213"), one, one, one) == ((2, 1), (3,))
    # the a-first search labels all of 321 as the left part
    assert jv_split(from_text("321"), one, one, one) == ((3, 2, 1), ())
    with pytest.raises(ValueError):
        jv_split(from_text("123"), one, one, one)


def test_jv_split_certificate_everywhere():
    one = from_text("1")
    two_one = from_text("21")
    cases = [
        (one, one, one, from_text("123")),
        (two_one, one, two_one, from_text("21354")),
    ]
    for alpha, beta, gamma, whole in cases:
        ab = direct_sum(alpha, beta)
        bg = direct_sum(beta, gamma)
        for n in range(0, 6):
            for p in all_perms(n):
                if contains(p, whole) is not None:
                    continue
                a_vals, c_vals = jv_split(p, alpha, beta, gamma)
                assert sorted(a_vals + c_vals) == sorted(p.values)
                assert contains(pattern_of(a_vals), ab) is None
                assert contains(pattern_of(c_vals), bg) is None
                pos = {v: i for i, v in enumerate(p.values)}
                for av in a_vals:
                    for cv in c_vals:
                        assert pos[av] < pos[cv] or av < cv


def test_alternating_superpattern():
    assert alternating_superpattern(from_text("1")) == from_text("1")
    assert _is_alternating(from_text("14253"))
    for text in ("12", "231", "1324", "1234", "3142"):
        p = from_text(text)
        sup = alternating_superpattern(p)
        assert _is_alternating(sup)
        assert len(sup) <= 2 * len(p) + 1
        assert contains(sup, p) is not None
    with pytest.raises(ValueError):
        alternating_superpattern(from_text("321"))


def test_deletion_distance():
    assert deletion_distance_to(from_text("321"), parse_class("Ik(2)"), 3) == 1
    assert deletion_distance_to(from_text("123"), parse_class("I"), 2) == 0
    assert deletion_distance_to(from_text("4321"), parse_class("I"), 2) is None
    assert deletion_distance_to(from_text("4321"), parse_class("I"), 3) == 3
