import pytest

from permclass.exprs import (
    Av,
    ClassSyntaxError,
    Comp,
    Dec,
    FibLayered,
    Horiz,
    HorizK,
    Inc,
    IncK,
    Inv,
    LayeredK,
    Merge,
    Or,
    Rev,
    Vert,
    VertK,
    canonical_render,
    parse_class,
    render,
)
from permclass.perms import Permutation, from_text


ROUNDTRIP = [
    "I",
    "D",
    "L",
    "F2",
    "All",
    "Ik(2)",
    "Dk(0)",
    "Lk(4)",
    "Vk(2)",
    "Hk(3)",
    "Av(321)",
    "Av(321,2413)",
    "comp(Ik(2),Ik(2))",
    "merge(I,D)",
    "V(I,D)",
    "H(Av(321))",
    "and(Ik(2),Av(2143))",
    "or(Lk(2),rev(Lk(2)))",
    "cpl(Hk(2))",
    "inv(V(I,I))",
    "comp(merge(I,D),merge(I,D))",
]


@pytest.mark.parametrize("text", ROUNDTRIP)
def test_render_parse_roundtrip(text):
    expr = parse_class(text)
    assert render(expr) == text
    assert parse_class(render(expr)) == expr


def test_parse_ignores_whitespace():
    assert parse_class(" comp( Ik( 2 ) , Av( 321 ) ) ") == Comp(
        (IncK(2), Av((from_text("321"),)))
    )


def test_long_perm_literal():
    expr = parse_class("Av([10 2 1 3 4 5 6 7 8 9])")
    assert expr == Av((Permutation([10, 2, 1, 3, 4, 5, 6, 7, 8, 9]),))
    assert render(expr) == "Av([10 2 1 3 4 5 6 7 8 9])"
    assert parse_class(render(expr)) == expr


def test_canonical_render_sorts_commutative_children():
    a = parse_class("merge(D,I)")
    b = parse_class("merge(I,D)")
    assert canonical_render(a) == canonical_render(b)
    # composition order matters, so comp children are not sorted
    assert canonical_render(parse_class("comp(D,I)")) != canonical_render(
        parse_class("comp(I,D)")
    )
    nested = parse_class("or(rev(Lk(2)),Lk(2))")
    assert canonical_render(nested) == canonical_render(parse_class("or(Lk(2),rev(Lk(2)))"))


@pytest.mark.parametrize(
    "text",
    [
        "Ik(",
        "Ik(2",
        "Ik()",
        "Lk(0)",
        "Vk(0)",
        "Hk(0)",
        "comp(I)",
        "merge(I)",
        "rev(I,D)",
        "rev()",
        "Av()",
        "Av(321,321)",
        "Av(331)",
        "Bogus",
        "Bogus(2)",
        "I extra",
        "",
        "Av([1 3])",
        "comp(I,D) )",
        "Ik(-2)",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ClassSyntaxError):
        parse_class(text)


def test_syntax_error_carries_position():
    with pytest.raises(ClassSyntaxError) as err:
        parse_class("comp(I,?)")
    assert err.value.pos == 7


def test_node_validation():
    with pytest.raises(ValueError):
        IncK(-1)
    with pytest.raises(ValueError):
        LayeredK(0)
    with pytest.raises(ValueError):
        Comp((Inc(),))
    with pytest.raises(ValueError):
        Merge((Dec(),))
    with pytest.raises(ValueError):
        Vert(())
    with pytest.raises(ValueError):
        Av(())
    # valid edge shapes
    assert IncK(0).k == 0
    assert Vert((Inc(),)).children == (Inc(),)
    assert Horiz((Inc(),)).children == (Inc(),)


def test_expressions_hashable():
    seen = {parse_class(t) for t in ROUNDTRIP}
    assert len(seen) == len(ROUNDTRIP)
    assert parse_class("Ik(2)") in seen
