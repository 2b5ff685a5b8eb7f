import pytest

from omljordan.oml import boolean_subalgebras, standard
from omljordan.poset import (
    CycleError,
    DuplicateElement,
    JoinMissing,
    NotAnIdeal,
    NotGenerated,
    ParseError,
    UnknownElement,
    enumerate_order_isos,
    extend_iso_via_ideals,
    finite_part,
    ideals,
    is_ideal,
    order_iso,
    parse_poset_text,
    serialize_poset,
    verify_poset,
)


def chain(n):
    names = [f"x{i}" for i in range(n)]
    return verify_poset(names, [(names[i], names[i + 1]) for i in range(n - 1)])


def antichain(n):
    return verify_poset([f"x{i}" for i in range(n)], [])


def test_singleton():
    p = verify_poset(["a"], [])
    assert p.elements == ("a",)
    assert p.leq("a", "a")


def test_transitivity_inferred():
    p = verify_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")
    assert not p.leq("c", "a")


def test_cycle_rejected():
    with pytest.raises(CycleError):
        verify_poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_duplicate_rejected():
    with pytest.raises(DuplicateElement):
        verify_poset(["a", "a"], [])


def test_unknown_element_rejected():
    with pytest.raises(UnknownElement):
        verify_poset(["a"], [("a", "b")])


def test_joins_and_meets():
    # diamond 0 < a,b < 1
    p = verify_poset(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    )
    assert p.join("a", "b") == "1"
    assert p.meet("a", "b") == "0"
    assert p.bottom() == "0"
    assert p.top() == "1"
    # 2-antichain has no joins
    q = antichain(2)
    assert q.join("x0", "x1") is None


def test_finite_part_returns_everything():
    assert len(finite_part(chain(3))) == 3
    assert finite_part(verify_poset([], [])) == ()
    bsub = boolean_subalgebras(standard("boolean", 3))
    assert len(finite_part(bsub)) == 5


def test_enumerate_isos_chain_rigid():
    isos = enumerate_order_isos(chain(2), chain(2))
    assert len(isos) == 1


def test_enumerate_isos_antichain():
    assert len(enumerate_order_isos(antichain(2), antichain(2))) == 2


def test_enumerate_isos_bsub_mo2():
    bsub = boolean_subalgebras(standard("mo", 2))
    # 1 bottom + 2 incomparable tops: brute force over 3! bijections
    import itertools

    brute = 0
    for perm in itertools.permutations(bsub.elements):
        mapping = dict(zip(bsub.elements, perm))
        if all(
            bsub.leq(x, y) == bsub.leq(mapping[x], mapping[y])
            for x in bsub.elements
            for y in bsub.elements
        ):
            brute += 1
    isos = enumerate_order_isos(bsub, bsub)
    assert len(isos) == brute == 2


def test_enumerate_isos_mismatch():
    assert enumerate_order_isos(chain(2), antichain(2)) == []
    assert enumerate_order_isos(chain(2), chain(3)) == []


def test_iso_group_closure_and_inverses():
    for p in (chain(3), antichain(3), boolean_subalgebras(standard("boolean", 3))):
        autos = enumerate_order_isos(p, p)
        items = {f.mapping_items() for f in autos}
        for f in autos:
            assert f.inverse().mapping_items() in items
            for g in autos:
                assert f.compose(g).mapping_items() in items


def test_ideals_two_chain():
    p = chain(2)
    members = {i.members for i in ideals(p)}
    assert members == {frozenset(), frozenset({"x0"}), frozenset({"x0", "x1"})}


def test_ideals_antichain_excludes_joinless_pair():
    p = antichain(2)
    members = {i.members for i in ideals(p)}
    assert members == {frozenset(), frozenset({"x0"}), frozenset({"x1"})}


def test_ideals_three_chain():
    assert len(ideals(chain(3))) == 4


def test_ideals_are_downset_join_closed():
    for p in (chain(4), boolean_subalgebras(standard("boolean", 3))):
        for ideal in ideals(p):
            assert is_ideal(p, ideal.members)


def test_iso_image_of_ideal_is_ideal():
    for p in (
        chain(4),
        antichain(3),
        boolean_subalgebras(standard("boolean", 3)),
        boolean_subalgebras(standard("mo", 3)),
    ):
        assert len(p) <= 8
        for f in enumerate_order_isos(p, p):
            for ideal in ideals(p):
                image = {f.apply(x) for x in ideal.members}
                assert is_ideal(p, image)


def test_extend_identity_when_finite_part_is_everything():
    p = boolean_subalgebras(standard("boolean", 3))
    mu = order_iso(p, p, {x: x for x in p.elements})
    bar = extend_iso_via_ideals(mu, p, p)
    assert bar == mu


def test_extend_restricts_to_mu():
    # p = q = B8's BSub; restrict to everything but swap two 4-element levels
    p = boolean_subalgebras(standard("boolean", 3))
    for mu in enumerate_order_isos(p, p):
        bar = extend_iso_via_ideals(mu, p, p)
        for x in p.elements:
            assert bar.apply(x) == mu.apply(x)


def test_extend_not_generated():
    p = chain(3)  # a < b < c
    sub = p.restrict(["x0", "x2"])
    mu = order_iso(sub, sub, {"x0": "x0", "x2": "x2"})
    with pytest.raises(NotGenerated):
        extend_iso_via_ideals(mu, p, p)


def test_extend_join_missing():
    # finite part {x,y} inside a poset where the image family has no lub
    p = verify_poset(
        ["x", "y", "t1", "t2"],
        [("x", "t1"), ("y", "t1"), ("x", "t2"), ("y", "t2")],
    )
    sub = p.restrict(["x", "y"])
    mu = order_iso(sub, sub, {"x": "x", "y": "y"})
    with pytest.raises((JoinMissing, NotGenerated, NotAnIdeal)):
        extend_iso_via_ideals(mu, p, p)


def test_finite_part_invariant_under_iso():
    p = boolean_subalgebras(standard("mo", 2))
    q = boolean_subalgebras(standard("mo", 2))
    for f in enumerate_order_isos(p, q):
        assert len(finite_part(p)) == len(finite_part(q))


def test_parse_round_trip():
    p = boolean_subalgebras(standard("boolean", 3))
    assert parse_poset_text(serialize_poset(p)).relation == p.relation
    q = parse_poset_text("elements a b c\nle a b # comment\nle b c\n")
    assert q.leq("a", "c")


def test_parse_rejects_unknown_directive():
    with pytest.raises(ParseError):
        parse_poset_text("elements a\nfoo a\n")
    with pytest.raises(ParseError):
        parse_poset_text("le a\n")
