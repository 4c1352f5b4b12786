"""Type-D decision procedure: witness constructions, exception list, dispatch."""
import pytest

from weylrack.classes import ClassMembership, all_classes, enumerate_class
from weylrack.classify import (
    EXCEPTION,
    PROVEN,
    Classifier,
    classify,
    exception_case,
    lift_from_sym,
    propagate_juxtaposition,
    witness_fixed_points,
    witness_odd_cycle,
    witness_pairs_triple,
    witness_two_triples,
)
from weylrack.rack import TypeDWitness, brute_force_type_d
from weylrack.signed import GroupKind, SignedPermutation, from_cycles


def member_for(kind, x):
    mem = ClassMembership(kind, x.n)
    return lambda t: mem.same_class(t, x)


def test_odd_cycle_witness_all_signs():
    for bits in range(32):
        x = from_cycles(5, bits, [(1, 2, 3, 4, 5)])
        member = member_for(GroupKind.B, x)
        w = witness_odd_cycle(x, member)
        assert w is not None and w.validate(member=member)


def test_two_triples_witness_all_signs():
    for bits in range(64):
        x = from_cycles(6, bits, [(1, 2, 3), (4, 5, 6)])
        member = member_for(GroupKind.B, x)
        w = witness_two_triples(x, member)
        assert w is not None and w.validate(member=member)


def test_pairs_triple_witness_all_signs():
    for bits in range(128):
        x = from_cycles(7, bits, [(1, 2), (3, 4), (5, 6, 7)])
        member = member_for(GroupKind.B, x)
        w = witness_pairs_triple(x, member)
        assert w is not None and w.validate(member=member)


def test_fixed_point_witness():
    # a 2-cycle with non-constant signs on the fixed points
    x = from_cycles(6, 0b000100, [(5, 6)])
    member = member_for(GroupKind.B, x)
    cls = enumerate_class(GroupKind.B, x)
    w = witness_fixed_points(x, cls.elements)
    assert w is not None and w.validate(member=member)


def test_sym_lift():
    x = from_cycles(5, 0b00101, [(1, 2, 3, 4, 5)])
    sym = brute_force_type_d(
        enumerate_class(GroupKind.S, SignedPermutation(5, 0, x.perm)).elements
    )
    assert isinstance(sym, TypeDWitness)
    member = member_for(GroupKind.B, x)
    w = lift_from_sym(x, sym, member)
    assert w is not None and w.validate(member=member)


def test_propagate_juxtaposition():
    x = from_cycles(5, 0, [(1, 2, 3, 4, 5)])
    member = member_for(GroupKind.B, x)
    w = witness_odd_cycle(x, member)
    right = from_cycles(2, 0b01, [(1, 2)])
    wj = propagate_juxtaposition(w, right)
    mem7 = ClassMembership(GroupKind.B, 7)
    z = wj.a
    assert wj.validate(member=lambda t: mem7.same_class(t, z))


@pytest.mark.parametrize(
    "cycles,ones,expected",
    [
        ([(1, 2), (3, 4, 5)], 0, "i"),
        ([(1, 2), (3, 4), (5, 6)], 0, "i"),
        ([(1, 2), (3, 4), (5, 6), (7, 8)], 0, "ii"),
        ([(1, 2), (3, 4)], 1, "ii"),
        ([(1, 2, 3)], 2, "ii"),
        ([(1, 2), (3, 4)], 2, "ii"),
    ],
)
def test_exception_tags(cycles, ones, expected):
    n = max(max(c) for c in cycles) + ones
    x = from_cycles(n, 0, cycles)
    assert exception_case(x) == expected


def test_exception_tag_iii_requires_constant_fixed_signs():
    x = from_cycles(5, 0, [(1, 2)])
    assert exception_case(x) == "iii"
    # a sign on one fixed point breaks constancy: no longer exceptional
    y = from_cycles(5, 0b00100, [(1, 2)])
    assert exception_case(y) is None


def test_classify_below_rank_five_is_out_of_scope():
    v = classify(GroupKind.B, from_cycles(4, 0, [(1, 2)]))
    assert v.status == "Undetermined"


def test_classify_full_rank_five():
    for kind in (GroupKind.B, GroupKind.D):
        clf = Classifier(kind, 5)
        mem = ClassMembership(kind, 5)
        for cls in all_classes(kind, 5):
            x = cls.rep
            if all(x.perm[i] == i for i in range(5)):
                continue
            v = clf.classify(x)
            expected = exception_case(x)
            if expected is None:
                assert v.status == PROVEN, (kind, str(x), v.reason)
                assert v.witness is not None
                assert v.witness.validate(member=lambda t: mem.same_class(t, x))
            else:
                assert v.status == EXCEPTION and v.exception_case == expected


def test_classify_verdict_json():
    v = classify(GroupKind.B, from_cycles(5, 0, [(1, 2, 3, 4, 5)]))
    data = v.to_json()
    assert data["status"] == PROVEN
    assert data["witness"] is not None
    assert TypeDWitness.from_json(data["witness"]).validate()
