"""Signed-permutation arithmetic against an independent monomial-matrix model."""
import random

import pytest

from weylrack.signed import (
    GroupKind,
    SignedPermutation,
    conjugate,
    contains,
    elements,
    format_element,
    from_cycles,
    generators,
    group_order,
    identity,
    inverse,
    multiply,
    parse_element,
    random_element,
    signed_cycle_type,
)


def apply_point(x, j, s):
    """Image of the signed basis point s*e_j under x, read off the raw fields."""
    t = x.perm[j]
    return t, s * (1 - 2 * ((x.bits >> t) & 1))


def test_identity_and_inverse():
    e = identity(4)
    x = from_cycles(4, 0b0110, [(1, 2, 3)])
    assert multiply(x, e) == x == multiply(e, x)
    assert multiply(x, inverse(x)) == e
    assert multiply(inverse(x), x) == e
    assert inverse(x) == x.inverse()


def test_multiply_matches_monomial_action():
    rng = random.Random(11)
    for _ in range(500):
        n = rng.randint(1, 8)
        x, y = random_element(rng, n), random_element(rng, n)
        xy = multiply(x, y)
        for j in range(n):
            assert apply_point(x, *apply_point(y, j, 1)) == apply_point(xy, j, 1)


def test_conjugate_is_triple_product():
    rng = random.Random(13)
    for _ in range(300):
        n = rng.randint(1, 7)
        x, y = random_element(rng, n), random_element(rng, n)
        assert conjugate(x, y) == multiply(multiply(x, y), inverse(x))


def test_order_divides_group_order():
    rng = random.Random(17)
    for _ in range(50):
        x = random_element(rng, 5)
        k = x.order()
        e = identity(5)
        acc = e
        for _ in range(k):
            acc = multiply(acc, x)
        assert acc == e
        assert k >= 1


def test_parse_format_roundtrip():
    rng = random.Random(19)
    for _ in range(200):
        x = random_element(rng, rng.randint(1, 8))
        assert parse_element(format_element(x)) == x
    assert format_element(identity(3)) == "000:()"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element("12:(1 2")
    with pytest.raises(ValueError):
        parse_element("01:(1 9)")


def test_group_orders_and_membership():
    assert group_order(GroupKind.B, 3) == 48
    assert group_order(GroupKind.D, 3) == 24
    assert group_order(GroupKind.S, 3) == 6
    x = from_cycles(3, 0b001, [(1, 2)])
    assert contains(GroupKind.B, x)
    assert not contains(GroupKind.D, x)  # odd sign count
    assert not contains(GroupKind.S, x)  # nonzero signs


def test_elements_counts():
    for kind in GroupKind:
        for n in (1, 2, 3):
            elems = list(elements(kind, n))
            assert len(elems) == group_order(kind, n)
            assert len({x.key() for x in elems}) == len(elems)
            assert all(contains(kind, x) for x in elems)


def test_generators_generate():
    for kind in GroupKind:
        gens = generators(kind, 3)
        seen = {identity(3).key(): identity(3)}
        frontier = [identity(3)]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = multiply(g, x)
                if y.key() not in seen:
                    seen[y.key()] = y
                    frontier.append(y)
        assert len(seen) == group_order(kind, 3)


def test_signed_cycle_type_is_class_invariant():
    rng = random.Random(23)
    x = from_cycles(5, 0b00011, [(1, 2, 3), (4, 5)])
    t = signed_cycle_type(x)
    for _ in range(50):
        g = random_element(rng, 5)
        assert signed_cycle_type(conjugate(g, x)) == t


def test_signed_cycle_type_separates_sample_classes():
    a = from_cycles(3, 0, [(1, 2)])
    b = from_cycles(3, 0b001, [(1, 2)])  # negative 2-cycle
    c = from_cycles(3, 0b011, [(1, 2)])  # positive again (two signs cancel)
    assert signed_cycle_type(a) != signed_cycle_type(b)
    assert signed_cycle_type(a) == signed_cycle_type(c)
