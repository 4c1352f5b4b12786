"""Conjugacy classes, centralizers, and the juxtaposition calculus."""
import random

import pytest

from weylrack.classes import (
    ClassMembership,
    all_classes,
    centralizer,
    embed_left,
    embed_right,
    enumerate_class,
    is_orthogonal,
    juxtapose,
    split,
    verify_juxtaposition_identities,
)
from weylrack.signed import (
    GroupKind,
    conjugate,
    from_cycles,
    group_order,
    identity,
    multiply,
    random_element,
)


def bipartition_count(n):
    """Number of pairs of partitions with total size n (independent oracle)."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def p(k, mx):
        if k == 0:
            return 1
        return sum(p(k - i, i) for i in range(1, min(k, mx) + 1))

    return sum(p(k, k) * p(n - k, n - k) for k in range(n + 1))


@pytest.mark.parametrize("n,count", [(2, 5), (3, 10), (4, 20), (5, 36)])
def test_class_counts_match_bipartitions(n, count):
    classes = all_classes(GroupKind.B, n)
    assert len(classes) == count == bipartition_count(n)
    assert sum(c.size for c in classes) == group_order(GroupKind.B, n)


def test_class_counts_partition_sym():
    # S_n: one class per partition
    assert len(all_classes(GroupKind.S, 4)) == 5
    assert len(all_classes(GroupKind.S, 5)) == 7


def test_enumerate_class_is_orbit():
    rng = random.Random(31)
    x = from_cycles(3, 0b010, [(1, 2)])
    cls = enumerate_class(GroupKind.B, x)
    keys = {t.key() for t in cls.elements}
    for _ in range(100):
        g = random_element(rng, 3)
        assert conjugate(g, x).key() in keys


def test_centralizer_orbit_stabilizer():
    for rep in (
        from_cycles(3, 0, [(1, 2)]),
        from_cycles(4, 0b0011, [(1, 2), (3, 4)]),
        from_cycles(4, 0b0100, [(1, 2, 3)]),
    ):
        cls = enumerate_class(GroupKind.B, rep)
        cen = centralizer(GroupKind.B, rep, cls)
        assert cen.order * cls.size == group_order(GroupKind.B, rep.n)
        for g in cen.generators:
            assert conjugate(g, rep) == rep


def test_class_membership_agrees_with_enumeration():
    mem = ClassMembership(GroupKind.B, 3)
    classes = all_classes(GroupKind.B, 3)
    for c in classes:
        for t in c.elements:
            assert mem.same_class(t, c.rep)
    # cross-class pairs disagree
    assert not mem.same_class(classes[0].rep, classes[1].rep)


def test_juxtapose_split_embed():
    x = from_cycles(2, 0b01, [(1, 2)])
    y = from_cycles(3, 0b100, [(1, 2, 3)])
    z = juxtapose(x, y)
    assert z.n == 5
    assert split(z, 2) == (x, y)
    assert multiply(embed_left(x, 3), embed_right(2, y)) == z
    # splitting across a block-mixing permutation fails
    with pytest.raises(ValueError):
        split(from_cycles(5, 0, [(2, 3)]), 2)


def test_juxtapose_is_multiplicative():
    rng = random.Random(37)
    for _ in range(100):
        x, xp = random_element(rng, 3), random_element(rng, 3)
        y, yp = random_element(rng, 2), random_element(rng, 2)
        assert multiply(juxtapose(x, y), juxtapose(xp, yp)) == juxtapose(
            multiply(x, xp), multiply(y, yp)
        )


def test_orthogonality_is_disjoint_cycle_lengths():
    a = from_cycles(2, 0, [(1, 2)])
    b = from_cycles(3, 0, [(1, 2, 3)])
    c = from_cycles(3, 0, [(1, 2)])
    assert is_orthogonal(a, b)
    assert not is_orthogonal(a, c)  # both carry a 2-cycle
    assert is_orthogonal(identity(2), a)


def test_juxtaposition_identities_small():
    for n, m in ((1, 1), (1, 2), (2, 2)):
        report = verify_juxtaposition_identities(n, m, GroupKind.B)
        assert report["passed"], report["counterexamples"][:3]
