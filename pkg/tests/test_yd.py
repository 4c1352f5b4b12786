"""Braidings of group type, quantum symmetrizers, and scalar screens."""
from itertools import product

import pytest

from weylrack import yd
from weylrack.classes import centralizer, enumerate_class, is_orthogonal
from weylrack.cyclotomic import CyclotomicField
from weylrack.signed import GroupKind, from_cycles


def sym_transposition_module(rep_factory):
    x = from_cycles(3, 0, [(1, 2)])
    cls = enumerate_class(GroupKind.S, x)
    cen = centralizer(GroupKind.S, x, cls)
    F = CyclotomicField(2)
    return yd.build_yd_module(cls, rep_factory(cen, F)), F


def test_braid_equation_trivial_and_sign_reps():
    for factory in (yd.trivial_rep, yd.perm_sign_rep):
        module, _ = sym_transposition_module(factory)
        space = module.braided_space()
        space.verify_inverse()
        space.check_braid_equation()


def test_sign_character_graded_dims():
    module, _ = sym_transposition_module(yd.perm_sign_rep)
    dims = yd.nichols_graded_dims(module.braided_space(), 8)
    assert dims == [1, 3, 4, 3, 1]
    assert sum(dims) == 12


def test_graded_dims_invariant_under_class_renumbering():
    module, F = sym_transposition_module(yd.perm_sign_rep)
    perm = [2, 0, 1]
    cls2 = yd.renumber_class(module.cls, perm)
    cen = centralizer(GroupKind.S, cls2.rep, cls2)
    module2 = yd.build_yd_module(cls2, yd.perm_sign_rep(cen, F))
    assert yd.nichols_graded_dims(module2.braided_space(), 8) == [1, 3, 4, 3, 1]


def test_flip_braiding_gives_binomials():
    F = CyclotomicField(2)
    space = yd.flip_braiding(F, 2)
    dims = yd.nichols_graded_dims(space, 4)
    assert dims == [1, 2, 3, 4, 5]  # symmetric algebra on two variables


def test_sign_diagonal_braiding_is_exterior():
    F = CyclotomicField(2)
    m = F.minus_one()
    space = yd.diagonal_braiding(F, [[m]])
    assert yd.nichols_graded_dims(space, 6) == [1, 1]


def test_symmetrizer_factorization():
    module, F = sym_transposition_module(yd.perm_sign_rep)
    space = module.braided_space()
    for basis in product(range(space.D), repeat=3):
        whole = yd._apply_sm(space, {basis: F.one}, 3)
        v = yd._apply_s1j(space, {basis: F.one}, 2, 0)
        v = yd._apply_s1j(space, v, 1, 1)
        assert whole == v


def test_self_braiding_scalar():
    module, F = sym_transposition_module(yd.perm_sign_rep)
    assert module.self_braiding_scalar() == F.minus_one()


def test_rep_closure_consistency_guard():
    x = from_cycles(3, 0, [(1, 2)])
    cls = enumerate_class(GroupKind.S, x)
    cen = centralizer(GroupKind.S, x, cls)
    F = CyclotomicField(2)
    # a sign assignment that is not multiplicative on the centralizer
    values = [F.minus_one() if i == 0 else F.one for i in range(len(cen.generators))]
    try:
        rep = yd.scalar_rep(cen, F, values)
        rep.closure()
    except yd.RepInconsistency:
        return
    # if the assignment happened to be consistent, closure must be multiplicative
    vals = rep.closure()
    assert len(vals) == cen.order


def test_psi_embedding_injective_and_intertwines():
    F = CyclotomicField(2)
    left_rep = from_cycles(2, 0, [(1, 2)])
    lcls = enumerate_class(GroupKind.B, left_rep)
    lcen = centralizer(GroupKind.B, left_rep, lcls)
    left = yd.build_yd_module(lcls, yd.trivial_rep(lcen, F))
    right_rep = from_cycles(3, 0, [(1, 2, 3)])
    rcls = enumerate_class(GroupKind.B, right_rep)
    rcen = centralizer(GroupKind.B, right_rep, rcls)
    assert is_orthogonal(left_rep, right_rep)
    emb = yd.psi_embedding(left, rcls, yd.trivial_rep(rcen, F))
    assert emb.injective and emb.intertwines
    assert len(emb.columns) == left.D


def test_psi_embedding_rejects_nontrivial_right_scalar():
    F = CyclotomicField(2)
    left_rep = from_cycles(3, 0, [(1, 2, 3)])
    lcls = enumerate_class(GroupKind.B, left_rep)
    lcen = centralizer(GroupKind.B, left_rep, lcls)
    left = yd.build_yd_module(lcls, yd.trivial_rep(lcen, F))
    right_rep = from_cycles(2, 0, [(1, 2)])
    rcls = enumerate_class(GroupKind.B, right_rep)
    rcen = centralizer(GroupKind.B, right_rep, rcls)
    with pytest.raises(yd.HypothesisError):
        yd.psi_embedding(left, rcls, yd.perm_sign_rep(rcen, F))


def test_q_screen_order_arithmetic():
    F = CyclotomicField(12)
    one, m1 = F.one, F.minus_one()
    # scalars must multiply to -1
    assert yd.q_screen(one, one, 2, 2).status == yd.INFINITE
    assert yd.q_screen(m1, one, 2, 2).status == yd.INCONCLUSIVE
    # right block of order <= 2 with nontrivial left scalar
    z6 = F.zeta(2)  # primitive 6th root
    assert yd.q_screen(z6, m1 * z6.inverse(), 4, 2).status == yd.INFINITE
    # coprime orders, odd right block
    assert yd.q_screen(z6, m1 * z6.inverse(), 2, 3).status == yd.INFINITE
    assert yd.q_screen(m1, one, 2, 3).status == yd.INCONCLUSIVE


def test_q_screen_all_root_pairs_of_order_up_to_six():
    F = CyclotomicField(60)
    m1 = F.minus_one()
    for k in range(60):
        q_left = F.zeta(k)
        q_right = m1 * q_left.inverse()
        if q_left.multiplicative_order() > 6:
            continue
        v = yd.q_screen(q_left, q_right, 6, 5)
        # odd right order coprime to 6... gcd(6,5)=1, so anything but (−1,1) dies
        expected = yd.INCONCLUSIVE if (q_left == m1 and q_right == F.one) else yd.INFINITE
        assert v.status == expected, (k, v.reason)


CASES_OK = {
    "i": (((1, 2),), (0, 0), (1,), 1, -1),
    "ii": (((1, 2),), (0, 0), (1, 1), 1, -1),
    "iii": (((1, 2),), (1, 1), (0, 0), -1, 1),
    "iv": (((1, 2, 3),), (0, 0, 0), (1,), 1, -1),
    "v": (((1, 2, 3),), (1, 1, 1), (0,), -1, 1),
    "vi": (((1, 2), (3, 4)), (0, 0, 0, 0), (1, 1), 1, -1),
    "vii": (((1, 2), (3, 4)), (1, 0, 1, 0), (1, 1), -1, 1),
    "viii": (((1, 2), (3, 4)), (1, 0, 1, 0), (0, 0), -1, 1),
    "ix": (((1, 2), (3, 4)), (1, 0, 0, 0), (1, 1), 1, -1),
    "x": (((1, 2), (3, 4)), (1, 0, 0, 0), (0, 0), -1, 1),
}


@pytest.mark.parametrize("case", sorted(CASES_OK))
def test_case_table_screen_all_cases(case):
    tau, c, d, r1, r2 = CASES_OK[case]
    assert yd.case_table_screen(case, tau, c, d, r1, r2).status == yd.INCONCLUSIVE
    # every sign pair outside the allowed set is rejected
    allowed = set()
    for a in (1, -1):
        for b in (1, -1):
            v = yd.case_table_screen(case, tau, c, d, a, b)
            if v.status == yd.INCONCLUSIVE:
                allowed.add((a, b))
            else:
                assert v.status == yd.INFINITE
    assert (r1, r2) in allowed
    assert all(a * b == -1 for a, b in allowed)


def test_case_table_screen_pattern_mismatch_rejected():
    with pytest.raises(ValueError):
        yd.case_table_screen("iii", ((1, 2),), (0, 0), (0, 0), -1, 1)


def test_type_d_screen():
    x = from_cycles(5, 0, [(1, 2, 3, 4, 5)])
    v = yd.type_d_screen(GroupKind.B, x)
    assert v.status == yd.INFINITE
    y = from_cycles(5, 0, [(1, 2)])  # exception type (iii)
    v2 = yd.type_d_screen(GroupKind.B, y)
    assert v2.status == yd.INCONCLUSIVE
