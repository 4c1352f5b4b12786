"""Named verification suites producing deterministic JSON-able reports.

Each suite exercises one layer of the library against independent oracles
(monomial-matrix actions, triple conjugation, exhaustive enumeration, exact
ranks).  Reports contain no timestamps, so re-runs with the same seed are
byte-identical when serialized with sorted keys.
"""
from __future__ import annotations

import random
from itertools import permutations
from typing import Optional

from . import fk, yd
from .classes import (
    ClassMembership,
    all_classes,
    centralizer,
    enumerate_class,
    verify_juxtaposition_identities,
)
from .classify import EXCEPTION, PROVEN, Classifier, exception_case
from .cyclotomic import CyclotomicField
from .rack import (
    commuting_balance_sides,
    is_square_commutative,
    rack_from_class,
    sq,
    sq_formula_commuting,
    sq_formula_general,
)
from .signed import (
    GroupKind,
    SignedPermutation,
    conjugate,
    from_cycles,
    multiply,
    random_element,
)

SUITES = (
    "group_laws",
    "rack_axioms",
    "juxtaposition",
    "type_d_witnesses",
    "classification",
    "yd_braidings",
    "fk_dims",
)


def run_suite(name: str, params: Optional[dict] = None, seed: int = 0) -> dict:
    """Run a named suite; the report lists each check with its verdict."""
    params = dict(params or {})
    runner = _RUNNERS.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    checks = runner(params, random.Random(seed))
    return {
        "suite": name,
        "seed": seed,
        "params": {k: params[k] for k in sorted(params)},
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def _check(name: str, tag: str, passed: bool, **detail) -> dict:
    out = {"name": name, "tag": tag, "passed": bool(passed)}
    if detail:
        out["detail"] = {k: detail[k] for k in sorted(detail)}
    return out


# ---------------------------------------------------------------------------
# group laws against an independent monomial-action model


def _apply_point(x: SignedPermutation, j: int, s: int) -> tuple[int, int]:
    """Image of the signed basis point s*e_j under x, read off the raw fields."""
    t = x.perm[j]
    return t, s * (1 - 2 * ((x.bits >> t) & 1))


def _suite_group_laws(params: dict, rng: random.Random) -> list[dict]:
    count = int(params.get("count", 100_000))
    max_n = int(params.get("max_n", 8))
    bad_mul = bad_inv = bad_conj = 0
    for _ in range(count):
        n = rng.randint(1, max_n)
        x = random_element(rng, n)
        y = random_element(rng, n)
        z = random_element(rng, n)
        xy = multiply(x, y)
        for j in range(n):
            if _apply_point(x, *_apply_point(y, j, 1)) != _apply_point(xy, j, 1):
                bad_mul += 1
                break
        xi = x.inverse()
        for j in range(n):
            if _apply_point(x, *_apply_point(xi, j, 1)) != (j, 1):
                bad_inv += 1
                break
        w = conjugate(z, x)
        zi = z.inverse()
        for j in range(n):
            expect = _apply_point(z, *_apply_point(x, *_apply_point(zi, j, 1)))
            if _apply_point(w, j, 1) != expect:
                bad_conj += 1
                break
    return [
        _check("product_matches_monomial_action", "semidirect-product", bad_mul == 0,
               cases=count, failures=bad_mul),
        _check("closed_form_inverse", "semidirect-inverse", bad_inv == 0,
               cases=count, failures=bad_inv),
        _check("closed_form_conjugation", "semidirect-conjugation", bad_conj == 0,
               cases=count, failures=bad_conj),
    ]


# ---------------------------------------------------------------------------
# rack axioms and the sq formulas


def _suite_rack_axioms(params: dict, rng: random.Random) -> list[dict]:
    count = int(params.get("count", 100_000))
    max_n = int(params.get("max_n", 8))
    bad_gen = bad_comm = 0
    for _ in range(count):
        n = rng.randint(2, max_n)
        x = random_element(rng, n)
        y = random_element(rng, n)
        direct = sq(x, y)
        if sq_formula_general(x, y) != direct:
            bad_gen += 1
        if multiply(x, y) == multiply(y, x):
            if sq_formula_commuting(x, y) != direct:
                bad_comm += 1
    checks = [
        _check("sq_general_formula_vs_triple_conjugation", "sq-general", bad_gen == 0,
               cases=count, failures=bad_gen),
        _check("sq_commuting_formula_vs_triple_conjugation", "sq-commuting", bad_comm == 0,
               cases=count, failures=bad_comm),
    ]
    # class racks satisfy the rack axioms
    axiom_ok = True
    for rep in (from_cycles(3, 0b101, [(1, 2)]), from_cycles(4, 0, [(1, 2, 3)])):
        cls = enumerate_class(GroupKind.B, rep)
        rack = rack_from_class(cls.elements)
        try:
            rack.check_axioms()
        except Exception:
            axiom_ok = False
    checks.append(_check("conjugation_racks_satisfy_axioms", "rack-axioms", axiom_ok))
    # the (2^2) parity criterion, exhaustively over all sign vectors
    tau = from_cycles(4, 0, [(1, 2), (3, 4)]).perm
    others = [
        from_cycles(4, 0, [(1, 3), (2, 4)]).perm,
        from_cycles(4, 0, [(1, 4), (2, 3)]).perm,
    ]
    mem = ClassMembership(GroupKind.B, 4)
    iff_ok = sufficient_ok = True
    for mu in others:
        for a in range(16):
            for b in range(16):
                x = SignedPermutation(4, a, tau)
                y = SignedPermutation(4, b, mu)
                parity = (bin(a).count("1") & 1) == (bin(b).count("1") & 1)
                conj = mem.same_class(x, y)
                sc = is_square_commutative(x, y)
                lhs, rhs = commuting_balance_sides(x, y)
                if sc != (parity or conj) or (lhs == rhs) != parity:
                    iff_ok = False
    for a in range(16):
        for b in range(16):
            x = SignedPermutation(4, a, tau)
            y = SignedPermutation(4, b, tau)
            parity = (bin(a).count("1") & 1) == (bin(b).count("1") & 1)
            if (parity or mem.same_class(x, y)) and not is_square_commutative(x, y):
                sufficient_ok = False
    checks.append(
        _check("two_two_parity_criterion_iff", "balance-2x2", iff_ok)
    )
    checks.append(
        _check("two_two_parity_criterion_sufficient", "balance-2x2", sufficient_ok)
    )
    return checks


# ---------------------------------------------------------------------------
# juxtaposition identities


def _suite_juxtaposition(params: dict, rng: random.Random) -> list[dict]:
    total = int(params.get("max_total", 6))
    kind = GroupKind(params.get("group", "B"))
    checks = []
    for n in range(1, total):
        for m in range(1, total - n + 1):
            report = verify_juxtaposition_identities(n, m, kind)
            for c in report["checks"]:
                checks.append(
                    _check(
                        f"{c['name']}_n{n}_m{m}",
                        f"juxtaposition-{c['rule']}",
                        c["passed"],
                    )
                )
    return checks


# ---------------------------------------------------------------------------
# decomposition witnesses


def _suite_type_d_witnesses(params: dict, rng: random.Random) -> list[dict]:
    checks = []
    # odd cycles of length 5 and 7, a handful of sign vectors each
    for p, n in ((5, 5), (7, 7)):
        clf = Classifier(GroupKind.B, n)
        ok = True
        samples = params.get("cycle_signs", [0, 1, (1 << n) - 1, 0b10101 % (1 << n)])
        for bits in samples:
            x = from_cycles(n, bits, [tuple(range(1, p + 1))])
            v = clf.classify(x)
            ok = ok and v.status == PROVEN
        checks.append(_check(f"odd_{p}_cycle_witnesses", "witness-odd-cycle", ok))
    # two 3-cycles: all 64 sign vectors
    clf = Classifier(GroupKind.B, 6)
    ok = True
    for bits in range(64):
        x = from_cycles(6, bits, [(1, 2, 3), (4, 5, 6)])
        ok = ok and clf.classify(x).status == PROVEN
    checks.append(_check("two_triples_all_signs", "witness-two-triples", ok))
    # two 2-cycles and a 3-cycle: all 128 sign vectors
    clf = Classifier(GroupKind.B, 7)
    ok = True
    for bits in range(128):
        x = from_cycles(7, bits, [(1, 2), (3, 4), (5, 6, 7)])
        ok = ok and clf.classify(x).status == PROVEN
    checks.append(_check("pairs_triple_all_signs", "witness-pairs-triple", ok))
    # fixed-point rules: non-constant signs on fixed points
    clf = Classifier(GroupKind.B, 6)
    ok = True
    for x in (
        from_cycles(6, 0b000001, [(5, 6)]),
        from_cycles(6, 0b000010, [(4, 5, 6)]),
    ):
        ok = ok and clf.classify(x).status == PROVEN
    checks.append(_check("fixed_point_rules", "witness-fixed-points", ok))
    # propagation: a decomposition survives juxtaposition with any right block
    clf = Classifier(GroupKind.B, 7)
    x = from_cycles(7, 0, [(1, 2, 3, 4, 5)])
    v = clf.classify(x)
    checks.append(_check("juxtaposition_propagation", "witness-propagation",
                         v.status == PROVEN))
    return checks


# ---------------------------------------------------------------------------
# full classification consistency


def _suite_classification(params: dict, rng: random.Random) -> list[dict]:
    ns = params.get("ranks", [5])
    kinds = [GroupKind(k) for k in params.get("groups", ["B", "D"])]
    checks = []
    for kind in kinds:
        for n in ns:
            clf = Classifier(kind, int(n))
            undetermined = []
            mismatched = []
            proven = exceptions = 0
            for cls in all_classes(kind, int(n)):
                x = cls.rep
                if all(x.perm[i] == i for i in range(x.n)):
                    continue
                v = clf.classify(x)
                expected = exception_case(x)
                if v.status == PROVEN:
                    proven += 1
                    if expected is not None:
                        mismatched.append(str(x))
                elif v.status == EXCEPTION:
                    exceptions += 1
                    if expected != v.exception_case:
                        mismatched.append(str(x))
                else:
                    undetermined.append(str(x))
            checks.append(
                _check(
                    f"classification_{kind.value}{n}",
                    "type-d-classification",
                    not undetermined and not mismatched,
                    proven=proven,
                    exceptions=exceptions,
                    undetermined=undetermined,
                    mismatched=mismatched,
                )
            )
    return checks


# ---------------------------------------------------------------------------
# braidings, symmetrizers, graded dimensions, scalar screens


def _suite_yd_braidings(params: dict, rng: random.Random) -> list[dict]:
    checks = []
    F = CyclotomicField(2)
    # permutation braiding from the trivial rep
    rep = from_cycles(3, 0, [(1, 2)])
    cls = enumerate_class(GroupKind.S, rep)
    cen = centralizer(GroupKind.S, rep, cls)
    ok = True
    try:
        triv = yd.build_yd_module(cls, yd.trivial_rep(cen, F))
        triv.braided_space().check_braid_equation()
    except Exception:
        ok = False
    checks.append(_check("trivial_rep_braiding", "braid-equation", ok))
    # sign rep on the same class: braid equation + graded dims
    mod = yd.build_yd_module(cls, yd.perm_sign_rep(cen, F))
    space = mod.braided_space()
    ok = True
    try:
        space.check_braid_equation()
    except Exception:
        ok = False
    checks.append(_check("sign_rep_braiding", "braid-equation", ok))
    dims = yd.nichols_graded_dims(space, 6)
    checks.append(
        _check("transposition_sign_graded_dims", "nichols-dims",
               dims == [1, 3, 4, 3, 1], dims=dims, total=sum(dims))
    )
    # symmetrizer factorization at degree 3
    from itertools import product as _product

    ok = True
    for basis in _product(range(space.D), repeat=3):
        s3 = yd._apply_sm(space, {basis: F.one}, 3)
        v = yd._apply_s1j(space, {basis: F.one}, 2, 0)
        v = yd._apply_s1j(space, v, 1, 1)
        if s3 != v:
            ok = False
            break
    checks.append(_check("symmetrizer_factorization", "symmetrizer", ok))
    # scalar screens
    one, m1 = F.one, F.minus_one()
    screens = (
        yd.q_screen(one, one, 2, 2).status == "InfiniteDim"
        and yd.q_screen(m1, one, 2, 2).status == "Inconclusive"
        and yd.q_screen(m1, one, 2, 3).status == "Inconclusive"
    )
    checks.append(_check("q_scalar_screen", "q-screen", screens))
    cor = (
        yd.case_table_screen("iii", ((1, 2),), (1, 1), (0, 0), -1, 1).status == "Inconclusive"
        and yd.case_table_screen("iii", ((1, 2),), (1, 1), (0, 0), 1, 1).status == "InfiniteDim"
    )
    checks.append(_check("case_table_screen", "case-screen", cor))
    return checks


def _suite_fk_dims(params: dict, rng: random.Random) -> list[dict]:
    max_n = int(params.get("max_n", 4))
    checks = []
    expect = {2: 2, 3: 12, 4: 576}
    for n in range(2, max_n + 1):
        pres = fk.fk_presentation(n)
        lin = fk.graded_dims(pres, 14, engine="linear")
        rew = fk.graded_dims(pres, 14, engine="rewrite")
        checks.append(
            _check(
                f"quadratic_algebra_n{n}",
                "fk-dims",
                lin == rew and sum(lin) == expect.get(n, sum(lin)),
                dims=lin,
                total=sum(lin),
                engines_agree=lin == rew,
            )
        )
    return checks


_RUNNERS = {
    "group_laws": _suite_group_laws,
    "rack_axioms": _suite_rack_axioms,
    "juxtaposition": _suite_juxtaposition,
    "type_d_witnesses": _suite_type_d_witnesses,
    "classification": _suite_classification,
    "yd_braidings": _suite_yd_braidings,
    "fk_dims": _suite_fk_dims,
}
