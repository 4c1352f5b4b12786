"""Finite racks, the four-fold conjugation sq, subrack decompositions and
type-D search.

Conjugacy classes give racks via x |> y = x y x^-1; a type-D witness is a
decomposition of a subrack into R, S plus a pair with sq(a, b) != b.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .signed import (
    SignedPermutation,
    conjugate,
    format_element,
    multiply,
    parse_element,
)

DEFAULT_TABLE_CAP = 20_000
EXHAUSTIVE_CAP = 14


class RackError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteRack:
    """A finite rack as an index table: table[x][y] = x |> y."""

    size: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple = ()  # optional back-references (e.g. SignedPermutation)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def sq(self, x: int, y: int) -> int:
        t = self.table
        return t[x][t[y][t[x][y]]]

    def check_axioms(self, rng=None, samples: int = 100_000) -> None:
        """Raise on the first axiom violation; exhaustive for size <= 200."""
        t = self.table
        for x in range(self.size):
            if t[x][x] != x:
                raise RackError(f"not idempotent at {x}")
            if len(set(t[x])) != self.size:
                raise RackError(f"row {x} is not a bijection")
        if self.size <= 200:
            triples = (
                (x, y, z)
                for x in range(self.size)
                for y in range(self.size)
                for z in range(self.size)
            )
        else:
            if rng is None:
                import random

                rng = random.Random(0)
            triples = (
                (rng.randrange(self.size), rng.randrange(self.size), rng.randrange(self.size))
                for _ in range(samples)
            )
        for x, y, z in triples:
            if t[x][t[y][z]] != t[t[x][y]][t[x][z]]:
                raise RackError(f"self-distributivity fails at {(x, y, z)}")


def rack_from_class(elements: Sequence[SignedPermutation], cap: int = DEFAULT_TABLE_CAP) -> FiniteRack:
    """Conjugation rack on an enumerated conjugacy class."""
    if len(elements) > cap:
        raise RackError(f"class of size {len(elements)} exceeds table cap {cap}")
    index = {x.key(): i for i, x in enumerate(elements)}
    table = []
    for x in elements:
        row = []
        for y in elements:
            z = conjugate(x, y)
            try:
                row.append(index[z.key()])
            except KeyError:
                raise RackError("element set is not closed under conjugation") from None
        table.append(tuple(row))
    return FiniteRack(len(elements), tuple(table), tuple(elements))


def sq(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """x |> (y |> (x |> y)) by direct conjugation."""
    return conjugate(x, conjugate(y, conjugate(x, y)))


def is_square_commutative(x: SignedPermutation, y: SignedPermutation) -> bool:
    return sq(x, y) == y


def sq_formula_general(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """Closed formula for sq on sign parts, no commutativity assumed.

    Independent of sq(): works from the expanded sign-vector expression and
    permutation conjugations only.
    """
    from .signed import SignedPermutation as SP, _act, _compose, _invert_perm

    n = x.n
    a, tau = x.bits, x.perm
    b, mu = y.bits, y.perm

    def pconj(p, q):  # p |> q as permutations
        return _compose(p, _compose(q, _invert_perm(p)))

    tm = pconj(tau, mu)          # tau |> mu
    mtm = pconj(mu, tm)          # mu |> (tau |> mu)
    lam = pconj(tau, mtm)        # sq of the permutation parts
    inner = b ^ _act(mu, a ^ _act(tau, b) ^ _act(tm, a)) ^ _act(mtm, b)
    c = a ^ _act(tau, inner) ^ _act(lam, a)
    return SP(n, c, lam)


def sq_formula_commuting(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """sq for commuting permutation parts: the seven-term sign sum."""
    from .signed import SignedPermutation as SP, _act, _compose

    tau, mu = x.perm, y.perm
    if _compose(tau, mu) != _compose(mu, tau):
        raise RackError("permutation parts do not commute; use the general formula")
    a, b = x.bits, y.bits
    tm = _compose(tau, mu)
    c = (
        a
        ^ _act(tm, a)
        ^ _act(_compose(tm, mu), a)
        ^ _act(mu, a)
        ^ _act(tau, b)
        ^ _act(_compose(tau, tm), b)
        ^ _act(tm, b)
    )
    return SP(x.n, c, mu)


def commuting_balance_sides(x: SignedPermutation, y: SignedPermutation) -> tuple[int, int]:
    """The two sides of the square-commutativity balance for commuting parts.

    sq(x, y) == y iff the sides are equal.
    """
    from .signed import _act, _compose

    tau, mu = x.perm, y.perm
    if _compose(tau, mu) != _compose(mu, tau):
        raise RackError("permutation parts do not commute")
    a, b = x.bits, y.bits
    tm = _compose(tau, mu)
    lhs = a ^ _act(tm, a) ^ _act(_compose(tm, mu), a) ^ _act(mu, a)
    rhs = b ^ _act(tau, b) ^ _act(_compose(tau, tm), b) ^ _act(tm, b)
    return lhs, rhs


# -- decompositions and witnesses -----------------------------------------


@dataclass
class DecompositionReport:
    ok: bool
    reason: str = ""
    violation: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def check_decomposition(
    R: Sequence[SignedPermutation],
    S: Sequence[SignedPermutation],
    member: Optional[Callable[[SignedPermutation], bool]] = None,
) -> DecompositionReport:
    """Verify the subrack-decomposition rules on X = R u S, rule by rule.

    Empty parts are rejected (a witness needs elements on both sides).  If
    ``member`` is given, every element of X must satisfy it (class membership).
    """
    if not R or not S:
        return DecompositionReport(False, "empty part")
    rset = {x.key() for x in R}
    sset = {y.key() for y in S}
    if len(rset) != len(R) or len(sset) != len(S):
        return DecompositionReport(False, "repeated element in a part")
    if rset & sset:
        return DecompositionReport(False, "parts are not disjoint")
    if member is not None:
        for x in list(R) + list(S):
            if not member(x):
                return DecompositionReport(False, "element outside the class", (x,))
    for x in R:
        for y in R:
            if conjugate(x, y).key() not in rset:
                return DecompositionReport(False, "R not closed", (x, y))
    for x in S:
        for y in S:
            if conjugate(x, y).key() not in sset:
                return DecompositionReport(False, "S not closed", (x, y))
    for x in R:
        for y in S:
            if conjugate(x, y).key() not in sset:
                return DecompositionReport(False, "cross rule x|>y in S fails", (x, y))
            if conjugate(y, x).key() not in rset:
                return DecompositionReport(False, "cross rule y|>x in R fails", (y, x))
    return DecompositionReport(True)


@dataclass
class TypeDWitness:
    """A machine-checkable certificate that a class rack is of type D."""

    R: list[SignedPermutation]
    S: list[SignedPermutation]
    a: SignedPermutation
    b: SignedPermutation
    tag: str = ""

    def validate(
        self,
        member: Optional[Callable[[SignedPermutation], bool]] = None,
        pair_budget: int = 1_500_000,
        rng=None,
    ) -> DecompositionReport:
        """Re-check everything from scratch: decomposition rules + sq inequality.

        Above ``pair_budget`` ordered pairs the closure rules are sampled.
        """
        if self.a.key() not in {x.key() for x in self.R}:
            return DecompositionReport(False, "witness a not in R")
        if self.b.key() not in {y.key() for y in self.S}:
            return DecompositionReport(False, "witness b not in S")
        if sq(self.a, self.b) == self.b:
            return DecompositionReport(False, "sq(a, b) == b")
        npairs = (len(self.R) + len(self.S)) ** 2
        if npairs <= pair_budget:
            return check_decomposition(self.R, self.S, member)
        return _sampled_check(self.R, self.S, member, rng)

    def to_json(self) -> dict:
        return {
            "R": [format_element(x) for x in self.R],
            "S": [format_element(y) for y in self.S],
            "a": format_element(self.a),
            "b": format_element(self.b),
            "tag": self.tag,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TypeDWitness":
        return cls(
            [parse_element(t) for t in data["R"]],
            [parse_element(t) for t in data["S"]],
            parse_element(data["a"]),
            parse_element(data["b"]),
            data.get("tag", ""),
        )


def _sampled_check(R, S, member, rng, samples: int = 40_000) -> DecompositionReport:
    import random

    rng = rng or random.Random(0)
    if member is not None:
        for x in list(R) + list(S):
            if not member(x):
                return DecompositionReport(False, "element outside the class", (x,))
    rset = {x.key() for x in R}
    sset = {y.key() for y in S}
    if rset & sset or not R or not S:
        return DecompositionReport(False, "parts empty or not disjoint")
    for _ in range(samples):
        x = rng.choice(R)
        y = rng.choice(S)
        xr = rng.choice(R)
        ys = rng.choice(S)
        if conjugate(x, xr).key() not in rset:
            return DecompositionReport(False, "R not closed (sampled)", (x, xr))
        if conjugate(y, ys).key() not in sset:
            return DecompositionReport(False, "S not closed (sampled)", (y, ys))
        if conjugate(x, y).key() not in sset:
            return DecompositionReport(False, "cross rule fails (sampled)", (x, y))
        if conjugate(y, x).key() not in rset:
            return DecompositionReport(False, "cross rule fails (sampled)", (y, x))
    return DecompositionReport(True, "sampled")


# -- search ----------------------------------------------------------------


@dataclass
class Undetermined:
    reason: str
    budget: dict = field(default_factory=dict)


def _conj_orbit(seed: SignedPermutation, conjugators: Iterable[SignedPermutation], cap: int):
    gens = []
    for g in conjugators:
        gens.append(g)
        gens.append(g.inverse())
    seen = {seed.key(): seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = conjugate(g, x)
                if y.key() not in seen:
                    seen[y.key()] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return seen


def pair_orbit_witness(
    elements: Sequence[SignedPermutation],
    max_pairs: int = 400,
    orbit_cap: int = 4000,
    sq_scan_cap: int = 40_000,
) -> Optional[TypeDWitness]:
    """Search for a type-D witness via two-generator conjugation orbits.

    For r, s in the class, the conjugation orbits of r and s under <r, s> are
    each closed under conjugation by both, so when the orbits are disjoint
    their union is a subrack with a ready-made decomposition; it remains to
    find a pair with sq(a, b) != b.  Deterministic scan order.
    """
    elts = list(elements)
    tried = 0
    for i, r in enumerate(elts):
        for s in elts[i + 1 :]:
            if tried >= max_pairs:
                return None
            tried += 1
            if r.perm == s.perm:
                continue  # same fiber never separates under <r, s>
            orb_r = _conj_orbit(r, (r, s), orbit_cap)
            if orb_r is None or s.key() in orb_r:
                continue
            orb_s = _conj_orbit(s, (r, s), orbit_cap)
            if orb_s is None or set(orb_r) & set(orb_s):
                continue
            R = sorted(orb_r.values(), key=lambda x: x.key())
            S = sorted(orb_s.values(), key=lambda x: x.key())
            scanned = 0
            for a in R:
                for b in S:
                    scanned += 1
                    if scanned > sq_scan_cap:
                        break
                    if sq(a, b) != b:
                        return TypeDWitness(R, S, a, b, tag="orbit_pair")
                else:
                    continue
                break
        if tried >= max_pairs:
            break
    return None


def brute_force_type_d(
    elements: Sequence[SignedPermutation],
    budget: Optional[dict] = None,
) -> TypeDWitness | Undetermined:
    """Exhaustive bipartition search for tiny racks, orbit-pair search beyond."""
    budget = dict(budget or {})
    exhaustive_cap = budget.get("exhaustive_cap", EXHAUSTIVE_CAP)
    elts = sorted(elements, key=lambda x: x.key())
    m = len(elts)
    if m < 2:
        return Undetermined("no nonempty bipartition exists", budget)
    if m <= exhaustive_cap:
        for mask in range(1, (1 << m) - 1):
            if mask & 1 == 0:
                continue  # fix element 0 in R: halves the search, no loss
            R = [elts[i] for i in range(m) if mask >> i & 1]
            S = [elts[i] for i in range(m) if not mask >> i & 1]
            if not check_decomposition(R, S):
                continue
            for a in R:
                for b in S:
                    if sq(a, b) != b:
                        return TypeDWitness(R, S, a, b, tag="exhaustive")
                    if sq(b, a) != a:
                        # same bipartition with the roles of the parts swapped
                        return TypeDWitness(S, R, b, a, tag="exhaustive")
        # fall through: a larger ambient subrack may still separate
    w = pair_orbit_witness(
        elts,
        max_pairs=budget.get("max_pairs", 400),
        orbit_cap=budget.get("orbit_cap", 4000),
        sq_scan_cap=budget.get("sq_scan_cap", 40_000),
    )
    if w is not None:
        return w
    return Undetermined("search budget exhausted", budget)
