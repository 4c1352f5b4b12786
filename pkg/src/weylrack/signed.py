"""Exact arithmetic in Z_2^n |x S_n and its even-sign and zero-sign subgroups.

Elements are pairs (a, pi): a sign vector in Z_2^n (stored packed, bit i-1 is
the sign at position i) and a permutation of {1..n} (stored in one-line image
form, 0-indexed internally).  Cycle notation appears only at the text boundary.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction  # noqa: F401  (re-exported convenience for callers)

MAX_RANK = 64


class GroupKind(Enum):
    """Which subgroup of Z_2^n |x S_n an element is taken in.

    B: the full group (hyperoctahedral); D: even bit sum; S: zero bits
    (the symmetric subgroup, used for lifting arguments).
    """

    B = "B"
    D = "D"
    S = "S"


@dataclass(frozen=True)
class SignedCycleType:
    """Cycle lengths of the permutation part split by cycle sign.

    The sign of a cycle is the parity of the sign bits over its support;
    conjugate elements of the full group have equal signed cycle type.
    """

    positive: tuple[int, ...]
    negative: tuple[int, ...]

    def __str__(self) -> str:
        pos = ",".join(map(str, self.positive)) or "-"
        neg = ",".join(map(str, self.negative)) or "-"
        return f"+[{pos}] -[{neg}]"


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p o q)(i) = p(q(i))
    return tuple(p[j] for j in q)


def _invert_perm(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _act(p: tuple[int, ...], bits: int) -> int:
    # (p . a)_{p(i)} = a_i, i.e. position i of the result carries a_{p^-1(i)}
    out = 0
    for i, j in enumerate(p):
        out |= ((bits >> i) & 1) << j
    return out


@dataclass(frozen=True)
class SignedPermutation:
    """An element (a, pi) of Z_2^n |x S_n; immutable, usable as a dict key."""

    n: int
    bits: int
    perm: tuple[int, ...]

    def __post_init__(self):
        if not (0 < self.n <= MAX_RANK):
            raise ValueError(f"rank must be in 1..{MAX_RANK}, got {self.n}")
        if self.bits >> self.n:
            raise ValueError("sign bits exceed rank")
        if len(self.perm) != self.n or sorted(self.perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of 0..n-1")

    # -- structure ---------------------------------------------------------
    @property
    def a(self) -> tuple[int, ...]:
        """Sign vector as a tuple (a_1, ..., a_n)."""
        return tuple((self.bits >> i) & 1 for i in range(self.n))

    @property
    def pi(self) -> tuple[int, ...]:
        """One-line form with 1-indexed images: pi[i-1] = pi(i)."""
        return tuple(j + 1 for j in self.perm)

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.bits, self.perm)

    # -- group operations --------------------------------------------------
    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        return multiply(self, other)

    def inverse(self) -> "SignedPermutation":
        ip = _invert_perm(self.perm)
        return SignedPermutation(self.n, _act(ip, self.bits), ip)

    def conjugate(self, x: "SignedPermutation") -> "SignedPermutation":
        """self |> x = self * x * self^-1."""
        return conjugate(self, x)

    def order(self) -> int:
        k, y = 1, self
        e = identity(self.n)
        while y != e:
            y = multiply(y, self)
            k += 1
        return k

    def is_identity(self) -> bool:
        return self.bits == 0 and self.perm == tuple(range(self.n))

    # -- invariants --------------------------------------------------------
    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of the permutation part, 1-indexed, fixed points included.

        Each cycle starts at its minimum element; cycles sorted by minimum.
        """
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.perm[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            out.append(tuple(c + 1 for c in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths of the permutation part, descending, 1s included."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def signed_cycle_type(self) -> SignedCycleType:
        pos, neg = [], []
        for cyc in self.cycles():
            sign = 0
            for i in cyc:
                sign ^= (self.bits >> (i - 1)) & 1
            (neg if sign else pos).append(len(cyc))
        return SignedCycleType(tuple(sorted(pos)), tuple(sorted(neg)))

    def __str__(self) -> str:
        return format_element(self)


def identity(n: int) -> SignedPermutation:
    return SignedPermutation(n, 0, tuple(range(n)))


def multiply(x: SignedPermutation, y: SignedPermutation) -> SignedPermutation:
    """(a, pi)(b, tau) = (a + pi.b, pi tau)."""
    if x.n != y.n:
        raise ValueError(f"rank mismatch: {x.n} != {y.n}")
    return SignedPermutation(x.n, x.bits ^ _act(x.perm, y.bits), _compose(x.perm, y.perm))


def inverse(x: SignedPermutation) -> SignedPermutation:
    return x.inverse()


def conjugate(by: SignedPermutation, x: SignedPermutation) -> SignedPermutation:
    """by |> x = by * x * by^-1, via the closed semidirect-product formula."""
    if by.n != x.n:
        raise ValueError(f"rank mismatch: {by.n} != {x.n}")
    b, q = by.bits, by.perm
    new_perm = _compose(q, _compose(x.perm, _invert_perm(q)))
    new_bits = b ^ _act(q, x.bits) ^ _act(new_perm, b)
    return SignedPermutation(x.n, new_bits, new_perm)


def signed_cycle_type(x: SignedPermutation) -> SignedCycleType:
    return x.signed_cycle_type()


def perm_from_cycles(n: int, cycles: list[tuple[int, ...]]) -> tuple[int, ...]:
    """One-line (0-indexed) permutation from 1-indexed cycles."""
    img = list(range(n))
    for cyc in cycles:
        for k, i in enumerate(cyc):
            if not (1 <= i <= n):
                raise ValueError(f"cycle entry {i} outside 1..{n}")
            j = cyc[(k + 1) % len(cyc)]
            img[i - 1] = j - 1
    return tuple(img)


def from_cycles(n: int, bits, cycles: list[tuple[int, ...]]) -> SignedPermutation:
    """Build an element from a sign vector (int or iterable of bits) and cycles."""
    if not isinstance(bits, int):
        vec = list(bits)
        if len(vec) != n:
            raise ValueError("sign vector length differs from rank")
        bits = sum((b & 1) << i for i, b in enumerate(vec))
    return SignedPermutation(n, bits, perm_from_cycles(n, cycles))


# -- text format -----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_element(x: SignedPermutation) -> str:
    """Canonical "BITS:CYCLES" form, e.g. "101:(1 2 3)"; identity cycles are "()"."""
    bits = "".join(str((x.bits >> i) & 1) for i in range(x.n))
    cycs = [c for c in x.cycles() if len(c) > 1]
    if not cycs:
        return f"{bits}:()"
    return bits + ":" + "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def parse_element(text: str) -> SignedPermutation:
    """Inverse of format_element; rank comes from the bit-string length."""
    try:
        bit_part, cyc_part = text.strip().split(":", 1)
    except ValueError:
        raise ValueError(f"malformed element {text!r}: missing ':'") from None
    if not bit_part or any(ch not in "01" for ch in bit_part):
        raise ValueError(f"malformed sign bits in {text!r}")
    n = len(bit_part)
    bits = sum(int(ch) << i for i, ch in enumerate(bit_part))
    rest = _CYCLE_RE.sub("", cyc_part)
    if rest.strip():
        raise ValueError(f"malformed cycles in {text!r}")
    cycles = []
    seen: set[int] = set()
    for grp in _CYCLE_RE.findall(cyc_part):
        entries = grp.split()
        if not entries:
            continue
        cyc = tuple(int(e) for e in entries)
        if len(set(cyc)) != len(cyc) or seen & set(cyc):
            raise ValueError(f"repeated entry in cycles of {text!r}")
        seen |= set(cyc)
        cycles.append(cyc)
    return SignedPermutation(n, bits, perm_from_cycles(n, cycles))


# -- subgroups -------------------------------------------------------------


def group_order(kind: GroupKind, n: int) -> int:
    if kind is GroupKind.B:
        return (1 << n) * math.factorial(n)
    if kind is GroupKind.D:
        return (1 << (n - 1)) * math.factorial(n)
    return math.factorial(n)


def contains(kind: GroupKind, x: SignedPermutation) -> bool:
    if kind is GroupKind.B:
        return True
    if kind is GroupKind.D:
        return bin(x.bits).count("1") % 2 == 0
    return x.bits == 0


def generators(kind: GroupKind, n: int) -> list[SignedPermutation]:
    """Fixed small generating set, used for deterministic conjugation BFS."""
    gens = [from_cycles(n, 0, [(i, i + 1)]) for i in range(1, n)]
    if kind is GroupKind.B:
        gens.append(SignedPermutation(n, 1, tuple(range(n))))
    elif kind is GroupKind.D:
        if n < 2:
            raise ValueError("D requires rank >= 2")
        gens.append(SignedPermutation(n, 0b11, tuple(range(n))))
    return gens


def elements(kind: GroupKind, n: int):
    """Iterate the whole group; desk scale only."""
    import itertools

    for p in itertools.permutations(range(n)):
        for bits in range(1 << n):
            x = SignedPermutation(n, bits, p)
            if contains(kind, x):
                yield x


def random_element(rng, n: int, kind: GroupKind = GroupKind.B) -> SignedPermutation:
    perm = list(range(n))
    rng.shuffle(perm)
    bits = rng.getrandbits(n)
    if kind is GroupKind.D and bin(bits).count("1") % 2:
        bits ^= 1
    elif kind is GroupKind.S:
        bits = 0
    return SignedPermutation(n, bits, tuple(perm))
