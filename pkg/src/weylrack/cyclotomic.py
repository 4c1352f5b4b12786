"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Scalars are residues of rational polynomials modulo the m-th cyclotomic
polynomial; all arithmetic is exact, no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _poly_divmod_int(num: list[int], den: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (den monic, remainder must vanish)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


class CyclotomicField:
    """Q(zeta_m) with scalars hashed and compared exactly."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        self.poly = cyclotomic_polynomial(m)
        self.degree = len(self.poly) - 1
        self._zero = CycScalar(self, (Fraction(0),) * self.degree)
        self._one = self.scalar(1)

    def __repr__(self):
        return f"CyclotomicField({self.m})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(("CyclotomicField", self.m))

    @property
    def zero(self) -> "CycScalar":
        return self._zero

    @property
    def one(self) -> "CycScalar":
        return self._one

    def scalar(self, q) -> "CycScalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return CycScalar(self, tuple(coeffs))

    def zeta(self, k: int = 1) -> "CycScalar":
        """zeta_m^k."""
        k %= self.m
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return CycScalar(self, self._reduce(coeffs))

    def from_coeffs(self, coeffs) -> "CycScalar":
        return CycScalar(self, self._reduce([Fraction(c) for c in coeffs]))

    def minus_one(self) -> "CycScalar":
        return self.scalar(-1)

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        coeffs = list(coeffs)
        deg = self.degree
        for k in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[k]
            if c:
                for i in range(deg + 1):
                    coeffs[k - deg + i] -= c * self.poly[i]
        coeffs = coeffs[:deg] + [Fraction(0)] * max(0, deg - len(coeffs))
        return tuple(coeffs[:deg])


@dataclass(frozen=True)
class CycScalar:
    field: CyclotomicField
    coeffs: tuple[Fraction, ...]

    def _check(self, other: "CycScalar"):
        if self.field != other.field:
            raise ValueError("mixed cyclotomic moduli")

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        return CycScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CycScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycScalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1 if deg > 1 else 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CycScalar(self.field, self.field._reduce(prod))

    def inverse(self) -> "CycScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        # extended Euclid in Q[x] against the (monic, irreducible) modulus
        a = [Fraction(c) for c in self.field.poly]
        b = list(self.coeffs)
        sa, sb = [Fraction(0)], [Fraction(1)]

        def strip(p):
            while p and not p[-1]:
                p.pop()
            return p

        strip(b)
        while len(b) > 1:
            q, r = _poly_divmod_frac(a, b)
            a, b = b, r
            sa, sb = sb, _poly_sub(sa, _poly_mul(q, sb))
            strip(b)
        if not b:
            raise ZeroDivisionError("scalar not invertible (modulus not coprime)")
        c = b[0]
        inv = [s / c for s in sb]
        return CycScalar(self.field, self.field._reduce(inv))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def multiplicative_order(self, bound: int = 1000):
        """Smallest k with self**k == 1, or None if none up to ``bound``."""
        acc = self.field.one
        for k in range(1, bound + 1):
            acc = acc * self
            if acc == self.field.one:
                return k
        return None

    def __repr__(self):
        return f"Cyc{self.field.m}{list(self.coeffs)}"


def _poly_divmod_frac(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    q = [Fraction(0)] * max(1, len(num) - dn)
    for k in range(len(num) - dn - 1, -1, -1):
        c = num[k + dn] / lead
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, num[:dn]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return out
