"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored as integer numerators over one positive common
denominator, reduced modulo the m-th cyclotomic polynomial, so equality
is coefficient-wise and zero testing is exact.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import DivisionByZero, OrderMismatch, ValidationError

Rational = Fraction

_UNIT_ROUNDOFF = 2.0 ** -53


def rational_str(r: Fraction) -> str:
    """Render a rational as ``"p/q"`` (always with a denominator)."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValidationError(f"not a rational: {s!r}")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {s!r}") from exc
    raise ValidationError(f"not a rational: {s!r}")


# --- integer polynomial helpers (lowest degree first) ---------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_int_monic(num: list, den: Sequence[int]) -> tuple[list, list]:
    """Divide integer polynomial ``num`` by monic ``den``."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    return quot, num[:dn]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _divmod_int_monic(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Reduced integer vectors of zeta^k for k = 0..m-1."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    for k in range(m):
        mono = [0] * k + [1]
        _, rem = _divmod_int_monic(mono, phi)
        rows.append(tuple(rem + [0] * (deg - len(rem))))
    return tuple(rows)


# --- rational polynomial helpers for the extended Euclid ------------------

def _qpoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _trim(a)
    return _trim(q), a


def _qpoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qpoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


class ComplexApprox(NamedTuple):
    re: float
    im: float
    err: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class CycloElement:
    """An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1)."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, coeffs: Iterable = ()):
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in coeffs]
        self._setup(order, nums, den)

    def _setup(self, order: int, nums: list, den: int) -> None:
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        phi = cyclotomic_polynomial(order)
        deg = len(phi) - 1
        if len(nums) > deg:
            _, nums = _divmod_int_monic(nums, phi)
        nums = list(nums) + [0] * (deg - len(nums))
        g = den
        for v in nums:
            g = gcd(g, v)
            if g == 1:
                break
        if g == 0:
            den = 1
        elif g != 1:
            nums = [v // g for v in nums]
            den //= g
        self.order = order
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, nums: list, den: int) -> "CycloElement":
        obj = cls.__new__(cls)
        obj._setup(order, nums, den)
        return obj

    # constructors -------------------------------------------------------
    @classmethod
    def rational(cls, order: int, value) -> "CycloElement":
        return cls(order, [Fraction(value)])

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycloElement":
        return cls._raw(order, list(_power_table(order)[k % order]), 1)

    @classmethod
    def from_strings(cls, order: int, items: Sequence) -> "CycloElement":
        if isinstance(items, (str, int)):
            items = [items]
        deg = euler_phi(order)
        if len(items) != deg:
            raise ValidationError(
                f"expected {deg} coefficients for order {order}, got {len(items)}"
            )
        return cls(order, [parse_rational(s) for s in items])

    # accessors ----------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self._den) for v in self._num)

    def to_strings(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "CycloElement":
        if isinstance(other, CycloElement):
            if other.order != self.order:
                raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElement.rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        nums = [a * d2 + b * d1 for a, b in zip(self._num, other._num)]
        return CycloElement._raw(self.order, nums, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement._raw(self.order, [-a for a in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._num, other._num
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloElement._raw(self.order, prod, self._den * other._den)

    __rmul__ = __mul__

    def inv(self) -> "CycloElement":
        """Multiplicative inverse via the extended Euclid algorithm against Phi_m."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        a = _trim([Fraction(v, self._den) for v in self._num])
        b = [Fraction(v) for v in cyclotomic_polynomial(self.order)]
        # invariant: s0 * a == r0 (mod Phi), s1 * a == r1 (mod Phi)
        r0, r1 = a, b
        s0, s1 = [Fraction(1)], []
        while len(r1) > 0:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        # r0 is a nonzero constant because Phi_m is irreducible
        c = r0[0]
        return CycloElement(self.order, [x / c for x in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycloElement.rational(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycloElement":
        """Complex conjugate: zeta -> zeta^(m-1)."""
        m = self.order
        table = _power_table(m)
        out = [0] * len(self._num)
        for k, c in enumerate(self._num):
            if c:
                row = table[(-k) % m]
                for i, v in enumerate(row):
                    if v:
                        out[i] += c * v
        return CycloElement._raw(m, out, self._den)

    def galois(self, k: int) -> "CycloElement":
        """The automorphism zeta -> zeta^k (k coprime to the order)."""
        m = self.order
        if gcd(k, m) != 1:
            raise ValueError(f"{k} is not a unit modulo {m}")
        table = _power_table(m)
        out = [0] * len(self._num)
        for j, c in enumerate(self._num):
            if c:
                for i, v in enumerate(table[(j * k) % m]):
                    if v:
                        out[i] += c * v
        return CycloElement._raw(m, out, self._den)

    def embed(self) -> ComplexApprox:
        """Double-precision value at zeta = exp(2 pi i / m) with an error bound."""
        m = self.order
        if self.is_rational():
            c = Fraction(self._num[0], self._den)
            val = float(c)
            err = 0.0 if Fraction(val) == c else abs(val) * _UNIT_ROUNDOFF
            return ComplexApprox(val, 0.0, err)
        total = 0j
        mass = 0.0
        nterms = 0
        for k, v in enumerate(self._num):
            if v:
                c = v / self._den
                total += c * cmath.exp(2j * math.pi * k / m)
                mass += abs(c)
                nterms += 1
        # per term: coefficient rounding, angle rounding, exp and product
        # rounding; plus the running summation.
        err = mass * _UNIT_ROUNDOFF * (16.0 + 2.0 * nterms)
        return ComplexApprox(total.real, total.imag, err)

    def __complex__(self) -> complex:
        return self.embed().value

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return (
                self.order == other.order
                and self._den == other._den
                and self._num == other._num
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self._num, self._den))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"({c})*z{self.order}^{k}")
        return " + ".join(terms) if terms else "0"


class CyclotomicField:
    """Arithmetic context for one fixed order m."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.degree = euler_phi(order)
        self.zero = CycloElement.rational(order, 0)
        self.one = CycloElement.rational(order, 1)

    def __call__(self, value) -> CycloElement:
        if isinstance(value, CycloElement):
            if value.order != self.order:
                raise OrderMismatch(f"orders differ: {self.order} vs {value.order}")
            return value
        return CycloElement.rational(self.order, value)

    def zeta(self, k: int = 1) -> CycloElement:
        return CycloElement.zeta(self.order, k)

    def from_strings(self, items) -> CycloElement:
        return CycloElement.from_strings(self.order, items)

    def __repr__(self):
        return f"CyclotomicField({self.order})"


def lift(element: CycloElement, order: int) -> CycloElement:
    """Re-express an element of Q(zeta_d) inside Q(zeta_m), d | m."""
    d = element.order
    if order % d:
        raise OrderMismatch(f"Q(zeta_{d}) is not a subfield of Q(zeta_{order})")
    step = order // d
    out = CycloElement.rational(order, 0)
    for k, c in enumerate(element.coeffs):
        if c:
            out = out + CycloElement.zeta(order, k * step) * c
    return out
