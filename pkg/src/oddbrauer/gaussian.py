"""Exact arithmetic in Z[i]: primary primes, places of Q(i) above odd primes,
and valuations at those places."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .arith import is_prime


class NotDivisible(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class GaussInt:
    re: int
    im: int = 0

    @classmethod
    def coerce(cls, x: GaussInt | int) -> GaussInt:
        return x if isinstance(x, GaussInt) else cls(int(x), 0)

    def __add__(self, other: GaussInt | int) -> GaussInt:
        o = GaussInt.coerce(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other: GaussInt | int) -> GaussInt:
        return self + (-GaussInt.coerce(other))

    def __rsub__(self, other: GaussInt | int) -> GaussInt:
        return GaussInt.coerce(other) - self

    def __mul__(self, other: GaussInt | int) -> GaussInt:
        o = GaussInt.coerce(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GaussInt:
        if k < 0:
            raise ValueError("negative powers are not Gaussian integers")
        result, base = GaussInt(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        return f"{self.re}{self.im:+d}i"

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def associates(self) -> list[GaussInt]:
        x, out = self, []
        for _ in range(4):
            out.append(x)
            x = x * GaussInt(0, 1)
        return out

    def divides(self, other: GaussInt | int) -> bool:
        o = GaussInt.coerce(other)
        q = o * self.conj()
        n = self.norm()
        return q.re % n == 0 and q.im % n == 0

    def exact_div(self, other: GaussInt | int) -> GaussInt:
        o = GaussInt.coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero in Z[i]")
        q = self * o.conj()
        n = o.norm()
        if q.re % n or q.im % n:
            raise NotDivisible(f"{o} does not divide {self} in Z[i]")
        return GaussInt(q.re // n, q.im // n)


def norm(x: GaussInt) -> int:
    return x.norm()


def conj(x: GaussInt) -> GaussInt:
    return x.conj()


def exact_div(x: GaussInt, y: GaussInt) -> GaussInt:
    return x.exact_div(y)


ONE_PLUS_I_CUBED = GaussInt(-2, 2)


def is_primary(x: GaussInt) -> bool:
    """x ≡ 1 mod (1+i)^3."""
    if not x:
        raise ValueError("zero is not a prime generator")
    return ONE_PLUS_I_CUBED.divides(x - 1)


def two_squares(p: int) -> tuple[int, int]:
    """(a, b) with a > b > 0 and a^2 + b^2 = p, for a prime p ≡ 1 mod 4."""
    for b in range(1, isqrt(p // 2) + 1):
        a2 = p - b * b
        a = isqrt(a2)
        if a * a == a2:
            return a, b
    raise ValueError(f"{p} is not a sum of two squares")


def primary_generator(p: int) -> GaussInt:
    """The primary prime of norm p with positive imaginary part.

    Its conjugate is the primary generator of the other prime above p.
    """
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"primary_generator needs a prime p ≡ 1 mod 4, got {p}")
    a, b = two_squares(p)
    for base in (GaussInt(a, b), GaussInt(a, -b)):
        for x in base.associates():
            if is_primary(x) and x.im > 0:
                return x
    raise AssertionError("unreachable: some associate is always primary")


class PlaceKind(Enum):
    INERT = "inert"
    SPLIT = "split"


@dataclass(frozen=True)
class GaussPlace:
    kind: PlaceKind
    ell: int
    generator: GaussInt

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind is PlaceKind.INERT else 1

    def __str__(self) -> str:
        return f"{self.kind.value}({self.ell}, {self.generator})"


def places_above(ell: int) -> list[GaussPlace]:
    """Places of Q(i) above an odd prime; split generators are a+bi and a-bi with a > b > 0."""
    if ell == 2:
        raise ValueError("2 ramifies in Q(i); places above 2 are not supported")
    if ell < 2 or not is_prime(ell):
        raise ValueError(f"{ell} is not an odd prime")
    if ell % 4 == 3:
        return [GaussPlace(PlaceKind.INERT, ell, GaussInt(ell))]
    a, b = two_squares(ell)
    return [
        GaussPlace(PlaceKind.SPLIT, ell, GaussInt(a, b)),
        GaussPlace(PlaceKind.SPLIT, ell, GaussInt(a, -b)),
    ]


def gauss_val(x: GaussInt, v: GaussPlace) -> int:
    if not x:
        raise ValueError("valuation of zero is undefined")
    k = 0
    g = v.generator
    while g.divides(x):
        x = x.exact_div(g)
        k += 1
    return k
