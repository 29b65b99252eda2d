"""Finite computations behind the local results: the supersingular curve
y^2 + y = x^3 + x^2 + x + 1 over binary fields, cohomology of a cyclic group
acting on Z[i]/p^m, and exact forms of the Hasse-Weil and Swan thresholds.

Binary field elements are ints whose bits are coordinates in the polynomial
basis of the field's modulus; the field object carries the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Optional, Tuple

from .arith import factor, is_prime, p_group_invariants, smith_normal_form
from .gaussian import GaussInt, GaussPlace, PlaceKind, gauss_val

Point = Optional[Tuple[int, int]]  # None is the point at infinity


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Exhaustive trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, q) == 0:
                return False
    return True


def least_irreducible(n: int) -> int:
    for poly in range(1 << n, 1 << (n + 1)):
        if is_irreducible_gf2(poly):
            return poly
    raise AssertionError("unreachable")


class BinaryField:
    """GF(2^n) with the numerically least irreducible modulus, n <= 24."""

    def __init__(self, n: int):
        if not 1 <= n <= 24:
            raise ValueError("degree must be in 1..24")
        self.n = n
        self.q = 1 << n
        self.modulus = least_irreducible(n)
        self._build_tables()

    def _clmul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            if a >> self.n:
                a ^= self.modulus
            b >>= 1
        return r

    def _build_tables(self) -> None:
        order = self.q - 1
        for g in range(2, self.q) if self.q > 2 else [1]:
            exp = [0] * order
            x = 1
            ok = True
            for k in range(order):
                exp[k] = x
                x = self._clmul(x, g)
                if x == 1 and k < order - 1:
                    ok = False
                    break
            if ok:
                break
        log = [0] * self.q
        for k, v in enumerate(exp):
            log[v] = k
        self.exp = exp + exp
        self.log = log

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of 0 in GF(2^n)")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def cube_root_of_unity(self) -> int:
        """An element w with w^2 + w + 1 = 0; exists iff n is even."""
        for w in range(2, self.q):
            if self.sqr(w) ^ w ^ 1 == 0:
                return w
        raise ValueError(f"no cube root of unity subfield in GF(2^{self.n})")


@lru_cache(maxsize=32)
def binary_field(n: int) -> BinaryField:
    return BinaryField(n)


A_COEFFS = (0, 1, 1, 1, 1)  # (a1, a3, a2, a4, a6): y^2 + y = x^3 + x^2 + x + 1


class BinaryCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over GF(2^n), coefficients in F_2."""

    def __init__(self, n: int, coeffs: Tuple[int, int, int, int, int] = A_COEFFS):
        self.F = binary_field(n)
        self.n = n
        self.a1, self.a3, self.a2, self.a4, self.a6 = (c & 1 for c in coeffs)
        self.coeffs = tuple(coeffs)

    def rhs(self, x: int) -> int:
        F = self.F
        x2 = F.sqr(x)
        return F.mul(x2, x) ^ (x2 if self.a2 else 0) ^ (x if self.a4 else 0) ^ self.a6

    def lhs(self, x: int, y: int) -> int:
        F = self.F
        return F.sqr(y) ^ (F.mul(x, y) if self.a1 else 0) ^ (y if self.a3 else 0)

    def contains(self, P: Point) -> bool:
        return P is None or self.lhs(*P) == self.rhs(P[0])

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        x, y = P
        return (x, y ^ (x if self.a1 else 0) ^ self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.F
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            # same x: Q is P or -P
            if Q == self.neg(P):
                return None
            den = (F.mul(self.a1, x1) if self.a1 else 0) ^ self.a3
            if den == 0:
                return None
            num = F.sqr(x1) ^ self.a4 ^ (y1 if self.a1 else 0)
            lam = F.div(num, den)
        else:
            lam = F.div(y1 ^ y2, x1 ^ x2)
        x3 = F.sqr(lam) ^ (lam if self.a1 else 0) ^ self.a2 ^ x1 ^ x2
        nu = y1 ^ F.mul(lam, x1)
        y3 = F.mul(lam ^ self.a1, x3) ^ nu ^ self.a3
        return (x3, y3)

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            return self.mul(-k, self.neg(P))
        R: Point = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    @lru_cache(maxsize=None)
    def _artin_schreier_table(self) -> dict[int, list[int]]:
        table: dict[int, list[int]] = {}
        F = self.F
        for t in range(F.q):
            table.setdefault(F.sqr(t) ^ t, []).append(t)
        return table

    def points(self) -> list[Point]:
        """Every projective point, found by exhaustive enumeration of y per x."""
        F = self.F
        pts: list[Point] = [None]
        table = self._artin_schreier_table()
        for x in range(F.q):
            b = (F.mul(self.a1, x) if self.a1 else 0) ^ self.a3
            c = self.rhs(x)
            if b == 0:
                # squaring is a bijection; y^2 = c has exactly one root
                y = c
                for _ in range(self.n - 1):
                    y = F.sqr(y)
                pts.append((x, y))
            else:
                for t in table.get(F.div(c, F.sqr(b)), []):
                    pts.append((x, F.mul(b, t)))
        return pts


def count_points_A(n: int, coeffs: Tuple[int, int, int, int, int] = A_COEFFS) -> int:
    """Number of points of the curve over GF(2^n), counted by enumeration."""
    if not 1 <= n <= 24:
        raise ValueError("n must be in 1..24")
    return len(BinaryCurve(n, coeffs).points())


def formula_count(k: int) -> int:
    """Point count over GF(4^k) predicted by the Frobenius eigenvalues -2, -2."""
    return 4**k + 1 - 2 * (-2) ** k


def _p_torsion_sizes(curve: BinaryCurve, pts: list[Point], p: int) -> list[int]:
    order = len(pts)
    a = 0
    while order % p == 0:
        order //= p
        a += 1
    first_kill = []
    for P in pts:
        Q, j = P, 0
        while Q is not None and j < a:
            Q = curve.mul(p, Q)
            j += 1
        first_kill.append(j if Q is None else a + 1)
    return [sum(1 for f in first_kill if f <= j) for j in range(a + 1)]


def group_structure_p_part(
    n: int, p: int, coeffs: Tuple[int, int, int, int, int] = A_COEFFS
) -> tuple[int, ...]:
    """Invariant factors (p^k1, p^k2) of the p-primary part of the curve's group over GF(2^n)."""
    if n % 2:
        raise ValueError("degree must be even")
    curve = BinaryCurve(n, coeffs)
    pts = curve.points()
    if len(pts) % p:
        raise ValueError(f"{p} does not divide the group order {len(pts)}")
    return p_group_invariants(p, _p_torsion_sizes(curve, pts, p))


def _generators(curve: BinaryCurve, pts: list[Point]) -> list[Point]:
    subgroup = {None}
    gens: list[Point] = []
    for P in pts:
        if P in subgroup:
            continue
        gens.append(P)
        multiples = [None]
        Q = P
        while Q is not None:
            multiples.append(Q)
            Q = curve.add(Q, P)
        subgroup = {curve.add(S, M) for S in subgroup for M in multiples}
        if len(subgroup) == len(pts):
            break
    return gens


def automorphisms(curve: BinaryCurve) -> tuple[Callable[[Point], Point], Callable[[Point], Point]]:
    F = curve.F
    w = F.cube_root_of_unity()
    w2 = F.sqr(w)

    def sigma(P: Point) -> Point:
        if P is None:
            return None
        x, y = P
        return (x ^ 1, x ^ y ^ w)

    def rho(P: Point) -> Point:
        if P is None:
            return None
        x, y = P
        return (x ^ w, F.mul(w2, x) ^ y)

    return sigma, rho


def check_automorphisms(
    n: int, coeffs: Tuple[int, int, int, int, int] = A_COEFFS, full_pairs_limit: int = 400
) -> bool:
    """Pointwise check that sigma, rho are automorphisms with sigma^2 = rho^2 = -1
    and sigma·rho = -rho·sigma.

    Additivity is checked on all pairs for small groups; otherwise for all P
    against a generating set, which suffices by induction.
    """
    if n % 2:
        raise ValueError(f"no cube root of unity subfield in GF(2^{n})")
    curve = BinaryCurve(n, coeffs)
    sigma, rho = automorphisms(curve)
    pts = curve.points()
    pset = set(pts)
    for f in (sigma, rho):
        if {f(P) for P in pts} != pset:
            return False
    for P in pts:
        if sigma(sigma(P)) != curve.neg(P) or rho(rho(P)) != curve.neg(P):
            return False
        if sigma(rho(P)) != curve.neg(rho(sigma(P))):
            return False
    others = pts if len(pts) <= full_pairs_limit else _generators(curve, pts)
    for f in (sigma, rho):
        for P in pts:
            fP = f(P)
            for Q in others:
                if f(curve.add(P, Q)) != curve.add(fP, f(Q)):
                    return False
    return True


# --- cohomology of Z/p^m acting on Z[i]/p^m -------------------------------------


def _gauss_mod(x: GaussInt, M: int) -> GaussInt:
    return GaussInt(x.re % M, x.im % M)


def geometric_sum_mod(beta: GaussInt, count: int, M: int) -> GaussInt:
    """sum_{k < count} beta^k in Z[i]/M by binary splitting."""
    # (S(k), beta^k) with S(2k) = S(k)(1 + beta^k), S(k+1) = S(k) + beta^k
    S, P = GaussInt(0), GaussInt(1)
    for bit in bin(count)[2:]:
        S, P = _gauss_mod(S * (P + 1), M), _gauss_mod(P * P, M)
        if bit == "1":
            S, P = _gauss_mod(S + P, M), _gauss_mod(P * beta, M)
    return S


def _mult_matrix(z: GaussInt) -> list[list[int]]:
    return [[z.re, -z.im], [z.im, z.re]]


def _inv_unimodular_2x2(V: list[list[int]]) -> list[list[int]]:
    (a, b), (c, d) = V
    det = a * d - b * c
    assert det in (1, -1)
    return [[d * det, -b * det], [-c * det, a * det]]


def _h1_smith(Nz: GaussInt, Dz: GaussInt, M: int) -> tuple[int, ...]:
    diag, _, V = smith_normal_form(_mult_matrix(Nz))
    diag = diag + [0] * (2 - len(diag))
    c = [M // gcd(s, M) for s in diag]
    Vinv = _inv_unimodular_2x2(V)
    G = _mult_matrix(Dz)
    gens = [[G[0][0], G[0][1], M, 0], [G[1][0], G[1][1], 0, M]]
    coords = []
    for i in range(2):
        row = []
        for col in range(4):
            y = Vinv[i][0] * gens[0][col] + Vinv[i][1] * gens[1][col]
            assert y % c[i] == 0, "image of D must lie in ker N"
            row.append(y // c[i])
        coords.append(row)
    quot, _, _ = smith_normal_form(coords)
    return tuple(sorted(quot))


def _h1_enumerate(Nz: GaussInt, Dz: GaussInt, p: int, M: int) -> tuple[int, ...]:
    def act(z: GaussInt, a: int, b: int) -> tuple[int, int]:
        return (z.re * a - z.im * b) % M, (z.im * a + z.re * b) % M

    kernel = [(a, b) for a in range(M) for b in range(M) if act(Nz, a, b) == (0, 0)]
    image = {act(Dz, a, b) for a in range(M) for b in range(M)}
    sizes = []
    q = 1
    while True:
        hits = sum(1 for a, b in kernel if ((q * a) % M, (q * b) % M) in image)
        sizes.append(hits // len(image))
        if hits == len(kernel):
            break
        q *= p
    return p_group_invariants(p, sizes)


def h1_cyclic_module(p: int, m: int, beta: GaussInt, method: str = "smith") -> tuple[int, ...]:
    """Invariant factors of H^1(Z/p^m, Z[i]/p^m) = ker(N)/im(beta - 1), the generator
    acting by multiplication by beta."""
    if p % 4 != 3 or not is_prime(p):
        raise ValueError("p must be a prime ≡ 3 mod 4")
    if m < 1:
        raise ValueError("m must be positive")
    if beta - 1:
        j = gauss_val(beta - 1, GaussPlace(PlaceKind.INERT, p, GaussInt(p)))
        if j == 0:
            raise ValueError("beta ≢ 1 mod p: val_p(beta - 1) = 0")
    M = p**m
    Nz = geometric_sum_mod(beta, M, M)
    Dz = _gauss_mod(beta - 1, M)
    if method == "smith":
        return _h1_smith(Nz, Dz, M)
    if method == "enumerate":
        return _h1_enumerate(Nz, Dz, p, M)
    raise ValueError(f"unknown method {method!r}")


# --- exact thresholds ---------------------------------------------------------


def _sqrt_q_threshold(q: int, T: int) -> bool:
    """sqrt(q) + 1/sqrt(q) > T, decided in integers."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if T < 0:
        return True
    return (q + 1) ** 2 > T * T * q


def hasse_weil_threshold(q: int, p: int, g: int) -> bool:
    return _sqrt_q_threshold(q, 2 * (p * (g - 1) + 1))


def cone_threshold(q: int, p: int) -> bool:
    return _sqrt_q_threshold(q, 2 * (2 * p + 1))


@dataclass(frozen=True)
class SwanBound:
    upper: int
    multiple_of: int

    def admissible(self) -> list[int]:
        return list(range(0, self.upper + 1, self.multiple_of))


def swan_bound(e: int, p: int, t: int) -> SwanBound:
    """Swan conductor of a p^t-torsion class on a good-reduction K3 over a p-adic
    field of absolute ramification e: a multiple of p, at most m + t·e - 1,
    m the least integer exceeding e/(p - 1)."""
    if e < 1 or t < 1 or not is_prime(p):
        raise ValueError("need e, t >= 1 and p prime")
    m = e // (p - 1) + 1
    return SwanBound(m + t * e - 1, p)


def odd_prime_divisors(n: int) -> list[int]:
    return factor(n).odd_primes()


def even_degrees(max_degree: int) -> Iterable[int]:
    return range(2, max_degree + 1, 2)
