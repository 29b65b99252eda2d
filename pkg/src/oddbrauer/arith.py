"""Exact integer kernel: primality, factorization, p-adic valuations of rationals,
and Smith normal form for small integer matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Mapping, Sequence

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = 10**7

# Deterministic Miller-Rabin for n < 3.3e24 (covers 2^64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


class FactoringBudgetExceeded(ArithmeticError):
    """A composite cofactor survived Pollard-rho within the iteration budget."""

    def __init__(self, cofactor: int, budget: int):
        super().__init__(
            f"composite cofactor {cofactor} not split within {budget} iterations; increase budget"
        )
        self.cofactor = cofactor
        self.budget = budget


@dataclass(frozen=True)
class Factorization:
    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))

    def value(self) -> int:
        out = 1
        for p, k in self.entries.items():
            out *= p**k
        return out

    def primes(self) -> list[int]:
        return list(self.entries)

    def odd_primes(self) -> list[int]:
        return [p for p in self.entries if p != 2]

    def __contains__(self, p: int) -> bool:
        return p in self.entries

    def __getitem__(self, p: int) -> int:
        return self.entries.get(p, 0)


@lru_cache(maxsize=1)
def _small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i in range(limit + 1) if sieve[i])


def primes_up_to(limit: int) -> Iterator[int]:
    if limit <= TRIAL_LIMIT:
        for p in _small_primes():
            if p > limit:
                return
            yield p
    else:
        yield from _small_primes()
        for n in range(TRIAL_LIMIT + 1, limit + 1):
            if is_prime(n):
                yield n


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A parameters.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def halve(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = halve(P * U + V), halve(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Proven correct below 3.3e24 (deterministic Miller-Rabin with the first 13
    prime bases). Above that, Baillie-PSW: no counterexample is known, but the
    answer is probabilistic in principle.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    if isqrt(n) ** 2 == n:
        return False
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _brent(n: int, y: int, c: int, budget: int) -> int | None:
    """One Pollard-rho (Brent) run of x -> x^2 + c; a nontrivial factor or None."""
    m = 128
    g = r = q = 1
    x = ys = y
    iterations = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        iterations += r
        r *= 2
        if iterations > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, budget: int) -> int:
    r = isqrt(n)
    if r * r == n:
        return r
    seed = n % (2**61 - 1)
    spent = 0
    attempt = 0
    while spent < budget:
        share = min(budget - spent, max(budget // 4, 1))
        g = _brent(n, (seed + attempt) % n, 1 + attempt, share)
        if g is not None:
            return g
        spent += share
        attempt += 1
    raise FactoringBudgetExceeded(n, budget)


def factor(n: int, budget: int = DEFAULT_BUDGET) -> Factorization:
    """Factor |n|: trial division to 10^6, then Brent's Pollard-rho.

    The rho seed is derived from the cofactor itself, so output is reproducible.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    entries: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            entries[p] = entries.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if c < TRIAL_LIMIT**2 or is_prime(c):
            # trial division already removed every prime below 10^6
            entries[c] = entries.get(c, 0) + 1
            continue
        d = _split(c, budget)
        stack.extend((d, c // d))
    return Factorization(entries)


def val_p(q: int | Fraction, p: int) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero is undefined")
    return _val_int(q.numerator, p) - _val_int(q.denominator, p)


def _val_int(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def smith_normal_form(
    rows: Sequence[Sequence[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix A: returns (diag, U, V) with
    U·A·V = diag (padded with zeros), U and V unimodular.

    Diagonal entries are non-negative and each divides the next.
    """
    A = [list(r) for r in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, k: int) -> None:
        for M in (A, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for M in (A, V):
            for r in M:
                r[dst] += k * r[src]

    for t in range(min(nr, nc)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    done = done and A[i][t] == 0
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    done = done and A[t][j] == 0
            if not done:
                continue
            # pivot must divide the rest of the submatrix
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    diag = [A[i][i] for i in range(min(nr, nc))]
    return diag, U, V


def invariant_factors_mod(rows: Sequence[Sequence[int]], modulus: int) -> tuple[int, ...]:
    """Invariant factors of the kernel of the matrix acting on (Z/modulus)^ncols.

    For diagonal entry s the kernel summand is Z/gcd(s, modulus); a zero entry
    contributes Z/modulus.
    """
    diag, _, _ = smith_normal_form(rows)
    ncols = len(rows[0])
    diag = diag + [0] * (ncols - len(diag))
    return tuple(sorted(gcd(s, modulus) for s in diag))


def p_group_invariants(p: int, torsion_sizes: Sequence[int], rank: int = 2) -> tuple[int, ...]:
    """Invariant factors of a finite abelian p-group from |G[p^j]| for j = 0, 1, 2, ...

    torsion_sizes must run until it stabilizes (the last entry is |G|). The result
    is padded with 1s to `rank` entries and sorted ascending.
    """
    logs = []
    for size in torsion_sizes:
        k = 0
        while size % p == 0:
            size //= p
            k += 1
        if size != 1:
            raise ValueError("torsion sizes must be powers of p")
        logs.append(k)
    # r_j = number of cyclic factors of order >= p^j
    ranks = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
    exps = []
    for j, r in enumerate(ranks, start=1):
        nxt = ranks[j] if j < len(ranks) else 0
        exps.extend([j] * (r - nxt))
    exps += [0] * max(0, rank - len(exps))
    return tuple(sorted(p**e for e in exps))
