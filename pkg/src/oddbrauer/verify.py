"""Property suites behind `verify-local`: finite-field identities for the
supersingular curve and the cyclic-group cohomology, and the 2-adic check of the
Kummer-surface example."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .fflab import (
    A_COEFFS,
    check_automorphisms,
    count_points_A,
    even_degrees,
    formula_count,
    group_structure_p_part,
    h1_cyclic_module,
    odd_prime_divisors,
)
from .gaussian import GaussInt
from .qp2 import kummer_example_verify

Coeffs = tuple  # (a1, a3, a2, a4, a6)

# (p, n): the p-part over GF(2^n) versus GF(2^(p·n))
DEGREE_GROWTH_CASES = ((3, 2), (3, 4))
H1_PRIMES = (3, 7, 11)
H1_UNITS = (GaussInt(1), GaussInt(0, 1), GaussInt(2, 1), GaussInt(1, 3))


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, fn: Callable[[], tuple[bool, str]]) -> None:
        try:
            ok, detail = fn()
        except (ValueError, ArithmeticError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        self.checks.append(Check(name, ok, detail))

    def to_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "checks": [c.to_dict() for c in self.checks], "data": self.data}


def point_count_identity(max_k: int = 6, coeffs: Coeffs = A_COEFFS) -> tuple[bool, str]:
    bad = []
    for k in range(1, max_k + 1):
        got = count_points_A(2 * k, coeffs)
        if not got == formula_count(k) == ((-2) ** k - 1) ** 2:
            bad.append(f"GF(4^{k}): {got} points, formula {formula_count(k)}")
    return (not bad, "; ".join(bad) or f"OK n ≤ {max_k}")


def equal_invariant_factors(max_degree: int = 12, coeffs: Coeffs = A_COEFFS) -> tuple[bool, str]:
    bad, seen = [], []
    for n in even_degrees(max_degree):
        order = count_points_A(n, coeffs)
        for p in odd_prime_divisors(order):
            inv = group_structure_p_part(n, p, coeffs)
            seen.append(f"GF(2^{n}) {p}-part {inv}")
            if len(inv) != 2 or inv[0] != inv[1]:
                bad.append(f"GF(2^{n}): {p}-part {inv}")
    return (not bad, "; ".join(bad) or "OK: " + ", ".join(seen))


def degree_growth(cases=DEGREE_GROWTH_CASES, coeffs: Coeffs = A_COEFFS) -> tuple[bool, str]:
    bad, seen = [], []
    for p, n in cases:
        low = group_structure_p_part(n, p, coeffs)
        high = group_structure_p_part(p * n, p, coeffs)
        seen.append(f"{low} -> {high} ({n} -> {p * n})")
        if len(low) != 2 or tuple(p * k for k in low) != high:
            bad.append(f"p = {p}, degree {n} -> {p * n}: {low} -> {high}")
    return (not bad, "; ".join(bad) or "OK: " + ", ".join(seen))


def automorphism_identities(degrees=(2, 4, 6, 8), coeffs: Coeffs = A_COEFFS) -> tuple[bool, str]:
    bad = [n for n in degrees if not check_automorphisms(n, coeffs)]
    return (not bad, f"failed in degrees {bad}" if bad else f"OK in degrees {list(degrees)}")


def h1_samples(primes=H1_PRIMES, max_m: int = 2, enumerate_limit: int = 10**4):
    """(p, m, j, beta) with val_p(beta - 1) = j exactly."""
    for p in primes:
        for m in range(1, max_m + 1):
            for j in (1, 2):
                for z in H1_UNITS:
                    yield p, m, j, GaussInt(1) + z * p**j


def h1_law(primes=H1_PRIMES, max_m: int = 2, enumerate_limit: int = 10**4) -> tuple[bool, str]:
    bad, cross = [], 0
    for p, m, j, beta in h1_samples(primes, max_m):
        t = min(j, m)
        got = h1_cyclic_module(p, m, beta)
        if got != (p**t, p**t):
            bad.append(f"p={p} m={m} beta={beta}: {got}, expected {(p**t, p**t)}")
        if p**m <= enumerate_limit and p ** (2 * m) <= 20000:
            cross += 1
            if h1_cyclic_module(p, m, beta, method="enumerate") != got:
                bad.append(f"p={p} m={m} beta={beta}: Smith and enumeration disagree")
    return (not bad, "; ".join(bad) or f"OK ({cross} cases cross-checked by enumeration)")


def fflab_suite(coeffs: Coeffs = A_COEFFS, max_degree: int = 12) -> SuiteResult:
    res = SuiteResult("fflab", data={"curve_coefficients": list(coeffs)})
    res.add("point-count identity", lambda: point_count_identity(max_degree // 2, coeffs))
    res.add("equal invariant factors", lambda: equal_invariant_factors(max_degree, coeffs))
    res.add("degree-p growth", lambda: degree_growth(coeffs=coeffs))
    res.add("automorphisms", lambda: automorphism_identities(coeffs=coeffs))
    res.add("H^1 law", h1_law)
    return res


def kummer_suite(K0: int = 8, K: int = 12) -> SuiteResult:
    res = SuiteResult("kummer")
    report = kummer_example_verify(K0, K)
    res.data = report.to_dict()
    res.checks.append(Check("Hilbert symbol trivial on contributing classes", not report.violations, report.summary()))
    res.checks.append(Check("no unresolved classes", not report.unresolved, ", ".join(report.unresolved)))
    res.checks.append(Check("root-adjacent classes stable", not report.unstable, ", ".join(report.unstable)))
    res.checks.append(Check("square shortcuts outside the enumerated valuations", report.shortcuts_ok))
    return res


SUITES = ("fflab", "kummer", "all")


def run_suites(name: str, coeffs: Coeffs = A_COEFFS, K: int = 12) -> list[SuiteResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    out = []
    if name in ("fflab", "all"):
        out.append(fflab_suite(coeffs))
    if name in ("kummer", "all"):
        out.append(kummer_suite(K=K))
    return out
