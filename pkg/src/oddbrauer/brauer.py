"""Bounds on the odd primes (and their exponents) that can divide |Br(X)/Br_0(X)|.

For a primary prime pi of Z[i] with norm p ≡ 1 mod 4, Frobenius at pi acts on the
l-power torsion of the geometric Brauer group of the Fermat quartic as
multiplication by beta = pi / conj(pi). The quantity

    A(pi, m, l) = 1 + max_v val_v(beta^m - 1)      (v over places of Q(i) above l)

is the least tau for which the kernel of beta^m - 1 on Z[i]/l^tau has exponent
below l^tau. Minimising A - 1 over probes gives an upper bound for
phi(l, m); only an upper bound is ever certified here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .arith import DEFAULT_BUDGET, factor, invariant_factors_mod, p_group_invariants, primes_up_to
from .gaussian import GaussInt, gauss_val, is_primary, places_above, primary_generator

DEFAULT_PROBES = (5, 13, 17)
DEFAULT_SEARCH_BOUND = 1000


@dataclass(frozen=True)
class ProbePrime:
    p: int
    pi: GaussInt

    def __post_init__(self) -> None:
        if self.pi.norm() != self.p or not is_primary(self.pi):
            raise ValueError(f"{self.pi} is not a primary prime of norm {self.p}")

    @classmethod
    def of(cls, p: int) -> ProbePrime:
        return cls(p, primary_generator(p))

    def conjugate(self) -> ProbePrime:
        return ProbePrime(self.p, self.pi.conj())


def as_probe(x: ProbePrime | int) -> ProbePrime:
    return x if isinstance(x, ProbePrime) else ProbePrime.of(x)


def delta(probe: ProbePrime, m: int) -> GaussInt:
    """pi^m - conj(pi)^m; equals conj(pi)^m (beta^m - 1), purely imaginary."""
    return probe.pi**m - probe.pi.conj() ** m


def _check_admissible(probe: ProbePrime, ell: int) -> None:
    if probe.p == ell or probe.p == 2 or ell == 2:
        raise ValueError(f"probe above {probe.p} divides 2·{ell}")


def A_value(probe: ProbePrime | int, m: int, ell: int) -> int:
    probe = as_probe(probe)
    _check_admissible(probe, ell)
    if m < 1:
        raise ValueError("m must be positive")
    d = delta(probe, m)
    # conj(pi) is a unit at every place above ell, so val_v(beta^m - 1) = val_v(d)
    return 1 + max(gauss_val(d, v) for v in places_above(ell))


def _beta_power_minus_one(probe: ProbePrime, m: int, modulus: int) -> tuple[int, int]:
    """beta^m - 1 in Z[i]/modulus, with beta = pi^2 / p."""
    p_inv = pow(probe.p, -1, modulus)
    sq = probe.pi * probe.pi
    beta = GaussInt(sq.re * p_inv % modulus, sq.im * p_inv % modulus)
    z = GaussInt(1)
    base, k = beta, m
    while k:
        if k & 1:
            z = z * base
            z = GaussInt(z.re % modulus, z.im % modulus)
        base = base * base
        base = GaussInt(base.re % modulus, base.im % modulus)
        k >>= 1
    return (z.re - 1) % modulus, z.im % modulus


def D_group(
    probe: ProbePrime | int, m: int, ell: int, n: int, method: str = "smith"
) -> tuple[int, int]:
    """Invariant factors of the kernel of beta^m - 1 acting on Z[i]/ell^n.

    ``method="smith"`` reads the kernel off the Smith form of the 2x2
    multiplication matrix; ``method="enumerate"`` walks all ell^(2n) residues.
    Neither path uses Gaussian valuations.
    """
    probe = as_probe(probe)
    _check_admissible(probe, ell)
    M = ell**n
    x, y = _beta_power_minus_one(probe, m, M)
    if method == "smith":
        return invariant_factors_mod([[x, -y], [y, x]], M)  # type: ignore[return-value]
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    kernel = [
        (a, b)
        for a in range(M)
        for b in range(M)
        if (x * a - y * b) % M == 0 and (y * a + x * b) % M == 0
    ]
    sizes = []
    q = 1
    while True:
        sizes.append(sum(1 for a, b in kernel if (q * a) % M == 0 and (q * b) % M == 0))
        if sizes[-1] == len(kernel):
            break
        q *= ell
    return p_group_invariants(ell, sizes)  # type: ignore[return-value]


def A_value_definitional(
    probe: ProbePrime | int, m: int, ell: int, n_max: int, method: str = "smith"
) -> int | None:
    """Least tau <= n_max with exponent(D(tau)) < ell^tau, or None if there is none."""
    for tau in range(1, n_max + 1):
        if max(D_group(probe, m, ell, tau, method)) < ell**tau:
            return tau
    return None


def admissible_probes(ell: int, search_bound: int) -> Iterable[ProbePrime]:
    for p in primes_up_to(search_bound):
        if p % 4 == 1 and p != ell:
            yield ProbePrime.of(p)


def phi_upper(ell: int, m: int, search_bound: int = DEFAULT_SEARCH_BOUND) -> tuple[int, ProbePrime]:
    """Upper bound for phi(ell, m) from all probes p ≡ 1 mod 4, p <= search_bound.

    Primes p ≡ 3 mod 4 are skipped: A is infinite there. A value of 0 certifies
    that ell is not in S_m. Ties go to the smallest probe.
    """
    if search_bound < 13:
        raise ValueError("search_bound must be at least 13")
    best: tuple[int, ProbePrime] | None = None
    for probe in admissible_probes(ell, search_bound):
        a = A_value(probe, m, ell) - 1
        if best is None or a < best[0]:
            best = (a, probe)
            if a == 0:
                break
    if best is None:
        raise ValueError(f"no admissible probe <= {search_bound} for ell = {ell}")
    return best


class Status(Enum):
    CERTIFIED_EXCLUDED = "CertifiedExcluded"
    CANDIDATE = "Candidate"


@dataclass
class CandidateEntry:
    # None: no admissible probe has been evaluated for this prime yet
    phi_upper: int | None
    status: Status
    witnesses: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"phi_upper": self.phi_upper, "status": self.status.value, "witnesses": list(self.witnesses)}

    @classmethod
    def from_dict(cls, d: dict) -> CandidateEntry:
        return cls(d["phi_upper"], Status(d["status"]), list(d["witnesses"]))


@dataclass
class BoundReport:
    m: int
    candidates: dict[int, CandidateEntry]
    probes_used: list[ProbePrime]
    search_bound: int | None = None

    def surviving(self) -> dict[int, CandidateEntry]:
        return {l: e for l, e in self.candidates.items() if e.status is Status.CANDIDATE}

    def bounded(self) -> dict[int, int]:
        """Surviving primes with a finite bound, mapped to that bound."""
        return {l: e.phi_upper for l, e in self.surviving().items() if e.phi_upper is not None}

    def unbounded(self) -> list[int]:
        return [l for l, e in self.surviving().items() if e.phi_upper is None]

    def excluded(self) -> list[int]:
        return [l for l, e in self.candidates.items() if e.status is Status.CERTIFIED_EXCLUDED]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "candidates": {str(l): e.to_dict() for l, e in self.candidates.items()},
            "probes_used": [p.p for p in self.probes_used],
            "search_bound": self.search_bound,
        }

    @classmethod
    def from_dict(cls, d: dict) -> BoundReport:
        return cls(
            d["m"],
            {int(l): CandidateEntry.from_dict(e) for l, e in d["candidates"].items()},
            [ProbePrime.of(p) for p in d["probes_used"]],
            d["search_bound"],
        )


def _apply_probe(entry: CandidateEntry, ell: int, probe: ProbePrime, m: int) -> None:
    if probe.p == ell or entry.status is Status.CERTIFIED_EXCLUDED:
        return
    a = A_value(probe, m, ell) - 1
    if a == 0:
        entry.status = Status.CERTIFIED_EXCLUDED
        entry.phi_upper = 0
        entry.witnesses = [probe.p]
    elif entry.phi_upper is None or a < entry.phi_upper:
        entry.phi_upper = a
        entry.witnesses = [probe.p]
    elif a == entry.phi_upper:
        entry.witnesses.append(probe.p)


def s_candidates(
    m: int, probes: Sequence[ProbePrime | int] = DEFAULT_PROBES, budget: int = DEFAULT_BUDGET
) -> BoundReport:
    """Conservative superset of S_m.

    Every l in S_m other than the first probe's own prime divides
    Norm(pi^m - conj(pi)^m) for the first probe, so those odd prime factors
    together with the probe primes form the candidate pool. Each probe then
    tightens the bound for every pool prime it is admissible for.
    """
    probe_list = [as_probe(p) for p in probes]
    if not probe_list:
        raise ValueError("at least one probe is required")
    if m < 1:
        raise ValueError("m must be positive")
    first = probe_list[0]
    pool = set(factor(delta(first, m).norm(), budget).odd_primes())
    pool.update(p.p for p in probe_list)
    candidates = {ell: CandidateEntry(None, Status.CANDIDATE) for ell in sorted(pool)}
    for probe in probe_list:
        for ell, entry in candidates.items():
            _apply_probe(entry, ell, probe, m)
    return BoundReport(m, candidates, probe_list)


def refine(report: BoundReport, search_bound: int) -> BoundReport:
    """Tighten every surviving entry with all probes p <= search_bound."""
    out = BoundReport(
        report.m,
        {l: CandidateEntry(e.phi_upper, e.status, list(e.witnesses)) for l, e in report.candidates.items()},
        list(report.probes_used),
        search_bound,
    )
    for ell, entry in out.candidates.items():
        if entry.status is Status.CERTIFIED_EXCLUDED:
            continue
        value, witness = phi_upper(ell, report.m, search_bound)
        if entry.phi_upper is None or value < entry.phi_upper:
            entry.phi_upper = value
            entry.witnesses = [witness.p]
        if value == 0:
            entry.status = Status.CERTIFIED_EXCLUDED
    return out


def g_superset(
    m: int,
    probes: Sequence[ProbePrime | int] = DEFAULT_PROBES,
    search_bound: int | None = DEFAULT_SEARCH_BOUND,
    budget: int = DEFAULT_BUDGET,
) -> BoundReport:
    report = s_candidates(m, probes, budget)
    return refine(report, search_bound) if search_bound is not None else report


def exponent_bound(
    m: int,
    probes: Sequence[ProbePrime | int] = DEFAULT_PROBES,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """An integer killing every odd-torsion class of Br(X)/Br_0(X), provided m is a
    multiple of the Galois exponent N."""
    report = g_superset(m, probes, search_bound, budget)
    out = 1
    for ell, k in report.bounded().items():
        out *= ell**k
    return out

