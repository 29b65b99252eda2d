"""Number-field and surface data for X: ax^4 + by^4 + cz^4 + dw^4 = 0.

Fields Q, Q(i) and Q(sqrt d) with rational coefficients get their places derived
automatically. Any other field is described by user-supplied place data and a
Galois exponent N (or a multiple of it, which is always safe to use).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any, Sequence

from .arith import factor, is_prime, val_p


class SpecError(ValueError):
    """Input that violates the surface-spec schema; `path` locates the field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class MissingPlaces(LookupError):
    """The places listed above p do not account for the full degree of F."""

    def __init__(self, p: int):
        super().__init__(f"incomplete place data above p = {p}")
        self.p = p


@dataclass(frozen=True)
class PlaceData:
    p: int
    e: int
    f: int
    vals: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if self.e < 1 or self.f < 1:
            raise ValueError(f"place above {self.p}: e and f must be >= 1")
        if len(self.vals) != 4:
            raise ValueError("vals must have four entries")

    @property
    def val_sum(self) -> int:
        return sum(self.vals)

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "f": self.f, "vals": list(self.vals)}


@dataclass(frozen=True)
class FieldDesc:
    """kind is one of "Q", "Q(i)", "quadratic", "abstract"."""

    kind: str
    d: int | None = None
    degree: int | None = None

    @property
    def auto_places(self) -> bool:
        return self.kind != "abstract"

    @property
    def field_degree(self) -> int:
        if self.kind == "Q":
            return 1
        if self.kind in ("Q(i)", "quadratic"):
            return 2
        return self.degree  # type: ignore[return-value]

    @property
    def disc_d(self) -> int | None:
        """The squarefree d with F = Q(sqrt d), or None for Q / abstract."""
        if self.kind == "Q(i)":
            return -1
        return self.d if self.kind == "quadratic" else None

    def to_json(self) -> Any:
        if self.kind in ("Q", "Q(i)"):
            return self.kind
        if self.kind == "quadratic":
            return {"quadratic": self.d}
        return {"abstract": {"degree": self.degree}}


def is_squarefree(d: int) -> bool:
    if d == 0:
        return False
    return all(k == 1 for k in factor(d).entries.values())


def kronecker_odd(d: int, p: int) -> int:
    """Legendre symbol (d|p) for an odd prime p."""
    r = pow(d % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def places_for_Q(coeffs: Sequence[Fraction | int], primes: Sequence[int]) -> list[PlaceData]:
    _check_coeffs(coeffs)
    return [PlaceData(p, 1, 1, tuple(val_p(c, p) for c in coeffs)) for p in primes]  # type: ignore[arg-type]


def places_for_quadratic(
    d: int, coeffs: Sequence[Fraction | int], primes: Sequence[int]
) -> list[PlaceData]:
    if d in (0, 1) or not is_squarefree(d):
        raise ValueError(f"d = {d} is not a squarefree integer other than 0, 1")
    _check_coeffs(coeffs)
    out = []
    for p in primes:
        if p == 2:
            raise ValueError("places above 2 are not modelled")
        vals = tuple(val_p(c, p) for c in coeffs)
        if d % p == 0:
            out.append(PlaceData(p, 2, 1, tuple(2 * v for v in vals)))  # type: ignore[arg-type]
        elif kronecker_odd(d, p) == 1:
            out += [PlaceData(p, 1, 1, vals), PlaceData(p, 1, 1, vals)]  # type: ignore[arg-type]
        else:
            out.append(PlaceData(p, 1, 2, vals))  # type: ignore[arg-type]
    return out


def _check_coeffs(coeffs: Sequence[Fraction | int]) -> None:
    if len(coeffs) != 4:
        raise ValueError("exactly four coefficients are required")
    if any(Fraction(c) == 0 for c in coeffs):
        raise ValueError("zero coefficient")


def _is_rational_square(r: Fraction) -> bool:
    if r < 0:
        return False
    return all(isqrt(n) ** 2 == n for n in (r.numerator, r.denominator))


def _is_rational_fourth_power(r: Fraction) -> bool:
    if r < 0:
        return False
    return all(isqrt(isqrt(n)) ** 4 == n for n in (r.numerator, r.denominator))


def galois_exponent_Q(coeffs: Sequence[Fraction | int]) -> int:
    """Order of abcd in Q(i)^*/(Q(i)^*)^4, i.e. the exponent of Gal(Q(i, (abcd)^(1/4))/Q(i)).

    Rational fourth powers of Q(i) are t^4 and -4t^4; rational squares are ±t^2.
    """
    _check_coeffs(coeffs)
    r = Fraction(1)
    for c in coeffs:
        r *= Fraction(c)
    if _is_rational_fourth_power(r) or _is_rational_fourth_power(r / -4):
        return 1
    if _is_rational_square(r) or _is_rational_square(-r):
        return 2
    return 4


@dataclass
class SurfaceSpec:
    field: FieldDesc
    coefficients: tuple[Fraction, Fraction, Fraction, Fraction] | None
    N: int
    places: list[PlaceData] = field(default_factory=list)
    probes: list[int] | None = None
    search_bound: int | None = None
    N_supplied: bool = False

    def places_above(self, p: int) -> list[PlaceData]:
        if self.field.auto_places:
            # listed places were checked against this derivation at parse time
            return self._derive([p])
        listed = [pl for pl in self.places if pl.p == p]
        if sum(pl.e * pl.f for pl in listed) != self.field.degree:
            raise MissingPlaces(p)
        return listed

    def _derive(self, primes: Sequence[int]) -> list[PlaceData]:
        assert self.coefficients is not None
        d = self.field.disc_d
        if d is None:
            return places_for_Q(self.coefficients, primes)
        return places_for_quadratic(d, self.coefficients, primes)

    def special_primes(self) -> list[int]:
        """Odd primes where some coefficient is a non-unit or the field ramifies.

        For auto-derived fields these are the only primes whose places can carry
        nonzero valuations or ramification. For abstract fields: the listed primes.
        """
        if not self.field.auto_places:
            return sorted({pl.p for pl in self.places if pl.p != 2})
        assert self.coefficients is not None
        primes: set[int] = set()
        for c in self.coefficients:
            for n in (c.numerator, c.denominator):
                if abs(n) > 1:
                    primes.update(factor(n).odd_primes())
        d = self.field.disc_d
        if d is not None and abs(d) > 1:
            primes.update(factor(d).odd_primes())
        primes.update(pl.p for pl in self.places if pl.p != 2)
        return sorted(primes)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"field": self.field.to_json()}
        if self.coefficients is not None:
            out["coefficients"] = [str(c) for c in self.coefficients]
        if self.N_supplied:
            out["N"] = self.N
        if self.places:
            out["places"] = [pl.to_dict() for pl in self.places]
        if self.probes is not None:
            out["probes"] = list(self.probes)
        if self.search_bound is not None:
            out["search_bound"] = self.search_bound
        return out


def _parse_rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise SpecError(path, "expected an integer or 'num/den' string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise SpecError(path, f"not a rational: {x!r}")


def _parse_pos_int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise SpecError(path, f"expected a positive integer, got {x!r}")
    return x


def _parse_field(x: Any) -> FieldDesc:
    if x in ("Q", "Q(i)"):
        return FieldDesc(x)
    if isinstance(x, dict) and len(x) == 1:
        if "quadratic" in x:
            d = x["quadratic"]
            if isinstance(d, bool) or not isinstance(d, int) or d in (0, 1) or not is_squarefree(d):
                raise SpecError("field.quadratic", f"expected a squarefree integer other than 0, 1, got {d!r}")
            return FieldDesc("Q(i)") if d == -1 else FieldDesc("quadratic", d=d)
        if "abstract" in x:
            a = x["abstract"]
            if not isinstance(a, dict) or "degree" not in a:
                raise SpecError("field.abstract", "expected {'degree': n}")
            return FieldDesc("abstract", degree=_parse_pos_int(a["degree"], "field.abstract.degree"))
    raise SpecError("field", f"unknown field description {x!r}")


def parse_spec(source: str | dict) -> SurfaceSpec:
    """Validate a surface description (JSON text or an already-decoded mapping)."""
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise SpecError("$", f"invalid JSON: {exc}") from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise SpecError("$", "top level must be an object")
    unknown = set(data) - {"field", "coefficients", "N", "places", "probes", "search_bound"}
    if unknown:
        raise SpecError("$", f"unknown keys {sorted(unknown)}")
    if "field" not in data:
        raise SpecError("field", "missing")
    fd = _parse_field(data["field"])

    coeffs = None
    if "coefficients" in data:
        raw = data["coefficients"]
        if not isinstance(raw, list) or len(raw) != 4:
            raise SpecError("coefficients", "expected a list of four rationals")
        parsed = [_parse_rational(c, f"coefficients[{i}]") for i, c in enumerate(raw)]
        for i, c in enumerate(parsed):
            if c == 0:
                raise SpecError(f"coefficients[{i}]", "zero coefficient")
        coeffs = tuple(parsed)
    elif fd.auto_places:
        raise SpecError("coefficients", f"required for field {fd.to_json()!r}")

    places = []
    for i, pl in enumerate(data.get("places", [])):
        path = f"places[{i}]"
        if not isinstance(pl, dict) or set(pl) != {"p", "e", "f", "vals"}:
            raise SpecError(path, "expected {p, e, f, vals}")
        p = _parse_pos_int(pl["p"], path + ".p")
        if not is_prime(p):
            raise SpecError(path + ".p", f"{p} is not prime")
        e = _parse_pos_int(pl["e"], path + ".e")
        f = _parse_pos_int(pl["f"], path + ".f")
        vals = pl["vals"]
        if not isinstance(vals, list) or len(vals) != 4 or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in vals
        ):
            raise SpecError(path + ".vals", "expected four integers")
        places.append(PlaceData(p, e, f, tuple(vals)))  # type: ignore[arg-type]

    if "N" in data:
        N = _parse_pos_int(data["N"], "N")
        supplied = True
    elif fd.kind in ("Q", "Q(i)"):
        N = galois_exponent_Q(coeffs)  # type: ignore[arg-type]
        supplied = False
    elif fd.kind == "abstract":
        raise SpecError("N", "N required for abstract fields")
    else:
        raise SpecError("N", "N required for quadratic fields other than Q(i)")

    probes = None
    if "probes" in data:
        raw = data["probes"]
        if not isinstance(raw, list) or not raw:
            raise SpecError("probes", "expected a non-empty list of primes")
        probes = []
        for i, p in enumerate(raw):
            p = _parse_pos_int(p, f"probes[{i}]")
            if p % 4 != 1 or not is_prime(p):
                raise SpecError(f"probes[{i}]", f"{p} is not a prime ≡ 1 mod 4")
            probes.append(p)
    search_bound = None
    if "search_bound" in data:
        search_bound = _parse_pos_int(data["search_bound"], "search_bound")
        if search_bound < 13:
            raise SpecError("search_bound", "must be at least 13")

    spec = SurfaceSpec(fd, coeffs, N, places, probes, search_bound, supplied)
    if fd.auto_places:
        for i, pl in enumerate(places):
            if pl.p == 2:
                continue
            derived = spec._derive([pl.p])
            if pl not in derived:
                raise SpecError(f"places[{i}]", f"disagrees with derived place data {derived}")
    else:
        total = {}
        for pl in places:
            total[pl.p] = total.get(pl.p, 0) + pl.e * pl.f
        for p, s in total.items():
            if s > fd.degree:  # type: ignore[operator]
                raise SpecError("places", f"sum of e·f above {p} exceeds the degree {fd.degree}")
    return spec


def load_spec(path: str) -> SurfaceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
