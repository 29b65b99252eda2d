"""2-adic numbers at finite precision and the Hilbert symbol over Q_2."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

MIN_PRECISION = 3  # square classes of Q_2^* need the unit mod 8


class InsufficientPrecision(ArithmeticError):
    """Result known to fewer than 3 unit bits (or not known to be nonzero).

    `valuation_lower_bound` is a lower bound for the valuation of the true value.
    """

    def __init__(self, valuation_lower_bound: int, abs_precision: int):
        super().__init__(
            f"value known only modulo 2^{abs_precision}; valuation >= {valuation_lower_bound}"
        )
        self.valuation_lower_bound = valuation_lower_bound
        self.abs_precision = abs_precision


def val2(n: int) -> int:
    return (n & -n).bit_length() - 1


def _unit_residue(q: Fraction, bits: int) -> int:
    return q.numerator * pow(q.denominator, -1, 1 << bits) % (1 << bits)


Number = Union["TwoAdic", int, Fraction]


class TwoAdic:
    """2^v · u with u a 2-adic unit known modulo 2^K (K None: known exactly).

    Absolute precision is v + K: the value is determined modulo 2^(v+K).
    """

    __slots__ = ("v", "u", "K", "exact")

    def __init__(self, v: int, u: int, K: int | None):
        if u % 2 == 0:
            raise ValueError("unit part must be odd")
        self.v = v
        self.K = K
        if K is None:
            self.exact: Fraction | None = Fraction(u) * Fraction(2) ** v
            self.u = u
        else:
            if K < MIN_PRECISION:
                raise InsufficientPrecision(v, v + K)
            self.exact = None
            self.u = u % (1 << K)

    @classmethod
    def from_rational(cls, q: int | Fraction) -> TwoAdic:
        q = Fraction(q)
        if q == 0:
            raise ValueError("zero has no 2-adic unit part")
        v = val2(q.numerator) - val2(q.denominator)
        obj = cls.__new__(cls)
        obj.v, obj.K, obj.exact = v, None, q
        obj.u = _unit_residue(q / Fraction(2) ** v, MIN_PRECISION)
        return obj

    @classmethod
    def coerce(cls, x: Number) -> TwoAdic:
        return x if isinstance(x, TwoAdic) else cls.from_rational(x)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def abs_precision(self) -> float | int:
        return float("inf") if self.K is None else self.v + self.K

    def unit_mod(self, bits: int) -> int:
        if self.exact is not None:
            return _unit_residue(self.exact / Fraction(2) ** self.v, bits)
        if bits > self.K:  # type: ignore[operator]
            raise InsufficientPrecision(self.v, self.v + self.K)  # type: ignore[operator]
        return self.u % (1 << bits)

    def square_class(self) -> tuple[int, int]:
        """(valuation parity, unit mod 8): a complete invariant of Q_2^*/(Q_2^*)^2."""
        return self.v % 2, self.unit_mod(3)

    def __neg__(self) -> TwoAdic:
        if self.exact is not None:
            return TwoAdic.from_rational(-self.exact)
        return TwoAdic(self.v, -self.u, self.K)

    def __mul__(self, other: Number) -> TwoAdic:
        o = TwoAdic.coerce(other)
        if self.exact is not None and o.exact is not None:
            return TwoAdic.from_rational(self.exact * o.exact)
        K = min(k for k in (self.K, o.K) if k is not None)
        return TwoAdic(self.v + o.v, self.unit_mod(K) * o.unit_mod(K), K)

    __rmul__ = __mul__

    def __add__(self, other: Number) -> TwoAdic:
        o = TwoAdic.coerce(other)
        if self.exact is not None and o.exact is not None:
            return TwoAdic.from_rational(self.exact + o.exact)
        vmin = min(self.v, o.v)
        # absolute precision of the sum, relative to 2^vmin
        A = int(min(self.abs_precision, o.abs_precision)) - vmin
        s = 0
        for x in (self, o):
            shift = x.v - vmin
            if shift < A:
                s += x.unit_mod(A - shift) << shift
        s %= 1 << A
        if s == 0:
            raise InsufficientPrecision(vmin + A, vmin + A)
        w = val2(s)
        return TwoAdic(vmin + w, s >> w, A - w)

    __radd__ = __add__

    def __sub__(self, other: Number) -> TwoAdic:
        return self + (-TwoAdic.coerce(other))

    def __rsub__(self, other: Number) -> TwoAdic:
        return TwoAdic.coerce(other) + (-self)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"TwoAdic({self.exact})"
        return f"TwoAdic(2^{self.v}·{self.u} mod 2^{self.v + self.K})"


def is_square_2adic(x: Number) -> bool:
    v, u8 = TwoAdic.coerce(x).square_class()
    return v == 0 and u8 == 1


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert2(a: Number, b: Number) -> int:
    """(a, b)_2 = (-1)^(eps(u)eps(w) + alpha·omega(w) + beta·omega(u)) for a = 2^alpha u, b = 2^beta w."""
    alpha, u = TwoAdic.coerce(a).square_class()
    beta, w = TwoAdic.coerce(b).square_class()
    e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
    return -1 if e % 2 else 1


def _reduce_square_class(q: Fraction) -> int:
    """An integer of valuation 0 or 1 in the same square class as q."""
    n = q.numerator * q.denominator
    while n % 4 == 0:
        n //= 4
    return n


def hilbert2_oracle(a: int | Fraction, b: int | Fraction, bits: int = 5) -> int:
    """Hilbert symbol by exhaustive search for a primitive zero of z^2 - a x^2 - b y^2.

    After reduction a, b have valuation <= 1, so every primitive point has
    gradient valuation delta <= 2, and a primitive solution modulo 2^(2·delta + 1)
    lifts by Hensel's lemma. Searching modulo 2^5 is therefore decisive.
    """
    if bits < 5:
        raise ValueError("need at least 5 bits")
    a_, b_ = (_reduce_square_class(Fraction(t)) for t in (a, b))
    M = 1 << bits
    return _search(a_ % M, b_ % M, bits)


@lru_cache(maxsize=4096)
def _search(a: int, b: int, bits: int) -> int:
    M = 1 << bits
    x, y, z = np.meshgrid(*(np.arange(M, dtype=np.int64),) * 3, indexing="ij")
    primitive = ((x | y | z) & 1).astype(bool)
    F = (z * z - a * x * x - b * y * y) % M
    delta = np.full(F.shape, bits, dtype=np.int64)
    for g in (2 * z % M, 2 * a * x % M, 2 * b * y % M):
        low = np.where(g == 0, bits, _np_val2(g))
        delta = np.minimum(delta, low)
    need = 2 * delta + 1
    ok = primitive & (need <= bits) & (F % (np.int64(1) << np.minimum(need, bits)) == 0)
    return 1 if bool(ok.any()) else -1


def _np_val2(g: np.ndarray) -> np.ndarray:
    g = np.where(g == 0, 1, g)
    return np.log2(g & -g).astype(np.int64)


# --- exhaustive check of the quaternion algebra ((x+1)(x+16), (u+7)(u-9)) -------

SquareClass = Tuple[int, int]  # (valuation parity, unit mod 8)


@dataclass(frozen=True, order=True)
class Plain:
    """All y = 2^v·w' with w' ≡ w mod 2^K."""

    v: int
    w: int
    K: int

    def value(self) -> TwoAdic:
        return TwoAdic(self.v, self.w, self.K)

    def split(self) -> tuple[Plain, Plain]:
        return Plain(self.v, self.w, self.K + 1), Plain(self.v, self.w + (1 << self.K), self.K + 1)

    def __str__(self) -> str:
        return f"2^{self.v}·({self.w} mod 2^{self.K})"


@dataclass(frozen=True, order=True)
class RootAdjacent:
    """All y = root + t with val(t) ≡ s mod 2, val(t) >= s, and t/2^val(t) ≡ w mod 8."""

    root: int
    s: int
    w: int

    def value(self, lift: int = 0) -> TwoAdic:
        return TwoAdic.from_rational(self.root) + TwoAdic(self.s + lift, self.w, MIN_PRECISION)

    def __str__(self) -> str:
        return f"{self.root} + 2^(s≡{self.s % 2})·({self.w} mod 8)"


@dataclass(frozen=True)
class Side:
    name: str
    shifts: tuple[int, int]  # the polynomial is (y + shifts[0])(y + shifts[1])
    valuations: range  # outside this range the polynomial's value is a square

    @property
    def roots(self) -> list[int]:
        return sorted(-r for r in self.shifts)


X_SIDE = Side("x", (1, 16), range(-2, 7))
U_SIDE = Side("u", (7, -9), range(-1, 3))


def _signature(side: Side, y: TwoAdic) -> tuple[SquareClass, SquareClass]:
    """(class of y·P(y), class of P(y)); y·P(y) decides membership of the surface."""
    a, b = (y + r for r in side.shifts)
    P = a * b
    return (y * P).square_class(), P.square_class()


def _factor_valuation(side: Side, y: TwoAdic) -> int:
    """Largest valuation among the linear factors (a lower bound if precision ran out)."""
    best = 0
    for r in side.shifts:
        try:
            best = max(best, (y + r).v)
        except InsufficientPrecision as exc:
            best = max(best, exc.valuation_lower_bound)
    return best


@dataclass
class SideScan:
    plain: dict  # signature -> number of Plain classes
    symbolic: dict  # signature -> number of RootAdjacent cases
    example: dict  # signature -> first class (in lexicographic order) realising it
    refinements: int = 0
    unstable: list = field(default_factory=list)  # RootAdjacent cases whose class moved with s
    unresolved: list = field(default_factory=list)

    @property
    def signatures(self) -> set:
        return set(self.plain) | set(self.symbolic)


def _scan_side(side: Side, K0: int, K: int, max_extra_bits: int = 16) -> SideScan:
    scan = SideScan({}, {}, {})

    def record(table: dict, sig, cls) -> None:
        table[sig] = table.get(sig, 0) + 1
        scan.example.setdefault(sig, cls)

    for v in side.valuations:
        stack = [Plain(v, w, K) for w in range((1 << K) - 1, 0, -2)]
        while stack:
            cls = stack.pop()
            y = cls.value()
            if _factor_valuation(side, y) >= K0:
                continue  # root-adjacent: covered symbolically below
            try:
                record(scan.plain, _signature(side, y), cls)
            except InsufficientPrecision:
                if cls.K - K >= max_extra_bits:
                    scan.unresolved.append(cls)
                else:
                    scan.refinements += 1
                    stack.extend(reversed(cls.split()))
    for root in side.roots:
        for s in (K0, K0 + 1):
            for w in (1, 3, 5, 7):
                case = RootAdjacent(root, s, w)
                sig = _signature(side, case.value())
                # classes depend only on the parity of val(t) once val(t) >= K0
                if any(_signature(side, case.value(lift)) != sig for lift in (2, 4)):
                    scan.unstable.append(case)
                record(scan.symbolic, sig, case)
    return scan


def _rep(c: SquareClass) -> int:
    return (1 << c[0]) * c[1]


def _shortcut_holds(side: Side, window: int = 8) -> bool:
    """P(y) is a square for val(y) just outside the enumerated range (checked on a window)."""
    lo, hi = side.valuations.start, side.valuations.stop
    vals = list(range(lo - window, lo)) + list(range(hi, hi + window))
    for v in vals:
        for w in (1, 3, 5, 7):
            a, b = (TwoAdic(v, w, MIN_PRECISION) + r for r in side.shifts)
            if not is_square_2adic(a * b):
                return False
    return True


@dataclass
class KummerReport:
    K: int
    K0: int
    x_classes: dict  # signature -> (plain count, symbolic count)
    u_classes: dict
    contributing: list  # (x signature, u signature) with h a square
    violations: list  # human-readable descriptors of classes where the symbol is -1
    unresolved: list
    unstable: list
    excluded_points: dict
    shortcuts_ok: bool
    refinements: int

    @property
    def ok(self) -> bool:
        return not (self.violations or self.unresolved or self.unstable) and self.shortcuts_ok

    def summary(self) -> str:
        if self.ok:
            return f"trivial on all contributing classes; 0 violations ({len(self.contributing)} contributing signature pairs)"
        return (
            f"{len(self.violations)} violations, {len(self.unresolved)} unresolved, "
            f"{len(self.unstable)} unstable symbolic classes, shortcuts {'ok' if self.shortcuts_ok else 'FAILED'}"
        )

    def signature_sets(self) -> tuple:
        return (sorted(self.x_classes), sorted(self.u_classes), sorted(self.contributing))

    def to_dict(self) -> dict:
        def table(d: dict) -> list:
            return [{"xyP": list(k[0]), "P": list(k[1]), "plain": c[0], "symbolic": c[1]} for k, c in sorted(d.items())]

        return {
            "K": self.K,
            "K0": self.K0,
            "x_classes": table(self.x_classes),
            "u_classes": table(self.u_classes),
            "contributing": [[list(map(list, a)), list(map(list, b))] for a, b in self.contributing],
            "violations": list(self.violations),
            "unresolved": list(self.unresolved),
            "unstable": list(self.unstable),
            "excluded_points": self.excluded_points,
            "shortcuts_ok": self.shortcuts_ok,
            "refinements": self.refinements,
            "summary": self.summary(),
        }


def kummer_example_verify(
    K0: int = 8, K: int = 12, x_side: Side = X_SIDE, u_side: Side = U_SIDE
) -> KummerReport:
    """Check that ((x+1)(x+16), (u+7)(u-9))_2 = +1 at every smooth Q_2-point of
    z^2 = x(x+1)(x+16)·u(u+7)(u-9), by exhaustion over 2-adic residue classes.

    x and u range over the valuations where f, g are not automatically squares,
    with unit parts enumerated mod 2^K. Points within 2^K0 of a root of f or g
    are handled as root-adjacent classes: their square classes depend only on the
    parity of the vanishing factor's valuation and its unit mod 8. A pair of
    classes lies on the surface iff x·f(x) and u·g(u) share a square class.
    Other sides can be passed to exercise the falsification path.
    """
    if K < 12 or K0 < 8:
        raise ValueError("need K >= 12 and K0 >= 8")
    xs, us = _scan_side(x_side, K0, K), _scan_side(u_side, K0, K)
    contributing, violations = [], []
    for sx in sorted(xs.signatures):
        for su in sorted(us.signatures):
            if sx[0] != su[0]:
                continue
            contributing.append((sx, su))
            if hilbert2(_rep(sx[1]), _rep(su[1])) != 1:
                violations.append(f"x = {xs.example[sx]}, u = {us.example[su]}: (f, g)_2 = -1")

    def merged(scan: SideScan) -> dict:
        return {s: (scan.plain.get(s, 0), scan.symbolic.get(s, 0)) for s in sorted(scan.signatures)}

    return KummerReport(
        K=K,
        K0=K0,
        x_classes=merged(xs),
        u_classes=merged(us),
        contributing=contributing,
        violations=violations,
        unresolved=[str(c) for c in xs.unresolved + us.unresolved],
        unstable=[str(c) for c in xs.unstable + us.unstable],
        excluded_points={"x": x_side.roots, "u": u_side.roots},
        shortcuts_ok=_shortcut_holds(x_side) and _shortcut_holds(u_side),
        refinements=xs.refinements + us.refinements,
    )
