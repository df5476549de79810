"""Scalar Kaucher complete interval arithmetic.

A :class:`KInterval` is a pair of finite reals ``[lo, hi]`` with no ordering
constraint: ``lo > hi`` encodes an improper interval.  All operations are pure
and use round-to-nearest floating point (no outward rounding).
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import ArithmeticOverflowError, ProblemSyntaxError, ZeroInProjectionError

__all__ = [
    "KInterval", "SignClass", "RealParts", "Descriptors",
    "add", "opp", "ominus", "sub", "div", "scalar_mul", "mul", "mul_table",
    "mul_lakeyev", "inv", "oslash", "dual", "pro", "meet", "join", "includes",
    "leq", "classify", "sgn", "descriptors", "mag", "mig", "mid", "rad",
    "floor_point", "ceil_point", "dist", "real_parts", "format_interval",
    "parse_interval",
]


def _finite(lo: float, hi: float, op: str) -> "KInterval":
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ArithmeticOverflowError(f"{op}: non-finite endpoint [{lo}, {hi}]")
    # normalise -0.0 so that results compare bit-identically across paths
    return KInterval(lo + 0.0, hi + 0.0)


@dataclass(frozen=True, slots=True)
class KInterval:
    """Element of KR: ``lo`` is the lower (left) endpoint, ``hi`` the upper."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ArithmeticOverflowError(f"non-finite endpoint [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: float) -> "KInterval":
        return cls(x, x)

    @property
    def is_proper(self) -> bool:
        return self.lo <= self.hi

    @property
    def is_improper(self) -> bool:
        return self.lo > self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __str__(self):
        return format_interval(self)

    def __repr__(self):
        return f"KInterval({self.lo!r}, {self.hi!r})"

    # operators mirror the module-level functions; reals are promoted to points
    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        if isinstance(other, KInterval):
            return mul(self, other)
        return scalar_mul(float(other), self)

    def __rmul__(self, other):
        return scalar_mul(float(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return scalar_mul(-1.0, self)


def _coerce(x) -> KInterval:
    if isinstance(x, KInterval):
        return x
    return KInterval(x, x)


class SignClass(enum.Enum):
    P = "P"            # nonnegative
    Z = "Z"            # zero-containing
    NEG_P = "-P"       # nonpositive
    DUAL_Z = "dual Z"  # contained in zero


class RealParts(NamedTuple):
    pos: float
    neg: float


class Descriptors(NamedTuple):
    mag: float
    mig: float
    mid: float
    rad: float


def real_parts(q: float) -> RealParts:
    """Positive and negative parts: ``q = pos - neg`` and ``|q| = pos + neg``."""
    return RealParts(max(q, 0.0), max(-q, 0.0))


def add(a: KInterval, b: KInterval) -> KInterval:
    return _finite(a.lo + b.lo, a.hi + b.hi, "add")


def opp(a: KInterval) -> KInterval:
    """Additive inverse: ``a + opp(a) == [0, 0]`` exactly."""
    return KInterval(-a.lo + 0.0, -a.hi + 0.0)


def ominus(a: KInterval, b: KInterval) -> KInterval:
    """Internal (algebraic) subtraction, the inverse of addition."""
    return _finite(a.lo - b.lo, a.hi - b.hi, "ominus")


def sub(a: KInterval, b: KInterval) -> KInterval:
    return _finite(a.lo - b.hi, a.hi - b.lo, "sub")


def scalar_mul(mu: float, a: KInterval) -> KInterval:
    if mu >= 0:
        return _finite(mu * a.lo, mu * a.hi, "scalar_mul")
    return _finite(mu * a.hi, mu * a.lo, "scalar_mul")


def classify(a: KInterval) -> SignClass:
    """Sign class with boundary precedence P, -P, Z, dual Z."""
    lo, hi = a.lo, a.hi
    if lo >= 0 and hi >= 0:
        return SignClass.P
    if lo <= 0 and hi <= 0:
        return SignClass.NEG_P
    if lo <= 0 <= hi:
        return SignClass.Z
    return SignClass.DUAL_Z


def sgn(a: KInterval) -> Optional[int]:
    """+1 for nonnegative (including [0, 0]), -1 for nonpositive, else None."""
    c = classify(a)
    if c is SignClass.P:
        return 1
    if c is SignClass.NEG_P:
        return -1
    return None


_P, _Z, _N, _D = SignClass.P, SignClass.Z, SignClass.NEG_P, SignClass.DUAL_Z


def mul_table(a: KInterval, b: KInterval) -> KInterval:
    """Kaucher product by the 4x4 sign-class table."""
    al, ah, bl, bh = a.lo, a.hi, b.lo, b.hi
    ca, cb = classify(a), classify(b)
    if ca is _P:
        if cb is _P:
            lo, hi = al * bl, ah * bh
        elif cb is _Z:
            lo, hi = ah * bl, ah * bh
        elif cb is _N:
            lo, hi = ah * bl, al * bh
        else:
            lo, hi = al * bl, al * bh
    elif ca is _Z:
        if cb is _P:
            lo, hi = al * bh, ah * bh
        elif cb is _Z:
            lo, hi = min(al * bh, ah * bl), max(al * bl, ah * bh)
        elif cb is _N:
            lo, hi = ah * bl, al * bl
        else:
            lo, hi = 0.0, 0.0
    elif ca is _N:
        if cb is _P:
            lo, hi = al * bh, ah * bl
        elif cb is _Z:
            lo, hi = al * bh, al * bl
        elif cb is _N:
            lo, hi = ah * bh, al * bl
        else:
            lo, hi = ah * bh, ah * bl
    else:
        if cb is _P:
            lo, hi = al * bl, ah * bl
        elif cb is _Z:
            lo, hi = 0.0, 0.0
        elif cb is _N:
            lo, hi = ah * bh, al * bh
        else:
            lo, hi = max(al * bl, ah * bh), min(al * bh, ah * bl)
    return _finite(lo, hi, "mul")


def mul_lakeyev(a: KInterval, b: KInterval) -> KInterval:
    """Kaucher product by the global positive/negative-part formulas."""
    alp, aln = real_parts(a.lo)
    ahp, ahn = real_parts(a.hi)
    blp, bln = real_parts(b.lo)
    bhp, bhn = real_parts(b.hi)
    lo = max(alp * blp, ahn * bhn) - max(ahp * bln, aln * bhp)
    hi = max(ahp * bhp, aln * bln) - max(alp * bhn, ahn * blp)
    return _finite(lo, hi, "mul")


def mul(a: KInterval, b: KInterval, method: str = "table") -> KInterval:
    if method == "table":
        return mul_table(a, b)
    if method == "lakeyev":
        return mul_lakeyev(a, b)
    raise ValueError(f"unknown multiplication method {method!r}")


def _check_invertible(a: KInterval, op: str) -> None:
    if min(a.lo, a.hi) <= 0 <= max(a.lo, a.hi):
        raise ZeroInProjectionError(f"{op}: zero in the proper projection of {a}")


def inv(a: KInterval) -> KInterval:
    """Multiplicative inverse ``[1/lo, 1/hi]``; requires 0 outside pro(a)."""
    _check_invertible(a, "inv")
    return _finite(1.0 / a.lo, 1.0 / a.hi, "inv")


def oslash(a: KInterval, b: KInterval) -> KInterval:
    """Internal (algebraic) division ``a * inv(b)``."""
    return mul(a, inv(b))


def div(a: KInterval, b: KInterval) -> KInterval:
    _check_invertible(b, "div")
    return mul(a, _finite(1.0 / b.hi, 1.0 / b.lo, "div"))


def dual(a: KInterval) -> KInterval:
    return KInterval(a.hi, a.lo)


def pro(a: KInterval) -> KInterval:
    return a if a.lo <= a.hi else KInterval(a.hi, a.lo)


def meet(a: KInterval, b: KInterval) -> KInterval:
    """Infimum with respect to inclusion; always defined in KR."""
    return KInterval(max(a.lo, b.lo), min(a.hi, b.hi))


def join(a: KInterval, b: KInterval) -> KInterval:
    """Supremum with respect to inclusion."""
    return KInterval(min(a.lo, b.lo), max(a.hi, b.hi))


def includes(a: KInterval, b: KInterval) -> bool:
    """True iff ``b`` is included in ``a``."""
    return b.lo >= a.lo and b.hi <= a.hi


def leq(a: KInterval, b: KInterval) -> bool:
    return a.lo <= b.lo and a.hi <= b.hi


def mag(a: KInterval) -> float:
    return max(abs(a.lo), abs(a.hi))


def mig(a: KInterval) -> float:
    if min(a.lo, a.hi) <= 0 <= max(a.lo, a.hi):
        return 0.0
    return min(abs(a.lo), abs(a.hi))


def mid(a: KInterval) -> float:
    return 0.5 * (a.lo + a.hi)


def rad(a: KInterval) -> float:
    """Radius; negative for improper intervals."""
    return 0.5 * (a.hi - a.lo)


def descriptors(a: KInterval) -> Descriptors:
    return Descriptors(mag(a), mig(a), mid(a), rad(a))


def floor_point(a: KInterval) -> float:
    """Point of pro(a) closest to zero (0 when pro(a) holds zero)."""
    if a.lo > 0 and a.hi > 0:
        return min(a.lo, a.hi)
    if a.lo < 0 and a.hi < 0:
        return max(a.lo, a.hi)
    return 0.0


def ceil_point(a: KInterval) -> float:
    """Point of pro(a) largest in absolute value, signed like ``a``.

    Nonnegative (nonpositive) intervals with a zero endpoint such as ``[0, 2]``
    still give their far endpoint; strictly zero-containing ones give 0.
    """
    if a.lo >= 0 and a.hi >= 0:
        return max(a.lo, a.hi)
    if a.lo <= 0 and a.hi <= 0:
        return min(a.lo, a.hi)
    return 0.0


def dist(a: KInterval, b: KInterval) -> float:
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def format_interval(a: KInterval) -> str:
    """Render as ``[lo,hi]`` using the shortest round-tripping decimals."""
    return f"[{a.lo!r},{a.hi!r}]"


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
INTERVAL_RE = re.compile(rf"\[\s*({_NUM})\s*,\s*({_NUM})\s*\]")


def parse_interval(text: str) -> KInterval:
    m = INTERVAL_RE.fullmatch(text.strip())
    if m is None:
        raise ProblemSyntaxError(f"malformed interval {text!r}")
    return KInterval(float(m.group(1)), float(m.group(2)))
