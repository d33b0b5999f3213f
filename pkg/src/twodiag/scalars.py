"""Scalar substrate: exact rationals, configurable-precision mpmath values, q-calculus.

Exact values are plain ``int``/``fractions.Fraction``; approximate values are
mpmath numbers created by the :class:`Context` that owns the working
precision and the comparison tolerance.  Nothing here hard-codes a tolerance;
call sites pass a context (or fall back to :data:`DEFAULT`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import mpmath
from mpmath.ctx_mp_python import mpnumeric

from .errors import ZeroDivisor

__all__ = [
    "Context",
    "DEFAULT",
    "QContext",
    "as_scalar",
    "div",
    "exact_sqrt",
    "from_json",
    "is_exact",
    "is_zero",
    "parse_scalar",
    "q_number",
    "q_pochhammer",
    "render",
    "sqrt",
    "to_json",
]


@dataclass(frozen=True)
class Context:
    """Precision ``bits`` and relative tolerance ``tol`` for approximate mode.

    Exact operands never consult ``tol``: zero means zero.
    """

    bits: int = 256
    tol: Fraction = field(default=Fraction(1, 2**100))

    def __post_init__(self):
        if self.bits < 53:
            raise ValueError("precision below 53 bits is not supported")
        object.__setattr__(self, "tol", Fraction(self.tol))

    @cached_property
    def mp(self) -> mpmath.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.bits
        return ctx

    @cached_property
    def tol_mp(self):
        return self.to_mp(self.tol)

    def to_mp(self, x):
        """Convert any supported scalar into this context's precision."""
        mp = self.mp
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return mp.mpf(x)
        if isinstance(x, Rational):
            return mp.mpf(x.numerator) / x.denominator
        if isinstance(x, mpnumeric):
            return mp.mpmathify(x)
        if isinstance(x, (float, complex, str)):
            return mp.mpmathify(x)
        raise TypeError(f"unsupported scalar {x!r}")

    def is_zero(self, x, scale=1) -> bool:
        if is_exact(x):
            return x == 0
        ref = max(1, abs(scale))
        return abs(x) <= self.tol_mp * ref

    def close(self, a, b) -> bool:
        if is_exact(a) and is_exact(b):
            return a == b
        scale = max(abs(self.to_mp(a)), abs(self.to_mp(b)))
        return self.is_zero(a - b, scale)


DEFAULT = Context()


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_scalar(x, ctx: Context | None = None):
    """Normalise user input: ints and Fractions stay exact, anything else goes to mpmath."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    return (ctx or DEFAULT).to_mp(x)


def is_zero(x, ctx: Context | None = None, scale=1) -> bool:
    return (ctx or DEFAULT).is_zero(x, scale)


def div(a, b, ctx: Context | None = None):
    """``a / b`` that reports a vanishing divisor instead of returning inf/nan."""
    if is_zero(b, ctx):
        raise ZeroDivisor(f"division of {render(a)} by zero")
    return a / b


def exact_sqrt(x) -> Fraction | None:
    """Square root of a non-negative rational when it is itself rational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt(x, ctx: Context | None = None):
    if is_exact(x):
        r = exact_sqrt(x)
        if r is not None:
            return r
    ctx = ctx or DEFAULT
    return ctx.mp.sqrt(ctx.to_mp(x))


def q_number(q, n: int, classical: bool = False):
    """The q-number ``(q**n - 1)/(q - 1)``, computed as ``1 + q + ... + q**(n-1)``."""
    if n < 0:
        raise ValueError("q-number needs n >= 0")
    if classical:
        return Fraction(n)
    total, power = 0 * q, 1 + 0 * q
    for _ in range(n):
        total += power
        power *= q
    return total


def q_pochhammer(a, q, s: int):
    """Shifted q-factorial ``(a; q)_s = (1-a)(1-aq)...(1-aq**(s-1))``."""
    if s < 0:
        raise ValueError("q-Pochhammer needs s >= 0")
    prod, term = 1 + 0 * a, a
    for _ in range(s):
        prod *= 1 - term
        term *= q
    return prod


@dataclass(frozen=True)
class QContext:
    """A deformation base ``q``; ``classical=True`` selects the ``q -> 1`` limit."""

    q: object
    classical: bool = False

    def __post_init__(self):
        if not self.classical and (self.q == 0 or self.q == 1 or self.q == -1):
            raise ValueError("q must avoid 0 and +-1 as a deformation base")

    def number(self, n: int):
        return q_number(self.q, n, self.classical)

    def pochhammer(self, a, s: int):
        return q_pochhammer(a, self.q, s)


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_scalar(text: str, exact: bool = True, ctx: Context | None = None):
    """Parse ``"p/q"`` or ``"p"``.  Decimals are refused in exact mode."""
    m = _RATIONAL.match(str(text))
    if m:
        den = int(m.group(2) or 1)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if exact:
        raise ValueError(f"{text!r} is not a rational 'p/q'; decimals are not accepted in exact mode")
    return (ctx or DEFAULT).mp.mpmathify(str(text).strip())


def _digits(ctx: Context) -> int:
    return int(ctx.bits * math.log10(2)) + 1


def render(x, ctx: Context | None = None) -> str:
    """Deterministic text form: ``p/q`` for rationals, fixed-digit decimals otherwise."""
    if is_exact(x):
        f = Fraction(x)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    ctx = ctx or DEFAULT
    x = ctx.to_mp(x)
    n = _digits(ctx)
    if isinstance(x, ctx.mp.mpc):
        return f"({mpmath.nstr(x.real, n)}{'+' if x.imag >= 0 else '-'}{mpmath.nstr(abs(x.imag), n)}j)"
    return mpmath.nstr(x, n)


def to_json(x, ctx: Context | None = None) -> dict:
    if is_exact(x):
        f = Fraction(x)
        return {"num": str(f.numerator), "den": str(f.denominator)}
    ctx = ctx or DEFAULT
    x = ctx.to_mp(x)
    n = _digits(ctx)
    if isinstance(x, ctx.mp.mpc):
        return {"re": mpmath.nstr(x.real, n), "im": mpmath.nstr(x.imag, n), "bits": ctx.bits}
    return {"val": mpmath.nstr(x, n), "bits": ctx.bits}


def from_json(obj, ctx: Context | None = None):
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return parse_scalar(str(obj))
    if not isinstance(obj, dict):
        raise ValueError(f"not a scalar record: {obj!r}")
    if "num" in obj:
        den = int(obj.get("den", 1))
        if den == 0:
            raise ValueError("zero denominator")
        return Fraction(int(obj["num"]), den)
    bits = int(obj.get("bits", (ctx or DEFAULT).bits))
    ctx = ctx if ctx is not None and ctx.bits == bits else Context(bits=bits)
    if "re" in obj:
        return ctx.mp.mpc(ctx.mp.mpf(obj["re"]), ctx.mp.mpf(obj["im"]))
    if "val" in obj:
        return ctx.mp.mpf(obj["val"])
    raise ValueError(f"not a scalar record: {obj!r}")
