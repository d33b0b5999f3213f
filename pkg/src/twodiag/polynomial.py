"""Dense polynomials in the monomial basis, lowest degree first."""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from .scalars import DEFAULT, Context, as_scalar, from_json, is_exact, to_json


class Normalization(Enum):
    MONIC = "monic"
    UNIT_A0 = "unit_a0"


def _trim(coeffs: list) -> tuple:
    # only exact zeros are dropped; an approximate 1e-80 is still a coefficient
    while coeffs and is_exact(coeffs[-1]) and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Immutable polynomial ``sum(coeffs[k] * x**k)``.

    ``norm`` is an optional :class:`Normalization` marker; it rides along with
    the coefficients but does not take part in equality.
    """

    __slots__ = ("coeffs", "norm")

    def __init__(self, coeffs: Iterable = (), norm: Normalization | None = None):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))
        object.__setattr__(self, "norm", norm)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == Poly(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        n = max(len(self), len(other))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.constant(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly()
            out = [0] * (len(self) + len(other) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        return Poly((c * other for c in self.coeffs), self.norm if other == 1 else None)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(c / scalar for c in self.coeffs)

    def mul_x(self, k: int = 1) -> Poly:
        """Multiply by ``x**k``."""
        if self.is_zero():
            return Poly()
        return Poly([0] * k + list(self.coeffs))

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def with_norm(self, norm: Normalization | None) -> Poly:
        return Poly(self.coeffs, norm)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def close_to(self, other: Poly, ctx: Context | None = None) -> bool:
        ctx = ctx or DEFAULT
        n = max(len(self), len(other))
        return all(ctx.close(self.coeff(k), other.coeff(k)) for k in range(n))

    def to_json(self, ctx: Context | None = None) -> list:
        return [to_json(c, ctx) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence, ctx: Context | None = None) -> Poly:
        return cls(from_json(c, ctx) for c in data)

    @classmethod
    def of(cls, coeffs: Iterable, ctx: Context | None = None) -> Poly:
        """Build from user input, promoting ints to exact Fractions."""
        return cls(as_scalar(c, ctx) for c in coeffs)
