"""Concrete differential, q-difference and reflection operators acting on coefficients."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonPolynomialOutput, NotTwoDiagonal
from .polynomial import Poly
from .scalars import DEFAULT, Context, as_scalar
from .spectrum import SpectrumPair

__all__ = [
    "BesselOp",
    "DunklMinusOne",
    "Hypergeometric",
    "LaguerreOp",
    "LittleQOp",
    "OperatorRealization",
    "QHypergeometric",
    "apply_realized",
    "q_shift",
    "reflect",
    "two_diagonal_profile",
]


def q_shift(p: Poly, q) -> Poly:
    """``f(x) -> f(q x)``."""
    return Poly(c * q**k for k, c in enumerate(p.coeffs))


def reflect(p: Poly) -> Poly:
    """``f(x) -> f(-x)``."""
    return Poly(-c if k % 2 else c for k, c in enumerate(p.coeffs))


def div_x(p: Poly, ctx: Context | None = None) -> Poly:
    """``f(x) / x``; the constant term has to vanish."""
    ctx = ctx or DEFAULT
    if p.coeffs and not ctx.is_zero(p.coeffs[0]):
        raise NonPolynomialOutput(f"x^-1 term with coefficient {p.coeffs[0]!r} survives")
    return Poly(p.coeffs[1:])


def q_derivative(p: Poly, q) -> Poly:
    """``(f(qx) - f(x)) / (x (q - 1))``."""
    return div_x(q_shift(p, q) - p) / (q - 1)


@dataclass(frozen=True)
class OperatorRealization:
    """Base class; subclasses implement :meth:`apply` on coefficient vectors."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    def apply(self, p: Poly) -> Poly:
        raise NotImplementedError


@dataclass(frozen=True)
class Hypergeometric(OperatorRealization):
    """``x(1-x) f'' + (alpha + 1 - (alpha + beta + 2) x) f'``."""

    alpha: object
    beta: object

    def apply(self, p):
        d1 = p.derivative()
        d2 = d1.derivative()
        al, be = as_scalar(self.alpha), as_scalar(self.beta)
        return (d2.mul_x() - d2.mul_x(2)) + d1 * (al + 1) - d1.mul_x() * (al + be + 2)


@dataclass(frozen=True)
class LaguerreOp(OperatorRealization):
    """``-x f'' + (x - alpha - 1) f'``."""

    alpha: object

    def apply(self, p):
        d1 = p.derivative()
        return -d1.derivative().mul_x() + d1.mul_x() - d1 * (as_scalar(self.alpha) + 1)


@dataclass(frozen=True)
class BesselOp(OperatorRealization):
    """``x^2 f'' + (a x + 2) f'``."""

    a: object

    def apply(self, p):
        d1 = p.derivative()
        return d1.derivative().mul_x(2) + d1.mul_x() * as_scalar(self.a) + d1 * 2


@dataclass(frozen=True)
class QHypergeometric(OperatorRealization):
    """Second-order q-difference operator ``x(gamma - x) T^- D_q^2 + s (alpha x + beta) T^- D_q``.

    ``T^- f(x) = f(x/q)`` and ``D_q`` is the q-derivative.  The first-order term
    carries ``s = q**2`` by default, which yields
    ``lam_n = q^(2-n)[n](q alpha - [n-1])`` and ``mu_n = q^(2-n)[n](q beta + gamma [n-1])``;
    ``literal=True`` uses ``s = 1``, which replaces ``q alpha, q beta`` by
    ``alpha/q, beta/q`` in those expressions.
    """

    alpha: object
    beta: object
    gamma: object
    q: object
    literal: bool = False

    def apply(self, p):
        q = as_scalar(self.q)
        al, be, ga = (as_scalar(x) for x in (self.alpha, self.beta, self.gamma))
        s = 1 if self.literal else q * q
        d1 = q_derivative(p, q)
        d2 = q_derivative(d1, q)
        t2 = q_shift(d2, 1 / q)
        t1 = q_shift(d1, 1 / q)
        return t2.mul_x() * ga - t2.mul_x(2) + (t1.mul_x() * al + t1 * be) * s


@dataclass(frozen=True)
class LittleQOp(OperatorRealization):
    """``a(bq - 1/x)(f(qx) - f(x)) + (1 - 1/x)(f(x/q) - f(x))``."""

    a: object
    b: object
    q: object

    def apply(self, p):
        a, b, q = (as_scalar(x) for x in (self.a, self.b, self.q))
        up = q_shift(p, q) - p
        down = q_shift(p, 1 / q) - p
        return up * (a * b * q) - div_x(up) * a + down - div_x(down)


@dataclass(frozen=True)
class DunklMinusOne(OperatorRealization):
    """``2(1-x) d/dx R + (alpha + beta + 1 - alpha/x)(1 - R)`` with ``R f(x) = f(-x)``."""

    alpha: object
    beta: object

    def apply(self, p):
        al, be = as_scalar(self.alpha), as_scalar(self.beta)
        dr = reflect(p).derivative()
        odd = p - reflect(p)
        return dr * 2 - dr.mul_x() * 2 + odd * (al + be + 1) - div_x(odd) * al


def apply_realized(opr: OperatorRealization, p: Poly) -> Poly:
    return opr.apply(p)


def two_diagonal_profile(opr: OperatorRealization, N: int, ctx: Context | None = None) -> SpectrumPair:
    """Apply ``opr`` to ``1, x, ..., x^N`` and read off ``lam_n``, ``mu_n``.

    Any coefficient other than those of ``x^n`` and ``x^(n-1)`` raises
    :class:`NotTwoDiagonal`.
    """
    ctx = ctx or DEFAULT
    if N < 1:
        raise ValueError("N must be at least 1")
    lam, mu = [], []
    for n in range(N + 1):
        image = opr.apply(Poly.monomial(n, as_scalar(1)))
        for k, c in enumerate(image.coeffs):
            if k not in (n, n - 1) and not ctx.is_zero(c):
                raise NotTwoDiagonal(n, k)
        lam.append(image.coeff(n))
        mu.append(image.coeff(n - 1) if n else 0)
    return SpectrumPair(tuple(lam), tuple(mu), opr.kind, ctx)
