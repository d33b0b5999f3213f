"""Eigenpolynomials of a two-diagonal operator and argument rescaling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeOverflow, SpectrumDegenerate, ZeroKappa
from .polynomial import Normalization, Poly
from .spectrum import SpectrumPair

__all__ = [
    "Rescaled",
    "eigenpolynomial",
    "eigenpolynomials",
    "expansion_coefficients",
    "rescale",
    "rescale_moments",
    "rescale_recurrence",
]


def _check_degree(spec: SpectrumPair, n: int) -> None:
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > spec.N:
        raise DegreeOverflow(f"degree {n} exceeds spectrum length N={spec.N}")


def _gap(spec: SpectrumPair, n: int, k: int):
    d = spec.lam[n] - spec.lam[k]
    if spec.ctx.is_zero(d, max(abs(spec.lam[n]), abs(spec.lam[k]))):
        raise SpectrumDegenerate(f"lambda_{n} = lambda_{k}")
    return d


def _monic(spec: SpectrumPair, n: int) -> list:
    # backward ratio: a[n-k] = a[n-k+1] * mu[n-k+1] / (lam[n] - lam[n-k])
    a = [0] * (n + 1)
    a[n] = 1
    for k in range(1, n + 1):
        a[n - k] = a[n - k + 1] * spec.mu[n - k + 1] / _gap(spec, n, n - k)
    return a


def _unit_a0(spec: SpectrumPair, n: int) -> list:
    # forward ratio: A[s+1] = A[s] * (lam[n] - lam[s]) / mu[s+1]
    A = [1]
    for s in range(n):
        m = spec.mu[s + 1]
        if spec.ctx.is_zero(m):
            raise SpectrumDegenerate(f"mu_{s + 1} = 0")
        A.append(A[-1] * _gap(spec, n, s) / m)
    return A


def eigenpolynomial(spec: SpectrumPair, n: int, norm: Normalization = Normalization.MONIC) -> Poly:
    """The degree-``n`` eigenpolynomial, monic or with unit constant term."""
    _check_degree(spec, n)
    if norm is Normalization.MONIC:
        return Poly(_monic(spec, n), norm)
    if norm is Normalization.UNIT_A0:
        return Poly(_unit_a0(spec, n), norm)
    raise ValueError(f"unknown normalization {norm!r}")


def eigenpolynomials(spec: SpectrumPair, N: int | None = None,
                     norm: Normalization = Normalization.MONIC) -> list:
    N = spec.N if N is None else N
    return [eigenpolynomial(spec, n, norm) for n in range(N + 1)]


def expansion_coefficients(spec: SpectrumPair, n: int) -> list:
    """``A[s] = prod_{j<s}(lam_n - lam_j) / prod_{j<=s} mu_j`` with ``A[0] = 1``, as closed products."""
    _check_degree(spec, n)
    out = []
    for s in range(n + 1):
        num, den = 1, 1
        for j in range(s):
            num *= _gap(spec, n, j)
        for j in range(1, s + 1):
            if spec.ctx.is_zero(spec.mu[j]):
                raise SpectrumDegenerate(f"mu_{j} = 0")
            den *= spec.mu[j]
        out.append(num / den if s else 1 + 0 * spec.lam[0])
    return out


@dataclass(frozen=True)
class Rescaled:
    """Result of ``x -> x/kappa``: new spectrum, monic polynomials and the transformation rules.

    Moments pick up ``kappa**n``; recurrence coefficients ``b`` and ``u`` pick up
    ``kappa`` and ``kappa**2``.
    """

    spec: SpectrumPair
    polys: list
    kappa: object

    def moments(self, c: Sequence) -> list:
        return rescale_moments(c, self.kappa)

    def recurrence(self, b: Sequence, u: Sequence) -> tuple:
        return rescale_recurrence(b, u, self.kappa)

    @property
    def rules(self) -> dict:
        return {"moments": "c_n -> kappa^n c_n", "b": "b_n -> kappa b_n", "u": "u_n -> kappa^2 u_n"}


def rescale(spec: SpectrumPair, polys: Sequence[Poly], kappa) -> Rescaled:
    """Replace every ``P_n(x)`` by ``kappa**n P_n(x/kappa)``; ``mu`` scales by ``kappa``."""
    if spec.ctx.is_zero(kappa):
        raise ZeroKappa("kappa must be nonzero")
    new_spec = spec.scaled(1, kappa)
    new_polys = []
    for p in polys:
        n = p.degree
        new_polys.append(Poly((c * kappa ** (n - k) for k, c in enumerate(p.coeffs)), p.norm))
    return Rescaled(new_spec, new_polys, kappa)


def rescale_moments(c: Sequence, kappa) -> list:
    return [x * kappa**n for n, x in enumerate(c)]


def rescale_recurrence(b: Sequence, u: Sequence, kappa) -> tuple:
    return [kappa * x for x in b], [kappa**2 * x for x in u]
