"""Operator identities between ``L`` and multiplication by ``x``, checked on monomials.

Operators are composed as action tables on coefficient vectors, so a product
such as ``L X L`` applied to ``x^n`` only consumes the spectrum up to the
degree it actually reaches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FitFailed
from .linalg import Inconsistent, Singular, solve
from .polynomial import Poly
from .scalars import Context, as_scalar, to_json
from .spectrum import SpectrumPair, StructureConstants, apply_abstract, structure_constants

__all__ = ["IdentityReport", "fit_dual_identity", "primary_operator", "dual_operator",
           "verify_primary_identity"]


@dataclass(frozen=True)
class IdentityReport:
    """``residual`` is the largest stray coefficient over ``x^0..x^degree_tested``.

    ``streams`` holds one ``(n, ...)`` row per tested monomial with the
    individual coefficient residuals.
    """

    residual: object
    degree_tested: int
    fitted_constants: tuple | None = None
    streams: list = field(default_factory=list, repr=False)

    @property
    def holds(self) -> bool:
        return self.residual == 0

    def to_json(self, ctx: Context | None = None) -> dict:
        out = {"residual": to_json(self.residual, ctx), "degree_tested": self.degree_tested}
        if self.fitted_constants is not None:
            names = ("alpha", "beta", "gamma", "delta")
            out["fitted_constants"] = {k: to_json(c, ctx) for k, c in zip(names, self.fitted_constants)}
        return out


def _word(spec: SpectrumPair, word: str, p: Poly) -> Poly:
    # apply right to left, as written
    for op in reversed(word):
        p = apply_abstract(spec, p) if op == "L" else p.mul_x()
    return p


def primary_operator(spec: SpectrumPair, sc: StructureConstants, p: Poly) -> Poly:
    """``(X^2 L + L X^2 - Omega X L X + B2 X^2 + C2 X) p``."""
    return (_word(spec, "XXL", p) + _word(spec, "LXX", p) - _word(spec, "XLX", p) * sc.omega
            + p.mul_x(2) * sc.b2 + p.mul_x() * sc.c2)


def dual_operator(spec: SpectrumPair, omega, p: Poly) -> Poly:
    """``(L^2 X + X L^2 - Omega L X L) p``."""
    return _word(spec, "LLX", p) + _word(spec, "XLL", p) - _word(spec, "LXL", p) * omega


def _max_abs(values):
    worst = 0
    for v in values:
        a = abs(v)
        if a > worst:
            worst = a
    return worst


def verify_primary_identity(spec: SpectrumPair, sc: StructureConstants | None = None,
                            Nmax: int | None = None) -> IdentityReport:
    """Apply the primary operator to ``x^0..x^Nmax``; every coefficient should vanish.

    ``streams`` rows are ``(n, coef of x^(n+2), coef of x^(n+1))``.
    """
    sc = sc or structure_constants(spec)
    Nmax = spec.N - 2 if Nmax is None else Nmax
    if Nmax + 2 > spec.N:
        raise ValueError(f"Nmax={Nmax} needs a spectrum of length {Nmax + 2}")
    one = as_scalar(1)
    streams, stray = [], []
    for n in range(Nmax + 1):
        img = primary_operator(spec, sc, Poly.monomial(n, one))
        streams.append((n, img.coeff(n + 2), img.coeff(n + 1)))
        stray.extend(img.coeffs)
    return IdentityReport(_max_abs(stray), Nmax, None, streams)


def _rhs_columns(spec: SpectrumPair, n: int) -> list:
    one = as_scalar(1)
    xn = Poly.monomial(n, one)
    return [
        _word(spec, "LX", xn) + _word(spec, "XL", xn),
        xn.mul_x(),
        apply_abstract(spec, xn),
        xn,
    ]


def fit_dual_identity(spec: SpectrumPair, Omega=None, Nmax: int | None = None,
                      fit_degrees: int = 4) -> IdentityReport:
    """Fit ``alpha, beta, gamma, delta`` in
    ``L^2 X + X L^2 - Omega L X L = alpha (L X + X L) + beta X + gamma L + delta``
    on ``x^0..x^(fit_degrees-1)`` and verify the relation on ``x^0..x^Nmax``.
    """
    ctx = spec.ctx
    Omega = structure_constants(spec).omega if Omega is None else as_scalar(Omega)
    Nmax = spec.N - 1 if Nmax is None else Nmax
    if Nmax + 1 > spec.N:
        raise ValueError(f"Nmax={Nmax} needs a spectrum of length {Nmax + 1}")
    if fit_degrees - 1 > Nmax:
        raise ValueError("fit range exceeds the tested range")

    A, rhs = [], []
    for n in range(fit_degrees):
        lhs = dual_operator(spec, Omega, Poly.monomial(n, as_scalar(1)))
        cols = _rhs_columns(spec, n)
        for k in range(n + 2):
            A.append([c.coeff(k) for c in cols])
            rhs.append(lhs.coeff(k))
    try:
        consts = tuple(solve(A, rhs, ctx))
    except (Inconsistent, Singular) as exc:
        raise FitFailed(f"dual identity constants are not determined: {exc}") from exc

    streams, stray = [], []
    for n in range(Nmax + 1):
        lhs = dual_operator(spec, Omega, Poly.monomial(n, as_scalar(1)))
        cols = _rhs_columns(spec, n)
        diff = lhs - sum((c * k for c, k in zip(cols, consts)), Poly([]))
        streams.append((n,) + tuple(diff.coeff(k) for k in range(max(n - 1, 0), n + 2)))
        stray.extend(diff.coeffs)
    return IdentityReport(_max_abs(stray), Nmax, consts, streams)
