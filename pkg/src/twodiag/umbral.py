"""Formal derivative operators and the umbral-classical descent check."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .eigenpoly import eigenpolynomial, eigenpolynomials
from .errors import NotOrthogonal, NotUmbralClassical, TwoDiagError
from .polynomial import Normalization, Poly
from .scalars import as_scalar, q_number, render
from .spectrum import SpectrumPair, check_admissible, structure_constants

__all__ = [
    "DKind",
    "DSequence",
    "Descent",
    "default_dsequence",
    "formal_derivative",
    "umbral_descend",
]


class DKind(Enum):
    CLASSICAL = "Classical"
    QDERIVATIVE = "QDerivative"
    DUNKL = "Dunkl"


@dataclass(frozen=True)
class DSequence:
    """``D x^n = d_n x^(n-1)`` for one of the three supported kinds.

    ``param`` is ``q`` for the q-derivative and ``nu`` for the Dunkl case.
    """

    kind: DKind
    param: object = None

    def __post_init__(self):
        if self.kind is not DKind.CLASSICAL:
            if self.param is None:
                raise ValueError(f"{self.kind.value} needs a parameter")
            object.__setattr__(self, "param", as_scalar(self.param))
        if self.kind is DKind.QDERIVATIVE and (self.param == 0 or self.param == 1):
            raise ValueError("q must differ from 0 and 1")

    @classmethod
    def classical(cls) -> DSequence:
        return cls(DKind.CLASSICAL)

    @classmethod
    def q_derivative(cls, q) -> DSequence:
        return cls(DKind.QDERIVATIVE, q)

    @classmethod
    def dunkl(cls, nu) -> DSequence:
        return cls(DKind.DUNKL, nu)

    def d(self, n: int):
        if self.kind is DKind.CLASSICAL:
            return as_scalar(n)
        if self.kind is DKind.QDERIVATIVE:
            return q_number(self.param, n)
        return n + self.param * (1 - (-1) ** n)

    def seq(self, N: int) -> list:
        return [self.d(n) for n in range(N + 1)]

    def __str__(self):
        if self.kind is DKind.CLASSICAL:
            return "Classical"
        name = "q" if self.kind is DKind.QDERIVATIVE else "nu"
        return f"{self.kind.value}({name}={render(self.param)})"


def formal_derivative(ds: DSequence, p: Poly) -> Poly:
    return Poly(ds.d(n) * c for n, c in enumerate(p.coeffs) if n)


@dataclass(frozen=True)
class Descent:
    spec: SpectrumPair
    polys: list
    ds: DSequence


def default_dsequence(spec: SpectrumPair) -> DSequence:
    """Pick ``D`` from the class of ``Omega``: classical at 2, Dunkl at -2, q otherwise.

    The Dunkl parameter is ``alpha/2`` of the little -1 Jacobi classification.
    """
    from .families import LittleMinusOneJacobi, _q_base, classify

    ctx = spec.ctx
    omega = structure_constants(spec).omega
    if ctx.close(omega, 2):
        return DSequence.classical()
    if ctx.close(omega, -2):
        tag = classify(spec)
        if not isinstance(tag, LittleMinusOneJacobi):
            raise NotUmbralClassical(f"Omega = -2 but the spectrum classifies as {tag.family}")
        return DSequence.dunkl(tag.alpha / 2)
    if abs(omega) > 2:
        return DSequence.q_derivative(_q_base(omega, ctx))
    raise NotUmbralClassical("no formal derivative is paired with |Omega| < 2")


def _fail(msg: str):
    raise NotUmbralClassical(msg)


def umbral_descend(spec: SpectrumPair, ds: DSequence | None = None, N: int | None = None) -> Descent:
    """Descend ``P_{n+1}`` to ``D P_{n+1} / d_{n+1}`` and recover the operator they diagonalize.

    The new spectrum is fixed by the triangular system on the two subleading
    coefficients of each descended polynomial, with ``mu~_1 = mu_1`` fixing the
    overall scale.  Every coefficient is then checked against the
    eigenpolynomials of the fitted spectrum.
    """
    ctx = spec.ctx
    N = spec.N - 1 if N is None else N
    if N + 1 > spec.N:
        raise ValueError(f"descending to degree {N} needs N >= {N + 1}")
    if N < 3:
        raise ValueError("need at least three descended degrees")
    ds = ds or default_dsequence(spec)

    polys = eigenpolynomials(spec, N + 1)
    down = []
    for n in range(N + 1):
        dn = ds.d(n + 1)
        if ctx.is_zero(dn):
            _fail(f"d_{n + 1} vanishes")
        down.append(Poly(formal_derivative(ds, polys[n + 1]) / dn, Normalization.MONIC))

    from .orthogonality import recurrence_from_polys

    try:
        recurrence_from_polys(down, ctx)
    except NotOrthogonal as exc:
        raise NotUmbralClassical(f"descended polynomials are not orthogonal at degree {exc.degree}") from exc

    lam = [0 * spec.lam[0]] * (N + 1)
    mu = [0 * spec.mu[0]] * (N + 1)
    mu[1] = spec.mu[1]
    for n in range(1, N + 1):
        r = down[n].coeff(n - 1)
        if ctx.is_zero(r):
            _fail(f"subleading coefficient of degree {n} vanishes")
        if n == 1:
            lam[1] = mu[1] / r
            continue
        a = down[n].coeff(n - 2)
        if ctx.is_zero(a):
            _fail(f"coefficient of x^{n - 2} in degree {n} vanishes")
        lam[n] = lam[n - 2] + r * mu[n - 1] / a
        mu[n] = r * (lam[n] - lam[n - 1])
    new = SpectrumPair(tuple(lam), tuple(mu), None, ctx)

    for n in range(N + 1):
        try:
            target = eigenpolynomial(new, n)
        except TwoDiagError as exc:
            raise NotUmbralClassical(f"fitted spectrum is degenerate at degree {n}") from exc
        if not down[n].close_to(target, ctx):
            _fail(f"degree {n} is not an eigenpolynomial of the fitted operator")

    report = check_admissible(new)
    if not report.admissible:
        _fail(f"descended spectrum breaks rules {','.join(sorted(report.rules()))}")
    if not ctx.close(structure_constants(new).omega, structure_constants(spec).omega):
        _fail("descent changed Omega")
    return Descent(new, down, ds)
