"""Moments, Hankel determinants and three-term recurrence coefficients.

Two independent routes lead to the recurrence ``P_{n+1} + b_n P_n + u_n P_{n-1} = x P_n``:
closed expressions in the spectrum, and coefficient matching on polynomials
produced by Gram-Schmidt on the moment sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DegenerateFunctional, InconsistentSpectrum, NotOrthogonal, SpectrumDegenerate
from .linalg import Singular, leading_minors, solve
from .polynomial import Normalization, Poly
from .scalars import DEFAULT, Context, render
from .spectrum import SpectrumPair, extend

__all__ = [
    "MomentFunctional",
    "RecurrenceCoeffs",
    "gram_schmidt_monic",
    "moment_rows",
    "moments_from_spectrum",
    "recurrence_from_polys",
    "recurrence_from_spectrum",
    "recurrence_rows",
    "symmetry_check",
]


@dataclass(frozen=True)
class MomentFunctional:
    """Moments ``c[0..]`` and Hankel determinants ``hankel[n] = det(c[i+k])_{i,k<=n}``."""

    c: tuple
    hankel: tuple
    ctx: Context = field(default=DEFAULT, compare=False, repr=False)

    @classmethod
    def from_moments(cls, c: Sequence, ctx: Context | None = None) -> MomentFunctional:
        ctx = ctx or DEFAULT
        c = tuple(c)
        size = (len(c) - 1) // 2 + 1
        H = [[c[i + k] for k in range(size)] for i in range(size)]
        return cls(c, tuple(leading_minors(H, ctx)), ctx)

    @property
    def nondegenerate(self) -> bool:
        return not any(self.ctx.is_zero(d) for d in self.hankel)

    def g(self, n: int):
        """The ratio ``-c[n-1]/c[n]``."""
        return -self.c[n - 1] / self.c[n]


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """``b = (b_0, ..., b_{K-1})`` and ``u = (u_1, ..., u_{K-1})``."""

    b: tuple
    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "u", tuple(self.u))

    def u_at(self, n: int):
        if n < 1:
            raise IndexError("u is indexed from 1")
        return self.u[n - 1]

    def h(self, n: int):
        """Squared norm ``h_n = u_1 ... u_n`` (``h_0 = 1``)."""
        out = 1
        for k in range(1, n + 1):
            out *= self.u_at(k)
        return out

    def nondegenerate(self, ctx: Context | None = None) -> bool:
        ctx = ctx or DEFAULT
        return not any(ctx.is_zero(x) for x in self.u)

    def prefix_positive(self, ctx: Context | None = None) -> bool:
        """Real ``b`` and strictly positive ``u`` on the computed prefix only."""
        ctx = ctx or DEFAULT
        if any(not ctx.is_zero(getattr(x, "imag", 0)) for x in self.b + self.u):
            return False
        return all(_real(x) > 0 and not ctx.is_zero(x) for x in self.u)

    def truncate(self, K: int) -> RecurrenceCoeffs:
        return RecurrenceCoeffs(self.b[:K], self.u[: max(K - 1, 0)])

    def close_to(self, other: RecurrenceCoeffs, ctx: Context | None = None) -> bool:
        ctx = ctx or DEFAULT
        return (len(self.b) == len(other.b) and len(self.u) == len(other.u)
                and all(ctx.close(x, y) for x, y in zip(self.b + self.u, other.b + other.u)))


def _real(x):
    return x.real if hasattr(x, "imag") else x


def _raw_moments(spec: SpectrumPair, upto: int) -> list:
    """``c_k`` from the split (k, 0) while k <= N, then from (N, k - N)."""
    ctx = spec.ctx
    lam, mu, N = spec.lam, spec.mu, spec.N
    c = [1 + 0 * lam[0]]
    for k in range(1, upto + 1):
        n, m = (k, 0) if k <= N else (N, k - N)
        d = lam[n] - lam[m]
        if ctx.is_zero(d, max(abs(lam[n]), abs(lam[m]))):
            raise SpectrumDegenerate(f"lambda_{n} = lambda_{m}")
        c.append(-c[-1] * (mu[n] - mu[m]) / d)
    return c


def _pair_residual(spec: SpectrumPair, c: Sequence, n: int, m: int):
    return (spec.lam[n] - spec.lam[m]) * c[n + m] + (spec.mu[n] - spec.mu[m]) * c[n + m - 1]


def moments_from_spectrum(spec: SpectrumPair, strict: bool = True) -> MomentFunctional:
    """The moment functional that makes ``L`` symmetric.

    ``strict`` (the default) asserts every split ``n + m = k`` of the given data
    agrees, continues the spectrum by its linear recurrences to produce
    ``c_0..c_{2N}`` and requires every Hankel determinant to be nonzero.  With
    ``strict=False`` the raw data alone fix ``c_0..c_{2N-1}`` and nothing is
    asserted; this is what the symmetry test consumes on arbitrary input.
    """
    ctx = spec.ctx
    if not strict:
        return MomentFunctional.from_moments(_raw_moments(spec, 2 * spec.N - 1), ctx)

    c = _raw_moments(extend(spec, 2 * spec.N), 2 * spec.N)
    for n in range(2, spec.N + 1):
        for m in range(1, n):
            r = _pair_residual(spec, c, n, m)
            scale = max(abs((spec.lam[n] - spec.lam[m]) * c[n + m]), abs(c[n + m - 1]))
            if not ctx.is_zero(r, scale):
                raise InconsistentSpectrum(
                    f"splits of {n + m} disagree: pair ({n},{m}) leaves {render(r, ctx)}")
    mom = MomentFunctional.from_moments(c, ctx)
    for n, d in enumerate(mom.hankel):
        if ctx.is_zero(d):
            raise DegenerateFunctional(f"Hankel determinant Delta_{n} vanishes")
    return mom


def symmetry_check(spec: SpectrumPair, mom: MomentFunctional, M: int):
    """Largest ``|(lam_n - lam_m) c_{n+m} + (mu_n - mu_m) c_{n+m-1}|`` over ``0 <= m < n <= M``."""
    if M > spec.N:
        raise ValueError(f"M={M} exceeds spectrum length N={spec.N}")
    if 2 * M - 1 >= len(mom.c):
        raise ValueError(f"M={M} needs moments through c_{2 * M - 1}")
    worst = 0 * mom.c[0]
    for n in range(1, M + 1):
        for m in range(n):
            r = abs(_pair_residual(spec, mom.c, n, m))
            if r > worst:
                worst = r
    return worst


def _recurrence_terms(spec: SpectrumPair):
    ctx = spec.ctx
    lam, mu = spec.lam, spec.mu

    def gap(i, j):
        d = lam[i] - lam[j]
        if ctx.is_zero(d, max(abs(lam[i]), abs(lam[j]))):
            raise SpectrumDegenerate(f"lambda_{i} = lambda_{j}")
        return d

    return lam, mu, gap


def recurrence_from_spectrum(spec: SpectrumPair) -> RecurrenceCoeffs:
    """``b_0..b_{N-1}`` and ``u_1..u_{N-1}`` from closed expressions in the spectrum."""
    if spec.N < 2:
        raise ValueError("need N >= 2")
    lam, mu, gap = _recurrence_terms(spec)
    N = spec.N
    b = []
    for n in range(N):
        t = mu[n] / gap(n, n - 1) if n else 0 * lam[0]
        b.append(t - mu[n + 1] / gap(n + 1, n))
    u = []
    for n in range(1, N):
        t = -mu[n] * b[n] / gap(n, n - 1)
        if n >= 2:
            t += mu[n] * mu[n - 1] / (gap(n, n - 1) * gap(n, n - 2))
        t -= mu[n] * mu[n + 1] / (gap(n + 1, n) * gap(n + 1, n - 1))
        u.append(t)
    return RecurrenceCoeffs(b, u)


def gram_schmidt_monic(mom: MomentFunctional, N: int) -> list:
    """Monic ``P_0..P_N`` orthogonal to all lower powers, by solving the moment systems."""
    c = mom.c
    if 2 * N - 1 >= len(c):
        raise ValueError(f"degree {N} needs moments through c_{2 * N - 1}")
    out = [Poly([1], Normalization.MONIC)]
    for n in range(1, N + 1):
        A = [[c[j + k] for j in range(n)] for k in range(n)]
        rhs = [-c[n + k] for k in range(n)]
        try:
            a = solve(A, rhs, mom.ctx)
        except Singular as exc:
            raise DegenerateFunctional(f"moment system of degree {n} is singular") from exc
        out.append(Poly(a + [1], Normalization.MONIC))
    return out


def recurrence_from_polys(polys: Sequence[Poly], ctx: Context | None = None) -> RecurrenceCoeffs:
    """Read ``b_n``, ``u_n`` off consecutive monic polynomials and verify every coefficient."""
    ctx = ctx or DEFAULT
    for n, p in enumerate(polys):
        if p.degree != n or not ctx.close(p.leading, 1):
            raise NotOrthogonal(n, "expected a monic polynomial of matching degree")
    b, u = [], []
    for n in range(len(polys) - 1):
        rest = polys[n].mul_x() - polys[n + 1]
        bn = rest.coeff(n)
        rest = rest - polys[n] * bn
        if n:
            un = rest.coeff(n - 1)
            rest = rest - polys[n - 1] * un
            u.append(un)
        b.append(bn)
        scale = max([1] + [abs(x) for x in polys[n + 1].coeffs])
        for k, x in enumerate(rest.coeffs):
            if not ctx.is_zero(x, scale):
                raise NotOrthogonal(n + 1, f"coefficient of x^{k} leaves {render(x, ctx)}")
    return RecurrenceCoeffs(b, u)


def moment_rows(mom: MomentFunctional, ctx: Context | None = None) -> Iterator[tuple]:
    """CSV-ready rows ``(n, c_n, Delta_n)``; ``Delta_n`` is blank past the Hankel range."""
    ctx = ctx or mom.ctx
    for n, x in enumerate(mom.c):
        d = render(mom.hankel[n], ctx) if n < len(mom.hankel) else ""
        yield (n, render(x, ctx), d)


def recurrence_rows(rc: RecurrenceCoeffs, ctx: Context | None = None) -> Iterator[tuple]:
    """CSV-ready rows ``(n, b_n, u_n)``; ``u_0`` is blank."""
    for n, x in enumerate(rc.b):
        u = render(rc.u_at(n), ctx) if 1 <= n <= len(rc.u) else ""
        yield (n, render(x, ctx), u)
