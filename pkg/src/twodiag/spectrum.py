"""Two-diagonal operators on monomials, seed extension and admissibility.

An operator ``L`` is stored through its action ``L x**n = lam[n] x**n + mu[n] x**(n-1)``.
Its eigenpolynomials are orthogonal exactly when both sequences obey the
linear recurrences

    lam[n+1] + lam[n-1] - omega*lam[n] + b2 = 0
    mu[n+1]  + mu[n-1]  - omega*mu[n]  + c2 = 0

with a shared ``omega`` and no affine relation tying ``mu`` to ``lam``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

from .errors import DegenerateExtension, DegenerateSeed, DegreeOverflow
from .polynomial import Poly
from .scalars import DEFAULT, Context, as_scalar, from_json, is_exact, render, to_json

__all__ = [
    "AdmissibilityReport",
    "SpectrumPair",
    "StructureConstants",
    "Violation",
    "apply_abstract",
    "check_admissible",
    "extend",
    "extend_from_seed",
    "recurrence_residuals",
    "structure_constants",
]


@dataclass(frozen=True)
class SpectrumPair:
    """Diagonal ``lam`` and superdiagonal ``mu`` of a two-diagonal operator, indices 0..N."""

    lam: tuple
    mu: tuple
    family_hint: str | None = None
    ctx: Context = field(default=DEFAULT, compare=False, repr=False)

    def __post_init__(self):
        lam = tuple(as_scalar(x, self.ctx) for x in self.lam)
        mu = tuple(as_scalar(x, self.ctx) for x in self.mu)
        if len(lam) != len(mu):
            raise ValueError("lambda and mu must have the same length")
        if not lam:
            raise ValueError("empty spectrum")
        if not (self.ctx.is_zero(lam[0]) and self.ctx.is_zero(mu[0])):
            raise ValueError("spectrum must start with lambda_0 = mu_0 = 0")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def N(self) -> int:
        return len(self.lam) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(x) for x in self.lam + self.mu)

    @classmethod
    def from_functions(cls, lam: Callable[[int], object], mu: Callable[[int], object], N: int,
                       family_hint: str | None = None, ctx: Context | None = None) -> SpectrumPair:
        return cls(tuple(lam(n) for n in range(N + 1)), tuple(mu(n) for n in range(N + 1)),
                   family_hint, ctx or DEFAULT)

    def truncate(self, N: int) -> SpectrumPair:
        if N > self.N:
            raise DegreeOverflow(f"spectrum only known to degree {self.N}")
        return SpectrumPair(self.lam[: N + 1], self.mu[: N + 1], self.family_hint, self.ctx)

    def scaled(self, k1, k2) -> SpectrumPair:
        """The spectrum of ``k1 * (diagonal part) + k2 * (lowering part)``."""
        return SpectrumPair(tuple(k1 * x for x in self.lam), tuple(k2 * x for x in self.mu),
                            self.family_hint, self.ctx)

    def to_json(self) -> dict:
        out = {
            "N": self.N,
            "lambda": [to_json(x, self.ctx) for x in self.lam],
            "mu": [to_json(x, self.ctx) for x in self.mu],
        }
        if self.family_hint is not None:
            out["family_hint"] = self.family_hint
        return out

    @classmethod
    def from_json(cls, data: dict, ctx: Context | None = None) -> SpectrumPair:
        ctx = ctx or DEFAULT
        lam = [from_json(x, ctx) for x in data["lambda"]]
        mu = [from_json(x, ctx) for x in data["mu"]]
        if "N" in data and int(data["N"]) != len(lam) - 1:
            raise ValueError(f"N={data['N']} disagrees with {len(lam)} lambda entries")
        return cls(tuple(lam), tuple(mu), data.get("family_hint"), ctx)


def apply_abstract(spec: SpectrumPair, p: Poly) -> Poly:
    """``L p`` for the operator described by ``spec``."""
    if p.degree > spec.N:
        raise DegreeOverflow(f"degree {p.degree} exceeds spectrum length N={spec.N}")
    out = [0] * max(len(p), 1)
    for k, c in enumerate(p.coeffs):
        out[k] += spec.lam[k] * c
        if k:
            out[k - 1] += spec.mu[k] * c
    return Poly(out)


@dataclass(frozen=True)
class StructureConstants:
    omega: object
    b2: object
    c2: object
    b3: object = None
    c3: object = None

    def to_json(self, ctx: Context | None = None) -> dict:
        return {k: to_json(getattr(self, k), ctx) for k in ("omega", "b2", "c2", "b3", "c3")
                if getattr(self, k) is not None}


def _div(a, b, ctx: Context, what: str):
    if ctx.is_zero(b):
        raise DegenerateSeed(f"{what}: vanishing denominator")
    return a / b


def structure_constants(spec: SpectrumPair) -> StructureConstants:
    """``omega``, ``b2``, ``c2`` (and the quadratic-form ``b3``, ``c3``) from the first three levels."""
    if spec.N < 3:
        raise DegenerateSeed("need lambda_1..lambda_3")
    ctx = spec.ctx
    l1, l2, l3 = spec.lam[1:4]
    m1, m2 = spec.mu[1:3]
    omega = -1 - _div(l3, l1 - l2, ctx, "lambda_1 = lambda_2")
    # the n=1 rows of both linear recurrences, with lam_0 = mu_0 = 0
    b2 = omega * l1 - l2
    c2 = omega * m1 - m2
    b3 = -l1 * (l1 + b2)
    c3 = -m1 * (m1 + c2)
    return StructureConstants(omega, b2, c2, b3, c3)


def _extend_lists(lam: list, mu: list, omega, b2, c2, N: int) -> None:
    while len(lam) <= N:
        lam.append(omega * lam[-1] - lam[-2] - b2)
        mu.append(omega * mu[-1] - mu[-2] - c2)


def _first_coincidence(seq: Sequence, ctx: Context):
    for n in range(len(seq)):
        for m in range(n):
            if ctx.is_zero(seq[n] - seq[m], max(abs(seq[n]), abs(seq[m]))):
                return n, m
    return None


def extend_from_seed(l1, m1, l2, m2, l3, N: int, ctx: Context | None = None) -> SpectrumPair:
    """The unique admissible spectrum with the given five free values, to degree ``N``."""
    ctx = ctx or DEFAULT
    l1, m1, l2, m2, l3 = (as_scalar(x, ctx) for x in (l1, m1, l2, m2, l3))
    if N < 3:
        raise DegenerateSeed("extension needs N >= 3")
    lam3 = (0, l1, l2, l3)
    if _first_coincidence(lam3, ctx) is not None:
        raise DegenerateSeed("lambda_0..lambda_3 must be pairwise distinct")
    if ctx.is_zero(m1 - m2) or ctx.is_zero(m1) or ctx.is_zero(m2):
        raise DegenerateSeed("mu_0, mu_1, mu_2 must be pairwise distinct")
    if ctx.is_zero(m2 * l1 - m1 * l2, max(abs(m2 * l1), abs(m1 * l2))):
        raise DegenerateSeed("mu is proportional to lambda on the seed (affine relation)")
    m3 = l3 * (m2 - m1) / (l2 - l1)
    lam, mu = [0 * l1, l1, l2, l3], [0 * m1, m1, m2, m3]
    sc = structure_constants(SpectrumPair(tuple(lam), tuple(mu), ctx=ctx))
    _extend_lists(lam, mu, sc.omega, sc.b2, sc.c2, N)
    lam, mu = lam[: N + 1], mu[: N + 1]
    for name, seq in (("lambda", lam), ("mu", mu)):
        hit = _first_coincidence(seq, ctx)
        if hit is not None:
            raise DegenerateExtension(f"{name}_{hit[0]} = {name}_{hit[1]}")
    return SpectrumPair(tuple(lam), tuple(mu), ctx=ctx)


def extend(spec: SpectrumPair, N: int) -> SpectrumPair:
    """Continue an admissible spectrum with its own linear recurrences."""
    if N <= spec.N:
        return spec.truncate(N)
    sc = structure_constants(spec)
    lam, mu = list(spec.lam), list(spec.mu)
    _extend_lists(lam, mu, sc.omega, sc.b2, sc.c2, N)
    return SpectrumPair(tuple(lam), tuple(mu), spec.family_hint, spec.ctx)


def recurrence_residuals(spec: SpectrumPair, sc: StructureConstants | None = None) -> Iterator[tuple]:
    """Yield ``(n, lambda-residual, mu-residual)`` of the linear recurrences for n = 1..N-1."""
    sc = sc or structure_constants(spec)
    lam, mu = spec.lam, spec.mu
    for n in range(1, spec.N):
        yield (n,
               lam[n + 1] + lam[n - 1] - sc.omega * lam[n] + sc.b2,
               mu[n + 1] + mu[n - 1] - sc.omega * mu[n] + sc.c2)


class Violation(NamedTuple):
    rule: str
    index: int
    detail: str


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: tuple
    structure: StructureConstants | None

    def rules(self) -> set:
        return {v.rule for v in self.violations}

    def indices(self, rule: str) -> list:
        return [v.index for v in self.violations if v.rule == rule]


# rule ids
DISTINCT_LAMBDA = "a"
DISTINCT_MU = "b"
LINEAR_RECURRENCE = "c"
AFFINE = "d"
CROSS_RATIO = "e"


def _distinct_violations(seq, name, rule, ctx, start=0):
    out = []
    for n in range(start, len(seq)):
        for m in range(start, n):
            if ctx.is_zero(seq[n] - seq[m], max(abs(seq[n]), abs(seq[m]))):
                out.append(Violation(rule, n, f"{name}_{n} = {name}_{m}"))
    return out


def _consensus(values, ctx):
    """Index of the value that the largest number of entries agree with."""
    if all(is_exact(v) for v in values):
        best, _ = Counter(values).most_common(1)[0]
        return best
    counts = [sum(ctx.close(v, w) for w in values) for v in values]
    return values[counts.index(max(counts))]


def check_admissible(spec: SpectrumPair) -> AdmissibilityReport:
    """Run every admissibility rule and report all violations.

    Rules: (a) distinct lambda, (b) distinct mu including mu_0 = 0, (c) the two
    linear recurrences with one omega, (d) no affine relation mu = alpha*lambda + beta
    on n >= 1, (e) the cross ratio (lam_n-lam_m)/(mu_n-mu_m) depends only on n+m.
    """
    ctx = spec.ctx
    lam, mu, N = spec.lam, spec.mu, spec.N
    v: list[Violation] = []
    v += _distinct_violations(lam, "lambda", DISTINCT_LAMBDA, ctx)
    v += _distinct_violations(mu, "mu", DISTINCT_MU, ctx)

    sc = None
    try:
        sc = structure_constants(spec)
    except DegenerateSeed as exc:
        v.append(Violation(LINEAR_RECURRENCE, 1, str(exc)))
    if sc is not None:
        for n, rl, rm in recurrence_residuals(spec, sc):
            scale = max(abs(lam[n + 1]), abs(lam[n]), abs(lam[n - 1]), abs(sc.omega * lam[n]))
            if not ctx.is_zero(rl, scale):
                v.append(Violation(LINEAR_RECURRENCE, n, f"lambda recurrence residual {render(rl, ctx)}"))
            scale = max(abs(mu[n + 1]), abs(mu[n]), abs(mu[n - 1]), abs(sc.omega * mu[n]))
            if not ctx.is_zero(rm, scale):
                v.append(Violation(LINEAR_RECURRENCE, n, f"mu recurrence residual {render(rm, ctx)}"))

    if N >= 3 and not ctx.is_zero(lam[2] - lam[1]):
        alpha = (mu[2] - mu[1]) / (lam[2] - lam[1])
        beta = mu[1] - alpha * lam[1]
        if all(ctx.is_zero(mu[n] - alpha * lam[n] - beta, max(abs(mu[n]), abs(alpha * lam[n])))
               for n in range(3, N + 1)):
            v.append(Violation(AFFINE, 1, f"mu_n = {render(alpha, ctx)}*lambda_n + {render(beta, ctx)} for n >= 1"))

    for s in range(1, 2 * N):
        pairs = []
        for n in range(s, (s - 1) // 2, -1):
            m = s - n
            if n > N or m >= n or m < 0:
                continue
            if ctx.is_zero(mu[n] - mu[m]):
                continue
            pairs.append((n, m, (lam[n] - lam[m]) / (mu[n] - mu[m])))
        if len(pairs) < 2:
            continue
        ref = _consensus([g for _, _, g in pairs], ctx)
        for n, m, g in pairs:
            if not ctx.close(g, ref):
                v.append(Violation(CROSS_RATIO, n, f"pair ({n},{m}) gives {render(g, ctx)}, sum {s} expects {render(ref, ctx)}"))

    v.sort(key=lambda x: (x.rule, x.index))
    ok = not v
    return AdmissibilityReport(ok, tuple(v), sc if ok else None)
