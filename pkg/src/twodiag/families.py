"""Named families of admissible spectra: classification, closed forms and weights.

Every admissible spectrum is, up to independent scalings ``lam -> k1*lam`` and
``mu -> k2*mu``, one of a short list of families, selected by the value of
``omega`` from the linear recurrences:

* ``omega > 2``: ``lam_n = L1 (q^n - 1) + L2 (q^-n - 1)`` (same for ``mu`` with
  ``M1, M2``), ``0 < q < 1``; the zero pattern of ``L1, L2, M1, M2`` picks the family;
* ``omega < -2``: the same with a negative base;
* ``-2 < omega < 2``: products of sines;
* ``omega = 2``: quadratics in ``n``;
* ``omega = -2``: linear in ``n`` with alternating signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Callable, ClassVar, NamedTuple, Sequence

from .eigenpoly import eigenpolynomials
from .errors import InvalidParams, NoKnownWeight, NotAdmissible, TwoDiagError
from .orthogonality import RecurrenceCoeffs
from .scalars import DEFAULT, Context, as_scalar, from_json, is_exact, q_pochhammer, render, sqrt, to_json
from .spectrum import SpectrumPair, check_admissible, structure_constants

__all__ = [
    "AltQCharlier",
    "Bessel",
    "ClassificationReport",
    "Degenerate",
    "FamilyTag",
    "Jacobi",
    "Laguerre",
    "LittleMinusOneJacobi",
    "LittleQJacobi",
    "LittleQLaguerre",
    "NegQVariant",
    "Positivity",
    "PositivityReport",
    "QKrawtchouk",
    "QLaguerre",
    "StieltjesWigert",
    "TrigCircle",
    "Unknown",
    "WeightData",
    "WeightKind",
    "classify",
    "classify_report",
    "discrete_orthogonality_residual",
    "family_recurrence",
    "family_spectrum",
    "family_u",
    "positivity_report",
    "tag_from_json",
    "tags_close",
    "weight_data",
]


# ---------------------------------------------------------------------------
# tags


_REGISTRY: dict[str, type] = {}


@dataclass(frozen=True)
class FamilyTag:
    family: ClassVar[str] = "FamilyTag"
    _scalars: ClassVar[tuple] = ()

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        _REGISTRY[cls.__name__] = cls
        cls.family = cls.__name__

    def __post_init__(self):
        for name in self._scalars:
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        self.validate()

    def validate(self) -> None:
        pass

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.compare}

    def __str__(self):
        def show(v):
            if isinstance(v, (FamilyTag, bool, str, int)):
                return str(v)
            if isinstance(v, dict):
                return "{" + ", ".join(f"{k}={show(x)}" for k, x in v.items()) + "}"
            return render(v)

        return f"{self.family}(" + ", ".join(f"{k}={show(v)}" for k, v in self.params().items()) + ")"

    def to_json(self, ctx: Context | None = None) -> dict:
        out = {}
        for k, v in self.params().items():
            if isinstance(v, FamilyTag):
                out[k] = v.to_json(ctx)
            elif isinstance(v, (bool, str)) or k == "N":
                out[k] = v
            elif isinstance(v, dict):
                out[k] = {kk: to_json(vv, ctx) for kk, vv in v.items()}
            else:
                out[k] = to_json(v, ctx)
        return {"family": self.family, "params": out}


def tag_from_json(data: dict, ctx: Context | None = None) -> FamilyTag:
    cls = _REGISTRY.get(data.get("family", ""))
    if cls is None:
        raise ValueError(f"unknown family {data.get('family')!r}")
    params = dict(data.get("params", {}))
    kwargs = {}
    for f in fields(cls):
        if f.name not in params:
            continue
        v = params[f.name]
        if f.name == "inner":
            kwargs[f.name] = tag_from_json(v, ctx)
        elif f.name == "constants":
            kwargs[f.name] = {k: from_json(x, ctx) for k, x in v.items()}
        elif f.name == "N":
            kwargs[f.name] = int(v)
        elif isinstance(v, (bool, str)):
            kwargs[f.name] = v
        else:
            kwargs[f.name] = from_json(v, ctx)
    return cls(**kwargs)


def _check_q(q) -> None:
    if not (0 < q < 1):
        raise InvalidParams(f"q must lie strictly between 0 and 1, got {q}")


def _nonzero(name, v) -> None:
    if v == 0:
        raise InvalidParams(f"{name} must be nonzero")


@dataclass(frozen=True)
class LittleQJacobi(FamilyTag):
    a: object
    b: object
    q: object
    _scalars: ClassVar[tuple] = ("a", "b", "q")

    def validate(self):
        _check_q(self.q)
        _nonzero("a", self.a)
        _nonzero("b", self.b)


@dataclass(frozen=True)
class QKrawtchouk(FamilyTag):
    """Little q-Jacobi with ``b = q**(-N-1)``: finitely many orthogonal polynomials."""

    a: object
    N: int
    q: object
    _scalars: ClassVar[tuple] = ("a", "q")

    def validate(self):
        _check_q(self.q)
        _nonzero("a", self.a)
        if int(self.N) != self.N or self.N < 1:
            raise InvalidParams("N must be a positive integer")
        object.__setattr__(self, "N", int(self.N))

    @property
    def b(self):
        return self.q ** (-self.N - 1)


@dataclass(frozen=True)
class LittleQLaguerre(FamilyTag):
    a: object
    q: object
    _scalars: ClassVar[tuple] = ("a", "q")

    def validate(self):
        _check_q(self.q)
        _nonzero("a", self.a)


@dataclass(frozen=True)
class QLaguerre(FamilyTag):
    a: object
    q: object
    _scalars: ClassVar[tuple] = ("a", "q")

    def validate(self):
        _check_q(self.q)
        _nonzero("a", self.a)


@dataclass(frozen=True)
class AltQCharlier(FamilyTag):
    """``inverted`` selects the same formulas in base ``1/q``."""

    a: object
    q: object
    inverted: bool = False
    _scalars: ClassVar[tuple] = ("a", "q")

    def validate(self):
        _check_q(self.q)
        _nonzero("a", self.a)


@dataclass(frozen=True)
class StieltjesWigert(FamilyTag):
    """``inverted`` selects the same formulas in base ``1/q``."""

    q: object
    inverted: bool = False
    _scalars: ClassVar[tuple] = ("q",)

    def validate(self):
        _check_q(self.q)


_Q_FAMILIES = (LittleQJacobi, QKrawtchouk, LittleQLaguerre, QLaguerre, AltQCharlier, StieltjesWigert)


@dataclass(frozen=True)
class NegQVariant(FamilyTag):
    """A q-family evaluated at the negative base ``-inner.q``."""

    inner: FamilyTag

    def validate(self):
        if not isinstance(self.inner, _Q_FAMILIES):
            raise InvalidParams("NegQVariant wraps a q-family")


@dataclass(frozen=True)
class TrigCircle(FamilyTag):
    alpha: object
    beta: object
    omega: object
    _scalars: ClassVar[tuple] = ("alpha", "beta", "omega")

    def validate(self):
        w = DEFAULT.to_mp(self.omega)
        if not (0 < w < DEFAULT.mp.pi / 2):
            raise InvalidParams("omega must lie strictly between 0 and pi/2")

    def angles(self, ctx: Context | None = None) -> tuple:
        """``(omega*(alpha+beta+2), omega*(1+alpha))`` reduced into ``[0, pi)``."""
        ctx = ctx or DEFAULT
        mp = ctx.mp
        w = ctx.to_mp(self.omega)
        th_l = w * ctx.to_mp(self.alpha + self.beta + 2)
        th_m = w * ctx.to_mp(1 + self.alpha)
        return mp.fmod(mp.fmod(th_l, mp.pi) + mp.pi, mp.pi), mp.fmod(mp.fmod(th_m, mp.pi) + mp.pi, mp.pi)

    def canonical(self, ctx: Context | None = None) -> TrigCircle:
        """The representative whose angles lie in ``[0, pi)``; it has the same spectrum up to sign."""
        ctx = ctx or DEFAULT
        th_l, th_m = self.angles(ctx)
        w = ctx.to_mp(self.omega)
        alpha = th_m / w - 1
        return TrigCircle(alpha, th_l / w - 2 - alpha, w)


@dataclass(frozen=True)
class Jacobi(FamilyTag):
    alpha: object
    beta: object
    _scalars: ClassVar[tuple] = ("alpha", "beta")


@dataclass(frozen=True)
class Laguerre(FamilyTag):
    alpha: object
    _scalars: ClassVar[tuple] = ("alpha",)


@dataclass(frozen=True)
class Bessel(FamilyTag):
    a: object
    _scalars: ClassVar[tuple] = ("a",)


@dataclass(frozen=True)
class LittleMinusOneJacobi(FamilyTag):
    alpha: object
    beta: object
    _scalars: ClassVar[tuple] = ("alpha", "beta")


@dataclass(frozen=True)
class Degenerate(FamilyTag):
    """A spectrum obeying the recurrences whose functional is degenerate.

    ``constants`` holds the solution constants (keys ``q, L1, L2, M1, M2`` for
    the geometric case, ``L1, L2, M1, M2`` for the quadratic case, ``L0, L1, M0, M1``
    for the alternating case); only they take part in equality.
    """

    reason: str = field(default="", compare=False)
    constants: dict = field(default_factory=dict)

    def __hash__(self):
        return hash(tuple(sorted(self.constants.items())))

    def params(self) -> dict:
        return {"reason": self.reason, "constants": self.constants}


@dataclass(frozen=True)
class Unknown(FamilyTag):
    reason: str = ""


def tags_close(a: FamilyTag, b: FamilyTag, ctx: Context | None = None) -> bool:
    """Tag equality with tolerance on approximate parameters."""
    ctx = ctx or DEFAULT
    if type(a) is not type(b):
        return False
    if isinstance(a, TrigCircle):
        a, b = a.canonical(ctx), b.canonical(ctx)
    pa, pb = a.params(), b.params()
    if isinstance(a, Degenerate):
        pa, pb = a.constants, b.constants
    if pa.keys() != pb.keys():
        return False
    for k in pa:
        x, y = pa[k], pb[k]
        if isinstance(x, FamilyTag):
            if not tags_close(x, y, ctx):
                return False
        elif isinstance(x, (bool, str)) or isinstance(y, (bool, str)):
            if k != "reason" and x != y:
                return False
        elif not ctx.close(x, y):
            return False
    return True


# ---------------------------------------------------------------------------
# closed forms


class _QForm(NamedTuple):
    base: object
    L1: object
    L2: object
    M1: object
    M2: object


def _q_form(tag: FamilyTag) -> _QForm:
    """Base and solution constants of a q-family, following sign flips and inversions."""
    negate = isinstance(tag, NegQVariant)
    tag = _core(tag)
    q = -tag.q if negate else tag.q
    p = 1 / q if _inverted(tag) else q
    if isinstance(tag, (LittleQJacobi, QKrawtchouk)):
        a, b = tag.a, tag.b
        return _QForm(p, a * b * p, 1, -a, -1)
    if isinstance(tag, LittleQLaguerre):
        return _QForm(p, 0, -1, tag.a, 1)
    if isinstance(tag, QLaguerre):
        return _QForm(p, tag.a, 0, tag.a, 1)
    if isinstance(tag, AltQCharlier):
        return _QForm(p, tag.a, -1, 0, 1)
    if isinstance(tag, StieltjesWigert):
        return _QForm(p, 1, 0, 0, 1)
    raise InvalidParams(f"{tag.family} is not a q-family")


def _inverted(tag: FamilyTag) -> bool:
    return bool(getattr(tag, "inverted", False))


def _core(tag: FamilyTag) -> FamilyTag:
    return tag.inner if isinstance(tag, NegQVariant) else tag


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _spectrum_functions(tag: FamilyTag, ctx: Context) -> tuple:
    if isinstance(tag, (NegQVariant,) + _Q_FAMILIES):
        f = _q_form(tag)
        p = f.base
        return (lambda n: f.L1 * (p**n - 1) + f.L2 * (p**-n - 1),
                lambda n: f.M1 * (p**n - 1) + f.M2 * (p**-n - 1))
    if isinstance(tag, Jacobi):
        al, be = tag.alpha, tag.beta
        return (lambda n: -n * (n + al + be + 1), lambda n: n * (n + al))
    if isinstance(tag, Laguerre):
        al = tag.alpha
        return (lambda n: as_scalar(n), lambda n: -n * (n + al))
    if isinstance(tag, Bessel):
        a = tag.a
        return (lambda n: n * (n + a - 1), lambda n: as_scalar(2 * n))
    if isinstance(tag, LittleMinusOneJacobi):
        al, be = tag.alpha, tag.beta
        return (lambda n: -_sign(n) * (2 * n + al + be + 1) + al + be + 1,
                lambda n: _sign(n) * (2 * n + al) - al)
    if isinstance(tag, TrigCircle):
        mp = ctx.mp
        w, al, be = (ctx.to_mp(x) for x in (tag.omega, tag.alpha, tag.beta))
        return (lambda n: mp.sin(w * n) * mp.sin(w * (n + al + be + 1)),
                lambda n: -mp.sin(w * n) * mp.sin(w * (n + al)))
    if isinstance(tag, Degenerate):
        c = tag.constants
        if "q" in c:
            p = c["q"]
            return (lambda n: c["L1"] * (p**n - 1) + c["L2"] * (p**-n - 1),
                    lambda n: c["M1"] * (p**n - 1) + c["M2"] * (p**-n - 1))
        if "L0" in c:
            return (lambda n: _sign(n) * (c["L1"] * n + c["L0"]) - c["L0"],
                    lambda n: _sign(n) * (c["M1"] * n + c["M0"]) - c["M0"])
        if {"L1", "L2", "M1", "M2"} <= c.keys():
            return (lambda n: c["L2"] * n * n + c["L1"] * n, lambda n: c["M2"] * n * n + c["M1"] * n)
    raise InvalidParams(f"no closed-form spectrum for {tag.family}")


def family_spectrum(tag: FamilyTag, N: int, ctx: Context | None = None) -> SpectrumPair:
    """The closed-form spectrum of ``tag`` to degree ``N``."""
    ctx = ctx or DEFAULT
    lam, mu = _spectrum_functions(tag, ctx)
    try:
        return SpectrumPair.from_functions(lam, mu, N, tag.family, ctx)
    except ZeroDivisionError as exc:
        raise InvalidParams(str(exc)) from exc


def _lqj_terms(a, b, p):
    def A(n):
        return p**n * (1 - a * p ** (n + 1)) * (1 - a * b * p ** (n + 1)) / (
            (1 - a * b * p ** (2 * n + 1)) * (1 - a * b * p ** (2 * n + 2)))

    def C(n):
        return a * p**n * (1 - p**n) * (1 - b * p**n) / (
            (1 - a * b * p ** (2 * n + 1)) * (1 - a * b * p ** (2 * n)))

    return (lambda n: A(n) + C(n)), (lambda n: A(n - 1) * C(n))


def _recurrence_functions(tag: FamilyTag, ctx: Context) -> tuple:
    core = _core(tag)
    if isinstance(core, _Q_FAMILIES):
        p = _q_form(tag).base
        if isinstance(core, (LittleQJacobi, QKrawtchouk)):
            return _lqj_terms(core.a, core.b, p)
        if isinstance(core, LittleQLaguerre):
            a = core.a
            return (lambda n: (1 + a) * p**n - a * (1 + p) * p ** (2 * n),
                    lambda n: a * p ** (2 * n - 1) * (1 - p**n) * (1 - a * p**n))
        if isinstance(core, QLaguerre):
            a = core.a
            return (lambda n: (p + 1) / a * p ** (-2 * n - 1) - (a + 1) / a * p ** (-n),
                    lambda n: p ** (-4 * n + 1) / a**2 * (1 - p**n) * (1 - a * p**n))
        if isinstance(core, AltQCharlier):
            a = core.a
            return (lambda n: (1 - p ** (n + 1)) / ((1 - p) * (1 + a * p ** (2 * n + 1)))
                    - (1 - p**n) / ((1 - p) * (1 + a * p ** (2 * n - 1))),
                    lambda n: a * p ** (3 * n - 2) * (1 - p**n) * (1 + a * p ** (n - 1)) / (
                        (1 + a * p ** (2 * n)) * (1 + a * p ** (2 * n - 2)) * (1 + a * p ** (2 * n - 1)) ** 2))
        if isinstance(core, StieltjesWigert):
            return (lambda n: (p + 1) * p ** (-2 * n - 1) - p ** (-n),
                    lambda n: p ** (1 - 4 * n) * (1 - p**n))
    if isinstance(tag, Jacobi):
        al, be = tag.alpha, tag.beta

        def b_jac(n):
            if n == 0:
                return (al - be) / (2 * (al + be + 2)) + as_scalar(1) / 2
            s = 2 * n + al + be
            return (al**2 - be**2) / (2 * s * (s + 2)) + as_scalar(1) / 2

        def u_jac(n):
            s = 2 * n + al + be
            return n * (n + al) * (n + be) * (n + al + be) / ((s + 1) * (s - 1) * s**2)

        return b_jac, u_jac
    if isinstance(tag, Laguerre):
        al = tag.alpha
        return (lambda n: 2 * n + al + 1), (lambda n: n * (n + al))
    if isinstance(tag, Bessel):
        a = tag.a
        # (a-2)/(2n+a) - (a-2)/(2n+a-2) over a common denominator, which stays finite at n=0
        return (lambda n: -2 * (a - 2) / ((2 * n + a) * (2 * n + a - 2)) if n else -2 / a,
                lambda n: -4 * n * (n + a - 2) / ((2 * n + a - 1) * (2 * n + a - 3) * (2 * n + a - 2) ** 2))
    if isinstance(tag, LittleMinusOneJacobi):
        al, be = tag.alpha, tag.beta

        def theta(n):
            return 1 - n % 2

        def b_m1(n):
            if n == 0:
                # the printed numerator is (al+be)(1+al) at n=0; cancel it so al+be=0 works
                return (1 + al) / (al + be + 2)
            return (_sign(n) * ((2 * n + 1) * al + al * be + al**2 + _sign(n) * be)
                    / ((2 * n + al + be) * (2 * n + 2 + al + be)))

        return (b_m1,
                lambda n: (n + (1 - theta(n)) * al) * (n + be + theta(n) * al) / (2 * n + al + be) ** 2)
    if isinstance(tag, TrigCircle):
        mp = ctx.mp
        w, al, be = (ctx.to_mp(x) for x in (tag.omega, tag.alpha, tag.beta))
        s = mp.sin
        ab = tag.alpha + tag.beta  # kept exact so that sin(w*0) is exactly zero

        def b_trig(n):
            return (s(w * (n + 1)) * s(w * (n + al + 1)) / (s(w) * s(w * ctx.to_mp(2 * n + ab + 2)))
                    - s(w * n) * s(w * (n + al)) / (s(w) * s(w * ctx.to_mp(2 * n + ab))) if n else
                    s(w) * s(w * (al + 1)) / (s(w) * s(w * ctx.to_mp(ab + 2))))

        def u_trig(n):
            return (s(w * n) * s(w * ctx.to_mp(n + tag.beta)) * s(w * ctx.to_mp(n + tag.alpha))
                    * s(w * ctx.to_mp(n + ab))
                    / (s(w * ctx.to_mp(2 * n + ab + 1)) * s(w * ctx.to_mp(2 * n + ab - 1))
                       * s(w * ctx.to_mp(2 * n + ab)) ** 2))

        return b_trig, u_trig
    raise InvalidParams(f"no closed-form recurrence for {tag.family}")


def family_recurrence(tag: FamilyTag, N: int, ctx: Context | None = None) -> RecurrenceCoeffs:
    """Closed-form ``b_0..b_{N-1}`` and ``u_1..u_{N-1}`` (same shape as the spectrum route)."""
    ctx = ctx or DEFAULT
    bf, uf = _recurrence_functions(tag, ctx)
    try:
        return RecurrenceCoeffs([bf(n) for n in range(N)], [uf(n) for n in range(1, N)])
    except ZeroDivisionError as exc:
        raise InvalidParams(f"closed form has a vanishing denominator: {exc}") from exc


def family_u(tag: FamilyTag, n: int, ctx: Context | None = None):
    """The closed-form ``u_n`` alone, for indices past a finite family's range."""
    return _recurrence_functions(tag, ctx or DEFAULT)[1](n)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationReport:
    tag: FamilyTag
    structure: object
    constants: dict
    kappa1: object = None
    kappa2: object = None
    violations: tuple = ()

    def to_json(self, ctx: Context | None = None) -> dict:
        out = {"tag": self.tag.to_json(ctx)}
        if self.structure is not None:
            out["structure"] = self.structure.to_json(ctx)
        out["constants"] = {k: to_json(v, ctx) for k, v in self.constants.items()}
        if self.kappa1 is not None:
            out["kappa1"] = to_json(self.kappa1, ctx)
            out["kappa2"] = to_json(self.kappa2, ctx)
        out["violations"] = [{"rule": v.rule, "index": v.index, "detail": v.detail} for v in self.violations]
        return out


_DEGENERATE_RULES = {"b", "d"}


def _zero(ctx: Context, x, scale=1) -> bool:
    return ctx.is_zero(x, scale)


def _q_constants(spec: SpectrumPair, p) -> dict:
    l1, l2 = spec.lam[1], spec.lam[2]
    m1, m2 = spec.mu[1], spec.mu[2]
    den = (p + 1) * (p - 1) ** 2
    return {
        "q": p,
        "L1": (p * l2 - (p + 1) * l1) / den,
        "L2": p**2 * (l2 - (p + 1) * l1) / den,
        "M1": (p * m2 - (p + 1) * m1) / den,
        "M2": p**2 * (m2 - (p + 1) * m1) / den,
    }


def _q_base(omega, ctx: Context):
    """The root of ``p + 1/p = omega`` inside the unit interval (negative when omega < -2)."""
    disc = sqrt(omega * omega - 4, ctx)
    return (omega - disc) / 2 if omega > 0 else (omega + disc) / 2


def _find_krawtchouk(b, p, ctx: Context):
    power = 1 / p
    for n in range(1, 400):
        power = power / p  # p**(-n-1)
        if ctx.close(b, power):
            return n
        if abs(power) > 2 * abs(b) + 2:
            return None
    return None


def _classify_q(c: dict, ctx: Context):
    p = c["q"]
    L1, L2, M1, M2 = c["L1"], c["L2"], c["M1"], c["M2"]
    sL = max(abs(L1), abs(L2))
    sM = max(abs(M1), abs(M2))
    z1, z2 = _zero(ctx, L1, sL), _zero(ctx, L2, sL)
    w1, w2 = _zero(ctx, M1, sM), _zero(ctx, M2, sM)
    q = abs(p)

    def wrap(tag):
        return NegQVariant(tag) if p < 0 else tag

    if not (z1 or z2 or w1 or w2):
        a = M1 / M2
        b = L1 / (L2 * a * p)
        n = _find_krawtchouk(b, p, ctx)
        if n is not None and n >= 1:
            return wrap(QKrawtchouk(a, n, q)), L2, -M2
        return wrap(LittleQJacobi(a, b, q)), L2, -M2
    if z1 and not (z2 or w1 or w2):
        return wrap(LittleQLaguerre(M1 / M2, q)), -L2, M2
    if z2 and not (z1 or w1 or w2):
        a = M1 / M2
        return wrap(QLaguerre(a, q)), L1 / a, M2
    if w1 and not (z1 or z2 or w2):
        return wrap(AltQCharlier(-L1 / L2, q)), -L2, M2
    if w2 and not (z1 or z2 or w1):
        return wrap(AltQCharlier(-L2 / L1, q, inverted=True)), -L1, M1
    if z2 and w1 and not (z1 or w2):
        return wrap(StieltjesWigert(q)), L1, M2
    if z1 and w2 and not (z2 or w1):
        return wrap(StieltjesWigert(q, inverted=True)), L2, M1
    return None


def _classify_quadratic(spec: SpectrumPair, ctx: Context):
    l1, l2, m1, m2 = spec.lam[1], spec.lam[2], spec.mu[1], spec.mu[2]
    L2 = (l2 - 2 * l1) / 2
    M2 = (m2 - 2 * m1) / 2
    c = {"L1": l1 - L2, "L2": L2, "M1": m1 - M2, "M2": M2}
    zL = _zero(ctx, L2, max(abs(l1), abs(l2)))
    zM = _zero(ctx, M2, max(abs(m1), abs(m2)))
    if not zL and not zM:
        alpha = c["M1"] / M2
        return c, (Jacobi(alpha, c["L1"] / L2 - alpha - 1), -L2, M2)
    if zL and not zM:
        return c, (Laguerre(c["M1"] / M2), c["L1"], -M2)
    if zM and not zL:
        return c, (Bessel(c["L1"] / L2 + 1), L2, c["M1"] / 2)
    return c, None


def _classify_alternating(spec: SpectrumPair, ctx: Context):
    l1, l2, m1, m2 = spec.lam[1], spec.lam[2], spec.mu[1], spec.mu[2]
    L1, M1 = l2 / 2, m2 / 2
    c = {"L0": -(l1 + L1) / 2, "L1": L1, "M0": -(m1 + M1) / 2, "M1": M1}
    if _zero(ctx, L1, abs(l1)) or _zero(ctx, M1, abs(m1)):
        return c, None
    k1, k2 = -L1 / 2, M1 / 2
    s = -c["L0"] / k1
    alpha = c["M0"] / k2
    return c, (LittleMinusOneJacobi(alpha, s - alpha - 1), k1, k2)


def _classify_trig(spec: SpectrumPair, omega, ctx: Context):
    mp = ctx.mp
    vals = [ctx.to_mp(x) for x in (spec.lam[1], spec.lam[2], spec.mu[1], spec.mu[2], omega)]
    if any(isinstance(v, mp.mpc) and not ctx.is_zero(v.imag) for v in vals):
        return {}, None
    l1, l2, m1, m2, om = (mp.re(v) for v in vals)
    w = mp.acos(om / 2) / 2
    cw, sw = mp.cos(w), mp.sin(w)

    def angle(x1, x2):
        th = mp.atan2(2 * x1 * cw * sw, x2 - 2 * x1 * cw * cw)
        return mp.fmod(mp.fmod(th, mp.pi) + mp.pi, mp.pi)

    th_l, th_m = angle(l1, l2), angle(m1, m2)
    c = {"omega": w, "theta_lambda": th_l, "theta_mu": th_m}
    if ctx.is_zero(mp.sin(th_l)) or ctx.is_zero(mp.sin(th_m)):
        return c, None
    k1 = l1 / (sw * mp.sin(th_l))
    k2 = -m1 / (sw * mp.sin(th_m))
    alpha = th_m / w - 1
    return c, (TrigCircle(alpha, th_l / w - 2 - alpha, w), k1, k2)


def classify_report(spec: SpectrumPair) -> ClassificationReport:
    """Classify ``spec``, returning the tag together with constants and scale factors.

    Spectra whose only defects are coinciding ``mu`` values or an affine relation
    between ``mu`` and ``lambda`` come back as :class:`Degenerate`; any other
    violation raises :class:`NotAdmissible`.
    """
    ctx = spec.ctx
    if spec.N < 4:
        raise ValueError("classification needs N >= 4")
    report = check_admissible(spec)
    rules = report.rules()
    if rules - _DEGENERATE_RULES:
        raise NotAdmissible(report.violations)
    sc = structure_constants(spec)
    omega = sc.omega
    if not report.admissible:
        constants = {}
        try:
            if ctx.is_zero(omega - 2, 2):
                constants, _ = _classify_quadratic(spec, ctx)
            elif ctx.is_zero(omega + 2, 2):
                constants, _ = _classify_alternating(spec, ctx)
            elif abs(omega) > 2:
                constants = _q_constants(spec, _q_base(omega, ctx))
        except (ZeroDivisionError, TwoDiagError):
            constants = {}
        shown = [v.detail for v in report.violations[:3]]
        more = len(report.violations) - len(shown)
        reason = "; ".join(shown) + (f"; and {more} more" if more > 0 else "")
        return ClassificationReport(Degenerate(reason, constants), sc, constants, violations=report.violations)

    found = None
    if ctx.is_zero(omega - 2, 2):
        constants, found = _classify_quadratic(spec, ctx)
    elif ctx.is_zero(omega + 2, 2):
        constants, found = _classify_alternating(spec, ctx)
    elif abs(omega) > 2:
        constants = _q_constants(spec, _q_base(omega, ctx))
        found = _classify_q(constants, ctx)
    else:
        constants, found = _classify_trig(spec, omega, ctx)
    if found is None:
        return ClassificationReport(Unknown("solution constants match no listed pattern"), sc, constants)
    tag, k1, k2 = found
    return ClassificationReport(tag, sc, constants, k1, k2)


def classify(spec: SpectrumPair) -> FamilyTag:
    return classify_report(spec).tag


# ---------------------------------------------------------------------------
# weights


class WeightKind(Enum):
    DISCRETE_INFINITE = "discrete_infinite"
    DISCRETE_FINITE = "discrete_finite"
    CONTINUOUS_INTERVAL = "continuous_interval"
    CIRCLE_VERTICES = "circle_vertices"


class Positivity(Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not_positive"
    COMPLEX = "complex"


@dataclass(frozen=True)
class WeightData:
    """Support and weights.  Discrete kinds expose ``point(s)`` and ``weight(s)``;
    the interval kind exposes ``density(x)`` (unnormalised) on ``interval``."""

    kind: WeightKind | None
    positivity: Positivity
    size: int | None = None
    point: Callable | None = None
    weight: Callable | None = None
    interval: tuple | None = None
    density: Callable | None = None

    def points(self, count: int | None = None) -> list:
        count = self.size if self.size is not None else count
        return [self.point(s) for s in range(count)]

    def weights(self, count: int | None = None) -> list:
        count = self.size if self.size is not None else count
        return [self.weight(s) for s in range(count)]


def weight_data(tag: FamilyTag, ctx: Context | None = None) -> WeightData:
    ctx = ctx or DEFAULT
    core = _core(tag)
    if isinstance(core, (LittleQJacobi, QKrawtchouk)):
        p = _q_form(tag).base
        a = core.a
        if isinstance(core, QKrawtchouk):
            n_pts = core.N
            pos = all(w > 0 for w in (
                (a * p) ** s * q_pochhammer(p ** (-n_pts), p, s) / q_pochhammer(p, p, s) for s in range(n_pts + 1)))
            return WeightData(WeightKind.DISCRETE_FINITE,
                              Positivity.POSITIVE if pos else Positivity.NOT_POSITIVE, n_pts + 1,
                              point=lambda s: p**s,
                              weight=lambda s: (a * p) ** s * q_pochhammer(p ** (-n_pts), p, s) / q_pochhammer(p, p, s))
        b = core.b
        if p > 0:
            pos = 0 < a < 1 / p and b < 1 / p
        else:
            pos = a < 0 and abs(a) < 1 / abs(p) and b < 1 / abs(p)
        return WeightData(WeightKind.DISCRETE_INFINITE, Positivity.POSITIVE if pos else Positivity.NOT_POSITIVE,
                          point=lambda s: p**s,
                          weight=lambda s: (a * p) ** s * q_pochhammer(b * p, p, s) / q_pochhammer(p, p, s))
    if isinstance(tag, Jacobi):
        al, be = ctx.to_mp(tag.alpha), ctx.to_mp(tag.beta)
        pos = tag.alpha > -1 and tag.beta > -1
        return WeightData(WeightKind.CONTINUOUS_INTERVAL, Positivity.POSITIVE if pos else Positivity.NOT_POSITIVE,
                          interval=(0, 1), density=lambda x: ctx.mp.power(x, al) * ctx.mp.power(1 - x, be))
    if isinstance(tag, Laguerre):
        al = ctx.to_mp(tag.alpha)
        return WeightData(WeightKind.CONTINUOUS_INTERVAL,
                          Positivity.POSITIVE if tag.alpha > -1 else Positivity.NOT_POSITIVE,
                          interval=(0, ctx.mp.inf), density=lambda x: ctx.mp.power(x, al) * ctx.mp.exp(-x))
    if isinstance(tag, LittleMinusOneJacobi):
        al, be = ctx.to_mp(tag.alpha), ctx.to_mp(tag.beta)
        mp = ctx.mp
        pos = tag.alpha > -1 and tag.beta > -1
        return WeightData(WeightKind.CONTINUOUS_INTERVAL, Positivity.POSITIVE if pos else Positivity.NOT_POSITIVE,
                          interval=(-1, 1),
                          density=lambda x: mp.power(abs(x), al) * (1 + x) * mp.power(1 - x * x, (be - 1) / 2))
    if isinstance(tag, TrigCircle):
        beta = tag.beta
        if not (is_exact(beta) and beta == int(beta) and beta <= -2):
            raise NoKnownWeight("circle vertices need beta = -N-1 with N >= 1")
        n_pts = int(-beta - 1)
        mp = ctx.mp
        w, al = ctx.to_mp(tag.omega), ctx.to_mp(tag.alpha)
        q = mp.expj(2 * w)
        return WeightData(WeightKind.CIRCLE_VERTICES, Positivity.COMPLEX, n_pts + 1,
                          point=lambda s: mp.expj(w * (2 * s - n_pts)),
                          weight=lambda s: q_pochhammer(q ** (-n_pts), q, s) * q ** ((al + 1) * s)
                          / q_pochhammer(q, q, s))
    if isinstance(tag, Bessel):
        return WeightData(None, Positivity.NOT_POSITIVE)
    raise NoKnownWeight(f"no weight is known for {tag.family}")


class OrthogonalityResidual(NamedTuple):
    residual: object
    tail_bound: object
    terms: int


def discrete_orthogonality_residual(tag: FamilyTag, polys: Sequence | None = None, nmax: int = 6,
                                    truncation: int = 200, ctx: Context | None = None) -> OrthogonalityResidual:
    """Largest normalised off-diagonal entry of the discrete Gram matrix.

    Entries are ``sum_s w_s P_n(x_s) P_m(x_s)`` divided by the square root of
    the two diagonal sums.  Finite supports with exact data are summed exactly
    and report an exact residual; infinite supports are cut after
    ``truncation`` terms and come with an estimated geometric tail bound.
    """
    ctx = ctx or DEFAULT
    wd = weight_data(tag, ctx)
    if wd.kind not in (WeightKind.DISCRETE_FINITE, WeightKind.DISCRETE_INFINITE, WeightKind.CIRCLE_VERTICES):
        raise NoKnownWeight(f"{tag.family} has no discrete support")
    if polys is None:
        polys = eigenpolynomials(family_spectrum(tag, nmax, ctx), nmax)
    polys = list(polys)[: nmax + 1]
    count = wd.size if wd.size is not None else truncation
    xs, ws = wd.points(count), wd.weights(count)
    exact = all(is_exact(v) for v in xs + ws) and all(is_exact(c) for p in polys for c in p.coeffs)
    if not exact:
        xs = [ctx.to_mp(x) for x in xs]
        ws = [ctx.to_mp(w) for w in ws]
    vals = [[p(x) for x in xs] for p in polys]
    K = len(polys)
    G = [[sum(w * vals[n][s] * vals[m][s] for s, w in enumerate(ws)) for m in range(K)] for n in range(K)]
    off = [(n, m) for n in range(K) for m in range(K) if n != m]
    if exact and all(G[n][m] == 0 for n, m in off):
        residual = as_scalar(0)
    else:
        mp = ctx.mp
        residual = max((abs(ctx.to_mp(G[n][m])) / mp.sqrt(abs(ctx.to_mp(G[n][n]) * ctx.to_mp(G[m][m])))
                        for n, m in off), default=mp.mpf(0))
    tail = as_scalar(0)
    if wd.size is None:
        mp = ctx.mp
        w_last, w_prev = abs(ctx.to_mp(wd.weight(count))), abs(ctx.to_mp(wd.weight(count - 1)))
        rho = w_last / w_prev if w_prev else mp.mpf(0)
        x_last = ctx.to_mp(wd.point(count))
        big = max(abs(ctx.to_mp(p(x_last))) for p in polys) ** 2
        diag = min(abs(ctx.to_mp(G[n][n])) for n in range(K))
        tail = mp.inf if rho >= 1 else w_last * big / ((1 - rho) * diag)
    return OrthogonalityResidual(residual, tail, count)


# ---------------------------------------------------------------------------
# positivity


class PositivityKind(Enum):
    PREFIX_POSITIVE = "PrefixPositive"
    SIGN_CHANGE_AT = "SignChangeAt"
    COMPLEX_ENTRIES = "ComplexEntries"


@dataclass(frozen=True)
class PositivityReport:
    kind: PositivityKind
    n: int | None = None

    def __str__(self):
        return self.kind.value if self.n is None else f"{self.kind.value}({self.n})"


def positivity_report(rc: RecurrenceCoeffs, ctx: Context | None = None) -> PositivityReport:
    """Scan the computed prefix: complex entries first, then the first ``u_n <= 0``."""
    ctx = ctx or DEFAULT
    for k, x in enumerate(rc.b + rc.u):
        if not ctx.is_zero(getattr(x, "imag", 0), abs(x)):
            n = k if k < len(rc.b) else k - len(rc.b) + 1
            return PositivityReport(PositivityKind.COMPLEX_ENTRIES, n)
    for n, x in enumerate(rc.u, start=1):
        x = getattr(x, "real", x)
        if x <= 0 or ctx.is_zero(x):
            return PositivityReport(PositivityKind.SIGN_CHANGE_AT, n)
    return PositivityReport(PositivityKind.PREFIX_POSITIVE)


def find_tag_class(name: str) -> type:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None

