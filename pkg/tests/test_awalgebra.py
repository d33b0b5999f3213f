from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twodiag.awalgebra import fit_dual_identity, verify_primary_identity
from twodiag.errors import FitFailed
from twodiag.families import (
    Bessel,
    Jacobi,
    LittleMinusOneJacobi,
    LittleQJacobi,
    StieltjesWigert,
    TrigCircle,
    family_spectrum,
)
from twodiag.scalars import Context
from twodiag.spectrum import SpectrumPair, extend_from_seed, recurrence_residuals, structure_constants

from conftest import rationals

HALF = F(1, 2)


def test_jacobi_primary_identity():
    spec = family_spectrum(Jacobi(F(1, 3), 2), 32)
    sc = structure_constants(spec)
    assert (sc.omega, sc.b2, sc.c2) == (2, 2, -2)
    rep = verify_primary_identity(spec, sc, 30)
    assert rep.residual == 0 and rep.degree_tested == 30
    assert verify_primary_identity(spec, replace(sc, b2=sc.b2 + 1), 30).residual == 1


def test_stieltjes_wigert_primary_identity():
    spec = family_spectrum(StieltjesWigert(HALF, inverted=True), 10)
    sc = structure_constants(spec)
    assert (sc.omega, sc.b2, sc.c2) == (F(5, 2), -HALF, -HALF)
    assert verify_primary_identity(spec, sc).residual == 0


def test_needs_headroom():
    with pytest.raises(ValueError):
        verify_primary_identity(family_spectrum(Jacobi(1, 2), 6), None, 5)


@given(seed=st.tuples(*(rationals(-6, 6, 6, nonzero=True) for _ in range(5))),
       idx=st.integers(1, 8), bump=rationals(-2, 2, 3, nonzero=True))
def test_streams_equal_linear_recurrence_residuals(seed, idx, bump):
    try:
        spec = extend_from_seed(*seed, N=8)
    except Exception:
        return
    mu = list(spec.mu)
    mu[idx] += bump
    spec = SpectrumPair(spec.lam, mu)
    sc = structure_constants(spec)
    rep = verify_primary_identity(spec, sc)
    rows = list(recurrence_residuals(spec, sc))
    assert [(n + 1, a, b) for n, a, b in rep.streams] == rows


def test_dual_identity_jacobi():
    spec = family_spectrum(Jacobi(0, 0), 21)
    rep = fit_dual_identity(spec, 2, 20)
    assert rep.residual == 0
    sc = structure_constants(spec)
    assert rep.fitted_constants == (-sc.b2, -sc.b3, -sc.c2, spec.mu[1] * (spec.lam[1] + sc.b2))


@pytest.mark.parametrize("tag", [Jacobi(1, 2), Bessel(5), LittleQJacobi(F(1, 3), F(1, 4), HALF),
                                 LittleMinusOneJacobi(HALF, 2)])
def test_dual_identity_families(tag):
    spec = family_spectrum(tag, 14)
    rep = fit_dual_identity(spec)
    assert rep.residual == 0
    sc = structure_constants(spec)
    assert rep.fitted_constants[:3] == (-sc.b2, -sc.b3, -sc.c2)


def test_dual_identity_trig_approx():
    ctx = Context()
    spec = family_spectrum(TrigCircle(F(1, 3), F(1, 5), HALF), 12, ctx)
    assert ctx.is_zero(fit_dual_identity(spec).residual)


def test_dual_identity_detects_late_perturbation():
    spec = family_spectrum(Jacobi(0, 0), 12)
    lam = list(spec.lam)
    lam[7] += 1
    assert fit_dual_identity(SpectrumPair(lam, spec.mu)).residual > 0


def test_dual_identity_early_perturbation_fails_fit():
    spec = family_spectrum(Jacobi(0, 0), 12)
    lam = list(spec.lam)
    lam[3] += 1
    with pytest.raises(FitFailed):
        fit_dual_identity(SpectrumPair(lam, spec.mu), 2)


def test_delta_row():
    spec = family_spectrum(Jacobi(1, 2), 8)
    rep = fit_dual_identity(spec)
    al, be, ga, de = rep.fitted_constants
    # on x^0: L^2 X 1 = lam_1^2 x + mu_1 lam_1, the rest vanish
    assert spec.lam[1] ** 2 == al * spec.lam[1] + be
    assert spec.mu[1] * spec.lam[1] == al * spec.mu[1] + de
