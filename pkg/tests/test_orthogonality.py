from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twodiag.eigenpoly import eigenpolynomials
from twodiag.errors import DegenerateFunctional, InconsistentSpectrum, NotOrthogonal
from twodiag.families import (
    Jacobi,
    Laguerre,
    LittleMinusOneJacobi,
    LittleQJacobi,
    StieltjesWigert,
    family_spectrum,
)
from twodiag.orthogonality import (
    MomentFunctional,
    RecurrenceCoeffs,
    gram_schmidt_monic,
    moment_rows,
    moments_from_spectrum,
    recurrence_from_polys,
    recurrence_from_spectrum,
    recurrence_rows,
    symmetry_check,
)
from twodiag.polynomial import Poly
from twodiag.spectrum import SpectrumPair, extend_from_seed

from conftest import rationals

HALF = F(1, 2)


def seeded(N):
    def build(t):
        try:
            return extend_from_seed(*t, N=N)
        except Exception:
            return None
    return st.tuples(*(rationals(-6, 6, 6, nonzero=True) for _ in range(5))).map(build).filter(
        lambda s: s is not None)


# moments

def test_legendre_moments(oracle):
    mom = moments_from_spectrum(family_spectrum(Jacobi(0, 0), 4))
    assert list(mom.c) == oracle("legendre_moments")
    assert list(mom.hankel) == oracle("legendre_hankel")


def test_jacobi_moments_match_beta_integrals(oracle):
    mom = moments_from_spectrum(family_spectrum(Jacobi(1, 2), 5))
    assert list(mom.c) == oracle("jacobi_1_2_moments")[:11]


def test_stieltjes_wigert_moments(oracle):
    mom = moments_from_spectrum(family_spectrum(StieltjesWigert(HALF), 4))
    assert list(mom.c[:5]) == [1, 2, 8, 64, 1024]
    assert list(mom.c) == oracle("stieltjes_wigert_half_moments")
    assert list(mom.hankel) == oracle("stieltjes_wigert_half_hankel")


@pytest.mark.parametrize("alpha,beta", [(0, 0), (1, 1), (HALF, F(3, 2))])
def test_little_minus_one_first_moment(alpha, beta):
    mom = moments_from_spectrum(family_spectrum(LittleMinusOneJacobi(alpha, beta), 6))
    assert mom.c[1] == (2 + 2 * alpha) / (2 * alpha + 2 * beta + 4)
    assert mom.c[0] == 1


def test_inconsistent_splits():
    spec = family_spectrum(Jacobi(1, 2), 6)
    mu = list(spec.mu)
    mu[3] += 1
    with pytest.raises(InconsistentSpectrum):
        moments_from_spectrum(SpectrumPair(spec.lam, mu))


def test_degenerate_functional():
    # mu = 2 lambda makes every u vanish: Delta_1 = 0
    spec = SpectrumPair.from_functions(lambda n: n, lambda n: 2 * n, 6)
    with pytest.raises(DegenerateFunctional):
        moments_from_spectrum(spec)


def test_g_ratio():
    mom = moments_from_spectrum(family_spectrum(StieltjesWigert(HALF), 4))
    assert mom.g(3) == -F(8, 64)


# recurrence from the spectrum

def test_legendre_recurrence():
    rc = recurrence_from_spectrum(family_spectrum(Jacobi(0, 0), 12))
    assert all(b == HALF for b in rc.b)
    assert rc.u_at(1) == F(1, 12)
    assert all(rc.u_at(n) == F(n * n, 4 * (4 * n * n - 1)) for n in range(1, 12))


def test_stieltjes_wigert_recurrence():
    rc = recurrence_from_spectrum(family_spectrum(StieltjesWigert(HALF), 6))
    assert rc.u_at(1) == 4 and rc.u_at(2) == 96
    assert rc.b[2] == 44


def test_laguerre_zero():
    rc = recurrence_from_spectrum(family_spectrum(Laguerre(0), 12))
    assert rc.b == tuple(2 * n + 1 for n in range(12))
    assert rc.u == tuple(n * n for n in range(1, 12))


# Gram-Schmidt oracle

def test_gram_schmidt_examples():
    assert gram_schmidt_monic(MomentFunctional.from_moments([1, HALF, F(1, 3)]), 1) == [Poly([1]), Poly([-HALF, 1])]
    ps = gram_schmidt_monic(MomentFunctional.from_moments([1, 0, 1, 0, 3]), 2)
    assert ps[0] == Poly([1]) and ps[2] == Poly([-1, 0, 1])


def test_gram_schmidt_singular():
    with pytest.raises(DegenerateFunctional):
        gram_schmidt_monic(MomentFunctional.from_moments([1, 1, 1, 1, 1]), 2)


@pytest.mark.parametrize("tag", [Jacobi(1, 2), LittleQJacobi(F(1, 3), F(1, 4), HALF), StieltjesWigert(HALF),
                                 LittleMinusOneJacobi(HALF, F(3, 2))])
def test_oracle_equivalence(tag):
    spec = family_spectrum(tag, 15)
    assert gram_schmidt_monic(moments_from_spectrum(spec), 15) == eigenpolynomials(spec)


@given(spec=seeded(9))
def test_oracle_equivalence_on_random_admissible(spec):
    try:
        mom = moments_from_spectrum(spec)
    except DegenerateFunctional:
        return
    assert gram_schmidt_monic(mom, spec.N) == eigenpolynomials(spec)
    assert recurrence_from_spectrum(spec) == recurrence_from_polys(eigenpolynomials(spec))


@given(spec=seeded(7))
def test_norms_are_hankel_ratios(spec):
    try:
        mom = moments_from_spectrum(spec)
    except DegenerateFunctional:
        return
    rc = recurrence_from_spectrum(spec)
    assert all(c != 0 for c in mom.c)
    for n in range(1, spec.N):
        assert rc.h(n) == mom.hankel[n] / mom.hankel[n - 1]


# recurrence from polynomials

def test_recurrence_from_legendre_polys(oracle):
    polys = [Poly(c) for c in oracle("legendre_monic")[:4]]
    rc = recurrence_from_polys(polys)
    assert rc.b == (HALF, HALF, HALF)
    assert rc.u == (F(1, 12), F(1, 15))


def test_recurrence_from_two_polys():
    rc = recurrence_from_polys([Poly([1]), Poly([F(-3, 7), 1])])
    assert rc.b == (F(3, 7),) and rc.u == ()


def test_perturbed_spectrum_not_orthogonal():
    spec = family_spectrum(LittleQJacobi(F(1, 3), F(1, 4), HALF), 8)
    mu = list(spec.mu)
    mu[5] += 1
    with pytest.raises(NotOrthogonal) as err:
        recurrence_from_polys(eigenpolynomials(SpectrumPair(spec.lam, mu)))
    assert err.value.degree <= 6


def test_not_monic_rejected():
    with pytest.raises(NotOrthogonal):
        recurrence_from_polys([Poly([1]), Poly([1, 2])])


# symmetry

def test_symmetry_zero_for_admissible():
    spec = family_spectrum(Jacobi(1, 2), 8)
    mom = moments_from_spectrum(spec)
    assert symmetry_check(spec, mom, 8) == 0


def test_symmetry_detects_bumped_moment():
    spec = family_spectrum(Jacobi(1, 2), 8)
    mom = moments_from_spectrum(spec)
    c = list(mom.c)
    c[4] += 1
    lam, mu = spec.lam, spec.mu
    expected = max([abs(lam[n] - lam[4 - n]) for n in (3, 4)] + [abs(mu[n] - mu[5 - n]) for n in (3, 4, 5)])
    assert symmetry_check(spec, MomentFunctional(tuple(c), ()), 8) == expected > 0


def test_symmetry_single_condition():
    spec = family_spectrum(Jacobi(1, 2), 4)
    lam, mu = spec.lam, spec.mu
    mom = MomentFunctional((1, 5), ())
    assert symmetry_check(spec, mom, 1) == abs(lam[1] * 5 + mu[1])


def test_nonstrict_moments_length():
    spec = family_spectrum(Jacobi(1, 2), 8)
    assert len(moments_from_spectrum(spec, strict=False).c) == 16
    assert len(moments_from_spectrum(spec).c) == 17


# coefficient containers and tables

def test_prefix_positive():
    assert RecurrenceCoeffs([HALF, HALF, HALF], [F(1, 12), F(1, 15)]).prefix_positive()
    assert not RecurrenceCoeffs([0, 0], [-1]).prefix_positive()


def test_rows():
    spec = family_spectrum(StieltjesWigert(HALF), 3)
    rows = list(moment_rows(moments_from_spectrum(spec)))
    assert rows[1] == (1, "2", "4")
    assert rows[-1][2] == ""
    rc = recurrence_from_spectrum(family_spectrum(Jacobi(0, 0), 3))
    assert list(recurrence_rows(rc)) == [(0, "1/2", ""), (1, "1/2", "1/12"), (2, "1/2", "1/15")]
