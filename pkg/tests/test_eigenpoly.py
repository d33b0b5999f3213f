from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twodiag.eigenpoly import (
    eigenpolynomial,
    eigenpolynomials,
    expansion_coefficients,
    rescale,
    rescale_moments,
    rescale_recurrence,
)
from twodiag.errors import DegreeOverflow, SpectrumDegenerate, ZeroKappa
from twodiag.families import Jacobi, family_spectrum
from twodiag.linalg import solve
from twodiag.polynomial import Normalization, Poly
from twodiag.spectrum import SpectrumPair, apply_abstract, extend_from_seed

from conftest import rationals

MONIC, UNIT = Normalization.MONIC, Normalization.UNIT_A0


def arbitrary_spectra(N=10):
    """Nondegenerate but generally non-admissible spectra."""
    lam = st.lists(rationals(-20, 20, 5), min_size=N, max_size=N, unique=True).filter(lambda v: 0 not in v)
    mu = st.lists(rationals(-20, 20, 5, nonzero=True), min_size=N, max_size=N)
    return st.builds(lambda l, m: SpectrumPair([0] + l, [0] + m), lam, mu)


def legendre(N=6):
    return family_spectrum(Jacobi(0, 0), N)


def test_p0_is_one():
    assert eigenpolynomial(legendre(), 0) == Poly([1])


def test_legendre_low_degrees(oracle):
    assert eigenpolynomial(legendre(), 1) == Poly([-F(1, 2), 1])
    assert eigenpolynomial(legendre(), 2) == Poly([F(1, 6), -1, 1])
    assert eigenpolynomials(legendre(5)) == [Poly(c) for c in oracle("legendre_monic")]


def test_jacobi_1_2_matches_orthopoly_oracle(oracle):
    assert eigenpolynomials(family_spectrum(Jacobi(1, 2), 8)) == [Poly(c) for c in oracle("jacobi_1_2_monic")]


def test_degree_overflow():
    with pytest.raises(DegreeOverflow):
        eigenpolynomial(legendre(3), 4)


def test_degenerate_gap():
    spec = SpectrumPair((0, 1, 2, 1), (0, 1, 2, 3))
    with pytest.raises(SpectrumDegenerate):
        eigenpolynomial(spec, 3)


@given(spec=arbitrary_spectra())
def test_eigen_relation_needs_no_orthogonality(spec):
    for n in range(spec.N + 1):
        p = eigenpolynomial(spec, n)
        assert p.degree == n and p.leading == 1
        assert apply_abstract(spec, p) == p * spec.lam[n]


@given(seed=st.tuples(*(rationals(-6, 6, 6, nonzero=True) for _ in range(5))))
def test_eigen_relation_to_degree_20(seed):
    try:
        spec = extend_from_seed(*seed, N=20)
    except Exception:
        return
    for n in (5, 13, 20):
        p = eigenpolynomial(spec, n)
        assert apply_abstract(spec, p) == p * spec.lam[n]


@given(spec=arbitrary_spectra(7))
def test_uniqueness_by_triangular_solve(spec):
    # (L - lam_n) acting on the n unknown lower coefficients, with a_n = 1
    n = spec.N
    A = [[0] * n for _ in range(n)]
    rhs = [0] * n
    for k in range(n):
        A[k][k] = spec.lam[k] - spec.lam[n]
        if k + 1 < n:
            A[k][k + 1] = spec.mu[k + 1]
    rhs[n - 1] = -spec.mu[n]
    a = solve(A, rhs)
    assert Poly(a + [1]) == eigenpolynomial(spec, n)


@given(spec=arbitrary_spectra(8))
def test_normalizations_agree(spec):
    for n in range(spec.N + 1):
        unit = eigenpolynomial(spec, n, UNIT)
        monic = eigenpolynomial(spec, n, MONIC)
        assert unit.coeff(0) == 1
        assert unit / unit.leading == monic
        assert list(unit.coeffs) == expansion_coefficients(spec, n)


@given(spec=arbitrary_spectra(8))
def test_expansion_ratio_law(spec):
    n = spec.N
    A = expansion_coefficients(spec, n)
    for s in range(n):
        assert A[s + 1] / A[s] == (spec.lam[n] - spec.lam[s]) / spec.mu[s + 1]


def test_expansion_jacobi_a21():
    assert expansion_coefficients(legendre(), 0) == [1]
    assert expansion_coefficients(legendre(), 2)[1] == -6


def test_expansion_zero_mu():
    spec = SpectrumPair((0, 1, 3), (0, 0, 2))
    with pytest.raises(SpectrumDegenerate):
        expansion_coefficients(spec, 2)


def test_rescale_examples():
    spec = legendre(4)
    polys = eigenpolynomials(spec)
    assert rescale(spec, polys, 1).polys == polys
    out = rescale(spec, polys, 2)
    assert out.polys[1] == Poly([-1, 1])
    assert out.spec.mu == tuple(2 * m for m in spec.mu) and out.spec.lam == spec.lam
    assert rescale_recurrence([F(1, 2)], [F(1, 12)], 2) == ([1], [F(1, 3)])
    with pytest.raises(ZeroKappa):
        rescale(spec, polys, 0)


@given(kappa=rationals(-4, 4, 5, nonzero=True))
def test_rescaled_polys_are_eigenpolys(kappa):
    spec = family_spectrum(Jacobi(1, 2), 8)
    out = rescale(spec, eigenpolynomials(spec), kappa)
    assert out.polys == eigenpolynomials(out.spec)
    assert rescale_moments([1, 2, 3], kappa) == [1, 2 * kappa, 3 * kappa**2]
