from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from twodiag.errors import DegenerateExtension, DegenerateSeed, DegreeOverflow
from twodiag.families import Jacobi, LittleMinusOneJacobi, LittleQJacobi, StieltjesWigert, family_spectrum
from twodiag.polynomial import Poly
from twodiag.spectrum import (
    SpectrumPair,
    apply_abstract,
    check_admissible,
    extend,
    extend_from_seed,
    recurrence_residuals,
    structure_constants,
)

from conftest import rationals

HALF = F(1, 2)


def jacobi00(N=6):
    return SpectrumPair.from_functions(lambda n: -n * (n + 1), lambda n: n * n, N)


def seeds():
    """Seeds that survive every nondegeneracy precondition."""
    def ok(t):
        try:
            extend_from_seed(*t, N=8)
        except DegenerateSeed:
            return False
        except DegenerateExtension:
            return False
        return True
    return st.tuples(*(rationals(-6, 6, 6, nonzero=True) for _ in range(5))).filter(ok)


# apply_abstract

def test_apply_to_constant_is_zero():
    assert apply_abstract(jacobi00(), Poly([1])).is_zero


def test_apply_jacobi_x2():
    # mu_2 = 2 * (2 + alpha) = 4 at alpha = 0
    assert apply_abstract(jacobi00(), Poly.monomial(2, F(1))) == Poly([0, 4, -6])


def test_apply_stieltjes_wigert_x():
    spec = family_spectrum(StieltjesWigert(HALF, inverted=True), 4)
    assert apply_abstract(spec, Poly([0, 1])) == Poly([-HALF, 1])


def test_apply_degree_overflow():
    with pytest.raises(DegreeOverflow):
        apply_abstract(jacobi00(3), Poly.monomial(4, F(1)))


def test_spectrum_normalization_enforced():
    with pytest.raises(ValueError):
        SpectrumPair((1, 2), (0, 1))


@given(seed=seeds())
def test_json_round_trip(seed):
    spec = extend_from_seed(*seed, N=6)
    assert SpectrumPair.from_json(spec.to_json()) == spec


# extend_from_seed

def test_seed_jacobi():
    spec = extend_from_seed(-2, 1, -6, 4, -12, N=6)
    assert spec.lam == (0, -2, -6, -12, -20, -30, -42)
    assert spec.mu == (0, 1, 4, 9, 16, 25, 36)


def test_seed_stieltjes_wigert():
    # lambda_n = q^-n - 1, mu_n = q^n - 1 at q = 1/2
    spec = extend_from_seed(1, -HALF, 3, F(-3, 4), 7, N=4)
    assert spec.lam[4] == 15 and spec.mu[4] == F(-15, 16)
    assert spec.mu[3] == F(-7, 8)


def test_seed_affine_rejected():
    with pytest.raises(DegenerateSeed):
        extend_from_seed(1, 3, 2, 6, 5, N=6)


def test_seed_repeated_lambda_rejected():
    with pytest.raises(DegenerateSeed):
        extend_from_seed(1, 3, 1, 7, 5, N=6)


@given(seed=seeds())
def test_extension_satisfies_recurrences_and_quadratic(seed):
    spec = extend_from_seed(*seed, N=8)
    sc = structure_constants(spec)
    assert all(rl == 0 and rm == 0 for _, rl, rm in recurrence_residuals(spec, sc))
    lam, mu = spec.lam, spec.mu
    for n in range(spec.N):
        assert lam[n] ** 2 + lam[n + 1] ** 2 - sc.omega * lam[n] * lam[n + 1] + sc.b2 * (lam[n] + lam[n + 1]) + sc.b3 == 0
        assert mu[n] ** 2 + mu[n + 1] ** 2 - sc.omega * mu[n] * mu[n + 1] + sc.c2 * (mu[n] + mu[n + 1]) + sc.c3 == 0


@given(seed=seeds())
def test_ln_nk_cross_ratio(seed):
    spec = extend_from_seed(*seed, N=8)
    lam, mu = spec.lam, spec.mu
    for n in range(spec.N):
        for k in range(spec.N - n):
            if mu[n + 1] == mu[k] or mu[n] == mu[k + 1]:
                continue
            assert (lam[n + 1] - lam[k]) / (mu[n + 1] - mu[k]) == (lam[n] - lam[k + 1]) / (mu[n] - mu[k + 1])


def test_extend_matches_family():
    spec = family_spectrum(LittleQJacobi(F(1, 3), F(1, 4), HALF), 12)
    assert extend(spec.truncate(4), 12) == spec


# structure constants

def test_structure_jacobi():
    sc = structure_constants(jacobi00())
    assert (sc.omega, sc.b2, sc.c2) == (2, 2, -2)


def test_structure_little_minus_one():
    spec = family_spectrum(LittleMinusOneJacobi(0, 0), 5)
    assert spec.lam[1:4] == (4, -4, 8)
    assert structure_constants(spec).omega == -2


def test_structure_stieltjes_wigert():
    sc = structure_constants(family_spectrum(StieltjesWigert(HALF), 5))
    assert sc.omega == F(5, 2)
    assert sc.b2 == -HALF and sc.c2 == -HALF


def test_structure_needs_distinct_lambda():
    with pytest.raises(DegenerateSeed):
        structure_constants(SpectrumPair((0, 1, 1, 2), (0, 1, 2, 3)))


@given(seed=seeds())
def test_printed_closed_forms_of_b2_b3(seed):
    l1, _, l2, _, l3 = seed
    sc = structure_constants(extend_from_seed(*seed, N=4))
    assert sc.b2 == (l1 * l1 - l2 * l2 + l1 * l3) / (l2 - l1)
    assert sc.b3 == l1 * l2 + l1 * l1 * l3 / (l1 - l2)


@given(seed=seeds(), k1=rationals(-4, 4, 5, nonzero=True), k2=rationals(-4, 4, 5, nonzero=True))
def test_scaling(seed, k1, k2):
    spec = extend_from_seed(*seed, N=5)
    sc, scs = structure_constants(spec), structure_constants(spec.scaled(k1, k2))
    assert scs.omega == sc.omega
    assert scs.b2 == k1 * sc.b2 and scs.c2 == k2 * sc.c2
    # B3 is quadratic in lambda, so it picks up k1**2
    assert scs.b3 == k1 * k1 * sc.b3 and scs.c3 == k2 * k2 * sc.c3


# admissibility

def test_jacobi_admissible():
    spec = family_spectrum(Jacobi(1, 2), 12)
    rep = check_admissible(spec)
    assert rep.admissible and not rep.violations
    assert (rep.structure.omega, rep.structure.b2, rep.structure.c2) == (2, 2, -2)


def test_affine_violation():
    spec = SpectrumPair.from_functions(lambda n: n, lambda n: 2 * n, 8)
    rep = check_admissible(spec)
    assert not rep.admissible
    assert rep.rules() == {"d"}


def test_perturbed_mu_flags_index_5():
    spec = family_spectrum(LittleQJacobi(F(1, 3), F(1, 4), HALF), 10)
    mu = list(spec.mu)
    mu[5] += 1
    rep = check_admissible(SpectrumPair(spec.lam, mu))
    assert not rep.admissible
    assert set(rep.indices("c")) == {4, 5, 6}
    assert 5 in rep.indices("e")
    assert rep.structure is None


def test_repeated_mu_violation():
    spec = SpectrumPair((0, 1, 3, 6, 10), (0, 2, 2, 5, 9))
    assert "b" in check_admissible(spec).rules()


@given(seed=seeds(), idx=st.integers(4, 8), bump=rationals(-3, 3, 4, nonzero=True))
def test_extension_admissible_perturbation_not(seed, idx, bump):
    spec = extend_from_seed(*seed, N=8)
    assert check_admissible(spec).admissible
    lam = list(spec.lam)
    lam[idx] += bump
    assert not check_admissible(SpectrumPair(lam, spec.mu)).admissible
