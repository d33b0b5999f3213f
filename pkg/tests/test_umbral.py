from fractions import Fraction as F

import pytest

from twodiag.errors import NotUmbralClassical
from twodiag.families import (
    Bessel,
    Jacobi,
    Laguerre,
    LittleMinusOneJacobi,
    LittleQJacobi,
    LittleQLaguerre,
    NegQVariant,
    StieltjesWigert,
    TrigCircle,
    classify,
    family_spectrum,
)
from twodiag.polynomial import Poly
from twodiag.spectrum import structure_constants
from twodiag.umbral import DKind, DSequence, default_dsequence, formal_derivative, umbral_descend

HALF = F(1, 2)


def test_d_sequences():
    assert DSequence.classical().seq(4) == [0, 1, 2, 3, 4]
    assert DSequence.q_derivative(HALF).d(2) == F(3, 2)
    assert DSequence.dunkl(HALF).seq(4) == [0, 2, 2, 4, 4]
    for ds in (DSequence.classical(), DSequence.q_derivative(F(2, 3)), DSequence.dunkl(F(1, 3))):
        assert ds.d(0) == 0 and all(ds.d(n) != 0 for n in range(1, 30))


def test_d_sequence_needs_param():
    with pytest.raises(ValueError):
        DSequence(DKind.DUNKL)
    with pytest.raises(ValueError):
        DSequence.q_derivative(1)


def test_formal_derivative_examples():
    x3 = Poly.monomial(3, F(1))
    assert formal_derivative(DSequence.classical(), x3) == Poly([0, 0, 3])
    assert formal_derivative(DSequence.dunkl(HALF), x3) == Poly([0, 0, 4])
    assert formal_derivative(DSequence.q_derivative(HALF), Poly.monomial(2, F(1))) == Poly([0, F(3, 2)])
    assert formal_derivative(DSequence.classical(), Poly([5])).is_zero


def test_jacobi_descends_to_shifted_parameters():
    d = umbral_descend(family_spectrum(Jacobi(1, 1), 12), DSequence.classical())
    assert classify(d.spec) == Jacobi(2, 2)


def test_little_minus_one_descent():
    al, be = 1, 1
    d = umbral_descend(family_spectrum(LittleMinusOneJacobi(al, be), 12), DSequence.dunkl(HALF))
    assert classify(d.spec) == LittleMinusOneJacobi(1, 3)
    for n in range(11):
        assert d.spec.lam[n] == (-1) ** (n + 1) * (2 * n + al + be + 3) + al + be + 3
        assert d.spec.mu[n] == (-1) ** n * (2 * n + al) - al


def test_mismatched_derivative_rejected():
    with pytest.raises(NotUmbralClassical):
        umbral_descend(family_spectrum(Jacobi(1, 1), 12), DSequence.dunkl(1))


@pytest.mark.parametrize("tag", [Jacobi(F(1, 3), 2), Laguerre(HALF), Bessel(5),
                                 LittleMinusOneJacobi(HALF, F(3, 2)),
                                 LittleQJacobi(F(1, 3), F(1, 4), HALF), LittleQLaguerre(F(1, 3), HALF),
                                 StieltjesWigert(HALF), NegQVariant(LittleQJacobi(F(1, 3), F(1, 4), HALF))])
def test_descent_preserves_omega(tag):
    spec = family_spectrum(tag, 10)
    d = umbral_descend(spec)
    assert structure_constants(d.spec).omega == structure_constants(spec).omega
    assert type(classify(d.spec)) is type(tag)


def test_default_dsequence():
    assert default_dsequence(family_spectrum(Jacobi(1, 2), 6)).kind is DKind.CLASSICAL
    ds = default_dsequence(family_spectrum(LittleMinusOneJacobi(1, 1), 6))
    assert ds == DSequence.dunkl(HALF)
    assert default_dsequence(family_spectrum(LittleQJacobi(F(1, 3), F(1, 4), HALF), 6)) == DSequence.q_derivative(HALF)
    with pytest.raises(NotUmbralClassical):
        default_dsequence(family_spectrum(TrigCircle(F(1, 3), F(1, 5), HALF), 6))
