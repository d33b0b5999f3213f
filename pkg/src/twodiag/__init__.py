"""Two-diagonal operators on polynomials, their eigenpolynomials and orthogonality."""

from .eigenpoly import eigenpolynomial, eigenpolynomials, rescale
from .families import (
    AltQCharlier,
    Bessel,
    Degenerate,
    FamilyTag,
    Jacobi,
    Laguerre,
    LittleMinusOneJacobi,
    LittleQJacobi,
    LittleQLaguerre,
    NegQVariant,
    QKrawtchouk,
    QLaguerre,
    StieltjesWigert,
    TrigCircle,
    classify,
    classify_report,
    family_recurrence,
    family_spectrum,
    positivity_report,
    weight_data,
)
from .orthogonality import (
    MomentFunctional,
    RecurrenceCoeffs,
    gram_schmidt_monic,
    moments_from_spectrum,
    recurrence_from_polys,
    recurrence_from_spectrum,
    symmetry_check,
)
from .polynomial import Normalization, Poly
from .scalars import DEFAULT, Context
from .spectrum import (
    SpectrumPair,
    StructureConstants,
    check_admissible,
    extend,
    extend_from_seed,
    structure_constants,
)

__version__ = "0.1.0"
