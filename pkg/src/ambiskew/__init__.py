"""Exact PBW arithmetic and differential-smoothness certification for
ambiskew polynomial rings K[x;sigma][y;sigma^-1,delta]."""

__version__ = "0.1.0"

from .baserings import AutReport, BaseAutomorphism, BaseElement, BaseKind, BaseRing
from .calculus import Calculus, DifferentialForm, DualPair, IntegrabilityReport
from .catalog import (
    CatalogEntry,
    DownUpParams,
    ExpectedOutcome,
    catalog_certify,
    catalog_expected,
    catalog_get,
    downup_build,
    get_entry,
    list_entries,
)
from .errors import (
    AmbiskewError,
    DegreeMismatch,
    DivisionByZero,
    KindMismatch,
    NegativePowerNotInvertible,
    NonDiagonalSigma,
    PreconditionViolated,
    SpecSyntaxError,
    UnknownEntry,
    UnknownSymbol,
    USourceUnsolvable,
    ValidationError,
)
from .ore import (
    AlgebraElement,
    AmbiskewPresentation,
    CheckResult,
    GeneratorMap,
    endo_check_relations,
    endo_pair_commute,
    twist_build,
)
from .scalars import FieldConfig, Scalar, cyclotomic_polynomial
from .smoothness import (
    Certificate,
    Condition,
    GwaPresentation,
    VerifyOptions,
    balance_residue,
    check_auto,
    check_cor37,
    check_gwa,
    check_nosigma,
    check_sisigma,
    gwa_from_ambiskew,
    verify_calculus,
)
from .specfile import (
    parse_expression,
    parse_scalar_text,
    parse_specfile,
    render_specfile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
