"""ltdl: exact Lubin-Tate deformation charts and the Deligne-Lusztig
correspondence for GL_n(F_q), at verification scale.

Everything is computed with exact arithmetic: finite fields, truncated Witt
rings, bounded-denominator p-adics, truncated multivariate power series, and
cyclotomic character values.  The CLI (`ltdl verify-all`) turns every
identity that is checkable at desk scale into a pass/fail report.
"""

__version__ = "0.1.0"

from .cyclo import CycloElement
from .depth0 import (
    blowup_chart,
    build_P,
    build_P_a,
    iterated_chart,
    special_fiber_components,
    stratum_membership,
    un_special_fiber,
)
from .dl_variety import (
    base_points,
    dl_equation,
    dl_points,
    fiber_structure_check,
    twisted_count,
)
from .errors import (
    BudgetError,
    DenominatorOverflow,
    IntegralityError,
    ParameterError,
    PrecisionError,
    VerificationError,
)
from .ffield import FieldDesc, FieldElement, ff_make, field_for_order
from .formal_modules import (
    FormalModule,
    check_drinfeld_divisibility,
    lubin_tate_module,
    universal_module,
    verify_module_axioms,
)
from .gl_characters import (
    ClassFunction,
    CorrespondenceData,
    CoxeterTorus,
    GLGroup,
    VirtualRep,
    correspondence_report,
    dixon_table,
    dl_correspondence,
    is_cuspidal,
    is_generic,
    steinberg,
)
from .series import SeriesRing, TruncatedSeries
from .witt import BoundedPadic, PadicParams, WittElement, witt_ring

__all__ = [
    "__version__",
    "BoundedPadic", "BudgetError", "ClassFunction", "CorrespondenceData",
    "CoxeterTorus", "CycloElement", "DenominatorOverflow", "FieldDesc",
    "FieldElement", "FormalModule", "GLGroup", "IntegralityError",
    "ParameterError", "PadicParams", "PrecisionError", "SeriesRing",
    "TruncatedSeries", "VerificationError", "VirtualRep", "WittElement",
    "base_points", "blowup_chart", "build_P", "build_P_a",
    "check_drinfeld_divisibility", "correspondence_report", "dixon_table",
    "dl_correspondence", "dl_equation", "dl_points", "ff_make",
    "fiber_structure_check", "field_for_order", "is_cuspidal", "is_generic",
    "iterated_chart", "lubin_tate_module", "special_fiber_components",
    "steinberg", "stratum_membership", "twisted_count", "un_special_fiber",
    "universal_module", "verify_module_axioms", "witt_ring",
]
