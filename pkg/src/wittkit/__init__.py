"""Exact arithmetic in the completed Witt algebra of formal vector fields.

Elements ``sum a_i L[i]`` (``L[i] = t^(i+1) d/dt``) are stored as exact rational
windows known up to a precision index; everything above it is unknown.
"""

from .errors import (
    AllZeroToPrecision,
    DomainError,
    InconsistentHead,
    NotAutomorphism,
    NotInFiltrationOne,
    NotInnerAtPrecision,
    OutOfModel,
    ParseError,
    PrecisionExhausted,
    WindowTooSmall,
    WittError,
    ZeroBasePoint,
    ZeroElement,
    ZeroScale,
)
from .series import (
    SERIES_GRAMMAR,
    TruncatedSeries,
    at_precision,
    binomial_power,
    elementary,
    format_series,
    parse_series_expr,
    ts_add,
    ts_derive,
    ts_invert,
    ts_mul,
    ts_pow,
)
from .field import (
    DEFAULT_PREC,
    ELEMENT_GRAMMAR,
    FiltrationLevel,
    VectorField,
    ad_power,
    basis,
    bracket,
    eq_to_precision,
    format_element,
    parse_element,
    project,
    series_from_vf,
    vf_from_series,
)
from .automorphism import (
    Automorphism,
    ImageTable,
    NormalFormReport,
    aut_apply,
    aut_compose,
    aut_factorize,
    aut_invert,
    exp_ad,
    format_automorphism,
    leading_coefficients_conjugate,
    normal_form,
    parse_automorphism,
    residue_probe,
    scale_apply,
    solve_exp_conjugator,
    tabulate_images,
)
from .derivation import (
    DerivationTable,
    check_derivation,
    failing_pairs,
    format_table,
    parse_table,
    recover_inner,
    tabulate_inner,
)
from .structure import (
    IdealRecipe,
    exact_rank,
    express_in_ideal,
    format_recipe,
    locfin_rank,
    parse_recipe,
    reduce_valuation,
    solve_transporter,
    verify_recipe,
)
from .subalgebras import (
    FAMILIES,
    GeneratorSpec,
    RelationReport,
    check_relation,
    format_report,
    instantiate,
    run_suite,
    suite_passed,
)

__version__ = "0.1.0"
