"""Exact-arithmetic Kuranishi deformation theory for nilpotent Lie algebras.

The package computes, over the rationals, the obstruction ideal that cuts out
the Kuranishi space of a complex parallelisable nilmanifold inside
``H¹(Θ)``: structure constants in, polynomial generators out.  It provides

* rational nilpotent Lie algebras and left-invariant complex structures
  (:mod:`kuranil.algebra`),
* the Chevalley–Eilenberg and Dolbeault calculus on invariant forms
  (:mod:`kuranil.exterior`),
* exact Hodge-style decompositions of the relevant complexes with explicit
  ``∂̄``-preimages (:mod:`kuranil.hodge`),
* the degree-by-degree power-series solution of the Maurer–Cartan equation
  and the resulting obstruction ideal (:mod:`kuranil.kuranishi`),
* multivariate polynomials over ``ℚ`` with deterministic monomial orders and
  Buchberger-based ideal arithmetic (:mod:`kuranil.polyring`,
  :mod:`kuranil.groebner`),
* a catalog of low-dimensional algebras with their known deformation data
  (:mod:`kuranil.catalog`) and a command-line interface (:mod:`kuranil.cli`).
"""

from . import catalog
from .algebra import (
    ComplexStructureAlgebra,
    FreeTwoStepResult,
    JacobiViolation,
    LieAlgebra,
    NotIntegrable,
    NotNilpotent,
    StructureParseError,
    Subspace,
    abelian,
    direct_sum,
    free_two_step,
    parse_complex_structure_file,
    parse_salamon,
    parse_structure_file,
    to_complex_structure,
)
from .catalog import CatalogEntry, CatalogError
from .exterior import AmbientMismatch, BarredVectorError, ExteriorForm, VectorForm
from .groebner import (
    GroebnerBasis,
    GroebnerTimeout,
    OrderMismatch,
    buchberger,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    normal_form,
    parse_ideal_components,
    s_polynomial,
)
from .hodge import (
    DegreeMismatch,
    HodgeDecomposition,
    PreimageError,
    build_decomposition,
    build_theta_decomposition,
    hodge_numbers,
    theta_cohomology_dims,
)
from .kuranishi import (
    ClosednessViolation,
    KuranishiReport,
    MissingDegreeCap,
    NonParallelisableAmbient,
    ObstructionResult,
    PhiSeries,
    analyze,
    analyze_general,
    generic_harmonic_element,
    mc_residual,
    obstruction_map,
    parallelisable_directions,
    phi_recursion,
    quadratic_obstruction_closed_form,
    random_central_assignment,
    schouten_general,
    schouten_parallelisable,
    smoothness_tests,
)
from .polyring import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolynomialParseError,
    all_parameters,
    minor2,
    minor3,
    parse_polynomial,
    var_poly,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BarredVectorError",
    "CatalogEntry",
    "CatalogError",
    "ClosednessViolation",
    "ComplexStructureAlgebra",
    "DegreeMismatch",
    "ExteriorForm",
    "FreeTwoStepResult",
    "GREVLEX",
    "GroebnerBasis",
    "GroebnerTimeout",
    "HodgeDecomposition",
    "JacobiViolation",
    "KuranishiReport",
    "LEX",
    "LieAlgebra",
    "MissingDegreeCap",
    "MonomialOrder",
    "NonParallelisableAmbient",
    "NotIntegrable",
    "NotNilpotent",
    "ObstructionResult",
    "OrderMismatch",
    "PhiSeries",
    "Polynomial",
    "PolynomialParseError",
    "PreimageError",
    "StructureParseError",
    "Subspace",
    "VectorForm",
    "abelian",
    "all_parameters",
    "analyze",
    "analyze_general",
    "buchberger",
    "build_decomposition",
    "build_theta_decomposition",
    "catalog",
    "direct_sum",
    "free_two_step",
    "generic_harmonic_element",
    "hodge_numbers",
    "ideal_equal",
    "ideal_intersect",
    "ideal_member",
    "mc_residual",
    "minor2",
    "minor3",
    "normal_form",
    "obstruction_map",
    "parallelisable_directions",
    "parse_complex_structure_file",
    "parse_ideal_components",
    "parse_polynomial",
    "parse_salamon",
    "parse_structure_file",
    "phi_recursion",
    "quadratic_obstruction_closed_form",
    "random_central_assignment",
    "s_polynomial",
    "schouten_general",
    "schouten_parallelisable",
    "smoothness_tests",
    "theta_cohomology_dims",
    "to_complex_structure",
    "var_poly",
    "__version__",
]
