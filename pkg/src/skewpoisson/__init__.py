"""Exact symbolic computation in skew group algebras of finite symplectic
matrix groups: polynomial and bracket arithmetic over the rationals, group
enumeration, trace-space projections, invariant theory, and a certified
decision procedure for the bracket-extension obstruction."""

from ._version import __version__
from .config import ConfigError, ScenarioConfig
from .groups import (
    ConjugacyClass,
    FiniteMatrixGroup,
    GroupClosureError,
    GroupElement,
    act_on_poly,
    centralizer,
    conjugacy_classes,
    fixed_projection,
    generate_group,
    is_symplectic,
)
from .invariants import (
    GeneratorSet,
    RelationSet,
    invariant_basis,
    is_invariant,
    molien_coefficients,
    reynolds,
    verify_generators,
    verify_relations,
)
from .obstruction import (
    Certificate,
    ObstructionProblem,
    RankData,
    Verdict,
    collapse_to_sigma,
    divisor_certificate,
    multiplier_image_generators,
    replay_certificate,
    run_counterexample,
    sigma_image_basis,
    solve_sigma,
    target_poly,
)
from .parse import PolyParseError, format_poly, parse_poly
from .poly import (
    Polynomial,
    SymplecticForm,
    partial_derivative,
    poisson_bracket,
    substitute_linear,
)
from .skew import (
    NotFixedError,
    SkewElement,
    TraceVector,
    commutator,
    hh0_project,
    inner_derivation_g_part,
    restrict_to_fixed,
    trace_vector,
)

__all__ = [
    "__version__",
    "ConfigError",
    "ScenarioConfig",
    "ConjugacyClass",
    "FiniteMatrixGroup",
    "GroupClosureError",
    "GroupElement",
    "act_on_poly",
    "centralizer",
    "conjugacy_classes",
    "fixed_projection",
    "generate_group",
    "is_symplectic",
    "GeneratorSet",
    "RelationSet",
    "invariant_basis",
    "is_invariant",
    "molien_coefficients",
    "reynolds",
    "verify_generators",
    "verify_relations",
    "Certificate",
    "ObstructionProblem",
    "RankData",
    "Verdict",
    "collapse_to_sigma",
    "divisor_certificate",
    "multiplier_image_generators",
    "replay_certificate",
    "run_counterexample",
    "sigma_image_basis",
    "solve_sigma",
    "target_poly",
    "PolyParseError",
    "format_poly",
    "parse_poly",
    "Polynomial",
    "SymplecticForm",
    "partial_derivative",
    "poisson_bracket",
    "substitute_linear",
    "NotFixedError",
    "SkewElement",
    "TraceVector",
    "commutator",
    "hh0_project",
    "inner_derivation_g_part",
    "restrict_to_fixed",
    "trace_vector",
]
