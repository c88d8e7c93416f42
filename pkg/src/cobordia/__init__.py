"""Exact Schubert calculus for oriented cohomology theories of flag varieties.

The package computes, with exact arbitrary-precision arithmetic:

* cohomology rings h(G/B) of split semisimple groups of rank <= 3 under an
  arbitrary formal group law (Chow, K-theory, a degree-truncated universal
  law, user-supplied laws, and modular reductions);
* the codimension filtration on h(G/B) and its graded comparison with the
  Chow ring;
* quotient presentations of h(G) (characteristic ideal slices, exact
  comparison sequences, ring presentation certification, PGL_n closed forms);
* gamma-versus-topological filtration witnesses on K_0(G/B);
* the split correspondence algebra with composition, filtration levels,
  idempotent lifting and Tate decompositions.
"""

from .errors import (
    CobordiaError,
    DimensionMismatch,
    NotDivisible,
    PrecisionExhausted,
    GramNotUnimodular,
    NotInSpan,
    HypothesisFailed,
    ConventionError,
    FGLFileError,
    CacheError,
)
from .lattice import IntMatrix, hermite_normal_form, smith_invariant_factors, lattice_member, solve_integer
from .coeffs import CoeffRingSpec, CoeffRing, GradedCoefficient, FGLTable, universal_fgl, lazard_degree_basis

try:  # modules appear in dependency order during bootstrap
    from .roots import RootDatum, WeylGroup, build_root_datum, weyl_enumerate
    from .series import SeriesRing, TruncSeries
    from .engine import Theory
except ImportError:  # pragma: no cover
    pass

__all__ = [
    "CobordiaError", "DimensionMismatch", "NotDivisible", "PrecisionExhausted",
    "GramNotUnimodular", "NotInSpan", "HypothesisFailed", "ConventionError",
    "FGLFileError", "CacheError",
    "IntMatrix", "hermite_normal_form", "smith_invariant_factors",
    "lattice_member", "solve_integer",
    "CoeffRingSpec", "CoeffRing", "GradedCoefficient", "FGLTable",
    "universal_fgl", "lazard_degree_basis",
    "RootDatum", "WeylGroup", "build_root_datum", "weyl_enumerate",
    "SeriesRing", "TruncSeries", "Theory",
]
