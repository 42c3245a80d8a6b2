"""Exact-arithmetic strong convexity toolkit.

Core objects: ConvexBody (halfspace/vertex/ball forms over rationals),
ColoredPointSet, SimplicialComplex.  Core operations: Minkowski sum and
erosion, strongly convex hulls, separation of point sets from a compactum by
a body translate, colorful separation verifiers, simplicial homology with
link / Alexander dual / join, nerve construction, and rasterized acyclicity
probes.  Everything is decided by exact rational comparison; there are no
floating-point tolerances in any predicate.
"""
from .bodies import (ConvexBody, SummandReport, GeneratingProbeReport, body_relation,
                     erode, generating_probe, is_summand, minkowski_sum,
                     strongly_convex_hull, support_value)
from .errors import (DimensionMismatchError, EmptyBodyError, InputError, NotCoverableError,
                     PreconditionError, SizeCapError, StrongConvError, UnboundedBodyError)
from .numeric import LPOutcome, Rational, RationalMatrix, lp_optimize, matrix_rank, rat, rat_str
from .separation import (ColoredPointSet, ColorfulReport, SeparationWitness,
                         caratheodory_number, separate, verify_colorful,
                         verify_colorful_compactum, verify_very_colorful)
from .topology import (HomologyProfile, SimplicialComplex, alexander_dual, induced_subcomplex,
                       is_acyclic_complex, join_complexes, link, meshulam_check, nerve,
                       partial_transversal_complex, reduced_betti, very_colorful_link_check)
from .raster import RegionOracle, GridSpec, region_betti, summand_acyclicity_probe
from .counterexample import (CounterexampleInstance, EpigraphFamily, build_family,
                             planar_section_body, verify_counterexample)

__version__ = "0.1.0"

__all__ = [
    "ConvexBody", "SummandReport", "GeneratingProbeReport", "ColoredPointSet",
    "ColorfulReport", "SeparationWitness", "SimplicialComplex", "HomologyProfile",
    "RegionOracle", "GridSpec", "CounterexampleInstance", "EpigraphFamily",
    "LPOutcome", "Rational", "RationalMatrix",
    "body_relation", "erode", "generating_probe", "is_summand", "minkowski_sum",
    "strongly_convex_hull", "support_value", "separate", "verify_colorful",
    "verify_colorful_compactum", "verify_very_colorful", "caratheodory_number",
    "reduced_betti", "is_acyclic_complex", "link", "induced_subcomplex",
    "alexander_dual", "join_complexes", "nerve", "partial_transversal_complex",
    "meshulam_check", "very_colorful_link_check", "region_betti",
    "summand_acyclicity_probe", "build_family", "planar_section_body",
    "verify_counterexample", "lp_optimize", "matrix_rank", "rat", "rat_str",
    "StrongConvError", "InputError", "DimensionMismatchError", "EmptyBodyError",
    "UnboundedBodyError", "NotCoverableError", "PreconditionError", "SizeCapError",
]
