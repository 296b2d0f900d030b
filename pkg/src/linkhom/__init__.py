"""Exact computation of Khovanov-type link homology.

From a planar-diagram code this package computes bigraded Khovanov
homology over F2, F_p, Q and Z (with torsion), odd Khovanov homology,
the filtered Lee and Bar-Natan deformations with the Rasmussen
s-invariant, and validates runs against an independent Jones-polynomial
oracle.
"""

from .cube import (BasepointMissing, ChainComplex, CubeVertex,
                   FrobeniusParams, NoSignageFound, SignAssignment,
                   TheorySpec, assemble, cube_vertex, edge_map, odd_edge_map,
                   odd_sign_solve, standard_signage)
from .diagram import (Crossing, Diagram, EdgeCountError, MalformedPd,
                      OrientationError, Resolution, canonical_relabel,
                      disjoint_union, from_structure, mirror, parse_pd,
                      resolve, smooth_crossing, switch_crossing)
from .homology import (BigradedGroup, ReductionTrace, build_complex,
                       gauss_eliminate, homology, khovanov,
                       universal_coefficient_check)
from .laurent import LaurentPoly, laurent_eval_skein
from .lee import (BadRing, FiltrationProfile, NotAKnot, SInvariant,
                  UnexpectedProfile, lee_homology, s_invariant, slice_bound)
from .oracle import (EmptyHomology, graded_euler, jones_skein,
                     les_dimension_check, width_and_tb)
from .rings import F2, GF, QQ, ZZ, NotAField, Ring, ring_from_spec
from .sparse import SnfResult, SparseMatrix, rank_over_field, smith_normal_form
from .tables import TableEntry, entry, load_table

__version__ = "0.1.0"

__all__ = [
    "BadRing", "BasepointMissing", "BigradedGroup", "ChainComplex",
    "Crossing", "CubeVertex", "Diagram", "EdgeCountError", "EmptyHomology",
    "FiltrationProfile", "FrobeniusParams", "GF", "LaurentPoly",
    "MalformedPd", "NoSignageFound", "NotAField", "NotAKnot",
    "OrientationError", "QQ", "ReductionTrace", "Resolution", "Ring",
    "SInvariant", "SignAssignment", "SnfResult", "SparseMatrix",
    "TableEntry", "TheorySpec", "UnexpectedProfile", "ZZ", "F2",
    "assemble", "build_complex", "canonical_relabel", "cube_vertex",
    "disjoint_union", "edge_map", "entry", "from_structure",
    "gauss_eliminate", "graded_euler", "homology", "jones_skein",
    "khovanov", "laurent_eval_skein", "lee_homology",
    "les_dimension_check", "load_table", "mirror", "odd_edge_map",
    "odd_sign_solve", "parse_pd", "rank_over_field", "resolve",
    "ring_from_spec", "s_invariant", "slice_bound", "smith_normal_form",
    "smooth_crossing", "standard_signage", "switch_crossing",
    "universal_coefficient_check", "width_and_tb",
]
