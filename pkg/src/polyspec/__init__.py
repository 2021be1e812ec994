"""Laplacian spectra of flat polyhedral surfaces.

Builds the surfaces of the regular tetrahedron, octahedron, icosahedron, and
cube as planar nets with edge identifications, computes their Laplacian
eigenvalues/eigenfunctions with P1 finite elements, and cross-validates
against exact lattice spectra, closed-form trigonometric eigenfunctions, the
octahedron enlargement construction, and eigenvalue-counting asymptotics.
"""

from .analysis import (Classification, CountingSeries, RemainderTable,
                       aitken_extrapolate, averaged_remainder, classify,
                       counting, group_clusters, make_counting_series,
                       normalize, remainder, remainder_series)
from .analytic import (SpectrumLine, SymmetryType, TrigEigenfunction,
                       admissible_orbits, build_trig_eigenfunction, enlarge,
                       evaluate, exact_spectrum, exact_tetra_eigenvalues,
                       hexagonal_multiplicity, mirror_lines, tetra_count_exact,
                       torus_count)
from .eigen import EigenPair, dense_solve, residual, solve_lowest
from .errors import (DegenerateElementError, DimensionTooLargeError,
                     InadmissibleOrbitError, InsufficientSpectrumError,
                     InteriorEdgeError, NoConvergenceError,
                     NotOctahedronError, NotOneDimensionalTypeError,
                     OutOfDomainError, PolyspecError)
from .fem import assemble, element_matrices
from .mesh import SurfaceMesh, build_mesh, expected_planar_count, interpolate, locate
from .net import (ConePoint, EdgeGlue, Face, PolyhedronKind, PolyhedronNet,
                  build_net, edge_point, glue_map)

__version__ = "0.1.0"

__all__ = [
    "Classification", "ConePoint", "CountingSeries", "DegenerateElementError",
    "DimensionTooLargeError", "EdgeGlue", "EigenPair", "Face",
    "InadmissibleOrbitError", "InsufficientSpectrumError", "InteriorEdgeError",
    "NoConvergenceError", "NotOctahedronError", "NotOneDimensionalTypeError",
    "OutOfDomainError", "PolyhedronKind", "PolyhedronNet", "PolyspecError",
    "RemainderTable", "SpectrumLine", "SurfaceMesh", "SymmetryType",
    "TrigEigenfunction", "admissible_orbits", "aitken_extrapolate",
    "assemble", "averaged_remainder", "build_mesh", "build_net",
    "build_trig_eigenfunction", "classify", "counting", "dense_solve",
    "edge_point", "element_matrices", "enlarge", "evaluate", "exact_spectrum",
    "exact_tetra_eigenvalues", "expected_planar_count", "glue_map",
    "group_clusters", "hexagonal_multiplicity", "interpolate", "locate",
    "make_counting_series", "mirror_lines", "normalize", "remainder",
    "remainder_series", "residual", "solve_lowest", "tetra_count_exact",
    "torus_count",
]
