"""Fork extensions of slim planar semimodular lattices and their congruences."""
from .canonical import canonical_key, order_isomorphic
from .congruence import (CheckResult, Congruence, EdgeColoring, JiOrder, check_cc1,
                         check_cc2, ji_congruence_order, principal_congruence,
                         square_palette)
from .errors import (CellNotFound, CycleDetected, InconsistentRotation,
                     InternalInvariantViolation, InvalidTarget, LatticeError, NoBounds,
                     NotALattice, NotPlanar, NotSPS, NotTransitivelyReduced, ParseError,
                     UnknownElement, ValidationError)
from .fork import ForkTrace, SquareKind, apply_script, classify_cell, fork_congruence, insert_fork
from .io import export_dot, from_document, load, save, to_document
from .order import (P_D8, FiniteLattice, FiniteOrder, TargetOrder, build_lattice,
                    build_order, down_set_lattice, induced_order, is_distributive,
                    is_semimodular, is_slim, join_irreducibles)
from .planar import (FourCell, PlanarDiagram, Shape, ShapeClass, build_diagram,
                     classify_shape, four_cells, grid)
from .search import (SearchBounds, SearchReport, enumerate_lattices,
                     search_representation, verify_necessary_conditions)

__version__ = "0.1.0"
