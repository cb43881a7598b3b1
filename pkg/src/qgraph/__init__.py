"""Exact graph cohomology of homological vector field concomitants."""

from .graphcore import (
    BLACK,
    WHITE,
    Branch,
    CanonicalGraph,
    DecoratedGraph,
    Disconnected,
    InvalidGraph,
    WrongSubcomplex,
    branches,
    canonical_form,
    classify,
    validate,
)
from .cochain import Cochain
from .complex import (
    NotDiagonal,
    UnspecifiedDifferential,
    coboundary,
    coboundary_d0,
    homotopy_h,
    laplacian,
)
from .enumeration import LimitExceeded, enumerate_basis, g4_basis, sector_basis
from .homology import (
    BettiRecord,
    Certificate,
    betti,
    betti_record,
    in_relation_span,
    is_coboundary,
    quotient,
    relation_matrix,
)
from .cocycles import b_graph, c_graph, op_A, op_B, op_C, pi, psi
from .superalg import (
    LieAlgebraData,
    SuperFunction,
    SuperTensor,
    a_class,
    bc_class,
    builtin,
    evaluate_graph,
    is_exact,
    lie_derivative,
    primitive_ce_class,
    q_from_lie,
    supertrace,
)

__version__ = "0.1.0"
