"""Exact spectral-torsion densities for perturbed Dirac-type operators.

Public surface: the exact scalar kernel, the Clifford algebra with its
matrix-representation oracle, multilinear forms, sphere moments, the interior
symbol engine, the half-line boundary calculus, and the top-level evaluation
plus identity-verification API.
"""

from .scalars import (
    DIM_F,
    GaussianRational,
    MissingAtom,
    PI,
    Rational,
    SymAtom,
    SymScalar,
    TR_F_PHI,
    rational,
    sym,
    sym_eval,
    sym_mul,
    vol_sphere,
)
from .clifford import (
    DimensionMismatch,
    Multivector,
    OddDimension,
    anticommutator,
    conjugate_sum,
    grading,
    mv_mul,
    supertrace,
    trace,
)
from .matrix_rep import MatrixRep, rep_build, rep_trace
from .forms import (
    AntisymTensor,
    GradeOverflow,
    NotTopGrade,
    OneForm,
    ThreeForm,
    eval_threeform,
    metric_pair,
    to_clifford,
    top_pairing,
    wedge,
    wedge_all,
)
from .moments import (
    XiMonomial,
    XiPolynomialMV,
    integrate_sphere,
    moment,
    vol_numeric,
    xi_monomial,
)
from .symbols import (
    Grading,
    PerturbationCase,
    SymbolOrderPieces,
    TorsionGrading,
    TorsionVector,
    VectorGrading,
    interior_density,
    perturbation_multivector,
    q_minus3_normal,
    recursion_tail,
    sigma_minus2m,
    symbol_order_pieces,
)
from .halfline import (
    NonIntegrable,
    Poly,
    RealPole,
    XiRational,
    boundary_density,
    boundary_pieces,
    boundary_symbol,
    dxn_symbol,
    line_integral,
    pi_minus,
    pi_plus,
    residue_derivative,
)
from .torsion import (
    IdentityComparison,
    ManifoldSpec,
    TorsionReport,
    UnsupportedDimension,
    normal_trace_combination,
    spectral_torsion,
    theorem_boundary_value,
    theorem_value,
)
from .verify import FINAL_IDS, IDENTITY_IDS, verify_suite

__all__ = [name for name in dir() if not name.startswith("_")]
