"""Exact-arithmetic workbench for double Poisson brackets on finitely
generated associative algebras: bracket construction from generator
tables, machine verification of the bracket axioms on bounded word sets,
the induced structures on matrix representation schemes, and the
integrable system attached to the quadratic non-skew bracket."""

from .dbracket import (
    BracketDef,
    casimir_check,
    extend_double,
    extend_double_raw,
    jacobiator,
    jacobiator_defect,
    jacobiator_defect_closed_form,
    loday,
    mu_d1_plus_d2,
    verify_axioms,
)
from .exactlin import (
    LatticePolygon,
    MPoly,
    QMatrix,
    SingularMatrixError,
    interior_lattice_points,
    mat_inverse,
    mat_rank_exact,
    newton_polygon,
)
from .ncalg import (
    CyclicPoly,
    NCPoly,
    Signature,
    TensorPoly,
    cyclic_project,
    enumerate_cyclic_words,
    enumerate_words,
    mu,
    nc_mul,
    tensor,
    tensor_act,
    word_reduce,
)
from .polyvec import (
    PolyVector,
    VectorField,
    apply_field,
    partial_trace_k,
    trace_bivector,
    verify_kontsevich_bivector,
)
from .integrable import (
    LaxPair,
    SpectralCurve,
    TraceIntegral,
    commutation_check,
    flow_derivative,
    hamiltonian_flow_check,
    lax_pair,
    lax_residual,
    spectral_curve,
    trace_integrals,
)
from .repalg import Coalgebra, check_coalgebra, comatrix_coalgebra, crosscheck_rep, repalg_bracket
from .repn import (
    RepPoint,
    SymRep,
    casimir_rep_check,
    induced_bracket_point,
    invariant_bracket,
    moduli_dims,
    phi_eval,
    random_rep,
    t_table_check,
    trace_fn,
    trace_gradient,
)
from .reports import Failure, ModuliReport, SweepReport, report_emit

__version__ = "0.1.0"
