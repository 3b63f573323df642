"""Exact computations with tree lattices, their function-space models and
projectional trees."""

from .cantor import (
    CantorPoint,
    StepFunction,
    cantor_metric,
    duality_check,
    embed,
    inverse_embed,
    q_encode,
    r_encode,
    step_eval,
    step_lattice_inf,
    step_lattice_sup,
    step_pos_part,
    step_sup_norm,
)
from .holfin import (
    Extraction,
    FiniteOperator,
    check_hypotheses,
    extract,
    random_instance,
    verify_conclusions,
)
from .ordfun import (
    OrdStepFunction,
    embed_ordinal,
    ordfun_eval,
    ordfun_lattice_sup,
    ordfun_pos_part,
    ordfun_sup_norm,
    rho_node,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalError,
    add,
    cb_rank_of_point,
    compare,
    fundamental_sequence,
    ms_normal_form,
    nat_mul,
    omega_pow,
    ordinal,
    parse_ordinal,
)
from .projtree import (
    HostFunctional,
    ProjTreeData,
    build_S,
    canonical_projtree,
    check_rho_regularity,
    project,
    verify_biorthogonality,
)
from .trees import (
    FULL,
    ROOT,
    TreeError,
    TreeSchema,
    Trunk,
    canonical,
    check_convergence_witness,
    contains,
    downward_closure,
    rank_of_node,
    validate_trunk,
)
from .treespace import (
    Element,
    ElementError,
    abs_val,
    chi,
    delta_eval,
    lambda_norm,
    lattice_inf,
    lattice_sup,
    leq,
    neg_part,
    pos_part,
    pos_part_norm,
    restrict,
    seq_pos_sup_identity,
    trunk_approx,
)

__version__ = "0.1.0"
