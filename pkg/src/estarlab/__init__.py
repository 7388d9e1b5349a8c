"""Finite-topology toolkit for e*-open sets, operations on them, and bioperations."""

from ._kernels import backend
from .bioperations import (
    BiopContext,
    biclosed_family,
    biop_closure_lattice,
    biop_closure_pointwise,
    biop_interior,
    biopen_family,
    is_biclosed,
    is_biop_regular_space,
    is_biopen,
    is_classic_biopen,
    minimal_reach,
)
from .morphisms import (
    ContinuityVerdict,
    FiniteFunction,
    closed_map_neighborhood_property,
    compose,
    continuity_conditions,
    identity_map,
    image,
    is_bi_closed_map,
    is_bi_continuous,
    preimage,
)
from .operations import (
    BoundOperation,
    ClosureOp,
    ConstantX,
    ContainsPoint,
    EqualsSet,
    Identity,
    MemberOfList,
    Piecewise,
    Table,
    Verdict,
    apply,
    bind_operation,
    bind_table,
    closure_op,
    constant_x,
    identity,
    is_estar_gamma_regular_space,
    is_estar_open_operation,
    is_estar_regular,
    single_op_open_family,
)
from .space import (
    FiniteSpace,
    SetFamily,
    closure,
    complement,
    delta_closure,
    delta_interior,
    discrete,
    estar_closure,
    estar_interior,
    estar_open_family,
    indiscrete,
    interior,
    is_regular_open,
    validate_topology,
)

__version__ = "0.1.0"
