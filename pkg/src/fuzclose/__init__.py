"""Finite fuzzy closure operators over quasi-monoidal lattices and GL-monoids."""

from .builders import (
    DiscretizedChain,
    LTopology,
    closure_from_topology,
    divisor_monoid,
    root_closure,
    topology_from_closure,
)
from .closure import (
    ClosureMap,
    check_additive,
    check_c_continuity,
    check_closure_axioms,
    check_idempotent,
    discrete_operator,
    initial_closure,
    initial_lift,
    join_maps,
    meet_maps,
    trivial_operator,
)
from .config import Config, default_config
from .lattice import FiniteLattice, build_lattice, chain, divisor_lattice
from .monoid import TensorStructure, check_cqm, check_gl_monoid, meet_tensor, residuum
from .powerset import BasisComorphism, CarrierSet, SetFunction, Space
from .report import Report, Verdict
from .variable import GroundMorphism, GroundObject, check_vb_continuity, initial_vb_closure

__version__ = "0.1.0"
