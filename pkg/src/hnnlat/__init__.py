"""Exact computational toolkit for HNN extensions of integer lattices.

The package classifies the defining rational matrix (orthogonal-conjugacy
and finite order, decided exactly), solves the word problem via unique
left-pushed normal forms, expands balls of the Bass-Serre tree together
with vertex stabilizers and ball-stabilization sequences, analyzes coarse
separations of finite metric spaces, and decides cyclic-order constraint
problems with a verifying backtracking solver.
"""

from .classify import MatrixClassification, classify_matrix, solve_conjugator
from .coarse import (
    FiniteCoarseSpace,
    SeparationAnalysis,
    boundary_r,
    build_grid,
    build_tree_product,
    coarse_complement_profile,
    neighborhood,
    one_sided_containment_check,
    s_components,
    separation_analysis,
)
from .cyclic import (
    CyclicConstraintSet,
    CyclicOrder,
    chain_constraints,
    check_axioms,
    closure,
    interval,
    respect_type,
    sphere_permutation,
    standard_order,
    verify_derivation,
)
from .errors import HnnlatError, InputParseError, PreconditionError, StageFailure
from .lattices import (
    Lattice,
    coset_residue,
    coset_residues,
    hnf,
    lattice_index,
    lattice_intersect,
    lattice_member,
    rational_lattice_intersect_with_Zn,
    standard_lattice,
)
from .matrices import RationalMatrix
from .polynomials import minimal_polynomial, sturm_count
from .solver import SolverResult, all_cyclic_orders, search_invariant_order
from .tree import (
    StabilizationReport,
    TreeBall,
    act_on_ball,
    expand_ball,
    find_generic_element,
    stabilization_sequence,
    stabilizer_lattice,
)
from .words import (
    GroupData,
    GroupWord,
    NormalForm,
    invert,
    multiply,
    normalize,
    t_length,
    validate_group,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
