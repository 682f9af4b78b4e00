"""Simple-current extensions of lattice and affine vertex operator algebras.

Submodules
----------
rootsys     root data, minimal coweights and coweight norms
lattice     rational lattices, duals, intersections and finite quotients
cocycle     grading forms, commutator maps and the two-cocycles of an extension
fock        exact Fock-space model of a lattice vertex operator algebra
deformed    deformed vertex operators and the generalized Jacobi identity
identities  operator identities checked coefficient by coefficient
currents    module labels, the Delta deformation and simple-current lists
extend      extension specs and their classification
verify      named verification suites (used by the command line)
"""

from .currents import (
    CurrentList,
    DeltaOperator,
    LabelError,
    ModuleLabel,
    deform_label,
    lattice_character,
    lowest_weight,
    sigma_order,
    simple_current_list,
)
from .exact import Cyclotomic, frac, frac_str, root_of_unity
from .extend import (
    AIA,
    SUPER_VOA,
    VOA,
    ExtensionError,
    ExtensionSpec,
    ExtensionVerdict,
    InvariantViolation,
    classify,
    compute_L0,
    grading_data,
    twist_of_module_extension,
)
from .fock import FockError, FockSpace, FockVector, LaurentSeries, delta_apply, vacuum, virasoro
from .lattice import (
    CosetGroup,
    LatticeError,
    RationalLattice,
    Sublattice,
    dual_lattice,
    intersect,
    min_norm_in_coset,
    quotient,
)
from .rootsys import RootSystemError, build_root_system, coweight, coweight_norm, minimal_weights
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "AIA",
    "SUITES",
    "SUPER_VOA",
    "VOA",
    "CosetGroup",
    "CurrentList",
    "Cyclotomic",
    "DeltaOperator",
    "ExtensionError",
    "ExtensionSpec",
    "ExtensionVerdict",
    "FockError",
    "FockSpace",
    "FockVector",
    "InvariantViolation",
    "LabelError",
    "LatticeError",
    "LaurentSeries",
    "ModuleLabel",
    "RationalLattice",
    "RootSystemError",
    "Sublattice",
    "build_root_system",
    "classify",
    "compute_L0",
    "coweight",
    "coweight_norm",
    "deform_label",
    "delta_apply",
    "dual_lattice",
    "frac",
    "frac_str",
    "grading_data",
    "intersect",
    "lattice_character",
    "lowest_weight",
    "min_norm_in_coset",
    "minimal_weights",
    "quotient",
    "root_of_unity",
    "run_suite",
    "sigma_order",
    "simple_current_list",
    "twist_of_module_extension",
    "vacuum",
    "virasoro",
]
