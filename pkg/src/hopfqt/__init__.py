"""Exact construction and classification of quasitriangular structures on
the Hopf algebras built from (G, action, sigma, tau) by abelian extension
of Z2."""

from .cocycle import ExtensionData, check_necessary, eta, p_constant, validate
from .families import (
    classify_A,
    classify_K,
    find_quotient_family,
    make_A,
    make_A_paper,
    make_K,
    make_kac_paljutkin,
    preset,
    quotient_map,
)
from .groups import FiniteAbelianGroup, GroupElement, Involution, derive_presentation
from .hopf import TensorElement, verify_hopf_axioms
from .rmatrix import (
    QTFunction,
    RMatrix,
    extract_w4,
    is_phi_symmetric,
    is_qt_function,
    phi_transform,
    rebuild_from_w4,
    verify_quasitriangular,
    verify_qybe,
)
from .scalar import Cyclotomic, RootOfUnity, cyclotomic_polynomial, nth_roots
from .solver import (
    brute_force_nontrivial,
    enumerate_all_nontrivial,
    enumerate_general_tuples,
    enumerate_phi_symmetric,
    enumerate_special_tuples,
    enumerate_trivial,
)

__version__ = "0.1.0"
