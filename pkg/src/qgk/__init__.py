"""Computational kernel for finite quantum groups given by structure constants:
coreps and their decomposition, unitary 2-cocycles, projective coreps,
twisted orthogonality, dual-normal subalgebras and invariant cohomology.
"""

from .algebra import (FiniteQuantumGroup, dual, from_function_algebra,
                      from_group_algebra, is_kac, solve_haar,
                      verify_hopf_axioms)
from .cocycle import (Cocycle, coboundary, cocycle_on_function_algebra,
                      is_invariant, is_left_cocycle, is_normalized,
                      is_right_cocycle, is_trivial_invariant_class,
                      schur_multiplier_abelian, trivial_cocycle,
                      twist_class_map, twist_class_map_inverse,
                      twist_coproduct)
from .corep import (Corepresentation, conjugate_raw, decompose, dsum,
                    identity_corep, is_corep, is_unitary_corep, mor_space,
                    regular_corep, tensor)
from .linalg import DEFAULT_TOL, resolve_tol
from .normalizer import (SubgroupSpec, full_subgroup, gamma_group,
                         group_subgroup, invariant_subalgebra_check,
                         is_dual_normal, is_woronowicz_subalgebra, sim_classes,
                         sub_quantum_group)
from .projective import (ad, alpha_membership, classify, conjugate_projective,
                         delta_u_check, extract_cocycle, psi_and_r,
                         strongly_projective_tensor, twisted_regular,
                         twisted_schur)
from .report import VerificationReport

__version__ = "0.1.0"
