"""Linear stability of elliptic relative equilibria of the planar four-body
problem with two infinitesimal masses.

The pipeline: a central configuration is reduced symplectically to a 4x4
"essential" linear Hamiltonian system parametrized by (lambda3, lambda4, e);
its monodromy, omega-indices (via a twisted Hill discretization), degenerate
curves in the parameter plane and normal-form classification decide the
stability regions.
"""

from .analytic import (BETA_DOUBLE_STAR, BETA_HAT_HALF, BETA_STAR,
                       SLOPE_CONVEX, SLOPE_NONCONVEX, THETA_DOUBLE_STAR,
                       beta_hat)
from .curves import (ConvexBoundaries, CurveSample, DegenerateCurve,
                     DegeneratePoint, RegionCell, boundaries_to_csv,
                     convex_boundaries, curves_to_csv, find_degenerate,
                     make_system, region_classify, trace_curve, trace_family,
                     verify_ordering)
from .index import (HillOperator, KernelSolution, NormalFormTag, OmegaIndex,
                    classify_normal_form, d_omega, degenerate_tangent_forms,
                    hill_matrix, index_via_splitting, intersection_functional,
                    kernel_fourier_solution, krein_signature, morse_index,
                    nu_omega, omega_index, quadratic_form, stability_verdict)
from .linalg import (J2, J4, Spectrum4, SymplecticMatrix, eig4, phi_embed,
                     psi_embed, quartic_roots, rotation, symplectic_defect)
from .reduction import (BodySystem, CCData, EssentialParameters,
                        assemble_linearized, build_ccdata, cc_residual,
                        essential_parameters, mu_of, normalize)
from .smallmass import (LimitData, SmallMassFamily, asymptotic_positions,
                        hessian_V2, limit_parameters, separation_angle,
                        solve_cc_newton)
from .systems import (BETA_MAX, ECC_CAP, EssentialSystem, Monodromy,
                      beta_to_tilde, build_B, integrate_monodromy,
                      rotated_path)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
