"""Eigenstates, completeness checks and a numerical oracle for the
reflectionless well V(x) = -2 kappa^2 sech^2(kappa x) in units hbar = 2m = 1."""

from .analytic import (DifferentiableFn, apply_a, apply_a_dagger, bound_energy, parity_even,
                       parity_odd, phi_unnormalized, potential_v, psi0, psi_k,
                       transmission_amplitude)
from .completeness import (ExpansionCoefficients, KGrid, PacketProfile, continuum_defect_diagonal,
                           count_bound_states, defect_offdiagonal, expand, extract_bound_state,
                           momentum_matrix_element_regular, momentum_on_even_decomposition,
                           parity_defect_diagonal, reconstruct, smeared_orthonormality,
                           symmetric_k_grid)
from .integrals import (ft_sech2, ft_tanh, integrate, integrate_real_line, lorentzian_ft,
                        lorentzian_ft_derivative)
from .oracle import (GridSpec, TridiagonalMatrix, build_hamiltonian, eig_tridiagonal,
                     oracle_ground_state, transfer_matrix_reflection)
from .params import (DomainError, InternalInconsistency, NonConvergence, PotentialParams,
                     QuadratureSpec, StepSizeError)

__version__ = "0.1.0"
