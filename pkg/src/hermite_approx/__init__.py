"""Hermite-function approximation of almost time- and band-limited functions."""
__version__ = "0.1.0"

from .errors import CapacityError, ConfigError, DomainError, IntegrationError
from .hermite import (HermiteSlice, HermiteValue, hermite_derivatives, hermite_eval,
                      hermite_eval_slice, hermite_table, hermite_zero_value, ode_residual)
from .quadrature import gauss_panels, quad_integrate
from .wkb import (LEMMA_CONSTANTS, PhaseData, WkbEnvelope, phase_data, phase_defect, phase_phi,
                  verify_phase_lemma, wkb_envelope, wkb_main_term, wkb_simplified_term)
from .kernel import (KernelGrid, TailReport, cd_kernel, cd_kernel_matrix, residual_bound,
                     residual_grid, residual_hs_norm, residual_operator_norm, sinc_frequency,
                     sinc_kernel, tail_bound, tail_mass)
from .signals import Signal, gaussian, hat, hermite_signal, indicator, load_csv, sampled
from .expansion import (CoefficientVector, ConcentrationReport, band_concentration,
                        concentration_report, expand, projection_error, reconstruct,
                        sobolev_band_bound, sobolev_norm, time_concentration)
from .bounds import (BoundInput, global_projection_bound, l1_residual_bound, local_projection_bound,
                     local_projection_bound_hs, min_n_for, scaled_projection_bound)
