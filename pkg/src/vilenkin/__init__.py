"""Harmonic analysis on Vilenkin groups with step functions.

Digit arithmetic, the character transform, principal shift-invariant spaces,
frame multiresolution analyses and frame wavelets on the Cantor dyadic group.
"""
from .group import (CosetId, DomainError, GroupElement, Side, VilenkinError, character,
                    h_of, lambda_map, walsh)
from .stepfn import StepFunction, ball, indicator, inner_product
from .transform import BACKEND, available_backends, fourier, hat, inverse_fourier, slow_fourier
from .periodic import FilterSpec, PeriodicSet
from .shift_invariant import (FrameReport, bracket, fiber, frame_report, periodization,
                              spectrum, spectrum_from_e_set, spectrum_from_fibers)
from .fmra import (MRALift, ScalingKind, bracket_split_check, check_refinement, fmra_to_mra,
                   lowpass_filter, lowpass_identity, minimal_filter, scaling_checks)
from .wavelet2 import (BlockedSetError, blocked_set, construct_wavelet, delta_sets,
                       existence_conditions, fiber_decomposition, fiber_orthogonality_check,
                       wavelet_frame_check)

__version__ = "0.1.0"
