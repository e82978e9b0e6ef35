"""Aharonov-Bohm scattering as free propagation on a flux background.

Submodules:

- ``flux_geometry``: point-flux configurations and the vector potential
- ``berry_phase``: phase along paths, winding numbers, plane-wave states
- ``bessel`` / ``partial_waves``: fractional-order Bessel functions and the
  single-flux partial-wave wavefunction
- ``momentum_contour``: integral and contour representations of J_nu
- ``experiment``: the two-beam winding interference setup
- ``cli``: the ``abscatter`` command
"""
from .berry_phase import (
    PathPolyline,
    PhaseResult,
    cut_discontinuity,
    phase_analytic,
    phase_line_integral,
    plane_wave_state,
    polygon_loop,
    unwrap_angle,
    winding_number,
)
from .bessel import bessel_j
from .experiment import ExperimentSpec, interference_pattern, logic_states, winding_phase
from .flux_geometry import FluxConfig, make_config, relative_angle, validate_config, vector_potential
from .momentum_contour import (
    bessel_contour_split,
    bessel_integer_integral,
    fourier_reconstruct_mode,
    scattered_scaling,
)
from .partial_waves import (
    ComplexField,
    Grid,
    PartialWaveSpec,
    ab_mode,
    ab_wavefunction,
    scattering_amplitude,
    truncation_order,
)

__version__ = "0.1.0"
