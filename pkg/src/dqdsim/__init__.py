"""Spectra of stacked double quantum dots in a transverse magnetic field.

Library layout:

- core: constants, units, device and carrier data model
- vertical: 1D finite-difference double-well eigensolver
- lateral: analytic 2D oscillator basis with magnetic renormalization
- molecular: product-basis assembly, diagonalization, level labeling
- spectroscopy: excitonic emission lines, sweeps, effective distance
- fitting: well-depth calibration and the 1/L^3 gap law
- cli: command line front end (solve, sweep-l, sweep-b, calibrate,
  fit-powerlaw)
"""

from .core import (CYCLOTRON_COEFF, ELECTRON, HBAR2_OVER_2M0, HOLE,
                   DeviceSpec, FieldPoint, ParticleSpecies, PhysConstants,
                   SolverOptions, cyclotron_energy, default_device,
                   kinetic_coefficient)
from .fitting import (CalibrationResult, CalibrationTarget, PowerLawParams,
                      calibrate_depths, eval_powerlaw, fit_powerlaw)
from .lateral import LateralBasis, build_basis, renormalized_y_quantum, \
    y_matrix
from .molecular import (MolecularSpectrum, ProductBasis, adiabatic_sweep,
                        assemble, diagonalize, dominant_labels, label_states,
                        solve_molecular)
from .spectroscopy import (EmissionLine, GapCurve, SolvePoint,
                           effective_interdot_distance, emission_lines,
                           molecular_at, solve_point, sweep_b, sweep_l)
from .vertical import (DoubleWellSpec, Grid1D, VerticalSpectrum,
                       build_potential, classify_states, dz_matrix,
                       grid_for_wells, solve_double_well, solve_vertical)

__version__ = "0.1.0"
