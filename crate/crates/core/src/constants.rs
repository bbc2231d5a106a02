//! Physical constants (CODATA 2018) used by the energy formulas and the
//! validity-regime estimator. Internal units are Rydberg for energies and
//! the Bohr radius a0 for lengths.

/// Fine-structure constant.
pub const ALPHA: f64 = 7.297_352_569_3e-3;

/// Fine-structure constant squared, ~5.3e-5.
pub const ALPHA_SQUARED: f64 = ALPHA * ALPHA;

/// Bohr radius in meters.
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

/// Boltzmann constant in J/K.
pub const BOLTZMANN_J_PER_K: f64 = 1.380_649e-23;

/// Normal pressure in Pa.
pub const NORMAL_PRESSURE_PA: f64 = 101_325.0;

/// Normal temperature in K.
pub const NORMAL_TEMPERATURE_K: f64 = 293.15;

/// Electron-to-proton mass ratio.
pub const ELECTRON_PROTON_MASS_RATIO: f64 = 1.0 / 1_836.152_673_43;
