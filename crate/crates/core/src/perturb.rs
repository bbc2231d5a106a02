//! Closed-form energies: fine structure plus first-order shifts from linear,
//! quadratic, displaced-quadratic, generalized van der Waals and
//! Lennard-Jones wall perturbations, together with the 2x2 hermitian
//! eigenvalue solver and the validity-regime estimator.
//!
//! Units: energies in Ry, lengths in a0, lambda in Ry/a0^2 (quadratic) or
//! Ry/a0 (linear), gamma in Ry/a0^2.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use crate::angular::HalfInt;
use crate::constants::{
    ALPHA_SQUARED, BOHR_RADIUS_M, BOLTZMANN_J_PER_K, ELECTRON_PROTON_MASS_RATIO,
    NORMAL_PRESSURE_PA, NORMAL_TEMPERATURE_K,
};
use crate::radial::{r2_expectation, r2_expectation_rational};
use crate::states::QuantumNumbers;
use crate::{Error, Result};

/// Paired +-/- energy shifts of a mixed two-state subspace. The `plus`
/// branch is always numerically >= the `minus` branch; by the continuity
/// convention (z0 -> 0) it belongs to the l = j - 1/2 dominant state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftPair {
    pub plus: f64,
    pub minus: f64,
}

fn check_level(n: u32, j: HalfInt) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers("n must be >= 1".into()));
    }
    if j.is_integer() || j.twice() < 1 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j = {j} must be a positive half-odd-integer"
        )));
    }
    if j.twice() > 2 * n as i64 - 1 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j = {j} exceeds n - 1/2 at n = {n}"
        )));
    }
    Ok(())
}

fn check_magnetic(j: HalfInt, m: HalfInt) -> Result<()> {
    if !j.same_character(m) || m.abs().twice() > j.twice() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "m = {m} incompatible with j = {j}"
        )));
    }
    Ok(())
}

/// Fine-structure energy
/// E_nj = -(Z^2/n^2)[1 + (Z^2 alpha^2 / n)(1/(j + 1/2) - 3/(4n))] Ry,
/// with the physical alpha^2.
pub fn fine_structure_energy(n: u32, j: HalfInt, z: u32) -> Result<f64> {
    fine_structure_energy_with_alpha2(n, j, z, ALPHA_SQUARED)
}

/// Same as [`fine_structure_energy`] with alpha^2 supplied, mainly for
/// checking the Bohr limit alpha^2 -> 0.
pub fn fine_structure_energy_with_alpha2(n: u32, j: HalfInt, z: u32, alpha2: f64) -> Result<f64> {
    check_level(n, j)?;
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be >= 1".into()));
    }
    let nf = n as f64;
    let zf = z as f64;
    let j_plus_half = (j.twice() + 1) as f64 / 2.0;
    Ok(-(zf * zf / (nf * nf))
        * (1.0 + zf * zf * alpha2 / nf * (1.0 / j_plus_half - 3.0 / (4.0 * nf))))
}

/// Linear-potential shift pair
/// +-(lambda a0 / Z)(3n/4) m sqrt(n^2 - (j+1/2)^2) / (j(j+1)).
/// Zero for j = n - 1/2, where no degenerate partner exists.
pub fn linear_shift(
    n: u32,
    j: HalfInt,
    m: HalfInt,
    lambda_linear: f64,
    z: u32,
) -> Result<ShiftPair> {
    check_level(n, j)?;
    check_magnetic(j, m)?;
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be >= 1".into()));
    }
    let nf = n as f64;
    let j_plus_half = (j.twice() + 1) as f64 / 2.0;
    let jj1 = (j.twice() * (j.twice() + 2)) as f64 / 4.0;
    let root = (nf * nf - j_plus_half * j_plus_half).max(0.0).sqrt();
    let magnitude =
        (lambda_linear / z as f64 * 3.0 * nf / 4.0 * m.as_f64() * root / jj1).abs();
    Ok(ShiftPair {
        plus: magnitude,
        minus: -magnitude,
    })
}

/// Exact rational coefficient c in Delta E^Q = c * lambda a0^2:
/// (n^2 / (4 Z^2)) [5 n^2 + 1 - 3 l(l+1)] (1 - m^2 / (j(j+1))).
pub fn quadratic_shift_rational(
    n: u32,
    l: u32,
    j: HalfInt,
    m: HalfInt,
    z: u32,
) -> Result<BigRational> {
    QuantumNumbers::new(n, l, j, m, z)?;
    let r2 = r2_expectation_rational(n, l, z)?;
    let tj = j.twice();
    let tm = m.twice();
    // 1 - m^2/(j(j+1)) = 1 - tm^2 / (tj (tj+2))
    let angular = BigRational::new(
        BigInt::from(tj * (tj + 2) - tm * tm),
        BigInt::from(tj * (tj + 2)),
    );
    Ok(r2 * angular / BigRational::from_integer(BigInt::from(2)))
}

/// First-order shift from V = lambda z^2:
/// lambda <r^2>_{n,l} (1/2)(1 - m^2 / (j(j+1))) Ry.
pub fn quadratic_shift(
    n: u32,
    l: u32,
    j: HalfInt,
    m: HalfInt,
    lambda: f64,
    z: u32,
) -> Result<f64> {
    let coeff = quadratic_shift_rational(n, l, j, m, z)?;
    Ok(lambda * coeff.to_f64().expect("coefficient in f64 range"))
}

/// Eigenvalues (ascending-split pair) of a 2x2 hermitian matrix:
/// (H11 + H22 +- sqrt((H11 - H22)^2 + 4 |H12|^2)) / 2, returned as
/// (lambda_plus, lambda_minus) with lambda_plus >= lambda_minus.
pub fn hermitian2x2_eigenvalues(h11: f64, h22: f64, h12_abs2: f64) -> Result<(f64, f64)> {
    if h12_abs2 < 0.0 || !h12_abs2.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "|H12|^2 = {h12_abs2} must be finite and non-negative"
        )));
    }
    let half_trace = 0.5 * (h11 + h22);
    let disc = 0.5 * f64::hypot(h11 - h22, 2.0 * h12_abs2.sqrt());
    Ok((half_trace + disc, half_trace - disc))
}

/// Shift pair from the displaced oscillator V = lambda (z - z0)^2:
/// lambda z0^2 + lambda (a0 n / 2Z)^2 (1 - m^2/(j(j+1)))
///   { 5n^2 - 3 j(j+1) + 1/4
///     +- 3 (j+1/2) sqrt(1 + (2 Z z0 m / (a0 (j(j+1) - m^2)))^2
///                        (1/(j+1/2)^2 - 1/n^2)) }.
///
/// For j = n - 1/2 the subspace is one-dimensional and both slots hold the
/// single diagonal value lambda z0^2 + Delta E^Q(l = n-1).
pub fn displaced_quadratic_shift(
    n: u32,
    j: HalfInt,
    m: HalfInt,
    lambda: f64,
    z0: f64,
    z: u32,
) -> Result<ShiftPair> {
    check_level(n, j)?;
    check_magnetic(j, m)?;
    if !lambda.is_finite() || !z0.is_finite() {
        return Err(Error::InvalidArgument(
            "lambda and z0 must be finite".into(),
        ));
    }
    if z == 0 {
        return Err(Error::InvalidQuantumNumbers("Z must be >= 1".into()));
    }
    let global = lambda * z0 * z0;
    if j.twice() == 2 * n as i64 - 1 {
        let only = global + quadratic_shift(n, n - 1, j, m, lambda, z)?;
        return Ok(ShiftPair {
            plus: only,
            minus: only,
        });
    }
    let nf = n as f64;
    let zf = z as f64;
    let j_plus_half = (j.twice() + 1) as f64 / 2.0;
    let jj1 = (j.twice() * (j.twice() + 2)) as f64 / 4.0;
    let m2 = m.as_f64() * m.as_f64();
    let prefactor = lambda * (nf / (2.0 * zf)).powi(2) * (1.0 - m2 / jj1);
    let base = 5.0 * nf * nf - 3.0 * jj1 + 0.25;
    let coupling = 2.0 * zf * z0 * m.as_f64() / (jj1 - m2);
    let root = (1.0
        + coupling * coupling * (1.0 / (j_plus_half * j_plus_half) - 1.0 / (nf * nf)))
        .sqrt();
    let split = 3.0 * j_plus_half * root;
    Ok(ShiftPair {
        plus: global + prefactor * (base + split),
        minus: global + prefactor * (base - split),
    })
}

/// Generalized van der Waals shift for V = gamma (x^2 + y^2 + beta^2 z^2):
/// gamma <r^2> + Delta E^Q with lambda = gamma (beta^2 - 1), i.e.
/// (gamma/2) <r^2> [1 + beta^2 + (1 - beta^2) m^2/(j(j+1))].
pub fn vdw_shift(
    n: u32,
    l: u32,
    j: HalfInt,
    m: HalfInt,
    gamma: f64,
    beta_sq: f64,
    z: u32,
) -> Result<f64> {
    let isotropic = gamma * r2_expectation(n, l, z)?;
    let axial = quadratic_shift(n, l, j, m, gamma * (beta_sq - 1.0), z)?;
    Ok(isotropic + axial)
}

/// The gamma (Ry/a0^2) for which the generalized van der Waals form with
/// beta^2 = 2 reproduces the conducting-wall shift at distance d (a0).
pub fn lennard_jones_gamma(d: f64) -> f64 {
    -1.0 / (4.0 * d * d * d)
}

/// Exact rational coefficient c in Delta E^LJ = c (a0/2d)^3 Ry:
/// -(n^2/2)[5 n^2 + 1 - 3 l(l+1)][3 - m^2/(j(j+1))].
pub fn lennard_jones_rational(n: u32, l: u32, j: HalfInt, m: HalfInt) -> Result<BigRational> {
    QuantumNumbers::new(n, l, j, m, 1)?;
    let nn = n as i64;
    let ll = l as i64;
    let tj = j.twice();
    let tm = m.twice();
    let radial = BigRational::new(
        BigInt::from(-nn * nn * (5 * nn * nn + 1 - 3 * ll * (ll + 1))),
        BigInt::from(2),
    );
    let angular = BigRational::new(
        BigInt::from(3 * tj * (tj + 2) - tm * tm),
        BigInt::from(tj * (tj + 2)),
    );
    Ok(radial * angular)
}

/// Conducting-wall shift at distance d (in a0), hydrogen (Z = 1):
/// -(a0/2d)^3 (n^2/2)[5 n^2 + 1 - 3 l(l+1)][3 - m^2/(j(j+1))] Ry.
pub fn lennard_jones_shift(n: u32, l: u32, j: HalfInt, m: HalfInt, d: f64) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wall distance d = {d} must be positive and finite"
        )));
    }
    let coeff = lennard_jones_rational(n, l, j, m)?;
    Ok(coeff.to_f64().expect("coefficient in f64 range") / (2.0 * d).powi(3))
}

/// Scale comparison report for the wall-perturbation treatment at gas
/// pressure/temperature, shell n, hydrogen.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeReport {
    /// Volume per atom k_B T / P, in nm^3.
    pub d_cubed_nm3: f64,
    /// (a0 / 2d)^3 at that volume: the wall-shift scale in Ry.
    pub a0_over_2d_cubed: f64,
    /// Same quantity evaluated at normal pressure and temperature; the
    /// wall-shift scale is always below this for a dilute atomic gas.
    pub lj_condition_threshold: f64,
    /// Fine-structure coupling alpha^2.
    pub alpha_squared: f64,
    /// Fine-structure splitting scale alpha^2 / n^3 Ry.
    pub fine_structure_scale: f64,
    /// Wall-shift magnitude estimate for shell n (grows as n^4).
    pub lj_shift_scale: f64,
    /// Lamb-shift scale for l = 0 states, ~1e-6 / n^3 Ry.
    pub lamb_shift_s_states: f64,
    /// Lamb-shift scale for l != 0 states, <~1e-9 / n^3 Ry.
    pub lamb_shift_other: f64,
    /// Hyperfine scale alpha^2 m_e/m_p, ~2.9e-8.
    pub hyperfine_scale: f64,
    /// Fine structure dominates the wall shift, so the coupled basis and
    /// first-order treatment apply. Breaks down for high n: the shift grows
    /// as n^4 while fine structure falls as n^-3.
    pub coupled_basis_applies: bool,
    /// The wall shift still dominates the hyperfine coupling, so m remains
    /// a good quantum number.
    pub hyperfine_negligible: bool,
}

/// Estimates the volume per atom d^3 = k_B T / P and compares the resulting
/// wall-shift scale against fine-structure, Lamb-shift and hyperfine scales.
pub fn regime_check(pressure_pa: f64, temperature_k: f64, n: u32) -> Result<RegimeReport> {
    if !(pressure_pa > 0.0) || !(temperature_k > 0.0) {
        return Err(Error::InvalidArgument(
            "pressure and temperature must be positive".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers("n must be >= 1".into()));
    }
    let d_cubed_m3 = BOLTZMANN_J_PER_K * temperature_k / pressure_pa;
    let d_cubed_nm3 = d_cubed_m3 * 1e27;
    let a0_over_2d_cubed = BOHR_RADIUS_M.powi(3) / (8.0 * d_cubed_m3);
    let d0_cubed_m3 = BOLTZMANN_J_PER_K * NORMAL_TEMPERATURE_K / NORMAL_PRESSURE_PA;
    let lj_condition_threshold = BOHR_RADIUS_M.powi(3) / (8.0 * d0_cubed_m3);
    let nf = n as f64;
    let fine_structure_scale = ALPHA_SQUARED / nf.powi(3);
    // Ground-branch magnitude: (a0/2d)^3 (n^2/2)(5n^2+1) * 3.
    let lj_shift_scale = a0_over_2d_cubed * nf * nf / 2.0 * (5.0 * nf * nf + 1.0) * 3.0;
    let hyperfine_scale = ALPHA_SQUARED * ELECTRON_PROTON_MASS_RATIO;
    Ok(RegimeReport {
        d_cubed_nm3,
        a0_over_2d_cubed,
        lj_condition_threshold,
        alpha_squared: ALPHA_SQUARED,
        fine_structure_scale,
        lj_shift_scale,
        lamb_shift_s_states: 1e-6 / nf.powi(3),
        lamb_shift_other: 1e-9 / nf.powi(3),
        hyperfine_scale,
        coupled_basis_applies: lj_shift_scale < fine_structure_scale,
        hyperfine_negligible: hyperfine_scale < a0_over_2d_cubed,
    })
}
