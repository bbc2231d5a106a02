//! Complex spherical harmonics in the Condon-Shortley convention, evaluated
//! through the associated-Legendre three-term recurrence.

use num_complex::Complex64;

use crate::{Error, Result};

/// Associated Legendre P_l^m(x) for m >= 0, Condon-Shortley phase included.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= l);
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2.0 * m as f64 + 1.0) * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mf = m as f64;
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        let pll = (x * (2.0 * llf - 1.0) * pmmp1 - (llf + mf - 1.0) * pmm) / (llf - mf);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pmmp1
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Y_l^m(theta, phi). Negative m handled via
/// Y_l^{-m} = (-1)^m conj(Y_l^m).
pub fn spherical_harmonic(l: u32, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l as u64 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "|m| = {} exceeds l = {l}",
            m.abs()
        )));
    }
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside [0, pi]"
        )));
    }
    let m_abs = m.unsigned_abs() as u32;
    let ln_norm = 0.5
        * (((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI)).ln() + ln_factorial(l - m_abs)
            - ln_factorial(l + m_abs));
    let plm = assoc_legendre(l, m_abs, theta.cos());
    let magnitude = ln_norm.exp() * plm;
    let phase = Complex64::from_polar(1.0, m_abs as f64 * phi);
    let y_pos = magnitude * phase;
    if m >= 0 {
        Ok(y_pos)
    } else {
        let sign = if m_abs % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * y_pos.conj())
    }
}
