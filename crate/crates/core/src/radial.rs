//! Hydrogenic radial wavefunctions R_{n,l} and radial moments, both in
//! closed form and by Gauss-Laguerre quadrature. Lengths are in units of
//! the Bohr radius a0.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::quadrature::gauss_laguerre;
use crate::{Error, Result};

/// Relative accuracy target for radial quadrature.
pub const RADIAL_QUAD_TOL: f64 = 1e-12;

/// A bound hydrogenic radial state R_{n,l} for nuclear charge Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadialState {
    n: u32,
    l: u32,
    z: u32,
}

impl RadialState {
    pub fn new(n: u32, l: u32, z: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers("n must be >= 1".into()));
        }
        if z == 0 {
            return Err(Error::InvalidQuantumNumbers("Z must be >= 1".into()));
        }
        if l >= n {
            return Err(Error::InvalidQuantumNumbers(format!(
                "l = {l} must satisfy l <= n - 1 = {}",
                n - 1
            )));
        }
        Ok(RadialState { n, l, z })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    /// Scale factor between the dimensionless Laguerre variable x and r:
    /// x = 2 Z r / n, i.e. r = scale * x with scale = n / (2Z) in a0.
    pub fn length_scale(&self) -> f64 {
        self.n as f64 / (2.0 * self.z as f64)
    }
}

/// Generalized Laguerre polynomial L_k^alpha(x) by the three-term recurrence.
fn laguerre(k: u32, alpha: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for i in 1..k {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + alpha - x) * cur - (i + alpha) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// The non-exponential factor P of R_{n,l}(r) = P(x) e^{-x/2}, with
/// x = 2 Z r / (n a0). Used by quadrature paths where the e^{-x} measure is
/// absorbed into Gauss-Laguerre weights.
pub fn radial_polynomial_part(state: &RadialState, x: f64) -> f64 {
    let n = state.n;
    let l = state.l;
    let zf = state.z as f64;
    let nf = n as f64;
    // norm = sqrt((2Z/n)^3 (n-l-1)! / (2n (n+l)!))
    let ln_norm = 0.5
        * (3.0 * (2.0 * zf / nf).ln() + ln_factorial(n - l - 1)
            - (2.0 * nf).ln()
            - ln_factorial(n + l));
    let norm = ln_norm.exp();
    norm * x.powi(l as i32) * laguerre(n - l - 1, 2.0 * l as f64 + 1.0, x)
}

/// Normalized hydrogenic radial wavefunction R_{n,l}(r), r in a0, result in
/// a0^{-3/2}.
pub fn radial_wavefunction(state: &RadialState, r: f64) -> Result<f64> {
    if r < 0.0 || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "radius must be finite and non-negative, got {r}"
        )));
    }
    let x = r / state.length_scale();
    Ok(radial_polynomial_part(state, x) * (-x / 2.0).exp())
}

/// Closed-form <r^2> = (a0^2/Z^2)(n^2/2)[5 n^2 + 1 - 3 l(l+1)], exact.
/// Returned as the rational coefficient of a0^2.
pub fn r2_expectation_rational(n: u32, l: u32, z: u32) -> Result<BigRational> {
    RadialState::new(n, l, z)?;
    let n = n as i64;
    let l = l as i64;
    let z = z as i64;
    let num = n * n * (5 * n * n + 1 - 3 * l * (l + 1));
    Ok(BigRational::new(BigInt::from(num), BigInt::from(2 * z * z)))
}

/// Closed-form <r^2> in a0^2 as a float.
pub fn r2_expectation(n: u32, l: u32, z: u32) -> Result<f64> {
    let n_f = n as f64;
    let l_f = l as f64;
    let z_f = z as f64;
    RadialState::new(n, l, z)?;
    Ok(n_f * n_f / (2.0 * z_f * z_f) * (5.0 * n_f * n_f + 1.0 - 3.0 * l_f * (l_f + 1.0)))
}

/// Radial moment int_0^inf R^2 r^{2+k} dr by Gauss-Laguerre quadrature in
/// the scaled variable, doubling the node count until the result is stable
/// to `RADIAL_QUAD_TOL` relative.
pub fn radial_moment_quadrature(state: &RadialState, k: i32) -> Result<f64> {
    if k < -2 {
        return Err(Error::InvalidArgument(format!(
            "moment order k = {k} must be >= -2 for an integrable integrand"
        )));
    }
    let mut order = 64;
    let mut prev = radial_moment_with_order(state, k, order)?;
    while order <= 512 {
        order *= 2;
        let cur = radial_moment_with_order(state, k, order)?;
        if (cur - prev).abs() <= RADIAL_QUAD_TOL * cur.abs().max(1e-300) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergence(format!(
        "radial moment k = {k} for (n, l, Z) = ({}, {}, {}) did not stabilize",
        state.n, state.l, state.z
    )))
}

fn radial_moment_with_order(state: &RadialState, k: i32, order: usize) -> Result<f64> {
    let rule = gauss_laguerre(order)?;
    let scale = state.length_scale();
    let sum: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let p = radial_polynomial_part(state, x);
            w * p * p * x.powi(2 + k)
        })
        .sum();
    Ok(sum * scale.powi(3 + k))
}

/// Overlap int_0^inf R_{n,l} R_{n',l} r^2 dr by quadrature; the two states
/// must share l and Z.
pub fn radial_overlap(a: &RadialState, b: &RadialState) -> Result<f64> {
    if a.l != b.l || a.z != b.z {
        return Err(Error::InvalidArgument(
            "overlap requires matching l and Z".into(),
        ));
    }
    let rule = gauss_laguerre(256)?;
    // Common variable: integrate in r using the mean exponential scale.
    // R_a has x_a = r/scale_a, R_b has x_b = r/scale_b; write the joint
    // exponential as e^{-y} with y = r (1/scale_a + 1/scale_b)/2... simplest
    // is to map the Laguerre variable t to r through the smaller scale sum.
    let rate = 0.5 * (1.0 / a.length_scale() + 1.0 / b.length_scale());
    let sum: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| {
            let r = t / rate;
            let xa = r / a.length_scale();
            let xb = r / b.length_scale();
            // e^{-xa/2 - xb/2} = e^{-t}, absorbed by the weight.
            let pa = radial_polynomial_part(a, xa);
            let pb = radial_polynomial_part(b, xb);
            w * pa * pb * r * r
        })
        .sum();
    Ok(sum / rate)
}
