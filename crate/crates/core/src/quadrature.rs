//! Gauss-Laguerre and Gauss-Legendre node/weight tables, computed by Newton
//! iteration on the polynomial recurrences.

use crate::{Error, Result};

// Laguerre Newton steps jitter near the recurrence round-off floor at order
// ~10^2, so convergence is two-stage: accept immediately below the tight
// threshold, otherwise take the smallest step seen if it is below the loose
// (relative) one. Both are far below every downstream tolerance.
const LAGUERRE_EPS_TIGHT: f64 = 3e-15;
const LAGUERRE_EPS_LOOSE: f64 = 1e-13;
const LEGENDRE_EPS: f64 = 3e-15;
const MAX_NEWTON_ITER: usize = 120;

// Rescaling bound for the Laguerre recurrence: at order ~500 the polynomial
// exceeds the f64 range near the largest roots.
const RESCALE_LIMIT: f64 = 1e140;

/// Nodes and weights for a quadrature rule.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss-Laguerre rule of order `n` for integrals of the form
/// int_0^inf f(x) e^{-x} dx ~= sum w_i f(x_i).
pub fn gauss_laguerre(n: usize) -> Result<Rule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "quadrature order must be positive".into(),
        ));
    }
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0_f64;
    for i in 0..n {
        // Stroud-Secrest style initial guesses.
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2]);
        }
        let mut converged = false;
        // Best iterate seen: (step, z, p2, pp, rescales).
        let mut best: Option<(f64, f64, f64, f64, i32)> = None;
        for _ in 0..MAX_NEWTON_ITER {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            let mut rescales = 0_i32;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
                // Common rescaling leaves the Newton step p1/pp unchanged.
                if p1.abs() > RESCALE_LIMIT {
                    p1 /= RESCALE_LIMIT;
                    p2 /= RESCALE_LIMIT;
                    rescales += 1;
                }
            }
            let pp = nf * (p1 - p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            let step = (z - z1).abs();
            if best.map_or(true, |(s, ..)| step < s) {
                best = Some((step, z1, p2, pp, rescales));
            }
            if step <= LAGUERRE_EPS_TIGHT * z.abs().max(1.0) {
                best = Some((step, z, p2, pp, rescales));
                converged = true;
                break;
            }
        }
        let (step, zb, p2, pp, rescales) = best.expect("at least one iteration ran");
        if !converged && step > LAGUERRE_EPS_LOOSE * zb.abs().max(1.0) {
            return Err(Error::QuadratureNonConvergence(format!(
                "Gauss-Laguerre root {i} of {n} did not converge"
            )));
        }
        z = zb;
        nodes[i] = zb;
        // pp and p2 both carry the scale factor; undo it twice. Distant
        // nodes underflow to zero weight, which is harmless: their true
        // weights are below the f64 range anyway.
        let mut w = -1.0 / (pp * nf * p2);
        for _ in 0..2 * rescales {
            w /= RESCALE_LIMIT;
        }
        weights[i] = w;
    }
    Ok(Rule { nodes, weights })
}

/// Gauss-Legendre rule of order `n` on [-1, 1]:
/// int_{-1}^{1} f(x) dx ~= sum w_i f(x_i).
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "quadrature order must be positive".into(),
        ));
    }
    let nf = n as f64;
    let m = (n + 1) / 2;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        let mut pp = 0.0;
        for _ in 0..MAX_NEWTON_ITER {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= LEGENDRE_EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::QuadratureNonConvergence(format!(
                "Gauss-Legendre root {i} of {n} did not converge"
            )));
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(Rule { nodes, weights })
}
