//! Brute-force verification engine: perturbation matrices in each degenerate
//! subspace are assembled by direct 3D quadrature over the spinor states and
//! diagonalized numerically. Nothing here calls the closed-form shift
//! formulas or the exact 3j algebra; spherical harmonics and radial
//! functions are evaluated pointwise and integrated.

use num_complex::Complex64;

use crate::angular::HalfInt;
use crate::harmonics::spherical_harmonic;
use crate::quadrature::{gauss_laguerre, gauss_legendre};
use crate::radial::radial_polynomial_part;
use crate::states::{degenerate_subspace, CoupledSpinor};
use crate::{Error, Result};

/// Convergence tolerance for grid-refinement checks (absolute, Ry scale).
pub const ORACLE_TOL: f64 = 1e-10;

/// Symbolic perturbation, evaluated pointwise as a function of (r, cos
/// theta); every variant is azimuthally symmetric. Energies in Ry, lengths
/// in a0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PotentialSpec {
    Constant(f64),
    /// lambda z
    Linear { lambda: f64 },
    /// lambda z^2
    Quadratic { lambda: f64 },
    /// lambda (z - z0)^2
    DisplacedQuadratic { lambda: f64, z0: f64 },
    /// gamma (x^2 + y^2 + beta^2 z^2) = gamma (r^2 + (beta^2 - 1) z^2)
    GeneralizedVdw { gamma: f64, beta_sq: f64 },
    /// Conducting wall at distance d: gamma_LJ (x^2 + y^2 + 2 z^2) with
    /// gamma_LJ = -1/(4 d^3) Ry/a0^2.
    LennardJones { d: f64 },
}

impl PotentialSpec {
    pub fn eval(&self, r: f64, cos_theta: f64) -> f64 {
        let z = r * cos_theta;
        match *self {
            PotentialSpec::Constant(c) => c,
            PotentialSpec::Linear { lambda } => lambda * z,
            PotentialSpec::Quadratic { lambda } => lambda * z * z,
            PotentialSpec::DisplacedQuadratic { lambda, z0 } => lambda * (z - z0) * (z - z0),
            PotentialSpec::GeneralizedVdw { gamma, beta_sq } => {
                gamma * (r * r + (beta_sq - 1.0) * z * z)
            }
            PotentialSpec::LennardJones { d } => -(r * r + z * z) / (4.0 * d * d * d),
        }
    }

    /// True when V(r, -u) = V(r, u), i.e. the potential is parity even and
    /// cannot couple states of opposite parity.
    pub fn is_parity_even(&self) -> bool {
        !matches!(
            self,
            PotentialSpec::Linear { .. } | PotentialSpec::DisplacedQuadratic { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        let finite = match *self {
            PotentialSpec::Constant(c) => c.is_finite(),
            PotentialSpec::Linear { lambda } | PotentialSpec::Quadratic { lambda } => {
                lambda.is_finite()
            }
            PotentialSpec::DisplacedQuadratic { lambda, z0 } => {
                lambda.is_finite() && z0.is_finite()
            }
            PotentialSpec::GeneralizedVdw { gamma, beta_sq } => {
                gamma.is_finite() && beta_sq.is_finite()
            }
            PotentialSpec::LennardJones { d } => d.is_finite() && d > 0.0,
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "non-finite or invalid potential parameters: {self:?}"
            )))
        }
    }
}

/// Node counts for the product quadrature grid. The azimuthal direction
/// uses a uniform trapezoid rule, exact for the trigonometric polynomials
/// coming from Y* Y products as long as the node count exceeds the maximal
/// azimuthal order.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureGrid {
    pub radial_order: usize,
    pub polar_order: usize,
    pub azimuthal_order: usize,
}

impl QuadratureGrid {
    /// Default sizing for states up to orbital momentum `l_max`.
    pub fn for_l_max(l_max: u32) -> Self {
        QuadratureGrid {
            radial_order: 64,
            polar_order: 2 * (2 * l_max as usize + 3),
            azimuthal_order: 32.max(2 * (2 * l_max as usize + 1) + 2),
        }
    }

    pub fn refined(&self) -> Self {
        QuadratureGrid {
            radial_order: self.radial_order * 2,
            polar_order: self.polar_order * 2,
            azimuthal_order: self.azimuthal_order * 2,
        }
    }
}

/// <bra| V |ket> by direct quadrature at the given grid size. The states
/// must belong to the same shell (n, Z).
pub fn matrix_element(
    bra: &CoupledSpinor,
    ket: &CoupledSpinor,
    v: &PotentialSpec,
    grid: &QuadratureGrid,
) -> Result<Complex64> {
    v.validate()?;
    if bra.qn.n != ket.qn.n || bra.qn.z != ket.qn.z {
        return Err(Error::InvalidArgument(
            "matrix element requires bra and ket in the same (n, Z) shell".into(),
        ));
    }
    let radial_rule = gauss_laguerre(grid.radial_order)?;
    let polar_rule = gauss_legendre(grid.polar_order)?;
    let n_phi = grid.azimuthal_order;

    // Radial profiles in the shared scaled variable x = 2 Z r / n; the
    // e^{-x} of the two wavefunction factors is absorbed by the Laguerre
    // weight.
    let scale = bra.radial_state().length_scale();
    let bra_radial: Vec<f64> = radial_rule
        .nodes
        .iter()
        .map(|&x| radial_polynomial_part(&bra.radial_state(), x))
        .collect();
    let ket_radial: Vec<f64> = radial_rule
        .nodes
        .iter()
        .map(|&x| radial_polynomial_part(&ket.radial_state(), x))
        .collect();

    // Spin components pair diagonally: spin-up of the bra with spin-up of
    // the ket, likewise spin-down. For each active slot, pre-sum the
    // azimuthal direction (the potential has no phi dependence), leaving a
    // polar profile conj(Y_b) Y_k integrated over phi.
    let d_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let slots = [
        (bra.up.to_f64(), bra.m_up(), ket.up.to_f64(), ket.m_up()),
        (
            bra.down.to_f64(),
            bra.m_down(),
            ket.down.to_f64(),
            ket.m_down(),
        ),
    ];
    let mut angular_profile = vec![Complex64::new(0.0, 0.0); polar_rule.nodes.len()];
    for (cb, mb, ck, mk) in slots {
        if cb == 0.0 || ck == 0.0 {
            continue;
        }
        for (j, &u) in polar_rule.nodes.iter().enumerate() {
            let theta = u.acos();
            let mut phi_sum = Complex64::new(0.0, 0.0);
            for k in 0..n_phi {
                let phi = d_phi * k as f64;
                let yb = spherical_harmonic(bra.qn.l, mb, theta, phi)?;
                let yk = spherical_harmonic(ket.qn.l, mk, theta, phi)?;
                phi_sum += yb.conj() * yk;
            }
            angular_profile[j] += cb * ck * phi_sum * d_phi;
        }
    }

    let mut total = Complex64::new(0.0, 0.0);
    for (ri, (&x, &wr)) in radial_rule.nodes.iter().zip(&radial_rule.weights).enumerate() {
        let r = scale * x;
        let radial_pair = bra_radial[ri] * ket_radial[ri];
        let mut angular = Complex64::new(0.0, 0.0);
        for ((&u, &wu), &prof) in polar_rule
            .nodes
            .iter()
            .zip(&polar_rule.weights)
            .zip(&angular_profile)
        {
            angular += wu * v.eval(r, u) * prof;
        }
        total += wr * radial_pair * r * r * angular;
    }
    Ok(total * scale)
}

/// Matrix element with a grid-refinement convergence check; errors if
/// doubling every node count moves the result by more than [`ORACLE_TOL`].
pub fn matrix_element_checked(
    bra: &CoupledSpinor,
    ket: &CoupledSpinor,
    v: &PotentialSpec,
    grid: &QuadratureGrid,
) -> Result<Complex64> {
    let coarse = matrix_element(bra, ket, v, grid)?;
    let fine = matrix_element(bra, ket, v, &grid.refined())?;
    if (fine - coarse).norm() > ORACLE_TOL * fine.norm().max(1.0) {
        return Err(Error::QuadratureNonConvergence(format!(
            "matrix element between l = {} and l = {} moved by {:e} under refinement",
            bra.qn.l,
            ket.qn.l,
            (fine - coarse).norm()
        )));
    }
    Ok(fine)
}

// Eigenvalues of [[h11, h12], [conj(h12), h22]] in descending order, by the
// explicit solution with a hypot-stabilized discriminant. Local on purpose:
// the oracle must not share the closed-form solver.
fn eigenvalues_descending(h11: f64, h22: f64, h12: Complex64) -> (f64, f64) {
    let half_trace = 0.5 * (h11 + h22);
    let disc = 0.5 * f64::hypot(h11 - h22, 2.0 * h12.norm());
    (half_trace + disc, half_trace - disc)
}

/// First-order shifts of the (n, j, m, Z) subspace under `v`, as eigenvalues
/// of the numerically assembled 1x1 or 2x2 matrix, descending.
pub fn degenerate_subspace_shifts(
    n: u32,
    j: HalfInt,
    m: HalfInt,
    z: u32,
    v: &PotentialSpec,
) -> Result<Vec<f64>> {
    let states = degenerate_subspace(n, j, m, z)?;
    let l_max = states.iter().map(|s| s.qn.l).max().unwrap_or(0);
    let grid = QuadratureGrid::for_l_max(l_max);
    match states.len() {
        1 => {
            let h = matrix_element_checked(&states[0], &states[0], v, &grid)?;
            Ok(vec![h.re])
        }
        2 => {
            let h11 = matrix_element_checked(&states[0], &states[0], v, &grid)?;
            let h22 = matrix_element_checked(&states[1], &states[1], v, &grid)?;
            let h12 = matrix_element_checked(&states[0], &states[1], v, &grid)?;
            let (hi, lo) = eigenvalues_descending(h11.re, h22.re, h12);
            Ok(vec![hi, lo])
        }
        _ => unreachable!("a degenerate (n, j, m) subspace has at most two states"),
    }
}

/// Outcome of the cross-m selection-rule scan for one level (n, j).
#[derive(Clone, Debug)]
pub struct MConservationReport {
    pub n: u32,
    pub j: HalfInt,
    pub max_cross_m: f64,
    /// (l_bra, 2m_bra, l_ket, 2m_ket, |element|) for any violating pair.
    pub violations: Vec<(u32, i64, u32, i64, f64)>,
}

impl MConservationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every cross-m matrix element of `v` within the level (n, j)
/// stays below [`ORACLE_TOL`].
pub fn m_conservation_check(
    n: u32,
    j: HalfInt,
    z: u32,
    v: &PotentialSpec,
) -> Result<MConservationReport> {
    let mut level_states: Vec<CoupledSpinor> = Vec::new();
    let mut tm = -j.twice();
    while tm <= j.twice() {
        level_states.extend(degenerate_subspace(n, j, HalfInt::from_twice(tm), z)?);
        tm += 2;
    }
    let l_max = level_states.iter().map(|s| s.qn.l).max().unwrap_or(0);
    let grid = QuadratureGrid::for_l_max(l_max);
    let mut report = MConservationReport {
        n,
        j,
        max_cross_m: 0.0,
        violations: Vec::new(),
    };
    for bra in &level_states {
        for ket in &level_states {
            if bra.qn.m == ket.qn.m {
                continue;
            }
            let el = matrix_element(bra, ket, v, &grid)?.norm();
            report.max_cross_m = report.max_cross_m.max(el);
            if el >= ORACLE_TOL {
                report.violations.push((
                    bra.qn.l,
                    bra.qn.m.twice(),
                    ket.qn.l,
                    ket.qn.m.twice(),
                    el,
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{coupled_state, QuantumNumbers};
    use approx::assert_abs_diff_eq;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn spinor(n: u32, l: u32, tj: i64, tm: i64) -> CoupledSpinor {
        coupled_state(QuantumNumbers::new(n, l, h(tj), h(tm), 1).unwrap()).unwrap()
    }

    #[test]
    fn constant_potential_gives_normalization() {
        let grid = QuadratureGrid::for_l_max(2);
        for s in [spinor(1, 0, 1, 1), spinor(2, 1, 3, 1), spinor(3, 2, 3, -3)] {
            let el = matrix_element(&s, &s, &PotentialSpec::Constant(1.0), &grid).unwrap();
            assert_abs_diff_eq!(el.re, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(el.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn quadratic_off_diagonal_vanishes() {
        let grid = QuadratureGrid::for_l_max(1);
        let phi1 = spinor(2, 0, 1, 1);
        let phi2 = spinor(2, 1, 1, 1);
        let el = matrix_element(
            &phi1,
            &phi2,
            &PotentialSpec::Quadratic { lambda: 1.0 },
            &grid,
        )
        .unwrap();
        assert!(el.norm() < 1e-10, "{el}");
    }

    #[test]
    fn quadratic_diagonal_matches_expected_value() {
        // <phi| lambda z^2 |phi> for n=2, l=1, j=3/2, m=3/2 -> 6 lambda a0^2
        let grid = QuadratureGrid::for_l_max(1);
        let s = spinor(2, 1, 3, 3);
        let el = matrix_element(&s, &s, &PotentialSpec::Quadratic { lambda: 1.0 }, &grid)
            .unwrap();
        assert_abs_diff_eq!(el.re, 6.0, epsilon = 1e-10);
    }

    #[test]
    fn hermiticity() {
        let grid = QuadratureGrid::for_l_max(2);
        let a = spinor(3, 1, 3, 1);
        let b = spinor(3, 2, 3, 1);
        for v in [
            PotentialSpec::Linear { lambda: 0.7 },
            PotentialSpec::Quadratic { lambda: 0.7 },
            PotentialSpec::DisplacedQuadratic { lambda: 0.7, z0: 1.2 },
        ] {
            let ab = matrix_element(&a, &b, &v, &grid).unwrap();
            let ba = matrix_element(&b, &a, &v, &grid).unwrap();
            assert!((ab - ba.conj()).norm() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn displaced_quadratic_subspace_regression() {
        let shifts = degenerate_subspace_shifts(
            2,
            h(1),
            h(1),
            1,
            &PotentialSpec::DisplacedQuadratic { lambda: 1.0, z0: 1.0 },
        )
        .unwrap();
        assert_eq!(shifts.len(), 2);
        assert_abs_diff_eq!(shifts[0], 17.0, epsilon = 1e-9);
        assert_abs_diff_eq!(shifts[1], 9.0, epsilon = 1e-9);
    }

    #[test]
    fn linear_subspace_regression() {
        let shifts =
            degenerate_subspace_shifts(2, h(1), h(1), 1, &PotentialSpec::Linear { lambda: 1.0 })
                .unwrap();
        let expected = 3.0_f64.sqrt();
        assert_abs_diff_eq!(shifts[0], expected, epsilon = 1e-9);
        assert_abs_diff_eq!(shifts[1], -expected, epsilon = 1e-9);
    }

    #[test]
    fn quadratic_eigenvalues_equal_diagonal() {
        let v = PotentialSpec::Quadratic { lambda: 0.9 };
        let grid = QuadratureGrid::for_l_max(1);
        let phi1 = spinor(2, 0, 1, -1);
        let phi2 = spinor(2, 1, 1, -1);
        let h11 = matrix_element(&phi1, &phi1, &v, &grid).unwrap().re;
        let h22 = matrix_element(&phi2, &phi2, &v, &grid).unwrap().re;
        let shifts = degenerate_subspace_shifts(2, h(1), h(-1), 1, &v).unwrap();
        assert_abs_diff_eq!(shifts[0], h11.max(h22), epsilon = 1e-10);
        assert_abs_diff_eq!(shifts[1], h11.min(h22), epsilon = 1e-10);
    }

    #[test]
    fn m_conservation_for_all_variants() {
        for v in [
            PotentialSpec::Constant(1.0),
            PotentialSpec::Quadratic { lambda: 1.0 },
            PotentialSpec::Linear { lambda: 1.0 },
        ] {
            let report = m_conservation_check(2, h(1), 1, &v).unwrap();
            assert!(report.passed(), "{v:?}: max {}", report.max_cross_m);
        }
        let report =
            m_conservation_check(3, h(3), 1, &PotentialSpec::Linear { lambda: 1.0 }).unwrap();
        assert!(report.passed(), "max {}", report.max_cross_m);
    }

    #[test]
    fn cross_shell_element_rejected() {
        let grid = QuadratureGrid::for_l_max(1);
        let a = spinor(1, 0, 1, 1);
        let b = spinor(2, 0, 1, 1);
        assert!(matrix_element(&a, &b, &PotentialSpec::Constant(1.0), &grid).is_err());
    }

    #[test]
    fn spinor_norm_and_cross_overlap_by_quadrature() {
        // <s|s> = 1 and TypeOne/TypeTwo overlap = 0 at equal (n, j, m).
        let grid = QuadratureGrid::for_l_max(2);
        let one = spinor(3, 1, 3, 1);
        let two = spinor(3, 2, 3, 1);
        let norm = matrix_element(&one, &one, &PotentialSpec::Constant(1.0), &grid).unwrap();
        let cross = matrix_element(&one, &two, &PotentialSpec::Constant(1.0), &grid).unwrap();
        assert_abs_diff_eq!(norm.re, 1.0, epsilon = 1e-10);
        assert!(cross.norm() < 1e-10);
    }
}
