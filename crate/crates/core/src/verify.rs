//! End-to-end comparison of every closed-form shift against the quadrature
//! oracle, plus the selection-rule scans. Used by the command-line `verify`
//! command and by the acceptance suite.

use crate::angular::HalfInt;
use crate::oracle::{
    degenerate_subspace_shifts, m_conservation_check, matrix_element, PotentialSpec,
    QuadratureGrid, ORACLE_TOL,
};
use crate::perturb::{
    displaced_quadratic_shift, lennard_jones_shift, linear_shift, quadratic_shift, vdw_shift,
};
use crate::states::degenerate_subspace;
use crate::Result;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_max: u32,
    pub z_values: Vec<u32>,
    pub rel_tol: f64,
    pub abs_floor: f64,
    /// Test hook: multiplies the closed-form quadratic coupling by
    /// (1 + 1e-6) so that a working verifier must report discrepancies.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 4,
            z_values: vec![1, 2],
            rel_tol: 1e-9,
            abs_floor: 1e-12,
            inject_fault: false,
        }
    }
}

/// One closed-form-vs-oracle comparison for a degenerate subspace.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub potential: String,
    pub n: u32,
    pub twice_j: i64,
    pub twice_m: i64,
    pub z: u32,
    /// Closed-form eigenvalues, descending.
    pub closed: Vec<f64>,
    /// Oracle eigenvalues, descending.
    pub oracle: Vec<f64>,
    pub deviation: f64,
    pub pass: bool,
}

/// Aggregate of the parity and m-conservation scans.
#[derive(Clone, Debug, Default)]
pub struct SelectionRuleSummary {
    /// Largest parity-forbidden off-diagonal element (even potentials only).
    pub max_parity_forbidden: f64,
    /// Largest cross-m element over all levels and variants.
    pub max_cross_m: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub selection: SelectionRuleSummary,
    pub max_deviation: f64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.selection.pass && self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// The coupling values used by the standard verification sweep. Arbitrary
/// non-special magnitudes so no cancellation hides a wrong factor.
pub fn standard_potentials(z: u32) -> Vec<(&'static str, PotentialSpec)> {
    let mut out = vec![
        ("linear", PotentialSpec::Linear { lambda: 0.37 }),
        ("quadratic", PotentialSpec::Quadratic { lambda: 0.37 }),
        (
            "displaced-quadratic",
            PotentialSpec::DisplacedQuadratic { lambda: 0.37, z0: 1.0 },
        ),
        (
            "generalized-vdw",
            PotentialSpec::GeneralizedVdw { gamma: -0.23, beta_sq: 1.8 },
        ),
    ];
    if z == 1 {
        // The wall formula is quoted for hydrogen only.
        out.push(("lennard-jones", PotentialSpec::LennardJones { d: 12.0 }));
    }
    out
}

/// Closed-form eigenvalues of `v` in the (n, j, m, Z) subspace, descending,
/// matching the oracle's ordering convention.
pub fn closed_form_shifts(
    n: u32,
    j: HalfInt,
    m: HalfInt,
    z: u32,
    v: &PotentialSpec,
) -> Result<Vec<f64>> {
    let states = degenerate_subspace(n, j, m, z)?;
    let mut values = match *v {
        PotentialSpec::Constant(c) => states.iter().map(|_| c).collect::<Vec<_>>(),
        PotentialSpec::Linear { lambda } => {
            if states.len() == 2 {
                let pair = linear_shift(n, j, m, lambda, z)?;
                vec![pair.plus, pair.minus]
            } else {
                vec![0.0]
            }
        }
        PotentialSpec::Quadratic { lambda } => states
            .iter()
            .map(|s| quadratic_shift(n, s.qn.l, j, m, lambda, z))
            .collect::<Result<Vec<_>>>()?,
        PotentialSpec::DisplacedQuadratic { lambda, z0 } => {
            let pair = displaced_quadratic_shift(n, j, m, lambda, z0, z)?;
            if states.len() == 2 {
                vec![pair.plus, pair.minus]
            } else {
                vec![pair.plus]
            }
        }
        PotentialSpec::GeneralizedVdw { gamma, beta_sq } => states
            .iter()
            .map(|s| vdw_shift(n, s.qn.l, j, m, gamma, beta_sq, z))
            .collect::<Result<Vec<_>>>()?,
        PotentialSpec::LennardJones { d } => states
            .iter()
            .map(|s| lennard_jones_shift(n, s.qn.l, j, m, d))
            .collect::<Result<Vec<_>>>()?,
    };
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite shifts"));
    Ok(values)
}

fn fault_adjusted(v: &PotentialSpec, inject: bool) -> PotentialSpec {
    if !inject {
        return *v;
    }
    match *v {
        PotentialSpec::Quadratic { lambda } => PotentialSpec::Quadratic {
            lambda: lambda * (1.0 + 1e-6),
        },
        other => other,
    }
}

/// All half-odd j values admissible at shell n, as doubled integers.
pub fn level_j_values(n: u32) -> impl Iterator<Item = i64> {
    (0..n as i64).map(|k| 2 * k + 1)
}

/// Runs the closed-form-vs-oracle sweep plus selection-rule scans.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let mut records = Vec::new();
    let mut max_deviation = 0.0_f64;
    for &z in &cfg.z_values {
        for n in 1..=cfg.n_max {
            for tj in level_j_values(n) {
                let j = HalfInt::from_twice(tj);
                let mut tm = -tj;
                while tm <= tj {
                    let m = HalfInt::from_twice(tm);
                    for (name, v) in standard_potentials(z) {
                        let closed_v = fault_adjusted(&v, cfg.inject_fault);
                        let closed = closed_form_shifts(n, j, m, z, &closed_v)?;
                        let oracle = degenerate_subspace_shifts(n, j, m, z, &v)?;
                        debug_assert_eq!(closed.len(), oracle.len());
                        let mut deviation = 0.0_f64;
                        let mut pass = true;
                        for (c, o) in closed.iter().zip(&oracle) {
                            let err = (c - o).abs();
                            let allowed = (cfg.rel_tol * o.abs()).max(cfg.abs_floor);
                            deviation = deviation.max(err);
                            if err > allowed {
                                pass = false;
                            }
                        }
                        max_deviation = max_deviation.max(deviation);
                        records.push(CheckRecord {
                            potential: name.to_string(),
                            n,
                            twice_j: tj,
                            twice_m: tm,
                            z,
                            closed,
                            oracle,
                            deviation,
                            pass,
                        });
                    }
                    tm += 2;
                }
            }
        }
    }
    let selection = selection_rule_scan(cfg.n_max.min(3))?;
    Ok(VerificationReport {
        records,
        selection,
        max_deviation,
    })
}

/// Parity-forbidden off-diagonal and cross-m element scan for n up to
/// `n_max`, hydrogen, over every standard potential variant.
pub fn selection_rule_scan(n_max: u32) -> Result<SelectionRuleSummary> {
    let mut summary = SelectionRuleSummary {
        pass: true,
        ..Default::default()
    };
    for n in 1..=n_max {
        for tj in level_j_values(n) {
            let j = HalfInt::from_twice(tj);
            for (_, v) in standard_potentials(1) {
                // Cross-m elements must vanish for every variant.
                let report = m_conservation_check(n, j, 1, &v)?;
                summary.max_cross_m = summary.max_cross_m.max(report.max_cross_m);
                if !report.passed() {
                    summary.pass = false;
                }
                // Parity-forbidden off-diagonals only for even potentials.
                if !v.is_parity_even() {
                    continue;
                }
                let mut tm = -tj;
                while tm <= tj {
                    let m = HalfInt::from_twice(tm);
                    let states = degenerate_subspace(n, j, m, 1)?;
                    if states.len() == 2 {
                        let grid = QuadratureGrid::for_l_max(states[1].qn.l);
                        let el = matrix_element(&states[0], &states[1], &v, &grid)?.norm();
                        summary.max_parity_forbidden = summary.max_parity_forbidden.max(el);
                        if el >= ORACLE_TOL {
                            summary.pass = false;
                        }
                    }
                    tm += 2;
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = VerifyConfig {
            n_max: 2,
            z_values: vec![1],
            ..Default::default()
        };
        let report = run_verification(&cfg).unwrap();
        assert!(report.all_passed(), "max deviation {}", report.max_deviation);
        assert!(!report.records.is_empty());
    }

    #[test]
    fn injected_fault_is_detected() {
        let cfg = VerifyConfig {
            n_max: 2,
            z_values: vec![1],
            inject_fault: true,
            ..Default::default()
        };
        let report = run_verification(&cfg).unwrap();
        assert!(!report.all_passed());
        let failing: Vec<_> = report.failures().collect();
        assert!(!failing.is_empty());
        assert!(failing.iter().all(|r| r.potential == "quadratic"));
    }
}
