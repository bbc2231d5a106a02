//! Acceptance suite: one test per release criterion, each printing a single
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use hydroshift::angular::{tabulated_3j_l2l, wigner3j, HalfInt};
use hydroshift::constants::{NORMAL_PRESSURE_PA, NORMAL_TEMPERATURE_K};
use hydroshift::oracle::{degenerate_subspace_shifts, PotentialSpec};
use hydroshift::perturb::{
    lennard_jones_rational, lennard_jones_shift, linear_shift, quadratic_shift_rational,
    regime_check,
};
use hydroshift::radial::{r2_expectation, r2_expectation_rational, radial_moment_quadrature, RadialState};
use hydroshift::states::shell_states;
use hydroshift::verify::{closed_form_shifts, level_j_values, selection_rule_scan};

fn report(criterion: u32, label: &str, ok: bool) {
    println!(
        "criterion {criterion} ({label}): {}",
        if ok { "pass" } else { "fail" }
    );
    assert!(ok, "criterion {criterion} ({label}) failed");
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// 1. Quadrature-built subspace eigenvalues for the axial quadratic
/// potential match the closed-form shift to 1e-9 relative, for every level
/// with n <= 4 and Z in {1, 2}.
#[test]
fn criterion_1_oracle_equivalence_quadratic() {
    let lambda = 0.37;
    let v = PotentialSpec::Quadratic { lambda };
    let mut ok = true;
    for z in [1u32, 2] {
        for n in 1..=4u32 {
            for tj in level_j_values(n) {
                let j = HalfInt::from_twice(tj);
                let mut tm = -tj;
                while tm <= tj {
                    let m = HalfInt::from_twice(tm);
                    let closed = closed_form_shifts(n, j, m, z, &v).unwrap();
                    let oracle = degenerate_subspace_shifts(n, j, m, z, &v).unwrap();
                    for (c, o) in closed.iter().zip(&oracle) {
                        if !rel_close(*c, *o, 1e-9) {
                            eprintln!("  mismatch n={n} j={j} m={m} Z={z}: {c} vs {o}");
                            ok = false;
                        }
                    }
                    tm += 2;
                }
            }
        }
    }
    report(1, "oracle equivalence, quadratic shift", ok);
}

/// 2. The ground-state wall shift is -(a0/d)^3 Ry: coefficient of (a0/2d)^3
/// exactly -8 in rational form, and within 1e-12 as a float.
#[test]
fn criterion_2_ground_state_wall_shift() {
    let j = HalfInt::HALF;
    let mut ok = true;
    for tm in [-1i64, 1] {
        let m = HalfInt::from_twice(tm);
        ok &= lennard_jones_rational(1, 0, j, m).unwrap() == big(-8);
        for d in [5.0, 12.0, 40.0] {
            let shift = lennard_jones_shift(1, 0, j, m, d).unwrap();
            ok &= (shift - -(1.0 / d).powi(3)).abs() <= 1e-12;
        }
    }
    report(2, "ground-state wall shift", ok);
}

/// 3. The n = 2, j = 1/2 linear shifts are +-sqrt(3) lambda a0 from the
/// closed form and from the oracle, to 1e-9.
#[test]
fn criterion_3_linear_regression() {
    let lambda = 0.41;
    let expected = 3.0_f64.sqrt() * lambda;
    let mut ok = true;
    for tm in [-1i64, 1] {
        let m = HalfInt::from_twice(tm);
        let pair = linear_shift(2, HalfInt::HALF, m, lambda, 1).unwrap();
        ok &= rel_close(pair.plus, expected, 1e-9) && rel_close(pair.minus, -expected, 1e-9);
        let oracle =
            degenerate_subspace_shifts(2, HalfInt::HALF, m, 1, &PotentialSpec::Linear { lambda })
                .unwrap();
        ok &= oracle.len() == 2
            && rel_close(oracle[0], expected, 1e-9)
            && rel_close(oracle[1], -expected, 1e-9);
    }
    report(3, "linear shift regression", ok);
}

/// 4. Displaced-quadratic closed form matches oracle diagonalization to
/// 1e-9 for every two-state subspace with n <= 3 and z0 in {0, 1/2, 1, 2};
/// at z0 = 0 it reduces to the plain quadratic values.
#[test]
fn criterion_4_displaced_quadratic() {
    let lambda = 0.29;
    let mut ok = true;
    for n in 1..=3u32 {
        for tj in level_j_values(n) {
            let j = HalfInt::from_twice(tj);
            // Two-state subspaces only: both l = j -+ 1/2 below n.
            if (tj + 1) / 2 > n as i64 - 1 {
                continue;
            }
            let mut tm = -tj;
            while tm <= tj {
                let m = HalfInt::from_twice(tm);
                for z0 in [0.0, 0.5, 1.0, 2.0] {
                    let v = PotentialSpec::DisplacedQuadratic { lambda, z0 };
                    let closed = closed_form_shifts(n, j, m, 1, &v).unwrap();
                    let oracle = degenerate_subspace_shifts(n, j, m, 1, &v).unwrap();
                    for (c, o) in closed.iter().zip(&oracle) {
                        if !rel_close(*c, *o, 1e-9) {
                            eprintln!("  mismatch n={n} j={j} m={m} z0={z0}: {c} vs {o}");
                            ok = false;
                        }
                    }
                    if z0 == 0.0 {
                        let plain =
                            closed_form_shifts(n, j, m, 1, &PotentialSpec::Quadratic { lambda })
                                .unwrap();
                        for (c, p) in closed.iter().zip(&plain) {
                            ok &= (c - p).abs() <= 1e-12 * p.abs().max(1.0);
                        }
                    }
                }
                tm += 2;
            }
        }
    }
    report(4, "displaced-quadratic consistency", ok);
}

/// 5. Parity-forbidden off-diagonal elements and cross-m elements stay
/// below 1e-10 for n <= 3 under every potential variant.
#[test]
fn criterion_5_selection_rules() {
    let summary = selection_rule_scan(3).unwrap();
    let ok =
        summary.pass && summary.max_parity_forbidden < 1e-10 && summary.max_cross_m < 1e-10;
    report(5, "selection rules", ok);
}

/// 6. Exact angular algebra: 3j column antisymmetry and orthogonality hold
/// with zero tolerance for all j_i <= 4, and the tabulated (l 2 l; -m 0 m)
/// closed form matches the general evaluation for l <= 6.
#[test]
fn criterion_6_angular_exactness() {
    let mut ok = true;
    for tj1 in 0..=8i64 {
        for tj2 in 0..=8i64 {
            for tj3 in ((tj1 - tj2).abs()..=(tj1 + tj2).min(8)).step_by(2) {
                let (j1, j2, j3) = (
                    HalfInt::from_twice(tj1),
                    HalfInt::from_twice(tj2),
                    HalfInt::from_twice(tj3),
                );
                let phase_even = (tj1 + tj2 + tj3) % 4 == 0;
                let mut ortho = BigRational::zero();
                let mut tm1 = -tj1;
                while tm1 <= tj1 {
                    let mut tm2 = -tj2;
                    while tm2 <= tj2 {
                        let tm3 = -tm1 - tm2;
                        let (m1, m2, m3) = (
                            HalfInt::from_twice(tm1),
                            HalfInt::from_twice(tm2),
                            HalfInt::from_twice(tm3),
                        );
                        if tm3.abs() <= tj3 {
                            let w = wigner3j(j1, j2, j3, m1, m2, m3).unwrap();
                            // Swapping the first two columns multiplies by
                            // (-1)^(j1+j2+j3).
                            let swapped = wigner3j(j2, j1, j3, m2, m1, m3).unwrap();
                            let expected = if phase_even { w.clone() } else { -w.clone() };
                            ok &= swapped == expected;
                            // |3j|^2, exactly.
                            ortho += w.radicand().clone();
                        }
                        tm2 += 2;
                    }
                    tm1 += 2;
                }
                ok &= ortho.is_one();
            }
        }
    }
    for l in 1..=6i64 {
        for m in -l..=l {
            let general = wigner3j(
                HalfInt::from_int(l),
                HalfInt::from_int(2),
                HalfInt::from_int(l),
                HalfInt::from_int(-m),
                HalfInt::ZERO,
                HalfInt::from_int(m),
            )
            .unwrap();
            ok &= tabulated_3j_l2l(l, m).unwrap() == general;
        }
    }
    report(6, "angular exactness", ok);
}

/// 7. The closed-form <r^2> matches quadrature to 1e-10 relative for
/// n <= 6 and Z in {1, 2, 3}; radial normalization holds to 1e-12.
#[test]
fn criterion_7_radial_closed_form() {
    let mut ok = true;
    for z in [1u32, 2, 3] {
        for n in 1..=6u32 {
            for l in 0..n {
                let s = RadialState::new(n, l, z).unwrap();
                let quad = radial_moment_quadrature(&s, 2).unwrap();
                let closed = r2_expectation(n, l, z).unwrap();
                ok &= rel_close(quad, closed, 1e-10);
                let norm = radial_moment_quadrature(&s, 0).unwrap();
                ok &= (norm - 1.0).abs() <= 1e-12;
            }
        }
    }
    report(7, "radial closed form", ok);
}

/// 8. Sum rule: averaging the quadratic shift over m at fixed (n, l, j)
/// gives exactly lambda <r^2> / 3, in rational arithmetic, for n <= 5.
#[test]
fn criterion_8_m_average_sum_rule() {
    let mut ok = true;
    for n in 1..=5u32 {
        let mut seen = std::collections::HashSet::new();
        for q in shell_states(n, 1) {
            if !seen.insert((q.l, q.j.twice())) {
                continue;
            }
            let tj = q.j.twice();
            let mut sum = BigRational::zero();
            let mut tm = -tj;
            while tm <= tj {
                sum += quadratic_shift_rational(n, q.l, q.j, HalfInt::from_twice(tm), 1).unwrap();
                tm += 2;
            }
            let mean = sum / big(tj + 1);
            let expected = r2_expectation_rational(n, q.l, 1).unwrap() / big(3);
            ok &= mean == expected;
        }
    }
    report(8, "m-average sum rule", ok);
}

/// 9. The validity-regime report reproduces the reference magnitudes within
/// 5%: d^3 ~ 40 nm^3 per atom at normal conditions, wall-shift threshold
/// 4.6e-7, alpha^2 ~ 5.3e-5, hyperfine scale ~ 2.9e-8.
#[test]
fn criterion_9_regime_numbers() {
    let r = regime_check(NORMAL_PRESSURE_PA, NORMAL_TEMPERATURE_K, 1).unwrap();
    let within = |value: f64, reference: f64| (value - reference).abs() <= 0.05 * reference;
    let ok = within(r.d_cubed_nm3, 40.0)
        && within(r.lj_condition_threshold, 4.6e-7)
        && within(r.alpha_squared, 5.3e-5)
        && within(r.hyperfine_scale, 2.9e-8);
    report(9, "validity-regime numbers", ok);
}
