//! Coupled-basis two-component states |n l j m> and their degenerate
//! subspaces. Component amplitudes stay exact ([`ExactValue`]) until a state
//! is evaluated at a point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num_complex::Complex64;

use crate::angular::{ExactValue, HalfInt};
use crate::harmonics::spherical_harmonic;
use crate::radial::{radial_wavefunction, RadialState};
use crate::{Error, Result};

/// Quantum numbers (n, l, j, m) with nuclear charge Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub j: HalfInt,
    pub m: HalfInt,
    pub z: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, j: HalfInt, m: HalfInt, z: u32) -> Result<Self> {
        if n == 0 || z == 0 {
            return Err(Error::InvalidQuantumNumbers(
                "n and Z must be >= 1".into(),
            ));
        }
        if l >= n {
            return Err(Error::InvalidQuantumNumbers(format!(
                "l = {l} must satisfy l <= n - 1 = {}",
                n - 1
            )));
        }
        let tl = 2 * l as i64;
        if (j.twice() - tl).abs() != 1 {
            return Err(Error::InvalidQuantumNumbers(format!(
                "j = {j} must be l +- 1/2 for l = {l}"
            )));
        }
        if j.twice() < 1 {
            return Err(Error::InvalidQuantumNumbers(format!("j = {j} must be >= 1/2")));
        }
        if !j.same_character(m) || m.abs().twice() > j.twice() {
            return Err(Error::InvalidQuantumNumbers(format!(
                "m = {m} incompatible with j = {j}"
            )));
        }
        Ok(QuantumNumbers { n, l, j, m, z })
    }
}

/// Which of the two multiplet forms (or the l = 0 doublet) a spinor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinorVariant {
    /// l = j - 1/2, l > 0.
    TypeOne,
    /// l = j + 1/2.
    TypeTwo,
    /// l = 0, j = 1/2.
    SWave,
}

/// Two-component angular-radial state. The upper component multiplies
/// R_{n,l} Y_l^{m-1/2}, the lower R_{n,l} Y_l^{m+1/2}.
#[derive(Clone, Debug)]
pub struct CoupledSpinor {
    pub qn: QuantumNumbers,
    pub variant: SpinorVariant,
    pub up: ExactValue,
    pub down: ExactValue,
}

impl CoupledSpinor {
    /// Azimuthal quantum number of the upper component, m - 1/2.
    pub fn m_up(&self) -> i64 {
        (self.qn.m.twice() - 1) / 2
    }

    /// Azimuthal quantum number of the lower component, m + 1/2.
    pub fn m_down(&self) -> i64 {
        (self.qn.m.twice() + 1) / 2
    }

    /// Spatial parity (-1)^l.
    pub fn parity(&self) -> i8 {
        if self.qn.l % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn radial_state(&self) -> RadialState {
        RadialState::new(self.qn.n, self.qn.l, self.qn.z).expect("validated at construction")
    }
}

fn half_ratio(twice_num: i64, twice_den: i64) -> BigRational {
    // (twice_num/2) / (twice_den/2) = twice_num / twice_den
    BigRational::new(BigInt::from(twice_num), BigInt::from(twice_den))
}

/// Builds the coupled spinor for the given quantum numbers.
pub fn coupled_state(qn: QuantumNumbers) -> Result<CoupledSpinor> {
    QuantumNumbers::new(qn.n, qn.l, qn.j, qn.m, qn.z)?;
    let tj = qn.j.twice();
    let tm = qn.m.twice();
    let (variant, up, down) = if qn.l == 0 {
        // Doublet (m + 1/2, 1/2 - m): exactly (1, 0) or (0, 1).
        (
            SpinorVariant::SWave,
            ExactValue::from_int((tm + 1) / 2),
            ExactValue::from_int((1 - tm) / 2),
        )
    } else if 2 * qn.l as i64 == tj - 1 {
        // (sqrt(j+m), sqrt(j-m)) / sqrt(2j)
        (
            SpinorVariant::TypeOne,
            ExactValue::sqrt_rational(half_ratio(tj + tm, 2 * tj)),
            ExactValue::sqrt_rational(half_ratio(tj - tm, 2 * tj)),
        )
    } else {
        // (sqrt(j-m+1), -sqrt(j+m+1)) / sqrt(2(j+1))
        (
            SpinorVariant::TypeTwo,
            ExactValue::sqrt_rational(half_ratio(tj - tm + 2, 2 * (tj + 2))),
            -ExactValue::sqrt_rational(half_ratio(tj + tm + 2, 2 * (tj + 2))),
        )
    };
    Ok(CoupledSpinor {
        qn,
        variant,
        up,
        down,
    })
}

/// Evaluates both spinor components at (r, theta, phi). Result in a0^{-3/2}.
pub fn evaluate_spinor(
    s: &CoupledSpinor,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<[Complex64; 2]> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside [0, pi]"
        )));
    }
    let radial = radial_wavefunction(&s.radial_state(), r)?;
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (slot, coeff, m_comp) in [(0, &s.up, s.m_up()), (1, &s.down, s.m_down())] {
        if coeff.is_zero() {
            continue;
        }
        let y = spherical_harmonic(s.qn.l, m_comp, theta, phi)?;
        out[slot] = coeff.to_f64() * radial * y;
    }
    Ok(out)
}

/// The degenerate subspace for fixed (n, j, m, Z), ordered by ascending l.
/// One state when only one of l = j -+ 1/2 fits below n; two otherwise.
pub fn degenerate_subspace(
    n: u32,
    j: HalfInt,
    m: HalfInt,
    z: u32,
) -> Result<Vec<CoupledSpinor>> {
    if j.twice() < 1 || j.is_integer() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j = {j} must be a positive half-odd-integer"
        )));
    }
    if j.twice() > 2 * n as i64 - 1 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "no level with j = {j} exists at n = {n}"
        )));
    }
    if !j.same_character(m) || m.abs().twice() > j.twice() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "m = {m} incompatible with j = {j}"
        )));
    }
    let l_lo = ((j.twice() - 1) / 2) as u32;
    let l_hi = ((j.twice() + 1) / 2) as u32;
    let mut out = Vec::with_capacity(2);
    for l in [l_lo, l_hi] {
        if l <= n - 1 {
            out.push(coupled_state(QuantumNumbers { n, l, j, m, z })?);
        }
    }
    Ok(out)
}

/// All (l, j, m) combinations of a shell n, ordered by (l, 2j, 2m).
pub fn shell_states(n: u32, z: u32) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    for l in 0..n {
        let tl = 2 * l as i64;
        for tj in [tl - 1, tl + 1] {
            if tj < 1 {
                continue;
            }
            let mut tm = -tj;
            while tm <= tj {
                out.push(QuantumNumbers {
                    n,
                    l,
                    j: HalfInt::from_twice(tj),
                    m: HalfInt::from_twice(tm),
                    z,
                });
                tm += 2;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{Signed, Zero};

    fn qn(n: u32, l: u32, tj: i64, tm: i64, z: u32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, HalfInt::from_twice(tj), HalfInt::from_twice(tm), z).unwrap()
    }

    #[test]
    fn swave_ground_state_components() {
        let s = coupled_state(qn(1, 0, 1, 1, 1)).unwrap();
        assert_eq!(s.variant, SpinorVariant::SWave);
        assert_eq!(s.up, ExactValue::one());
        assert!(s.down.is_zero());
    }

    #[test]
    fn type_two_2p_half() {
        // n=2, l=1, j=1/2, m=1/2: (sqrt(1), -sqrt(2))/sqrt(3)
        let s = coupled_state(qn(2, 1, 1, 1, 1)).unwrap();
        assert_eq!(s.variant, SpinorVariant::TypeTwo);
        assert_eq!(
            s.up,
            ExactValue::sqrt_rational(BigRational::new(BigInt::from(1), BigInt::from(3)))
        );
        assert_eq!(
            s.down,
            -ExactValue::sqrt_rational(BigRational::new(BigInt::from(2), BigInt::from(3)))
        );
    }

    #[test]
    fn coefficients_normalized_exactly() {
        for n in 1..=4u32 {
            for q in shell_states(n, 1) {
                let s = coupled_state(q).unwrap();
                let sum = s.up.signed_square().abs() + s.down.signed_square().abs();
                assert!(
                    (sum - BigRational::new(BigInt::from(1), BigInt::from(1))).is_zero(),
                    "not normalized at {:?}",
                    q
                );
            }
        }
    }

    #[test]
    fn rejects_bad_lj_pairing() {
        assert!(QuantumNumbers::new(2, 0, HalfInt::from_twice(3), HalfInt::HALF, 1).is_err());
        assert!(QuantumNumbers::new(3, 2, HalfInt::from_twice(1), HalfInt::HALF, 1).is_err());
    }

    #[test]
    fn subspace_sizes() {
        // n=1, j=1/2: only l=0
        let s = degenerate_subspace(1, HalfInt::HALF, HalfInt::HALF, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].variant, SpinorVariant::SWave);
        // n=2, j=1/2: l=0 and l=1
        let s = degenerate_subspace(2, HalfInt::HALF, HalfInt::HALF, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].qn.l, 0);
        assert_eq!(s[1].qn.l, 1);
        // n=3, j=5/2: only l=2 (l=3 would exceed n-1)
        let s = degenerate_subspace(3, HalfInt::from_twice(5), HalfInt::HALF, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].qn.l, 2);
    }

    #[test]
    fn subspace_rejects_j_above_level() {
        assert!(degenerate_subspace(1, HalfInt::from_twice(3), HalfInt::HALF, 1).is_err());
    }

    #[test]
    fn two_state_subspaces_have_opposite_parity() {
        for n in 2..=4u32 {
            let mut tj = 1;
            while tj <= 2 * n as i64 - 1 {
                let sub =
                    degenerate_subspace(n, HalfInt::from_twice(tj), HalfInt::HALF, 1).unwrap();
                if sub.len() == 2 {
                    assert_ne!(sub[0].parity(), sub[1].parity());
                    assert_ne!(sub[0].qn.l, sub[1].qn.l);
                }
                tj += 2;
            }
        }
    }

    #[test]
    fn swave_second_component_vanishes_pointwise() {
        let s = coupled_state(qn(2, 0, 1, 1, 1)).unwrap();
        let v = evaluate_spinor(&s, 1.3, 0.8, 2.1).unwrap();
        assert_eq!(v[1], Complex64::new(0.0, 0.0));
        assert!(v[0].norm() > 0.0);
    }

    #[test]
    fn evaluate_rejects_bad_angles() {
        let s = coupled_state(qn(1, 0, 1, 1, 1)).unwrap();
        assert!(evaluate_spinor(&s, 1.0, -0.2, 0.0).is_err());
        assert!(evaluate_spinor(&s, 1.0, 4.0, 0.0).is_err());
    }
}
