//! Exact angular-momentum algebra: Wigner 3j symbols and Gaunt coefficients
//! carried as sign * sqrt(rational) with arbitrary-precision integers.
//!
//! All selection-rule zeros (m-sum, triangle, parity) come out as exact
//! zeros, and symmetry identities hold as exact equalities of [`ExactValue`],
//! not up to floating-point tolerance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Half-integer quantum number (j or m), stored as the doubled value so that
/// 3/2 is `twice = 3` and 2 is `twice = 4`. Parity of `twice` distinguishes
/// integer from half-odd-integer character without any floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// Builds from the doubled value: `from_twice(3)` is 3/2.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt { twice: 2 * value }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True when both values are integers or both are half-odd-integers,
    /// i.e. their difference is an integer.
    pub const fn same_character(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// The integer value, or `None` for half-odd-integers.
    pub const fn as_int(self) -> Option<i64> {
        if self.twice % 2 == 0 {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn abs(self) -> HalfInt {
        HalfInt {
            twice: self.twice.abs(),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Exact value of the form sign * sqrt(radicand * pi^pi_power), with the
/// radicand a non-negative rational in lowest terms. Closed under
/// multiplication; the `pi_power` slot carries the 1/(4 pi) factor of Gaunt
/// coefficients (pure 3j symbols have `pi_power == 0`).
///
/// Two equal values always have identical normalized fields, so `==` is
/// exact value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    sign: i8,
    radicand: BigRational,
    pi_power: i32,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue {
            sign: 0,
            radicand: BigRational::zero(),
            pi_power: 0,
        }
    }

    pub fn one() -> Self {
        ExactValue {
            sign: 1,
            radicand: BigRational::one(),
            pi_power: 0,
        }
    }

    /// The exact rational `r` itself (radicand becomes r^2).
    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return ExactValue::zero();
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        ExactValue {
            sign,
            radicand: &r * &r,
            pi_power: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        ExactValue::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// +sqrt(r); `r` must be non-negative.
    pub fn sqrt_rational(r: BigRational) -> Self {
        assert!(!r.is_negative(), "radicand must be non-negative");
        if r.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            sign: 1,
            radicand: r,
            pi_power: 0,
        }
    }

    /// c * sqrt(r); `r` must be non-negative.
    pub fn times_sqrt(c: BigRational, r: BigRational) -> Self {
        assert!(!r.is_negative(), "radicand must be non-negative");
        if c.is_zero() || r.is_zero() {
            return ExactValue::zero();
        }
        let sign = if c.is_negative() { -1 } else { 1 };
        ExactValue {
            sign,
            radicand: &c * &c * r,
            pi_power: 0,
        }
    }

    /// Multiplies the value by pi^(p/2), i.e. adds `p` to the radicand's
    /// pi exponent. No-op on zero.
    pub fn with_pi_power(mut self, p: i32) -> Self {
        if self.sign != 0 {
            self.pi_power += p;
        }
        self
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// The rational part of the radicand (excludes the pi^pi_power factor).
    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// sign * radicand, the exact square with the sign of the value
    /// reattached. Only meaningful when `pi_power == 0`.
    pub fn signed_square(&self) -> BigRational {
        let s = BigRational::from_integer(BigInt::from(self.sign));
        s * &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let r = self.radicand.to_f64().expect("radicand out of f64 range");
        let scaled = r * std::f64::consts::PI.powi(self.pi_power);
        self.sign as f64 * scaled.sqrt()
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: ExactValue) -> ExactValue {
        if self.sign == 0 || rhs.sign == 0 {
            return ExactValue::zero();
        }
        ExactValue {
            sign: self.sign * rhs.sign,
            radicand: self.radicand * rhs.radicand,
            pi_power: self.pi_power + rhs.pi_power,
        }
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(mut self) -> ExactValue {
        self.sign = -self.sign;
        self
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let s = if self.sign < 0 { "-" } else { "+" };
        match self.pi_power {
            0 => write!(f, "{}sqrt({})", s, self.radicand),
            p => write!(f, "{}sqrt({} * pi^{})", s, self.radicand, p),
        }
    }
}

fn factorial(n: i64) -> BigInt {
    debug_assert!(n >= 0);
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

fn big_ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn check_jm(j: HalfInt, m: HalfInt, label: &str) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{label}: j = {j} must be non-negative"
        )));
    }
    if m.abs().twice() > j.twice() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{label}: |m| = {} exceeds j = {j}",
            m.abs()
        )));
    }
    if !j.same_character(m) {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{label}: j = {j} and m = {m} differ by a non-integer"
        )));
    }
    Ok(())
}

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3), exact.
///
/// Evaluated by the Racah single-sum formula with big-integer factorials.
/// Returns an exact zero when m1+m2+m3 != 0, the triangle condition fails,
/// or j1+j2+j3 is not an integer. Rejects arguments with |m| > j or
/// mismatched integer/half-integer character.
pub fn wigner3j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> Result<ExactValue> {
    check_jm(j1, m1, "(j1, m1)")?;
    check_jm(j2, m2, "(j2, m2)")?;
    check_jm(j3, m3, "(j3, m3)")?;

    let (t1, t2, t3) = (j1.twice(), j2.twice(), j3.twice());
    let (u1, u2, u3) = (m1.twice(), m2.twice(), m3.twice());

    if u1 + u2 + u3 != 0 {
        return Ok(ExactValue::zero());
    }
    // j1 + j2 + j3 must be an integer for a non-zero symbol.
    if (t1 + t2 + t3) % 2 != 0 {
        return Ok(ExactValue::zero());
    }
    let a = (t1 + t2 - t3) / 2;
    let b = (t1 - t2 + t3) / 2;
    let c = (-t1 + t2 + t3) / 2;
    if a < 0 || b < 0 || c < 0 {
        return Ok(ExactValue::zero());
    }

    // Racah sum bounds.
    let q1 = a; // j1 + j2 - j3
    let q2 = (t1 - u1) / 2; // j1 - m1
    let q3 = (t2 + u2) / 2; // j2 + m2
    let r1 = (t3 - t2 + u1) / 2; // j3 - j2 + m1
    let r2 = (t3 - t1 - u2) / 2; // j3 - j1 - m2
    let k_min = 0.max(-r1).max(-r2);
    let k_max = q1.min(q2).min(q3);

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(q1 - k)
            * factorial(q2 - k)
            * factorial(q3 - k)
            * factorial(r1 + k)
            * factorial(r2 + k);
        let num = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        sum += big_ratio(num, denom);
    }
    if sum.is_zero() {
        return Ok(ExactValue::zero());
    }

    // Triangle coefficient times the six (j +- m)! factors, all under the root.
    let delta = big_ratio(
        factorial(a) * factorial(b) * factorial(c),
        factorial((t1 + t2 + t3) / 2 + 1),
    );
    let jm_product = factorial((t1 + u1) / 2)
        * factorial((t1 - u1) / 2)
        * factorial((t2 + u2) / 2)
        * factorial((t2 - u2) / 2)
        * factorial((t3 + u3) / 2)
        * factorial((t3 - u3) / 2);
    let radicand = delta * BigRational::from_integer(jm_product);

    // (-1)^(j1 - j2 - m3); the exponent is an integer whenever the symbol
    // survives the checks above.
    let phase_exp = (t1 - t2 - u3) / 2;
    let coeff = if phase_exp.rem_euclid(2) == 0 {
        sum
    } else {
        -sum
    };
    Ok(ExactValue::times_sqrt(coeff, radicand))
}

/// Tabulated closed form for (l 2 l; -m 0 m):
/// (-1)^(l-m) * 2[3m^2 - l(l+1)] / sqrt((2l+3)(2l+2)(2l+1)(2l)(2l-1)).
///
/// Requires l >= 1; the denominator degenerates at l = 0.
pub fn tabulated_3j_l2l(l: i64, m: i64) -> Result<ExactValue> {
    if l < 1 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "tabulated (l 2 l; -m 0 m) requires l >= 1, got l = {l}"
        )));
    }
    if m.abs() > l {
        return Err(Error::InvalidQuantumNumbers(format!(
            "|m| = {} exceeds l = {l}",
            m.abs()
        )));
    }
    let num = 2 * (3 * m * m - l * (l + 1));
    let signed_num = if (l - m).rem_euclid(2) == 0 { num } else { -num };
    let den = (2 * l + 3) * (2 * l + 2) * (2 * l + 1) * (2 * l) * (2 * l - 1);
    Ok(ExactValue::times_sqrt(
        BigRational::from_integer(BigInt::from(signed_num)),
        big_ratio(BigInt::one(), BigInt::from(den)),
    ))
}

/// Gaunt coefficient <Y_lp^mp | Y_L^M | Y_l^m>, exact:
/// (-1)^mp sqrt((2lp+1)(2L+1)(2l+1)/(4 pi)) (lp L l; -mp M m)(lp L l; 0 0 0).
///
/// The 1/sqrt(4 pi) is carried inside the returned value's radicand via its
/// pi exponent. Exact zero unless mp = M + m, the triangle condition holds,
/// and lp + L + l is even.
pub fn gaunt(lp: i64, mp: i64, big_l: i64, big_m: i64, l: i64, m: i64) -> Result<ExactValue> {
    for (lv, mv, label) in [(lp, mp, "l'"), (big_l, big_m, "L"), (l, m, "l")] {
        if lv < 0 {
            return Err(Error::InvalidQuantumNumbers(format!(
                "{label} = {lv} must be non-negative"
            )));
        }
        if mv.abs() > lv {
            return Err(Error::InvalidQuantumNumbers(format!(
                "|m| = {} exceeds {label} = {lv}",
                mv.abs()
            )));
        }
    }
    let w1 = wigner3j(
        HalfInt::from_int(lp),
        HalfInt::from_int(big_l),
        HalfInt::from_int(l),
        HalfInt::from_int(-mp),
        HalfInt::from_int(big_m),
        HalfInt::from_int(m),
    )?;
    let w2 = wigner3j(
        HalfInt::from_int(lp),
        HalfInt::from_int(big_l),
        HalfInt::from_int(l),
        HalfInt::ZERO,
        HalfInt::ZERO,
        HalfInt::ZERO,
    )?;
    let prefactor = ExactValue::sqrt_rational(big_ratio(
        BigInt::from((2 * lp + 1) * (2 * big_l + 1) * (2 * l + 1)),
        BigInt::from(4),
    ))
    .with_pi_power(-1);
    let phase = if mp.rem_euclid(2) == 0 { 1 } else { -1 };
    let value = prefactor * w1 * w2;
    Ok(if phase < 0 { -value } else { value })
}
