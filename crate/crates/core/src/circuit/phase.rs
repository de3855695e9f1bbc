// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// An exact angle `r·π` with rational `r` kept in `[0, 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational64);

impl Phase {
    /// `numerator/denominator · π`. Panics on a zero denominator.
    pub fn new(numerator: i64, denominator: i64) -> Phase {
        assert!(denominator != 0, "phase denominator must be nonzero");
        Phase::from_ratio(Rational64::new(numerator, denominator))
    }

    pub fn from_ratio(r: Rational64) -> Phase {
        let two = Rational64::from_integer(2);
        let mut r = r % two;
        if r.is_negative() {
            r += two;
        }
        Phase(r)
    }

    pub const fn zero() -> Phase {
        Phase(Rational64::new_raw(0, 1))
    }

    pub fn pi() -> Phase {
        Phase::new(1, 1)
    }

    /// `k·π/4`
    pub fn from_quarters(k: i64) -> Phase {
        Phase::new(k, 4)
    }

    /// Closest phase with a denominator of at most 2^16 whose radian value
    /// lies within `1e-9` of `radians`.
    pub fn from_radians(radians: f64) -> Option<Phase> {
        if !radians.is_finite() {
            return None;
        }
        let x = radians / std::f64::consts::PI;
        let (n, d) = best_rational(x, 1 << 16)?;
        let approx = n as f64 / d as f64;
        ((approx - x).abs() * std::f64::consts::PI < 1e-9).then(|| Phase::new(n, d))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiple of π/2.
    pub fn is_clifford(&self) -> bool {
        self.denominator() <= 2
    }

    /// 0 or π.
    pub fn is_pauli(&self) -> bool {
        self.denominator() == 1
    }

    /// Odd multiple of π/4.
    pub fn is_t_like(&self) -> bool {
        self.denominator() == 4
    }

    /// The angle as a count of π/4 steps in `0..8`, when it is one.
    pub fn quarters(&self) -> Option<u8> {
        let d = self.denominator();
        (4 % d == 0).then(|| (self.numerator() * (4 / d)) as u8)
    }

    pub fn to_radians(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64 * std::f64::consts::PI
    }

    /// OpenQASM rendering: `0`, `pi`, `pi/4`, `3*pi/4`.
    pub fn to_qasm(&self) -> String {
        let (n, d) = (self.numerator(), self.denominator());
        match (n, d) {
            (0, _) => "0".to_string(),
            (1, 1) => "pi".to_string(),
            (n, 1) => format!("{n}*pi"),
            (1, d) => format!("pi/{d}"),
            (n, d) => format!("{n}*pi/{d}"),
        }
    }
}

fn best_rational(x: f64, max_den: i64) -> Option<(i64, i64)> {
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then_some((h1, k1))
}

impl Default for Phase {
    fn default() -> Self {
        Phase::zero()
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_ratio(-self.0)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, rhs: i64) -> Phase {
        Phase::from_ratio(self.0 * rhs)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

/// `0`, `π`, `π/4`, `3π/4`
impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numerator(), self.denominator());
        match (n, d) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

/// Inverse of the `Display` form, also accepting a bare ratio `n/d`.
impl std::str::FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad phase `{s}`");
        let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, int(d)?),
            None => (s, 1),
        };
        let num = match num.strip_suffix('π') {
            Some("") => 1,
            Some("-") => -1,
            Some(k) => int(k)?,
            None => int(num)?,
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Phase::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_into_half_open_range() {
        assert_eq!(Phase::new(-1, 4), Phase::new(7, 4));
        assert_eq!(Phase::new(9, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(4, 2), Phase::zero());
        assert_eq!(Phase::new(2, 4).denominator(), 2);
    }

    #[test]
    fn display_parses_back() {
        for p in [Phase::zero(), Phase::pi(), Phase::new(1, 4), Phase::new(7, 4), Phase::new(3, 8)] {
            assert_eq!(p.to_string().parse::<Phase>().unwrap(), p);
        }
        assert_eq!("-π/2".parse::<Phase>().unwrap(), Phase::new(3, 2));
        assert!("x/4".parse::<Phase>().is_err());
    }

    #[test]
    fn classification() {
        assert!(Phase::new(1, 2).is_clifford());
        assert!(Phase::pi().is_pauli());
        assert!(Phase::new(3, 4).is_t_like());
        assert!(!Phase::new(1, 8).is_t_like());
        assert!(!Phase::new(1, 8).is_clifford());
        assert_eq!(Phase::new(3, 2).quarters(), Some(6));
        assert_eq!(Phase::new(1, 8).quarters(), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(Phase::new(3, 4).to_qasm(), "3*pi/4");
        assert_eq!(Phase::new(1, 4).to_qasm(), "pi/4");
        assert_eq!(Phase::pi().to_qasm(), "pi");
        assert_eq!(Phase::new(3, 4).to_string(), "3π/4");
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn from_radians_recovers_dyadic_angles() {
        assert_eq!(Phase::from_radians(std::f64::consts::FRAC_PI_4), Some(Phase::new(1, 4)));
        assert_eq!(Phase::from_radians(-std::f64::consts::FRAC_PI_2), Some(Phase::new(3, 2)));
        assert_eq!(Phase::from_radians(0.785398163397448), Some(Phase::new(1, 4)));
        assert_eq!(Phase::from_radians(1.0), None);
    }

    fn arb_phase() -> impl Strategy<Value = Phase> {
        (-1000i64..1000, 1i64..64).prop_map(|(n, d)| Phase::new(n, d))
    }

    proptest! {
        #[test]
        fn addition_is_associative(a in arb_phase(), b in arb_phase(), c in arb_phase()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
        }

        #[test]
        fn negation_is_additive_inverse(a in arb_phase()) {
            prop_assert_eq!(a + (-a), Phase::zero());
            prop_assert!(a.numerator() >= 0 && a.numerator() < 2 * a.denominator());
        }
    }
}
