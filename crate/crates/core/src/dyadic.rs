//! Exact non-negative rationals with a power-of-two denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// `numerator / 2^log2_denominator`, always in lowest terms (odd numerator or
/// zero with exponent 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigUint,
    log2_denominator: u32,
}

impl DyadicRational {
    pub fn zero() -> Self {
        DyadicRational {
            numerator: BigUint::zero(),
            log2_denominator: 0,
        }
    }

    pub fn integer(value: u64) -> Self {
        DyadicRational::new(BigUint::from(value), 0)
    }

    /// `2^-exponent`.
    pub fn unit_fraction(exponent: u32) -> Self {
        DyadicRational {
            numerator: BigUint::one(),
            log2_denominator: exponent,
        }
    }

    pub fn new(numerator: BigUint, log2_denominator: u32) -> Self {
        let mut r = DyadicRational {
            numerator,
            log2_denominator,
        };
        r.reduce();
        r
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.log2_denominator = 0;
            return;
        }
        let twos = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = twos.min(self.log2_denominator as u64) as u32;
        if shift > 0 {
            self.numerator >>= shift;
            self.log2_denominator -= shift;
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn log2_denominator(&self) -> u32 {
        self.log2_denominator
    }

    pub fn denominator(&self) -> BigUint {
        BigUint::one() << self.log2_denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigUint {
        &self.numerator >> self.log2_denominator
    }

    /// Exact `self < value`.
    pub fn lt_integer(&self, value: u64) -> bool {
        self.cmp(&DyadicRational::integer(value)) == Ordering::Less
    }

    /// Lossy conversion for display or plotting only.
    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(self.log2_denominator as i32)
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let e = self.log2_denominator.max(rhs.log2_denominator);
        let a = &self.numerator << (e - self.log2_denominator);
        let b = &rhs.numerator << (e - rhs.log2_denominator);
        DyadicRational::new(a + b, e)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl AddAssign<&DyadicRational> for DyadicRational {
    fn add_assign(&mut self, rhs: &DyadicRational) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for DyadicRational {
    fn sum<I: Iterator<Item = DyadicRational>>(iter: I) -> Self {
        iter.fold(DyadicRational::zero(), |acc, x| &acc + &x)
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.log2_denominator.max(other.log2_denominator);
        let a = &self.numerator << (e - self.log2_denominator);
        let b = &other.numerator << (e - other.log2_denominator);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.log2_denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reduce_to_lowest_terms() {
        let half = DyadicRational::unit_fraction(1);
        let one = &half + &half;
        assert_eq!(one, DyadicRational::integer(1));
        assert_eq!(one.log2_denominator(), 0);
        assert_eq!(one.to_string(), "1/1");
        let three_quarters = &half + &DyadicRational::unit_fraction(2);
        assert_eq!(three_quarters.to_string(), "3/4");
    }

    #[test]
    fn comparisons_are_exact() {
        let almost_one: DyadicRational = (1..=60).map(DyadicRational::unit_fraction).sum();
        assert!(almost_one.lt_integer(1));
        assert!(!almost_one.lt_integer(0));
        let one = &almost_one + &DyadicRational::unit_fraction(60);
        assert!(!one.lt_integer(1));
        assert!(one.lt_integer(2));
        assert_eq!(one.floor(), BigUint::one());
    }

    #[test]
    fn zero_is_canonical() {
        let z = DyadicRational::new(BigUint::zero(), 9);
        assert_eq!(z, DyadicRational::zero());
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0/1");
    }
}
