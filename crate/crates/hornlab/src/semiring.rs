//! Semiring abstraction shared by the network layer.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::trop::Trop;

/// A commutative semiring with the two operations used by path sums. Method
/// names carry an `sr_` prefix so that implementations on foreign numeric
/// types do not collide with the `num_traits` method set.
pub trait Semiring: Clone + PartialEq + std::fmt::Debug {
    fn sr_zero() -> Self;
    fn sr_one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn sr_is_zero(&self) -> bool {
        *self == Self::sr_zero()
    }
}

impl Semiring for Trop {
    fn sr_zero() -> Self {
        Trop::zero()
    }
    fn sr_one() -> Self {
        Trop::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.tadd(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.tmul(rhs)
    }
}

impl Semiring for BigRational {
    fn sr_zero() -> Self {
        Zero::zero()
    }
    fn sr_one() -> Self {
        One::one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Semiring for Complex64 {
    fn sr_zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn sr_one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
}
