//! Scalar abstraction for the matrix layer.
//!
//! Controlled-V products only ever produce dyadic Gaussian rationals, so the
//! same code runs over `f64`, `f32` or exact [`num_rational::Rational64`].

use std::fmt::Debug;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Num, Signed};

/// Real field the unitary algebra is generic over.
pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Send + Sync + 'static {
    /// The constant 1/2.
    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    /// Lossy view used for reporting norms.
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for Rational64 {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Squared modulus of a complex scalar.
pub fn modulus_sqr<T: Scalar>(z: &Complex<T>) -> T {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_is_exact() {
        assert_eq!(<f64 as Scalar>::half(), 0.5);
        assert_eq!(<Rational64 as Scalar>::half(), Rational64::new(1, 2));
        assert_eq!(Rational64::new(3, 4).to_f64(), 0.75);
    }

    #[test]
    fn modulus_of_one_plus_i_over_two() {
        let h = <Rational64 as Scalar>::half();
        let z = Complex::new(h, h);
        assert_eq!(modulus_sqr(&z), Rational64::new(1, 2));
    }
}
