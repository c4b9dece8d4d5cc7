use std::fmt::Debug;

use super::rational::{mul_mod, pow_mod, Rational};

/// Scalar field used by the elimination routines.
///
/// Implemented for [`Rational`] (exact, the ground truth) and for [`Fp`]
/// (word-size prime fields, used for the modular rank fast path).
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    /// Cost estimate for choosing between otherwise equal pivots.
    fn height(&self) -> u32 {
        0
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn height(&self) -> u32 {
        match self.as_small() {
            Some((n, d)) => (n.unsigned_abs().max(d as u64)).min(u32::MAX as u64) as u32,
            None => u32::MAX,
        }
    }
}

/// Element of the prime field `Z/PZ`. `P` must be prime and below 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduces a rational, or `None` when `P` divides its denominator.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        r.mod_prime(P).map(Fp)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(mul_mod(self.0, rhs.0, P))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        Fp(pow_mod(self.0, P - 2, P))
    }
}

/// Word-size primes used by the modular rank routines.
pub const PRIME_A: u64 = 4_611_686_018_427_387_847; // 2^62 - 57
pub const PRIME_B: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
pub const PRIME_C: u64 = 1_000_000_007;
