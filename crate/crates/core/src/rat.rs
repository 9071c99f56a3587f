//! Exact rational scalars and small integer helpers.
//!
//! `Rational` is arbitrary precision, always in lowest terms with a positive
//! denominator. Every computation in this crate goes through it; floating
//! point is never used.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The integer `n` as a rational.
pub fn rat_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Least common multiple of the denominators, as a positive integer.
///
/// Empty input yields 1.
pub fn lcm_denominators(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scale to a common denominator: returns the integer numerators and the
/// (positive) denominator they share.
pub fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = lcm_denominators(values);
    let cleared = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    (cleared, lcm)
}

/// Floor of the square root of `n`. Panics if `n < 0`.
pub fn floor_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "floor_sqrt of a negative integer");
    num_integer::Roots::sqrt(n)
}

/// Largest integer strictly below the rational `q`.
pub fn strict_floor(q: &Rational) -> BigInt {
    if q.is_integer() {
        q.numer() - 1
    } else {
        q.floor().to_integer()
    }
}

/// Smallest integer `>= q`.
pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Divide an integer vector by the gcd of its entries (no sign change).
/// A zero vector is returned unchanged.
pub fn reduce_by_gcd(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Primitive integer form of a rational vector: clear denominators, divide by
/// the gcd, and make the first nonzero entry positive. Zero maps to zero.
pub fn primitive_direction(values: &[Rational]) -> Vec<BigInt> {
    let (mut ints, _) = clear_denominators(values);
    reduce_by_gcd(&mut ints);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce_and_normalize_sign() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert_eq!(rat(1, -2).denom(), &BigInt::from(2));
    }

    #[test]
    fn lcm_of_denominators() {
        assert_eq!(lcm_denominators(&[]), BigInt::one());
        assert_eq!(
            lcm_denominators(&[rat(1, 2), rat(1, 3), rat(5, 6)]),
            BigInt::from(6)
        );
        assert_eq!(lcm_denominators(&[rat_int(7)]), BigInt::one());
    }

    #[test]
    fn clearing_denominators_preserves_values() {
        let vals = [rat(1, 2), rat(-2, 3), rat_int(1)];
        let (ints, den) = clear_denominators(&vals);
        assert_eq!(den, BigInt::from(6));
        assert_eq!(ints, [BigInt::from(3), BigInt::from(-4), BigInt::from(6)]);
    }

    #[test]
    fn strict_floor_steps_down_at_integers() {
        assert_eq!(strict_floor(&rat_int(3)), BigInt::from(2));
        assert_eq!(strict_floor(&rat(7, 2)), BigInt::from(3));
        assert_eq!(strict_floor(&rat(-1, 2)), BigInt::from(-1));
    }

    #[test]
    fn floor_sqrt_exact_and_inexact() {
        assert_eq!(floor_sqrt(&BigInt::from(49)), BigInt::from(7));
        assert_eq!(floor_sqrt(&BigInt::from(48)), BigInt::from(6));
        assert_eq!(floor_sqrt(&BigInt::from(0)), BigInt::from(0));
    }

    #[test]
    fn primitive_direction_normalizes() {
        assert_eq!(
            primitive_direction(&[rat(-2, 3), rat(4, 3)]),
            [BigInt::from(1), BigInt::from(-2)]
        );
        assert_eq!(
            primitive_direction(&[rat_int(0), rat_int(0)]),
            [BigInt::zero(), BigInt::zero()]
        );
    }
}
