//! Exact rational scalars.
//!
//! The ground field is the rationals, represented by arbitrary-precision
//! fractions that are kept reduced with a positive denominator. Everything
//! downstream goes through the [`Scalar`] alias and the helpers here, so a
//! future exact extension field only has to replace this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact field element. Always reduced, denominator always positive.
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    BigRational::zero()
}

pub fn one() -> Scalar {
    BigRational::one()
}

/// Multiplicative inverse, rejecting zero.
pub fn inv(x: &Scalar) -> Result<Scalar> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x.recip())
}

/// Parse `"p"` or `"p/q"`.
pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Render as `"p"` for integers and `"p/q"` otherwise.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dot product of two coordinate vectors of equal length.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// All-zero coordinate vector.
pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_assign_vec(target: &mut [Scalar], source: &[Scalar]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t += s;
    }
}

pub fn scale_vec(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

/// Canonical form of a rational vector: cleared denominators, content 1,
/// first nonzero entry positive. Used wherever a basis has to be emitted
/// deterministically.
pub fn canonicalize_vec(v: &[Scalar]) -> Vec<Scalar> {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for n in &ints {
        gcd = gcd.gcd(n);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign_fix = match ints.iter().find(|n| !n.is_zero()) {
        Some(first) if first.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let divisor = gcd * sign_fix;
    ints.iter()
        .map(|n| BigRational::from_integer(n / &divisor))
        .collect()
}
