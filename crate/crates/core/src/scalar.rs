//! Coefficient scalars.
//!
//! Every rank computation in the crate is written against [`Field`], and the
//! Smith normal form against [`EuclideanInteger`]. Homology ranks are only
//! meaningful with exact arithmetic, so the provided fields are the rationals
//! and the prime fields `Zp<P>`; floating point types deliberately do not
//! implement [`Field`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_i64(value: i64) -> Self;

    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn characteristic() -> u64 {
        0
    }

    fn inverse(&self) -> Self {
        self.recip()
    }
}

/// Integers modulo a prime `P`.
///
/// `P` must be prime and below `2^32` so that products fit in a `u64`; both
/// are checked by a const assertion on first use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    const VALID: () = assert!(P >= 2 && P < (1 << 32) && is_prime_const(P));

    pub fn new(value: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Zp(value % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Zp::new(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

const fn is_prime_const(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Runtime primality test used to validate user-supplied moduli.
pub fn is_prime(p: u64) -> bool {
    is_prime_const(p)
}

impl<const P: u64> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zp::new(self.0 + rhs.0)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Zp::new(self.0 + P - rhs.0)
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp::new(self.0 * rhs.0)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp::new(P - self.0)
    }
}

impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in Z/{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp::new(1)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn from_i64(value: i64) -> Self {
        let p = P as i64;
        Zp::new(value.rem_euclid(p) as u64)
    }

    fn characteristic() -> u64 {
        P
    }
}

/// Integer types usable as Smith normal form entries.
pub trait EuclideanInteger:
    num_integer::Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i64> + Send + Sync
{
}

impl<T> EuclideanInteger for T where
    T: num_integer::Integer + Signed + Clone + fmt::Debug + fmt::Display + From<i64> + Send + Sync
{
}

/// Coefficient ring of a homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    Prime(u64),
}

/// Primes accepted for `Fp:<p>` coefficients.
pub const SUPPORTED_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// The coefficient ring a field type stands for.
    pub fn of<F: Field>() -> Ring {
        match F::characteristic() {
            0 => Ring::Rationals,
            p => Ring::Prime(p),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Rationals => f.write_str("Q"),
            Ring::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| crate::Error::invalid(format!("unknown ring `{s}`; expected Z, Q or Fp:<p>")))?;
                if !is_prime(p) {
                    return Err(crate::Error::invalid(format!("{p} is not prime")));
                }
                if !SUPPORTED_PRIMES.contains(&p) {
                    return Err(crate::Error::invalid(format!("prime {p} not supported; use a prime below 100")));
                }
                Ok(Ring::Prime(p))
            }
        }
    }
}

/// A computation generic over the coefficient field, run by [`with_field`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self) -> Self::Output;
}

/// Runs `v` with the field named by `ring`; `Ring::Integers` is rejected.
pub fn with_field<V: FieldVisitor>(ring: Ring, v: V) -> Result<V::Output, crate::Error> {
    macro_rules! primes {
        ($p:expr, $v:expr, [$($q:literal),*]) => {
            match $p {
                $($q => Ok($v.visit::<Zp<$q>>()),)*
                other => Err(crate::Error::invalid(format!("prime {other} not supported"))),
            }
        };
    }
    match ring {
        Ring::Integers => Err(crate::Error::invalid("this computation needs field coefficients")),
        Ring::Rationals => Ok(v.visit::<BigRational>()),
        Ring::Prime(p) => primes!(
            p,
            v,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        type F7 = Zp<7>;
        let a = F7::from_i64(3);
        let b = F7::from_i64(-2);
        assert_eq!(b.value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / a).value(), 1);
        assert_eq!((a * a.inverse()).value(), 1);
        assert_eq!((-a + a).value(), 0);
        assert_eq!(F7::characteristic(), 7);
    }

    #[test]
    fn rational_inverse() {
        let q = BigRational::from_i64(-4);
        assert_eq!(q.inverse() * q, BigRational::one());
    }

    #[test]
    fn ring_names() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Fp:5".parse::<Ring>().unwrap(), Ring::Prime(5));
        assert!("Fp:6".parse::<Ring>().is_err());
        assert!("Fp:101".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
        assert_eq!(Ring::Prime(7).to_string(), "Fp:7");

        struct Char;
        impl FieldVisitor for Char {
            type Output = u64;
            fn visit<F: Field>(self) -> u64 {
                F::characteristic()
            }
        }
        for p in SUPPORTED_PRIMES {
            assert_eq!(with_field(Ring::Prime(p), Char).unwrap(), p);
        }
        assert_eq!(with_field(Ring::Rationals, Char).unwrap(), 0);
        assert!(with_field(Ring::Integers, Char).is_err());
    }

    #[test]
    fn runtime_primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }
}
