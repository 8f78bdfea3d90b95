use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact field scalars used by the polynomial and linear-algebra kernels.
///
/// Operations take references so arbitrary-precision values are not cloned
/// on every step.
pub trait Field:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|i| self.mul_ref(&i))
    }
}

pub type Rational = BigRational;
pub type ComplexRational = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

impl Field for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        int(v)
    }
}

impl Field for Complex<BigRational> {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            None
        } else {
            Some(Complex::new(&self.re / &n, -(&self.im / &n)))
        }
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(int(v), Rational::zero())
    }
}

/// The imaginary unit in the exact complex field.
pub fn imag_unit() -> ComplexRational {
    Complex::new(Rational::zero(), Rational::one())
}

/// Integers modulo a prime `P` (< 2^63), used for modular rank certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(pub u64);

/// Largest prime below 2^62.
pub const PRIME_A: u64 = 4_611_686_018_427_387_847;
/// Second largest prime below 2^62.
pub const PRIME_B: u64 = 4_611_686_018_427_387_817;

pub type FpA = Fp<PRIME_A>;
pub type FpB = Fp<PRIME_B>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduce a rational modulo `P`; `None` when the denominator vanishes mod `P`.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> u64 { x.mod_floor(&p).to_u64().unwrap() };
        let d = Fp::<P>(reduce(q.denom()));
        let n = Fp::<P>(reduce(q.numer()));
        d.inverse().map(|di| n.mul_ref(&di))
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> std::ops::Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<const P: u64> std::ops::Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Field for Fp<P> {
    fn add_ref(&self, o: &Self) -> Self {
        let s = self.0 as u128 + o.0 as u128;
        Fp((s % P as u128) as u64)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&-*o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            -Fp::new(v.unsigned_abs())
        }
    }
}

/// Serde adapter writing rationals as "p/q" (or "p").
pub mod rational_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Parse "p", "-p", or "p/q" with q ≠ 0.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_form() {
        assert_eq!(rat(6, 4).to_string(), "3/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(parse_rational("3/5"), Some(rat(3, 5)));
        assert_eq!(parse_rational("-7"), Some(int(-7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn modular_inverse_roundtrip() {
        let x = FpA::from_rational(&rat(-3, 7)).unwrap();
        let seven = FpA::from_i64(7);
        assert_eq!(x.mul_ref(&seven), FpA::from_i64(-3));
        assert_eq!(x.mul_ref(&x.inverse().unwrap()), FpA::one());
    }

    #[test]
    fn complex_inverse() {
        let z = Complex::new(rat(3, 1), rat(4, 1));
        assert_eq!(z.mul_ref(&z.inverse().unwrap()), ComplexRational::one());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 25)), Some(rat(3, 5)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
