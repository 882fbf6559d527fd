//! Coefficient fields: the rationals with arbitrary precision and prime fields.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u64 },
}

impl FieldSpec {
    /// Default prime used by the verification suites.
    pub const DEFAULT_PRIME: u64 = 101;

    pub fn default_prime() -> Self {
        FieldSpec::PrimeField { p: Self::DEFAULT_PRIME }
    }

    pub fn check(&self) -> Result<(), FieldError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { p } => PrimeField::new(p).map(|_| ()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField { p } => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `rationals`, `F101`, `F_101`, `GF(101)` or a bare prime `101`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .trim_start_matches("GF(")
            .trim_end_matches(')')
            .trim_start_matches(['F', 'f'])
            .trim_start_matches('_');
        let p: u64 = digits.parse().map_err(|_| FieldError::UnknownField(t.to_string()))?;
        let spec = FieldSpec::PrimeField { p };
        spec.check()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    TooLarge(u64),
    UnknownField(String),
    BadElement { text: String, field: FieldSpec },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooLarge(p) => write!(f, "prime {p} exceeds 2^31"),
            FieldError::UnknownField(s) => write!(f, "unrecognised field `{s}`"),
            FieldError::BadElement { text, field } => {
                write!(f, "`{text}` is not a canonical element of {field}")
            }
        }
    }
}

/// Arithmetic in a field whose elements are plain values.
///
/// The field value itself carries whatever context the arithmetic needs (the
/// modulus for prime fields), so matrices store a copy of it.
pub trait Field: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Canonical text form: `num/den` in lowest terms for the rationals,
    /// the representative in `[0, p)` for prime fields.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;

    /// A random element. Over the rationals this is a small integer or a
    /// fraction with small numerator and denominator.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `(-1)^k`
    fn sign(&self, k: i32) -> Self::Elem {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    fn zeros(&self, n: usize) -> alloc::vec::Vec<Self::Elem> {
        alloc::vec![self.zero(); n]
    }

    fn unit_vector(&self, n: usize, i: usize) -> alloc::vec::Vec<Self::Elem> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    /// `y += c * x`
    fn axpy(&self, y: &mut [Self::Elem], c: &Self::Elem, x: &[Self::Elem]) {
        debug_assert_eq!(y.len(), x.len());
        if self.is_zero(c) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(c, xi));
            }
        }
    }

    fn vec_add(&self, a: &[Self::Elem], b: &[Self::Elem]) -> alloc::vec::Vec<Self::Elem> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    fn vec_sub(&self, a: &[Self::Elem], b: &[Self::Elem]) -> alloc::vec::Vec<Self::Elem> {
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    fn vec_scale(&self, c: &Self::Elem, a: &[Self::Elem]) -> alloc::vec::Vec<Self::Elem> {
        a.iter().map(|x| self.mul(c, x)).collect()
    }

    fn vec_is_zero(&self, a: &[Self::Elem]) -> bool {
        a.iter().all(|x| self.is_zero(x))
    }

    fn sample_vec<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> alloc::vec::Vec<Self::Elem> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

/// `Z/pZ` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
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

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        match s.trim().parse::<u64>() {
            Ok(v) if v < self.p => Ok(v),
            _ => Err(FieldError::BadElement {
                text: s.to_string(),
                field: self.spec(),
            }),
        }
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// The rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadElement {
            text: s.to_string(),
            field: FieldSpec::Rationals,
        };
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, d),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if !den.is_positive() {
            return Err(bad());
        }
        let r = BigRational::new(num.clone(), den.clone());
        // only lowest terms are accepted so that serialization is canonical
        if r.numer() != &num || r.denom() != &den {
            return Err(bad());
        }
        Ok(r)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num = rng.gen_range(-4i64..=4);
        let den = if rng.gen_bool(0.2) { rng.gen_range(2i64..=3) } else { 1 };
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.sign(3), 4);
    }

    #[test]
    fn rejects_composites_and_parses_specs() {
        assert_eq!(PrimeField::new(91), Err(FieldError::NotPrime(91)));
        assert_eq!("F101".parse::<FieldSpec>(), Ok(FieldSpec::PrimeField { p: 101 }));
        assert_eq!("GF(7)".parse::<FieldSpec>(), Ok(FieldSpec::PrimeField { p: 7 }));
        assert_eq!("Q".parse::<FieldSpec>(), Ok(FieldSpec::Rationals));
        assert!("F4".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rational_text_is_canonical() {
        let q = Rationals;
        let x = q.parse("-6/4");
        assert!(x.is_err(), "non-reduced fractions are rejected");
        let x = q.parse("-3/2").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.format(&q.from_i64(5)), "5/1");
        assert_eq!(q.parse("5").unwrap(), q.from_i64(5));
        assert!(q.parse("1/-2").is_err());
        assert!(q.parse("1/0").is_err());
    }
}
