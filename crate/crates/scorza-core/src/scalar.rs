//! Exact scalar arithmetic: arbitrary-precision rationals and odd prime
//! fields, plus the dual-number extension k[eps]/(eps^2) used for exact
//! first-order (curve) checks.
//!
//! No rounding ever happens anywhere in this crate; every scalar operation
//! is exact field arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// Prime field GF(p); the modulus is always an odd prime.
    Prime(u64),
}

/// Default modulus for fast verification runs over a prime field.
pub const DEFAULT_PRIME: u64 = 10007;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|dd| dd <= n).unwrap_or(false) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Builds a prime-field spec, rejecting non-primes and characteristic 2.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in field spec {s:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Parse(format!(
            "unknown field spec {s:?}; expected \"Q\" or \"Fp:<p>\""
        )))
    }
}

/// An exact field element. Prime-field values are stored reduced in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn from_i64(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v: r }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    fn check(&self, o: &Scalar) {
        assert!(
            self.field() == o.field(),
            "internal scalar field mismatch: {} vs {}",
            self.field(),
            o.field()
        );
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    /// Multiplicative inverse; panics on zero (callers guard pivots).
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: fp_pow(*v, p - 2, *p),
            },
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Exact division by two; valid because the characteristic is never 2.
    pub fn halve(&self) -> Scalar {
        self.mul(&Scalar::from_i64(self.field(), 2).inv())
    }

    pub fn scale_i64(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_i64(self.field(), n))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // BigRational prints "n" for integers and "n/d" otherwise.
            Scalar::Q(a) => write!(f, "{a}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Parses a scalar in the given field: `"n"`, `"n/d"` or a residue string.
pub fn parse_scalar(field: FieldSpec, s: &str) -> Result<Scalar> {
    let s = s.trim();
    match field {
        FieldSpec::Rationals => {
            let r = BigRational::from_str(s)
                .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
            Ok(Scalar::Q(r))
        }
        FieldSpec::Prime(p) => {
            // Accept n, -n and n/d (reduced mod p) so payloads stay portable
            // between fields.
            let r = BigRational::from_str(s)
                .map_err(|e| Error::Parse(format!("bad residue {s:?}: {e}")))?;
            let pb = BigInt::from(p);
            let num = r.numer().mod_floor(&pb);
            let den = r.denom().mod_floor(&pb);
            let num = u64::try_from(num.magnitude().clone())
                .map_err(|_| Error::Parse(format!("residue out of range {s:?}")))?;
            let den = u64::try_from(den.magnitude().clone())
                .map_err(|_| Error::Parse(format!("residue out of range {s:?}")))?;
            if den == 0 {
                return Err(Error::Parse(format!("denominator of {s:?} vanishes mod {p}")));
            }
            let v = Scalar::Fp { p, v: num }.div(&Scalar::Fp { p, v: den });
            Ok(v)
        }
    }
}

use num_integer::Integer;

/// Minimal commutative-ring interface shared by [`Scalar`] and [`Dual`].
///
/// It lets the composition-algebra and Hermitian-matrix kernels run
/// unchanged over dual numbers for exact differentiation.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn halve(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn halve(&self) -> Self {
        Scalar::halve(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

/// Dual number a + b*eps with eps^2 = 0, over an exact base field.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual {
    pub re: Scalar,
    pub ep: Scalar,
}

impl Dual {
    pub fn constant(s: Scalar) -> Dual {
        let z = s.field().zero();
        Dual { re: s, ep: z }
    }

    /// b*eps.
    pub fn eps(s: Scalar) -> Dual {
        let z = s.field().zero();
        Dual { re: z, ep: s }
    }
}

impl Ring for Dual {
    fn zero_like(&self) -> Self {
        Dual::constant(self.re.field().zero())
    }
    fn one_like(&self) -> Self {
        Dual::constant(self.re.field().one())
    }
    fn add(&self, o: &Self) -> Self {
        Dual {
            re: self.re.add(&o.re),
            ep: self.ep.add(&o.ep),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual {
            re: self.re.sub(&o.re),
            ep: self.ep.sub(&o.ep),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual {
            re: self.re.mul(&o.re),
            ep: self.re.mul(&o.ep).add(&self.ep.mul(&o.re)),
        }
    }
    fn neg(&self) -> Self {
        Dual {
            re: self.re.neg(),
            ep: self.ep.neg(),
        }
    }
    fn halve(&self) -> Self {
        Dual {
            re: self.re.halve(),
            ep: self.ep.halve(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ep.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_spec_rejects_two_and_composites() {
        assert!(FieldSpec::prime(2).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(10007).is_ok());
    }

    #[test]
    fn rational_roundtrip_and_display() {
        let f = FieldSpec::Rationals;
        let a = parse_scalar(f, "3/4").unwrap();
        let b = parse_scalar(f, "1/4").unwrap();
        assert_eq!(a.add(&b).to_string(), "1");
        assert_eq!(a.sub(&b).to_string(), "1/2");
        assert_eq!(parse_scalar(f, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(10007).unwrap();
        for n in [1i64, 2, 5, 10006, 4711] {
            let x = Scalar::from_i64(f, n);
            assert!(x.mul(&x.inv()).is_one());
        }
        // n/d parses as n * d^{-1}
        let x = parse_scalar(f, "1/2").unwrap();
        assert!(x.scale_i64(2).is_one());
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let f = FieldSpec::Rationals;
        let e = Dual::eps(f.one());
        assert!(e.mul(&e).is_zero());
        let x = Dual {
            re: Scalar::from_i64(f, 3),
            ep: Scalar::from_i64(f, 5),
        };
        let y = x.mul(&x);
        assert_eq!(y.re, Scalar::from_i64(f, 9));
        assert_eq!(y.ep, Scalar::from_i64(f, 30));
    }
}
