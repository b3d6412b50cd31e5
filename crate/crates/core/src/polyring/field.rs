//! Coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// `Z/p` for a prime `p < 2^31`.
    Prime(u32),
}

/// A field element. The variant always matches the owning ring's field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u32),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) {
            return Err(Error::Invalid(format!("prime {p} is too large (limit 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::zero()),
            FieldSpec::Prime(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Coeff::P(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(*p);
                let r = ((v % &p) + &p) % &p;
                Coeff::P(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes there.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Coeff::Q(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(p) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::Invalid(format!("denominator {den} vanishes mod {p}")));
                }
                Ok(self.mul(&self.from_bigint(num), &self.inv(&d)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (FieldSpec::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(-x),
            (FieldSpec::Prime(p), Coeff::P(x)) => Coeff::P(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (FieldSpec::Prime(p), Coeff::P(x), Coeff::P(y)) => {
                Coeff::P(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (_, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (FieldSpec::Prime(p), Coeff::P(x)) => {
                let p = *p as u64;
                let mut base = *x as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Coeff::P(acc as u32)
            }
            _ => panic!("coefficient/field mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// `n · 1` in the field, used by differentiation.
    pub fn from_u64(&self, n: u64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coeff::P((n % *p as u64) as u32),
        }
    }

    pub fn check(&self, c: &Coeff) -> bool {
        matches!(
            (self, c),
            (FieldSpec::Rationals, Coeff::Q(_)) | (FieldSpec::Prime(_), Coeff::P(_))
        )
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_zero(),
            Coeff::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_one(),
            Coeff::P(x) => *x == 1,
        }
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_negative(),
            Coeff::P(_) => false,
        }
    }

    pub fn abs_string(&self) -> String {
        match self {
            Coeff::Q(x) => x.abs().to_string(),
            Coeff::P(x) => x.to_string(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(x) => write!(f, "{x}"),
            Coeff::P(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let c = f.from_i64(v);
            assert!(f.mul(&c, &f.inv(&c)).is_one());
        }
    }

    #[test]
    fn rejects_composite() {
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn fraction_mod_p() {
        let f = FieldSpec::prime(7).unwrap();
        let c = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(c, Coeff::P(4));
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
    }
}
