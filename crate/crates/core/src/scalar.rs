//! Exact field arithmetic over the rationals and prime fields.
//!
//! Every other module is parameterized by a [`FieldSpec`]: either `Q`
//! (arbitrary-precision rationals) or `F_p` for a prime `p`. Elements are
//! [`Scalar`]s and are kept in canonical form at all times — rationals in
//! lowest terms with positive denominator, residues reduced into `[0, p)` —
//! so structural equality is field equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which field the computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum FieldSpec {
    /// The field of rational numbers (characteristic 0).
    Rationals,
    /// The prime field `F_p`. The modulus is checked for primality at
    /// construction; composite moduli are rejected.
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Parse the field selection grammar used across the CLI: `q` for the
    /// rationals, `fp:<p>` for a prime field.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::usage(format!("bad modulus in field spec `{s}`")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::usage(format!(
            "unknown field spec `{s}` (expected `q` or `fp:<p>`)"
        )))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Whether 6 is invertible, i.e. the characteristic is neither 2 nor 3.
    /// Several containment statements hold only under this hypothesis.
    pub fn invertible_six(&self) -> bool {
        !matches!(self.characteristic(), 2 | 3)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue { modulus: *p, value: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                modulus: *p,
                value: (n as i128).rem_euclid(*p as i128) as u64,
            },
        }
    }

    /// Build a scalar from a numerator/denominator pair; over `F_p` this is
    /// `num * den^{-1}` and fails when `p | den`.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        n.mul(&d.inv()?)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element, canonical at all times.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { modulus: u64, value: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, rhs: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), rhs.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { modulus: p, value: a }, Scalar::Residue { value: b, .. }) => {
                let mut v = a % p + b % p;
                if v >= *p {
                    v -= p;
                }
                Scalar::Residue { modulus: *p, value: v }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { modulus: p, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    modulus: *p,
                    value: mul_mod(*a, *b, *p),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { modulus: p, value: a } => Scalar::Residue {
                modulus: *p,
                value: if *a == 0 { 0 } else { p - a },
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { modulus: p, value: a } => Scalar::Residue {
                modulus: *p,
                // Fermat: a^{p-2} = a^{-1} for prime p.
                value: pow_mod(*a, p - 2, *p),
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base.clone()).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Re-derive the canonical form. Used by tests to confirm canonical-form
    /// idempotence; all constructors already produce canonical values.
    pub fn normalized(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.reduced()),
            Scalar::Residue { modulus, value } => Scalar::Residue {
                modulus: *modulus,
                value: value % modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the rational scalar is negative (used for pretty-printing).
pub(crate) fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Residue { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_fraction_arithmetic() {
        let q = FieldSpec::rationals();
        let half = q.fraction(1, 2).unwrap();
        let third = q.fraction(1, 3).unwrap();
        let sum = half.add(&third).unwrap();
        assert_eq!(sum, q.fraction(5, 6).unwrap());
    }

    #[test]
    fn f3_multiplication_wraps() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_i64(2);
        assert_eq!(two.mul(&two).unwrap(), f3.one());
    }

    #[test]
    fn f2_characteristic_two() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.one().add(&f2.one()).unwrap(), f2.zero());
    }

    #[test]
    fn invertible_six_by_characteristic() {
        assert!(FieldSpec::rationals().invertible_six());
        assert!(!FieldSpec::prime(3).unwrap().invertible_six());
        assert!(!FieldSpec::prime(2).unwrap().invertible_six());
        assert!(FieldSpec::prime(5).unwrap().invertible_six());
    }

    #[test]
    fn composite_moduli_rejected() {
        assert_eq!(FieldSpec::prime(6), Err(Error::NotPrime(6)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("fp:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("fp:9").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn mixed_field_operands_rejected() {
        let a = FieldSpec::rationals().one();
        let b = FieldSpec::prime(5).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn inverse_of_zero_rejected() {
        assert_eq!(FieldSpec::prime(5).unwrap().zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::rationals().zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverses_multiply_to_one() {
        let f7 = FieldSpec::prime(7).unwrap();
        for v in 1..7 {
            let s = f7.from_i64(v);
            assert_eq!(s.mul(&s.inv().unwrap()).unwrap(), f7.one());
        }
        let q = FieldSpec::rationals();
        let x = q.fraction(-21, 8).unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), q.one());
    }

    #[test]
    fn pow_small_cases() {
        let q = FieldSpec::rationals();
        assert_eq!(q.from_i64(2).pow(10), q.from_i64(1024));
        assert_eq!(q.from_i64(-1).pow(3), q.from_i64(-1));
        assert_eq!(q.from_i64(5).pow(0), q.one());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_field() -> impl Strategy<Value = FieldSpec> {
            prop_oneof![
                Just(FieldSpec::Rationals),
                prop::sample::select(vec![2u64, 3, 5, 7, 31, 257]).prop_map(FieldSpec::Prime),
            ]
        }

        fn arb_scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
            (any::<i32>(), 1u32..500).prop_map(move |(n, d)| match field {
                FieldSpec::Rationals => FieldSpec::Rationals
                    .fraction(n as i64, d as i64)
                    .unwrap(),
                FieldSpec::Prime(_) => field.from_i64(n as i64),
            })
        }

        proptest! {
            #[test]
            fn field_axioms((f, mode) in arb_field().prop_flat_map(|f| {
                ((Just(f), (arb_scalar(f), arb_scalar(f), arb_scalar(f))))
            })) {
                let (a, b, c) = mode;
                // associativity and commutativity of + and *
                prop_assert_eq!(
                    a.add(&b).unwrap().add(&c).unwrap(),
                    a.add(&b.add(&c).unwrap()).unwrap()
                );
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
                // distributivity
                prop_assert_eq!(
                    a.mul(&b.add(&c).unwrap()).unwrap(),
                    a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
                );
                // additive inverse and unit laws
                prop_assert!(a.add(&a.neg()).unwrap().is_zero());
                prop_assert_eq!(a.mul(&f.one()).unwrap(), a.clone());
                if !a.is_zero() {
                    prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
                }
            }

            #[test]
            fn canonical_form_idempotent(s in arb_field().prop_flat_map(arb_scalar)) {
                prop_assert_eq!(s.normalized(), s.clone());
            }
        }
    }
}
