//! The free unital associative algebra on countably many generators
//! `x1, x2, ...`.
//!
//! Elements are finitely supported sums of words in the generators with
//! exact coefficients. On top of the arithmetic this module provides
//! left-normed commutators, an expression parser ([`parse`]), multilinear
//! spanning sets for the commutator ideals `T^(n)` and their products
//! ([`span`]), and the truncated relatively free class-2 model
//! ([`universal`]).

pub mod parse;
pub mod span;
pub mod universal;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{is_negative, FieldSpec, Scalar};

pub use parse::parse;
pub use span::{
    product_ideal_multilinear_span, tideal_multilinear_span, verify_containment,
    verify_noncontainment, ContainmentReport, MultilinearBasis, NoncontainmentReport, SpanLimits,
    TidealSpan,
};
pub use universal::universal_model;

/// A word over generator indices; the empty word is the unit monomial.
///
/// Words compare by length first, then lexicographically, giving a total
/// order usable as a basis-index key.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + rhs.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&rhs.0);
        Word(letters)
    }

    /// Whether the word uses each of the given (sorted, distinct) variables
    /// exactly once and nothing else.
    pub fn is_permutation_of(&self, vars: &[u32]) -> bool {
        if self.0.len() != vars.len() {
            return false;
        }
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted == vars
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{x}")?;
        }
        Ok(())
    }
}

/// A polynomial in the free algebra: finitely supported map from words to
/// nonzero coefficients, all over one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(field: FieldSpec) -> Self {
        FreePoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        FreePoly::constant(field, field.one())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::empty(), c);
        }
        FreePoly { field, terms }
    }

    /// The generator `x_i`; indices start at 1.
    pub fn var(field: FieldSpec, i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::usage("generator indices start at x1"));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Word::letter(i), field.one());
        Ok(FreePoly { field, terms })
    }

    pub fn monomial(field: FieldSpec, word: Word, c: Scalar) -> Result<Self> {
        if c.field() != field {
            return Err(Error::FieldMismatch(field, c.field()));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        Ok(FreePoly { field, terms })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    fn check_field(&self, rhs: &FreePoly) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        Ok(())
    }

    fn add_term(&mut self, word: Word, c: Scalar) -> Result<()> {
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FreePoly) -> Result<FreePoly> {
        self.check_field(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &FreePoly) -> Result<FreePoly> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<FreePoly> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        if c.is_zero() {
            return Ok(FreePoly::zero(self.field));
        }
        let mut terms = BTreeMap::new();
        for (w, s) in &self.terms {
            let v = s.mul(c)?;
            if !v.is_zero() {
                terms.insert(w.clone(), v);
            }
        }
        Ok(FreePoly { field: self.field, terms })
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, rhs: &FreePoly) -> Result<FreePoly> {
        self.check_field(rhs)?;
        let mut out = FreePoly::zero(self.field);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba`.
    pub fn bracket(&self, rhs: &FreePoly) -> Result<FreePoly> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Every word in the support uses each of `vars` exactly once.
    pub fn is_multilinear_on(&self, vars: &[u32]) -> bool {
        self.terms.keys().all(|w| w.is_permutation_of(vars))
    }
}

/// The left-normed commutator `[a1, ..., an]`, defined recursively by
/// `[a1, a2] = a1 a2 - a2 a1` and `[a1, ..., an] = [[a1, ..., a_{n-1}], an]`.
/// A single argument is returned unchanged.
pub fn commutator(args: &[FreePoly]) -> Result<FreePoly> {
    let (first, rest) = args
        .split_first()
        .ok_or_else(|| Error::usage("commutator of an empty sequence"))?;
    let mut acc = first.clone();
    for a in rest {
        acc = acc.bracket(a)?;
    }
    Ok(acc)
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn x(i: u32) -> FreePoly {
        FreePoly::var(q(), i).unwrap()
    }

    fn word(letters: &[u32]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn word_order_is_length_then_lex() {
        assert!(word(&[2]) < word(&[1, 1]));
        assert!(word(&[1, 2]) < word(&[2, 1]));
        assert!(word(&[]) < word(&[1]));
    }

    #[test]
    fn product_of_generators_concatenates() {
        let p = x(1).mul(&x(2)).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&word(&[1, 2])), Some(&q().one()));
    }

    #[test]
    fn product_distributes() {
        let p = x(1).add(&x(2)).unwrap().mul(&x(1)).unwrap();
        assert_eq!(p.coefficient(&word(&[1, 1])), Some(&q().one()));
        assert_eq!(p.coefficient(&word(&[2, 1])), Some(&q().one()));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn unit_law() {
        let p = x(1).mul(&x(3)).unwrap().add(&x(2)).unwrap();
        assert_eq!(FreePoly::one(q()).mul(&p).unwrap(), p);
        assert_eq!(p.mul(&FreePoly::one(q())).unwrap(), p);
    }

    #[test]
    fn bracket_of_two_generators() {
        let c = commutator(&[x(1), x(2)]).unwrap();
        assert_eq!(c.coefficient(&word(&[1, 2])), Some(&q().one()));
        assert_eq!(c.coefficient(&word(&[2, 1])), Some(&q().from_i64(-1)));
        assert_eq!(c.num_terms(), 2);
    }

    #[test]
    fn bracket_alternates() {
        assert!(commutator(&[x(1), x(1)]).unwrap().is_zero());
    }

    #[test]
    fn left_normed_triple_expansion() {
        // Expanding the recursion by hand:
        // [x1,x2,x3] = x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
        let c = commutator(&[x(1), x(2), x(3)]).unwrap();
        assert_eq!(c.num_terms(), 4);
        assert_eq!(c.coefficient(&word(&[1, 2, 3])), Some(&q().one()));
        assert_eq!(c.coefficient(&word(&[2, 1, 3])), Some(&q().from_i64(-1)));
        assert_eq!(c.coefficient(&word(&[3, 1, 2])), Some(&q().from_i64(-1)));
        assert_eq!(c.coefficient(&word(&[3, 2, 1])), Some(&q().one()));
    }

    #[test]
    fn single_argument_commutator_is_identity() {
        let p = x(1).mul(&x(2)).unwrap();
        assert_eq!(commutator(&[p.clone()]).unwrap(), p);
    }

    #[test]
    fn empty_commutator_rejected() {
        assert!(matches!(commutator(&[]), Err(Error::Usage(_))));
    }

    #[test]
    fn multilinear_support_check() {
        let c = commutator(&[x(1), x(2), x(3)]).unwrap();
        assert!(c.is_multilinear_on(&[1, 2, 3]));
        assert!(!c.is_multilinear_on(&[1, 2]));
        assert!(!x(1).mul(&x(1)).unwrap().is_multilinear_on(&[1]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = FreePoly> {
            prop::collection::vec(
                (prop::collection::vec(1u32..4, 0..3), -3i64..4),
                0..4,
            )
            .prop_map(|terms| {
                let mut p = FreePoly::zero(FieldSpec::Rationals);
                for (letters, c) in terms {
                    let t = FreePoly::monomial(
                        FieldSpec::Rationals,
                        Word(letters),
                        FieldSpec::Rationals.from_i64(c),
                    )
                    .unwrap();
                    p = p.add(&t).unwrap();
                }
                p
            })
        }

        proptest! {
            #[test]
            fn bracket_antisymmetric(a in arb_poly(), b in arb_poly()) {
                let ab = commutator(&[a.clone(), b.clone()]).unwrap();
                let ba = commutator(&[b, a]).unwrap();
                prop_assert_eq!(ab, ba.neg());
            }

            #[test]
            fn mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
            }
        }
    }
}
