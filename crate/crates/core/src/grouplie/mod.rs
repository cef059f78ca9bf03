//! The nilpotent-of-class-2 group `G_r` on involutive generators, its group
//! algebra over GF(2), the relation ideal `I_r`, quotient algebras, and the
//! characteristic-2 witness construction.
//!
//! `G_r = < y1..yr | yi^2 = 1, ((yi,yj),yk) = 1 >` with the group
//! commutator `(a,b) = a^{-1} b^{-1} a b`. Every element has a unique
//! normal form `y_{i1}..y_{iq} (y_{j1},y_{j2}) ...` with increasing
//! generator indices and an (exponent-2) set of commutator pairs, so an
//! element is a generator subset plus a pair subset — two bit masks. The
//! group has order `2^(r + r(r-1)/2)`.

pub mod ideal;

pub use ideal::{build_ideal, case2_witness, quotient_algebra, Case2Report, IdealIr};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

/// Largest rank with precomputable state; rank 5 already has
/// `2^15 = 32768` normal forms.
pub const MAX_RANK: u8 = 5;

fn check_rank(r: u8) -> Result<()> {
    if r > MAX_RANK {
        return Err(Error::Guard {
            what: "group rank",
            limit: MAX_RANK as u64,
            requested: r as u64,
            flag: "(none: hard cap)",
        });
    }
    Ok(())
}

/// Number of commutator pairs `(i, j)`, `i < j`, for rank `r`.
pub fn pair_count(r: u8) -> u8 {
    r * (r.saturating_sub(1)) / 2
}

/// Position of the pair `(i, j)` (1-based, `i < j`) in the lex enumeration
/// `(1,2), (1,3), ..., (1,r), (2,3), ...`.
fn pair_bit(r: u8, i: u8, j: u8) -> u8 {
    debug_assert!(1 <= i && i < j && j <= r);
    let before_i: u8 = (0..(i - 1)).map(|a| r - 1 - a).sum();
    before_i + (j - i - 1)
}

/// A normal form in `G_r`: generator subset `gens` (bit `i-1` for `y_i`)
/// and commutator-pair subset `comms` (lex pair bits).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    r: u8,
    gens: u16,
    comms: u16,
}

impl GroupElement {
    pub fn identity(r: u8) -> Result<Self> {
        check_rank(r)?;
        Ok(GroupElement { r, gens: 0, comms: 0 })
    }

    pub fn generator(r: u8, i: u8) -> Result<Self> {
        check_rank(r)?;
        if i == 0 || i > r {
            return Err(Error::usage(format!("generator y{i} outside rank {r}")));
        }
        Ok(GroupElement { r, gens: 1 << (i - 1), comms: 0 })
    }

    /// The central element `(y_i, y_j)`.
    pub fn commutator_pair(r: u8, i: u8, j: u8) -> Result<Self> {
        check_rank(r)?;
        if i == 0 || j == 0 || i > r || j > r {
            return Err(Error::usage("pair index outside rank"));
        }
        if i == j {
            return GroupElement::identity(r);
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        Ok(GroupElement { r, gens: 0, comms: 1 << pair_bit(r, lo, hi) })
    }

    pub fn rank(&self) -> u8 {
        self.r
    }

    pub fn is_identity(&self) -> bool {
        self.gens == 0 && self.comms == 0
    }

    /// Dense index over the `2^(r + pairs)` normal forms.
    pub fn index(&self) -> u32 {
        (self.gens as u32) | ((self.comms as u32) << self.r)
    }

    pub fn from_index(r: u8, index: u32) -> Result<Self> {
        check_rank(r)?;
        let gens = (index & ((1 << r) - 1)) as u16;
        let comms = (index >> r) as u16;
        if u32::from(comms) >= (1u32 << pair_count(r)) {
            return Err(Error::usage("index outside the group"));
        }
        Ok(GroupElement { r, gens, comms })
    }

    pub fn group_order(r: u8) -> u64 {
        1u64 << (r as u32 + pair_count(r) as u32)
    }

    /// Multiply by concatenating generator words and sorting: moving `y_j`
    /// (from the right factor) left past a larger `y_i` toggles the central
    /// pair `(j, i)` — from `ab = ba (a, b)` — generators cancel in pairs
    /// (`y_i^2 = 1`), and the central parts combine by XOR (exponent 2).
    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        if self.r != rhs.r {
            return Err(Error::usage("mixed group ranks"));
        }
        let r = self.r;
        let mut comms = self.comms ^ rhs.comms;
        for i in 1..=r {
            if self.gens & (1 << (i - 1)) == 0 {
                continue;
            }
            for j in 1..=r {
                if rhs.gens & (1 << (j - 1)) == 0 {
                    continue;
                }
                if i > j {
                    comms ^= 1 << pair_bit(r, j, i);
                }
            }
        }
        Ok(GroupElement { r, gens: self.gens ^ rhs.gens, comms })
    }

    /// Inverse; squares are central of order at most 2, so `a^{-1} = a^3`.
    pub fn inv(&self) -> GroupElement {
        let sq = self.mul(self).expect("same rank");
        self.mul(&sq).expect("same rank")
    }

    /// Group commutator `(a, b) = a^{-1} b^{-1} a b`.
    pub fn comm(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.inv().mul(&rhs.inv())?.mul(self)?.mul(rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for i in 1..=self.r {
            if self.gens & (1 << (i - 1)) != 0 {
                write!(f, "y{i}")?;
            }
        }
        let mut bit = 0u8;
        for i in 1..self.r {
            for j in (i + 1)..=self.r {
                if self.comms & (1 << bit) != 0 {
                    write!(f, "(y{i},y{j})")?;
                }
                bit += 1;
            }
        }
        Ok(())
    }
}

/// An element of the group algebra `F G_r` over GF(2): because every
/// coefficient is 0 or 1, the support set is the whole datum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    r: u8,
    field: FieldSpec,
    terms: BTreeSet<GroupElement>,
}

impl GroupAlgebraElement {
    pub fn zero(field: FieldSpec, r: u8) -> Result<Self> {
        check_rank(r)?;
        check_char2(field)?;
        Ok(GroupAlgebraElement { r, field, terms: BTreeSet::new() })
    }

    pub fn one(field: FieldSpec, r: u8) -> Result<Self> {
        let mut out = Self::zero(field, r)?;
        out.terms.insert(GroupElement::identity(r)?);
        Ok(out)
    }

    pub fn from_group(field: FieldSpec, g: GroupElement) -> Result<Self> {
        let mut out = Self::zero(field, g.rank())?;
        out.terms.insert(g);
        Ok(out)
    }

    pub fn rank(&self) -> u8 {
        self.r
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_compat(&self, rhs: &Self) -> Result<()> {
        if self.r != rhs.r {
            return Err(Error::usage("mixed group ranks"));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        Ok(())
    }

    /// Characteristic-2 addition: symmetric difference of supports.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let terms = self.terms.symmetric_difference(&rhs.terms).cloned().collect();
        Ok(GroupAlgebraElement { r: self.r, field: self.field, terms })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = GroupAlgebraElement { r: self.r, field: self.field, terms: BTreeSet::new() };
        for a in &self.terms {
            for b in &rhs.terms {
                let g = a.mul(b)?;
                if !out.terms.remove(&g) {
                    out.terms.insert(g);
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab + ba` in characteristic 2.
    pub fn bracket(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.add(&rhs.mul(self)?)
    }

    /// Left translate by a group element.
    pub fn translate(&self, g: &GroupElement) -> Result<Self> {
        let gf = GroupAlgebraElement::from_group(self.field, *g)?;
        gf.mul(self)
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, g) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn check_char2(field: FieldSpec) -> Result<()> {
    if field.characteristic() != 2 {
        return Err(Error::precondition(format!(
            "group-algebra arithmetic here is defined over characteristic 2, got {field}"
        )));
    }
    Ok(())
}

/// `d_ij = (y_i, y_j) + 1`, the central square-zero workhorse of the
/// characteristic-2 construction; `d_ii = 0` and `d_ij = d_ji`.
pub fn d(field: FieldSpec, r: u8, i: u8, j: u8) -> Result<GroupAlgebraElement> {
    check_char2(field)?;
    if i == 0 || j == 0 || i > r || j > r {
        return Err(Error::usage(format!("d({i},{j}) outside rank {r}")));
    }
    if i == j {
        return GroupAlgebraElement::zero(field, r);
    }
    let pair = GroupAlgebraElement::from_group(field, GroupElement::commutator_pair(r, i, j)?)?;
    pair.add(&GroupAlgebraElement::one(field, r)?)
}
