//! Sparse exact vectors over an abstract basis-index set, echelon bases,
//! rank, and membership testing.
//!
//! This is the oracle engine behind every containment check: client modules
//! hand in vectors keyed by their own ordered basis tokens (words, Grassmann
//! monomials, group elements) and get back exact span arithmetic. Keys are
//! never interpreted here.
//!
//! Two row representations coexist, as the characteristic-2 scenarios reach
//! dimensions in the thousands where generic sparse rows are too slow:
//!
//! * [`Echelon`] — generic sorted sparse rows over any field;
//! * [`gf2::Gf2Echelon`] — bit-packed rows over GF(2), keyed by a dense
//!   enumeration of the basis supplied by the client.
//!
//! [`DenseSpan`] dispatches between the two based on the field and is what
//! the heavy clients use.

pub mod gf2;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub use gf2::{Gf2Echelon, Gf2Vec};

/// A finitely supported vector: sorted `(key, coefficient)` pairs with no
/// explicit zeros. All coefficients share one field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseVec<K> {
    entries: Vec<(K, Scalar)>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) entries;
    /// merges duplicates, drops zeros, and checks field consistency.
    pub fn from_entries(entries: Vec<(K, Scalar)>) -> Result<Self> {
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(K, Scalar)> = Vec::with_capacity(entries.len());
        for (k, s) in entries {
            if let Some(last) = out.last_mut() {
                if last.0 == k {
                    last.1 = last.1.add(&s)?;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if let Some((_, prev)) = out.last() {
                if prev.field() != s.field() {
                    return Err(Error::FieldMismatch(prev.field(), s.field()));
                }
            }
            if !s.is_zero() {
                out.push((k, s));
            }
        }
        Ok(SparseVec { entries: out })
    }

    pub fn unit(key: K, field: FieldSpec) -> Self {
        SparseVec { entries: vec![(key, field.one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The field of the coefficients, or `None` for the zero vector (which
    /// is compatible with every field).
    pub fn field(&self) -> Option<FieldSpec> {
        self.entries.first().map(|(_, s)| s.field())
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.entries
            .binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(K, Scalar)> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<(K, Scalar)> {
        self.entries
    }

    pub fn smallest_key(&self) -> Option<&K> {
        self.entries.first().map(|(k, _)| k)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.axpy(&self.field_or(rhs).one(), rhs)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.axpy(&self.field_or(rhs).one().neg(), rhs)
    }

    fn field_or(&self, rhs: &Self) -> FieldSpec {
        self.field().or_else(|| rhs.field()).unwrap_or(FieldSpec::Rationals)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.is_zero() {
            return Ok(SparseVec::zero());
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, s)| Ok((k.clone(), s.mul(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseVec { entries })
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(k, s)| (k.clone(), s.neg())).collect(),
        }
    }

    /// `self + c * rhs` by sorted merge.
    pub fn axpy(&self, c: &Scalar, rhs: &Self) -> Result<Self> {
        if c.is_zero() || rhs.is_zero() {
            return Ok(self.clone());
        }
        if let (Some(a), Some(b)) = (self.field(), rhs.field()) {
            if a != b {
                return Err(Error::FieldMismatch(a, b));
            }
        }
        let mut out = Vec::with_capacity(self.entries.len() + rhs.entries.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.entries.len() && j < rhs.entries.len() {
            let (ka, sa) = &self.entries[i];
            let (kb, sb) = &rhs.entries[j];
            match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    out.push((ka.clone(), sa.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((kb.clone(), sb.mul(c)?));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = sa.add(&sb.mul(c)?)?;
                    if !s.is_zero() {
                        out.push((ka.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.entries[i..].iter().cloned());
        for (kb, sb) in &rhs.entries[j..] {
            out.push((kb.clone(), sb.mul(c)?));
        }
        Ok(SparseVec { entries: out })
    }
}

/// A row-reduced spanning set over ordered keys.
///
/// Invariants: rows are sorted by pivot key, each pivot coefficient is 1,
/// the pivot key of a row is its smallest key, and no pivot key occurs in
/// any other row. `rank == rows.len() == pivots.len()`.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    field: FieldSpec,
    rows: Vec<SparseVec<K>>,
    pivots: Vec<K>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: FieldSpec) -> Self {
        Echelon { field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[K] {
        &self.pivots
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.pivots.binary_search_by(|p| p.cmp(key)).is_ok()
    }

    fn check_field(&self, v: &SparseVec<K>) -> Result<()> {
        match v.field() {
            Some(f) if f != self.field => Err(Error::FieldMismatch(self.field, f)),
            _ => Ok(()),
        }
    }

    /// Fully reduce `v` against the basis. The residue has no pivot key in
    /// its support and `v ≡ residue (mod row space)`; `v` is in the row
    /// space iff the residue is zero.
    pub fn reduce(&self, v: SparseVec<K>) -> Result<SparseVec<K>> {
        self.check_field(&v)?;
        let mut work = v;
        // Rows are sorted by pivot and each row's support lies at or above
        // its pivot, so one ascending pass suffices.
        let mut i = 0;
        while i < self.rows.len() {
            if work.is_zero() {
                break;
            }
            let pivot = &self.pivots[i];
            if let Some(c) = work.get(pivot) {
                let c = c.neg();
                work = work.axpy(&c, &self.rows[i])?;
            }
            i += 1;
        }
        Ok(work)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> Result<bool> {
        Ok(self.reduce(v.clone())?.is_zero())
    }

    /// Insert `v` into the span. Returns `true` iff the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> Result<bool> {
        let residue = self.reduce(v)?;
        if residue.is_zero() {
            return Ok(false);
        }
        let pivot = residue.smallest_key().expect("nonzero residue").clone();
        let lead = residue.get(&pivot).expect("pivot coefficient").clone();
        let row = residue.scale(&lead.inv()?)?;
        // Restore reducedness: clear the new pivot from existing rows.
        for existing in &mut self.rows {
            if let Some(c) = existing.get(&pivot) {
                let c = c.neg();
                *existing = existing.axpy(&c, &row)?;
            }
        }
        let at = self
            .pivots
            .binary_search_by(|p| p.cmp(&pivot))
            .expect_err("pivot key already present");
        self.pivots.insert(at, pivot);
        self.rows.insert(at, row);
        Ok(true)
    }
}

/// Span arithmetic over a dense basis enumeration `0..dim`, dispatching to
/// bit-packed rows when the field is GF(2) and to generic sparse rows
/// otherwise. The two paths return identical answers; the packed one exists
/// because characteristic-2 scenarios reach dimension `2^(r + r(r-1)/2)`.
#[derive(Clone, Debug)]
pub enum DenseSpan {
    Generic(Echelon<u32>),
    Gf2(Gf2Echelon),
}

impl DenseSpan {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        if field.characteristic() == 2 {
            DenseSpan::Gf2(Gf2Echelon::new(dim))
        } else {
            DenseSpan::Generic(Echelon::new(field))
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            DenseSpan::Generic(e) => e.rank(),
            DenseSpan::Gf2(e) => e.rank(),
        }
    }

    pub fn insert(&mut self, v: &SparseVec<u32>) -> Result<bool> {
        match self {
            DenseSpan::Generic(e) => e.insert(v.clone()),
            DenseSpan::Gf2(e) => Ok(e.insert(gf2::pack(v, e.dim()))),
        }
    }

    pub fn contains(&self, v: &SparseVec<u32>) -> Result<bool> {
        match self {
            DenseSpan::Generic(e) => e.contains(v),
            DenseSpan::Gf2(e) => Ok(e.contains(&gf2::pack(v, e.dim()))),
        }
    }

    /// Residue of `v` modulo the span, as a sparse vector again.
    pub fn reduce(&self, v: &SparseVec<u32>) -> Result<SparseVec<u32>> {
        match self {
            DenseSpan::Generic(e) => e.reduce(v.clone()),
            DenseSpan::Gf2(e) => {
                let r = e.reduce(gf2::pack(v, e.dim()));
                Ok(gf2::unpack(&r))
            }
        }
    }

    pub fn is_pivot(&self, index: u32) -> bool {
        match self {
            DenseSpan::Generic(e) => e.is_pivot(&index),
            DenseSpan::Gf2(e) => e.is_pivot(index),
        }
    }

    /// The echelon rows as sparse vectors.
    pub fn rows_sparse(&self) -> Vec<SparseVec<u32>> {
        match self {
            DenseSpan::Generic(e) => e.rows().to_vec(),
            DenseSpan::Gf2(e) => e.rows().iter().map(gf2::unpack).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn vec_of(field: FieldSpec, entries: &[(u32, i64)]) -> SparseVec<u32> {
        SparseVec::from_entries(
            entries.iter().map(|&(k, c)| (k, field.from_i64(c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn inserting_zero_does_not_grow() {
        let mut e = Echelon::<u32>::new(q());
        assert!(!e.insert(SparseVec::zero()).unwrap());
        assert_eq!(e.rank(), 0);
    }

    #[test]
    fn dependent_insert_does_not_grow() {
        let mut e = Echelon::new(q());
        assert!(e.insert(vec_of(q(), &[(1, 1), (2, 1)])).unwrap());
        assert!(e.insert(vec_of(q(), &[(2, 1)])).unwrap());
        assert!(!e.insert(vec_of(q(), &[(1, 1), (2, 2)])).unwrap());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn gf2_rank_of_three_vectors() {
        let f2 = FieldSpec::prime(2).unwrap();
        let mut e = Echelon::new(f2);
        e.insert(vec_of(f2, &[(0, 1)])).unwrap();
        e.insert(vec_of(f2, &[(1, 1)])).unwrap();
        e.insert(vec_of(f2, &[(0, 1), (1, 1)])).unwrap();
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn contains_examples() {
        let e = Echelon::<u32>::new(q());
        assert!(e.contains(&SparseVec::zero()).unwrap());

        let mut span_e1 = Echelon::new(q());
        span_e1.insert(vec_of(q(), &[(1, 1)])).unwrap();
        assert!(!span_e1.contains(&vec_of(q(), &[(2, 1)])).unwrap());

        let mut span = Echelon::new(q());
        span.insert(vec_of(q(), &[(1, 1), (2, 1)])).unwrap();
        span.insert(vec_of(q(), &[(2, 1)])).unwrap();
        assert!(span.contains(&vec_of(q(), &[(1, 1)])).unwrap());
    }

    #[test]
    fn reduce_residue_has_no_pivot_support() {
        let mut e = Echelon::new(q());
        e.insert(vec_of(q(), &[(0, 1), (3, 2)])).unwrap();
        e.insert(vec_of(q(), &[(1, 1), (3, 5)])).unwrap();
        let r = e.reduce(vec_of(q(), &[(0, 2), (1, 1), (2, 1), (3, 7)])).unwrap();
        for (k, _) in r.iter() {
            assert!(!e.is_pivot(k));
        }
    }

    #[test]
    fn field_mismatch_rejected() {
        let mut e = Echelon::new(q());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            e.insert(vec_of(f5, &[(0, 1)])),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn dense_span_dispatches_by_characteristic() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(DenseSpan::new(f2, 8), DenseSpan::Gf2(_)));
        assert!(matches!(DenseSpan::new(q(), 8), DenseSpan::Generic(_)));
    }

    #[test]
    fn packed_and_generic_agree_on_fixed_data() {
        let f2 = FieldSpec::prime(2).unwrap();
        let data: Vec<Vec<(u32, i64)>> = vec![
            vec![(0, 1), (1, 1), (4, 1)],
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (2, 1), (4, 1)],
            vec![(3, 1)],
            vec![(0, 1), (3, 1)],
        ];
        let mut generic = Echelon::new(f2);
        let mut packed = DenseSpan::new(f2, 6);
        for row in &data {
            let v = vec_of(f2, row);
            let a = generic.insert(v.clone()).unwrap();
            let b = packed.insert(&v).unwrap();
            assert_eq!(a, b);
        }
        assert_eq!(generic.rank(), packed.rank());
        let probe = vec_of(f2, &[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(
            generic.contains(&probe).unwrap(),
            packed.contains(&probe).unwrap()
        );
    }

    mod properties {
        use super::*;
        use crate::oracle;
        use proptest::prelude::*;

        fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..7, 1usize..7).prop_flat_map(move |(rows, cols)| {
                prop::collection::vec(prop::collection::vec(-4i64..5, cols), rows)
            })
        }

        fn rank_via_echelon(field: FieldSpec, m: &[Vec<i64>]) -> usize {
            let mut e = Echelon::new(field);
            for row in m {
                let v = SparseVec::from_entries(
                    row.iter()
                        .enumerate()
                        .map(|(j, &c)| (j as u32, field.from_i64(c)))
                        .collect(),
                )
                .unwrap();
                e.insert(v).unwrap();
            }
            e.rank()
        }

        proptest! {
            #[test]
            fn rank_matches_dense_oracle_q(m in arb_matrix()) {
                let field = FieldSpec::Rationals;
                let dense: Vec<Vec<Scalar>> = m
                    .iter()
                    .map(|r| r.iter().map(|&c| field.from_i64(c)).collect())
                    .collect();
                prop_assert_eq!(
                    rank_via_echelon(field, &m),
                    oracle::dense_rank(field, dense).unwrap()
                );
            }

            #[test]
            fn rank_matches_dense_oracle_f2(m in arb_matrix()) {
                let field = FieldSpec::prime(2).unwrap();
                let dense: Vec<Vec<Scalar>> = m
                    .iter()
                    .map(|r| r.iter().map(|&c| field.from_i64(c)).collect())
                    .collect();
                let expect = oracle::dense_rank(field, dense).unwrap();
                prop_assert_eq!(rank_via_echelon(field, &m), expect);
                // and the packed path agrees bit for bit
                let cols = m[0].len();
                let mut packed = DenseSpan::new(field, cols);
                for row in &m {
                    let v = SparseVec::from_entries(
                        row.iter()
                            .enumerate()
                            .map(|(j, &c)| (j as u32, field.from_i64(c)))
                            .collect(),
                    )
                    .unwrap();
                    packed.insert(&v).unwrap();
                }
                prop_assert_eq!(packed.rank(), expect);
            }

            #[test]
            fn contains_matches_linear_solvability(
                m in arb_matrix(),
                probe in prop::collection::vec(-4i64..5, 1..7)
            ) {
                let field = FieldSpec::Rationals;
                let cols = m[0].len().max(probe.len());
                let pad = |r: &[i64]| {
                    let mut v = r.to_vec();
                    v.resize(cols, 0);
                    v
                };
                let mut e = Echelon::new(field);
                for row in &m {
                    let padded = pad(row);
                    let v = SparseVec::from_entries(
                        padded
                            .iter()
                            .enumerate()
                            .map(|(j, &c)| (j as u32, field.from_i64(c)))
                            .collect(),
                    )
                    .unwrap();
                    e.insert(v).unwrap();
                }
                let pv = pad(&probe);
                let probe_vec = SparseVec::from_entries(
                    pv.iter()
                        .enumerate()
                        .map(|(j, &c)| (j as u32, field.from_i64(c)))
                        .collect(),
                )
                .unwrap();
                // v lies in the row space iff adjoining it leaves the rank fixed
                let mut dense: Vec<Vec<Scalar>> = m
                    .iter()
                    .map(|r| pad(r).iter().map(|&c| field.from_i64(c)).collect())
                    .collect();
                let base = oracle::dense_rank(field, dense.clone()).unwrap();
                dense.push(pv.iter().map(|&c| field.from_i64(c)).collect());
                let grown = oracle::dense_rank(field, dense).unwrap();
                prop_assert_eq!(e.contains(&probe_vec).unwrap(), base == grown);
            }
        }
    }
}
