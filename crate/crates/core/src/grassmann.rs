//! Finite unital Grassmann (exterior) algebras `E_s` with signed normal
//! forms, both as standalone element arithmetic and as a
//! [`FiniteAlgebra`] provider, plus the characteristic ≠ 2 witness
//! construction.
//!
//! `E_s` is generated by `e1..es` with `ei ej = -ej ei` and `ei^2 = 0`; its
//! basis is the set of strictly increasing monomials, realized here as bit
//! masks over the generator indices.

use std::collections::BTreeMap;
use std::fmt;

use crate::algcore::{self, AlgLimits, AlgebraSpec, FiniteAlgebra, TensorAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::SparseVec;
use crate::params::{params, second_factor_slots, IdealParams};
use crate::scalar::{FieldSpec, Scalar};

/// A strictly increasing product of generators, as a bit mask
/// (bit `i-1` set means `e_i` occurs). The empty mask is the unit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GrassmannMonomial(pub u32);

impl GrassmannMonomial {
    pub fn one() -> Self {
        GrassmannMonomial(0)
    }

    pub fn from_indices(indices: &[u32]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > 32 {
                return Err(Error::usage("generator indices must lie in 1..=32"));
            }
            if mask & (1 << (i - 1)) != 0 {
                return Err(Error::usage("repeated index in monomial"));
            }
            mask |= 1 << (i - 1);
        }
        Ok(GrassmannMonomial(mask))
    }

    pub fn indices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn max_index(&self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            32 - self.0.leading_zeros()
        }
    }
}

impl fmt::Display for GrassmannMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// Multiply two monomials: zero when the index sets intersect, otherwise the
/// sorted union with the merge sign `(-1)^(inversions)`.
pub fn mono_mul(a: GrassmannMonomial, b: GrassmannMonomial) -> Option<(i8, GrassmannMonomial)> {
    if a.0 & b.0 != 0 {
        return None;
    }
    // Each generator of b hops over the generators of a above it.
    let mut swaps = 0u32;
    let mut bm = b.0;
    while bm != 0 {
        let j = bm.trailing_zeros(); // 0-based position
        let above = a.0 >> (j + 1);
        swaps += above.count_ones();
        bm &= bm - 1;
    }
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    Some((sign, GrassmannMonomial(a.0 | b.0)))
}

/// An element of `E_s`: finitely supported combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassmannElement {
    s: u32,
    field: FieldSpec,
    terms: BTreeMap<GrassmannMonomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero(field: FieldSpec, s: u32) -> Self {
        GrassmannElement { s, field, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, s: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(GrassmannMonomial::one(), field.one());
        GrassmannElement { s, field, terms }
    }

    pub fn generator(field: FieldSpec, s: u32, i: u32) -> Result<Self> {
        if i == 0 || i > s {
            return Err(Error::usage(format!("generator e{i} outside ambient E_{s}")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(GrassmannMonomial(1 << (i - 1)), field.one());
        Ok(GrassmannElement { s, field, terms })
    }

    pub fn monomial(field: FieldSpec, s: u32, m: GrassmannMonomial, c: Scalar) -> Result<Self> {
        if m.max_index() > s {
            return Err(Error::usage("monomial index outside ambient"));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(GrassmannElement { s, field, terms })
    }

    pub fn ambient(&self) -> u32 {
        self.s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrassmannMonomial, &Scalar)> {
        self.terms.iter()
    }

    fn check_compat(&self, rhs: &Self) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field, rhs.field));
        }
        if self.s != rhs.s {
            return Err(Error::usage("mixed ambient Grassmann ranks"));
        }
        Ok(())
    }

    fn add_term(&mut self, m: GrassmannMonomial, c: Scalar) -> Result<()> {
        match self.terms.entry(m) {
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

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GrassmannElement {
            s: self.s,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compat(rhs)?;
        let mut out = GrassmannElement::zero(self.field, self.s);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((sign, m)) = mono_mul(*ma, *mb) {
                    let mut c = ca.mul(cb)?;
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(m, c)?;
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, rhs: &Self) -> Result<Self> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() && m.0 != 0 {
                write!(f, "{m}")?;
            } else if m.0 == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Default cap on the ambient rank of a materialized `E_s` (dimension
/// `2^s`).
pub const DEFAULT_MAX_RANK: u32 = 13;

/// Realize `E_s` as a `2^s`-dimensional [`FiniteAlgebra`] with the monomial
/// basis (masks in ascending order) and designated generators `e1..es`.
pub fn as_finite_algebra(s: u32, field: FieldSpec, max_rank: u32) -> Result<FiniteAlgebra> {
    if s > max_rank {
        return Err(Error::Guard {
            what: "Grassmann ambient rank",
            limit: max_rank as u64,
            requested: s as u64,
            flag: "--max-grassmann-rank",
        });
    }
    let dim = 1usize << s;
    let labels: Vec<String> =
        (0..dim as u32).map(|m| GrassmannMonomial(m).to_string()).collect();
    let product = Box::new(move |i: u32, j: u32| -> SparseVec<u32> {
        match mono_mul(GrassmannMonomial(i), GrassmannMonomial(j)) {
            None => SparseVec::zero(),
            Some((sign, m)) => {
                SparseVec::from_entries(vec![(m.0, field.from_i64(sign as i64))])
                    .expect("single entry")
            }
        }
    });
    let generators = (0..s).map(|i| SparseVec::unit(1 << i, field)).collect();
    FiniteAlgebra::new(AlgebraSpec {
        name: format!("E{s}"),
        field,
        labels,
        unit: SparseVec::unit(0, field),
        generators,
        product,
    })
}

/// Everything the characteristic ≠ 2 witness run reports.
#[derive(Clone, Debug)]
pub struct Case1Report {
    pub m: Vec<usize>,
    pub field: FieldSpec,
    pub params: IdealParams,
    pub g_dim: usize,
    pub h_dim: usize,
    pub a_dim: usize,
    pub delta: u8,
    pub delta_prime: u8,
    /// `[v_11..v_1m1] ... [v_k1..v_kmk]` rendered through the tensor basis.
    pub product: String,
    pub expected: String,
    pub matched: bool,
    pub chain: Vec<usize>,
    /// `L_{1 + N_kl} = 0` confirmed by the chain.
    pub chain_ok: bool,
}

/// Lexicographic enumeration positions of the index pairs `(i, j)` used by
/// the witness; `mu` and `mu_prime` may remap them (a permutation given in
/// lex order of the pairs).
fn apply_enumeration(count: usize, custom: Option<&[u32]>) -> Result<(Vec<u32>, u8)> {
    match custom {
        None => Ok(((1..=count as u32).collect(), 0)),
        Some(perm) => {
            if perm.len() != count {
                return Err(Error::usage(format!(
                    "enumeration must list {count} targets, got {}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; count + 1];
            for &p in perm {
                if p == 0 || p as usize > count || seen[p as usize] {
                    return Err(Error::usage("enumeration is not a bijection"));
                }
                seen[p as usize] = true;
            }
            // delta = parity of the permutation, by inversion count
            let mut inversions = 0u32;
            for i in 0..perm.len() {
                for j in (i + 1)..perm.len() {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            Ok((perm.to_vec(), (inversions % 2) as u8))
        }
    }
}

/// Build the Grassmann witness for `T^(m1)...T^(mk) != 0` inside a Lie
/// nilpotent algebra of class `N_kl`: take `A = E_N ⊗ E_r` with
/// `N = m1 + ... + mk` and `r = N - 2k + l`, form the prescribed pure
/// tensors `v_ij`, and compare the commutator product against the closed
/// form `(-1)^(delta + delta') 2^(N_k - 1) e_1..e_N ⊗ e_1..e_r`.
pub fn case1_witness(
    m: &[usize],
    field: FieldSpec,
    mu: Option<&[u32]>,
    mu_prime: Option<&[u32]>,
    alg_limits: &AlgLimits,
    max_rank: u32,
) -> Result<Case1Report> {
    if field.characteristic() == 2 {
        return Err(Error::precondition(
            "the Grassmann witness needs characteristic != 2 (commutators [e_i, e_j] = 2 e_i e_j \
             vanish mod 2); use the group witness instead",
        ));
    }
    let p = params(m)?;
    let big_n = p.big_n;
    let r = p.r;
    let (mu_map, delta) = apply_enumeration(big_n, mu)?;
    let (mu_prime_map, delta_prime) = apply_enumeration(r, mu_prime)?;

    let g = as_finite_algebra(big_n as u32, field, max_rank)?;
    let h = as_finite_algebra(r as u32, field, max_rank)?;
    let t = algcore::tensor(&g, &h, alg_limits)?;

    let product = witness_product(&t, &h, m, &mu_map, &mu_prime_map, field)?;

    // closed form: (-1)^(delta + delta') 2^(N_k - 1) e_1..e_N ⊗ e_1..e_r
    let full_g = (1u32 << big_n) - 1;
    let full_h: u32 = if r == 0 { 0 } else { (1u32 << r) - 1 };
    let mut coeff = field.from_i64(2).pow(p.n_k as u32 - 1);
    if (delta + delta_prime) % 2 == 1 {
        coeff = coeff.neg();
    }
    let expected = t.embed(
        &SparseVec::from_entries(vec![(full_g, coeff)])?,
        &SparseVec::unit(full_h, field),
    )?;

    let matched = product == expected;
    let chain_limit = 1 + p.n_kl;
    let chain = t.algebra.lie_chain(chain_limit, alg_limits)?;
    let chain_ok = chain.last() == Some(&0) && chain.len() <= chain_limit;

    Ok(Case1Report {
        m: m.to_vec(),
        field,
        params: p,
        g_dim: g.dim(),
        h_dim: h.dim(),
        a_dim: t.algebra.dim(),
        delta,
        delta_prime,
        product: t.algebra.format_element(&product),
        expected: t.algebra.format_element(&expected),
        matched,
        chain,
        chain_ok,
    })
}

/// Assemble the `v_ij` and evaluate
/// `[v_11..v_1m1] ... [v_k1..v_kmk]` in the tensor algebra.
fn witness_product(
    t: &TensorAlgebra,
    h: &FiniteAlgebra,
    m: &[usize],
    mu_map: &[u32],
    mu_prime_map: &[u32],
    field: FieldSpec,
) -> Result<SparseVec<u32>> {
    // mu runs over P = {(i,j)} in lex order; mu' over the inner slots P'.
    let slots = second_factor_slots(m);
    let mut factors: Vec<SparseVec<u32>> = Vec::with_capacity(m.len());
    let mut pos = 0usize;
    let mut pos_prime = 0usize;
    for &mi in m {
        let mut args: Vec<SparseVec<u32>> = Vec::with_capacity(mi);
        for _ in 0..mi {
            let e_ij = SparseVec::unit(1u32 << (mu_map[pos] - 1), field);
            let v = if slots[pos] {
                let e_prime = SparseVec::unit(1u32 << (mu_prime_map[pos_prime] - 1), field);
                pos_prime += 1;
                t.embed(&e_ij, &e_prime)?
            } else {
                t.embed(&e_ij, h.unit())?
            };
            pos += 1;
            args.push(v);
        }
        factors.push(t.algebra.commutator(&args)?);
    }
    t.algebra.product_of(&factors)
}
