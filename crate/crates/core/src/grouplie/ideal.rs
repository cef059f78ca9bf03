//! The relation ideal `I_r`, quotient algebras `F G_r / I_r`, and the
//! characteristic-2 witness construction.
//!
//! `I` is the two-sided ideal of `F G` generated by
//! `S = { d_{i1 i2} d_{i3 i4} + d_{i1 i3} d_{i2 i4} }` over all index
//! tuples. Its restriction `I_r = I ∩ F G_r` equals the ideal generated
//! inside `F G_r` by the generators with indices ≤ r: the retraction
//! `y_i -> 1` (for `i > r`) fixes `F G_r`, kills every `d` that mentions an
//! out-of-range index, and each index of an `S`-generator occurs in exactly
//! one `d` of each of its two products, so mixed generators map into the
//! small-index ideal. Because every `d` is central, `I_r` is already
//! spanned by the left translates `g * s` with `g` over the group basis —
//! no two-sided framing needed.

use std::sync::Arc;

use crate::algcore::{self, AlgLimits, AlgebraSpec, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{Gf2Echelon, Gf2Vec, SparseVec};
use crate::params::{params, second_factor_slots, IdealParams};
use crate::scalar::FieldSpec;

use super::{d, pair_count, GroupAlgebraElement, GroupElement};

/// Guards for ideal and witness construction.
#[derive(Clone, Copy, Debug)]
pub struct GroupLimits {
    /// Largest rank for which `I_r` is materialized. The default of 4 keeps
    /// the GF(2) elimination at dimension 1024; rank 5 (dimension 32768)
    /// sits behind this flag and takes far longer.
    pub max_ideal_rank: u8,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits { max_ideal_rank: 4 }
    }
}

impl GroupLimits {
    fn check(&self, r: u8) -> Result<()> {
        if r > self.max_ideal_rank {
            return Err(Error::Guard {
                what: "group ideal rank",
                limit: self.max_ideal_rank as u64,
                requested: r as u64,
                flag: "--max-group-rank",
            });
        }
        if r > super::MAX_RANK {
            return Err(Error::Guard {
                what: "group rank",
                limit: super::MAX_RANK as u64,
                requested: r as u64,
                flag: "(none: hard cap)",
            });
        }
        Ok(())
    }
}

/// `I_r` as a row-reduced GF(2) span over the dense enumeration of group
/// normal forms.
pub struct IdealIr {
    r: u8,
    field: FieldSpec,
    span: Gf2Echelon,
    /// Distinct nonzero `S`-generators with indices ≤ r.
    pub generator_count: usize,
}

impl IdealIr {
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn group_rank(&self) -> u8 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, v: &GroupAlgebraElement) -> Result<bool> {
        if v.rank() != self.r {
            return Err(Error::usage("element rank does not match the ideal"));
        }
        Ok(self.span.contains(&self.pack(v)))
    }

    fn pack(&self, v: &GroupAlgebraElement) -> Gf2Vec {
        Gf2Vec::from_support(self.span.dim(), v.support().map(|g| g.index()))
    }

    fn span(&self) -> &Gf2Echelon {
        &self.span
    }
}

/// Distinct nonzero generators `d_{i1 i2} d_{i3 i4} + d_{i1 i3} d_{i2 i4}`
/// with all indices in `1..=r`.
fn s_generators(field: FieldSpec, r: u8) -> Result<Vec<GroupAlgebraElement>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for i1 in 1..=r {
        for i2 in 1..=r {
            for i3 in 1..=r {
                for i4 in 1..=r {
                    let a = d(field, r, i1, i2)?.mul(&d(field, r, i3, i4)?)?;
                    let b = d(field, r, i1, i3)?.mul(&d(field, r, i2, i4)?)?;
                    let s = a.add(&b)?;
                    if s.is_zero() {
                        continue;
                    }
                    let key: Vec<u32> = s.support().map(|g| g.index()).collect();
                    if seen.insert(key) {
                        out.push(s);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Build `I_r` by echelonizing every left translate `g * s`.
pub fn build_ideal(r: u8, limits: &GroupLimits) -> Result<IdealIr> {
    limits.check(r)?;
    let field = FieldSpec::Prime(2);
    let dim = 1usize << (r as u32 + pair_count(r) as u32);
    let gens = s_generators(field, r)?;
    let mut span = Gf2Echelon::new(dim);
    for s in &gens {
        let support: Vec<GroupElement> = s.support().copied().collect();
        for g in 0..dim as u32 {
            let ge = GroupElement::from_index(r, g)?;
            let row = Gf2Vec::from_support(
                dim,
                support.iter().map(|t| ge.mul(t).expect("same rank").index()),
            );
            span.insert(row);
        }
    }
    Ok(IdealIr { r, field, span, generator_count: gens.len() })
}

struct QuotientData {
    r: u8,
    field: FieldSpec,
    ideal_span: Gf2Echelon,
    /// quotient index -> group index of the coset representative
    reps: Vec<u32>,
    /// group index -> quotient index (None for pivot indices)
    to_quotient: Vec<Option<u32>>,
}

impl QuotientData {
    /// Residue of a group basis element, in quotient coordinates.
    fn residue(&self, group_index: u32) -> SparseVec<u32> {
        let v = Gf2Vec::from_support(self.ideal_span.dim(), [group_index]);
        let reduced = self.ideal_span.reduce(v);
        let entries = reduced
            .support()
            .into_iter()
            .map(|i| {
                let q = self.to_quotient[i as usize].expect("residues avoid pivots");
                (q, self.field.one())
            })
            .collect();
        SparseVec::from_entries(entries).expect("uniform field")
    }
}

/// The quotient `F G_r / I_r` on the non-pivot coset representatives.
pub fn quotient_algebra(r: u8, limits: &GroupLimits) -> Result<FiniteAlgebra> {
    let ideal = build_ideal(r, limits)?;
    let field = ideal.field;
    let dim = ideal.dim();
    let mut reps = Vec::with_capacity(dim - ideal.rank());
    let mut to_quotient = vec![None; dim];
    for i in 0..dim as u32 {
        if !ideal.span().is_pivot(i) {
            to_quotient[i as usize] = Some(reps.len() as u32);
            reps.push(i);
        }
    }
    if reps.is_empty() {
        return Err(Error::precondition(format!("I_{r} is the whole group algebra")));
    }
    let labels: Vec<String> = reps
        .iter()
        .map(|&i| GroupElement::from_index(r, i).expect("valid index").to_string())
        .collect();
    let data = Arc::new(QuotientData {
        r,
        field,
        ideal_span: ideal.span,
        reps,
        to_quotient,
    });
    let unit = data.residue(GroupElement::identity(r)?.index());
    let generators: Vec<SparseVec<u32>> = (1..=r)
        .map(|i| Ok(data.residue(GroupElement::generator(r, i)?.index())))
        .collect::<Result<_>>()?;
    let pdata = data.clone();
    let product = Box::new(move |a: u32, b: u32| -> SparseVec<u32> {
        let ga = GroupElement::from_index(pdata.r, pdata.reps[a as usize])
            .expect("representative index");
        let gb = GroupElement::from_index(pdata.r, pdata.reps[b as usize])
            .expect("representative index");
        let prod = ga.mul(&gb).expect("same rank");
        pdata.residue(prod.index())
    });
    FiniteAlgebra::new(AlgebraSpec {
        name: format!("FG{r}/I{r}"),
        field,
        labels,
        unit,
        generators,
        product,
    })
}

/// Everything the characteristic-2 witness run reports.
#[derive(Clone, Debug)]
pub struct Case2Report {
    pub m: Vec<usize>,
    pub params: IdealParams,
    pub g_dim: usize,
    pub h_dim: usize,
    pub a_dim: usize,
    pub product_nonzero: bool,
    pub product_terms: usize,
    pub chain: Vec<usize>,
    pub chain_ok: bool,
}

/// Build the characteristic-2 witness: `A = (F G_N / I_N) ⊗ (F G_r / I_r)`
/// with the pure tensors `v_ij` over the images of the group generators,
/// evaluate `[v_11..v_1m1] ... [v_k1..v_kmk]`, and certify
/// `L_{1 + N_kl}(A) = 0` by the chain.
pub fn case2_witness(
    m: &[usize],
    limits: &GroupLimits,
    alg_limits: &AlgLimits,
) -> Result<Case2Report> {
    let p = params(m)?;
    limits.check(p.big_n as u8)?;
    let g = quotient_algebra(p.big_n as u8, limits)?;
    let h = quotient_algebra(p.r as u8, limits)?;
    let t = algcore::tensor(&g, &h, alg_limits)?;

    let slots = second_factor_slots(m);
    let mut factors = Vec::with_capacity(m.len());
    let mut pos = 0usize;
    let mut pos_prime = 0usize;
    for &mi in m {
        let mut args = Vec::with_capacity(mi);
        for _ in 0..mi {
            let y_ij = &g.generators()[pos];
            let v = if slots[pos] {
                let y_prime = &h.generators()[pos_prime];
                pos_prime += 1;
                t.embed(y_ij, y_prime)?
            } else {
                t.embed(y_ij, h.unit())?
            };
            pos += 1;
            args.push(v);
        }
        factors.push(t.algebra.commutator(&args)?);
    }
    let product = t.algebra.product_of(&factors)?;

    let chain_limit = 1 + p.n_kl;
    let chain = t.algebra.lie_chain(chain_limit, alg_limits)?;
    let chain_ok = chain.last() == Some(&0) && chain.len() <= chain_limit;

    Ok(Case2Report {
        m: m.to_vec(),
        params: p,
        g_dim: g.dim(),
        h_dim: h.dim(),
        a_dim: t.algebra.dim(),
        product_nonzero: !product.is_zero(),
        product_terms: product.len(),
        chain,
        chain_ok,
    })
}
