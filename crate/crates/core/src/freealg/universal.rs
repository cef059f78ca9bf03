//! The multilinearly truncated relatively free class-2 algebra
//! `U = F<x1..xm> / T^(3)`.
//!
//! `U` is universal among unital algebras satisfying `[a, b, c] = 0`: any
//! assignment of the generators extends to a homomorphism. The truncation
//! keeps only the components of multidegree at most `(1, ..., 1)` — every
//! squarefree multidegree — and products that would exceed multiplicity one
//! in any variable are cut to zero. That is all the identity checks need,
//! since both sides of the checked displays are multilinear in every slot.
//!
//! Each squarefree component is the span of the permutation words on its
//! variable subset, modulo the matching component of `T^(3)`; coset
//! representatives are the non-pivot words of the component's echelon form.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algcore::{AlgebraSpec, FiniteAlgebra};
use crate::error::Result;
use crate::exactlin::{DenseSpan, SparseVec};
use crate::scalar::FieldSpec;

use super::span::{tideal_span_on_vars, MultilinearBasis, SpanLimits};
use super::Word;

struct Component {
    basis: MultilinearBasis,
    span: DenseSpan,
    /// word index within the component -> global basis index (None: pivot).
    to_global: Vec<Option<u32>>,
}

struct ModelData {
    field: FieldSpec,
    components: HashMap<u32, Component>,
    /// global basis index -> (subset mask, word)
    elems: Vec<(u32, Word)>,
}

impl ModelData {
    fn reduce_word_to_global(&self, mask: u32, word: &Word) -> SparseVec<u32> {
        let comp = &self.components[&mask];
        let idx = comp.basis.index_of(word).expect("word lives in its component");
        let residue = comp
            .span
            .reduce(&SparseVec::unit(idx, self.field))
            .expect("same field by construction");
        let entries = residue
            .into_entries()
            .into_iter()
            .map(|(i, c)| {
                let g = comp.to_global[i as usize].expect("residue is supported off pivots");
                (g, c)
            })
            .collect();
        SparseVec::from_entries(entries).expect("uniform field")
    }
}

fn subset_vars(mask: u32) -> Vec<u32> {
    let mut vars = Vec::new();
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros();
        vars.push(bit + 1);
        m &= m - 1;
    }
    vars
}

fn word_mask(w: &Word) -> u32 {
    w.0.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1))
}

/// Build `U = F<x1..x_mvars> / T^(3)`, truncated to squarefree
/// multidegrees, as a finite-dimensional algebra. Its designated generators
/// are the images of `x1..x_mvars`.
pub fn universal_model(
    field: FieldSpec,
    mvars: usize,
    limits: &SpanLimits,
) -> Result<FiniteAlgebra> {
    limits.check_model_vars(mvars)?;
    let masks: Vec<u32> = {
        let mut m: Vec<u32> = (0..(1u32 << mvars)).collect();
        m.sort_by_key(|&x| (x.count_ones(), x));
        m
    };
    let mut components = HashMap::new();
    let mut elems: Vec<(u32, Word)> = Vec::new();
    for &mask in &masks {
        let vars = subset_vars(mask);
        let span = tideal_span_on_vars(field, 3, &vars)?;
        let basis = MultilinearBasis::new(&vars)?;
        let mut to_global = vec![None; basis.dim()];
        for i in 0..basis.dim() as u32 {
            if !span.span().is_pivot(i) {
                to_global[i as usize] = Some(elems.len() as u32);
                elems.push((mask, basis.word(i).clone()));
            }
        }
        components.insert(
            mask,
            Component { basis, span: span.span().clone(), to_global },
        );
    }
    let labels: Vec<String> = elems.iter().map(|(_, w)| w.to_string()).collect();
    let data = Arc::new(ModelData { field, components, elems });

    let unit = {
        let at = data
            .elems
            .iter()
            .position(|(m, _)| *m == 0)
            .expect("empty component survives");
        SparseVec::unit(at as u32, field)
    };
    let mut generators = Vec::with_capacity(mvars);
    for v in 1..=mvars as u32 {
        let mask = 1u32 << (v - 1);
        let at = data
            .elems
            .iter()
            .position(|(m, w)| *m == mask && w.0 == vec![v])
            .expect("generator words survive");
        generators.push(SparseVec::unit(at as u32, field));
    }

    let pdata = data.clone();
    let product = Box::new(move |i: u32, j: u32| -> SparseVec<u32> {
        let (mi, wi) = &pdata.elems[i as usize];
        let (mj, wj) = &pdata.elems[j as usize];
        if mi & mj != 0 {
            // would exceed multidegree (1,...,1): truncated to zero
            return SparseVec::zero();
        }
        let word = wi.concat(wj);
        pdata.reduce_word_to_global(mi | mj, &word)
    });

    FiniteAlgebra::new(AlgebraSpec {
        name: format!("U({mvars})"),
        field,
        labels,
        unit,
        generators,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::AlgLimits;
    use crate::oracle;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn limits() -> SpanLimits {
        SpanLimits::default()
    }

    #[test]
    fn one_variable_model_is_two_dimensional() {
        let u = universal_model(q(), 1, &limits()).unwrap();
        assert_eq!(u.dim(), 2);
        let labels: Vec<&str> = (0..2).map(|i| u.label(i)).collect();
        assert_eq!(labels, vec!["1", "x1"]);
    }

    #[test]
    fn triple_commutator_of_generators_vanishes() {
        let u = universal_model(q(), 3, &limits()).unwrap();
        let gens = u.generators().to_vec();
        let c = u.commutator(&gens).unwrap();
        assert!(c.is_zero());
        // but the double commutator survives
        let c2 = u.commutator(&gens[..2]).unwrap();
        assert!(!c2.is_zero());
    }

    #[test]
    fn model_is_class_two_by_chain() {
        let u = universal_model(q(), 3, &limits()).unwrap();
        let chain = u.lie_chain(3, &AlgLimits::default()).unwrap();
        assert_eq!(chain.last(), Some(&0));
        assert!(chain.len() <= 3);
    }

    #[test]
    fn top_component_dimension_matches_dense_oracle() {
        let mvars = 3usize;
        let u = universal_model(q(), mvars, &limits()).unwrap();
        let full_mask = (1u32 << mvars) - 1;
        let top: usize = (0..u.dim() as u32)
            .filter(|&i| {
                // reconstruct the subset from the label words
                let label = u.label(i);
                label != "1" && label.matches('x').count() == mvars
            })
            .count();
        let vars = subset_vars(full_mask);
        let expect = {
            let fact: usize = (1..=mvars).product();
            fact - oracle::naive_tideal_rank(q(), 3, &vars).unwrap()
        };
        assert_eq!(top, expect);
    }

    #[test]
    fn products_truncate_on_shared_variables() {
        let u = universal_model(q(), 2, &limits()).unwrap();
        let x1 = &u.generators()[0];
        assert!(u.mul(x1, x1).unwrap().is_zero());
        let x2 = &u.generators()[1];
        assert!(!u.mul(x1, x2).unwrap().is_zero());
    }

    #[test]
    fn guard_rejects_oversized_models() {
        assert!(universal_model(q(), 9, &limits()).is_err());
    }
}
