//! Multilinear spanning sets of commutator ideals and their products.
//!
//! The multilinear component of `T^(n)` on variables `x1..xd` is spanned by
//! the elements `u * [w1, ..., wn] * v` where `(u, w1, ..., wn, v)` ranges
//! over ordered set partitions of the variables into `n` nonempty blocks
//! `wi` plus two possibly-empty framing blocks, each block arranged in every
//! possible word order: the ideal is spanned by monomial-argument
//! commutators framed by monomials, and multihomogeneous components of a
//! graded ideal stay inside it. Products `T^(m1)...T^(mk)` are spanned
//! likewise, distributing the variables over the factors.
//!
//! The enumeration produces massive duplication, so expanded generators are
//! deduplicated syntactically (canonical signed word expansion) before
//! echelon insertion.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::{DenseSpan, SparseVec};
use crate::scalar::FieldSpec;

use super::{commutator, FreePoly, Word};

/// Resource guards for span construction.
#[derive(Clone, Copy, Debug)]
pub struct SpanLimits {
    /// Largest multilinear degree accepted; the default of 7 caps the word
    /// space at 5040 dimensions, the most a rational elimination tolerates
    /// at desk scale.
    pub max_degree: usize,
    /// Largest variable count for the truncated relatively free model.
    pub max_model_vars: usize,
}

impl Default for SpanLimits {
    fn default() -> Self {
        SpanLimits { max_degree: 7, max_model_vars: 6 }
    }
}

impl SpanLimits {
    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::Guard {
                what: "multilinear degree",
                limit: self.max_degree as u64,
                requested: d as u64,
                flag: "--max-degree",
            });
        }
        Ok(())
    }

    pub fn check_model_vars(&self, mvars: usize) -> Result<()> {
        if mvars > self.max_model_vars {
            return Err(Error::Guard {
                what: "model variable count",
                limit: self.max_model_vars as u64,
                requested: mvars as u64,
                flag: "--max-model-vars",
            });
        }
        Ok(())
    }
}

/// All permutations of `items` in lexicographic order.
pub(crate) fn lex_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(items.len());
    fn rec(remaining: &mut Vec<u32>, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..remaining.len() {
            let x = remaining.remove(i);
            current.push(x);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, x);
        }
    }
    rec(&mut sorted, &mut current, &mut out);
    out
}

/// The multilinear word component on a fixed variable set: all `|vars|!`
/// permutation words, indexed in lexicographic order.
#[derive(Clone, Debug)]
pub struct MultilinearBasis {
    vars: Vec<u32>,
    words: Vec<Word>,
    factorials: Vec<usize>,
}

impl MultilinearBasis {
    pub fn new(vars: &[u32]) -> Result<Self> {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::usage("variable set contains repeats"));
        }
        if sorted.iter().any(|&v| v == 0) {
            return Err(Error::usage("generator indices start at x1"));
        }
        let words: Vec<Word> = lex_permutations(&sorted).into_iter().map(Word).collect();
        let mut factorials = vec![1usize; sorted.len() + 1];
        for i in 1..factorials.len() {
            factorials[i] = factorials[i - 1] * i;
        }
        Ok(MultilinearBasis { vars: sorted, words, factorials })
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, index: u32) -> &Word {
        &self.words[index as usize]
    }

    /// Lexicographic rank of a permutation word (Lehmer code).
    pub fn index_of(&self, w: &Word) -> Option<u32> {
        if !w.is_permutation_of(&self.vars) {
            return None;
        }
        let mut remaining = self.vars.clone();
        let mut rank = 0usize;
        for (pos, letter) in w.0.iter().enumerate() {
            let at = remaining.iter().position(|v| v == letter)?;
            rank += at * self.factorials[self.vars.len() - 1 - pos];
            remaining.remove(at);
        }
        debug_assert_eq!(&self.words[rank], w);
        Some(rank as u32)
    }

    /// Express a polynomial in basis coordinates; fails if any word of the
    /// support is not a permutation of the variable set.
    pub fn to_vec(&self, p: &FreePoly) -> Result<SparseVec<u32>> {
        let mut entries = Vec::with_capacity(p.num_terms());
        for (w, c) in p.terms() {
            let idx = self.index_of(w).ok_or_else(|| {
                Error::usage(format!(
                    "polynomial is not multilinear on x{}..x{}: stray word {w}",
                    self.vars.first().copied().unwrap_or(1),
                    self.vars.last().copied().unwrap_or(0),
                ))
            })?;
            entries.push((idx, c.clone()));
        }
        SparseVec::from_entries(entries)
    }

    pub fn to_poly(&self, field: FieldSpec, v: &SparseVec<u32>) -> FreePoly {
        let mut p = FreePoly::zero(field);
        for (idx, c) in v.iter() {
            let t = FreePoly::monomial(field, self.word(*idx).clone(), c.clone())
                .expect("same field");
            p = p.add(&t).expect("same field");
        }
        p
    }
}

/// Expanded generator: signed words summing to `u*[w1..wn]*v` (all
/// coefficients are ±1).
type SignedWords = Vec<(Vec<u32>, i8)>;

/// Expansion of the left-normed commutator of word blocks into `2^(n-1)`
/// signed concatenations.
fn commutator_expansion(blocks: &[&[u32]]) -> SignedWords {
    let mut acc: SignedWords = vec![(blocks[0].to_vec(), 1)];
    for block in &blocks[1..] {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (w, s) in &acc {
            let mut left = w.clone();
            left.extend_from_slice(block);
            next.push((left, *s));
            let mut right = block.to_vec();
            right.extend_from_slice(w);
            next.push((right, -s));
        }
        acc = next;
    }
    acc
}

/// All `(|u|, |w1|..|wn|, |v|)` cut patterns of a degree-`d` word.
fn frame_compositions(d: usize, n: usize) -> Vec<(usize, Vec<usize>, usize)> {
    let mut out = Vec::new();
    if d < n {
        return out;
    }
    fn middle(total: usize, parts: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            current.push(total);
            out.push(current.clone());
            current.pop();
            return;
        }
        for first in 1..=(total - parts + 1) {
            current.push(first);
            middle(total - first, parts - 1, current, out);
            current.pop();
        }
    }
    for a in 0..=(d - n) {
        for b in 0..=(d - n - a) {
            let mut sizes = Vec::new();
            middle(d - a - b, n, &mut Vec::new(), &mut sizes);
            for s in sizes {
                out.push((a, s, b));
            }
        }
    }
    out
}

/// Visit every spanning generator of the multilinear `T^(n)` component on
/// `vars`, as a signed word expansion.
fn for_each_tideal_generator(
    n: usize,
    vars: &[u32],
    f: &mut dyn FnMut(SignedWords) -> Result<()>,
) -> Result<()> {
    let d = vars.len();
    if d < n {
        return Ok(());
    }
    let cuts = frame_compositions(d, n);
    for perm in lex_permutations(vars) {
        for (a, sizes, b) in &cuts {
            let mut blocks: Vec<&[u32]> = Vec::with_capacity(n);
            let mut offset = *a;
            for s in sizes {
                blocks.push(&perm[offset..offset + s]);
                offset += s;
            }
            let u = &perm[..*a];
            let v = &perm[d - b..];
            let framed = commutator_expansion(&blocks)
                .into_iter()
                .map(|(w, s)| {
                    let mut word = Vec::with_capacity(d);
                    word.extend_from_slice(u);
                    word.extend(w);
                    word.extend_from_slice(v);
                    (word, s)
                })
                .collect();
            f(framed)?;
        }
    }
    Ok(())
}

/// Visit every spanning generator of the multilinear component of
/// `T^(m1)...T^(mk)` on `vars`: distribute the variables over `k` factor
/// blocks (each nonempty) and take products of per-factor `T^(mi)`
/// generators.
fn for_each_product_generator(
    m: &[usize],
    vars: &[u32],
    f: &mut dyn FnMut(SignedWords) -> Result<()>,
) -> Result<()> {
    let k = m.len();
    let d = vars.len();
    if k == 0 || d < k {
        return Ok(());
    }
    let mut assign = vec![0usize; d];
    loop {
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(vars[i]);
        }
        if blocks.iter().zip(m).all(|(block, &mi)| block.len() >= mi.max(1)) {
            // collect each factor's generator expansions
            let mut factor_gens: Vec<Vec<SignedWords>> = Vec::with_capacity(k);
            for (block, &mi) in blocks.iter().zip(m) {
                let mut gens = Vec::new();
                for_each_tideal_generator(mi, block, &mut |g| {
                    gens.push(g);
                    Ok(())
                })?;
                factor_gens.push(gens);
            }
            if factor_gens.iter().all(|g| !g.is_empty()) {
                let mut choice = vec![0usize; k];
                loop {
                    let mut product: SignedWords = vec![(Vec::with_capacity(d), 1)];
                    for (i, &c) in choice.iter().enumerate() {
                        let factor = &factor_gens[i][c];
                        let mut next = Vec::with_capacity(product.len() * factor.len());
                        for (w, s) in &product {
                            for (fw, fs) in factor {
                                let mut word = w.clone();
                                word.extend_from_slice(fw);
                                next.push((word, s * fs));
                            }
                        }
                        product = next;
                    }
                    f(product)?;
                    let mut i = 0;
                    while i < k {
                        choice[i] += 1;
                        if choice[i] < factor_gens[i].len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == k {
                        break;
                    }
                }
            }
        }
        let mut i = 0;
        while i < d {
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == d {
            return Ok(());
        }
    }
}

/// Syntactic deduplication of expanded generators: terms sorted by word
/// index with the leading sign normalized to +1, so that a generator and
/// its negation collapse.
struct CanonicalSeen {
    seen: HashSet<Vec<(u32, i8)>>,
}

impl CanonicalSeen {
    fn new() -> Self {
        CanonicalSeen { seen: HashSet::new() }
    }

    /// Returns the canonical indexed form if it has not been seen before.
    fn admit(&mut self, basis: &MultilinearBasis, g: &SignedWords) -> Option<Vec<(u32, i8)>> {
        let mut indexed: Vec<(u32, i8)> = g
            .iter()
            .map(|(w, s)| {
                let idx = basis
                    .index_of(&Word(w.clone()))
                    .expect("generator words are permutations by construction");
                (idx, *s)
            })
            .collect();
        indexed.sort_unstable_by_key(|&(i, _)| i);
        debug_assert!(indexed.windows(2).all(|p| p[0].0 != p[1].0));
        if indexed.first().map(|&(_, s)| s) == Some(-1) {
            for (_, s) in &mut indexed {
                *s = -*s;
            }
        }
        if self.seen.insert(indexed.clone()) {
            Some(indexed)
        } else {
            None
        }
    }
}

fn indexed_to_vec(field: FieldSpec, indexed: &[(u32, i8)]) -> SparseVec<u32> {
    SparseVec::from_entries(
        indexed
            .iter()
            .map(|&(i, s)| (i, field.from_i64(s as i64)))
            .collect(),
    )
    .expect("uniform field")
}

/// An echelonized multilinear subspace with its generating statistics.
#[derive(Debug)]
pub struct MultilinearSpan {
    field: FieldSpec,
    basis: MultilinearBasis,
    span: DenseSpan,
    pub generators_offered: usize,
    pub generators_distinct: usize,
}

impl MultilinearSpan {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &MultilinearBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, p: &FreePoly) -> Result<bool> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field, p.field()));
        }
        let v = self.basis.to_vec(p)?;
        self.span.contains(&v)
    }

    pub fn contains_vec(&self, v: &SparseVec<u32>) -> Result<bool> {
        self.span.contains(v)
    }

    pub(crate) fn span(&self) -> &DenseSpan {
        &self.span
    }
}

fn build_span(
    field: FieldSpec,
    vars: &[u32],
    gen: impl FnOnce(&mut dyn FnMut(SignedWords) -> Result<()>) -> Result<()>,
) -> Result<MultilinearSpan> {
    let basis = MultilinearBasis::new(vars)?;
    let mut span = DenseSpan::new(field, basis.dim());
    let mut seen = CanonicalSeen::new();
    let mut offered = 0usize;
    let mut distinct = 0usize;
    gen(&mut |g: SignedWords| {
        offered += 1;
        if let Some(indexed) = seen.admit(&basis, &g) {
            distinct += 1;
            span.insert(&indexed_to_vec(field, &indexed))?;
        }
        Ok(())
    })?;
    Ok(MultilinearSpan {
        field,
        basis,
        span,
        generators_offered: offered,
        generators_distinct: distinct,
    })
}

/// Echelon basis of the multilinear component of `T^(n)` on `x1..xd`.
pub fn tideal_multilinear_span(
    field: FieldSpec,
    n: usize,
    d: usize,
    limits: &SpanLimits,
) -> Result<MultilinearSpan> {
    if n < 1 {
        return Err(Error::usage("commutator length n must be at least 1"));
    }
    if d < 1 {
        return Err(Error::usage("multilinear degree must be at least 1"));
    }
    limits.check_degree(d)?;
    let vars: Vec<u32> = (1..=d as u32).collect();
    tideal_span_on_vars(field, n, &vars)
}

/// Same, on an arbitrary squarefree variable set (used by the truncated
/// relatively free model, where components of every multidegree ≤ (1,..,1)
/// are needed).
pub(crate) fn tideal_span_on_vars(
    field: FieldSpec,
    n: usize,
    vars: &[u32],
) -> Result<MultilinearSpan> {
    build_span(field, vars, |sink| for_each_tideal_generator(n, vars, sink))
}

/// Echelon basis of the multilinear component of `T^(m1)...T^(mk)` on
/// `x1..xd`.
pub fn product_ideal_multilinear_span(
    field: FieldSpec,
    m: &[usize],
    d: usize,
    limits: &SpanLimits,
) -> Result<MultilinearSpan> {
    check_m(m)?;
    if d < 1 {
        return Err(Error::usage("multilinear degree must be at least 1"));
    }
    limits.check_degree(d)?;
    let vars: Vec<u32> = (1..=d as u32).collect();
    build_span(field, &vars, |sink| for_each_product_generator(m, &vars, sink))
}

fn check_m(m: &[usize]) -> Result<()> {
    if m.is_empty() {
        return Err(Error::usage("need at least one factor"));
    }
    if m.contains(&0) {
        return Err(Error::usage("factor lengths must be positive"));
    }
    Ok(())
}

/// Outcome of a containment check
/// `T^(m1)...T^(mk) ⊆ T^(N)` on one multilinear component.
#[derive(Clone, Debug)]
pub struct ContainmentReport {
    pub m: Vec<usize>,
    pub target: usize,
    pub degree: usize,
    pub field: FieldSpec,
    pub holds: bool,
    /// A product-span generator outside the target span, if any.
    pub counterexample: Option<FreePoly>,
    pub product_rank: usize,
    pub target_rank: usize,
    pub dim: usize,
}

/// Check whether every multilinear generator of `T^(m1)...T^(mk)` at degree
/// `d` lies in the multilinear component of `T^(target)`.
pub fn verify_containment(
    field: FieldSpec,
    m: &[usize],
    target: usize,
    d: usize,
    limits: &SpanLimits,
) -> Result<ContainmentReport> {
    check_m(m)?;
    if target < 1 {
        return Err(Error::usage("target ideal index must be at least 1"));
    }
    if d < 1 {
        return Err(Error::usage("multilinear degree must be at least 1"));
    }
    limits.check_degree(d)?;
    let vars: Vec<u32> = (1..=d as u32).collect();
    let target_span = tideal_span_on_vars(field, target, &vars)?;
    let basis = MultilinearBasis::new(&vars)?;
    let mut product = DenseSpan::new(field, basis.dim());
    let mut seen = CanonicalSeen::new();
    let mut offered = 0usize;
    let mut distinct = 0usize;
    let mut counterexample: Option<FreePoly> = None;
    for_each_product_generator(m, &vars, &mut |g| {
        offered += 1;
        if let Some(indexed) = seen.admit(&basis, &g) {
            distinct += 1;
            let v = indexed_to_vec(field, &indexed);
            product.insert(&v)?;
            if counterexample.is_none() && !target_span.contains_vec(&v)? {
                counterexample = Some(basis.to_poly(field, &v));
            }
        }
        Ok(())
    })?;
    Ok(ContainmentReport {
        m: m.to_vec(),
        target,
        degree: d,
        field,
        holds: counterexample.is_none(),
        counterexample,
        product_rank: product.rank(),
        target_rank: target_span.rank(),
        dim: basis.dim(),
    })
}

/// Outcome of a non-containment check via the canonical multilinear witness.
#[derive(Clone, Debug)]
pub struct NoncontainmentReport {
    pub m: Vec<usize>,
    pub target: usize,
    pub degree: usize,
    pub field: FieldSpec,
    /// `[x1..x_{m1}][x_{m1+1}..] ...` on distinct variables.
    pub witness: FreePoly,
    pub witness_outside: bool,
    pub target_rank: usize,
    pub dim: usize,
}

/// Build the canonical multilinear witness — the product of left-normed
/// commutators of `N = m1 + ... + mk` distinct generators — and test whether
/// it escapes the multilinear component of `T^(target)`.
pub fn verify_noncontainment(
    field: FieldSpec,
    m: &[usize],
    target: usize,
    limits: &SpanLimits,
) -> Result<NoncontainmentReport> {
    check_m(m)?;
    if target < 1 {
        return Err(Error::usage("target ideal index must be at least 1"));
    }
    let d: usize = m.iter().sum();
    limits.check_degree(d)?;
    let witness = canonical_witness(field, m)?;
    let span = tideal_multilinear_span(field, target, d, limits)?;
    let witness_outside = !span.contains(&witness)?;
    Ok(NoncontainmentReport {
        m: m.to_vec(),
        target,
        degree: d,
        field,
        witness,
        witness_outside,
        target_rank: span.rank(),
        dim: span.dim(),
    })
}

/// The canonical witness `[x1..x_{m1}][x_{m1+1}..x_{m1+m2}] ...`.
pub fn canonical_witness(field: FieldSpec, m: &[usize]) -> Result<FreePoly> {
    check_m(m)?;
    let mut next = 1u32;
    let mut product = FreePoly::one(field);
    for &mi in m {
        let args: Vec<FreePoly> = (0..mi)
            .map(|j| FreePoly::var(field, next + j as u32))
            .collect::<Result<_>>()?;
        next += mi as u32;
        product = product.mul(&commutator(&args)?)?;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse;
    use crate::oracle;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn limits() -> SpanLimits {
        SpanLimits::default()
    }

    #[test]
    fn basis_indexing_round_trips() {
        let b = MultilinearBasis::new(&[1, 2, 3]).unwrap();
        assert_eq!(b.dim(), 6);
        for i in 0..6u32 {
            let w = b.word(i).clone();
            assert_eq!(b.index_of(&w), Some(i));
        }
        assert_eq!(b.index_of(&Word(vec![1, 1, 2])), None);
        assert_eq!(b.index_of(&Word(vec![1, 2])), None);
    }

    #[test]
    fn single_commutator_span_at_degree_two() {
        let s = tideal_multilinear_span(q(), 2, 2, &limits()).unwrap();
        assert_eq!(s.rank(), 1);
        let c = parse(q(), "[x1,x2]").unwrap();
        assert!(s.contains(&c).unwrap());
        let p = parse(q(), "x1*x2").unwrap();
        assert!(!s.contains(&p).unwrap());
    }

    #[test]
    fn three_blocks_from_two_letters_is_empty() {
        let s = tideal_multilinear_span(q(), 3, 2, &limits()).unwrap();
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn t1_is_the_whole_component() {
        let s = tideal_multilinear_span(q(), 1, 3, &limits()).unwrap();
        assert_eq!(s.rank(), 6);
    }

    #[test]
    fn ranks_match_naive_dense_oracle_up_to_degree_four() {
        for d in 1..=4usize {
            let vars: Vec<u32> = (1..=d as u32).collect();
            for n in 1..=d + 1 {
                let fast = tideal_multilinear_span(q(), n, d, &limits()).unwrap();
                let slow = oracle::naive_tideal_rank(q(), n, &vars).unwrap();
                assert_eq!(fast.rank(), slow, "rank mismatch at n={n}, d={d}");
            }
        }
    }

    #[test]
    fn ranks_match_oracle_over_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        for d in 2..=4usize {
            let vars: Vec<u32> = (1..=d as u32).collect();
            for n in 2..=d {
                let fast = tideal_multilinear_span(f2, n, d, &limits()).unwrap();
                let slow = oracle::naive_tideal_rank(f2, n, &vars).unwrap();
                assert_eq!(fast.rank(), slow, "rank mismatch at n={n}, d={d}");
            }
        }
    }

    #[test]
    fn tideal_ranks_are_monotone_in_n() {
        let mut prev = None;
        for n in 1..=5 {
            let rank = tideal_multilinear_span(q(), n, 4, &limits()).unwrap().rank();
            if let Some(p) = prev {
                assert!(rank <= p, "rank grew from {p} to {rank} at n={n}");
            }
            prev = Some(rank);
        }
    }

    #[test]
    fn generators_are_multilinear() {
        let vars = [1u32, 2, 3, 4];
        for_each_tideal_generator(2, &vars, &mut |g| {
            for (w, _) in &g {
                assert!(Word(w.clone()).is_permutation_of(&vars));
            }
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn product_span_contains_commutator_product() {
        let s = product_ideal_multilinear_span(q(), &[2, 2], 4, &limits()).unwrap();
        let p = parse(q(), "[x1,x2]*[x3,x4]").unwrap();
        assert!(s.contains(&p).unwrap());
    }

    #[test]
    fn product_with_single_t1_factor_fills_component() {
        let s = product_ideal_multilinear_span(q(), &[1], 2, &limits()).unwrap();
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn product_rank_matches_oracle_for_2_2_at_degree_4() {
        // independent oracle: naive dense elimination over naive generators
        let field = q();
        let vars: Vec<u32> = vec![1, 2, 3, 4];
        let fast = product_ideal_multilinear_span(field, &[2, 2], 4, &limits()).unwrap();

        // enumerate naive product generators: pairs of naive T^(2) spans on
        // complementary variable pairs
        let words = lex_permutations(&vars);
        let index: std::collections::HashMap<Vec<u32>, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::new();
        let splits: Vec<(Vec<u32>, Vec<u32>)> = vec![
            (vec![1, 2], vec![3, 4]),
            (vec![1, 3], vec![2, 4]),
            (vec![1, 4], vec![2, 3]),
            (vec![2, 3], vec![1, 4]),
            (vec![2, 4], vec![1, 3]),
            (vec![3, 4], vec![1, 2]),
        ];
        for (a, b) in splits {
            for ga in oracle::naive_tideal_generators(field, 2, &a) {
                for gb in oracle::naive_tideal_generators(field, 2, &b) {
                    let mut row = vec![field.zero(); words.len()];
                    for (wa, ca) in &ga {
                        for (wb, cb) in &gb {
                            let mut w = wa.clone();
                            w.extend_from_slice(wb);
                            let at = index[&w];
                            row[at] = row[at].add(&ca.mul(cb).unwrap()).unwrap();
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let slow = oracle::dense_rank(field, rows).unwrap();
        assert_eq!(fast.rank(), slow);
    }

    #[test]
    fn containment_t3_t2_in_t3_holds() {
        let r = verify_containment(q(), &[3, 2], 3, 5, &limits()).unwrap();
        assert!(r.holds);
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn containment_t3_t2_in_t4_holds_over_q_fails_over_f3() {
        let r = verify_containment(q(), &[3, 2], 4, 5, &limits()).unwrap();
        assert!(r.holds);

        let f3 = FieldSpec::prime(3).unwrap();
        let r3 = verify_containment(f3, &[3, 2], 4, 5, &limits()).unwrap();
        assert!(!r3.holds);
        let cex = r3.counterexample.expect("counterexample reported");
        // the reported element really is outside T^(4) mod 3
        let t4 = tideal_multilinear_span(f3, 4, 5, &limits()).unwrap();
        assert!(!t4.contains(&cex).unwrap());
    }

    #[test]
    fn noncontainment_witnesses() {
        // [x1,x2][x3,x4] escapes T^(3)
        let r = verify_noncontainment(q(), &[2, 2], 3, &limits()).unwrap();
        assert!(r.witness_outside);
        // but [x1,x2] lies in T^(2)
        let r2 = verify_noncontainment(q(), &[2], 2, &limits()).unwrap();
        assert!(!r2.witness_outside);
    }

    #[test]
    fn canonical_witness_shape() {
        let w = canonical_witness(q(), &[2, 2]).unwrap();
        let p = parse(q(), "[x1,x2]*[x3,x4]").unwrap();
        assert_eq!(w, p);
        // a length-1 factor is the bare generator
        let w1 = canonical_witness(q(), &[1, 2]).unwrap();
        let p1 = parse(q(), "x1*[x2,x3]").unwrap();
        assert_eq!(w1, p1);
    }

    #[test]
    fn degree_guard_enforced() {
        let r = tideal_multilinear_span(q(), 2, 8, &limits());
        assert!(matches!(r, Err(Error::Guard { .. })));
        let wide = SpanLimits { max_degree: 8, ..SpanLimits::default() };
        assert!(wide.check_degree(8).is_ok());
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            tideal_multilinear_span(q(), 0, 2, &limits()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            verify_containment(q(), &[2, 0], 2, 4, &limits()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            verify_containment(q(), &[], 2, 4, &limits()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn membership_query_requires_multilinear_input() {
        let s = tideal_multilinear_span(q(), 2, 2, &limits()).unwrap();
        let bad = parse(q(), "x1*x1").unwrap();
        assert!(matches!(s.contains(&bad), Err(Error::Usage(_))));
    }
}
