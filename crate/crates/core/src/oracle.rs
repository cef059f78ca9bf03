//! Naive reference implementations used to cross-check the optimized paths.
//!
//! Everything here is deliberately written from scratch, sharing no code
//! with the modules it checks: dense Gaussian elimination instead of sparse
//! echelon bases, explicit adjacent-transposition counting instead of merge
//! signs, and a direct hash-map polynomial representation instead of
//! [`crate::freealg::FreePoly`]. Slow and simple on purpose.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Rank of a dense matrix by plain Gaussian elimination with row swaps.
pub fn dense_rank(field: FieldSpec, mut m: Vec<Vec<Scalar>>) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    let rows = m.len();
    let cols = m[0].len();
    for row in &m {
        if row.len() != cols {
            return Err(Error::usage("ragged matrix"));
        }
        for s in row {
            if s.field() != field {
                return Err(Error::FieldMismatch(field, s.field()));
            }
        }
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(src) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, src);
        let inv = m[rank][col].inv()?;
        for j in col..cols {
            m[rank][j] = m[rank][j].mul(&inv)?;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..cols {
                    let sub = m[rank][j].mul(&factor)?;
                    m[r][j] = m[r][j].sub(&sub)?;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// Sign and normal form of a Grassmann monomial product, computed by
/// literally bubbling generators into sorted position one adjacent swap at
/// a time, flipping the sign on each swap and returning `None` when two
/// equal generators become adjacent.
pub fn grassmann_sign_by_transpositions(a: &[u32], b: &[u32]) -> Option<(i8, Vec<u32>)> {
    let mut seq: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
    let mut sign = 1i8;
    loop {
        let mut swapped = false;
        for i in 0..seq.len().saturating_sub(1) {
            if seq[i] == seq[i + 1] {
                return None;
            }
            if seq[i] > seq[i + 1] {
                seq.swap(i, i + 1);
                sign = -sign;
                swapped = true;
            }
        }
        if !swapped {
            return Some((sign, seq));
        }
    }
}

/// A multilinear polynomial as a bare map from words to coefficients.
type NaivePoly = HashMap<Vec<u32>, Scalar>;

fn naive_add_term(p: &mut NaivePoly, word: Vec<u32>, c: Scalar) {
    match p.entry(word) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c).expect("same field");
            if s.is_zero() {
                e.remove();
            } else {
                e.insert(s);
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

fn naive_mul(a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
    let mut out = NaivePoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            naive_add_term(&mut out, w, ca.mul(cb).expect("same field"));
        }
    }
    out
}

fn naive_sub(a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
    let mut out = a.clone();
    for (w, c) in b {
        naive_add_term(&mut out, w.clone(), c.neg());
    }
    out
}

fn naive_word(field: FieldSpec, w: &[u32]) -> NaivePoly {
    let mut p = NaivePoly::new();
    p.insert(w.to_vec(), field.one());
    p
}

fn naive_commutator(field: FieldSpec, blocks: &[Vec<u32>]) -> NaivePoly {
    let mut acc = naive_word(field, &blocks[0]);
    for block in &blocks[1..] {
        let b = naive_word(field, block);
        acc = naive_sub(&naive_mul(&acc, &b), &naive_mul(&b, &acc));
    }
    acc
}

fn permutations_of(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            let mut p = vec![x];
            p.append(&mut tail);
            out.push(p);
        }
    }
    out
}

/// All spanning generators of the multilinear component of `T^(n)` on the
/// given variables: `u * [w1, ..., wn] * v` over ordered set partitions into
/// `n` nonempty blocks plus two possibly-empty framing blocks, every block
/// in every internal order.
pub fn naive_tideal_generators(field: FieldSpec, n: usize, vars: &[u32]) -> Vec<NaivePoly> {
    let mut out = Vec::new();
    if n == 0 || vars.is_empty() {
        return out;
    }
    let blocks_total = n + 2; // u, w1..wn, v
    let mut assign = vec![0usize; vars.len()];
    'partitions: loop {
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); blocks_total];
        for (i, &b) in assign.iter().enumerate() {
            parts[b].push(vars[i]);
        }
        // parts[0] = u and parts[n+1] = v may be empty; the middle may not.
        if parts[1..=n].iter().all(|p| !p.is_empty()) {
            let order_lists: Vec<Vec<Vec<u32>>> =
                parts.iter().map(|p| permutations_of(p)).collect();
            let mut choice = vec![0usize; blocks_total];
            loop {
                let u = &order_lists[0][choice[0]];
                let v = &order_lists[blocks_total - 1][choice[blocks_total - 1]];
                let mid: Vec<Vec<u32>> =
                    (1..=n).map(|i| order_lists[i][choice[i]].clone()).collect();
                let core = naive_commutator(field, &mid);
                let framed =
                    naive_mul(&naive_mul(&naive_word(field, u), &core), &naive_word(field, v));
                if !framed.is_empty() {
                    out.push(framed);
                }
                let mut i = 0;
                while i < blocks_total {
                    choice[i] += 1;
                    if choice[i] < order_lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == blocks_total {
                    break;
                }
            }
        }
        let mut i = 0;
        while i < assign.len() {
            assign[i] += 1;
            if assign[i] < blocks_total {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == assign.len() {
            break 'partitions;
        }
    }
    out
}

/// Rank of the multilinear component of `T^(n)` on `vars`, by dense
/// elimination over the full `|vars|!`-dimensional word space.
pub fn naive_tideal_rank(field: FieldSpec, n: usize, vars: &[u32]) -> Result<usize> {
    let words = permutations_of(vars);
    let index: HashMap<Vec<u32>, usize> =
        words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let gens = naive_tideal_generators(field, n, vars);
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        let mut row = vec![field.zero(); words.len()];
        for (w, c) in g {
            row[index[&w]] = c;
        }
        rows.push(row);
    }
    dense_rank(field, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_rank_small_cases() {
        let q = FieldSpec::rationals();
        let m = vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(2), q.from_i64(4)],
            vec![q.from_i64(0), q.from_i64(1)],
        ];
        assert_eq!(dense_rank(q, m).unwrap(), 2);
        assert_eq!(dense_rank(q, vec![]).unwrap(), 0);
        assert_eq!(dense_rank(q, vec![vec![q.zero(), q.zero()]]).unwrap(), 0);
    }

    #[test]
    fn transposition_sign_basics() {
        assert_eq!(grassmann_sign_by_transpositions(&[1], &[2]), Some((1, vec![1, 2])));
        assert_eq!(grassmann_sign_by_transpositions(&[2], &[1]), Some((-1, vec![1, 2])));
        assert_eq!(grassmann_sign_by_transpositions(&[1], &[1]), None);
        assert_eq!(
            grassmann_sign_by_transpositions(&[1, 3], &[2, 4]),
            Some((-1, vec![1, 2, 3, 4]))
        );
    }

    #[test]
    fn naive_commutator_expands_left_normed() {
        let q = FieldSpec::rationals();
        let c = naive_commutator(q, &[vec![1], vec![2], vec![3]]);
        // [x1,x2,x3] = x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
        assert_eq!(c.len(), 4);
        assert_eq!(c[&vec![1, 2, 3]], q.one());
        assert_eq!(c[&vec![2, 1, 3]], q.from_i64(-1));
        assert_eq!(c[&vec![3, 1, 2]], q.from_i64(-1));
        assert_eq!(c[&vec![3, 2, 1]], q.one());
    }

    #[test]
    fn naive_tideal_small_ranks() {
        let q = FieldSpec::rationals();
        assert_eq!(naive_tideal_rank(q, 2, &[1, 2]).unwrap(), 1);
        assert_eq!(naive_tideal_rank(q, 3, &[1, 2]).unwrap(), 0);
        assert_eq!(naive_tideal_rank(q, 1, &[1, 2]).unwrap(), 2);
    }
}
