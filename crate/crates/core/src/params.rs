//! Numeric parameters attached to a factor list `m1, ..., mk`.
//!
//! For positive integers `m1..mk` with `l` odd entries:
//!
//! * `N_k  = sum(m_i) - k + 1` — the sharp target for all-odd tuples;
//! * `N_kl = sum(m_i) - 2k + l + 2` — the sharp target once an even entry
//!   appears;
//! * `r    = N_kl - 2 = sum(m_i) - 2k + l` — the rank of the second witness
//!   factor, always even.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealParams {
    /// Total degree `sum(m_i)`.
    pub big_n: usize,
    /// Number of factors.
    pub k: usize,
    /// Number of odd factors.
    pub ell: usize,
    /// `sum(m_i) - k + 1`.
    pub n_k: usize,
    /// `sum(m_i) - 2k + ell + 2`.
    pub n_kl: usize,
    /// `n_kl - 2`.
    pub r: usize,
}

/// Compute the parameters, asserting the linking identities
/// `N_kl = N_k - (k - l - 1)` and `r = N_kl - 2` with `r` even.
pub fn params(m: &[usize]) -> Result<IdealParams> {
    if m.is_empty() {
        return Err(Error::usage("need at least one factor"));
    }
    if m.contains(&0) {
        return Err(Error::usage("factor lengths must be positive"));
    }
    let k = m.len();
    let big_n: usize = m.iter().sum();
    let ell = m.iter().filter(|&&mi| mi % 2 == 1).count();
    let n_k = big_n - k + 1;
    // sum(m_i) - 2k + ell >= 0 because each even entry contributes >= 0 to
    // m_i - 2 and each odd entry's -1 cancels against ell.
    let r = big_n + ell - 2 * k;
    let n_kl = r + 2;
    assert_eq!(
        n_kl as i64,
        n_k as i64 - (k as i64 - ell as i64 - 1),
        "N_kl = N_k - (k - l - 1) must hold"
    );
    assert_eq!(r % 2, 0, "r must be even");
    Ok(IdealParams { big_n, k, ell, n_k, n_kl, r })
}

/// For each slot `(i, j)` of the witness product, in lex order, whether the
/// element carries a second-tensor-factor generator. The true slots are the
/// inner positions `2 <= j <= m_i - 1` of even factors and `2 <= j <= m_i`
/// of odd factors; there are exactly `r` of them.
pub fn second_factor_slots(m: &[usize]) -> Vec<bool> {
    let mut out = Vec::new();
    for &mi in m {
        for j in 1..=mi {
            let uses_second = if mi % 2 == 0 { j >= 2 && j <= mi - 1 } else { j >= 2 };
            out.push(uses_second);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_counts_match_r() {
        for m in [vec![2, 2], vec![2, 3], vec![4], vec![1, 2, 5], vec![1]] {
            let slots = second_factor_slots(&m);
            let p = params(&m).unwrap();
            assert_eq!(slots.len(), p.big_n);
            assert_eq!(slots.iter().filter(|&&b| b).count(), p.r);
            // the first slot of every factor never uses the second factor
            let mut at = 0;
            for &mi in &m {
                assert!(!slots[at]);
                at += mi;
            }
        }
    }

    #[test]
    fn two_even_factors() {
        let p = params(&[2, 2]).unwrap();
        assert_eq!(p.k, 2);
        assert_eq!(p.ell, 0);
        assert_eq!(p.n_k, 3);
        assert_eq!(p.n_kl, 2);
        assert_eq!(p.r, 0);
    }

    #[test]
    fn all_odd_factors() {
        let p = params(&[3, 3]).unwrap();
        assert_eq!(p.ell, 2);
        assert_eq!(p.n_k, 5);
        // N_kk = N_k + 1 when every factor is odd
        assert_eq!(p.n_kl, 6);
    }

    #[test]
    fn one_even_factor_collapses_the_bounds() {
        let p = params(&[2, 3]).unwrap();
        assert_eq!(p.ell, 1);
        // l = k - 1 makes N_kl = N_k
        assert_eq!(p.n_kl, p.n_k);
        assert_eq!(p.n_kl, 4);
        assert_eq!(p.r, 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(params(&[]).is_err());
        assert!(params(&[2, 0]).is_err());
    }

    #[test]
    fn identities_on_random_lists() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let k = rng.gen_range(1..=5usize);
            let m: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=7)).collect();
            let p = params(&m).unwrap();
            assert_eq!(p.n_kl as i64, p.n_k as i64 - (p.k as i64 - p.ell as i64 - 1));
            assert_eq!(p.r + 2, p.n_kl);
            assert_eq!(p.r % 2, 0);
        }
    }
}
