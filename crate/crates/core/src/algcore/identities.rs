//! Commutator identities in tensor products of Lie-nilpotent-class-2
//! algebras.
//!
//! For unital algebras `G`, `H` with `[g1,g2,g3] = 0` and `[h1,h2,h3] = 0`,
//! the left-normed commutator
//! `c_l = [g1 ⊗ h1, ..., gl ⊗ hl]` collapses to a closed form:
//!
//! ```text
//! c_2    = [g1,g2] ⊗ h1h2  +  g2g1 ⊗ [h1,h2]
//! c_2n   = [g1,g2][g3,g4]...[g_{2n-1},g_{2n}]
//!              ⊗ [h1h2,h3][h4,h5]...[h_{2n-2},h_{2n-1}] h_{2n}
//!        + [g2g1,g3][g4,g5]...[g_{2n-2},g_{2n-1}] g_{2n}
//!              ⊗ [h1,h2][h3,h4]...[h_{2n-1},h_{2n}]            (n > 1)
//! c_2n+1 = [g1,g2][g3,g4]...[g_{2n-1},g_{2n}] g_{2n+1}
//!              ⊗ [h1h2,h3][h4,h5]...[h_{2n},h_{2n+1}]
//!        + [g2g1,g3][g4,g5]...[g_{2n},g_{2n+1}]
//!              ⊗ [h1,h2][h3,h4]...[h_{2n-1},h_{2n}] h_{2n+1}   (n >= 1)
//! ```
//!
//! and for the pure-tensor tuples `v1 = g1 ⊗ 1`, `vi = gi ⊗ hi`,
//! `v_{2m'} = g_{2m'} ⊗ 1` (even length) respectively `w1 = g1 ⊗ 1`,
//! `wj = gj ⊗ hj` (odd length):
//!
//! ```text
//! [v1, ..., v_{2m'}]   = [g1,g2]...[g_{2m'-1},g_{2m'}]
//!                            ⊗ [h2,h3]...[h_{2m'-2},h_{2m'-1}]
//! [w1, ..., w_{2n'+1}] = [g1,g2]...[g_{2n'-1},g_{2n'}] g_{2n'+1}
//!                            ⊗ [h2,h3]...[h_{2n'},h_{2n'+1}]
//! ```
//!
//! Both sides of each display are linear in every `gi` and every `hi`, and
//! every pair of class-≤2 algebras is a homomorphic image of the truncated
//! relatively free model, so checking the identity on the model's generator
//! tuple certifies it for all admissible `G`, `H`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::SparseVec;

use super::{tensor, AlgLimits, FiniteAlgebra};

/// How the check picks its tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMode {
    /// One tuple made of the algebras' designated generators.
    Generators,
    /// Seeded random small elements.
    Random { trials: u32, seed: u64 },
}

/// Outcome of an identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub length: usize,
    pub mode: TupleMode,
    pub trials_run: u32,
    pub ok: bool,
    pub g_chain: Vec<usize>,
    pub h_chain: Vec<usize>,
}

fn require_class_two(label: &str, a: &FiniteAlgebra, limits: &AlgLimits) -> Result<Vec<usize>> {
    let chain = a.lie_chain(3, limits)?;
    if chain.last() != Some(&0) {
        return Err(Error::precondition(format!(
            "{label} ({}) is not Lie nilpotent of class <= 2: chain {chain:?}",
            a.name()
        )));
    }
    Ok(chain)
}

fn generator_tuple(a: &FiniteAlgebra, len: usize) -> Result<Vec<SparseVec<u32>>> {
    if a.generators().len() < len {
        return Err(Error::usage(format!(
            "{} has {} designated generators, need {len}",
            a.name(),
            a.generators().len()
        )));
    }
    Ok(a.generators()[..len].to_vec())
}

type Tuples = Vec<(Vec<SparseVec<u32>>, Vec<SparseVec<u32>>)>;

fn make_tuples(
    g: &FiniteAlgebra,
    h: &FiniteAlgebra,
    len: usize,
    mode: TupleMode,
) -> Result<Tuples> {
    match mode {
        TupleMode::Generators => Ok(vec![(generator_tuple(g, len)?, generator_tuple(h, len)?)]),
        TupleMode::Random { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                let gs = (0..len).map(|_| g.sample_element(&mut rng)).collect();
                let hs = (0..len).map(|_| h.sample_element(&mut rng)).collect();
                out.push((gs, hs));
            }
            Ok(out)
        }
    }
}

/// Evaluate the `c_l` closed form against a direct commutator computation in
/// `G ⊗ H`, on generator tuples or random elements.
pub fn check_lemma_cl(
    g: &FiniteAlgebra,
    h: &FiniteAlgebra,
    length: usize,
    mode: TupleMode,
    limits: &AlgLimits,
) -> Result<IdentityReport> {
    if length < 2 {
        return Err(Error::usage("commutator length must be at least 2"));
    }
    let g_chain = require_class_two("left factor", g, limits)?;
    let h_chain = require_class_two("right factor", h, limits)?;
    let t = tensor(g, h, limits)?;
    let tuples = make_tuples(g, h, length, mode)?;
    let mut ok = true;
    for (gs, hs) in &tuples {
        let elems: Vec<SparseVec<u32>> = gs
            .iter()
            .zip(hs)
            .map(|(gv, hv)| t.embed(gv, hv))
            .collect::<Result<_>>()?;
        let lhs = t.algebra.commutator(&elems)?;
        let rhs = lemma_cl_rhs(&t, g, h, gs, hs)?;
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    Ok(IdentityReport {
        length,
        mode,
        trials_run: tuples.len() as u32,
        ok,
        g_chain,
        h_chain,
    })
}

fn lemma_cl_rhs(
    t: &super::TensorAlgebra,
    g: &FiniteAlgebra,
    h: &FiniteAlgebra,
    gs: &[SparseVec<u32>],
    hs: &[SparseVec<u32>],
) -> Result<SparseVec<u32>> {
    let l = gs.len();
    if l == 2 {
        let t1 = t.embed(&g.bracket(&gs[0], &gs[1])?, &h.mul(&hs[0], &hs[1])?)?;
        let t2 = t.embed(&g.mul(&gs[1], &gs[0])?, &h.bracket(&hs[0], &hs[1])?)?;
        return t1.add(&t2);
    }
    if l % 2 == 0 {
        let n = l / 2;
        // [g1,g2][g3,g4]...[g_{2n-1},g_{2n}]
        let mut g1 = Vec::new();
        for i in 0..n {
            g1.push(g.bracket(&gs[2 * i], &gs[2 * i + 1])?);
        }
        // [h1h2,h3] [h4,h5]...[h_{2n-2},h_{2n-1}] h_{2n}
        let mut h1 = vec![h.bracket(&h.mul(&hs[0], &hs[1])?, &hs[2])?];
        for i in 2..n {
            h1.push(h.bracket(&hs[2 * i - 1], &hs[2 * i])?);
        }
        h1.push(hs[2 * n - 1].clone());
        // [g2g1,g3] [g4,g5]...[g_{2n-2},g_{2n-1}] g_{2n}
        let mut g2 = vec![g.bracket(&g.mul(&gs[1], &gs[0])?, &gs[2])?];
        for i in 2..n {
            g2.push(g.bracket(&gs[2 * i - 1], &gs[2 * i])?);
        }
        g2.push(gs[2 * n - 1].clone());
        // [h1,h2][h3,h4]...[h_{2n-1},h_{2n}]
        let mut h2 = Vec::new();
        for i in 0..n {
            h2.push(h.bracket(&hs[2 * i], &hs[2 * i + 1])?);
        }
        let t1 = t.embed(&g.product_of(&g1)?, &h.product_of(&h1)?)?;
        let t2 = t.embed(&g.product_of(&g2)?, &h.product_of(&h2)?)?;
        t1.add(&t2)
    } else {
        let n = (l - 1) / 2;
        // [g1,g2][g3,g4]...[g_{2n-1},g_{2n}] g_{2n+1}
        let mut g1 = Vec::new();
        for i in 0..n {
            g1.push(g.bracket(&gs[2 * i], &gs[2 * i + 1])?);
        }
        g1.push(gs[2 * n].clone());
        // [h1h2,h3] [h4,h5]...[h_{2n},h_{2n+1}]
        let mut h1 = vec![h.bracket(&h.mul(&hs[0], &hs[1])?, &hs[2])?];
        for i in 2..=n {
            h1.push(h.bracket(&hs[2 * i - 1], &hs[2 * i])?);
        }
        // [g2g1,g3] [g4,g5]...[g_{2n},g_{2n+1}]
        let mut g2 = vec![g.bracket(&g.mul(&gs[1], &gs[0])?, &gs[2])?];
        for i in 2..=n {
            g2.push(g.bracket(&gs[2 * i - 1], &gs[2 * i])?);
        }
        // [h1,h2][h3,h4]...[h_{2n-1},h_{2n}] h_{2n+1}
        let mut h2 = Vec::new();
        for i in 0..n {
            h2.push(h.bracket(&hs[2 * i], &hs[2 * i + 1])?);
        }
        h2.push(hs[2 * n].clone());
        let t1 = t.embed(&g.product_of(&g1)?, &h.product_of(&h1)?)?;
        let t2 = t.embed(&g.product_of(&g2)?, &h.product_of(&h2)?)?;
        t1.add(&t2)
    }
}

/// Check the pure-tensor displays: even tuples `g1⊗1, g2⊗h2, ...,
/// g_{2m'-1}⊗h_{2m'-1}, g_{2m'}⊗1` and odd tuples
/// `g1⊗1, g2⊗h2, ..., g_{2n'+1}⊗h_{2n'+1}`.
pub fn check_corollary_nilp2(
    g: &FiniteAlgebra,
    h: &FiniteAlgebra,
    length: usize,
    mode: TupleMode,
    limits: &AlgLimits,
) -> Result<IdentityReport> {
    if length < 2 {
        return Err(Error::usage("tuple length must be at least 2"));
    }
    let g_chain = require_class_two("left factor", g, limits)?;
    let h_chain = require_class_two("right factor", h, limits)?;
    let t = tensor(g, h, limits)?;
    let tuples = make_tuples(g, h, length, mode)?;
    let mut ok = true;
    for (gs, hs) in &tuples {
        let even = length % 2 == 0;
        // assemble the pure-tensor tuple
        let mut elems = Vec::with_capacity(length);
        for i in 0..length {
            let first_or_even_last = i == 0 || (even && i == length - 1);
            let hv = if first_or_even_last { h.unit().clone() } else { hs[i].clone() };
            elems.push(t.embed(&gs[i], &hv)?);
        }
        let lhs = t.algebra.commutator(&elems)?;
        let rhs = if even {
            let m = length / 2;
            let mut gp = Vec::new();
            for i in 0..m {
                gp.push(g.bracket(&gs[2 * i], &gs[2 * i + 1])?);
            }
            // [h2,h3][h4,h5]...[h_{2m'-2},h_{2m'-1}] (0-based pairs (1,2),(3,4),..)
            let mut hp = Vec::new();
            for i in 1..m {
                hp.push(h.bracket(&hs[2 * i - 1], &hs[2 * i])?);
            }
            t.embed(&g.product_of(&gp)?, &h.product_of(&hp)?)?
        } else {
            let n = (length - 1) / 2;
            let mut gp = Vec::new();
            for i in 0..n {
                gp.push(g.bracket(&gs[2 * i], &gs[2 * i + 1])?);
            }
            gp.push(gs[2 * n].clone());
            let mut hp = Vec::new();
            for i in 1..=n {
                hp.push(h.bracket(&hs[2 * i - 1], &hs[2 * i])?);
            }
            t.embed(&g.product_of(&gp)?, &h.product_of(&hp)?)?
        };
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    Ok(IdentityReport {
        length,
        mode,
        trials_run: tuples.len() as u32,
        ok,
        g_chain,
        h_chain,
    })
}
