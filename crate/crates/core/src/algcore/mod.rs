//! Finite-dimensional unital algebras given by a basis and a product rule,
//! tensor products, left-normed commutator calculus, and the
//! lower-central-series chain certifying Lie nilpotency class.

pub mod identities;

pub use identities::{check_corollary_nilp2, check_lemma_cl, IdentityReport, TupleMode};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{DenseSpan, SparseVec};
use crate::scalar::{FieldSpec, Scalar};

/// Seed for the sampled construction self-checks. Element sampling in the
/// identity checks takes its seed from the caller instead.
const CONSTRUCTION_CHECK_SEED: u64 = 0x5eed_0a15;

/// Resource guards for algebra construction and chain computation.
#[derive(Clone, Copy, Debug)]
pub struct AlgLimits {
    /// Largest allowed dimension of a tensor product.
    pub max_tensor_dim: usize,
    /// Cap on `dim^2 * limit` for a lower-central chain run.
    pub max_chain_work: u64,
}

impl Default for AlgLimits {
    fn default() -> Self {
        AlgLimits { max_tensor_dim: 1 << 16, max_chain_work: 1 << 30 }
    }
}

/// Whether a construction self-check ran exhaustively or on samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled(u32),
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive => write!(f, "exhaustive"),
            CheckMode::Sampled(n) => write!(f, "sampled({n})"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConstructionChecks {
    pub unit: CheckMode,
    pub associativity: CheckMode,
}

struct AlgebraInner {
    name: String,
    field: FieldSpec,
    labels: Vec<String>,
    unit: SparseVec<u32>,
    generators: Vec<SparseVec<u32>>,
    product: Box<dyn Fn(u32, u32) -> SparseVec<u32> + Send + Sync>,
    memo: Mutex<HashMap<u64, Arc<SparseVec<u32>>>>,
    checks: ConstructionChecks,
}

/// A basis-labelled finite-dimensional unital algebra with a product rule.
///
/// Immutable after construction except for the internal product memo table,
/// which is a thread-safe idempotent cache. Cloning is cheap (shared).
#[derive(Clone)]
pub struct FiniteAlgebra {
    inner: Arc<AlgebraInner>,
}

/// Everything needed to construct a [`FiniteAlgebra`].
pub struct AlgebraSpec {
    pub name: String,
    pub field: FieldSpec,
    pub labels: Vec<String>,
    pub unit: SparseVec<u32>,
    /// Designated algebra generators (used by generator-tuple checks).
    pub generators: Vec<SparseVec<u32>>,
    pub product: Box<dyn Fn(u32, u32) -> SparseVec<u32> + Send + Sync>,
}

const UNIT_CHECK_EXHAUSTIVE_MAX: usize = 4096;
const ASSOC_CHECK_EXHAUSTIVE_MAX: usize = 64;
const SAMPLED_CHECKS: u32 = 128;

impl FiniteAlgebra {
    /// Construct and self-check. The unit axiom is checked on every basis
    /// element up to dimension 4096 and on samples above; associativity on
    /// all basis triples up to dimension 64 and on samples above.
    pub fn new(spec: AlgebraSpec) -> Result<Self> {
        if spec.labels.is_empty() {
            return Err(Error::usage("algebra needs a nonempty basis"));
        }
        let mut alg = FiniteAlgebra {
            inner: Arc::new(AlgebraInner {
                name: spec.name,
                field: spec.field,
                labels: spec.labels,
                unit: spec.unit,
                generators: spec.generators,
                product: spec.product,
                memo: Mutex::new(HashMap::new()),
                checks: ConstructionChecks {
                    unit: CheckMode::Exhaustive,
                    associativity: CheckMode::Exhaustive,
                },
            }),
        };
        let unit = alg.check_unit()?;
        let associativity = alg.check_associativity()?;
        Arc::get_mut(&mut alg.inner)
            .expect("algebra is solely owned during construction")
            .checks = ConstructionChecks { unit, associativity };
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn label(&self, i: u32) -> &str {
        &self.inner.labels[i as usize]
    }

    pub fn unit(&self) -> &SparseVec<u32> {
        &self.inner.unit
    }

    pub fn generators(&self) -> &[SparseVec<u32>] {
        &self.inner.generators
    }

    pub fn checks(&self) -> ConstructionChecks {
        self.inner.checks
    }

    pub fn basis_vec(&self, i: u32) -> SparseVec<u32> {
        SparseVec::unit(i, self.inner.field)
    }

    /// Memoized product of two basis elements.
    pub fn basis_product(&self, i: u32, j: u32) -> Arc<SparseVec<u32>> {
        let key = ((i as u64) << 32) | j as u64;
        if let Some(hit) = self.inner.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let value = Arc::new((self.inner.product)(i, j));
        let mut memo = self.inner.memo.lock().unwrap();
        memo.entry(key).or_insert(value).clone()
    }

    /// Bilinear product of elements.
    pub fn mul(&self, a: &SparseVec<u32>, b: &SparseVec<u32>) -> Result<SparseVec<u32>> {
        let mut entries: Vec<(u32, Scalar)> = Vec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let c = ca.mul(cb)?;
                let prod = self.basis_product(*i, *j);
                for (k, ck) in prod.iter() {
                    entries.push((*k, ck.mul(&c)?));
                }
            }
        }
        SparseVec::from_entries(entries)
    }

    /// `v * e_b` without materializing the basis vector.
    fn mul_basis_right(&self, v: &SparseVec<u32>, b: u32) -> Result<SparseVec<u32>> {
        let mut entries: Vec<(u32, Scalar)> = Vec::new();
        for (i, c) in v.iter() {
            let prod = self.basis_product(*i, b);
            for (k, ck) in prod.iter() {
                entries.push((*k, ck.mul(c)?));
            }
        }
        SparseVec::from_entries(entries)
    }

    fn mul_basis_left(&self, b: u32, v: &SparseVec<u32>) -> Result<SparseVec<u32>> {
        let mut entries: Vec<(u32, Scalar)> = Vec::new();
        for (i, c) in v.iter() {
            let prod = self.basis_product(b, *i);
            for (k, ck) in prod.iter() {
                entries.push((*k, ck.mul(c)?));
            }
        }
        SparseVec::from_entries(entries)
    }

    pub fn bracket(&self, a: &SparseVec<u32>, b: &SparseVec<u32>) -> Result<SparseVec<u32>> {
        self.mul(a, b)?.sub(&self.mul(b, a)?)
    }

    /// Left-normed commutator of a sequence of elements.
    pub fn commutator(&self, items: &[SparseVec<u32>]) -> Result<SparseVec<u32>> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::usage("commutator of an empty sequence"))?;
        let mut acc = first.clone();
        for x in rest {
            acc = self.bracket(&acc, x)?;
        }
        Ok(acc)
    }

    /// Product of a sequence of elements (empty product = unit).
    pub fn product_of(&self, items: &[SparseVec<u32>]) -> Result<SparseVec<u32>> {
        let mut acc = self.inner.unit.clone();
        for x in items {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Render an element through the basis labels, e.g. `4*e1e2e3e4⊗1`.
    pub fn format_element(&self, v: &SparseVec<u32>) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (i, c)) in v.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            if c.is_one() {
                out.push_str(self.label(*i));
            } else {
                out.push_str(&format!("{c}*{}", self.label(*i)));
            }
        }
        out
    }

    fn check_unit(&self) -> Result<CheckMode> {
        let dim = self.dim();
        let mode = if dim <= UNIT_CHECK_EXHAUSTIVE_MAX {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled(SAMPLED_CHECKS)
        };
        let indices: Vec<u32> = match mode {
            CheckMode::Exhaustive => (0..dim as u32).collect(),
            CheckMode::Sampled(n) => {
                let mut rng = ChaCha8Rng::seed_from_u64(CONSTRUCTION_CHECK_SEED);
                (0..n).map(|_| rng.gen_range(0..dim as u32)).collect()
            }
        };
        for b in indices {
            let e = self.basis_vec(b);
            let left = self.mul(self.unit(), &e)?;
            let right = self.mul(&e, self.unit())?;
            if left != e || right != e {
                return Err(Error::precondition(format!(
                    "unit axiom fails on basis element {} of {}",
                    self.label(b),
                    self.name()
                )));
            }
        }
        Ok(mode)
    }

    fn check_associativity(&self) -> Result<CheckMode> {
        let dim = self.dim() as u32;
        let mode = if (dim as usize) <= ASSOC_CHECK_EXHAUSTIVE_MAX {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled(SAMPLED_CHECKS)
        };
        let triples: Vec<(u32, u32, u32)> = match mode {
            CheckMode::Exhaustive => {
                let mut t = Vec::with_capacity((dim as usize).pow(3));
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            t.push((i, j, k));
                        }
                    }
                }
                t
            }
            CheckMode::Sampled(n) => {
                let mut rng = ChaCha8Rng::seed_from_u64(CONSTRUCTION_CHECK_SEED ^ 1);
                (0..n)
                    .map(|_| {
                        (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))
                    })
                    .collect()
            }
        };
        for (i, j, k) in triples {
            let ij = self.basis_product(i, j);
            let jk = self.basis_product(j, k);
            let left = self.mul_basis_right(&ij, k)?;
            let right = self.mul_basis_left(i, &jk)?;
            if left != right {
                return Err(Error::precondition(format!(
                    "associativity fails on basis triple ({}, {}, {}) of {}",
                    self.label(i),
                    self.label(j),
                    self.label(k),
                    self.name()
                )));
            }
        }
        Ok(mode)
    }

    /// Sample a small random element: one to three basis terms with small
    /// nonzero coefficients.
    pub fn sample_element(&self, rng: &mut ChaCha8Rng) -> SparseVec<u32> {
        let dim = self.dim() as u32;
        let terms = rng.gen_range(1..=3u32);
        let mut entries = Vec::new();
        for _ in 0..terms {
            let idx = rng.gen_range(0..dim);
            let c = match self.inner.field {
                FieldSpec::Rationals => {
                    let mut n = 0i64;
                    while n == 0 {
                        n = rng.gen_range(-3..=3);
                    }
                    self.inner.field.from_i64(n)
                }
                FieldSpec::Prime(p) => {
                    let v = rng.gen_range(1..p.min(16));
                    self.inner.field.from_i64(v as i64)
                }
            };
            entries.push((idx, c));
        }
        SparseVec::from_entries(entries).expect("uniform field")
    }

    /// Dimensions of the lower central chain `L_1 = A`,
    /// `L_{k+1} = span[L_k, A]`, listed until the first zero or until
    /// `limit` entries. By multilinearity `L_n` is the span of all
    /// left-normed commutators of length `n`, so `L_n = 0` iff the algebra
    /// is Lie nilpotent of class at most `n - 1`.
    pub fn lie_chain(&self, limit: usize, limits: &AlgLimits) -> Result<Vec<usize>> {
        if limit < 1 {
            return Err(Error::usage("chain limit must be at least 1"));
        }
        let dim = self.dim();
        let work = (dim as u64).saturating_mul(dim as u64).saturating_mul(limit as u64);
        if work > limits.max_chain_work {
            return Err(Error::Guard {
                what: "lower central chain work (dim^2 * limit)",
                limit: limits.max_chain_work,
                requested: work,
                flag: "--max-chain-work",
            });
        }
        let mut dims = vec![dim];
        if limit == 1 {
            return Ok(dims);
        }
        // L_2 from basis pairs; [e_i, e_j] = -[e_j, e_i] so i < j suffices.
        let mut span = DenseSpan::new(self.inner.field, dim);
        for i in 0..dim as u32 {
            for j in (i + 1)..dim as u32 {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                let c = ij.sub(&ji)?;
                if !c.is_zero() {
                    span.insert(&c)?;
                }
            }
        }
        dims.push(span.rank());
        while dims.len() < limit && *dims.last().unwrap() > 0 {
            let rows = span.rows_sparse();
            let mut next = DenseSpan::new(self.inner.field, dim);
            for v in &rows {
                for b in 0..dim as u32 {
                    let vb = self.mul_basis_right(v, b)?;
                    let bv = self.mul_basis_left(b, v)?;
                    let c = vb.sub(&bv)?;
                    if !c.is_zero() {
                        next.insert(&c)?;
                    }
                }
            }
            dims.push(next.rank());
            span = next;
        }
        Ok(dims)
    }

    /// First `n` with `L_n = 0` within `limit` chain entries, if any.
    pub fn nilpotency_witnessed(&self, limit: usize, limits: &AlgLimits) -> Result<Option<usize>> {
        let chain = self.lie_chain(limit, limits)?;
        Ok(chain.iter().position(|&d| d == 0).map(|i| i + 1))
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.inner.name)
            .field("field", &self.inner.field)
            .field("dim", &self.dim())
            .finish()
    }
}

/// A tensor product `G ⊗ H` with the index bookkeeping needed to embed pure
/// tensors.
pub struct TensorAlgebra {
    pub algebra: FiniteAlgebra,
    g: FiniteAlgebra,
    h: FiniteAlgebra,
}

impl TensorAlgebra {
    /// `gv ⊗ hv` as an element of the tensor algebra.
    pub fn embed(&self, gv: &SparseVec<u32>, hv: &SparseVec<u32>) -> Result<SparseVec<u32>> {
        embed_pure(self.h.dim() as u32, gv, hv)
    }

    pub fn factors(&self) -> (&FiniteAlgebra, &FiniteAlgebra) {
        (&self.g, &self.h)
    }
}

fn embed_pure(h_dim: u32, gv: &SparseVec<u32>, hv: &SparseVec<u32>) -> Result<SparseVec<u32>> {
    let mut entries = Vec::with_capacity(gv.len() * hv.len());
    for (i, ci) in gv.iter() {
        for (j, cj) in hv.iter() {
            entries.push((i * h_dim + j, ci.mul(cj)?));
        }
    }
    SparseVec::from_entries(entries)
}

/// Basis-pairs tensor product with the bilinear product rule
/// `(g ⊗ h)(g' ⊗ h') = gg' ⊗ hh'`.
pub fn tensor(g: &FiniteAlgebra, h: &FiniteAlgebra, limits: &AlgLimits) -> Result<TensorAlgebra> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch(g.field(), h.field()));
    }
    let dim = g.dim().checked_mul(h.dim()).unwrap_or(usize::MAX);
    if dim > limits.max_tensor_dim {
        return Err(Error::Guard {
            what: "tensor product dimension",
            limit: limits.max_tensor_dim as u64,
            requested: dim as u64,
            flag: "--max-tensor-dim",
        });
    }
    let hd = h.dim() as u32;
    let labels: Vec<String> = (0..g.dim() as u32)
        .flat_map(|i| (0..hd).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", g.label(i), h.label(j)))
        .collect();
    let gp = g.clone();
    let hp = h.clone();
    let product = Box::new(move |a: u32, b: u32| -> SparseVec<u32> {
        let (ga, ha) = (a / hd, a % hd);
        let (gb, hb) = (b / hd, b % hd);
        let pg = gp.basis_product(ga, gb);
        let ph = hp.basis_product(ha, hb);
        embed_pure(hd, &pg, &ph).expect("uniform field")
    });
    let unit = embed_pure(hd, g.unit(), h.unit())?;
    let mut generators = Vec::new();
    for gv in g.generators() {
        generators.push(embed_pure(hd, gv, h.unit())?);
    }
    for hv in h.generators() {
        generators.push(embed_pure(hd, g.unit(), hv)?);
    }
    let algebra = FiniteAlgebra::new(AlgebraSpec {
        name: format!("{}⊗{}", g.name(), h.name()),
        field: g.field(),
        labels,
        unit,
        generators,
        product,
    })?;
    Ok(TensorAlgebra { algebra, g: g.clone(), h: h.clone() })
}
