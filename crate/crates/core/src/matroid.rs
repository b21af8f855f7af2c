//! Rank oracle and matroid operations over the Jacobian realization.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::models::{jacobian_row_into, sample_point, GenericPoint, ModelError, ModelSpec};
use crate::primefield::{EchelonBasis, FieldError, FieldMatrix, PrimeField, DEFAULT_PRIMES};

/// A subset of an ordered ground set, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    len: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(len: usize) -> Self {
        EdgeSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for k in 0..len {
            s.insert(k);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, idx: I) -> Self {
        let mut s = Self::empty(len);
        for k in idx {
            s.insert(k);
        }
        s
    }

    /// Size of the ambient ground set.
    pub fn ground_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, k: usize) {
        assert!(k < self.len, "index {k} outside ground set of size {}", self.len);
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn remove(&mut self, k: usize) {
        if k < self.len {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.len && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn with(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.insert(k);
        s
    }

    pub fn without(&self, k: usize) -> Self {
        let mut s = self.clone();
        s.remove(k);
        s
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "edge sets over different ground sets");
        EdgeSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `K_{k,l}` on the first `k` rows and `l` columns of a bipartite model, or
/// the complete graph on the first `k` vertices of a symmetric one (`l` is
/// ignored there; SymDet includes the loops).
pub fn complete_set(spec: &ModelSpec, k: usize, l: usize) -> EdgeSet {
    let mut s = EdgeSet::empty(spec.ground_len());
    for idx in 0..spec.ground_len() {
        let e = spec.elem(idx).unwrap();
        let inside = if spec.family().is_bipartite() {
            e.i < k && e.j < l
        } else {
            e.j < k
        };
        if inside {
            s.insert(idx);
        }
    }
    s
}

/// Builds an edge set from zero-based index pairs.
pub fn edge_set_from_pairs(spec: &ModelSpec, pairs: &[(usize, usize)]) -> Result<EdgeSet, OracleError> {
    let mut s = EdgeSet::empty(spec.ground_len());
    for &(i, j) in pairs {
        let idx = spec.index_of(i, j).ok_or(OracleError::PairOutOfRange(i, j))?;
        s.insert(idx);
    }
    Ok(s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("oracle needs at least one prime and one trial")]
    EmptyConfig,
    #[error("edge set over {got} elements used with a ground set of {expected}")]
    GroundMismatch { expected: usize, got: usize },
    #[error("pair ({0},{1}) is not in the ground set")]
    PairOutOfRange(usize, usize),
    #[error("genericity failure: primes disagree on the rank of {set:?}: {ranks:?}")]
    GenericityFailure { set: Vec<usize>, ranks: Vec<(u64, usize)> },
}

/// Primes, points per prime and the base seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            primes: DEFAULT_PRIMES.to_vec(),
            trials: 3,
            seed: 0x5eed_0001,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        OracleConfig {
            seed,
            ..Self::default()
        }
    }
}

struct SampledPoint {
    point: GenericPoint,
    /// Jacobian rows of every ground element, row-major.
    rows: Vec<u64>,
}

/// Result of the one-point circuit screen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Screen {
    /// Full rank at the sampled point, hence independent.
    Independent,
    /// Dependent with a left kernel that is not a single full-support vector.
    NotCircuit,
    /// Looks like a circuit; confirm with [`RankOracle::is_circuit`].
    Candidate,
}

/// Generic rank oracle: the rank of `S` is the maximum rank of its Jacobian
/// rows over the sampled points, and every configured prime must agree.
pub struct RankOracle {
    spec: ModelSpec,
    config: OracleConfig,
    points: Vec<Vec<SampledPoint>>,
    cache: RwLock<HashMap<EdgeSet, usize>>,
}

impl fmt::Debug for RankOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankOracle")
            .field("spec", &self.spec)
            .field("config", &self.config)
            .finish()
    }
}

impl RankOracle {
    pub fn new(spec: ModelSpec, config: OracleConfig) -> Result<Self, OracleError> {
        if config.primes.is_empty() || config.trials == 0 {
            return Err(OracleError::EmptyConfig);
        }
        let params = spec.num_params();
        let mut points = Vec::new();
        for (pi, &p) in config.primes.iter().enumerate() {
            let field = PrimeField::new(p)?;
            let mut per_prime = Vec::new();
            for t in 0..config.trials {
                let seed = config
                    .seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add((pi * 1000 + t) as u64);
                let point = sample_point(&spec, field, seed);
                let mut rows = vec![0; spec.ground_len() * params];
                for idx in 0..spec.ground_len() {
                    jacobian_row_into(&spec, idx, &point, &mut rows[idx * params..(idx + 1) * params])?;
                }
                per_prime.push(SampledPoint { point, rows });
            }
            points.push(per_prime);
        }
        Ok(RankOracle {
            spec,
            config,
            points,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Oracle with the default primes and trials.
    pub fn with_defaults(spec: ModelSpec) -> Self {
        Self::new(spec, OracleConfig::default()).expect("default configuration is valid")
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn ground_len(&self) -> usize {
        self.spec.ground_len()
    }

    /// The sampled points, grouped by prime.
    pub fn points(&self) -> impl Iterator<Item = &GenericPoint> {
        self.points.iter().flatten().map(|sp| &sp.point)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    fn row<'a>(&self, sp: &'a SampledPoint, idx: usize) -> &'a [u64] {
        let p = self.spec.num_params();
        &sp.rows[idx * p..(idx + 1) * p]
    }

    fn point_rank(&self, sp: &SampledPoint, s: &EdgeSet) -> usize {
        let p = self.spec.num_params();
        let mut basis = EchelonBasis::new(sp.point.field, p);
        for idx in s.iter() {
            basis.insert(self.row(sp, idx));
            if basis.rank() == p {
                break;
            }
        }
        basis.rank()
    }

    fn check_ground(&self, s: &EdgeSet) -> Result<(), OracleError> {
        if s.ground_len() != self.ground_len() {
            return Err(OracleError::GroundMismatch {
                expected: self.ground_len(),
                got: s.ground_len(),
            });
        }
        Ok(())
    }

    pub fn try_rank(&self, s: &EdgeSet) -> Result<usize, OracleError> {
        self.check_ground(s)?;
        if s.is_empty() {
            return Ok(0);
        }
        if let Some(&r) = self.cache.read().unwrap().get(s) {
            return Ok(r);
        }
        let ceiling = s.count().min(self.spec.num_params());
        let mut per_prime = Vec::with_capacity(self.points.len());
        for pts in &self.points {
            let mut best = 0;
            for sp in pts {
                best = best.max(self.point_rank(sp, s));
                if best == ceiling {
                    break;
                }
            }
            per_prime.push((pts[0].point.field.modulus(), best));
        }
        let r = per_prime[0].1;
        if per_prime.iter().any(|&(_, x)| x != r) {
            return Err(OracleError::GenericityFailure {
                set: s.iter().collect(),
                ranks: per_prime,
            });
        }
        self.cache.write().unwrap().insert(s.clone(), r);
        Ok(r)
    }

    /// Generic rank of `s`.
    ///
    /// # Panics
    /// On a ground-set mismatch or when the primes disagree.
    pub fn rank(&self, s: &EdgeSet) -> usize {
        self.try_rank(s).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn full_rank(&self) -> usize {
        self.rank(&EdgeSet::full(self.ground_len()))
    }

    pub fn is_independent(&self, s: &EdgeSet) -> bool {
        self.rank(s) == s.count()
    }

    pub fn is_dependent(&self, s: &EdgeSet) -> bool {
        !self.is_independent(s)
    }

    pub fn is_circuit(&self, s: &EdgeSet) -> bool {
        let n = s.count();
        if n == 0 || self.rank(s) != n - 1 {
            return false;
        }
        s.iter().all(|e| self.rank(&s.without(e)) == n - 1)
    }

    /// `rank(t ∪ s) − rank(s)`.
    pub fn relative_rank(&self, t: &EdgeSet, s: &EdgeSet) -> usize {
        self.rank(&t.union(s)) - self.rank(s)
    }

    pub fn closure(&self, s: &EdgeSet) -> EdgeSet {
        let base = self.rank(s);
        let mut out = s.clone();
        for e in 0..self.ground_len() {
            if !s.contains(e) && self.rank(&s.with(e)) == base {
                out.insert(e);
            }
        }
        out
    }

    /// Greedy basis of `s`, scanning in ground order.
    pub fn basis_of(&self, s: &EdgeSet) -> EdgeSet {
        self.extend_to_basis(&EdgeSet::empty(self.ground_len()), s)
    }

    /// Extends the independent set `start` by elements of `within`.
    pub fn extend_to_basis(&self, start: &EdgeSet, within: &EdgeSet) -> EdgeSet {
        let mut b = start.clone();
        let mut rk = self.rank(&b);
        for e in within.iter() {
            if b.contains(e) {
                continue;
            }
            let cand = b.with(e);
            let r = self.rank(&cand);
            if r > rk {
                b = cand;
                rk = r;
            }
        }
        b
    }

    /// A circuit inside `s`, found by dropping elements while dependence persists.
    pub fn find_contained_circuit(&self, s: &EdgeSet) -> Option<EdgeSet> {
        if self.is_independent(s) {
            return None;
        }
        let mut c = s.clone();
        for e in s.iter() {
            let smaller = c.without(e);
            if self.is_dependent(&smaller) {
                c = smaller;
            }
        }
        Some(c)
    }

    /// The unique circuit of `basis ∪ {e}` for `e` spanned by `basis`.
    pub fn fundamental_circuit(&self, basis: &EdgeSet, e: usize) -> Option<EdgeSet> {
        if basis.contains(e) {
            return None;
        }
        self.find_contained_circuit(&basis.with(e))
    }

    /// Ranks of nested prefixes of `order`: entry `c` of the result is the
    /// rank of the first `checkpoints[c]` elements. One elimination per point.
    pub fn rank_chain(&self, order: &[usize], checkpoints: &[usize]) -> Result<Vec<usize>, OracleError> {
        let params = self.spec.num_params();
        let mut per_prime: Vec<Vec<usize>> = Vec::new();
        for pts in &self.points {
            let mut best = vec![0; checkpoints.len()];
            for sp in pts {
                let mut basis = EchelonBasis::new(sp.point.field, params);
                let mut done = 0;
                for (c, &cp) in checkpoints.iter().enumerate() {
                    while done < cp.min(order.len()) {
                        if basis.rank() < params {
                            basis.insert(self.row(sp, order[done]));
                        }
                        done += 1;
                    }
                    best[c] = best[c].max(basis.rank());
                }
            }
            per_prime.push(best);
        }
        if per_prime.iter().any(|v| *v != per_prime[0]) {
            let (k, _) = per_prime[0]
                .iter()
                .enumerate()
                .find(|&(c, x)| per_prime.iter().any(|v| v[c] != *x))
                .unwrap();
            return Err(OracleError::GenericityFailure {
                set: order[..checkpoints[k].min(order.len())].to_vec(),
                ranks: self
                    .config
                    .primes
                    .iter()
                    .zip(&per_prime)
                    .map(|(&p, v)| (p, v[k]))
                    .collect(),
            });
        }
        Ok(per_prime.swap_remove(0))
    }

    /// Cheap one-point test using the left kernel of the Jacobian rows of `s`.
    ///
    /// A set whose rows at one point have a one-dimensional left kernel
    /// spanned by a vector without zero entries is reported as a candidate.
    pub fn circuit_screen(&self, s: &EdgeSet) -> Screen {
        let sp = &self.points[0][0];
        let field = sp.point.field;
        let elems: Vec<usize> = s.iter().collect();
        let params = self.spec.num_params();
        let mut t = FieldMatrix::zeros(field, params, elems.len());
        for (c, &idx) in elems.iter().enumerate() {
            for (r, &v) in self.row(sp, idx).iter().enumerate() {
                if v != 0 {
                    t.set(r, c, v);
                }
            }
        }
        let kernel = t.nullspace();
        match kernel.len() {
            0 => Screen::Independent,
            1 if kernel[0].iter().all(|&x| x != 0) => Screen::Candidate,
            _ => Screen::NotCircuit,
        }
    }
}
