//! The four matroid families, their ground sets and parametrizations.
//!
//! Every family is realized as the linear matroid of a Jacobian: a ground
//! element is a coordinate function of the parameters and its row is the
//! gradient of that function at a sampled point.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primefield::PrimeField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidSpec(String),
    #[error("cannot parse model string `{0}` (expected det:MxNxR, symdet:NxR, rig:NxR or biprig:MxNxR)")]
    BadModelString(String),
    #[error("ground position {0} is out of range for {1}")]
    IndexOutOfRange(usize, ModelSpec),
    #[error("bipartition {m}+{n} does not match a symmetric model on {total} vertices")]
    BipartitionMismatch { m: usize, n: usize, total: usize },
    #[error("bipartition needs a symmetric family, got {0}")]
    NotSymmetric(Family),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Det,
    SymDet,
    Rig,
    BipRig,
}

impl Family {
    /// Families whose ground set is a grid `[m]×[n]`.
    pub fn is_bipartite(self) -> bool {
        matches!(self, Family::Det | Family::BipRig)
    }

    pub fn ground_kind(self) -> GroundKind {
        match self {
            Family::Det | Family::BipRig => GroundKind::Bipartite,
            Family::SymDet => GroundKind::Symmetric,
            Family::Rig => GroundKind::Strict,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Det => "det",
            Family::SymDet => "symdet",
            Family::Rig => "rig",
            Family::BipRig => "biprig",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "det" => Ok(Family::Det),
            "symdet" => Ok(Family::SymDet),
            "rig" => Ok(Family::Rig),
            "biprig" => Ok(Family::BipRig),
            _ => Err(ModelError::BadModelString(s.to_string())),
        }
    }
}

/// Shape of the index pairs in a ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroundKind {
    /// `(i, j) ∈ [m]×[n]`
    Bipartite,
    /// `i ≤ j`, diagonal included
    Symmetric,
    /// `i < j`
    Strict,
}

/// A ground-set element; indices are zero-based internally and printed one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundElem {
    pub i: usize,
    pub j: usize,
    pub kind: GroundKind,
}

impl fmt::Display for GroundElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

/// Family plus size parameters. Symmetric families store `m == n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModelSpec {
    family: Family,
    m: usize,
    n: usize,
    r: usize,
}

impl ModelSpec {
    pub fn new(family: Family, m: usize, n: usize, r: usize) -> Result<Self, ModelError> {
        if r == 0 {
            return Err(ModelError::InvalidSpec("r must be at least 1".into()));
        }
        if family.is_bipartite() {
            if m == 0 || n == 0 {
                return Err(ModelError::InvalidSpec("m and n must be at least 1".into()));
            }
        } else {
            if m != n {
                return Err(ModelError::InvalidSpec(format!(
                    "{family} has a single vertex count, got {m} and {n}"
                )));
            }
            if n < 2 {
                return Err(ModelError::InvalidSpec("n must be at least 2".into()));
            }
        }
        Ok(ModelSpec { family, m, n, r })
    }

    pub fn det(m: usize, n: usize, r: usize) -> Result<Self, ModelError> {
        Self::new(Family::Det, m, n, r)
    }

    pub fn biprig(m: usize, n: usize, r: usize) -> Result<Self, ModelError> {
        Self::new(Family::BipRig, m, n, r)
    }

    pub fn symdet(n: usize, r: usize) -> Result<Self, ModelError> {
        Self::new(Family::SymDet, n, n, r)
    }

    pub fn rig(n: usize, r: usize) -> Result<Self, ModelError> {
        Self::new(Family::Rig, n, n, r)
    }

    /// Same family and `r`, different sizes.
    pub fn resized(&self, m: usize, n: usize) -> Result<Self, ModelError> {
        if self.family.is_bipartite() {
            Self::new(self.family, m, n, self.r)
        } else {
            Self::new(self.family, n, n, self.r)
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Row count (vertex count for symmetric families).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Column count (vertex count for symmetric families).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn kind(&self) -> GroundKind {
        self.family.ground_kind()
    }

    pub fn ground_len(&self) -> usize {
        match self.kind() {
            GroundKind::Bipartite => self.m * self.n,
            GroundKind::Symmetric => self.n * (self.n + 1) / 2,
            GroundKind::Strict => self.n * (self.n - 1) / 2,
        }
    }

    pub fn num_params(&self) -> usize {
        if self.family.is_bipartite() {
            (self.m + self.n) * self.r
        } else {
            self.n * self.r
        }
    }

    /// Position of `(i, j)` in the ground order. Symmetric families accept
    /// either orientation of the pair.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        match self.kind() {
            GroundKind::Bipartite => (i < self.m && j < self.n).then(|| i * self.n + j),
            GroundKind::Symmetric => {
                let (a, b) = (i.min(j), i.max(j));
                (b < self.n).then(|| sym_index(self.n, a, b))
            }
            GroundKind::Strict => {
                let (a, b) = (i.min(j), i.max(j));
                (b < self.n && a != b).then(|| strict_index(self.n, a, b))
            }
        }
    }

    /// The element at ground position `idx`.
    pub fn elem(&self, idx: usize) -> Option<GroundElem> {
        if idx >= self.ground_len() {
            return None;
        }
        let kind = self.kind();
        let (i, j) = match kind {
            GroundKind::Bipartite => (idx / self.n, idx % self.n),
            GroundKind::Symmetric | GroundKind::Strict => {
                let off = usize::from(kind == GroundKind::Strict);
                let mut rest = idx;
                let mut i = 0;
                loop {
                    let len = self.n - i - off;
                    if rest < len {
                        break (i, i + off + rest);
                    }
                    rest -= len;
                    i += 1;
                }
            }
        };
        Some(GroundElem { i, j, kind })
    }

    pub fn ground_set(&self) -> Vec<GroundElem> {
        (0..self.ground_len()).map(|k| self.elem(k).unwrap()).collect()
    }

    /// Index of parameter `k` of the row-side vertex `i`.
    fn row_param(&self, i: usize, k: usize) -> usize {
        i * self.r + k
    }

    /// Index of parameter `k` of the column-side vertex `j`.
    fn col_param(&self, j: usize, k: usize) -> usize {
        if self.family.is_bipartite() {
            self.m * self.r + j * self.r + k
        } else {
            j * self.r + k
        }
    }

    fn checked_elem(&self, idx: usize) -> Result<GroundElem, ModelError> {
        self.elem(idx)
            .ok_or(ModelError::IndexOutOfRange(idx, *self))
    }
}

/// Rows `0..a` of the upper triangle (diagonal included) hold `a*n - a(a-1)/2` entries.
fn sym_index(n: usize, a: usize, b: usize) -> usize {
    a * n - a * a.saturating_sub(1) / 2 + (b - a)
}

fn strict_index(n: usize, a: usize, b: usize) -> usize {
    a * (n - 1) - a * a.saturating_sub(1) / 2 + (b - a - 1)
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_bipartite() {
            write!(f, "{}:{}x{}x{}", self.family, self.m, self.n, self.r)
        } else {
            write!(f, "{}:{}x{}", self.family, self.n, self.r)
        }
    }
}

impl FromStr for ModelSpec {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::BadModelString(s.to_string());
        let (fam, dims) = s.trim().split_once(':').ok_or_else(bad)?;
        let family: Family = fam.parse().map_err(|_| bad())?;
        let nums: Vec<usize> = dims
            .split(['x', 'X'])
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (family.is_bipartite(), nums.as_slice()) {
            (true, &[m, n, r]) => ModelSpec::new(family, m, n, r),
            (false, &[n, r]) => ModelSpec::new(family, n, n, r),
            _ => Err(bad()),
        }
    }
}

/// A sampled parameter point over one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPoint {
    pub field: PrimeField,
    pub values: Vec<u64>,
    pub seed: u64,
}

/// Uniformly random parameters, reproducible from `seed`.
pub fn sample_point(spec: &ModelSpec, field: PrimeField, seed: u64) -> GenericPoint {
    let p = field.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(29));
    let values = (0..spec.num_params()).map(|_| rng.gen_range(0..p)).collect();
    GenericPoint { field, values, seed }
}

/// Value of the coordinate function of ground element `idx` at `pt`.
pub fn coordinate(spec: &ModelSpec, idx: usize, pt: &GenericPoint) -> Result<u64, ModelError> {
    let e = spec.checked_elem(idx)?;
    let f = pt.field;
    let v = &pt.values;
    let mut acc = 0;
    for k in 0..spec.r {
        let a = v[spec.row_param(e.i, k)];
        let b = v[spec.col_param(e.j, k)];
        let term = match spec.family {
            Family::Det | Family::SymDet => f.mul(a, b),
            Family::Rig | Family::BipRig => {
                let d = f.sub(a, b);
                f.mul(d, d)
            }
        };
        acc = f.add(acc, term);
    }
    Ok(acc)
}

/// Gradient of the coordinate function of ground element `idx` at `pt`.
pub fn jacobian_row(spec: &ModelSpec, idx: usize, pt: &GenericPoint) -> Result<Vec<u64>, ModelError> {
    let mut row = vec![0; spec.num_params()];
    jacobian_row_into(spec, idx, pt, &mut row)?;
    Ok(row)
}

pub(crate) fn jacobian_row_into(
    spec: &ModelSpec,
    idx: usize,
    pt: &GenericPoint,
    row: &mut [u64],
) -> Result<(), ModelError> {
    let e = spec.checked_elem(idx)?;
    let f = pt.field;
    let v = &pt.values;
    row.iter_mut().for_each(|x| *x = 0);
    for k in 0..spec.r {
        let a_slot = spec.row_param(e.i, k);
        let b_slot = spec.col_param(e.j, k);
        let (a, b) = (v[a_slot], v[b_slot]);
        match spec.family {
            Family::Det => {
                row[a_slot] = b;
                row[b_slot] = a;
            }
            Family::SymDet => {
                if e.i == e.j {
                    row[a_slot] = f.add(a, a);
                } else {
                    row[a_slot] = b;
                    row[b_slot] = a;
                }
            }
            Family::Rig | Family::BipRig => {
                let d = f.sub(a, b);
                let g = f.add(d, d);
                row[a_slot] = g;
                row[b_slot] = f.neg(g);
            }
        }
    }
    Ok(())
}

/// Splits a symmetric model on `m + n` vertices into its `(m, n)`-bipartition.
///
/// Returns the bipartite model (BipRig for Rig, Det for SymDet) and, for each
/// bipartite ground position, the position of `(i, j + m)` in the symmetric
/// ground set.
pub fn bipartition_spec(
    sym: &ModelSpec,
    m: usize,
    n: usize,
) -> Result<(ModelSpec, Vec<usize>), ModelError> {
    let family = match sym.family() {
        Family::Rig => Family::BipRig,
        Family::SymDet => Family::Det,
        other => return Err(ModelError::NotSymmetric(other)),
    };
    if m + n != sym.n() || m == 0 || n == 0 {
        return Err(ModelError::BipartitionMismatch { m, n, total: sym.n() });
    }
    let bip = ModelSpec::new(family, m, n, sym.r())?;
    let map = (0..bip.ground_len())
        .map(|k| {
            let e = bip.elem(k).unwrap();
            sym.index_of(e.i, e.j + m).expect("bipartite pair lies off the diagonal")
        })
        .collect();
    Ok((bip, map))
}
