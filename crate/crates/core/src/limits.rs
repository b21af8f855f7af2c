//! Limit invariants of one- and two-sided families: growth functions,
//! average rank, realization size and rank, staircase bases, minimally
//! realizing indices and the circuits found at staircase corners.
//!
//! Everything is computed from finite truncations. A one-sided profile grows
//! the number of columns until the growth function has settled; a two-sided
//! profile grows a square grid of complete bipartite graphs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matroid::{complete_set, EdgeSet, OracleConfig, OracleError, RankOracle};
use crate::models::{Family, ModelError, ModelSpec};
use crate::symmetry::{canonical_form, Mask};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LimitError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("growth did not settle before the horizon cap {cap} (last values {tail:?})")]
    HorizonCap { cap: usize, tail: Vec<usize> },
    #[error("{0} has no bipartite grid; use the graph growth profile")]
    NeedsBipartite(Family),
    #[error("{0} is a bipartite family; use the one-sided profile")]
    NeedsGraph(Family),
    #[error("the limit is free, so there is no elementary circuit")]
    Free,
    #[error("no index of the grid is realizing")]
    NotRealizing,
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Horizon control for profile computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitOptions {
    /// First horizon tried (number of columns, vertices or grid side).
    pub horizon: usize,
    /// Hard cap on the horizon.
    pub horizon_cap: usize,
    /// How many times the final growth value must repeat.
    pub repeats: usize,
    pub oracle: OracleConfig,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            horizon: 8,
            horizon_cap: 40,
            repeats: 2,
            oracle: OracleConfig::default(),
        }
    }
}

impl LimitOptions {
    pub fn with_horizon(horizon: usize) -> Self {
        LimitOptions {
            horizon,
            ..Self::default()
        }
    }
}

/// Growth data of a one-sided family `[m]×ℕ`, or of a graph family over `K_ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthProfile {
    pub family: Family,
    pub r: usize,
    /// Fixed number of rows; `None` for graph families.
    pub rows: Option<usize>,
    /// `ranks[ν]` is the rank of `K_{m,ν}` (or `K_ν`), for `ν = 0..=horizon`.
    pub ranks: Vec<usize>,
    /// `growth[ν] = ranks[ν+1] − ranks[ν]`.
    pub growth: Vec<usize>,
    pub average_rank: usize,
    pub realization_size: usize,
    pub realization_rank: usize,
    pub free: bool,
    /// Column indices `c ≥ 1` after which the staircase height drops.
    pub jump_sequence: Vec<usize>,
    /// Known closed form `(average rank, realization size, realization rank)`.
    pub closed_form: Option<(usize, usize, usize)>,
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed forms from the dimension formulas, where they are known.
pub fn closed_form(family: Family, r: usize, rows: Option<usize>) -> Option<(usize, usize, usize)> {
    match (family, rows) {
        (Family::Det, Some(m)) if m <= r => Some((m, 0, 0)),
        (Family::Det, Some(m)) => Some((r, r, r * m)),
        (Family::BipRig, Some(m)) if m <= r => Some((m, 0, 0)),
        (Family::BipRig, Some(m)) => {
            let size = if r == 1 { 1 } else { (r + 1).max(binom(r + 2, 2).saturating_sub(m)) };
            Some((r, size, r * (m + size) - binom(r + 1, 2)))
        }
        (Family::Rig, None) => Some((r, r, binom(r, 2))),
        (Family::SymDet, None) => Some((r, r - 1, binom(r, 2))),
        _ => None,
    }
}

impl GrowthProfile {
    pub fn horizon(&self) -> usize {
        self.growth.len()
    }

    /// Height of column `c ≥ 1` of the staircase basis.
    pub fn column_height(&self, c: usize) -> usize {
        self.growth[c - 1]
    }

    /// `(ν − κ)·ρ + α`, the rank predicted for `ν ≥ κ`.
    pub fn predicted_rank(&self, nu: usize) -> Option<usize> {
        (nu >= self.realization_size)
            .then(|| (nu - self.realization_size) * self.average_rank + self.realization_rank)
    }

    /// Whether `ranks[ν] = (ν−κ)ρ + α` for every computed `ν ≥ κ`.
    pub fn rank_identity_holds(&self) -> bool {
        (self.realization_size..self.ranks.len()).all(|nu| self.predicted_rank(nu) == Some(self.ranks[nu]))
    }

    pub fn closed_form_agrees(&self) -> Option<bool> {
        self.closed_form
            .map(|cf| cf == (self.average_rank, self.realization_size, self.realization_rank))
    }

    /// Staircase basis over the first `cols` columns: column `c` holds the
    /// first `column_height(c)` rows.
    pub fn staircase(&self, cols: usize) -> Result<Mask, LimitError> {
        let m = self.rows.ok_or(LimitError::NeedsBipartite(self.family))?;
        let cols = cols.min(self.horizon());
        let mut mask = Mask::bipartite(m, cols);
        for c in 1..=cols {
            for i in 0..self.column_height(c) {
                mask.set(i, c - 1, true);
            }
        }
        Ok(mask)
    }

    /// Staircase rendered with `#` for basis cells.
    pub fn staircase_diagram(&self, cols: usize) -> Result<String, LimitError> {
        Ok(self.staircase(cols)?.to_string())
    }
}

fn settled_value(growth: &[usize], repeats: usize, per_vertex: usize) -> Option<usize> {
    let last = *growth.last()?;
    let run = growth.iter().rev().take_while(|&&g| g == last).count();
    (run > repeats && last <= per_vertex).then_some(last)
}

fn assemble(
    family: Family,
    r: usize,
    rows: Option<usize>,
    ranks: Vec<usize>,
    average_rank: usize,
) -> GrowthProfile {
    let growth: Vec<usize> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
    let realization_size = growth
        .iter()
        .rposition(|&g| g != average_rank)
        .map_or(0, |p| p + 1);
    let realization_rank = ranks[realization_size];
    let jump_sequence = (1..growth.len())
        .filter(|&c| growth[c - 1] > growth[c])
        .collect();
    GrowthProfile {
        family,
        r,
        rows,
        free: rows == Some(average_rank),
        ranks,
        growth,
        average_rank,
        realization_size,
        realization_rank,
        jump_sequence,
        closed_form: closed_form(family, r, rows),
    }
}

fn grow<F>(family: Family, r: usize, rows: Option<usize>, opts: &LimitOptions, ranks_at: F) -> Result<GrowthProfile, LimitError>
where
    F: Fn(usize) -> Result<Vec<usize>, LimitError>,
{
    let mut horizon = opts.horizon.max(opts.repeats + 2).min(opts.horizon_cap.max(2));
    loop {
        let ranks = ranks_at(horizon)?;
        let growth: Vec<usize> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        if let Some(avg) = settled_value(&growth, opts.repeats, r) {
            let profile = assemble(family, r, rows, ranks, avg);
            if profile.closed_form_agrees() != Some(false) || horizon >= opts.horizon_cap {
                if profile.closed_form_agrees() == Some(false) {
                    return Err(LimitError::Verification(format!(
                        "settled profile {:?} disagrees with the closed form {:?}",
                        (profile.average_rank, profile.realization_size, profile.realization_rank),
                        profile.closed_form.unwrap()
                    )));
                }
                return Ok(profile);
            }
        }
        if horizon >= opts.horizon_cap {
            let tail = growth.iter().rev().take(4).rev().copied().collect();
            return Err(LimitError::HorizonCap {
                cap: opts.horizon_cap,
                tail,
            });
        }
        horizon = (horizon * 2).min(opts.horizon_cap);
    }
}

/// Growth profile of the one-sided limit with `rows` fixed rows.
pub fn growth_profile_one_sided(
    family: Family,
    r: usize,
    rows: usize,
    opts: &LimitOptions,
) -> Result<GrowthProfile, LimitError> {
    if !family.is_bipartite() {
        return Err(LimitError::NeedsBipartite(family));
    }
    ModelSpec::new(family, rows, 1, r)?;
    grow(family, r, Some(rows), opts, |h| {
        let spec = ModelSpec::new(family, rows, h, r)?;
        let oracle = RankOracle::new(spec, opts.oracle.clone())?;
        let order: Vec<usize> = (0..h)
            .flat_map(|c| (0..rows).map(move |i| (i, c)))
            .map(|(i, c)| spec.index_of(i, c).unwrap())
            .collect();
        let checkpoints: Vec<usize> = (0..=h).map(|c| c * rows).collect();
        Ok(oracle.rank_chain(&order, &checkpoints)?)
    })
}

/// Growth profile of a graph family over the complete graphs `K_ν`.
pub fn growth_profile_graph(family: Family, r: usize, opts: &LimitOptions) -> Result<GrowthProfile, LimitError> {
    if family.is_bipartite() {
        return Err(LimitError::NeedsGraph(family));
    }
    ModelSpec::new(family, 2, 2, r)?;
    let loops = family == Family::SymDet;
    grow(family, r, None, opts, |h| {
        let spec = ModelSpec::new(family, h, h, r)?;
        let oracle = RankOracle::new(spec, opts.oracle.clone())?;
        let mut order = Vec::new();
        let mut checkpoints = vec![0];
        for v in 0..h {
            let upto = if loops { v + 1 } else { v };
            order.extend((0..upto).map(|u| spec.index_of(u, v).unwrap()));
            checkpoints.push(order.len());
        }
        Ok(oracle.rank_chain(&order, &checkpoints)?)
    })
}

/// Whether the staircase basis is independent with the rank of `K_{m,ν}` at
/// every horizon `ν`.
pub fn verify_staircase(profile: &GrowthProfile, oracle: &OracleConfig) -> Result<bool, LimitError> {
    let m = profile.rows.ok_or(LimitError::NeedsBipartite(profile.family))?;
    let h = profile.horizon();
    let spec = ModelSpec::new(profile.family, m, h, profile.r)?;
    let o = RankOracle::new(spec, oracle.clone())?;
    let mut order = Vec::new();
    let mut checkpoints = vec![0];
    for c in 1..=h {
        order.extend((0..profile.column_height(c)).map(|i| spec.index_of(i, c - 1).unwrap()));
        checkpoints.push(order.len());
    }
    let ranks = o.rank_chain(&order, &checkpoints)?;
    Ok(ranks == profile.ranks && checkpoints.iter().zip(&ranks).all(|(a, b)| a == b))
}

/// A verified elementary circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryCircuit {
    pub signature: (usize, usize),
    #[serde(serialize_with = "crate::limits::ser_mask")]
    pub mask: Mask,
    pub verified: bool,
}

pub(crate) fn ser_mask<S: serde::Serializer>(m: &Mask, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let rows = m.ascii_rows();
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in &rows {
        seq.serialize_element(r)?;
    }
    seq.end()
}

fn circuit_check(family: Family, r: usize, mask: &Mask, oracle: &OracleConfig) -> Result<bool, LimitError> {
    let spec = ModelSpec::new(family, mask.rows(), mask.cols(), r)?;
    let o = RankOracle::new(spec, oracle.clone())?;
    let s = mask
        .to_edge_set(&spec)
        .map_err(|e| LimitError::Verification(e.to_string()))?;
    Ok(o.is_circuit(&s))
}

/// `K_{ρ+1,κ+1}` of a one-sided profile, checked to be a circuit.
pub fn elementary_circuit(profile: &GrowthProfile, oracle: &OracleConfig) -> Result<ElementaryCircuit, LimitError> {
    if profile.rows.is_none() {
        return Err(LimitError::NeedsBipartite(profile.family));
    }
    if profile.free {
        return Err(LimitError::Free);
    }
    let signature = (profile.average_rank + 1, profile.realization_size + 1);
    let mask = Mask::complete_bipartite(signature.0, signature.1);
    let verified = circuit_check(profile.family, profile.r, &mask, oracle)?;
    if !verified {
        return Err(LimitError::Verification(format!(
            "K_{{{},{}}} is not a circuit of {}",
            signature.0, signature.1, profile.family
        )));
    }
    Ok(ElementaryCircuit {
        signature,
        mask,
        verified,
    })
}

/// Rank grid of `K_{μ,ν}` and the invariants read off from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoSidedProfile {
    pub family: Family,
    pub r: usize,
    pub grid: usize,
    /// `ranks[μ][ν]` for `0 ≤ μ, ν ≤ grid`.
    pub ranks: Vec<Vec<usize>>,
    pub average_rank: (usize, usize),
    pub realization_size: (usize, usize),
    pub realization_rank: usize,
    /// Pareto-minimal indices `(μ, ν)` with `K_{μ,ν}` dependent.
    pub minimal_realizing: Vec<(usize, usize)>,
    /// Limit of the diagonal growth `δrk(ν,ν)` read at the grid edge.
    pub diagonal_growth: (usize, usize),
    /// Every `m`-row slice with `m ≥ ρ2` has average rank `ρ2`, and every
    /// `n`-column slice with `n ≥ ρ1` has average rank `ρ1`.
    pub slice_averages_agree: bool,
    /// Every slice beyond the average rank has realization size `κ2` (rows)
    /// or `κ1` (columns).
    pub slice_realizations_agree: bool,
}

impl TwoSidedProfile {
    pub fn is_realizing(&self, mu: usize, nu: usize) -> bool {
        self.ranks[mu][nu] < mu * nu
    }

    /// `(rk(K_{μ+1,ν} | K_{μ,ν}), rk(K_{μ,ν+1} | K_{μ,ν}))`.
    pub fn growth(&self, mu: usize, nu: usize) -> (usize, usize) {
        (
            self.ranks[mu + 1][nu] - self.ranks[mu][nu],
            self.ranks[mu][nu + 1] - self.ranks[mu][nu],
        )
    }

    /// Column heights of the staircase basis of the `m`-row slice.
    pub fn row_slice_heights(&self, m: usize) -> Vec<usize> {
        (1..=self.grid).map(|c| self.ranks[m][c] - self.ranks[m][c - 1]).collect()
    }

    /// Row lengths of the staircase basis of the `n`-column slice.
    pub fn column_slice_heights(&self, n: usize) -> Vec<usize> {
        (1..=self.grid).map(|a| self.ranks[a][n] - self.ranks[a - 1][n]).collect()
    }

    /// Average rank of the `m`-row slice as seen at the grid edge.
    pub fn row_slice_average(&self, m: usize) -> usize {
        self.ranks[m][self.grid] - self.ranks[m][self.grid - 1]
    }

    /// Realization size of the `m`-row slice within the grid.
    pub fn row_slice_realization(&self, m: usize) -> usize {
        let h = self.row_slice_heights(m);
        let avg = *h.last().unwrap();
        h.iter().rposition(|&x| x != avg).map_or(0, |p| p + 1)
    }

    fn slice_check(&self, realization: bool) -> bool {
        let (r1, r2) = self.average_rank;
        let (k1, k2) = self.realization_size;
        let usable = self.grid.saturating_sub(2);
        let t = self.transposed();
        let side = |p: &TwoSidedProfile, avg: usize, size: usize| {
            (avg.max(1)..=usable).all(|m| {
                if realization {
                    m <= avg || p.row_slice_realization(m) == size
                } else {
                    p.row_slice_average(m) == avg
                }
            })
        };
        side(self, r2, k2) && side(&t, r1, k1)
    }

    fn transposed(&self) -> TwoSidedProfile {
        let g = self.grid;
        let ranks = (0..=g).map(|a| (0..=g).map(|b| self.ranks[b][a]).collect()).collect();
        TwoSidedProfile {
            family: self.family,
            r: self.r,
            grid: g,
            ranks,
            average_rank: (self.average_rank.1, self.average_rank.0),
            realization_size: (self.realization_size.1, self.realization_size.0),
            realization_rank: self.realization_rank,
            minimal_realizing: self.minimal_realizing.iter().map(|&(a, b)| (b, a)).collect(),
            diagonal_growth: (self.diagonal_growth.1, self.diagonal_growth.0),
            slice_averages_agree: self.slice_averages_agree,
            slice_realizations_agree: self.slice_realizations_agree,
        }
    }

    /// ASCII grid of realizing (`#`) and non-realizing (`.`) indices.
    pub fn realizing_diagram(&self) -> String {
        let mut out = String::new();
        for mu in 1..=self.grid {
            for nu in 1..=self.grid {
                out.push(if self.is_realizing(mu, nu) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

fn rank_grid(family: Family, r: usize, g: usize, oracle: &OracleConfig) -> Result<Vec<Vec<usize>>, LimitError> {
    let spec = ModelSpec::new(family, g, g, r)?;
    let o = RankOracle::new(spec, oracle.clone())?;
    let mut rows: Vec<Vec<usize>> = (1..=g)
        .into_par_iter()
        .map(|mu| {
            let order: Vec<usize> = (0..g)
                .flat_map(|c| (0..mu).map(move |i| (i, c)))
                .map(|(i, c)| spec.index_of(i, c).unwrap())
                .collect();
            let checkpoints: Vec<usize> = (0..=g).map(|c| c * mu).collect();
            o.rank_chain(&order, &checkpoints)
        })
        .collect::<Result<_, _>>()?;
    rows.insert(0, vec![0; g + 1]);
    Ok(rows)
}

fn first_realizing(ranks: &[Vec<usize>], mu: usize) -> Option<usize> {
    (1..ranks.len()).find(|&nu| ranks[mu][nu] < mu * nu)
}

fn pareto_minimal(ranks: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut best: Option<usize> = None;
    for mu in 1..ranks.len() {
        if let Some(nu) = first_realizing(ranks, mu) {
            if best.is_none_or(|b| nu < b) {
                out.push((mu, nu));
                best = Some(nu);
            }
        }
    }
    out
}

fn grid_settled(ranks: &[Vec<usize>]) -> bool {
    let g = ranks.len() - 1;
    if g < 4 {
        return false;
    }
    let col = |n: usize| (1..=g).find(|&mu| ranks[mu][n] < mu * n);
    let row_edge = first_realizing(ranks, g).is_some() && first_realizing(ranks, g) == first_realizing(ranks, g - 1);
    let col_edge = col(g).is_some() && col(g) == col(g - 1);
    let diag = |v: usize| (ranks[v + 1][v] - ranks[v][v], ranks[v][v + 1] - ranks[v][v]);
    row_edge && col_edge && diag(g - 1) == diag(g - 2)
}

/// Two-sided profile from a growing `grid × grid` window.
pub fn two_sided_profile(family: Family, r: usize, opts: &LimitOptions) -> Result<TwoSidedProfile, LimitError> {
    if !family.is_bipartite() {
        return Err(LimitError::NeedsBipartite(family));
    }
    let mut g = opts.horizon.max(4).min(opts.horizon_cap.max(4));
    let ranks = loop {
        let ranks = rank_grid(family, r, g, &opts.oracle)?;
        if grid_settled(&ranks) {
            break ranks;
        }
        if g >= opts.horizon_cap {
            if pareto_minimal(&ranks).is_empty() {
                return Err(LimitError::NotRealizing);
            }
            let tail = (1..=g).map(|mu| ranks[mu][g] - ranks[mu][g - 1]).collect();
            return Err(LimitError::HorizonCap {
                cap: opts.horizon_cap,
                tail,
            });
        }
        g = (g + 4).min(opts.horizon_cap);
    };
    let minimal_realizing = pareto_minimal(&ranks);
    let min1 = minimal_realizing.iter().map(|p| p.0).min().unwrap();
    let min2 = minimal_realizing.iter().map(|p| p.1).min().unwrap();
    let max1 = minimal_realizing.iter().map(|p| p.0).max().unwrap();
    let max2 = minimal_realizing.iter().map(|p| p.1).max().unwrap();
    let average_rank = (min2 - 1, min1 - 1);
    let realization_size = (max1 - 1, max2 - 1);
    let d = g - 1;
    let diagonal_growth = (ranks[d + 1][d] - ranks[d][d], ranks[d][d + 1] - ranks[d][d]);
    let mut profile = TwoSidedProfile {
        family,
        r,
        grid: g,
        realization_rank: ranks[realization_size.0][realization_size.1],
        ranks,
        average_rank,
        realization_size,
        minimal_realizing,
        diagonal_growth,
        slice_averages_agree: false,
        slice_realizations_agree: false,
    };
    profile.slice_averages_agree = profile.slice_check(false);
    profile.slice_realizations_agree = profile.slice_check(true);
    if profile.diagonal_growth != profile.average_rank {
        return Err(LimitError::Verification(format!(
            "average rank {:?} from the realizing boundary, {:?} from diagonal growth",
            profile.average_rank, profile.diagonal_growth
        )));
    }
    if !profile.slice_averages_agree {
        return Err(LimitError::Verification("slice average ranks disagree with the two-sided profile".into()));
    }
    Ok(profile)
}

/// Which staircase sequence a corner came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Slicing {
    Rows,
    Columns,
}

/// A staircase corner, the set `X` built at its first appearance and the
/// circuit found inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizingCircuit {
    pub slicing: Slicing,
    pub corner: (usize, usize),
    pub first_slice: usize,
    #[serde(serialize_with = "crate::limits::ser_mask")]
    pub set: Mask,
    #[serde(serialize_with = "crate::limits::ser_mask")]
    pub circuit: Mask,
    /// `X` is a rectangle, or a rectangle plus a partial extra row.
    pub simple_shape: bool,
    pub set_is_circuit: bool,
    pub same_signature: bool,
    pub aut_order: u64,
}

/// Heights `(a+1)^τ a^{n−τ}` with `τ < n`, or all equal.
fn simple_heights(h: &[usize]) -> bool {
    let Some(&last) = h.last() else { return false };
    h.iter().all(|&x| x == last || x == last + 1) && h.windows(2).all(|w| w[0] >= w[1])
}

fn corner_set(heights: &[usize], mu: usize, nu: usize) -> (Mask, Vec<usize>) {
    let mut cols: Vec<usize> = heights[..nu - 1].to_vec();
    cols.push(mu);
    let rows = *cols.iter().max().unwrap();
    let mut mask = Mask::bipartite(rows, nu);
    for (c, &h) in cols.iter().enumerate() {
        for i in 0..h {
            mask.set(i, c, true);
        }
    }
    (mask, cols)
}

type FirstAppearances = BTreeMap<(Slicing, (usize, usize)), (usize, Vec<usize>)>;

/// Realizing circuits at the first appearance of every staircase corner, from
/// the row slices and (transposed) the column slices.
pub fn realizing_circuits(profile: &TwoSidedProfile, oracle: &OracleConfig) -> Result<Vec<RealizingCircuit>, LimitError> {
    let mut corners: FirstAppearances = BTreeMap::new();
    let transposed = profile.transposed();
    for (slicing, p) in [(Slicing::Rows, profile), (Slicing::Columns, &transposed)] {
        for m in 1..=p.grid {
            let h = p.row_slice_heights(m);
            for c in 1..h.len() {
                if h[c - 1] > h[c] && h[c] < m {
                    let key = (slicing, (h[c] + 1, c + 1));
                    corners.entry(key).or_insert_with(|| (m, h.clone()));
                }
            }
        }
    }
    let mut out = Vec::new();
    for ((slicing, corner), (first_slice, heights)) in corners {
        let (set, cols) = corner_set(&heights, corner.0, corner.1);
        let simple_shape = simple_heights(&cols);
        let spec = ModelSpec::new(profile.family, set.rows(), set.cols(), profile.r)?;
        let o = RankOracle::new(spec, oracle.clone())?;
        let s = set
            .to_edge_set(&spec)
            .map_err(|e| LimitError::Verification(e.to_string()))?;
        let set_is_circuit = o.is_circuit(&s);
        let c: EdgeSet = if set_is_circuit {
            s.clone()
        } else {
            o.find_contained_circuit(&s)
                .ok_or_else(|| LimitError::Verification(format!("corner set at {corner:?} is independent")))?
        };
        let cmask = Mask::from_edge_set(&spec, &c);
        let same_signature = cmask.signature() == set.signature();
        if simple_shape && !set_is_circuit {
            return Err(LimitError::Verification(format!(
                "corner set at {corner:?} has a rectangle shape but is not a circuit"
            )));
        }
        let canon = canonical_form(&cmask.compact()).map_err(|e| LimitError::Verification(e.to_string()))?;
        let (set, circuit, corner) = match slicing {
            Slicing::Rows => (set, cmask, corner),
            Slicing::Columns => (set.transpose(), cmask.transpose(), (corner.1, corner.0)),
        };
        out.push(RealizingCircuit {
            slicing,
            corner,
            first_slice,
            set,
            circuit,
            simple_shape,
            set_is_circuit,
            same_signature,
            aut_order: canon.aut_order,
        });
    }
    Ok(out)
}

/// `K_{κ1+1,ρ1+1}` and `K_{ρ2+1,κ2+1}`, both verified.
pub fn two_sided_elementary_circuits(
    profile: &TwoSidedProfile,
    oracle: &OracleConfig,
) -> Result<[ElementaryCircuit; 2], LimitError> {
    let (r1, r2) = profile.average_rank;
    let (k1, k2) = profile.realization_size;
    let mk = |sig: (usize, usize)| -> Result<ElementaryCircuit, LimitError> {
        let mask = Mask::complete_bipartite(sig.0, sig.1);
        let verified = circuit_check(profile.family, profile.r, &mask, oracle)?;
        if !verified {
            return Err(LimitError::Verification(format!("K_{{{},{}}} is not a circuit", sig.0, sig.1)));
        }
        Ok(ElementaryCircuit {
            signature: sig,
            mask,
            verified,
        })
    };
    Ok([mk((k1 + 1, r1 + 1))?, mk((r2 + 1, k2 + 1))?])
}

/// Upper bound on the column count of a circuit with any number of rows in
/// the one-sided limit: `α − ρκ + 1`.
pub fn column_bound(profile: &GrowthProfile) -> Option<usize> {
    (!profile.free).then(|| profile.realization_rank + 1 - profile.average_rank * profile.realization_size)
}

/// Rank of `K_{μ,ν}` in a bipartite family, computed directly.
pub fn complete_rank(family: Family, r: usize, mu: usize, nu: usize, oracle: &OracleConfig) -> Result<usize, LimitError> {
    if mu == 0 || nu == 0 {
        return Ok(0);
    }
    let spec = ModelSpec::new(family, mu, nu, r)?;
    let o = RankOracle::new(spec, oracle.clone())?;
    Ok(o.try_rank(&complete_set(&spec, mu, nu))?)
}
