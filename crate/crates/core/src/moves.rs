//! The (t,1)-move and its partial variant on bipartite circuit graphs of the
//! determinantal family, plus the (2,2) construction where the move idea
//! breaks down.
//!
//! A move removes an edge `ij`, adds one new row vertex joined to `t` new
//! column vertices, and attaches every new vertex to old vertices so that it
//! ends with degree `r+1`. Validation is purely combinatorial; whether the
//! result is a circuit is always decided by the rank oracle.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{classify, Classification};
use crate::matroid::{complete_set, OracleConfig, OracleError, RankOracle};
use crate::models::{ModelError, ModelSpec};
use crate::symmetry::{Mask, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("moves act on bipartite masks")]
    NotBipartite,
    #[error("({0},{1}) is not an edge of the base graph")]
    MissingEdge(usize, usize),
    #[error("t must satisfy 1 ≤ t ≤ r, got t = {t} with r = {r}")]
    BadT { t: usize, r: usize },
    #[error("expected {expected} column attachment lists, got {got}")]
    WrongColumnCount { expected: usize, got: usize },
    #[error("attachment refers to old vertex {0}, which does not exist")]
    UnknownVertex(usize),
    #[error("attachment list {0:?} repeats a vertex")]
    Repeated(Vec<usize>),
    #[error("new vertex would have degree {got}, expected {expected}")]
    Degree { expected: usize, got: usize },
    #[error("the new row must be adjacent to column {0}")]
    RowMissesColumn(usize),
    #[error("the designated new column must be adjacent to row {0}")]
    ColumnMissesRow(usize),
    #[error("old neighbours of the new row are not a proper subset of those of row {0}")]
    RowNotContained(usize),
    #[error("old neighbours of the designated new column are not a proper subset of those of column {0}")]
    ColumnNotContained(usize),
    #[error("designated column index {0} is out of range")]
    BadDesignated(usize),
    #[error("no attachment satisfies the containment condition")]
    NoAttachment,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Everything needed to perform a (t,1)-move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSpec {
    pub base: Mask,
    /// The edge `(i, j)` removed by a full move.
    pub edge: (usize, usize),
    pub t: usize,
    /// Old columns joined to the new row.
    pub row_attachment: Vec<usize>,
    /// For each new column, the old rows joined to it.
    pub column_attachments: Vec<Vec<usize>>,
    /// Which new column plays the role of the partner of row `i`.
    pub designated: usize,
}

fn old_row_neighbours(base: &Mask, i: usize) -> Vec<usize> {
    (0..base.cols()).filter(|&j| base.get(i, j)).collect()
}

fn old_col_neighbours(base: &Mask, j: usize) -> Vec<usize> {
    (0..base.rows()).filter(|&i| base.get(i, j)).collect()
}

fn proper_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.contains(x))
}

fn distinct(list: &[usize]) -> bool {
    list.iter().all_unique()
}

impl MoveSpec {
    /// Checks the three move conditions for rank `r`.
    pub fn validate(&self, r: usize) -> Result<(), MoveError> {
        let b = &self.base;
        if b.is_symmetric_kind() {
            return Err(MoveError::NotBipartite);
        }
        let (i, j) = self.edge;
        if i >= b.rows() || j >= b.cols() || !b.get(i, j) {
            return Err(MoveError::MissingEdge(i, j));
        }
        if self.t == 0 || self.t > r {
            return Err(MoveError::BadT { t: self.t, r });
        }
        if self.column_attachments.len() != self.t {
            return Err(MoveError::WrongColumnCount {
                expected: self.t,
                got: self.column_attachments.len(),
            });
        }
        if self.designated >= self.t {
            return Err(MoveError::BadDesignated(self.designated));
        }
        if let Some(&c) = self.row_attachment.iter().find(|&&c| c >= b.cols()) {
            return Err(MoveError::UnknownVertex(c));
        }
        if !distinct(&self.row_attachment) {
            return Err(MoveError::Repeated(self.row_attachment.clone()));
        }
        for list in &self.column_attachments {
            if let Some(&x) = list.iter().find(|&&x| x >= b.rows()) {
                return Err(MoveError::UnknownVertex(x));
            }
            if !distinct(list) {
                return Err(MoveError::Repeated(list.clone()));
            }
            if list.len() + 1 != r + 1 {
                return Err(MoveError::Degree {
                    expected: r + 1,
                    got: list.len() + 1,
                });
            }
        }
        if self.row_attachment.len() + self.t != r + 1 {
            return Err(MoveError::Degree {
                expected: r + 1,
                got: self.row_attachment.len() + self.t,
            });
        }
        if !self.row_attachment.contains(&j) {
            return Err(MoveError::RowMissesColumn(j));
        }
        let partner = &self.column_attachments[self.designated];
        if !partner.contains(&i) {
            return Err(MoveError::ColumnMissesRow(i));
        }
        if !proper_subset(&self.row_attachment, &old_row_neighbours(b, i)) {
            return Err(MoveError::RowNotContained(i));
        }
        if !proper_subset(partner, &old_col_neighbours(b, j)) {
            return Err(MoveError::ColumnNotContained(j));
        }
        Ok(())
    }

    fn build(&self, remove: bool) -> Mask {
        let b = &self.base;
        let (rows, cols) = (b.rows() + 1, b.cols() + self.t);
        let mut out = b.padded(rows, cols);
        if remove {
            out.set(self.edge.0, self.edge.1, false);
        }
        let new_row = b.rows();
        for s in 0..self.t {
            out.set(new_row, b.cols() + s, true);
            for &i in &self.column_attachments[s] {
                out.set(i, b.cols() + s, true);
            }
        }
        for &j in &self.row_attachment {
            out.set(new_row, j, true);
        }
        out
    }

    /// Edges added by the partial move: `r + rt + 1`.
    pub fn added_edges(&self) -> usize {
        self.t + self.row_attachment.len() + self.column_attachments.iter().map(Vec::len).sum::<usize>()
    }
}

/// Performs the (t,1)-move: one more row, `t` more columns and a net gain of
/// `r + rt` edges.
pub fn t1_move(spec: &MoveSpec, r: usize) -> Result<Mask, MoveError> {
    spec.validate(r)?;
    Ok(spec.build(true))
}

/// The move without removing the edge `ij`.
pub fn partial_t1_move(spec: &MoveSpec, r: usize) -> Result<Mask, MoveError> {
    spec.validate(r)?;
    Ok(spec.build(false))
}

/// Picks attachments for a move over `edge`: the new row gets `j` and other
/// neighbours of `i`, the designated column gets `i` and other neighbours of
/// `j`, and the remaining columns take the currently least loaded rows.
pub fn find_move(base: &Mask, edge: (usize, usize), t: usize, r: usize) -> Result<MoveSpec, MoveError> {
    let (i, j) = edge;
    if base.is_symmetric_kind() {
        return Err(MoveError::NotBipartite);
    }
    if i >= base.rows() || j >= base.cols() || !base.get(i, j) {
        return Err(MoveError::MissingEdge(i, j));
    }
    if t == 0 || t > r {
        return Err(MoveError::BadT { t, r });
    }
    let ni = old_row_neighbours(base, i);
    let nj = old_col_neighbours(base, j);
    if ni.len() <= r + 1 - t || nj.len() <= r {
        return Err(MoveError::NoAttachment);
    }
    let mut row_attachment = vec![j];
    row_attachment.extend(ni.iter().copied().filter(|&c| c != j).take(r - t));
    let mut partner = vec![i];
    partner.extend(nj.iter().copied().filter(|&x| x != i).take(r - 1));
    let mut load: Vec<usize> = (0..base.rows()).map(|x| base.row_degree(x)).collect();
    for &x in &partner {
        load[x] += 1;
    }
    let mut column_attachments = vec![partner];
    for _ in 1..t {
        let picked: Vec<usize> = (0..base.rows()).sorted_by_key(|&x| (load[x], x)).take(r).sorted().collect();
        for &x in &picked {
            load[x] += 1;
        }
        column_attachments.push(picked);
    }
    let spec = MoveSpec {
        base: base.clone(),
        edge,
        t,
        row_attachment,
        column_attachments,
        designated: 0,
    };
    spec.validate(r)?;
    Ok(spec)
}

/// Oracle verdict on a move result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveVerdict {
    pub signature: (usize, usize),
    pub edges: usize,
    pub is_circuit: bool,
    /// Stabilizer order of the circuit class, when it is a circuit.
    pub aut_order: Option<u64>,
    /// `rank(C) = rank(K_sig)`, used as the test for being spanned by a basis graph.
    pub spans_rectangle: bool,
}

fn det_oracle(mask: &Mask, r: usize, oracle: &OracleConfig) -> Result<(ModelSpec, RankOracle), MoveError> {
    let spec = ModelSpec::det(mask.rows(), mask.cols(), r)?;
    Ok((spec, RankOracle::new(spec, oracle.clone())?))
}

/// Whether `mask` has the rank of the full rectangle it occupies.
pub fn spans_rectangle(mask: &Mask, r: usize, oracle: &OracleConfig) -> Result<bool, MoveError> {
    let c = mask.compact();
    let (spec, o) = det_oracle(&c, r, oracle)?;
    let s = c.to_edge_set(&spec)?;
    Ok(o.try_rank(&s)? == o.try_rank(&complete_set(&spec, c.rows(), c.cols()))?)
}

/// Classifies a move result with the oracle.
pub fn verify(mask: &Mask, r: usize, oracle: &OracleConfig) -> Result<MoveVerdict, MoveError> {
    let c = mask.compact();
    let (spec, o) = det_oracle(&c, r, oracle)?;
    let s = c.to_edge_set(&spec)?;
    let aut_order = match classify(&o, &s) {
        Classification::Circuit(canon) => Some(canon.aut_order),
        _ => None,
    };
    Ok(MoveVerdict {
        signature: c.signature(),
        edges: c.edge_count(),
        is_circuit: aut_order.is_some(),
        aut_order,
        spans_rectangle: spans_rectangle(&c, r, oracle)?,
    })
}

/// Report on a partial move applied to a basis graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialReport {
    pub added_edges: usize,
    pub rank_gain: usize,
    /// Number of circuits inside the result, when counted exhaustively.
    pub circuits: Option<usize>,
    /// The circuit found greedily contains every new edge.
    pub circuit_contains_new_edges: bool,
}

/// Checks the partial move claims: one more edge than rank gained, and a
/// circuit containing all new edges. Small results are searched
/// exhaustively for the number of circuits.
pub fn verify_partial(spec: &MoveSpec, r: usize, oracle: &OracleConfig) -> Result<PartialReport, MoveError> {
    let result = partial_t1_move(spec, r)?;
    let (rs, o) = det_oracle(&result, r, oracle)?;
    let whole = result.to_edge_set(&rs)?;
    let old = spec.base.padded(result.rows(), result.cols()).to_edge_set(&rs)?;
    let new = whole.difference(&old);
    let rank_gain = o.try_rank(&whole)? - o.try_rank(&old)?;
    let circuit = o.find_contained_circuit(&whole);
    let circuit_contains_new_edges = circuit.as_ref().is_some_and(|c| new.is_subset(c));
    let circuits = (whole.count() <= 20).then(|| {
        let elems: Vec<usize> = whole.iter().collect();
        (1..=elems.len())
            .flat_map(|k| elems.iter().copied().combinations(k))
            .filter(|sub| o.is_circuit(&crate::matroid::EdgeSet::from_indices(whole.ground_len(), sub.iter().copied())))
            .count()
    });
    Ok(PartialReport {
        added_edges: spec.added_edges(),
        rank_gain,
        circuits,
        circuit_contains_new_edges,
    })
}

/// Applies `(r,1)`-moves `k` times starting from `K_{r+1,r+1}`, taking the
/// first edge (in row-major order) whose automatic move the oracle accepts.
pub fn iterate_r1_moves(r: usize, k: usize, oracle: &OracleConfig) -> Result<Vec<Mask>, MoveError> {
    let mut current = Mask::complete_bipartite(r + 1, r + 1);
    let mut out = vec![current.clone()];
    for _ in 0..k {
        let mut next = None;
        for edge in current.edges() {
            let Ok(spec) = find_move(&current, edge, r, r) else { continue };
            let m = t1_move(&spec, r)?;
            if verify(&m, r, oracle)?.is_circuit {
                next = Some(m);
                break;
            }
        }
        current = next.ok_or(MoveError::NoAttachment)?;
        out.push(current.clone());
    }
    Ok(out)
}

/// The (2,2) construction on `K_{3,3}` for rank 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    #[serde(serialize_with = "crate::limits::ser_mask")]
    pub mask: Mask,
    pub edges: usize,
    pub full_rank: usize,
    pub independent: bool,
    pub is_basis: bool,
    /// `s + t − st − 1` for `s = t = 2`.
    pub defect_change: i64,
    /// Removing any single new edge leaves an independent set.
    pub new_edge_removals_independent: bool,
}

/// Removes `(0,0)` from `K_{3,3}`, adds `K_{2,2}` on rows 3,4 and columns
/// 3,4, joins new row 3+a to column a and new column 3+a to row a, and
/// certifies the result is a basis of the 5×5 rank-2 model.
///
/// Joining both new rows to column 0 and both new columns to row 0 would
/// give a dependent set instead.
pub fn st_move_counterexample(oracle: &OracleConfig) -> Result<CounterexampleReport, MoveError> {
    let (s, t, r) = (2i64, 2i64, 2usize);
    let mut mask = Mask::complete_bipartite(3, 3).padded(5, 5);
    mask.set(0, 0, false);
    for a in 3..5 {
        for b in 3..5 {
            mask.set(a, b, true);
        }
        mask.set(a, a - 3, true);
        mask.set(a - 3, a, true);
    }
    let (spec, o) = det_oracle(&mask, r, oracle)?;
    let set = mask.to_edge_set(&spec)?;
    let full_rank = o.full_rank();
    let independent = o.try_rank(&set)? == set.count();
    let old = Mask::complete_bipartite(3, 3).padded(5, 5).to_edge_set(&spec)?;
    let new_edges: Vec<usize> = set.difference(&old).iter().collect();
    let new_edge_removals_independent = new_edges.iter().all(|&e| o.is_independent(&set.without(e)));
    Ok(CounterexampleReport {
        edges: set.count(),
        full_rank,
        independent,
        is_basis: independent && set.count() == full_rank,
        defect_change: s + t - s * t - 1,
        new_edge_removals_independent,
        mask,
    })
}
