//! Masks, canonical forms under row/column (or vertex) relabeling,
//! stabilizer orders and orbit sizes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::EdgeSet;
use crate::models::{Family, ModelSpec};

const MAX_SIDE: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("mask has an isolated vertex")]
    IsolatedVertex,
    #[error("signature {sig:?} exceeds the ambient size {ambient:?}")]
    SignatureExceeds { sig: (usize, usize), ambient: (usize, usize) },
    #[error("mask parse error: {0}")]
    Parse(String),
    #[error("symmetric mask is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("loop at vertex {0} but the model has no diagonal")]
    UnexpectedLoop(usize),
    #[error("mask side exceeds {MAX_SIDE}")]
    TooLarge,
    #[error("mask of shape {mask:?} does not fit model {spec}")]
    DoesNotFit { mask: (usize, usize), spec: ModelSpec },
}

/// Which symmetry group acts on a mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MaskKind {
    /// Independent row and column permutations.
    Bipartite,
    /// Simultaneous vertex permutations; `loops` allows diagonal entries.
    Symmetric { loops: bool },
}

impl MaskKind {
    pub fn for_family(family: Family) -> Self {
        match family {
            Family::Det | Family::BipRig => MaskKind::Bipartite,
            Family::SymDet => MaskKind::Symmetric { loops: true },
            Family::Rig => MaskKind::Symmetric { loops: false },
        }
    }
}

/// A 0/1 matrix; row `i` is a bitmask over the columns.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask {
    kind: MaskKind,
    rows: usize,
    cols: usize,
    bits: Vec<u64>,
}

impl Mask {
    pub fn bipartite(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_SIDE);
        Mask {
            kind: MaskKind::Bipartite,
            rows,
            cols,
            bits: vec![0; rows],
        }
    }

    pub fn symmetric(n: usize, loops: bool) -> Self {
        assert!(n <= MAX_SIDE);
        Mask {
            kind: MaskKind::Symmetric { loops },
            rows: n,
            cols: n,
            bits: vec![0; n],
        }
    }

    pub fn empty_like(kind: MaskKind, rows: usize, cols: usize) -> Self {
        match kind {
            MaskKind::Bipartite => Self::bipartite(rows, cols),
            MaskKind::Symmetric { loops } => Self::symmetric(rows, loops),
        }
    }

    /// The complete bipartite graph `K_{k,l}`.
    pub fn complete_bipartite(k: usize, l: usize) -> Self {
        let mut m = Self::bipartite(k, l);
        for i in 0..k {
            for j in 0..l {
                m.set(i, j, true);
            }
        }
        m
    }

    /// The complete graph on `n` vertices, with loops if requested.
    pub fn complete_graph(n: usize, loops: bool) -> Self {
        let mut m = Self::symmetric(n, loops);
        for i in 0..n {
            for j in i..n {
                if i != j || loops {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn kind(&self) -> MaskKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_symmetric_kind(&self) -> bool {
        matches!(self.kind, MaskKind::Symmetric { .. })
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i] >> j & 1 == 1
    }

    /// Sets an entry; symmetric masks set both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, on: bool) {
        assert!(i < self.rows && j < self.cols);
        let mut put = |a: usize, b: usize| {
            if on {
                self.bits[a] |= 1 << b;
            } else {
                self.bits[a] &= !(1 << b);
            }
        };
        put(i, j);
        if matches!(self.kind, MaskKind::Symmetric { .. }) {
            put(j, i);
        }
    }

    pub fn row_bits(&self, i: usize) -> u64 {
        self.bits[i]
    }

    /// Edges; symmetric masks count each unordered pair (and loop) once.
    pub fn edge_count(&self) -> usize {
        match self.kind {
            MaskKind::Bipartite => self.bits.iter().map(|b| b.count_ones() as usize).sum(),
            MaskKind::Symmetric { .. } => {
                let total: usize = self.bits.iter().map(|b| b.count_ones() as usize).sum();
                let loops = (0..self.rows).filter(|&i| self.get(i, i)).count();
                (total + loops) / 2
            }
        }
    }

    /// Entries in row `i`; a loop counts once.
    pub fn row_degree(&self, i: usize) -> usize {
        self.bits[i].count_ones() as usize
    }

    pub fn col_degree(&self, j: usize) -> usize {
        self.bits.iter().filter(|&&b| b >> j & 1 == 1).count()
    }

    /// Zero-based edges `(i, j)`; symmetric masks list `i ≤ j` only.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            let start = if self.is_symmetric_kind() { i } else { 0 };
            for j in start..self.cols {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Numbers of nonempty rows and columns (vertex count twice for symmetric masks).
    pub fn signature(&self) -> (usize, usize) {
        let k = (0..self.rows).filter(|&i| self.bits[i] != 0).count();
        match self.kind {
            MaskKind::Bipartite => (k, (0..self.cols).filter(|&j| self.col_degree(j) > 0).count()),
            MaskKind::Symmetric { .. } => (k, k),
        }
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.rows).any(|i| self.bits[i] == 0) || (0..self.cols).any(|j| self.col_degree(j) == 0)
    }

    pub fn transpose(&self) -> Mask {
        if self.is_symmetric_kind() {
            return self.clone();
        }
        let mut t = Mask::bipartite(self.cols, self.rows);
        for (i, j) in self.edges() {
            t.set(j, i, true);
        }
        t
    }

    /// Drops empty rows and columns (isolated vertices for symmetric masks).
    pub fn compact(&self) -> Mask {
        let keep_r: Vec<usize> = (0..self.rows).filter(|&i| self.bits[i] != 0).collect();
        let keep_c: Vec<usize> = match self.kind {
            MaskKind::Bipartite => (0..self.cols).filter(|&j| self.col_degree(j) > 0).collect(),
            MaskKind::Symmetric { .. } => keep_r.clone(),
        };
        let mut out = Mask::empty_like(self.kind, keep_r.len(), keep_c.len());
        for (a, &i) in keep_r.iter().enumerate() {
            for (b, &j) in keep_c.iter().enumerate() {
                if self.get(i, j) {
                    out.set(a, b, true);
                }
            }
        }
        out
    }

    /// Relabels: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    /// Symmetric masks use `row_perm` for both sides.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Mask {
        let cp = if self.is_symmetric_kind() { row_perm } else { col_perm };
        let mut out = Mask::empty_like(self.kind, self.rows, self.cols);
        for (i, j) in self.edges() {
            out.set(row_perm[i], cp[j], true);
        }
        out
    }

    /// Embeds into a larger shape, keeping entries at the top-left.
    pub fn padded(&self, rows: usize, cols: usize) -> Mask {
        let mut out = Mask::empty_like(self.kind, rows, cols);
        for (i, j) in self.edges() {
            out.set(i, j, true);
        }
        out
    }

    pub fn parse(text: &str, kind: MaskKind) -> Result<Mask, SymmetryError> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with("//"))
            .collect();
        if lines.is_empty() {
            return Err(SymmetryError::Parse("empty mask".into()));
        }
        let cols = lines[0].chars().count();
        if cols > MAX_SIDE || lines.len() > MAX_SIDE {
            return Err(SymmetryError::TooLarge);
        }
        let mut raw = vec![vec![false; cols]; lines.len()];
        for (i, line) in lines.iter().enumerate() {
            if line.chars().count() != cols {
                return Err(SymmetryError::Parse(format!("row {} has a different length", i + 1)));
            }
            for (j, ch) in line.chars().enumerate() {
                raw[i][j] = match ch {
                    '#' | '1' => true,
                    '.' | '0' => false,
                    other => return Err(SymmetryError::Parse(format!("unexpected character `{other}`"))),
                };
            }
        }
        let mut m = match kind {
            MaskKind::Bipartite => Mask::bipartite(lines.len(), cols),
            MaskKind::Symmetric { loops } => {
                if cols != lines.len() {
                    return Err(SymmetryError::Parse("symmetric mask must be square".into()));
                }
                Mask::symmetric(cols, loops)
            }
        };
        for (i, row) in raw.iter().enumerate() {
            for (j, &on) in row.iter().enumerate() {
                if let MaskKind::Symmetric { loops } = kind {
                    if on != raw[j][i] {
                        return Err(SymmetryError::NotSymmetric(i + 1, j + 1));
                    }
                    if on && i == j && !loops {
                        return Err(SymmetryError::UnexpectedLoop(i + 1));
                    }
                }
                if on {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn ascii_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '#' } else { '.' }).collect())
            .collect()
    }

    /// The subset of a model's ground set given by this mask at the top-left.
    pub fn to_edge_set(&self, spec: &ModelSpec) -> Result<EdgeSet, SymmetryError> {
        let fits = match self.kind {
            MaskKind::Bipartite => spec.family().is_bipartite() && self.rows <= spec.m() && self.cols <= spec.n(),
            MaskKind::Symmetric { .. } => {
                MaskKind::for_family(spec.family()) == self.kind && self.rows <= spec.n()
            }
        };
        let err = || SymmetryError::DoesNotFit {
            mask: (self.rows, self.cols),
            spec: *spec,
        };
        if !fits {
            return Err(err());
        }
        let mut s = EdgeSet::empty(spec.ground_len());
        for (i, j) in self.edges() {
            s.insert(spec.index_of(i, j).ok_or_else(err)?);
        }
        Ok(s)
    }

    /// The full-size mask of a subset of a model's ground set.
    pub fn from_edge_set(spec: &ModelSpec, s: &EdgeSet) -> Mask {
        let mut m = Mask::empty_like(MaskKind::for_family(spec.family()), spec.m(), spec.n());
        for idx in s.iter() {
            let e = spec.elem(idx).expect("edge set matches the model");
            m.set(e.i, e.j, true);
        }
        m
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.ascii_rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            f.write_str(row)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask({:?}, {})", self.kind, self.ascii_rows().join("/"))
    }
}

/// A mask in canonical labeling with its stabilizer order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalMask {
    pub mask: Mask,
    pub aut_order: u64,
}

impl CanonicalMask {
    pub fn signature(&self) -> (usize, usize) {
        self.mask.signature()
    }
}

/// Ordered cells of equivalent vertices plus, for each cell, its members.
fn cells_by<K: Ord + Clone>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut grouped: BTreeMap<std::cmp::Reverse<K>, Vec<usize>> = BTreeMap::new();
    for (v, k) in keys.iter().enumerate() {
        grouped.entry(std::cmp::Reverse(k.clone())).or_default().push(v);
    }
    grouped.into_values().collect()
}

/// Calls `visit` with every arrangement that lists the cells in order and
/// permutes vertices within each cell.
fn for_each_arrangement(cells: &[Vec<usize>], visit: &mut impl FnMut(&[usize])) {
    fn go(cell_at: &[usize], cells: &[Vec<usize>], used: &mut [bool], acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let pos = acc.len();
        if pos == cell_at.len() {
            visit(acc);
            return;
        }
        for &v in &cells[cell_at[pos]] {
            if used[v] {
                continue;
            }
            used[v] = true;
            acc.push(v);
            go(cell_at, cells, used, acc, visit);
            acc.pop();
            used[v] = false;
        }
    }
    let cell_at: Vec<usize> = cells.iter().enumerate().flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len())).collect();
    let n = cells.iter().flatten().max().map_or(0, |&v| v + 1);
    let mut used = vec![false; n];
    go(&cell_at, cells, &mut used, &mut Vec::with_capacity(cell_at.len()), visit);
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn multiplicity_factor(sorted: &[u64]) -> u64 {
    sorted
        .iter()
        .chunk_by(|&&x| x)
        .into_iter()
        .map(|(_, g)| factorial(g.count()))
        .product()
}

/// Canonical form of a bipartite mask with `rows ≤ cols`: rows are arranged
/// within degree cells and the columns, read as bit codes over rows, are
/// sorted; the lexicographically largest column sequence wins.
fn canonical_bipartite_rows(m: &Mask) -> CanonicalMask {
    let k = m.rows;
    let col_deg: Vec<usize> = (0..m.cols).map(|j| m.col_degree(j)).collect();
    let keys: Vec<(usize, Vec<usize>)> = (0..k)
        .map(|i| {
            let mut nd: Vec<usize> = (0..m.cols).filter(|&j| m.get(i, j)).map(|j| col_deg[j]).collect();
            nd.sort_unstable();
            (m.row_degree(i), nd)
        })
        .collect();
    let cells = cells_by(&keys);
    let codes = |ord: &[usize]| -> Vec<u64> {
        let mut cs: Vec<u64> = (0..m.cols)
            .map(|j| {
                ord.iter()
                    .enumerate()
                    .fold(0u64, |acc, (pos, &i)| if m.get(i, j) { acc | 1 << (k - 1 - pos) } else { acc })
            })
            .collect();
        cs.sort_unstable_by(|a, b| b.cmp(a));
        cs
    };
    let mut best: Option<Vec<u64>> = None;
    let mut hits = 0u64;
    let mut reference: Option<Vec<u64>> = None;
    for_each_arrangement(&cells, &mut |ord| {
        let key = codes(ord);
        let r = reference.get_or_insert_with(|| key.clone());
        if key == *r {
            hits += 1;
        }
        if best.as_ref().is_none_or(|b| key > *b) {
            best = Some(key);
        }
    });
    let best = best.expect("at least one arrangement");
    let mut out = Mask::bipartite(k, m.cols);
    for (j, &code) in best.iter().enumerate() {
        for pos in 0..k {
            if code >> (k - 1 - pos) & 1 == 1 {
                out.set(pos, j, true);
            }
        }
    }
    let aut_order = hits * multiplicity_factor(&best);
    CanonicalMask { mask: out, aut_order }
}

fn canonical_symmetric(m: &Mask) -> CanonicalMask {
    let n = m.rows;
    let deg: Vec<usize> = (0..n).map(|i| m.row_degree(i)).collect();
    let keys: Vec<(bool, usize, Vec<usize>)> = (0..n)
        .map(|i| {
            let mut nd: Vec<usize> = (0..n).filter(|&j| j != i && m.get(i, j)).map(|j| deg[j]).collect();
            nd.sort_unstable();
            (m.get(i, i), deg[i], nd)
        })
        .collect();
    let cells = cells_by(&keys);
    let rows_of = |ord: &[usize]| -> Vec<u64> {
        ord.iter()
            .map(|&i| {
                ord.iter()
                    .enumerate()
                    .fold(0u64, |acc, (pos, &j)| if m.get(i, j) { acc | 1 << (n - 1 - pos) } else { acc })
            })
            .collect()
    };
    let mut best: Option<Vec<u64>> = None;
    let mut reference: Option<Vec<u64>> = None;
    let mut hits = 0u64;
    for_each_arrangement(&cells, &mut |ord| {
        let key = rows_of(ord);
        let r = reference.get_or_insert_with(|| key.clone());
        if key == *r {
            hits += 1;
        }
        if best.as_ref().is_none_or(|b| key > *b) {
            best = Some(key);
        }
    });
    let best = best.expect("at least one arrangement");
    let mut out = Mask::empty_like(m.kind, n, n);
    for (i, &code) in best.iter().enumerate() {
        for j in 0..n {
            if code >> (n - 1 - j) & 1 == 1 {
                out.set(i, j, true);
            }
        }
    }
    CanonicalMask { mask: out, aut_order: hits }
}

/// Canonical labeling and stabilizer order of a mask without isolated vertices.
pub fn canonical_form(m: &Mask) -> Result<CanonicalMask, SymmetryError> {
    if m.has_isolated_vertex() || m.rows == 0 {
        return Err(SymmetryError::IsolatedVertex);
    }
    Ok(match m.kind {
        MaskKind::Symmetric { .. } => canonical_symmetric(m),
        MaskKind::Bipartite if m.rows <= m.cols => canonical_bipartite_rows(m),
        MaskKind::Bipartite => {
            let c = canonical_bipartite_rows(&m.transpose());
            CanonicalMask {
                mask: c.mask.transpose(),
                aut_order: c.aut_order,
            }
        }
    })
}

/// Whether the transpose of a bipartite class is a different class.
pub fn is_transpose_distinct(c: &CanonicalMask) -> bool {
    if c.mask.is_symmetric_kind() {
        return false;
    }
    canonical_form(&c.mask.transpose()).map_or(true, |t| t.mask != c.mask)
}

fn falling(n: usize, k: usize) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// Number of labeled copies of the class inside an `m × n` grid (or on `m`
/// vertices for symmetric masks, where `n` is ignored).
pub fn orbit_size(c: &CanonicalMask, m: usize, n: usize) -> Result<u128, SymmetryError> {
    let (k, l) = c.signature();
    let placements = if c.mask.is_symmetric_kind() {
        if k > m {
            return Err(SymmetryError::SignatureExceeds { sig: (k, l), ambient: (m, m) });
        }
        falling(m, k)
    } else {
        if k > m || l > n {
            return Err(SymmetryError::SignatureExceeds { sig: (k, l), ambient: (m, n) });
        }
        falling(m, k) * falling(n, l)
    };
    let aut = c.aut_order as u128;
    debug_assert_eq!(placements % aut, 0);
    Ok(placements / aut)
}

/// Degree constraints for representative generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBounds {
    pub row_min: usize,
    pub col_min: usize,
}

impl DegreeBounds {
    pub fn uniform(d: usize) -> Self {
        DegreeBounds { row_min: d, col_min: d }
    }
}

/// One representative per isomorphism class of masks with the given
/// signature, edge count and minimum degrees.
pub fn representatives(kind: MaskKind, signature: (usize, usize), bounds: DegreeBounds, size: usize) -> Vec<Mask> {
    representatives_by_size(kind, signature, bounds, size, size)
        .remove(&size)
        .unwrap_or_default()
}

/// Representatives for every edge count in `min_size..=max_size`, sorted
/// within each size by canonical mask.
pub fn representatives_by_size(
    kind: MaskKind,
    signature: (usize, usize),
    bounds: DegreeBounds,
    min_size: usize,
    max_size: usize,
) -> BTreeMap<usize, Vec<Mask>> {
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut out: BTreeMap<usize, Vec<Mask>> = BTreeMap::new();
    let mut keep = |m: Mask| {
        if let Ok(c) = canonical_form(&m) {
            if seen.insert(c.mask.clone()) {
                out.entry(c.mask.edge_count()).or_default().push(c.mask);
            }
        }
    };
    match kind {
        MaskKind::Bipartite => {
            let (k, l) = signature;
            if k == 0 || l == 0 || k > MAX_SIDE || l > MAX_SIDE {
                return out;
            }
            // Multisets over the side that yields fewer of them.
            let cost = |height: usize, width: usize, min: usize| {
                let pats = patterns(height, min).len() as f64;
                (0..width).fold(1.0, |acc, t| acc * (pats + t as f64) / (t as f64 + 1.0))
            };
            let by_cols = cost(k, l, bounds.col_min) <= cost(l, k, bounds.row_min);
            let (height, width, line_min, cross_min) = if by_cols {
                (k, l, bounds.col_min, bounds.row_min)
            } else {
                (l, k, bounds.row_min, bounds.col_min)
            };
            let pats = patterns(height, line_min);
            let mut chosen = Vec::with_capacity(width);
            multisets(&pats, width, 0, 0, min_size, max_size, height, &mut chosen, &mut |cols| {
                let mut m = Mask::bipartite(height, width);
                for (j, &code) in cols.iter().enumerate() {
                    for i in 0..height {
                        if code >> i & 1 == 1 {
                            m.set(i, j, true);
                        }
                    }
                }
                if (0..height).all(|i| m.row_degree(i) >= cross_min.max(1)) {
                    keep(if by_cols { m } else { m.transpose() });
                }
            });
        }
        MaskKind::Symmetric { loops } => {
            let n = signature.0;
            let slots: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j || loops)
                .collect();
            for size in min_size..=max_size.min(slots.len()) {
                for pick in slots.iter().combinations(size) {
                    let mut m = Mask::symmetric(n, loops);
                    for &&(i, j) in &pick {
                        m.set(i, j, true);
                    }
                    if (0..n).all(|i| m.row_degree(i) >= bounds.row_min.max(1)) {
                        keep(m);
                    }
                }
            }
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Bit patterns of the given height with at least `min` ones.
fn patterns(height: usize, min: usize) -> Vec<u64> {
    (1u64..1 << height)
        .filter(|p| p.count_ones() as usize >= min.max(1))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn multisets(
    pats: &[u64],
    width: usize,
    from: usize,
    edges: usize,
    min_size: usize,
    max_size: usize,
    height: usize,
    acc: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    if acc.len() == width {
        if edges >= min_size && edges <= max_size {
            visit(acc);
        }
        return;
    }
    let left = width - acc.len();
    if edges + left * height < min_size {
        return;
    }
    for (t, &p) in pats.iter().enumerate().skip(from) {
        let e = edges + p.count_ones() as usize;
        if e + (left - 1) > max_size {
            continue;
        }
        acc.push(p);
        multisets(pats, width, t, e, min_size, max_size, height, acc, visit);
        acc.pop();
    }
}
