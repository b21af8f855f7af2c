//! Circuit classes up to symmetry, enumerated signature by signature inside
//! proved bounds on signatures and vertex degrees.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::matroid::{complete_set, EdgeSet, RankOracle, Screen};
use crate::models::{Family, ModelSpec};
use crate::symmetry::{
    canonical_form, is_transpose_distinct, representatives_by_size, CanonicalMask, DegreeBounds, Mask, MaskKind,
};

/// Range of admissible signatures plus minimum degrees of circuit vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureBounds {
    pub kind: MaskKind,
    pub k_min: usize,
    pub k_max: usize,
    /// `(k, l_min, l_max)` for every `k` in range; symmetric kinds use `l = k`.
    pub l_ranges: Vec<(usize, usize, usize)>,
    pub degrees: DegreeBounds,
}

impl SignatureBounds {
    pub fn l_range(&self, k: usize) -> Option<(usize, usize)> {
        self.l_ranges.iter().find(|t| t.0 == k).map(|t| (t.1, t.2))
    }

    pub fn contains(&self, sig: (usize, usize)) -> bool {
        self.l_range(sig.0).is_some_and(|(lo, hi)| lo <= sig.1 && sig.1 <= hi)
    }

    pub fn signatures(&self) -> Vec<(usize, usize)> {
        self.l_ranges
            .iter()
            .flat_map(|&(k, lo, hi)| (lo..=hi).map(move |l| (k, l)))
            .collect()
    }

    /// The same bounds cut down to signatures `≤ (max_k, max_l)`.
    pub fn capped(&self, max_k: usize, max_l: usize) -> SignatureBounds {
        let l_ranges: Vec<_> = self
            .l_ranges
            .iter()
            .filter(|t| t.0 <= max_k)
            .map(|&(k, lo, hi)| (k, lo, hi.min(max_l)))
            .filter(|t| t.1 <= t.2)
            .collect();
        SignatureBounds {
            kind: self.kind,
            k_min: l_ranges.first().map_or(self.k_min, |t| t.0),
            k_max: l_ranges.last().map_or(0, |t| t.0),
            l_ranges,
            degrees: self.degrees,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Signature and degree bounds valid for every circuit of `spec`.
///
/// Every vertex of a circuit has degree at least `r + 1`. Determinantal
/// circuits with `k` rows have at most `r(k − r) + 1` columns; bipartite
/// rigidity circuits at most `rk − C(r+1, 2) + 1`. Transposing gives the
/// matching lower bounds on the column count.
pub fn signature_bounds(spec: &ModelSpec) -> SignatureBounds {
    let r = spec.r();
    let kind = MaskKind::for_family(spec.family());
    let degrees = DegreeBounds::uniform(r + 1);
    let mut l_ranges = Vec::new();
    match spec.family() {
        Family::Det => {
            for k in r + 1..=spec.m() {
                let lo = (r + 1).max(r + (k - 1).div_ceil(r));
                let hi = spec.n().min(r * (k - r) + 1);
                if lo <= hi {
                    l_ranges.push((k, lo, hi));
                }
            }
        }
        Family::BipRig => {
            let c = binom(r + 1, 2);
            for k in r + 1..=spec.m() {
                let lo = (r + 1).max((c + k - 1).div_ceil(r));
                let hi = spec.n().min((r * k + 1).saturating_sub(c));
                if lo <= hi {
                    l_ranges.push((k, lo, hi));
                }
            }
        }
        Family::SymDet | Family::Rig => {
            let start = if spec.family() == Family::Rig { r + 2 } else { 2 };
            for k in start..=spec.n() {
                l_ranges.push((k, k, k));
            }
        }
    }
    SignatureBounds {
        kind,
        k_min: l_ranges.first().map_or(0, |t| t.0),
        k_max: l_ranges.last().map_or(0, |t| t.0),
        l_ranges,
        degrees,
    }
}

/// One isomorphism class of circuits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CircuitClass {
    pub signature: (usize, usize),
    #[serde(serialize_with = "mask_rows")]
    pub mask: Mask,
    pub edge_count: usize,
    pub aut_order: u64,
    pub transpose_distinct: bool,
}

fn mask_rows<S: Serializer>(m: &Mask, s: S) -> Result<S::Ok, S::Error> {
    m.ascii_rows().serialize(s)
}

impl CircuitClass {
    pub fn from_canonical(c: CanonicalMask) -> Self {
        let transpose_distinct = is_transpose_distinct(&c);
        CircuitClass {
            signature: c.mask.signature(),
            edge_count: c.mask.edge_count(),
            aut_order: c.aut_order,
            transpose_distinct,
            mask: c.mask,
        }
    }

    pub fn canonical(&self) -> CanonicalMask {
        CanonicalMask {
            mask: self.mask.clone(),
            aut_order: self.aut_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Independent,
    DependentNotCircuit,
    Circuit(CanonicalMask),
}

/// Independent, dependent but not a circuit, or a circuit with its class.
pub fn classify(o: &RankOracle, s: &EdgeSet) -> Classification {
    if o.is_independent(s) {
        return Classification::Independent;
    }
    if !o.is_circuit(s) {
        return Classification::DependentNotCircuit;
    }
    let mask = Mask::from_edge_set(o.spec(), s).compact();
    Classification::Circuit(canonical_form(&mask).expect("compacted mask has no isolated vertex"))
}

/// Limits and cancellation for long enumerations.
#[derive(Debug, Clone, Default)]
pub struct EnumerationOptions {
    pub time_budget: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub classes: Vec<CircuitClass>,
    /// Signatures that were fully processed.
    pub completed: Vec<(usize, usize)>,
    /// Set when the run stopped before covering every signature.
    pub partial: bool,
}

impl Enumeration {
    pub fn at(&self, sig: (usize, usize)) -> Vec<&CircuitClass> {
        self.classes.iter().filter(|c| c.signature == sig).collect()
    }
}

/// Largest possible circuit size at a signature: one more than the rank of
/// the complete (bipartite) graph on its vertices.
fn size_ceiling(o: &RankOracle, sig: (usize, usize)) -> usize {
    let full = complete_set(o.spec(), sig.0, sig.1);
    o.rank(&full) + 1
}

/// Every circuit class whose signature lies inside `bounds` and fits the oracle.
pub fn enumerate_circuit_classes(o: &RankOracle, bounds: &SignatureBounds, opts: &EnumerationOptions) -> Enumeration {
    let start = Instant::now();
    let spec = *o.spec();
    let stop = || {
        opts.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed))
            || opts.time_budget.is_some_and(|b| start.elapsed() > b)
    };
    let mut classes = Vec::new();
    let mut completed = Vec::new();
    let mut partial = false;
    for sig in bounds.signatures() {
        let fits = if spec.family().is_bipartite() {
            sig.0 <= spec.m() && sig.1 <= spec.n()
        } else {
            sig.0 <= spec.n()
        };
        if !fits {
            continue;
        }
        if stop() {
            partial = true;
            break;
        }
        let ceiling = size_ceiling(o, sig);
        let floor = match bounds.kind {
            MaskKind::Bipartite => (sig.0 * bounds.degrees.row_min).max(sig.1 * bounds.degrees.col_min),
            MaskKind::Symmetric { .. } => (sig.0 * bounds.degrees.row_min).div_ceil(2),
        };
        if floor > ceiling {
            completed.push(sig);
            continue;
        }
        let reps = representatives_by_size(bounds.kind, sig, bounds.degrees, floor, ceiling);
        let mut found: Vec<CircuitClass> = Vec::new();
        for (_, masks) in reps.into_iter().rev() {
            let mut hits: Vec<CircuitClass> = masks
                .par_iter()
                .filter_map(|m| {
                    let s = m.to_edge_set(&spec).ok()?;
                    if o.circuit_screen(&s) != Screen::Candidate || !o.is_circuit(&s) {
                        return None;
                    }
                    Some(CircuitClass::from_canonical(canonical_form(m).ok()?))
                })
                .collect();
            found.append(&mut hits);
        }
        found.sort();
        classes.extend(found);
        completed.push(sig);
    }
    classes.sort_by(|a, b| {
        (a.signature, std::cmp::Reverse(a.edge_count), std::cmp::Reverse(a.aut_order), &a.mask).cmp(&(
            b.signature,
            std::cmp::Reverse(b.edge_count),
            std::cmp::Reverse(b.aut_order),
            &b.mask,
        ))
    });
    Enumeration {
        classes,
        completed,
        partial,
    }
}
