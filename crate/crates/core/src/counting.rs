//! Class counts `c`, the weights `β = Σ 1/aut`, and labeled circuit totals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{CircuitClass, Enumeration};
use crate::models::ModelSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("the class list is partial; totals are not reported")]
    Partial,
    #[error("table covers signatures up to {covered:?}, total requested for {requested:?}")]
    Incomplete {
        covered: (usize, usize),
        requested: (usize, usize),
    },
    #[error("total {0} is not an integer")]
    NonInteger(BigRational),
    #[error("table mixes bipartite and symmetric classes")]
    MixedKinds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureCount {
    pub classes: usize,
    pub beta: BigRational,
}

/// Per-signature counts of circuit classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    pub entries: BTreeMap<(usize, usize), SignatureCount>,
    /// Largest ambient size for which the class list is known to be complete.
    pub coverage: Option<(usize, usize)>,
    pub partial: bool,
    pub symmetric: bool,
}

/// Serializable row of a count table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub signature: (usize, usize),
    pub c: usize,
    pub beta_num: String,
    pub beta_den: String,
}

/// Aggregates classes by signature.
pub fn count_classes(classes: &[CircuitClass]) -> CountTable {
    let mut entries: BTreeMap<(usize, usize), SignatureCount> = BTreeMap::new();
    for c in classes {
        let e = entries.entry(c.signature).or_insert_with(|| SignatureCount {
            classes: 0,
            beta: BigRational::zero(),
        });
        e.classes += 1;
        e.beta += BigRational::new(BigInt::one(), BigInt::from(c.aut_order));
    }
    CountTable {
        entries,
        coverage: None,
        partial: false,
        symmetric: classes.first().is_some_and(|c| c.mask.is_symmetric_kind()),
    }
}

impl CountTable {
    /// Counts from an enumeration over `spec`, remembering its coverage.
    pub fn from_enumeration(e: &Enumeration, spec: &ModelSpec) -> Self {
        let mut t = count_classes(&e.classes);
        t.coverage = Some((spec.m(), spec.n()));
        t.partial = e.partial;
        t.symmetric = !spec.family().is_bipartite();
        t
    }

    pub fn beta(&self, sig: (usize, usize)) -> BigRational {
        self.entries.get(&sig).map_or_else(BigRational::zero, |e| e.beta.clone())
    }

    pub fn classes_at(&self, sig: (usize, usize)) -> usize {
        self.entries.get(&sig).map_or(0, |e| e.classes)
    }

    pub fn rows(&self) -> Vec<CountRow> {
        self.entries
            .iter()
            .map(|(&signature, e)| CountRow {
                signature,
                c: e.classes,
                beta_num: e.beta.numer().to_string(),
                beta_den: e.beta.denom().to_string(),
            })
            .collect()
    }

    fn check(&self, m: usize, n: usize) -> Result<(), CountError> {
        if self.partial {
            return Err(CountError::Partial);
        }
        if let Some(cov) = self.coverage {
            if m > cov.0 || n > cov.1 {
                return Err(CountError::Incomplete {
                    covered: cov,
                    requested: (m, n),
                });
            }
        }
        Ok(())
    }
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

fn integral(total: BigRational) -> Result<BigInt, CountError> {
    if total.is_integer() {
        Ok(total.to_integer())
    } else {
        Err(CountError::NonInteger(total))
    }
}

/// `Σ β_{k,l} · m!·n! / ((m−k)!·(n−l)!)` over signatures that fit `m × n`.
pub fn total_circuits(table: &CountTable, m: usize, n: usize) -> Result<BigInt, CountError> {
    if table.symmetric {
        return Err(CountError::MixedKinds);
    }
    table.check(m, n)?;
    let mut total = BigRational::zero();
    for (&(k, l), e) in &table.entries {
        if k <= m && l <= n {
            total += e.beta.clone() * BigRational::from_integer(falling(m, k) * falling(n, l));
        }
    }
    integral(total)
}

/// `Σ β_k · n!/(n−k)!` for tables of graph (single vertex set) classes.
pub fn total_circuits_symmetric(table: &CountTable, n: usize) -> Result<BigInt, CountError> {
    if !table.symmetric && !table.entries.is_empty() {
        return Err(CountError::MixedKinds);
    }
    table.check(n, n)?;
    let mut total = BigRational::zero();
    for (&(k, _), e) in &table.entries {
        if k <= n {
            total += e.beta.clone() * BigRational::from_integer(falling(n, k));
        }
    }
    integral(total)
}
