//! Sparse polynomials over the rationals in ground-set variables, with
//! top-degrees, multihomogenization, closed-form constructors for minors and
//! cycle binomials, and checks backed by sampled points and the rank oracle.
//!
//! Variables are `x_i_j` for ground elements and `y_i_j` for the
//! homogenizing partner of `x_i_j`. Indices print 1-based.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::matroid::{EdgeSet, OracleConfig, RankOracle};
use crate::models::{coordinate, sample_point, Family, ModelError, ModelSpec};
use crate::primefield::{FieldError, PrimeField};
use crate::symmetry::Mask;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("variable {0} is not in the ground set of {1}")]
    OutsideGround(Var, ModelSpec),
    #[error("expected a square selection of size {expected}, got {rows}×{cols}")]
    SizeMismatch { expected: usize, rows: usize, cols: usize },
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("{0} has no closed-form minor constructor")]
    Unsupported(Family),
    #[error("the mask is not an even cycle")]
    NotACycle,
    #[error("a generator does not fix the support")]
    SupportNotFixed,
    #[error("rational coefficient has a denominator divisible by the prime")]
    BadDenominator,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A variable `x_i_j`, or its homogenizing partner `y_i_j` when `hom` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub hom: bool,
    pub i: usize,
    pub j: usize,
}

impl Var {
    pub fn x(i: usize, j: usize) -> Self {
        Var { hom: false, i, j }
    }

    pub fn y(i: usize, j: usize) -> Self {
        Var { hom: true, i, j }
    }

    fn partner(self) -> Var {
        Var { hom: !self.hom, ..self }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}_{}", if self.hom { 'y' } else { 'x' }, self.i + 1, self.j + 1)
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<Var, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_default() += e;
    }
    out.into_iter().collect()
}

/// Per-variable maximal exponents; only positive entries are kept.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TopDegree(pub BTreeMap<Var, u32>);

impl TopDegree {
    pub fn degree(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset sum.
    pub fn sum(&self, other: &TopDegree) -> TopDegree {
        let mut out = self.0.clone();
        for (&v, &d) in &other.0 {
            *out.entry(v).or_default() += d;
        }
        TopDegree(out)
    }

    /// Multiset union (pointwise maximum).
    pub fn union(&self, other: &TopDegree) -> TopDegree {
        let mut out = self.0.clone();
        for (&v, &d) in &other.0 {
            let e = out.entry(v).or_default();
            *e = (*e).max(d);
        }
        TopDegree(out)
    }

    pub fn is_submultiset(&self, other: &TopDegree) -> bool {
        self.0.iter().all(|(&v, &d)| other.degree(v) >= d)
    }

    /// Total number of elements counted with multiplicity.
    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(vec![(v, 1)], BigRational::one())
    }

    pub fn monomial(mono: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        let canon: BTreeMap<Var, u32> = mono.into_iter().filter(|&(_, e)| e > 0).fold(BTreeMap::new(), |mut m, (v, e)| {
            *m.entry(v).or_default() += e;
            m
        });
        p.add_term(canon.into_iter().collect(), c);
        p
    }

    fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        (0..e).fold(SparsePoly::one(), |acc, _| &acc * self)
    }

    /// Variables that occur, in order.
    pub fn variables(&self) -> Vec<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(v, _)| v))
            .sorted()
            .dedup()
            .collect()
    }

    /// Per-variable maximal exponent.
    pub fn topdeg(&self) -> TopDegree {
        let mut out: BTreeMap<Var, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            for &(v, e) in m {
                let d = out.entry(v).or_default();
                *d = (*d).max(e);
            }
        }
        TopDegree(out)
    }

    /// Per-variable maximal degree counting `x_v` and `y_v` together, keyed by `x_v`.
    pub fn paired_topdeg(&self) -> TopDegree {
        let mut out: BTreeMap<Var, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            let mut here: BTreeMap<Var, u32> = BTreeMap::new();
            for &(v, e) in m {
                *here.entry(Var::x(v.i, v.j)).or_default() += e;
            }
            for (v, e) in here {
                let d = out.entry(v).or_default();
                *d = (*d).max(e);
            }
        }
        TopDegree(out)
    }

    /// Ground elements of the `x` variables, as an edge set of `spec`.
    pub fn support(&self, spec: &ModelSpec) -> Result<EdgeSet, PolyError> {
        let mut s = EdgeSet::empty(spec.ground_len());
        for v in self.variables().into_iter().filter(|v| !v.hom) {
            s.insert(spec.index_of(v.i, v.j).ok_or(PolyError::OutsideGround(v, *spec))?);
        }
        Ok(s)
    }

    /// Multiplies each term `a·X^n` by `Y^(topdeg − n)`.
    pub fn multihomogenize(&self) -> SparsePoly {
        let top = self.topdeg();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let have: BTreeMap<Var, u32> = m.iter().copied().collect();
            let mut mono = m.clone();
            for (&v, &d) in &top.0 {
                let missing = d - have.get(&v).copied().unwrap_or(0);
                if missing > 0 {
                    mono.push((v.partner(), missing));
                }
            }
            mono.sort();
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Sets every homogenizing variable to one.
    pub fn dehomogenize(&self) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.iter().copied().filter(|(v, _)| !v.hom).collect(), c.clone());
        }
        out
    }

    /// Every monomial has the same combined degree in each pair `x_v, y_v`.
    pub fn is_multihomogeneous(&self) -> bool {
        let profile = |m: &Monomial| -> BTreeMap<(usize, usize), u32> {
            let mut p = BTreeMap::new();
            for &(v, e) in m {
                *p.entry((v.i, v.j)).or_default() += e;
            }
            p
        };
        self.terms.keys().map(profile).all_equal()
    }

    /// Applies `v ↦ map(v)` to every variable.
    pub fn rename<F: Fn(Var) -> Var>(&self, map: F) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            out = &out + &SparsePoly::monomial(m.iter().map(|&(v, e)| (map(v), e)).collect(), c.clone());
        }
        out
    }

    /// Value at an assignment over `F_p`; homogenizing variables evaluate to one.
    pub fn eval_mod<F: Fn(Var) -> u64>(&self, field: PrimeField, value: F) -> Result<u64, PolyError> {
        let p = BigInt::from(field.modulus());
        let mut acc = 0;
        for (m, c) in &self.terms {
            let num = (c.numer() % &p + &p) % &p;
            let den = (c.denom() % &p + &p) % &p;
            let den = field.inv(den.to_u64().unwrap()).ok_or(PolyError::BadDenominator)?;
            let mut t = field.mul(num.to_u64().unwrap(), den);
            for &(v, e) in m {
                if !v.hom {
                    t = field.mul(t, field.pow(value(v), e as u64));
                }
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }

    /// Exact value at a rational assignment; homogenizing variables are one.
    pub fn eval_rational<F: Fn(Var) -> BigRational>(&self, value: F) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                if !v.hom {
                    t *= num_traits::pow(value(v), e as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

fn fmt_coef(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !abs.is_one() || m.is_empty() {
                parts.push(fmt_coef(&abs));
            }
            for &(v, e) in m {
                parts.push(if e == 1 { v.to_string() } else { format!("{v}^{e}") });
            }
            write!(f, "{}", parts.join(" * "))?;
        }
        Ok(())
    }
}

fn parse_index(s: &str, whole: &str) -> Result<usize, PolyError> {
    let k: usize = s.parse().map_err(|_| PolyError::Parse(format!("bad index in `{whole}`")))?;
    k.checked_sub(1).ok_or_else(|| PolyError::Parse(format!("indices are 1-based in `{whole}`")))
}

fn parse_factor(tok: &str) -> Result<(Option<Var>, BigRational, u32), PolyError> {
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, e.parse::<u32>().map_err(|_| PolyError::Parse(format!("bad exponent in `{tok}`")))?),
        None => (tok, 1),
    };
    if let Some(rest) = base.strip_prefix("x_").map(|r| (false, r)).or_else(|| base.strip_prefix("y_").map(|r| (true, r))) {
        let (hom, idx) = rest;
        let (a, b) = idx
            .split_once('_')
            .ok_or_else(|| PolyError::Parse(format!("expected x_i_j, got `{tok}`")))?;
        let v = Var {
            hom,
            i: parse_index(a, tok)?,
            j: parse_index(b, tok)?,
        };
        return Ok((Some(v), BigRational::one(), exp));
    }
    let c = match base.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| PolyError::Parse(format!("bad number `{tok}`")))?;
            let d: BigInt = d.parse().map_err(|_| PolyError::Parse(format!("bad number `{tok}`")))?;
            if d.is_zero() {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(base.parse().map_err(|_| PolyError::Parse(format!("unexpected `{tok}`")))?),
    };
    Ok((None, num_traits::pow(c, exp as usize), 1))
}

impl FromStr for SparsePoly {
    type Err = PolyError;

    /// Parses sums of terms `coef * x_i_j^e * ...`; the printer output round-trips.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev = None;
        for (k, ch) in compact.chars().enumerate() {
            let splits = matches!(ch, '+' | '-') && !matches!(prev, None | Some('^') | Some('*') | Some('/'));
            if splits {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if k == 0 && ch == '-' {
                negative = true;
            } else if !(k == 0 && ch == '+') {
                current.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((negative, current));
        let mut out = SparsePoly::zero();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(PolyError::Parse("empty term".into()));
            }
            let mut coef = BigRational::one();
            let mut mono = Vec::new();
            for tok in body.split('*') {
                let (v, c, e) = parse_factor(tok)?;
                match v {
                    Some(v) => mono.push((v, e)),
                    None => coef *= c,
                }
            }
            if neg {
                coef = -coef;
            }
            out = &out + &SparsePoly::monomial(mono, coef);
        }
        Ok(out)
    }
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// An entry of a matrix being expanded: a constant or a variable.
#[derive(Debug, Clone, Copy)]
enum Cell {
    Const(i64),
    Var(Var),
}

fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn leibniz(n: usize, entry: impl Fn(usize, usize) -> Cell) -> SparsePoly {
    let mut out = SparsePoly::zero();
    for perm in (0..n).permutations(n) {
        let mut coef = permutation_sign(&perm);
        let mut mono = Vec::new();
        for (a, &b) in perm.iter().enumerate() {
            match entry(a, b) {
                Cell::Const(c) => coef *= c,
                Cell::Var(v) => mono.push((v, 1)),
            }
            if coef == 0 {
                break;
            }
        }
        if coef != 0 {
            out = &out + &SparsePoly::monomial(mono, int(coef));
        }
    }
    out
}

fn sym_var(a: usize, b: usize) -> Var {
    Var::x(a.min(b), a.max(b))
}

/// The minor of the model's generic matrix on the given rows and columns.
///
/// Det and SymDet take `(r+1)`-element selections of matrix indices. Rig
/// takes `(r+3)`-element selections of Cayley–Menger indices, where index 0
/// is the border and index `v ≥ 1` stands for vertex `v−1`; the fixed border
/// and diagonal entries are substituted.
pub fn minor_polynomial(family: Family, r: usize, rows: &[usize], cols: &[usize]) -> Result<SparsePoly, PolyError> {
    let expected = match family {
        Family::Det | Family::SymDet => r + 1,
        Family::Rig => r + 3,
        Family::BipRig => return Err(PolyError::Unsupported(family)),
    };
    if rows.len() != expected || cols.len() != expected {
        return Err(PolyError::SizeMismatch {
            expected,
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let poly = match family {
        Family::Det => leibniz(expected, |a, b| Cell::Var(Var::x(rows[a], cols[b]))),
        Family::SymDet => leibniz(expected, |a, b| Cell::Var(sym_var(rows[a], cols[b]))),
        _ => leibniz(expected, |a, b| match (rows[a], cols[b]) {
            (0, 0) => Cell::Const(0),
            (0, _) | (_, 0) => Cell::Const(1),
            (u, v) if u == v => Cell::Const(0),
            (u, v) => Cell::Var(sym_var(u - 1, v - 1)),
        }),
    };
    Ok(poly)
}

/// Binomial of an even cycle: product of alternate edges minus the product of
/// the others. Accepts bipartite masks, or symmetric masks without loops.
pub fn cycle_binomial(cycle: &Mask) -> Result<SparsePoly, PolyError> {
    let c = cycle.compact();
    let sym = c.is_symmetric_kind();
    let edges = c.edges();
    if edges.iter().any(|&(a, b)| sym && a == b) {
        return Err(PolyError::NotACycle);
    }
    // Vertices: rows as (0, i), columns as (1, j); symmetric masks use one side.
    let vid = |side: usize, k: usize| if sym { k } else { side * c.rows() + k };
    let nv = if sym { c.rows() } else { c.rows() + c.cols() };
    let mut adj: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); nv];
    for &(a, b) in &edges {
        adj[vid(0, a)].push((vid(1, b), (a, b)));
        adj[vid(1, b)].push((vid(0, a), (a, b)));
    }
    if edges.len() < 4 || edges.len() % 2 == 1 || adj.iter().any(|n| n.len() != 2) {
        return Err(PolyError::NotACycle);
    }
    let mut walk = Vec::with_capacity(edges.len());
    let (mut prev, mut at) = (usize::MAX, 0);
    for _ in 0..edges.len() {
        let &(next, e) = adj[at].iter().find(|&&(n, e)| n != prev || walk.last() != Some(&e)).unwrap();
        walk.push(e);
        prev = at;
        at = next;
    }
    if at != 0 || walk.iter().sorted().dedup().count() != edges.len() {
        return Err(PolyError::NotACycle);
    }
    let var_of = |(a, b): (usize, usize)| if sym { sym_var(a, b) } else { Var::x(a, b) };
    let even: Monomial = walk.iter().step_by(2).map(|&e| (var_of(e), 1)).sorted().collect();
    let odd: Monomial = walk.iter().skip(1).step_by(2).map(|&e| (var_of(e), 1)).sorted().collect();
    Ok(&SparsePoly::monomial(even, BigRational::one()) - &SparsePoly::monomial(odd, BigRational::one()))
}

/// True iff `f` vanishes at `trials` sampled points over every configured prime.
pub fn verify_vanishing(f: &SparsePoly, spec: &ModelSpec, oracle: &OracleConfig, trials: usize) -> Result<bool, PolyError> {
    for v in f.variables().into_iter().filter(|v| !v.hom) {
        spec.index_of(v.i, v.j).ok_or(PolyError::OutsideGround(v, *spec))?;
    }
    let jobs: Vec<(u64, usize)> = oracle
        .primes
        .iter()
        .flat_map(|&p| (0..trials).map(move |t| (p, t)))
        .collect();
    let results: Vec<Result<bool, PolyError>> = jobs
        .par_iter()
        .map(|&(p, t)| {
            let field = PrimeField::new(p)?;
            let seed = oracle.seed.wrapping_mul(0x9e37_79b9).wrapping_add(0x1000 + t as u64);
            let pt = sample_point(spec, field, seed);
            let value = f.eval_mod(field, |v| coordinate(spec, spec.index_of(v.i, v.j).unwrap(), &pt).unwrap())?;
            Ok(value == 0)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the support of a vanishing polynomial is a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVerdict {
    pub support_size: usize,
    pub support_is_circuit: bool,
    pub support_is_dependent: bool,
}

impl SupportVerdict {
    pub fn minimal(&self) -> bool {
        self.support_is_circuit
    }
}

pub fn support_minimality_check(f: &SparsePoly, oracle: &RankOracle) -> Result<SupportVerdict, PolyError> {
    let s = f.support(oracle.spec())?;
    Ok(SupportVerdict {
        support_size: s.count(),
        support_is_circuit: oracle.is_circuit(&s),
        support_is_dependent: oracle.is_dependent(&s),
    })
}

/// A relabeling of rows and columns; symmetric families use `rows` for both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Relabel {
    pub fn rows_only(rows: Vec<usize>, cols: usize) -> Self {
        Relabel {
            rows,
            cols: (0..cols).collect(),
        }
    }

    /// The transposition of rows `a` and `b` among `n` rows.
    pub fn row_swap(n: usize, a: usize, b: usize, cols: usize) -> Self {
        let mut rows: Vec<usize> = (0..n).collect();
        rows.swap(a, b);
        Self::rows_only(rows, cols)
    }
}

/// Result of acting on a polynomial with one relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Character {
    /// `σ(f) = c·f`.
    Unit(BigRational),
    NotProportional,
}

fn apply(f: &SparsePoly, g: &Relabel, symmetric: bool) -> Result<SparsePoly, PolyError> {
    let check = |k: usize, len: usize| if k < len { Ok(()) } else { Err(PolyError::IndexOutOfRange(k)) };
    for v in f.variables() {
        check(v.i, g.rows.len())?;
        check(v.j, if symmetric { g.rows.len() } else { g.cols.len() })?;
    }
    Ok(f.rename(|v| {
        if symmetric {
            let (a, b) = (g.rows[v.i], g.rows[v.j]);
            Var {
                hom: v.hom,
                i: a.min(b),
                j: a.max(b),
            }
        } else {
            Var {
                hom: v.hom,
                i: g.rows[v.i],
                j: g.cols[v.j],
            }
        }
    }))
}

/// For each relabeling, the unit `σ(f)/f`, or [`Character::NotProportional`].
pub fn symmetry_character(f: &SparsePoly, generators: &[Relabel], symmetric: bool) -> Result<Vec<Character>, PolyError> {
    let support: Vec<Var> = f.variables();
    let mut out = Vec::with_capacity(generators.len());
    for g in generators {
        let image = apply(f, g, symmetric)?;
        if image.variables() != support {
            return Err(PolyError::SupportNotFixed);
        }
        let Some((m, c)) = f.terms().next() else {
            out.push(Character::Unit(BigRational::one()));
            continue;
        };
        let ratio = image.coefficient(m) / c;
        out.push(if image == f.scale(&ratio) && !ratio.is_zero() {
            Character::Unit(ratio)
        } else {
            Character::NotProportional
        });
    }
    Ok(out)
}

/// Whether `c` is a root of unity of order dividing 6 (over the rationals,
/// that leaves ±1).
pub fn divides_six_root(c: &Character) -> bool {
    matches!(c, Character::Unit(u) if u.abs().is_one())
}
