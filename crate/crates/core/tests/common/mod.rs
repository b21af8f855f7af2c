//! A second, deliberately naive rank oracle: its own parametrizations, its
//! own random stream, its own elimination. Nothing here calls into the
//! library's field or model code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;

pub const PRIME: u64 = 4_294_967_291;

pub struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn subm(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    acc
}

/// Rank of a dense matrix over `F_PRIME` by plain row reduction.
pub fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = powm(rows[rank][c], PRIME - 2);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = mulm(rows[i][c], inv);
                for k in c..cols {
                    let v = mulm(f, rows[rank][k]);
                    rows[i][k] = subm(rows[i][k], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Det,
    SymDet,
    Rig,
    BipRig,
}

/// Ground set as ordered pairs, matching the library's index order.
#[derive(Debug, Clone)]
pub struct Naive {
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub ground: Vec<(usize, usize)>,
}

impl Naive {
    pub fn new(kind: Kind, m: usize, n: usize, r: usize) -> Self {
        let ground = match kind {
            Kind::Det | Kind::BipRig => (0..m).cartesian_product(0..n).collect(),
            Kind::SymDet => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect(),
            Kind::Rig => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        };
        Naive { kind, m, n, r, ground }
    }

    fn vertices(&self) -> (usize, usize) {
        match self.kind {
            Kind::Det | Kind::BipRig => (self.m, self.n),
            Kind::SymDet | Kind::Rig => (self.n, 0),
        }
    }

    /// Jacobian rows of every ground element at one random point.
    pub fn jacobian(&self, rng: &mut SplitMix) -> Vec<Vec<u64>> {
        let (a, b) = self.vertices();
        let r = self.r;
        let first: Vec<Vec<u64>> = (0..a).map(|_| (0..r).map(|_| rng.below(PRIME)).collect()).collect();
        let second: Vec<Vec<u64>> = (0..b).map(|_| (0..r).map(|_| rng.below(PRIME)).collect()).collect();
        let width = (a + b) * r;
        self.ground
            .iter()
            .map(|&(i, j)| {
                let mut row = vec![0u64; width];
                for k in 0..r {
                    match self.kind {
                        Kind::Det => {
                            row[i * r + k] = second[j][k];
                            row[(a + j) * r + k] = first[i][k];
                        }
                        Kind::BipRig => {
                            let d = subm(first[i][k], second[j][k]);
                            row[i * r + k] = mulm(2, d);
                            row[(a + j) * r + k] = subm(0, mulm(2, d));
                        }
                        Kind::SymDet => {
                            row[i * r + k] = (row[i * r + k] + first[j][k]) % PRIME;
                            row[j * r + k] = (row[j * r + k] + first[i][k]) % PRIME;
                        }
                        Kind::Rig => {
                            let d = subm(first[i][k], first[j][k]);
                            row[i * r + k] = mulm(2, d);
                            row[j * r + k] = subm(0, mulm(2, d));
                        }
                    }
                }
                row
            })
            .collect()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.ground.iter().position(|&e| e == (i, j)).expect("pair in ground set")
    }
}

/// Ranks of every subset of a small ground set, as the maximum over `points`
/// random Jacobians.
pub fn all_subset_ranks(model: &Naive, points: usize, seed: u64) -> Vec<usize> {
    let len = model.ground.len();
    assert!(len <= 20);
    let mut rng = SplitMix::new(seed);
    let jacobians: Vec<Vec<Vec<u64>>> = (0..points).map(|_| model.jacobian(&mut rng)).collect();
    (0..1usize << len)
        .map(|bits| {
            jacobians
                .iter()
                .map(|jac| rank_mod((0..len).filter(|k| bits >> k & 1 == 1).map(|k| jac[k].clone()).collect()))
                .max()
                .unwrap()
        })
        .collect()
}

/// Labeled circuits read off a full subset-rank table.
pub fn circuits_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let len = ranks.len().trailing_zeros() as usize;
    (1..ranks.len())
        .filter(|&s| {
            let size = s.count_ones() as usize;
            ranks[s] < size && (0..len).filter(|k| s >> k & 1 == 1).all(|k| ranks[s & !(1 << k)] == size - 1)
        })
        .collect()
}

/// Stabilizer order by trying every permutation.
pub fn brute_stabilizer(edges: &[(usize, usize)], rows: usize, cols: usize, symmetric: bool) -> u64 {
    let set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let norm = |a: usize, b: usize| if symmetric { (a.min(b), a.max(b)) } else { (a, b) };
    let mut count = 0;
    for rp in (0..rows).permutations(rows) {
        if symmetric {
            if edges.iter().all(|&(a, b)| set.contains(&norm(rp[a], rp[b]))) {
                count += 1;
            }
            continue;
        }
        for cp in (0..cols).permutations(cols) {
            if edges.iter().all(|&(a, b)| set.contains(&(rp[a], cp[b]))) {
                count += 1;
            }
        }
    }
    count
}
