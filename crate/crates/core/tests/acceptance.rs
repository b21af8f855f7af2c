//! One line per acceptance criterion. A criterion passes when every check in
//! it passes. A few checks compare against published values that the oracle
//! contradicts; those print as FAIL with the reason, and the process only
//! exits non-zero when a check fails that is not on that list, or when a
//! listed check starts passing.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphsym::counting::{total_circuits, total_circuits_symmetric, CountTable};
use graphsym::enumeration::{enumerate_circuit_classes, signature_bounds, Enumeration, EnumerationOptions};
use graphsym::limits::{
    closed_form, elementary_circuit, growth_profile_one_sided, two_sided_profile, LimitOptions,
};
use graphsym::matroid::{complete_set, EdgeSet, OracleConfig, RankOracle};
use graphsym::models::{Family, ModelSpec};
use graphsym::moves::{find_move, iterate_r1_moves, st_move_counterexample, t1_move, verify};
use graphsym::polykit::{
    cycle_binomial, minor_polynomial, support_minimality_check, symmetry_character, verify_vanishing, Character,
    Relabel, SparsePoly, Var,
};
use graphsym::symmetry::{canonical_form, Mask};

/// Checks whose published target disagrees with the oracle, with the reason.
const KNOWN_CONFLICTS: &[(&str, &str)] = &[
    (
        "BipRig(4,n,2) stabilizer orders",
        "the printed (S(2))^2 for one (4,6) mask; the partition (3,2,1) complement has stabilizer S(3)xS(2) of order 12, confirmed by permutation search",
    ),
    (
        "one-sided BipRig r=3 m=5",
        "K_{5,5} is already rigid in dimension 3, so growth settles at 5 columns, not 6",
    ),
    ("one-sided BipRig r=3 m=6", "growth settles at 4 columns, not 6"),
    ("one-sided BipRig r=3 m=7", "growth settles at 4 columns, not 6"),
];

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let pass = got == want;
        self.check(name, pass, format!("got {got:?}, want {want:?}"));
    }
}

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn spec(s: &str) -> ModelSpec {
    s.parse().expect("valid model string")
}

fn enumerate(s: &ModelSpec) -> Enumeration {
    let o = RankOracle::with_defaults(*s);
    enumerate_circuit_classes(&o, &signature_bounds(s), &EnumerationOptions::default())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn stabilizers(e: &Enumeration, sig: (usize, usize)) -> Vec<u64> {
    let mut v: Vec<u64> = e.at(sig).iter().map(|c| c.aut_order).collect();
    v.sort_unstable();
    v
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let mut slowest = Duration::ZERO;
    let mut timed_rank = |s: ModelSpec| {
        let start = Instant::now();
        let rank = RankOracle::with_defaults(s).full_rank();
        slowest = slowest.max(start.elapsed());
        rank
    };
    let mut det_bad = Vec::new();
    for r in 1..=3 {
        for m in r..=6 {
            for n in r..=6 {
                let got = timed_rank(ModelSpec::det(m, n, r).unwrap());
                if got != r * (m + n - r) {
                    det_bad.push((m, n, r, got));
                }
            }
        }
    }
    c.check("Det full ranks r(m+n-r)", det_bad.is_empty(), format!("mismatches {det_bad:?}"));
    let mut rig_bad = Vec::new();
    for r in 1..=3 {
        for n in r.max(2)..=7 {
            let got = timed_rank(ModelSpec::rig(n, r).unwrap());
            if got != r * n - binom(r + 1, 2) {
                rig_bad.push((n, r, got));
            }
        }
    }
    c.check("Rig full ranks rn-C(r+1,2)", rig_bad.is_empty(), format!("mismatches {rig_bad:?}"));
    c.eq("Rig(5,2) full rank", timed_rank(spec("rig:5x2")), 7);
    c.eq("BipRig(4,4,2) full rank", timed_rank(spec("biprig:4x4x2")), 13);
    c.eq("SymDet(4,2) full rank", timed_rank(spec("symdet:4x2")), 7);
    c.check("each rank under 1 s", slowest < Duration::from_secs(1), format!("slowest {slowest:?}"));
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();

    let rank_one = enumerate(&spec("det:5x5x1"));
    let sigs: Vec<_> = rank_one.classes.iter().map(|k| k.signature).collect();
    let cycles = rank_one.classes.iter().all(|k| {
        let m = &k.mask;
        (0..m.rows()).all(|i| m.row_degree(i) == 2) && (0..m.cols()).all(|j| m.col_degree(j) == 2) && {
            let o = RankOracle::with_defaults(ModelSpec::det(m.rows(), m.cols(), 1).unwrap());
            o.is_circuit(&m.to_edge_set(o.spec()).unwrap())
        }
    });
    c.eq("Det(.,.,1) signatures", sigs, vec![(2, 2), (3, 3), (4, 4), (5, 5)]);
    c.check("Det(.,.,1) classes are cycles", cycles, "every vertex has degree 2");

    let d552 = enumerate(&spec("det:5x5x2"));
    let census: BTreeMap<(usize, usize), Vec<u64>> = [(3, 3), (4, 4), (4, 5), (5, 4), (5, 5)]
        .into_iter()
        .map(|s| (s, stabilizers(&d552, s)))
        .collect();
    let want: BTreeMap<(usize, usize), Vec<u64>> = [
        ((3, 3), vec![36]),
        ((4, 4), vec![6]),
        ((4, 5), vec![8, 12]),
        ((5, 4), vec![8, 12]),
        ((5, 5), vec![1, 1, 2, 2, 4, 4, 8, 12, 12, 12, 16, 32]),
    ]
    .into_iter()
    .collect();
    c.eq("Det(5,5,2) census with stabilizers", census, want);
    c.eq("Det(5,5,2) total classes", d552.classes.len(), 18);

    let d573 = enumerate(&spec("det:5x7x3"));
    let counts: Vec<usize> = [(4, 4), (5, 5), (5, 6), (5, 7)].iter().map(|&s| d573.at(s).len()).collect();
    c.eq("Det(5,n,3) class counts", counts, vec![1, 1, 3, 6]);

    c.eq("Rig(5,2) classes", enumerate(&spec("rig:5x2")).classes.len(), 2);

    let br = enumerate(&spec("biprig:4x6x2"));
    let upper = |s: (usize, usize)| s.0 <= s.1;
    let br_counts: Vec<((usize, usize), usize)> = [(3, 4), (4, 4), (4, 5), (4, 6)]
        .into_iter()
        .map(|s| (s, br.at(s).len()))
        .collect();
    c.eq(
        "BipRig(4,n,2) class counts",
        br_counts,
        vec![((3, 4), 1), ((4, 4), 1), ((4, 5), 3), ((4, 6), 5)],
    );
    c.check(
        "BipRig(4,n,2) has no other k<=l signatures",
        br.classes.iter().filter(|k| upper(k.signature)).all(|k| k.signature.0 >= 3),
        "",
    );
    let br_stabs: Vec<Vec<u64>> = [(3, 4), (4, 4), (4, 5), (4, 6)].iter().map(|&s| stabilizers(&br, s)).collect();
    c.eq(
        "BipRig(4,n,2) stabilizer orders",
        br_stabs,
        vec![vec![144], vec![8], vec![4, 16, 24], vec![4, 16, 36, 48, 144]],
    );

    let sd = enumerate(&spec("symdet:5x1"));
    c.eq("SymDet(5,1) classes", sd.classes.len(), 10);
    let sd_stabs: Vec<Vec<u64>> = (2..=5).map(|k| stabilizers(&sd, (k, k))).collect();
    c.eq(
        "SymDet(5,1) stabilizers",
        sd_stabs,
        vec![vec![2], vec![2, 2], vec![2, 2, 8], vec![2, 2, 2, 8]],
    );
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let bip_total = |s: &str| {
        let sp = spec(s);
        let t = CountTable::from_enumeration(&enumerate(&sp), &sp);
        total_circuits(&t, sp.m(), sp.n()).map(|x| x.to_string()).unwrap_or_else(|e| e.to_string())
    };
    let closed_d4n2 = |n: usize| 4 * binom(n, 3) + 96 * binom(n, 4) + 840 * binom(n, 5);
    let closed_d5n3 = |n: usize| 5 * binom(n, 4) + 600 * binom(n, 5) + 13_320 * binom(n, 6) + 65_100 * binom(n, 7);
    c.eq("Det(5,5,2) total", bip_total("det:5x5x2"), "65650".to_string());
    c.eq("Det(4,4,2) total", bip_total("det:4x4x2"), closed_d4n2(4).to_string());
    c.eq("Det(4,4,2) closed form", closed_d4n2(4), 112);
    c.eq("Det(5,5,3) total", bip_total("det:5x5x3"), closed_d5n3(5).to_string());
    c.eq("Det(5,5,3) closed form", closed_d5n3(5), 625);
    let rig = spec("rig:6x2");
    let rig_table = CountTable::from_enumeration(&enumerate(&rig), &rig);
    c.eq(
        "Rig(6,2) total",
        total_circuits_symmetric(&rig_table, 6).map(|x| x.to_string()).ok(),
        Some("642".to_string()),
    );

    let r2 = spec("det:5x5x2");
    let t2 = CountTable::from_enumeration(&enumerate(&r2), &r2);
    let betas2: Vec<BigRational> = [(3, 3), (4, 4), (4, 5), (5, 5)].iter().map(|&s| t2.beta(s)).collect();
    c.eq(
        "beta table r=2",
        betas2,
        vec![rational(1, 36), rational(1, 6), rational(5, 24), rational(127, 32)],
    );
    let r3 = spec("det:5x7x3");
    let t3 = CountTable::from_enumeration(&enumerate(&r3), &r3);
    let betas3: Vec<BigRational> = [(4, 4), (5, 5), (5, 6), (5, 7)].iter().map(|&s| t3.beta(s)).collect();
    c.eq(
        "beta table r=3",
        betas3,
        vec![rational(1, 576), rational(1, 24), rational(37, 240), rational(31, 288)],
    );
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let opts = LimitOptions::default();
    for r in 1..=3 {
        for m in r + 1..=7 {
            let p = growth_profile_one_sided(Family::Det, r, m, &opts).unwrap();
            c.eq(
                format!("one-sided Det r={r} m={m}"),
                (p.average_rank, p.realization_size, p.realization_rank),
                (r, r, r * m),
            );
            let p = growth_profile_one_sided(Family::BipRig, r, m, &opts).unwrap();
            c.eq(
                format!("one-sided BipRig r={r} m={m}"),
                (p.average_rank, p.realization_size, p.realization_rank),
                (r, binom(r + 1, 2), r * m + 3 * binom(r + 1, 3)),
            );
        }
    }
    for r in 1..=3 {
        let p = two_sided_profile(Family::Det, r, &opts).unwrap();
        c.eq(
            format!("two-sided Det r={r}"),
            (p.minimal_realizing.clone(), p.realization_rank),
            (vec![(r + 1, r + 1)], r * r),
        );
    }
    let p = two_sided_profile(Family::BipRig, 3, &opts).unwrap();
    for corner in [(7, 4), (5, 5), (4, 7)] {
        let inside = p.minimal_realizing.contains(&corner);
        let o = RankOracle::with_defaults(ModelSpec::biprig(corner.0, corner.1, 3).unwrap());
        let circuit = o.is_circuit(&EdgeSet::full(o.ground_len()));
        c.check(
            format!("two-sided BipRig r=3 corner {corner:?}"),
            inside && circuit,
            format!("in boundary {inside}, K circuit {circuit}, boundary {:?}", p.minimal_realizing),
        );
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    for r in 1..=3 {
        let o = RankOracle::with_defaults(ModelSpec::det(r + 1, r + 1, r).unwrap());
        c.check(
            format!("K_{{{0},{0}}} circuit of Det r={r}", r + 1),
            o.is_circuit(&EdgeSet::full(o.ground_len())),
            "",
        );
        let p = growth_profile_one_sided(Family::Det, r, r + 2, &LimitOptions::default()).unwrap();
        let ec = elementary_circuit(&p, &cfg()).unwrap();
        c.check(
            format!("Det r={r} elementary circuit from the profile"),
            ec.verified && ec.signature == (r + 1, r + 1),
            format!("{:?} verified {}", ec.signature, ec.verified),
        );
        let rows = binom(r + 1, 2) + 1;
        for (a, b) in [(rows, r + 1), (r + 1, rows)] {
            let o = RankOracle::with_defaults(ModelSpec::biprig(a, b, r).unwrap());
            c.check(
                format!("K_{{{a},{b}}} circuit of BipRig r={r}"),
                o.is_circuit(&EdgeSet::full(o.ground_len())),
                "",
            );
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    let base = Mask::complete_bipartite(3, 3);
    let mv = find_move(&base, (0, 0), 2, 2).unwrap();
    let out = t1_move(&mv, 2).unwrap();
    let verdict = verify(&out, 2, &cfg()).unwrap();
    let canon = canonical_form(&out.compact()).unwrap();
    let in_table = enumerate(&spec("det:5x5x2")).at((4, 5)).iter().any(|k| k.canonical() == canon);
    c.check(
        "(2,1)-move on K_{3,3}",
        verdict.is_circuit && verdict.signature == (4, 5) && in_table,
        format!("{verdict:?}, class in (4,5) list {in_table}"),
    );
    let ce = st_move_counterexample(&cfg()).unwrap();
    c.check(
        "(2,2)-move basis of D(5x5,2)",
        ce.is_basis && ce.edges == 16 && ce.defect_change == -1,
        format!("edges {} rank {} basis {}", ce.edges, ce.full_rank, ce.is_basis),
    );
    for r in 1..=3 {
        let chain = iterate_r1_moves(r, 2, &cfg()).unwrap();
        for (k, m) in chain.iter().enumerate() {
            let v = verify(m, r, &cfg()).unwrap();
            let rows = r + 1 + k;
            let bound = r * (rows - r) + 1;
            c.check(
                format!("(r,1)-move r={r} k={k}"),
                v.is_circuit && v.signature == (rows, r + 1 + r * k) && v.signature.1 == bound,
                format!("{:?} circuit {} bound {bound}", v.signature, v.is_circuit),
            );
        }
    }
    c
}

fn random_subset(rng: &mut ChaCha8Rng, len: usize) -> EdgeSet {
    let density = rng.gen_range(0.2..0.9);
    EdgeSet::from_indices(len, (0..len).filter(|_| rng.gen_bool(density)))
}

fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 1000;
    for model in ["det:4x5x2", "biprig:4x5x2", "symdet:5x2", "rig:6x2"] {
        let sp = spec(model);
        let o = RankOracle::with_defaults(sp);
        let len = o.ground_len();
        let (mut submod, mut sym, mut deg, mut sig) = (0, 0, 0, 0);
        for _ in 0..cases {
            let a = random_subset(&mut rng, len);
            let b = random_subset(&mut rng, len);
            if o.rank(&a.union(&b)) + o.rank(&a.intersection(&b)) > o.rank(&a) + o.rank(&b) {
                submod += 1;
            }
            let mask = Mask::from_edge_set(&sp, &a);
            let moved = if mask.is_symmetric_kind() {
                let p = shuffled(&mut rng, sp.n());
                mask.permuted(&p, &p)
            } else {
                mask.permuted(&shuffled(&mut rng, sp.m()), &shuffled(&mut rng, sp.n()))
            };
            if o.rank(&moved.to_edge_set(&sp).unwrap()) != o.rank(&a) {
                sym += 1;
            }
            if sp.family().is_bipartite() {
                if let Some(circ) = o.find_contained_circuit(&a.union(&b)) {
                    let m = Mask::from_edge_set(&sp, &circ).compact();
                    let r = sp.r();
                    if (0..m.rows()).any(|i| m.row_degree(i) <= r) || (0..m.cols()).any(|j| m.col_degree(j) <= r) {
                        deg += 1;
                    }
                    let (k, l) = m.signature();
                    let (rho, kappa, alpha) = closed_form(sp.family(), r, Some(k)).unwrap();
                    if l + rho * kappa > alpha + 1 {
                        sig += 1;
                    }
                }
            }
        }
        c.eq(format!("{model} submodularity failures in {cases}"), submod, 0);
        c.eq(format!("{model} relabeling failures in {cases}"), sym, 0);
        if sp.family().is_bipartite() {
            c.eq(format!("{model} circuit degree failures in {cases}"), deg, 0);
            c.eq(format!("{model} circuit signature failures in {cases}"), sig, 0);
        }
    }
    let opts = LimitOptions::default();
    let (mut mono, mut extension, mut checked) = (0, 0, 0);
    for family in [Family::Det, Family::BipRig] {
        for r in 1..=3 {
            for m in 1..=7 {
                let p = growth_profile_one_sided(family, r, m, &opts).unwrap();
                if !p.growth.windows(2).all(|w| w[0] >= w[1]) {
                    mono += 1;
                }
                let nu = p.realization_size;
                let sp = ModelSpec::new(family, m, nu + 1, r).unwrap();
                let o = RankOracle::with_defaults(sp);
                let whole = complete_set(&sp, m, nu);
                for _ in 0..1000 / 42 + 1 {
                    let take = rng.gen_range(0..=p.growth[nu]);
                    let rows: Vec<usize> = shuffled(&mut rng, m).into_iter().take(take).collect();
                    let t = EdgeSet::from_indices(sp.ground_len(), rows.iter().map(|&i| sp.index_of(i, nu).unwrap()));
                    checked += 1;
                    if o.relative_rank(&t, &whole) != take {
                        extension += 1;
                    }
                }
            }
        }
    }
    c.eq("growth monotonicity failures over 42 one-sided limits", mono, 0);
    c.check(
        "fresh-column extension identity",
        extension == 0 && checked >= 1000,
        format!("{extension} failures in {checked} cases"),
    );
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let sp = spec("det:3x3x1");
    let naive = common::Naive::new(common::Kind::Det, 3, 3, 1);
    let ranks = common::all_subset_ranks(&naive, 200, 0x2545_f491);
    let o = RankOracle::with_defaults(sp);
    let mismatches = (0..512usize)
        .filter(|&bits| o.rank(&EdgeSet::from_indices(9, (0..9).filter(|k| bits >> k & 1 == 1))) != ranks[bits])
        .count();
    c.eq("Det(3,3,1) rank function mismatches over 512 subsets", mismatches, 0);

    let sp = spec("det:4x4x2");
    let naive = common::Naive::new(common::Kind::Det, 4, 4, 2);
    let labeled = common::circuits_from_ranks(&common::all_subset_ranks(&naive, 2, 0xb7e1_5163));
    let table = CountTable::from_enumeration(&enumerate(&sp), &sp);
    let total = total_circuits(&table, 4, 4).unwrap();
    c.eq("Det(4,4,2) labeled circuits, brute force vs classes", BigInt::from(labeled.len()), total);
    let o = RankOracle::with_defaults(sp);
    let all_confirmed = labeled
        .iter()
        .all(|&bits| o.is_circuit(&EdgeSet::from_indices(16, (0..16).filter(|k| bits >> k & 1 == 1))));
    c.check("every brute-force circuit confirmed by the library", all_confirmed, "");
    let elapsed = start.elapsed();
    c.check("runtime under 5 minutes", elapsed < Duration::from_secs(300), format!("{elapsed:?}"));
    c
}

fn random_poly(rng: &mut ChaCha8Rng) -> SparsePoly {
    let mut f = SparsePoly::zero();
    for _ in 0..rng.gen_range(1..5) {
        let mono: Vec<(Var, u32)> = (0..rng.gen_range(0..4))
            .map(|_| (Var::x(rng.gen_range(0..3), rng.gen_range(0..3)), rng.gen_range(1..=3)))
            .collect();
        let coef = BigRational::from_integer(BigInt::from(rng.gen_range(-5i64..=5)));
        f = &f + &SparsePoly::monomial(mono, coef);
    }
    f
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let config = cfg();
    let evaluations = 200;

    for r in 1..=3 {
        let sp = ModelSpec::det(r + 2, r + 2, r).unwrap();
        let idx: Vec<usize> = (0..=r).collect();
        let shifted: Vec<usize> = (1..=r + 1).collect();
        for (rows, cols) in [(idx.clone(), idx.clone()), (shifted.clone(), idx.clone())] {
            let f = minor_polynomial(Family::Det, r, &rows, &cols).unwrap();
            let sized = ModelSpec::det(r + 2, r + 2, r).unwrap();
            let vanishes = verify_vanishing(&f, &sized, &config, evaluations).unwrap();
            let minimal = support_minimality_check(&f, &RankOracle::with_defaults(sp)).unwrap().minimal();
            c.check(
                format!("Det r={r} minor rows {rows:?} cols {cols:?}"),
                vanishes && minimal,
                format!("vanishes {vanishes}, support minimal {minimal}"),
            );
        }
    }
    for r in 1..=2 {
        let sp = ModelSpec::symdet(r + 2, r).unwrap();
        let f = minor_polynomial(Family::SymDet, r, &(0..=r).collect::<Vec<_>>(), &(1..=r + 1).collect::<Vec<_>>())
            .unwrap();
        c.check(
            format!("SymDet r={r} minor vanishes"),
            verify_vanishing(&f, &sp, &config, evaluations).unwrap(),
            "",
        );
    }
    for r in 1..=2 {
        let sp = ModelSpec::rig(r + 3, r).unwrap();
        let all: Vec<usize> = (0..r + 3).collect();
        let f = minor_polynomial(Family::Rig, r, &all, &all).unwrap();
        let vanishes = verify_vanishing(&f, &sp, &config, evaluations).unwrap();
        let o = RankOracle::with_defaults(ModelSpec::rig(r + 2, r).unwrap());
        let minimal = support_minimality_check(&f, &o).unwrap().minimal();
        c.check(
            format!("Cayley-Menger minor r={r}"),
            vanishes && minimal,
            format!("vanishes {vanishes}, support is K_{} circuit {minimal}", r + 2),
        );
    }
    for k in 2..=5 {
        let mut cycle = Mask::bipartite(k, k);
        for i in 0..k {
            cycle.set(i, i, true);
            cycle.set(i, (i + 1) % k, true);
        }
        let f = cycle_binomial(&cycle).unwrap();
        let sp = ModelSpec::det(k, k, 1).unwrap();
        let vanishes = verify_vanishing(&f, &sp, &config, evaluations).unwrap();
        let minimal = support_minimality_check(&f, &RankOracle::with_defaults(sp)).unwrap().minimal();
        let ones = f.topdeg().0.len() == 2 * k && f.topdeg().0.values().all(|&d| d == 1);
        c.check(
            format!("C_{} binomial", 2 * k),
            vanishes && minimal && ones,
            format!("vanishes {vanishes}, minimal {minimal}, top-degree all ones {ones}"),
        );
    }
    let mut square = Mask::symmetric(4, true);
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
        square.set(a, b, true);
    }
    let f = cycle_binomial(&square).unwrap();
    c.check(
        "symmetric C_4 binomial vanishes on SymDet rank 1",
        verify_vanishing(&f, &ModelSpec::symdet(4, 1).unwrap(), &config, evaluations).unwrap(),
        "",
    );

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut lemma_failures = 0;
    for _ in 0..100 {
        let (f, g) = (random_poly(&mut rng), random_poly(&mut rng));
        let (hf, hg) = (f.multihomogenize(), g.multihomogenize());
        if hf.dehomogenize() != f || !hf.is_multihomogeneous() {
            lemma_failures += 1;
        }
        if !f.is_zero() && !g.is_zero() && (&hf * &hg).paired_topdeg() != f.topdeg().sum(&g.topdeg()) {
            lemma_failures += 1;
        }
        let union = hf.paired_topdeg().union(&hg.paired_topdeg());
        let sum = (&hf + &hg).paired_topdeg();
        if !sum.is_submultiset(&union)
            || (!f.is_zero() && !g.is_zero() && hf.paired_topdeg() != hg.paired_topdeg() && sum != union)
        {
            lemma_failures += 1;
        }
    }
    c.eq("top-degree and homogenization identities, failures in 100", lemma_failures, 0);

    let mut sign_ok = true;
    for n in 2..=4 {
        let idx: Vec<usize> = (0..n).collect();
        let d = minor_polynomial(Family::Det, n - 1, &idx, &idx).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                let row = Relabel::row_swap(n, a, b, n);
                let col = Relabel {
                    rows: idx.clone(),
                    cols: Relabel::row_swap(n, a, b, n).rows,
                };
                let both = Relabel {
                    rows: row.rows.clone(),
                    cols: col.cols.clone(),
                };
                let got = symmetry_character(&d, &[row, col, both], false).unwrap();
                let minus = Character::Unit(-BigRational::from_integer(1.into()));
                let plus = Character::Unit(BigRational::from_integer(1.into()));
                sign_ok &= got == vec![minus.clone(), minus, plus];
            }
        }
    }
    c.check("determinant character is the sign under row and column swaps", sign_ok, "");
    c
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Criterion); 9] = [
        (1, "rank formulas", criterion_1),
        (2, "circuit dictionaries", criterion_2),
        (3, "counting", criterion_3),
        (4, "limit invariants", criterion_4),
        (5, "elementary circuits", criterion_5),
        (6, "moves", criterion_6),
        (7, "matroid axioms and structural properties", criterion_7),
        (8, "brute-force oracle equivalence", criterion_8),
        (9, "polynomial kit", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (number, title, run) in criteria {
        let start = Instant::now();
        let result = run();
        let failed: Vec<&Check> = result.checks.iter().filter(|k| !k.pass).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {number}: {status} {title} ({} of {} checks, {:.1?})",
            result.checks.len() - failed.len(),
            result.checks.len(),
            start.elapsed()
        );
        for k in &failed {
            match KNOWN_CONFLICTS.iter().find(|(name, _)| *name == k.name) {
                Some((_, why)) => println!("    conflict: {}: {} ({why})", k.name, k.detail),
                None => {
                    println!("    failed: {}: {}", k.name, k.detail);
                    unexpected.push(k.name.clone());
                }
            }
        }
        for k in result.checks.iter().filter(|k| k.pass) {
            if KNOWN_CONFLICTS.iter().any(|(name, _)| *name == k.name) {
                println!("    now passing, remove from the conflict list: {}", k.name);
                unexpected.push(k.name.clone());
            }
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected results: {unexpected:?}");
        ExitCode::FAILURE
    }
}
