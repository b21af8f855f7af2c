use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use graphsym::counting::CountTable;
use graphsym::enumeration::{enumerate_circuit_classes, signature_bounds, EnumerationOptions};
use graphsym::limits::{closed_form, growth_profile_one_sided, GrowthProfile, LimitOptions};
use graphsym::matroid::{complete_set, EdgeSet, OracleConfig, RankOracle};
use graphsym::models::{Family, ModelSpec};
use graphsym::moves::{find_move, t1_move, verify};
use graphsym::polykit::{SparsePoly, TopDegree, Var};
use graphsym::symmetry::{canonical_form, orbit_size, Mask};

const FAMILIES: [&str; 4] = ["det:4x5x2", "symdet:5x2", "rig:6x2", "biprig:4x5x2"];

fn oracle(spec: &str) -> &'static RankOracle {
    static ORACLES: OnceLock<Vec<(String, &'static RankOracle)>> = OnceLock::new();
    let all = ORACLES.get_or_init(|| {
        FAMILIES
            .iter()
            .chain(["det:4x4x2", "det:5x5x1", "biprig:5x5x2", "det:5x5x3"].iter())
            .map(|s| {
                let o: &'static RankOracle = Box::leak(Box::new(RankOracle::with_defaults(s.parse().unwrap())));
                (s.to_string(), o)
            })
            .collect()
    });
    all.iter().find(|(s, _)| s == spec).map(|(_, o)| *o).expect("oracle declared above")
}

fn subset(o: &RankOracle, bits: u64) -> EdgeSet {
    let len = o.ground_len();
    EdgeSet::from_indices(len, (0..len).filter(|k| bits >> k & 1 == 1))
}

fn profile(family: Family, r: usize, m: usize) -> GrowthProfile {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize, usize), GrowthProfile>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(family, r, m)) {
        return p.clone();
    }
    let p = growth_profile_one_sided(family, r, m, &LimitOptions::default()).unwrap();
    cache.lock().unwrap().insert((family, r, m), p.clone());
    p
}

fn bipartite_family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Det), Just(Family::BipRig)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_axioms(which in 0..4usize, a in any::<u64>(), b in any::<u64>(), e in 0..64usize) {
        let o = oracle(FAMILIES[which]);
        let (sa, sb) = (subset(o, a), subset(o, b));
        prop_assert_eq!(o.rank(&EdgeSet::empty(o.ground_len())), 0);
        let ra = o.rank(&sa);
        prop_assert!(ra <= sa.count());
        let e = e % o.ground_len();
        let grown = o.rank(&sa.with(e));
        prop_assert!(grown == ra || grown == ra + 1);
        prop_assert!(o.rank(&sa.union(&sb)) + o.rank(&sa.intersection(&sb)) <= ra + o.rank(&sb));
    }

    #[test]
    fn rank_is_invariant_under_relabeling(
        which in 0..4usize,
        bits in any::<u64>(),
        rows in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        cols in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let o = oracle(FAMILIES[which]);
        let spec = o.spec();
        let s = subset(o, bits);
        let mask = Mask::from_edge_set(spec, &s);
        let moved = if mask.is_symmetric_kind() {
            let p: Vec<usize> = rows.iter().copied().filter(|&v| v < spec.n()).collect();
            mask.permuted(&p, &p)
        } else {
            let rp: Vec<usize> = rows.iter().copied().filter(|&v| v < spec.m()).collect();
            let cp: Vec<usize> = cols.iter().copied().filter(|&v| v < spec.n()).collect();
            mask.permuted(&rp, &cp)
        };
        prop_assert_eq!(o.rank(&moved.to_edge_set(spec).unwrap()), o.rank(&s));
    }

    #[test]
    fn relative_rank_shrinks_as_the_base_grows(which in 0..4usize, a in any::<u64>(), s in any::<u64>(), extra in any::<u64>()) {
        let o = oracle(FAMILIES[which]);
        let (sa, small) = (subset(o, a), subset(o, s));
        let large = small.union(&subset(o, extra));
        let rel = o.relative_rank(&sa, &large);
        prop_assert!(rel <= o.relative_rank(&sa, &small));
        prop_assert!(rel <= sa.count());
    }

    #[test]
    fn circuits_have_high_degree_and_bounded_signature(
        which in prop_oneof![Just("det:4x5x2"), Just("biprig:4x5x2"), Just("det:5x5x1"), Just("biprig:5x5x2")],
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let o = oracle(which);
        let spec = *o.spec();
        let dense = subset(o, a | b);
        if let Some(c) = o.find_contained_circuit(&dense) {
            prop_assert!(o.is_circuit(&c));
            let mask = Mask::from_edge_set(&spec, &c).compact();
            let r = spec.r();
            for i in 0..mask.rows() {
                prop_assert!(mask.row_degree(i) > r);
            }
            for j in 0..mask.cols() {
                prop_assert!(mask.col_degree(j) > r);
            }
            let (k, l) = mask.signature();
            let (rho, kappa, alpha) = closed_form(spec.family(), r, Some(k)).unwrap();
            prop_assert!(l + rho * kappa <= alpha + 1, "signature ({}, {}) in {}", k, l, spec);
            let (rho, kappa, alpha) = closed_form(spec.family(), r, Some(l)).unwrap();
            prop_assert!(k + rho * kappa <= alpha + 1);
            prop_assert!(c.count() <= o.rank(&complete_set(&spec, k, l)) + 1);
        }
    }

    #[test]
    fn growth_is_monotone_and_settles(family in bipartite_family(), r in 1..=3usize, m in 1..=7usize) {
        let p = profile(family, r, m);
        prop_assert!(p.growth.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(p.rank_identity_holds());
        prop_assert_eq!(p.realization_rank, p.ranks[p.realization_size]);
        if p.realization_size > 0 {
            prop_assert!(p.growth[p.realization_size - 1] > p.average_rank);
        }
        prop_assert_eq!(p.closed_form_agrees(), Some(true));
    }

    #[test]
    fn fresh_column_entries_are_free_past_realization(
        family in bipartite_family(),
        r in 1..=3usize,
        m in 2..=6usize,
        offset in 0..2usize,
        rows in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        take in 0..=3usize,
    ) {
        let p = profile(family, r, m);
        let nu = p.realization_size + offset;
        let spec = ModelSpec::new(family, m, nu + 1, r).unwrap();
        let o = RankOracle::with_defaults(spec);
        let available = p.growth[nu];
        let chosen: Vec<usize> = rows.into_iter().filter(|&i| i < m).take(take.min(available)).collect();
        let fresh = EdgeSet::from_indices(spec.ground_len(), chosen.iter().map(|&i| spec.index_of(i, nu).unwrap()));
        prop_assert_eq!(o.relative_rank(&fresh, &complete_set(&spec, m, nu)), chosen.len());
    }
}

fn var_strategy() -> impl Strategy<Value = Var> {
    (0..3usize, 0..3usize).prop_map(|(i, j)| Var::x(i, j))
}

fn sparse_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (-5i64..=5, prop::collection::vec((var_strategy(), 1..=3u32), 0..4)),
        1..5,
    )
    .prop_map(|terms| {
        terms.into_iter().fold(SparsePoly::zero(), |acc, (c, mono)| {
            &acc + &SparsePoly::monomial(mono, BigRational::from_integer(BigInt::from(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn topdeg_of_products_adds(f in sparse_poly(), g in sparse_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).topdeg(), f.topdeg().sum(&g.topdeg()));
        let hp = &f.multihomogenize() * &g.multihomogenize();
        prop_assert!(hp.is_multihomogeneous());
        prop_assert_eq!(hp.paired_topdeg(), f.topdeg().sum(&g.topdeg()));
    }

    #[test]
    fn topdeg_of_sums_is_a_union(f in sparse_poly(), g in sparse_poly()) {
        let (hf, hg) = (f.multihomogenize(), g.multihomogenize());
        let sum = &hf + &hg;
        let union = hf.paired_topdeg().union(&hg.paired_topdeg());
        prop_assert!(sum.paired_topdeg().is_submultiset(&union));
        if hf.paired_topdeg() != hg.paired_topdeg() && !f.is_zero() && !g.is_zero() {
            prop_assert_eq!(sum.paired_topdeg(), union);
        }
    }

    #[test]
    fn homogenize_then_dehomogenize_is_identity(f in sparse_poly()) {
        let h = f.multihomogenize();
        prop_assert!(h.is_multihomogeneous());
        prop_assert_eq!(h.paired_topdeg(), f.topdeg());
        prop_assert_eq!(h.dehomogenize(), f);
    }

    #[test]
    fn printer_output_parses_back(f in sparse_poly()) {
        let back: SparsePoly = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn canonical_form_ignores_labels(
        bits in any::<u32>(),
        rows in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
        cols in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mut mask = Mask::bipartite(5, 5);
        for k in 0..25 {
            if bits >> k & 1 == 1 {
                mask.set(k / 5, k % 5, true);
            }
        }
        let mask = mask.compact();
        prop_assume!(mask.edge_count() > 0);
        let c = canonical_form(&mask).unwrap();
        let (k, l) = mask.signature();
        let rp: Vec<usize> = rows.into_iter().filter(|&v| v < k).collect();
        let cp: Vec<usize> = cols.into_iter().filter(|&v| v < l).collect();
        prop_assert_eq!(canonical_form(&mask.permuted(&rp, &cp)).unwrap(), c.clone());
        let placements: u128 = (1..=k as u128).product::<u128>() * (1..=l as u128).product::<u128>();
        prop_assert_eq!(orbit_size(&c, k, l).unwrap() * c.aut_order as u128, placements);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moves_on_complete_circuits_give_circuits(r in 1..=3usize, t_pick in 0..3usize, i in 0..4usize, j in 0..4usize) {
        let base = Mask::complete_bipartite(r + 1, r + 1);
        let t = 1 + t_pick % r;
        let edge = (i % (r + 1), j % (r + 1));
        let spec = find_move(&base, edge, t, r).unwrap();
        prop_assert!(spec.validate(r).is_ok());
        let out = t1_move(&spec, r).unwrap();
        prop_assert_eq!(out.edge_count(), base.edge_count() + r + r * t);
        let verdict = verify(&out, r, &OracleConfig::default()).unwrap();
        prop_assert!(verdict.is_circuit);
        prop_assert_eq!(verdict.signature, (r + 2, r + 1 + t));
    }
}

#[test]
fn enumerated_classes_respect_the_signature_box() {
    for spec in ["det:5x5x2", "det:5x7x3", "biprig:4x6x2", "det:5x5x1"] {
        let spec: ModelSpec = spec.parse().unwrap();
        let o = RankOracle::with_defaults(spec);
        let e = enumerate_circuit_classes(&o, &signature_bounds(&spec), &EnumerationOptions::default());
        for c in &e.classes {
            let (k, l) = c.signature;
            let (rho, kappa, alpha) = closed_form(spec.family(), spec.r(), Some(k)).unwrap();
            assert!(l + rho * kappa <= alpha + 1, "{spec} {:?}", c.signature);
            assert!(c.edge_count <= o.rank(&complete_set(&spec, k, l)) + 1);
        }
    }
}

#[test]
fn orbit_sums_equal_beta_times_placements() {
    for spec in ["det:5x5x2", "det:5x7x3", "biprig:4x6x2", "rig:6x2", "symdet:5x1"] {
        let spec: ModelSpec = spec.parse().unwrap();
        let o = RankOracle::with_defaults(spec);
        let e = enumerate_circuit_classes(&o, &signature_bounds(&spec), &EnumerationOptions::default());
        let table = CountTable::from_enumeration(&e, &spec);
        for (&(k, l), _) in &table.entries {
            let symmetric = table.symmetric;
            let orbit_sum: u128 = e
                .at((k, l))
                .iter()
                .map(|c| orbit_size(&c.canonical(), k, if symmetric { k } else { l }).unwrap())
                .sum();
            let fact = |n: usize| (1..=n as u64).map(BigInt::from).product::<BigInt>();
            let placements = if symmetric { fact(k) } else { fact(k) * fact(l) };
            let expected = table.beta((k, l)) * BigRational::from_integer(placements);
            assert!(!expected.is_zero());
            assert_eq!(BigRational::from_integer(BigInt::from(orbit_sum)), expected, "{spec} ({k},{l})");
        }
    }
}

#[test]
fn topdeg_union_and_sum_of_disjoint_supports() {
    let x = TopDegree([(Var::x(0, 0), 2)].into_iter().collect());
    let y = TopDegree([(Var::x(0, 1), 1)].into_iter().collect());
    assert_eq!(x.sum(&y), x.union(&y));
    assert_eq!(x.sum(&x).degree(Var::x(0, 0)), 4);
    assert_eq!(x.union(&x), x);
}
