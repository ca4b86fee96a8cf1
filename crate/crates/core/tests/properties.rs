use std::collections::BTreeSet;

use cellres_core::chain::{build_bipartite_complex, extension, BasisTag};
use cellres_core::complex::LabeledComplex;
use cellres_core::criteria::{
    betti_formula, lcm_oracle, lcm_oracle_with_order, koszul_betti, lcm_lattice, theorem_all_choices,
    theorem_predicate, ScanOrder,
};
use cellres_core::graph::{EdgeWeighting, Side};
use cellres_core::homology::{reduced_homology, strand, Characteristic, IntegerMatrix};
use cellres_core::monomial::Monomial;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn ew(rows: &[&[u32]]) -> EdgeWeighting {
    EdgeWeighting::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

// Every nonzero entry removing a_i from A carries X_{a_i}; removing b_j carries Y_{b_j}.
fn assert_structural(w: &EdgeWeighting) {
    let f = build_bipartite_complex(&w.labels());
    assert!(f.compose_is_zero().unwrap().is_ok(), "{w}");
    assert!(f.is_minimal().is_ok(), "{w}");
    assert!(f.check_multigraded().is_ok(), "{w}");
    for d in 2..f.len() {
        let m = f.differential(d).unwrap();
        for (r, c, e) in m.nonzero() {
            let (BasisTag::Face(big), BasisTag::Face(small)) = (&f.basis(d)[c], &f.basis(d - 1)[r]) else {
                panic!("unexpected tags")
            };
            let mono = e.single_term().unwrap().monomial;
            if big.a() != small.a() {
                let gone = big.a().iter().find(|&i| !small.a().contains(i)).unwrap();
                assert!(mono.x_exp(gone) >= 1, "{w} {big} -> {small}");
            } else {
                let gone = big.b().iter().find(|&j| !small.b().contains(j)).unwrap();
                assert!(mono.y_exp(gone) >= 1, "{w} {big} -> {small}");
            }
        }
    }
}

#[test]
fn structure_exhaustive_small_boxes() {
    for (m, n, mw) in [(1, 1, 4), (1, 4, 3), (2, 2, 4), (2, 3, 3), (3, 3, 2), (2, 4, 2)] {
        for w in EdgeWeighting::enumerate(m, n, mw).unwrap() {
            assert_structural(&w);
        }
    }
}

fn weighting(max_m: usize, max_n: usize, max_w: u32) -> impl Strategy<Value = EdgeWeighting> {
    (1..=max_m, 1..=max_n).prop_flat_map(move |(m, n)| {
        proptest::collection::vec(1..=max_w, m * n)
            .prop_map(move |omega| EdgeWeighting::from_row_major(m, n, omega).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structure_random_up_to_four(w in weighting(4, 4, 4)) {
        assert_structural(&w);
    }

    #[test]
    fn ranks_follow_the_binomial_sum(w in weighting(4, 4, 3)) {
        let f = build_bipartite_complex(&w.labels());
        for k in 0..f.len() - 1 {
            prop_assert_eq!(f.rank(k + 1) as u128, betti_formula(w.m(), w.n(), k));
        }
    }
}

// Test-only field oracles, deliberately naive.
fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..a.len() {
            let (top, lead) = (a[rank][c].clone(), a[r][c].clone());
            for k in 0..cols {
                a[r][k] = &a[r][k] * &top - &a[rank][k] * &lead;
            }
        }
        rank += 1;
    }
    rank
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..7usize, 1..7usize)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn smith_ranks_match_field_oracles(a in matrix()) {
        let m = IntegerMatrix::from_rows(&a).unwrap();
        let q = m.rank(Characteristic::Zero);
        prop_assert_eq!(q, rank_q(&a));
        for p in [2u32, 3, 5] {
            let rp = m.rank(Characteristic::Prime(p));
            prop_assert_eq!(rp, rank_mod_p(&a, p as i64));
            prop_assert!(q >= rp);
        }
    }

    #[test]
    fn smith_form_ignores_row_and_column_order(a in matrix(), seed in any::<u64>()) {
        let mut rows = a.clone();
        let n = rows.len();
        for i in 0..n {
            rows.swap(i, (seed as usize).wrapping_add(i * 7) % n);
        }
        let cols = rows[0].len();
        let perm: Vec<usize> = (0..cols).map(|k| (k + seed as usize % cols) % cols).collect();
        let shuffled: Vec<Vec<i64>> = rows.iter().map(|r| perm.iter().map(|&k| r[k]).collect()).collect();
        prop_assert_eq!(
            IntegerMatrix::from_rows(&a).unwrap().invariant_factors(),
            IntegerMatrix::from_rows(&shuffled).unwrap().invariant_factors()
        );
    }
}

#[test]
fn lattice_matches_subset_brute_force() {
    for w in [EdgeWeighting::constant(2, 2, 1).unwrap(), ew(&[&[1, 2, 3], &[2, 2, 1]])] {
        let l = w.labels();
        let gens = l.generators();
        let mut brute = BTreeSet::new();
        for mask in 1u32..(1 << gens.len()) {
            let mut acc: Option<Monomial> = None;
            for (k, g) in gens.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = Some(acc.map_or(g.clone(), |a| a.lcm(g).unwrap()));
                }
            }
            brute.insert(acc.unwrap());
        }
        let ours: BTreeSet<Monomial> = lcm_lattice(&l).unwrap().into_iter().collect();
        assert_eq!(ours, brute);
    }
}

#[test]
fn predicate_is_choice_independent() {
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for w in EdgeWeighting::enumerate(m, n, 3).unwrap() {
            assert_eq!(theorem_all_choices(&w), Some(theorem_predicate(&w).0), "{w}");
        }
    }
}

#[test]
fn trace_steps_delete_minimum_weight_vertices() {
    for w in EdgeWeighting::enumerate(3, 3, 2).unwrap() {
        let (_, trace) = theorem_predicate(&w);
        let mut cur = w.clone();
        let (mut xs, mut ys): (Vec<usize>, Vec<usize>) = ((1..=3).collect(), (1..=3).collect());
        for s in &trace.steps {
            assert_eq!(s.alpha, cur.min_weight());
            let ids = if s.vertex.side == Side::X { &mut xs } else { &mut ys };
            let pos = ids.iter().position(|&i| i == s.vertex.index).unwrap();
            ids.remove(pos);
            let v = cellres_core::graph::Vertex { side: s.vertex.side, index: pos + 1 };
            assert!(cur.incident_weights(v).iter().all(|&x| x == s.alpha));
            cur = cur.delete_vertex(v.side, v.index).unwrap();
        }
    }
}

#[test]
fn distinct_weights_fail_and_constant_weights_succeed() {
    let perms = [[1, 2, 3, 4], [4, 3, 2, 1], [2, 4, 1, 3], [3, 1, 4, 2]];
    for p in perms {
        let w = EdgeWeighting::from_row_major(2, 2, p.to_vec()).unwrap();
        assert!(!theorem_predicate(&w).0);
        assert!(!lcm_oracle(&LabeledComplex::full(w.labels()), Characteristic::Zero).unwrap().is_resolution);
    }
    let w = ew(&[&[1, 2, 3], &[4, 5, 6]]);
    assert!(!theorem_predicate(&w).0);
    for (m, n, c) in [(2, 2, 1), (3, 2, 2), (3, 3, 3)] {
        let w = EdgeWeighting::constant(m, n, c).unwrap();
        assert!(theorem_predicate(&w).0);
        assert!(lcm_oracle(&LabeledComplex::full(w.labels()), Characteristic::Zero).unwrap().is_resolution);
    }
}

#[test]
fn scan_order_does_not_change_verdicts() {
    for (m, n, mw) in [(2, 2, 3), (2, 3, 2)] {
        for w in EdgeWeighting::enumerate(m, n, mw).unwrap() {
            let c = LabeledComplex::full(w.labels());
            let a = lcm_oracle(&c, Characteristic::Zero).unwrap();
            let b = lcm_oracle_with_order(&c, Characteristic::Zero, ScanOrder::JoinIrreducibleFirst).unwrap();
            assert_eq!(a.is_resolution, b.is_resolution, "{w}");
        }
    }
}

#[test]
fn koszul_betti_numbers_of_resolutions() {
    for w in EdgeWeighting::enumerate(2, 3, 2).unwrap().chain(EdgeWeighting::enumerate(2, 2, 3).unwrap()) {
        if theorem_predicate(&w).0 {
            let betti = koszul_betti(&w.labels(), Characteristic::Zero).unwrap();
            assert_eq!(betti, build_bipartite_complex(&w.labels()).ranks(), "{w}");
        }
    }
}

#[test]
fn strand_examples() {
    let f = build_bipartite_complex(&EdgeWeighting::constant(2, 2, 1).unwrap().labels());
    let top = Monomial::from_parts(&[1, 1], &[1, 1]);
    let s = strand(&f, &top).unwrap();
    assert_eq!(s.dims(), [1, 4, 4, 1]);
    assert_eq!(s.homology(Characteristic::Zero).0, [0, 0, 0, 0]);

    let fail = ew(&[&[2, 3], &[3, 2]]);
    let f = build_bipartite_complex(&fail.labels());
    let at = Monomial::from_parts(&[2, 2], &[2, 2]);
    let s = strand(&f, &at).unwrap();
    assert_eq!(s.dims(), [1, 2, 0, 0]);
    assert_eq!(s.homology(Characteristic::Zero).0[1], 1);
    let r = LabeledComplex::full(fail.labels()).restrict(&at).unwrap();
    assert_eq!(reduced_homology(&r, Characteristic::Zero).unwrap().betti, [1]);

    let g = fail.labels().label(1, 1).clone();
    assert_eq!(strand(&f, &g).unwrap().homology(Characteristic::Zero).0, [0, 0, 0, 0]);
}

#[test]
fn cone_over_a_single_extra_row() {
    for w in [ew(&[&[1, 1], &[2, 3]]), ew(&[&[2, 2, 2], &[2, 3, 2]]), ew(&[&[1], &[1], &[4]])] {
        let ext = extension(&w).unwrap();
        assert!(ext.phi.commutes().unwrap().is_ok(), "{w}");
        assert!(ext.phi.check_multigraded().is_ok(), "{w}");
        assert_eq!(ext.cone.ranks(), ext.fbar.ranks(), "{w}");
    }
}
