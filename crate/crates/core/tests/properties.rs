mod common;

use proptest::prelude::*;

use endotriv::exactlin::FqMatrix;
use endotriv::groups::{all_subgroups, p_subgroup_classes, Group, GroupMono};
use endotriv::modrep::{restrict, syzygy_power};
use endotriv::picard::{restriction_on_t, t_group};
use endotriv::components::{p_components_graph, stable_end_decomposition, Target};
use endotriv::treecalc::{Edge, GraphOfGroups, Vertex};

use common::*;

fn fq_matrix() -> impl Strategy<Value = (u64, u32, usize, usize, Vec<u32>)> {
    (prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)]), 1usize..=5, 1usize..=5).prop_flat_map(
        |((p, e), r, c)| {
            let q = p.pow(e) as u32;
            (Just(p), Just(e), Just(r), Just(c), prop::collection::vec(0..q, r * c))
        },
    )
}

fn small_groups() -> Vec<Group> {
    vec![cyclic(4), cyclic(6), cyclic(12), q8(), endotriv::groups::build_group(&endotriv::groups::GroupSpec::Klein4(true)).unwrap()]
}

fn free_product(groups: &[Group]) -> GraphOfGroups {
    let c1 = cyclic(1);
    let edges: Vec<Edge> = (1..groups.len())
        .map(|i| Edge {
            group: c1.clone(),
            initial: i - 1,
            terminal: i,
            mono_initial: mono(&c1, &groups[i - 1], &[]),
            mono_terminal: mono(&c1, &groups[i], &[]),
        })
        .collect();
    let tree = (0..edges.len()).collect();
    GraphOfGroups::new(groups.iter().cloned().map(Vertex::Finite).collect(), edges, tree).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn snf_contract(m in (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-30i64..=30, c), r))) {
        prop_assert_eq!(check_snf(&m), Ok(()));
    }

    #[test]
    fn rref_and_kernel((p, e, r, c, data) in fq_matrix()) {
        let k = field(p, e);
        let m = FqMatrix::from_vec(&k, r, c, data);
        let rr = m.rref();
        prop_assert_eq!(rr.matrix.rref().matrix, rr.matrix.clone());
        prop_assert_eq!(rr.rank(), m.transpose().rank());
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.cols(), c - rr.rank());
        prop_assert_eq!(ker.rank(), ker.cols());
        prop_assert!(m.mul(&ker).is_zero());
    }

    #[test]
    fn abgrp_order_bookkeeping(
        s in prop::collection::vec(prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12]), 1..=3),
        t in prop::collection::vec(prop::sample::select(vec![1u64, 2, 3, 4, 5, 6, 8, 12]), 1..=3),
        c in prop::collection::vec(0u64..10, 9),
    ) {
        prop_assert_eq!(check_order_bookkeeping(&finite_hom(&s, &t, &c)), Ok(()));
    }

    #[test]
    fn omega_periodic_on_cyclic_groups(
        (n, p, e) in prop::sample::select(vec![(2usize, 2u64, 1u32), (4, 2, 2), (8, 2, 1), (6, 3, 1), (3, 3, 2), (10, 5, 1)]),
        chi in 0usize..6,
        shift in -3i32..=3,
    ) {
        prop_assert_eq!(check_omega_periodicity(n, &field(p, e), chi, shift), Ok(()));
    }

    #[test]
    fn strip_projectives_roundtrip(
        (n, p, e) in prop::sample::select(vec![(2usize, 2u64, 1u32), (4, 2, 1), (3, 3, 1), (6, 2, 2), (6, 3, 1)]),
        shift in -2i32..=2,
        chi in 0usize..4,
        free in 0usize..=2,
    ) {
        prop_assert_eq!(check_strip_roundtrip(&cyclic(n), &field(p, e), shift, chi, free), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conjugates_of_subgroups_are_subgroups(gi in 0usize..5, x in 0usize..12) {
        let g = &small_groups()[gi];
        let x = x % g.order();
        let subs = all_subgroups(g);
        for h in &subs {
            let c = h.conjugate(x);
            prop_assert!(subs.iter().any(|s| s.element_set() == c.element_set()));
        }
        for class in p_subgroup_classes(g, 2) {
            for h in &class {
                let c = h.conjugate(x);
                prop_assert!(class.iter().any(|s| s.element_set() == c.element_set()));
            }
        }
    }

    #[test]
    fn free_product_components_match_units(
        picks in prop::collection::vec(prop::sample::select(vec![2usize, 3, 4, 5, 6]), 2..=4),
        (p, e) in prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 1)]),
    ) {
        let groups: Vec<Group> = picks.iter().map(|&n| cyclic(n)).collect();
        let g = free_product(&groups);
        let k = field(p, e);
        let units = picks.iter().filter(|&&n| n % p as usize == 0).count();
        prop_assert_eq!(p_components_graph(&g, p).unwrap(), units);
        prop_assert_eq!(stable_end_decomposition(Target::Graph(&g), &k).unwrap().len(), units);
    }

    #[test]
    fn amalgam_rule_matches_pullback(i in 0usize..10) {
        let pool = amalgam_pool();
        prop_assert_eq!(check_amalgam_rule(&pool[i]), Ok(()));
    }
}

fn check_functoriality(chain: [&Group; 3], words: [&[&str]; 2], p: u64, e: u32) {
    let k = field(p, e);
    let [small, mid, big] = chain;
    let a: GroupMono = mono(small, mid, words[0]);
    let b: GroupMono = mono(mid, big, words[1]);
    let ab = a.then(&b).unwrap();
    let (tb, tm, ts) = (t_group(big, &k).unwrap(), t_group(mid, &k).unwrap(), t_group(small, &k).unwrap());
    let two_step = restriction_on_t(&tb, &b, &tm).unwrap().then(&restriction_on_t(&tm, &a, &ts).unwrap()).unwrap();
    let direct = restriction_on_t(&tb, &ab, &ts).unwrap();
    assert_eq!(two_step.matrix(), direct.matrix());
    let m = syzygy_power(&trivial(big, &k), 1).unwrap();
    let stepwise = restrict(&restrict(&m, &b).unwrap(), &a).unwrap();
    let once = restrict(&m, &ab).unwrap();
    assert_eq!(stepwise.generator_matrices(), once.generator_matrices());
}

#[test]
fn restriction_is_functorial() {
    let (c2, c4, q) = (cyclic(2), cyclic(4), q8());
    check_functoriality([&c2, &c4, &q], [&["g^2"], &["x"]], 2, 1);
    let (c3, c6, c12) = (cyclic(3), cyclic(6), cyclic(12));
    check_functoriality([&c3, &c6, &c12], [&["g^2"], &["g^2"]], 3, 1);
    check_functoriality([&c3, &c6, &c12], [&["g^2"], &["g^2"]], 3, 2);
}
