use dpcover::counting::{count_brute, count_ie};
use dpcover::cover::{composite_along_walk, cycle_stats, random_cover};
use dpcover::formulas::{falling_factorial, small_complete_dual, thm3_value};
use dpcover::graph::{catalog_subgraphs, edge_subset_structure, ClosedWalk};
use dpcover::search::{search_exhaustive, Mode, SearchSpec};
use dpcover::{FullCover, Graph, Permutation};
use proptest::prelude::*;

fn k(n: usize) -> Graph {
    Graph::complete(n).unwrap()
}

fn choose(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subgraph(n: usize, bits: u32) -> Graph {
    let edges = k(n).edges().iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect::<Vec<_>>();
    Graph::new(n, edges).unwrap()
}

#[test]
fn cyclomatic_identity_on_every_k4_subset() {
    let g = k(4);
    for mask in 0u32..64 {
        let subset: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
        let s = edge_subset_structure(&g, &subset).unwrap();
        assert_eq!(subset.len() + s.component_count, 4 + s.cycle_total(), "mask {mask:06b}");
        assert_eq!(s.components.len(), s.component_count);
        for walks in &s.fundamental_cycles {
            for w in walks {
                w.validate(&g).unwrap();
                assert!(w.steps.iter().all(|st| subset.contains(&st.edge)));
            }
        }
    }
}

#[test]
fn catalog_sizes_of_complete_graphs() {
    for n in 1..=6 {
        let cat = catalog_subgraphs(&k(n));
        let c4 = if n >= 4 { choose(n, 4) } else { 0 };
        let c3 = if n >= 3 { choose(n, 3) } else { 0 };
        assert_eq!(cat.triangles.len(), c3, "K{n}");
        assert_eq!(cat.four_cycles.len(), 3 * c4, "K{n}");
        assert_eq!(cat.diamonds.len(), 6 * c4, "K{n}");
        assert_eq!(cat.k4s.len(), c4, "K{n}");
    }
    let cat = catalog_subgraphs(&k(5));
    assert_eq!(
        (cat.triangles.len(), cat.four_cycles.len(), cat.diamonds.len(), cat.k4s.len()),
        (10, 15, 30, 5)
    );
}

#[test]
fn k4_four_cycle_order() {
    let cat = catalog_subgraphs(&k(4));
    assert_eq!(cat.four_cycles, vec![[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]);
}

#[test]
fn thread_count_does_not_change_search() {
    let base = SearchSpec::new(k(4), 4).with_mode(Mode::Both);
    let one = search_exhaustive(&base.clone().with_threads(1)).unwrap();
    let three = search_exhaustive(&base.with_threads(3)).unwrap();
    assert_eq!(one.max, three.max);
    assert_eq!(one.min, three.min);
    assert_eq!(one.evaluated, three.evaluated);
}

#[test]
fn small_complete_graphs_match_search() {
    for m in 1..=6 {
        let r = search_exhaustive(&SearchSpec::new(k(2), m)).unwrap();
        assert_eq!(r.max_value(), Some(small_complete_dual::<i128>(2, m as u64).unwrap()));
    }
    for m in 2..=6 {
        let r = search_exhaustive(&SearchSpec::new(k(3), m).with_mode(Mode::Max)).unwrap();
        assert_eq!(r.max_value(), Some(small_complete_dual::<i128>(3, m as u64).unwrap()), "K3 m={m}");
    }
}

#[test]
fn dual_values_dominate_the_chromatic_polynomial() {
    for m in 2..=10_000u64 {
        let f4 = falling_factorial::<i128>(4, m).unwrap();
        assert!(thm3_value::<i128>(m).unwrap() >= f4, "m={m}");
        let f3 = falling_factorial::<i128>(3, m).unwrap();
        assert!(small_complete_dual::<i128>(3, m).unwrap() >= f3, "m={m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subset_structure_ignores_edge_order(n in 2usize..7, bits in any::<u32>(), mask in any::<u32>(), rot in 0usize..15) {
        let g = subgraph(n, bits);
        let mut subset: Vec<usize> = (0..g.edge_count()).filter(|i| mask >> i & 1 == 1).collect();
        let a = edge_subset_structure(&g, &subset).unwrap();
        if !subset.is_empty() {
            let r = rot % subset.len();
            subset.rotate_left(r);
            subset.reverse();
        }
        let b = edge_subset_structure(&g, &subset).unwrap();
        prop_assert_eq!(a.component_count, b.component_count);
        prop_assert_eq!(a.cycle_total(), b.cycle_total());
        prop_assert_eq!(a.components, b.components);
    }

    #[test]
    fn walk_then_reverse_is_identity(n in 3usize..6, m in 1usize..7, seed in any::<u64>(), start in 0usize..6) {
        let g = k(n);
        let c = random_cover(&g, m, seed).unwrap();
        let s = start % n;
        let cycle: Vec<usize> = (0..=n).map(|i| (s + i) % n).collect();
        let w = ClosedWalk::from_vertices(&g, &cycle).unwrap();
        let there = composite_along_walk(&c, &w).unwrap();
        let back = composite_along_walk(&c, &w.reversed()).unwrap();
        prop_assert!(there.then(&back).is_identity());
    }

    #[test]
    fn ie_matches_brute_on_random_graphs(n in 1usize..6, bits in any::<u32>(), m in 1usize..5, seed in any::<u64>()) {
        let g = subgraph(n, bits);
        let c = random_cover(&g, m, seed).unwrap();
        prop_assert_eq!(count_ie(&c).unwrap().value, count_brute(&c).unwrap().value);
    }

    #[test]
    fn relabeling_every_fiber_preserves_counts(m in 2usize..6, seed in any::<u64>(), pi_seed in any::<u64>()) {
        let c = random_cover(&k(4), m, seed).unwrap();
        let pi = random_cover(&k(2), m, pi_seed).unwrap().sigma()[0].clone();
        let sigma: Vec<Permutation> = c.sigma().iter().map(|p| p.conjugate_by(&pi)).collect();
        let d = FullCover::new(k(4), m, sigma).unwrap();
        prop_assert_eq!(count_brute(&c).unwrap().value, count_brute(&d).unwrap().value);
        let cat = catalog_subgraphs(&k(4));
        let (sc, sd) = (cycle_stats(&c, &cat).unwrap(), cycle_stats(&d, &cat).unwrap());
        prop_assert_eq!(sc.sum_t(), sd.sum_t());
        prop_assert_eq!(sc.sum_q(), sd.sum_q());
    }

    #[test]
    fn counts_lie_between_zero_and_m_to_the_n(n in 1usize..6, m in 1usize..5, seed in any::<u64>()) {
        let c = random_cover(&k(n), m, seed).unwrap();
        let v = count_brute(&c).unwrap().value;
        prop_assert!(v >= 0 && v <= (m as i128).pow(n as u32));
    }
}
