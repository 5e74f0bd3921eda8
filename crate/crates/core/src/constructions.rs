//! Extremal full covers of complete graphs and the all-negative signing.

use crate::cover::{check_cover_size, FullCover};
use crate::graph::{Graph, SignedGraph};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Every edge of `K_n` carries the fixed-point-free involution pairing
/// colors `0<->1, 2<->3, ..`.
pub fn even_pairing_cover(n: usize, m: usize) -> Result<FullCover> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::invalid(format!("pairing cover needs an even m >= 2, got {m}")));
    }
    if n < 2 {
        return Err(Error::invalid(format!("pairing cover needs n >= 2, got {n}")));
    }
    check_cover_size(n.saturating_mul(n - 1) / 2, m)?;
    let pairing = Permutation::from_images((0..m as u32).map(|x| x ^ 1).collect())?;
    let g = Graph::complete(n)?;
    let sigma = vec![pairing; g.edge_count()];
    FullCover::new(g, m, sigma)
}

/// The permutation sending `1->2->3->1` and swapping `4<->5, 6<->7, ..,
/// (m-1)<->m` (1-indexed). It has no fixed points.
pub fn f_permutation(m: usize) -> Result<Permutation> {
    if m < 5 || m.is_multiple_of(2) {
        return Err(Error::invalid(format!("f needs an odd m >= 5, got {m}")));
    }
    // 0-indexed: 0->1->2->0, then pairs (3,4), (5,6), ..
    let images = (0..m as u32)
        .map(|x| match x {
            0 => 1,
            1 => 2,
            2 => 0,
            x if x % 2 == 1 => x + 1,
            x => x - 1,
        })
        .collect();
    Permutation::from_images(images)
}

/// K4 cover with identities on the edges at vertex 0, `f` on `(1,2)` and
/// `(1,3)`, and `f^{-1}` on `(2,3)`.
pub fn odd_k4_cover(m: usize) -> Result<FullCover> {
    check_cover_size(6, m)?;
    let f = f_permutation(m)?;
    let id = Permutation::identity(m);
    let g = Graph::complete(4)?;
    // edge order: 01 02 03 12 13 23
    let sigma = vec![id.clone(), id.clone(), id, f.clone(), f.clone(), f.inverse()];
    FullCover::new(g, m, sigma)
}

/// `K_n` cover with `f` on every edge.
pub fn odd_kn_cover(n: usize, m: usize) -> Result<FullCover> {
    if n < 4 {
        return Err(Error::invalid(format!("odd K_n construction needs n >= 4, got {n}")));
    }
    check_cover_size(n.saturating_mul(n - 1) / 2, m)?;
    let f = f_permutation(m)?;
    let g = Graph::complete(n)?;
    let sigma = vec![f; g.edge_count()];
    FullCover::new(g, m, sigma)
}

/// The construction attaining (or approximating) the dual DP value of
/// `K_n` at fold `m`: the pairing cover for even `m`, otherwise the `f`
/// family (the K4-specific one when `n == 4`).
pub fn extremal_cover(n: usize, m: usize) -> Result<FullCover> {
    match (n, m % 2) {
        (_, 0) => even_pairing_cover(n, m),
        (4, _) => odd_k4_cover(m),
        _ => odd_kn_cover(n, m),
    }
}

/// `K_n` with every edge signed `-1`.
pub fn all_negative_signing(n: usize) -> Result<SignedGraph> {
    SignedGraph::uniform(Graph::complete(n)?, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_brute, count_ie};
    use crate::cover::{cycle_stats, is_cover_triangle_free};
    use crate::graph::catalog_subgraphs;

    #[test]
    fn pairing_cover_images() {
        let c = even_pairing_cover(4, 4).unwrap();
        for p in c.sigma() {
            assert_eq!(p.to_one_indexed(), vec![2, 1, 4, 3]);
        }
        assert_eq!(count_brute(&c).unwrap().value, 60);
        assert!(even_pairing_cover(4, 5).is_err());
        assert!(even_pairing_cover(1, 4).is_err());
    }

    #[test]
    fn pairing_cover_k5_stats() {
        let c = even_pairing_cover(5, 4).unwrap();
        let s = cycle_stats(&c, &catalog_subgraphs(c.graph())).unwrap();
        assert!(s.t.iter().all(|&t| t == 0));
        assert!(s.q.iter().all(|&q| q == 4));
        assert_eq!(s.q.len(), 15);
    }

    #[test]
    fn f_images() {
        assert_eq!(f_permutation(7).unwrap().to_one_indexed(), vec![2, 3, 1, 5, 4, 7, 6]);
        assert_eq!(f_permutation(5).unwrap().to_one_indexed(), vec![2, 3, 1, 5, 4]);
        assert_eq!(f_permutation(7).unwrap().fixed_points(), 0);
        assert!(f_permutation(6).is_err());
        assert!(f_permutation(3).is_err());
    }

    #[test]
    fn odd_k4_construction() {
        let c = odd_k4_cover(7).unwrap();
        let cat = catalog_subgraphs(c.graph());
        let s = cycle_stats(&c, &cat).unwrap();
        assert_eq!(s.t, vec![0; 4]);
        assert_eq!(s.q, vec![7, 4, 7]);
        assert_eq!(count_brute(&c).unwrap().value, 984);
        assert_eq!(count_ie(&c).unwrap().value, 984);
        assert_eq!(count_brute(&odd_k4_cover(5).unwrap()).unwrap().value, 182);
        assert!(odd_k4_cover(4).is_err());
    }

    #[test]
    fn odd_kn_construction() {
        let c = odd_kn_cover(4, 7).unwrap();
        let s = cycle_stats(&c, &catalog_subgraphs(c.graph())).unwrap();
        assert_eq!(s.q, vec![4, 7, 7]);
        assert_eq!(s.sum_q(), 18);

        let c = odd_kn_cover(5, 5).unwrap();
        let cat = catalog_subgraphs(c.graph());
        assert!(cycle_stats(&c, &cat).unwrap().t.iter().all(|&t| t == 0));
        assert!(is_cover_triangle_free(&c, &cat).unwrap());

        let c = odd_kn_cover(4, 5).unwrap();
        assert_eq!(count_ie(&c).unwrap().value, count_brute(&c).unwrap().value);
        assert!(odd_kn_cover(3, 5).is_err());
    }

    #[test]
    fn negative_signings() {
        assert!(all_negative_signing(4).unwrap().signs().iter().all(|&s| s == -1));
        assert_eq!(all_negative_signing(4).unwrap().signs().len(), 6);
        assert_eq!(all_negative_signing(2).unwrap().signs(), &[-1]);
        assert!(all_negative_signing(1).unwrap().signs().is_empty());
    }
}
