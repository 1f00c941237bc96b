//! Wiener index, transmissions and the closed forms used as oracles.
//!
//! All arithmetic is in `u64`/`i64`; W(P_n) grows like n^3/6, so orders up to
//! 10^4 stay far from overflow (debug builds additionally trap on overflow).

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("cycle formulas need n >= 3, got {0}")]
    CycleTooShort(usize),
    #[error("path formulas need n >= 1")]
    EmptyPath,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a block that is neither an edge nor a cycle")]
    NotCactus,
}

/// Distances from one source, from a single BFS. Unreachable vertices are
/// `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: VertexId,
    pub dist: Vec<Option<u32>>,
}

pub fn distances(g: &Graph, source: VertexId) -> DistanceRow {
    let mut raw = vec![u32::MAX; g.n()];
    bfs_into(g, source, &mut raw);
    DistanceRow {
        source,
        dist: raw.into_iter().map(|d| (d != u32::MAX).then_some(d)).collect(),
    }
}

/// Fills `dist` (len n, `u32::MAX` = unreached) from a BFS at `source` and
/// returns the sum of the finite distances, or `None` if some vertex is
/// unreachable.
pub(crate) fn bfs_into(g: &Graph, source: VertexId, dist: &mut [u32]) -> Option<u64> {
    dist.fill(u32::MAX);
    dist[source] = 0;
    let mut queue = VecDeque::with_capacity(g.n());
    queue.push_back(source);
    let mut sum = 0u64;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = du + 1;
                sum += u64::from(du) + 1;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (reached == g.n()).then_some(sum)
}

/// Sum of distances from `v` to every other vertex; `None` when some vertex
/// is unreachable (infinite transmission).
pub fn transmission(g: &Graph, v: VertexId) -> Option<u64> {
    let mut scratch = vec![u32::MAX; g.n()];
    bfs_into(g, v, &mut scratch)
}

/// Wiener index outcome; disconnected graphs get the distinguished
/// `Infinite` value rather than a sentinel number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wiener {
    Finite(u64),
    Infinite,
}

impl Wiener {
    pub fn finite(self) -> Option<u64> {
        match self {
            Wiener::Finite(w) => Some(w),
            Wiener::Infinite => None,
        }
    }

    #[track_caller]
    pub fn expect_finite(self) -> u64 {
        self.finite().expect("Wiener index is infinite (disconnected graph)")
    }
}

/// Sum of distances over unordered vertex pairs, by one BFS per vertex.
pub fn wiener_index(g: &Graph) -> Wiener {
    let mut scratch = vec![u32::MAX; g.n()];
    let mut total = 0u64;
    for v in g.vertices() {
        match bfs_into(g, v, &mut scratch) {
            Some(t) => total += t,
            None => return Wiener::Infinite,
        }
    }
    debug_assert_eq!(total % 2, 0);
    Wiener::Finite(total / 2)
}

/// Wiener index of a connected graph whose blocks are all single edges or
/// cycles (trees, unicyclic graphs, cacti), in near-linear time.
///
/// Each block contributes independently: a bridge separating sides of sizes
/// a and b contributes a*b; a cycle block contributes, over pairs of its
/// ring vertices, (branch weight product) * (distance along the ring). The
/// branch weights come from one DFS subtree-size pass. This route is
/// algebraically independent of [`wiener_index`] and is used where the
/// O(n^3) per-vertex brute force would be too slow.
pub fn wiener_index_via_blocks(g: &Graph) -> Result<u64, MetricsError> {
    if !g.is_connected() {
        return Err(MetricsError::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(0);
    }

    // one DFS from 0: discovery order and subtree sizes
    let mut disc = vec![usize::MAX; n];
    let mut sub = vec![1usize; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(VertexId, usize)> = vec![(0, 0)];
    disc[0] = 0;
    order.push(0);
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        if let Some(&w) = g.neighbors(u).get(*idx) {
            *idx += 1;
            if disc[w] == usize::MAX {
                disc[w] = order.len();
                order.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                sub[p] += sub[u];
            }
        }
    }

    let dec = g.block_decomposition();
    let mut total = 0u64;
    for block in &dec.blocks {
        if block.len() == 1 {
            // a bridge is a tree edge; the deeper endpoint's subtree is one side
            let (u, v) = block[0];
            let child = if disc[u] > disc[v] { u } else { v };
            total += sub[child] as u64 * (n - sub[child]) as u64;
            continue;
        }
        // cycle block: its tree edges form a descending path from the
        // shallowest vertex, so discovery order is ring order
        let mut ring: Vec<VertexId> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        ring.sort_unstable();
        ring.dedup();
        if ring.len() != block.len() {
            return Err(MetricsError::NotCactus);
        }
        ring.sort_unstable_by_key(|&v| disc[v]);
        let c = ring.len();
        let mut weights = vec![0u64; c];
        for i in 1..c {
            let below = if i + 1 < c { sub[ring[i + 1]] } else { 0 };
            weights[i] = (sub[ring[i]] - below) as u64;
        }
        weights[0] = (n - sub[ring[1]]) as u64;
        for i in 0..c {
            for j in i + 1..c {
                let along = (j - i).min(c - (j - i)) as u64;
                total += weights[i] * weights[j] * along;
            }
        }
    }
    Ok(total)
}

fn binom3(n: u64) -> u64 {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

/// W(C_n): n^3/8 for even n, (n^3 - n)/8 for odd n.
pub fn wiener_cycle_closed(n: usize) -> Result<u64, MetricsError> {
    if n < 3 {
        return Err(MetricsError::CycleTooShort(n));
    }
    let n = n as u64;
    Ok(if n % 2 == 0 { n * n * n / 8 } else { (n * n * n - n) / 8 })
}

/// W(P_n) = C(n+1, 3).
pub fn wiener_path_closed(n: usize) -> Result<u64, MetricsError> {
    if n < 1 {
        return Err(MetricsError::EmptyPath);
    }
    Ok(binom3(n as u64 + 1))
}

/// W(K_n) = C(n, 2).
pub fn wiener_complete_closed(n: usize) -> Result<u64, MetricsError> {
    if n < 1 {
        return Err(MetricsError::EmptyPath);
    }
    let n = n as u64;
    Ok(n * (n - 1) / 2)
}

/// Transmission of any vertex of C_n: a^2 for n = 2a, a^2 + a for n = 2a+1.
pub fn transmission_cycle_closed(n: usize) -> Result<u64, MetricsError> {
    if n < 3 {
        return Err(MetricsError::CycleTooShort(n));
    }
    let a = (n / 2) as u64;
    Ok(if n % 2 == 0 { a * a } else { a * a + a })
}

/// Transmission of an end vertex of P_n: n(n-1)/2.
pub fn transmission_path_end_closed(n: usize) -> Result<u64, MetricsError> {
    if n < 1 {
        return Err(MetricsError::EmptyPath);
    }
    let n = n as u64;
    Ok(n * (n - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn transmission_examples() {
        assert_eq!(transmission(&Graph::path(3), 1), Some(2));
        assert_eq!(transmission(&Graph::cycle(6), 0), Some(9)); // a^2, a = 3
        assert_eq!(transmission(&Graph::path(5), 0), Some(10)); // 1+2+3+4
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(transmission(&disc, 0), None);
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&Graph::cycle(11)), Wiener::Finite(165));
        assert_eq!(wiener_index(&Graph::complete(4)), Wiener::Finite(6));
        assert_eq!(wiener_index(&Graph::path(5)), Wiener::Finite(20));
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(wiener_index(&disc), Wiener::Infinite);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(wiener_cycle_closed(10), Ok(125));
        assert_eq!(wiener_cycle_closed(11), Ok(165));
        assert_eq!(wiener_cycle_closed(3), Ok(3));
        assert_eq!(wiener_cycle_closed(2), Err(MetricsError::CycleTooShort(2)));

        assert_eq!(wiener_path_closed(10), Ok(165));
        assert_eq!(wiener_path_closed(2), Ok(1));
        assert_eq!(wiener_path_closed(1), Ok(0));

        assert_eq!(wiener_complete_closed(4), Ok(6));
        assert_eq!(wiener_complete_closed(1), Ok(0));
        assert_eq!(wiener_complete_closed(2), Ok(1));

        assert_eq!(transmission_cycle_closed(7), Ok(12));
        assert_eq!(transmission_cycle_closed(4), Ok(4));
        assert_eq!(transmission_path_end_closed(7), Ok(21));
    }

    #[test]
    fn closed_forms_match_bfs() {
        for n in 3..=60 {
            assert_eq!(
                wiener_index(&Graph::cycle(n)).expect_finite(),
                wiener_cycle_closed(n).unwrap(),
                "cycle n={n}"
            );
            assert_eq!(
                transmission(&Graph::cycle(n), 0).unwrap(),
                transmission_cycle_closed(n).unwrap(),
                "cycle transmission n={n}"
            );
        }
        for n in 1..=60 {
            assert_eq!(
                wiener_index(&Graph::path(n)).expect_finite(),
                wiener_path_closed(n).unwrap(),
                "path n={n}"
            );
            assert_eq!(
                transmission(&Graph::path(n), 0).unwrap(),
                transmission_path_end_closed(n).unwrap(),
                "path transmission n={n}"
            );
        }
        for n in 1..=20 {
            assert_eq!(
                wiener_index(&Graph::complete(n)).expect_finite(),
                wiener_complete_closed(n).unwrap(),
                "complete n={n}"
            );
        }
    }

    #[test]
    fn wiener_is_half_transmission_sum() {
        for g in [Graph::cycle(9), Graph::path(8), Graph::star(7), Graph::complete(5)] {
            let by_t: u64 = g.vertices().map(|v| transmission(&g, v).unwrap()).sum();
            assert_eq!(wiener_index(&g).expect_finite() * 2, by_t);
        }
    }

    #[test]
    fn extremal_bounds_on_random_connected_graphs() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let n = rng.random_range(2..=12);
            let g = crate::random::random_connected(n, rng.random_range(0..=3), &mut rng);
            let w = wiener_index(&g).expect_finite();
            assert!(wiener_complete_closed(n).unwrap() <= w);
            assert!(w <= wiener_path_closed(n).unwrap());
        }
    }

    #[test]
    fn wiener_invariant_under_relabeling() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.random_range(2..=12);
            let g = crate::random::random_connected(n, rng.random_range(0..=2), &mut rng);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            assert_eq!(wiener_index(&g), wiener_index(&g.relabel(&perm)));
        }
    }

    #[test]
    fn pendant_attachment_identity() {
        // W(G+) = W(G) + t_G(u) + |V(G)|
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..300 {
            let n = rng.random_range(2..=15);
            let g = if rng.random_range(0..2) == 0 || n < 3 {
                crate::random::random_tree(n, &mut rng)
            } else {
                crate::random::random_unicyclic(n, &mut rng)
            };
            let u = rng.random_range(0..n);
            let plus = g.attach_pendant(u).unwrap();
            assert_eq!(
                wiener_index(&plus).expect_finite(),
                wiener_index(&g).expect_finite() + transmission(&g, u).unwrap() + n as u64
            );
        }
    }

    #[test]
    fn pendant_attachment_preserves_distances() {
        let g = Graph::cycle(7);
        let plus = g.attach_pendant(3).unwrap();
        for v in g.vertices() {
            let before = distances(&g, v);
            let after = distances(&plus, v);
            assert_eq!(&after.dist[..g.n()], &before.dist[..]);
        }
    }

    #[test]
    fn block_route_matches_bfs_route() {
        // trees, unicyclic, cacti
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..200 {
            let n = rng.random_range(2..=14);
            let g = match rng.random_range(0..3) {
                0 => crate::random::random_tree(n, &mut rng),
                1 if n >= 3 => crate::random::random_unicyclic(n, &mut rng),
                _ => crate::random::random_cactus(n, &mut rng),
            };
            assert_eq!(
                wiener_index_via_blocks(&g).unwrap(),
                wiener_index(&g).expect_finite(),
                "{g:?}"
            );
        }
        // non-cactus input is rejected
        assert_eq!(wiener_index_via_blocks(&Graph::complete(4)), Err(MetricsError::NotCactus));
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(wiener_index_via_blocks(&disc), Err(MetricsError::Disconnected));
    }

    #[test]
    fn vertex_deletion_direction_for_cycles() {
        // For n <= 10 deleting a cycle vertex strictly lowers the Wiener
        // index; n = 11 is the equality case; from n = 12 on it raises it.
        for n in 3..=10 {
            assert!(wiener_cycle_closed(n).unwrap() > wiener_path_closed(n - 1).unwrap(), "n={n}");
        }
        assert_eq!(wiener_cycle_closed(11).unwrap(), wiener_path_closed(10).unwrap());
        for n in 12..=30 {
            assert!(wiener_cycle_closed(n).unwrap() < wiener_path_closed(n - 1).unwrap(), "n={n}");
        }
    }
}
