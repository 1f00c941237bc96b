//! Good-vertex detection and the transmission-delta calculus behind it.
//!
//! A vertex v of a connected graph G is *good* when W(G) = W(G - v) (and
//! G - v is still connected). For a fixed deleted vertex v1 the per-vertex
//! quantity delta(x) = t_G(x) - t_{G-v1}(x) tracks how each survivor's
//! transmission reacts, and Delta(G) = W(G) - W(G - v1) is the total change.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::metrics::{transmission, wiener_index};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GoodVertexError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("deleting vertex {0} disconnects the graph")]
    DisconnectingDeletion(VertexId),
    #[error("cycle delta formula needs c >= 7, got {0}")]
    CycleTooShort(usize),
    #[error("small-cycle delta formula is defined for c in {{5, 6}}, got {0}")]
    CycleOutOfRange(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Transmission deltas of all survivors after deleting a fixed vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionDelta {
    /// The deleted vertex v1 (id in the original graph).
    pub deleted: VertexId,
    /// x -> t_G(x) - t_{G-v1}(x), keyed by original ids, for every x != v1.
    pub per_vertex_delta: BTreeMap<VertexId, i64>,
    /// W(G) - W(G - v1).
    pub total_delta: i64,
}

/// Per-graph invariant report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub wiener: u64,
    /// t_G(v) for every vertex.
    pub transmissions: Vec<u64>,
    /// Non-cut vertices v with W(G - v) = W(G), ascending.
    pub good_vertices: Vec<VertexId>,
    /// v -> W(G) - W(G - v) for every non-cut v; cut vertices are absent
    /// (their deletion disconnects, so the change is undefined).
    pub deletion_delta: BTreeMap<VertexId, i64>,
}

impl AnalysisReport {
    /// True when every vertex is good (the all-vertices-good property that
    /// C_11 uniquely exhibits among small unicyclic graphs).
    pub fn is_soltes(&self) -> bool {
        self.good_vertices.len() == self.transmissions.len()
    }
}

/// Computes delta(x) for every survivor of deleting `v1`, by two distance
/// sweeps (one over g, one over g - v1).
pub fn delta_profile(g: &Graph, v1: VertexId) -> Result<DeletionDelta, GoodVertexError> {
    if !g.is_connected() {
        return Err(GoodVertexError::Disconnected);
    }
    let reduced = g.delete_vertex(v1)?;
    if !reduced.is_connected() {
        return Err(GoodVertexError::DisconnectingDeletion(v1));
    }
    let mut per_vertex_delta = BTreeMap::new();
    let mut sum_before = 0u64;
    let mut sum_after = 0u64;
    for x in g.vertices().filter(|&x| x != v1) {
        let x_after = if x > v1 { x - 1 } else { x };
        let before = transmission(g, x).expect("connected");
        let after = transmission(&reduced, x_after).expect("connected after deletion");
        sum_before += before;
        sum_after += after;
        per_vertex_delta.insert(x, before as i64 - after as i64);
    }
    // W from the same sweeps; v1's own transmission completes the first sum
    let w_before = (sum_before + transmission(g, v1).expect("connected")) / 2;
    let w_after = sum_after / 2;
    debug_assert_eq!(w_before, wiener_index(g).expect_finite());
    debug_assert_eq!(w_after, wiener_index(&reduced).expect_finite());
    Ok(DeletionDelta {
        deleted: v1,
        per_vertex_delta,
        total_delta: w_before as i64 - w_after as i64,
    })
}

/// delta of the pendant freshly attached to `u`, in the graph
/// `g.attach_pendant(u)` with `v1` as the deleted vertex. Equals
/// delta_g(u) + 1.
pub fn pendant_delta_shift(g: &Graph, v1: VertexId, u: VertexId) -> Result<i64, GoodVertexError> {
    if u == v1 {
        return Err(GoodVertexError::Graph(GraphError::InvalidVertex {
            vertex: u,
            order: g.n(),
        }));
    }
    let plus = g.attach_pendant(u)?;
    let profile = delta_profile(&plus, v1)?;
    Ok(profile.per_vertex_delta[&g.n()])
}

/// Closed form for delta(w) when a cycle C_c (c >= 7) is glued to w and a
/// neighbor of w on the cycle is deleted: a^2 - (2a^2 - 3a + 1) for c = 2a,
/// (a^2 + a) - (2a^2 - a) for c = 2a + 1. Always <= -2.
pub fn lemma_cycle_delta(c: usize) -> Result<i64, GoodVertexError> {
    if c < 7 {
        return Err(GoodVertexError::CycleTooShort(c));
    }
    let a = (c / 2) as i64;
    Ok(if c % 2 == 0 {
        a * a - (2 * a * a - 3 * a + 1)
    } else {
        (a * a + a) - (2 * a * a - a)
    })
}

/// delta(w) for the small-cycle block (C_c plus a length-2 path hanging two
/// steps from w): -2 for c = 5, -5 for c = 6.
pub fn lemma_small_cycle_delta(c: usize) -> Result<i64, GoodVertexError> {
    match c {
        5 => Ok(-2),
        6 => Ok(-5),
        _ => Err(GoodVertexError::CycleOutOfRange(c)),
    }
}

/// All good vertices of a connected graph, ascending: the non-cut vertices v
/// with W(G - v) = W(G), each checked by recomputing W(G - v) from scratch.
pub fn good_vertices(g: &Graph) -> Result<Vec<VertexId>, GoodVertexError> {
    Ok(analyze(g)?.good_vertices)
}

/// Full invariant report: Wiener index, transmissions, the per-vertex
/// deletion change for non-cut vertices, and the good set.
pub fn analyze(g: &Graph) -> Result<AnalysisReport, GoodVertexError> {
    if !g.is_connected() {
        return Err(GoodVertexError::Disconnected);
    }
    let wiener = wiener_index(g).expect_finite();
    let transmissions: Vec<u64> =
        g.vertices().map(|v| transmission(g, v).expect("connected")).collect();
    let mut deletion_delta = BTreeMap::new();
    let mut good = Vec::new();
    if g.n() >= 2 {
        let cuts = g.articulation_vertices().expect("connected");
        for v in g.vertices() {
            if cuts.binary_search(&v).is_ok() {
                continue;
            }
            let reduced = g.delete_vertex(v).expect("valid vertex");
            let w_after = wiener_index(&reduced).expect_finite();
            let delta = wiener as i64 - w_after as i64;
            deletion_delta.insert(v, delta);
            if delta == 0 {
                good.push(v);
            }
        }
    }
    Ok(AnalysisReport { wiener, transmissions, good_vertices: good, deletion_delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::Wiener;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// C_c with a distinguished vertex w = 0 and v1 = 1 its cycle neighbor.
    fn cycle_profile(c: usize) -> DeletionDelta {
        delta_profile(&Graph::cycle(c), 1).unwrap()
    }

    #[test]
    fn delta_profile_cycle_examples() {
        assert_eq!(cycle_profile(7).per_vertex_delta[&0], -3);
        assert_eq!(cycle_profile(8).per_vertex_delta[&0], -5);
    }

    #[test]
    fn delta_profile_rejects_cut_vertex() {
        let p3 = Graph::path(3);
        assert_eq!(delta_profile(&p3, 1), Err(GoodVertexError::DisconnectingDeletion(1)));
    }

    #[test]
    fn delta_profile_totals_are_definitional() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(4..=12);
            let g = crate::random::random_unicyclic(n, &mut rng);
            let cuts = g.articulation_vertices().unwrap();
            for v1 in g.vertices().filter(|v| cuts.binary_search(v).is_err()) {
                let p = delta_profile(&g, v1).unwrap();
                let w = wiener_index(&g).expect_finite() as i64;
                let w2 = wiener_index(&g.delete_vertex(v1).unwrap()).expect_finite() as i64;
                assert_eq!(p.total_delta, w - w2);
                for (&x, &d) in &p.per_vertex_delta {
                    let x2 = if x > v1 { x - 1 } else { x };
                    let t = transmission(&g, x).unwrap() as i64;
                    let t2 = transmission(&g.delete_vertex(v1).unwrap(), x2).unwrap() as i64;
                    assert_eq!(d, t - t2);
                }
            }
        }
    }

    #[test]
    fn pendant_shift_is_delta_plus_one() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..80 {
            let n = rng.random_range(4..=12);
            let g = crate::random::random_unicyclic(n, &mut rng);
            let cuts = g.articulation_vertices().unwrap();
            let Some(v1) = g.vertices().find(|v| cuts.binary_search(v).is_err()) else {
                continue;
            };
            let base = delta_profile(&g, v1).unwrap();
            for u in g.vertices().filter(|&u| u != v1) {
                let shifted = pendant_delta_shift(&g, v1, u).unwrap();
                assert_eq!(shifted, base.per_vertex_delta[&u] + 1);
            }
        }
    }

    #[test]
    fn lemma_cycle_delta_examples() {
        assert_eq!(lemma_cycle_delta(7), Ok(-3));
        assert_eq!(lemma_cycle_delta(8), Ok(-5));
        assert_eq!(lemma_cycle_delta(9), Ok(-8));
        assert_eq!(lemma_cycle_delta(6), Err(GoodVertexError::CycleTooShort(6)));
    }

    #[test]
    fn lemma_cycle_delta_is_at_most_minus_two() {
        for c in 7..=100 {
            assert!(lemma_cycle_delta(c).unwrap() <= -2, "c={c}");
        }
    }

    #[test]
    fn lemma_cycle_delta_matches_measurement() {
        // glue one C_c at w = 0 of a pendant vertex (so w keeps a non-cycle
        // side), delete a neighbor of w on the cycle, and measure delta(w)
        for c in 7..=14 {
            let mut edges = vec![(0, c)]; // pendant hanging at w
            edges.extend((0..c).map(|i| (i, (i + 1) % c)));
            let g = Graph::from_edges(c + 1, &edges).unwrap();
            let measured = delta_profile(&g, 1).unwrap().per_vertex_delta[&0];
            assert_eq!(measured, lemma_cycle_delta(c).unwrap(), "c={c}");
        }
    }

    #[test]
    fn lemma_small_cycle_delta_examples() {
        assert_eq!(lemma_small_cycle_delta(5), Ok(-2));
        assert_eq!(lemma_small_cycle_delta(6), Ok(-5));
        assert_eq!(lemma_small_cycle_delta(7), Err(GoodVertexError::CycleOutOfRange(7)));
    }

    /// The small-cycle block: C_c with a 2-path at the vertex two steps from
    /// w = 0; v1 = 1 sits between them.
    fn small_block(c: usize) -> Graph {
        let mut edges: Vec<_> = (0..c).map(|i| (i, (i + 1) % c)).collect();
        edges.push((2, c));
        edges.push((c, c + 1));
        Graph::from_edges(c + 2, &edges).unwrap()
    }

    #[test]
    fn lemma_small_cycle_delta_matches_measurement() {
        for c in [5, 6] {
            let measured = delta_profile(&small_block(c), 1).unwrap().per_vertex_delta[&0];
            assert_eq!(measured, lemma_small_cycle_delta(c).unwrap(), "c={c}");
        }
    }

    #[test]
    fn good_vertices_examples() {
        assert_eq!(good_vertices(&Graph::cycle(11)).unwrap(), (0..11).collect::<Vec<_>>());
        assert_eq!(good_vertices(&Graph::cycle(10)).unwrap(), vec![]);
        assert_eq!(good_vertices(&Graph::complete(5)).unwrap(), vec![]);
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(good_vertices(&disc), Err(GoodVertexError::Disconnected));
    }

    #[test]
    fn trees_have_no_good_vertices() {
        for n in 1..=10 {
            for t in crate::trees::enumerate_trees(n) {
                assert_eq!(good_vertices(&t).unwrap(), vec![], "{t:?}");
            }
        }
    }

    #[test]
    fn analyze_c11_is_soltes() {
        let report = analyze(&Graph::cycle(11)).unwrap();
        assert_eq!(report.wiener, 165);
        assert_eq!(report.good_vertices.len(), 11);
        assert!(report.is_soltes());
        assert!(report.transmissions.iter().all(|&t| t == 30));
    }

    #[test]
    fn analyze_p4_skips_cut_vertices() {
        let report = analyze(&Graph::path(4)).unwrap();
        assert_eq!(report.deletion_delta.keys().copied().collect::<Vec<_>>(), vec![0, 3]);
        assert!(report.good_vertices.is_empty());
    }

    #[test]
    fn analyze_single_vertex() {
        let report = analyze(&Graph::trivial()).unwrap();
        assert_eq!(report.wiener, 0);
        assert!(report.good_vertices.is_empty());
        assert!(report.deletion_delta.is_empty());
    }

    #[test]
    fn good_set_matches_direct_recomputation() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..60 {
            let n = rng.random_range(3..=11);
            let g = crate::random::random_unicyclic(n, &mut rng);
            let via_analysis = good_vertices(&g).unwrap();
            let mut direct = Vec::new();
            let w = wiener_index(&g);
            for v in g.vertices() {
                let reduced = g.delete_vertex(v).unwrap();
                if reduced.is_connected() && wiener_index(&reduced) == w {
                    direct.push(v);
                }
            }
            assert_eq!(via_analysis, direct);
            assert_ne!(w, Wiener::Infinite);
        }
    }
}
