//! Seeded random instance generators for tests and the self-check suite.

use rand::Rng;

use crate::graph::Graph;

/// Uniform random labeled tree on `n` vertices via a Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::trivial();
    }
    if n == 2 {
        return Graph::path(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // smallest-leaf elimination
    let mut cursor = {
        let mut v = 0;
        while degree[v] != 1 {
            v += 1;
        }
        v
    };
    let mut leaf = cursor;
    for &s in &seq {
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 && s < cursor {
            leaf = s;
        } else {
            cursor += 1;
            while degree[cursor] != 1 {
                cursor += 1;
            }
            leaf = cursor;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Random connected unicyclic graph: a random tree plus one random non-edge.
pub fn random_unicyclic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3, "a unicyclic graph needs at least 3 vertices");
    loop {
        let t = random_tree(n, rng);
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !t.has_edge(u, v) {
            let mut edges: Vec<_> = t.edges().collect();
            edges.push((u.min(v), u.max(v)));
            return Graph::from_edges(n, &edges).expect("tree plus non-edge");
        }
    }
}

/// Random tree plus up to `extra` random non-edges (still connected, usually
/// not a cactus).
pub fn random_connected<R: Rng + ?Sized>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let t = random_tree(n, rng);
    let mut edges: Vec<_> = t.edges().collect();
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let e = (u.min(v), u.max(v));
        if u != v && !edges.contains(&e) {
            edges.push(e);
        }
    }
    Graph::from_edges(n, &edges).expect("tree plus extra edges")
}

/// Random connected cactus on exactly `n` vertices, grown by attaching
/// pendant edges and cycles (lengths 3..=6 as budget allows) at random
/// vertices.
pub fn random_cactus<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut built = 1;
    while built < n {
        let at = rng.random_range(0..built);
        let budget = n - built;
        let max_cycle = (budget + 1).min(6);
        if budget >= 2 && max_cycle >= 3 && rng.random_range(0..3) > 0 {
            let c = rng.random_range(3..=max_cycle);
            // cycle at..new_0..new_{c-2}..at
            let first = built;
            edges.push((at, first));
            for i in 0..c - 2 {
                edges.push((first + i, first + i + 1));
            }
            edges.push((first + c - 2, at));
            built += c - 1;
        } else {
            edges.push((at, built));
            built += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("cactus growth yields valid edges")
}
