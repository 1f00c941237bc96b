//! Isomorphism-free enumeration of rooted and free trees.
//!
//! Rooted trees are represented by canonical parenthesis codes: the code of
//! a tree is `(` + the codes of its child subtrees in non-increasing order +
//! `)`. Two rooted trees are isomorphic iff their codes are equal, so
//! generating only canonically-ordered child sequences enumerates each class
//! exactly once. Free trees come out of the rooted machinery by centroid
//! splitting: a tree either has a unique centroid (every root-child subtree
//! smaller than n/2) or two adjacent centroids joining two rooted halves of
//! size n/2 each.

use std::cmp::Ordering;

use crate::graph::Graph;

/// Canonical parenthesis code of a rooted tree. Ordered by (size, bytes) so
/// sequence comparisons sort by subtree size first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeCode(Vec<u8>);

impl TreeCode {
    fn leaf() -> Self {
        TreeCode(b"()".to_vec())
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.0.len() / 2
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Child subtree codes of the root, in the stored (non-increasing) order.
    #[cfg(test)]
    fn children(&self) -> Vec<&[u8]> {
        let inner = &self.0[1..self.0.len() - 1];
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, &b) in inner.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                _ => {
                    depth -= 1;
                    if depth == 0 {
                        out.push(&inner[start..=i]);
                        start = i + 1;
                    }
                }
            }
        }
        out
    }

    /// Adjacency edges with the given root id; descendants are numbered in
    /// DFS preorder starting at `next`. Returns the updated counter.
    pub fn write_edges(
        &self,
        root: usize,
        mut next: usize,
        edges: &mut Vec<(usize, usize)>,
    ) -> usize {
        let mut parents = vec![root];
        for &b in &self.0[1..self.0.len() - 1] {
            if b == b'(' {
                edges.push((*parents.last().unwrap(), next));
                parents.push(next);
                next += 1;
            } else {
                parents.pop();
            }
        }
        next
    }
}

impl PartialOrd for TreeCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

/// All rooted-tree codes by size, memoized up to a maximum size.
pub struct RootedTreeTable {
    by_size: Vec<Vec<TreeCode>>,
}

impl RootedTreeTable {
    pub fn up_to(max_size: usize) -> Self {
        let mut by_size: Vec<Vec<TreeCode>> = vec![Vec::new(), vec![TreeCode::leaf()]];
        for size in 2..=max_size {
            let mut out = Vec::new();
            let mut acc = Vec::with_capacity(2 * size);
            acc.push(b'(');
            gen_children(&by_size, size - 1, None, &mut acc, &mut out);
            out.sort_unstable();
            by_size.push(out);
        }
        RootedTreeTable { by_size }
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    /// Codes of all rooted trees on `size` vertices, ascending.
    pub fn of_size(&self, size: usize) -> &[TreeCode] {
        &self.by_size[size]
    }
}

/// Emits every code `( c_1 c_2 .. c_k )` whose children c_1 >= c_2 >= ..
/// cover `remaining` vertices, each child bounded above by `max_child`.
fn gen_children(
    by_size: &[Vec<TreeCode>],
    remaining: usize,
    max_child: Option<&TreeCode>,
    acc: &mut Vec<u8>,
    out: &mut Vec<TreeCode>,
) {
    if remaining == 0 {
        let mut code = acc.clone();
        code.push(b')');
        out.push(TreeCode(code));
        return;
    }
    let size_cap = max_child.map_or(remaining, |c| c.size().min(remaining));
    for size in (1..=size_cap).rev() {
        for t in by_size[size].iter().rev() {
            if let Some(cap) = max_child {
                if *t > *cap {
                    continue;
                }
            }
            let len = acc.len();
            acc.extend_from_slice(t.as_bytes());
            gen_children(by_size, remaining - size, Some(t), acc, out);
            acc.truncate(len);
        }
    }
}

/// One representative per free (unrooted) tree on `n` vertices.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1);
    let mut graphs: Vec<Graph> = Vec::new();

    if n == 1 {
        graphs.push(Graph::trivial());
    }
    // unique centroid: all root-child subtrees of size <= (n-1)/2
    let cap = n.saturating_sub(1) / 2;
    if cap >= 1 {
        let table = RootedTreeTable::up_to(cap);
        let bound = table.of_size(cap).last().cloned().expect("sizes >= 1 are populated");
        let mut out = Vec::new();
        let mut acc = vec![b'('];
        gen_children(&table.by_size, n - 1, Some(&bound), &mut acc, &mut out);
        for code in out {
            let mut edges = Vec::with_capacity(n - 1);
            code.write_edges(0, 1, &mut edges);
            graphs.push(Graph::from_edges(n, &edges).expect("tree code yields a tree"));
        }
    }
    // two centroids: an edge joining two rooted halves of size n/2
    if n >= 2 && n % 2 == 0 {
        let half = n / 2;
        let table = RootedTreeTable::up_to(half);
        let halves = table.of_size(half);
        for (i, a) in halves.iter().enumerate() {
            for b in &halves[i..] {
                let mut edges = Vec::with_capacity(n - 1);
                let next = a.write_edges(0, 1, &mut edges);
                b.write_edges(next, next + 1, &mut edges);
                edges.push((0, next));
                graphs.push(Graph::from_edges(n, &edges).expect("joined halves form a tree"));
            }
        }
    }
    graphs.into_iter()
}
