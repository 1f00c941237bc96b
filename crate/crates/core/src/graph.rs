//! Immutable simple undirected graphs with the structural predicates the
//! rest of the crate is built on.

use thiserror::Error;

/// Index of a vertex inside a particular [`Graph`]; only meaningful together
/// with a graph of matching order.
pub type VertexId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    InvalidVertex { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("cannot delete the only vertex")]
    SingleVertex,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph of order 0 is not supported")]
    Empty,
}

/// A simple undirected graph on vertices `0..n`, stored as sorted adjacency
/// lists. Values are immutable: the mutating operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidVertex { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::InvalidVertex { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    /// Single vertex, no edges.
    pub fn trivial() -> Self {
        Graph { adj: vec![Vec::new()] }
    }

    /// The path P_n on vertices 0..n in order.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n.max(1), &edges).expect("path edges are valid")
    }

    /// The cycle C_n (n >= 3) on vertices 0..n in cyclic order.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n.max(1), &edges).expect("complete edges are valid")
    }

    /// The star K_{1,n-1}: vertex 0 adjacent to all others.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n.max(1), &edges).expect("star edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) pairs with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, order: self.n() })
        }
    }

    /// Removes `v` and its incident edges. Remaining vertices are compacted
    /// order-preservingly: every id `i > v` becomes `i - 1`.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if self.n() == 1 {
            return Err(GraphError::SingleVertex);
        }
        let relabel = |u: VertexId| if u > v { u - 1 } else { u };
        let mut adj = Vec::with_capacity(self.n() - 1);
        for (u, ns) in self.adj.iter().enumerate() {
            if u == v {
                continue;
            }
            adj.push(ns.iter().filter(|&&w| w != v).map(|&w| relabel(w)).collect());
        }
        Ok(Graph { adj })
    }

    /// Adds a new vertex of degree 1 adjacent to `u`; the new vertex gets id `n`.
    pub fn attach_pendant(&self, u: VertexId) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        let n = self.n();
        let mut adj = self.adj.clone();
        adj[u].push(n);
        adj[u].sort_unstable();
        adj.push(vec![u]);
        Ok(Graph { adj })
    }

    /// True iff a BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Cut vertices of a connected graph, ascending. Iterative lowlink search.
    pub fn articulation_vertices(&self) -> Result<Vec<VertexId>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.block_decomposition().articulation)
    }

    /// Biconnected components of a connected graph as edge sets, plus the cut
    /// vertices. Iterative Hopcroft–Tarjan.
    pub(crate) fn block_decomposition(&self) -> BlockDecomposition {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
        let mut blocks: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
        let mut timer = 0;

        // frame: (vertex, parent, next neighbor index)
        let mut stack: Vec<(VertexId, VertexId, usize)> = Vec::new();
        let root = 0;
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        let mut root_children = 0;

        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < self.adj[u].len() {
                let w = self.adj[u][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    if u == root {
                        root_children += 1;
                    }
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p closes a block; pop its edges
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = edge_stack.last() {
                            if disc[a] >= disc[u] || (a, b) == (p, u) {
                                block.push((a.min(b), a.max(b)));
                                edge_stack.pop();
                                if (a, b) == (p, u) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }

        let articulation = (0..n).filter(|&v| is_cut[v]).collect();
        BlockDecomposition { blocks, articulation }
    }

    /// Length of the longest simple cycle; 0 for acyclic graphs.
    ///
    /// Exhaustive backtracking — exponential in general, so restricted to
    /// small orders (test-scale inputs).
    pub fn longest_cycle_length(&self) -> usize {
        assert!(self.n() <= 20, "exhaustive cycle search is limited to n <= 20");
        let n = self.n();
        let mut best = 0;
        let mut on_path = vec![false; n];
        // Only search cycles whose minimum vertex is the start.
        for start in 0..n {
            on_path[start] = true;
            self.extend_cycle(start, start, 1, &mut on_path, &mut best);
            on_path[start] = false;
        }
        best
    }

    fn extend_cycle(
        &self,
        start: VertexId,
        u: VertexId,
        len: usize,
        on_path: &mut [bool],
        best: &mut usize,
    ) {
        for &w in &self.adj[u] {
            if w == start && len >= 3 {
                *best = (*best).max(len);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                self.extend_cycle(start, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }

    /// Applies a permutation: vertex `v` of `self` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n(), &edges).expect("permutation preserves validity")
    }
}

pub(crate) struct BlockDecomposition {
    /// Each block as its edge list (u < v per edge).
    pub blocks: Vec<Vec<(VertexId, VertexId)>>,
    pub articulation: Vec<VertexId>,
}

impl BlockDecomposition {
    /// Cycle lengths of all blocks that are cycles; `None` if some block is
    /// neither a single edge nor a cycle (i.e. the graph is not a cactus).
    pub fn cycle_lengths(&self) -> Option<Vec<usize>> {
        let mut lengths = Vec::new();
        for block in &self.blocks {
            if block.len() == 1 {
                continue;
            }
            let mut verts: Vec<VertexId> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            verts.sort_unstable();
            verts.dedup();
            if verts.len() != block.len() {
                return None;
            }
            lengths.push(block.len());
        }
        Some(lengths)
    }
}
