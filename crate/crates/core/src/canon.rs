//! Exact canonical forms by individualization-refinement.
//!
//! The certificate is the minimum, over the leaves of the refinement search
//! tree, of (order, per-position colors, relabeled adjacency bitmap). Two
//! graphs get equal certificates iff they are isomorphic (color-preservingly,
//! when an initial coloring is supplied) — no hashing shortcuts. Discovered
//! automorphisms prune search-tree siblings, but only automorphisms fixing
//! the whole individualization prefix pointwise, which keeps the pruning
//! sound without a full stabilizer-chain computation.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

/// Relabeling-invariant certificate of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form_colored(g, &vec![0; g.n()])
}

/// Canonical form of a vertex-colored graph; certificates are equal iff the
/// graphs are isomorphic by a color-preserving map.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    assert_eq!(colors.len(), g.n());
    let mut search = Search::new(g, colors);
    let mut cells: Vec<Vec<VertexId>> = {
        let mut by_color: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for v in g.vertices() {
            by_color.entry(colors[v]).or_default().push(v);
        }
        by_color.into_values().collect()
    };
    search.refine(&mut cells);
    search.node(cells);
    CanonicalForm(search.best.expect("search visits at least one leaf"))
}

/// True iff some automorphism of `g` maps `u` to `v` (orbit test): mark one
/// vertex with a fresh color and compare certificates.
pub fn same_orbit(g: &Graph, u: VertexId, v: VertexId) -> bool {
    if u == v {
        return true;
    }
    let mut colors = vec![0u32; g.n()];
    colors[u] = 1;
    let cu = canonical_form_colored(g, &colors);
    colors[u] = 0;
    colors[v] = 1;
    cu == canonical_form_colored(g, &colors)
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    n: usize,
    /// adjacency as bit rows for O(1) edge tests in certificates
    bits: Vec<Vec<u64>>,
    best: Option<Vec<u8>>,
    best_labeling: Vec<VertexId>,
    first: Option<Vec<u8>>,
    first_labeling: Vec<VertexId>,
    /// automorphisms discovered from equal-certificate leaf pairs
    automorphisms: Vec<Vec<VertexId>>,
    /// vertices individualized along the current path
    prefix: Vec<VertexId>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, colors: &'a [u32]) -> Self {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut bits = vec![vec![0u64; words]; n];
        for (u, v) in g.edges() {
            bits[u][v / 64] |= 1 << (v % 64);
            bits[v][u / 64] |= 1 << (u % 64);
        }
        Search {
            g,
            colors,
            n,
            bits,
            best: None,
            best_labeling: Vec::new(),
            first: None,
            first_labeling: Vec::new(),
            automorphisms: Vec::new(),
            prefix: Vec::new(),
        }
    }

    /// Splits cells by neighbor counts until the partition is equitable.
    /// Operates only on counts and cell order, so the outcome commutes with
    /// isomorphism.
    fn refine(&self, cells: &mut Vec<Vec<VertexId>>) {
        let mut counts = vec![0u32; self.n];
        'stable: loop {
            for splitter in 0..cells.len() {
                counts.fill(0);
                for &v in &cells[splitter] {
                    for &w in self.g.neighbors(v) {
                        counts[w] += 1;
                    }
                }
                for d in 0..cells.len() {
                    if cells[d].len() <= 1 {
                        continue;
                    }
                    let c0 = counts[cells[d][0]];
                    if cells[d].iter().all(|&v| counts[v] == c0) {
                        continue;
                    }
                    let mut groups: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
                    for &v in &cells[d] {
                        groups.entry(counts[v]).or_default().push(v);
                    }
                    let replacement: Vec<Vec<VertexId>> = groups.into_values().collect();
                    cells.splice(d..=d, replacement);
                    continue 'stable;
                }
            }
            break;
        }
    }

    fn node(&mut self, cells: Vec<Vec<VertexId>>) {
        if cells.iter().all(|c| c.len() == 1) {
            self.leaf(&cells);
            return;
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| cells[i].len())
            .expect("non-discrete partition has a splittable cell");
        let candidates = cells[target].clone();
        let mut processed: Vec<VertexId> = Vec::new();
        for &v in &candidates {
            if self.pruned_by_automorphism(v, &processed) {
                continue;
            }
            let mut child = cells.clone();
            let rest: Vec<VertexId> =
                child[target].iter().copied().filter(|&w| w != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            self.refine(&mut child);
            self.prefix.push(v);
            self.node(child);
            self.prefix.pop();
            processed.push(v);
        }
    }

    /// True if `v` lies in the same orbit as an already-processed sibling
    /// under the subgroup generated by discovered automorphisms that fix the
    /// current prefix pointwise. Under-approximates the true stabilizer, so
    /// skipping is always sound.
    fn pruned_by_automorphism(&self, v: VertexId, processed: &[VertexId]) -> bool {
        if processed.is_empty() {
            return false;
        }
        let fixing: Vec<&Vec<VertexId>> = self
            .automorphisms
            .iter()
            .filter(|a| self.prefix.iter().all(|&p| a[p] == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut dsu: Vec<usize> = (0..self.n).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                dsu[x] = find(dsu, dsu[x]);
            }
            dsu[x]
        }
        for a in fixing {
            for x in 0..self.n {
                let (rx, ry) = (find(&mut dsu, x), find(&mut dsu, a[x]));
                if rx != ry {
                    dsu[rx] = ry;
                }
            }
        }
        let rv = find(&mut dsu, v);
        processed.iter().any(|&u| find(&mut dsu, u) == rv)
    }

    fn leaf(&mut self, cells: &[Vec<VertexId>]) {
        // labeling[orig] = canonical position
        let mut labeling = vec![0usize; self.n];
        let mut inverse = vec![0usize; self.n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
            inverse[pos] = cell[0];
        }
        let cert = self.certificate(&inverse);

        if let Some(first) = &self.first {
            if cert == *first {
                self.record_automorphism(&self.first_labeling.clone(), &labeling);
            }
        } else {
            self.first = Some(cert.clone());
            self.first_labeling = labeling.clone();
        }
        match &self.best {
            None => {
                self.best = Some(cert);
                self.best_labeling = labeling;
            }
            Some(best) => {
                if cert < *best {
                    self.best = Some(cert);
                    self.best_labeling = labeling;
                } else if cert == *best && labeling != self.best_labeling {
                    self.record_automorphism(&self.best_labeling.clone(), &labeling);
                }
            }
        }
    }

    /// Equal certificates under labelings a and b yield the automorphism
    /// x -> b^{-1}(a(x)).
    fn record_automorphism(&mut self, a: &[usize], b: &[usize]) {
        let mut b_inv = vec![0usize; self.n];
        for (orig, &pos) in b.iter().enumerate() {
            b_inv[pos] = orig;
        }
        let phi: Vec<usize> = (0..self.n).map(|x| b_inv[a[x]]).collect();
        if phi.iter().enumerate().any(|(x, &y)| x != y) && !self.automorphisms.contains(&phi) {
            self.automorphisms.push(phi);
        }
    }

    fn certificate(&self, inverse: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 + 4 * n + n * n / 16 + 1);
        out.extend_from_slice(&(n as u32).to_le_bytes());
        for pos in 0..n {
            out.extend_from_slice(&self.colors[inverse[pos]].to_le_bytes());
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for p in 0..n {
            let vp = inverse[p];
            for q in p + 1..n {
                let vq = inverse[q];
                let bit = (self.bits[vp][vq / 64] >> (vq % 64)) & 1;
                acc = acc << 1 | bit as u8;
                nbits += 1;
                if nbits == 8 {
                    out.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(acc << (8 - nbits));
        }
        out
    }
}
