//! Isomorphism-free enumeration of connected unicyclic graphs.
//!
//! A unicyclic graph is its unique cycle C_c plus a rooted tree hanging at
//! each cycle vertex (a bare vertex counts as the one-vertex tree), and two
//! such graphs are isomorphic iff their tuples of rooted-tree codes agree up
//! to a rotation or reflection of the cycle. The fast path therefore streams,
//! for each cycle length c and each size composition of n into c parts, all
//! code tuples that are lexicographically minimal under the dihedral action —
//! each isomorphism class appears exactly once, with memory bounded by the
//! rooted-tree table rather than the class count.
//!
//! The reference fallback (every free tree plus one non-edge, deduplicated by
//! certificate) is kept for cross-validation.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::trees::{enumerate_trees, RootedTreeTable, TreeCode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("unicyclic graphs need n >= 3, got {0}")]
    OrderTooSmall(usize),
}

/// One unit of enumeration work: a cycle length and a dihedral-minimal size
/// composition, with the precomputed index maps of the composition's
/// dihedral stabilizer.
#[derive(Debug, Clone)]
pub struct CompositionUnit {
    pub cycle_len: usize,
    /// Tree sizes per cycle slot; sizes[i] >= 1, sum = n.
    pub sizes: Vec<usize>,
    /// Non-identity dihedral maps fixing `sizes`; entry m satisfies
    /// (sigma T)[i] = T[m[i]].
    stabilizer: Vec<Vec<usize>>,
}

/// All dihedral index maps for cycle length c, identity included first.
fn dihedral_maps(c: usize) -> Vec<Vec<usize>> {
    let mut maps = Vec::with_capacity(2 * c);
    for t in 0..c {
        maps.push((0..c).map(|i| (i + t) % c).collect());
    }
    for t in 0..c {
        maps.push((0..c).map(|i| (t + c - i) % c).collect());
    }
    maps
}

fn apply(map: &[usize], sizes: &[usize]) -> Vec<usize> {
    map.iter().map(|&j| sizes[j]).collect()
}

/// Size compositions of n into c parts that are lex-minimal under the
/// dihedral action, each with its stabilizer.
fn canonical_compositions(n: usize, c: usize) -> Vec<CompositionUnit> {
    let maps = dihedral_maps(c);
    let mut out = Vec::new();
    let mut sizes = Vec::with_capacity(c);
    compose(n, c, &mut sizes, &mut |sizes: &[usize]| {
        let mut stabilizer = Vec::new();
        for map in maps.iter().skip(1) {
            let image = apply(map, sizes);
            match image.as_slice().cmp(sizes) {
                std::cmp::Ordering::Less => return,
                std::cmp::Ordering::Equal => stabilizer.push(map.clone()),
                std::cmp::Ordering::Greater => {}
            }
        }
        out.push(CompositionUnit { cycle_len: c, sizes: sizes.to_vec(), stabilizer });
    });
    out
}

fn compose(remaining: usize, parts: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 1 {
        acc.push(remaining);
        f(acc);
        acc.pop();
        return;
    }
    for first in 1..=remaining - parts + 1 {
        acc.push(first);
        compose(remaining - first, parts - 1, acc, f);
        acc.pop();
    }
}

/// All enumeration units for order n, by ascending cycle length then
/// composition order. Deterministic.
pub fn composition_units(n: usize) -> Result<Vec<CompositionUnit>, EnumerateError> {
    if n < 3 {
        return Err(EnumerateError::OrderTooSmall(n));
    }
    Ok((3..=n).flat_map(|c| canonical_compositions(n, c)).collect())
}

/// Rooted-tree table big enough for every slot of an order-n enumeration.
pub fn tree_table_for(n: usize) -> Arc<RootedTreeTable> {
    Arc::new(RootedTreeTable::up_to((n - 2).max(1)))
}

/// Streams every canonical tuple of the unit as a built graph: cycle
/// vertices 0..c in ring order, tree vertices appended in DFS preorder per
/// slot.
pub fn for_each_in_unit(
    table: &RootedTreeTable,
    unit: &CompositionUnit,
    mut f: impl FnMut(Graph),
) {
    let c = unit.cycle_len;
    let slots: Vec<&[TreeCode]> = unit.sizes.iter().map(|&s| table.of_size(s)).collect();
    let mut choice = vec![0usize; c];
    loop {
        if tuple_is_canonical(&slots, &choice, &unit.stabilizer) {
            f(build_graph(c, &unit.sizes, &slots, &choice));
        }
        // odometer advance
        let mut slot = c;
        loop {
            if slot == 0 {
                return;
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < slots[slot].len() {
                break;
            }
            choice[slot] = 0;
        }
    }
}

/// T <= sigma(T) for every stabilizer map: sizes already agree slot-wise, so
/// only code bytes decide.
fn tuple_is_canonical(slots: &[&[TreeCode]], choice: &[usize], stabilizer: &[Vec<usize>]) -> bool {
    'maps: for map in stabilizer {
        for i in 0..choice.len() {
            let a = slots[i][choice[i]].as_bytes();
            let j = map[i];
            let b = slots[j][choice[j]].as_bytes();
            match a.cmp(b) {
                std::cmp::Ordering::Less => continue 'maps,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

fn build_graph(c: usize, sizes: &[usize], slots: &[&[TreeCode]], choice: &[usize]) -> Graph {
    let n: usize = sizes.iter().sum();
    let mut edges = Vec::with_capacity(n);
    for i in 0..c {
        edges.push((i, (i + 1) % c));
    }
    let mut next = c;
    for i in 0..c {
        next = slots[i][choice[i]].write_edges(i, next, &mut edges);
    }
    debug_assert_eq!(next, n);
    Graph::from_edges(n, &edges).expect("necklace layout is a valid graph")
}

/// One representative per isomorphism class of connected unicyclic graphs on
/// n vertices, in a deterministic stream with bounded memory.
pub fn enumerate_unicyclic(n: usize) -> Result<UnicyclicStream, EnumerateError> {
    let units = composition_units(n)?;
    Ok(UnicyclicStream {
        table: tree_table_for(n),
        units,
        unit_idx: 0,
        choice: None,
    })
}

pub struct UnicyclicStream {
    table: Arc<RootedTreeTable>,
    units: Vec<CompositionUnit>,
    unit_idx: usize,
    /// Next untested odometer state within the current unit.
    choice: Option<Vec<usize>>,
}

impl Iterator for UnicyclicStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.choice.is_none() {
                if self.unit_idx >= self.units.len() {
                    return None;
                }
                self.choice = Some(vec![0; self.units[self.unit_idx].cycle_len]);
            }
            let unit = &self.units[self.unit_idx];
            let slots: Vec<&[TreeCode]> =
                unit.sizes.iter().map(|&s| self.table.of_size(s)).collect();
            let cand = self.choice.take().expect("just ensured");
            // precompute the successor before testing
            let mut succ = cand.clone();
            let mut slot = succ.len();
            let advanced = loop {
                if slot == 0 {
                    break false;
                }
                slot -= 1;
                succ[slot] += 1;
                if succ[slot] < slots[slot].len() {
                    break true;
                }
                succ[slot] = 0;
            };
            if advanced {
                self.choice = Some(succ);
            } else {
                self.unit_idx += 1;
            }
            if tuple_is_canonical(&slots, &cand, &unit.stabilizer) {
                return Some(build_graph(unit.cycle_len, &unit.sizes, &slots, &cand));
            }
        }
    }
}

/// Reference implementation: every free tree plus one non-edge, deduplicated
/// by canonical form. Quadratic in the class count; for cross-validation.
pub fn unicyclic_by_tree_plus_edge(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n < 3 {
        return Err(EnumerateError::OrderTooSmall(n));
    }
    let mut seen: HashMap<CanonicalForm, ()> = HashMap::new();
    let mut out = Vec::new();
    for tree in enumerate_trees(n) {
        for u in 0..n {
            for v in u + 1..n {
                if tree.has_edge(u, v) {
                    continue;
                }
                let mut edges: Vec<_> = tree.edges().collect();
                edges.push((u, v));
                let g = Graph::from_edges(n, &edges).expect("tree plus non-edge");
                if seen.insert(canonical_form(&g), ()).is_none() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // connected unicyclic class counts for n = 3..=10
    const CLASS_COUNTS: [usize; 8] = [1, 2, 5, 13, 33, 89, 240, 657];

    #[test]
    fn class_counts_small_orders() {
        for (i, &want) in CLASS_COUNTS.iter().enumerate() {
            let n = i + 3;
            assert_eq!(enumerate_unicyclic(n).unwrap().count(), want, "n={n}");
        }
    }

    #[test]
    fn n3_is_the_triangle() {
        let gs: Vec<Graph> = enumerate_unicyclic(3).unwrap().collect();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_tiny_orders() {
        assert_eq!(enumerate_unicyclic(2).err(), Some(EnumerateError::OrderTooSmall(2)));
    }

    #[test]
    fn every_graph_is_connected_unicyclic_and_distinct() {
        for n in 3..=9 {
            let mut certs = HashSet::new();
            for g in enumerate_unicyclic(n).unwrap() {
                assert_eq!(g.n(), n);
                assert_eq!(g.m(), n, "m = n for unicyclic");
                assert!(g.is_connected());
                assert!(certs.insert(canonical_form(&g)), "duplicate class, n={n}: {g:?}");
            }
        }
    }

    #[test]
    fn fast_path_agrees_with_fallback_small() {
        for n in 3..=8 {
            let fast: Vec<CanonicalForm> =
                enumerate_unicyclic(n).unwrap().map(|g| canonical_form(&g)).collect();
            let slow: Vec<CanonicalForm> =
                unicyclic_by_tree_plus_edge(n).unwrap().iter().map(canonical_form).collect();
            let fast_set: HashSet<_> = fast.iter().cloned().collect();
            let slow_set: HashSet<_> = slow.iter().cloned().collect();
            assert_eq!(fast.len(), fast_set.len());
            assert_eq!(slow.len(), slow_set.len());
            assert_eq!(fast_set, slow_set, "n={n}");
        }
    }

    #[test]
    fn units_partition_the_stream() {
        let n = 9;
        let units = composition_units(n).unwrap();
        let table = tree_table_for(n);
        let mut by_units = 0usize;
        for unit in &units {
            for_each_in_unit(&table, unit, |_| by_units += 1);
        }
        assert_eq!(by_units, enumerate_unicyclic(n).unwrap().count());
    }

    #[test]
    fn cycle_length_census_is_consistent() {
        // every emitted graph's unique cycle has the unit's length
        let n = 8;
        let table = tree_table_for(n);
        for unit in composition_units(n).unwrap() {
            for_each_in_unit(&table, &unit, |g| {
                assert_eq!(g.longest_cycle_length(), unit.cycle_len);
            });
        }
    }
}
