//! Deterministic corpora for scans and tests: a seeded generator for
//! random connected multigraphs and functional-backed posets, an
//! isomorph-free exhaustive enumeration of connected multigraphs by edge
//! augmentation with canonical-form deduplication, and an inductive
//! generator for geometric tiles.

use std::collections::BTreeMap;

use crate::gf2::{BitMatrix, BitVec};
use crate::homology::Graph;
use crate::poset::AdditivePoset;

/// SplitMix64: tiny, fast, and stable across platforms and releases, so
/// seeded corpora never drift.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0) is empty");
        (self.next_u64() % n as u64) as usize
    }
}

/// A random connected multigraph: a random recursive tree on `vertices`
/// plus `extra_edges` uniformly random edges (loops and parallels
/// allowed). The cycle space dimension is exactly `extra_edges`.
pub fn random_connected_multigraph(
    rng: &mut SplitMix64,
    vertices: usize,
    extra_edges: usize,
) -> Graph {
    assert!(vertices >= 1);
    let mut edges = Vec::with_capacity(vertices - 1 + extra_edges);
    for v in 1..vertices {
        edges.push((rng.below(v), v));
    }
    for _ in 0..extra_edges {
        let u = rng.below(vertices);
        let v = rng.below(vertices);
        edges.push((u.min(v), u.max(v)));
    }
    Graph::new(vertices, edges).expect("endpoints are in range")
}

/// A random functional-backed poset of the given dimension: random nonzero
/// functionals are accumulated until they span the dual, plus a few
/// extras, so the common kernel is always trivial.
pub fn random_functional_poset(rng: &mut SplitMix64, dim: usize) -> AdditivePoset {
    assert!(dim >= 1);
    let mut chosen: Vec<BitVec> = Vec::new();
    loop {
        let candidate = BitVec::from_index(dim, 1 + rng.below((1 << dim) - 1));
        if !chosen.contains(&candidate) {
            chosen.push(candidate);
        }
        if BitMatrix::from_rows(chosen.clone(), dim).rank() == dim {
            break;
        }
    }
    for _ in 0..rng.below(dim + 1) {
        let candidate = BitVec::from_index(dim, 1 + rng.below((1 << dim) - 1));
        if !chosen.contains(&candidate) {
            chosen.push(candidate);
        }
    }
    chosen.sort();
    AdditivePoset::from_functionals(dim, &chosen).expect("chosen set spans the dual")
}

// ----------------------------------------------------------------------
// Canonical forms
// ----------------------------------------------------------------------

/// Canonical form of a multigraph under vertex relabeling: the vertex
/// count and a canonical sorted edge list. Computed per connected
/// component (components are canonicalized independently and concatenated
/// in sorted order), with partition refinement plus individualization
/// inside each component. Two graphs are isomorphic iff their canonical
/// forms are equal.
pub fn canonical_form(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let components = split_components(g);
    if components.len() <= 1 {
        return canonical_component(g);
    }
    let mut forms: Vec<(usize, Vec<(usize, usize)>)> =
        components.iter().map(canonical_component).collect();
    forms.sort();
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut offset = 0;
    for (count, component_edges) in &forms {
        edges.extend(
            component_edges
                .iter()
                .map(|&(u, v)| (u + offset, v + offset)),
        );
        offset += count;
    }
    edges.sort_unstable();
    (offset, edges)
}

/// Connected components as standalone graphs (isolated vertices included).
fn split_components(g: &Graph) -> Vec<Graph> {
    let n = g.vertex_count();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut stack = vec![start];
        component[start] = id;
        while let Some(u) = stack.pop() {
            for &(a, b) in g.edges() {
                let other = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if component[other] == usize::MAX {
                    component[other] = id;
                    stack.push(other);
                }
            }
        }
    }
    let mut locals: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut local_of = vec![0usize; n];
    for v in 0..n {
        local_of[v] = locals[component[v]].len();
        locals[component[v]].push(v);
    }
    let mut edge_lists: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
    for &(u, v) in g.edges() {
        edge_lists[component[u]].push((local_of[u], local_of[v]));
    }
    locals
        .into_iter()
        .zip(edge_lists)
        .map(|(vertices, edges)| Graph::new(vertices.len(), edges).expect("local indices in range"))
        .collect()
}

fn canonical_component(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Vec::new());
    }
    let mut loops = vec![0usize; n];
    let mut degree = vec![0usize; n];
    for &(u, v) in g.edges() {
        degree[u] += 1;
        degree[v] += 1;
        if u == v {
            loops[u] += 1;
        }
    }
    let keys: Vec<(usize, usize)> = (0..n).map(|v| (degree[v], loops[v])).collect();
    let mut classes = vec![0usize; n];
    normalize_classes(&mut classes, &keys);
    refine(g, &mut classes);

    let mut best: Option<Vec<(usize, usize)>> = None;
    canonical_search(g, classes, &mut best);
    (n, best.expect("search visits at least one leaf"))
}

fn normalize_classes<K: Ord + Clone>(classes: &mut [usize], keys: &[K]) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    for (v, key) in keys.iter().enumerate() {
        classes[v] = sorted.binary_search(key).expect("key present");
    }
}

/// One-dimensional Weisfeiler-Leman refinement on multigraphs.
fn refine(g: &Graph, classes: &mut Vec<usize>) {
    let n = g.vertex_count();
    loop {
        let mut keys: Vec<(usize, usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut neighbors: Vec<usize> = Vec::new();
            let mut self_loops = 0;
            for &(a, b) in g.edges() {
                if a == v && b == v {
                    self_loops += 1;
                } else if a == v {
                    neighbors.push(classes[b]);
                } else if b == v {
                    neighbors.push(classes[a]);
                }
            }
            neighbors.sort_unstable();
            keys.push((classes[v], self_loops, neighbors));
        }
        let mut next = classes.clone();
        normalize_classes(&mut next, &keys);
        if next == *classes {
            return;
        }
        *classes = next;
    }
}

fn relabel_key(g: &Graph, order: &[usize]) -> Vec<(usize, usize)> {
    // order[v] = canonical position of vertex v.
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (order[u], order[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn canonical_search(g: &Graph, classes: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
    let n = g.vertex_count();
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_class.entry(classes[v]).or_default().push(v);
    }
    if by_class.len() == n {
        // Discrete partition: class ids are canonical positions.
        let key = relabel_key(g, &classes);
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    let members = by_class
        .values()
        .find(|members| members.len() > 1)
        .expect("a non-singleton class exists")
        .clone();
    for v in members {
        // Individualize v: its own class just below the rest of its class.
        let split: Vec<usize> = (0..n)
            .map(|w| {
                if w == v {
                    classes[w] * 2
                } else {
                    classes[w] * 2 + 1
                }
            })
            .collect();
        let mut normalized = vec![0usize; n];
        normalize_classes(&mut normalized, &split);
        refine(g, &mut normalized);
        canonical_search(g, normalized, best);
    }
}

// ----------------------------------------------------------------------
// Exhaustive enumeration
// ----------------------------------------------------------------------

/// All connected multigraphs (loops and parallel edges allowed) with
/// `1..=max_edges` edges, one representative per isomorphism class,
/// generated by edge augmentation with canonical deduplication.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = Vec::new();
    let mut level: BTreeMap<(usize, Vec<(usize, usize)>), Graph> = BTreeMap::new();
    for g in [
        Graph::new(1, vec![(0, 0)]).unwrap(),
        Graph::new(2, vec![(0, 1)]).unwrap(),
    ] {
        level.insert(canonical_form(&g), g);
    }
    for edges in 1..=max_edges {
        out.extend(level.values().cloned());
        if edges == max_edges {
            break;
        }
        let mut next: BTreeMap<(usize, Vec<(usize, usize)>), Graph> = BTreeMap::new();
        for g in level.values() {
            let v = g.vertex_count();
            // An edge between existing vertices (loops included).
            for a in 0..v {
                for b in a..v {
                    let mut edge_list = g.edges().to_vec();
                    edge_list.push((a, b));
                    let bigger = Graph::new(v, edge_list).unwrap();
                    next.entry(canonical_form(&bigger)).or_insert(bigger);
                }
            }
            // A fresh vertex attached by one edge.
            for a in 0..v {
                let mut edge_list = g.edges().to_vec();
                edge_list.push((a, v));
                let bigger = Graph::new(v + 1, edge_list).unwrap();
                next.entry(canonical_form(&bigger)).or_insert(bigger);
            }
        }
        level = next;
    }
    out
}

/// All geometric tiles with at most `max_edges` edges, one per isomorphism
/// class, generated inductively: circles are the weight-1 tiles, and tiles
/// grow by wedging a circle on at any vertex or by disjoint union with a
/// circle.
pub fn geometric_tiles(max_edges: usize) -> Vec<Graph> {
    let circle = |k: usize| -> Graph {
        match k {
            1 => Graph::new(1, vec![(0, 0)]).unwrap(),
            2 => Graph::new(2, vec![(0, 1), (0, 1)]).unwrap(),
            _ => {
                let mut edges: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
                edges.push((0, k - 1));
                Graph::new(k, edges).unwrap()
            }
        }
    };
    let mut tiles: BTreeMap<(usize, Vec<(usize, usize)>), Graph> = BTreeMap::new();
    let mut worklist: Vec<Graph> = Vec::new();
    for k in 1..=max_edges {
        let c = circle(k);
        if tiles.insert(canonical_form(&c), c.clone()).is_none() {
            worklist.push(c);
        }
    }
    // Each tile is expanded once; growing is monotone so this reaches the
    // whole closure.
    while let Some(tile) = worklist.pop() {
        for k in 1..=max_edges.saturating_sub(tile.edge_count()) {
            let c = circle(k);
            let shift = tile.vertex_count();
            // Disjoint union with a circle.
            let mut edges = tile.edges().to_vec();
            edges.extend(c.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
            let union = Graph::new(shift + c.vertex_count(), edges).unwrap();
            if tiles
                .insert(canonical_form(&union), union.clone())
                .is_none()
            {
                worklist.push(union);
            }
            // Wedge at every tile vertex; circles are vertex-transitive
            // so fixing circle vertex 0 loses nothing.
            for v in 0..tile.vertex_count() {
                let map = |w: usize| if w == 0 { v } else { shift + w - 1 };
                let mut edges = tile.edges().to_vec();
                edges.extend(c.edges().iter().map(|&(a, b)| {
                    let (x, y) = (map(a), map(b));
                    (x.min(y), x.max(y))
                }));
                let wedge = Graph::new(shift + c.vertex_count() - 1, edges).unwrap();
                if tiles
                    .insert(canonical_form(&wedge), wedge.clone())
                    .is_none()
                {
                    worklist.push(wedge);
                }
            }
        }
    }
    tiles.into_values().collect()
}
