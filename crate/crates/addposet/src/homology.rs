//! Graphs, finite mod-2 chain complexes, and their homological additive
//! posets.
//!
//! The top homology of an n-complex is the kernel of the top boundary map;
//! each class has a unique cycle representative in the top cells, and
//! classes are ordered by inclusion of those representatives. For graphs
//! this is the cycle space ordered by edge-set inclusion, where atoms are
//! exactly the embedded circles and tiles the classes whose support is
//! built from circles by wedges and disjoint unions.

use std::collections::{BTreeSet, HashMap};

use crate::gf2::{BitMatrix, BitVec};
use crate::poset::AdditivePoset;
use crate::{Error, Result};

/// A multigraph with loops: indexed edges over `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        for &(u, v) in &edges {
            if u >= vertices {
                return Err(Error::InvalidVertex { index: u });
            }
            if v >= vertices {
                return Err(Error::InvalidVertex { index: v });
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// Mod-2 incidence matrix `∂1`: rows are vertices, columns edges.
    /// A loop has zero boundary.
    pub fn boundary_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.vertices, self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                m.set(u, e, true);
                m.set(v, e, true);
            }
        }
        m
    }

    /// Degree of `v` within the edge subset, counting loops twice.
    pub fn degree_in(&self, v: usize, edges: &BitVec) -> usize {
        edges
            .ones()
            .map(|e| {
                let (a, b) = self.edges[e];
                (a == v) as usize + (b == v) as usize
            })
            .sum()
    }

    /// Checks that every vertex meets an even number of selected edges
    /// (loops twice); the witness is the first odd-degree vertex.
    pub fn check_cycle(&self, edges: &BitVec) -> Result<()> {
        assert_eq!(edges.len(), self.edges.len(), "edge set length mismatch");
        for v in 0..self.vertices {
            if !self.degree_in(v, edges).is_multiple_of(2) {
                return Err(Error::NotACycle { cell: v });
            }
        }
        Ok(())
    }

    /// Connected components, counting isolated vertices.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertices];
        let adjacency = self.adjacency();
        let mut components = 0;
        for start in 0..self.vertices {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                for &(_, w) in &adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adjacency = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adjacency[u].push((e, v));
            if u != v {
                adjacency[v].push((e, u));
            }
        }
        adjacency
    }
}

/// The subgraph carrying a cycle: its edges plus their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    /// Parent vertex ids, ascending.
    pub vertices: Vec<usize>,
    /// Parent edge ids, ascending.
    pub edges: Vec<usize>,
    endpoints: Vec<(usize, usize)>,
}

impl Subgraph {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The subgraph as a standalone graph with vertices relabeled `0..`.
    pub fn to_graph(&self) -> Graph {
        let index: HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let edges = self
            .endpoints
            .iter()
            .map(|&(u, v)| (index[&u], index[&v]))
            .collect();
        Graph {
            vertices: self.vertices.len(),
            edges,
        }
    }
}

/// The support of a cycle: selected edges and their endpoints.
pub fn support(g: &Graph, cycle: &BitVec) -> Subgraph {
    let edges: Vec<usize> = cycle.ones().collect();
    let mut vertices = BTreeSet::new();
    let mut endpoints = Vec::with_capacity(edges.len());
    for &e in &edges {
        let (u, v) = g.edge(e);
        vertices.insert(u);
        vertices.insert(v);
        endpoints.push((u, v));
    }
    Subgraph {
        vertices: vertices.into_iter().collect(),
        edges,
        endpoints,
    }
}

/// A finite mod-2 chain complex: cell counts per degree and boundary
/// matrices with `∂∂ = 0` checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    counts: Vec<usize>,
    boundaries: Vec<BitMatrix>,
}

impl ChainComplex {
    /// `counts[k]` is the number of k-cells; `boundaries[k-1]` is
    /// `∂_k : C_k → C_{k-1}` with `counts[k-1]` rows and `counts[k]` columns.
    pub fn new(counts: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<ChainComplex> {
        if counts.is_empty() || boundaries.len() + 1 != counts.len() {
            return Err(Error::BoundaryShape { degree: 0 });
        }
        for (k, boundary) in boundaries.iter().enumerate() {
            let degree = k + 1;
            if boundary.n_rows() != counts[degree - 1] || boundary.n_cols() != counts[degree] {
                return Err(Error::BoundaryShape { degree });
            }
        }
        for k in 2..counts.len() {
            let upper = &boundaries[k - 1];
            let lower = &boundaries[k - 2];
            for col in 0..upper.n_cols() {
                let mut column = BitVec::zeros(upper.n_rows());
                for r in 0..upper.n_rows() {
                    if upper.get(r, col) {
                        column.set(r, true);
                    }
                }
                if !lower.mul_vec(&column).is_zero() {
                    return Err(Error::BoundarySquareNonzero { degree: k });
                }
            }
        }
        Ok(ChainComplex { counts, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        self.counts[degree]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `∂_k` for `k` in `1..=top_degree`.
    pub fn boundary(&self, k: usize) -> &BitMatrix {
        &self.boundaries[k - 1]
    }

    fn top_boundary(&self) -> BitMatrix {
        let n = self.top_degree();
        if n == 0 {
            BitMatrix::zeros(0, self.counts[0])
        } else {
            self.boundaries[n - 1].clone()
        }
    }
}

/// The homological additive poset of a graph or complex: the kernel of the
/// top boundary, ordered by inclusion of cycle supports. Elements are
/// coefficient vectors over `basis`; the poset backend is functional,
/// with one coordinate functional per top cell restricted to the kernel.
#[derive(Clone, Debug)]
pub struct HomologyPoset {
    top_cells: usize,
    boundary: BitMatrix,
    basis: Vec<BitVec>,
    /// Top-cell positions where coefficients can be read directly: basis
    /// vector `i` is the only one with a 1 at `coeff_positions[i]`.
    coeff_positions: Vec<usize>,
    poset: AdditivePoset,
}

/// A homology class: coefficients over the poset basis together with the
/// unique cycle representative over the top cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub coeffs: BitVec,
    pub cycle: BitVec,
}

impl HomologyPoset {
    fn build(
        top_cells: usize,
        boundary: BitMatrix,
        basis: Vec<BitVec>,
        coeff_positions: Vec<usize>,
    ) -> HomologyPoset {
        let dim = basis.len();
        // Cell-coordinate functionals restricted to the kernel: the j-th
        // cell reads off each basis vector's j-th bit. Duplicates and
        // zeros are dropped.
        let mut functionals: BTreeSet<BitVec> = BTreeSet::new();
        for j in 0..top_cells {
            let mut f = BitVec::zeros(dim);
            for (i, b) in basis.iter().enumerate() {
                if b.get(j) {
                    f.set(i, true);
                }
            }
            if !f.is_zero() {
                functionals.insert(f);
            }
        }
        let fns: Vec<BitVec> = functionals.into_iter().collect();
        let poset = AdditivePoset::from_functionals(dim, &fns)
            .expect("cell functionals separate kernel classes");
        HomologyPoset {
            top_cells,
            boundary,
            basis,
            coeff_positions,
            poset,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn top_cells(&self) -> usize {
        self.top_cells
    }

    /// The cycle basis over top cells, aligned with coefficient positions.
    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn poset(&self) -> &AdditivePoset {
        &self.poset
    }

    /// The cycle representative of a coefficient vector.
    pub fn cycle_of(&self, coeffs: &BitVec) -> BitVec {
        assert_eq!(coeffs.len(), self.dim(), "coefficient length mismatch");
        let mut cycle = BitVec::zeros(self.top_cells);
        for i in coeffs.ones() {
            cycle.xor_assign(&self.basis[i]);
        }
        cycle
    }

    /// Coefficients of a cycle, or `None` when it is not in the kernel span.
    pub fn coeffs_of(&self, cycle: &BitVec) -> Option<BitVec> {
        assert_eq!(cycle.len(), self.top_cells, "cycle length mismatch");
        let mut coeffs = BitVec::zeros(self.dim());
        for (i, &p) in self.coeff_positions.iter().enumerate() {
            if cycle.get(p) {
                coeffs.set(i, true);
            }
        }
        (self.cycle_of(&coeffs) == *cycle).then_some(coeffs)
    }

    /// The class of a top-cell set; rejects non-cycles with the first
    /// odd-incidence boundary cell as witness.
    pub fn class_from_cells(&self, cells: &BitVec) -> Result<HomologyClass> {
        assert_eq!(cells.len(), self.top_cells, "cell set length mismatch");
        let image = self.boundary.mul_vec(cells);
        if let Some(cell) = image.ones().next() {
            return Err(Error::NotACycle { cell });
        }
        let coeffs = self
            .coeffs_of(cells)
            .expect("every cycle lies in the kernel span");
        Ok(HomologyClass {
            coeffs,
            cycle: cells.clone(),
        })
    }

    pub fn class_from_coeffs(&self, coeffs: &BitVec) -> HomologyClass {
        HomologyClass {
            coeffs: coeffs.clone(),
            cycle: self.cycle_of(coeffs),
        }
    }

    /// All `2^dim` classes in coefficient index order.
    pub fn classes(&self) -> impl Iterator<Item = HomologyClass> + '_ {
        (0..1usize << self.dim())
            .map(|i| self.class_from_coeffs(&BitVec::from_index(self.dim(), i)))
    }

    /// A strict relation `x < y` between nonzero classes, if one exists.
    /// The order is trivial exactly when this returns `None`.
    pub fn nontrivial_relation(&self) -> Option<(HomologyClass, HomologyClass)> {
        let cycles: Vec<BitVec> = (0..1usize << self.dim())
            .map(|i| self.cycle_of(&BitVec::from_index(self.dim(), i)))
            .collect();
        for (i, x) in cycles.iter().enumerate().skip(1) {
            for (j, y) in cycles.iter().enumerate().skip(1) {
                if i != j && x.subset_of(y) {
                    return Some((
                        self.class_from_coeffs(&BitVec::from_index(self.dim(), i)),
                        self.class_from_coeffs(&BitVec::from_index(self.dim(), j)),
                    ));
                }
            }
        }
        None
    }
}

/// The homological poset of a graph: fundamental cycles of the BFS spanning
/// forest (lowest vertex first, lowest edge index first) form the basis,
/// one cycle per non-forest edge in ascending edge order.
pub fn h1_poset(g: &Graph) -> HomologyPoset {
    let adjacency = g.adjacency();
    let mut visited = vec![false; g.vertex_count()];
    let mut tree_edge = vec![false; g.edge_count()];
    // Edge path from each vertex back to its BFS root.
    let mut path: Vec<BitVec> = vec![BitVec::zeros(g.edge_count()); g.vertex_count()];
    for root in 0..g.vertex_count() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut incident = adjacency[u].clone();
            incident.sort_unstable();
            for (e, w) in incident {
                if !visited[w] {
                    visited[w] = true;
                    tree_edge[e] = true;
                    path[w] = path[u].clone();
                    path[w].set(e, true);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut basis = Vec::new();
    let mut positions = Vec::new();
    for e in 0..g.edge_count() {
        if tree_edge[e] {
            continue;
        }
        let (u, v) = g.edge(e);
        let mut cycle = path[u].xor(&path[v]);
        cycle.set(e, true);
        debug_assert!(g.check_cycle(&cycle).is_ok());
        basis.push(cycle);
        positions.push(e);
    }
    assert_eq!(
        basis.len(),
        g.edge_count() + g.component_count() - g.vertex_count(),
        "cycle space dimension must be E - V + components"
    );
    HomologyPoset::build(g.edge_count(), g.boundary_matrix(), basis, positions)
}

/// The homological poset of a chain complex: kernel of the top boundary in
/// reduced echelon form, ordered by support inclusion.
pub fn hn_poset(x: &ChainComplex) -> HomologyPoset {
    let boundary = x.top_boundary();
    let top_cells = x.cell_count(x.top_degree());
    let (ech, pivots) = boundary.reduced_echelon();
    let mut is_pivot = vec![false; top_cells];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    let mut positions = Vec::new();
    for free in (0..top_cells).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(top_cells);
        v.set(free, true);
        for (r, &p) in pivots.iter().enumerate() {
            if ech.get(r, free) {
                v.set(p, true);
            }
        }
        basis.push(v);
        positions.push(free);
    }
    HomologyPoset::build(top_cells, boundary, basis, positions)
}

// ----------------------------------------------------------------------
// Geometric recognition
// ----------------------------------------------------------------------

/// Extracts an embedded circle inside a nonzero cycle: a loop edge if one
/// is present, otherwise the first repeated-vertex segment of the walk
/// that always leaves along the lowest-index unused cycle edge.
pub fn find_embedded_circle(g: &Graph, cycle: &BitVec) -> Result<BitVec> {
    if cycle.is_zero() {
        return Err(Error::ZeroElement {
            op: "find_embedded_circle",
        });
    }
    g.check_cycle(cycle)?;
    if let Some(l) = cycle.ones().find(|&e| g.is_loop(e)) {
        return Ok(BitVec::singleton(g.edge_count(), l));
    }
    let first = cycle.lowest_set_bit().expect("cycle is nonzero");
    let (a, b) = g.edge(first);
    let mut vertices = vec![a.min(b), a.max(b)];
    let mut walk = vec![first];
    let mut used = BitVec::zeros(g.edge_count());
    used.set(first, true);
    loop {
        let current = *vertices.last().unwrap();
        if let Some(k) = vertices[..vertices.len() - 1]
            .iter()
            .position(|&v| v == current)
        {
            let mut out = BitVec::zeros(g.edge_count());
            for &e in &walk[k..] {
                out.set(e, true);
            }
            return Ok(out);
        }
        let next = cycle
            .ones()
            .find(|&e| {
                if used.get(e) {
                    return false;
                }
                let (u, v) = g.edge(e);
                u == current || v == current
            })
            .expect("even degrees keep the walk alive until a vertex repeats");
        used.set(next, true);
        let (u, v) = g.edge(next);
        vertices.push(if u == current { v } else { u });
        walk.push(next);
    }
}

/// Geometric atom test: the support is connected and every support vertex
/// has degree exactly 2 (a loop contributing 2). Equivalent to the class
/// being an atom of the homological poset.
pub fn is_atom_class(g: &Graph, cycle: &BitVec) -> bool {
    if cycle.is_zero() {
        return false;
    }
    let graph = support(g, cycle).to_graph();
    if graph.component_count() != 1 {
        return false;
    }
    let all = full_edges(&graph);
    (0..graph.vertex_count()).all(|v| graph.degree_in(v, &all) == 2)
}

/// Recognizes the graphs built from circles by wedges at single vertices
/// and disjoint unions: nonempty, no isolated vertices, and every
/// biconnected block is a single cycle (so no bridges, and no two circles
/// sharing more than one vertex).
pub fn is_geometric_tile(g: &Graph) -> bool {
    if g.edge_count() == 0 {
        return false;
    }
    let all = full_edges(g);
    if (0..g.vertex_count()).any(|v| g.degree_in(v, &all) == 0) {
        return false;
    }
    blocks(g).iter().all(|block| block_is_cycle(g, block))
}

/// Number of circles a geometric tile decomposes into (its weight);
/// `None` when the graph is not a geometric tile.
pub fn geometric_tile_weight(g: &Graph) -> Option<usize> {
    is_geometric_tile(g).then(|| blocks(g).len())
}

fn full_edges(g: &Graph) -> BitVec {
    let mut all = BitVec::zeros(g.edge_count());
    for e in 0..g.edge_count() {
        all.set(e, true);
    }
    all
}

fn block_is_cycle(g: &Graph, block: &[usize]) -> bool {
    if block.len() == 1 {
        return g.is_loop(block[0]);
    }
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for &e in block {
        let (u, v) = g.edge(e);
        *degree.entry(u).or_insert(0) += 1;
        *degree.entry(v).or_insert(0) += 1;
    }
    degree.values().all(|&d| d == 2)
}

/// Biconnected blocks as edge-index lists; loops form their own blocks,
/// parallel edges share a block, bridges are singleton non-loop blocks.
fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct Dfs<'g> {
        adjacency: Vec<Vec<(usize, usize)>>,
        g: &'g Graph,
        disc: Vec<Option<usize>>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
    }
    impl Dfs<'_> {
        fn run(&mut self, u: usize, parent_edge: Option<usize>) {
            self.disc[u] = Some(self.time);
            self.low[u] = self.time;
            self.time += 1;
            let incident = self.adjacency[u].clone();
            for (e, w) in incident {
                if Some(e) == parent_edge {
                    continue;
                }
                if self.g.is_loop(e) {
                    self.blocks.push(vec![e]);
                    continue;
                }
                match self.disc[w] {
                    None => {
                        self.stack.push(e);
                        self.run(w, Some(e));
                        self.low[u] = self.low[u].min(self.low[w]);
                        if self.low[w] >= self.disc[u].unwrap() {
                            let mut block = Vec::new();
                            while let Some(top) = self.stack.pop() {
                                block.push(top);
                                if top == e {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            self.blocks.push(block);
                        }
                    }
                    Some(dw) if dw < self.disc[u].unwrap() => {
                        self.stack.push(e);
                        self.low[u] = self.low[u].min(dw);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let mut dfs = Dfs {
        adjacency: g.adjacency(),
        g,
        disc: vec![None; g.vertex_count()],
        low: vec![0; g.vertex_count()],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.vertex_count() {
        if dfs.disc[v].is_none() {
            dfs.run(v, None);
        }
    }
    dfs.blocks.sort();
    dfs.blocks
}

/// Geometric tile test at the class level; the support of a nonzero class
/// must be a geometric tile.
pub fn is_tile_class(g: &Graph, cycle: &BitVec) -> Result<bool> {
    if cycle.is_zero() {
        return Err(Error::ZeroElement {
            op: "is_tile_class",
        });
    }
    Ok(is_geometric_tile(&support(g, cycle).to_graph()))
}

/// Outcome of the disjoint-circle criterion for two atom classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointCircles {
    /// Independence + tile sum + Euler characteristic zero.
    pub criterion: bool,
    /// Direct oracle: the two supports share no vertex.
    pub geometric: bool,
}

/// Tests whether the circles representing two distinct atoms are disjoint,
/// both through the order-theoretic criterion (independent, sum a tile,
/// `χ(support) = 0`) and the direct geometric oracle; the two must agree.
pub fn disjoint_circles(g: &Graph, b: &BitVec, c: &BitVec) -> Result<DisjointCircles> {
    if !is_atom_class(g, b) || !is_atom_class(g, c) {
        return Err(Error::InvalidParameter {
            what: "disjoint_circles expects atom classes",
        });
    }
    if b == c {
        return Err(Error::InvalidParameter {
            what: "disjoint_circles expects distinct atoms",
        });
    }
    let sum = b.xor(c);
    // Independence in the support order is edge-disjointness.
    let edge_disjoint = b.ones().all(|e| !c.get(e));
    let criterion =
        edge_disjoint && is_tile_class(g, &sum)? && support(g, &sum).euler_characteristic() == 0;
    let sb = support(g, b);
    let sc = support(g, c);
    let geometric = sb.vertices.iter().all(|v| !sc.vertices.contains(v));
    assert_eq!(
        criterion, geometric,
        "disjoint-circle criterion disagrees with the geometric oracle"
    );
    Ok(DisjointCircles {
        criterion,
        geometric,
    })
}

/// Tests whether a nonzero class is represented by a disjoint union of
/// embedded circles: a tile all of whose atom pairs pass the
/// disjoint-circle criterion. Cross-checked against the degree oracle
/// (every support vertex has degree exactly 2).
pub fn disjoint_union_of_circles(g: &Graph, hp: &HomologyPoset, cycle: &BitVec) -> Result<bool> {
    if cycle.is_zero() {
        return Err(Error::ZeroElement {
            op: "disjoint_union_of_circles",
        });
    }
    let mut criterion = is_tile_class(g, cycle)?;
    if criterion {
        let atoms: Vec<BitVec> = hp
            .classes()
            .map(|class| class.cycle)
            .filter(|x| !x.is_zero() && x.subset_of(cycle) && is_atom_class(g, x))
            .collect();
        'pairs: for (i, b) in atoms.iter().enumerate() {
            for c in &atoms[i + 1..] {
                if !disjoint_circles(g, b, c)?.criterion {
                    criterion = false;
                    break 'pairs;
                }
            }
        }
    }
    let graph = support(g, cycle).to_graph();
    let all = full_edges(&graph);
    let geometric = (0..graph.vertex_count()).all(|v| graph.degree_in(v, &all) == 2);
    assert_eq!(
        criterion, geometric,
        "disjoint-union criterion disagrees with the degree oracle"
    );
    Ok(criterion)
}

// ----------------------------------------------------------------------
// Subdivision and inclusion
// ----------------------------------------------------------------------

/// Replaces edge `e = (u, v)` by `(u, w)` at the same index and a fresh
/// edge `(w, v)` at the end, where `w` is a fresh vertex.
pub fn subdivide_edge(g: &Graph, e: usize) -> Result<Graph> {
    if e >= g.edge_count() {
        return Err(Error::InvalidEdge { index: e });
    }
    let (u, v) = g.edge(e);
    let w = g.vertex_count();
    let mut edges = g.edges().to_vec();
    edges[e] = (u, w);
    edges.push((w, v));
    Graph::new(g.vertex_count() + 1, edges)
}

/// Subdivides an edge and returns the subdivided graph together with the
/// induced isomorphism of homological posets (old coefficients to new),
/// verified to be an order isomorphism on all class pairs.
pub fn subdivision_isomorphism(g: &Graph, e: usize) -> Result<(Graph, BitMatrix)> {
    let subdivided = subdivide_edge(g, e)?;
    let old = h1_poset(g);
    let new = h1_poset(&subdivided);
    assert_eq!(
        old.dim(),
        new.dim(),
        "subdivision preserves the cycle space dimension"
    );
    let map_cycle = |cycle: &BitVec| -> BitVec {
        let mut out = BitVec::zeros(subdivided.edge_count());
        for j in cycle.ones() {
            out.set(j, true);
        }
        if cycle.get(e) {
            out.set(g.edge_count(), true);
        }
        out
    };
    let matrix = class_map_matrix(&old, &new, map_cycle);
    verify_order_isomorphism(&old, &new, &matrix, true);
    Ok((subdivided, matrix))
}

/// Pushforward of a graph inclusion on homological posets: given injective
/// vertex and edge maps commuting with endpoints, returns the induced
/// coefficient matrix, verified to be an order embedding carrying atoms to
/// atoms and tiles to tiles.
pub fn inclusion_pushforward(
    small: &Graph,
    big: &Graph,
    vertex_map: &[usize],
    edge_map: &[usize],
) -> Result<BitMatrix> {
    if vertex_map.len() != small.vertex_count() || edge_map.len() != small.edge_count() {
        return Err(Error::NotAnInclusion {
            reason: "map lengths must match the source graph",
        });
    }
    let mut seen_v = std::collections::HashSet::new();
    for &v in vertex_map {
        if v >= big.vertex_count() || !seen_v.insert(v) {
            return Err(Error::NotAnInclusion {
                reason: "vertex map must be injective and in range",
            });
        }
    }
    let mut seen_e = std::collections::HashSet::new();
    for (e, &f) in edge_map.iter().enumerate() {
        if f >= big.edge_count() || !seen_e.insert(f) {
            return Err(Error::NotAnInclusion {
                reason: "edge map must be injective and in range",
            });
        }
        let (u, v) = small.edge(e);
        let (mu, mv) = (vertex_map[u], vertex_map[v]);
        let (bu, bv) = big.edge(f);
        if (mu, mv) != (bu, bv) && (mv, mu) != (bu, bv) {
            return Err(Error::NotAnInclusion {
                reason: "edge map does not commute with endpoints",
            });
        }
    }
    let source = h1_poset(small);
    let target = h1_poset(big);
    let map_cycle = |cycle: &BitVec| -> BitVec {
        let mut out = BitVec::zeros(big.edge_count());
        for e in cycle.ones() {
            out.set(edge_map[e], true);
        }
        out
    };
    let matrix = class_map_matrix(&source, &target, map_cycle);
    verify_order_isomorphism(&source, &target, &matrix, false);
    // Atoms map to atoms and tiles to tiles.
    for class in source.classes() {
        if class.cycle.is_zero() {
            continue;
        }
        let image = map_cycle(&class.cycle);
        assert_eq!(
            is_atom_class(small, &class.cycle),
            is_atom_class(big, &image),
            "inclusion pushforward must carry atoms to atoms"
        );
        assert_eq!(
            is_tile_class(small, &class.cycle)?,
            is_tile_class(big, &image)?,
            "inclusion pushforward must carry tiles to tiles"
        );
    }
    Ok(matrix)
}

fn class_map_matrix(
    source: &HomologyPoset,
    target: &HomologyPoset,
    map_cycle: impl Fn(&BitVec) -> BitVec,
) -> BitMatrix {
    let mut matrix = BitMatrix::zeros(target.dim(), source.dim());
    for (j, basis_cycle) in source.basis().iter().enumerate() {
        let image = map_cycle(basis_cycle);
        let coeffs = target
            .coeffs_of(&image)
            .expect("mapped cycles stay inside the target kernel");
        for i in coeffs.ones() {
            matrix.set(i, j, true);
        }
    }
    matrix
}

fn verify_order_isomorphism(
    source: &HomologyPoset,
    target: &HomologyPoset,
    matrix: &BitMatrix,
    bijective: bool,
) {
    if bijective {
        assert_eq!(
            matrix.rank(),
            source.dim(),
            "induced map must be invertible"
        );
    }
    for x in source.poset().elements() {
        for y in source.poset().elements() {
            let fx = matrix.mul_vec(&x);
            let fy = matrix.mul_vec(&y);
            assert_eq!(
                source.poset().leq(&x, &y),
                target.poset().leq(&fx, &fy),
                "induced map must preserve and reflect the order"
            );
        }
    }
}

/// Suppresses degree-2 vertices (merging their two distinct incident
/// edges) and prunes leaves, preserving the homological poset; circles
/// (single-loop vertices) are left alone.
pub fn suppress_degree_two(g: &Graph) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let vertices = g.vertex_count();
    loop {
        let mut degree = vec![0usize; vertices];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(leaf) = (0..vertices).find(|&v| degree[v] == 1) {
            edges.retain(|&(u, v)| u != leaf && v != leaf);
            continue;
        }
        let candidate = (0..vertices)
            .find(|&v| degree[v] == 2 && !edges.iter().any(|&(u, w)| u == v && w == v));
        let Some(v) = candidate else { break };
        let incident: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, w))| u == v || w == v)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(
            incident.len(),
            2,
            "degree-2 vertex has two incident edge slots"
        );
        let other = |i: usize| -> usize {
            let (u, w) = edges[i];
            if u == v {
                w
            } else {
                u
            }
        };
        let (a, b) = (other(incident[0]), other(incident[1]));
        edges.remove(incident[1]);
        edges.remove(incident[0]);
        edges.push((a.min(b), a.max(b)));
    }
    // Drop isolated vertices and relabel.
    let mut used = vec![false; vertices];
    for &(u, v) in &edges {
        used[u] = true;
        used[v] = true;
    }
    let mut relabel = vec![usize::MAX; vertices];
    let mut next = 0;
    for v in 0..vertices {
        if used[v] {
            relabel[v] = next;
            next += 1;
        }
    }
    let edges = edges
        .into_iter()
        .map(|(u, v)| (relabel[u], relabel[v]))
        .collect();
    Graph::new(next, edges).expect("relabeled endpoints stay in range")
}

// ----------------------------------------------------------------------
// Named fixtures
// ----------------------------------------------------------------------

/// One vertex with one loop.
pub fn loop_graph() -> Graph {
    Graph::new(1, vec![(0, 0)]).unwrap()
}

/// Two vertices joined by three parallel edges.
pub fn theta_graph() -> Graph {
    Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

/// The complete graph on four vertices; edges in ascending pair order.
pub fn k4() -> Graph {
    Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// The complete bipartite graph on parts {0,1,2} and {3,4,5}; edges in
/// ascending pair order.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for u in 0..3 {
        for v in 3..6 {
            edges.push((u, v));
        }
    }
    Graph::new(6, edges).unwrap()
}

/// One vertex with `k` loops.
pub fn wedge_of_circles(k: usize) -> Graph {
    assert!(k >= 1, "wedge needs at least one circle");
    Graph::new(1, vec![(0, 0); k]).unwrap()
}

/// `k` vertices, each carrying one loop.
pub fn disjoint_circles_graph(k: usize) -> Graph {
    assert!(k >= 1, "need at least one circle");
    Graph::new(k, (0..k).map(|v| (v, v)).collect()).unwrap()
}

/// Wedge of two circles.
pub fn figure_eight() -> Graph {
    wedge_of_circles(2)
}

/// `k` n-balls glued along their boundary spheres: one 0-cell, one
/// (n-1)-cell, `k` top cells whose boundary rows are all ones. Its
/// homological poset is the even powerset on `k` elements.
pub fn glued_balls(k: usize, n: usize) -> ChainComplex {
    assert!(k >= 1, "need at least one ball");
    assert!(n >= 2, "gluing along boundary spheres needs n >= 2");
    let mut counts = vec![0usize; n + 1];
    counts[0] = 1;
    counts[n - 1] = 1;
    counts[n] = k;
    let mut boundaries: Vec<BitMatrix> = Vec::new();
    for degree in 1..=n {
        if degree == n {
            let mut top = BitMatrix::zeros(1, k);
            for j in 0..k {
                top.set(0, j, true);
            }
            boundaries.push(top);
        } else {
            boundaries.push(BitMatrix::zeros(counts[degree - 1], counts[degree]));
        }
    }
    ChainComplex::new(counts, boundaries).expect("glued balls form a valid complex")
}

/// Wedge of `k` n-spheres: one 0-cell and `k` top cells with zero boundary.
/// Its homological poset is the powerset on `k` elements.
pub fn wedge_of_spheres(k: usize, n: usize) -> ChainComplex {
    assert!(k >= 1 && n >= 1);
    let mut counts = vec![0usize; n + 1];
    counts[0] = 1;
    counts[n] = k;
    let boundaries = (1..=n)
        .map(|d| BitMatrix::zeros(counts[d - 1], counts[d]))
        .collect();
    ChainComplex::new(counts, boundaries).expect("wedge of spheres is a valid complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::IsoOutcome;

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn h1_dimensions_of_fixtures() {
        assert_eq!(h1_poset(&loop_graph()).dim(), 1);
        assert_eq!(h1_poset(&theta_graph()).dim(), 2);
        assert_eq!(h1_poset(&k4()).dim(), 3);
        assert_eq!(h1_poset(&k33()).dim(), 4);
        assert_eq!(h1_poset(&wedge_of_circles(5)).dim(), 5);
        // A forest has trivial homology.
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(h1_poset(&path).dim(), 0);
    }

    #[test]
    fn h1_dimension_formula_holds() {
        for g in [
            loop_graph(),
            theta_graph(),
            k4(),
            k33(),
            disjoint_circles_graph(3),
        ] {
            let hp = h1_poset(&g);
            assert_eq!(
                hp.dim(),
                g.edge_count() + g.component_count() - g.vertex_count()
            );
        }
    }

    #[test]
    fn wedge_poset_is_powerset() {
        for k in 1..=4 {
            let hp = h1_poset(&wedge_of_circles(k));
            assert!(hp.poset().order_eq(&AdditivePoset::powerset(k)).unwrap());
        }
    }

    #[test]
    fn theta_poset_is_trivial_plane() {
        let hp = h1_poset(&theta_graph());
        assert!(hp.poset().order_eq(&AdditivePoset::trivial(2)).unwrap());
    }

    #[test]
    fn k4_all_classes_are_atoms() {
        let g = k4();
        let hp = h1_poset(&g);
        assert!(hp.poset().order_eq(&AdditivePoset::trivial(3)).unwrap());
        for class in hp.classes() {
            if !class.cycle.is_zero() {
                assert!(is_atom_class(&g, &class.cycle));
            }
        }
    }

    #[test]
    fn class_from_cells_validates() {
        let g = theta_graph();
        let hp = h1_poset(&g);
        let class = hp.class_from_cells(&bits("110")).unwrap();
        assert_eq!(hp.cycle_of(&class.coeffs), bits("110"));
        // A single theta edge has odd endpoints.
        match hp.class_from_cells(&bits("100")) {
            Err(Error::NotACycle { cell }) => assert!(cell < 2),
            other => panic!("expected NotACycle, got {other:?}"),
        }
        // The empty set is the zero class.
        let zero = hp.class_from_cells(&bits("000")).unwrap();
        assert!(zero.coeffs.is_zero());
    }

    #[test]
    fn support_and_euler_characteristic() {
        let g = figure_eight();
        let sub = support(&g, &bits("11"));
        assert_eq!(sub.vertices, vec![0]);
        assert_eq!(sub.edges, vec![0, 1]);
        assert_eq!(sub.euler_characteristic(), -1);
        assert!(support(&g, &bits("00")).is_empty());
    }

    #[test]
    fn embedded_circle_extraction() {
        // Every class of K4 is already a circle and is returned unchanged
        // up to being a sub-circle of itself.
        let g = k4();
        let hp = h1_poset(&g);
        for class in hp.classes() {
            if class.cycle.is_zero() {
                continue;
            }
            let circle = find_embedded_circle(&g, &class.cycle).unwrap();
            assert!(circle.subset_of(&class.cycle));
            assert!(is_atom_class(&g, &circle));
        }

        // Two theta edges form a circle already.
        let theta = theta_graph();
        let two = bits("110");
        assert_eq!(find_embedded_circle(&theta, &two).unwrap(), two);

        // A loop is returned immediately.
        let w = figure_eight();
        assert_eq!(find_embedded_circle(&w, &bits("11")).unwrap(), bits("10"));

        assert!(matches!(
            find_embedded_circle(&w, &bits("00")),
            Err(Error::ZeroElement { .. })
        ));
    }

    #[test]
    fn embedded_circle_in_larger_cycle() {
        // Two triangles sharing vertex 2: the sum of both is a valid cycle
        // whose walk must return one embedded triangle.
        let g = Graph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let both = bits("111111");
        let circle = find_embedded_circle(&g, &both).unwrap();
        assert!(is_atom_class(&g, &circle));
        assert!(circle.subset_of(&both));
    }

    #[test]
    fn atom_class_examples() {
        let g = figure_eight();
        assert!(is_atom_class(&g, &bits("10")));
        assert!(is_atom_class(&g, &bits("01")));
        // The sum of both loops is a figure-eight, not an atom.
        assert!(!is_atom_class(&g, &bits("11")));
        assert!(!is_atom_class(&g, &bits("00")));
    }

    #[test]
    fn geometric_tile_recognition() {
        assert!(is_geometric_tile(&loop_graph()));
        assert!(is_geometric_tile(&figure_eight()));
        assert!(is_geometric_tile(&disjoint_circles_graph(3)));
        assert_eq!(geometric_tile_weight(&disjoint_circles_graph(3)), Some(3));
        // A circle as a polygon.
        let square = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_geometric_tile(&square));
        assert_eq!(geometric_tile_weight(&square), Some(1));
        // Theta has a block with degree-3 vertices.
        assert!(!is_geometric_tile(&theta_graph()));
        // A parallel pair is a circle.
        let digon = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert!(is_geometric_tile(&digon));
        // A bridge disqualifies.
        let barbell = Graph::new(3, vec![(0, 0), (0, 1), (1, 2), (2, 1)]).unwrap();
        assert!(!is_geometric_tile(&barbell));
        // Empty and isolated-vertex graphs are not tiles.
        assert!(!is_geometric_tile(&Graph::new(1, vec![]).unwrap()));
        assert!(!is_geometric_tile(&Graph::new(2, vec![(0, 0)]).unwrap()));
    }

    #[test]
    fn tile_class_examples() {
        let g = figure_eight();
        assert!(is_tile_class(&g, &bits("11")).unwrap());
        assert!(is_tile_class(&g, &bits("10")).unwrap());
        assert!(matches!(
            is_tile_class(&g, &bits("00")),
            Err(Error::ZeroElement { .. })
        ));

        // In the theta graph the sum of two generators is an atom (a
        // circle), hence a tile.
        let theta = theta_graph();
        assert!(is_tile_class(&theta, &bits("110")).unwrap());
    }

    #[test]
    fn disjoint_circles_criterion() {
        // Disjoint loops: criterion true.
        let two = disjoint_circles_graph(2);
        let report = disjoint_circles(&two, &bits("10"), &bits("01")).unwrap();
        assert!(report.criterion && report.geometric);

        // Figure-eight loops share the wedge vertex: chi = -1.
        let eight = figure_eight();
        let report = disjoint_circles(&eight, &bits("10"), &bits("01")).unwrap();
        assert!(!report.criterion && !report.geometric);

        // Same atom twice is rejected.
        assert!(disjoint_circles(&eight, &bits("10"), &bits("10")).is_err());
        // Non-atoms are rejected.
        assert!(disjoint_circles(&eight, &bits("11"), &bits("10")).is_err());
    }

    #[test]
    fn disjoint_union_recognition() {
        let two = disjoint_circles_graph(2);
        let hp = h1_poset(&two);
        assert!(disjoint_union_of_circles(&two, &hp, &bits("11")).unwrap());
        assert!(disjoint_union_of_circles(&two, &hp, &bits("10")).unwrap());

        let eight = figure_eight();
        let hp8 = h1_poset(&eight);
        assert!(!disjoint_union_of_circles(&eight, &hp8, &bits("11")).unwrap());

        // Two disjoint triangles.
        let hexa = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let hph = h1_poset(&hexa);
        assert!(disjoint_union_of_circles(&hexa, &hph, &bits("111111")).unwrap());
    }

    #[test]
    fn subdivision_preserves_posets() {
        // Subdividing the loop gives a 2-cycle with the same poset.
        let (subdivided, matrix) = subdivision_isomorphism(&loop_graph(), 0).unwrap();
        assert_eq!(subdivided.vertex_count(), 2);
        assert_eq!(matrix.n_rows(), 1);
        let hp = h1_poset(&subdivided);
        assert!(hp.poset().order_eq(&AdditivePoset::powerset(1)).unwrap());

        // Theta stays trivially ordered of dimension 2.
        let (sub_theta, _) = subdivision_isomorphism(&theta_graph(), 1).unwrap();
        let hp = h1_poset(&sub_theta);
        assert!(hp.poset().order_eq(&AdditivePoset::trivial(2)).unwrap());

        // Iterated subdivision keeps the isomorphism class.
        let mut g = k4();
        for _ in 0..3 {
            let (next, _) = subdivision_isomorphism(&g, 0).unwrap();
            g = next;
        }
        let hp = h1_poset(&g);
        assert!(matches!(
            hp.poset().is_isomorphic(&AdditivePoset::trivial(3)),
            IsoOutcome::Isomorphic(_)
        ));
    }

    #[test]
    fn inclusion_pushforward_examples() {
        // One circle inside the figure-eight.
        let circle = loop_graph();
        let eight = figure_eight();
        let matrix = inclusion_pushforward(&circle, &eight, &[0], &[0]).unwrap();
        let image = matrix.mul_vec(&bits("1"));
        assert!(is_atom_class(&eight, &h1_poset(&eight).cycle_of(&image)));

        // Identity inclusion.
        let idm = inclusion_pushforward(&eight, &eight, &[0], &[0, 1]).unwrap();
        assert_eq!(idm, BitMatrix::identity(2));

        // A triangle inside K4.
        let triangle = Graph::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let matrix = inclusion_pushforward(&triangle, &k4(), &[0, 1, 2], &[0, 1, 3]).unwrap();
        let image = matrix.mul_vec(&bits("1"));
        assert!(is_atom_class(&k4(), &h1_poset(&k4()).cycle_of(&image)));

        // Non-inclusions are rejected.
        assert!(inclusion_pushforward(&triangle, &k4(), &[0, 1, 2], &[0, 1, 2]).is_err());
        assert!(inclusion_pushforward(&eight, &eight, &[0], &[0, 0]).is_err());
    }

    #[test]
    fn chain_complex_posets() {
        // Glued balls have even-powerset homology.
        for k in 2..=5 {
            let complex = glued_balls(k, 2);
            let hp = hn_poset(&complex);
            assert_eq!(hp.dim(), k - 1);
            assert!(matches!(
                hp.poset().is_isomorphic(&AdditivePoset::even_powerset(k)),
                IsoOutcome::Isomorphic(_)
            ));
        }
        // Higher-dimensional glued balls behave identically.
        let hp = hn_poset(&glued_balls(3, 4));
        assert!(matches!(
            hp.poset().is_isomorphic(&AdditivePoset::even_powerset(3)),
            IsoOutcome::Isomorphic(_)
        ));

        // Wedges of spheres give powersets.
        for k in 1..=4 {
            let hp = hn_poset(&wedge_of_spheres(k, 3));
            assert!(hp.poset().order_eq(&AdditivePoset::powerset(k)).unwrap());
        }

        // An injective top boundary kills the homology.
        let complex = ChainComplex::new(
            vec![2, 1],
            vec![{
                let mut m = BitMatrix::zeros(2, 1);
                m.set(0, 0, true);
                m
            }],
        )
        .unwrap();
        assert_eq!(hn_poset(&complex).dim(), 0);

        // Nonzero boundary squares are rejected.
        let one = || {
            let mut m = BitMatrix::zeros(1, 1);
            m.set(0, 0, true);
            m
        };
        let bad = ChainComplex::new(vec![1, 1, 1], vec![one(), one()]);
        assert!(matches!(
            bad,
            Err(Error::BoundarySquareNonzero { degree: 2 })
        ));
    }

    #[test]
    fn graph_h1_matches_complex_route() {
        // A graph is a 1-complex; both constructions agree on the order.
        for g in [theta_graph(), k4(), figure_eight()] {
            let via_graph = h1_poset(&g);
            let complex = ChainComplex::new(
                vec![g.vertex_count(), g.edge_count()],
                vec![g.boundary_matrix()],
            )
            .unwrap();
            let via_complex = hn_poset(&complex);
            assert_eq!(via_graph.dim(), via_complex.dim());
            assert!(via_graph.poset().order_eq(via_complex.poset()).unwrap());
        }
    }

    #[test]
    fn complexity_bounded_by_cell_count() {
        for g in [
            loop_graph(),
            theta_graph(),
            k4(),
            figure_eight(),
            disjoint_circles_graph(2),
        ] {
            let hp = h1_poset(&g);
            let c = hp.poset().complexity().unwrap().complexity;
            assert!(c <= g.edge_count());
        }
    }

    #[test]
    fn graph_posets_are_plain() {
        for g in [theta_graph(), k4(), k33(), figure_eight()] {
            assert!(h1_poset(&g).poset().is_plain().plain);
        }
    }

    #[test]
    fn suppression_normal_form() {
        // Triple-subdivided theta suppresses back to three edges.
        let mut g = theta_graph();
        for _ in 0..3 {
            let (next, _) = subdivision_isomorphism(&g, 0).unwrap();
            g = next;
        }
        let suppressed = suppress_degree_two(&g);
        assert_eq!(suppressed.edge_count(), 3);
        assert_eq!(suppressed.vertex_count(), 2);
        assert!(h1_poset(&suppressed)
            .poset()
            .order_eq(h1_poset(&theta_graph()).poset())
            .unwrap());

        // Valency-3 complexity bound on fixtures.
        for g in [theta_graph(), k4(), k33(), wedge_of_circles(3)] {
            let hp = h1_poset(&suppress_degree_two(&g));
            let c = hp.poset().complexity().unwrap().complexity;
            assert!(c <= 3 * hp.dim() - 3 || hp.dim() < 2);
        }
    }

    #[test]
    fn nontrivial_relation_detection() {
        assert!(h1_poset(&theta_graph()).nontrivial_relation().is_none());
        assert!(h1_poset(&k4()).nontrivial_relation().is_none());
        let (x, y) = h1_poset(&figure_eight()).nontrivial_relation().unwrap();
        assert!(x.cycle.subset_of(&y.cycle));
        assert!(!x.cycle.is_zero());
    }
}
