//! Numerical invariants of finite additive posets and their witnesses:
//! height, width, weight, dimension, m-width, and the per-element weight
//! and coweight functions. The chain `h ≤ dim ≤ wt ≤ w` always holds.

use crate::gf2::BitVec;
use crate::poset::AdditivePoset;
use crate::{Error, Result};

/// Enumerating all m-dimensional subspaces is kept below this dimension.
pub const M_WIDTH_CAP: usize = 8;

/// The four invariants with explicit witnesses.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub height: usize,
    pub dim: usize,
    pub weight: usize,
    pub width: usize,
    /// A chain realizing the height (length = `height`).
    pub max_chain: Vec<BitVec>,
    /// All atoms, in ascending index order.
    pub atoms: Vec<BitVec>,
    /// An antichain realizing the width.
    pub max_antichain: Vec<BitVec>,
}

impl InvariantReport {
    pub fn compute(poset: &AdditivePoset) -> InvariantReport {
        let (height, max_chain) = poset.height();
        let (width, max_antichain) = poset.width();
        let atoms = poset.atoms();
        let report = InvariantReport {
            height,
            dim: poset.dim(),
            weight: atoms.len(),
            width,
            max_chain,
            atoms,
            max_antichain,
        };
        assert!(
            report.height <= report.dim
                && report.dim <= report.weight
                && report.weight <= report.width,
            "invariant chain h <= dim <= wt <= w violated: {} {} {} {}",
            report.height,
            report.dim,
            report.weight,
            report.width
        );
        report
    }
}

impl AdditivePoset {
    /// Maximal chain length, with a witness chain, via longest paths in the
    /// cover DAG (equivalently the order DAG).
    pub fn height(&self) -> (usize, Vec<BitVec>) {
        let table = self.table().unwrap_or_else(|e| panic!("height: {e}"));
        let count = table.n_elements();
        let down = table.down_sets();
        let mut extension: Vec<usize> = (0..count).collect();
        extension.sort_by_key(|&x| (down[x].count_ones(), x));

        let mut best = vec![0usize; count];
        let mut pred: Vec<Option<usize>> = vec![None; count];
        for &x in &extension {
            for y in down[x].ones() {
                if y != x && best[y] + 1 > best[x] {
                    best[x] = best[y] + 1;
                    pred[x] = Some(y);
                }
            }
        }
        let top = (0..count)
            .max_by_key(|&x| (best[x], std::cmp::Reverse(x)))
            .unwrap_or(0);
        let mut chain = vec![top];
        while let Some(p) = pred[*chain.last().unwrap()] {
            chain.push(p);
        }
        chain.reverse();
        (
            best[top],
            chain
                .into_iter()
                .map(|i| BitVec::from_index(self.dim(), i))
                .collect(),
        )
    }

    /// Maximum antichain size with a witness, by Dilworth's theorem reduced
    /// to maximum bipartite matching on the strict comparability relation:
    /// width = elements − matching, witness from the König cover.
    pub fn width(&self) -> (usize, Vec<BitVec>) {
        let table = self.table().unwrap_or_else(|e| panic!("width: {e}"));
        let count = table.n_elements();

        // match_right[v] = u means the matching uses u < v.
        let mut match_right: Vec<Option<usize>> = vec![None; count];
        let mut match_left: Vec<Option<usize>> = vec![None; count];
        fn augment(
            u: usize,
            table: &crate::poset::RelationTable,
            match_right: &mut [Option<usize>],
            match_left: &mut [Option<usize>],
            seen: &mut [bool],
        ) -> bool {
            for v in table.up(u).ones() {
                if v == u || seen[v] {
                    continue;
                }
                seen[v] = true;
                let free = match match_right[v] {
                    None => true,
                    Some(w) => augment(w, table, match_right, match_left, seen),
                };
                if free {
                    match_right[v] = Some(u);
                    match_left[u] = Some(v);
                    return true;
                }
            }
            false
        }
        let mut matching = 0;
        for u in 0..count {
            let mut seen = vec![false; count];
            if augment(u, table, &mut match_right, &mut match_left, &mut seen) {
                matching += 1;
            }
        }
        let width = count - matching;

        // König: alternate from unmatched left vertices; the antichain is
        // the elements visited on the left and unvisited on the right.
        let mut visited_left = vec![false; count];
        let mut visited_right = vec![false; count];
        let mut queue: Vec<usize> = (0..count).filter(|&u| match_left[u].is_none()).collect();
        for &u in &queue {
            visited_left[u] = true;
        }
        while let Some(u) = queue.pop() {
            for v in table.up(u).ones() {
                if v == u || visited_right[v] {
                    continue;
                }
                visited_right[v] = true;
                if let Some(w) = match_right[v] {
                    if !visited_left[w] {
                        visited_left[w] = true;
                        queue.push(w);
                    }
                }
            }
        }
        let antichain: Vec<BitVec> = (0..count)
            .filter(|&x| visited_left[x] && !visited_right[x])
            .map(|x| BitVec::from_index(self.dim(), x))
            .collect();
        assert_eq!(antichain.len(), width, "König antichain size mismatch");
        for (i, a) in antichain.iter().enumerate() {
            for b in &antichain[i + 1..] {
                assert!(
                    !self.leq(a, b) && !self.leq(b, a),
                    "width witness is not an antichain"
                );
            }
        }
        (width, antichain)
    }

    /// Width by exhaustive antichain enumeration; test oracle for the
    /// matching-based computation, sensible only for very small posets.
    pub fn width_bruteforce(&self) -> usize {
        let count = self.element_count();
        assert!(
            count <= 16,
            "brute-force width oracle is capped at 16 elements"
        );
        let elements: Vec<BitVec> = self.elements().collect();
        let mut best = 0;
        'subset: for mask in 0usize..1 << count {
            let picked: Vec<&BitVec> = (0..count)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| &elements[i])
                .collect();
            for (i, a) in picked.iter().enumerate() {
                for b in &picked[i + 1..] {
                    if self.leq(a, b) || self.leq(b, a) {
                        continue 'subset;
                    }
                }
            }
            best = best.max(picked.len());
        }
        best
    }

    /// Number of atoms.
    pub fn weight(&self) -> usize {
        self.atoms().len()
    }

    /// Dimension of the underlying vector space, `log2 |A|`.
    pub fn dimension(&self) -> usize {
        self.dim()
    }

    /// Atoms below `a` (the Hasse out-degree of `a`).
    pub fn weight_of(&self, a: &BitVec) -> usize {
        let atoms = self.atoms();
        let wt = atoms.iter().filter(|c| self.leq(c, a)).count();
        let cowt = atoms.iter().filter(|c| self.independent(a, c)).count();
        assert!(wt + cowt <= atoms.len(), "wt(a) + cowt(a) exceeds wt(A)");
        wt
    }

    /// Atoms independent from `a` (the Hasse in-degree of `a`).
    pub fn coweight_of(&self, a: &BitVec) -> usize {
        self.atoms()
            .iter()
            .filter(|c| self.independent(a, c))
            .count()
    }

    /// Maximum size of an antichain spanning at most `m` dimensions, by
    /// enumerating every m-dimensional subspace and taking the width of the
    /// induced subposet.
    pub fn m_width(&self, m: usize) -> Result<usize> {
        if m < 1 || m > self.dim() {
            return Err(Error::InvalidMWidth { m, dim: self.dim() });
        }
        if self.dim() > M_WIDTH_CAP {
            return Err(Error::TooLargeForExhaustive {
                dim: self.dim(),
                cap: M_WIDTH_CAP,
                op: "m_width",
            });
        }
        let mut best = 0;
        for basis in subspace_bases(self.dim(), m) {
            let sub = self.induced_subposet(&basis);
            best = best.max(sub.width().0);
        }
        if m == 1 {
            assert_eq!(best, 1, "w_1 must be 1");
        }
        if m == self.dim() {
            assert_eq!(best, self.width().0, "w_dim must equal the width");
        }
        Ok(best)
    }

    /// Largest family of pairwise independent nonzero vectors, by branch
    /// and bound over the independence graph. Test oracle for the height.
    pub fn max_independent_family(&self) -> Vec<BitVec> {
        let elements: Vec<BitVec> = self.elements().filter(|a| !a.is_zero()).collect();
        let n = elements.len();
        let adjacent: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i != j && self.independent(&elements[i], &elements[j]))
                    .collect()
            })
            .collect();
        let mut best: Vec<usize> = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn extend(
            adjacent: &[Vec<bool>],
            candidates: &[usize],
            current: &mut Vec<usize>,
            best: &mut Vec<usize>,
        ) {
            if current.len() > best.len() {
                *best = current.clone();
            }
            if current.len() + candidates.len() <= best.len() {
                return;
            }
            for (k, &v) in candidates.iter().enumerate() {
                if current.len() + (candidates.len() - k) <= best.len() {
                    return;
                }
                let next: Vec<usize> = candidates[k + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| adjacent[v][w])
                    .collect();
                current.push(v);
                extend(adjacent, &next, current, best);
                current.pop();
            }
        }
        extend(
            &adjacent,
            &(0..n).collect::<Vec<_>>(),
            &mut current,
            &mut best,
        );
        best.into_iter().map(|i| elements[i].clone()).collect()
    }
}

/// All m-dimensional subspaces of `GF(2)^dim`, one reduced-echelon basis
/// each (rows listed top pivot first).
pub fn subspace_bases(dim: usize, m: usize) -> Vec<Vec<BitVec>> {
    assert!(m <= dim);
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(m);
    pick_pivots(dim, m, 0, &mut pivots, &mut out);
    out
}

fn pick_pivots(
    dim: usize,
    m: usize,
    from: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Vec<BitVec>>,
) {
    if pivots.len() == m {
        fill_free(dim, pivots, 0, &mut vec![BitVec::zeros(dim); m], out);
        return;
    }
    let remaining = m - pivots.len();
    for p in from..=dim.saturating_sub(remaining) {
        pivots.push(p);
        pick_pivots(dim, m, p + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free(
    dim: usize,
    pivots: &[usize],
    row: usize,
    rows: &mut Vec<BitVec>,
    out: &mut Vec<Vec<BitVec>>,
) {
    if row == pivots.len() {
        out.push(rows.clone());
        return;
    }
    // Free positions of this row: non-pivot columns above its own pivot.
    let free: Vec<usize> = (pivots[row] + 1..dim)
        .filter(|c| !pivots.contains(c))
        .collect();
    for mask in 0usize..1 << free.len() {
        let mut v = BitVec::zeros(dim);
        v.set(pivots[row], true);
        for (bit, &col) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                v.set(col, true);
            }
        }
        rows[row] = v;
        fill_free(dim, pivots, row + 1, rows, out);
    }
}
