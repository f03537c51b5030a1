//! Structure theory of finite additive posets: tails, independence, atoms,
//! covers, tiles, Möbius expansion, and the chain/vector bijection.
//!
//! Wherever a choice is free, ties are broken by the bit-string order on
//! [`BitVec`] so outputs are reproducible.

use std::collections::BTreeMap;

use crate::gf2::{BitMatrix, BitVec};
use crate::poset::{AdditivePoset, RelationTable};
use crate::{Error, Result};

/// A strictly increasing chain `a0 < a1 < ... < an`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRecord {
    elements: Vec<BitVec>,
}

impl ChainRecord {
    /// Validates that `elements` is strictly increasing in `poset`.
    pub fn new(poset: &AdditivePoset, elements: Vec<BitVec>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidChain {
                index: 0,
                reason: "chain must be non-empty",
            });
        }
        for i in 1..elements.len() {
            if !poset.lt(&elements[i - 1], &elements[i]) {
                return Err(Error::InvalidChain {
                    index: i,
                    reason: "consecutive elements must strictly increase",
                });
            }
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[BitVec] {
        &self.elements
    }

    /// Number of strict steps (one less than the element count).
    pub fn length(&self) -> usize {
        self.elements.len() - 1
    }
}

/// Möbius function of the order, stored on comparable pairs `(a, b)` with
/// `a ≤ b`; `μ(a, b) = 0` whenever `a ≰ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    dim: usize,
    values: BTreeMap<(usize, usize), i64>,
}

impl MobiusTable {
    pub fn value(&self, a: &BitVec, b: &BitVec) -> i64 {
        assert_eq!(
            a.len(),
            self.dim,
            "mobius: element length {} vs dim {}",
            a.len(),
            self.dim
        );
        assert_eq!(
            b.len(),
            self.dim,
            "mobius: element length {} vs dim {}",
            b.len(),
            self.dim
        );
        self.values
            .get(&(a.index(), b.index()))
            .copied()
            .unwrap_or(0)
    }

    /// Stored pairs in ascending index order.
    pub fn entries(&self) -> impl Iterator<Item = (BitVec, BitVec, i64)> + '_ {
        self.values.iter().map(move |(&(a, b), &v)| {
            (
                BitVec::from_index(self.dim, a),
                BitVec::from_index(self.dim, b),
                v,
            )
        })
    }
}

/// Agreement record for the four tile characterizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileReport {
    /// (i) any two distinct atoms of the tail are independent.
    pub by_definition: bool,
    /// (ii) the tail is isomorphic to an additive powerset.
    pub tail_isomorphic_to_powerset: bool,
    /// (iii) the atoms of the tail are pairwise independent and sum to `a`.
    pub atoms_independent_and_sum: bool,
    /// (iv) the independent-atom decomposition is unique up to order.
    pub decomposition_unique: bool,
    /// Atoms of the tail, in bit-string order.
    pub tail_atoms: Vec<BitVec>,
}

impl TileReport {
    pub fn is_tile(&self) -> bool {
        self.by_definition
    }
}

/// Subsets of the tail's atoms mapped into the tail by summation; for a
/// tile this is an order isomorphism onto the tail.
#[derive(Clone, Debug)]
pub struct TileEmbedding {
    /// Atoms of the tail in bit-string order; subset masks index into this.
    pub atoms: Vec<BitVec>,
    /// `images[mask]` is the sum of the atoms selected by `mask`.
    pub images: Vec<BitVec>,
}

impl AdditivePoset {
    fn enum_table(&self, op: &str) -> &RelationTable {
        self.table().unwrap_or_else(|e| panic!("{op}: {e}"))
    }

    /// The tail `A_a = {b : b ≤ a}`, a subgroup, in ascending index order.
    pub fn tail(&self, a: &BitVec) -> Vec<BitVec> {
        let table = self.enum_table("tail");
        let ai = a.index();
        let members: Vec<usize> = (0..table.n_elements())
            .filter(|&b| table.get(b, ai))
            .collect();
        // Closure under addition, guaranteed by condition (*) on valid posets.
        let marker: std::collections::HashSet<usize> = members.iter().copied().collect();
        for (i, &b) in members.iter().enumerate() {
            for &c in &members[i..] {
                assert!(
                    marker.contains(&(b ^ c)),
                    "tail of {a} is not closed under addition"
                );
            }
        }
        members
            .into_iter()
            .map(|i| BitVec::from_index(self.dim(), i))
            .collect()
    }

    /// Independence: `a` and `b` are independent iff `a ≤ a + b`.
    pub fn independent(&self, a: &BitVec, b: &BitVec) -> bool {
        self.leq(a, &a.xor(b))
    }

    /// The subgroup `A^a` of elements independent from `a`.
    pub fn independents_of(&self, a: &BitVec) -> Vec<BitVec> {
        let table = self.enum_table("independents_of");
        let members: Vec<BitVec> = self.elements().filter(|b| self.independent(a, b)).collect();
        let marker: std::collections::HashSet<usize> = members.iter().map(BitVec::index).collect();
        for (i, b) in members.iter().enumerate() {
            for c in &members[i..] {
                assert!(
                    marker.contains(&(b.index() ^ c.index())),
                    "A^a is not a subgroup"
                );
            }
            // A^a meets the tail A_a only in zero.
            assert!(
                b.is_zero() || !table.get(b.index(), a.index()),
                "A^a and A_a intersect beyond zero"
            );
        }
        members
    }

    /// An atom covers zero: `a ≠ 0` and the tail of `a` is `{0, a}`.
    pub fn is_atom(&self, a: &BitVec) -> bool {
        let table = self.enum_table("is_atom");
        if a.is_zero() {
            return false;
        }
        let ai = a.index();
        (0..table.n_elements())
            .filter(|&b| table.get(b, ai))
            .take(3)
            .count()
            == 2
    }

    /// All atoms, in ascending index order.
    pub fn atoms(&self) -> Vec<BitVec> {
        let table = self.enum_table("atoms");
        let down = table.down_sets();
        (1..table.n_elements())
            .filter(|&a| down[a].count_ones() == 2)
            .map(|a| BitVec::from_index(self.dim(), a))
            .collect()
    }

    /// Cover relation via the atom characterization: `a` covers `b` iff
    /// `a + b` is an atom and `a + b ≤ a`.
    pub fn covers(&self, a: &BitVec, b: &BitVec) -> bool {
        let sum = a.xor(b);
        self.is_atom(&sum) && self.leq(&sum, a)
    }

    /// Cover relation straight from the definition; test oracle for
    /// [`AdditivePoset::covers`].
    pub fn covers_bruteforce(&self, a: &BitVec, b: &BitVec) -> bool {
        self.lt(b, a) && !self.elements().any(|c| self.lt(b, &c) && self.lt(&c, a))
    }

    /// Hasse diagram edges `(a, b)` with `a` covering `b`, in ascending
    /// `(index of a, index of b)` order. The out-degree of `a` is its
    /// weight, the in-degree its coweight.
    pub fn hasse_edges(&self) -> Vec<(BitVec, BitVec)> {
        self.enum_table("hasse_edges");
        let atoms = self.atoms();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for a in self.elements() {
            for c in &atoms {
                if self.leq(c, &a) {
                    edges.push((a.index(), a.index() ^ c.index()));
                }
            }
        }
        edges.sort_unstable();
        edges
            .into_iter()
            .map(|(a, b)| {
                (
                    BitVec::from_index(self.dim(), a),
                    BitVec::from_index(self.dim(), b),
                )
            })
            .collect()
    }

    /// A tile is a nonzero element whose tail has pairwise independent atoms.
    pub fn is_tile(&self, a: &BitVec) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement { op: "is_tile" });
        }
        let atoms = self.tail_atoms(a);
        for (i, b) in atoms.iter().enumerate() {
            for c in &atoms[i + 1..] {
                if !self.independent(b, c) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn tail_atoms(&self, a: &BitVec) -> Vec<BitVec> {
        let mut atoms: Vec<BitVec> = self
            .atoms()
            .into_iter()
            .filter(|c| self.leq(c, a))
            .collect();
        atoms.sort();
        atoms
    }

    /// Evaluates all four tile characterizations and checks they agree:
    /// the definition, tail ≅ powerset, atoms summing to `a`, and
    /// uniqueness of the independent-atom decomposition.
    pub fn tile_report(&self, a: &BitVec) -> Result<TileReport> {
        if a.is_zero() {
            return Err(Error::ZeroElement { op: "tile_report" });
        }
        let by_definition = self.is_tile(a)?;

        let tail = self.tail(a);
        let tail_poset = self.induced_subposet(&subgroup_basis(&tail, self.dim()));
        let tail_isomorphic_to_powerset = tail_poset
            .is_isomorphic_within(&AdditivePoset::powerset(tail_poset.dim()), tail_poset.dim())
            .found();

        let tail_atoms = self.tail_atoms(a);
        let atoms_independent_and_sum = {
            let mut sum = self.zero();
            for atom in &tail_atoms {
                sum.xor_assign(atom);
            }
            let pairwise = tail_atoms
                .iter()
                .enumerate()
                .all(|(i, b)| tail_atoms[i + 1..].iter().all(|c| self.independent(b, c)));
            pairwise && sum == *a
        };

        let decomposition_unique = self.all_decompositions(a)?.len() == 1;

        assert!(
            by_definition == tail_isomorphic_to_powerset
                && by_definition == atoms_independent_and_sum
                && by_definition == decomposition_unique,
            "tile characterizations disagree at {a}: def={by_definition} powerset={tail_isomorphic_to_powerset} sum={atoms_independent_and_sum} unique={decomposition_unique}"
        );
        Ok(TileReport {
            by_definition,
            tail_isomorphic_to_powerset,
            atoms_independent_and_sum,
            decomposition_unique,
            tail_atoms,
        })
    }

    /// The additive subposet spanned by `basis`, re-coordinatized over the
    /// basis: coefficient vector `c` stands for the combination with the
    /// first basis vector as least-significant bit.
    pub fn induced_subposet(&self, basis: &[BitVec]) -> AdditivePoset {
        let members = crate::gf2::enumerate_span(basis).expect("independent basis");
        let k = basis.len();
        let mut pairs = Vec::new();
        for (i, x) in members.iter().enumerate() {
            for (j, y) in members.iter().enumerate() {
                if self.leq(x, y) {
                    pairs.push((BitVec::from_index(k, i), BitVec::from_index(k, j)));
                }
            }
        }
        AdditivePoset::from_relations(k, &pairs)
    }

    /// Möbius function by the defining recursion, memoized over the order.
    pub fn mobius(&self) -> MobiusTable {
        let table = self.enum_table("mobius");
        let count = table.n_elements();
        let down = table.down_sets();
        // Any linear extension works; down-set size is strictly monotone.
        let mut extension: Vec<usize> = (0..count).collect();
        extension.sort_by_key(|&x| (down[x].count_ones(), x));

        let mut values: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for a in 0..count {
            for &b in &extension {
                if !table.get(a, b) {
                    continue;
                }
                if a == b {
                    values.insert((a, a), 1);
                    continue;
                }
                let mut sum: i64 = 0;
                for c in table.up(a).ones() {
                    if c != b && down[b].get(c) {
                        sum = sum
                            .checked_add(values[&(a, c)])
                            .expect("mobius accumulation overflows i64");
                    }
                }
                values.insert(
                    (a, b),
                    sum.checked_neg().expect("mobius value overflows i64"),
                );
            }
        }
        MobiusTable {
            dim: self.dim(),
            values,
        }
    }

    /// Atom expansion from Möbius inversion: `a = Σ μ(b, a) b` over atoms
    /// `b`. Returns atoms with nonzero coefficient; the XOR of those with
    /// odd coefficient is checked to reproduce `a`.
    pub fn mobius_atom_expansion(&self, a: &BitVec) -> Vec<(BitVec, i64)> {
        self.mobius_atom_expansion_with(&self.mobius(), a)
    }

    /// Same as [`AdditivePoset::mobius_atom_expansion`] with a precomputed table.
    pub fn mobius_atom_expansion_with(
        &self,
        mobius: &MobiusTable,
        a: &BitVec,
    ) -> Vec<(BitVec, i64)> {
        let mut expansion = Vec::new();
        let mut reconstructed = self.zero();
        for atom in self.atoms() {
            let coeff = mobius.value(&atom, a);
            if coeff != 0 {
                if coeff % 2 != 0 {
                    reconstructed.xor_assign(&atom);
                }
                expansion.push((atom, coeff));
            }
        }
        assert_eq!(
            reconstructed, *a,
            "Möbius atom expansion fails to reproduce {a}"
        );
        expansion
    }

    /// Deterministic expansion of a nonzero element as a sum of pairwise
    /// independent atoms, built from the greedy saturated chain from zero:
    /// at each step take the bit-string-smallest minimal element above the
    /// current one inside the tail of `a`.
    pub fn independent_atom_decomposition(&self, a: &BitVec) -> Result<Vec<BitVec>> {
        if a.is_zero() {
            return Err(Error::ZeroElement {
                op: "independent_atom_decomposition",
            });
        }
        self.enum_table("independent_atom_decomposition");
        let tail = self.tail(a);
        let mut current = self.zero();
        let mut atoms = Vec::new();
        while current != *a {
            let above: Vec<&BitVec> = tail.iter().filter(|x| self.lt(&current, x)).collect();
            let mut minimal: Vec<&BitVec> = above
                .iter()
                .filter(|x| !above.iter().any(|y| self.lt(y, x)))
                .copied()
                .collect();
            minimal.sort();
            let next = minimal
                .first()
                .expect("a is the maximum of its tail")
                .to_owned();
            atoms.push(current.xor(next));
            current = next.clone();
        }
        for (i, b) in atoms.iter().enumerate() {
            assert!(self.is_atom(b), "saturated chain step is not an atom");
            assert!(self.leq(b, a), "decomposition atom escapes the tail");
            for c in &atoms[i + 1..] {
                assert!(
                    self.independent(b, c),
                    "decomposition atoms are not independent"
                );
            }
        }
        Ok(atoms)
    }

    /// Every expansion of `a` as a set of pairwise independent atoms,
    /// found by depth-first search over the tail's atoms in bit-string
    /// order, pruning when the partial sum leaves the tail.
    pub fn all_decompositions(&self, a: &BitVec) -> Result<Vec<Vec<BitVec>>> {
        if a.is_zero() {
            return Err(Error::ZeroElement {
                op: "all_decompositions",
            });
        }
        let candidates = self.tail_atoms(a);
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.decomposition_dfs(a, &candidates, 0, &self.zero(), &mut chosen, &mut out);
        Ok(out)
    }

    fn decomposition_dfs(
        &self,
        target: &BitVec,
        candidates: &[BitVec],
        from: usize,
        partial: &BitVec,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<BitVec>>,
    ) {
        if partial == target {
            out.push(chosen.iter().map(|&i| candidates[i].clone()).collect());
            return;
        }
        for i in from..candidates.len() {
            let atom = &candidates[i];
            if chosen
                .iter()
                .any(|&j| !self.independent(&candidates[j], atom))
            {
                continue;
            }
            let next = partial.xor(atom);
            if !self.leq(&next, target) {
                continue;
            }
            chosen.push(i);
            self.decomposition_dfs(target, candidates, i + 1, &next, chosen, out);
            chosen.pop();
        }
    }

    /// Chain-to-vectors direction of the bijection: consecutive sums
    /// `b_i = a_{i-1} + a_i`, validated to be a strict chain first.
    pub fn chain_to_vectors(&self, chain: &ChainRecord) -> Result<Vec<BitVec>> {
        let elements = chain.elements();
        for i in 1..elements.len() {
            if !self.lt(&elements[i - 1], &elements[i]) {
                return Err(Error::InvalidChain {
                    index: i,
                    reason: "consecutive elements must strictly increase",
                });
            }
        }
        Ok((1..elements.len())
            .map(|i| elements[i - 1].xor(&elements[i]))
            .collect())
    }

    /// Vectors-to-chain direction: `a_i = a + b_1 + ... + b_i`. The vectors
    /// must be nonzero, pairwise independent, and independent from `a`;
    /// the first failing index is reported. The round trip is checked.
    pub fn vectors_to_chain(&self, a: &BitVec, vectors: &[BitVec]) -> Result<ChainRecord> {
        for (i, b) in vectors.iter().enumerate() {
            if b.is_zero() {
                return Err(Error::InvalidVectors {
                    index: i,
                    reason: "vectors must be nonzero",
                });
            }
            if !self.independent(a, b) {
                return Err(Error::InvalidVectors {
                    index: i,
                    reason: "vector is not independent from the base point",
                });
            }
            for c in &vectors[..i] {
                if !self.independent(c, b) {
                    return Err(Error::InvalidVectors {
                        index: i,
                        reason: "vectors must be pairwise independent",
                    });
                }
            }
        }
        let mut elements = Vec::with_capacity(vectors.len() + 1);
        let mut current = a.clone();
        elements.push(current.clone());
        for b in vectors {
            current.xor_assign(b);
            elements.push(current.clone());
        }
        let chain = ChainRecord::new(self, elements)?;
        assert_eq!(
            self.chain_to_vectors(&chain)?,
            vectors,
            "chain bijection round trip failed"
        );
        Ok(chain)
    }

    /// For a tile `a`, the map from subsets of the tail's atoms into the
    /// tail by summation; injectivity and order-embedding are checked.
    pub fn tile_embedding(&self, a: &BitVec) -> Result<TileEmbedding> {
        if a.is_zero() {
            return Err(Error::ZeroElement {
                op: "tile_embedding",
            });
        }
        if !self.is_tile(a)? {
            return Err(Error::NotATile { element: a.clone() });
        }
        let atoms = self.tail_atoms(a);
        let images =
            crate::gf2::enumerate_span(&atoms).expect("tile atoms are linearly independent");
        let distinct: std::collections::HashSet<&BitVec> = images.iter().collect();
        assert_eq!(
            distinct.len(),
            images.len(),
            "tile embedding is not injective"
        );
        for (mi, x) in images.iter().enumerate() {
            for (mj, y) in images.iter().enumerate() {
                assert_eq!(
                    mi & !mj == 0,
                    self.leq(x, y),
                    "tile embedding does not match the order at masks {mi},{mj}"
                );
            }
        }
        Ok(TileEmbedding { atoms, images })
    }
}

/// Greedy basis extraction from a subgroup given as an element list.
pub(crate) fn subgroup_basis(members: &[BitVec], ambient: usize) -> Vec<BitVec> {
    let mut sorted = members.to_vec();
    sorted.sort();
    let mut basis: Vec<BitVec> = Vec::new();
    for v in sorted {
        if v.is_zero() {
            continue;
        }
        let mut trial = basis.clone();
        trial.push(v.clone());
        if BitMatrix::from_rows(trial, ambient).rank() == basis.len() + 1 {
            basis.push(v);
        }
    }
    basis
}
