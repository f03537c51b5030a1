//! Exact linear algebra over the two-element field on packed bit vectors.
//!
//! Everything downstream — poset elements, functionals, cycles, cells —
//! lives in [`BitVec`]. Echelon forms always pick the lowest-index pivot
//! first so every computed basis is deterministic and reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

const WORD_BITS: usize = 64;

/// A GF(2) vector of fixed ambient dimension, packed into `u64` words.
///
/// Bit `i` lives at `words[i / 64] >> (i % 64)`. Bits at positions `>= len`
/// are kept zero, so equality is plain wordwise equality. Addition is XOR
/// and is an involution (`v + v = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    /// The zero vector of the given ambient dimension.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// A vector with exactly bit `bit` set.
    pub fn singleton(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    /// Builds a vector of length `len` from the binary expansion of `index`,
    /// with bit 0 the least significant. Inverse of [`BitVec::index`].
    pub fn from_index(len: usize, index: usize) -> Self {
        assert!(
            len >= usize::BITS as usize || index < (1usize << len),
            "index {index} out of range for dimension {len}"
        );
        let mut v = Self::zeros(len);
        let mut rem = index;
        let mut word = 0;
        while rem != 0 {
            v.words[word] = rem as u64;
            rem = if usize::BITS as usize > WORD_BITS {
                rem >> WORD_BITS
            } else {
                0
            };
            word += 1;
        }
        v
    }

    /// Packs the vector into a `usize`, bit 0 least significant.
    ///
    /// Panics if the ambient dimension exceeds the machine word.
    pub fn index(&self) -> usize {
        assert!(
            self.len < usize::BITS as usize,
            "dimension {} too large to index",
            self.len
        );
        self.words.first().map_or(0, |&w| w as usize)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// XOR-assigns `other` into `self` (addition in GF(2)).
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "length mismatch: {} vs {}",
            self.len, other.len
        );
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// The sum `self + other` in GF(2).
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn subset_of(&self, other: &Self) -> bool {
        assert_eq!(
            self.len, other.len,
            "length mismatch: {} vs {}",
            self.len, other.len
        );
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, or `None` for the zero vector.
    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * WORD_BITS;
            std::iter::successors(Some(w), |&w| Some(w & w.wrapping_sub(1)))
                .take_while(|&w| w != 0)
                .map(move |w| base + w.trailing_zeros() as usize)
        })
    }
}

/// Evaluation `s(v)` of a functional on a vector: the parity of the AND.
///
/// Bilinear and symmetric. Panics on a length mismatch.
pub fn dot(u: &BitVec, v: &BitVec) -> bool {
    assert_eq!(u.len, v.len, "dot: length mismatch: {} vs {}", u.len, v.len);
    u.words
        .iter()
        .zip(&v.words)
        .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
        & 1
        == 1
}

/// Orders vectors as bit strings read from position 0, so "01" < "10".
/// Used for every deterministic tie-break in the crate.
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return if a >> bit & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Little-endian bit string: "1011" is e1 + e3 + e4.
impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::InvalidParameter {
                        what: "bit strings contain only 0 and 1",
                    })
                }
            }
        }
        Ok(v)
    }
}

/// A dense GF(2) matrix stored as row vectors of a shared width.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVec::singleton(n, i)).collect();
        Self { rows, cols: n }
    }

    /// Builds a matrix from row vectors; all rows must share `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(
                r.len(),
                cols,
                "row length {} differs from cols {}",
                r.len(),
                cols
            );
        }
        Self { rows, cols }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    /// Matrix-vector product `Mv`; `v` has length `cols`, result `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(
            v.len(),
            self.cols,
            "mul_vec: vector length {} vs cols {}",
            v.len(),
            self.cols
        );
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, dot(row, v));
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Reduced row echelon form with lowest-index pivots; returns the
    /// echelon matrix and the pivot column of each nonzero row.
    pub fn reduced_echelon(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        (
            BitMatrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        self.reduced_echelon().1.len()
    }

    /// Basis of `{v : Mv = 0}` in the canonical form determined by the
    /// reduced echelon of `M`: one vector per free column, ascending, with
    /// a 1 at its own free column and the pivot rows' entries above it.
    /// Size is `cols - rank(M)`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (ech, pivots) = self.reduced_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if ech.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `xᵀM = target` treating the rows of `M` as a generating set:
    /// returns coefficients over the rows, or `None` if `target` is outside
    /// their span. Deterministic (prefers earlier rows).
    pub fn solve_row_combination(&self, target: &BitVec) -> Option<BitVec> {
        assert_eq!(target.len(), self.cols, "solve: length mismatch");
        // Augment each row with the unit tracking vector and eliminate.
        let n = self.rows.len();
        let mut work: Vec<(BitVec, BitVec)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), BitVec::singleton(n, i)))
            .collect();
        let mut goal = (target.clone(), BitVec::zeros(n));
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pr) = (rank..n).find(|&r| work[r].0.get(col)) else {
                continue;
            };
            work.swap(rank, pr);
            let (prow, ptrack) = (work[rank].0.clone(), work[rank].1.clone());
            for (r, (row, track)) in work.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&prow);
                    track.xor_assign(&ptrack);
                }
            }
            if goal.0.get(col) {
                goal.0.xor_assign(&prow);
                goal.1.xor_assign(&ptrack);
            }
            rank += 1;
        }
        goal.0.is_zero().then_some(goal.1)
    }
}

/// Basis of the annihilator `{w : dot(w, v) = 0 for all given v}` inside
/// the ambient space. Size is `ambient - rank(span of the inputs)`.
pub fn annihilator_basis(vectors: &[BitVec], ambient: usize) -> Vec<BitVec> {
    for v in vectors {
        assert_eq!(
            v.len(),
            ambient,
            "annihilator: vector length {} vs ambient {}",
            v.len(),
            ambient
        );
    }
    BitMatrix::from_rows(vectors.to_vec(), ambient).kernel_basis()
}

/// All `2^k` combinations of an independent basis, in counting order over
/// coefficient vectors with the first basis vector as least-significant bit:
/// `{b1, b2}` enumerates as `0, b1, b2, b1+b2`.
///
/// Rejects dependent inputs with [`Error::DependentBasis`].
pub fn enumerate_span(basis: &[BitVec]) -> Result<Vec<BitVec>> {
    let k = basis.len();
    assert!(
        k < usize::BITS as usize,
        "span of {k} vectors cannot be enumerated"
    );
    if !basis.is_empty() {
        let ambient = basis[0].len();
        if BitMatrix::from_rows(basis.to_vec(), ambient).rank() != k {
            return Err(Error::DependentBasis);
        }
    }
    let ambient = basis.first().map_or(0, BitVec::len);
    let mut out = Vec::with_capacity(1 << k);
    out.push(BitVec::zeros(ambient));
    for i in 1..1usize << k {
        // i with its lowest bit cleared is already present.
        let prev = &out[i & (i - 1)];
        out.push(prev.xor(&basis[i.trailing_zeros() as usize]));
    }
    Ok(out)
}
