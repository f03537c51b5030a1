//! Plainness: order-preserving functionals, separating sets, powerset
//! embeddings, exact complexity, the Sperner bound, and the rank checker.
//!
//! A poset is plain iff it embeds in a finite additive powerset, iff its
//! order-preserving functionals are separating. The complexity `c(A)` is
//! the smallest size of a separating subset, found here by exact set cover
//! over the violation pairs.

use crate::gf2::BitVec;
use crate::poset::AdditivePoset;
use crate::{Error, Result};

/// Proof that a functional set is separating: every non-relation `a ≰ b`
/// is covered by a functional with `s(a) = 1`, `s(b) = 0`.
#[derive(Clone, Debug)]
pub struct SeparatingCertificate {
    pub functionals: Vec<BitVec>,
    /// One entry per violation pair `(a, b)` with `a ≰ b`, in ascending
    /// index order: the index into `functionals` of a covering witness.
    pub coverage: Vec<(BitVec, BitVec, usize)>,
}

/// Outcome of a separating-set check.
#[derive(Clone, Debug)]
pub enum SeparatingOutcome {
    Separating(SeparatingCertificate),
    /// A member fails monotonicity on the given related pair.
    NotOrderPreserving {
        functional: BitVec,
        pair: (BitVec, BitVec),
    },
    /// The first violation pair no functional covers.
    Uncovered {
        pair: (BitVec, BitVec),
    },
}

impl SeparatingOutcome {
    pub fn is_separating(&self) -> bool {
        matches!(self, SeparatingOutcome::Separating(_))
    }
}

/// The embedding `a ↦ {s ∈ S : s(a) = 1}` of a poset into the powerset of
/// a separating set `S`.
#[derive(Clone, Debug)]
pub struct PowersetEmbedding {
    pub functionals: Vec<BitVec>,
    /// `images[i]` is the image of the element with index `i`, as a subset
    /// of `functionals` positions.
    pub images: Vec<BitVec>,
}

impl PowersetEmbedding {
    pub fn image_of(&self, a: &BitVec) -> &BitVec {
        &self.images[a.index()]
    }

    /// Rank induced by the embedding: `r(a) = |φ(a)|`.
    pub fn rank_function(&self) -> Vec<u64> {
        self.images.iter().map(|v| v.count_ones() as u64).collect()
    }
}

/// Plainness verdict with the witnessing data.
#[derive(Clone, Debug)]
pub struct PlainnessReport {
    pub plain: bool,
    /// All order-preserving functionals, in bit-string order.
    pub order_preserving: Vec<BitVec>,
    /// The canonical embedding through the full order-preserving set.
    pub embedding: Option<PowersetEmbedding>,
    /// For non-plain posets, the first uncovered violation pair.
    pub uncovered: Option<(BitVec, BitVec)>,
}

/// Exact complexity with the witnessing minimal separating set.
#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub complexity: usize,
    /// Minimum-cardinality separating set, lexicographically smallest
    /// (by sorted bit-string order) among all minimum ones.
    pub minimal_set: Vec<BitVec>,
}

/// Sperner-theorem bound `C(c, ⌊c/2⌋) ≥ w`.
#[derive(Clone, Debug)]
pub struct SpernerReport {
    pub complexity: usize,
    pub width: usize,
    pub binomial: u64,
    pub holds: bool,
}

/// A violation found by the rank checker.
#[derive(Clone, Debug)]
pub enum RankViolation {
    /// `r(0) ≠ 0` or `r(a) = 0` for a nonzero `a`.
    ZeroFiber { element: BitVec },
    /// Independent `a, b` with `r(a+b) ≠ r(a) + r(b)`.
    Additivity { a: BitVec, b: BitVec },
    /// A subset whose alternating sum is negative or not divisible by
    /// `2^(|K|-1)`.
    AlternatingSum { subset: Vec<BitVec>, value: i128 },
}

#[derive(Clone, Debug, Default)]
pub struct RankReport {
    pub violations: Vec<RankViolation>,
}

impl RankReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k.min(n));
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(out).expect("binomial fits u64 at these sizes")
}

impl AdditivePoset {
    /// Ordered pairs `(a, b)` with `a ≤ b` and `a ≠ b`, by element index.
    fn strict_relations(&self) -> Vec<(usize, usize)> {
        let table = self.table().unwrap_or_else(|e| panic!("plainness: {e}"));
        let mut pairs = Vec::new();
        for a in 0..table.n_elements() {
            for b in table.up(a).ones() {
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Ordered pairs `(a, b)` with `a ≰ b`, by element index.
    fn violation_pairs(&self) -> Vec<(usize, usize)> {
        let table = self.table().unwrap_or_else(|e| panic!("plainness: {e}"));
        let mut pairs = Vec::new();
        for a in 0..table.n_elements() {
            for b in 0..table.n_elements() {
                if !table.get(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    fn functional_is_order_preserving(&self, s_index: usize, relations: &[(usize, usize)]) -> bool {
        relations
            .iter()
            .all(|&(a, b)| (s_index & a).count_ones() % 2 <= (s_index & b).count_ones() % 2)
    }

    /// All functionals `s` with `a ≤ b ⇒ s(a) ≤ s(b)`, in bit-string order.
    /// Always contains the zero functional.
    pub fn order_preserving_functionals(&self) -> Vec<BitVec> {
        let relations = self.strict_relations();
        let mut out: Vec<BitVec> = (0..self.element_count())
            .filter(|&s| self.functional_is_order_preserving(s, &relations))
            .map(|s| BitVec::from_index(self.dim(), s))
            .collect();
        out.sort();
        out
    }

    /// Checks that every member of `s` is order-preserving and that every
    /// violation pair is covered, producing a certificate or the first
    /// counterexample.
    pub fn is_separating(&self, s: &[BitVec]) -> SeparatingOutcome {
        let relations = self.strict_relations();
        for f in s {
            assert_eq!(
                f.len(),
                self.dim(),
                "functional length {} vs dim {}",
                f.len(),
                self.dim()
            );
            if !self.functional_is_order_preserving(f.index(), &relations) {
                let (a, b) = relations
                    .iter()
                    .find(|&&(a, b)| {
                        (f.index() & a).count_ones() % 2 > (f.index() & b).count_ones() % 2
                    })
                    .expect("a violated relation exists");
                return SeparatingOutcome::NotOrderPreserving {
                    functional: f.clone(),
                    pair: (
                        BitVec::from_index(self.dim(), *a),
                        BitVec::from_index(self.dim(), *b),
                    ),
                };
            }
        }
        let mut coverage = Vec::new();
        for (a, b) in self.violation_pairs() {
            let witness = s.iter().position(|f| {
                (f.index() & a).count_ones() % 2 == 1 && (f.index() & b).count_ones() % 2 == 0
            });
            match witness {
                Some(i) => coverage.push((
                    BitVec::from_index(self.dim(), a),
                    BitVec::from_index(self.dim(), b),
                    i,
                )),
                None => {
                    return SeparatingOutcome::Uncovered {
                        pair: (
                            BitVec::from_index(self.dim(), a),
                            BitVec::from_index(self.dim(), b),
                        ),
                    }
                }
            }
        }
        SeparatingOutcome::Separating(SeparatingCertificate {
            functionals: s.to_vec(),
            coverage,
        })
    }

    /// Plainness test: is the full order-preserving set separating?
    /// On success the canonical powerset embedding is returned with it.
    pub fn is_plain(&self) -> PlainnessReport {
        let order_preserving = self.order_preserving_functionals();
        match self.is_separating(&order_preserving) {
            SeparatingOutcome::Separating(_) => {
                let embedding = self
                    .embed_powerset(&order_preserving)
                    .expect("set is separating");
                PlainnessReport {
                    plain: true,
                    order_preserving,
                    embedding: Some(embedding),
                    uncovered: None,
                }
            }
            SeparatingOutcome::Uncovered { pair } => PlainnessReport {
                plain: false,
                order_preserving,
                embedding: None,
                uncovered: Some(pair),
            },
            SeparatingOutcome::NotOrderPreserving { .. } => {
                unreachable!("the order-preserving scan only emits order-preserving functionals")
            }
        }
    }

    /// The embedding `φ(a) = {s ∈ S : s(a) = 1}` for a separating `S`,
    /// verified additive, injective, and order-reflecting.
    pub fn embed_powerset(&self, s: &[BitVec]) -> Result<PowersetEmbedding> {
        match self.is_separating(s) {
            SeparatingOutcome::Separating(_) => {}
            SeparatingOutcome::NotOrderPreserving { .. } => {
                return Err(Error::NotSeparating {
                    reason: "a functional is not order-preserving",
                })
            }
            SeparatingOutcome::Uncovered { .. } => {
                return Err(Error::NotSeparating {
                    reason: "a violation pair is uncovered",
                })
            }
        }
        let count = self.element_count();
        let images: Vec<BitVec> = (0..count)
            .map(|a| {
                let mut image = BitVec::zeros(s.len());
                for (j, f) in s.iter().enumerate() {
                    if (f.index() & a).count_ones() % 2 == 1 {
                        image.set(j, true);
                    }
                }
                image
            })
            .collect();
        for a in 0..count {
            for b in 0..count {
                assert_eq!(
                    images[a].xor(&images[b]),
                    images[a ^ b],
                    "powerset embedding is not additive"
                );
                let av = BitVec::from_index(self.dim(), a);
                let bv = BitVec::from_index(self.dim(), b);
                assert_eq!(
                    self.leq(&av, &bv),
                    images[a].subset_of(&images[b]),
                    "powerset embedding does not reflect the order at ({av}, {bv})"
                );
            }
            if a != 0 {
                assert!(!images[a].is_zero(), "powerset embedding is not injective");
            }
        }
        Ok(PowersetEmbedding {
            functionals: s.to_vec(),
            images,
        })
    }

    /// Exact complexity: the minimum cardinality of a separating subset of
    /// the order-preserving functionals, by branch-and-bound set cover over
    /// the violation pairs, with a deterministic lexicographically smallest
    /// witness. Errors on non-plain posets.
    pub fn complexity(&self) -> Result<ComplexityReport> {
        let report = self.is_plain();
        if !report.plain {
            return Err(Error::NotPlain);
        }
        // Zero covers nothing; candidates are the nonzero order-preserving
        // functionals in bit-string order.
        let candidates: Vec<BitVec> = report
            .order_preserving
            .into_iter()
            .filter(|f| !f.is_zero())
            .collect();
        let pairs = self.violation_pairs();
        let n_pairs = pairs.len();
        if n_pairs == 0 {
            return Ok(ComplexityReport {
                complexity: 0,
                minimal_set: Vec::new(),
            });
        }
        let cover_sets: Vec<BitVec> = candidates
            .iter()
            .map(|f| {
                let mut cover = BitVec::zeros(n_pairs);
                for (p, &(a, b)) in pairs.iter().enumerate() {
                    if (f.index() & a).count_ones() % 2 == 1
                        && (f.index() & b).count_ones() % 2 == 0
                    {
                        cover.set(p, true);
                    }
                }
                cover
            })
            .collect();
        let max_cover = cover_sets
            .iter()
            .map(BitVec::count_ones)
            .max()
            .unwrap_or(1)
            .max(1);
        // Highest candidate index covering each pair, for dead-branch cuts.
        let mut last_cover = vec![usize::MAX; n_pairs];
        for p in 0..n_pairs {
            for (i, c) in cover_sets.iter().enumerate().rev() {
                if c.get(p) {
                    last_cover[p] = i;
                    break;
                }
            }
            assert_ne!(last_cover[p], usize::MAX, "a plain poset covers every pair");
        }

        // Greedy cover for the initial upper bound.
        let mut greedy: Vec<usize> = Vec::new();
        let mut uncovered = full_set(n_pairs);
        while !uncovered.is_zero() {
            let best = (0..candidates.len())
                .max_by_key(|&i| uncovered.ones().filter(|&p| cover_sets[i].get(p)).count())
                .expect("candidates exist");
            greedy.push(best);
            for p in cover_sets[best].ones() {
                uncovered.set(p, false);
            }
        }

        struct Search<'s> {
            cover_sets: &'s [BitVec],
            last_cover: &'s [usize],
            max_cover: usize,
            best: Vec<usize>,
        }
        impl Search<'_> {
            /// Branch and bound for the minimum cardinality.
            fn minimize(&mut self, from: usize, chosen: &mut Vec<usize>, uncovered: &BitVec) {
                if uncovered.is_zero() {
                    if chosen.len() < self.best.len() {
                        self.best = chosen.clone();
                    }
                    return;
                }
                let missing = uncovered.count_ones();
                let lower = missing.div_ceil(self.max_cover);
                if chosen.len() + lower >= self.best.len() {
                    return;
                }
                // Some remaining candidate must cover every open pair.
                if uncovered.ones().any(|p| self.last_cover[p] < from) {
                    return;
                }
                for i in from..self.cover_sets.len() {
                    // A candidate covering nothing new never belongs to a
                    // minimum cover extending this prefix.
                    if !uncovered.ones().any(|p| self.cover_sets[i].get(p)) {
                        continue;
                    }
                    let mut next = uncovered.clone();
                    for p in self.cover_sets[i].ones() {
                        next.set(p, false);
                    }
                    chosen.push(i);
                    self.minimize(i + 1, chosen, &next);
                    chosen.pop();
                }
            }

            /// First cover of size at most `size` in index-lex order; since
            /// `size` is the proven minimum, this is the lexicographically
            /// smallest minimum cover.
            fn lex_first(
                &self,
                size: usize,
                from: usize,
                chosen: &mut Vec<usize>,
                uncovered: &BitVec,
            ) -> Option<Vec<usize>> {
                if uncovered.is_zero() {
                    return Some(chosen.clone());
                }
                let lower = uncovered.count_ones().div_ceil(self.max_cover);
                if chosen.len() + lower > size {
                    return None;
                }
                if uncovered.ones().any(|p| self.last_cover[p] < from) {
                    return None;
                }
                for i in from..self.cover_sets.len() {
                    if !uncovered.ones().any(|p| self.cover_sets[i].get(p)) {
                        continue;
                    }
                    let mut next = uncovered.clone();
                    for p in self.cover_sets[i].ones() {
                        next.set(p, false);
                    }
                    chosen.push(i);
                    if let Some(found) = self.lex_first(size, i + 1, chosen, &next) {
                        return Some(found);
                    }
                    chosen.pop();
                }
                None
            }
        }
        let mut search = Search {
            cover_sets: &cover_sets,
            last_cover: &last_cover,
            max_cover,
            best: greedy,
        };
        search.minimize(0, &mut Vec::new(), &full_set(n_pairs));
        let minimum = search.best.len();
        let witness = search
            .lex_first(minimum, 0, &mut Vec::new(), &full_set(n_pairs))
            .expect("a cover of the proven minimum size exists");

        let minimal_set: Vec<BitVec> = witness.iter().map(|&i| candidates[i].clone()).collect();
        let complexity = minimal_set.len();
        assert!(
            complexity >= self.dim(),
            "complexity below the dimension bound"
        );
        if self.dim() <= crate::poset::ISO_SEARCH_CAP {
            match self.is_isomorphic(&AdditivePoset::powerset(self.dim())) {
                crate::poset::IsoOutcome::Isomorphic(_) => assert_eq!(complexity, self.dim()),
                crate::poset::IsoOutcome::NotIsomorphic => assert!(complexity > self.dim()),
                crate::poset::IsoOutcome::Unknown => {}
            }
        }
        Ok(ComplexityReport {
            complexity,
            minimal_set,
        })
    }

    /// Checks `C(c(A), ⌊c/2⌋) ≥ w(A)`.
    pub fn sperner_bound(&self) -> Result<SpernerReport> {
        let complexity = self.complexity()?.complexity;
        let width = self.width().0;
        let bound = binomial(complexity, complexity / 2);
        Ok(SpernerReport {
            complexity,
            width,
            binomial: bound,
            holds: bound >= width as u64,
        })
    }

    /// Rank-candidate checker: verifies `r⁻¹(0) = {0}`, additivity on
    /// independent pairs, and the alternating-sum nonnegativity and
    /// divisibility conditions for subsets `K` with `|K| ≤ kmax`.
    pub fn check_rank(&self, r: &[u64], kmax: usize) -> Result<RankReport> {
        if kmax > 5 {
            return Err(Error::InvalidParameter {
                what: "kmax is capped at 5",
            });
        }
        let count = self.element_count();
        if r.len() != count {
            return Err(Error::InvalidParameter {
                what: "rank table must have one entry per element",
            });
        }
        let mut report = RankReport::default();
        if r[0] != 0 {
            report.violations.push(RankViolation::ZeroFiber {
                element: self.zero(),
            });
        }
        for a in 1..count {
            if r[a] == 0 {
                report.violations.push(RankViolation::ZeroFiber {
                    element: BitVec::from_index(self.dim(), a),
                });
            }
        }
        for a in 0..count {
            for b in 0..count {
                let av = BitVec::from_index(self.dim(), a);
                let bv = BitVec::from_index(self.dim(), b);
                if self.independent(&av, &bv) && r[a ^ b] != r[a] + r[b] {
                    report
                        .violations
                        .push(RankViolation::Additivity { a: av, b: bv });
                }
            }
        }

        let mut subset: Vec<usize> = Vec::new();
        alternating_scan(self, r, kmax, 0, &mut subset, &mut report);
        Ok(report)
    }
}

fn full_set(n: usize) -> BitVec {
    let mut v = BitVec::zeros(n);
    for i in 0..n {
        v.set(i, true);
    }
    v
}

fn alternating_scan(
    poset: &AdditivePoset,
    r: &[u64],
    kmax: usize,
    from: usize,
    subset: &mut Vec<usize>,
    report: &mut RankReport,
) {
    if !subset.is_empty() {
        let k = subset.len();
        let mut total: i128 = 0;
        for mask in 1usize..1 << k {
            let mut xor = 0usize;
            for (bit, &el) in subset.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    xor ^= el;
                }
            }
            let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
            total += sign * r[xor] as i128;
        }
        let modulus = 1i128 << (k - 1);
        if total < 0 || total % modulus != 0 {
            report.violations.push(RankViolation::AlternatingSum {
                subset: subset
                    .iter()
                    .map(|&i| BitVec::from_index(poset.dim(), i))
                    .collect(),
                value: total,
            });
        }
    }
    if subset.len() == kmax {
        return;
    }
    for next in from..poset.element_count() {
        subset.push(next);
        alternating_scan(poset, r, kmax, next + 1, subset, report);
        subset.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::dot;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn order_preserving_for_trivial_order_is_everything() {
        for n in 1..=4 {
            let t = AdditivePoset::trivial(n);
            assert_eq!(t.order_preserving_functionals().len(), 1 << n);
        }
    }

    #[test]
    fn order_preserving_for_powerset_is_coordinates() {
        // Exhaustive-definition oracle: exactly zero and the n coordinate
        // functionals survive the monotonicity scan.
        for n in 1..=4 {
            let p = AdditivePoset::powerset(n);
            let mut expected: Vec<BitVec> = (0..n).map(|i| BitVec::singleton(n, i)).collect();
            expected.push(BitVec::zeros(n));
            expected.sort();
            assert_eq!(p.order_preserving_functionals(), expected);
        }
    }

    #[test]
    fn dual_basis_separates_powerset() {
        let p = AdditivePoset::powerset(3);
        let dual: Vec<BitVec> = (0..3).map(|i| BitVec::singleton(3, i)).collect();
        let outcome = p.is_separating(&dual);
        assert!(outcome.is_separating());
        if let SeparatingOutcome::Separating(cert) = outcome {
            // Coverage is total over violation pairs.
            let violations = (0..8usize)
                .flat_map(|a| (0..8usize).map(move |b| (a, b)))
                .filter(|&(a, b)| a & !b != 0)
                .count();
            assert_eq!(cert.coverage.len(), violations);
            for (a, b, i) in &cert.coverage {
                assert!(dot(&cert.functionals[*i], a));
                assert!(!dot(&cert.functionals[*i], b));
            }
        }
    }

    #[test]
    fn known_nonseparating_family_for_trivial3() {
        // x, y, z plus two of the other nonzero vectors never separate.
        let t = AdditivePoset::trivial(3);
        let s = [bv("100"), bv("010"), bv("001"), bv("110"), bv("101")];
        assert!(!t.is_separating(&s).is_separating());
    }

    #[test]
    fn empty_set_separates_only_the_point() {
        assert!(AdditivePoset::trivial(0).is_separating(&[]).is_separating());
        assert!(!AdditivePoset::trivial(1).is_separating(&[]).is_separating());
    }

    #[test]
    fn non_order_preserving_member_is_reported() {
        let p = AdditivePoset::powerset(2);
        match p.is_separating(&[bv("11")]) {
            SeparatingOutcome::NotOrderPreserving { functional, pair } => {
                assert_eq!(functional, bv("11"));
                assert!(p.lt(&pair.0, &pair.1));
            }
            other => panic!("expected NotOrderPreserving, got {other:?}"),
        }
    }

    #[test]
    fn standard_posets_are_plain() {
        for p in [
            AdditivePoset::powerset(3),
            AdditivePoset::even_powerset(4),
            AdditivePoset::trivial(3),
            AdditivePoset::pointed(3, &bv("011")).unwrap(),
            AdditivePoset::trivial(0),
        ] {
            let report = p.is_plain();
            assert!(report.plain);
            assert!(report.embedding.is_some());
        }
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(
            AdditivePoset::trivial(1).complexity().unwrap().complexity,
            1
        );
        assert_eq!(
            AdditivePoset::trivial(2).complexity().unwrap().complexity,
            3
        );
        assert_eq!(
            AdditivePoset::trivial(3).complexity().unwrap().complexity,
            6
        );
        for n in 1..=4 {
            assert_eq!(
                AdditivePoset::powerset(n).complexity().unwrap().complexity,
                n
            );
        }
        for n in 3..=4 {
            assert_eq!(
                AdditivePoset::even_powerset(n)
                    .complexity()
                    .unwrap()
                    .complexity,
                n
            );
        }
    }

    #[test]
    fn complexity_witness_is_separating_and_deterministic() {
        let t = AdditivePoset::trivial(2);
        let report = t.complexity().unwrap();
        assert_eq!(report.minimal_set.len(), report.complexity);
        assert!(t.is_separating(&report.minimal_set).is_separating());
        let again = t.complexity().unwrap();
        assert_eq!(report.minimal_set, again.minimal_set);
    }

    /// Oracle: the first separating k-subset in lexicographic order over
    /// the sorted candidate pool, by direct enumeration.
    fn lex_first_separating(poset: &AdditivePoset, k: usize) -> Option<Vec<BitVec>> {
        let candidates: Vec<BitVec> = poset
            .order_preserving_functionals()
            .into_iter()
            .filter(|f| !f.is_zero())
            .collect();
        fn rec(
            poset: &AdditivePoset,
            candidates: &[BitVec],
            k: usize,
            from: usize,
            chosen: &mut Vec<BitVec>,
        ) -> Option<Vec<BitVec>> {
            if chosen.len() == k {
                return poset
                    .is_separating(chosen)
                    .is_separating()
                    .then(|| chosen.clone());
            }
            for i in from..candidates.len() {
                chosen.push(candidates[i].clone());
                if let Some(found) = rec(poset, candidates, k, i + 1, chosen) {
                    return Some(found);
                }
                chosen.pop();
            }
            None
        }
        rec(poset, &candidates, k, 0, &mut Vec::new())
    }

    #[test]
    fn complexity_witness_is_lexicographically_smallest() {
        for poset in [
            AdditivePoset::trivial(2),
            AdditivePoset::trivial(3),
            AdditivePoset::even_powerset(4),
        ] {
            let report = poset.complexity().unwrap();
            let expected = lex_first_separating(&poset, report.complexity).unwrap();
            assert_eq!(report.minimal_set, expected);
        }
    }

    #[test]
    fn complexity_is_bounded_by_any_separating_set() {
        let p = AdditivePoset::even_powerset(4);
        let c = p.complexity().unwrap().complexity;
        let all = p.order_preserving_functionals();
        assert!(c <= all.iter().filter(|f| !f.is_zero()).count());
    }

    #[test]
    fn trivial_m_upper_bound_via_pair_construction() {
        // The explicit embedding v -> {i : v in i} over singletons and pairs
        // of basis vectors gives a separating set of size m(m+1)/2.
        for m in 1..=4 {
            let t = AdditivePoset::trivial(m);
            let mut s: Vec<BitVec> = Vec::new();
            for i in 0..m {
                s.push(BitVec::singleton(m, i));
                for j in i + 1..m {
                    let mut f = BitVec::singleton(m, i);
                    f.set(j, true);
                    s.push(f);
                }
            }
            assert_eq!(s.len(), m * (m + 1) / 2);
            assert!(t.is_separating(&s).is_separating());
            assert!(t.complexity().unwrap().complexity <= m * (m + 1) / 2);
        }
    }

    #[test]
    fn embedding_examples() {
        let p = AdditivePoset::powerset(3);
        let dual: Vec<BitVec> = (0..3).map(|i| BitVec::singleton(3, i)).collect();
        let emb = p.embed_powerset(&dual).unwrap();
        assert!(emb.image_of(&p.zero()).is_zero());
        for a in p.elements() {
            assert_eq!(emb.image_of(&a).to_string(), a.to_string());
        }

        // Minimal triple for the trivial plane: pairwise incomparable
        // nonzero images inside powerset(3).
        let t = AdditivePoset::trivial(2);
        let minimal = t.complexity().unwrap().minimal_set;
        assert_eq!(minimal.len(), 3);
        let emb = t.embed_powerset(&minimal).unwrap();
        let nonzero: Vec<BitVec> = (1..4).map(|i| emb.images[i].clone()).collect();
        for (i, x) in nonzero.iter().enumerate() {
            for y in &nonzero[i + 1..] {
                assert!(!x.subset_of(y) && !y.subset_of(x));
            }
        }
    }

    #[test]
    fn embed_rejects_non_separating() {
        let p = AdditivePoset::powerset(2);
        assert!(matches!(
            p.embed_powerset(&[bv("10")]),
            Err(Error::NotSeparating { .. })
        ));
    }

    #[test]
    fn sperner_examples() {
        let two = AdditivePoset::trivial(2).sperner_bound().unwrap();
        assert!(two.holds);
        assert_eq!((two.binomial, two.width), (3, 3));

        let three = AdditivePoset::trivial(3).sperner_bound().unwrap();
        assert_eq!((three.complexity, three.binomial, three.width), (6, 20, 7));

        for n in 1..=4 {
            let b = AdditivePoset::powerset(n).sperner_bound().unwrap();
            assert_eq!(b.binomial, b.width as u64);
            assert!(b.holds);
        }
    }

    #[test]
    fn rank_from_embedding_passes() {
        for p in [
            AdditivePoset::powerset(3),
            AdditivePoset::trivial(2),
            AdditivePoset::even_powerset(4),
        ] {
            let emb = p.is_plain().embedding.unwrap();
            let r = emb.rank_function();
            let report = p.check_rank(&r, 3).unwrap();
            assert!(report.passes(), "violations: {:?}", report.violations);
        }
    }

    #[test]
    fn rank_violations_detected() {
        let p = AdditivePoset::powerset(2);
        // Identically zero fails the zero-fiber condition.
        let zero = vec![0u64; 4];
        assert!(!p.check_rank(&zero, 2).unwrap().passes());

        // r(a) = 1 for all nonzero a fails additivity at {1} + {2}.
        let ones = vec![0, 1, 1, 1];
        let report = p.check_rank(&ones, 2).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, RankViolation::Additivity { .. })));
    }

    #[test]
    fn rank_kmax_is_capped() {
        let p = AdditivePoset::powerset(2);
        assert!(p.check_rank(&[0, 1, 1, 2], 6).is_err());
    }
}
