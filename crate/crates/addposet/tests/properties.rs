//! Property tests for the algebraic invariants: GF(2) arithmetic laws,
//! kernel/annihilator duality, order axioms on generated posets, the
//! chain/independence structure, and replayable realization plans.

use proptest::prelude::*;

use addposet::corpus::{random_functional_poset, SplitMix64};
use addposet::gf2::{annihilator_basis, dot, enumerate_span, BitMatrix, BitVec};
use addposet::realization::plan_moves;

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            if *b {
                v.set(i, true);
            }
        }
        v
    })
}

fn vec_triple() -> impl Strategy<Value = (BitVec, BitVec, BitVec)> {
    (1usize..=10).prop_flat_map(|n| (bitvec(n), bitvec(n), bitvec(n)))
}

fn matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(bitvec(cols), rows)
            .prop_map(move |r| BitMatrix::from_rows(r, cols))
    })
}

proptest! {
    #[test]
    fn xor_is_an_involution((u, _, _) in vec_triple()) {
        prop_assert!(u.xor(&u).is_zero());
    }

    #[test]
    fn dot_is_bilinear_and_symmetric((u, v, w) in vec_triple()) {
        prop_assert_eq!(dot(&u, &v), dot(&v, &u));
        prop_assert_eq!(dot(&u.xor(&v), &w), dot(&u, &w) ^ dot(&v, &w));
    }

    #[test]
    fn kernel_vectors_are_killed_and_counted(m in matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), m.n_cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn double_annihilator_recovers_the_span(m in matrix()) {
        let ambient = m.n_cols();
        let ann = annihilator_basis(m.rows(), ambient);
        let back = annihilator_basis(&ann, ambient);
        prop_assert_eq!(BitMatrix::from_rows(back.clone(), ambient).rank(), m.rank());
        for w in &back {
            prop_assert!(m.solve_row_combination(w).is_some());
        }
    }

    #[test]
    fn span_enumeration_is_closed_under_addition(m in matrix()) {
        // Extract a basis greedily, then the span must be XOR-closed.
        let mut basis: Vec<BitVec> = Vec::new();
        for row in m.rows() {
            let mut trial = basis.clone();
            trial.push(row.clone());
            if BitMatrix::from_rows(trial.clone(), m.n_cols()).rank() == basis.len() + 1 {
                basis.push(row.clone());
            }
            if basis.len() >= 6 {
                break;
            }
        }
        let span = enumerate_span(&basis).unwrap();
        prop_assert_eq!(span.len(), 1 << basis.len());
        let set: std::collections::HashSet<&BitVec> = span.iter().collect();
        for a in &span {
            for b in &span {
                prop_assert!(set.contains(&a.xor(b)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functional_posets_satisfy_axioms_explicitly(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        // The functional backend is certified; the materialized table must
        // additionally pass the exhaustive scan.
        prop_assert!(poset.verify_axioms().unwrap().all_pass());
        let explicit = poset.to_explicit().unwrap();
        prop_assert!(explicit.verify_axioms().unwrap().all_pass());
    }

    #[test]
    fn lazy_and_explicit_leq_agree(seed in any::<u64>(), dim in 1usize..=6) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        let explicit = poset.to_explicit().unwrap();
        for a in explicit.elements() {
            for b in explicit.elements() {
                prop_assert_eq!(poset.leq(&a, &b), explicit.leq(&a, &b));
            }
        }
    }

    #[test]
    fn triple_relation_forces_zero(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        for a in poset.elements() {
            for b in poset.elements() {
                for c in poset.elements() {
                    if poset.leq(&a, &b) && poset.leq(&a, &c) && poset.leq(&a, &b.xor(&c)) {
                        prop_assert!(a.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn independence_is_symmetric_and_splits(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        for a in poset.elements() {
            for b in poset.elements() {
                prop_assert_eq!(poset.independent(&a, &b), poset.independent(&b, &a));
                if poset.independent(&a, &b) {
                    // A^{a+b} = A^a ∩ A^b.
                    let sum = a.xor(&b);
                    for x in poset.elements() {
                        prop_assert_eq!(
                            poset.independent(&sum, &x),
                            poset.independent(&a, &x) && poset.independent(&b, &x)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn covers_characterization_matches_definition(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        for a in poset.elements() {
            for b in poset.elements() {
                prop_assert_eq!(poset.covers(&a, &b), poset.covers_bruteforce(&a, &b));
            }
        }
    }

    #[test]
    fn mobius_expansion_reproduces_elements(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        let mobius = poset.mobius();
        for a in poset.elements() {
            // Internally asserts the XOR identity.
            let _ = poset.mobius_atom_expansion_with(&mobius, &a);
        }
    }

    #[test]
    fn complexity_is_bounded_by_the_generating_set(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        let generating = poset.functionals().unwrap().len();
        let complexity = poset.complexity().unwrap().complexity;
        prop_assert!(complexity <= generating);
        prop_assert!(complexity >= poset.dim());
    }

    #[test]
    fn invariant_chain_on_random_posets(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        let report = addposet::InvariantReport::compute(&poset);
        prop_assert!(report.height <= report.dim);
        prop_assert!(report.dim <= report.weight);
        prop_assert!(report.weight <= report.width);
        // Heights agree with the independence-family oracle.
        prop_assert_eq!(report.height, poset.max_independent_family().len());
    }

    #[test]
    fn move_plans_replay_to_their_target(seed in any::<u64>(), dim in 1usize..=5) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        let target = poset.functionals().unwrap();
        // plan_moves replays internally and asserts the reproduction.
        let script = plan_moves(dim, target).unwrap();
        prop_assert_eq!(
            script.replay().unwrap(),
            target.iter().cloned().collect::<std::collections::BTreeSet<_>>()
        );
    }

    #[test]
    fn bitvec_display_round_trips(v in (0usize..=16).prop_flat_map(bitvec)) {
        let text = v.to_string();
        prop_assert_eq!(text.parse::<BitVec>().unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn realization_round_trips_on_random_posets(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = SplitMix64::new(seed);
        let poset = random_functional_poset(&mut rng, dim);
        // realize_complex verifies the isomorphism internally.
        let realization = addposet::realization::realize_complex(
            &poset,
            2,
            addposet::realization::FunctionalChoice::MinimalSeparating,
        )
        .unwrap();
        prop_assert_eq!(realization.homology.dim(), dim);
        prop_assert_eq!(realization.complex.cell_count(2), realization.functionals.len());
    }

    #[test]
    fn direct_sum_carries_the_cartesian_order(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut rng = SplitMix64::new(seed);
        let a = random_functional_poset(&mut rng, da);
        let b = random_functional_poset(&mut rng, db);
        let sum = a.direct_sum(&b);
        prop_assert!(sum.verify_axioms().unwrap().all_pass());
        for x in sum.elements() {
            for y in sum.elements() {
                let (xa, xb) = split(&x, da, db);
                let (ya, yb) = split(&y, da, db);
                prop_assert_eq!(sum.leq(&x, &y), a.leq(&xa, &ya) && b.leq(&xb, &yb));
            }
        }
    }
}

fn split(v: &BitVec, da: usize, db: usize) -> (BitVec, BitVec) {
    let mut left = BitVec::zeros(da);
    let mut right = BitVec::zeros(db);
    for i in v.ones() {
        if i < da {
            left.set(i, true);
        } else {
            right.set(i - da, true);
        }
    }
    (left, right)
}

/// Sampled pairwise-independent families are linearly independent.
#[test]
fn independent_families_are_linearly_independent() {
    let mut rng = SplitMix64::new(0xfa31);
    for _ in 0..40 {
        let dim = 2 + rng.below(4);
        let poset = random_functional_poset(&mut rng, dim);
        let family = poset.max_independent_family();
        assert!(!family.is_empty());
        assert_eq!(
            BitMatrix::from_rows(family.clone(), dim).rank(),
            family.len(),
            "pairwise independent vectors must be linearly independent"
        );
    }
}
