//! Realization of plain additive posets as homological posets.
//!
//! The move calculus transforms a dual basis into any spanning functional
//! set: M1 adds `a+b` for distinct members `a, b`, M2 replaces `a` by
//! `a+b`. A plain poset with separating set `S` is realized at the chain
//! level by a complex with `|S|` top cells whose kernel is exactly the
//! powerset image of the poset; trivially ordered posets of dimension up
//! to four are additionally realized by concrete graphs.

use std::collections::BTreeSet;

use crate::gf2::{annihilator_basis, BitMatrix, BitVec};
use crate::homology::{
    h1_poset, hn_poset, k33, k4, loop_graph, theta_graph, ChainComplex, Graph, HomologyPoset,
};
use crate::poset::{AdditivePoset, IsoOutcome, ISO_SEARCH_CAP};
use crate::{Error, Result};

/// One move on a functional set; operands are identified by value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Adds `a + b` for distinct members `a, b` (no-op when present).
    M1(BitVec, BitVec),
    /// Deletes `a` and adds `a + b` (only deletes when `a+b` is present).
    M2(BitVec, BitVec),
}

impl Move {
    fn operands(&self) -> (&BitVec, &BitVec) {
        match self {
            Move::M1(a, b) | Move::M2(a, b) => (a, b),
        }
    }
}

/// A replayable move sequence from an initial functional set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveScript {
    pub initial: Vec<BitVec>,
    pub moves: Vec<Move>,
}

/// Applies one move in place; operands must be present and distinct.
pub fn apply_move(set: &mut BTreeSet<BitVec>, m: &Move) -> Result<()> {
    let (a, b) = m.operands();
    if a == b {
        return Err(Error::EqualOperands);
    }
    for operand in [a, b] {
        if !set.contains(operand) {
            return Err(Error::MissingOperand {
                operand: operand.clone(),
            });
        }
    }
    let sum = a.xor(b);
    debug_assert!(!sum.is_zero(), "distinct operands sum to a nonzero vector");
    match m {
        Move::M1(..) => {
            set.insert(sum);
        }
        Move::M2(a, _) => {
            set.remove(a);
            set.insert(sum);
        }
    }
    Ok(())
}

impl MoveScript {
    /// Replays all moves from the initial set.
    pub fn replay(&self) -> Result<BTreeSet<BitVec>> {
        let mut set: BTreeSet<BitVec> = self.initial.iter().cloned().collect();
        for m in &self.moves {
            apply_move(&mut set, m)?;
        }
        Ok(set)
    }
}

/// Plans a move script transforming a basis of the dual into `target`.
///
/// The basis is the greedy bit-string-smallest independent subset of the
/// target. Remaining vectors are added in descending size (number of basis
/// summands, ties in bit-string order): one M1 building the first partial
/// sum, then M2 steps upgrading it, so no intermediate junk survives. The
/// plan is replay-verified to reproduce `target` exactly, with every
/// intermediate set spanning and zero-free.
pub fn plan_moves(dim: usize, target: &[BitVec]) -> Result<MoveScript> {
    for s in target {
        assert_eq!(s.len(), dim, "functional length {} vs dim {dim}", s.len());
        if s.is_zero() {
            return Err(Error::ZeroVector {
                what: "target functionals",
            });
        }
    }
    let target_set: BTreeSet<BitVec> = target.iter().cloned().collect();
    let sorted: Vec<BitVec> = target_set.iter().cloned().collect();
    if BitMatrix::from_rows(sorted.clone(), dim).rank() != dim {
        return Err(Error::NotSpanning);
    }
    let mut basis: Vec<BitVec> = Vec::new();
    for s in &sorted {
        if basis.len() == dim {
            break;
        }
        let mut trial = basis.clone();
        trial.push(s.clone());
        if BitMatrix::from_rows(trial, dim).rank() == basis.len() + 1 {
            basis.push(s.clone());
        }
    }
    let basis_matrix = BitMatrix::from_rows(basis.clone(), dim);
    let basis_set: BTreeSet<BitVec> = basis.iter().cloned().collect();

    // Expansions over the basis, largest size first.
    let mut pending: Vec<(usize, BitVec, Vec<usize>)> = Vec::new();
    for s in &sorted {
        if basis_set.contains(s) {
            continue;
        }
        let coeffs = basis_matrix
            .solve_row_combination(s)
            .expect("target spans the dual");
        let summands: Vec<usize> = coeffs.ones().collect();
        pending.push((summands.len(), s.clone(), summands));
    }
    pending.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));

    let mut moves = Vec::new();
    for (size, _, summands) in &pending {
        assert!(
            *size >= 2,
            "non-basis members expand over at least two basis vectors"
        );
        let mut partial = basis[summands[0]].xor(&basis[summands[1]]);
        moves.push(Move::M1(
            basis[summands[0]].clone(),
            basis[summands[1]].clone(),
        ));
        for &j in &summands[2..] {
            let next = partial.xor(&basis[j]);
            moves.push(Move::M2(partial.clone(), basis[j].clone()));
            partial = next;
        }
    }

    let script = MoveScript {
        initial: basis,
        moves,
    };
    // Replay and verify the invariants promised above.
    let mut set: BTreeSet<BitVec> = script.initial.iter().cloned().collect();
    for m in &script.moves {
        apply_move(&mut set, m)?;
        assert!(
            !set.contains(&BitVec::zeros(dim)),
            "moves never introduce zero"
        );
        let rows: Vec<BitVec> = set.iter().cloned().collect();
        assert_eq!(
            BitMatrix::from_rows(rows, dim).rank(),
            dim,
            "intermediate sets keep spanning"
        );
    }
    assert_eq!(
        set, target_set,
        "replaying the plan must reproduce the target set"
    );
    Ok(script)
}

/// Which separating set realization uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FunctionalChoice {
    /// The complexity-minimal separating set (cell-minimal complexes).
    #[default]
    MinimalSeparating,
    /// All nonzero order-preserving functionals.
    AllOrderPreserving,
}

/// A chain-level realization of a plain poset.
#[derive(Clone, Debug)]
pub struct Realization {
    pub complex: ChainComplex,
    pub homology: HomologyPoset,
    /// The separating set that became the top cells.
    pub functionals: Vec<BitVec>,
    /// Order isomorphism from poset coordinates to homology coefficients.
    pub iso: BitMatrix,
}

/// Realizes a plain poset as the homological poset of an n-complex,
/// `n ≥ 2`: one 0-cell, `|S| - dim` cells in degree `n-1` whose boundary
/// rows are an annihilator basis of the powerset image, and `|S|` top
/// cells. The kernel of the top boundary is exactly the image, so the
/// homological poset is isomorphic to the input; the isomorphism is
/// returned and verified.
pub fn realize_complex(
    poset: &AdditivePoset,
    n: usize,
    choice: FunctionalChoice,
) -> Result<Realization> {
    if n < 2 {
        // Dimension 1 is genuinely different: graphs cannot realize every
        // plain poset.
        return Err(Error::InvalidParameter {
            what: "realization dimension must be at least 2",
        });
    }
    let functionals = match choice {
        FunctionalChoice::MinimalSeparating => poset.complexity()?.minimal_set,
        FunctionalChoice::AllOrderPreserving => {
            let report = poset.is_plain();
            if !report.plain {
                return Err(Error::NotPlain);
            }
            report
                .order_preserving
                .into_iter()
                .filter(|f| !f.is_zero())
                .collect()
        }
    };
    let embedding = poset.embed_powerset(&functionals)?;
    let cells = functionals.len();
    let dim = poset.dim();

    let relation_rows = annihilator_basis(&embedding.images, cells);
    assert_eq!(relation_rows.len(), cells - dim, "annihilator dimension");
    let mut counts = vec![0usize; n + 1];
    counts[0] = 1;
    counts[n - 1] = relation_rows.len();
    counts[n] = cells;
    let mut boundaries = Vec::new();
    for degree in 1..=n {
        if degree == n {
            boundaries.push(BitMatrix::from_rows(relation_rows.clone(), cells));
        } else {
            boundaries.push(BitMatrix::zeros(counts[degree - 1], counts[degree]));
        }
    }
    let complex = ChainComplex::new(counts, boundaries)?;

    let homology = hn_poset(&complex);
    assert_eq!(
        homology.dim(),
        dim,
        "kernel of the top boundary matches the poset dimension"
    );
    // Ker boundary = image of the embedding: dimensions agree and every
    // image vector is annihilated.
    let top = complex.boundary(n);
    for image in &embedding.images {
        assert!(
            top.mul_vec(image).is_zero(),
            "powerset image lies in the kernel"
        );
    }

    let mut iso = BitMatrix::zeros(dim, dim);
    for j in 0..dim {
        let image = &embedding.images[1usize << j];
        let coeffs = homology
            .coeffs_of(image)
            .expect("image vectors lie in the kernel span");
        for i in coeffs.ones() {
            iso.set(i, j, true);
        }
    }
    assert_eq!(
        iso.rank(),
        dim,
        "realization isomorphism must be invertible"
    );
    for x in poset.elements() {
        for y in poset.elements() {
            assert_eq!(
                poset.leq(&x, &y),
                homology.poset().leq(&iso.mul_vec(&x), &iso.mul_vec(&y)),
                "realization must preserve and reflect the order"
            );
        }
    }
    if dim <= ISO_SEARCH_CAP {
        assert!(
            matches!(
                poset.is_isomorphic(homology.poset()),
                IsoOutcome::Isomorphic(_)
            ),
            "independent isomorphism search must confirm the realization"
        );
    }
    Ok(Realization {
        complex,
        homology,
        functionals,
        iso,
    })
}

/// Realizes the trivially ordered poset of dimension `m` by a graph:
/// the loop, the theta graph, K4, and K3,3 for `m = 1..=4`. No graph
/// exists for `m ≥ 5`.
pub fn realize_graph_trivial(m: usize) -> Result<Graph> {
    let graph = match m {
        0 => {
            return Err(Error::InvalidParameter {
                what: "dimension must be positive",
            })
        }
        1 => loop_graph(),
        2 => theta_graph(),
        3 => k4(),
        4 => k33(),
        _ => return Err(Error::NotGraphRealizable { dim: m }),
    };
    let hp = h1_poset(&graph);
    assert!(
        hp.poset()
            .order_eq(&AdditivePoset::trivial(m))
            .expect("within cap"),
        "fixture graph must carry the trivial order"
    );
    Ok(graph)
}

/// Result of scanning a graph corpus for trivially ordered homology of
/// high dimension.
#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    /// Graphs meeting the dimension threshold.
    pub graphs_scanned: usize,
    /// Graphs with a strict relation between nonzero classes.
    pub witnesses_found: usize,
    /// Graphs with trivial order despite the dimension threshold; always
    /// empty for `min_dim >= 5`.
    pub counterexamples: Vec<Graph>,
}

/// Scans graphs with `dim H1 >= min_dim` for a nontrivial order relation:
/// some class must properly contain an embedded circle. Graphs where every
/// nonzero class is itself an embedded circle are reported as
/// counterexamples.
pub fn scan_nontriviality(graphs: impl IntoIterator<Item = Graph>, min_dim: usize) -> ScanReport {
    let mut report = ScanReport::default();
    for graph in graphs {
        let hp = h1_poset(&graph);
        if hp.dim() < min_dim {
            continue;
        }
        report.graphs_scanned += 1;
        let mut witness = false;
        for class in hp.classes() {
            if class.cycle.is_zero() {
                continue;
            }
            let circle = crate::homology::find_embedded_circle(&graph, &class.cycle)
                .expect("nonzero classes contain circles");
            if circle != class.cycle {
                // circle < class is a strict relation between nonzero classes.
                witness = true;
                break;
            }
        }
        if witness {
            report.witnesses_found += 1;
        } else {
            report.counterexamples.push(graph);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{figure_eight, wedge_of_circles};

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn apply_move_semantics() {
        let mut set: BTreeSet<BitVec> = [bv("10"), bv("01")].into_iter().collect();
        apply_move(&mut set, &Move::M1(bv("10"), bv("01"))).unwrap();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&bv("11")));

        // M1 with the sum already present keeps the set as is.
        let before = set.clone();
        apply_move(&mut set, &Move::M1(bv("10"), bv("01"))).unwrap();
        assert_eq!(set, before);

        // M2 with the sum already present just deletes.
        apply_move(&mut set, &Move::M2(bv("10"), bv("01"))).unwrap();
        assert_eq!(set.len(), 2);
        assert!(!set.contains(&bv("10")));

        let mut pair: BTreeSet<BitVec> = [bv("10"), bv("01")].into_iter().collect();
        apply_move(&mut pair, &Move::M2(bv("10"), bv("01"))).unwrap();
        assert!(pair.contains(&bv("11")) && pair.contains(&bv("01")));

        assert!(matches!(
            apply_move(&mut pair, &Move::M1(bv("10"), bv("01"))),
            Err(Error::MissingOperand { .. })
        ));
        assert!(matches!(
            apply_move(&mut pair, &Move::M1(bv("01"), bv("01"))),
            Err(Error::EqualOperands)
        ));
    }

    #[test]
    fn plan_for_a_basis_is_empty() {
        let script = plan_moves(3, &[bv("100"), bv("010"), bv("001")]).unwrap();
        assert!(script.moves.is_empty());
        assert_eq!(script.initial.len(), 3);
    }

    #[test]
    fn plan_single_m1() {
        let script = plan_moves(2, &[bv("10"), bv("01"), bv("11")]).unwrap();
        assert_eq!(script.moves.len(), 1);
        assert!(matches!(script.moves[0], Move::M1(..)));
    }

    #[test]
    fn plan_m1_then_m2_for_triple_sum() {
        let target = [bv("100"), bv("010"), bv("001"), bv("111")];
        let script = plan_moves(3, &target).unwrap();
        assert_eq!(script.moves.len(), 2);
        assert!(matches!(script.moves[0], Move::M1(..)));
        assert!(matches!(script.moves[1], Move::M2(..)));
        let replayed = script.replay().unwrap();
        assert_eq!(replayed, target.iter().cloned().collect());
    }

    #[test]
    fn plan_handles_overlapping_sizes() {
        // A size-3 expansion whose intermediate partial sum is itself a
        // target member of smaller size.
        let target = [bv("100"), bv("010"), bv("001"), bv("110"), bv("111")];
        let script = plan_moves(3, &target).unwrap();
        assert_eq!(script.replay().unwrap(), target.iter().cloned().collect());

        let all: Vec<BitVec> = (1..8).map(|i| BitVec::from_index(3, i)).collect();
        let script = plan_moves(3, &all).unwrap();
        assert_eq!(script.replay().unwrap(), all.iter().cloned().collect());
    }

    #[test]
    fn plan_rejects_bad_targets() {
        assert!(matches!(
            plan_moves(2, &[bv("10")]),
            Err(Error::NotSpanning)
        ));
        assert!(matches!(
            plan_moves(2, &[bv("10"), bv("01"), bv("00")]),
            Err(Error::ZeroVector { .. })
        ));
    }

    #[test]
    fn realize_powerset_as_wedge_shape() {
        for k in 1..=4 {
            let realization = realize_complex(
                &AdditivePoset::powerset(k),
                2,
                FunctionalChoice::MinimalSeparating,
            )
            .unwrap();
            // Wedge of spheres: k top cells, no relation cells.
            assert_eq!(realization.complex.cell_count(2), k);
            assert_eq!(realization.complex.cell_count(1), 0);
        }
    }

    #[test]
    fn realize_even_powerset_as_glued_balls_shape() {
        for k in 3..=5 {
            let realization = realize_complex(
                &AdditivePoset::even_powerset(k),
                2,
                FunctionalChoice::MinimalSeparating,
            )
            .unwrap();
            assert_eq!(realization.complex.cell_count(2), k);
            assert_eq!(realization.complex.cell_count(1), 1);
        }
    }

    #[test]
    fn realize_trivial3_shape() {
        let realization = realize_complex(
            &AdditivePoset::trivial(3),
            2,
            FunctionalChoice::MinimalSeparating,
        )
        .unwrap();
        assert_eq!(realization.complex.cell_count(2), 6);
        assert_eq!(realization.complex.cell_count(1), 3);
        assert_eq!(realization.functionals.len(), 6);
    }

    #[test]
    fn top_cells_bound_the_homology_complexity() {
        // The homological poset of the emitted complex has complexity at
        // most the number of top cells.
        for poset in [
            AdditivePoset::trivial(3),
            AdditivePoset::even_powerset(4),
            AdditivePoset::pointed(3, &bv("110")).unwrap(),
        ] {
            let realization =
                realize_complex(&poset, 2, FunctionalChoice::MinimalSeparating).unwrap();
            let cells = realization.complex.cell_count(2);
            assert_eq!(cells, realization.functionals.len());
            let c = realization
                .homology
                .poset()
                .complexity()
                .unwrap()
                .complexity;
            assert!(c <= cells);
        }
    }

    #[test]
    fn realize_rejects_low_dimension_and_higher_n_works() {
        assert!(
            realize_complex(&AdditivePoset::trivial(2), 1, FunctionalChoice::default()).is_err()
        );
        let realization = realize_complex(
            &AdditivePoset::trivial(2),
            4,
            FunctionalChoice::MinimalSeparating,
        )
        .unwrap();
        assert_eq!(realization.complex.top_degree(), 4);
        assert_eq!(realization.complex.cell_count(4), 3);
    }

    #[test]
    fn realize_with_all_functionals() {
        let p = AdditivePoset::pointed(2, &bv("11")).unwrap();
        let realization = realize_complex(&p, 2, FunctionalChoice::AllOrderPreserving).unwrap();
        assert!(realization.functionals.len() >= 2);
        assert_eq!(realization.homology.dim(), 2);
    }

    #[test]
    fn graph_realization_fixtures() {
        assert_eq!(realize_graph_trivial(1).unwrap(), loop_graph());
        assert_eq!(realize_graph_trivial(2).unwrap(), theta_graph());
        assert_eq!(realize_graph_trivial(3).unwrap(), k4());
        assert_eq!(realize_graph_trivial(4).unwrap(), k33());
        assert!(matches!(
            realize_graph_trivial(0),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            realize_graph_trivial(5),
            Err(Error::NotGraphRealizable { dim: 5 })
        ));
    }

    #[test]
    fn scan_finds_witnesses_on_wedges() {
        let report = scan_nontriviality([wedge_of_circles(5), wedge_of_circles(6)], 5);
        assert_eq!(report.graphs_scanned, 2);
        assert_eq!(report.witnesses_found, 2);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn scan_filters_low_dimension() {
        let report = scan_nontriviality([k4(), figure_eight()], 5);
        assert_eq!(report.graphs_scanned, 0);
    }
}
