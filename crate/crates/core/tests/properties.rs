//! Structural invariants quantified over random or exhaustive small
//! domains: dimension-route agreement, box-move duality, pascalization
//! against a walk oracle, category closure, and canonical-form fuzzing.

use std::collections::HashMap;

use proptest::collection::vec;
use proptest::prelude::*;

use easy_diagrams_core::algebra::{enumerate_category, Category, SetPartitionDiagram};
use easy_diagrams_core::arrays::coupled_dim_closed_form;
use easy_diagrams_core::graphs::{build_graph, BranchingGraph, GraphKind, Vertex};
use easy_diagrams_core::young::enumerate_partitions;
use easy_diagrams_core::BigCount;

// ------------------------------------------------------------------
// Young graph invariants (exhaustive over |λ| ≤ 8)
// ------------------------------------------------------------------

#[test]
fn dimension_routes_agree_to_size_eight() {
    let young = build_graph(GraphKind::Young, 8);
    for n in 0..=8u32 {
        for p in enumerate_partitions(n) {
            let hook = p.dim();
            assert_eq!(hook, p.dim_by_recursion(), "recursion route at {p}");
            let vertex = Vertex::new(
                n as usize,
                easy_diagrams_core::graphs::Payload::Single(p.clone()),
            );
            assert_eq!(hook, young.dim_root(&vertex).unwrap(), "graph DP at {p}");
            if n <= 6 {
                let listed = young
                    .enumerate_paths(&young.root(), &vertex, 1_000_000)
                    .unwrap();
                assert_eq!(BigCount::from(listed.len() as u64), hook, "paths at {p}");
            }
        }
    }
}

#[test]
fn successors_and_predecessors_are_inverse_relations() {
    for n in 0..=8u32 {
        for lambda in enumerate_partitions(n) {
            for mu in lambda.successors() {
                assert!(
                    mu.predecessors().contains(&lambda),
                    "{lambda} -> {mu} not reflected"
                );
            }
            for eta in lambda.predecessors() {
                assert!(
                    eta.successors().contains(&lambda),
                    "{eta} -> {lambda} not reflected"
                );
            }
        }
    }
}

#[test]
fn plancherel_identity_to_degree_eight() {
    let mut factorial = BigCount::from(1u32);
    for n in 1..=8u32 {
        factorial *= n;
        let total: BigCount = enumerate_partitions(n)
            .iter()
            .map(|p| {
                let d = p.dim();
                &d * &d
            })
            .sum();
        assert_eq!(total, factorial, "at degree {n}");
    }
}

// ------------------------------------------------------------------
// Pascalization against a walk oracle
// ------------------------------------------------------------------

/// Walk-count oracle: step-by-step distribution of n-step walks on the base
/// graph, using only the base graph's edges (never `pascalize`).
fn walk_counts(graph: &BranchingGraph, steps: usize) -> HashMap<Vertex, u64> {
    let mut counts: HashMap<Vertex, u64> = HashMap::from([(graph.root(), 1)]);
    for _ in 0..steps {
        let mut next: HashMap<Vertex, u64> = HashMap::new();
        for (vertex, count) in &counts {
            for (up, mult) in graph.neighbours_up(vertex).unwrap() {
                *next.entry(up).or_insert(0) += count * u64::from(mult);
            }
            if vertex.level > 0 {
                for payload in graph.level(vertex.level - 1).unwrap() {
                    let down = Vertex::new(vertex.level - 1, payload.clone());
                    let mult = graph.edge_mult(&down, vertex).unwrap();
                    if mult > 0 {
                        *next.entry(down).or_insert(0) += count * u64::from(mult);
                    }
                }
            }
        }
        counts = next;
    }
    counts
}

#[test]
fn pascalization_counts_walks_for_every_kind() {
    for kind in [
        GraphKind::Young,
        GraphKind::Theta,
        GraphKind::LambdaPrincipal,
        GraphKind::Walled,
        GraphKind::DoubledYoung,
    ] {
        let base = build_graph(kind, 8);
        let pascalized = base.pascalize().unwrap();
        for steps in 0..=8usize {
            let oracle = walk_counts(&base, steps);
            let level = pascalized.level(steps).unwrap();
            let dims = pascalized.dims_at_level(steps).unwrap();
            assert_eq!(
                level.len(),
                oracle.len(),
                "level size mismatch for {kind:?} at {steps}"
            );
            for (payload, dim) in level.iter().zip(dims) {
                let base_vertex = oracle
                    .keys()
                    .find(|v| &v.payload == payload)
                    .unwrap_or_else(|| panic!("{payload} not reached by walks"));
                assert_eq!(
                    dim,
                    &BigCount::from(oracle[base_vertex]),
                    "walk count mismatch for {kind:?} at {steps}:{payload}"
                );
            }
        }
    }
}

/// The walled tower's level-n algebra has dimension n! (a pair of
/// partitions growing alternately is a pair of standard fillings, i.e. a
/// permutation via the RSK-style correspondence), so the pascalized
/// walled graph must carry Σ dim² = n! on every level.
#[test]
fn pascalized_walled_levels_carry_factorials() {
    let g = build_graph(GraphKind::Walled, 8).pascalize().unwrap();
    let mut factorial = BigCount::from(1u32);
    assert_eq!(g.sum_dim_squares(0).unwrap(), factorial);
    for n in 1..=8usize {
        factorial *= n as u32;
        assert_eq!(g.sum_dim_squares(n).unwrap(), factorial, "at level {n}");
    }
}

/// A walk that ends on the top base level can never have stepped down, so
/// the pascalized dimension at (|γ|, γ) is the plain path count to γ.
#[test]
fn forward_only_pascalized_walks_reproduce_path_counts() {
    for kind in [GraphKind::Young, GraphKind::Theta] {
        let base = build_graph(kind, 7);
        let pascalized = base.pascalize().unwrap();
        for n in 0..=7usize {
            for payload in base.level(n).unwrap() {
                let v = Vertex::new(n, payload.clone());
                assert_eq!(
                    pascalized.dim_root(&v).unwrap(),
                    base.dim_root(&v).unwrap(),
                    "{kind:?} at {v}"
                );
            }
        }
    }
}

#[test]
fn coupled_young_closed_form_to_level_ten() {
    let theta = build_graph(GraphKind::Theta, 10);
    for n in 0..=10usize {
        for payload in theta.level(n).unwrap() {
            let (lambda, mu) = payload.as_pair().unwrap();
            assert_eq!(
                theta.dim_root(&Vertex::new(n, payload.clone())).unwrap(),
                coupled_dim_closed_form(lambda, mu),
                "at {payload}"
            );
        }
    }
}

/// The factor in the coupled-Young closed form that multiplies the two
/// Young dimensions is a Bessel number of the first kind: with k boxes in
/// the first diagram and l in the second it equals the coefficient of x^k
/// in the (k+l)-th Bessel polynomial. The oracle computes those
/// polynomials from the three-term recurrence
/// y_n = (2n−1)·x·y_{n−1} + y_{n−2}.
#[test]
fn coupled_factor_matches_bessel_polynomial_coefficients() {
    let mut polynomials: Vec<Vec<BigCount>> = vec![
        vec![BigCount::from(1u32)],                       // y_0 = 1
        vec![BigCount::from(1u32), BigCount::from(1u32)], // y_1 = 1 + x
    ];
    for n in 2..=10usize {
        let (prev, back) = (&polynomials[n - 1], &polynomials[n - 2]);
        let mut next = vec![BigCount::from(0u32); prev.len() + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c * BigCount::from(2 * n as u32 - 1);
        }
        for (i, c) in back.iter().enumerate() {
            next[i] += c;
        }
        polynomials.push(next);
    }
    let one_box = easy_diagrams_core::young::YoungDiagram::new(vec![1]).unwrap();
    for k in 1..=5u32 {
        for l in 0..=5u32 {
            // strip the dim factors: use single-column shapes of dim 1
            let lambda = easy_diagrams_core::young::YoungDiagram::new(vec![1; k as usize]).unwrap();
            let mu = easy_diagrams_core::young::YoungDiagram::new(vec![1; l as usize]).unwrap();
            let factor = coupled_dim_closed_form(&lambda, &mu);
            let bessel = &polynomials[(k + l) as usize][k as usize];
            assert_eq!(&factor, bessel, "factor at k={k}, l={l}");
        }
    }
    // spot value from the remark: the (1,1) factor is 3 = b_{2,1}
    assert_eq!(
        coupled_dim_closed_form(&one_box, &one_box),
        BigCount::from(3u32)
    );
}

// ------------------------------------------------------------------
// Category closure (exhaustive for small k)
// ------------------------------------------------------------------

#[test]
fn categories_closed_under_compose_involution_tensor() {
    for category in Category::ALL {
        for k in 0..=3usize {
            let diagrams = enumerate_category(category, k).unwrap();
            for p in &diagrams {
                assert!(category.contains(&p.involution()));
                for q in &diagrams {
                    let (pq, _) = p.compose(q).unwrap();
                    assert!(
                        category.contains(&pq),
                        "{category:?} not closed: {p} ∘ {q} = {pq}"
                    );
                }
            }
        }
        // tensor closure across sizes k1 + k2 <= 3
        for k1 in 0..=2usize {
            for k2 in 1..=(3 - k1) {
                for p in enumerate_category(category, k1).unwrap() {
                    for q in enumerate_category(category, k2).unwrap() {
                        assert!(category.contains(&p.tensor(&q)));
                    }
                }
            }
        }
    }
}

// ------------------------------------------------------------------
// Random diagram invariants (proptest)
// ------------------------------------------------------------------

/// Builds the blocks of a set partition from an arbitrary assignment of
/// points to block labels.
fn blocks_from_assignment(assignment: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for (point, &label) in assignment.iter().enumerate() {
        blocks.entry(label).or_default().push(point);
    }
    blocks.into_values().collect()
}

fn arb_diagram(max_row: usize) -> impl Strategy<Value = SetPartitionDiagram> {
    (0..=max_row, 0..=max_row)
        .prop_flat_map(|(k, l)| {
            let total = k + l;
            (Just(k), Just(l), vec(0..total.max(1), total))
        })
        .prop_map(|(k, l, assignment)| {
            SetPartitionDiagram::from_internal(k, l, blocks_from_assignment(&assignment)).unwrap()
        })
}

/// A diagram together with a shuffled presentation of its blocks.
fn arb_diagram_with_shuffle() -> impl Strategy<Value = (SetPartitionDiagram, Vec<Vec<i64>>)> {
    arb_diagram(4)
        .prop_flat_map(|d| {
            let blocks = d.signed_blocks();
            (Just(d), Just(blocks).prop_shuffle())
        })
        .prop_flat_map(|(d, blocks)| {
            // also reverse the interior of every other block
            let mangled: Vec<Vec<i64>> = blocks
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let mut b = b.clone();
                    if i % 2 == 1 {
                        b.reverse();
                    }
                    b
                })
                .collect();
            (Just(d), Just(mangled))
        })
}

proptest! {
    #[test]
    fn canonical_form_is_presentation_independent((diagram, shuffled) in arb_diagram_with_shuffle()) {
        let rebuilt = SetPartitionDiagram::new(&shuffled).unwrap();
        prop_assert_eq!(rebuilt, diagram);
    }

    #[test]
    fn involution_is_an_involution(d in arb_diagram(4)) {
        prop_assert_eq!(d.involution().involution(), d);
    }

    #[test]
    fn involution_antimultiplicative(
        k in 0..=3usize,
        l in 0..=3usize,
        m in 0..=3usize,
        seed_p in vec(0..8usize, 8),
        seed_q in vec(0..8usize, 8),
    ) {
        // p then q: q's lower row glues onto p's upper row
        let p = diagram_from_seed(l, k, &seed_p);
        let q = diagram_from_seed(m, l, &seed_q);
        let (pq, loops) = p.compose(&q).unwrap();
        let (star, star_loops) = q.involution().compose(&p.involution()).unwrap();
        prop_assert_eq!(pq.involution(), star);
        prop_assert_eq!(loops, star_loops);
    }

    #[test]
    fn noninvertible_absorbs(
        seed_p in vec(0..8usize, 8),
        seed_q in vec(0..8usize, 8),
        k in 1..=4usize,
    ) {
        let p = diagram_from_seed(k, k, &seed_p);
        let q = diagram_from_seed(k, k, &seed_q);
        if !p.is_invertible() {
            prop_assert!(!p.compose(&q).unwrap().0.is_invertible());
            prop_assert!(!q.compose(&p).unwrap().0.is_invertible());
        }
    }
}

/// Deterministic rectangular diagram from a label seed.
fn diagram_from_seed(upper: usize, lower: usize, seed: &[usize]) -> SetPartitionDiagram {
    let total = upper + lower;
    let assignment: Vec<usize> = (0..total).map(|i| seed[i % seed.len()] % total).collect();
    SetPartitionDiagram::from_internal(upper, lower, blocks_from_assignment(&assignment)).unwrap()
}
