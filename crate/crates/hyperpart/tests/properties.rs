//! Property tests for the structural invariants that should survive any
//! input, not just the worked examples.

use proptest::prelude::*;

use hyperpart::families::{Family, SignFunction};
use hyperpart::hypergraph::{Hypergraph, VertexSet};
use hyperpart::series::{self, BlockPattern};
use hyperpart::solver;

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

/// Hypergraphs on up to 10 vertices with up to 8 pairwise-distinct edges.
fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (1usize..=10)
        .prop_flat_map(|vertices| {
            let edge = proptest::collection::btree_set(0..vertices, 1..=vertices);
            (Just(vertices), proptest::collection::btree_set(edge, 0..=8))
        })
        .prop_map(|(vertices, edges)| {
            let lists: Vec<Vec<usize>> =
                edges.into_iter().map(|e| e.into_iter().collect()).collect();
            Hypergraph::from_vertex_lists(vertices, &lists).expect("distinct valid edges")
        })
}

/// As `hypergraph_strategy`, with the uncovered vertices swept into one
/// extra edge so nothing is isolated. The sweeper is disjoint from the
/// covered region, hence distinct from every existing edge.
fn covered_hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    hypergraph_strategy().prop_map(|h| {
        let isolated = h.isolated_vertices();
        if isolated.is_empty() {
            return h;
        }
        let mut edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
        edges.push(isolated.to_vec());
        Hypergraph::from_vertex_lists(h.vertex_count(), &edges).expect("sweeper edge is new")
    })
}

/// Families over up to 8 coordinates with up to 10 functions.
fn family_strategy() -> impl Strategy<Value = Family> {
    (1usize..=8)
        .prop_flat_map(|k| {
            let universe = (1u64 << k) - 1;
            let function = (1..=universe, any::<u64>())
                .prop_map(move |(domain, positive)| SignFunction::new(domain, positive & domain));
            (Just(k), proptest::collection::vec(function, 1..=10))
        })
        .prop_map(|(k, functions)| Family::new(k, functions).expect("coords in range"))
}

/// As `family_strategy`, completed to a full family by adding a singleton
/// function for every coordinate-value pair the random part misses.
fn full_family_strategy() -> impl Strategy<Value = Family> {
    family_strategy().prop_map(|f| {
        let mut functions = f.functions.clone();
        for coord in 1..=f.k {
            for value in [true, false] {
                if !functions.iter().any(|g| g.value_at(coord) == Some(value)) {
                    functions.push(SignFunction::from_pairs(&[(coord, value)]));
                }
            }
        }
        Family::new(f.k, functions).expect("coords in range")
    })
}

// ---------------------------------------------------------------------------
// Hypergraph invariants
// ---------------------------------------------------------------------------

proptest! {
    /// Every edge selection plus its exactly-once set validates as a witness.
    #[test]
    fn exactly_once_always_validates(h in hypergraph_strategy(), seed in any::<u64>()) {
        let edges: Vec<usize> = (0..h.edge_count()).filter(|i| seed >> (i % 64) & 1 == 1).collect();
        let d = h.exactly_once_set(&edges).unwrap();
        let witness = hyperpart::hypergraph::PartitionWitness { d, p: edges };
        prop_assert!(witness.validate(&h));
    }

    /// Trimming never creates partitions: the maximum can only drop.
    #[test]
    fn trimming_cannot_increase_partitions(h in covered_hypergraph_strategy()) {
        let trimmed = h.trim_economical().unwrap();
        prop_assert!(trimmed.is_economical());
        let (before, _) = h.max_partition().unwrap();
        let (after, _) = trimmed.max_partition().unwrap();
        prop_assert!(after <= before);
        // Deleting any surviving edge isolates some vertex.
        for skip in 0..trimmed.edge_count() {
            let mut covered = VertexSet::EMPTY;
            for (i, e) in trimmed.edges().iter().enumerate() {
                if i != skip {
                    covered = covered.union(*e);
                }
            }
            prop_assert!(covered.len() < trimmed.vertex_count());
        }
    }

    /// The degree-class identity: the weighted classes divided by their
    /// degree add back up to the vertex count when nothing is isolated.
    #[test]
    fn degree_classes_sum_to_vertex_count(h in covered_hypergraph_strategy()) {
        prop_assert!(hyperpart::counting::degree_sum_identity(&h));
    }

    /// JSON round-trips reproduce the hypergraph exactly.
    #[test]
    fn hypergraph_json_round_trip(h in hypergraph_strategy()) {
        let text = serde_json::to_string(&h).unwrap();
        let back: Hypergraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, h);
    }

    /// A selection within a sub-collection of edges gives the same
    /// exactly-once set in the original hypergraph.
    #[test]
    fn partitions_of_subcollections_persist(h in hypergraph_strategy(), p in Just(()).prop_flat_map(|_| any::<u64>())) {
        let _ = p;
        prop_assume!(h.edge_count() >= 1);
        let sub: Vec<usize> = (0..h.edge_count()).step_by(2).collect();
        let d_sub = h.exactly_once_set(&sub).unwrap();
        let witness = hyperpart::hypergraph::PartitionWitness { d: d_sub, p: sub };
        prop_assert!(witness.validate(&h));
    }
}

// ---------------------------------------------------------------------------
// Family invariants
// ---------------------------------------------------------------------------

proptest! {
    /// The domain hypergraph bridge: a full family whose domain hypergraph
    /// contains a partition of size s admits s agreeing coordinates over
    /// some subfamily.
    #[test]
    fn partition_in_domains_forces_agreement(f in full_family_strategy()) {
        let h = f.to_hypergraph();
        let (size, _) = h.max_partition().unwrap();
        prop_assume!(size >= 1);
        let (holds, witness) = f.agreement_holds(size).unwrap();
        prop_assert!(holds);
        let w = witness.unwrap();
        prop_assert!(w.coords.len() >= size);
        // The witness coordinates really are conflict-free.
        let check = f.conflict_free_coords(&w.function_indices).unwrap();
        prop_assert!(w.coords.iter().all(|c| check.contains(c)));
    }

    /// Agreement at n implies agreement at every smaller level.
    #[test]
    fn agreement_is_downward_monotone(f in family_strategy(), n in 1usize..=6) {
        if f.agreement_holds(n).unwrap().0 {
            for smaller in 1..n {
                prop_assert!(f.agreement_holds(smaller).unwrap().0);
            }
        }
    }

    /// Family JSON round-trips exactly.
    #[test]
    fn family_json_round_trip(f in family_strategy()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: Family = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    /// Duplicated functions change no predicate.
    #[test]
    fn duplicates_are_inert(f in family_strategy(), n in 1usize..=5) {
        let mut doubled = f.functions.clone();
        doubled.extend(f.functions.iter().copied());
        let doubled = Family::new(f.k, doubled).unwrap();
        prop_assert_eq!(doubled.is_full(), f.is_full());
        prop_assert_eq!(doubled.agreement_holds(n).unwrap().0, f.agreement_holds(n).unwrap().0);
    }
}

// ---------------------------------------------------------------------------
// Solver invariants
// ---------------------------------------------------------------------------

proptest! {
    /// Profile validation agrees with the independent hypergraph checker.
    /// Singleton types are forced inhabited so the expansion always exists;
    /// the exactly-once constraints remain free to fail either way.
    #[test]
    fn profile_validation_matches_expansion(
        m in 1usize..=4,
        counts in proptest::collection::vec(0u32..3, 15),
        n in 1u64..=6,
    ) {
        let mut profile = solver::TypeProfile::new(m);
        let mut total = 0u64;
        for (t, &c) in counts.iter().enumerate().take((1 << m) - 1) {
            let t = (t + 1) as u32;
            let c = if t.count_ones() == 1 { c.max(1) } else { c };
            profile.set_count(t, c);
            total += c as u64;
        }
        prop_assume!(total <= 64);
        let valid = profile.validate(n).is_ok();
        let h = solver::expand_witness(&profile).unwrap();
        let expansion_ok = h.is_economical() && h.partition_free_above(n as usize).unwrap();
        prop_assert_eq!(valid, expansion_ok);
    }
}

// ---------------------------------------------------------------------------
// Series invariants
// ---------------------------------------------------------------------------

proptest! {
    /// Selecting a whole block cancels exactly, for every series.
    #[test]
    fn balanced_blocks_cancel(n in 2usize..=4, block in 1usize..=5) {
        let spec = series::build_spec(n, 5);
        let mut pattern = BlockPattern::empty(&spec);
        pattern.selected[block - 1] =
            (spec.block_length(block) / 2u32, spec.block_length(block) / 2u32);
        let report = series::boundary_sums(&spec, &pattern).unwrap();
        for row in &report.sums {
            prop_assert!(num_traits::Zero::is_zero(row.last().unwrap()));
        }
    }

    /// The audit never reports violations, whatever the pattern.
    #[test]
    fn audit_passes_for_arbitrary_patterns(n in 2usize..=4, seed in any::<u64>()) {
        let spec = series::build_spec(n, 6);
        use rand::SeedableRng;
        let mut rng = rand::rngs::SmallRng::seed_from_u64(seed);
        let pattern = BlockPattern::random(&spec, &mut rng);
        let audit = series::claim_audit(&spec, &pattern).unwrap();
        prop_assert!(audit.pass, "violations: {:?}", audit.violations);
    }
}
