//! Seeded fixtures shared by the benchmarks.

use std::sync::Arc;

use pfl_core::bp::delta_lift;
use pfl_core::ftop::{AxiomSet, InductiveTopology, Preorder};
use pfl_core::{Carrier, Relation, RelationPair, RuleSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn carrier(name: &str, n: usize) -> Arc<Carrier> {
    Carrier::indexed(name, n).expect("carrier")
}

pub fn relation(seed: u64, n: usize, m: usize, density: f64) -> Relation {
    let mut rng = rng(seed);
    Relation::from_fn(&carrier("X", n), &carrier("Y", m), |_, _| {
        rng.gen_bool(density)
    })
}

/// `count` rules over `n` elements with premises of at most `max_premise` elements.
pub fn rules(seed: u64, n: usize, count: usize, max_premise: usize) -> RuleSet {
    let mut rng = rng(seed);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let pairs: Vec<(u64, u64)> = (0..count)
        .map(|_| {
            let mut a = rng.gen::<u64>() & full;
            while a.count_ones() as usize > max_premise {
                a &= a - 1;
            }
            let b = rng.gen::<u64>() & full;
            (a, b)
        })
        .collect();
    RuleSet::from_masks(&carrier("S", n), pairs)
}

/// A topology whose order is a chain and with `per` axioms on each element.
pub fn topology(seed: u64, n: usize, per: usize) -> InductiveTopology {
    let mut rng = rng(seed);
    let c = carrier("S", n);
    let order = Preorder::new(&Relation::from_fn(&c, &c, |a, b| a <= b)).expect("chain");
    let full = (1u64 << n) - 1;
    let covers = (0..n)
        .map(|_| (0..per).map(|_| rng.gen::<u64>() & full).collect())
        .collect();
    InductiveTopology::new(order, AxiomSet::new(&c, covers).expect("axioms")).expect("topology")
}

/// A random total function `n → m` as a relation.
pub fn function(seed: u64, n: usize, m: usize) -> Relation {
    let mut rng = rng(seed);
    let rows = (0..n).map(|_| 1u64 << rng.gen_range(0..m)).collect();
    Relation::new(&carrier("X", n), &carrier("Y", m), rows).expect("function")
}

/// Two parallel relation pairs between delta spaces.
pub fn parallel_deltas(seed: u64, n: usize, m: usize) -> (RelationPair, RelationPair) {
    (
        delta_lift(&relation(seed, n, m, 0.3)),
        delta_lift(&relation(seed + 1, n, m, 0.3)),
    )
}

/// Delta lifts of two functions, which are convergent.
pub fn parallel_functions(seed: u64, n: usize, m: usize) -> (RelationPair, RelationPair) {
    (
        delta_lift(&function(seed, n, m)),
        delta_lift(&function(seed + 1, n, m)),
    )
}
