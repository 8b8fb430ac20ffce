//! Seeded random instance generators used by the randomized verification
//! sweeps and the test suites. Everything is deterministic given the RNG
//! state, so sweeps are reproducible from a printed seed.

use rand::Rng;

use crate::class::{PartialClass, PartialFunction, Symbol, TotalClass, TotalFunction};
use crate::graph::Graph;

/// A random partial class over `{1,..,r, *}^{arity}` with at most
/// `max_members` members (before duplicate collapse) and the given
/// probability of an undefined entry.
pub fn random_partial_class(
    rng: &mut impl Rng,
    arity: usize,
    r: u8,
    max_members: usize,
    star_prob: f64,
) -> PartialClass {
    let count = rng.gen_range(1..=max_members.max(1));
    let members = (0..count).map(|_| {
        PartialFunction::new(
            (0..arity)
                .map(|_| {
                    if rng.gen_bool(star_prob) {
                        Symbol::STAR
                    } else {
                        Symbol::value(rng.gen_range(1..=r))
                    }
                })
                .collect(),
        )
    });
    PartialClass::new(r, arity, members).expect("generated members are valid")
}

/// A random nonempty total class over `{1,..,r}^{arity}`.
pub fn random_total_class(
    rng: &mut impl Rng,
    arity: usize,
    r: u8,
    max_members: usize,
) -> TotalClass {
    let count = rng.gen_range(1..=max_members.max(1));
    let members = (0..count)
        .map(|_| TotalFunction::new((0..arity).map(|_| rng.gen_range(1..=r)).collect()));
    TotalClass::new(r, arity, members).expect("generated members are valid")
}

/// A random simple graph on `vertex_count` vertices with independent edge
/// probability `p`.
pub fn random_graph(rng: &mut impl Rng, vertex_count: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..vertex_count {
        for w in u + 1..vertex_count {
            if rng.gen_bool(p) {
                edges.push((u, w));
            }
        }
    }
    Graph::new(vertex_count, edges).expect("generated edges are valid")
}
