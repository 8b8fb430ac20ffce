//! Seeded randomized verification sweeps covering the library's invariants.
//!
//! Each check runs a number of random cases derived deterministically from
//! the suite seed and reports its violation count. Any pool size yields the
//! same outcome: cases are pre-generated sequentially, only the evaluation
//! is parallel, and results are aggregated by summation.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use shattering::binom::binomial_sum;
use shattering::bound::{binomial_sum_real_cutoff, comb_bound, BoundValue};
use shattering::class::PartialClass;
use shattering::graph::{
    biclique_partition_number, check_lemma, BicliquePart, BicliquePartitionedGraph, Graph,
};
use shattering::natarajan::{branch_construct, natarajan_bound, natarajan_dim};
use shattering::net::{build_net, covering_number_exact, minority_value, replay_output, verify_net};
use shattering::sample::{random_graph, random_partial_class, random_total_class};
use shattering::word::{
    class_from_windows, complexity_profile, max_pattern_complexity, SearchOptions, WordSpec,
};

pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

fn partial_classes(seed: u64, count: usize) -> Vec<PartialClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=8);
            let r = rng.gen_range(2..=4);
            random_partial_class(&mut rng, n, r, 16, 0.25)
        })
        .collect()
}

pub fn run_suite(seed: u64, cases: usize) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    // class-core: downward closure of shattered sets.
    {
        let classes = partial_classes(seed ^ 0x11, cases);
        let violations = classes
            .par_iter()
            .map(|c| {
                let masks: std::collections::HashSet<u64> =
                    c.shattered_sets().masks.into_iter().collect();
                let mut bad = 0;
                for &s in &masks {
                    let mut rest = s;
                    while rest != 0 {
                        let b = rest & rest.wrapping_neg();
                        if !masks.contains(&(s ^ b)) {
                            bad += 1;
                        }
                        rest ^= b;
                    }
                }
                bad
            })
            .sum();
        out.push(CheckOutcome { name: "class/shattered-downward-closure", cases, violations });
    }

    // class-core: s(H) <= binom(n, <= VC(H)).
    {
        let classes = partial_classes(seed ^ 0x12, cases);
        let violations = classes
            .par_iter()
            .map(|c| {
                let d = c.vc_dimension().expect("nonempty") as u64;
                usize::from(
                    BigUint::from(c.shattering_strength())
                        > binomial_sum(c.arity() as u64, d),
                )
            })
            .sum();
        out.push(CheckOutcome { name: "class/strength-binomial-bound", cases, violations });
    }

    // class-core: restriction composes under index maps.
    {
        let classes = partial_classes(seed ^ 0x13, cases);
        let violations = classes
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1300 ^ i as u64);
                let n = c.arity();
                let take_outer: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
                if take_outer.is_empty() {
                    return 0;
                }
                let inner_positions: Vec<usize> =
                    (0..take_outer.len()).filter(|_| rng.gen_bool(0.6)).collect();
                let direct: Vec<usize> = inner_positions.iter().map(|&p| take_outer[p]).collect();
                let outer = c.restrict(&take_outer).unwrap();
                let twice = outer.restrict(&inner_positions).unwrap();
                usize::from(twice != c.restrict(&direct).unwrap())
            })
            .sum();
        out.push(CheckOutcome { name: "class/restrict-composition", cases, violations });
    }

    // class-core + net-builder: shrinking inequalities per coordinate.
    {
        let classes = partial_classes(seed ^ 0x14, cases);
        let violations = classes
            .par_iter()
            .map(|c| {
                let r = c.r() as u64;
                let s = c.shattering_strength();
                let mut bad = 0;
                for i in 0..c.arity() {
                    let strengths: Vec<u64> = (1..=c.r())
                        .map(|j| c.fix_coordinate(i, j).unwrap().shattering_strength())
                        .collect();
                    if (r - 1) * s < strengths.iter().sum::<u64>() {
                        bad += 1;
                    }
                    let j = minority_value(c, i).unwrap();
                    if r * strengths[j as usize - 1] > (r - 1) * s {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        out.push(CheckOutcome { name: "net/shrinking-inequalities", cases, violations });
    }

    // net-builder: built nets verify, meet the size bound, dominate the
    // exact covering number, and replay deterministically.
    {
        let classes = partial_classes(seed ^ 0x15, cases);
        let violations = classes
            .par_iter()
            .map(|c| {
                let mut bad = 0;
                let net = build_net(c).unwrap();
                if !verify_net(c, &net.carrier).unwrap() {
                    bad += 1;
                }
                let s = c.shattering_strength();
                let rf = c.r() as f64;
                let m = (s as f64).ln() / (rf / (rf - 1.0)).ln();
                if BigUint::from(net.carrier.len() as u64)
                    > binomial_sum_real_cutoff(c.arity() as u64, m)
                {
                    bad += 1;
                }
                let again = build_net(c).unwrap();
                if again.carrier != net.carrier {
                    bad += 1;
                }
                for rec in &net.provenance {
                    if replay_output(c, &rec.fired).unwrap() != rec.output {
                        bad += 1;
                    }
                }
                if let Ok(cover) = covering_number_exact(c, 1 << 20) {
                    if cover.size > net.carrier.len() {
                        bad += 1;
                    }
                    let d = c.vc_dimension().expect("nonempty").max(1) as u64;
                    if let BoundValue::Exact(rhs) =
                        comb_bound(c.arity() as u64, c.r(), d).unwrap().value
                    {
                        if BigUint::from(cover.size as u64) > rhs {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum();
        out.push(CheckOutcome { name: "net/build-verify-cover-chain", cases, violations });
    }

    // natarajan-dim: monotone in k, bound soundness, branching properties.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x16);
        let classes: Vec<_> = (0..cases)
            .map(|_| {
                let n = rng.gen_range(1..=7);
                let r = rng.gen_range(2..=4);
                random_total_class(&mut rng, n, r, 16)
            })
            .collect();
        let violations = classes
            .par_iter()
            .map(|c| {
                let mut bad = 0;
                let dims: Vec<usize> =
                    (2..=c.r()).map(|k| natarajan_dim(c, k).unwrap()).collect();
                if dims.windows(2).any(|w| w[1] > w[0]) {
                    bad += 1;
                }
                for (k, &dim) in (2..=c.r()).zip(&dims) {
                    let d = dim.max(1) as u64;
                    let rep = natarajan_bound(c.arity() as u64, c.r(), k, d).unwrap();
                    if let BoundValue::Exact(rhs) = rep.value {
                        if BigUint::from(c.len() as u64) > rhs {
                            bad += 1;
                        }
                    }
                    match branch_construct(c, k) {
                        Ok(trace) => {
                            if trace.stages().iter().any(|s| s.len() != c.len()) {
                                bad += 1;
                            }
                            if dim < c.arity() && trace.proof_partition(dim).is_err() {
                                bad += 1;
                            }
                        }
                        Err(_) => bad += 1,
                    }
                }
                bad
            })
            .sum();
        out.push(CheckOutcome { name: "natarajan/dimension-bound-branching", cases, violations });
    }

    // graph-bridge: reduction end to end on random graphs, plus witness
    // corruption detection.
    {
        let graph_cases = cases.min(60);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x17);
        let graphs: Vec<Graph> = (0..graph_cases)
            .map(|_| {
                let nv = rng.gen_range(2..=7);
                random_graph(&mut rng, nv, 0.5)
            })
            .collect();
        let violations = graphs
            .par_iter()
            .map(|g| {
                let mut bad = 0;
                let bp = match biclique_partition_number(g, 16) {
                    Ok(bp) => bp,
                    Err(_) => return 0,
                };
                let parts = if bp.parts.is_empty() {
                    vec![BicliquePart::new(Vec::new(), Vec::new())]
                } else {
                    bp.parts.clone()
                };
                let pg = BicliquePartitionedGraph::new(g.clone(), parts.clone()).unwrap();
                let report = check_lemma(&pg, 1 << 20, 16).unwrap();
                if !report.holds() {
                    bad += 1;
                }
                // Corrupting one edge of a valid witness must be detected:
                // move the lowest endpoint of the first nonempty part to the
                // other side.
                if let Some(idx) = parts.iter().position(|p| !p.left.is_empty()) {
                    let mut corrupted = parts;
                    let v = corrupted[idx].left[0];
                    corrupted[idx].left.remove(0);
                    corrupted[idx].right.push(v);
                    let corrupted: Vec<BicliquePart> = corrupted
                        .into_iter()
                        .map(|p| BicliquePart::new(p.left, p.right))
                        .collect();
                    if BicliquePartitionedGraph::new(g.clone(), corrupted).is_ok() {
                        bad += 1;
                    }
                }
                bad
            })
            .sum();
        out.push(CheckOutcome {
            name: "graph/lemma-and-corruption-detection",
            cases: graph_cases,
            violations,
        });
    }

    // symbolic-dyn: profile invariants on random cycles and window-class
    // consistency.
    {
        let word_cases = cases.min(60);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x18);
        let specs: Vec<WordSpec> = (0..word_cases)
            .map(|_| {
                let r = rng.gen_range(2..=3);
                let p = rng.gen_range(1..=5);
                let cycle: Vec<u8> = (0..p).map(|_| rng.gen_range(1..=r)).collect();
                WordSpec::periodic(r, cycle).unwrap()
            })
            .collect();
        let violations = specs
            .par_iter()
            .map(|spec| {
                let mut bad = 0;
                let profile = complexity_profile(spec, 5, &SearchOptions::default()).unwrap();
                let vals: Vec<u64> = profile.values.iter().map(|v| v.value).collect();
                let (_, period) = spec.periodic_structure().unwrap();
                for w in vals.windows(2) {
                    if w[1] < w[0] || w[1] > spec.r() as u64 * w[0] {
                        bad += 1;
                    }
                }
                if vals.iter().any(|&v| v > period as u64) {
                    bad += 1;
                }
                // Contiguous window never beats the maximum.
                let window: Vec<usize> = (0..3).collect();
                let (class, table) = class_from_windows(spec, &window, None).unwrap();
                if class.len() as u64 != table.count() {
                    bad += 1;
                }
                let star = max_pattern_complexity(spec, 3, &SearchOptions::default()).unwrap();
                if table.count() > star.value {
                    bad += 1;
                }
                bad
            })
            .sum();
        out.push(CheckOutcome {
            name: "word/profile-and-window-consistency",
            cases: word_cases,
            violations,
        });
    }

    out
}
