//! Net construction for partial classes via the coordinate-wise minority
//! walk, net verification, and exact covering numbers by branch-and-bound
//! set cover.
//!
//! A total class `F` is a net of `H` when every `h` in `H` has some `f` in
//! `F` disagreeing with it at every defined coordinate. The builder walks
//! coordinates in ascending order; at each coordinate it takes the alphabet
//! value whose fixed-value subclass has minimum shattering strength, and only
//! when the member actually takes that minority value does it descend into
//! the subclass and record the coordinate.

use std::collections::HashMap;

use crate::class::{PartialClass, TotalClass, TotalFunction};
use crate::error::{Error, Result};

/// The value in `{1,..,r}` minimising the shattering strength of
/// `H_{i -> j}`; ties break to the smallest value.
pub fn minority_value(class: &PartialClass, i: usize) -> Result<u8> {
    if class.is_empty() {
        return Err(Error::argument("minority value of an empty class is undefined"));
    }
    if i >= class.arity() {
        return Err(Error::argument(format!(
            "coordinate {i} out of range for arity {}",
            class.arity()
        )));
    }
    let mut best = (u64::MAX, 0u8);
    for j in 1..=class.r() {
        let s = class.fix_coordinate(i, j)?.shattering_strength();
        if s < best.0 {
            best = (s, j);
        }
    }
    Ok(best.1)
}

fn successor_value(j: u8, r: u8) -> u8 {
    if j == r {
        1
    } else {
        j + 1
    }
}

/// Per-member output of the net builder.
#[derive(Clone, Debug)]
pub struct NetRecord {
    /// Index of the input member in the class's canonical member order.
    pub member_index: usize,
    /// The total function assigned to that member.
    pub output: TotalFunction,
    /// Coordinates at which the member hit the minority value (ascending).
    /// The output is fully determined by this set.
    pub fired: Vec<usize>,
}

/// A net together with the provenance of each member's assigned function.
#[derive(Clone, Debug)]
pub struct Net {
    pub carrier: TotalClass,
    pub provenance: Vec<NetRecord>,
}

/// Cached state for one prefix of fired coordinates: the subclass reached by
/// fixing every fired coordinate to its then-minority value, plus the lazily
/// computed minority values of that subclass.
struct PrefixState {
    class: PartialClass,
    minority: Vec<Option<u8>>,
}

impl PrefixState {
    fn new(class: PartialClass) -> PrefixState {
        let n = class.arity();
        PrefixState { class, minority: vec![None; n] }
    }

    fn minority_at(&mut self, i: usize) -> Result<u8> {
        if let Some(j) = self.minority[i] {
            return Ok(j);
        }
        let j = minority_value(&self.class, i)?;
        self.minority[i] = Some(j);
        Ok(j)
    }
}

/// Runs the minority walk for every member of `class` and collects the
/// distinct outputs into a net. Intermediate subclasses are shared between
/// members through a cache keyed by the set of fired coordinates, so the
/// result is identical no matter how members are scheduled.
pub fn build_net(class: &PartialClass) -> Result<Net> {
    if class.is_empty() {
        return Err(Error::argument("cannot build a net for the empty class"));
    }
    let n = class.arity();
    let r = class.r();
    let mut cache: HashMap<u64, PrefixState> = HashMap::new();
    cache.insert(0, PrefixState::new(class.clone()));

    let mut provenance = Vec::with_capacity(class.len());
    let mut outputs = Vec::with_capacity(class.len());
    for (member_index, h) in class.members().iter().enumerate() {
        let mut mask = 0u64;
        let mut values = Vec::with_capacity(n);
        let mut fired = Vec::new();
        for i in 0..n {
            let j = cache.get_mut(&mask).expect("prefix state present").minority_at(i)?;
            if h.get(i).as_value() == Some(j) {
                values.push(successor_value(j, r));
                fired.push(i);
                let next = mask | 1 << i;
                if !cache.contains_key(&next) {
                    let sub = cache[&mask].class.fix_coordinate(i, j)?;
                    debug_assert!(!sub.is_empty(), "member witnesses the fixed value");
                    cache.insert(next, PrefixState::new(sub));
                }
                mask = next;
            } else {
                values.push(j);
            }
        }
        let output = TotalFunction::new(values);
        outputs.push(output.clone());
        provenance.push(NetRecord { member_index, output, fired });
    }

    let carrier = TotalClass::new(r, n, outputs)?;
    Ok(Net { carrier, provenance })
}

/// Reconstructs a member's assigned function from its fired-coordinate set
/// alone, by replaying the minority walk without consulting the member.
pub fn replay_output(class: &PartialClass, fired: &[usize]) -> Result<TotalFunction> {
    if class.is_empty() {
        return Err(Error::argument("cannot replay on the empty class"));
    }
    let n = class.arity();
    let r = class.r();
    let mut cur = class.clone();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let j = minority_value(&cur, i)?;
        if fired.contains(&i) {
            values.push(successor_value(j, r));
            cur = cur.fix_coordinate(i, j)?;
        } else {
            values.push(j);
        }
    }
    Ok(TotalFunction::new(values))
}

/// Whether `candidate` is a net of `class`: every member disagrees with some
/// candidate function at every defined coordinate. The empty class is
/// vacuously covered.
pub fn verify_net(class: &PartialClass, candidate: &TotalClass) -> Result<bool> {
    if class.r() != candidate.r() || class.arity() != candidate.arity() {
        return Err(Error::argument(format!(
            "class (r={}, n={}) and candidate (r={}, n={}) do not match",
            class.r(),
            class.arity(),
            candidate.r(),
            candidate.arity()
        )));
    }
    Ok(class.members().iter().all(|h| {
        candidate.members().iter().any(|f| {
            (0..class.arity())
                .all(|i| h.get(i).as_value().map_or(true, |v| v != f.get(i)))
        })
    }))
}

/// An exact minimum net: its size and one witness.
#[derive(Clone, Debug)]
pub struct ExactCover {
    pub size: usize,
    pub witness: Vec<TotalFunction>,
}

/// Exact covering number by minimum set cover over all candidate total
/// functions: each `f` covers the members it disagrees with everywhere
/// defined. Requires `r^n` within `budget`; solved by branch-and-bound
/// seeded with the greedy cover.
pub fn covering_number_exact(class: &PartialClass, budget: u64) -> Result<ExactCover> {
    if class.is_empty() {
        return Ok(ExactCover { size: 0, witness: Vec::new() });
    }
    let n = class.arity();
    let r = class.r();
    let candidates = (r as u128).checked_pow(n as u32);
    match candidates {
        Some(c) if c <= budget as u128 => {}
        _ => {
            return Err(Error::resource(
                format!("candidate enumeration r^n = {r}^{n} exceeds the budget"),
                budget,
            ));
        }
    }

    let members = class.members();
    let m = members.len();
    let words = m.div_ceil(64);
    let full: Vec<u64> = {
        let mut v = vec![u64::MAX; words];
        if m % 64 != 0 {
            v[words - 1] = (1u64 << (m % 64)) - 1;
        }
        v
    };

    // Enumerate candidate functions and dedupe by covered-member bitset,
    // keeping the lexicographically first representative.
    let mut seen: HashMap<Vec<u64>, TotalFunction> = HashMap::new();
    crate::binom::for_each_total_function(r, n, |values| {
        let mut cover = vec![0u64; words];
        for (idx, h) in members.iter().enumerate() {
            let covers = (0..n).all(|i| h.get(i).as_value().map_or(true, |v| v != values[i]));
            if covers {
                cover[idx / 64] |= 1 << (idx % 64);
            }
        }
        seen.entry(cover).or_insert_with(|| TotalFunction::new(values.to_vec()));
        true
    });

    // Keep only maximal cover sets; any cover using a dominated set can use
    // its dominator instead.
    let mut sets: Vec<(Vec<u64>, TotalFunction)> = seen.into_iter().collect();
    sets.sort_by(|a, b| {
        let pa: u32 = a.0.iter().map(|w| w.count_ones()).sum();
        let pb: u32 = b.0.iter().map(|w| w.count_ones()).sum();
        pb.cmp(&pa).then_with(|| a.1.cmp(&b.1))
    });
    let mut maximal: Vec<(Vec<u64>, TotalFunction)> = Vec::new();
    'outer: for (cover, f) in sets {
        for (kept, _) in &maximal {
            if cover.iter().zip(kept).all(|(c, k)| c & !k == 0) {
                continue 'outer;
            }
        }
        maximal.push((cover, f));
    }

    let solver = CoverSolver { sets: maximal };
    let chosen = solver.solve(&full);
    let witness: Vec<TotalFunction> =
        chosen.iter().map(|&s| solver.sets[s].1.clone()).collect();
    Ok(ExactCover { size: witness.len(), witness })
}

struct CoverSolver {
    sets: Vec<(Vec<u64>, TotalFunction)>,
}

impl CoverSolver {
    fn solve(&self, universe: &[u64]) -> Vec<usize> {
        // Greedy upper bound.
        let mut best = self.greedy(universe);
        let mut chosen = Vec::new();
        let mut uncovered = universe.to_vec();
        self.branch(&mut uncovered, &mut chosen, &mut best);
        best
    }

    fn greedy(&self, universe: &[u64]) -> Vec<usize> {
        let mut uncovered = universe.to_vec();
        let mut picked = Vec::new();
        while uncovered.iter().any(|&w| w != 0) {
            let (idx, _) = self
                .sets
                .iter()
                .enumerate()
                .map(|(i, (c, _))| {
                    let gain: u32 =
                        c.iter().zip(&uncovered).map(|(a, b)| (a & b).count_ones()).sum();
                    (i, gain)
                })
                .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))
                .expect("every member is coverable");
            picked.push(idx);
            for (w, c) in uncovered.iter_mut().zip(&self.sets[idx].0) {
                *w &= !c;
            }
        }
        picked
    }

    fn branch(&self, uncovered: &mut Vec<u64>, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if uncovered.iter().all(|&w| w == 0) {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= best.len() {
            return;
        }
        // Branch on the uncovered member with the fewest covering sets.
        let mut pivot = None;
        let mut pivot_sets: Vec<usize> = Vec::new();
        for idx in bit_indices(uncovered) {
            let covering: Vec<usize> = self
                .sets
                .iter()
                .enumerate()
                .filter(|(_, (c, _))| c[idx / 64] >> (idx % 64) & 1 == 1)
                .map(|(i, _)| i)
                .collect();
            if pivot.is_none() || covering.len() < pivot_sets.len() {
                pivot = Some(idx);
                pivot_sets = covering;
            }
            if pivot_sets.len() <= 1 {
                break;
            }
        }
        for s in pivot_sets {
            let saved = uncovered.clone();
            for (w, c) in uncovered.iter_mut().zip(&self.sets[s].0) {
                *w &= !c;
            }
            chosen.push(s);
            self.branch(uncovered, chosen, best);
            chosen.pop();
            *uncovered = saved;
        }
    }
}

fn bit_indices(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + b)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{PartialFunction, Symbol};

    fn pf(symbols: &[i16]) -> PartialFunction {
        PartialFunction::new(
            symbols
                .iter()
                .map(|&s| if s < 0 { Symbol::STAR } else { Symbol::value(s as u8) })
                .collect(),
        )
    }

    fn class(r: u8, arity: usize, members: &[&[i16]]) -> PartialClass {
        PartialClass::new(r, arity, members.iter().map(|m| pf(m))).unwrap()
    }

    fn tf(values: &[u8]) -> TotalFunction {
        TotalFunction::new(values.to_vec())
    }

    #[test]
    fn minority_breaks_ties_to_smallest_value() {
        // {(1),(2)} over r=2: both strengths equal 1, tie -> 1.
        let c = class(2, 1, &[&[1], &[1], &[2]]);
        assert_eq!(c.fix_coordinate(0, 1).unwrap().shattering_strength(), 1);
        assert_eq!(c.fix_coordinate(0, 2).unwrap().shattering_strength(), 1);
        assert_eq!(minority_value(&c, 0).unwrap(), 1);
    }

    #[test]
    fn minority_prefers_strictly_smaller_strength() {
        // {(1,*),(1,1)}: fixing coordinate 0 to 2 leaves the empty class.
        let c = class(2, 2, &[&[1, -1], &[1, 1]]);
        assert_eq!(c.fix_coordinate(0, 2).unwrap().shattering_strength(), 0);
        assert_eq!(minority_value(&c, 0).unwrap(), 2);
    }

    #[test]
    fn minority_satisfies_shrinking_inequality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let r = rng.gen_range(2..=4);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 12, 0.25);
            let s = c.shattering_strength();
            for i in 0..n {
                let j = minority_value(&c, i).unwrap();
                let sj = c.fix_coordinate(i, j).unwrap().shattering_strength();
                // r * s(H_{i->j}) <= (r-1) * s(H)
                assert!(r as u64 * sj <= (r as u64 - 1) * s);
            }
        }
    }

    #[test]
    fn minority_rejects_empty_class() {
        let e = PartialClass::empty(2, 2).unwrap();
        assert!(minority_value(&e, 0).is_err());
    }

    #[test]
    fn all_star_member_never_fires() {
        let c = class(3, 4, &[&[-1, -1, -1, -1]]);
        let net = build_net(&c).unwrap();
        assert_eq!(net.carrier.len(), 1);
        assert!(net.provenance[0].fired.is_empty());
    }

    #[test]
    fn full_singleton_class_builds_swapped_net() {
        // H = {1,2}^{[1]}: (1) gets assigned (2) and vice versa.
        let c = TotalClass::full(2, 1).unwrap().to_partial();
        let net = build_net(&c).unwrap();
        assert_eq!(net.carrier.len(), 2);
        let by_member: Vec<_> = net.provenance.iter().map(|rec| rec.output.clone()).collect();
        // Members sort as (1), (2).
        assert_eq!(by_member[0], tf(&[2]));
        assert_eq!(by_member[1], tf(&[1]));
        assert!(verify_net(&c, &net.carrier).unwrap());
    }

    #[test]
    fn built_nets_verify_and_respect_size_bound() {
        use num_bigint::BigUint;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=8);
            let r = rng.gen_range(2..=4);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 20, 0.3);
            let net = build_net(&c).unwrap();
            assert!(verify_net(&c, &net.carrier).unwrap());
            let s = c.shattering_strength();
            let m = (s as f64).ln() / ((r as f64) / (r as f64 - 1.0)).ln();
            let bound = crate::bound::binomial_sum_real_cutoff(n as u64, m);
            assert!(BigUint::from(net.carrier.len() as u64) <= bound);
            // Lemma-style per-member guarantees.
            for rec in &net.provenance {
                let h = &c.members()[rec.member_index];
                for i in 0..n {
                    assert!(h.get(i).as_value().map_or(true, |v| v != rec.output.get(i)));
                }
                let replayed = replay_output(&c, &rec.fired).unwrap();
                assert_eq!(replayed, rec.output);
            }
        }
    }

    #[test]
    fn build_net_is_deterministic() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c = crate::sample::random_partial_class(&mut rng, 6, 3, 15, 0.25);
        let a = build_net(&c).unwrap();
        let b = build_net(&c).unwrap();
        assert_eq!(a.carrier, b.carrier);
        for (x, y) in a.provenance.iter().zip(&b.provenance) {
            assert_eq!(x.output, y.output);
            assert_eq!(x.fired, y.fired);
        }
    }

    #[test]
    fn verify_net_examples() {
        let e = PartialClass::empty(2, 1).unwrap();
        let empty_candidate = TotalClass::empty(2, 1).unwrap();
        assert!(verify_net(&e, &empty_candidate).unwrap());

        let c = class(2, 1, &[&[1]]);
        let same = TotalClass::new(2, 1, vec![tf(&[1])]).unwrap();
        assert!(!verify_net(&c, &same).unwrap());

        let mismatched = TotalClass::empty(3, 1).unwrap();
        assert!(verify_net(&c, &mismatched).is_err());
    }

    #[test]
    fn exact_cover_examples() {
        // Full class on one coordinate needs both functions.
        let c = TotalClass::full(2, 1).unwrap().to_partial();
        assert_eq!(covering_number_exact(&c, 1 << 20).unwrap().size, 2);

        // A single all-star member is covered by any total function.
        let c = class(2, 1, &[&[-1]]);
        let cover = covering_number_exact(&c, 1 << 20).unwrap();
        assert_eq!(cover.size, 1);

        // The triangle construction class needs exactly three.
        let k3 = class(2, 2, &[&[1, -1], &[2, 1], &[2, 2]]);
        let cover = covering_number_exact(&k3, 1 << 20).unwrap();
        assert_eq!(cover.size, 3);
        let witness = TotalClass::new(2, 2, cover.witness).unwrap();
        assert!(verify_net(&k3, &witness).unwrap());
    }

    #[test]
    fn exact_cover_respects_budget() {
        let c = class(2, 8, &[&[1, 1, 1, 1, 1, 1, 1, 1]]);
        match covering_number_exact(&c, 16) {
            Err(crate::error::Error::Resource { .. }) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn exact_cover_never_beats_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let n = rng.gen_range(1..=4);
            let r = rng.gen_range(2..=3);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 10, 0.3);
            let exact = covering_number_exact(&c, 1 << 20).unwrap();
            // Brute force: smallest subset of all candidate functions that
            // verifies as a net, by exhaustive subset search over sizes.
            let mut all = Vec::new();
            crate::binom::for_each_total_function(r, n, |v| {
                all.push(tf(v));
                true
            });
            let mut brute = None;
            'sizes: for size in 0..=all.len() {
                let mut found = false;
                crate::binom::for_each_subset_of_size(all.len(), size, |idx| {
                    let cand = TotalClass::new(
                        r,
                        n,
                        idx.iter().map(|&i| all[i].clone()).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    if verify_net(&c, &cand).unwrap() {
                        found = true;
                        return false;
                    }
                    true
                });
                if found {
                    brute = Some(size);
                    break 'sizes;
                }
            }
            assert_eq!(exact.size, brute.unwrap());
            let witness = TotalClass::new(r, n, exact.witness).unwrap();
            assert!(verify_net(&c, &witness).unwrap());
        }
    }
}
