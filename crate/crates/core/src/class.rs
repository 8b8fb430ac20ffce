//! Partial and total function classes over finite alphabets, and the
//! shattering machinery built on them: shattered sets, VC dimension and
//! shattering strength.
//!
//! A partial function maps `{0, .., n-1}` into `{1, .., r}` or leaves a
//! coordinate undefined. A set of coordinates `S` is shattered when every
//! total pattern over `S` appears among the member restrictions; undefined
//! entries never match a total pattern.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported arity. Coordinate sets are manipulated as `u64`
/// bitmasks, and subset counts must fit in a `u64`.
pub const MAX_ARITY: usize = 63;

/// One entry of a partial function: an alphabet value in `{1, .., r}` or the
/// undefined mark. Internally the undefined mark is the reserved value 0, so
/// entries hash and compare cheaply.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(u8);

impl Symbol {
    /// The undefined mark.
    pub const STAR: Symbol = Symbol(0);

    /// A defined alphabet value; `v` must be at least 1.
    pub fn value(v: u8) -> Symbol {
        assert!(v >= 1, "alphabet values start at 1");
        Symbol(v)
    }

    pub fn is_star(self) -> bool {
        self.0 == 0
    }

    /// The alphabet value, or `None` for the undefined mark.
    pub fn as_value(self) -> Option<u8> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0)
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "*"),
        }
    }
}

/// A partial function `{0,..,n-1} -> {1,..,r}` with possibly-undefined
/// coordinates, stored densely.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartialFunction {
    entries: Vec<Symbol>,
}

impl PartialFunction {
    pub fn new(entries: Vec<Symbol>) -> PartialFunction {
        PartialFunction { entries }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn is_total(&self) -> bool {
        self.entries.iter().all(|s| !s.is_star())
    }

    /// Restriction to the given (sorted) coordinates, re-indexed in order.
    fn project(&self, coords: &[usize]) -> PartialFunction {
        PartialFunction { entries: coords.iter().map(|&i| self.entries[i]).collect() }
    }
}

/// A total function `{0,..,n-1} -> {1,..,r}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TotalFunction {
    values: Vec<u8>,
}

impl TotalFunction {
    pub fn new(values: Vec<u8>) -> TotalFunction {
        debug_assert!(values.iter().all(|&v| v >= 1));
        TotalFunction { values }
    }

    pub fn arity(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.values[i]
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn to_partial(&self) -> PartialFunction {
        PartialFunction::new(self.values.iter().map(|&v| Symbol::value(v)).collect())
    }
}

fn check_dims(r: u8, arity: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::argument(format!("alphabet size must be at least 2, got {r}")));
    }
    if arity > MAX_ARITY {
        return Err(Error::argument(format!(
            "arity {arity} exceeds the supported maximum {MAX_ARITY}"
        )));
    }
    Ok(())
}

/// Validates a coordinate set: in range, duplicate-free; returns it sorted.
fn check_coords(coords: &[usize], arity: usize) -> Result<Vec<usize>> {
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::argument(format!("duplicate coordinate {}", w[0])));
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= arity {
            return Err(Error::argument(format!(
                "coordinate {last} out of range for arity {arity}"
            )));
        }
    }
    Ok(sorted)
}

/// A finite set of partial functions sharing alphabet size and arity.
/// Members are kept sorted and duplicate-free, so equality, hashing and
/// iteration order are all canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialClass {
    r: u8,
    arity: usize,
    members: Vec<PartialFunction>,
}

impl PartialClass {
    pub fn new(
        r: u8,
        arity: usize,
        members: impl IntoIterator<Item = PartialFunction>,
    ) -> Result<PartialClass> {
        check_dims(r, arity)?;
        let mut members: Vec<PartialFunction> = members.into_iter().collect();
        for m in &members {
            if m.arity() != arity {
                return Err(Error::argument(format!(
                    "member arity {} does not match class arity {arity}",
                    m.arity()
                )));
            }
            for (i, s) in m.entries().iter().enumerate() {
                if let Some(v) = s.as_value() {
                    if v > r {
                        return Err(Error::argument(format!(
                            "value {v} at coordinate {i} exceeds alphabet size {r}"
                        )));
                    }
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(PartialClass { r, arity, members })
    }

    pub fn empty(r: u8, arity: usize) -> Result<PartialClass> {
        Self::new(r, arity, std::iter::empty())
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[PartialFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Exact membership test (set semantics).
    pub fn contains(&self, f: &PartialFunction) -> bool {
        self.members.binary_search(f).is_ok()
    }

    /// The restriction `{ h|_S : h in H }`, re-indexed along `S` in
    /// increasing order, duplicates collapsed.
    pub fn restrict(&self, coords: &[usize]) -> Result<PartialClass> {
        let sorted = check_coords(coords, self.arity)?;
        PartialClass::new(self.r, sorted.len(), self.members.iter().map(|m| m.project(&sorted)))
    }

    /// The subclass of members taking value `value` at coordinate `i`.
    pub fn fix_coordinate(&self, i: usize, value: u8) -> Result<PartialClass> {
        if i >= self.arity {
            return Err(Error::argument(format!(
                "coordinate {i} out of range for arity {}",
                self.arity
            )));
        }
        if value < 1 || value > self.r {
            return Err(Error::argument(format!(
                "value {value} outside alphabet 1..={}",
                self.r
            )));
        }
        let keep = Symbol::value(value);
        Ok(PartialClass {
            r: self.r,
            arity: self.arity,
            members: self.members.iter().filter(|m| m.get(i) == keep).cloned().collect(),
        })
    }

    /// Whether `S` is shattered: every total pattern over `S` occurs as the
    /// restriction of some member. The empty set is shattered exactly by
    /// nonempty classes.
    pub fn is_shattered(&self, coords: &[usize]) -> Result<bool> {
        let sorted = check_coords(coords, self.arity)?;
        let mut mask = 0u64;
        for &i in &sorted {
            mask |= 1 << i;
        }
        Ok(self.shattered_mask(mask))
    }

    fn shattered_mask(&self, mask: u64) -> bool {
        let k = mask.count_ones() as usize;
        // Quick size lower bound: the class needs at least r^k members.
        let needed = match (self.r as u128).checked_pow(k as u32) {
            Some(v) if v <= self.members.len() as u128 => v as u64,
            _ => return false,
        };
        let coords: Vec<usize> = (0..self.arity).filter(|&i| mask >> i & 1 == 1).collect();
        let mut codes: Vec<u64> = Vec::with_capacity(self.members.len());
        'members: for m in &self.members {
            let mut code = 0u64;
            for &i in &coords {
                match m.get(i).as_value() {
                    Some(v) => code = code * self.r as u64 + (v - 1) as u64,
                    None => continue 'members,
                }
            }
            codes.push(code);
        }
        codes.sort_unstable();
        codes.dedup();
        codes.len() as u64 == needed
    }

    /// All shattered subsets, found levelwise with downward-closure pruning.
    pub fn shattered_sets(&self) -> ShatteredSets {
        let (max_size, masks) =
            levelwise_downward_closed(self.arity, |mask| self.shattered_mask(mask));
        ShatteredSets { max_size, masks }
    }

    /// Maximum size of a shattered set; `None` for the empty class, which
    /// shatters nothing (not even the empty set).
    pub fn vc_dimension(&self) -> Option<usize> {
        self.shattered_sets().max_size
    }

    /// The number of shattered subsets of the ground set. Zero exactly for
    /// the empty class.
    pub fn shattering_strength(&self) -> u64 {
        self.shattered_sets().masks.len() as u64
    }

    /// Reinterpret as a total class; `None` if any member has an undefined
    /// coordinate.
    pub fn as_total(&self) -> Option<TotalClass> {
        let mut members = Vec::with_capacity(self.members.len());
        for m in &self.members {
            let mut values = Vec::with_capacity(self.arity);
            for s in m.entries() {
                values.push(s.as_value()?);
            }
            members.push(TotalFunction::new(values));
        }
        Some(TotalClass { r: self.r, arity: self.arity, members })
    }
}

/// The outcome of the levelwise shattered-set search.
#[derive(Clone, Debug)]
pub struct ShatteredSets {
    /// Size of the largest shattered set; `None` when nothing is shattered.
    pub max_size: Option<usize>,
    /// Every shattered subset as a coordinate bitmask, grouped by size.
    pub masks: Vec<u64>,
}

/// Levelwise search over a downward-closed family of subsets of
/// `{0,..,arity-1}`: a set is tested only if all of its one-smaller subsets
/// already passed. Returns the maximum passing size and all passing masks.
pub(crate) fn levelwise_downward_closed(
    arity: usize,
    mut test: impl FnMut(u64) -> bool,
) -> (Option<usize>, Vec<u64>) {
    if !test(0) {
        return (None, Vec::new());
    }
    let mut all = vec![0u64];
    let mut current = vec![0u64];
    let mut max_size = 0usize;
    while !current.is_empty() {
        let prev: HashSet<u64> = current.iter().copied().collect();
        let mut next = Vec::new();
        for &s in &current {
            let start = if s == 0 { 0 } else { 64 - s.leading_zeros() as usize };
            for i in start..arity {
                let cand = s | 1 << i;
                // All one-smaller subsets must be present (downward closure).
                let mut ok = true;
                let mut rest = cand;
                while rest != 0 {
                    let b = rest & rest.wrapping_neg();
                    if !prev.contains(&(cand ^ b)) {
                        ok = false;
                        break;
                    }
                    rest ^= b;
                }
                if ok && test(cand) {
                    next.push(cand);
                }
            }
        }
        if !next.is_empty() {
            max_size += 1;
            all.extend_from_slice(&next);
        }
        current = next;
    }
    (Some(max_size), all)
}

/// A finite set of total functions sharing alphabet size and arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TotalClass {
    r: u8,
    arity: usize,
    members: Vec<TotalFunction>,
}

impl TotalClass {
    pub fn new(
        r: u8,
        arity: usize,
        members: impl IntoIterator<Item = TotalFunction>,
    ) -> Result<TotalClass> {
        check_dims(r, arity)?;
        let mut members: Vec<TotalFunction> = members.into_iter().collect();
        for m in &members {
            if m.arity() != arity {
                return Err(Error::argument(format!(
                    "member arity {} does not match class arity {arity}",
                    m.arity()
                )));
            }
            for (i, &v) in m.values().iter().enumerate() {
                if v < 1 || v > r {
                    return Err(Error::argument(format!(
                        "value {v} at coordinate {i} outside alphabet 1..={r}"
                    )));
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(TotalClass { r, arity, members })
    }

    pub fn empty(r: u8, arity: usize) -> Result<TotalClass> {
        Self::new(r, arity, std::iter::empty())
    }

    /// The full product class `{1,..,r}^arity`.
    pub fn full(r: u8, arity: usize) -> Result<TotalClass> {
        check_dims(r, arity)?;
        if (r as u128).pow(arity as u32) > 1 << 22 {
            return Err(Error::resource(
                format!("full class over r={r}, n={arity} is too large to materialise"),
                1 << 22,
            ));
        }
        let mut members = Vec::new();
        crate::binom::for_each_total_function(r, arity, |values| {
            members.push(TotalFunction::new(values.to_vec()));
            true
        });
        TotalClass::new(r, arity, members)
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[TotalFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &TotalFunction) -> bool {
        self.members.binary_search(f).is_ok()
    }

    /// Embed into the partial-class world (no undefined entries).
    pub fn to_partial(&self) -> PartialClass {
        PartialClass {
            r: self.r,
            arity: self.arity,
            members: self.members.iter().map(|m| m.to_partial()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn duplicates_collapse_on_construction() {
        let c = class(2, 1, &[&[1], &[1], &[2]]);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&pf(&[1])));
    }

    #[test]
    fn restrict_projects_and_collapses() {
        // H={(1,2),(2,1)}, S={0} -> {(1),(2)}
        let c = class(2, 2, &[&[1, 2], &[2, 1]]);
        let r = c.restrict(&[0]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&pf(&[1])) && r.contains(&pf(&[2])));

        // H={(1,*)}, S={1} -> {(*)}
        let c = class(2, 2, &[&[1, -1]]);
        let r = c.restrict(&[1]).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.contains(&pf(&[-1])));

        // full {1,2}^3 restricted to {0,2} is the full square
        let full = TotalClass::full(2, 3).unwrap().to_partial();
        let r = full.restrict(&[0, 2]).unwrap();
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn restrict_rejects_bad_coords() {
        let c = class(2, 2, &[&[1, 2]]);
        assert!(c.restrict(&[2]).is_err());
        assert!(c.restrict(&[0, 0]).is_err());
    }

    #[test]
    fn restriction_composes_under_index_maps() {
        // restrict(restrict(H,S), S') == restrict(H, mapped S') for S' inside S.
        let c = class(3, 4, &[&[1, 2, 3, -1], &[2, 2, 1, 1], &[3, -1, 2, 2]]);
        let s = [0, 2, 3];
        let inner = c.restrict(&s).unwrap();
        // S' = {2, 3} as a subset of S maps to positions {1, 2} of the
        // re-indexed class.
        let twice = inner.restrict(&[1, 2]).unwrap();
        let direct = c.restrict(&[2, 3]).unwrap();
        assert_eq!(twice, direct);
    }

    #[test]
    fn shattering_examples() {
        // Full class shatters everything.
        let full = TotalClass::full(2, 2).unwrap().to_partial();
        assert!(full.is_shattered(&[0, 1]).unwrap());

        // {(1,*)} does not shatter {0}: pattern (2) missing.
        let c = class(2, 2, &[&[1, -1]]);
        assert!(!c.is_shattered(&[0]).unwrap());

        // Empty class does not even shatter the empty set.
        let e = PartialClass::empty(2, 2).unwrap();
        assert!(!e.is_shattered(&[]).unwrap());

        // Stars never match a total pattern.
        let c = class(2, 1, &[&[1], &[-1]]);
        assert!(!c.is_shattered(&[0]).unwrap());
    }

    #[test]
    fn vc_dimension_examples() {
        for n in 1..=4 {
            let full = TotalClass::full(2, n).unwrap().to_partial();
            assert_eq!(full.vc_dimension(), Some(n));
        }
        // Nonempty class shattering only the empty set.
        let c = class(2, 2, &[&[1, 1]]);
        assert_eq!(c.vc_dimension(), Some(0));
        // Empty class: distinguished marker.
        let e = PartialClass::empty(2, 3).unwrap();
        assert_eq!(e.vc_dimension(), None);
        // The triangle construction class has VC at most 1.
        let k3 = class(2, 2, &[&[1, -1], &[2, 1], &[2, 2]]);
        assert!(k3.vc_dimension().unwrap() <= 1);
    }

    #[test]
    fn strength_examples() {
        let e = PartialClass::empty(2, 3).unwrap();
        assert_eq!(e.shattering_strength(), 0);
        let one = class(2, 3, &[&[1, -1, 2]]);
        assert!(one.shattering_strength() >= 1);
        let full = TotalClass::full(2, 3).unwrap().to_partial();
        assert_eq!(full.shattering_strength(), 8);
    }

    #[test]
    fn fix_coordinate_examples() {
        let c = class(2, 2, &[&[1, 2], &[2, 2], &[-1, 1]]);
        let f = c.fix_coordinate(0, 1).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.contains(&pf(&[1, 2])));
        assert_eq!(f.arity(), 2);

        let c3 = class(3, 2, &[&[1, 2], &[2, 2], &[-1, 1]]);
        let f3 = c3.fix_coordinate(0, 3).unwrap();
        assert!(f3.is_empty());

        assert!(c.fix_coordinate(0, 3).is_err());
        assert!(c.fix_coordinate(5, 1).is_err());
    }

    #[test]
    fn vc_matches_exhaustive_on_random_classes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let r = rng.gen_range(2..=3);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 12, 0.25);
            // Exhaustive check over all subsets, no pruning.
            let mut best: Option<usize> = None;
            let mut count = 0u64;
            for mask in 0..(1u64 << n) {
                let coords: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if c.is_shattered(&coords).unwrap() {
                    count += 1;
                    let k = coords.len();
                    best = Some(best.map_or(k, |b: usize| b.max(k)));
                }
            }
            assert_eq!(c.vc_dimension(), best);
            assert_eq!(c.shattering_strength(), count);
        }
    }

    #[test]
    fn shattered_sets_are_downward_closed() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let n = rng.gen_range(1..=8);
            let r = rng.gen_range(2..=4);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 16, 0.3);
            let sets: HashSet<u64> = c.shattered_sets().masks.into_iter().collect();
            for &s in &sets {
                let mut rest = s;
                while rest != 0 {
                    let b = rest & rest.wrapping_neg();
                    assert!(sets.contains(&(s ^ b)), "downward closure violated");
                    rest ^= b;
                }
            }
        }
    }

    #[test]
    fn strength_bounded_by_binomial_sum_of_vc() {
        use num_bigint::BigUint;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..40 {
            let n = rng.gen_range(1..=7);
            let r = rng.gen_range(2..=4);
            let c = crate::sample::random_partial_class(&mut rng, n, r, 14, 0.25);
            if c.is_empty() {
                continue;
            }
            let d = c.vc_dimension().unwrap() as u64;
            let bound = crate::binom::binomial_sum(n as u64, d);
            assert!(BigUint::from(c.shattering_strength()) <= bound);
        }
    }
}
