//! k-Natarajan dimension of total classes, the coordinate-wise branching
//! construction that certifies the cardinality bound, the bound itself, and
//! the extremal family attaining it asymptotically.
//!
//! A set `S` is k-Natarajan shattered by `H` when the restriction `H|_S`
//! contains a full product of k-element value sets, one per coordinate.
//! `k = 2` relates to the Natarajan dimension and `k = r` to the Steele
//! dimension; on binary total classes `k = 2` coincides with VC dimension.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::binom::{binomial, binomial_ext, for_each_subset_of_size};
use crate::bound::{BoundReport, BoundValue, Formula};
use crate::class::{levelwise_downward_closed, TotalClass, TotalFunction};
use crate::error::{Error, Result};

/// Maximum size of a k-Natarajan shattered set, found levelwise with
/// downward-closure pruning.
///
/// `k = 1` is accepted as the degenerate case (any nonempty restriction
/// contains a 1-element product), where the dimension equals the arity.
pub fn natarajan_dim(class: &TotalClass, k: u8) -> Result<usize> {
    if class.is_empty() {
        return Err(Error::argument("k-Natarajan dimension of an empty class is undefined"));
    }
    if k < 1 || k > class.r() {
        return Err(Error::argument(format!(
            "k must satisfy 1 <= k <= r = {}, got {k}",
            class.r()
        )));
    }
    if k == 1 {
        return Ok(class.arity());
    }
    let (max, _) = levelwise_downward_closed(class.arity(), |mask| k_shattered_mask(class, mask, k));
    // The empty set is always k-shattered for a nonempty class.
    Ok(max.expect("class is nonempty"))
}

/// Whether the coordinate set `coords` is k-Natarajan shattered.
pub fn is_k_shattered(class: &TotalClass, coords: &[usize], k: u8) -> Result<bool> {
    if k < 1 || k > class.r() {
        return Err(Error::argument(format!(
            "k must satisfy 1 <= k <= r = {}, got {k}",
            class.r()
        )));
    }
    let mut mask = 0u64;
    for &i in coords {
        if i >= class.arity() {
            return Err(Error::argument(format!(
                "coordinate {i} out of range for arity {}",
                class.arity()
            )));
        }
        mask |= 1 << i;
    }
    if k == 1 {
        return Ok(!class.is_empty());
    }
    Ok(k_shattered_mask(class, mask, k))
}

fn k_shattered_mask(class: &TotalClass, mask: u64, k: u8) -> bool {
    let coords: Vec<usize> = (0..class.arity()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut patterns: Vec<Vec<u8>> = class
        .members()
        .iter()
        .map(|m| coords.iter().map(|&i| m.get(i)).collect())
        .collect();
    patterns.sort_unstable();
    patterns.dedup();
    contains_k_product(&patterns, k as usize)
}

/// Whether a duplicate-free sorted pattern list contains a product of
/// k-element value sets across all its coordinates. Recurses coordinate by
/// coordinate: pick a k-set of first-coordinate values whose residual
/// pattern sets intersect, then require the intersection to contain a
/// product over the remaining coordinates.
fn contains_k_product(patterns: &[Vec<u8>], k: usize) -> bool {
    if patterns.is_empty() {
        return false;
    }
    if patterns[0].is_empty() {
        return true;
    }
    let remaining = patterns[0].len() - 1;
    let mut groups: BTreeMap<u8, Vec<Vec<u8>>> = BTreeMap::new();
    for p in patterns {
        groups.entry(p[0]).or_default().push(p[1..].to_vec());
    }
    if groups.len() < k {
        return false;
    }
    let keys: Vec<u8> = groups.keys().copied().collect();
    let suffix_sets: Vec<&Vec<Vec<u8>>> = keys.iter().map(|v| &groups[v]).collect();
    let needed = (k as u128).checked_pow(remaining as u32);
    let mut found = false;
    for_each_subset_of_size(keys.len(), k, |idx| {
        let mut inter: Vec<Vec<u8>> = suffix_sets[idx[0]].clone();
        for &t in &idx[1..] {
            inter = intersect_sorted(&inter, suffix_sets[t]);
            if inter.is_empty() {
                break;
            }
        }
        let big_enough = match needed {
            Some(need) => inter.len() as u128 >= need,
            None => false,
        };
        if big_enough && contains_k_product(&inter, k) {
            found = true;
            return false;
        }
        true
    });
    found
}

fn intersect_sorted(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A symbol of the branching alphabet: one of the `k-1` order marks, or a
/// mark carrying a k-element value set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BranchSymbol {
    B(u8),
    /// Sorted, distinct, exactly k values.
    C(Vec<u8>),
}

/// One coordinate of a stage member: still a plain alphabet value, or
/// already branched.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StageEntry {
    Value(u8),
    Branch(BranchSymbol),
}

/// A member of an intermediate stage: branched in a prefix of coordinates,
/// plain in the rest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StageVector {
    entries: Vec<StageEntry>,
}

impl StageVector {
    pub fn entries(&self) -> &[StageEntry] {
        &self.entries
    }

    /// Number of coordinates carrying a value-set mark.
    pub fn c_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, StageEntry::Branch(BranchSymbol::C(_))))
            .count()
    }

    fn b_count_prefix(&self, len: usize) -> usize {
        self.entries[..len]
            .iter()
            .filter(|e| matches!(e, StageEntry::Branch(BranchSymbol::B(_))))
            .count()
    }
}

/// A stage: a duplicate-free sorted set of stage vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StageClass {
    members: Vec<StageVector>,
}

impl StageClass {
    pub fn members(&self) -> &[StageVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The full run of the branching construction: stages `H_0, .., H_n` and the
/// per-stage bijections, recorded as index maps between the canonical member
/// orders of consecutive stages.
#[derive(Clone, Debug)]
pub struct BranchTrace {
    r: u8,
    k: u8,
    arity: usize,
    stages: Vec<StageClass>,
    maps: Vec<Vec<usize>>,
}

impl BranchTrace {
    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn stages(&self) -> &[StageClass] {
        &self.stages
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn final_stage(&self) -> &StageClass {
        self.stages.last().expect("at least one stage")
    }

    /// Index of the final-stage image of initial member `idx`.
    pub fn image_of(&self, idx: usize) -> usize {
        self.maps.iter().fold(idx, |cur, map| map[cur])
    }

    /// Replays the classification that splits the class into `d+1` parts by
    /// where the `(n-d)`-th order mark of each final image sits. Returns the
    /// part index of each initial member; each member must land in exactly
    /// one part, anything else is an invariant violation. Requires `d < n`.
    pub fn proof_partition(&self, d: usize) -> Result<Vec<usize>> {
        let n = self.arity;
        if d >= n {
            return Err(Error::argument(format!(
                "partition replay requires d < n, got d={d}, n={n}"
            )));
        }
        let finals = self.final_stage();
        let mut out = Vec::with_capacity(self.stages[0].len());
        for idx in 0..self.stages[0].len() {
            let y = &finals.members()[self.image_of(idx)];
            let mut matches = Vec::new();
            for i in 0..=d {
                let pos = n - i; // 1-based position of the inspected coordinate
                let is_order_mark =
                    matches!(y.entries()[pos - 1], StageEntry::Branch(BranchSymbol::B(_)));
                if is_order_mark && y.b_count_prefix(pos) == n - d {
                    matches.push(i);
                }
            }
            if matches.len() != 1 {
                return Err(Error::invariant(format!(
                    "member {idx} classified into {} parts instead of one",
                    matches.len()
                )));
            }
            out.push(matches[0]);
        }
        Ok(out)
    }
}

/// Runs the branching construction: coordinate `i` of stage `i-1` is
/// rewritten blockwise, where a block is a maximal set of members agreeing
/// everywhere else. Within a block, members sorted by their `i`-th value
/// `s_1 < .. < s_t` receive the `j`-th order mark for `j <= k-1` and the
/// value-set mark `{s_1,..,s_{k-1},s_j}` for `j >= k`. All three structural
/// properties are verified before the trace is returned.
pub fn branch_construct(class: &TotalClass, k: u8) -> Result<BranchTrace> {
    let r = class.r();
    if k < 2 || k > r {
        return Err(Error::argument(format!("k must satisfy 2 <= k <= r = {r}, got {k}")));
    }
    let n = class.arity();
    let stage0 = StageClass {
        members: class
            .members()
            .iter()
            .map(|m| StageVector {
                entries: m.values().iter().map(|&v| StageEntry::Value(v)).collect(),
            })
            .collect(),
    };
    let mut stages = vec![stage0];
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(n);

    for i in 0..n {
        let cur = &stages[i];
        // Blocks keyed by the member with coordinate i dropped; BTreeMap
        // fixes the processing order.
        let mut blocks: BTreeMap<Vec<StageEntry>, Vec<usize>> = BTreeMap::new();
        for (idx, m) in cur.members().iter().enumerate() {
            let mut key = m.entries.clone();
            key.remove(i);
            blocks.entry(key).or_default().push(idx);
        }
        let mut rewritten: Vec<(StageVector, usize)> = Vec::with_capacity(cur.len());
        for idxs in blocks.values() {
            let mut ordered: Vec<(u8, usize)> = idxs
                .iter()
                .map(|&t| match cur.members()[t].entries[i] {
                    StageEntry::Value(v) => Ok((v, t)),
                    _ => Err(Error::invariant(format!(
                        "stage {i} member has a branched entry at coordinate {i}"
                    ))),
                })
                .collect::<Result<_>>()?;
            ordered.sort_unstable();
            let block_values: Vec<u8> = ordered.iter().map(|&(v, _)| v).collect();
            for (pos, &(_, t)) in ordered.iter().enumerate() {
                let symbol = if pos < k as usize - 1 {
                    BranchSymbol::B(pos as u8 + 1)
                } else {
                    let mut set: Vec<u8> = block_values[..k as usize - 1].to_vec();
                    set.push(block_values[pos]);
                    set.sort_unstable();
                    BranchSymbol::C(set)
                };
                let mut entries = cur.members()[t].entries.clone();
                entries[i] = StageEntry::Branch(symbol);
                rewritten.push((StageVector { entries }, t));
            }
        }
        rewritten.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        // (P2): the rewrite must be injective on the whole stage.
        if rewritten.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invariant(format!("stage {} rewrite collapsed two members", i + 1)));
        }
        let mut map = vec![usize::MAX; cur.len()];
        for (new_idx, (_, origin)) in rewritten.iter().enumerate() {
            map[*origin] = new_idx;
        }
        let next = StageClass { members: rewritten.into_iter().map(|(m, _)| m).collect() };
        stages.push(next);
        maps.push(map);
    }

    let trace = BranchTrace { r, k, arity: n, stages, maps };
    verify_trace(class, &trace, k)?;
    Ok(trace)
}

fn verify_trace(class: &TotalClass, trace: &BranchTrace, k: u8) -> Result<()> {
    for (i, stage) in trace.stages.iter().enumerate() {
        // (P2) consequence: every stage has the original cardinality.
        if stage.len() != class.len() {
            return Err(Error::invariant(format!(
                "stage {i} has {} members, expected {}",
                stage.len(),
                class.len()
            )));
        }
        // (P1): branched exactly in the first i coordinates.
        for m in stage.members() {
            for (c, e) in m.entries.iter().enumerate() {
                let branched = matches!(e, StageEntry::Branch(_));
                if branched != (c < i) {
                    return Err(Error::invariant(format!(
                        "stage {i} member mixes plain and branched entries at coordinate {c}"
                    )));
                }
            }
        }
    }
    // (P3): value-set marks per final member are bounded by the dimension.
    if !class.is_empty() {
        let dim = natarajan_dim(class, k)?;
        for m in trace.final_stage().members() {
            if m.c_count() > dim {
                return Err(Error::invariant(format!(
                    "final member carries {} value-set marks, dimension is {dim}",
                    m.c_count()
                )));
            }
        }
    }
    // Bijection records must be permutations.
    for (i, map) in trace.maps.iter().enumerate() {
        let mut seen = vec![false; map.len()];
        for &t in map {
            if t >= map.len() || seen[t] {
                return Err(Error::invariant(format!("stage {} map is not a bijection", i + 1)));
            }
            seen[t] = true;
        }
    }
    Ok(())
}

/// Exact right-hand side of the cardinality bound:
/// `(k-1)^{n-d} * sum_{i=0}^{d} C(n-i-1, d-i) C(r,k)^{d-i} r^i`.
pub fn natarajan_bound(n: u64, r: u8, k: u8, d: u64) -> Result<BoundReport> {
    if k < 2 || r < k {
        return Err(Error::argument(format!("parameters must satisfy r >= k >= 2, got r={r}, k={k}")));
    }
    if d < 1 || n < d {
        return Err(Error::argument(format!("parameters must satisfy n >= d >= 1, got n={n}, d={d}")));
    }
    let choose_rk = binomial(r as u64, k as u64);
    let mut sum = BigUint::zero();
    for i in 0..=d {
        let term = binomial_ext(n as i64 - i as i64 - 1, (d - i) as i64)
            * choose_rk.pow((d - i) as u32)
            * BigUint::from(r as u64).pow(i as u32);
        sum += term;
    }
    let rhs = BigUint::from(k as u64 - 1).pow((n - d) as u32) * sum;
    Ok(BoundReport {
        n,
        r,
        d,
        k: Some(k),
        threshold: d as f64,
        value: BoundValue::Exact(rhs),
        formula: Formula::Natarajan,
        notes: Vec::new(),
    })
}

/// The class of all vectors in `{1,..,r}^n` with at most `d` coordinates
/// greater than `k-1`. Attains the cardinality bound asymptotically and has
/// k-Natarajan dimension exactly `d`.
pub fn tight_family(n: usize, r: u8, k: u8, d: usize) -> Result<TotalClass> {
    if k < 2 || r < k {
        return Err(Error::argument(format!("parameters must satisfy r >= k >= 2, got r={r}, k={k}")));
    }
    if n < 1 || d > n {
        return Err(Error::argument(format!("parameters must satisfy n >= d >= 0, n >= 1, got n={n}, d={d}")));
    }
    let size = tight_family_size(n as u64, r, k, d as u64);
    let limit = 1u64 << 20;
    if size > BigUint::from(limit) {
        return Err(Error::resource(
            format!("tight family has {size} members, too many to materialise"),
            limit,
        ));
    }
    let mut members = Vec::new();
    let mut prefix = vec![0u8; n];
    gen_bounded_high(&mut prefix, 0, d, r, k, &mut members);
    TotalClass::new(r, n, members)
}

fn gen_bounded_high(
    prefix: &mut Vec<u8>,
    pos: usize,
    high_left: usize,
    r: u8,
    k: u8,
    out: &mut Vec<TotalFunction>,
) {
    if pos == prefix.len() {
        out.push(TotalFunction::new(prefix.clone()));
        return;
    }
    for v in 1..=r {
        let high = v > k - 1;
        if high && high_left == 0 {
            continue;
        }
        prefix[pos] = v;
        gen_bounded_high(prefix, pos + 1, high_left - usize::from(high), r, k, out);
    }
}

/// Closed-form size of [`tight_family`]:
/// `sum_{i=0}^{d} C(n,i) (r-k+1)^i (k-1)^{n-i}`.
pub fn tight_family_size(n: u64, r: u8, k: u8, d: u64) -> BigUint {
    let mut sum = BigUint::zero();
    for i in 0..=d.min(n) {
        sum += binomial(n, i)
            * BigUint::from((r - k + 1) as u64).pow(i as u32)
            * BigUint::from((k - 1) as u64).pow((n - i) as u32);
    }
    sum
}
