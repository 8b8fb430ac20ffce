//! Pattern counting and maximal pattern complexity for one-sided infinite
//! words given by finite generators.
//!
//! A word spec generates a word over `{1,..,r}`; the pattern table of an
//! offset set `S = {s_1 < .. < s_n}` collects the distinct tuples
//! `(a[m+s_1], .., a[m+s_n])` over all shifts `m`. The maximal pattern
//! complexity `p*(n)` maximises the count over all size-`n` offset sets.
//! Offsets are 0-based throughout.
//!
//! For (eventually) periodic specs every offset is equivalent modulo the
//! period to one below `preperiod + period`, so restricting offsets to that
//! range and shifts to one full period block is exact. For substitution and
//! explicit-prefix specs only a finite prefix of the word is visible, so all
//! counts carry a lower-bound flag.

use std::collections::BTreeSet;

use crate::class::{TotalClass, TotalFunction};
use crate::error::{Error, Result};

/// Offset cap used for specs with no periodic structure.
pub const DEFAULT_OFFSET_CAP: usize = 16;
/// Default number of candidate offset sets examined by the complexity search.
pub const DEFAULT_PATTERN_BUDGET: u64 = 2_000_000;
/// Hard cap on generated word length.
const EXPANSION_CAP: usize = 1 << 20;

/// A generator of a one-sided infinite word (or of a finite prefix of one).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordSpec {
    Periodic { r: u8, cycle: Vec<u8> },
    EventuallyPeriodic { r: u8, preperiod: Vec<u8>, cycle: Vec<u8> },
    Substitution { r: u8, rules: Vec<Vec<u8>>, seed: Vec<u8>, depth: usize },
    Prefix { r: u8, word: Vec<u8> },
}

fn check_symbols(r: u8, word: &[u8], what: &str) -> Result<()> {
    if r < 2 {
        return Err(Error::argument(format!("alphabet size must be at least 2, got {r}")));
    }
    for &s in word {
        if s < 1 || s > r {
            return Err(Error::argument(format!("{what} contains symbol {s} outside 1..={r}")));
        }
    }
    Ok(())
}

impl WordSpec {
    pub fn periodic(r: u8, cycle: Vec<u8>) -> Result<WordSpec> {
        check_symbols(r, &cycle, "cycle")?;
        if cycle.is_empty() {
            return Err(Error::argument("cycle must be nonempty"));
        }
        Ok(WordSpec::Periodic { r, cycle })
    }

    pub fn eventually_periodic(r: u8, preperiod: Vec<u8>, cycle: Vec<u8>) -> Result<WordSpec> {
        check_symbols(r, &preperiod, "preperiod")?;
        check_symbols(r, &cycle, "cycle")?;
        if cycle.is_empty() {
            return Err(Error::argument("cycle must be nonempty"));
        }
        Ok(WordSpec::EventuallyPeriodic { r, preperiod, cycle })
    }

    pub fn substitution(r: u8, rules: Vec<Vec<u8>>, seed: Vec<u8>, depth: usize) -> Result<WordSpec> {
        if rules.len() != r as usize {
            return Err(Error::argument(format!(
                "expected one rule per symbol (r={r}), got {}",
                rules.len()
            )));
        }
        for (i, rule) in rules.iter().enumerate() {
            if rule.is_empty() {
                return Err(Error::argument(format!("rule for symbol {} is erasing", i + 1)));
            }
            check_symbols(r, rule, "rule image")?;
        }
        check_symbols(r, &seed, "seed")?;
        if seed.is_empty() {
            return Err(Error::argument("seed must be nonempty"));
        }
        Ok(WordSpec::Substitution { r, rules, seed, depth })
    }

    pub fn prefix(r: u8, word: Vec<u8>) -> Result<WordSpec> {
        check_symbols(r, &word, "prefix")?;
        if word.is_empty() {
            return Err(Error::argument("prefix must have length at least 1"));
        }
        Ok(WordSpec::Prefix { r, word })
    }

    pub fn r(&self) -> u8 {
        match self {
            WordSpec::Periodic { r, .. }
            | WordSpec::EventuallyPeriodic { r, .. }
            | WordSpec::Substitution { r, .. }
            | WordSpec::Prefix { r, .. } => *r,
        }
    }

    /// `(preperiod, period)` when the word has known periodic structure.
    pub fn periodic_structure(&self) -> Option<(usize, usize)> {
        match self {
            WordSpec::Periodic { cycle, .. } => Some((0, cycle.len())),
            WordSpec::EventuallyPeriodic { preperiod, cycle, .. } => {
                Some((preperiod.len(), cycle.len()))
            }
            _ => None,
        }
    }

    /// Length of the longest generable prefix, `None` when unbounded.
    pub fn available_len(&self) -> Option<usize> {
        match self {
            WordSpec::Periodic { .. } | WordSpec::EventuallyPeriodic { .. } => None,
            WordSpec::Substitution { .. } => Some(self.expand().len()),
            WordSpec::Prefix { word, .. } => Some(word.len()),
        }
    }

    fn expand(&self) -> Vec<u8> {
        match self {
            WordSpec::Substitution { rules, seed, depth, .. } => {
                let mut cur = seed.clone();
                for _ in 0..*depth {
                    let mut next = Vec::with_capacity(cur.len() * 2);
                    for &s in &cur {
                        next.extend_from_slice(&rules[s as usize - 1]);
                        if next.len() >= EXPANSION_CAP {
                            break;
                        }
                    }
                    next.truncate(EXPANSION_CAP);
                    cur = next;
                    if cur.len() >= EXPANSION_CAP {
                        break;
                    }
                }
                cur
            }
            _ => unreachable!("expand is only defined for substitutions"),
        }
    }

    /// The first `len` symbols; the flag reports truncation (the generator
    /// ran out before `len`).
    pub fn generate(&self, len: usize) -> (Vec<u8>, bool) {
        match self {
            WordSpec::Periodic { cycle, .. } => {
                ((0..len).map(|i| cycle[i % cycle.len()]).collect(), false)
            }
            WordSpec::EventuallyPeriodic { preperiod, cycle, .. } => {
                let w = (0..len)
                    .map(|i| {
                        if i < preperiod.len() {
                            preperiod[i]
                        } else {
                            cycle[(i - preperiod.len()) % cycle.len()]
                        }
                    })
                    .collect();
                (w, false)
            }
            WordSpec::Substitution { .. } => {
                let full = self.expand();
                let truncated = len > full.len();
                (full[..len.min(full.len())].to_vec(), truncated)
            }
            WordSpec::Prefix { word, .. } => {
                let truncated = len > word.len();
                (word[..len.min(word.len())].to_vec(), truncated)
            }
        }
    }
}

/// The distinct patterns read along one offset set.
#[derive(Clone, Debug)]
pub struct PatternTable {
    pub offsets: Vec<usize>,
    pub patterns: BTreeSet<Vec<u8>>,
    /// Length of the examined prefix.
    pub horizon: usize,
    /// Exact for (eventually) periodic specs with a sufficient horizon;
    /// otherwise the pattern set is a lower bound.
    pub exact: bool,
    /// The generator could not fill the requested horizon.
    pub truncated: bool,
}

impl PatternTable {
    pub fn count(&self) -> u64 {
        self.patterns.len() as u64
    }
}

fn check_offsets(offsets: &[usize]) -> Result<Vec<usize>> {
    if offsets.is_empty() {
        return Err(Error::argument("offset set must be nonempty"));
    }
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::argument(format!("duplicate offset {}", w[0])));
        }
    }
    Ok(sorted)
}

/// Enumerates the patterns of `offsets` over all shifts within the horizon.
/// With `horizon = None` a sufficient horizon is chosen automatically:
/// `preperiod + period + max(S)` for periodic specs (provably enough, since
/// patterns repeat with the period once past the preperiod), the full
/// available prefix otherwise.
pub fn pattern_count(
    spec: &WordSpec,
    offsets: &[usize],
    horizon: Option<usize>,
) -> Result<PatternTable> {
    let offsets = check_offsets(offsets)?;
    let max_s = *offsets.last().expect("nonempty");
    let sufficient = spec.periodic_structure().map(|(q, p)| q + p + max_s);
    let h = match horizon {
        Some(h) => {
            if h < max_s + 1 {
                return Err(Error::argument(format!(
                    "horizon {h} cannot accommodate offset {max_s}"
                )));
            }
            h
        }
        None => match sufficient {
            Some(h) => h,
            None => spec.available_len().expect("finite spec has a length"),
        },
    };
    let (word, truncated) = spec.generate(h);
    let mut patterns = BTreeSet::new();
    if word.len() > max_s {
        for m in 0..word.len() - max_s {
            patterns.insert(offsets.iter().map(|&s| word[m + s]).collect::<Vec<u8>>());
        }
    }
    let exact = match sufficient {
        Some(need) => !truncated && word.len() >= need,
        None => false,
    };
    Ok(PatternTable { offsets, patterns, horizon: word.len(), exact, truncated })
}

/// Options for the maximal-pattern-complexity search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest offset considered; `None` picks `preperiod + period` for
    /// periodic specs and a fixed cap otherwise.
    pub max_offset: Option<usize>,
    /// Maximum number of candidate offset sets examined.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_offset: None, budget: DEFAULT_PATTERN_BUDGET }
    }
}

/// One value of the complexity function together with its witness.
#[derive(Clone, Debug)]
pub struct PatternComplexity {
    pub n: usize,
    pub value: u64,
    pub witness: Vec<usize>,
    /// Exact for periodic specs fully enumerated; otherwise a lower bound.
    pub exact: bool,
    /// The candidate budget stopped the enumeration early.
    pub budget_hit: bool,
}

/// Exact maximum pattern count over all size-`n` offset sets within the
/// search range. For periodic specs with `n` exceeding the canonical offset
/// range the value saturates: extra offsets repeat existing residues, so the
/// full canonical set padded with equivalent offsets is a maximizer.
pub fn max_pattern_complexity(
    spec: &WordSpec,
    n: usize,
    opts: &SearchOptions,
) -> Result<PatternComplexity> {
    if n == 0 {
        return Err(Error::argument("pattern length must be at least 1"));
    }
    let periodic = spec.periodic_structure();
    let mut s_max = match opts.max_offset {
        Some(s) => s,
        None => match periodic {
            Some((q, p)) => q + p,
            None => {
                let avail = spec.available_len().expect("finite spec has a length");
                DEFAULT_OFFSET_CAP.min(avail.saturating_sub(1))
            }
        },
    };

    if n > s_max + 1 {
        match periodic {
            Some(_) => {
                // Saturation: offsets beyond the canonical range repeat the
                // residues inside it, so {0,..,n-1} contains the whole
                // canonical range and realises the saturated maximum.
                let witness: Vec<usize> = (0..n).collect();
                let table = pattern_count(spec, &witness, None)?;
                return Ok(PatternComplexity {
                    n,
                    value: table.count(),
                    witness,
                    exact: table.exact,
                    budget_hit: false,
                });
            }
            None => {
                let avail = spec.available_len().expect("finite spec has a length");
                if n > avail {
                    return Err(Error::argument(format!(
                        "pattern length {n} exceeds the available word length {avail}"
                    )));
                }
                s_max = n - 1;
            }
        }
    }

    // Generate once at the largest horizon any candidate needs.
    let horizon = match periodic {
        Some((q, p)) => q + p + s_max,
        None => spec.available_len().expect("finite spec has a length"),
    };
    let (word, _) = spec.generate(horizon);
    let shift_limit = |max_s: usize| -> usize {
        match periodic {
            Some((q, p)) => (q + p).min(word.len().saturating_sub(max_s)),
            None => word.len().saturating_sub(max_s),
        }
    };

    let r = spec.r() as u128;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut examined = 0u64;
    let completed = crate::binom::for_each_subset_of_size(s_max + 1, n, |s| {
        examined += 1;
        let max_s = *s.last().expect("n >= 1");
        let mut seen: BTreeSet<u128> = BTreeSet::new();
        for m in 0..shift_limit(max_s) {
            let mut code = 0u128;
            for &off in s {
                code = code * r + word[m + off] as u128;
            }
            seen.insert(code);
        }
        let count = seen.len() as u64;
        if best.as_ref().map_or(true, |(b, _)| count > *b) {
            best = Some((count, s.to_vec()));
        }
        examined < opts.budget
    });

    let (value, witness) = best.ok_or_else(|| {
        Error::argument(format!("no offset set of size {n} fits within max offset {s_max}"))
    })?;
    let budget_hit = !completed;
    Ok(PatternComplexity {
        n,
        value,
        witness,
        exact: periodic.is_some() && !budget_hit,
        budget_hit,
    })
}

/// The complexity function evaluated at `1..=n_max`.
#[derive(Clone, Debug)]
pub struct ComplexityProfile {
    pub r: u8,
    pub values: Vec<PatternComplexity>,
}

pub fn complexity_profile(
    spec: &WordSpec,
    n_max: usize,
    opts: &SearchOptions,
) -> Result<ComplexityProfile> {
    let values = (1..=n_max)
        .map(|n| max_pattern_complexity(spec, n, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexityProfile { r: spec.r(), values })
}

/// The growth alternative suggested by a finite profile.
#[derive(Clone, PartialEq, Debug)]
pub enum Alternative {
    /// `p*(n) = r^n` at every observed n.
    FullShift,
    /// `ell^n <= p*(n) <= n^c ell^n` on the observed range.
    PolynomiallyModulated { c: f64 },
    Undetermined,
}

impl Alternative {
    pub fn id(&self) -> &'static str {
        match self {
            Alternative::FullShift => "a",
            Alternative::PolynomiallyModulated { .. } => "b",
            Alternative::Undetermined => "undetermined",
        }
    }
}

/// A growth classification fitted to a finite profile. Estimating the base
/// of exponential growth from finitely many values is inherently heuristic;
/// the note says so.
#[derive(Clone, Debug)]
pub struct Classification {
    pub ell: u8,
    pub alternative: Alternative,
    pub note: &'static str,
}

const HEURISTIC_NOTE: &str =
    "growth base estimated from a finite profile; finite data cannot certify a limsup";

/// Classifies a profile: the growth base is the stabilised tail ratio, the
/// alternative is full growth when `p*(n) = r^n` throughout, otherwise the
/// smallest polynomial modulation consistent with the data.
pub fn classify_profile(profile: &ComplexityProfile) -> Result<Classification> {
    let r = profile.r;
    let values: Vec<u64> = profile.values.iter().map(|v| v.value).collect();
    if values.len() < 2 {
        return Err(Error::argument("classification needs a profile of length at least 2"));
    }
    for (i, w) in values.windows(2).enumerate() {
        if w[1] < w[0] {
            return Err(Error::invariant(format!(
                "profile is not nondecreasing at n={}: {} then {}",
                i + 1,
                w[0],
                w[1]
            )));
        }
        if w[1] > r as u64 * w[0] {
            return Err(Error::invariant(format!(
                "profile grows faster than r per step at n={}: {} then {}",
                i + 1,
                w[0],
                w[1]
            )));
        }
    }

    if values
        .iter()
        .enumerate()
        .all(|(i, &v)| v as u128 == (r as u128).pow(i as u32 + 1))
    {
        return Ok(Classification {
            ell: r,
            alternative: Alternative::FullShift,
            note: HEURISTIC_NOTE,
        });
    }

    // Tail ratios, rounded; they must agree to call a base.
    let tail = values.windows(2).rev().take(3);
    let mut rounded: Vec<u8> = Vec::new();
    for w in tail {
        let ratio = w[1] as f64 / w[0] as f64;
        rounded.push(ratio.round().clamp(1.0, r as f64) as u8);
    }
    let ell = rounded[0];
    if !rounded.iter().all(|&x| x == ell) {
        return Ok(Classification {
            ell,
            alternative: Alternative::Undetermined,
            note: HEURISTIC_NOTE,
        });
    }

    // The estimated base must lower-bound the data; otherwise refuse.
    let lower_ok = values
        .iter()
        .enumerate()
        .all(|(i, &v)| v as u128 >= (ell as u128).pow(i as u32 + 1));
    if !lower_ok {
        return Ok(Classification {
            ell,
            alternative: Alternative::Undetermined,
            note: HEURISTIC_NOTE,
        });
    }

    // Smallest c with p*(n) <= n^c ell^n over the observed n >= 2.
    let mut c: f64 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let n = i + 1;
        if n < 2 {
            continue;
        }
        let excess = (v as f64).ln() - (n as f64) * (ell as f64).ln();
        c = c.max(excess / (n as f64).ln());
    }
    Ok(Classification {
        ell,
        alternative: Alternative::PolynomiallyModulated { c: c.max(0.0) },
        note: HEURISTIC_NOTE,
    })
}

/// The pattern set of an offset window reinterpreted as a total class, for
/// feeding the dimension machinery.
pub fn class_from_windows(
    spec: &WordSpec,
    offsets: &[usize],
    horizon: Option<usize>,
) -> Result<(TotalClass, PatternTable)> {
    let table = pattern_count(spec, offsets, horizon)?;
    let class = TotalClass::new(
        spec.r(),
        table.offsets.len(),
        table.patterns.iter().map(|p| TotalFunction::new(p.clone())),
    )?;
    Ok((class, table))
}

/// A positional word containing every length-`n` window over `{1,..,r}`:
/// a de Bruijn sequence linearised by appending its first `n-1` symbols.
pub fn de_bruijn_word(r: u8, n: usize) -> Result<Vec<u8>> {
    if r < 2 || n == 0 {
        return Err(Error::argument("de Bruijn words need r >= 2 and n >= 1"));
    }
    match (r as u128).checked_pow(n as u32) {
        Some(size) if size <= EXPANSION_CAP as u128 => {}
        _ => {
            return Err(Error::resource(
                format!("de Bruijn word for r={r}, n={n} is too long"),
                EXPANSION_CAP as u64,
            ));
        }
    }
    fn db(t: usize, p: usize, k: u8, n: usize, a: &mut Vec<u8>, seq: &mut Vec<u8>) {
        if t > n {
            if n % p == 0 {
                seq.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            db(t + 1, p, k, n, a, seq);
            for j in a[t - p] + 1..k {
                a[t] = j;
                db(t + 1, t, k, n, a, seq);
            }
        }
    }
    let mut a = vec![0u8; n + 1];
    let mut seq = Vec::new();
    db(1, 1, r, n, &mut a, &mut seq);
    let mut word: Vec<u8> = seq.into_iter().map(|s| s + 1).collect();
    for i in 0..n - 1 {
        word.push(word[i]);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per12() -> WordSpec {
        WordSpec::periodic(2, vec![1, 2]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(WordSpec::periodic(2, vec![]).is_err());
        assert!(WordSpec::periodic(2, vec![3]).is_err());
        assert!(WordSpec::substitution(2, vec![vec![1, 2]], vec![1], 3).is_err());
        assert!(WordSpec::substitution(2, vec![vec![1, 2], vec![]], vec![1], 3).is_err());
        assert!(WordSpec::prefix(2, vec![]).is_err());
        assert!(WordSpec::eventually_periodic(2, vec![1], vec![]).is_err());
    }

    #[test]
    fn pattern_count_alternating_pair() {
        let t = pattern_count(&per12(), &[0, 1], None).unwrap();
        assert_eq!(t.count(), 2);
        assert!(t.patterns.contains(&vec![1, 2]));
        assert!(t.patterns.contains(&vec![2, 1]));
        assert!(t.exact);
    }

    #[test]
    fn pattern_count_constant_word() {
        let w = WordSpec::periodic(2, vec![1]).unwrap();
        for offsets in [vec![0], vec![0, 1, 2], vec![1, 5]] {
            assert_eq!(pattern_count(&w, &offsets, None).unwrap().count(), 1);
        }
    }

    #[test]
    fn pattern_count_rejects_bad_inputs() {
        assert!(pattern_count(&per12(), &[], None).is_err());
        assert!(pattern_count(&per12(), &[0, 0], None).is_err());
        assert!(pattern_count(&per12(), &[0, 5], Some(3)).is_err());
    }

    #[test]
    fn prefix_spec_truncation_is_flagged() {
        let w = WordSpec::prefix(2, vec![1, 2, 1]).unwrap();
        let t = pattern_count(&w, &[0, 1], Some(10)).unwrap();
        assert!(t.truncated);
        assert!(!t.exact);
        assert_eq!(t.count(), 2);
    }

    #[test]
    fn de_bruijn_words_contain_all_windows() {
        for (r, ns) in [(2u8, 1..=6usize), (3u8, 1..=4usize)] {
            for n in ns {
                let w = de_bruijn_word(r, n).unwrap();
                assert_eq!(w.len(), (r as usize).pow(n as u32) + n - 1);
                let mut windows = BTreeSet::new();
                for m in 0..=w.len() - n {
                    windows.insert(w[m..m + n].to_vec());
                }
                assert_eq!(windows.len(), (r as usize).pow(n as u32));
            }
        }
    }

    #[test]
    fn full_shift_certificate_hits_maximum() {
        let word = de_bruijn_word(2, 4).unwrap();
        let spec = WordSpec::prefix(2, word).unwrap();
        let t = pattern_count(&spec, &[0, 1, 2, 3], None).unwrap();
        assert_eq!(t.count(), 16);
    }

    #[test]
    fn pstar_of_alternating_word_is_two_for_all_n() {
        for n in 1..=5 {
            let res = max_pattern_complexity(&per12(), n, &SearchOptions::default()).unwrap();
            assert_eq!(res.value, 2, "n={n}");
            assert!(res.exact);
            assert_eq!(res.witness.len(), n);
            // Witness offsets are distinct.
            let mut w = res.witness.clone();
            w.dedup();
            assert_eq!(w.len(), n);
        }
    }

    #[test]
    fn pstar_bounded_by_period() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let p = rng.gen_range(1..=5);
            let r = rng.gen_range(2..=3);
            let cycle: Vec<u8> = (0..p).map(|_| rng.gen_range(1..=r)).collect();
            let spec = WordSpec::periodic(r, cycle).unwrap();
            for n in 1..=4 {
                let res = max_pattern_complexity(&spec, n, &SearchOptions::default()).unwrap();
                assert!(res.value <= p as u64);
            }
        }
    }

    #[test]
    fn pstar_112_hand_values() {
        let spec = WordSpec::periodic(2, vec![1, 1, 2]).unwrap();
        let p1 = max_pattern_complexity(&spec, 1, &SearchOptions::default()).unwrap();
        assert_eq!(p1.value, 2);
        // Offsets {0,1} read (1,1),(1,2),(2,1): three patterns, and no pair
        // does better within the period bound.
        let p2 = max_pattern_complexity(&spec, 2, &SearchOptions::default()).unwrap();
        assert_eq!(p2.value, 3);
        assert!(p2.exact);
    }

    #[test]
    fn contiguous_window_is_dominated_by_pstar() {
        let spec = WordSpec::periodic(3, vec![1, 2, 2, 3]).unwrap();
        for n in 1..=4usize {
            let window: Vec<usize> = (0..n).collect();
            let count = pattern_count(&spec, &window, None).unwrap().count();
            let star = max_pattern_complexity(&spec, n, &SearchOptions::default()).unwrap();
            assert!(count <= star.value);
        }
    }

    #[test]
    fn profile_is_monotone_and_ratio_bounded() {
        let spec = WordSpec::periodic(3, vec![1, 2, 3, 2]).unwrap();
        let profile = complexity_profile(&spec, 5, &SearchOptions::default()).unwrap();
        let vals: Vec<u64> = profile.values.iter().map(|v| v.value).collect();
        for w in vals.windows(2) {
            assert!(w[1] >= w[0]);
            assert!(w[1] <= 3 * w[0]);
        }
        // Classification must accept any real profile.
        classify_profile(&profile).unwrap();
    }

    #[test]
    fn classify_full_shift_and_periodic_and_constant() {
        // Full shift certificate: alternative (a) with base r.
        let word = de_bruijn_word(2, 6).unwrap();
        let spec = WordSpec::prefix(2, word).unwrap();
        let profile = complexity_profile(&spec, 6, &SearchOptions::default()).unwrap();
        let cls = classify_profile(&profile).unwrap();
        assert_eq!(cls.ell, 2);
        assert_eq!(cls.alternative.id(), "a");

        // Alternating word: base 1, polynomially modulated.
        let profile = complexity_profile(&per12(), 5, &SearchOptions::default()).unwrap();
        let cls = classify_profile(&profile).unwrap();
        assert_eq!(cls.ell, 1);
        match cls.alternative {
            Alternative::PolynomiallyModulated { c } => assert!(c <= 1.0 + 1e-9),
            other => panic!("expected alternative b, got {other:?}"),
        }

        // Constant word: base 1, c = 0.
        let spec = WordSpec::periodic(2, vec![1]).unwrap();
        let profile = complexity_profile(&spec, 4, &SearchOptions::default()).unwrap();
        let cls = classify_profile(&profile).unwrap();
        assert_eq!(cls.ell, 1);
        match cls.alternative {
            Alternative::PolynomiallyModulated { c } => assert!(c.abs() < 1e-9),
            other => panic!("expected alternative b, got {other:?}"),
        }
    }

    #[test]
    fn classify_rejects_corrupt_profiles() {
        let fake = |vals: &[u64]| ComplexityProfile {
            r: 2,
            values: vals
                .iter()
                .enumerate()
                .map(|(i, &v)| PatternComplexity {
                    n: i + 1,
                    value: v,
                    witness: (0..=i).collect(),
                    exact: true,
                    budget_hit: false,
                })
                .collect(),
        };
        assert!(matches!(
            classify_profile(&fake(&[3, 2, 2])),
            Err(Error::Invariant(_))
        ));
        assert!(matches!(
            classify_profile(&fake(&[1, 3, 3])),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn window_class_matches_pattern_table() {
        let (class, table) = class_from_windows(&per12(), &[0, 1, 2], None).unwrap();
        assert_eq!(class.len() as u64, table.count());
        assert_eq!(class.len(), 2);
        let members: Vec<Vec<u8>> =
            class.members().iter().map(|m| m.values().to_vec()).collect();
        assert_eq!(members, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        // Degenerate product dimension is the arity; pairs only reach
        // singleton products.
        assert_eq!(crate::natarajan::natarajan_dim(&class, 1).unwrap(), 3);
        assert_eq!(crate::natarajan::natarajan_dim(&class, 2).unwrap(), 1);
    }

    #[test]
    fn full_shift_window_class_has_full_dimension() {
        let word = de_bruijn_word(2, 3).unwrap();
        let spec = WordSpec::prefix(2, word).unwrap();
        let (class, _) = class_from_windows(&spec, &[0, 1, 2], None).unwrap();
        assert_eq!(class.len(), 8);
        assert_eq!(crate::natarajan::natarajan_dim(&class, 2).unwrap(), 3);
    }

    #[test]
    fn substitution_expansion_and_flags() {
        // 1 -> 12, 2 -> 1 from seed 1: 1, 12, 121, 12112, 12112121, ...
        let spec = WordSpec::substitution(2, vec![vec![1, 2], vec![1]], vec![1], 5).unwrap();
        let (w, truncated) = spec.generate(8);
        assert_eq!(w, vec![1, 2, 1, 1, 2, 1, 2, 1]);
        assert!(!truncated);
        assert_eq!(spec.available_len(), Some(13));

        let res = max_pattern_complexity(&spec, 2, &SearchOptions::default()).unwrap();
        assert!(!res.exact, "substitution counts are lower bounds");
        assert!(res.value >= 3);
    }

    #[test]
    fn budget_stops_are_flagged_not_silent() {
        let word = de_bruijn_word(2, 5).unwrap();
        let spec = WordSpec::prefix(2, word).unwrap();
        let opts = SearchOptions { max_offset: Some(12), budget: 5 };
        let res = max_pattern_complexity(&spec, 3, &opts).unwrap();
        assert!(res.budget_hit);
        assert!(!res.exact);
    }
}
