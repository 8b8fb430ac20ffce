//! Closed-form bound evaluation with exact big-integer arithmetic.
//!
//! Thresholds of the form `log_b(sum)` are computed in floating point with a
//! guard: when the threshold is within 1e-9 of an integer, the larger of the
//! two floor candidates is used, so exact powers never flip the reported
//! bound through rounding noise.

use num_bigint::BigUint;

use crate::binom::{binomial_sum, log_big};
use crate::error::{Error, Result};

/// Which right-hand side a report evaluates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Formula {
    /// Covering-number bound `C(H) <= binom(n, <= log_{r/(r-1)} binom(n, <= d))`.
    Comb,
    /// Covering-number bound `C(H) <= r^2 2^m (n/m)^{2m}`,
    /// `m = log_{(r+1)/r} binom(n, <= d) + 1`.
    Hy,
    /// Cardinality bound for classes of bounded k-Natarajan dimension.
    Natarajan,
}

impl Formula {
    pub fn id(self) -> &'static str {
        match self {
            Formula::Comb => "comb",
            Formula::Hy => "hy",
            Formula::Natarajan => "natarajan",
        }
    }
}

/// The value of an evaluated right-hand side.
#[derive(Clone, PartialEq, Debug)]
pub enum BoundValue {
    /// Exact big-integer value (integer-valued formulas).
    Exact(BigUint),
    /// Floating-point value (formulas with real exponents).
    Approx(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(v) => {
                if v.bits() <= 1000 {
                    log_big(v).exp()
                } else {
                    f64::INFINITY
                }
            }
            BoundValue::Approx(x) => *x,
        }
    }
}

/// An evaluated bound: parameters, the real threshold before rounding, and
/// the right-hand-side value.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u64,
    pub r: u8,
    pub d: u64,
    pub k: Option<u8>,
    /// The real-valued exponent/threshold appearing in the formula.
    pub threshold: f64,
    pub value: BoundValue,
    pub formula: Formula,
    /// Caveats the caller must surface (e.g. unchecked side conditions).
    pub notes: Vec<String>,
}

/// `binom(n, <= x)` for a real cutoff: the integer-indexed sum is truncated
/// at `floor(x)`, except that cutoffs within 1e-9 of an integer round to it
/// (the larger candidate), and the cutoff saturates at `n`.
pub fn binomial_sum_real_cutoff(n: u64, x: f64) -> BigUint {
    let cutoff = real_cutoff(x);
    binomial_sum(n, cutoff.min(n))
}

fn real_cutoff(x: f64) -> u64 {
    if x <= 0.0 {
        return 0;
    }
    let rounded = x.round();
    if (x - rounded).abs() < 1e-9 {
        rounded as u64
    } else {
        x.floor() as u64
    }
}

fn check_params(n: u64, r: u8, d: u64) -> Result<()> {
    if r < 2 {
        return Err(Error::argument(format!("alphabet size must be at least 2, got {r}")));
    }
    if d < 1 || n < d {
        return Err(Error::argument(format!("parameters must satisfy n >= d >= 1, got n={n}, d={d}")));
    }
    Ok(())
}

/// `binom(n, <= log_{r/(r-1)} binom(n, <= d))` in exact integer arithmetic.
pub fn comb_bound(n: u64, r: u8, d: u64) -> Result<BoundReport> {
    check_params(n, r, d)?;
    let inner = binomial_sum(n, d);
    let base = (r as f64) / (r as f64 - 1.0);
    let m = log_big(&inner) / base.ln();
    let rhs = binomial_sum_real_cutoff(n, m);
    Ok(BoundReport {
        n,
        r,
        d,
        k: None,
        threshold: m,
        value: BoundValue::Exact(rhs),
        formula: Formula::Comb,
        notes: Vec::new(),
    })
}

/// `r^2 * 2^m * (n/m)^{2m}` with `m = log_{(r+1)/r} binom(n, <= d) + 1`,
/// evaluated numerically. The theorem's side condition involves unspecified
/// constants, so it is flagged rather than enforced.
pub fn hy_bound(n: u64, r: u8, d: u64) -> Result<BoundReport> {
    check_params(n, r, d)?;
    let inner = binomial_sum(n, d);
    let base = (r as f64 + 1.0) / r as f64;
    let m = log_big(&inner) / base.ln() + 1.0;
    let rhs = (r as f64).powi(2) * 2f64.powf(m) * (n as f64 / m).powf(2.0 * m);
    Ok(BoundReport {
        n,
        r,
        d,
        k: None,
        threshold: m,
        value: BoundValue::Approx(rhs),
        formula: Formula::Hy,
        notes: vec![
            "side condition n >= max(d*C_r, D_r) not enforced: the constants are unspecified"
                .to_string(),
        ],
    })
}
