//! Sums `a + h'(c+1) + ... + h'(c+b)` with bounded `a` and `c`.
//!
//! `e` is representable for `(u, h')` when `e - 1` has that form with
//! `c <= u` and `a <= max{h'(1), ..., h'(u)}` (the empty max is 0). `h'` is
//! `h` itself or, for even `h`, `h / 2`.

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::generators::GrowthFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// `h' = h`
    Unit,
    /// `h' = h / 2`; needs `h` even.
    Half,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentabilityQuery {
    pub e: u64,
    pub u: u64,
    pub h: GrowthFunction,
    pub scale: Scale,
}

/// `e - 1 = a + sum_{p=1}^{b} h'(c + p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// `h'` after checking the scale's precondition.
pub fn scaled(h: &GrowthFunction, scale: Scale) -> Result<impl Fn(u64) -> u64 + '_, SearchError> {
    if scale == Scale::Half {
        h.require_even()?;
    }
    Ok(move |n: u64| match scale {
        Scale::Unit => h.eval(n),
        Scale::Half => h.eval(n) / 2,
    })
}

fn a_max(hs: &impl Fn(u64) -> u64, u: u64) -> u64 {
    (1..=u).map(hs).max().unwrap_or(0)
}

/// The first witness in the order `c = 0, 1, ...`, then `b = 0, 1, ...`.
pub fn representable(q: &RepresentabilityQuery) -> Result<Option<Witness>, SearchError> {
    if q.e == 0 {
        return Err(SearchError::InvalidInput("e must be positive".into()));
    }
    let hs = scaled(&q.h, q.scale)?;
    let target = q.e - 1;
    let a_max = a_max(&hs, q.u);
    for c in 0..=q.u {
        let (mut b, mut sum) = (0u64, 0u64);
        while sum <= target {
            if target - sum <= a_max {
                return Ok(Some(Witness { a: target - sum, b, c }));
            }
            b += 1;
            sum += hs(c + b);
        }
    }
    Ok(None)
}

/// The least `e >= 1` that is not representable. Sieves values of `e - 1`
/// below a limit that doubles until a gap appears or passes `cap`.
pub fn least_nonrepresentable(u: u64, h: &GrowthFunction, scale: Scale, cap: u64) -> Result<u64, SearchError> {
    h.require_divergent()?;
    let hs = scaled(h, scale)?;
    let a_max = a_max(&hs, u);
    let mut limit: u64 = 64;
    loop {
        let len = limit as usize;
        // covered[x] > 0 iff some form equals x; built from range increments.
        let mut delta = vec![0i64; len + 1];
        for c in 0..=u {
            let (mut b, mut sum) = (0u64, 0u64);
            while sum < limit {
                let hi = (sum + a_max).min(limit - 1);
                delta[sum as usize] += 1;
                delta[hi as usize + 1] -= 1;
                b += 1;
                sum += hs(c + b);
            }
        }
        let mut running = 0;
        for (x, d) in delta.iter().take(len).enumerate() {
            running += d;
            if running == 0 {
                return Ok(x as u64 + 1);
            }
        }
        if limit > cap {
            return Err(SearchError::CapExceeded { cap });
        }
        limit = limit.saturating_mul(2);
    }
}

/// Block lengths of the sequence built directly from the bound: the `k`-th
/// block is `M^e F` with `e` the least non-representable value for
/// `u = |s| + k`, where `s` is everything emitted before it.
pub fn formula_blocks_carlson(h: &GrowthFunction, n_blocks: usize, cap: u64) -> Result<Vec<u64>, SearchError> {
    let mut len = 0u64;
    let mut out = Vec::with_capacity(n_blocks);
    for k in 1..=n_blocks as u64 {
        let e = least_nonrepresentable(len + k, h, Scale::Unit, cap)?;
        out.push(e);
        len += e + 1;
    }
    Ok(out)
}
