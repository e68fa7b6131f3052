use serde::{Deserialize, Serialize};

use super::{check_layer, CodeblockLayout, Gate};
use crate::error::Result;

/// Integer bound value. `saturated` marks results clamped at `u64::MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: u64,
    pub saturated: bool,
}

impl Bound {
    fn exact(value: u64) -> Self {
        Self { value, saturated: false }
    }

    const SATURATED: Bound = Bound {
        value: u64::MAX,
        saturated: true,
    };

    /// True when the bound is strictly below `d`.
    pub fn below(&self, d: usize) -> bool {
        !self.saturated && self.value < d as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Layered,
    Consecutive,
}

/// `c^(h-1) · r^h`; a circuit without layers gives 1.
pub fn layered_bound(c: usize, r: usize, h: usize) -> Bound {
    if h == 0 {
        return Bound::exact(1);
    }
    let pow = |base: usize, e: usize| -> Option<u64> { (base as u64).checked_pow(u32::try_from(e).ok()?) };
    match (pow(c, h - 1), pow(r, h)) {
        (Some(a), Some(b)) => a.checked_mul(b).map_or(Bound::SATURATED, Bound::exact),
        _ => Bound::SATURATED,
    }
}

/// `h · r`, never below 1 since the starting qubit is always in the support.
pub fn consecutive_bound(h: usize, r: usize) -> Bound {
    (h as u64)
        .checked_mul(r as u64)
        .map_or(Bound::SATURATED, |v| Bound::exact(v.max(1)))
}

/// Strict biased-noise inequality for the chosen bound:
/// `d_z · c^(h-1) r^h < d_x` or `(d_z - 1) + h r < d_x`.
pub fn biased_bound_ok(d_z: usize, d_x: usize, mode: BoundMode, c: usize, r: usize, h: usize) -> bool {
    let (d_z, d_x) = (d_z as u128, d_x as u128);
    match mode {
        BoundMode::Layered => {
            let b = layered_bound(c, r, h);
            !b.saturated && d_z.saturating_mul(b.value as u128) < d_x
        }
        BoundMode::Consecutive => {
            let b = consecutive_bound(h, r);
            !b.saturated && d_z.saturating_sub(1) + (b.value as u128) < d_x
        }
    }
}

/// Number of qubits of `support` inside each block.
pub fn per_block_support(support: &[usize], layout: &CodeblockLayout) -> Vec<usize> {
    let mut counts = vec![0; layout.num_blocks()];
    for &q in support {
        if let Some(m) = layout.block_of(q) {
            counts[m] += 1;
        }
    }
    counts
}

/// Smallest `r` for which the per-gate partition of `layer` is r-transversal.
/// Untouched qubits form singleton sets, so the result is at least 1.
pub fn minimal_r(layer: &[Gate], layout: &CodeblockLayout) -> Result<usize> {
    check_layer(layer, layout.n_total())?;
    Ok(layer
        .iter()
        .flat_map(|g| per_block_support(g.support(), layout))
        .max()
        .unwrap_or(0)
        .max(1))
}

pub fn is_r_transversal_layer(layer: &[Gate], layout: &CodeblockLayout, r: usize) -> Result<bool> {
    Ok(minimal_r(layer, layout)? <= r)
}
