//! Frozen-LQFI diagnostic for gamma sweeps: the widest window where LQFI
//! barely moves while negativity drops substantially.

use serde::{Deserialize, Serialize};

use super::sweep::SweepRow;

pub const LQFI_FLAT_REL: f64 = 0.05;
pub const NEGATIVITY_MOVE_REL: f64 = 0.20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrozenWindow {
    pub series: String,
    pub from: f64,
    pub to: f64,
    pub lqfi_rel_change: f64,
    pub negativity_rel_change: f64,
}

/// `(max - min) / max`, zero for an identically zero window.
fn rel_spread(lo: f64, hi: f64) -> f64 {
    if hi > 0.0 {
        (hi - lo) / hi
    } else {
        0.0
    }
}

/// One entry per series that has a qualifying window. Rows of a series must
/// be contiguous with the variable ascending, as `run_sweep` returns them.
pub fn frozen_lqfi(rows: &[SweepRow]) -> Vec<FrozenWindow> {
    let mut out = Vec::new();
    for group in rows.chunk_by(|a, b| a.series == b.series) {
        let mut best: Option<FrozenWindow> = None;
        for i in 0..group.len() {
            let (mut q_lo, mut q_hi) = (group[i].lqfi, group[i].lqfi);
            let (mut n_lo, mut n_hi) = (group[i].negativity, group[i].negativity);
            for j in i + 1..group.len() {
                q_lo = q_lo.min(group[j].lqfi);
                q_hi = q_hi.max(group[j].lqfi);
                n_lo = n_lo.min(group[j].negativity);
                n_hi = n_hi.max(group[j].negativity);
                let q_rel = rel_spread(q_lo, q_hi);
                if q_rel >= LQFI_FLAT_REL {
                    break;
                }
                let n_rel = rel_spread(n_lo, n_hi);
                let width = group[j].variable - group[i].variable;
                let wider = best.as_ref().is_none_or(|b| width > b.to - b.from);
                if n_rel > NEGATIVITY_MOVE_REL && wider {
                    best = Some(FrozenWindow {
                        series: group[i].series.clone(),
                        from: group[i].variable,
                        to: group[j].variable,
                        lqfi_rel_change: q_rel,
                        negativity_rel_change: n_rel,
                    });
                }
            }
        }
        out.extend(best);
    }
    out
}
