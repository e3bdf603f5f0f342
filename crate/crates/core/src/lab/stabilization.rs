use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::module::{Submodule, TruncatedModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// Smallest `n₀` with `ι_n^{-1}(V_{n+1}) = V_n` for all `n₀ ≤ n < N`;
    /// `None` when the last checked degree still fails.
    pub degree: Option<usize>,
    /// Every `n < N` where the equality fails.
    pub failures: Vec<usize>,
    pub checked_below: usize,
}

/// Where `V_{n+1} ∩ W_n = V_n` starts to hold for a submodule `V` of a
/// torsion-free `W`, with `W_n` viewed inside `W_{n+1}` through `ι`.
pub fn intersection_stabilization<F: Field>(w: &TruncatedModule<F>, v: &Submodule<F>) -> Result<Stabilization> {
    let f = w.field();
    let top = w.reliable_up_to().min(w.truncation());
    if v.spaces().len() != w.truncation() + 1 {
        return Err(Error::InvalidSubmodule("shape does not match the module".into()));
    }
    if let Some(n) = (0..top).find(|&n| w.iota(n).rank(f) < w.dim(n)) {
        return Err(Error::Unsupported(format!("the ambient module has torsion in degree {n}")));
    }
    let failures: Vec<usize> = (0..top)
        .filter(|&n| v.space(n + 1).preimage_under(f, w.iota(n)) != *v.space(n))
        .collect();
    let degree = match failures.last() {
        None => Some(0),
        Some(&n) if n + 1 < top => Some(n + 1),
        Some(_) => None,
    };
    Ok(Stabilization {
        degree,
        failures,
        checked_below: top,
    })
}
