use serde::Serialize;

use crate::degree::Degree;

/// Dimensions of a graded vector space in degrees `0..=reliable_up_to`.
/// Degrees past the reliable range are absent, not zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedDims {
    dims: Vec<usize>,
    reliable_up_to: Degree,
}

impl GradedDims {
    pub fn new(dims: Vec<usize>) -> Self {
        let reliable_up_to = match dims.len() {
            0 => Degree::NegInf,
            l => Degree::finite(l - 1),
        };
        GradedDims { dims, reliable_up_to }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn get(&self, n: usize) -> Option<usize> {
        self.dims.get(n).copied()
    }

    pub fn reliable_up_to(&self) -> Degree {
        self.reliable_up_to
    }

    /// Number of reliable degrees.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Largest degree with a nonzero entry.
    pub fn top_degree(&self) -> Degree {
        Degree::max_of(
            self.dims
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(n, _)| n as i64),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The entries in degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        GradedDims::new(self.dims[..self.dims.len().min(n + 1)].to_vec())
    }
}
