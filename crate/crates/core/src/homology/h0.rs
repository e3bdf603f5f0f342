use super::GradedDims;
use crate::degree::Degree;
use crate::linalg::{Field, Subspace};
use crate::module::{close_under, push_forward, ModuleElement, Submodule, TruncatedModule};

/// `H₀(V) = V/𝔪V` with lifts to `V` of a basis in each degree.
#[derive(Clone, Debug)]
pub struct H0<F: Field> {
    pub dims: GradedDims,
    /// Standard basis vectors of `V_n` at the non-pivot coordinates of
    /// `(𝔪V)_n`; their classes form a basis of `H₀(V)_n`.
    pub lifts: Vec<ModuleElement<F>>,
    pub decomposables: Submodule<F>,
}

/// `𝔪V`, in degrees `0..=N`.
pub fn decomposables<F: Field>(v: &TruncatedModule<F>) -> Submodule<F> {
    let f = v.field();
    let mut spaces = vec![Subspace::zero(f, v.dim(0))];
    for n in 1..=v.truncation() {
        spaces.push(push_forward(v, n - 1, &Subspace::full(f, v.dim(n - 1))));
    }
    Submodule::from_spaces(spaces)
}

pub fn h0<F: Field>(v: &TruncatedModule<F>) -> H0<F> {
    let mv = decomposables(v);
    let top = v.reliable_up_to().min(v.truncation());
    let mut dims = Vec::with_capacity(top + 1);
    let mut lifts = Vec::new();
    for n in 0..=top {
        let free = mv.space(n).non_pivots();
        dims.push(free.len());
        lifts.extend(free.into_iter().map(|c| ModuleElement::basis(v, n, c)));
    }
    H0 {
        dims: GradedDims::new(dims),
        lifts,
        decomposables: mv,
    }
}

/// `gd(V)` within the reliable range.
pub fn gd<F: Field>(v: &TruncatedModule<F>) -> Degree {
    h0(v).dims.top_degree()
}

/// `td(V)`: the largest `n` with `ker(ι_n) ≠ 0`, within the reliable range.
pub fn td<F: Field>(v: &TruncatedModule<F>) -> Degree {
    let f = v.field();
    let top = v.reliable_up_to().min(v.truncation());
    Degree::max_of(
        (0..top)
            .filter(|&n| v.dim(n) > 0 && v.iota(n).rank(f) < v.dim(n))
            .map(|n| n as i64),
    )
}

/// Lifts whose `G_n`-orbits generate `H₀(V)_n` as a `kG_n`-module, chosen
/// greedily from [`H0::lifts`]. They generate `V`.
pub fn module_generators<F: Field>(v: &TruncatedModule<F>) -> Vec<ModuleElement<F>> {
    let f = v.field();
    let h = h0(v);
    let mut chosen = Vec::new();
    let mut current: Option<(usize, Subspace<F>)> = None;
    for x in h.lifts {
        let n = x.degree;
        let span = match current.take() {
            Some((m, s)) if m == n => s,
            _ => h.decomposables.space(n).clone(),
        };
        let span = if span.contains(f, &x.coords) {
            span
        } else {
            let grown = close_under(f, span, vec![x.coords.as_slice()], v.actions(n));
            chosen.push(x);
            grown
        };
        current = Some((n, span));
    }
    chosen
}
