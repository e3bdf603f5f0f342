use super::truncated::{ModuleElement, TruncatedModule};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

/// A degreewise family of subspaces `W_n ⊆ V_n` of a fixed module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule<F: Field> {
    spaces: Vec<Subspace<F>>,
}

impl<F: Field> Submodule<F> {
    pub fn from_spaces(spaces: Vec<Subspace<F>>) -> Self {
        Submodule { spaces }
    }

    pub fn zero(module: &TruncatedModule<F>) -> Self {
        let f = module.field();
        Submodule {
            spaces: module.dims().iter().map(|&d| Subspace::zero(f, d)).collect(),
        }
    }

    pub fn full(module: &TruncatedModule<F>) -> Self {
        let f = module.field();
        Submodule {
            spaces: module.dims().iter().map(|&d| Subspace::full(f, d)).collect(),
        }
    }

    /// Smallest submodule containing `gens`: in each degree, the images of
    /// the previous degree under all order-preserving injections plus the
    /// generators of that degree, closed under `G_n`.
    pub fn span(module: &TruncatedModule<F>, gens: &[ModuleElement<F>]) -> Result<Self> {
        let f = module.field();
        for g in gens {
            module.check_degree(g.degree)?;
            if g.coords.len() != module.dim(g.degree) {
                return Err(Error::InvalidModule("generator has the wrong length".into()));
            }
        }
        let mut spaces: Vec<Subspace<F>> = Vec::with_capacity(module.truncation() + 1);
        for n in 0..=module.truncation() {
            let base = if n == 0 {
                Subspace::zero(f, module.dim(0))
            } else {
                push_forward(module, n - 1, &spaces[n - 1])
            };
            let new: Vec<&[F::Elem]> = gens
                .iter()
                .filter(|g| g.degree == n)
                .map(|g| g.coords.as_slice())
                .collect();
            spaces.push(close_under(f, base, new, module.actions(n)));
        }
        Ok(Submodule { spaces })
    }

    pub fn spaces(&self) -> &[Subspace<F>] {
        &self.spaces
    }

    pub fn space(&self, n: usize) -> &Subspace<F> {
        &self.spaces[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn contains(&self, field: &F, v: &ModuleElement<F>) -> bool {
        self.spaces[v.degree].contains(field, &v.coords)
    }

    pub fn is_subset_of(&self, field: &F, other: &Self) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.is_subspace_of(field, b))
    }

    pub fn sum(&self, field: &F, other: &Self) -> Result<Self> {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.sum(field, b))
            .collect::<Result<_>>()?;
        Ok(Submodule { spaces })
    }

    pub fn intersect(&self, field: &F, other: &Self) -> Result<Self> {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.intersect(field, b))
            .collect::<Result<_>>()?;
        Ok(Submodule { spaces })
    }

    /// Whether the family is stable under `ι` and every generator action.
    pub fn is_stable(&self, module: &TruncatedModule<F>) -> bool {
        self.first_instability(module).is_none()
    }

    fn first_instability(&self, module: &TruncatedModule<F>) -> Option<String> {
        let f = module.field();
        for n in 0..=module.truncation() {
            let basis = self.spaces[n].basis();
            if basis.rows() == 0 {
                continue;
            }
            for (i, a) in module.actions(n).iter().enumerate() {
                let img = a.apply_to_rows(f, basis);
                if !img.row_iter().all(|r| self.spaces[n].contains(f, r)) {
                    return Some(format!("degree {n} is not stable under generator {i}"));
                }
            }
            if n < module.truncation() {
                let img = module.iota(n).apply_to_rows(f, basis);
                if !img.row_iter().all(|r| self.spaces[n + 1].contains(f, r)) {
                    return Some(format!("ι_{n} leaves the family"));
                }
            }
        }
        None
    }

    pub(crate) fn check_stable(&self, module: &TruncatedModule<F>) -> Result<()> {
        if self.spaces.len() != module.truncation() + 1
            || self.spaces.iter().zip(module.dims()).any(|(s, &d)| s.ambient() != d)
        {
            return Err(Error::InvalidSubmodule("shape does not match the module".into()));
        }
        match self.first_instability(module) {
            None => Ok(()),
            Some(m) => Err(Error::InvalidSubmodule(m)),
        }
    }

    /// `𝔪^i W`. `(𝔪W)_n` is spanned by the images of `W_{n-1}` under all
    /// morphisms `[n-1] -> [n]`.
    pub fn m_multiply(&self, module: &TruncatedModule<F>, i: usize) -> Self {
        let f = module.field();
        let mut current = self.clone();
        for _ in 0..i {
            let mut spaces = vec![Subspace::zero(f, module.dim(0))];
            for n in 1..=module.truncation() {
                spaces.push(push_forward(module, n - 1, &current.spaces[n - 1]));
            }
            current = Submodule { spaces };
        }
        current
    }

    /// The submodule with its induced structure, and the inclusion maps
    /// (`V_n`-coordinates of the echelon basis as columns).
    pub(crate) fn to_module(&self, module: &TruncatedModule<F>) -> (TruncatedModule<F>, Vec<Matrix<F>>) {
        let f = module.field();
        let restrict = |a: &Matrix<F>, from: usize, to: usize| -> Matrix<F> {
            let img = a.apply_to_rows(f, self.spaces[from].basis());
            img.select_cols(self.spaces[to].pivots()).transpose()
        };
        let dims: Vec<usize> = self.dims();
        let iota = (0..module.truncation())
            .map(|n| restrict(module.iota(n), n, n + 1))
            .collect();
        let actions = (0..=module.truncation())
            .map(|n| module.actions(n).iter().map(|a| restrict(a, n, n)).collect())
            .collect();
        let inclusion = self.spaces.iter().map(|s| s.basis().transpose()).collect();
        let sub = TruncatedModule::from_parts(f.clone(), module.group().clone(), dims, iota, actions)
            .with_reliable_up_to(module.reliable_up_to());
        (sub, inclusion)
    }

    /// `V / W` with its induced structure and the projection maps. The
    /// quotient of `V_n` has the non-pivot coordinates of `W_n` as basis.
    pub(crate) fn quotient_of(&self, module: &TruncatedModule<F>) -> (TruncatedModule<F>, Vec<Matrix<F>>) {
        let f = module.field();
        let non_pivots: Vec<Vec<usize>> = self.spaces.iter().map(Subspace::non_pivots).collect();
        let induce = |a: &Matrix<F>, from: usize, to: usize| -> Matrix<F> {
            let cols = a.transpose().select_rows(&non_pivots[from]);
            let rows = cols
                .row_iter()
                .map(|c| self.spaces[to].quotient_coords(f, c, &non_pivots[to]))
                .collect();
            Matrix::from_rows(non_pivots[to].len(), rows).transpose()
        };
        let dims: Vec<usize> = non_pivots.iter().map(Vec::len).collect();
        let iota = (0..module.truncation())
            .map(|n| induce(module.iota(n), n, n + 1))
            .collect();
        let actions = (0..=module.truncation())
            .map(|n| module.actions(n).iter().map(|a| induce(a, n, n)).collect())
            .collect();
        let projection = (0..=module.truncation())
            .map(|n| projection_matrix(f, &self.spaces[n], &non_pivots[n]))
            .collect();
        let quotient = TruncatedModule::from_parts(f.clone(), module.group().clone(), dims, iota, actions)
            .with_reliable_up_to(module.reliable_up_to());
        (quotient, projection)
    }
}

/// `V_n -> V_n / W_n` in the non-pivot basis.
pub(crate) fn projection_matrix<F: Field>(field: &F, w: &Subspace<F>, non_pivots: &[usize]) -> Matrix<F> {
    let d = w.ambient();
    let mut p = Matrix::zeros(field, non_pivots.len(), d);
    for (k, &c) in non_pivots.iter().enumerate() {
        p.set(k, c, field.one());
    }
    for (i, &c) in w.pivots().iter().enumerate() {
        let row = w.basis().row(i);
        for (k, &np) in non_pivots.iter().enumerate() {
            if !field.is_zero(&row[np]) {
                p.set(k, c, field.neg(&row[np]));
            }
        }
    }
    p
}

/// Span in `V_{n+1}` of the images of `w ⊆ V_n` under every morphism
/// `[n] -> [n+1]`.
pub fn push_forward<F: Field>(module: &TruncatedModule<F>, n: usize, w: &Subspace<F>) -> Subspace<F> {
    let f = module.field();
    if w.is_zero() {
        return Subspace::zero(f, module.dim(n + 1));
    }
    Subspace::from_rows(f, module.skip_images(n, w.basis()))
}

/// Adds `new` to the `ops`-stable subspace `base` and closes under `ops`.
pub fn close_under<F: Field>(field: &F, base: Subspace<F>, new: Vec<&[F::Elem]>, ops: &[Matrix<F>]) -> Subspace<F> {
    let mut result = base;
    let mut frontier = Matrix::zeros(field, 0, result.ambient());
    for v in new {
        if result.insert(field, v) {
            frontier.push_row(v.to_vec());
        }
    }
    while frontier.rows() > 0 && !result.is_full() {
        let mut added = Matrix::zeros(field, 0, result.ambient());
        for op in ops {
            let images = op.apply_to_rows(field, &frontier);
            for row in images.row_iter() {
                if result.insert(field, row) {
                    added.push_row(row.to_vec());
                }
            }
        }
        frontier = added;
    }
    result
}
