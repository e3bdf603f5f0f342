use std::sync::Arc;

use crate::category::{generator_count, generator_word, FiMorphism, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// An FI_G-module known in degrees `0..=N`.
///
/// Only the structure maps `ι_n: V_n -> V_{n+1}` and the action of each
/// entry of [`group_generators`](crate::category::group_generators)`(n)` are
/// stored; every other morphism acts through its factorization
/// `unit ∘ ι^k`.
#[derive(Clone, Debug)]
pub struct TruncatedModule<F: Field> {
    field: F,
    group: Arc<FiniteGroup>,
    truncation: usize,
    reliable: usize,
    dims: Vec<usize>,
    iota: Vec<Matrix<F>>,
    actions: Vec<Vec<Matrix<F>>>,
}

/// An element of `V_n`, as coordinates in the module's basis of `V_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement<F: Field> {
    pub degree: usize,
    pub coords: Vec<F::Elem>,
}

impl<F: Field> ModuleElement<F> {
    pub fn new(module: &TruncatedModule<F>, degree: usize, coords: Vec<F::Elem>) -> Result<Self> {
        module.check_degree(degree)?;
        if coords.len() != module.dim(degree) {
            return Err(Error::InvalidModule(format!(
                "element of degree {degree} has {} coordinates, expected {}",
                coords.len(),
                module.dim(degree)
            )));
        }
        Ok(ModuleElement { degree, coords })
    }

    pub fn basis(module: &TruncatedModule<F>, degree: usize, index: usize) -> Self {
        let f = module.field();
        let mut coords = vec![f.zero(); module.dim(degree)];
        coords[index] = f.one();
        ModuleElement { degree, coords }
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|x| field.is_zero(x))
    }
}

impl<F: Field> TruncatedModule<F> {
    /// Assembles a module from its structure maps, checking shapes. Use
    /// [`validate`](Self::validate) for the full set of functor identities.
    pub fn new(
        field: F,
        group: Arc<FiniteGroup>,
        dims: Vec<usize>,
        iota: Vec<Matrix<F>>,
        actions: Vec<Vec<Matrix<F>>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidModule("no degrees".into()));
        }
        let truncation = dims.len() - 1;
        let module = TruncatedModule {
            field,
            group,
            truncation,
            reliable: truncation,
            dims,
            iota,
            actions,
        };
        module.check_shapes()?;
        Ok(module)
    }

    pub(crate) fn from_parts(
        field: F,
        group: Arc<FiniteGroup>,
        dims: Vec<usize>,
        iota: Vec<Matrix<F>>,
        actions: Vec<Vec<Matrix<F>>>,
    ) -> Self {
        let truncation = dims.len() - 1;
        let module = TruncatedModule {
            field,
            group,
            truncation,
            reliable: truncation,
            dims,
            iota,
            actions,
        };
        debug_assert!(module.check_shapes().is_ok());
        module
    }

    pub fn zero(field: F, group: Arc<FiniteGroup>, truncation: usize) -> Self {
        let dims = vec![0; truncation + 1];
        let iota = (0..truncation).map(|_| Matrix::zeros(&field, 0, 0)).collect();
        let actions = (0..=truncation)
            .map(|n| vec![Matrix::zeros(&field, 0, 0); generator_count(n, &group)])
            .collect();
        Self::from_parts(field, group, dims, iota, actions)
    }

    fn check_shapes(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModule(m));
        let n_top = self.truncation;
        if self.iota.len() != n_top || self.actions.len() != n_top + 1 {
            return bad("wrong number of structure maps".into());
        }
        for n in 0..n_top {
            let m = &self.iota[n];
            if (m.rows(), m.cols()) != (self.dims[n + 1], self.dims[n]) {
                return bad(format!("ι_{n} has shape {}x{}", m.rows(), m.cols()));
            }
        }
        for n in 0..=n_top {
            if self.actions[n].len() != generator_count(n, &self.group) {
                return bad(format!("degree {n} needs {} generator actions", generator_count(n, &self.group)));
            }
            for (i, a) in self.actions[n].iter().enumerate() {
                if (a.rows(), a.cols()) != (self.dims[n], self.dims[n]) {
                    return bad(format!("generator {i} in degree {n} has shape {}x{}", a.rows(), a.cols()));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// The top degree `N` stored.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Degrees up to which the stored spaces are those of the untruncated
    /// module. Equal to the truncation unless a construction lost degrees.
    pub fn reliable_up_to(&self) -> usize {
        self.reliable
    }

    pub fn with_reliable_up_to(mut self, reliable: usize) -> Self {
        self.reliable = reliable.min(self.truncation);
        self
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `ι_n: V_n -> V_{n+1}`.
    pub fn iota(&self, n: usize) -> &Matrix<F> {
        &self.iota[n]
    }

    pub fn actions(&self, n: usize) -> &[Matrix<F>] {
        &self.actions[n]
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.truncation {
            return Err(Error::TruncationExceeded {
                degree: n,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    pub fn same_context(&self, other: &Self) -> bool {
        self.field == other.field
            && self.group.spec() == other.group.spec()
            && self.truncation == other.truncation
    }

    /// The same module cut down to degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.truncation);
        TruncatedModule {
            field: self.field.clone(),
            group: self.group.clone(),
            truncation: n,
            reliable: self.reliable.min(n),
            dims: self.dims[..=n].to_vec(),
            iota: self.iota[..n].to_vec(),
            actions: self.actions[..=n].to_vec(),
        }
    }

    /// Applies a unit of `G_n` to each row of `rows` (rows are vectors of
    /// `V_n`).
    pub fn apply_unit_to_rows(&self, unit: &FiMorphism, rows: &Matrix<F>) -> Matrix<F> {
        let n = unit.target();
        let word = generator_word(unit, &self.group);
        let mut out = rows.clone();
        for &w in word.iter().rev() {
            out = self.actions[n][w].apply_to_rows(&self.field, &out);
        }
        out
    }

    /// Matrix of a unit `σ ∈ G_n` acting on `V_n`.
    pub fn unit_matrix(&self, unit: &FiMorphism) -> Matrix<F> {
        let n = unit.target();
        let word = generator_word(unit, &self.group);
        let mut m = Matrix::identity(&self.field, self.dims[n]);
        for &w in word.iter().rev() {
            m = self.actions[n][w].mul(&self.field, &m);
        }
        m
    }

    /// `ι^k: V_n -> V_{n+k}`.
    pub fn iota_power(&self, n: usize, k: usize) -> Matrix<F> {
        let mut m = Matrix::identity(&self.field, self.dims[n]);
        for j in n..n + k {
            m = self.iota[j].mul(&self.field, &m);
        }
        m
    }

    /// Matrix of `f: [m] -> [n]` acting `V_m -> V_n`.
    pub fn morphism_matrix(&self, f: &FiMorphism) -> Result<Matrix<F>> {
        self.check_degree(f.target())?;
        let (unit, k) = f.factorize(&self.group);
        let m = f.source();
        let base = self.iota_power(m, k);
        let word = generator_word(&unit, &self.group);
        let mut out = base;
        for &w in word.iter().rev() {
            out = self.actions[f.target()][w].mul(&self.field, &out);
        }
        Ok(out)
    }

    /// `f · v`.
    pub fn apply_morphism(&self, v: &ModuleElement<F>, f: &FiMorphism) -> Result<ModuleElement<F>> {
        if v.degree != f.source() {
            return Err(Error::CompositionMismatch(
                v.degree,
                v.degree,
                f.source(),
                f.target(),
            ));
        }
        self.check_degree(f.target())?;
        let (unit, k) = f.factorize(&self.group);
        let mut coords = v.coords.clone();
        for j in v.degree..v.degree + k {
            coords = self.iota[j].apply(&self.field, &coords);
        }
        let word = generator_word(&unit, &self.group);
        for &w in word.iter().rev() {
            coords = self.actions[f.target()][w].apply(&self.field, &coords);
        }
        Ok(ModuleElement {
            degree: f.target(),
            coords,
        })
    }

    /// The maps `V_n -> V_{n+1}` induced by the order-preserving injections
    /// `[n] -> [n+1]`; entry `q` is the one whose image misses point `q`
    /// (0-based). Entry `n` is `ι_n`.
    pub fn skip_maps(&self, n: usize) -> Vec<Matrix<F>> {
        assert!(n < self.truncation);
        let mut maps = vec![self.iota[n].clone()];
        for q in (0..n).rev() {
            let next = self.actions[n + 1][q].mul(&self.field, maps.last().unwrap());
            maps.push(next);
        }
        maps.reverse();
        maps
    }

    /// Images of the rows of `rows ⊆ V_n` under all skip maps, stacked.
    pub fn skip_images(&self, n: usize, rows: &Matrix<F>) -> Matrix<F> {
        let mut current = self.iota[n].apply_to_rows(&self.field, rows);
        let mut out = current.clone();
        for q in (0..n).rev() {
            current = self.actions[n + 1][q].apply_to_rows(&self.field, &current);
            out = out.vstack(&current);
        }
        out
    }

    /// Checks every identity making the stored data a functor on degrees
    /// `0..=N`: the wreath product relations in each degree, the
    /// compatibility of `ι` with the generators, and that `ι`-images are
    /// fixed by the units that fix the standard image pointwise.
    pub fn validate(&self) -> Result<()> {
        self.check_shapes()?;
        let f = &self.field;
        let g = &*self.group;
        let fail = |m: String| Err(Error::InvalidModule(m));
        let hs = g.generators().len();
        for n in 0..=self.truncation {
            let acts = &self.actions[n];
            let d = self.dims[n];
            if n == 0 || d == 0 {
                continue;
            }
            let id = Matrix::identity(f, d);
            let ns = n - 1;
            for i in 0..ns {
                let si = &acts[i];
                if si.mul(f, si) != id {
                    return fail(format!("s_{} does not square to 1 in degree {n}", i + 1));
                }
                if i + 1 < ns {
                    let p = si.mul(f, &acts[i + 1]);
                    if p.mul(f, &p).mul(f, &p) != id {
                        return fail(format!("braid relation fails for s_{} in degree {n}", i + 1));
                    }
                }
                for j in i + 2..ns {
                    if si.mul(f, &acts[j]) != acts[j].mul(f, si) {
                        return fail(format!("s_{} and s_{} do not commute in degree {n}", i + 1, j + 1));
                    }
                }
            }
            if hs > 0 {
                let elements: Vec<Matrix<F>> = (0..g.order())
                    .map(|x| {
                        g.word(x)
                            .iter()
                            .fold(id.clone(), |acc, &w| acc.mul(f, &acts[ns + w]))
                    })
                    .collect();
                for x in 0..g.order() {
                    for (k, &h) in g.generators().iter().enumerate() {
                        if elements[x].mul(f, &acts[ns + k]) != elements[g.mul(x, h)] {
                            return fail(format!("decorations do not act through G in degree {n}"));
                        }
                    }
                }
                for k in 0..hs {
                    let h = &acts[ns + k];
                    for i in 1..ns {
                        if h.mul(f, &acts[i]) != acts[i].mul(f, h) {
                            return fail(format!("h_{k} and s_{} do not commute in degree {n}", i + 1));
                        }
                    }
                    if ns >= 1 {
                        for l in 0..hs {
                            let c = acts[0].mul(f, &acts[ns + l]).mul(f, &acts[0]);
                            if h.mul(f, &c) != c.mul(f, h) {
                                return fail(format!("decorations on distinct points do not commute in degree {n}"));
                            }
                        }
                    }
                }
            }
        }
        for n in 0..self.truncation {
            let iota = &self.iota[n];
            let ns = n.saturating_sub(1);
            for i in 0..generator_count(n, g) {
                let j = if i < ns { i } else { i + 1 };
                let lhs = iota.mul(f, &self.actions[n][i]);
                let rhs = self.actions[n + 1][j].mul(f, iota);
                if lhs != rhs {
                    return fail(format!("ι_{n} does not commute with generator {i}"));
                }
            }
            for &h in g.generators() {
                let mut dec = vec![g.identity(); n + 1];
                dec[n] = h;
                let unit = FiMorphism::new(n + 1, (0..=n).collect(), dec)?;
                let e = self.unit_matrix(&unit);
                if e.mul(f, iota) != *iota {
                    return fail(format!("a decoration of the new point moves ι_{n}-images"));
                }
            }
            if n + 2 <= self.truncation {
                let two = self.iota[n + 1].mul(f, iota);
                if self.actions[n + 2][n].mul(f, &two) != two {
                    return fail(format!("s_{} moves ι²-images of degree {n}", n + 1));
                }
            }
        }
        Ok(())
    }
}
