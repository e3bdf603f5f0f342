use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of `F^ambient`, stored as the unique reduced row echelon basis.
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `rows`.
    pub fn from_rows(field: &F, rows: Matrix<F>) -> Self {
        let ambient = rows.cols();
        let mut m = rows;
        let pivots = m.rref_in_place(field, true);
        let basis = m.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn from_vectors(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        Self::from_rows(field, Matrix::from_rows(ambient, vectors))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots: they index a canonical complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the subspace in place (clears all pivot entries).
    /// Returns true when `v` ends up zero.
    pub fn reduce(&self, field: &F, v: &mut [F::Elem]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = field.neg(&v[p]);
            field.axpy(&mut v[p..], &c, &self.basis.row(i)[p..]);
        }
        v.iter().all(|x| field.is_zero(x))
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w)
    }

    /// Coordinates of `v` with respect to the echelon basis. Only meaningful
    /// when `v` lies in the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of `v + self` in the quotient `F^ambient / self`, using the
    /// non-pivot coordinates as basis.
    pub fn quotient_coords(&self, field: &F, v: &[F::Elem], non_pivots: &[usize]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        non_pivots.iter().map(|&c| w[c].clone()).collect()
    }

    /// Adds `v` to the subspace, keeping the basis reduced. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        if self.reduce(field, &mut w) {
            return false;
        }
        let lead = w.iter().position(|x| !field.is_zero(x)).unwrap();
        let inv = field.inv(&w[lead]);
        field.scale(&mut w[lead..], &inv);
        for i in 0..self.pivots.len() {
            let c = self.basis.get(i, lead).clone();
            if !field.is_zero(&c) {
                let neg = field.neg(&c);
                field.axpy(&mut self.basis.row_mut(i)[lead..], &neg, &w[lead..]);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.basis.insert_row(pos, w);
        self.pivots.insert(pos, lead);
        true
    }

    pub fn sum(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_rows(field, self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(field, self.ambient));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // (a, b) with a*A = b*B; the vectors a*A span the intersection.
        let stacked = self.basis.vstack(&other.basis);
        let relations = stacked.transpose().kernel_basis(field);
        let na = self.dim();
        let combos = relations
            .basis()
            .row_iter()
            .map(|rel| {
                let mut v = vec![field.zero(); self.ambient];
                for (i, c) in rel[..na].iter().enumerate() {
                    if !field.is_zero(c) {
                        field.axpy(&mut v, c, self.basis.row(i));
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_vectors(field, self.ambient, combos))
    }

    pub fn is_subspace_of(&self, field: &F, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.basis.row_iter().all(|r| other.contains(field, r))
    }

    /// Image of the subspace under the linear map `map` (column convention).
    pub fn image_under(&self, field: &F, map: &Matrix<F>) -> Self {
        assert_eq!(map.cols(), self.ambient);
        Self::from_rows(field, map.apply_to_rows(field, &self.basis))
    }

    /// Preimage of the subspace under `map: F^n -> F^ambient`.
    pub fn preimage_under(&self, field: &F, map: &Matrix<F>) -> Self {
        assert_eq!(map.rows(), self.ambient);
        // x with map*x in self  <=>  (projection to the complement)(map*x) = 0
        let non_pivots = self.non_pivots();
        let images = map.transpose();
        let projected = Matrix::from_rows(
            non_pivots.len(),
            images
                .row_iter()
                .map(|col| self.quotient_coords(field, col, &non_pivots))
                .collect(),
        );
        projected.transpose().kernel_basis(field)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Smallest subspace containing `seed` and stable under every operator.
///
/// Operators are applied in rounds to the vectors added in the previous
/// round; the loop ends after a round that adds nothing.
pub fn saturate_subspace<F: Field>(field: &F, seed: &Subspace<F>, operators: &[Matrix<F>]) -> Subspace<F> {
    for op in operators {
        assert_eq!((op.rows(), op.cols()), (seed.ambient(), seed.ambient()));
    }
    let mut result = seed.clone();
    let mut frontier = seed.basis().clone();
    while frontier.rows() > 0 && !result.is_full() {
        let mut added = Matrix::zeros(field, 0, seed.ambient());
        for op in operators {
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

pub fn intersect_subspaces<F: Field>(field: &F, a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersect(field, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let f = gf(2);
        let b = Subspace::from_vectors(&f, 2, vec![vec![1, 1]]);
        assert_eq!(Subspace::full(&f, 2).intersect(&f, &b).unwrap(), b);
        let x = Subspace::from_vectors(&f, 2, vec![vec![1, 0]]);
        let y = Subspace::from_vectors(&f, 2, vec![vec![0, 1]]);
        assert!(x.intersect(&f, &y).unwrap().is_zero());
        let a = Subspace::from_vectors(&f, 2, vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(a.intersect(&f, &b).unwrap(), b);
        let z = Subspace::zero(&f, 3);
        assert_eq!(z.intersect(&f, &b), Err(Error::AmbientMismatch(3, 2)));
    }

    #[test]
    fn intersection_of_generic_planes() {
        let f = gf(5);
        let a = Subspace::from_vectors(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(&f, 3, vec![vec![1, 1, 1], vec![0, 1, 2]]);
        let i = a.intersect(&f, &b).unwrap();
        assert_eq!(i.dim(), 1);
        // (1,1,1) - 3*(0,1,2) = (1,3,0)  (mod 5)
        assert!(i.contains(&f, &[1, 3, 0]));
    }

    #[test]
    fn saturation_examples() {
        let f = gf(3);
        let swap = Matrix::from_i64(&f, &[&[0, 1], &[1, 0]]);
        let zero = Subspace::zero(&f, 2);
        assert!(saturate_subspace(&f, &zero, &[swap.clone()]).is_zero());
        // One of the two injections [1] -> [2]; the swap s_1 moves it to the other.
        let seed = Subspace::from_vectors(&f, 2, vec![vec![1, 0]]);
        assert_eq!(saturate_subspace(&f, &seed, &[swap.clone()]), Subspace::full(&f, 2));
        let invariant = Subspace::from_vectors(&f, 2, vec![vec![1, 1]]);
        assert_eq!(saturate_subspace(&f, &invariant, &[swap]), invariant);
    }

    #[test]
    fn insert_keeps_canonical_form() {
        let f = gf(7);
        let mut s = Subspace::zero(&f, 3);
        assert!(s.insert(&f, &[0, 2, 4]));
        assert!(s.insert(&f, &[3, 1, 0]));
        assert!(!s.insert(&f, &[3, 3, 4]));
        let direct = Subspace::from_vectors(&f, 3, vec![vec![0, 2, 4], vec![3, 1, 0]]);
        assert_eq!(s, direct);
    }

    #[test]
    fn preimage_under_projection() {
        let f = gf(5);
        let proj = Matrix::from_i64(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        let line = Subspace::from_vectors(&f, 2, vec![vec![1, 2]]);
        let pre = line.preimage_under(&f, &proj);
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains(&f, &[0, 0, 1]));
        assert!(pre.contains(&f, &[1, 2, 3]));
    }
}
