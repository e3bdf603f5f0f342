//! Quotients of free modules computed through their duals.
//!
//! A functional `φ` on `F_n` kills `R_n = Σ_q skip_q(R_{n-1}) + G_n·new_n`
//! iff every `φ ∘ skip_q` factors through `P_{n-1}: F_{n-1} -> V_{n-1}` and
//! `φ` kills the new relations. Writing `φ ∘ skip_q = ψ_q ∘ P_{n-1}` leaves
//! only the `ψ_q` and the values on bijections as unknowns, so the linear
//! algebra happens in `n·dim V_{n-1}` variables instead of `dim F_n`.

use super::free::FreeModuleSpec;
use super::submodule::{close_under, projection_matrix, push_forward};
use super::truncated::{ModuleElement, TruncatedModule};
use crate::category::{enumerate_hom, FiMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

/// `F / ⟨relations⟩` and the projections `F_n -> V_n`. The basis of `V_n`
/// is the complement of the pivots of `R_n`, as for [`super::Submodule`]
/// quotients.
pub(crate) fn quotient_of_free<F: Field>(
    free: &TruncatedModule<F>,
    spec: &FreeModuleSpec,
    relations: &[ModuleElement<F>],
) -> Result<(TruncatedModule<F>, Vec<Matrix<F>>)> {
    let f = free.field();
    let group = free.group();
    let order = group.order();
    for r in relations {
        free.check_degree(r.degree)?;
        if r.coords.len() != free.dim(r.degree) {
            return Err(Error::InvalidModule("generator has the wrong length".into()));
        }
    }
    let top = free.truncation();
    let mut projections: Vec<Matrix<F>> = Vec::with_capacity(top + 1);
    let mut pivots: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let d = free.dim(n);
        let c = if n == 0 { 0 } else { projections[n - 1].rows() };
        // Each basis vector as an affine expression in the unknowns: either
        // (block q, column of P_{n-1}) or a free variable.
        let mut exprs: Vec<Expr> = Vec::with_capacity(d);
        let mut others: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        let mut bijections = 0;
        for (i, &m) in spec.degrees.iter().enumerate() {
            for h in enumerate_hom(m, n, group) {
                let b = exprs.len();
                let mut hit = vec![false; n];
                for &x in h.injection() {
                    hit[x] = true;
                }
                let lifts: Vec<(usize, usize)> = (0..n)
                    .filter(|&q| !hit[q])
                    .map(|q| {
                        let inj = h.injection().iter().map(|&x| if x > q { x - 1 } else { x }).collect();
                        let g = FiMorphism::new(n - 1, inj, h.decoration().to_vec()).expect("valid injection");
                        (q, spec.coordinate(i, &g, order))
                    })
                    .collect();
                match lifts.first() {
                    None => {
                        exprs.push(Expr::Free(bijections));
                        bijections += 1;
                    }
                    Some(&(q, col)) => {
                        exprs.push(Expr::Lift(q, col));
                        if lifts.len() > 1 {
                            others.push((b, lifts[1..].to_vec()));
                        }
                    }
                }
            }
        }
        debug_assert_eq!(exprs.len(), d);
        let unknowns = n * c + bijections;
        if n > 0 && unknowns * unknowns > (free.dim(n - 1) - c) * d {
            let (p, piv) = primal_step(free, n, &projections[n - 1], &pivots[n - 1], relations);
            projections.push(p);
            pivots.push(piv);
            continue;
        }
        let prev = if n == 0 { None } else { Some(&projections[n - 1]) };
        let eval = |e: &Expr, out: &mut [F::Elem], sign: &F::Elem| match *e {
            Expr::Free(k) => {
                let at = n * c + k;
                out[at] = f.add(&out[at], sign);
            }
            Expr::Lift(q, col) => {
                let p = prev.expect("lifts only exist above degree 0");
                for j in 0..c {
                    let v = p.get(j, col);
                    if !f.is_zero(v) {
                        let at = q * c + j;
                        out[at] = f.add(&out[at], &f.mul(sign, v));
                    }
                }
            }
        };
        let one = f.one();
        let minus = f.neg(&one);
        let mut constraints = Subspace::zero(f, unknowns);
        'build: {
            for (b, lifts) in &others {
                for &(q, col) in lifts {
                    if constraints.is_full() {
                        break 'build;
                    }
                    let mut row = vec![f.zero(); unknowns];
                    eval(&Expr::Lift(q, col), &mut row, &one);
                    eval(&exprs[*b], &mut row, &minus);
                    constraints.insert(f, &row);
                }
            }
            let new: Vec<&[F::Elem]> = relations
                .iter()
                .filter(|r| r.degree == n)
                .map(|r| r.coords.as_slice())
                .collect();
            if !new.is_empty() {
                let closed = close_under(f, Subspace::zero(f, d), new, free.actions(n));
                for x in closed.basis().row_iter() {
                    let mut row = vec![f.zero(); unknowns];
                    for (b, xb) in x.iter().enumerate() {
                        if !f.is_zero(xb) {
                            eval(&exprs[b], &mut row, xb);
                        }
                    }
                    constraints.insert(f, &row);
                }
            }
        }
        let solutions = constraints.basis().kernel_basis(f);
        let k = solutions.dim();
        let mut p = Matrix::zeros(f, k, d);
        for (b, e) in exprs.iter().enumerate() {
            let mut coeffs = vec![f.zero(); unknowns];
            eval(e, &mut coeffs, &one);
            for t in 0..k {
                let s = solutions.basis().row(t);
                let mut acc = f.zero();
                for (u, cu) in coeffs.iter().enumerate() {
                    if !f.is_zero(cu) {
                        acc = f.add(&acc, &f.mul(cu, &s[u]));
                    }
                }
                p.set(t, b, acc);
            }
        }
        let (p, piv) = normalize(f, p);
        projections.push(p);
        pivots.push(piv);
    }
    let induce = |a: &Matrix<F>, from: usize, to: usize| -> Matrix<F> {
        let target = &projections[to];
        let mut m = Matrix::zeros(f, target.rows(), pivots[from].len());
        for (t, &col) in pivots[from].iter().enumerate() {
            for r in 0..a.rows() {
                let v = a.get(r, col);
                if f.is_zero(v) {
                    continue;
                }
                for s in 0..target.rows() {
                    let w = f.mul(v, target.get(s, r));
                    let cur = f.add(m.get(s, t), &w);
                    m.set(s, t, cur);
                }
            }
        }
        m
    };
    let dims = pivots.iter().map(Vec::len).collect();
    let iota = (0..top).map(|n| induce(free.iota(n), n, n + 1)).collect();
    let actions = (0..=top)
        .map(|n| free.actions(n).iter().map(|a| induce(a, n, n)).collect())
        .collect();
    let quotient = TruncatedModule::from_parts(f.clone(), group.clone(), dims, iota, actions)
        .with_reliable_up_to(free.reliable_up_to());
    Ok((quotient, projections))
}

/// The same degree step done in `F_n` itself: push `ker P_{n-1}` forward
/// and close up with the new relations.
fn primal_step<F: Field>(
    free: &TruncatedModule<F>,
    n: usize,
    prev: &Matrix<F>,
    prev_pivots: &[usize],
    relations: &[ModuleElement<F>],
) -> (Matrix<F>, Vec<usize>) {
    let f = free.field();
    let d = prev.cols();
    let mut is_pivot = vec![false; d];
    for &c in prev_pivots {
        is_pivot[c] = true;
    }
    let rows = (0..d)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![f.zero(); d];
            v[j] = f.one();
            for (t, &c) in prev_pivots.iter().enumerate() {
                v[c] = f.neg(prev.get(t, j));
            }
            v
        })
        .collect();
    let below = Subspace::from_rows(f, Matrix::from_rows(d, rows));
    let base = push_forward(free, n - 1, &below);
    let new = relations
        .iter()
        .filter(|r| r.degree == n)
        .map(|r| r.coords.as_slice())
        .collect();
    let span = close_under(f, base, new, free.actions(n));
    let non_pivots = span.non_pivots();
    (projection_matrix(f, &span, &non_pivots), non_pivots)
}

#[derive(Clone, Copy)]
enum Expr {
    Lift(usize, usize),
    Free(usize),
}

/// Row-reduces `p` from the right so that it is the identity on its
/// rightmost independent columns, rows ordered by those columns.
fn normalize<F: Field>(f: &F, p: Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let cols = p.cols();
    let reversed = Matrix::from_fn(p.rows(), cols, |r, c| p.get(r, cols - 1 - c).clone());
    let (r, piv, rank) = reversed.rref(f);
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by_key(|&i| cols - 1 - piv[i]);
    let out = Matrix::from_fn(rank, cols, |i, c| r.get(order[i], cols - 1 - c).clone());
    let pivots = order.iter().map(|&i| cols - 1 - piv[i]).collect();
    (out, pivots)
}
