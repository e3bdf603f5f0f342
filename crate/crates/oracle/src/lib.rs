//! A brute-force FI_G-module engine. Every morphism of every `Hom(m, n)`
//! gets its own action matrix, and invariants are recomputed from their
//! definitions with a private Gaussian elimination, so that the only thing
//! shared with `fimod`'s optimized path is the module data itself.
//!
//! ```
//! use std::sync::Arc;
//! use fimod::category::FiniteGroup;
//! use fimod::linalg::PrimeField;
//! use fimod::module::{free_module, FreeModuleSpec};
//!
//! let f = PrimeField::new(2).unwrap();
//! let g = Arc::new(FiniteGroup::trivial());
//! let v = free_module(&f, &g, &FreeModuleSpec::single(1), 3);
//! let report = fimod_oracle::compare(&v).unwrap();
//! assert!(report.agree);
//! assert_eq!(report.dense.h0, vec![0, 1, 0, 0]);
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use fimod::category::{enumerate_hom, generator_word, FiMorphism, FiniteGroup, GroupSpec};
use fimod::functors::torsion_submodule;
use fimod::homology::{decomposables, gd, h0, td};
use fimod::linalg::{Field, FieldSpec, Matrix};
use fimod::module::TruncatedModule;
use fimod::{Degree, Error, Result};
use serde::{Deserialize, Serialize};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/oracle.md")]
mod book_oracle {}

/// Largest truncation [`densify`] accepts without an override.
pub const DEFAULT_CAP: usize = 5;

/// A plain row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Dense<F> {
    fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    fn of(f: &F, m: &fimod::linalg::Matrix<F>) -> Self {
        let mut d = Self::zeros(f, m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                d.data[r * m.cols() + c] = m.get(r, c).clone();
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    fn mul(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    fn row(&self, r: usize) -> Vec<F::Elem> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

/// Rank of a list of vectors by textbook elimination.
fn rank<F: Field>(f: &F, mut vs: Vec<Vec<F::Elem>>, len: usize) -> usize {
    let mut rank = 0;
    for col in 0..len {
        let Some(p) = (rank..vs.len()).find(|&i| !f.is_zero(&vs[i][col])) else {
            continue;
        };
        vs.swap(rank, p);
        let inv = f.inv(&vs[rank][col]);
        let pivot: Vec<F::Elem> = vs[rank].iter().map(|x| f.mul(x, &inv)).collect();
        for (i, v) in vs.iter_mut().enumerate() {
            if i != rank && !f.is_zero(&v[col]) {
                let c = v[col].clone();
                for (x, p) in v.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&c, p));
                }
            }
        }
        vs[rank] = pivot;
        rank += 1;
    }
    rank
}

/// A functor on degrees `0..=N` given by one matrix per morphism.
#[derive(Clone, Debug)]
pub struct DenseFunctor<F: Field> {
    field: F,
    group: Arc<FiniteGroup>,
    dims: Vec<usize>,
    homs: BTreeMap<(usize, usize), Vec<FiMorphism>>,
    actions: BTreeMap<(usize, usize), Vec<Dense<F>>>,
}

impl<F: Field> DenseFunctor<F> {
    pub fn truncation(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `Hom(m, n)` in the order of the stored matrices.
    pub fn hom(&self, m: usize, n: usize) -> &[FiMorphism] {
        &self.homs[&(m, n)]
    }

    pub fn action(&self, m: usize, n: usize, index: usize) -> &Dense<F> {
        &self.actions[&(m, n)][index]
    }

    /// Mutable access to one morphism's matrix, for fault injection.
    pub fn action_mut(&mut self, m: usize, n: usize, index: usize) -> &mut Dense<F> {
        &mut self.actions.get_mut(&(m, n)).expect("degrees within truncation")[index]
    }

    fn index_of(&self, h: &FiMorphism) -> usize {
        self.homs[&(h.source(), h.target())]
            .iter()
            .position(|x| x == h)
            .expect("every morphism is enumerated")
    }

    /// Checks that identities act as identities and that `g ∘ f` acts as
    /// the product of the actions, over every composable pair.
    pub fn check_functoriality(&self) -> Result<()> {
        let f = &self.field;
        let n_top = self.truncation();
        for n in 0..=n_top {
            let id = FiMorphism::identity(n, &self.group);
            if self.actions[&(n, n)][self.index_of(&id)] != Dense::identity(f, self.dims[n]) {
                return Err(Error::InvalidModule(format!("the identity of [{n}] does not act as 1")));
            }
        }
        for l in 0..=n_top {
            for m in l..=n_top {
                for n in m..=n_top {
                    for (i, a) in self.homs[&(l, m)].iter().enumerate() {
                        for (j, b) in self.homs[&(m, n)].iter().enumerate() {
                            let ba = b.compose(a, &self.group)?;
                            let lhs = &self.actions[&(l, n)][self.index_of(&ba)];
                            let rhs = self.actions[&(m, n)][j].mul(f, &self.actions[&(l, m)][i]);
                            if *lhs != rhs {
                                return Err(Error::InvalidModule(format!(
                                    "composition {l} -> {m} -> {n} (morphisms {i}, {j}) is not respected"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dense form of `V` with the default cap.
pub fn densify<F: Field>(v: &TruncatedModule<F>) -> Result<DenseFunctor<F>> {
    densify_with_cap(v, DEFAULT_CAP)
}

/// Dense form of `V`, refusing truncations above `cap`, with functoriality
/// checked on every composable pair.
pub fn densify_with_cap<F: Field>(v: &TruncatedModule<F>, cap: usize) -> Result<DenseFunctor<F>> {
    let d = expand(v, cap)?;
    d.check_functoriality()?;
    Ok(d)
}

/// Every morphism matrix as `unit ∘ ι^k`, the unit spelled in generators.
fn expand<F: Field>(v: &TruncatedModule<F>, cap: usize) -> Result<DenseFunctor<F>> {
    let n_top = v.truncation();
    if n_top > cap {
        return Err(Error::Refused(format!(
            "truncation {n_top} exceeds the dense oracle cap {cap}"
        )));
    }
    let f = v.field();
    let g = v.group();
    let mut homs = BTreeMap::new();
    let mut actions = BTreeMap::new();
    for m in 0..=n_top {
        for n in m..=n_top {
            let hom = enumerate_hom(m, n, g);
            let mats = hom
                .iter()
                .map(|h| {
                    let (unit, k) = h.factorize(g);
                    let mut a = Dense::identity(f, v.dim(m));
                    for j in m..m + k {
                        a = Dense::of(f, v.iota(j)).mul(f, &a);
                    }
                    for &w in generator_word(&unit, g).iter().rev() {
                        a = Dense::of(f, &v.actions(n)[w]).mul(f, &a);
                    }
                    a
                })
                .collect();
            homs.insert((m, n), hom);
            actions.insert((m, n), mats);
        }
    }
    Ok(DenseFunctor {
        field: f.clone(),
        group: g.clone(),
        dims: v.dims().to_vec(),
        homs,
        actions,
    })
}

/// The invariants compared between the two engines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub h0: Vec<usize>,
    pub torsion: Vec<usize>,
    pub decomposables: Vec<usize>,
    pub gd: Degree,
    pub td: Degree,
}

/// Invariants straight from the definitions: `𝔪V_n` is spanned by all
/// `f(V_m)` with `m < n`; `v ∈ V_n` is torsion when every `f: [n] -> [N]`
/// with `n < N` kills it; `td` is the top `n < N` where some nonzero `v`
/// is killed by every `f: [n] -> [n+1]`.
pub fn dense_invariants<F: Field>(d: &DenseFunctor<F>) -> Invariants {
    let f = &d.field;
    let n_top = d.truncation();
    let decomp: Vec<usize> = (0..=n_top)
        .map(|n| {
            let cols: Vec<Vec<F::Elem>> = (0..n)
                .flat_map(|m| d.actions[&(m, n)].iter())
                .flat_map(|a| (0..a.cols()).map(move |c| a.column(c)))
                .collect();
            rank(f, cols, d.dims[n])
        })
        .collect();
    let h0: Vec<usize> = (0..=n_top).map(|n| d.dims[n] - decomp[n]).collect();
    let killed_by_all = |n: usize, to: usize| -> usize {
        let rows: Vec<Vec<F::Elem>> = d.actions[&(n, to)]
            .iter()
            .flat_map(|a| (0..a.rows()).map(move |r| a.row(r)))
            .collect();
        d.dims[n] - rank(f, rows, d.dims[n])
    };
    let torsion = (0..=n_top)
        .map(|n| if n < n_top { killed_by_all(n, n_top) } else { 0 })
        .collect();
    let gd = Degree::max_of((0..=n_top).filter(|&n| h0[n] > 0).map(|n| n as i64));
    let td = Degree::max_of((0..n_top).filter(|&n| killed_by_all(n, n + 1) > 0).map(|n| n as i64));
    Invariants {
        h0,
        torsion,
        decomposables: decomp,
        gd,
        td,
    }
}

/// The same invariants from `fimod`'s optimized routines.
pub fn optimized_invariants<F: Field>(v: &TruncatedModule<F>) -> Invariants {
    Invariants {
        h0: h0(v).dims.dims().to_vec(),
        torsion: torsion_submodule(v).dims(),
        decomposables: decomposables(v).dims(),
        gd: gd(v),
        td: td(v),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub quantity: String,
    pub optimized: String,
    pub dense: String,
}

/// The structure maps of a module with entries as decimal strings.
///
/// ```json
/// {"field": {"prime": 2}, "group": {"trivial": true}, "dims": [1, 1],
///  "iota": [[["1"]]], "actions": [[], [[["1"]]]]}
/// ```
///
/// (`actions[n]` lists the generators of `G_n`: the adjacent
/// transpositions, then the group generators on the first point.)
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDump {
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub dims: Vec<usize>,
    pub iota: Vec<Vec<Vec<String>>>,
    pub actions: Vec<Vec<Vec<Vec<String>>>>,
}

impl ModuleDump {
    pub fn of<F: Field>(v: &TruncatedModule<F>) -> Self {
        let f = v.field();
        let dump = |m: &fimod::linalg::Matrix<F>| -> Vec<Vec<String>> {
            m.row_iter().map(|r| r.iter().map(|x| f.format(x)).collect()).collect()
        };
        ModuleDump {
            field: f.spec(),
            group: v.group().spec().clone(),
            dims: v.dims().to_vec(),
            iota: (0..v.truncation()).map(|n| dump(v.iota(n))).collect(),
            actions: (0..=v.truncation()).map(|n| v.actions(n).iter().map(dump).collect()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    /// The module over `field`, which must match [`ModuleDump::field`].
    /// Only shapes are checked, so a dump of a non-functor loads.
    pub fn to_module<F: Field>(&self, field: F) -> Result<TruncatedModule<F>> {
        if field.spec() != self.field {
            return Err(Error::InvalidField(format!("dump is over {}", self.field)));
        }
        let group = Arc::new(FiniteGroup::new(self.group.clone())?);
        let matrix = |rows: &Vec<Vec<String>>, r: usize, c: usize, what: &str| -> Result<Matrix<F>> {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Parse(format!("{what} should be {r}x{c}")));
            }
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rows(c, parsed))
        };
        let d = &self.dims;
        if d.is_empty() || self.iota.len() + 1 != d.len() || self.actions.len() != d.len() {
            return Err(Error::Parse("dims, iota and actions have inconsistent lengths".into()));
        }
        let iota = (0..d.len() - 1)
            .map(|n| matrix(&self.iota[n], d[n + 1], d[n], &format!("iota[{n}]")))
            .collect::<Result<Vec<_>>>()?;
        let actions = (0..d.len())
            .map(|n| {
                self.actions[n]
                    .iter()
                    .enumerate()
                    .map(|(i, a)| matrix(a, d[n], d[n], &format!("actions[{n}][{i}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TruncatedModule::new(field, group, d.clone(), iota, actions)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub agree: bool,
    pub truncation: usize,
    pub dims: Vec<usize>,
    /// `None` when every composable pair was respected.
    pub functoriality_error: Option<String>,
    pub optimized: Invariants,
    pub dense: Invariants,
    pub mismatches: Vec<Mismatch>,
    /// The module, present whenever something disagrees.
    pub witness: Option<ModuleDump>,
}

/// Runs both engines on `V` (truncation at most [`DEFAULT_CAP`]).
pub fn compare<F: Field>(v: &TruncatedModule<F>) -> Result<OracleReport> {
    compare_with_cap(v, DEFAULT_CAP)
}

pub fn compare_with_cap<F: Field>(v: &TruncatedModule<F>, cap: usize) -> Result<OracleReport> {
    let d = expand(v, cap)?;
    Ok(compare_dense(v, &d))
}

/// Compares `V` against a given dense functor, which is normally
/// [`densify`]`(V)` but may have been tampered with.
pub fn compare_dense<F: Field>(v: &TruncatedModule<F>, d: &DenseFunctor<F>) -> OracleReport {
    let functoriality_error = d.check_functoriality().err().map(|e| e.to_string());
    let optimized = optimized_invariants(v);
    let dense = dense_invariants(d);
    let mut mismatches = Vec::new();
    let mut check = |name: &str, a: String, b: String| {
        if a != b {
            mismatches.push(Mismatch {
                quantity: name.into(),
                optimized: a,
                dense: b,
            });
        }
    };
    check("dims", format!("{:?}", v.dims()), format!("{:?}", d.dims));
    check("h0", format!("{:?}", optimized.h0), format!("{:?}", dense.h0));
    check("torsion", format!("{:?}", optimized.torsion), format!("{:?}", dense.torsion));
    check(
        "decomposables",
        format!("{:?}", optimized.decomposables),
        format!("{:?}", dense.decomposables),
    );
    check("gd", optimized.gd.to_string(), dense.gd.to_string());
    check("td", optimized.td.to_string(), dense.td.to_string());
    if let Some(e) = &functoriality_error {
        mismatches.push(Mismatch {
            quantity: "functoriality".into(),
            optimized: "assumed".into(),
            dense: e.clone(),
        });
    }
    let agree = mismatches.is_empty();
    OracleReport {
        agree,
        truncation: v.truncation(),
        dims: v.dims().to_vec(),
        functoriality_error,
        optimized,
        dense,
        mismatches,
        witness: (!agree).then(|| ModuleDump::of(v)),
    }
}
