use std::fmt;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// A morphism `[m] -> [n]` of the skeletal category FI_G: an injection
/// together with one group element per source point.
///
/// Points are stored 0-based; `Display` uses the usual 1-based notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiMorphism {
    target: usize,
    injection: Vec<usize>,
    decoration: Vec<usize>,
}

impl FiMorphism {
    pub fn new(target: usize, injection: Vec<usize>, decoration: Vec<usize>) -> Result<Self> {
        if injection.len() != decoration.len() {
            return Err(Error::InvalidMorphism(format!(
                "decoration length {} differs from source degree {}",
                decoration.len(),
                injection.len()
            )));
        }
        let mut seen = vec![false; target];
        for &x in &injection {
            if x >= target || seen[x] {
                return Err(Error::InvalidMorphism(format!(
                    "{:?} is not an injection into [{target}]",
                    injection.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[x] = true;
        }
        Ok(FiMorphism {
            target,
            injection,
            decoration,
        })
    }

    /// Undecorated morphism from 1-based images, e.g. `[3, 1]` for
    /// `1 -> 3, 2 -> 1`.
    pub fn from_images(target: usize, images: &[usize], group: &FiniteGroup) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidMorphism("images are 1-based".into()));
        }
        Self::new(
            target,
            images.iter().map(|x| x - 1).collect(),
            vec![group.identity(); images.len()],
        )
    }

    pub fn identity(n: usize, group: &FiniteGroup) -> Self {
        FiMorphism {
            target: n,
            injection: (0..n).collect(),
            decoration: vec![group.identity(); n],
        }
    }

    /// The standard inclusion `[m] -> [n]`, `x -> x`, trivially decorated.
    pub fn standard_inclusion(m: usize, n: usize, group: &FiniteGroup) -> Self {
        assert!(m <= n);
        FiMorphism {
            target: n,
            injection: (0..m).collect(),
            decoration: vec![group.identity(); m],
        }
    }

    /// The order-preserving injection `[m] -> [m+1]` whose image misses the
    /// (0-based) point `missing`.
    pub fn skipping(m: usize, missing: usize, group: &FiniteGroup) -> Self {
        assert!(missing <= m);
        FiMorphism {
            target: m + 1,
            injection: (0..m).map(|x| if x < missing { x } else { x + 1 }).collect(),
            decoration: vec![group.identity(); m],
        }
    }

    #[inline]
    pub fn source(&self) -> usize {
        self.injection.len()
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn injection(&self) -> &[usize] {
        &self.injection
    }

    pub fn decoration(&self) -> &[usize] {
        &self.decoration
    }

    pub fn is_invertible(&self) -> bool {
        self.source() == self.target
    }

    pub fn is_identity(&self, group: &FiniteGroup) -> bool {
        self.is_invertible()
            && self.injection.iter().enumerate().all(|(i, &x)| i == x)
            && self.decoration.iter().all(|&g| g == group.identity())
    }

    /// `self ∘ other`. The decoration of the composite at `x` is
    /// `self.dec(other(x)) * other.dec(x)`.
    pub fn compose(&self, other: &FiMorphism, group: &FiniteGroup) -> Result<FiMorphism> {
        if other.target != self.source() {
            return Err(Error::CompositionMismatch(
                other.source(),
                other.target,
                self.source(),
                self.target,
            ));
        }
        let injection = other.injection.iter().map(|&y| self.injection[y]).collect();
        let decoration = other
            .injection
            .iter()
            .zip(&other.decoration)
            .map(|(&y, &g)| group.mul(self.decoration[y], g))
            .collect();
        Ok(FiMorphism {
            target: self.target,
            injection,
            decoration,
        })
    }

    /// Writes `self = unit ∘ ι^k` with `ι^k` the standard inclusion and
    /// `unit ∈ G_n` the canonical extension: increasing and trivially
    /// decorated on the points outside the image.
    pub fn factorize(&self, group: &FiniteGroup) -> (FiMorphism, usize) {
        let (m, n) = (self.source(), self.target);
        let mut used = vec![false; n];
        for &x in &self.injection {
            used[x] = true;
        }
        let mut injection = self.injection.clone();
        injection.extend((0..n).filter(|&x| !used[x]));
        let mut decoration = self.decoration.clone();
        decoration.resize(n, group.identity());
        (
            FiMorphism {
                target: n,
                injection,
                decoration,
            },
            n - m,
        )
    }

    /// Inverse of an invertible morphism.
    pub fn inverse(&self, group: &FiniteGroup) -> FiMorphism {
        assert!(self.is_invertible());
        let n = self.target;
        let mut injection = vec![0; n];
        let mut decoration = vec![group.identity(); n];
        for x in 0..n {
            let y = self.injection[x];
            injection[y] = x;
            decoration[y] = group.inverse(self.decoration[x]);
        }
        FiMorphism {
            target: n,
            injection,
            decoration,
        }
    }
}

impl fmt::Display for FiMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] (", self.source(), self.target)?;
        for (i, (&x, &g)) in self.injection.iter().zip(&self.decoration).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", i + 1, x + 1)?;
            if g != 0 {
                write!(f, "·g{g}")?;
            }
        }
        write!(f, ")")
    }
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling_factorial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).product()
}

/// `|Hom(m, n)| = |G|^m · n!/(n-m)!`.
pub fn hom_size(m: usize, n: usize, group_order: usize) -> usize {
    if m > n {
        return 0;
    }
    group_order.pow(m as u32) * falling_factorial(n, m)
}

/// Position of `f` in the canonical ordering of `Hom(m, n)`: injection tuple
/// lexicographically, then decoration tuple lexicographically.
pub fn hom_index(f: &FiMorphism, group_order: usize) -> usize {
    let (m, n) = (f.source(), f.target());
    let mut used = vec![false; n];
    let mut inj_rank = 0;
    for (i, &x) in f.injection.iter().enumerate() {
        let smaller = (0..x).filter(|&y| !used[y]).count();
        inj_rank += smaller * falling_factorial(n - i - 1, m - i - 1);
        used[x] = true;
    }
    let dec_rank = f
        .decoration
        .iter()
        .fold(0, |acc, &g| acc * group_order + g);
    inj_rank * group_order.pow(m as u32) + dec_rank
}

/// Inverse of [`hom_index`].
pub fn morphism_at(m: usize, n: usize, index: usize, group: &FiniteGroup) -> FiMorphism {
    let order = group.order();
    let dec_count = order.pow(m as u32);
    assert!(index < hom_size(m, n, order), "hom index out of range");
    let (mut inj_rank, mut dec_rank) = (index / dec_count, index % dec_count);
    let mut used = vec![false; n];
    let mut injection = Vec::with_capacity(m);
    for i in 0..m {
        let block = falling_factorial(n - i - 1, m - i - 1);
        let mut skip = inj_rank / block;
        inj_rank %= block;
        let x = (0..n)
            .find(|&y| {
                if used[y] {
                    return false;
                }
                if skip == 0 {
                    return true;
                }
                skip -= 1;
                false
            })
            .unwrap();
        used[x] = true;
        injection.push(x);
    }
    let mut decoration = vec![0; m];
    for slot in decoration.iter_mut().rev() {
        *slot = dec_rank % order;
        dec_rank /= order;
    }
    FiMorphism {
        target: n,
        injection,
        decoration,
    }
}

/// All of `Hom(m, n)` in canonical order. Empty when `m > n`.
pub fn enumerate_hom(m: usize, n: usize, group: &FiniteGroup) -> Vec<FiMorphism> {
    let mut out = Vec::with_capacity(hom_size(m, n, group.order()));
    if m > n {
        return out;
    }
    let order = group.order();
    let mut injection = Vec::with_capacity(m);
    let mut used = vec![false; n];
    fn rec(
        m: usize,
        n: usize,
        order: usize,
        injection: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<FiMorphism>,
    ) {
        if injection.len() == m {
            let total = order.pow(m as u32);
            for d in 0..total {
                let mut decoration = vec![0; m];
                let mut r = d;
                for slot in decoration.iter_mut().rev() {
                    *slot = r % order;
                    r /= order;
                }
                out.push(FiMorphism {
                    target: n,
                    injection: injection.clone(),
                    decoration,
                });
            }
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                injection.push(x);
                rec(m, n, order, injection, used, out);
                injection.pop();
                used[x] = false;
            }
        }
    }
    rec(m, n, order, &mut injection, &mut used, &mut out);
    out
}

/// Generating set of `G_n = G ≀ S_n`: the adjacent transpositions
/// `s_1, …, s_{n-1}`, then one coordinate-1 decoration per generator of `G`.
pub fn group_generators(n: usize, group: &FiniteGroup) -> Vec<FiMorphism> {
    if n == 0 {
        return Vec::new();
    }
    let mut gens = Vec::with_capacity(n - 1 + group.generators().len());
    for i in 0..n - 1 {
        let mut s = FiMorphism::identity(n, group);
        s.injection.swap(i, i + 1);
        gens.push(s);
    }
    for &h in group.generators() {
        let mut d = FiMorphism::identity(n, group);
        d.decoration[0] = h;
        gens.push(d);
    }
    gens
}

/// Number of entries of [`group_generators`]`(n, group)`.
pub fn generator_count(n: usize, group: &FiniteGroup) -> usize {
    if n == 0 {
        0
    } else {
        n - 1 + group.generators().len()
    }
}

/// Expresses an element of `G_n` as a word in [`group_generators`]: the
/// returned indices `w` satisfy `unit = gen[w[0]] ∘ gen[w[1]] ∘ …`.
pub fn generator_word(unit: &FiMorphism, group: &FiniteGroup) -> Vec<usize> {
    assert!(unit.is_invertible(), "generator_word needs an element of G_n");
    let n = unit.target();
    let mut word = permutation_word(&unit.injection);
    for (j, &g) in unit.decoration.iter().enumerate() {
        if g == group.identity() {
            continue;
        }
        // coordinate-j decoration = τ ∘ (decoration on 1) ∘ τ⁻¹ with τ = s_j ∘ … ∘ s_1
        word.extend((0..j).rev());
        word.extend(group.word(g).iter().map(|&i| n - 1 + i));
        word.extend(0..j);
    }
    word
}

/// Word in adjacent transpositions (generator `i` swaps points `i`, `i+1`)
/// for a permutation given by its images.
fn permutation_word(images: &[usize]) -> Vec<usize> {
    let mut p = images.to_vec();
    let mut descents = Vec::new();
    loop {
        match (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            Some(i) => {
                descents.push(i);
                p.swap(i, i + 1);
            }
            None => break,
        }
    }
    descents.reverse();
    descents
}
