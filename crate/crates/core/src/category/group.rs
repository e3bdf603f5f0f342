use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of the decoration group `G`.
///
/// JSON forms: `{"trivial": true}`, `{"cyclic": q}`,
/// `{"table": [[...]], "identity": i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Trivial { trivial: bool },
    Cyclic { cyclic: usize },
    Table { table: Vec<Vec<usize>>, identity: usize },
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec::Trivial { trivial: true }
    }

    pub fn cyclic(q: usize) -> Self {
        GroupSpec::Cyclic { cyclic: q }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial { .. } => write!(f, "1"),
            GroupSpec::Cyclic { cyclic } => write!(f, "C{cyclic}"),
            GroupSpec::Table { table, .. } => write!(f, "G[{}]", table.len()),
        }
    }
}

/// A finite group given by its multiplication table. Elements are
/// `0..order`; their order is the canonical element ordering used for
/// decoration tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    spec: GroupSpec,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// Shortest word (indices into `generators`) for every element.
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let (table, identity) = match &spec {
            GroupSpec::Trivial { trivial: true } => (vec![vec![0]], 0),
            GroupSpec::Trivial { trivial: false } => {
                return Err(Error::InvalidGroup("\"trivial\" must be true".into()))
            }
            GroupSpec::Cyclic { cyclic: q } => {
                if *q == 0 {
                    return Err(Error::InvalidGroup("cyclic group of order 0".into()));
                }
                let t = (0..*q).map(|a| (0..*q).map(|b| (a + b) % q).collect()).collect();
                (t, 0)
            }
            GroupSpec::Table { table, identity } => (table.clone(), *identity),
        };
        validate_table(&table, identity)?;
        let order = table.len();
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| table[a][b] == identity).unwrap())
            .collect();

        // Greedy generating set: take the smallest element outside the
        // subgroup generated so far.
        let mut generators = Vec::new();
        let mut reached = closure(&table, identity, &generators);
        while let Some(g) = (0..order).find(|&g| !reached[g]) {
            generators.push(g);
            reached = closure(&table, identity, &generators);
        }

        // Breadth-first search over right multiplication by generators.
        let mut words: Vec<Option<Vec<usize>>> = vec![None; order];
        words[identity] = Some(Vec::new());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in generators.iter().enumerate() {
                let y = table[x][g];
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(i);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let words = words.into_iter().map(Option::unwrap).collect();

        Ok(FiniteGroup {
            spec,
            table,
            identity,
            inverses,
            generators,
            words,
        })
    }

    pub fn trivial() -> Self {
        Self::new(GroupSpec::trivial()).unwrap()
    }

    pub fn cyclic(q: usize) -> Self {
        Self::new(GroupSpec::cyclic(q)).expect("positive order")
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Elements used as the decoration generators `h` of `G_n`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `g = generators[w[0]] * generators[w[1]] * ...`
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }
}

fn closure(table: &[Vec<usize>], identity: usize, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; table.len()];
    seen[identity] = true;
    let mut stack = vec![identity];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = table[x][g];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

fn validate_table(table: &[Vec<usize>], identity: usize) -> Result<()> {
    let n = table.len();
    let bad = |m: String| Err(Error::InvalidGroup(m));
    if n == 0 {
        return bad("empty multiplication table".into());
    }
    if identity >= n {
        return bad(format!("identity {identity} out of range"));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return bad(format!("row {a} has length {} (expected {n})", row.len()));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return bad(format!("entry {x} out of range in row {a}"));
        }
    }
    for a in 0..n {
        if table[identity][a] != a || table[a][identity] != a {
            return bad(format!("{identity} is not a two-sided identity (fails at {a})"));
        }
        if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
            return bad(format!("element {a} has no inverse"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return bad(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(())
}
