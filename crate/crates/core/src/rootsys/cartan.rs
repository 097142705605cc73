use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type: either a product of irreducible finite types, or an explicit
/// generalized Cartan matrix (which may turn out to be of infinite type).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CartanType {
    Product(Vec<(Family, usize)>),
    Matrix(Vec<Vec<i64>>),
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match self {
            Self::Product(cs) => cs.iter().map(|c| c.1).sum(),
            Self::Matrix(m) => m.len(),
        }
    }

    /// Irreducible components as `(family, rank, offset of first node)`.
    pub fn components(&self) -> Vec<(Family, usize, usize)> {
        match self {
            Self::Product(cs) => {
                let mut off = 0;
                cs.iter()
                    .map(|&(f, n)| {
                        let c = (f, n, off);
                        off += n;
                        c
                    })
                    .collect()
            }
            Self::Matrix(_) => Vec::new(),
        }
    }

    /// Cartan matrix with `a[i][j] = <coroot_i, root_j>` (Bourbaki labelling).
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        match self {
            Self::Matrix(m) => m.clone(),
            Self::Product(_) => {
                let r = self.rank();
                let mut a = vec![vec![0i64; r]; r];
                for (fam, n, off) in self.components() {
                    let block = irreducible(fam, n);
                    for i in 0..n {
                        for j in 0..n {
                            a[off + i][off + j] = block[i][j];
                        }
                    }
                }
                a
            }
        }
    }
}

fn irreducible(fam: Family, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match fam {
        Family::A | Family::B | Family::C => (1..n).for_each(|i| link(i - 1, i)),
        Family::D => {
            (1..n - 1).for_each(|i| link(i - 1, i));
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            (3..n).for_each(|i| link(i - 1, i));
        }
        Family::F => (1..4).for_each(|i| link(i - 1, i)),
        Family::G => link(0, 1),
    }
    match fam {
        Family::B => a[n - 1][n - 2] = -2,
        Family::C => a[n - 2][n - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

fn valid_rank(fam: Family, n: usize) -> bool {
    match fam {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 4,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    }
}

/// Checks the axioms of a generalized Cartan matrix.
pub fn validate_matrix(a: &[Vec<i64>]) -> Result<()> {
    let r = a.len();
    if r == 0 {
        return Err(Error::InvalidCartanType("empty matrix".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != r {
            return Err(Error::InvalidCartanType("matrix is not square".into()));
        }
        for (j, &x) in row.iter().enumerate() {
            let ok = if i == j { x == 2 } else { x <= 0 && ((x == 0) == (a[j][i] == 0)) };
            if !ok {
                return Err(Error::InvalidCartanType(format!("bad entry at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `A2`, `B2`, `A1xA1`, `G2`, ... or a matrix literal such as
    /// `[[2,-1],[-1,2]]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let m: Vec<Vec<i64>> = serde_json::from_str(s)
                .map_err(|e| Error::InvalidCartanType(format!("{s}: {e}")))?;
            validate_matrix(&m)?;
            return Ok(Self::Matrix(m));
        }
        let mut comps = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let part = part.trim();
            let bad = || Error::InvalidCartanType(part.to_string());
            let mut it = part.chars();
            let fam = match it.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(bad()),
            };
            let n: usize = it.as_str().parse().map_err(|_| bad())?;
            if !valid_rank(fam, n) {
                return Err(bad());
            }
            comps.push((fam, n));
        }
        Ok(Self::Product(comps))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Product(cs) => {
                let parts: Vec<String> = cs.iter().map(|(fam, n)| format!("{fam:?}{n}")).collect();
                f.write_str(&parts.join("x"))
            }
            Self::Matrix(m) => write!(f, "{}", serde_json::to_string(m).unwrap()),
        }
    }
}
