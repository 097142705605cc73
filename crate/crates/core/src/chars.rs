//! Torsion characters of the torus, their Weyl group action, stabilizer
//! subsystems and the twisted action of the diagram automorphism.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rootsys::{ReflectionSubgroup, WeylElement, WeylGroup};

/// Index of a character in the lexicographic enumeration of `ufs_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lambda(pub u32);

impl Lambda {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A character with values in `(1/n)Z/Z` on each simple coroot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterPoint {
    pub numerators: Vec<u32>,
    pub n: u32,
}

impl CharacterPoint {
    /// Each value rendered as a reduced fraction, `0` for zero.
    pub fn entries(&self) -> Vec<String> {
        self.numerators
            .iter()
            .map(|&a| {
                if a == 0 {
                    "0".to_string()
                } else {
                    let g = a.gcd(&self.n);
                    format!("{}/{}", a / g, self.n / g)
                }
            })
            .collect()
    }

    /// Parses `(1/3,0)` or `1/3,0` at level `n`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Vec<&str> = body.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        Self::from_entries(&parts, n)
    }

    pub fn from_entries<S: AsRef<str>>(entries: &[S], n: u32) -> Result<Self> {
        let bad = |e: &str| Error::InvalidCharacter(format!("{e:?} is not in (1/{n})Z/Z"));
        let mut numerators = Vec::with_capacity(entries.len());
        for e in entries {
            let e = e.as_ref().trim().trim_matches('"');
            let (p, q) = match e.split_once('/') {
                Some((p, q)) => (p.trim(), q.trim()),
                None => (e, "1"),
            };
            let p: i64 = p.parse().map_err(|_| bad(e))?;
            let q: i64 = q.parse().map_err(|_| bad(e))?;
            if q <= 0 || (p * n as i64) % q != 0 {
                return Err(bad(e));
            }
            numerators.push((p * n as i64 / q).rem_euclid(n as i64) as u32);
        }
        Ok(Self { numerators, n })
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries().join(","))
    }
}

/// Stabilizer data of a single character.
#[derive(Debug, Clone)]
pub struct LambdaData {
    pub lambda: Lambda,
    pub positive_roots: Vec<usize>,
    pub subgroup: Arc<ReflectionSubgroup>,
}

/// The set `ufs_n` for a root datum in the simply-connected normalization,
/// with the W-action and the coordinate permutation `D` acting on it.
#[derive(Debug)]
pub struct CharacterSpace {
    group: Arc<WeylGroup>,
    n: u32,
    points: Vec<CharacterPoint>,
    act: Vec<Vec<u32>>,
    dbar_perm: Vec<usize>,
    dbar: Vec<u32>,
    simple_stab: Vec<u64>,
    stab: Vec<OnceLock<LambdaData>>,
    memo: Mutex<HashMap<Vec<bool>, Arc<ReflectionSubgroup>>>,
}

impl CharacterSpace {
    /// `dbar` permutes the coordinates: `(D lambda)_i = lambda_{dbar^-1(i)}`.
    /// When absent it defaults to the diagram automorphism.
    pub fn new(group: Arc<WeylGroup>, n: u32, dbar: Option<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCharacter("torsion level must be at least 1".into()));
        }
        let d = group.datum();
        let r = d.rank();
        let dbar_perm = dbar.unwrap_or_else(|| d.eps().to_vec());
        check_twist(d.cartan(), d.eps(), &dbar_perm)?;

        let count = (n as usize).checked_pow(r as u32).filter(|&c| c <= 1 << 22).ok_or_else(|| {
            Error::InvalidCharacter(format!("ufs_{n} is too large at rank {r}"))
        })?;
        let points: Vec<CharacterPoint> = (0..count)
            .map(|mut idx| {
                let mut num = vec![0u32; r];
                for i in (0..r).rev() {
                    num[i] = (idx % n as usize) as u32;
                    idx /= n as usize;
                }
                CharacterPoint { numerators: num, n }
            })
            .collect();
        let index_of = |num: &[i64]| -> u32 {
            num.iter().fold(0u32, |acc, &x| acc * n + x.rem_euclid(n as i64) as u32)
        };

        let mut act = Vec::with_capacity(group.size());
        for w in group.elements() {
            let winv = group.inverse(w);
            let images: Vec<usize> = (0..r).map(|i| group.act_root(winv, i)).collect();
            act.push(
                points
                    .iter()
                    .map(|p| {
                        let num: Vec<i64> = images
                            .iter()
                            .map(|&k| d.coroot(k).iter().zip(&p.numerators).map(|(c, &x)| c * x as i64).sum())
                            .collect();
                        index_of(&num)
                    })
                    .collect(),
            );
        }
        let dbar: Vec<u32> = points
            .iter()
            .map(|p| {
                let mut num = vec![0i64; r];
                for (i, &x) in p.numerators.iter().enumerate() {
                    num[dbar_perm[i]] = x as i64;
                }
                index_of(&num)
            })
            .collect();
        let simple_stab = points
            .iter()
            .map(|p| (0..r).filter(|&i| p.numerators[i] == 0).fold(0u64, |m, i| m | 1 << i))
            .collect();
        let stab = (0..count).map(|_| OnceLock::new()).collect();
        Ok(Self { group, n, points, act, dbar_perm, dbar, simple_stab, stab, memo: Mutex::new(HashMap::new()) })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> impl DoubleEndedIterator<Item = Lambda> + ExactSizeIterator {
        (0..self.points.len() as u32).map(Lambda)
    }

    pub fn trivial(&self) -> Lambda {
        Lambda(0)
    }

    pub fn point(&self, l: Lambda) -> &CharacterPoint {
        &self.points[l.index()]
    }

    pub fn lookup(&self, p: &CharacterPoint) -> Result<Lambda> {
        if p.n != self.n || p.numerators.len() != self.group.rank() {
            return Err(Error::InvalidCharacter(format!("{p} does not live in ufs_{}", self.n)));
        }
        Ok(Lambda(p.numerators.iter().fold(0, |acc, &x| acc * self.n + x)))
    }

    pub fn parse(&self, s: &str) -> Result<Lambda> {
        self.lookup(&CharacterPoint::parse(s, self.n)?)
    }

    /// `w . lambda`, i.e. `lambda` composed with `w^-1` on cocharacters.
    pub fn act(&self, w: WeylElement, l: Lambda) -> Lambda {
        Lambda(self.act[w.index()][l.index()])
    }

    pub fn act_d(&self, l: Lambda) -> Lambda {
        Lambda(self.dbar[l.index()])
    }

    pub fn act_d_pow(&self, l: Lambda, k: usize) -> Lambda {
        (0..k).fold(l, |x, _| self.act_d(x))
    }

    pub fn dbar_perm(&self) -> &[usize] {
        &self.dbar_perm
    }

    /// Order of `D` acting on `ufs_n`.
    pub fn dbar_order(&self) -> usize {
        let mut k = 1;
        while self.all().any(|l| self.act_d_pow(l, k) != l) {
            k += 1;
        }
        k
    }

    /// Whether the simple reflection `s_i` fixes `lambda`, i.e. `s_i` lies in
    /// `W_lambda`.
    pub fn simple_in_stabilizer(&self, i: usize, l: Lambda) -> bool {
        self.simple_stab[l.index()] >> i & 1 == 1
    }

    /// `lambda(coroot of root k)` as a numerator modulo `n`.
    pub fn pairing(&self, l: Lambda, k: usize) -> u32 {
        let c = self.group.datum().coroot(k);
        let s: i64 = c.iter().zip(&self.points[l.index()].numerators).map(|(a, &x)| a * x as i64).sum();
        s.rem_euclid(self.n as i64) as u32
    }

    pub fn stabilizer(&self, l: Lambda) -> &LambdaData {
        self.stab[l.index()].get_or_init(|| {
            let npos = self.group.datum().num_positive();
            let positive: Vec<bool> = (0..npos).map(|k| self.pairing(l, k) == 0).collect();
            let positive_roots = (0..npos).filter(|&k| positive[k]).collect();
            let mut memo = self.memo.lock().unwrap();
            let subgroup = memo
                .entry(positive.clone())
                .or_insert_with(|| Arc::new(ReflectionSubgroup::new(&self.group, positive)))
                .clone();
            LambdaData { lambda: l, positive_roots, subgroup }
        })
    }

    pub fn subgroup(&self, l: Lambda) -> &ReflectionSubgroup {
        &self.stabilizer(l).subgroup
    }
}

/// Checks `sigma s_i sigma^-1 = s_{eps(i)}` on the coroot lattice.
fn check_twist(a: &[Vec<i64>], eps: &[usize], sigma: &[usize]) -> Result<()> {
    let r = a.len();
    let mut seen = vec![false; r];
    if sigma.len() != r || sigma.iter().any(|&x| x >= r || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::IncompatibleTwist("not a permutation of the coordinates".into()));
    }
    let mut inv = vec![0; r];
    for (i, &x) in sigma.iter().enumerate() {
        inv[x] = i;
    }
    // s_i(e_j) = e_j - a[j][i] e_i on the coroot lattice.
    for i in 0..r {
        for j in 0..r {
            let mut lhs = vec![0i64; r];
            lhs[j] += 1;
            lhs[sigma[i]] -= a[inv[j]][i];
            let mut rhs = vec![0i64; r];
            rhs[j] += 1;
            rhs[eps[i]] -= a[j][eps[i]];
            if lhs != rhs {
                return Err(Error::IncompatibleTwist(format!("fails on generator s{}", i + 1)));
            }
        }
    }
    Ok(())
}
