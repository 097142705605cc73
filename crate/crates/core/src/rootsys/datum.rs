use std::collections::{HashMap, VecDeque};

use super::cartan::{CartanType, Family};
use crate::error::{Error, Result};

/// Default cap on the number of positive roots before a Cartan matrix is
/// declared to be of infinite type.
pub const ROOT_BOUND: usize = 4096;

/// A root datum in the simply-connected normalization: roots are written in
/// the basis of simple roots, coroots in the basis of simple coroots, and the
/// cocharacter lattice is the coroot lattice.
///
/// Root indices `0..N` are the positive roots ordered by height; index `k + N`
/// is the negative of root `k`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    reflect: Vec<Vec<usize>>,
    eps: Vec<usize>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        Self::with_bound(cartan_type, ROOT_BOUND)
    }

    pub fn with_bound(cartan_type: CartanType, bound: usize) -> Result<Self> {
        let cartan = cartan_type.matrix();
        super::cartan::validate_matrix(&cartan)?;
        let r = cartan.len();

        let unit = |i: usize| (0..r).map(|j| i64::from(i == j)).collect::<Vec<_>>();
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = (0..r).map(|i| (unit(i), unit(i))).collect();
        let mut seen: HashMap<Vec<i64>, usize> = pos.iter().enumerate().map(|(k, p)| (p.0.clone(), k)).collect();
        let mut queue: VecDeque<usize> = (0..r).collect();
        while let Some(k) = queue.pop_front() {
            for i in 0..r {
                let (root, coroot) = reflect_pair(&cartan, i, &pos[k].0, &pos[k].1);
                if root.iter().all(|&x| x >= 0) && !seen.contains_key(&root) {
                    if pos.len() >= bound {
                        return Err(Error::InfiniteType { bound });
                    }
                    seen.insert(root.clone(), pos.len());
                    queue.push_back(pos.len());
                    pos.push((root, coroot));
                }
            }
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });

        let npos = pos.len();
        let mut roots = Vec::with_capacity(2 * npos);
        let mut coroots = Vec::with_capacity(2 * npos);
        for (a, c) in &pos {
            roots.push(a.clone());
            coroots.push(c.clone());
        }
        for (a, c) in &pos {
            roots.push(a.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();
        let reflect = (0..r)
            .map(|i| {
                (0..2 * npos)
                    .map(|k| {
                        let (img, _) = reflect_pair(&cartan, i, &roots[k], &coroots[k]);
                        index[&img]
                    })
                    .collect()
            })
            .collect();
        Ok(Self { cartan_type, cartan, roots, coroots, index, reflect, eps: (0..r).collect() })
    }

    /// Replaces the diagram automorphism. `eps[i]` is the image of node `i`.
    pub fn with_eps(mut self, eps: Vec<usize>) -> Result<Self> {
        let r = self.rank();
        let mut hit = vec![false; r];
        if eps.len() != r {
            return Err(Error::InvalidEps(format!("expected a permutation of {r} nodes")));
        }
        for &e in &eps {
            if e >= r || std::mem::replace(&mut hit[e], true) {
                return Err(Error::InvalidEps("not a permutation".into()));
            }
        }
        for i in 0..r {
            for j in 0..r {
                if self.cartan[eps[i]][eps[j]] != self.cartan[i][j] {
                    return Err(Error::InvalidEps("does not preserve the Cartan matrix".into()));
                }
            }
        }
        self.eps = eps;
        Ok(self)
    }

    /// Parses `id`, `flip`, `swap` or an explicit one-based list like `[2,1]`.
    pub fn parse_eps(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        let r = self.rank();
        match text {
            "" | "id" | "identity" | "none" => Ok((0..r).collect()),
            "flip" => {
                let comps = self.cartan_type.components();
                if comps.is_empty() {
                    return Err(Error::InvalidEps("flip needs a named Cartan type".into()));
                }
                let mut eps: Vec<usize> = (0..r).collect();
                for (fam, n, off) in comps {
                    match fam {
                        Family::A => (0..n).for_each(|i| eps[off + i] = off + n - 1 - i),
                        Family::D => eps.swap(off + n - 2, off + n - 1),
                        Family::E if n == 6 => {
                            eps.swap(off, off + 5);
                            eps.swap(off + 2, off + 4);
                        }
                        _ => return Err(Error::InvalidEps(format!("{fam:?}{n} has no diagram flip"))),
                    }
                }
                Ok(eps)
            }
            "swap" => {
                let comps = self.cartan_type.components();
                match comps.as_slice() {
                    [(f1, n1, _), (f2, n2, _)] if f1 == f2 && n1 == n2 => {
                        Ok((0..r).map(|i| (i + n1) % r).collect())
                    }
                    _ => Err(Error::InvalidEps("swap needs two identical components".into())),
                }
            }
            _ => {
                let one_based: Vec<i64> = serde_json::from_str(text)
                    .map_err(|_| Error::InvalidEps(format!("cannot parse {text:?}")))?;
                one_based
                    .into_iter()
                    .map(|x| {
                        usize::try_from(x - 1)
                            .map_err(|_| Error::InvalidEps("entries are one-based".into()))
                    })
                    .collect()
            }
        }
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Number of simple roots, which is also the rank of the torus here.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.num_positive()
    }

    pub fn negate(&self, k: usize) -> usize {
        let n = self.num_positive();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    /// Image of root `k` under the simple reflection `s_i`.
    pub fn reflect(&self, i: usize, k: usize) -> usize {
        self.reflect[i][k]
    }

    pub fn eps(&self) -> &[usize] {
        &self.eps
    }

    pub fn eps_is_identity(&self) -> bool {
        self.eps.iter().enumerate().all(|(i, &e)| i == e)
    }

    /// Image of root `k` under the linear extension of the diagram automorphism.
    pub fn eps_root(&self, k: usize) -> usize {
        let mut img = vec![0; self.rank()];
        for (i, &x) in self.roots[k].iter().enumerate() {
            img[self.eps[i]] = x;
        }
        self.index[&img]
    }

    /// Pairing `<coroot_i, root_k>`.
    pub fn pairing(&self, i: usize, k: usize) -> i64 {
        self.cartan[i].iter().zip(&self.roots[k]).map(|(a, b)| a * b).sum()
    }
}

fn reflect_pair(a: &[Vec<i64>], i: usize, root: &[i64], coroot: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let c: i64 = a[i].iter().zip(root).map(|(x, y)| x * y).sum();
    let d: i64 = coroot.iter().enumerate().map(|(j, y)| y * a[j][i]).sum();
    let mut root = root.to_vec();
    let mut coroot = coroot.to_vec();
    root[i] -= c;
    coroot[i] -= d;
    (root, coroot)
}
