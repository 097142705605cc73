use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use super::datum::RootDatum;
use crate::error::{Error, Result};

/// Default cap on the group order.
pub const GROUP_BOUND: usize = 100_000;

/// An element of the Weyl group, identified by its position in the canonical
/// enumeration order `(length, root permutation)`. Comparing two elements
/// therefore compares their canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement(pub u32);

impl WeylElement {
    pub const IDENTITY: Self = WeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of simple reflections, as a bitmask over zero-based node indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GenSet(pub u64);

impl GenSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(rank: usize) -> Self {
        Self((1u64 << rank) - 1)
    }

    pub fn from_nodes(nodes: impl IntoIterator<Item = usize>) -> Self {
        Self(nodes.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn nodes(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0, .., rank-1}`, in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        (0..1u64 << rank).map(GenSet)
    }

    pub fn image(self, eps: &[usize]) -> Self {
        Self::from_nodes(self.nodes().map(|i| eps[i]))
    }

    /// Parses `full`, `empty`, or a comma-separated list of one-based nodes.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        match s {
            "full" | "all" | "I" => return Ok(Self::full(rank)),
            "empty" | "none" | "" => return Ok(Self::empty()),
            _ => {}
        }
        let s = s.trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        let mut set = Self::empty();
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSubset(format!("cannot parse {part:?}")))?;
            if i == 0 || i > rank {
                return Err(Error::InvalidSubset(format!("node {i} out of range 1..={rank}")));
            }
            set.0 |= 1 << (i - 1);
        }
        Ok(set)
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.nodes().map(|i| (i + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// The Weyl group of a root datum with all elements enumerated.
#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    perms: Vec<Vec<u16>>,
    lengths: Vec<u32>,
    inv: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    words: Vec<Vec<u8>>,
    support: Vec<u64>,
    reflections: Vec<WeylElement>,
    eps: Vec<u32>,
    lower: Vec<OnceLock<Vec<u64>>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        Self::with_bound(datum, GROUP_BOUND)
    }

    pub fn with_bound(datum: RootDatum, bound: usize) -> Result<Self> {
        let r = datum.rank();
        let npos = datum.num_positive();
        let identity: Vec<u16> = (0..npos as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::from([identity.clone()]);
        let mut perms = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for i in 0..r {
                let p: Vec<u16> = perms[w].iter().map(|&k| datum.reflect(i, k as usize) as u16).collect();
                if !seen.contains(&p) {
                    if perms.len() >= bound {
                        return Err(Error::InfiniteType { bound });
                    }
                    seen.insert(p.clone());
                    queue.push_back(perms.len());
                    perms.push(p);
                }
            }
        }
        let length_of = |p: &[u16]| p.iter().filter(|&&k| k as usize >= npos).count() as u32;
        perms.sort_by(|a, b| length_of(a).cmp(&length_of(b)).then_with(|| a.cmp(b)));
        let lengths: Vec<u32> = perms.iter().map(|p| length_of(p)).collect();
        let index: HashMap<&[u16], u32> = perms.iter().enumerate().map(|(k, p)| (p.as_slice(), k as u32)).collect();

        let image = |p: &[u16], k: usize| -> usize {
            if k < npos {
                p[k] as usize
            } else {
                datum.negate(p[k - npos] as usize)
            }
        };
        let size = perms.len();
        let mut left = vec![vec![0u32; size]; r];
        let mut right = vec![vec![0u32; size]; r];
        let mut inv = vec![0u32; size];
        for (w, p) in perms.iter().enumerate() {
            for i in 0..r {
                let l: Vec<u16> = p.iter().map(|&k| datum.reflect(i, k as usize) as u16).collect();
                left[i][w] = index[l.as_slice()];
                let rr: Vec<u16> = (0..npos).map(|k| image(p, datum.reflect(i, k)) as u16).collect();
                right[i][w] = index[rr.as_slice()];
            }
            let mut full_inv = vec![0usize; 2 * npos];
            for k in 0..2 * npos {
                full_inv[image(p, k)] = k;
            }
            let q: Vec<u16> = full_inv[..npos].iter().map(|&k| k as u16).collect();
            inv[w] = index[q.as_slice()];
        }

        let mut words: Vec<Vec<u8>> = vec![Vec::new(); size];
        let mut support = vec![0u64; size];
        for w in 1..size {
            let i = (0..r).find(|&i| lengths[left[i][w] as usize] < lengths[w]).unwrap();
            let rest = left[i][w] as usize;
            let mut word = vec![i as u8];
            word.extend_from_slice(&words[rest]);
            words[w] = word;
            support[w] = support[rest] | 1 << i;
        }

        let mut g = Self {
            datum,
            perms,
            lengths,
            inv,
            left,
            right,
            words,
            support,
            reflections: Vec::new(),
            eps: Vec::new(),
            lower: (0..size).map(|_| OnceLock::new()).collect(),
        };

        let mut refl: Vec<WeylElement> = Vec::with_capacity(npos);
        for k in 0..npos {
            if k < r {
                refl.push(g.simple(k));
                continue;
            }
            let (i, m) = (0..r)
                .map(|i| (i, g.datum.reflect(i, k)))
                .find(|&(_, m)| m < k)
                .expect("non-simple positive root has a lower neighbour");
            let s = g.simple(i);
            refl.push(g.mul(g.mul(s, refl[m]), s));
        }
        g.reflections = refl;
        g.eps = (0..size)
            .map(|w| {
                g.words[w]
                    .iter()
                    .fold(WeylElement::IDENTITY, |x, &i| g.mul_simple_right(x, g.datum.eps()[i as usize]))
                    .0
            })
            .collect();
        Ok(g)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn size(&self) -> usize {
        self.perms.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = WeylElement> + ExactSizeIterator {
        (0..self.size() as u32).map(WeylElement)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::IDENTITY
    }

    pub fn simple(&self, i: usize) -> WeylElement {
        WeylElement(self.left[i][0])
    }

    pub fn length(&self, w: WeylElement) -> u32 {
        self.lengths[w.index()]
    }

    pub fn max_length(&self) -> u32 {
        *self.lengths.last().unwrap()
    }

    pub fn longest(&self) -> WeylElement {
        WeylElement(self.size() as u32 - 1)
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inv[w.index()])
    }

    pub fn mul_simple_left(&self, i: usize, w: WeylElement) -> WeylElement {
        WeylElement(self.left[i][w.index()])
    }

    pub fn mul_simple_right(&self, w: WeylElement, i: usize) -> WeylElement {
        WeylElement(self.right[i][w.index()])
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        self.words[b.index()].iter().fold(a, |x, &i| self.mul_simple_right(x, i as usize))
    }

    /// ShortLex-minimal reduced word, zero-based.
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        word.iter().try_fold(WeylElement::IDENTITY, |x, &i| {
            if i < self.rank() {
                Ok(self.mul_simple_right(x, i))
            } else {
                Err(Error::Parse(format!("generator s{} out of range", i + 1)))
            }
        })
    }

    pub fn support(&self, w: WeylElement) -> GenSet {
        GenSet(self.support[w.index()])
    }

    /// Index of `w(root k)`.
    pub fn act_root(&self, w: WeylElement, k: usize) -> usize {
        let n = self.datum.num_positive();
        let p = &self.perms[w.index()];
        if k < n {
            p[k] as usize
        } else {
            self.datum.negate(p[k - n] as usize)
        }
    }

    /// The reflection in the positive root `k`.
    pub fn reflection(&self, k: usize) -> WeylElement {
        self.reflections[k]
    }

    /// Whether `l(w s_alpha) > l(w)` for the positive root `k`.
    pub fn length_dichotomy(&self, w: WeylElement, k: usize) -> bool {
        self.length(self.mul(w, self.reflection(k))) > self.length(w)
    }

    pub fn is_left_descent(&self, i: usize, w: WeylElement) -> bool {
        self.length(self.mul_simple_left(i, w)) < self.length(w)
    }

    pub fn is_right_descent(&self, w: WeylElement, i: usize) -> bool {
        self.length(self.mul_simple_right(w, i)) < self.length(w)
    }

    /// The diagram automorphism on W.
    pub fn eps(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.eps[w.index()])
    }

    pub fn eps_pow(&self, w: WeylElement, k: usize) -> WeylElement {
        (0..k).fold(w, |x, _| self.eps(x))
    }

    /// Order of the diagram automorphism acting on W.
    pub fn eps_order(&self) -> usize {
        let e = self.datum.eps();
        let mut k = 1;
        let mut p: Vec<usize> = e.to_vec();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| e[x]).collect();
            k += 1;
        }
        k
    }

    /// Bitset of the Bruhat interval below `w`.
    pub fn lower_interval(&self, w: WeylElement) -> &[u64] {
        self.lower[w.index()].get_or_init(|| {
            let blocks = self.size().div_ceil(64);
            let mut set = vec![0u64; blocks];
            set[0] = 1;
            for &i in self.word(w) {
                let members: Vec<usize> = (0..self.size()).filter(|&x| set[x / 64] >> (x % 64) & 1 == 1).collect();
                for x in members {
                    let y = self.right[i as usize][x] as usize;
                    set[y / 64] |= 1 << (y % 64);
                }
            }
            set
        })
    }

    /// Bruhat order via the subword property.
    pub fn bruhat_leq(&self, x: WeylElement, w: WeylElement) -> bool {
        if self.length(x) > self.length(w) {
            return false;
        }
        let set = self.lower_interval(w);
        set[x.index() / 64] >> (x.index() % 64) & 1 == 1
    }

    pub fn in_parabolic(&self, w: WeylElement, j: GenSet) -> bool {
        self.support(w).is_subset(j)
    }

    /// Elements of the standard parabolic subgroup `W_J`.
    pub fn parabolic(&self, j: GenSet) -> Vec<WeylElement> {
        self.elements().filter(|&w| self.in_parabolic(w, j)).collect()
    }

    /// Minimal-length representatives of the cosets `w W_J`.
    pub fn min_parabolic_reps(&self, j: GenSet) -> Vec<WeylElement> {
        self.elements()
            .filter(|&w| j.nodes().all(|i| !self.is_right_descent(w, i)))
            .collect()
    }

    /// Splits `w = u b` with `u` minimal in `w W_J` and `b` in `W_J`.
    pub fn parabolic_decompose(&self, w: WeylElement, j: GenSet) -> (WeylElement, WeylElement) {
        let mut u = w;
        let mut b_word = Vec::new();
        while let Some(i) = j.nodes().find(|&i| self.is_right_descent(u, i)) {
            u = self.mul_simple_right(u, i);
            b_word.push(i);
        }
        b_word.reverse();
        let b = b_word.iter().fold(WeylElement::IDENTITY, |x, &i| self.mul_simple_right(x, i));
        (u, b)
    }

    /// One-based word rendering such as `s1 s2`.
    pub fn render_word(&self, w: WeylElement) -> String {
        let parts: Vec<String> = self.word(w).iter().map(|i| format!("s{}", i + 1)).collect();
        parts.join(" ")
    }

    pub fn word_one_based(&self, w: WeylElement) -> Vec<usize> {
        self.word(w).iter().map(|&i| i as usize + 1).collect()
    }

    /// Parses a word such as `s1 s2`, `1 2`, `s1s2`, or `1` for the identity
    /// when written as an empty string.
    pub fn parse_word(&self, s: &str) -> Result<WeylElement> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(WeylElement::IDENTITY);
        }
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == 's' || c == ',' || c == '*').filter(|t| !t.is_empty()) {
            let i: usize = tok.parse().map_err(|_| Error::Parse(format!("bad generator {tok:?}")))?;
            if i == 0 {
                return Err(Error::Parse("generators are one-based".into()));
            }
            letters.push(i - 1);
        }
        self.from_word(&letters)
    }
}
