use std::collections::VecDeque;
use std::sync::OnceLock;

use super::weyl::{WeylElement, WeylGroup};

const ABSENT: u32 = u32::MAX;

/// The reflection subgroup generated by the reflections in a closed set of
/// positive roots, viewed as a Coxeter system in its own right.
///
/// Members are numbered locally in order of `(internal length, canonical
/// form)`; local index 0 is the identity. The full Weyl group is the special
/// case where every positive root is included.
#[derive(Debug)]
pub struct ReflectionSubgroup {
    positive: Vec<bool>,
    simple_roots: Vec<usize>,
    simple: Vec<WeylElement>,
    members: Vec<WeylElement>,
    local: Vec<u32>,
    lengths: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    words: Vec<Vec<u8>>,
    lower: Vec<OnceLock<Vec<u64>>>,
    cosets: OnceLock<(Vec<WeylElement>, Vec<u32>)>,
}

impl ReflectionSubgroup {
    /// `positive[k]` marks the positive roots of the subsystem. The set must be
    /// the positive part of a root subsystem.
    pub fn new(g: &WeylGroup, positive: Vec<bool>) -> Self {
        let d = g.datum();
        let npos = d.num_positive();
        assert_eq!(positive.len(), npos);
        let simple_roots: Vec<usize> = (0..npos)
            .filter(|&a| positive[a])
            .filter(|&a| {
                let s = g.reflection(a);
                (0..npos).filter(|&b| b != a && positive[b]).all(|b| {
                    let img = g.act_root(s, b);
                    d.is_positive(img) && positive[img]
                })
            })
            .collect();
        let simple: Vec<WeylElement> = simple_roots.iter().map(|&a| g.reflection(a)).collect();

        let mut local = vec![ABSENT; g.size()];
        let mut found = vec![g.identity()];
        local[0] = 0;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(z) = queue.pop_front() {
            for &s in &simple {
                let y = g.mul(z, s);
                if local[y.index()] == ABSENT {
                    local[y.index()] = 0;
                    found.push(y);
                    queue.push_back(y);
                }
            }
        }
        let len_of = |z: WeylElement| -> u32 {
            (0..npos).filter(|&b| positive[b] && !d.is_positive(g.act_root(z, b))).count() as u32
        };
        let mut keyed: Vec<(u32, WeylElement)> = found.into_iter().map(|z| (len_of(z), z)).collect();
        keyed.sort();
        let members: Vec<WeylElement> = keyed.iter().map(|k| k.1).collect();
        let lengths: Vec<u32> = keyed.iter().map(|k| k.0).collect();
        for (i, z) in members.iter().enumerate() {
            local[z.index()] = i as u32;
        }
        let left: Vec<Vec<u32>> = simple
            .iter()
            .map(|&s| members.iter().map(|&z| local[g.mul(s, z).index()]).collect())
            .collect();
        let right: Vec<Vec<u32>> = simple
            .iter()
            .map(|&s| members.iter().map(|&z| local[g.mul(z, s).index()]).collect())
            .collect();
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); members.len()];
        for z in 1..members.len() {
            let i = (0..simple.len()).find(|&i| lengths[left[i][z] as usize] < lengths[z]).unwrap();
            let rest = left[i][z] as usize;
            let mut w = vec![i as u8];
            w.extend_from_slice(&words[rest]);
            words[z] = w;
        }
        let n = members.len();
        Self {
            positive,
            simple_roots,
            simple,
            members,
            local,
            lengths,
            left,
            right,
            words,
            lower: (0..n).map(|_| OnceLock::new()).collect(),
            cosets: OnceLock::new(),
        }
    }

    /// The whole Weyl group as a Coxeter system on its simple reflections.
    pub fn full(g: &WeylGroup) -> Self {
        Self::new(g, vec![true; g.datum().num_positive()])
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Number of Coxeter generators.
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn positive_roots(&self) -> &[bool] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.iter().filter(|&&b| b).count()
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple_roots
    }

    pub fn simple_reflections(&self) -> &[WeylElement] {
        &self.simple
    }

    pub fn members(&self) -> &[WeylElement] {
        &self.members
    }

    pub fn element(&self, z: usize) -> WeylElement {
        self.members[z]
    }

    pub fn contains(&self, w: WeylElement) -> bool {
        self.local[w.index()] != ABSENT
    }

    pub fn local_index(&self, w: WeylElement) -> Option<usize> {
        let i = self.local[w.index()];
        (i != ABSENT).then_some(i as usize)
    }

    /// Internal length of the member with local index `z`.
    pub fn length(&self, z: usize) -> u32 {
        self.lengths[z]
    }

    pub fn mul_simple_left(&self, i: usize, z: usize) -> usize {
        self.left[i][z] as usize
    }

    pub fn mul_simple_right(&self, z: usize, i: usize) -> usize {
        self.right[i][z] as usize
    }

    pub fn is_left_descent(&self, i: usize, z: usize) -> bool {
        self.lengths[self.left[i][z] as usize] < self.lengths[z]
    }

    /// ShortLex reduced word in the local generators.
    pub fn word(&self, z: usize) -> &[u8] {
        &self.words[z]
    }

    /// Bruhat order of the Coxeter system `(W_sub, S_sub)`, on local indices.
    pub fn bruhat_leq(&self, x: usize, z: usize) -> bool {
        if self.lengths[x] > self.lengths[z] {
            return false;
        }
        let set = self.lower[z].get_or_init(|| {
            let mut set = vec![0u64; self.size().div_ceil(64)];
            set[0] = 1;
            for &i in &self.words[z] {
                let cur: Vec<usize> = (0..self.size()).filter(|&y| set[y / 64] >> (y % 64) & 1 == 1).collect();
                for y in cur {
                    let t = self.right[i as usize][y] as usize;
                    set[t / 64] |= 1 << (t % 64);
                }
            }
            set
        });
        set[x / 64] >> (x % 64) & 1 == 1
    }

    /// Splits `w = w1 z` with `w1` of minimal length in `w W_sub` and `z` in
    /// `W_sub` (returned as a local index).
    pub fn decompose(&self, g: &WeylGroup, w: WeylElement) -> (WeylElement, usize) {
        let (min, z) = self.cosets.get_or_init(|| {
            let mut min = vec![WeylElement(ABSENT); g.size()];
            let mut zs = vec![ABSENT; g.size()];
            for w1 in g.elements() {
                if min[w1.index()].0 != ABSENT {
                    continue;
                }
                for (zi, &z) in self.members.iter().enumerate() {
                    let x = g.mul(w1, z);
                    min[x.index()] = w1;
                    zs[x.index()] = zi as u32;
                }
            }
            (min, zs)
        });
        (min[w.index()], z[w.index()] as usize)
    }

    /// Minimal-length coset representatives for `W / W_sub`.
    pub fn min_coset_reps(&self, g: &WeylGroup) -> Vec<WeylElement> {
        g.elements().filter(|&w| self.decompose(g, w).1 == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootDatum;

    fn group(t: &str) -> WeylGroup {
        WeylGroup::new(RootDatum::new(t.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn full_subgroup_matches_group() {
        for t in ["A2", "B2", "G2", "A3"] {
            let g = group(t);
            let f = ReflectionSubgroup::full(&g);
            assert_eq!(f.size(), g.size());
            assert_eq!(f.simple_roots(), (0..g.rank()).collect::<Vec<_>>().as_slice());
            for (z, &w) in f.members().iter().enumerate() {
                assert_eq!(w, WeylElement(z as u32));
                assert_eq!(f.length(z), g.length(w));
            }
        }
    }

    #[test]
    fn a2_single_root_coset() {
        let g = group("A2");
        let mut pos = vec![false; 3];
        pos[0] = true;
        let sub = ReflectionSubgroup::new(&g, pos);
        assert_eq!(sub.size(), 2);
        let (s1, s2) = (g.simple(0), g.simple(1));
        let (w1, z) = sub.decompose(&g, g.mul(s2, s1));
        assert_eq!((w1, sub.element(z)), (s2, s1));
        assert!(g.datum().is_positive(g.act_root(s2, 0)));
    }

    #[test]
    fn long_roots_of_b2() {
        // The long roots of B2 form a subsystem of type A1xA1 whose simple
        // roots are not simple in B2.
        let g = group("B2");
        let d = g.datum();
        let long: Vec<bool> = (0..4).map(|k| d.root(k) == [1, 0] || d.root(k) == [1, 2]).collect();
        let sub = ReflectionSubgroup::new(&g, long);
        assert_eq!(sub.size(), 4);
        assert_eq!(sub.rank(), 2);
        for z in 0..4 {
            assert_eq!(sub.length(z) as usize, sub.word(z).len());
        }
    }

    #[test]
    fn internal_bruhat_on_a1xa1() {
        let g = group("A1xA1");
        let sub = ReflectionSubgroup::full(&g);
        assert!(!sub.bruhat_leq(1, 2));
        assert!(sub.bruhat_leq(1, 3) && sub.bruhat_leq(2, 3));
    }
}
