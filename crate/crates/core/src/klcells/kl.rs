use std::sync::{Arc, Mutex};

use crate::laurent::LaurentPoly;
use crate::rootsys::ReflectionSubgroup;

/// Kazhdan-Lusztig polynomials of a reflection subgroup viewed as a Coxeter
/// system, normalized so that `c_z = sum p_{y,z} T_y` is bar-invariant with
/// `p_{z,z} = 1` and `p_{y,z}` in `v^-1 Z[v^-1]` for `y != z`.
///
/// Columns are filled on demand in order of local index.
#[derive(Debug)]
pub struct KlTable {
    sub: Arc<ReflectionSubgroup>,
    columns: Mutex<Vec<Arc<Vec<LaurentPoly>>>>,
}

impl KlTable {
    pub fn new(sub: Arc<ReflectionSubgroup>) -> Self {
        Self { sub, columns: Mutex::new(Vec::new()) }
    }

    pub fn subgroup(&self) -> &Arc<ReflectionSubgroup> {
        &self.sub
    }

    /// `p_{y,z}` for all `y`, indexed by local index.
    pub fn column(&self, z: usize) -> Arc<Vec<LaurentPoly>> {
        let mut cols = self.columns.lock().unwrap();
        while cols.len() <= z {
            let next = self.compute(cols.len(), &cols);
            cols.push(Arc::new(next));
        }
        cols[z].clone()
    }

    /// `p_{y,z}` on local indices.
    pub fn poly(&self, y: usize, z: usize) -> LaurentPoly {
        self.column(z)[y].clone()
    }

    /// Coefficient of `v^-1` in `p_{y,z}`.
    pub fn mu(&self, y: usize, z: usize) -> LaurentPoly {
        LaurentPoly::constant(self.column(z)[y].coeff(-1))
    }

    fn compute(&self, z: usize, cols: &[Arc<Vec<LaurentPoly>>]) -> Vec<LaurentPoly> {
        let sub = &*self.sub;
        let size = sub.size();
        let mut out = vec![LaurentPoly::zero(); size];
        if z == 0 {
            out[0] = LaurentPoly::one();
            return out;
        }
        let s = sub.word(z)[0] as usize;
        let zp = sub.mul_simple_left(s, z);
        let pz = &cols[zp];
        let v = LaurentPoly::v();
        let vi = LaurentPoly::v_inv();
        for x in 0..size {
            let sx = sub.mul_simple_left(s, x);
            let up = sub.length(sx) > sub.length(x);
            let mut q = pz[sx].clone();
            if !pz[x].is_zero() {
                q += &pz[x] * if up { &vi } else { &v };
            }
            out[x] = q;
        }
        for y in 0..size {
            if y == zp || !sub.is_left_descent(s, y) {
                continue;
            }
            let mu = pz[y].coeff(-1);
            if mu == 0.into() {
                continue;
            }
            let mu = LaurentPoly::constant(mu);
            for (x, p) in cols[y].iter().enumerate() {
                if !p.is_zero() {
                    out[x] -= &mu * p;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootDatum, WeylGroup};

    fn full(t: &str) -> (WeylGroup, KlTable) {
        let g = WeylGroup::new(RootDatum::new(t.parse().unwrap()).unwrap()).unwrap();
        let sub = Arc::new(ReflectionSubgroup::full(&g));
        (g, KlTable::new(sub))
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn a1() {
        let (_, kl) = full("A1");
        assert_eq!(kl.poly(0, 1), p("v^-1"));
        assert_eq!(kl.poly(1, 1), p("1"));
        assert!(kl.poly(1, 0).is_zero());
    }

    #[test]
    fn a2_longest_element() {
        let (g, kl) = full("A2");
        let w0 = g.size() - 1;
        for y in 0..g.size() {
            let l = g.length(crate::rootsys::WeylElement(y as u32)) as i32;
            assert_eq!(kl.poly(y, w0), LaurentPoly::monomial(1, l - 3));
        }
    }

    #[test]
    fn triangular_and_negative_degree() {
        for t in ["B2", "G2", "A3", "B3"] {
            let (_, kl) = full(t);
            let sub = kl.subgroup().clone();
            for z in 0..sub.size() {
                let col = kl.column(z);
                for (y, q) in col.iter().enumerate() {
                    if y == z {
                        assert!(q.is_one());
                    } else if q.is_zero() {
                        continue;
                    } else {
                        assert!(sub.bruhat_leq(y, z), "{t}");
                        assert!(q.max_exp().unwrap() < 0, "{t}");
                        assert!(q.is_nonnegative(), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn a3_has_a_nontrivial_polynomial() {
        // In S4 the classical polynomial P_{s2, s2 s1 s3 s2} = 1 + q.
        let (g, kl) = full("A3");
        let s2 = g.simple(1);
        let w = g.parse_word("s2 s1 s3 s2").unwrap();
        assert_eq!(kl.poly(s2.index(), w.index()), p("v^-2 + 1").shift(-1));
    }
}
