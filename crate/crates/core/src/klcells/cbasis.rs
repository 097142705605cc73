use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;

use super::kl::KlTable;
use crate::chars::Lambda;
use crate::error::{Error, Result};
use crate::hecke::{AlgebraContext, BasisKey, HeckeElt};
use crate::laurent::LaurentPoly;
use crate::rootsys::{ReflectionSubgroup, WeylElement};

/// The canonical basis `c_{w,lambda}` of `H_n`, built blockwise from the
/// Kazhdan-Lusztig polynomials of the stabilizers `W_lambda`.
#[derive(Debug)]
pub struct CanonicalBasis<'a> {
    ctx: &'a AlgebraContext,
    tables: Mutex<HashMap<Vec<bool>, Arc<KlTable>>>,
    cache: RwLock<HashMap<(WeylElement, Lambda), Arc<HeckeElt>>>,
}

impl<'a> CanonicalBasis<'a> {
    pub fn new(ctx: &'a AlgebraContext) -> Self {
        Self { ctx, tables: Mutex::new(HashMap::new()), cache: RwLock::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &'a AlgebraContext {
        self.ctx
    }

    /// KL table of the stabilizer of `lambda`; characters with the same root
    /// subsystem share one table.
    pub fn table(&self, lambda: Lambda) -> Arc<KlTable> {
        let data = self.ctx.chars().stabilizer(lambda);
        let key = data.subgroup.positive_roots().to_vec();
        self.tables
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::new(KlTable::new(data.subgroup.clone())))
            .clone()
    }

    pub fn subgroup(&self, lambda: Lambda) -> &ReflectionSubgroup {
        self.ctx.chars().subgroup(lambda)
    }

    /// `p^lambda_{z', z}` for `z', z` in `W_lambda`.
    pub fn kl_poly(&self, lambda: Lambda, zp: WeylElement, z: WeylElement) -> Result<LaurentPoly> {
        let sub = self.subgroup(lambda);
        let (Some(a), Some(b)) = (sub.local_index(zp), sub.local_index(z)) else {
            return Err(Error::NotInSubgroup);
        };
        Ok(self.table(lambda).poly(a, b))
    }

    /// `w = w1 z` with `w1` minimal in `w W_lambda`.
    pub fn decompose(&self, w: WeylElement, lambda: Lambda) -> (WeylElement, usize) {
        self.subgroup(lambda).decompose(self.ctx.group(), w)
    }

    pub fn c_basis(&self, w: WeylElement, lambda: Lambda) -> Arc<HeckeElt> {
        if let Some(c) = self.cache.read().unwrap().get(&(w, lambda)) {
            return c.clone();
        }
        let sub = self.subgroup(lambda);
        let (w1, z) = self.decompose(w, lambda);
        let col = self.table(lambda).column(z);
        let g = self.ctx.group();
        let c = self.ctx.element(
            col.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(zp, p)| (BasisKey::new(g.mul(w1, sub.element(zp)), lambda), p.clone())),
        );
        let c = Arc::new(c);
        self.cache.write().unwrap().insert((w, lambda), c.clone());
        c
    }

    /// `T_D^k c_{w,lambda}`.
    pub fn c_key(&self, key: &BasisKey) -> HeckeElt {
        let c = self.c_basis(key.w, key.lambda);
        if key.k == 0 {
            return (*c).clone();
        }
        c.map_keys(|t| BasisKey::twisted(key.k, t.w, t.lambda))
    }

    /// Coefficient of `T_{w'} 1_lambda` in `c_{w,lambda}`.
    pub fn pi(&self, wp: WeylElement, w: WeylElement, lambda: Lambda) -> LaurentPoly {
        self.c_basis(w, lambda).coeff(&BasisKey::new(wp, lambda))
    }

    /// The integers `N_i` with `pi_{w',w,lambda} = v^{l(w')-l(w)} sum N_i v^i`.
    pub fn n_coeffs(&self, wp: WeylElement, w: WeylElement, lambda: Lambda) -> BTreeMap<i32, BigInt> {
        let g = self.ctx.group();
        let shift = g.length(w) as i32 - g.length(wp) as i32;
        self.pi(wp, w, lambda).shift(shift).terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// Internal length of the `W_lambda`-part of `w`, which orders the
    /// triangular change of basis.
    fn height(&self, key: &BasisKey) -> u32 {
        let (_, z) = self.decompose(key.w, key.lambda);
        self.subgroup(key.lambda).length(z)
    }

    /// Coordinates of `h` in the basis `T_D^k c_{w,lambda}`.
    pub fn expand(&self, h: &HeckeElt) -> BTreeMap<BasisKey, LaurentPoly> {
        let mut rest = h.clone();
        let mut out = BTreeMap::new();
        while !rest.is_zero() {
            let (key, coeff) = rest
                .terms()
                .max_by_key(|(k, _)| (self.height(k), **k))
                .map(|(k, c)| (*k, c.clone()))
                .unwrap();
            rest = &rest - &self.c_key(&key).scale(&coeff);
            out.insert(key, coeff);
        }
        out
    }

    /// Inverse of [`expand`](Self::expand).
    pub fn collect(&self, coords: &BTreeMap<BasisKey, LaurentPoly>) -> HeckeElt {
        let mut h = self.ctx.zero();
        for (k, c) in coords {
            h = &h + &self.c_key(k).scale(c);
        }
        h
    }

    /// Structure constants: coordinates of `c_{w,lambda} c_{w',lambda'}` in
    /// the canonical basis.
    pub fn gamma(&self, a: (WeylElement, Lambda), b: (WeylElement, Lambda)) -> BTreeMap<BasisKey, LaurentPoly> {
        let x = self.c_basis(a.0, a.1);
        let y = self.c_basis(b.0, b.1);
        let prod = self.ctx.mul(&x, &y).expect("same context");
        self.expand(&prod)
    }

    /// Whether `c_{w,lambda}` is fixed by the bar involution of the algebra.
    pub fn is_bar_invariant(&self, w: WeylElement, lambda: Lambda) -> bool {
        let c = self.c_basis(w, lambda);
        self.ctx.bar(&c) == *c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: &str, n: u32) -> AlgebraContext {
        AlgebraContext::from_settings(t, n, None, None).unwrap()
    }

    #[test]
    fn a1_examples() {
        let c = ctx("A1", 1);
        let cb = CanonicalBasis::new(&c);
        let s = c.group().simple(0);
        let l0 = c.chars().trivial();
        let expect = c.parse("T[s1] 1[(0)] + T[] 1[(0)] * (v^-1)").unwrap();
        assert_eq!(*cb.c_basis(s, l0), expect);
        assert_eq!(*cb.c_basis(WeylElement::IDENTITY, l0), c.idempotent(l0));
        assert_eq!(cb.kl_poly(l0, WeylElement::IDENTITY, s).unwrap(), "v^-1".parse().unwrap());
        let g = cb.gamma((s, l0), (s, l0));
        assert_eq!(g.len(), 1);
        assert_eq!(g[&BasisKey::new(s, l0)], "v + v^-1".parse().unwrap());
    }

    #[test]
    fn singleton_blocks_are_standard() {
        let c = ctx("A1", 2);
        let cb = CanonicalBasis::new(&c);
        let half = c.chars().parse("(1/2)").unwrap();
        for w in c.group().elements() {
            assert_eq!(*cb.c_basis(w, half), c.basis(w, half));
        }
        assert_eq!(
            cb.kl_poly(half, WeylElement::IDENTITY, c.group().simple(0)),
            Err(Error::NotInSubgroup)
        );
    }

    #[test]
    fn idempotent_gamma() {
        let c = ctx("A2", 2);
        let cb = CanonicalBasis::new(&c);
        for l in c.chars().all() {
            for lp in c.chars().all() {
                let g = cb.gamma((WeylElement::IDENTITY, l), (WeylElement::IDENTITY, lp));
                if l == lp {
                    assert_eq!(g.len(), 1);
                    assert!(g[&BasisKey::new(WeylElement::IDENTITY, l)].is_one());
                } else {
                    assert!(g.is_empty());
                }
            }
        }
    }

    #[test]
    fn n_coefficients_a2() {
        let c = ctx("A2", 1);
        let cb = CanonicalBasis::new(&c);
        let w0 = c.group().longest();
        let l0 = c.chars().trivial();
        for wp in c.group().elements() {
            let n = cb.n_coeffs(wp, w0, l0);
            assert_eq!(n.len(), 1);
            assert_eq!(n[&0], 1.into());
        }
        let c2 = ctx("A1", 2);
        let cb2 = CanonicalBasis::new(&c2);
        let half = c2.chars().parse("(1/2)").unwrap();
        assert!(cb2.n_coeffs(WeylElement::IDENTITY, c2.group().simple(0), half).is_empty());
    }

    #[test]
    fn expand_collect_roundtrip() {
        use rand::SeedableRng;
        let c = ctx("B2", 2);
        let cb = CanonicalBasis::new(&c);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let h = c.random_element(&mut rng, 5, false);
            assert_eq!(cb.collect(&cb.expand(&h)), h);
        }
    }
}
