//! The Grothendieck-group model: the basis `[w;lambda]'`, the isomorphism
//! `omega` onto the Hecke algebra, convolution, sheaf classes, and the
//! projections attached to the twisted subspace `H_D`.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::chars::Lambda;
use crate::error::{Error, Result};
use crate::hecke::{AlgebraContext, BasisKey, HeckeElt};
use crate::klcells::CanonicalBasis;
use crate::laurent::LaurentPoly;
use crate::rootsys::{GenSet, WeylElement};

/// An element of the Grothendieck group, in coordinates of the `[w;lambda]'` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FkElt {
    ctx: u64,
    coords: BTreeMap<BasisKey, LaurentPoly>,
}

impl FkElt {
    fn from_map(ctx: u64, mut coords: BTreeMap<BasisKey, LaurentPoly>) -> Self {
        coords.retain(|_, c| !c.is_zero());
        Self { ctx, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> LaurentPoly {
        self.coords.get(key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &LaurentPoly)> {
        self.coords.iter()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_map(self.ctx, self.coords.iter().map(|(k, x)| (*k, x * c)).collect())
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.ctx, other.ctx, "elements from different contexts");
        let mut coords = self.coords.clone();
        for (k, c) in &other.coords {
            let slot = coords.entry(*k).or_default();
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        Self::from_map(self.ctx, coords)
    }
}

impl Add for &FkElt {
    type Output = FkElt;
    fn add(self, rhs: &FkElt) -> FkElt {
        self.combine(rhs, 1)
    }
}

impl Sub for &FkElt {
    type Output = FkElt;
    fn sub(self, rhs: &FkElt) -> FkElt {
        self.combine(rhs, -1)
    }
}

/// The Grothendieck-group model over a fixed algebra context.
#[derive(Debug, Clone, Copy)]
pub struct FkModel<'a> {
    ctx: &'a AlgebraContext,
    d0: i32,
}

/// `2r + |R+|`.
pub fn default_d0(ctx: &AlgebraContext) -> i32 {
    (2 * ctx.rank() + ctx.group().datum().num_positive()) as i32
}

impl<'a> FkModel<'a> {
    pub fn new(ctx: &'a AlgebraContext) -> Self {
        Self { ctx, d0: default_d0(ctx) }
    }

    pub fn with_d0(ctx: &'a AlgebraContext, d0: i32) -> Self {
        Self { ctx, d0 }
    }

    pub fn ctx(&self) -> &'a AlgebraContext {
        self.ctx
    }

    pub fn d0(&self) -> i32 {
        self.d0
    }

    /// `d_w = l(w) + D0`.
    pub fn d_w(&self, w: WeylElement) -> i32 {
        self.ctx.group().length(w) as i32 + self.d0
    }

    pub fn zero(&self) -> FkElt {
        FkElt::from_map(self.ctx.id(), BTreeMap::new())
    }

    /// `[w;lambda]'`.
    pub fn prime(&self, w: WeylElement, lambda: Lambda) -> FkElt {
        self.element([(BasisKey::new(w, lambda), LaurentPoly::one())])
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (BasisKey, LaurentPoly)>) -> FkElt {
        let mut coords: BTreeMap<BasisKey, LaurentPoly> = BTreeMap::new();
        for (k, c) in terms {
            *coords.entry(k).or_default() += &c;
        }
        FkElt::from_map(self.ctx.id(), coords)
    }

    fn check(&self, x: &FkElt) -> Result<()> {
        if x.ctx == self.ctx.id() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `[w;lambda]' -> v^l(w) T_w 1_lambda`.
    pub fn omega(&self, x: &FkElt) -> Result<HeckeElt> {
        self.check(x)?;
        let g = self.ctx.group();
        Ok(self.ctx.element(x.terms().map(|(k, c)| (*k, c.shift(g.length(k.w) as i32)))))
    }

    pub fn omega_inv(&self, h: &HeckeElt) -> Result<FkElt> {
        self.ctx.check(h)?;
        let g = self.ctx.group();
        Ok(self.element(h.terms().map(|(k, c)| (*k, c.shift(-(g.length(k.w) as i32))))))
    }

    /// `(v^2 - 1)^r`.
    pub fn star_factor(&self) -> LaurentPoly {
        (LaurentPoly::monomial(1, 2) - LaurentPoly::one()).pow(self.ctx.rank() as u32)
    }

    /// Convolution, defined through `omega(x * x') = (v^2 - 1)^r omega(x) omega(x')`.
    pub fn star(&self, x: &FkElt, y: &FkElt) -> Result<FkElt> {
        let prod = self.ctx.mul(&self.omega(x)?, &self.omega(y)?)?;
        self.omega_inv(&prod.scale(&self.star_factor()))
    }

    /// The class `[w;lambda] = (-v)^-d_w sum N_i v^i [w';lambda]'`.
    pub fn sheaf_class(&self, cb: &CanonicalBasis<'_>, w: WeylElement, lambda: Lambda) -> FkElt {
        assert_eq!(cb.ctx().id(), self.ctx.id(), "canonical basis from another context");
        let scale = LaurentPoly::neg_v_pow(-self.d_w(w));
        let c = cb.c_basis(w, lambda);
        self.element(c.terms().map(|(k, _)| {
            let n = LaurentPoly::from_terms(cb.n_coeffs(k.w, w, lambda));
            (*k, &n * &scale)
        }))
    }
}

/// `h = h_D + h'_D` along `H = H_D + H'_D`.
pub fn split_hd(ctx: &AlgebraContext, h: &HeckeElt) -> (HeckeElt, HeckeElt) {
    (h.filter(|k| ctx.in_hd_key(k)), h.filter(|k| !ctx.in_hd_key(k)))
}

/// The projection onto `H_D` that stands in for the map `tau`.
pub fn tau(ctx: &AlgebraContext, h: &HeckeElt) -> HeckeElt {
    split_hd(ctx, h).0
}

pub fn in_hd(ctx: &AlgebraContext, h: &HeckeElt) -> bool {
    h.terms().all(|(k, _)| ctx.in_hd_key(k))
}

/// `rho_{J,n}` on `H_{n,D}`.
pub fn rho_j(ctx: &AlgebraContext, h: &HeckeElt, j: GenSet) -> Result<HeckeElt> {
    ctx.check(h)?;
    if !in_hd(ctx, h) {
        return Err(Error::NotInHD);
    }
    Ok(ctx.restrict_hj(h, j))
}

/// `p_J: H_n -> H_{J,n}`, keeping the terms `T_z 1_lambda` with `z` in `W_J`.
pub fn p_j(ctx: &AlgebraContext, h: &HeckeElt, j: GenSet) -> HeckeElt {
    ctx.restrict_hj(h, j)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn ctx(t: &str, n: u32) -> AlgebraContext {
        AlgebraContext::from_settings(t, n, None, None).unwrap()
    }

    #[test]
    fn omega_on_basis() {
        let c = ctx("A1", 1);
        let m = FkModel::new(&c);
        let l0 = c.chars().trivial();
        let s = c.group().simple(0);
        assert_eq!(m.omega(&m.prime(WeylElement::IDENTITY, l0)).unwrap(), c.idempotent(l0));
        assert_eq!(m.omega(&m.prime(s, l0)).unwrap(), c.basis(s, l0).scale(&LaurentPoly::v()));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let h = c.random_element(&mut rng, 3, false);
            assert_eq!(m.omega(&m.omega_inv(&h).unwrap()).unwrap(), h);
        }
    }

    #[test]
    fn d0_default() {
        let c = ctx("A2", 1);
        let m = FkModel::new(&c);
        assert_eq!(m.d0(), 7);
        assert_eq!(m.d_w(c.group().longest()), 10);
        assert_eq!(FkModel::with_d0(&c, 0).d_w(WeylElement::IDENTITY), 0);
    }

    #[test]
    fn star_examples_a1() {
        let c = ctx("A1", 2);
        let m = FkModel::new(&c);
        let s = c.group().simple(0);
        let l0 = c.chars().trivial();
        let half = c.chars().parse("(1/2)").unwrap();
        let f = m.star_factor();
        let v2 = LaurentPoly::monomial(1, 2);
        assert!(m.star(&m.prime(s, l0), &m.prime(s, half)).unwrap().is_zero());
        let expect = &m.prime(WeylElement::IDENTITY, l0).scale(&(&f * &v2))
            + &m.prime(s, l0).scale(&(&f * &(&v2 - &LaurentPoly::one())));
        assert_eq!(m.star(&m.prime(s, l0), &m.prime(s, l0)).unwrap(), expect);
        let expect = m.prime(WeylElement::IDENTITY, half).scale(&(&f * &v2));
        assert_eq!(m.star(&m.prime(s, half), &m.prime(s, half)).unwrap(), expect);
    }

    #[test]
    fn sheaf_class_is_scaled_canonical_basis() {
        let c = ctx("B2", 2);
        let m = FkModel::new(&c);
        let cb = CanonicalBasis::new(&c);
        for k in c.basis_keys() {
            let lhs = m.omega(&m.sheaf_class(&cb, k.w, k.lambda)).unwrap();
            let scale = LaurentPoly::neg_v_pow(-m.d_w(k.w)).shift(c.group().length(k.w) as i32);
            assert_eq!(lhs, cb.c_basis(k.w, k.lambda).scale(&scale));
        }
        let c1 = ctx("A1", 2);
        let m1 = FkModel::new(&c1);
        let cb1 = CanonicalBasis::new(&c1);
        let half = c1.chars().parse("(1/2)").unwrap();
        let s = c1.group().simple(0);
        let expect = m1.prime(s, half).scale(&LaurentPoly::neg_v_pow(-m1.d_w(s)));
        assert_eq!(m1.sheaf_class(&cb1, s, half), expect);
    }

    #[test]
    fn split_and_projections() {
        let c = ctx("A2", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let h = c.random_element(&mut rng, 6, false);
            let (a, b) = split_hd(&c, &h);
            assert_eq!(&a + &b, h);
            assert_eq!(split_hd(&c, &a), (a.clone(), c.zero()));
            let full = GenSet::full(2);
            assert_eq!(rho_j(&c, &a, full).unwrap(), a);
            let r = rho_j(&c, &a, GenSet::from_nodes([0])).unwrap();
            assert_eq!(rho_j(&c, &r, GenSet::from_nodes([0])).unwrap(), r);
        }
        let l0 = c.chars().trivial();
        let s = c.group().simple(0);
        assert!(rho_j(&c, &c.basis(s, l0), GenSet::empty()).unwrap().is_zero());
        let off = c.basis(s, c.chars().parse("(1/2,0)").unwrap());
        assert_eq!(rho_j(&c, &off, GenSet::full(2)), Err(Error::NotInHD));
    }

    #[test]
    fn p_j_of_cosets() {
        let c = ctx("A2", 1);
        let g = c.group();
        let j = GenSet::from_nodes([0]);
        let reps = g.min_parabolic_reps(j);
        for &u in &reps {
            for &up in &reps {
                let p = c.mul(&c.t(g.inverse(u)), &c.t(up)).unwrap();
                let expect = if u == up { c.unit() } else { c.zero() };
                assert_eq!(p_j(&c, &p, j), expect);
            }
        }
    }
}
