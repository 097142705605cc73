use std::collections::HashMap;

use serde::Serialize;

use super::ops::{delta, theta};
use crate::error::{Error, Result};
use crate::grothendieck::in_hd;
use crate::hecke::{AlgebraContext, BasisKey, HeckeElt};
use crate::laurent::{Echelon, LaurentPoly};

/// The span over the fraction field of `y y' - y' Theta(y)` and `z - Theta(z)`
/// for basis elements `y, y', z` of `H_n`, intersected with `H_D`.
///
/// Every generator lies entirely in `H_D` or entirely in `H'_D`, so the part
/// inside `H_D` is spanned by the generators that land there. Coordinates are
/// the basis keys of `H_D`.
#[derive(Debug, Clone)]
pub struct CommutatorSpace {
    keys: Vec<BasisKey>,
    index: HashMap<BasisKey, usize>,
    echelon: Echelon,
    generators: usize,
}

impl CommutatorSpace {
    pub fn new(ctx: &AlgebraContext) -> Self {
        let keys = ctx.hd_keys();
        let index: HashMap<BasisKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut space = Self { echelon: Echelon::new(keys.len()), keys, index, generators: 0 };
        for gen in generators(ctx) {
            space.generators += 1;
            let v = space.coords(&gen).expect("generator outside H_D");
            space.echelon.insert(&v);
        }
        space
    }

    /// Number of nonzero generators inside `H_D`.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.keys.len()
    }

    pub fn certificate_denominator(&self) -> LaurentPoly {
        self.echelon.certificate_denominator()
    }

    fn coords(&self, h: &HeckeElt) -> Result<Vec<LaurentPoly>> {
        let mut v = vec![LaurentPoly::zero(); self.keys.len()];
        for (k, c) in h.terms() {
            let i = *self.index.get(k).ok_or(Error::NotInHD)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// `h` reduced against the space; zero exactly when `h` is a member.
    pub fn residual(&self, h: &HeckeElt) -> Result<Vec<LaurentPoly>> {
        Ok(self.echelon.reduce(&self.coords(h)?))
    }

    pub fn contains(&self, h: &HeckeElt) -> Result<bool> {
        Ok(self.residual(h)?.iter().all(LaurentPoly::is_zero))
    }
}

/// The nonzero generators that lie in `H_D`.
///
/// `y y'` with `y = T_w 1_lambda`, `y' = T_x 1_mu` is nonzero only when
/// `x mu = lambda`, and it lies in `H_D` only when `mu = D(w lambda)`, which is
/// also the condition for `y' Theta(y)` to be nonzero.
fn generators(ctx: &AlgebraContext) -> Vec<HeckeElt> {
    let g = ctx.group();
    let chars = ctx.chars();
    let mut out = Vec::new();
    for y in ctx.basis_keys() {
        let mu = chars.act_d(chars.act(y.w, y.lambda));
        let yh = ctx.monomial(y, LaurentPoly::one());
        let ty = ctx.theta_twist(&yh);
        for x in g.elements() {
            if chars.act(x, mu) != y.lambda {
                continue;
            }
            let yp = ctx.basis(x, mu);
            let gen = &ctx.mul(&yh, &yp).unwrap() - &ctx.mul(&yp, &ty).unwrap();
            if !gen.is_zero() {
                out.push(gen);
            }
        }
    }
    for z in ctx.hd_keys() {
        let zh = ctx.monomial(z, LaurentPoly::one());
        let gen = &zh - &ctx.theta_twist(&zh);
        if !gen.is_zero() {
            out.push(gen);
        }
    }
    debug_assert!(out.iter().all(|h| in_hd(ctx, h)));
    out
}

/// One checked basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub element: String,
    /// `delta(y) = theta(y)` on the nose.
    pub exact: bool,
    /// Rank increase when `delta(y) - theta(y)` is added to the space.
    pub residual_rank: usize,
    pub pass: bool,
    pub difference: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ambient_dim: usize,
    pub commutator_dim: usize,
    pub generators: usize,
    pub certificate_denominator: String,
    pub rows: Vec<DualityRow>,
    pub pass: bool,
}

/// Checks that `delta(y) - theta(y)` lies in the commutator space for every
/// basis element `y` of `H_{n,D}`.
pub fn verify_duality(ctx: &AlgebraContext) -> Result<DualityReport> {
    let space = CommutatorSpace::new(ctx);
    let mut rows = Vec::new();
    for key in ctx.hd_keys() {
        let y = ctx.monomial(key, LaurentPoly::one());
        let diff = &delta(ctx, &y)? - &theta(ctx, &y);
        let exact = diff.is_zero();
        let residual_rank = usize::from(!exact && !space.contains(&diff)?);
        rows.push(DualityRow {
            element: ctx.render_key(&key),
            exact,
            residual_rank,
            pass: residual_rank == 0,
            difference: ctx.render(&diff),
        });
    }
    Ok(DualityReport {
        ambient_dim: space.ambient_dim(),
        commutator_dim: space.dim(),
        generators: space.generator_count(),
        certificate_denominator: space.certificate_denominator().to_string(),
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(t: &str, n: u32, eps: Option<&str>) -> AlgebraContext {
        AlgebraContext::from_settings(t, n, eps, None).unwrap()
    }

    #[test]
    fn commutative_rank_one() {
        let c = ctx("A1", 1, None);
        let space = CommutatorSpace::new(&c);
        assert_eq!(space.ambient_dim(), 2);
        assert_eq!(space.dim(), 0);
        let r = verify_duality(&c).unwrap();
        assert!(r.pass);
        assert!(r.rows.iter().all(|row| row.exact));
    }

    #[test]
    fn rank_one_level_two_is_exact() {
        let r = verify_duality(&ctx("A1", 2, None)).unwrap();
        assert!(r.pass);
        assert!(r.rows.iter().all(|row| row.exact));
    }

    #[test]
    fn flip_generators() {
        let c = ctx("A2", 1, Some("flip"));
        let space = CommutatorSpace::new(&c);
        let s1 = c.basis(c.group().simple(0), c.chars().trivial());
        assert!(space.contains(&(&s1 - &c.theta_twist(&s1))).unwrap());
        assert!(!space.contains(&c.unit()).unwrap());
        assert!(verify_duality(&c).unwrap().pass);
    }

    #[test]
    fn membership_rejects_outside_hd() {
        let c = ctx("A1", 2, None);
        let space = CommutatorSpace::new(&c);
        let off = c.basis(crate::rootsys::WeylElement::IDENTITY, c.chars().trivial());
        assert!(space.contains(&off).is_ok());
        let s = c.basis(c.group().simple(0), c.chars().parse("(1/2)").unwrap());
        assert!(space.contains(&s).is_ok());
        let c3 = ctx("A1", 3, None);
        let space3 = CommutatorSpace::new(&c3);
        let y = c3.basis(c3.group().simple(0), c3.chars().parse("(1/3)").unwrap());
        assert_eq!(space3.contains(&y), Err(Error::NotInHD));
    }
}
