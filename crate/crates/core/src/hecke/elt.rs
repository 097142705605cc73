use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::chars::Lambda;
use crate::laurent::LaurentPoly;
use crate::rootsys::WeylElement;

/// Index of the basis element `T_D^k T_w 1_lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    pub k: u32,
    pub w: WeylElement,
    pub lambda: Lambda,
}

impl BasisKey {
    pub fn new(w: WeylElement, lambda: Lambda) -> Self {
        Self { k: 0, w, lambda }
    }

    pub fn twisted(k: u32, w: WeylElement, lambda: Lambda) -> Self {
        Self { k, w, lambda }
    }
}

/// A finitely supported combination of basis elements `T_D^k T_w 1_lambda`
/// with Laurent polynomial coefficients, tied to one algebra context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    pub(crate) ctx: u64,
    pub(crate) terms: BTreeMap<BasisKey, LaurentPoly>,
}

impl HeckeElt {
    pub(crate) fn zero_in(ctx: u64) -> Self {
        Self { ctx, terms: BTreeMap::new() }
    }

    pub(crate) fn from_map(ctx: u64, mut terms: BTreeMap<BasisKey, LaurentPoly>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Self { ctx, terms }
    }

    pub fn context_id(&self) -> u64 {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BasisKey, &LaurentPoly)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> LaurentPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// True when every twist exponent is zero.
    pub fn is_untwisted(&self) -> bool {
        self.terms.keys().all(|k| k.k == 0)
    }

    pub fn add_term(&mut self, key: BasisKey, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.ctx);
        }
        Self { ctx: self.ctx, terms: self.terms.iter().map(|(k, p)| (*k, p * c)).collect() }
    }

    /// Keeps the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&BasisKey) -> bool) -> Self {
        Self { ctx: self.ctx, terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (*k, c.clone())).collect() }
    }

    /// Applies a bijection on keys, leaving coefficients untouched.
    pub fn map_keys(&self, mut f: impl FnMut(&BasisKey) -> BasisKey) -> Self {
        let mut out = Self::zero_in(self.ctx);
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.ctx, other.ctx, "elements belong to different algebra contexts");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            if negate {
                out.add_term(*k, &-c);
            } else {
                out.add_term(*k, c);
            }
        }
        out
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        self.combine(rhs, false)
    }
}

impl Add for HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: HeckeElt) -> HeckeElt {
        self.combine(&rhs, false)
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self.combine(rhs, true)
    }
}

impl Sub for HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: HeckeElt) -> HeckeElt {
        self.combine(&rhs, true)
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        HeckeElt { ctx: self.ctx, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        -&self
    }
}
