use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use rand::Rng;

use super::elt::{BasisKey, HeckeElt};
use crate::chars::{CharacterSpace, Lambda};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rootsys::{CartanType, GenSet, RootDatum, WeylElement, WeylGroup};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

type Expansion = Arc<Vec<(WeylElement, LaurentPoly)>>;

/// Everything needed to multiply in `H_n` and its crossed product with the
/// twist: the Weyl group with its diagram automorphism, the character set
/// `ufs_n` with the map `D`, and the order `d` of the pair.
#[derive(Debug)]
pub struct AlgebraContext {
    id: u64,
    group: Arc<WeylGroup>,
    chars: Arc<CharacterSpace>,
    d: u32,
    products: RwLock<HashMap<(WeylElement, WeylElement, Lambda), Expansion>>,
    inverses: RwLock<HashMap<(WeylElement, Lambda), Expansion>>,
}

impl AlgebraContext {
    pub fn new(group: Arc<WeylGroup>, n: u32, dbar: Option<Vec<usize>>) -> Result<Self> {
        let chars = Arc::new(CharacterSpace::new(group.clone(), n, dbar)?);
        let d = group.eps_order().lcm(&chars.dbar_order()) as u32;
        Ok(Self {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            group,
            chars,
            d,
            products: RwLock::new(HashMap::new()),
            inverses: RwLock::new(HashMap::new()),
        })
    }

    /// Builds a context from textual settings: a Cartan type such as `A2`,
    /// an optional diagram automorphism (`flip`, `swap`, `[2,1]`) and an
    /// optional coordinate permutation for `D` (`eps`, `id`, `[2,1]`).
    pub fn from_settings(cartan: &str, n: u32, eps: Option<&str>, dbar: Option<&str>) -> Result<Self> {
        let t: CartanType = cartan.parse()?;
        let mut datum = RootDatum::new(t)?;
        if let Some(e) = eps {
            let e = datum.parse_eps(e)?;
            datum = datum.with_eps(e)?;
        }
        let dbar = match dbar.map(str::trim) {
            None | Some("eps") | Some("") => None,
            Some("id") | Some("identity") => Some((0..datum.rank()).collect()),
            Some(s) => {
                let xs: Vec<i64> = serde_json::from_str(s)
                    .map_err(|_| Error::IncompatibleTwist(format!("cannot parse {s:?}")))?;
                Some(
                    xs.into_iter()
                        .map(|x| usize::try_from(x - 1).map_err(|_| Error::IncompatibleTwist("entries are one-based".into())))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        Self::new(Arc::new(WeylGroup::new(datum)?), n, dbar)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn chars(&self) -> &CharacterSpace {
        &self.chars
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn n(&self) -> u32 {
        self.chars.n()
    }

    /// Order of the twist `Theta`.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// True when both the diagram automorphism and `D` are trivial.
    pub fn is_split(&self) -> bool {
        self.d == 1
    }

    /// All untwisted basis keys `(w, lambda)` in canonical order.
    pub fn basis_keys(&self) -> Vec<BasisKey> {
        self.group
            .elements()
            .flat_map(|w| self.chars.all().map(move |l| BasisKey::new(w, l)))
            .collect()
    }

    /// Basis keys of the twisted subspace `H_D`: `T_w 1_nu` with `w D(nu) = nu`.
    pub fn hd_keys(&self) -> Vec<BasisKey> {
        self.basis_keys().into_iter().filter(|k| self.in_hd_key(k)).collect()
    }

    pub fn in_hd_key(&self, k: &BasisKey) -> bool {
        k.k == 0 && self.chars.act_d(self.chars.act(k.w, k.lambda)) == k.lambda
    }

    pub fn zero(&self) -> HeckeElt {
        HeckeElt::zero_in(self.id)
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (BasisKey, LaurentPoly)>) -> HeckeElt {
        let mut h = self.zero();
        for (k, c) in terms {
            h.add_term(k, &c);
        }
        h
    }

    pub fn monomial(&self, key: BasisKey, c: LaurentPoly) -> HeckeElt {
        self.element([(key, c)])
    }

    /// `T_w 1_lambda`.
    pub fn basis(&self, w: WeylElement, lambda: Lambda) -> HeckeElt {
        self.monomial(BasisKey::new(w, lambda), LaurentPoly::one())
    }

    pub fn idempotent(&self, lambda: Lambda) -> HeckeElt {
        self.basis(WeylElement::IDENTITY, lambda)
    }

    /// `T_w = sum over lambda of T_w 1_lambda`.
    pub fn t(&self, w: WeylElement) -> HeckeElt {
        self.element(self.chars.all().map(|l| (BasisKey::new(w, l), LaurentPoly::one())))
    }

    /// The unit of `H_n`, the sum of all idempotents.
    pub fn unit(&self) -> HeckeElt {
        self.t(WeylElement::IDENTITY)
    }

    /// `T_D^k`.
    pub fn twist_power(&self, k: i64) -> HeckeElt {
        let k = k.rem_euclid(self.d as i64) as u32;
        self.element(self.chars.all().map(|l| (BasisKey::twisted(k, WeylElement::IDENTITY, l), LaurentPoly::one())))
    }

    pub fn twist_generator(&self) -> HeckeElt {
        self.twist_power(1)
    }

    /// Multiplication by a scalar.
    pub fn scalar(&self, c: LaurentPoly) -> HeckeElt {
        self.unit().scale(&c)
    }

    pub fn check(&self, h: &HeckeElt) -> Result<()> {
        if h.ctx == self.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Expansion of `T_w T_x 1_mu` in the basis `T_y 1_mu`.
    pub fn basis_product(&self, w: WeylElement, x: WeylElement, mu: Lambda) -> Expansion {
        if let Some(e) = self.products.read().unwrap().get(&(w, x, mu)) {
            return e.clone();
        }
        let g = &*self.group;
        let mut dense = vec![LaurentPoly::zero(); g.size()];
        dense[x.index()] = LaurentPoly::one();
        let q = LaurentPoly::v_minus_v_inv();
        for &s in g.word(w).iter().rev() {
            let s = s as usize;
            let mut next = vec![LaurentPoly::zero(); g.size()];
            for (y, c) in dense.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let y = WeylElement(y as u32);
                let sy = g.mul_simple_left(s, y);
                next[sy.index()] += c;
                if g.length(sy) < g.length(y) && self.chars.simple_in_stabilizer(s, self.chars.act(sy, mu)) {
                    next[y.index()] += &(c * &q);
                }
            }
            dense = next;
        }
        let e: Expansion = Arc::new(
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(y, c)| (WeylElement(y as u32), c))
                .collect(),
        );
        self.products.write().unwrap().insert((w, x, mu), e.clone());
        e
    }

    /// Expansion of `(T_u)^-1 1_mu` in the basis `T_y 1_mu`.
    pub fn inverse_expansion(&self, u: WeylElement, mu: Lambda) -> Expansion {
        if let Some(e) = self.inverses.read().unwrap().get(&(u, mu)) {
            return e.clone();
        }
        let g = &*self.group;
        // (T_u)^-1 = T_{t_k}^-1 ... T_{t_1}^-1 for u = t_1 ... t_k, applied to 1_mu.
        let mut dense = vec![LaurentPoly::zero(); g.size()];
        dense[0] = LaurentPoly::one();
        let q = LaurentPoly::v_minus_v_inv();
        for &s in g.word(u) {
            let s = s as usize;
            let mut next = vec![LaurentPoly::zero(); g.size()];
            for (y, c) in dense.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let y = WeylElement(y as u32);
                for (z, a) in self.basis_product(g.simple(s), y, mu).iter() {
                    next[z.index()] += &(c * a);
                }
                if self.chars.simple_in_stabilizer(s, self.chars.act(y, mu)) {
                    next[y.index()] -= &(c * &q);
                }
            }
            dense = next;
        }
        let e: Expansion = Arc::new(
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(y, c)| (WeylElement(y as u32), c))
                .collect(),
        );
        self.inverses.write().unwrap().insert((u, mu), e.clone());
        e
    }

    /// `sum over lambda of (T_w)^-1 1_lambda`, the inverse of `T_w` in `H_n`.
    pub fn invert_basis(&self, w: WeylElement) -> HeckeElt {
        let mut h = self.zero();
        for mu in self.chars.all() {
            for (y, c) in self.inverse_expansion(w, mu).iter() {
                h.add_term(BasisKey::new(*y, mu), c);
            }
        }
        h
    }

    pub fn theta_key(&self, key: &BasisKey, power: u32) -> BasisKey {
        let p = (power % self.d) as usize;
        BasisKey {
            k: key.k,
            w: self.group.eps_pow(key.w, p),
            lambda: self.chars.act_d_pow(key.lambda, p),
        }
    }

    /// The twist `Theta: T_w 1_lambda -> T_eps(w) 1_D(lambda)`, applied
    /// `power` times (any integer).
    pub fn theta_twist_pow(&self, h: &HeckeElt, power: i64) -> HeckeElt {
        let p = power.rem_euclid(self.d as i64) as u32;
        if p == 0 {
            return h.clone();
        }
        h.map_keys(|k| self.theta_key(k, p))
    }

    pub fn theta_twist(&self, h: &HeckeElt) -> HeckeElt {
        self.theta_twist_pow(h, 1)
    }

    /// Product in the crossed product: `(T_D^a h)(T_D^b h') = T_D^(a+b) Theta^-b(h) h'`.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        self.check(a)?;
        self.check(b)?;
        let mut out: BTreeMap<BasisKey, LaurentPoly> = BTreeMap::new();
        let mut right_by_target: HashMap<(u32, Lambda), Vec<(&BasisKey, &LaurentPoly)>> = HashMap::new();
        for (kb, cb) in b.terms() {
            let target = self.chars.act(kb.w, kb.lambda);
            right_by_target.entry((kb.k, target)).or_default().push((kb, cb));
        }
        let twist_inv = self.d - 1;
        for (ka, ca) in a.terms() {
            for kb_k in 0..self.d {
                let pow = (twist_inv * kb_k) % self.d;
                let twisted = self.theta_key(ka, pow);
                let Some(rights) = right_by_target.get(&(kb_k, twisted.lambda)) else { continue };
                for (kb, cb) in rights {
                    let coeff = ca * *cb;
                    let k = (ka.k + kb.k) % self.d;
                    for (y, c) in self.basis_product(twisted.w, kb.w, kb.lambda).iter() {
                        let slot = out.entry(BasisKey::twisted(k, *y, kb.lambda)).or_default();
                        *slot += &(c * &coeff);
                    }
                }
            }
        }
        Ok(HeckeElt::from_map(self.id, out))
    }

    /// Product of several factors, left to right.
    pub fn mul_all(&self, factors: &[&HeckeElt]) -> Result<HeckeElt> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Keeps the terms with `w` in the parabolic subgroup `W_J`.
    pub fn restrict_hj(&self, h: &HeckeElt, j: GenSet) -> HeckeElt {
        h.filter(|k| self.group.in_parabolic(k.w, j))
    }

    /// The ring involution `v -> v^-1`, `T_w 1_lambda -> (T_{w^-1})^-1 1_lambda`
    /// on untwisted elements.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = self.zero();
        for (k, c) in h.terms() {
            let cb = c.bar();
            let winv = self.group.inverse(k.w);
            for (y, a) in self.inverse_expansion(winv, k.lambda).iter() {
                out.add_term(BasisKey::twisted(k.k, *y, k.lambda), &(a * &cb));
            }
        }
        out
    }

    /// A random element with up to `terms` terms and small coefficients.
    /// Twist exponents are drawn only when `twisted` is set.
    pub fn random_element<R: Rng>(&self, rng: &mut R, terms: usize, twisted: bool) -> HeckeElt {
        let mut h = self.zero();
        for _ in 0..terms {
            let w = WeylElement(rng.gen_range(0..self.group.size() as u32));
            let l = Lambda(rng.gen_range(0..self.chars.len() as u32));
            let k = if twisted { rng.gen_range(0..self.d) } else { 0 };
            let nterms = rng.gen_range(1..=2);
            let c = LaurentPoly::from_terms((0..nterms).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-3i64..=3))));
            h.add_term(BasisKey::twisted(k, w, l), &c);
        }
        h
    }
}
