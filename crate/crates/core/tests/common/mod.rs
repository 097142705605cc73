#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use hecke_core::hecke::{AlgebraContext, BasisKey};
use hecke_core::klcells::CanonicalBasis;
use hecke_core::rootsys::{GenSet, ReflectionSubgroup};
use hecke_core::LaurentPoly;

pub fn ctx(t: &str, n: u32, eps: Option<&str>) -> AlgebraContext {
    AlgebraContext::from_settings(t, n, eps, None).unwrap()
}

fn q() -> LaurentPoly {
    LaurentPoly::v_minus_v_inv()
}

/// `T_s h` in the Hecke algebra of a reflection subgroup, on local indices.
fn local_mul_simple(sub: &ReflectionSubgroup, s: usize, h: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); h.len()];
    for (z, c) in h.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sz = sub.mul_simple_left(s, z);
        out[sz] += c;
        if sub.length(sz) < sub.length(z) {
            out[z] += &(c * &q());
        }
    }
    out
}

/// `bar(T_x) = T_{s1}^-1 ... T_{sk}^-1` for a reduced word of `x`.
fn local_bar_basis(sub: &ReflectionSubgroup, x: usize) -> Vec<LaurentPoly> {
    let mut h = vec![LaurentPoly::zero(); sub.size()];
    h[0] = LaurentPoly::one();
    for &s in sub.word(x).iter().rev() {
        let th = local_mul_simple(sub, s as usize, &h);
        h = th.iter().zip(&h).map(|(a, b)| a - &(b * &q())).collect();
    }
    h
}

/// Kazhdan-Lusztig polynomials `p[y][z]` from the bar involution alone: with
/// `bar(T_x) = sum r_{y,x} T_y`, the condition `bar(c_z) = c_z` reads
/// `p_y - bar(p_y) = sum over l(x) > l(y) of r_{y,x} bar(p_x)`, and the
/// degree condition picks the negative part.
pub fn kl_oracle(sub: &ReflectionSubgroup) -> Vec<Vec<LaurentPoly>> {
    let size = sub.size();
    let r: Vec<Vec<LaurentPoly>> = (0..size).map(|x| local_bar_basis(sub, x)).collect();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&y| std::cmp::Reverse(sub.length(y)));
    let mut p = vec![vec![LaurentPoly::zero(); size]; size];
    for z in 0..size {
        let mut col = vec![LaurentPoly::zero(); size];
        col[z] = LaurentPoly::one();
        for &y in &order {
            if y == z {
                continue;
            }
            let mut rhs = LaurentPoly::zero();
            for x in 0..size {
                if sub.length(x) > sub.length(y) && !col[x].is_zero() {
                    rhs += &r[x][y] * &col[x].bar();
                }
            }
            assert_eq!(rhs.bar(), -&rhs, "right side must be anti-invariant");
            col[y] = LaurentPoly::from_terms(rhs.terms().filter(|(e, _)| *e < 0).map(|(e, c)| (e, c.clone())));
        }
        for y in 0..size {
            p[y][z] = col[y].clone();
        }
    }
    p
}

/// The relation `(y, nu) <= (w, lambda)` read directly off the triple
/// products `c_{w1,l1} c_{w,lambda} c_{w2,l2}` with `w1` in `W_J`, `w2` in `W_J'`.
pub fn triple_product_relation(cb: &CanonicalBasis<'_>, j: GenSet, jp: GenSet) -> BTreeSet<(BasisKey, BasisKey)> {
    let ctx = cb.ctx();
    let g = ctx.group();
    let left = g.parabolic(j);
    let right = g.parabolic(jp);
    let mut rel = BTreeSet::new();
    for key in ctx.basis_keys() {
        let c = cb.c_basis(key.w, key.lambda);
        for &w1 in &left {
            for l1 in ctx.chars().all() {
                let a = ctx.mul(&cb.c_basis(w1, l1), &c).unwrap();
                if a.is_zero() {
                    continue;
                }
                for &w2 in &right {
                    for l2 in ctx.chars().all() {
                        if ctx.chars().act(w2, l2) != key.lambda {
                            continue;
                        }
                        let prod = ctx.mul(&a, &cb.c_basis(w2, l2)).unwrap();
                        for y in cb.expand(&prod).keys() {
                            rel.insert((*y, key));
                        }
                    }
                }
            }
        }
    }
    rel
}

/// Two-sided cells from the graph of nonzero structure constants with
/// arbitrary canonical basis elements on either side.
pub fn gamma_graph_cells(cb: &CanonicalBasis<'_>) -> BTreeSet<BTreeSet<BasisKey>> {
    let ctx = cb.ctx();
    let keys = ctx.basis_keys();
    let n = keys.len();
    let idx: BTreeMap<BasisKey, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut reach = vec![vec![false; n]; n];
    for (hi, k) in keys.iter().enumerate() {
        reach[hi][hi] = true;
        for u in &keys {
            for (a, b) in [(u, k), (k, u)] {
                for y in cb.gamma((a.w, a.lambda), (b.w, b.lambda)).keys() {
                    reach[hi][idx[y]] = true;
                }
            }
        }
    }
    for m in 0..n {
        for a in 0..n {
            if reach[a][m] {
                for b in 0..n {
                    if reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|a| (0..n).filter(|&b| reach[a][b] && reach[b][a]).map(|b| keys[b]).collect())
        .collect()
}

pub type Coords = BTreeMap<BasisKey, LaurentPoly>;

fn add_into(out: &mut Coords, src: &Coords, scale: &LaurentPoly) {
    for (k, c) in src {
        let slot = out.entry(*k).or_default();
        *slot += &(c * scale);
        if slot.is_zero() {
            out.remove(k);
        }
    }
}

/// `[s;lambda]' * y / (v^2-1)^r` from the length-additive and quadratic
/// identities, for `y` a combination of `[w';lambda']'` with `w' lambda' = lambda`.
fn conv_simple(ctx: &AlgebraContext, s: usize, y: &Coords) -> Coords {
    let g = ctx.group();
    let v2 = LaurentPoly::monomial(1, 2);
    let mut out = Coords::new();
    for (k, c) in y {
        let sw = g.mul(g.simple(s), k.w);
        if g.length(sw) > g.length(k.w) {
            add_into(&mut out, &Coords::from([(BasisKey::new(sw, k.lambda), LaurentPoly::one())]), c);
        } else {
            let mu = ctx.chars().act(sw, k.lambda);
            let in_stab = ctx.chars().simple_in_stabilizer(s, mu);
            let mut t = Coords::from([(BasisKey::new(sw, k.lambda), v2.clone())]);
            if in_stab {
                t.insert(*k, &v2 - &LaurentPoly::one());
            }
            add_into(&mut out, &t, c);
        }
    }
    out
}

/// `[w;lambda]' * [w';lambda']'` computed only from the three displayed
/// identities and associativity.
pub fn conv_oracle(ctx: &AlgebraContext, a: &BasisKey, b: &BasisKey) -> Coords {
    if ctx.chars().act(b.w, b.lambda) != a.lambda {
        return Coords::new();
    }
    let g = ctx.group();
    let f = (LaurentPoly::monomial(1, 2) - LaurentPoly::one()).pow(ctx.rank() as u32);
    let mut y = Coords::from([(*b, LaurentPoly::one())]);
    for &s in g.word(a.w).iter().rev() {
        y = conv_simple(ctx, s as usize, &y);
    }
    y.into_iter().map(|(k, c)| (k, &c * &f)).collect()
}
