use crate::error::{Error, Result};
use crate::grothendieck::in_hd;
use crate::hecke::{AlgebraContext, BasisKey, HeckeElt};
use crate::rootsys::GenSet;

/// Number of orbits of the diagram automorphism on `J`.
pub fn eps_orbits(eps: &[usize], j: GenSet) -> usize {
    let mut seen = GenSet::empty();
    let mut count = 0;
    for i in j.nodes() {
        if seen.contains(i) {
            continue;
        }
        count += 1;
        let mut x = i;
        while !seen.contains(x) {
            seen = GenSet(seen.0 | 1 << x);
            x = eps[x];
        }
    }
    count
}

/// `(-1)^(|I| - |I_eps|)`, the scalar by which the involution acts on `T_D`.
pub fn twist_sign(ctx: &AlgebraContext) -> i64 {
    let eps = ctx.group().datum().eps();
    let full = GenSet::full(ctx.rank());
    if (full.len() - eps_orbits(eps, full)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The involution with `1_lambda -> 1_lambda`, `T_w -> (-1)^l(w) (T_{w^-1})^-1`
/// and `T_D -> (-1)^(|I| - |I_eps|) T_D`.
pub fn theta(ctx: &AlgebraContext, h: &HeckeElt) -> HeckeElt {
    let g = ctx.group();
    let sign = twist_sign(ctx);
    let mut out = ctx.zero();
    for (key, c) in h.terms() {
        let mut s = if g.length(key.w).is_multiple_of(2) { 1 } else { -1 };
        if key.k % 2 == 1 {
            s *= sign;
        }
        let c = c.scale(&s.into());
        for (y, a) in ctx.inverse_expansion(g.inverse(key.w), key.lambda).iter() {
            out.add_term(BasisKey::twisted(key.k, *y, key.lambda), &(a * &c));
        }
    }
    out
}

/// `delta_J(y) = rho_J(sum over u in W^J of T_{u^-1} y T_{eps(u)})` for `y` in `H_{n,D}`.
pub fn delta_j(ctx: &AlgebraContext, y: &HeckeElt, j: GenSet) -> Result<HeckeElt> {
    ctx.check(y)?;
    let g = ctx.group();
    if j.image(g.datum().eps()) != j {
        return Err(Error::NotEpsStable);
    }
    if !in_hd(ctx, y) {
        return Err(Error::NotInHD);
    }
    let mut sum = ctx.zero();
    for u in g.min_parabolic_reps(j) {
        let term = ctx.mul_all(&[&ctx.t(g.inverse(u)), y, &ctx.t(g.eps(u))])?;
        sum = &sum + &term;
    }
    assert!(in_hd(ctx, &sum), "delta_J left the twisted subspace");
    Ok(ctx.restrict_hj(&sum, j))
}

/// `delta = sum over eps-stable J of (-1)^|J_eps| delta_J`.
pub fn delta(ctx: &AlgebraContext, y: &HeckeElt) -> Result<HeckeElt> {
    let eps = ctx.group().datum().eps();
    let mut out = ctx.zero();
    for j in GenSet::all_subsets(ctx.rank()) {
        if j.image(eps) != j {
            continue;
        }
        let d = delta_j(ctx, y, j)?;
        out = if eps_orbits(eps, j).is_multiple_of(2) { &out + &d } else { &out - &d };
    }
    Ok(out)
}
