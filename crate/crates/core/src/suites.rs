//! Exhaustive property suites over one algebra context, used by the
//! command-line `verify` command.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{facet_identity_check, verify_duality};
use crate::error::{Error, Result};
use crate::grothendieck::FkModel;
use crate::hecke::AlgebraContext;
use crate::klcells::CanonicalBasis;
use crate::laurent::LaurentPoly;
use crate::rootsys::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Duality,
    Facets,
    Positivity,
    Convolution,
    Cosets,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Cosets, Suite::Positivity, Suite::Convolution, Suite::Duality, Suite::Facets];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Facets => "facets",
            Suite::Positivity => "positivity",
            Suite::Convolution => "convolution",
            Suite::Cosets => "cosets",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_many(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub pass: bool,
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

#[derive(Debug, Default)]
struct Tally {
    checks: u64,
    failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn finish(self, suite: Suite, details: Option<serde_json::Value>) -> SuiteReport {
        SuiteReport {
            suite: suite.name().to_string(),
            checks: self.checks,
            pass: self.failure.is_none(),
            counterexample: self.failure,
            details,
        }
    }
}

pub fn run(ctx: &AlgebraContext, suite: Suite, seed: u64) -> Result<SuiteReport> {
    Ok(match suite {
        Suite::Cosets => cosets(ctx),
        Suite::Positivity => positivity(ctx),
        Suite::Convolution => convolution(ctx, seed, 100),
        Suite::Duality => duality(ctx)?,
        Suite::Facets => facets(ctx),
    })
}

/// Minimal coset representatives for `W_lambda` and the simple-reflection
/// dichotomy, for every `(w, lambda)`.
pub fn cosets(ctx: &AlgebraContext) -> SuiteReport {
    let g = ctx.group();
    let datum = g.datum();
    let mut t = Tally::default();
    for lambda in ctx.chars().all() {
        let sub = ctx.chars().subgroup(lambda);
        let pos: Vec<usize> = (0..datum.num_positive()).filter(|&k| sub.positive_roots()[k]).collect();
        let sends_positive = |u: WeylElement| pos.iter().all(|&k| datum.is_positive(g.act_root(u, k)));
        let point = ctx.chars().point(lambda);
        for w in g.elements() {
            let coset: Vec<WeylElement> = sub.members().iter().map(|&z| g.mul(w, z)).collect();
            let min_len = coset.iter().map(|&u| g.length(u)).min().unwrap();
            let minimal: Vec<WeylElement> = coset.iter().copied().filter(|&u| g.length(u) == min_len).collect();
            let w1 = minimal[0];
            let name = || format!("w = {}, lambda = {point}", g.render_word(w));
            t.check(minimal.len() == 1, || format!("{}: {} minimal elements", name(), minimal.len()));
            t.check(sub.decompose(g, w).0 == w1, || format!("{}: decomposition disagrees", name()));
            for &u in &coset {
                t.check(sends_positive(u) == (u == w1), || {
                    format!("{}: positivity characterization fails at {}", name(), g.render_word(u))
                });
            }
            if w != w1 {
                continue;
            }
            for s in 0..g.rank() {
                let sw = g.mul(g.simple(s), w);
                let first = sub.decompose(g, sw).0 == sw;
                let second = sub.contains(g.mul(g.inverse(w), sw));
                t.check(first != second, || format!("{}: dichotomy fails for s{}", name(), s + 1));
            }
        }
    }
    t.finish(Suite::Cosets, None)
}

/// Structure constants of the canonical basis lie in `N[v, v^-1]`, and the
/// coefficients `N_i` vanish for odd `i`.
pub fn positivity(ctx: &AlgebraContext) -> SuiteReport {
    let cb = CanonicalBasis::new(ctx);
    let mut t = Tally::default();
    let keys = ctx.basis_keys();
    for a in &keys {
        for b in &keys {
            if ctx.chars().act(b.w, b.lambda) != a.lambda {
                continue;
            }
            for (y, c) in cb.gamma((a.w, a.lambda), (b.w, b.lambda)) {
                t.check(c.is_nonnegative(), || {
                    format!("c({}) c({}) has coefficient {c} on c({})", ctx.render_key(a), ctx.render_key(b), ctx.render_key(&y))
                });
            }
        }
    }
    for w in &keys {
        for wp in ctx.group().elements() {
            for (i, n) in cb.n_coeffs(wp, w.w, w.lambda) {
                t.check(i % 2 == 0, || {
                    format!("N_{i} = {n} for w' = {} in c({})", ctx.group().render_word(wp), ctx.render_key(w))
                });
            }
        }
    }
    t.finish(Suite::Positivity, None)
}

/// The three convolution identities on every applicable pair of basis
/// elements, and `omega(x * x') = (v^2 - 1)^r omega(x) omega(x')` on random pairs.
pub fn convolution(ctx: &AlgebraContext, seed: u64, samples: usize) -> SuiteReport {
    let m = FkModel::new(ctx);
    let g = ctx.group();
    let f = m.star_factor();
    let v2 = LaurentPoly::monomial(1, 2);
    let mut t = Tally::default();
    let keys = ctx.basis_keys();
    for a in &keys {
        for b in &keys {
            let x = m.prime(a.w, a.lambda);
            let y = m.prime(b.w, b.lambda);
            let prod = m.star(&x, &y).expect("same context");
            let pair = || format!("[{}]' * [{}]'", ctx.render_key(a), ctx.render_key(b));
            if ctx.chars().act(b.w, b.lambda) != a.lambda {
                t.check(prod.is_zero(), || format!("{} should vanish", pair()));
                continue;
            }
            let ww = g.mul(a.w, b.w);
            if g.length(ww) == g.length(a.w) + g.length(b.w) {
                let expect = m.prime(ww, b.lambda).scale(&f);
                t.check(prod == expect, || format!("{} is not length-additive", pair()));
            }
            if a.w == b.w && g.length(a.w) == 1 {
                let s = g.word(a.w)[0] as usize;
                let c = i64::from(ctx.chars().simple_in_stabilizer(s, b.lambda));
                let expect = &m.prime(WeylElement::IDENTITY, b.lambda).scale(&(&f * &v2))
                    + &m.prime(a.w, b.lambda).scale(&(&f * &(&v2 - &LaurentPoly::one())).scale(&c.into()));
                t.check(prod == expect, || format!("{} breaks the quadratic identity", pair()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (nx, ny) = (rng.gen_range(1..4), rng.gen_range(1..4));
        let x = m.omega_inv(&ctx.random_element(&mut rng, nx, false)).unwrap();
        let y = m.omega_inv(&ctx.random_element(&mut rng, ny, false)).unwrap();
        let lhs = m.omega(&m.star(&x, &y).unwrap()).unwrap();
        let rhs = ctx.mul(&m.omega(&x).unwrap(), &m.omega(&y).unwrap()).unwrap().scale(&f);
        t.check(lhs == rhs, || "omega is not multiplicative up to (v^2-1)^r".to_string());
    }
    t.finish(Suite::Convolution, None)
}

pub fn duality(ctx: &AlgebraContext) -> Result<SuiteReport> {
    let report = verify_duality(ctx)?;
    let mut t = Tally::default();
    for row in &report.rows {
        t.check(row.pass, || format!("delta - theta of {} is {} and lies outside the commutator space", row.element, row.difference));
    }
    Ok(t.finish(Suite::Duality, Some(serde_json::to_value(&report).expect("serializable"))))
}

pub fn facets(ctx: &AlgebraContext) -> SuiteReport {
    let report = facet_identity_check(ctx.group());
    let mut t = Tally::default();
    for row in &report.rows {
        t.check(row.lhs_trace == row.rhs_trace, || {
            format!("traces differ at {}: {} vs {}", row.element, row.lhs_trace, row.rhs_trace)
        });
    }
    t.finish(Suite::Facets, Some(serde_json::to_value(&report).expect("serializable")))
}
