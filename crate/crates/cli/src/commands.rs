use std::fs::{self, File};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use hecke_core::grothendieck::FkModel;
use hecke_core::hecke::{AlgebraContext, BasisKey};
use hecke_core::klcells::CanonicalBasis;
use hecke_core::suites::{self, Suite, SuiteReport};
use hecke_core::chars::Lambda;
use hecke_core::GenSet;

use crate::config::{ResolvedConfig, Settings};

/// Everything a command needs once the settings are validated.
pub struct Run {
    pub ctx: AlgebraContext,
    pub config: ResolvedConfig,
    pub j: GenSet,
    pub jp: GenSet,
    pub lambdas: Vec<Lambda>,
    pub out: PathBuf,
}

impl Run {
    pub fn new(s: &Settings) -> Result<Run> {
        let ctx = AlgebraContext::from_settings(s.cartan_type()?, s.n(), s.eps.as_deref(), s.dbar.as_deref())?;
        let rank = ctx.rank();
        let j = GenSet::parse(s.j.as_deref().unwrap_or("full"), rank)?;
        let jp = GenSet::parse(s.jp.as_deref().unwrap_or("full"), rank)?;
        let lambdas = match &s.lambda {
            Some(l) => vec![ctx.chars().parse(l).with_context(|| format!("invalid lambda {l:?}"))?],
            None => ctx.chars().all().collect(),
        };
        let d0 = s.d0.unwrap_or_else(|| hecke_core::grothendieck::default_d0(&ctx));
        let config = ResolvedConfig {
            cartan_type: ctx.group().datum().cartan_type().to_string(),
            n: ctx.n(),
            eps: ctx.group().datum().eps().iter().map(|i| i + 1).collect(),
            dbar: ctx.chars().dbar_perm().iter().map(|i| i + 1).collect(),
            j: j.to_string(),
            jp: jp.to_string(),
            seed: s.seed(),
            d0,
            lambda: s.lambda.clone(),
        };
        let out = s.out();
        fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
        Ok(Run { ctx, config, j, jp, lambdas, out })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn key_json(&self, k: &BasisKey) -> Value {
        json!({
            "w": self.ctx.group().word_one_based(k.w),
            "lambda": self.ctx.chars().point(k.lambda).entries(),
        })
    }

    fn word(&self, w: hecke_core::WeylElement) -> String {
        match self.ctx.group().render_word(w) {
            s if s.is_empty() => "1".to_string(),
            s => s,
        }
    }

    fn point(&self, l: Lambda) -> String {
        self.ctx.chars().point(l).to_string()
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))
}

pub fn cells(run: &Run) -> Result<String> {
    let cb = CanonicalBasis::new(&run.ctx);
    let part = cb.two_sided_cells(run.j, run.jp);
    let cells: Vec<Vec<Value>> = part.cells.iter().map(|c| c.iter().map(|k| run.key_json(k)).collect()).collect();
    let order: Vec<[usize; 2]> = part.order.iter().map(|&(a, b)| [a, b]).collect();
    write_json(
        &run.path("cells.json"),
        &json!({ "config": run.config, "d0": run.config.d0, "cells": cells, "order": order }),
    )?;
    let mut summary = format!(
        "{} cells for {} n={} J={} J'={}\n",
        part.len(),
        run.config.cartan_type,
        run.config.n,
        run.config.j,
        run.config.jp
    );
    for (i, c) in part.cells.iter().enumerate() {
        let members: Vec<String> = c.iter().map(|k| run.ctx.render_key(k)).collect();
        let below: Vec<String> = part.order.iter().filter(|&&(_, hi)| hi == i).map(|&(lo, _)| lo.to_string()).collect();
        summary.push_str(&format!("{i:>4}  size {:<3} below: [{}]  {}\n", c.len(), below.join(","), members.join(", ")));
    }
    fs::write(run.path("cells.txt"), &summary)?;
    Ok(summary)
}

fn write_n_table(run: &Run, cb: &CanonicalBasis<'_>, path: &Path) -> Result<usize> {
    let g = run.ctx.group();
    let mut w = csv_writer(path)?;
    w.write_record(["lambda", "w_prime", "w", "i", "N"])?;
    let mut rows = 0;
    for &l in &run.lambdas {
        for x in g.elements() {
            for xp in g.elements() {
                for (i, n) in cb.n_coeffs(xp, x, l) {
                    w.write_record([run.point(l), run.word(xp), run.word(x), i.to_string(), n.to_string()])?;
                    rows += 1;
                }
            }
        }
    }
    w.flush()?;
    Ok(rows)
}

pub fn kl(run: &Run) -> Result<String> {
    let cb = CanonicalBasis::new(&run.ctx);
    let mut w = csv_writer(&run.path("kl.csv"))?;
    w.write_record(["lambda", "z_prime", "z", "poly"])?;
    let mut rows = 0;
    for &l in &run.lambdas {
        let sub = cb.subgroup(l);
        let table = cb.table(l);
        for z in 0..sub.size() {
            for zp in 0..sub.size() {
                let p = table.poly(zp, z);
                if !p.is_zero() {
                    w.write_record([run.point(l), run.word(sub.element(zp)), run.word(sub.element(z)), p.to_string()])?;
                    rows += 1;
                }
            }
        }
    }
    w.flush()?;
    let n_rows = write_n_table(run, &cb, &run.path("n.csv"))?;
    Ok(format!("{rows} KL rows, {n_rows} N rows for {} characters\n", run.lambdas.len()))
}

pub fn stalks(run: &Run) -> Result<String> {
    let cb = CanonicalBasis::new(&run.ctx);
    let model = FkModel::with_d0(&run.ctx, run.config.d0);
    let n_rows = write_n_table(run, &cb, &run.path("stalks.csv"))?;
    let mut classes = Vec::new();
    for &l in &run.lambdas {
        for x in run.ctx.group().elements() {
            let class = model.sheaf_class(&cb, x, l);
            let terms: Vec<Value> = class
                .terms()
                .map(|(k, c)| {
                    let mut t = run.key_json(k);
                    t["coeff"] = json!(c.to_string());
                    t
                })
                .collect();
            classes.push(json!({
                "w": run.ctx.group().word_one_based(x),
                "lambda": run.ctx.chars().point(l).entries(),
                "d_w": model.d_w(x),
                "terms": terms,
            }));
        }
    }
    write_json(
        &run.path("stalks.json"),
        &json!({ "config": run.config, "d0": run.config.d0, "basis": "prime", "classes": classes }),
    )?;
    Ok(format!("{n_rows} stalk rows, {} sheaf classes\n", classes.len()))
}

pub fn gamma(run: &Run) -> Result<String> {
    let cb = CanonicalBasis::new(&run.ctx);
    let keys = run.ctx.basis_keys();
    let mut w = csv_writer(&run.path("gamma.csv"))?;
    w.write_record(["x_w", "x_lambda", "y_w", "y_lambda", "z_w", "z_lambda", "gamma"])?;
    let mut rows = 0;
    for a in keys.iter().filter(|k| run.lambdas.contains(&k.lambda)) {
        for b in &keys {
            if run.ctx.chars().act(b.w, b.lambda) != a.lambda {
                continue;
            }
            for (z, c) in cb.gamma((a.w, a.lambda), (b.w, b.lambda)) {
                w.write_record([
                    run.word(a.w),
                    run.point(a.lambda),
                    run.word(b.w),
                    run.point(b.lambda),
                    run.word(z.w),
                    run.point(z.lambda),
                    c.to_string(),
                ])?;
                rows += 1;
            }
        }
    }
    w.flush()?;
    Ok(format!("{rows} structure constants\n"))
}

/// Runs the suites; the returned report is the first failure, if any.
pub fn verify(run: &Run, suites: &[Suite]) -> Result<(String, Option<SuiteReport>)> {
    let mut reports = Vec::new();
    let mut text = String::new();
    for &s in suites {
        let r = suites::run(&run.ctx, s, run.config.seed)?;
        text.push_str(&format!("{:<12} {}  ({} checks)\n", s.name(), if r.pass { "PASS" } else { "FAIL" }, r.checks));
        if s == Suite::Facets {
            write_facets_csv(&run.path("facets.csv"), &r)?;
        }
        reports.push(r);
    }
    write_json(
        &run.path("verify.json"),
        &json!({ "config": run.config, "d0": run.config.d0, "reports": reports }),
    )?;
    let failure = reports.into_iter().find(|r| !r.pass);
    Ok((text, failure))
}

fn write_facets_csv(path: &Path, r: &SuiteReport) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["element", "lhs_trace", "rhs_trace"])?;
    let rows = r.details.as_ref().and_then(|d| d["rows"].as_array()).context("facet report without rows")?;
    for row in rows {
        let field = |k: &str| match &row[k] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        w.write_record([field("element"), field("lhs_trace"), field("rhs_trace")])?;
    }
    w.flush()?;
    Ok(())
}
