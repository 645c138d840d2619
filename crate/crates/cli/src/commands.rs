use std::io::Read;

use graphcx::conv::{self, ConvElement};
use graphcx::dfgc::{self, DfgcElement};
use graphcx::literal::{self, format_poly};
use graphcx::orbits::{Group, WhiteAction};
use graphcx::polyvec::act_sum;
use graphcx::{checks, hedgehog, hoch, operads, Error, GraphSum};
use serde_json::{json, Value};

use crate::format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max_black: usize,
    pub max_white: usize,
    pub max_edges: usize,
    pub loopless: bool,
    pub format: Format,
    pub seed: u64,
    pub max_cells: Option<usize>,
}

/// What a command produced. `status` is 0 or 1 (verification failure).
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: i32,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, status: 0 }
    }

    fn failed(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json, status: 1 }
    }

    pub fn render(&self, f: Format) -> String {
        match f {
            Format::Text if self.text.ends_with('\n') => self.text.clone(),
            Format::Text => format!("{}\n", self.text),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("plain json")),
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => 3,
            Error::Precondition(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, msg: format!("cannot read input: {e}") }
    }
}

pub type Outcome = Result<Report, Failure>;

fn resource(msg: String) -> Failure {
    Failure { code: 3, msg: format!("resource guard: {msg}") }
}

fn structure(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: format!("structural error: {}", msg.into()) }
}

/// File contents, or stdin for `-`.
pub fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure { code: 2, msg: format!("cannot read {path}: {e}") })
    }
}

impl Config {
    fn check_sum(&self, s: &GraphSum) -> Result<(), Failure> {
        if s.sig.n_black > self.max_black {
            return Err(resource(format!("{} black vertices exceed --max-black {}", s.sig.n_black, self.max_black)));
        }
        if s.sig.n_white > self.max_white {
            return Err(resource(format!("{} white vertices exceed --max-white {}", s.sig.n_white, self.max_white)));
        }
        self.check_graphs(s)
    }

    fn check_graphs(&self, s: &GraphSum) -> Result<(), Failure> {
        for (g, _) in s.iter() {
            if g.edges.len() > self.max_edges {
                return Err(resource(format!("{} edges exceed --max-edges {}", g.edges.len(), self.max_edges)));
            }
            if self.loopless && graphcx::graphs::has_loop(g) {
                return Err(structure(format!("--loopless given but {g} has a loop")));
            }
        }
        Ok(())
    }

    fn check_conv(&self, x: &ConvElement) -> Result<(), Failure> {
        if x.cutoff.0 > self.max_black || x.cutoff.1 > self.max_white {
            return Err(resource(format!(
                "cutoff {},{} exceeds --max-black {} / --max-white {}",
                x.cutoff.0, x.cutoff.1, self.max_black, self.max_white
            )));
        }
        // the cutoff region already bounds the vertex counts of every value
        x.values.values().try_for_each(|v| self.check_graphs(v))
    }

    fn check_cells(&self, rows: usize, cols: usize) -> Result<(), Failure> {
        match self.max_cells {
            Some(cap) if rows.saturating_mul(cols) > cap => Err(resource(format!(
                "matrix {rows}x{cols} exceeds GRAPHCOMPLEX_MAX_CELLS={cap}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn sum(&self, path: &str) -> Result<GraphSum, Failure> {
        let s = literal::parse_sum(&read_input(path)?)?;
        self.check_sum(&s)?;
        Ok(s)
    }

    pub fn dfgc(&self, path: &str) -> Result<DfgcElement, Failure> {
        let sums = literal::parse_sums(&read_input(path)?)?;
        for s in &sums {
            self.check_sum(s)?;
        }
        // no truncation on input: the cutoff only has to cover every component
        let cutoff = sums.iter().map(|s| s.sig.n_black).max().unwrap_or(0);
        let mut x = DfgcElement::zero(cutoff);
        for s in sums {
            check_dfgc_sum(&s)?;
            x = x.add(&DfgcElement::from_sum(s, cutoff));
        }
        Ok(x)
    }

    pub fn conv(&self, path: &str) -> Result<ConvElement, Failure> {
        let x = literal::parse_conv(&read_input(path)?)?;
        self.check_conv(&x)?;
        Ok(x)
    }
}

fn check_dfgc_sum(s: &GraphSum) -> Result<(), Failure> {
    if s.sig.out != graphcx::Color::C || s.sig.n_white != 0 {
        return Err(structure("dfGC elements have no white vertices and black output"));
    }
    if Group::new(s.sig.n_black, 0, WhiteAction::Fixed).project(s) != *s {
        return Err(structure(format!(
            "the component with {} vertices is not invariant under relabelling",
            s.sig.n_black
        )));
    }
    Ok(())
}

fn sum_report(s: &GraphSum) -> Report {
    Report::ok(s.to_string(), format::sum(s))
}

fn dfgc_report(x: &DfgcElement) -> Report {
    Report::ok(x.to_string(), format::dfgc(x))
}

fn conv_report(x: &ConvElement) -> Report {
    Report::ok(x.to_string(), format::conv(x))
}

fn same_cutoff(a: &ConvElement, b: &ConvElement) -> Result<(), Failure> {
    if a.cutoff != b.cutoff {
        return Err(structure(format!(
            "cutoffs {},{} and {},{} differ",
            a.cutoff.0, a.cutoff.1, b.cutoff.0, b.cutoff.1
        )));
    }
    Ok(())
}

/// Widen the cutoff so that products of the inputs are not truncated.
fn widened(x: &DfgcElement, cutoff: usize) -> DfgcElement {
    let mut y = x.clone();
    y.cutoff = cutoff;
    y
}

pub fn canon(cfg: &Config, input: &str) -> Outcome {
    let sums = literal::parse_sums(&read_input(input)?)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    for s in &sums {
        cfg.check_sum(s)?;
        text.push_str(&s.to_string());
        terms.extend(format::sum(s)["terms"].as_array().cloned().unwrap_or_default());
    }
    if sums.is_empty() {
        text.push_str("0\n");
    }
    Ok(Report::ok(text, json!({ "terms": terms })))
}

pub fn insert(cfg: &Config, outer: &str, inner: &str, slot: usize) -> Outcome {
    let (a, b) = (cfg.sum(outer)?, cfg.sum(inner)?);
    Ok(sum_report(&operads::insert(&a, slot, b.sig.out, &b)?))
}

pub fn dfgc_bracket(cfg: &Config, a: &str, b: &str) -> Outcome {
    let (x, y) = (cfg.dfgc(a)?, cfg.dfgc(b)?);
    let cut = x.cutoff + y.cutoff;
    Ok(dfgc_report(&dfgc::bracket(&widened(&x, cut), &widened(&y, cut))))
}

pub fn dfgc_d(cfg: &Config, input: &str) -> Outcome {
    Ok(dfgc_report(&dfgc::differential(&cfg.dfgc(input)?)))
}

pub fn dfgc_cocycle(cfg: &Config, input: &str) -> Outcome {
    let (closed, d) = dfgc::is_cocycle(&cfg.dfgc(input)?);
    if closed {
        Ok(Report::ok("COCYCLE", json!({"verdict": "COCYCLE"})))
    } else {
        Ok(Report::failed(
            format!("NOT A COCYCLE: differential is\n{d}"),
            json!({"verdict": "NOT A COCYCLE", "differential": format::dfgc(&d)}),
        ))
    }
}

pub fn dfgc_exact(cfg: &Config, input: &str) -> Outcome {
    let s = cfg.sum(input)?;
    check_dfgc_sum(&s)?;
    let f = DfgcElement::from_sum(s.clone(), s.sig.n_black);
    if let (false, d) = dfgc::is_cocycle(&f) {
        return Ok(Report::failed(
            format!("input is not a cocycle (∂f ≠ 0); differential is\n{d}"),
            json!({"verdict": "NOT A COCYCLE", "differential": format::dfgc(&d)}),
        ));
    }
    if let (n, Some(e)) = (s.sig.n_black, s.edge_count()) {
        if n >= 2 && e >= 1 {
            let src = dfgc::invariant_basis(n - 1, e - 1, cfg.loopless).dim();
            let tgt = dfgc::invariant_basis(n, e, cfg.loopless).dim();
            cfg.check_cells(tgt, src)?;
        }
    }
    match dfgc::exactness_witness(&s, cfg.loopless)? {
        Some(w) => Ok(Report::ok(
            format!("EXACT: witness is\n{w}"),
            json!({"verdict": "EXACT", "witness": format::dfgc(&w)}),
        )),
        None => Ok(Report::ok(
            "NOT EXACT: no invariant preimage under ∂ (rank test)",
            json!({"verdict": "NOT EXACT"}),
        )),
    }
}

pub fn dfgc_hdim(cfg: &Config, n: usize, e: usize, matrix: bool) -> Outcome {
    if n > cfg.max_black || e > cfg.max_edges {
        return Err(resource(format!("(n,e)=({n},{e}) beyond --max-black/--max-edges")));
    }
    if matrix {
        let basis = dfgc::invariant_basis(n, e, cfg.loopless);
        let (m, _) = dfgc::d_matrix(&basis);
        cfg.check_cells(m.rows, m.cols)?;
        let j = format::matrix(&m);
        return Ok(Report::ok(serde_json::to_string(&j).expect("plain json"), j));
    }
    let h = dfgc::cohomology_dim_with(n, e, cfg.loopless, cfg.max_cells)?;
    Ok(Report::ok(h.to_string(), json!({"n": n, "e": e, "dim": h})))
}

pub fn conv_bracket(cfg: &Config, a: &str, b: &str) -> Outcome {
    let (x, y) = (cfg.conv(a)?, cfg.conv(b)?);
    same_cutoff(&x, &y)?;
    Ok(conv_report(&conv::conv_bracket(&x, &y)))
}

pub fn mc_residual(cfg: &Config, input: &str) -> Outcome {
    let r = conv::mc_residual(&cfg.conv(input)?);
    if r.is_empty() {
        Ok(Report::ok("MC", json!({"verdict": "MC", "residual": []})))
    } else {
        Ok(Report::failed(
            format!("NOT MC: ½[α,α] is\n{}", format::blocks_text(&r)),
            json!({"verdict": "NOT MC", "residual": format::blocks(&r)}),
        ))
    }
}

pub fn gauge(cfg: &Config, xi: &str, alpha: &str) -> Outcome {
    let (x, a) = (cfg.conv(xi)?, cfg.conv(alpha)?);
    same_cutoff(&x, &a)?;
    Ok(conv_report(&conv::gauge(&x, &a)?))
}

pub fn dfgc_act(cfg: &Config, gamma: &str, alpha: &str) -> Outcome {
    let (g, a) = (cfg.dfgc(gamma)?, cfg.conv(alpha)?);
    Ok(conv_report(&conv::dfgc_action(&g, &a)?))
}

pub fn mc_flow(cfg: &Config, alpha: &str, xi: &[String], max_iter: usize) -> Outcome {
    let a = cfg.conv(alpha)?;
    let mut coeffs = Vec::new();
    for path in xi {
        let x = cfg.conv(path)?;
        same_cutoff(&x, &a)?;
        coeffs.push(x);
    }
    Ok(conv_report(&conv::mc_flow(&coeffs, &a, max_iter)?))
}

pub fn check_boundary(cfg: &Config, input: &str) -> Outcome {
    let v = conv::boundary_check(&cfg.conv(input)?);
    if v.is_empty() {
        Ok(Report::ok("BOUNDARY OK", json!({"verdict": "BOUNDARY OK", "violations": []})))
    } else {
        Ok(Report::failed(
            format!("BOUNDARY VIOLATED\n{}", v.join("\n")),
            json!({"verdict": "BOUNDARY VIOLATED", "violations": v}),
        ))
    }
}

pub fn check_homotopy(cfg: &Config, input: &str) -> Outcome {
    let r = conv::homotopy_conditions(&cfg.conv(input)?);
    let verdict = if r.admissible { "ADMISSIBLE" } else { "NOT ADMISSIBLE" };
    let mut text = format!("{verdict}\nvanishes on t^o_k: {}", if r.vanishes_on_mo { "yes" } else { "no" });
    for v in &r.violations {
        text.push_str(&format!("\n{v}"));
    }
    let j = json!({"verdict": verdict, "vanishes_on_mo": r.vanishes_on_mo, "violations": r.violations});
    Ok(if r.admissible { Report::ok(text, j) } else { Report::failed(text, j) })
}

pub fn hoch_d(cfg: &Config, input: &str) -> Outcome {
    Ok(sum_report(&hoch::pa_hoch(&cfg.sum(input)?)?))
}

pub fn hoch_decompose(cfg: &Config, input: &str) -> Outcome {
    let (c, g1) = hoch::harmonic_decompose(&cfg.sum(input)?)?;
    Ok(Report::ok(
        format!("harmonic part:\n{c}primitive:\n{g1}"),
        json!({"harmonic": format::sum(&c), "primitive": format::sum(&g1)}),
    ))
}

pub fn hoch_hdim(cfg: &Config, n: usize, k: usize, e: usize, matrix: bool) -> Outcome {
    if n > cfg.max_black || k > cfg.max_white || e > cfg.max_edges {
        return Err(resource(format!("(n,k,e)=({n},{k},{e}) beyond the configured caps")));
    }
    if matrix {
        let (here, up) = (hoch::cochain_basis(n, k, e), hoch::cochain_basis(n, k + 1, e));
        cfg.check_cells(up.dim(), here.dim())?;
        let j = format::matrix(&hoch::hoch_matrix(&here, &up));
        return Ok(Report::ok(serde_json::to_string(&j).expect("plain json"), j));
    }
    let h = hoch::hoch_cohomology_dim(n, k, e, cfg.max_cells)?;
    Ok(Report::ok(h.to_string(), json!({"n": n, "k": k, "e": e, "dim": h})))
}

fn hedgehog_input(cfg: &Config, input: &str) -> Result<GraphSum, Failure> {
    let s = cfg.sum(input)?;
    if !hedgehog::in_hg(&s) {
        return Err(Failure {
            code: 1,
            msg: "input is not a hedgehog: need white output, black invariance, white valency one and white antisymmetry"
                .into(),
        });
    }
    Ok(s)
}

pub fn hg_d(cfg: &Config, input: &str) -> Outcome {
    Ok(sum_report(&hedgehog::md(&hedgehog_input(cfg, input)?)?))
}

pub fn hg_dstar(cfg: &Config, input: &str) -> Outcome {
    Ok(sum_report(&hedgehog::md_star(&hedgehog_input(cfg, input)?)?))
}

pub fn hg_hodge(cfg: &Config, input: &str) -> Outcome {
    let r = hedgehog::hodge_check(&hedgehog_input(cfg, input)?)?;
    let j = json!({
        "verdict": if r.holds() { "HOLDS" } else { "FAILS" },
        "lhs": format::sum(&r.lhs),
        "rhs": format::sum(&r.rhs),
    });
    if r.holds() {
        Ok(Report::ok("HOLDS", j))
    } else {
        Ok(Report::failed(format!("FAILS\nlhs:\n{}rhs:\n{}", r.lhs, r.rhs), j))
    }
}

pub fn hg_witness(cfg: &Config, input: &str) -> Outcome {
    Ok(sum_report(&hedgehog::md_exactness_witness(&hedgehog_input(cfg, input)?)?))
}

pub fn act(cfg: &Config, input: &str) -> Outcome {
    let (x, polys) = literal::parse_action_input(&read_input(input)?)?;
    cfg.check_sum(&x)?;
    let spec = polys
        .first()
        .map(|p| p.spec.clone())
        .ok_or_else(|| structure("no `poly` arguments given"))?;
    let n = x.sig.n_black;
    if polys.len() != n + x.sig.n_white {
        return Err(structure(format!(
            "{} arguments given for {} black and {} white vertices",
            polys.len(),
            n,
            x.sig.n_white
        )));
    }
    let p = act_sum(&x, &polys[..n], &polys[n..], &spec)?;
    Ok(Report::ok(format_poly(&p), format::poly(&p)))
}

pub fn selftest(cfg: &Config) -> Outcome {
    let outcomes = checks::run_all(cfg.seed);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    // timings are left out so the output is reproducible
    let mut text = String::new();
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("[{tag}] {:>2}. {}: {}\n", o.id, o.title, o.detail));
    }
    text.push_str(&format!("{} criteria, {failed} failed\n", outcomes.len()));
    let j = json!({
        "criteria": outcomes
            .iter()
            .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
            .collect::<Vec<_>>(),
        "failed": failed,
    });
    Ok(if failed == 0 { Report::ok(text, j) } else { Report::failed(text, j) })
}
