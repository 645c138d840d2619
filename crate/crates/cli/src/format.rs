//! JSON mirrors of the text literals. Field names follow the text keys.

use std::collections::BTreeMap;

use graphcx::conv::ConvElement;
use graphcx::dfgc::DfgcElement;
use graphcx::ocgen::CorollaSig;
use graphcx::polyvec::GradedPoly;
use graphcx::rat::fmt_q;
use graphcx::{Color, DirGraph, GraphSum, RatMatrix};
use serde_json::{json, Value};

pub fn graph(g: &DirGraph) -> Value {
    let edges: Vec<String> = g.edges.iter().map(|(s, t)| format!("{s}>{t}")).collect();
    json!({"n": g.n_black, "k": g.n_white, "out": g.out.as_str(), "edges": edges})
}

pub fn sum(s: &GraphSum) -> Value {
    terms(std::slice::from_ref(s))
}

fn terms(sums: &[GraphSum]) -> Value {
    let terms: Vec<Value> = sums
        .iter()
        .flat_map(|s| s.iter())
        .map(|(g, c)| json!({"coeff": fmt_q(c), "graph": graph(g)}))
        .collect();
    json!({ "terms": terms })
}

pub fn dfgc(x: &DfgcElement) -> Value {
    let parts: Vec<GraphSum> = x.comps.values().cloned().collect();
    terms(&parts)
}

fn block(s: CorollaSig, v: &GraphSum) -> Value {
    let mut b = json!({"out": s.out.as_str(), "n": s.n});
    if s.out == Color::O {
        b["k"] = json!(s.k);
    }
    b["terms"] = sum(v)["terms"].clone();
    b
}

pub fn blocks(values: &BTreeMap<CorollaSig, GraphSum>) -> Value {
    Value::Array(values.iter().map(|(s, v)| block(*s, v)).collect())
}

/// Text form of a bare block list (no `conv` header), as used for residuals.
pub fn blocks_text(values: &BTreeMap<CorollaSig, GraphSum>) -> String {
    let mut out = String::new();
    for (s, v) in values {
        match s.out {
            Color::C => out.push_str(&format!("at c n={}:\n", s.n)),
            Color::O => out.push_str(&format!("at o n={} k={}:\n", s.n, s.k)),
        }
        out.push_str(&v.to_string());
    }
    out
}

pub fn conv(x: &ConvElement) -> Value {
    json!({
        "degree": x.degree,
        "cutoff": [x.cutoff.0, x.cutoff.1],
        "blocks": blocks(&x.values),
    })
}

pub fn poly(p: &GradedPoly) -> Value {
    let d = p.spec.d;
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(m, c)| {
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(g, &e)| {
                    let name = if g < d { format!("x{}", g + 1) } else { format!("t{}", g - d + 1) };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            json!({"coeff": fmt_q(c), "monomial": factors.join("*")})
        })
        .collect();
    let mut v = json!({"d": d, "terms": terms});
    if !p.spec.is_flat() {
        v["degs"] = json!(p.spec.degrees);
    }
    v
}

pub fn matrix(m: &RatMatrix) -> Value {
    let entries: Vec<Value> = m.entries().map(|(r, c, v)| json!([r, c, fmt_q(v)])).collect();
    json!({"rows": m.rows, "cols": m.cols, "entries": entries})
}
