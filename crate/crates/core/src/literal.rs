//! Text literals for graphs, graph sums, convolution elements and
//! polynomials. Blank lines and lines starting with `#` are ignored
//! everywhere. Emission is the `Display` impl of each type, which is
//! canonical; parsing here accepts that output back.

use std::collections::BTreeMap;

use crate::conv::{value_signature, ConvElement};
use crate::dfgc::DfgcElement;
use crate::graphs::{Color, DirGraph, Endpoint, GraphSum, Signature};
use crate::ocgen::CorollaSig;
use crate::polyvec::{GenSpec, GradedPoly};
use crate::rat::{parse_q, Q};
use crate::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<'a>(line: usize, s: &'a str, key: &str) -> Result<&'a str> {
    s.split_whitespace()
        .find_map(|t| t.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| perr(line, format!("missing `{key}=`")))
}

fn int_field(line: usize, s: &str, key: &str) -> Result<usize> {
    let v = field(line, s, key)?;
    v.parse().map_err(|_| perr(line, format!("`{key}={v}` is not a non-negative integer")))
}

fn parse_endpoint(line: usize, s: &str) -> Result<Endpoint> {
    let s = s.trim();
    let (kind, num) = s.split_at(s.len().min(1));
    let l: u8 = num.parse().map_err(|_| perr(line, format!("bad vertex `{s}`")))?;
    match kind {
        "b" => Ok(Endpoint::Black(l)),
        "w" => Ok(Endpoint::White(l)),
        _ => Err(perr(line, format!("bad vertex `{s}`, expected b<i> or w<j>"))),
    }
}

/// `graph n=<int> k=<int> out=<c|o> edges=[b1>b2, b1>w1]`. Edge order is
/// kept as written; the graph is validated but not canonicalized.
pub fn parse_graph_at(line: usize, s: &str) -> Result<DirGraph> {
    let s = s.trim();
    let rest = s
        .strip_prefix("graph")
        .ok_or_else(|| perr(line, "graph literal must start with `graph`"))?;
    let open = rest.find("edges=[").ok_or_else(|| perr(line, "missing `edges=[`"))?;
    let head = &rest[..open];
    let body = &rest[open + "edges=[".len()..];
    let close = body.find(']').ok_or_else(|| perr(line, "unclosed edge list"))?;
    if !body[close + 1..].trim().is_empty() {
        return Err(perr(line, format!("trailing text `{}`", body[close + 1..].trim())));
    }
    let n = int_field(line, head, "n")?;
    let k = int_field(line, head, "k")?;
    let out = match field(line, head, "out")? {
        "c" => Color::C,
        "o" => Color::O,
        o => return Err(perr(line, format!("out={o}, expected c or o"))),
    };
    let mut edges = Vec::new();
    for e in body[..close].split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (a, b) = e.split_once('>').ok_or_else(|| perr(line, format!("bad edge `{e}`")))?;
        edges.push((parse_endpoint(line, a)?, parse_endpoint(line, b)?));
    }
    let g = DirGraph::new(n, k, out, edges);
    g.validate().map_err(|e| perr(line, e.to_string()))?;
    Ok(g)
}

pub fn parse_graph(s: &str) -> Result<DirGraph> {
    parse_graph_at(1, s)
}

/// One sum line `<p>/<q> * <graph>`; a bare graph has coefficient one.
fn parse_term(line: usize, s: &str) -> Result<(Q, DirGraph)> {
    match s.split_once('*') {
        Some((c, g)) if !c.trim_start().starts_with("graph") => {
            let c = parse_q(c).ok_or_else(|| perr(line, format!("bad coefficient `{}`", c.trim())))?;
            Ok((c, parse_graph_at(line, g)?))
        }
        _ => Ok((Q::from_integer(1.into()), parse_graph_at(line, s)?)),
    }
}

/// Sums grouped by signature, in signature order. A lone `0` line is the
/// empty sum and contributes nothing.
pub fn parse_sums(text: &str) -> Result<Vec<GraphSum>> {
    let mut by_sig: BTreeMap<Signature, GraphSum> = BTreeMap::new();
    for (line, l) in content_lines(text) {
        if l == "0" {
            continue;
        }
        let (c, g) = parse_term(line, l)?;
        by_sig
            .entry(g.signature())
            .or_insert_with(|| GraphSum::zero(g.signature()))
            .add_graph(&g, &c)
            .map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(by_sig.into_values().collect())
}

/// A sum with a single signature. The empty sum has no signature and is
/// rejected; use [`parse_sums`] when zero is a valid input.
pub fn parse_sum(text: &str) -> Result<GraphSum> {
    let mut sums = parse_sums(text)?;
    match sums.len() {
        1 => Ok(sums.pop().expect("one sum")),
        0 => Err(perr(0, "empty sum, cannot infer its signature")),
        n => Err(perr(0, format!("terms with {n} different signatures in one sum"))),
    }
}

/// A dfGC element: black graphs with black output, any number of vertices.
pub fn parse_dfgc(text: &str, cutoff: usize) -> Result<DfgcElement> {
    let mut out = DfgcElement::zero(cutoff);
    for s in parse_sums(text)? {
        if s.sig.out != Color::C || s.sig.n_white != 0 {
            return Err(perr(0, "dfGC elements have no white vertices and black output"));
        }
        out.add_scaled(&DfgcElement::from_sum(s, cutoff), &Q::from_integer(1.into()));
    }
    Ok(out)
}

fn parse_block_header(line: usize, l: &str) -> Result<CorollaSig> {
    let inner = l
        .strip_prefix("at")
        .and_then(|r| r.strip_suffix(':'))
        .ok_or_else(|| perr(line, format!("expected `at c n=<n>:` or `at o n=<n> k=<k>:`, got `{l}`")))?;
    let n = int_field(line, inner, "n")?;
    match inner.split_whitespace().next() {
        Some("c") => Ok(CorollaSig::mc(n)),
        Some("o") => Ok(CorollaSig::mo_nk(n, int_field(line, inner, "k")?)),
        _ => Err(perr(line, "block colour must be c or o")),
    }
}

/// `conv degree=<g> cutoff=<N>,<K>` followed by `at ...:` blocks of sum lines.
pub fn parse_conv(text: &str) -> Result<ConvElement> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| perr(0, "empty input, expected `conv` header"))?;
    let rest = header
        .strip_prefix("conv")
        .ok_or_else(|| perr(hl, "expected `conv degree=<g> cutoff=<N>,<K>`"))?;
    let degree: i64 = field(hl, rest, "degree")?
        .parse()
        .map_err(|_| perr(hl, "degree must be an integer"))?;
    let cut = field(hl, rest, "cutoff")?;
    let (a, b) = cut.split_once(',').ok_or_else(|| perr(hl, "cutoff must be `<N>,<K>`"))?;
    let cutoff = (
        a.parse().map_err(|_| perr(hl, "bad cutoff"))?,
        b.parse().map_err(|_| perr(hl, "bad cutoff"))?,
    );
    let mut out = ConvElement::zero(degree, cutoff);
    let mut blocks: Vec<(usize, CorollaSig, GraphSum)> = Vec::new();
    for (line, l) in lines {
        if l.starts_with("at") {
            let s = parse_block_header(line, l)?;
            if blocks.iter().any(|(_, t, _)| *t == s) {
                return Err(perr(line, format!("repeated block for {s}")));
            }
            blocks.push((line, s, GraphSum::zero(value_signature(s))));
            continue;
        }
        let (_, s, sum) = blocks.last_mut().ok_or_else(|| perr(line, "sum line before any `at` block"))?;
        if l == "0" {
            continue;
        }
        let (c, g) = parse_term(line, l)?;
        if g.signature() != value_signature(*s) {
            return Err(perr(line, format!("graph signature does not match block {s}")));
        }
        sum.add_graph(&g, &c).map_err(|e| perr(line, e.to_string()))?;
    }
    for (line, s, sum) in blocks {
        out.set(s, sum).map_err(|e| perr(line, e.to_string()))?;
    }
    Ok(out)
}

fn parse_monomial(line: usize, spec: &GenSpec, s: &str, p: &mut GradedPoly) -> Result<()> {
    let d = spec.d;
    let mut coef = Q::from_integer(1.into());
    let mut m = vec![0u32; 2 * d];
    for f in s.split('*').map(str::trim) {
        let (name, exp) = match f.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| perr(line, format!("bad exponent in `{f}`")))?),
            None => (f, 1),
        };
        let idx = |r: &str| -> Result<usize> {
            match r.parse::<usize>() {
                Ok(c) if (1..=d).contains(&c) => Ok(c - 1),
                _ => Err(perr(line, format!("generator `{name}` outside 1..={d}"))),
            }
        };
        if let Some(r) = name.strip_prefix('x') {
            m[idx(r)?] += exp;
        } else if let Some(r) = name.strip_prefix('t') {
            m[d + idx(r)?] += exp;
        } else {
            let c = parse_q(f).ok_or_else(|| perr(line, format!("bad factor `{f}`")))?;
            coef *= c;
        }
    }
    // repeated odd generators vanish inside add_term
    let mut one = GradedPoly::zero(spec);
    one.add_term(m, coef);
    *p = p.add(&one);
    Ok(())
}

/// `poly d=<d> [degs=a,b,..] : <p/q>*x1^2*t2 + ...` on one line.
pub fn parse_poly_at(line: usize, s: &str) -> Result<GradedPoly> {
    let (head, body) = s.split_once(':').ok_or_else(|| perr(line, "poly literal needs `:`"))?;
    let head = head
        .trim()
        .strip_prefix("poly")
        .ok_or_else(|| perr(line, "poly literal must start with `poly`"))?;
    let d = int_field(line, head, "d")?;
    let spec = match field(line, head, "degs") {
        Ok(list) => {
            let degs: Vec<i64> = list
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| perr(line, format!("bad degree `{x}`"))))
                .collect::<Result<_>>()?;
            if degs.len() != d {
                return Err(perr(line, format!("{} degrees given for d={d}", degs.len())));
            }
            GenSpec::with_degrees(degs)
        }
        Err(_) => GenSpec::flat(d),
    };
    let mut p = GradedPoly::zero(&spec);
    let body = body.trim();
    if body == "0" {
        return Ok(p);
    }
    // split on `+`, and on `-` that starts a new term
    let normalized = body.replace(" - ", " + -");
    for t in normalized.split(" + ").map(str::trim).filter(|t| !t.is_empty()) {
        parse_monomial(line, &spec, t, &mut p)?;
    }
    Ok(p)
}

pub fn parse_poly(s: &str) -> Result<GradedPoly> {
    let mut it = content_lines(s);
    let (line, l) = it.next().ok_or_else(|| perr(0, "empty input, expected a poly literal"))?;
    parse_poly_at(line, l)
}

pub fn format_poly(p: &GradedPoly) -> String {
    let mut head = format!("poly d={}", p.spec.d);
    if !p.spec.is_flat() {
        let degs: Vec<String> = p.spec.degrees.iter().map(|x| x.to_string()).collect();
        head.push_str(&format!(" degs={}", degs.join(",")));
    }
    format!("{head} : {p}")
}

/// Mixed input for the action: graph sum lines plus `poly` lines, the
/// latter being the arguments in order.
pub fn parse_action_input(text: &str) -> Result<(GraphSum, Vec<GradedPoly>)> {
    let mut graphs = String::new();
    let mut polys = Vec::new();
    for (line, l) in content_lines(text) {
        if l.starts_with("poly") {
            polys.push(parse_poly_at(line, l)?);
        } else {
            // keep line numbers stable for error messages
            while graphs.lines().count() + 1 < line {
                graphs.push('\n');
            }
            graphs.push_str(l);
            graphs.push('\n');
        }
    }
    Ok((parse_sum(&graphs)?, polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, q};

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("graph n=2 k=1 out=o edges=[b2>w1, b1>b2]").unwrap();
        assert_eq!(g.edges, vec![(Endpoint::Black(2), Endpoint::White(1)), (Endpoint::Black(1), Endpoint::Black(2))]);
        assert_eq!(parse_graph(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn sum_lines_canonicalize() {
        let s = parse_sum("-1/2 * graph n=2 k=0 out=c edges=[b2>b1, b1>b2]\n").unwrap();
        assert_eq!(s.len(), 1);
        let (g, c) = s.iter().next().unwrap();
        assert_eq!(g.edges[0], (Endpoint::Black(1), Endpoint::Black(2)));
        assert_eq!(*c, frac(1, 2));
        assert_eq!(parse_sum(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph("graph n=1 k=0 out=c edges=[b1>b2]").is_err());
        assert!(parse_graph("graph n=1 k=0 out=x edges=[]").is_err());
        assert!(parse_graph("graph n=1 k=0 out=c edges=[b1>b1").is_err());
        assert!(parse_sum("0\n").is_err());
        assert!(parse_sums("0\n").unwrap().is_empty());
        assert!(parse_sum("x * graph n=1 k=0 out=c edges=[]").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let p = parse_poly("poly d=2 : 3/2*x1^2*t2 - 1*x2").unwrap();
        let spec = GenSpec::flat(2);
        let want = GradedPoly::x(&spec, 1)
            .mul(&GradedPoly::x(&spec, 1))
            .mul(&GradedPoly::theta(&spec, 2))
            .scale(&frac(3, 2))
            .add(&GradedPoly::x(&spec, 2).scale(&q(-1)));
        assert_eq!(p, want);
        assert_eq!(parse_poly(&format_poly(&p)).unwrap(), p);
        let odd = parse_poly("poly d=1 degs=1 : 1/1*x1^2").unwrap();
        assert!(odd.is_zero());
    }

    #[test]
    fn conv_round_trip() {
        let mut a = ConvElement::zero(1, (3, 2));
        let edge = crate::dfgc::gamma_edge();
        a.set(CorollaSig::mc(2), edge).unwrap();
        let text = a.to_string();
        assert_eq!(parse_conv(&text).unwrap(), a);
        assert!(parse_conv("conv degree=1 cutoff=3,2\ngraph n=1 k=0 out=c edges=[]").is_err());
    }
}
