use mdl_core::exactlin::{format_pq, MatQ};
use mdl_core::liealg::{DepthPoly, IndexSet, NCPoly, SparsePoly};
use serde_json::{Map, Value};

fn monomial(vars: &str, first: usize, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("{vars}{}", i + first)
            } else {
                format!("{vars}{}^{e}", i + first)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// One `coefficient monomial` line per term; `0` for the zero polynomial.
/// Variables are numbered from `first`.
pub fn poly_lines(p: &SparsePoly, vars: &str, first: usize) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    p.terms()
        .map(|(e, c)| format!("{}  {}\n", format_pq(c), monomial(vars, first, e)))
        .collect()
}

pub fn depth_poly_json(p: &DepthPoly) -> Value {
    serde_json::json!({"depth": p.depth(), "terms": p.to_json()})
}

pub fn nc_poly_json(p: &NCPoly) -> Value {
    let terms: Map<String, Value> = p
        .terms()
        .map(|(w, c)| (w.to_string(), Value::String(format_pq(c))))
        .collect();
    Value::Object(terms)
}

pub fn nc_poly_lines(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    p.terms()
        .map(|(w, c)| format!("{}  {}\n", format_pq(c), w))
        .collect()
}

fn label(t: &[u32]) -> String {
    let s: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("({})", s.join(","))
}

pub fn matrix_table(index: &IndexSet, m: &MatQ) -> String {
    let labels: Vec<String> = index.tuples().iter().map(|t| label(t.parts())).collect();
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    let w = labels
        .iter()
        .map(String::len)
        .chain(cells.iter().flatten().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:>w$}", "");
    for l in &labels {
        out += &format!(" {l:>w$}");
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(&cells) {
        out += &format!("{l:>w$}");
        for c in row {
            out += &format!(" {c:>w$}");
        }
        out.push('\n');
    }
    out
}

pub fn matrix_csv(index: &IndexSet, m: &MatQ) -> String {
    let labels: Vec<String> = index
        .tuples()
        .iter()
        .map(|t| format!("\"{}\"", t))
        .collect();
    let mut out = format!("row,{}\n", labels.join(","));
    for (i, l) in labels.iter().enumerate() {
        let row: Vec<String> = m.row(i).iter().map(format_pq).collect();
        out += &format!("{l},{}\n", row.join(","));
    }
    out
}

pub fn coords_lines(index: &IndexSet, vectors: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (k, v) in vectors.iter().enumerate() {
        out += &format!("[{k}]");
        for (t, x) in index.tuples().iter().zip(v) {
            if x != "0/1" {
                out += &format!(" {}:{}", label(t.parts()), x);
            }
        }
        out.push('\n');
    }
    out
}
