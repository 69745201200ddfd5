//! Text, JSON and LaTeX renderings.
//!
//! JSON is compact, one document per line, with keys in sorted order, so
//! repeated runs are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use glsv_core::oracle::TreeKind;
use glsv_core::solver::{LambdaSpec, MuTable};
use glsv_core::{KPoly, LaurentPoly, Rational, Series, Verdict};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// `\frac{p}{q}` or `p`, for a nonnegative rational.
pub fn latex_magnitude(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Joins `(coefficient, monomial)` pairs with explicit signs; the monomial
/// is empty for the constant term.
fn latex_sum<'a>(terms: impl Iterator<Item = (&'a Rational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = c.is_negative();
        if out.is_empty() {
            if sign {
                out.push('-');
            }
        } else {
            out.push_str(if sign { " - " } else { " + " });
        }
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => out.push_str(&latex_magnitude(&mag)),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&latex_magnitude(&mag));
                out.push(' ');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn latex_power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{{{e}}}"),
    }
}

/// Ascending exponents of `u`.
pub fn latex_laurent(p: &LaurentPoly) -> String {
    latex_sum(p.terms().map(|(e, c)| (c, latex_power("u", e))))
}

pub fn latex_kpoly(p: &KPoly) -> String {
    latex_sum(p.coeffs().iter().enumerate().map(|(i, c)| (c, latex_power("k", i as i64))))
}

pub fn render_ml(polys: &[LaurentPoly], format: Format) -> String {
    match format {
        Format::Json => polys
            .iter()
            .enumerate()
            .map(|(i, p)| json_line(&json!({ "l": i + 1, "M": p.to_json() })))
            .collect(),
        Format::Text => polys.iter().enumerate().map(|(i, p)| format!("M_{}(u) = {p}\n", i + 1)).collect(),
        Format::Latex => {
            let mut out = String::from("\\begin{align*}\n");
            for (i, p) in polys.iter().enumerate() {
                let end = if i + 1 == polys.len() { "." } else { ",\\\\" };
                let _ = writeln!(out, "M_{}(u) &= {}{end}", i + 1, latex_laurent(p));
            }
            out.push_str("\\end{align*}\n");
            out
        }
    }
}

pub fn render_pmn(m: u64, n: u64, p: &LaurentPoly, format: Format) -> String {
    match format {
        Format::Json => json_line(&json!({ "m": m, "n": n, "P": p.to_json() })),
        Format::Text => format!("{p}\n"),
        Format::Latex => format!("P_{{{m},{n}}}(u) = {}\n", latex_laurent(p)),
    }
}

/// `H(t, k)`, one coefficient of `t` per line.
pub fn render_solve(spec: &LambdaSpec, h: &Series<KPoly>, format: Format) -> String {
    match format {
        Format::Json => json_line(&json!({ "lambda": spec.to_string(), "H": h.to_json() })),
        Format::Text => (1..=h.order()).map(|n| format!("[t^{n}] H = {}\n", h.coeff(n))).collect(),
        Format::Latex => {
            let terms: Vec<String> = (1..=h.order())
                .filter(|&n| !h.coeff(n).is_zero())
                .map(|n| {
                    let c = h.coeff(n);
                    let t = latex_power("t", n as i64);
                    if c.is_one() {
                        t
                    } else {
                        format!("\\left({}\\right) {t}", latex_kpoly(&c))
                    }
                })
                .collect();
            format!("H = {} + O(t^{{{}}})\n", terms.join(" + "), h.order() + 1)
        }
    }
}

pub fn render_mu(table: &MuTable, format: Format) -> String {
    match format {
        Format::Json => json_line(&table.to_json()),
        Format::Text => {
            let mut out = String::new();
            for l in 1..=table.l_max {
                let row: Vec<String> = (l..=table.order).map(|n| table.mu(l, n).to_string()).collect();
                let _ = writeln!(out, "mu_{l}(n), n = {}..{}: {}", l, table.order, row.join(" "));
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for l in 1..=table.l_max {
                let row: Vec<String> = (l..=table.order).map(|n| latex_signed(&table.mu(l, n))).collect();
                let _ = writeln!(out, "\\mu_{{{l}}}: {}\\\\", row.join(", "));
            }
            out
        }
    }
}

fn latex_signed(r: &Rational) -> String {
    let m = latex_magnitude(&r.abs());
    if r.is_negative() {
        format!("-{m}")
    } else {
        m
    }
}

pub fn render_trees(kind: TreeKind, n: usize, counts: &BTreeMap<usize, BigInt>, format: Format) -> String {
    let name = match kind {
        TreeKind::Phylo => "phylo",
        TreeKind::Ordered => "ordered",
    };
    match format {
        Format::Json => {
            let rows: Vec<Value> = counts.iter().map(|(i, c)| json!({ "i": i, "count": c.to_string() })).collect();
            json_line(&json!({ "kind": name, "n": n, "counts": rows }))
        }
        Format::Text => counts.iter().map(|(i, c)| format!("c({n},{i}) = {c}\n")).collect(),
        Format::Latex => counts.iter().map(|(i, c)| format!("c({n},{i}) &= {c}\\\\\n")).collect(),
    }
}

pub fn render_verdicts(verdicts: &[Verdict]) -> String {
    verdicts.iter().map(|v| json_line(&v.to_json())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use glsv_core::exact::rat;

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d))))
    }

    #[test]
    fn latex_m2() {
        let m2 = lp(&[(-1, -1, 6), (0, 1, 2), (1, -1, 2), (2, 1, 6)]);
        assert_eq!(latex_laurent(&m2), "-\\frac{1}{6} u^{-1} + \\frac{1}{2} - \\frac{1}{2} u + \\frac{1}{6} u^{2}");
        assert_eq!(latex_laurent(&lp(&[(0, 1, 1), (1, -1, 1)])), "1 - u");
        assert_eq!(latex_laurent(&LaurentPoly::zero()), "0");
    }

    #[test]
    fn json_m2() {
        let m2 = lp(&[(-1, -1, 6), (0, 1, 2), (1, -1, 2), (2, 1, 6)]);
        assert_eq!(
            render_ml(&[LaurentPoly::one(), m2], Format::Json),
            "{\"M\":{\"terms\":[[0,\"1\"]]},\"l\":1}\n{\"M\":{\"terms\":[[-1,\"-1/6\"],[0,\"1/2\"],[1,\"-1/2\"],[2,\"1/6\"]]},\"l\":2}\n"
        );
        assert_eq!(json_line(&LaurentPoly::zero().to_json()), "{\"terms\":[]}\n");
    }

    #[test]
    fn text_pmn() {
        let p = lp(&[(-1, -2, 1), (0, 6, 1), (1, -6, 1), (2, 2, 1)]);
        assert_eq!(render_pmn(1, 2, &p, Format::Text), "-2*u^-1 + 6 - 6*u + 2*u^2\n");
    }

    #[test]
    fn latex_kpoly_terms() {
        assert_eq!(latex_kpoly(&KPoly::from_ints(&[0, 2, -10, 15])), "2 k - 10 k^{2} + 15 k^{3}");
    }
}
