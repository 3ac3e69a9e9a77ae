//! Text, JSON and LaTeX renderings of table rows.

use std::str::FromStr;

use super::TableRow;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Json,
    Text,
    Latex,
}

impl FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Emit> {
        match s {
            "json" => Ok(Emit::Json),
            "text" => Ok(Emit::Text),
            "latex" => Ok(Emit::Latex),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

pub fn emit_rows(rows: &[TableRow], format: Emit) -> Result<String> {
    match format {
        Emit::Json => serde_json::to_string_pretty(rows).map_err(|e| Error::Parse(e.to_string())),
        Emit::Text => Ok(text(rows)),
        Emit::Latex => Ok(latex(rows)),
    }
}

fn text(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            let notation = r.entries.iter().map(|e| e.notation.as_str()).collect::<Vec<_>>().join(" ");
            [r.algebra.clone(), format!("kind {}", r.kind), notation, r.count_label()]
        })
        .collect();
    let mut widths = [0usize; 4];
    for c in &cells {
        for (w, s) in widths.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let mut out = String::new();
    for c in &cells {
        let line = c
            .iter()
            .zip(widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// LaTeX for an automorphism label such as `rho1*Adtau3` or `rho2'`.
pub fn label_latex(label: &str) -> String {
    label.split('*').map(atom_latex).collect::<Vec<_>>().join("")
}

fn atom_latex(a: &str) -> String {
    let primes = a.chars().rev().take_while(|c| *c == '\'').count();
    let base = &a[..a.len() - primes];
    let tick = "'".repeat(primes);
    let indexed = |name: &str, rest: &str| format!("{name}_{{{rest}}}{tick}");
    if base == "id" {
        return format!("\\mathrm{{id}}{tick}");
    }
    if let Some(rest) = base.strip_prefix("rho") {
        return indexed("\\varrho", rest);
    }
    if let Some(rest) = base.strip_prefix("sigma") {
        return indexed("\\sigma", rest);
    }
    if let Some(rest) = base.strip_prefix("Adtau") {
        return format!("\\mathrm{{Ad}}\\,\\tau_{{{rest}}}{tick}");
    }
    match base {
        "mu" => format!("\\mu{tick}"),
        "theta" => format!("\\vartheta{tick}"),
        "omega" => format!("\\omega{tick}"),
        "AdJ" => format!("\\mathrm{{Ad}}\\,J{tick}"),
        "AdjE" => format!("\\mathrm{{Ad}}\\,jE{tick}"),
        other => format!("\\mathrm{{{other}}}{tick}"),
    }
}

fn notation_latex(n: &str) -> String {
    let mut out = String::new();
    let mut word = String::new();
    for ch in n.chars() {
        if ch.is_alphanumeric() || ch == '*' || ch == '\'' {
            word.push(ch);
        } else {
            if !word.is_empty() {
                out.push_str(&label_latex(&word));
                word.clear();
            }
            out.push(ch);
        }
    }
    if !word.is_empty() {
        out.push_str(&label_latex(&word));
    }
    out
}

fn algebra_latex(r: &TableRow) -> String {
    let name = r.family.name();
    let letter = &name[..1];
    if r.family.is_classical() {
        format!("\\mathfrak{{{letter}}}_{{{}}}^{{({})}}", r.n, r.k)
    } else {
        format!("\\mathfrak{{{letter}}}_{{{}}}^{{({})}}", &name[1..], r.k)
    }
}

fn latex(rows: &[TableRow]) -> String {
    let mut out = String::from("\\begin{tabular}{|l|l|l|l|}\n\\hline\n");
    out.push_str("$\\mathfrak{g}^{(k)}$ & kind & invariants & number \\\\\n\\hline\n");
    for r in rows {
        let body = r.entries.iter().map(|e| notation_latex(&e.notation)).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("${}$ & {} & ${}$ & ${}$ \\\\\n", algebra_latex(r), r.kind, body, r.count_label()));
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}
