//! Enumeration of the involutions of the first and second kind on each `g^(k)`,
//! with realization of every entry and text, JSON and LaTeX emitters.

mod emit;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::aut::named::out_class_reps;
use crate::aut::{
    component_signature, int_class_labels, named_automorphism, pi0_table, standard_involution, standard_labels,
    Automorphism, OutElement,
};
use crate::aut::classify::pi0_rows;
use crate::error::{Error, Result};
use crate::lie::{make_algebra, Family, FieldMode, SimpleAlgebra};
use crate::loop_aut::{
    beta_automorphism, canonical_pair, FirstKindInvariant, LoopInvariant, RhoClass, SecondKindInvariant,
    StandardLoopAutomorphism,
};

pub use emit::{emit_rows, Emit};

/// Which part of the tables an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntryType {
    /// `(0, ρ, [σ'])`: `ρ` from the standard list.
    #[serde(rename = "1a")]
    FirstA,
    /// `(1, id, [β])`: `β` an outer class.
    #[serde(rename = "1b")]
    FirstB,
    #[serde(rename = "2")]
    Second,
}

impl fmt::Display for EntryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryType::FirstA => "1a",
            EntryType::FirstB => "1b",
            EntryType::Second => "2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Static,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "type")]
    pub entry_type: EntryType,
    /// Row notation such as `(rho2, rho1*rho3)`, `id` or `[rho1, rho2']`.
    pub notation: String,
    pub invariant: LoopInvariant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    /// Row label such as `d_4^(1)`.
    pub algebra: String,
    pub family: Family,
    pub n: usize,
    pub k: u32,
    /// 1 for the first kind, 2 for the second kind.
    pub kind: u8,
    pub entries: Vec<TableEntry>,
    pub count: usize,
    pub provenance: Provenance,
}

impl TableRow {
    fn new(alg: &SimpleAlgebra, k: u32, kind: u8, entries: Vec<TableEntry>) -> TableRow {
        let provenance = if alg.is_classical() { Provenance::Computed } else { Provenance::Static };
        TableRow {
            algebra: row_label(alg, k),
            family: alg.family,
            n: alg.n,
            k,
            kind,
            count: entries.len(),
            entries,
            provenance,
        }
    }

    pub fn count_of(&self, t: EntryType) -> usize {
        self.entries.iter().filter(|e| e.entry_type == t).count()
    }

    /// `a+b` for the first kind, the plain count for the second.
    pub fn count_label(&self) -> String {
        if self.kind == 1 {
            format!("{}+{}", self.count_of(EntryType::FirstA), self.count_of(EntryType::FirstB))
        } else {
            self.count.to_string()
        }
    }
}

/// `a_3^(1)`, `e6^(2)`, ...
pub fn row_label(alg: &SimpleAlgebra, k: u32) -> String {
    if alg.is_classical() {
        format!("{}_{}^({k})", alg.family.name(), alg.n)
    } else {
        format!("{}^({k})", alg.family.name())
    }
}

/// Smallest supported rank per family.
pub fn min_rank(f: Family) -> usize {
    match f {
        Family::A => 1,
        Family::B => 2,
        Family::C => 3,
        Family::D => 4,
        _ => 0,
    }
}

/// The values of `k = ō(σ)` occurring for `g`.
pub fn valid_ks(alg: &SimpleAlgebra) -> Vec<u32> {
    match alg.family {
        Family::A if alg.n >= 2 => vec![1, 2],
        Family::D if alg.n == 4 => vec![1, 2, 3],
        Family::D | Family::E6 => vec![1, 2],
        _ => vec![1],
    }
}

fn check_k(alg: &SimpleAlgebra, k: u32) -> Result<()> {
    if valid_ks(alg).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidK(k))
    }
}

/// A concrete automorphism for a label; static for exceptional algebras.
fn labelled(alg: &Arc<SimpleAlgebra>, label: &str) -> Result<Automorphism> {
    if label == "id" {
        return Ok(Automorphism::identity(alg));
    }
    named_automorphism(alg, label)
}

/// Involution table rows `(ρ, [(rep, k)])` for every involution of the standard list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub rho: String,
    pub reps: Vec<(String, u32)>,
    pub provenance: Provenance,
}

pub fn table1(alg: &Arc<SimpleAlgebra>) -> Result<Vec<Table1Row>> {
    let provenance = if alg.is_classical() { Provenance::Computed } else { Provenance::Static };
    standard_labels(alg)
        .into_iter()
        .map(|rho| Ok(Table1Row { reps: pi0_rows(alg, &rho)?, rho, provenance }))
        .collect()
}

/// Outcome of validating one involution table row against the matrix model.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Check {
    pub rho: String,
    /// Every representative commutes with `ρ` and has the listed outer order.
    pub commuting_and_orders: bool,
    /// Labels recomputed by the component signature, `None` where no rule exists.
    pub signatures: Vec<Option<String>>,
    /// Recomputed labels equal the listed ones and are pairwise distinct.
    pub separated: bool,
}

pub fn validate_table1(alg: &Arc<SimpleAlgebra>) -> Result<Vec<Table1Check>> {
    if !alg.is_classical() {
        return Err(Error::StaticOnlyAlgebra);
    }
    let mut out = Vec::new();
    for rho in standard_labels(alg) {
        let rho_aut = standard_involution(alg, &rho)?;
        let (ok, entries) = match pi0_table(alg, &rho) {
            Ok(e) => (true, e),
            Err(Error::NonCommuting) | Err(Error::OrderMismatch(_)) => {
                out.push(Table1Check { rho, commuting_and_orders: false, signatures: Vec::new(), separated: false });
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut signatures = Vec::new();
        for e in &entries {
            let a = e.automorphism.as_ref().expect("classical entries carry automorphisms");
            signatures.push(match component_signature(&rho_aut, a) {
                Ok(c) => Some(c.rep_label),
                Err(Error::NoSignatureRule(_)) => None,
                Err(err) => return Err(err),
            });
        }
        let known: Vec<&String> = signatures.iter().flatten().collect();
        let distinct: BTreeSet<&String> = known.iter().copied().collect();
        let matches = entries.iter().zip(&signatures).all(|(e, s)| s.as_ref().map_or(true, |s| *s == e.rep_label));
        let separated = matches && distinct.len() == known.len();
        out.push(Table1Check { rho, commuting_and_orders: ok, signatures, separated });
    }
    Ok(out)
}

/// Involutions of the first kind on `g^(k)`: type 1a from the involution table, type 1b from `Out`.
pub fn enumerate_first_kind(alg: &Arc<SimpleAlgebra>, k: u32) -> Result<TableRow> {
    check_k(alg, k)?;
    let mut entries = Vec::new();
    for rho in standard_labels(alg) {
        for (rep, rk) in pi0_rows(alg, &rho)? {
            if rk == k {
                entries.push(TableEntry {
                    entry_type: EntryType::FirstA,
                    notation: format!("({rho}, {rep})"),
                    invariant: LoopInvariant::First(FirstKindInvariant {
                        q: 2,
                        p: 0,
                        rho: RhoClass::Label(rho.clone()),
                        beta: rep,
                        k,
                    }),
                });
            }
        }
    }
    for (label, beta) in out_classes(alg)? {
        if beta.pow(-2).order() == k {
            entries.push(TableEntry {
                entry_type: EntryType::FirstB,
                notation: label.clone(),
                invariant: LoopInvariant::First(FirstKindInvariant {
                    q: 2,
                    p: 1,
                    rho: RhoClass::Label("id".into()),
                    beta: label,
                    k,
                }),
            });
        }
    }
    Ok(TableRow::new(alg, k, 1, entries))
}

/// Conjugacy classes of `Aut g / Int g` as `(label, element)`.
fn out_classes(alg: &Arc<SimpleAlgebra>) -> Result<Vec<(String, OutElement)>> {
    if alg.is_classical() {
        return Ok(out_class_reps(alg));
    }
    let data = alg.exceptional.ok_or(Error::UnsupportedExceptional)?;
    data.out_classes.iter().map(|(l, _)| Ok((l.to_string(), labelled(alg, l)?.out_class()))).collect()
}

/// Outer class of an inner-class label.
fn label_out_class(alg: &Arc<SimpleAlgebra>, label: &str) -> Result<OutElement> {
    Ok(labelled(alg, label)?.out_class())
}

/// Involutions of the second kind on `g^(k)`: pairs of inner-class labels up to swapping
/// and simultaneous outer action, with `ō(φ₋⁻¹φ₊) = k`.
pub fn enumerate_second_kind(alg: &Arc<SimpleAlgebra>, k: u32) -> Result<TableRow> {
    check_k(alg, k)?;
    let labels = int_class_labels(alg);
    let outs: Vec<OutElement> = labels.iter().map(|l| label_out_class(alg, l)).collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate().skip(i) {
            let order = outs[j].inverse().mul(outs[i]).order();
            if order != k {
                continue;
            }
            seen.insert(canonical_pair(alg, a, b)?);
        }
    }
    let mut entries: Vec<TableEntry> = seen
        .into_iter()
        .map(|pair| TableEntry {
            entry_type: EntryType::Second,
            notation: format!("[{}, {}]", pair[0], pair[1]),
            invariant: LoopInvariant::Second(SecondKindInvariant { pair, k }),
        })
        .collect();
    entries.sort_by(|x, y| pair_key(&x.invariant).cmp(&pair_key(&y.invariant)));
    Ok(TableRow::new(alg, k, 2, entries))
}

/// Sort key placing `id` first and ordering `rho` indices numerically.
fn pair_key(inv: &LoopInvariant) -> Vec<(usize, usize, String)> {
    let key = |l: &str| {
        if l == "id" {
            return (0, 0, String::new());
        }
        let base = crate::aut::named::strip_primes(l);
        let idx = base.trim_start_matches("rho").parse::<usize>().unwrap_or(usize::MAX);
        (1, idx, l.to_string())
    };
    match inv {
        LoopInvariant::Second(s) => s.pair.iter().map(|l| key(l)).collect(),
        LoopInvariant::First(_) => Vec::new(),
    }
}

/// Both tables for `g`: first-kind and second-kind rows at every valid `k`.
pub fn all_rows(alg: &Arc<SimpleAlgebra>) -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for k in valid_ks(alg) {
        out.push(enumerate_first_kind(alg, k)?);
    }
    for k in valid_ks(alg) {
        out.push(enumerate_second_kind(alg, k)?);
    }
    Ok(out)
}

/// The algebra `family_n` in complex mode, validating the rank.
pub fn algebra(family: Family, n: usize) -> Result<Arc<SimpleAlgebra>> {
    if family.is_classical() && n < min_rank(family) {
        return Err(Error::UnsupportedParam(format!("{}{n} is below the supported rank", family.name())));
    }
    make_algebra(family, n, FieldMode::Complex)
}

/// A constant automorphism with the invariant of a table entry.
pub fn realize_entry(alg: &Arc<SimpleAlgebra>, entry: &TableEntry) -> Result<StandardLoopAutomorphism> {
    crate::loop_aut::realize(alg, &entry.invariant)
}

/// Whether an invariant belongs to the set attached to the twist `σ`:
/// `ρ^l β^{q'}` (first kind) or `φ₋⁻¹φ₊` (second kind) lies in the outer class of `σ`.
pub fn membership_condition(alg: &Arc<SimpleAlgebra>, inv: &LoopInvariant, sigma: &Automorphism) -> Result<bool> {
    let target = sigma.out_class().class_rep();
    let class = match inv {
        LoopInvariant::First(i) => {
            let (_, _, qq, l, _) = i.derived_integers();
            let (rho, beta) = match &i.rho {
                RhoClass::Certificate(c) => (c.rho_out, c.beta_out),
                RhoClass::Label(r) => {
                    let rho = label_out_class(alg, r)?;
                    let beta = if !alg.is_classical() {
                        label_out_class(alg, &i.beta)?
                    } else {
                        beta_automorphism(alg, r, &i.beta)?.out_class()
                    };
                    (rho, beta)
                }
            };
            rho.pow(l as i64).mul(beta.pow(qq as i64))
        }
        LoopInvariant::Second(s) => {
            let plus = label_out_class(alg, &s.pair[0])?;
            let minus = label_out_class(alg, &s.pair[1])?;
            minus.inverse().mul(plus)
        }
    };
    Ok(class.class_rep() == target)
}

/// Closed-form first-kind counts `(1a, 1b)`, where listed.
pub fn expected_first_kind(family: Family, n: usize, k: u32) -> Option<(usize, usize)> {
    let half = n / 2;
    Some(match (family, k) {
        (Family::A, 1) if n == 1 => (2, 1),
        (Family::A, 1) if n % 2 == 0 => (half + 1, 2),
        (Family::A, 1) => ((n + 1) / 2 + 4, 2),
        (Family::A, 2) if n == 1 => return None,
        (Family::A, 2) if n % 2 == 0 => (half + 1, 0),
        (Family::A, 2) => ((n + 1) / 2 + 4, 0),
        (Family::B, 1) => (2 * n, 1),
        (Family::C, 1) if n % 2 == 1 => ((n + 1) / 2 + 1, 1),
        (Family::C, 1) => (half + 3, 1),
        (Family::D, 1) if n == 4 => (6, 2),
        (Family::D, 1) if n % 2 == 0 => (3 * half + 3, 2),
        (Family::D, 1) => (3 * ((n + 1) / 2), 2),
        (Family::D, 2) if n % 2 == 0 => (3 * half, 0),
        (Family::D, 2) => (3 * ((n + 1) / 2), 0),
        (Family::D, 3) if n == 4 => (1, 1),
        (Family::E6, 1) => (4, 2),
        (Family::E6, 2) => (4, 0),
        (Family::E7, 1) => (5, 1),
        (Family::E8, 1) | (Family::F4, 1) => (2, 1),
        (Family::G2, 1) => (1, 1),
        _ => return None,
    })
}

/// Closed-form second-kind counts, where listed.
pub fn expected_second_kind(family: Family, n: usize, k: u32) -> Option<usize> {
    let h = n / 2;
    let h1 = (n + 1) / 2;
    Some(match (family, k) {
        (Family::A, 1) if n == 1 => 3,
        (Family::A, 1) if n % 2 == 0 => h * (h + 3) / 2 + 2,
        (Family::A, 1) => h1 * (h1 + 3) / 2 + 4,
        (Family::A, 2) if n == 1 => return None,
        (Family::A, 2) if n % 2 == 0 => h + 1,
        (Family::A, 2) => 2 * (h1 + 1),
        (Family::B, 1) => (n + 1) * (n + 2) / 2,
        (Family::C, 1) if n % 2 == 0 => (h + 2) * (h + 3) / 2,
        (Family::C, 1) => (h1 + 1) * (h1 + 2) / 2,
        (Family::D, 1) if n == 4 => 10,
        (Family::D, 1) if n % 2 == 0 => h * h + 3 * h + 4,
        (Family::D, 1) => (h1 + 1) * (h1 + 1),
        (Family::D, 2) if n == 4 => 8,
        (Family::D, 2) if n % 2 == 0 => h * (h + 2),
        (Family::D, 2) => h1 * (h1 + 1),
        (Family::D, 3) if n == 4 => 3,
        (Family::E6, 1) => 9,
        (Family::E6, 2) => 6,
        (Family::E7, 1) => 10,
        (Family::E8, 1) | (Family::F4, 1) => 6,
        (Family::G2, 1) => 3,
        _ => return None,
    })
}

#[cfg(test)]
mod tests;
