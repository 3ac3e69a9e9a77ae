//! Conjugacy invariants of finite-order standard automorphisms and their realization.
//!
//! First kind (`ε = 1`, order `q`): the triple `(p, ρ, [β])` with `ρ = φ₀^{q'}σ^{p'}` and
//! `β = φ₀^{−l}σ^m` read off a constant representative `φu(t) = φ₀(u(t + 2πp/q))`, where
//! `r = gcd(p, q)`, `p = rp'`, `q = rq'` and `lp' + mq' = 1` with `0 ≤ l < q'`.
//!
//! Second kind (`ε = −1`, order 2): the pair `[φ₊, φ₋]` of involutions with
//! `φu(t) = φ₊(u(−t))` on `L(g, φ₋⁻¹φ₊)`, up to swapping and simultaneous outer action.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{StandardLoopAutomorphism, ORDER_BOUND};
use crate::aut::named::{out_class_reps, out_generators};
use crate::aut::{
    component_signature, int_class_labels, involution_int_class, named_automorphism, out_class_label, pi0_table,
    standard_involution, Automorphism, OutElement,
};
use crate::aut::classify::pi0_rows;
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{Family, SimpleAlgebra};
use crate::rat::{gcd, Rat};

/// Eigenvalue data standing in for `ρ` when its order exceeds 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoCertificate {
    pub order: u64,
    /// Pairs `(k, d)`: the eigenvalue `e^{2πik/order}` of `ρ` on `g` has multiplicity `d`.
    pub eigen_multiplicities: Vec<(u64, usize)>,
    pub rho_out: OutElement,
    pub beta_out: OutElement,
}

impl PartialEq for RhoCertificate {
    fn eq(&self, o: &RhoCertificate) -> bool {
        self.order == o.order
            && self.eigen_multiplicities == o.eigen_multiplicities
            && self.rho_out.class_rep() == o.rho_out.class_rep()
            && self.beta_out.class_rep() == o.beta_out.class_rep()
    }
}

/// The class of `ρ`: a standard-list label (or `id`) when `ρ² = id`, a certificate otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RhoClass {
    Label(String),
    Certificate(RhoCertificate),
}

impl fmt::Display for RhoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoClass::Label(l) => f.write_str(l),
            RhoClass::Certificate(c) => write!(f, "<order {} certificate>", c.order),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstKindInvariant {
    pub q: u64,
    pub p: u64,
    pub rho: RhoClass,
    /// Component representative label of `β` in the centralizer of `ρ`.
    pub beta: String,
    /// Order of the outer class of the twist.
    pub k: u32,
}

impl FirstKindInvariant {
    /// `(r, p', q', l, m)` with `p = rp'`, `q = rq'`, `lp' + mq' = 1`, `0 ≤ l < q'`.
    pub fn derived_integers(&self) -> (u64, u64, u64, u64, i64) {
        derived_integers(self.p, self.q)
    }
}

impl fmt::Display for FirstKindInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, [{}])", self.p, self.rho, self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondKindInvariant {
    /// Inner-class labels of `(φ₊, φ₋)`, lexicographically minimal in their orbit.
    pub pair: [String; 2],
    /// Order of the outer class of `φ₋⁻¹φ₊`.
    pub k: u32,
}

impl fmt::Display for SecondKindInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.pair[0], self.pair[1])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoopInvariant {
    First(FirstKindInvariant),
    Second(SecondKindInvariant),
}

impl fmt::Display for LoopInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopInvariant::First(i) => i.fmt(f),
            LoopInvariant::Second(i) => i.fmt(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct InvariantJson {
    kind: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<RhoClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pair: Option<[String; 2]>,
    k: u32,
}

impl Serialize for LoopInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self {
            LoopInvariant::First(i) => InvariantJson {
                kind: 1,
                q: Some(i.q),
                p: Some(i.p),
                rho: Some(i.rho.clone()),
                beta: Some(i.beta.clone()),
                pair: None,
                k: i.k,
            },
            LoopInvariant::Second(i) => {
                InvariantJson { kind: 2, q: None, p: None, rho: None, beta: None, pair: Some(i.pair.clone()), k: i.k }
            }
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LoopInvariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = InvariantJson::deserialize(d)?;
        let missing = |f: &str| D::Error::custom(format!("missing field {f}"));
        match j.kind {
            1 => Ok(LoopInvariant::First(FirstKindInvariant {
                q: j.q.ok_or_else(|| missing("q"))?,
                p: j.p.ok_or_else(|| missing("p"))?,
                rho: j.rho.ok_or_else(|| missing("rho"))?,
                beta: j.beta.ok_or_else(|| missing("beta"))?,
                k: j.k,
            })),
            2 => Ok(LoopInvariant::Second(SecondKindInvariant { pair: j.pair.ok_or_else(|| missing("pair"))?, k: j.k })),
            other => Err(D::Error::custom(format!("unknown kind {other}"))),
        }
    }
}

/// Outcome of comparing two automorphisms up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugacy {
    Conjugate,
    NotConjugate,
    Undecided,
}

pub(crate) fn derived_integers(p: u64, q: u64) -> (u64, u64, u64, u64, i64) {
    let r = gcd(p as i64, q as i64) as u64;
    let (pp, qq) = (p / r, q / r);
    let l = (0..qq).find(|l| (l * pp) % qq == 1 % qq).unwrap_or(0);
    let m = (1 - (l * pp) as i64) / qq as i64;
    (r, pp, qq, l, m)
}

fn finite_order(phi: &StandardLoopAutomorphism) -> Result<u64> {
    phi.order(ORDER_BOUND).map_err(|e| match e {
        Error::OrderExceedsBound(b) => Error::NotFiniteOrder(format!("order exceeds {b}")),
        other => other,
    })
}

/// Multiplicities of the eigenvalues `e^{2πik/n}` of `ρ` on `g`.
fn eigen_multiplicities(rho: &Automorphism, n: u64) -> Result<Vec<(u64, usize)>> {
    let m = rho.coordinate_matrix()?;
    let dim = m.rows();
    let mut out = Vec::new();
    for k in 0..n {
        let lam = CycloScalar::root_of_unity(n, k as i64);
        let shifted = &m - &CycloMatrix::scalar(dim, &lam);
        let d = shifted.kernel().len();
        if d > 0 {
            out.push((k, d));
        }
    }
    Ok(out)
}

/// The invariant `(p, ρ, [β])` of a first-kind automorphism of finite order.
pub fn invariant_first_kind(phi: &StandardLoopAutomorphism) -> Result<FirstKindInvariant> {
    if phi.epsilon() != 1 {
        return Err(Error::WrongKind("expected a first-kind automorphism".into()));
    }
    if !phi.scale().is_one() {
        return Err(Error::InfiniteOrderScaling);
    }
    if phi.phi0().conj_linear() {
        return Err(Error::Unsupported("invariants of conjugate-linear maps".into()));
    }
    let norm = phi.normalize_to_constant()?;
    let c = norm.constant;
    let sigma = norm.new_twist;
    let q = norm.order;
    let p = (c.t0() * &Rat::from_int(q as i64))
        .to_i64()
        .ok_or_else(|| Error::NotFiniteOrder("t0 q is not an integer".into()))? as u64;
    let (r, pp, qq, l, m) = derived_integers(p, q);
    let rho = c.phi0().pow(qq as i64)?.compose(&sigma.pow(pp as i64)?)?;
    let beta = c.phi0().pow(-(l as i64))?.compose(&sigma.pow(m)?)?;
    let k = sigma.out_class().order();
    let ord = rho.order(r).map_err(|_| Error::Unclassifiable("rho does not have order dividing r".into()))?;
    if ord <= 2 {
        let comp = component_signature(&rho, &beta)?;
        return Ok(FirstKindInvariant { q, p, rho: RhoClass::Label(comp.rho), beta: comp.rep_label, k });
    }
    let cert = RhoCertificate {
        order: ord,
        eigen_multiplicities: eigen_multiplicities(&rho, ord)?,
        rho_out: rho.out_class(),
        beta_out: beta.out_class(),
    };
    let beta_label = out_class_label(phi.algebra(), beta.out_class());
    Ok(FirstKindInvariant { q, p, rho: RhoClass::Certificate(cert), beta: beta_label, k })
}

pub(crate) fn class_label(phi: &Automorphism) -> Result<String> {
    if phi.is_identity() {
        return Ok("id".into());
    }
    Ok(involution_int_class(phi)?.label)
}

/// The invariant `[φ₊, φ₋]` of a second-kind automorphism of order 2.
pub fn invariant_second_kind(phi: &StandardLoopAutomorphism) -> Result<SecondKindInvariant> {
    if phi.epsilon() != -1 {
        return Err(Error::WrongKind("expected a second-kind automorphism".into()));
    }
    if phi.phi0().conj_linear() {
        return Err(Error::Unsupported("invariants of conjugate-linear maps".into()));
    }
    let phi = if phi.scale().is_one() { phi.clone() } else { phi.normalize_scaling()?.1 };
    let q = finite_order(&phi)?;
    if q % 2 != 0 {
        return Err(Error::NotFiniteOrder(format!("second-kind automorphism of odd order {q}")));
    }
    if q != 2 {
        return Err(Error::Unclassifiable(format!("second-kind invariants are implemented for order 2, got {q}")));
    }
    let half = phi.t0() * &Rat::new(1, 2);
    let shift = StandardLoopAutomorphism::shift(phi.source_twist(), half)?;
    let centered = phi.conjugate_by(&shift)?;
    let norm = centered.normalize_to_constant()?;
    let c = norm.constant;
    let plus = c.phi0().clone();
    let minus = plus.compose(&norm.new_twist.inverse()?)?;
    for f in [&plus, &minus] {
        if !f.compose(f)?.is_identity() {
            return Err(Error::Unclassifiable("phi_plus or phi_minus is not an involution".into()));
        }
    }
    let alg = phi.algebra();
    let pair = canonical_pair(alg, &class_label(&plus)?, &class_label(&minus)?)?;
    Ok(SecondKindInvariant { pair, k: norm.new_twist.out_class().order() })
}

/// The invariant of either kind.
pub fn invariant(phi: &StandardLoopAutomorphism) -> Result<LoopInvariant> {
    if phi.epsilon() == 1 {
        invariant_first_kind(phi).map(LoopInvariant::First)
    } else {
        invariant_second_kind(phi).map(LoopInvariant::Second)
    }
}

type LabelPerm = HashMap<String, String>;

/// All permutations of inner-class labels induced by `Aut g / Int g`.
fn out_label_group(alg: &Arc<SimpleAlgebra>) -> Result<Arc<Vec<LabelPerm>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, usize), Arc<Vec<LabelPerm>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (alg.family, alg.n);
    if let Some(g) = cache.lock().expect("cache lock").get(&key) {
        return Ok(g.clone());
    }
    let labels = int_class_labels(alg);
    let identity: LabelPerm = labels.iter().map(|l| (l.clone(), l.clone())).collect();
    let mut gens = Vec::new();
    if alg.is_classical() {
        for g in out_generators(alg)? {
            let mut perm = LabelPerm::new();
            for l in &labels {
                let img = standard_involution(alg, l)?.conjugate_by(&g)?;
                perm.insert(l.clone(), class_label(&img)?);
            }
            gens.push(perm);
        }
    }
    let key_of = |p: &LabelPerm| labels.iter().map(|l| p[l].clone()).collect::<Vec<_>>();
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::from([key_of(&identity)]);
    let mut group = vec![identity];
    let mut i = 0;
    while i < group.len() {
        for g in &gens {
            let composed: LabelPerm = labels.iter().map(|l| (l.clone(), g[&group[i][l]].clone())).collect();
            if seen.insert(key_of(&composed)) {
                group.push(composed);
            }
        }
        i += 1;
    }
    let group = Arc::new(group);
    cache.lock().expect("cache lock").insert(key, group.clone());
    Ok(group)
}

/// The lexicographically least pair in the orbit of `(a, b)` under swapping and
/// simultaneous outer action.
pub(crate) fn canonical_pair(alg: &Arc<SimpleAlgebra>, a: &str, b: &str) -> Result<[String; 2]> {
    let group = out_label_group(alg)?;
    let mut best: Option<[String; 2]> = None;
    for g in group.iter() {
        let ga = g.get(a).cloned().unwrap_or_else(|| a.to_string());
        let gb = g.get(b).cloned().unwrap_or_else(|| b.to_string());
        for cand in [[ga.clone(), gb.clone()], [gb, ga]] {
            if best.as_ref().map_or(true, |c| cand < *c) {
                best = Some(cand);
            }
        }
    }
    Ok(best.expect("group contains the identity"))
}

fn out_rep_element(alg: &SimpleAlgebra, label: &str) -> Result<OutElement> {
    out_class_reps(alg)
        .into_iter()
        .find(|(l, _)| l == label)
        .map(|(_, e)| e)
        .ok_or_else(|| Error::InvalidLabel(label.into()))
}

/// A concrete automorphism for the component label `beta` of `ρ`.
pub(crate) fn beta_automorphism(alg: &Arc<SimpleAlgebra>, rho: &str, beta: &str) -> Result<Automorphism> {
    if rho == "id" {
        return named_automorphism(alg, beta);
    }
    pi0_table(alg, rho)?
        .into_iter()
        .find(|e| e.rep_label == beta)
        .and_then(|e| e.automorphism)
        .ok_or_else(|| Error::InvalidLabel(beta.into()))
}

fn static_is_outer(alg: &SimpleAlgebra, label: &str) -> bool {
    alg.exceptional.and_then(|d| d.is_outer(label)).unwrap_or(false)
}

/// The invariant of `ψφψ⁻¹` for the reflection `ψu(t) = u(−t)`:
/// `(0, ρ, [β]) ↦ (0, ρ, [β⁻¹])` and `(p, ρ, [β]) ↦ (q − p, ρ, [β⁻¹ρ])`.
pub fn opposite(alg: &Arc<SimpleAlgebra>, inv: &FirstKindInvariant) -> Result<FirstKindInvariant> {
    let p = if inv.p == 0 { 0 } else { inv.q - inv.p };
    let beta = match &inv.rho {
        RhoClass::Certificate(c) => {
            let mut b = c.beta_out.inverse();
            if inv.p != 0 {
                b = b.mul(c.rho_out);
            }
            let mut cert = c.clone();
            cert.beta_out = b;
            return Ok(FirstKindInvariant {
                q: inv.q,
                p,
                rho: RhoClass::Certificate(cert),
                beta: out_class_label(alg, b),
                k: inv.k,
            });
        }
        RhoClass::Label(rho) if rho == "id" => {
            let b = out_rep_element(alg, &inv.beta)?.inverse();
            out_class_label(alg, b)
        }
        RhoClass::Label(rho) if !alg.is_classical() => {
            if inv.p != 0 && static_is_outer(alg, rho) {
                let rows = pi0_rows(alg, rho)?;
                let cur = rows.iter().find(|(l, _)| *l == inv.beta).ok_or_else(|| Error::InvalidLabel(inv.beta.clone()))?;
                rows.iter().find(|(_, k)| *k != cur.1).map(|(l, _)| l.clone()).unwrap_or_else(|| inv.beta.clone())
            } else {
                inv.beta.clone()
            }
        }
        RhoClass::Label(rho) => {
            let rho_aut = standard_involution(alg, rho)?;
            let mut b = beta_automorphism(alg, rho, &inv.beta)?.inverse()?;
            if inv.p != 0 {
                b = b.compose(&rho_aut)?;
            }
            component_signature(&rho_aut, &b)?.rep_label
        }
    };
    Ok(FirstKindInvariant { q: inv.q, p, rho: inv.rho.clone(), beta, k: inv.k })
}

/// `[φ₊, φ₋] ↦ (0, id, [φ₋⁻¹φ₊])`, the invariant of `φ²` on the same loop algebra.
pub fn square_map(alg: &Arc<SimpleAlgebra>, inv: &SecondKindInvariant) -> Result<FirstKindInvariant> {
    let beta = if alg.is_classical() {
        let plus = standard_involution(alg, &inv.pair[0])?;
        let minus = standard_involution(alg, &inv.pair[1])?;
        out_class_label(alg, minus.inverse()?.compose(&plus)?.out_class())
    } else if static_is_outer(alg, &inv.pair[0]) != static_is_outer(alg, &inv.pair[1]) {
        out_class_label(alg, OutElement::new(1, 0))
    } else {
        "id".to_string()
    };
    Ok(FirstKindInvariant { q: 1, p: 0, rho: RhoClass::Label("id".into()), beta, k: inv.k })
}

/// Decides conjugacy by comparing kinds, orders and invariants.
pub fn conjugacy_test(a: &StandardLoopAutomorphism, b: &StandardLoopAutomorphism) -> Result<Conjugacy> {
    if *a.algebra() != *b.algebra() || a.epsilon() != b.epsilon() {
        return Ok(Conjugacy::NotConjugate);
    }
    if finite_order(a)? != finite_order(b)? {
        return Ok(Conjugacy::NotConjugate);
    }
    let (ia, ib) = (invariant(a)?, invariant(b)?);
    if ia != ib {
        return Ok(Conjugacy::NotConjugate);
    }
    if let LoopInvariant::First(FirstKindInvariant { rho: RhoClass::Certificate(_), .. }) = ia {
        return Ok(Conjugacy::Undecided);
    }
    Ok(Conjugacy::Conjugate)
}

/// A constant automorphism with the given invariant.
pub fn realize(alg: &Arc<SimpleAlgebra>, inv: &LoopInvariant) -> Result<StandardLoopAutomorphism> {
    if !alg.is_classical() {
        return Err(Error::StaticOnlyAlgebra);
    }
    match inv {
        LoopInvariant::First(i) => {
            let rho = match &i.rho {
                RhoClass::Label(l) => l.clone(),
                RhoClass::Certificate(_) => {
                    return Err(Error::Unsupported("realizing a certificate invariant".into()));
                }
            };
            if i.q == 0 || i.p >= i.q {
                return Err(Error::UnsupportedParam(format!("need 0 <= p < q, got p = {}, q = {}", i.p, i.q)));
            }
            let rho_aut = if rho == "id" { Automorphism::identity(alg) } else { standard_involution(alg, &rho)? };
            let beta = beta_automorphism(alg, &rho, &i.beta)?;
            let (_, pp, qq, l, m) = derived_integers(i.p, i.q);
            let phi0 = rho_aut.pow(m)?.compose(&beta.pow(-(pp as i64))?)?;
            let sigma = rho_aut.pow(l as i64)?.compose(&beta.pow(qq as i64)?)?;
            StandardLoopAutomorphism::constant(&sigma, 1, Rat::new(i.p as i64, i.q as i64), phi0)
        }
        LoopInvariant::Second(i) => {
            let plus = standard_involution(alg, &i.pair[0])?;
            let minus = standard_involution(alg, &i.pair[1])?;
            let sigma = minus.inverse()?.compose(&plus)?;
            StandardLoopAutomorphism::constant(&sigma, -1, Rat::zero(), plus)
        }
    }
}
