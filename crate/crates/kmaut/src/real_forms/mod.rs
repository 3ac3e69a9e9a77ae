//! Real forms of loop and affine algebras.
//!
//! A real form of `L(g, σ)` is the fixed-point set of a conjugate-linear involution. Starting
//! from a compact-mode automorphism `φ` of `L(u, σ)` one gets `φ_C ∘ ω̂`, where `ω̂` applies the
//! compact conjugation pointwise. Conjugate-linear labels carry a `*omega` suffix, for example
//! `rho1*omega`, and `omega` alone stands for `ω`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::aut::named::out_class_reps;
use crate::aut::classify::pi0_rows;
use crate::aut::{
    component_signature, int_class_labels, named_automorphism, out_class_label, standard_involution, standard_labels,
    Automorphism,
};
use crate::cyclo::{CycloScalar, SpanBuilder};
use crate::error::{Error, Result};
use crate::lie::{make_algebra, Family, FieldMode, SimpleAlgebra};
use crate::loop_aut::{
    beta_automorphism, canonical_pair, class_label, derived_integers, invariant, realize, FirstKindInvariant,
    LoopInvariant, RhoClass, SecondKindInvariant, StandardLoopAutomorphism, ORDER_BOUND,
};
use crate::loops::{AffineElement, LoopElement, LoopSpace, MAX_CONDUCTOR};
use crate::rat::Rat;


const OMEGA: &str = "omega";

/// `label*omega`, or `omega` when `label` is the identity.
pub fn with_omega(label: &str) -> String {
    if label == "id" {
        OMEGA.to_string()
    } else {
        format!("{label}*{OMEGA}")
    }
}

/// The complex-linear part of a conjugate-linear label, or `None` for a linear label.
pub fn strip_omega(label: &str) -> Option<&str> {
    if label == OMEGA {
        return Some("id");
    }
    label.strip_suffix("*omega")
}

/// The invariant of a conjugate-linear automorphism of finite order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConjLinearInvariant(pub LoopInvariant);

impl fmt::Display for ConjLinearInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which family of automorphisms a compact-side invariant is carried to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Complex-linear automorphisms `φ ↦ φ_C`.
    #[serde(rename = "i")]
    Linear,
    /// Conjugate-linear automorphisms of the first kind, `φ ↦ φ_C ∘ ω̂`.
    #[serde(rename = "ii")]
    ConjFirst,
    /// Conjugate-linear automorphisms of the second kind, `φ ↦ φ_C ∘ ω̂`.
    #[serde(rename = "iii")]
    ConjSecond,
}

fn complex_algebra(alg: &SimpleAlgebra) -> Result<Arc<SimpleAlgebra>> {
    make_algebra(alg.family, alg.n, FieldMode::Complex)
}

fn rebuild(alg: &Arc<SimpleAlgebra>, a: &Automorphism) -> Result<Automorphism> {
    let b = Automorphism::new(alg.clone(), a.outer_power(), a.matrix().clone(), a.conj_linear())?;
    Ok(match a.label() {
        Some(l) => b.with_label(l),
        None => b,
    })
}

fn rebuild_loop_map(alg: &Arc<SimpleAlgebra>, phi: &StandardLoopAutomorphism) -> Result<StandardLoopAutomorphism> {
    StandardLoopAutomorphism::new(
        rebuild(alg, phi.source_twist())?,
        phi.epsilon(),
        phi.t0().clone(),
        phi.x().clone(),
        rebuild(alg, phi.phi0())?,
        phi.scale().clone(),
    )
}

/// The same automorphism over the complexification.
pub fn complexify(phi: &StandardLoopAutomorphism) -> Result<StandardLoopAutomorphism> {
    rebuild_loop_map(&complex_algebra(phi.algebra())?, phi)
}

/// `φ_C ∘ ω̂` for a complex-linear `φ` of the compact loop algebra `L(u, σ)`.
pub fn conj_linear_extend(phi: &StandardLoopAutomorphism) -> Result<StandardLoopAutomorphism> {
    let alg = phi.algebra();
    if alg.mode != FieldMode::Compact {
        return Err(Error::NotCompactMode);
    }
    if phi.phi0().conj_linear() {
        return Err(Error::Unsupported("the compact-side map must be complex linear".into()));
    }
    let omega = Automorphism::omega(alg)?;
    if !phi.source_twist().commutes_with(&omega)? || !phi.phi0().commutes_with(&omega)? {
        return Err(Error::NotCompactMode);
    }
    let complex = complex_algebra(alg)?;
    let phi_c = rebuild_loop_map(&complex, phi)?;
    let omega_hat = StandardLoopAutomorphism::constant(phi_c.source_twist(), 1, Rat::zero(), Automorphism::omega(&complex)?)?;
    phi_c.compose(&omega_hat)
}

/// Carries a compact-side invariant to the invariant of its image in the given branch.
///
/// Only orders `q ≤ 2` are handled.
pub fn invariant_maps_75(inv: &LoopInvariant, branch: Branch) -> Result<LoopInvariant> {
    if let LoopInvariant::First(i) = inv {
        if i.q > 2 {
            return Err(Error::UnsupportedOrder(i.q));
        }
    }
    match (branch, inv) {
        (Branch::Linear, _) => Ok(inv.clone()),
        (Branch::ConjFirst, LoopInvariant::First(i)) => {
            let RhoClass::Label(rho) = &i.rho else {
                return Err(Error::Unsupported("certificate invariants".into()));
            };
            let out = if i.q == 1 || i.p == 0 {
                FirstKindInvariant { q: 2, p: 0, rho: RhoClass::Label(with_omega(rho)), beta: i.beta.clone(), k: i.k }
            } else {
                FirstKindInvariant { q: 2, p: 1, rho: RhoClass::Label("id".into()), beta: with_omega(&i.beta), k: i.k }
            };
            Ok(LoopInvariant::First(out))
        }
        (Branch::ConjSecond, LoopInvariant::Second(s)) => Ok(LoopInvariant::Second(SecondKindInvariant {
            pair: [with_omega(&s.pair[0]), with_omega(&s.pair[1])],
            k: s.k,
        })),
        (Branch::ConjFirst, _) => Err(Error::WrongKind("branch ii takes a first-kind invariant".into())),
        (Branch::ConjSecond, _) => Err(Error::WrongKind("branch iii takes a second-kind invariant".into())),
    }
}

fn finite_order(phi: &StandardLoopAutomorphism) -> Result<u64> {
    phi.order(ORDER_BOUND).map_err(|e| match e {
        Error::OrderExceedsBound(b) => Error::NotFiniteOrder(format!("order exceeds {b}")),
        other => other,
    })
}

fn linear_part(a: &Automorphism) -> Result<Automorphism> {
    a.compose(&Automorphism::omega(a.algebra())?)
}

/// The invariant of a conjugate-linear automorphism of order 2, computed from its matrices.
pub fn conj_linear_invariant(phi: &StandardLoopAutomorphism) -> Result<ConjLinearInvariant> {
    if !phi.phi0().conj_linear() {
        return Err(Error::Unsupported("expected a conjugate-linear map".into()));
    }
    let alg = phi.algebra().clone();
    if phi.epsilon() == 1 {
        let norm = phi.normalize_to_constant()?;
        let q = norm.order;
        if q > 2 {
            return Err(Error::UnsupportedOrder(q));
        }
        let c = norm.constant;
        let sigma = norm.new_twist;
        let p = (c.t0() * &Rat::from_int(q as i64))
            .to_i64()
            .ok_or_else(|| Error::NotFiniteOrder("t0 q is not an integer".into()))? as u64;
        let (_, pp, qq, l, m) = derived_integers(p, q);
        let rho = c.phi0().pow(qq as i64)?.compose(&sigma.pow(pp as i64)?)?;
        let beta = c.phi0().pow(-(l as i64))?.compose(&sigma.pow(m)?)?;
        let k = sigma.out_class().order();
        let inv = if rho.conj_linear() {
            let lin = linear_part(&rho)?;
            if lin.is_identity() {
                FirstKindInvariant {
                    q,
                    p,
                    rho: RhoClass::Label(OMEGA.into()),
                    beta: out_class_label(&alg, beta.out_class()),
                    k,
                }
            } else {
                let comp = component_signature(&lin, &beta)?;
                FirstKindInvariant { q, p, rho: RhoClass::Label(with_omega(&comp.rho)), beta: comp.rep_label, k }
            }
        } else {
            if !rho.is_identity() {
                return Err(Error::Unclassifiable("the square of the conjugate-linear part is not the identity".into()));
            }
            let lin = linear_part(&beta)?;
            FirstKindInvariant {
                q,
                p,
                rho: RhoClass::Label("id".into()),
                beta: with_omega(&out_class_label(&alg, lin.out_class())),
                k,
            }
        };
        return Ok(ConjLinearInvariant(LoopInvariant::First(inv)));
    }
    let q = finite_order(phi)?;
    if q != 2 {
        return Err(Error::UnsupportedOrder(q));
    }
    let half = phi.t0() * &Rat::new(1, 2);
    let shift = StandardLoopAutomorphism::shift(phi.source_twist(), half)?;
    let norm = phi.conjugate_by(&shift)?.normalize_to_constant()?;
    let plus = norm.constant.phi0().clone();
    let minus = plus.compose(&norm.new_twist.inverse()?)?;
    for f in [&plus, &minus] {
        if !f.compose(f)?.is_identity() {
            return Err(Error::Unclassifiable("phi_plus or phi_minus is not an involution".into()));
        }
    }
    let a = class_label(&linear_part(&plus)?)?;
    let b = class_label(&linear_part(&minus)?)?;
    let [a, b] = canonical_pair(&alg, &a, &b)?;
    Ok(ConjLinearInvariant(LoopInvariant::Second(SecondKindInvariant {
        pair: [with_omega(&a), with_omega(&b)],
        k: norm.new_twist.out_class().order(),
    })))
}

fn conj_label_aut(alg: &Arc<SimpleAlgebra>, label: &str) -> Result<Automorphism> {
    match strip_omega(label) {
        Some(lin) => named_automorphism(alg, lin)?.compose(&Automorphism::omega(alg)?),
        None => named_automorphism(alg, label),
    }
}

/// A constant conjugate-linear automorphism with the given invariant.
pub fn realize_conj_linear(alg: &Arc<SimpleAlgebra>, inv: &ConjLinearInvariant) -> Result<StandardLoopAutomorphism> {
    let alg = complex_algebra(alg)?;
    match &inv.0 {
        LoopInvariant::First(i) => {
            if i.q != 2 {
                return Err(Error::UnsupportedOrder(i.q));
            }
            let RhoClass::Label(rho) = &i.rho else {
                return Err(Error::Unsupported("realizing a certificate invariant".into()));
            };
            let (rho_aut, beta) = match strip_omega(rho) {
                Some(lin) => (conj_label_aut(&alg, rho)?, beta_automorphism(&alg, lin, &i.beta)?),
                None => {
                    let lin = strip_omega(&i.beta)
                        .ok_or_else(|| Error::InvalidLabel(format!("{} needs a conjugate-linear beta", i.beta)))?;
                    let b = beta_automorphism(&alg, "id", lin)?.compose(&Automorphism::omega(&alg)?)?;
                    (Automorphism::identity(&alg), b)
                }
            };
            let (_, pp, qq, l, m) = derived_integers(i.p, i.q);
            let phi0 = rho_aut.pow(m)?.compose(&beta.pow(-(pp as i64))?)?;
            let sigma = rho_aut.pow(l as i64)?.compose(&beta.pow(qq as i64)?)?;
            StandardLoopAutomorphism::constant(&sigma, 1, Rat::new(i.p as i64, i.q as i64), phi0)
        }
        LoopInvariant::Second(s) => {
            let plus = conj_label_aut(&alg, &s.pair[0])?;
            let minus = conj_label_aut(&alg, &s.pair[1])?;
            let sigma = minus.inverse()?.compose(&plus)?;
            StandardLoopAutomorphism::constant(&sigma, -1, Rat::zero(), plus)
        }
    }
}

/// Compact-side invariants, their images, and the invariants found by enumerating
/// conjugate-linear involutions directly.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub algebra: String,
    pub compact: Vec<LoopInvariant>,
    pub image: Vec<LoopInvariant>,
    pub enumerated: Vec<LoopInvariant>,
    pub injective: bool,
    pub matches: bool,
}

fn key(inv: &LoopInvariant) -> String {
    serde_json::to_string(inv).unwrap_or_default()
}

fn candidate_betas(alg: &Arc<SimpleAlgebra>) -> Result<Vec<Automorphism>> {
    let mut labels: Vec<String> = int_class_labels(alg);
    labels.extend(out_class_reps(alg).into_iter().map(|(l, _)| l));
    for rho in standard_labels(alg) {
        labels.extend(pi0_rows(alg, &rho)?.into_iter().map(|(l, _)| l));
    }
    labels.sort();
    labels.dedup();
    let singles: Vec<Automorphism> = labels.iter().map(|l| named_automorphism(alg, l)).collect::<Result<_>>()?;
    let omega = Automorphism::omega(alg)?;
    let mut out: Vec<Automorphism> = Vec::new();
    for a in &singles {
        for b in std::iter::once(None).chain(singles.iter().map(Some)) {
            let c = match b {
                Some(b) => a.compose(b)?,
                None => a.clone(),
            };
            if c.commutes_with(&omega)? && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn insert_unique(list: &mut Vec<LoopInvariant>, seen: &mut BTreeMap<String, ()>, inv: LoopInvariant) {
    if seen.insert(key(&inv), ()).is_none() {
        list.push(inv);
    }
}

/// Conjugate-linear involutions of `L(g, σ)` found from products of named automorphisms.
pub fn enumerate_conj_linear(alg: &Arc<SimpleAlgebra>) -> Result<Vec<LoopInvariant>> {
    let alg = complex_algebra(alg)?;
    let omega = Automorphism::omega(&alg)?;
    let betas = candidate_betas(&alg)?;
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    let mut record = |phi: Result<StandardLoopAutomorphism>, out: &mut Vec<LoopInvariant>| -> Result<()> {
        let Ok(phi) = phi else { return Ok(()) };
        if !phi.is_endomorphism() || finite_order(&phi)? != 2 {
            return Ok(());
        }
        insert_unique(out, &mut seen, conj_linear_invariant(&phi)?.0);
        Ok(())
    };
    for rho in standard_labels(&alg) {
        let theta = standard_involution(&alg, &rho)?.compose(&omega)?;
        for b in &betas {
            if theta.commutes_with(b)? {
                record(StandardLoopAutomorphism::constant(b, 1, Rat::zero(), theta.clone()), &mut out)?;
            }
        }
    }
    for b in &betas {
        let bw = b.compose(&omega)?;
        record(StandardLoopAutomorphism::constant(&bw.pow(2)?, 1, Rat::new(1, 2), bw.inverse()?), &mut out)?;
    }
    let labels = int_class_labels(&alg);
    let thetas: Vec<Automorphism> =
        labels.iter().map(|l| Ok(standard_involution(&alg, l)?.compose(&omega)?)).collect::<Result<_>>()?;
    for plus in &thetas {
        for minus in &thetas {
            let sigma = minus.inverse()?.compose(plus)?;
            record(StandardLoopAutomorphism::constant(&sigma, -1, Rat::zero(), plus.clone()), &mut out)?;
        }
    }
    Ok(out)
}

/// Compares the image of the order-2 compact-side invariants with a direct enumeration.
pub fn conj_linear_bijection(alg: &Arc<SimpleAlgebra>) -> Result<BijectionReport> {
    if !alg.is_classical() {
        return Err(Error::StaticOnlyAlgebra);
    }
    let mut compact = Vec::new();
    for row in crate::tables::all_rows(alg)? {
        for e in row.entries {
            compact.push(e.invariant);
        }
    }
    let image: Vec<LoopInvariant> = compact
        .iter()
        .map(|i| match i {
            LoopInvariant::First(_) => invariant_maps_75(i, Branch::ConjFirst),
            LoopInvariant::Second(_) => invariant_maps_75(i, Branch::ConjSecond),
        })
        .collect::<Result<_>>()?;
    let mut image_keys: Vec<String> = image.iter().map(key).collect();
    image_keys.sort();
    let before = image_keys.len();
    image_keys.dedup();
    let injective = before == image_keys.len();
    let enumerated = enumerate_conj_linear(alg)?;
    let mut enum_keys: Vec<String> = enumerated.iter().map(key).collect();
    enum_keys.sort();
    let matches = enum_keys == image_keys;
    Ok(BijectionReport { algebra: alg.label(), compact, image, enumerated, injective, matches })
}

/// Real dimension of one graded piece of a real form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub n: i64,
    pub real_dim: usize,
    pub complex_dim: usize,
}

/// A window of a real form of `L(g, σ) + Cc + Cd` cut out by a conjugate-linear involution
/// of the second kind.
#[derive(Clone, Debug, Serialize)]
pub struct RealFormBasis {
    pub algebra: String,
    pub pair: [String; 2],
    pub conductor: u64,
    pub window: i64,
    pub degrees: Vec<DegreeDim>,
    pub elements: Vec<AffineElement>,
    /// Every window basis element is fixed by the involution.
    pub fixed: bool,
    /// Brackets landing inside the window stay in the real form.
    pub closed: bool,
}

fn is_imaginary(s: &CycloScalar) -> bool {
    s.conj() == -s
}

fn in_second_kind_form(theta: &Automorphism, e: &AffineElement) -> Result<bool> {
    for x in e.loop_part.coeffs().values() {
        if theta.apply(x)? != *x {
            return Ok(false);
        }
    }
    Ok(is_imaginary(&e.c) && is_imaginary(&e.d))
}

fn degree(e: &AffineElement) -> i64 {
    e.loop_part.support().first().copied().unwrap_or(0)
}

/// Basis of the real form fixed by `u(t) ↦ θ₊(u(−t))` with `θ± = ρ±ω`, on degrees `|n| ≤ window`.
///
/// The pair may hold any involution labels, such as `mu`.
///
/// The window defaults to `2l + 4` where `l` is the order of `σ = θ₋⁻¹θ₊`.
pub fn real_form_basis(alg: &Arc<SimpleAlgebra>, inv: &SecondKindInvariant, window: Option<i64>) -> Result<RealFormBasis> {
    if !alg.is_classical() {
        return Err(Error::StaticOnlyAlgebra);
    }
    let alg = complex_algebra(alg)?;
    let omega = Automorphism::omega(&alg)?;
    let theta = |label: &str| -> Result<Automorphism> {
        let r = named_automorphism(&alg, label)?;
        if !r.compose(&r)?.is_identity() {
            return Err(Error::NotInvolution);
        }
        r.compose(&omega)
    };
    let (plus, minus) = (theta(&inv.pair[0])?, theta(&inv.pair[1])?);
    let sigma = minus.inverse()?.compose(&plus)?;
    let l = sigma.order(MAX_CONDUCTOR)?;
    let n_max = window.unwrap_or(2 * l as i64 + 4);
    if n_max < 1 {
        return Err(Error::WindowTooSmall(format!("window {n_max} must be at least 1")));
    }
    let space = LoopSpace::new(sigma.clone(), l)?;
    let i = CycloScalar::i();
    let mut elements = Vec::new();
    let mut degrees = Vec::new();
    let mut fixed = true;
    for n in -n_max..=n_max {
        let mut span = SpanBuilder::new(alg.dim());
        let mut found = 0;
        let zeta = CycloScalar::root_of_unity(2 * l, n);
        for x in space.eigenbasis(n) {
            let tx = plus.apply(x)?;
            for cand in [x + &tx, (x - &tx).scale(&i)] {
                if cand.is_zero() || !span.insert(&alg.coords_unchecked(&cand)) {
                    continue;
                }
                if !space.in_eigenspace(&cand, n)? {
                    return Err(Error::TwistMismatch(format!("theta_plus does not preserve g_{n}")));
                }
                let shifted = cand.scale(&zeta);
                fixed &= plus.apply(&cand)? == cand && minus.apply(&shifted)? == shifted;
                elements.push(AffineElement::from_loop(LoopElement::monomial(&space, cand, n)?));
                found += 1;
            }
        }
        degrees.push(DegreeDim { n, real_dim: found, complex_dim: space.eigen_dim(n) });
    }
    elements.push(AffineElement::central(&space).scale(&i));
    elements.push(AffineElement::derivation(&space).scale(&i));
    let phi = StandardLoopAutomorphism::constant(&sigma, -1, Rat::zero(), plus.clone())?;
    for e in &elements {
        fixed &= phi.affine_apply(e)? == *e;
    }
    fixed &= degrees.iter().all(|d| d.real_dim == d.complex_dim);
    let mut closed = true;
    for (a_idx, a) in elements.iter().enumerate() {
        for b in &elements[a_idx..] {
            if (degree(a) + degree(b)).abs() > n_max {
                continue;
            }
            if !in_second_kind_form(&plus, &a.bracket(b)?)? {
                closed = false;
            }
        }
    }
    Ok(RealFormBasis {
        algebra: alg.label(),
        pair: inv.pair.clone(),
        conductor: l,
        window: n_max,
        degrees,
        elements,
        fixed,
        closed,
    })
}

/// Results of the structural checks on a Cartan decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanChecks {
    pub orthogonal: bool,
    pub k_k_in_k: bool,
    pub k_p_in_p: bool,
    pub p_p_in_k: bool,
    /// `K + iP` is fixed by `φ_C ∘ ω̂`.
    pub noncompact_fixed: bool,
}

impl CartanChecks {
    pub fn all(&self) -> bool {
        self.orthogonal && self.k_k_in_k && self.k_p_in_p && self.p_p_in_k && self.noncompact_fixed
    }
}

/// The decomposition `K ⊕ P` of a window of the compact affine algebra under an involution,
/// with the dual noncompact real form `K ⊕ iP`.
#[derive(Clone, Debug, Serialize)]
pub struct CartanDecomposition {
    pub window: i64,
    pub window_dim: usize,
    pub k: Vec<AffineElement>,
    pub p: Vec<AffineElement>,
    pub noncompact: Vec<AffineElement>,
    pub checks: CartanChecks,
}

fn real_window_basis(space: &Arc<LoopSpace>, n_max: i64) -> Result<Vec<AffineElement>> {
    let alg = space.algebra();
    let i = CycloScalar::i();
    let mut out = Vec::new();
    let mut span = SpanBuilder::new(alg.dim());
    for x in space.eigenbasis(0) {
        let ix = x.scale(&i);
        for cand in [x + &alg.omega(x), &ix + &alg.omega(&ix)] {
            if !cand.is_zero() && span.insert(&alg.coords_unchecked(&cand)) {
                out.push(AffineElement::from_loop(LoopElement::constant(space, cand)?));
            }
        }
    }
    for n in 1..=n_max {
        for x in space.eigenbasis(n) {
            for y in [x.clone(), x.scale(&i)] {
                let coeffs = BTreeMap::from([(n, y.clone()), (-n, alg.omega(&y))]);
                out.push(AffineElement::from_loop(LoopElement::new(space, coeffs)?));
            }
        }
    }
    out.push(AffineElement::central(space));
    out.push(AffineElement::derivation(space));
    Ok(out)
}

fn affine_coords(e: &AffineElement, n_max: i64) -> Vec<CycloScalar> {
    let alg = e.space().algebra();
    let mut v = Vec::with_capacity((2 * n_max as usize + 1) * alg.dim() + 2);
    for n in -n_max..=n_max {
        v.extend(alg.coords_unchecked(&e.loop_part.coeff(n)));
    }
    v.push(e.c.clone());
    v.push(e.d.clone());
    v
}

fn complexify_element(space: &Arc<LoopSpace>, e: &AffineElement) -> Result<AffineElement> {
    let u = LoopElement::new(space, e.loop_part.coeffs().clone())?;
    Ok(AffineElement::new(u, e.c.clone(), e.d.clone()))
}

/// Splits the compact window `|n| ≤ window` into the `±1` eigenspaces of `φ̂`.
pub fn cartan_decomposition(phi: &StandardLoopAutomorphism, window: i64) -> Result<CartanDecomposition> {
    let alg = phi.algebra();
    if alg.mode != FieldMode::Compact {
        return Err(Error::NotCompactMode);
    }
    if phi.phi0().conj_linear() {
        return Err(Error::Unsupported("the compact-side map must be complex linear".into()));
    }
    if !phi.is_endomorphism() || !phi.compose(phi)?.is_identity() {
        return Err(Error::NotInvolution);
    }
    if window < 0 {
        return Err(Error::WindowTooSmall(format!("window {window} is negative")));
    }
    let sigma = phi.source_twist();
    let space = LoopSpace::with_minimal_conductor(sigma.clone())?;
    let basis = real_window_basis(&space, window)?;
    let mut images = Vec::with_capacity(basis.len());
    let mut reach = window;
    for v in &basis {
        let w = phi.affine_apply(v)?;
        reach = reach.max(w.loop_part.degree_bound());
        images.push(w);
    }
    let width = (2 * reach as usize + 1) * alg.dim() + 2;
    let (mut kspan, mut pspan) = (SpanBuilder::new(width), SpanBuilder::new(width));
    let (mut k, mut p) = (Vec::new(), Vec::new());
    for (v, w) in basis.iter().zip(&images) {
        let plus = v.add(w)?;
        if !plus.is_zero() && kspan.insert(&affine_coords(&plus, reach)) {
            k.push(plus);
        }
        let minus = v.sub(w)?;
        if !minus.is_zero() && pspan.insert(&affine_coords(&minus, reach)) {
            p.push(minus);
        }
    }
    let fixed_with_sign = |e: &AffineElement, sign: i64| -> Result<bool> {
        let img = phi.affine_apply(e)?;
        Ok(img == e.scale(&CycloScalar::from_int(sign)))
    };
    let mut checks = CartanChecks {
        orthogonal: true,
        k_k_in_k: true,
        k_p_in_p: true,
        p_p_in_k: true,
        noncompact_fixed: true,
    };
    for (idx, a) in k.iter().enumerate() {
        for b in &k[idx..] {
            checks.k_k_in_k &= fixed_with_sign(&a.bracket(b)?, 1)?;
        }
        for b in &p {
            checks.orthogonal &= a.form(b)?.is_zero();
            checks.k_p_in_p &= fixed_with_sign(&a.bracket(b)?, -1)?;
        }
    }
    for (idx, a) in p.iter().enumerate() {
        for b in &p[idx..] {
            checks.p_p_in_k &= fixed_with_sign(&a.bracket(b)?, 1)?;
        }
    }
    let complex = complex_algebra(alg)?;
    let cspace = LoopSpace::new(rebuild(&complex, space.twist())?, space.conductor())?;
    let conj = conj_linear_extend(phi)?;
    let i = CycloScalar::i();
    let mut noncompact = Vec::with_capacity(k.len() + p.len());
    for e in &k {
        noncompact.push(complexify_element(&cspace, e)?);
    }
    for e in &p {
        noncompact.push(complexify_element(&cspace, e)?.scale(&i));
    }
    for e in &noncompact {
        checks.noncompact_fixed &= conj.affine_apply(e)? == *e;
    }
    Ok(CartanDecomposition { window, window_dim: basis.len(), k, p, noncompact, checks })
}

/// One real form of the affine algebra of `sl(2)`.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogueEntry {
    pub name: String,
    /// The invariant in the customary notation, with `mu` for `X ↦ X̄`.
    pub notation: String,
    /// Invariant of the compact-side automorphism, or the linear parts of the pair.
    pub invariant: LoopInvariant,
    pub conj_invariant: LoopInvariant,
    pub compact: bool,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Catalogue {
    pub almost_compact: Vec<CatalogueEntry>,
    pub almost_split: Vec<CatalogueEntry>,
}

fn first(q: u64, p: u64, rho: &str, beta: &str) -> LoopInvariant {
    LoopInvariant::First(FirstKindInvariant { q, p, rho: RhoClass::Label(rho.into()), beta: beta.into(), k: 1 })
}

fn almost_compact_entry(name: &str, notation: &str, inv: LoopInvariant) -> Result<CatalogueEntry> {
    let u = make_algebra(Family::A, 1, FieldMode::Compact)?;
    let phi = realize(&u, &inv)?;
    let computed = invariant(&complexify(&phi)?)?;
    let expected = invariant_maps_75(&inv, Branch::ConjFirst)?;
    let conj = conj_linear_extend(&phi)?;
    let conj_inv = conj_linear_invariant(&conj)?.0;
    let verified = computed == inv && conj_inv == expected && finite_order(&conj)? == 2;
    Ok(CatalogueEntry {
        name: name.into(),
        notation: notation.into(),
        invariant: inv,
        conj_invariant: conj_inv,
        compact: phi.is_identity(),
        verified,
    })
}

fn almost_split_entry(name: &str, notation: &str, plus: &str, minus: &str) -> Result<CatalogueEntry> {
    let g = make_algebra(Family::A, 1, FieldMode::Complex)?;
    let omega = Automorphism::omega(&g)?;
    let theta = |l: &str| -> Result<Automorphism> { named_automorphism(&g, l)?.compose(&omega) };
    let (tp, tm) = (theta(plus)?, theta(minus)?);
    let sigma = tm.inverse()?.compose(&tp)?;
    let phi = StandardLoopAutomorphism::constant(&sigma, -1, Rat::zero(), tp)?;
    let conj_inv = conj_linear_invariant(&phi)?.0;
    let LoopInvariant::Second(s) = &conj_inv else { unreachable!("second-kind map") };
    let linear = SecondKindInvariant {
        pair: [
            strip_omega(&s.pair[0]).unwrap_or(&s.pair[0]).to_string(),
            strip_omega(&s.pair[1]).unwrap_or(&s.pair[1]).to_string(),
        ],
        k: s.k,
    };
    let inv = LoopInvariant::Second(linear.clone());
    let basis = real_form_basis(&g, &linear, Some(4))?;
    let verified = invariant_maps_75(&inv, Branch::ConjSecond)? == conj_inv && basis.fixed && basis.closed;
    Ok(CatalogueEntry {
        name: name.into(),
        notation: notation.into(),
        invariant: inv,
        conj_invariant: conj_inv,
        compact: false,
        verified,
    })
}

/// The real forms of the affine algebra of `sl(2)`: four almost compact and three almost split.
pub fn sl2_catalogue() -> Result<Sl2Catalogue> {
    let almost_compact = vec![
        almost_compact_entry("compact", "(0, id, [id])", first(1, 0, "id", "id"))?,
        almost_compact_entry("almost compact, rho1", "(0, rho1, [id])", first(2, 0, "rho1", "id"))?,
        almost_compact_entry("almost compact, rho1 twisted", "(0, rho1, [mu])", first(2, 0, "rho1", "mu"))?,
        almost_compact_entry("almost compact, half shift", "(1, id, [id])", first(2, 1, "id", "id"))?,
    ];
    let almost_split = vec![
        almost_split_entry("almost split, [id, id]", "[id, id]", "id", "id")?,
        almost_split_entry("almost split, [mu, mu]", "[mu, mu]", "mu", "mu")?,
        almost_split_entry("almost split, [mu, id]", "[mu, id]", "mu", "id")?,
    ];
    Ok(Sl2Catalogue { almost_compact, almost_split })
}
