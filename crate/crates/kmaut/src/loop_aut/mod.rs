//! Standard automorphisms `φu(t) = e^{t ad X} φ₀(u(εt + t₀))` of twisted loop algebras,
//! optionally preceded by a scaling `τ_r`, which multiplies `u_n` by `r^{n/l}`.
//!
//! Times are stored in units of `2π`: `t0 = a/b` means `t₀ = 2π a/b`.

mod invariant;
mod spectrum;

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::aut::Automorphism;
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{FieldMode, SimpleAlgebra};
use crate::loops::{AffineElement, LoopElement, LoopSpace};
use crate::rat::{lcm, Rat};

pub use invariant::{
    conjugacy_test, invariant, invariant_first_kind, invariant_second_kind, opposite, realize, square_map,
    Conjugacy, FirstKindInvariant, LoopInvariant, RhoCertificate, RhoClass, SecondKindInvariant,
};
pub(crate) use invariant::{beta_automorphism, canonical_pair, class_label, derived_integers};
use spectrum::Spectrum;

/// Default bound for order computations.
pub const ORDER_BOUND: u64 = 1024;

/// `e^{2πi q}` for rational `q`.
pub(crate) fn turn(q: &Rat) -> Result<CycloScalar> {
    let (a, b) = small_parts(q)?;
    Ok(CycloScalar::root_of_unity(b, a))
}

/// Numerator and denominator as machine integers, bounded by the conductor limit.
pub(crate) fn small_parts(q: &Rat) -> Result<(i64, u64)> {
    let a = q.numer().to_i64();
    let b = q.denom().to_u64();
    match (a, b) {
        (Some(a), Some(b)) if b <= crate::loops::MAX_CONDUCTOR => Ok((a, b)),
        _ => Err(Error::ConductorOverflow(b.unwrap_or(u64::MAX))),
    }
}

/// `r^{n/l}` when it is rational.
fn rational_power(r: &Rat, n: i64, l: u64) -> Result<Rat> {
    let e = i32::try_from(n).map_err(|_| Error::UnsupportedParam("exponent too large".into()))?;
    r.pow(e)
        .nth_root_exact(l as u32)
        .ok_or_else(|| Error::UnsupportedParam(format!("({r})^({n}/{l}) is not rational")))
}

/// A standard automorphism `L(g, σ) → L(g, σ̃)` composed with an optional scaling.
#[derive(Clone, Debug)]
pub struct StandardLoopAutomorphism {
    source: Automorphism,
    epsilon: i8,
    t0: Rat,
    x: CycloMatrix,
    phi0: Automorphism,
    scale: Rat,
    spectrum: Option<Arc<Spectrum>>,
    target: Automorphism,
    target_order: u64,
}

impl PartialEq for StandardLoopAutomorphism {
    fn eq(&self, o: &StandardLoopAutomorphism) -> bool {
        self.source == o.source
            && self.epsilon == o.epsilon
            && self.t0 == o.t0
            && self.x == o.x
            && self.phi0 == o.phi0
            && self.scale == o.scale
    }
}

impl StandardLoopAutomorphism {
    /// Builds `(φ∘τ_r)` from its data, bringing `t0` into `[0, 1)` by absorbing whole
    /// periods into `φ₀` (`u(s + 2π) = σ u(s)`).
    pub fn new(
        source_twist: Automorphism,
        epsilon: i8,
        t0: Rat,
        x: CycloMatrix,
        phi0: Automorphism,
        scale: Rat,
    ) -> Result<StandardLoopAutomorphism> {
        let alg = source_twist.algebra().clone();
        if !alg.is_classical() {
            return Err(Error::StaticOnlyAlgebra);
        }
        if **phi0.algebra() != *alg {
            return Err(Error::AlgebraMismatch);
        }
        if source_twist.conj_linear() {
            return Err(Error::Unsupported("a twist must be complex linear".into()));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::UnsupportedParam(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        if scale.signum() <= 0 {
            return Err(Error::UnsupportedParam("scale must be positive".into()));
        }
        if !scale.is_one() && (alg.mode == FieldMode::Compact || phi0.conj_linear()) {
            return Err(Error::UnsupportedParam("scalings require a complex-linear map in complex mode".into()));
        }
        let m = alg.matrix_size;
        if x.rows() != m || x.cols() != m {
            return Err(Error::DimensionMismatch("X has the wrong size".into()));
        }
        if !x.is_zero() && !alg.contains(&x) {
            return Err(Error::NotInAlgebra("X".into()));
        }
        if alg.mode == FieldMode::Compact && alg.omega(&x) != x {
            return Err(Error::NotCompactMode);
        }
        let k = Rat::from_bigint(t0.floor());
        let (t0, phi0) = if k.is_zero() {
            (t0, phi0)
        } else {
            let kk = k.to_i64().ok_or_else(|| Error::UnsupportedParam("t0 too large".into()))?;
            (&t0 - &k, phi0.compose(&source_twist.pow(kk)?)?)
        };
        let spectrum = Spectrum::of(&x)?;
        let conj = phi0.compose(&source_twist.pow(epsilon as i64)?)?.compose(&phi0.inverse()?)?;
        if spectrum.is_some() && conj.apply(&x)? != x {
            return Err(Error::PeriodicityViolation("phi0 sigma^epsilon phi0^-1 does not fix X".into()));
        }
        let (target, exp_order) = match &spectrum {
            Some(s) => (Automorphism::inner(&alg, s.exp(&Rat::one())?)?.compose(&conj)?, s.exp_order()),
            None => (conj, 1),
        };
        let bound = lcm(source_twist.order(crate::loops::MAX_CONDUCTOR)?, exp_order);
        let target_order = target
            .order(bound)
            .map_err(|_| Error::PeriodicityViolation("target twist does not have finite order".into()))?;
        Ok(StandardLoopAutomorphism { source: source_twist, epsilon, t0, x, phi0, scale, spectrum, target, target_order })
    }

    /// The identity of `L(g, σ)`.
    pub fn identity(twist: &Automorphism) -> Result<StandardLoopAutomorphism> {
        let m = twist.algebra().matrix_size;
        StandardLoopAutomorphism::new(
            twist.clone(),
            1,
            Rat::zero(),
            CycloMatrix::zeros(m, m),
            Automorphism::identity(twist.algebra()),
            Rat::one(),
        )
    }

    /// `u(t) ↦ φ₀(u(εt + t₀))`.
    pub fn constant(twist: &Automorphism, epsilon: i8, t0: Rat, phi0: Automorphism) -> Result<StandardLoopAutomorphism> {
        let m = twist.algebra().matrix_size;
        StandardLoopAutomorphism::new(twist.clone(), epsilon, t0, CycloMatrix::zeros(m, m), phi0, Rat::one())
    }

    /// The time shift `u(t) ↦ u(t + t₀)`.
    pub fn shift(twist: &Automorphism, t0: Rat) -> Result<StandardLoopAutomorphism> {
        StandardLoopAutomorphism::constant(twist, 1, t0, Automorphism::identity(twist.algebra()))
    }

    /// The reflection `u(t) ↦ u(−t)`, mapping `L(g, σ)` to `L(g, σ⁻¹)`.
    pub fn reflection(twist: &Automorphism) -> Result<StandardLoopAutomorphism> {
        StandardLoopAutomorphism::constant(twist, -1, Rat::zero(), Automorphism::identity(twist.algebra()))
    }

    /// The curve `u(t) ↦ e^{t ad Y}(u(t))`; requires `σY = Y`.
    pub fn exp_curve(twist: &Automorphism, y: CycloMatrix) -> Result<StandardLoopAutomorphism> {
        StandardLoopAutomorphism::new(twist.clone(), 1, Rat::zero(), y, Automorphism::identity(twist.algebra()), Rat::one())
    }

    /// The scaling `τ_r`.
    pub fn scaling(twist: &Automorphism, r: Rat) -> Result<StandardLoopAutomorphism> {
        let m = twist.algebra().matrix_size;
        StandardLoopAutomorphism::new(
            twist.clone(),
            1,
            Rat::zero(),
            CycloMatrix::zeros(m, m),
            Automorphism::identity(twist.algebra()),
            r,
        )
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        self.source.algebra()
    }

    pub fn source_twist(&self) -> &Automorphism {
        &self.source
    }

    /// `σ̃ = e^{2π ad X} φ₀ σ^ε φ₀⁻¹`.
    pub fn target_twist(&self) -> &Automorphism {
        &self.target
    }

    pub fn target_order(&self) -> u64 {
        self.target_order
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn t0(&self) -> &Rat {
        &self.t0
    }

    pub fn x(&self) -> &CycloMatrix {
        &self.x
    }

    pub fn phi0(&self) -> &Automorphism {
        &self.phi0
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn is_first_kind(&self) -> bool {
        self.epsilon == 1
    }

    /// Whether the map sends `L(g, σ)` to itself.
    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn is_identity(&self) -> bool {
        self.epsilon == 1 && self.t0.is_zero() && self.x.is_zero() && self.scale.is_one() && self.phi0.is_identity()
    }

    fn without_scale(&self) -> StandardLoopAutomorphism {
        StandardLoopAutomorphism { scale: Rat::one(), ..self.clone() }
    }

    /// The conductor of the image of a loop with conductor `l`.
    pub fn output_conductor(&self, l: u64) -> Result<u64> {
        let mut big = lcm(l, self.target_order);
        if let Some(s) = &self.spectrum {
            big = lcm(big, s.difference_denominator());
        }
        if big > crate::loops::MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow(big));
        }
        Ok(big)
    }

    /// The image loop.
    pub fn apply(&self, u: &LoopElement) -> Result<LoopElement> {
        if *u.space().twist() != self.source {
            return Err(Error::TwistMismatch("loop does not live on the source twist".into()));
        }
        let l = u.space().conductor();
        let big = self.output_conductor(l)?;
        let space = LoopSpace::new(self.target.clone(), big)?;
        let sign = if self.phi0.conj_linear() { -self.epsilon } else { self.epsilon } as i64;
        let mut out: std::collections::BTreeMap<i64, CycloMatrix> = std::collections::BTreeMap::new();
        for (&n, x) in u.coeffs() {
            let mut c = turn(&(&self.t0 * &Rat::new(n, l as i64)))?;
            if !self.scale.is_one() {
                c = c.scale(&rational_power(&self.scale, n, l)?);
            }
            let z = self.phi0.apply(&x.scale(&c))?;
            let base = Rat::new(sign * n, l as i64);
            let parts = match &self.spectrum {
                Some(s) => s.components(&z),
                None => vec![(Rat::zero(), z)],
            };
            for (delta, comp) in parts {
                let idx = (&(&base + &delta) * &Rat::from_int(big as i64))
                    .to_i64()
                    .ok_or_else(|| Error::ConductorOverflow(big))?;
                let v = match out.remove(&idx) {
                    Some(w) => &w + &comp,
                    None => comp,
                };
                out.insert(idx, v);
            }
        }
        LoopElement::new(&space, out)
    }

    /// `ʳφ` with `τ_r ∘ φ = ʳφ ∘ τ_{r^ε}` for an unscaled `φ`: `φ₀ ↦ Ad(r^{−i X})φ₀`.
    fn interchange(&self, r: &Rat) -> Result<StandardLoopAutomorphism> {
        if r.is_one() {
            return Ok(self.without_scale());
        }
        if self.phi0.conj_linear() {
            return Err(Error::Unsupported("scaling a conjugate-linear map".into()));
        }
        let phi0 = match &self.spectrum {
            Some(s) => Automorphism::inner(self.algebra(), s.real_power(r)?)?.compose(&self.phi0)?,
            None => self.phi0.clone(),
        };
        StandardLoopAutomorphism::new(self.source.clone(), self.epsilon, self.t0.clone(), self.x.clone(), phi0, Rat::one())
    }

    /// `ʳφ ∘ τ_{r^ε}`, the same map as `τ_r ∘ φ` for an unscaled `φ`.
    pub fn scaled_conjugate(&self, r: &Rat) -> Result<StandardLoopAutomorphism> {
        if !self.scale.is_one() {
            return Err(Error::UnsupportedParam("expected an unscaled automorphism".into()));
        }
        let moved = self.interchange(r)?;
        let total = r.pow(self.epsilon as i32);
        StandardLoopAutomorphism { scale: total, ..moved }.revalidated()
    }

    fn revalidated(self) -> Result<StandardLoopAutomorphism> {
        StandardLoopAutomorphism::new(self.source, self.epsilon, self.t0, self.x, self.phi0, self.scale)
    }

    /// The composition `self ∘ o`.
    pub fn compose(&self, o: &StandardLoopAutomorphism) -> Result<StandardLoopAutomorphism> {
        if o.target != self.source {
            return Err(Error::TwistMismatch("target of the inner map differs from the source of the outer map".into()));
        }
        // (φ₁τ_{r₁})(φ₂τ_{r₂}) = φ₁ · ʳ¹φ₂ · τ_{r₁^{ε₂} r₂}
        let b = o.without_scale().interchange(&self.scale)?;
        let total = &self.scale.pow(o.epsilon as i32) * &o.scale;
        let a = self.without_scale();
        let z = a.phi0.apply(&b.x)?;
        if !a.x.is_zero() && !z.is_zero() && !a.x.commutator(&z).is_zero() {
            return Err(Error::NonCommuting);
        }
        let x = if a.epsilon == 1 { &a.x + &z } else { &a.x - &z };
        let mut phi0 = a.phi0.compose(&b.phi0)?;
        if !a.t0.is_zero() {
            if let Some(s) = Spectrum::of(&z)? {
                phi0 = Automorphism::inner(self.algebra(), s.exp(&a.t0)?)?.compose(&phi0)?;
            }
        }
        let t0 = &(&a.t0 * &Rat::from_int(b.epsilon as i64)) + &b.t0;
        StandardLoopAutomorphism::new(b.source.clone(), a.epsilon * b.epsilon, t0, x, phi0, total)
    }

    pub fn inverse(&self) -> Result<StandardLoopAutomorphism> {
        let eps = Rat::from_int(self.epsilon as i64);
        let phi0_inv = self.phi0.inverse()?;
        let x = phi0_inv.apply(&self.x)?.scale_rat(&-&eps);
        let mut phi0 = phi0_inv;
        if let Some(s) = &self.spectrum {
            if !self.t0.is_zero() {
                phi0 = phi0.compose(&Automorphism::inner(self.algebra(), s.exp(&(&eps * &self.t0))?)?)?;
            }
        }
        let inv = StandardLoopAutomorphism::new(self.target.clone(), self.epsilon, -&(&eps * &self.t0), x, phi0, Rat::one())?;
        if self.scale.is_one() {
            return Ok(inv);
        }
        // (φτ_r)⁻¹ = τ_{1/r} φ⁻¹
        inv.scaled_conjugate(&self.scale.recip())
    }

    pub fn pow(&self, k: i64) -> Result<StandardLoopAutomorphism> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = StandardLoopAutomorphism::identity(&self.source)?;
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `ψ ∘ self ∘ ψ⁻¹`.
    pub fn conjugate_by(&self, psi: &StandardLoopAutomorphism) -> Result<StandardLoopAutomorphism> {
        psi.compose(self)?.compose(&psi.inverse()?)
    }

    /// Least `q ≤ bound` with `φ^q = id`.
    pub fn order(&self, bound: u64) -> Result<u64> {
        if self.epsilon == 1 && !self.scale.is_one() {
            return Err(Error::InfiniteOrderScaling);
        }
        if !self.is_endomorphism() {
            return Err(Error::TwistMismatch("source and target twists differ".into()));
        }
        let mut acc = self.clone();
        for q in 1..=bound {
            if acc.is_identity() {
                return Ok(q);
            }
            acc = self.compose(&acc)?;
        }
        Err(Error::OrderExceedsBound(bound))
    }

    /// For a second-kind map with scale `s`, the `r > 0` with `r² = s`, so that
    /// `τ_r φ τ_r⁻¹` is unscaled.
    pub fn normalizing_scale(&self) -> Result<Rat> {
        if self.epsilon != -1 {
            return Err(Error::WrongKind("only second-kind maps can be normalized by a scaling".into()));
        }
        self.scale
            .nth_root_exact(2)
            .ok_or_else(|| Error::UnsupportedParam(format!("scale {} has no rational square root", self.scale)))
    }

    /// `τ_r φ τ_r⁻¹` for the normalizing `r`, an unscaled second-kind map.
    pub fn normalize_scaling(&self) -> Result<(Rat, StandardLoopAutomorphism)> {
        let r = self.normalizing_scale()?;
        if r.is_one() {
            return Ok((r, self.clone()));
        }
        let tau = StandardLoopAutomorphism::scaling(&self.target, r.clone())?;
        let tau_inv = StandardLoopAutomorphism::scaling(&self.source, r.recip())?;
        Ok((r, tau.compose(self)?.compose(&tau_inv)?))
    }

    /// Conjugates by `u ↦ e^{t ad Y}u` to remove `X`.
    pub fn normalize_to_constant(&self) -> Result<Normalization> {
        if !self.scale.is_one() {
            return Err(Error::UnsupportedParam("normalization requires scale 1".into()));
        }
        let q = self.order(ORDER_BOUND).map_err(|e| match e {
            Error::OrderExceedsBound(b) => Error::NotFiniteOrder(format!("order exceeds {b}")),
            other => other,
        })?;
        let alg = self.algebra();
        if self.x.is_zero() {
            return Ok(Normalization {
                y: self.x.clone(),
                new_twist: self.source.clone(),
                conjugator: StandardLoopAutomorphism::identity(&self.source)?,
                constant: self.clone(),
                order: q,
            });
        }
        let m = alg.matrix_size;
        let mut y = CycloMatrix::zeros(m, m);
        let mut cur = self.x.clone();
        for j in 1..q {
            cur = self.phi0.apply(&cur)?;
            let sign = if self.epsilon == -1 && j % 2 == 1 { -1 } else { 1 };
            y = &y + &cur.scale_rat(&Rat::new(sign * j as i64, 1));
        }
        let y = y.scale_rat(&Rat::new(1, q as i64));
        let check = &(&y - &self.phi0.apply(&y)?.scale_rat(&Rat::from_int(self.epsilon as i64))) + &self.x;
        if !check.is_zero() {
            return Err(Error::NotFiniteOrder("Y - eps phi0 Y + X does not vanish".into()));
        }
        let psi = StandardLoopAutomorphism::exp_curve(&self.source, y.clone())?;
        let constant = self.conjugate_by(&psi)?;
        if !constant.x.is_zero() {
            return Err(Error::NotFiniteOrder("conjugate still depends on t".into()));
        }
        Ok(Normalization { y, new_twist: psi.target.clone(), conjugator: psi, constant, order: q })
    }

    /// `γ = −(ε/2)(X, X)`.
    pub fn affine_gamma(&self) -> CycloScalar {
        self.algebra().killing(&self.x, &self.x).scale(&Rat::new(-(self.epsilon as i64), 2))
    }

    /// The extension `φ̂` to `L(g, σ) + Fc + Fd`:
    /// `φ̂c = εc`, `φ̂d = εd − εX + γc`, `φ̂u = φu + (X, φu)c`.
    pub fn affine_apply(&self, e: &AffineElement) -> Result<AffineElement> {
        if !self.scale.is_one() {
            return Err(Error::ScalingNotExtendable);
        }
        let cc = |s: &CycloScalar| if self.phi0.conj_linear() { s.conj() } else { s.clone() };
        let phi_u = self.apply(&e.loop_part)?;
        let space = phi_u.space().clone();
        let eps = CycloScalar::from_int(self.epsilon as i64);
        let alpha = cc(&e.c);
        let beta = cc(&e.d);
        let xl = LoopElement::constant(&space, self.x.clone())?;
        let pair = xl.form(&phi_u)?;
        let mut loop_part = phi_u;
        if !beta.is_zero() && !self.x.is_zero() {
            loop_part = loop_part.sub(&LoopElement::constant(&space, self.x.scale(&(&eps * &beta)))?)?;
        }
        let c = &(&pair + &(&eps * &alpha)) + &(&beta * &self.affine_gamma());
        Ok(AffineElement::new(loop_part, c, &eps * &beta))
    }
}

/// Output of [`StandardLoopAutomorphism::normalize_to_constant`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub y: CycloMatrix,
    /// `e^{2π ad Y} σ`.
    pub new_twist: Automorphism,
    /// `ψu(t) = e^{t ad Y}(u(t))`.
    pub conjugator: StandardLoopAutomorphism,
    /// `ψ φ ψ⁻¹`, with `X = 0`.
    pub constant: StandardLoopAutomorphism,
    pub order: u64,
}

impl fmt::Display for StandardLoopAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let time = match (self.epsilon, self.t0.is_zero()) {
            (1, true) => "t".to_string(),
            (1, false) => format!("t + 2pi*{}", self.t0),
            (_, true) => "-t".to_string(),
            (_, false) => format!("-t + 2pi*{}", self.t0),
        };
        let curve = if self.x.is_zero() { String::new() } else { format!("exp(t ad {}) ", self.x) };
        write!(f, "u(t) -> {curve}{}(u({time}))", self.phi0)?;
        if !self.scale.is_one() {
            write!(f, " after tau_{}", self.scale)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct LoopAutJson {
    source_twist: Automorphism,
    epsilon: i8,
    t0: Rat,
    #[serde(rename = "X")]
    x: Option<CycloMatrix>,
    phi0: Automorphism,
    scale: Rat,
}

impl Serialize for StandardLoopAutomorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LoopAutJson {
            source_twist: self.source.clone(),
            epsilon: self.epsilon,
            t0: self.t0.clone(),
            x: if self.x.is_zero() { None } else { Some(self.x.clone()) },
            phi0: self.phi0.clone(),
            scale: self.scale.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StandardLoopAutomorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LoopAutJson::deserialize(d)?;
        let m = j.source_twist.algebra().matrix_size;
        let x = j.x.unwrap_or_else(|| CycloMatrix::zeros(m, m));
        StandardLoopAutomorphism::new(j.source_twist, j.epsilon, j.t0, x, j.phi0, j.scale).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests;
