//! The algebraic twisted loop algebra `L(g, σ)` and its affine extension
//! `L(g, σ) + Fc + Fd`.
//!
//! A loop is stored by its Fourier coefficients: `u(t) = Σ u_n e^{int/l}` with
//! `u_n` in the eigenspace `g_n = {x : σ(x) = ζ_l^n x}`.

mod random;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::aut::Automorphism;
use crate::cyclo::{CycloMatrix, CycloScalar, SpanBuilder};
use crate::error::{Error, Result};
use crate::lie::{FieldMode, SimpleAlgebra};
use crate::rat::Rat;

pub use random::{random_affine, random_loop};
pub use witness::{derived_algebra_witness, DegreeWitness, DerivedWitness};

/// Largest conductor accepted for a twist.
pub const MAX_CONDUCTOR: u64 = 1_000_000;

/// The ambient data of a loop algebra: `g`, the twist `σ` and a conductor `l` with `σ^l = id`.
#[derive(Debug)]
pub struct LoopSpace {
    algebra: Arc<SimpleAlgebra>,
    twist: Automorphism,
    conductor: u64,
    eigenbases: OnceLock<Vec<Vec<CycloMatrix>>>,
}

impl PartialEq for LoopSpace {
    fn eq(&self, o: &LoopSpace) -> bool {
        self.conductor == o.conductor && self.twist == o.twist && self.algebra.mode == o.algebra.mode
    }
}

impl LoopSpace {
    /// Validates `σ^l = id`; in compact mode `σ` must also commute with `ω`.
    pub fn new(twist: Automorphism, conductor: u64) -> Result<Arc<LoopSpace>> {
        let algebra = twist.algebra().clone();
        if !algebra.is_classical() {
            return Err(Error::StaticOnlyAlgebra);
        }
        if twist.conj_linear() {
            return Err(Error::Unsupported("a twist must be complex linear".into()));
        }
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(Error::ConductorOverflow(conductor));
        }
        if !twist.pow(conductor as i64)?.is_identity() {
            return Err(Error::OrderMismatch(format!("twist does not satisfy sigma^{conductor} = id")));
        }
        if algebra.mode == FieldMode::Compact && !twist.commutes_with(&Automorphism::omega(&algebra)?)? {
            return Err(Error::NotCompactMode);
        }
        Ok(Arc::new(LoopSpace { algebra, twist, conductor, eigenbases: OnceLock::new() }))
    }

    /// The untwisted loop algebra `L(g, id)` with conductor 1.
    pub fn untwisted(algebra: &Arc<SimpleAlgebra>) -> Result<Arc<LoopSpace>> {
        LoopSpace::new(Automorphism::identity(algebra), 1)
    }

    /// The smallest conductor for `σ`, namely its order.
    pub fn with_minimal_conductor(twist: Automorphism) -> Result<Arc<LoopSpace>> {
        let q = twist.order(MAX_CONDUCTOR)?;
        LoopSpace::new(twist, q)
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        &self.algebra
    }

    pub fn twist(&self) -> &Automorphism {
        &self.twist
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_compact(&self) -> bool {
        self.algebra.mode == FieldMode::Compact
    }

    fn residue(&self, n: i64) -> usize {
        n.rem_euclid(self.conductor as i64) as usize
    }

    /// `ζ_l^n`, the eigenvalue of `σ` on `g_n`.
    pub fn eigenvalue(&self, n: i64) -> CycloScalar {
        CycloScalar::root_of_unity(self.conductor, n)
    }

    /// Whether `x` lies in `g_n`.
    pub fn in_eigenspace(&self, x: &CycloMatrix, n: i64) -> Result<bool> {
        if !self.algebra.contains(x) {
            return Ok(false);
        }
        Ok(self.twist.apply(x)? == x.scale(&self.eigenvalue(n)))
    }

    /// A basis of `g_n`, computed once per residue class.
    pub fn eigenbasis(&self, n: i64) -> &[CycloMatrix] {
        let all = self.eigenbases.get_or_init(|| self.compute_eigenbases());
        &all[self.residue(n)]
    }

    fn compute_eigenbases(&self) -> Vec<Vec<CycloMatrix>> {
        let alg = &self.algebra;
        let l = self.conductor;
        if self.twist.is_identity() {
            let mut v = vec![alg.basis().to_vec()];
            v.resize(l as usize, Vec::new());
            return v;
        }
        let m = self.twist.coordinate_matrix().expect("classical twist");
        let mut powers = Vec::with_capacity(l as usize);
        let mut cur = CycloMatrix::identity(alg.dim());
        for _ in 0..l {
            powers.push(cur.clone());
            cur = &cur * &m;
        }
        let inv_l = Rat::new(1, l as i64);
        (0..l as i64)
            .map(|k| {
                let mut p = CycloMatrix::zeros(alg.dim(), alg.dim());
                for (j, mj) in powers.iter().enumerate() {
                    p = &p + &mj.scale(&CycloScalar::root_of_unity(l, -k * j as i64));
                }
                let p = p.scale_rat(&inv_l);
                let mut span = SpanBuilder::new(alg.dim());
                for j in 0..alg.dim() {
                    span.insert(&p.column(j));
                }
                span.basis().iter().map(|c| alg.element(c)).collect()
            })
            .collect()
    }

    /// Dimension of `g_n`.
    pub fn eigen_dim(&self, n: i64) -> usize {
        self.eigenbasis(n).len()
    }

    /// The same twist with conductor `l'`, a multiple of the current one.
    pub fn with_conductor(&self, new_conductor: u64) -> Result<Arc<LoopSpace>> {
        if new_conductor % self.conductor != 0 {
            return Err(Error::UnsupportedParam(format!(
                "conductor {new_conductor} is not a multiple of {}",
                self.conductor
            )));
        }
        LoopSpace::new(self.twist.clone(), new_conductor)
    }
}

fn check_space(a: &Arc<LoopSpace>, b: &Arc<LoopSpace>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::TwistMismatch("loops live on different loop algebras".into()))
    }
}

/// A finite Fourier sum `Σ u_n e^{int/l}` in `L(g, σ)`.
#[derive(Clone, Debug)]
pub struct LoopElement {
    space: Arc<LoopSpace>,
    coeffs: BTreeMap<i64, CycloMatrix>,
}

impl PartialEq for LoopElement {
    fn eq(&self, o: &LoopElement) -> bool {
        *self.space == *o.space && self.coeffs == o.coeffs
    }
}

impl LoopElement {
    /// Validates membership, the eigenspace rule and (in compact mode) `u_{−n} = ω(u_n)`.
    pub fn new(space: &Arc<LoopSpace>, coeffs: BTreeMap<i64, CycloMatrix>) -> Result<LoopElement> {
        let coeffs: BTreeMap<i64, CycloMatrix> = coeffs.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        for (&n, x) in &coeffs {
            if !space.algebra.contains(x) {
                return Err(Error::NotInAlgebra(format!("coefficient of degree {n}")));
            }
            if !space.in_eigenspace(x, n)? {
                return Err(Error::NotInAlgebra(format!("coefficient of degree {n} is not in g_{n}")));
            }
        }
        let u = LoopElement { space: space.clone(), coeffs };
        if space.is_compact() && !u.is_compact_real() {
            return Err(Error::NotCompactMode);
        }
        Ok(u)
    }

    pub(crate) fn from_parts_unchecked(space: &Arc<LoopSpace>, coeffs: BTreeMap<i64, CycloMatrix>) -> LoopElement {
        LoopElement { space: space.clone(), coeffs: coeffs.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn zero(space: &Arc<LoopSpace>) -> LoopElement {
        LoopElement { space: space.clone(), coeffs: BTreeMap::new() }
    }

    /// The single mode `x·e^{int/l}`.
    pub fn monomial(space: &Arc<LoopSpace>, x: CycloMatrix, n: i64) -> Result<LoopElement> {
        LoopElement::new(space, BTreeMap::from([(n, x)]))
    }

    /// The constant loop `x`, which must be fixed by the twist.
    pub fn constant(space: &Arc<LoopSpace>, x: CycloMatrix) -> Result<LoopElement> {
        LoopElement::monomial(space, x, 0)
    }

    pub fn space(&self) -> &Arc<LoopSpace> {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<SimpleAlgebra> {
        &self.space.algebra
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, CycloMatrix> {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> CycloMatrix {
        let m = self.space.algebra.matrix_size;
        self.coeffs.get(&n).cloned().unwrap_or_else(|| CycloMatrix::zeros(m, m))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether `u_{−n} = ω(u_n)` for every `n`.
    pub fn is_compact_real(&self) -> bool {
        let alg = &self.space.algebra;
        self.coeffs.iter().all(|(&n, x)| self.coeffs.get(&-n).is_some_and(|y| *y == alg.omega(x)))
    }

    /// Whether every coefficient satisfies the eigenspace rule.
    pub fn validate(&self) -> Result<()> {
        LoopElement::new(&self.space, self.coeffs.clone()).map(|_| ())
    }

    pub fn add(&self, o: &LoopElement) -> Result<LoopElement> {
        check_space(&self.space, &o.space)?;
        let mut c = self.coeffs.clone();
        for (&n, x) in &o.coeffs {
            let v = match c.get(&n) {
                Some(y) => y + x,
                None => x.clone(),
            };
            c.insert(n, v);
        }
        Ok(LoopElement::from_parts_unchecked(&self.space, c))
    }

    pub fn sub(&self, o: &LoopElement) -> Result<LoopElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LoopElement {
        LoopElement { space: self.space.clone(), coeffs: self.coeffs.iter().map(|(&n, x)| (n, -x)).collect() }
    }

    /// Multiplication by a scalar; in compact mode the scalar must be real.
    pub fn scale(&self, s: &CycloScalar) -> Result<LoopElement> {
        if self.space.is_compact() && !s.is_real() {
            return Err(Error::NotCompactMode);
        }
        Ok(self.scale_unchecked(s))
    }

    fn scale_unchecked(&self, s: &CycloScalar) -> LoopElement {
        LoopElement::from_parts_unchecked(&self.space, self.coeffs.iter().map(|(&n, x)| (n, x.scale(s))).collect())
    }

    /// Pointwise bracket: `[u,v]_m = Σ_j [u_j, v_{m−j}]`.
    pub fn bracket(&self, o: &LoopElement) -> Result<LoopElement> {
        check_space(&self.space, &o.space)?;
        let mut out: BTreeMap<i64, CycloMatrix> = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &o.coeffs {
                let z = x.commutator(y);
                if z.is_zero() {
                    continue;
                }
                let v = match out.remove(&(a + b)) {
                    Some(w) => &w + &z,
                    None => z,
                };
                out.insert(a + b, v);
            }
        }
        Ok(LoopElement::from_parts_unchecked(&self.space, out))
    }

    /// The averaged form `(u, v) = Σ_m κ(u_m, v_{−m})`.
    pub fn form(&self, o: &LoopElement) -> Result<CycloScalar> {
        check_space(&self.space, &o.space)?;
        let alg = &self.space.algebra;
        let mut acc = CycloScalar::zero();
        for (&m, x) in &self.coeffs {
            if let Some(y) = o.coeffs.get(&-m) {
                acc += &alg.killing(x, y);
            }
        }
        Ok(acc)
    }

    /// `u′ = Σ (in/l) u_n e^{int/l}`.
    pub fn derivative(&self) -> LoopElement {
        let i = CycloScalar::i();
        let l = self.space.conductor as i64;
        let coeffs = self.coeffs.iter().map(|(&n, x)| (n, x.scale(&i.scale(&Rat::new(n, l))))).collect();
        LoopElement::from_parts_unchecked(&self.space, coeffs)
    }

    /// The same loop written with conductor `l'`: `u_n ↦ u_{n l'/l}`.
    pub fn reconductor(&self, new_conductor: u64) -> Result<LoopElement> {
        let space = self.space.with_conductor(new_conductor)?;
        let f = (new_conductor / self.space.conductor) as i64;
        let coeffs = self.coeffs.iter().map(|(&n, x)| (n * f, x.clone())).collect();
        Ok(LoopElement::from_parts_unchecked(&space, coeffs))
    }

    /// The pointwise image `t ↦ α(u(t))` under an automorphism commuting with the twist.
    ///
    /// A conjugate-linear `α` maps `e^{int/l}` to `e^{−int/l}`.
    pub fn map_pointwise(&self, alpha: &Automorphism) -> Result<LoopElement> {
        let mut out = BTreeMap::new();
        for (&n, x) in &self.coeffs {
            let k = if alpha.conj_linear() { -n } else { n };
            out.insert(k, alpha.apply(x)?);
        }
        LoopElement::new(&self.space, out)
    }

    /// Largest `|n|` in the support.
    pub fn degree_bound(&self) -> i64 {
        self.coeffs.keys().map(|n| n.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(n, x)| format!("{x}·z^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element `u + αc + βd` of the affine algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineElement {
    pub loop_part: LoopElement,
    pub c: CycloScalar,
    pub d: CycloScalar,
}

impl AffineElement {
    pub fn new(loop_part: LoopElement, c: CycloScalar, d: CycloScalar) -> AffineElement {
        AffineElement { loop_part, c, d }
    }

    pub fn from_loop(u: LoopElement) -> AffineElement {
        AffineElement::new(u, CycloScalar::zero(), CycloScalar::zero())
    }

    /// The central element `c`.
    pub fn central(space: &Arc<LoopSpace>) -> AffineElement {
        AffineElement::new(LoopElement::zero(space), CycloScalar::one(), CycloScalar::zero())
    }

    /// The derivation `d`.
    pub fn derivation(space: &Arc<LoopSpace>) -> AffineElement {
        AffineElement::new(LoopElement::zero(space), CycloScalar::zero(), CycloScalar::one())
    }

    pub fn space(&self) -> &Arc<LoopSpace> {
        self.loop_part.space()
    }

    pub fn is_zero(&self) -> bool {
        self.loop_part.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, o: &AffineElement) -> Result<AffineElement> {
        Ok(AffineElement::new(self.loop_part.add(&o.loop_part)?, &self.c + &o.c, &self.d + &o.d))
    }

    pub fn sub(&self, o: &AffineElement) -> Result<AffineElement> {
        Ok(AffineElement::new(self.loop_part.sub(&o.loop_part)?, &self.c - &o.c, &self.d - &o.d))
    }

    pub fn scale(&self, s: &CycloScalar) -> AffineElement {
        AffineElement::new(self.loop_part.scale_unchecked(s), &self.c * s, &self.d * s)
    }

    /// `[u + αc + βd, v + γc + δd] = [u,v] + βv′ − δu′ + (u′,v)c`.
    pub fn bracket(&self, o: &AffineElement) -> Result<AffineElement> {
        let u = &self.loop_part;
        let v = &o.loop_part;
        let du = u.derivative();
        let dv = v.derivative();
        let mut w = u.bracket(v)?;
        if !self.d.is_zero() {
            w = w.add(&dv.scale_unchecked(&self.d))?;
        }
        if !o.d.is_zero() {
            w = w.sub(&du.scale_unchecked(&o.d))?;
        }
        let c = du.form(v)?;
        Ok(AffineElement::new(w, c, CycloScalar::zero()))
    }

    /// `(u + αc + βd, v + γc + δd) = (u,v) + αδ + βγ`.
    pub fn form(&self, o: &AffineElement) -> Result<CycloScalar> {
        let base = self.loop_part.form(&o.loop_part)?;
        Ok(&(&base + &(&self.c * &o.d)) + &(&self.d * &o.c))
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})c + ({})d", self.loop_part, self.c, self.d)
    }
}

#[derive(Serialize, Deserialize)]
struct LoopJson {
    twist: Automorphism,
    l: u64,
    coeffs: BTreeMap<String, CycloMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<CycloScalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<CycloScalar>,
}

impl LoopJson {
    fn of(u: &LoopElement, c: Option<CycloScalar>, d: Option<CycloScalar>) -> LoopJson {
        LoopJson {
            twist: u.space.twist.clone(),
            l: u.space.conductor,
            coeffs: u.coeffs.iter().map(|(n, x)| (n.to_string(), x.clone())).collect(),
            c,
            d,
        }
    }

    fn into_loop(self) -> Result<(LoopElement, Option<CycloScalar>, Option<CycloScalar>)> {
        let space = LoopSpace::new(self.twist, self.l)?;
        let mut coeffs = BTreeMap::new();
        for (k, x) in self.coeffs {
            let n: i64 = k.parse().map_err(|_| Error::Parse(format!("degree {k:?}")))?;
            coeffs.insert(n, x);
        }
        Ok((LoopElement::new(&space, coeffs)?, self.c, self.d))
    }
}

impl Serialize for LoopElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LoopJson::of(self, None, None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LoopElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (u, _, _) = LoopJson::deserialize(d)?.into_loop().map_err(D::Error::custom)?;
        Ok(u)
    }
}

impl Serialize for AffineElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LoopJson::of(&self.loop_part, Some(self.c.clone()), Some(self.d.clone())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (u, c, dd) = LoopJson::deserialize(d)?.into_loop().map_err(D::Error::custom)?;
        Ok(AffineElement::new(u, c.unwrap_or_else(CycloScalar::zero), dd.unwrap_or_else(CycloScalar::zero)))
    }
}

#[cfg(test)]
mod tests;
