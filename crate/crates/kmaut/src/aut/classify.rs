//! Inner-conjugacy classes of involutions and the component group of their centralizers.

use serde::{Deserialize, Serialize};

use super::named::{self, parse_rho, strip_primes};
use super::{group_multiplier, is_so8, orthogonal_det_sign, Automorphism};
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{Family, SimpleAlgebra};
use crate::rat::Rat;

/// Label of an involution up to conjugation by inner automorphisms (`id` for the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvolutionIntClass {
    pub label: String,
}

impl InvolutionIntClass {
    fn new(label: impl Into<String>) -> InvolutionIntClass {
        InvolutionIntClass { label: label.into() }
    }

    /// The standard-list label with primes removed.
    pub fn standard_label(&self) -> &str {
        strip_primes(&self.label)
    }

    pub fn primes(&self) -> usize {
        self.label.len() - self.standard_label().len()
    }
}

/// A connected component of the centralizer of `ρ`, named by its representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentClass {
    pub rho: String,
    pub rep_label: String,
    pub k: u32,
}

/// One representative of the component group of the centralizer of `ρ`.
#[derive(Clone, Debug, Serialize)]
pub struct Pi0Entry {
    pub rep_label: String,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Automorphism>,
}

fn rho(p: usize) -> String {
    format!("rho{p}")
}

fn sign_of(v: &CycloScalar) -> Result<i32> {
    if v.is_one() {
        Ok(1)
    } else if (-v).is_one() {
        Ok(-1)
    } else {
        Err(Error::Unclassifiable(format!("expected a sign, got {v}")))
    }
}

/// `c` with `S² = c·E`.
fn square_scalar(s: &CycloMatrix) -> Result<CycloScalar> {
    (s * s).as_scalar().ok_or_else(|| Error::Unclassifiable("matrix does not square to a scalar".into()))
}

/// `ε` with `a = ε·b` for `ε = ±1`.
fn relative_sign(a: &CycloMatrix, b: &CycloMatrix) -> Result<i32> {
    if a == b {
        Ok(1)
    } else if *a == -b {
        Ok(-1)
    } else {
        Err(Error::Unclassifiable("matrices are not equal up to sign".into()))
    }
}

/// `±1` according to whether `G` commutes or anticommutes with `S`.
fn commutation_sign(g: &CycloMatrix, s: &CycloMatrix) -> Result<i32> {
    relative_sign(&(g * s), &(s * g))
}

/// Multiplicity `p ≤ m/2` of the minority eigenvalue of `S` with `S² = c·E`.
fn minority_multiplicity(s: &CycloMatrix, c: &CycloScalar) -> Result<usize> {
    let m = s.rows() as i64;
    let t = s.trace();
    let q = (&(&t * &t) / c).as_rat().ok_or_else(|| Error::Unclassifiable("trace is not rational".into()))?;
    let d = (0..=m).find(|d| q == Rat::from_int(d * d)).ok_or_else(|| Error::Unclassifiable("trace is not an integer".into()))?;
    if (m - d) % 2 != 0 {
        return Err(Error::Unclassifiable("trace parity".into()));
    }
    Ok(((m - d) / 2) as usize)
}

/// Eigenspaces `(V_small, V_big)` of `S` with `S² = c·E` and unequal multiplicities.
///
/// `tr S / (m − 2p)` is a square root of `c`, so no root extraction is needed.
fn split_by_size(s: &CycloMatrix) -> Result<(Vec<Vec<CycloScalar>>, Vec<Vec<CycloScalar>>)> {
    let c = square_scalar(s)?;
    let m = s.rows();
    let p = minority_multiplicity(s, &c)?;
    if 2 * p == m {
        return Err(Error::Unclassifiable("eigenspaces have equal dimension".into()));
    }
    let root = s.trace().scale(&Rat::new((m - 2 * p) as i64, 1).recip());
    let s0 = s.scale(&root.inv());
    let e = CycloMatrix::identity(m);
    Ok(((&s0 + &e).kernel(), (&s0 - &e).kernel()))
}

/// Determinant of `G` restricted to the `G`-stable subspace spanned by `basis`.
fn restricted_det(g: &CycloMatrix, basis: &[Vec<CycloScalar>]) -> Result<CycloScalar> {
    let b = CycloMatrix::from_columns(basis);
    let mut cols = Vec::with_capacity(basis.len());
    for v in basis {
        let y = g.mul_vec(v);
        cols.push(b.solve(&y).ok_or_else(|| Error::Unclassifiable("subspace is not invariant".into()))?);
    }
    CycloMatrix::from_columns(&cols).det()
}

/// Signs of `det(G|V)/λ^{dim V/2}` on the small and big eigenspaces of `S`.
fn block_signs(g: &CycloMatrix, lam: &CycloScalar, s: &CycloMatrix) -> Result<(i32, i32)> {
    let (small, big) = split_by_size(s)?;
    let a = &restricted_det(g, &small)? / &lam.pow(small.len() as i64 / 2);
    let b = &restricted_det(g, &big)? / &lam.pow(big.len() as i64 / 2);
    Ok((sign_of(&a)?, sign_of(&b)?))
}

/// Unordered signs of `det(G|V±)/λ^{m/4}` for a traceless `S` whose eigenspaces have equal
/// dimension `m/2` (even). Returned as `(1, 1)`, `(−1, −1)` or `(−1, 1)`.
///
/// With `u = 1/√c`, `f(u) = det((G+E)/2 + u·(G−E)/2·S)` equals `det(G|V₊)` and
/// `f(−u) = det(G|V₋)`. Their sum is twice the even part of `f`, a polynomial in `u²`
/// evaluated at `1/c` by interpolation.
fn unordered_block_signs(g: &CycloMatrix, lam: &CycloScalar, s: &CycloMatrix) -> Result<(i32, i32)> {
    let m = s.rows();
    let c = square_scalar(s)?;
    let e = CycloMatrix::identity(m);
    let half = CycloScalar::frac(1, 2);
    let a = (g + &e).scale(&half);
    let b = &(g - &e).scale(&half) * s;
    let f = |t: i64| -> Result<CycloScalar> { (&a + &b.scale(&CycloScalar::from_int(t))).det() };
    let deg = m / 2;
    let nodes: Vec<i64> = (1..=deg as i64 + 1).collect();
    let mut even = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        even.push(&(&f(t)? + &f(-t)?) * &half);
    }
    let w = c.inv();
    let mut total = CycloScalar::zero();
    for (i, &ti) in nodes.iter().enumerate() {
        let mut term = even[i].clone();
        for (j, &tj) in nodes.iter().enumerate() {
            if i != j {
                let num = &w - &CycloScalar::from_int(tj * tj);
                term = &term * &num.scale(&Rat::new(1, ti * ti - tj * tj));
            }
        }
        total += &term;
    }
    let sum = &(&total + &total) / &lam.pow(m as i64 / 4);
    if sum == CycloScalar::from_int(2) {
        Ok((1, 1))
    } else if sum == CycloScalar::from_int(-2) {
        Ok((-1, -1))
    } else if sum.is_zero() {
        Ok((-1, 1))
    } else {
        Err(Error::Unclassifiable(format!("block determinant sum {sum} is not in {{-2, 0, 2}}")))
    }
}

/// Inner-conjugacy class of an involution.
pub fn involution_int_class(phi: &Automorphism) -> Result<InvolutionIntClass> {
    let alg = phi.algebra();
    if phi.is_static() {
        let l = phi.label().unwrap_or("");
        let data = alg.exceptional.ok_or(Error::UnsupportedExceptional)?;
        if l == "id" || data.involutions.iter().any(|(x, _)| *x == l) {
            return Ok(InvolutionIntClass::new(l));
        }
        return Err(Error::UnsupportedExceptional);
    }
    if phi.conj_linear() {
        return Err(Error::Unsupported("conjugate-linear maps have no inner class".into()));
    }
    if !phi.compose(phi)?.is_identity() {
        return Err(Error::NotInvolution);
    }
    if phi.is_identity() {
        return Ok(InvolutionIntClass::new("id"));
    }
    if is_so8(alg) {
        return so8_class(phi);
    }
    classical_class(alg, phi).map(InvolutionIntClass::new)
}

fn classical_class(alg: &SimpleAlgebra, phi: &Automorphism) -> Result<String> {
    let s = phi.matrix();
    let m = alg.matrix_size;
    match alg.family {
        Family::A => {
            if phi.outer_power() == 0 {
                let c = square_scalar(s)?;
                return Ok(rho(minority_multiplicity(s, &c)?));
            }
            if s.is_symmetric() {
                Ok(rho(m / 2 + 1))
            } else if s.is_antisymmetric() && m % 2 == 0 {
                Ok(rho(m / 2 + 2))
            } else {
                Err(Error::Unclassifiable("outer involution matrix is neither symmetric nor antisymmetric".into()))
            }
        }
        Family::B => {
            let c = square_scalar(s)?;
            Ok(rho(minority_multiplicity(s, &c)?))
        }
        Family::C => {
            let c = square_scalar(s)?;
            let nu = group_multiplier(alg, s)?;
            match sign_of(&(&nu / &c))? {
                1 => {
                    let t = s.trace();
                    let q = (&(&t * &t) / &c).as_rat().ok_or_else(|| Error::Unclassifiable("trace is not rational".into()))?;
                    let n2 = m as i64;
                    let d = (0..=n2)
                        .find(|d| q == Rat::from_int(d * d))
                        .ok_or_else(|| Error::Unclassifiable("trace is not an integer".into()))?;
                    Ok(rho(((n2 - d) / 4) as usize))
                }
                _ => Ok(rho(alg.n / 2 + 1)),
            }
        }
        Family::D => {
            let c = square_scalar(s)?;
            let nu = group_multiplier(alg, s)?;
            let n = alg.n;
            if sign_of(&(&nu / &c))? == 1 {
                return Ok(rho(minority_multiplicity(s, &c)?));
            }
            if n % 2 == 1 {
                return Ok(rho(n + 1));
            }
            let pf = &s.pfaffian()? / &nu.pow(n as i64 / 2);
            let pf_j = named::j_matrix(m).pfaffian()?;
            Ok(if pf == pf_j { rho(n + 1) } else { format!("rho{}'", n + 1) })
        }
        _ => Err(Error::UnsupportedExceptional),
    }
}

/// `so(8)`: find the triality power moving the involution into the standard `τ_p` shape.
fn so8_class(phi: &Automorphism) -> Result<InvolutionIntClass> {
    let alg = phi.algebra();
    for k in 0..3i64 {
        let psi = if k == 0 { phi.clone() } else { phi.conjugate_by(&Automorphism::outer_generator(alg, -k)?)? };
        if psi.outer_power() != 0 {
            continue;
        }
        let s = psi.matrix();
        let c = square_scalar(s)?;
        let nu = group_multiplier(alg, s)?;
        if sign_of(&(&nu / &c))? != 1 {
            continue;
        }
        let p = minority_multiplicity(s, &c)?;
        let label = if p == 4 { rho(4) } else { format!("rho{p}{}", "'".repeat(k as usize)) };
        return Ok(InvolutionIntClass::new(label));
    }
    Err(Error::Unclassifiable("so(8) involution matches no standard shape".into()))
}

/// Component of the centralizer of the involution `ρ` containing `β`.
pub fn component_signature(rho_aut: &Automorphism, beta: &Automorphism) -> Result<ComponentClass> {
    let alg = rho_aut.algebra();
    if rho_aut.is_static() || beta.is_static() {
        return Err(Error::NoSignatureRule(format!("{} has no matrix model", alg.label())));
    }
    if rho_aut.conj_linear() || beta.conj_linear() {
        return Err(Error::Unsupported("conjugate-linear maps have no component signature".into()));
    }
    if !rho_aut.commutes_with(beta)? {
        return Err(Error::NonCommuting);
    }
    let cls = involution_int_class(rho_aut)?;
    let k = beta.out_class().order();
    if cls.label == "id" {
        return Ok(ComponentClass { rho: "id".into(), rep_label: named::out_class_label(alg, beta.out_class()), k });
    }
    let std = cls.standard_label().to_string();
    let (r, b) = if cls.primes() > 0 {
        let t = if super::is_so8(alg) {
            Automorphism::outer_generator(alg, -(cls.primes() as i64))?
        } else {
            Automorphism::inner(alg, named::tau(alg.matrix_size, 1))?
        };
        (rho_aut.conjugate_by(&t)?, beta.conjugate_by(&t)?)
    } else {
        (rho_aut.clone(), beta.clone())
    };
    let rep = signature_rep(alg, &std, &r, &b)?;
    Ok(ComponentClass { rho: std, rep_label: rep, k })
}

fn signature_rep(alg: &SimpleAlgebra, std: &str, r: &Automorphism, b: &Automorphism) -> Result<String> {
    let (p, _) = parse_rho(std).ok_or_else(|| Error::InvalidLabel(std.into()))?;
    let m = alg.matrix_size;
    let s = r.matrix();
    let g = b.matrix();
    let pick = |sign: i32, plus: &str, minus: &str| if sign > 0 { plus.to_string() } else { minus.to_string() };
    match alg.family {
        Family::A if m == 2 => Ok(pick(commutation_sign(g, s)?, "id", "mu")),
        Family::A => {
            let n = m / 2;
            let outer = b.outer_power() == 1;
            if m % 2 == 1 || p < n {
                return Ok(if outer { rho(n + 1) } else { "id".into() });
            }
            if p == n {
                return if outer {
                    Ok(pick(relative_sign(&(g * &s.transpose()), &(s * g))?, &rho(n + 1), &rho(n + 2)))
                } else {
                    Ok(pick(commutation_sign(g, s)?, "id", "AdJ"))
                };
            }
            if p == n + 1 {
                let (inner, plus, minus) =
                    if outer { (b.compose(r)?, rho(n + 1), format!("rho1*rho{}", n + 1)) } else { (b.clone(), "id".into(), "rho1".into()) };
                let h = inner.matrix();
                let img = &(h * s) * &h.transpose();
                let (i, j) = (0..m * m).map(|t| (t / m, t % m)).find(|&(i, j)| !s.get(i, j).is_zero()).unwrap();
                let lam = img.get(i, j) / s.get(i, j);
                if img != s.scale(&lam) {
                    return Err(Error::Unclassifiable("matrix does not preserve the symmetric form".into()));
                }
                let d = &h.det()? / &lam.pow(n as i64);
                return Ok(pick(sign_of(&d)?, &plus, &minus));
            }
            Ok(if outer { rho(n + 2) } else { "id".into() })
        }
        Family::B => {
            let lam = group_multiplier(alg, g)?;
            let kappa = &g.det()? / &lam.pow((m as i64 - 1) / 2);
            let (small, _) = split_by_size(s)?;
            let d = &restricted_det(g, &small)? / &kappa.pow(small.len() as i64);
            Ok(pick(sign_of(&d)?, "id", &format!("rho1*Adtau{}", p + 1)))
        }
        Family::C => {
            let nn = alg.n;
            let half = if nn % 2 == 1 { (nn + 1) / 2 } else { nn / 2 };
            if p < half {
                return Ok("id".into());
            }
            let sign = commutation_sign(g, s)?;
            if nn % 2 == 0 && p == half {
                Ok(pick(sign, "id", "AdJ"))
            } else {
                Ok(pick(sign, "id", "AdjE"))
            }
        }
        Family::D => d_signature(alg, p, r, b),
        _ => Err(Error::NoSignatureRule(alg.label())),
    }
}

fn d_signature(alg: &SimpleAlgebra, p: usize, r: &Automorphism, b: &Automorphism) -> Result<String> {
    let n = alg.n;
    let s = r.matrix();
    let g = b.matrix();
    let pick = |sign: i32, plus: &str, minus: &str| if sign > 0 { plus.to_string() } else { minus.to_string() };
    if is_so8(alg) && p == 4 {
        return so8_rho4_signature(alg, r, b);
    }
    if b.outer_power() != 0 {
        return Err(Error::NoSignatureRule("triality component in a non-triality-stable row".into()));
    }
    let lam = group_multiplier(alg, g)?;
    let sdet = orthogonal_det_sign(alg, g)?;
    if p < n {
        if p % 2 == 1 {
            return Ok(pick(sdet, "id", &rho(p)));
        }
        if commutation_sign(g, s)? < 0 {
            return Err(Error::Unclassifiable("element exchanges eigenspaces of unequal dimension".into()));
        }
        return Ok(match block_signs(g, &lam, s)? {
            (1, 1) => "id".into(),
            (-1, -1) => format!("rho1*rho{}", p + 1),
            (-1, 1) => "rho1".into(),
            _ => rho(p + 1),
        });
    }
    if p == n {
        let c = commutation_sign(g, s)?;
        if n % 2 == 1 {
            return Ok(match (c, sdet) {
                (1, 1) => "id".into(),
                (-1, 1) => rho(n + 1),
                (1, _) => rho(n),
                _ => format!("rho{n}*rho{}", n + 1),
            });
        }
        if c < 0 {
            return Ok(pick(sdet, &rho(n + 1), &format!("rho1*rho{}", n + 1)));
        }
        return Ok(match unordered_block_signs(g, &lam, s)? {
            (1, 1) => "id".into(),
            (-1, -1) => format!("rho1*Adtau{}", n + 1),
            _ => "rho1".into(),
        });
    }
    Ok(pick(commutation_sign(g, s)?, "id", &rho(n)))
}

/// The component group of the centralizer of `τ₄` in `Aut so(8)` is `S₄`.
fn so8_rho4_signature(alg: &SimpleAlgebra, r: &Automorphism, b: &Automorphism) -> Result<String> {
    let s = r.matrix();
    let inner_trivial = |g: &CycloMatrix| -> Result<bool> {
        if commutation_sign(g, s)? < 0 {
            return Ok(false);
        }
        let lam = group_multiplier(alg, g)?;
        Ok(unordered_block_signs(g, &lam, s)? == (1, 1))
    };
    let o = b.out_class();
    match (o.s, o.j) {
        (0, 0) => Ok(if inner_trivial(b.matrix())? { "id".into() } else { "AdJ".into() }),
        (0, _) => Ok("theta".into()),
        _ => {
            let sq = b.compose(b)?;
            if sq.outer_power() != 0 {
                return Err(Error::Unclassifiable("square of an odd element is not inner".into()));
            }
            Ok(if inner_trivial(sq.matrix())? { "rho1".into() } else { "rho1*AdJ".into() })
        }
    }
}

/// Representatives `(label, k)` of the component group of the centralizer of `ρ`.
pub fn pi0_rows(alg: &SimpleAlgebra, rho_label: &str) -> Result<Vec<(String, u32)>> {
    if let Some(data) = alg.exceptional {
        let row = data.table1.iter().find(|r| r.rho == rho_label).ok_or_else(|| Error::InvalidLabel(rho_label.into()))?;
        return Ok(row.reps.iter().map(|(l, k)| (l.to_string(), *k)).collect());
    }
    if !named::standard_labels(alg).iter().any(|l| l == rho_label) {
        return Err(Error::InvalidLabel(rho_label.into()));
    }
    let (p, _) = parse_rho(rho_label).ok_or_else(|| Error::InvalidLabel(rho_label.into()))?;
    let m = alg.matrix_size;
    let nn = alg.n;
    let row = |v: &[(&str, u32)]| v.iter().map(|(l, k)| (l.to_string(), *k)).collect::<Vec<_>>();
    let r = rho;
    let rows: Vec<(String, u32)> = match alg.family {
        Family::A if m == 2 => row(&[("id", 1), ("mu", 1)]),
        Family::A if m % 2 == 1 => vec![("id".into(), 1), (r(m / 2 + 1), 2)],
        Family::A => {
            let n = m / 2;
            if p < n {
                vec![("id".into(), 1), (r(n + 1), 2)]
            } else if p == n {
                vec![("id".into(), 1), ("AdJ".into(), 1), (r(n + 1), 2), (r(n + 2), 2)]
            } else if p == n + 1 {
                vec![("id".into(), 1), ("rho1".into(), 1), (r(n + 1), 2), (format!("rho1*rho{}", n + 1), 2)]
            } else {
                vec![("id".into(), 1), (r(n + 2), 2)]
            }
        }
        Family::B => vec![("id".into(), 1), (format!("rho1*Adtau{}", p + 1), 1)],
        Family::C => {
            let half = if nn % 2 == 1 { (nn + 1) / 2 } else { nn / 2 };
            if p < half {
                row(&[("id", 1)])
            } else if nn % 2 == 0 && p == half {
                row(&[("id", 1), ("AdJ", 1)])
            } else {
                row(&[("id", 1), ("AdjE", 1)])
            }
        }
        Family::D if nn == 4 => match p {
            1 | 3 => vec![("id".into(), 1), (r(p), 2)],
            2 => row(&[("id", 1), ("rho1*rho3", 1), ("rho1", 2), ("rho3", 2)]),
            _ => row(&[("id", 1), ("AdJ", 1), ("rho1", 2), ("rho1*AdJ", 2), ("theta", 3)]),
        },
        Family::D => {
            if p < nn && p % 2 == 0 {
                vec![("id".into(), 1), (format!("rho1*rho{}", p + 1), 1), ("rho1".into(), 2), (r(p + 1), 2)]
            } else if p < nn {
                vec![("id".into(), 1), (r(p), 2)]
            } else if nn % 2 == 0 && p == nn {
                vec![
                    ("id".into(), 1),
                    (format!("rho1*Adtau{}", nn + 1), 1),
                    (r(nn + 1), 1),
                    ("rho1".into(), 2),
                    (format!("rho1*rho{}", nn + 1), 2),
                ]
            } else if nn % 2 == 0 {
                vec![("id".into(), 1), (r(nn), 1)]
            } else if p == nn {
                vec![("id".into(), 1), (r(nn + 1), 1), (r(nn), 2), (format!("rho{nn}*rho{}", nn + 1), 2)]
            } else {
                vec![("id".into(), 1), (r(nn), 2)]
            }
        }
        _ => return Err(Error::UnsupportedExceptional),
    };
    Ok(rows)
}

/// The component-group row of `ρ` with concrete representatives for classical algebras.
pub fn pi0_table(alg: &std::sync::Arc<SimpleAlgebra>, rho_label: &str) -> Result<Vec<Pi0Entry>> {
    let rows = pi0_rows(alg, rho_label)?;
    if !alg.is_classical() {
        return Ok(rows.into_iter().map(|(rep_label, k)| Pi0Entry { rep_label, k, automorphism: None }).collect());
    }
    let rho_aut = named::standard_involution(alg, rho_label)?;
    let mut out = Vec::with_capacity(rows.len());
    for (rep_label, k) in rows {
        let a = named::named_automorphism(alg, &rep_label)?;
        if !a.commutes_with(&rho_aut)? {
            return Err(Error::NonCommuting);
        }
        if a.out_class().order() != k {
            return Err(Error::OrderMismatch(format!("{rep_label} has outer order {}, expected {k}", a.out_class().order())));
        }
        out.push(Pi0Entry { rep_label, k, automorphism: Some(a) });
    }
    Ok(out)
}
