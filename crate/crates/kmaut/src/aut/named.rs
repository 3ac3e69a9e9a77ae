//! Named automorphisms: the standard list of involutions, their inner-conjugacy
//! refinements and the representatives used in the component tables.
//!
//! Labels are products of atoms separated by `*`, composed left to right:
//! `id`, `mu`, `AdJ`, `AdjE`, `theta`, `omega`, `Adtau<k>` and `rho<p>` with optional
//! primes (`rho2'`, `rho1''`).

use std::sync::Arc;

use super::{Automorphism, OutElement};
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::{Error, Result};
use crate::lie::{Family, SimpleAlgebra};

/// `τ_p`: the diagonal matrix whose first `p` entries are `−1` and the others `1`.
pub fn tau(m: usize, p: usize) -> CycloMatrix {
    let d: Vec<CycloScalar> = (0..m).map(|i| CycloScalar::from_int(if i < p { -1 } else { 1 })).collect();
    CycloMatrix::diagonal(&d)
}

/// `J = [[0, E], [−E, 0]]` of even size `m`.
pub fn j_matrix(m: usize) -> CycloMatrix {
    let h = m / 2;
    CycloMatrix::from_fn(m, m, |i, j| {
        if i < h && j == i + h {
            CycloScalar::one()
        } else if i >= h && j + h == i {
            CycloScalar::from_int(-1)
        } else {
            CycloScalar::zero()
        }
    })
}

/// A real quaternionic `N×N` matrix `q` acts on `C^{2N}` as `diag(q, q)`.
fn quaternionic_real(q: &CycloMatrix) -> CycloMatrix {
    CycloMatrix::block_diag(q, q)
}

/// Splits `rho3''` into `(3, 2)`; `None` for labels of another shape.
pub fn parse_rho(label: &str) -> Option<(usize, usize)> {
    let rest = label.strip_prefix("rho")?;
    let primes = rest.chars().rev().take_while(|&c| c == '\'').count();
    let digits = &rest[..rest.len() - primes];
    let p = digits.parse().ok()?;
    Some((p, primes))
}

/// The label with its primes removed.
pub fn strip_primes(label: &str) -> &str {
    label.trim_end_matches('\'')
}

fn rho(p: usize) -> String {
    format!("rho{p}")
}

/// Labels of the standard list of involutions (without the identity).
pub fn standard_labels(alg: &SimpleAlgebra) -> Vec<String> {
    let n = alg.n;
    let count = match alg.family {
        Family::A if n == 1 => 1,
        Family::A if n % 2 == 0 => n / 2 + 1,
        Family::A => (n + 1) / 2 + 2,
        Family::B => n,
        Family::C => n / 2 + 1,
        Family::D if n == 4 => 4,
        Family::D => n + 1,
        _ => {
            return alg.exceptional.map(|d| d.involutions.iter().map(|(l, _)| l.to_string()).collect()).unwrap_or_default()
        }
    };
    (1..=count).map(rho).collect()
}

/// Representatives of involutions up to inner conjugation, starting with `id`.
pub fn int_class_labels(alg: &SimpleAlgebra) -> Vec<String> {
    let mut out = vec!["id".to_string()];
    if alg.family == Family::D && alg.n == 4 {
        for p in 1..=3 {
            for k in 0..3 {
                out.push(format!("rho{p}{}", "'".repeat(k)));
            }
        }
        out.push(rho(4));
        return out;
    }
    out.extend(standard_labels(alg));
    if alg.family == Family::D && alg.n % 2 == 0 {
        out.push(format!("rho{}'", alg.n + 1));
    }
    out
}

/// Conjugacy classes of `Aut g / Int g` with their labels.
pub fn out_class_reps(alg: &SimpleAlgebra) -> Vec<(String, OutElement)> {
    let mut out = vec![("id".to_string(), OutElement::IDENTITY)];
    match alg.family {
        Family::A if alg.n >= 2 => out.push(("mu".into(), OutElement::new(1, 0))),
        Family::D => {
            out.push(("rho1".into(), OutElement::new(1, 0)));
            if alg.n == 4 {
                out.push(("theta".into(), OutElement::new(0, 1)));
            }
        }
        Family::E6 => out.push(("rho1".into(), OutElement::new(1, 0))),
        _ => {}
    }
    out
}

/// Label of the conjugacy class of an outer class.
pub fn out_class_label(alg: &SimpleAlgebra, o: OutElement) -> String {
    let rep = o.class_rep();
    out_class_reps(alg).into_iter().find(|(_, e)| *e == rep).map(|(l, _)| l).unwrap_or_else(|| "id".into())
}

/// Automorphisms generating `Aut g / Int g` modulo inner automorphisms.
pub fn out_generators(alg: &Arc<SimpleAlgebra>) -> Result<Vec<Automorphism>> {
    match alg.family {
        Family::A if alg.n >= 2 => Ok(vec![Automorphism::outer_generator(alg, 1)?]),
        Family::D => {
            let mut v = vec![Automorphism::inner(alg, tau(alg.matrix_size, 1))?];
            if alg.n == 4 {
                v.push(Automorphism::outer_generator(alg, 1)?);
            }
            Ok(v)
        }
        _ => Ok(Vec::new()),
    }
}

/// The involution with the given standard-list or inner-class label.
pub fn standard_involution(alg: &Arc<SimpleAlgebra>, label: &str) -> Result<Automorphism> {
    if !int_class_labels(alg).iter().any(|l| l == label) {
        return Err(Error::InvalidLabel(label.into()));
    }
    named_automorphism(alg, label)
}

/// Resolves a product label to a concrete automorphism.
pub fn named_automorphism(alg: &Arc<SimpleAlgebra>, label: &str) -> Result<Automorphism> {
    if !alg.is_classical() {
        return Automorphism::static_label(alg, label);
    }
    let mut acc = Automorphism::identity(alg);
    for factor in label.split('*') {
        acc = acc.compose(&atom(alg, factor.trim()).map_err(|_| Error::InvalidLabel(label.into()))?)?;
    }
    Ok(acc.with_label(label))
}

fn atom(alg: &Arc<SimpleAlgebra>, a: &str) -> Result<Automorphism> {
    let m = alg.matrix_size;
    let n = alg.n;
    let bad = || Error::InvalidLabel(a.into());
    let inner = |g: CycloMatrix| Automorphism::inner(alg, g);
    match a {
        "id" => return Ok(Automorphism::identity(alg)),
        "omega" => return Automorphism::omega(alg),
        "mu" => {
            return match alg.family {
                Family::A if m == 2 => inner(j_matrix(2)),
                Family::A => Automorphism::outer_generator(alg, 1),
                _ => Err(bad()),
            }
        }
        "AdJ" => {
            return match alg.family {
                Family::A | Family::D if m % 2 == 0 => inner(j_matrix(m)),
                Family::C if n % 2 == 0 => inner(quaternionic_real(&j_matrix(n))),
                _ => Err(bad()),
            }
        }
        "AdjE" if alg.family == Family::C => return inner(j_matrix(m)),
        "theta" if alg.family == Family::D && n == 4 => return Automorphism::outer_generator(alg, 1),
        _ => {}
    }
    if let Some(k) = a.strip_prefix("Adtau").and_then(|s| s.parse::<usize>().ok()) {
        return match alg.family {
            Family::C if k <= n => inner(quaternionic_real(&tau(n, k))),
            Family::A | Family::B | Family::D if k <= m => inner(tau(m, k)),
            _ => Err(bad()),
        };
    }
    let (p, primes) = parse_rho(a).ok_or_else(bad)?;
    if p == 0 {
        return Err(bad());
    }
    match alg.family {
        Family::A if m == 2 && p == 1 && primes == 0 => inner(tau(2, 1)),
        Family::A if primes == 0 => {
            let h = m / 2;
            if p <= h {
                inner(tau(m, p))
            } else if p == h + 1 {
                Automorphism::outer_generator(alg, 1)
            } else if p == h + 2 && m % 2 == 0 {
                inner(j_matrix(m))?.compose(&Automorphism::outer_generator(alg, 1)?)
            } else {
                Err(bad())
            }
        }
        Family::B if primes == 0 && p <= n => inner(tau(m, p)),
        Family::C if primes == 0 => {
            if p <= n / 2 {
                inner(quaternionic_real(&tau(n, p)))
            } else if p == n / 2 + 1 {
                inner(CycloMatrix::block_diag(&CycloMatrix::identity(n), &-&CycloMatrix::identity(n)))
            } else {
                Err(bad())
            }
        }
        Family::D if n == 4 => {
            if p > 4 || primes > 2 || (p == 4 && primes > 0) {
                return Err(bad());
            }
            let base = inner(tau(m, p))?;
            if primes == 0 {
                return Ok(base);
            }
            base.conjugate_by(&Automorphism::outer_generator(alg, primes as i64)?)
        }
        Family::D => {
            if primes == 0 && p <= n {
                inner(tau(m, p))
            } else if primes == 0 && p == n + 1 {
                inner(j_matrix(m))
            } else if primes == 1 && p == n + 1 && n % 2 == 0 {
                let t = tau(m, 1);
                inner(&(&t * &j_matrix(m)) * &t)
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}
