//! The acceptance suite: twelve exact checks over tables, invariants and real forms.
//!
//! Each criterion runs in `Quick` mode on a reduced range of algebras or in `Full` mode on the
//! complete range.

pub mod fixtures;

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aut::named::{j_matrix, tau};
use crate::aut::random::random_inner;
use crate::aut::{involution_int_class, named_automorphism, standard_involution, Automorphism};
use crate::cyclo::{CycloMatrix, CycloScalar};
use crate::error::Result;
use crate::lie::{make_algebra, Family, FieldMode, SimpleAlgebra};
use crate::loop_aut::{
    invariant, invariant_first_kind, opposite, LoopInvariant, StandardLoopAutomorphism, ORDER_BOUND,
};
use crate::loops::{derived_algebra_witness, random_affine, random_loop, LoopSpace};
use crate::rat::Rat;
use crate::real_forms::{conj_linear_bijection, sl2_catalogue};
use crate::tables::{
    self, enumerate_first_kind, enumerate_second_kind, expected_first_kind, expected_second_kind, realize_entry,
    valid_ks, validate_table1, EntryType,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Quick,
    Full,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:>2} {} ({} checks)", self.id, self.name, self.checks)?;
        if let Some(first) = self.failures.first() {
            write!(f, ": {first}")?;
            if self.failures.len() > 1 {
                write!(f, " (+{} more)", self.failures.len() - 1)?;
            }
        }
        Ok(())
    }
}

pub const CRITERIA: [&str; 12] = [
    "first-kind counts",
    "second-kind counts",
    "involution table validation",
    "algebra identities",
    "invariant stability",
    "opposite and iota",
    "realize round trip",
    "normalization",
    "scaling laws",
    "conjugate-linear bijection",
    "sl2 catalogue",
    "pfaffian separation",
];

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        self.checks += 1;
        if got != want {
            self.failures.push(format!("{}: got {got:?}, want {want:?}", what()));
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

fn alg(f: Family, n: usize) -> Arc<SimpleAlgebra> {
    make_algebra(f, n, FieldMode::Complex).expect("valid algebra")
}

/// The classical algebras whose tables are checked.
pub fn table_algebras(depth: Depth) -> Vec<(Family, usize)> {
    let (a, b, c, d) = match depth {
        Depth::Full => (7, 5, 6, 8),
        Depth::Quick => (4, 3, 4, 5),
    };
    let mut out = Vec::new();
    out.extend((1..=a).map(|n| (Family::A, n)));
    out.extend((2..=b).map(|n| (Family::B, n)));
    out.extend((3..=c).map(|n| (Family::C, n)));
    out.extend((4..=d).map(|n| (Family::D, n)));
    out
}

/// The exceptional algebras with their ranks.
pub fn exceptional_algebras() -> Vec<(Family, usize)> {
    vec![(Family::E6, 6), (Family::E7, 7), (Family::E8, 8), (Family::F4, 4), (Family::G2, 2)]
}

fn table2(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for (f, n) in table_algebras(depth).into_iter().chain(exceptional_algebras()) {
        let a = alg(f, n);
        for k in valid_ks(&a) {
            let Some(row) = t.result(enumerate_first_kind(&a, k), || format!("{}{n} k={k}", f.name())) else { continue };
            let got = (row.count_of(EntryType::FirstA), row.count_of(EntryType::FirstB));
            match expected_first_kind(f, n, k) {
                Some(want) => t.eq(got, want, || row.algebra.clone()),
                None => t.check(false, || format!("{} has no closed form", row.algebra)),
            }
            t.eq(row.count, got.0 + got.1, || format!("{} total", row.algebra));
            let keys: Vec<String> = row.entries.iter().map(|e| e.invariant.to_string()).collect();
            let mut dedup = keys.clone();
            dedup.sort();
            dedup.dedup();
            t.eq(dedup.len(), keys.len(), || format!("{} entries distinct", row.algebra));
        }
    }
    let spot = |f, n, k| enumerate_first_kind(&alg(f, n), k).map(|r| r.count).ok();
    t.eq(spot(Family::A, 1, 1), Some(3), || "a_1^(1)".into());
    t.eq(spot(Family::B, 3, 1), Some(7), || "b_3^(1)".into());
    t.eq(spot(Family::D, 4, 3), Some(2), || "d_4^(3)".into());
    for n in 2..=3 {
        t.eq(spot(Family::A, 2 * n - 1, 1), Some(n + 4 + 2), || format!("a_{}^(1)", 2 * n - 1));
    }
    t
}

fn table3(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for (f, n) in table_algebras(depth).into_iter().chain(exceptional_algebras()) {
        let a = alg(f, n);
        for k in valid_ks(&a) {
            let Some(row) = t.result(enumerate_second_kind(&a, k), || format!("{}{n} k={k}", f.name())) else { continue };
            match expected_second_kind(f, n, k) {
                Some(want) => t.eq(row.count, want, || row.algebra.clone()),
                None => t.check(false, || format!("{} has no closed form", row.algebra)),
            }
            let mut keys: Vec<String> = row.entries.iter().map(|e| e.invariant.to_string()).collect();
            let len = keys.len();
            keys.sort();
            keys.dedup();
            t.eq(keys.len(), len, || format!("{} entries distinct", row.algebra));
        }
    }
    let spot = |f, n, k| enumerate_second_kind(&alg(f, n), k).map(|r| r.count).ok();
    t.eq(spot(Family::D, 4, 1), Some(10), || "d_4^(1)".into());
    t.eq(spot(Family::D, 4, 2), Some(8), || "d_4^(2)".into());
    t.eq(spot(Family::D, 4, 3), Some(3), || "d_4^(3)".into());
    t.eq(spot(Family::E6, 6, 2), Some(6), || "e_6^(2)".into());
    for n in 1..=3 {
        t.eq(spot(Family::A, 2 * n, 1), Some(n * (n + 3) / 2 + 2), || format!("a_{}^(1)", 2 * n));
    }
    t
}

fn table1(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for (f, n) in table_algebras(depth) {
        let a = alg(f, n);
        let Some(checks) = t.result(validate_table1(&a), || a.label()) else { continue };
        for c in checks {
            t.check(c.commuting_and_orders, || format!("{} {}: commuting and orders", a.label(), c.rho));
            t.check(c.separated, || format!("{} {}: signatures {:?}", a.label(), c.rho, c.signatures));
        }
    }
    t
}

fn identity_spaces() -> Vec<Arc<LoopSpace>> {
    let twisted = |f, n, label: &str, l| LoopSpace::new(named_automorphism(&alg(f, n), label).expect("label"), l).expect("space");
    vec![
        LoopSpace::untwisted(&alg(Family::A, 1)).expect("space"),
        twisted(Family::A, 1, "rho1", 2),
        twisted(Family::A, 2, "mu", 2),
        LoopSpace::untwisted(&alg(Family::A, 3)).expect("space"),
        LoopSpace::untwisted(&alg(Family::B, 2)).expect("space"),
        twisted(Family::C, 3, "rho1", 2),
        twisted(Family::D, 4, "theta", 3),
        twisted(Family::D, 5, "rho1", 2),
        LoopSpace::untwisted(&alg(Family::D, 6)).expect("space"),
    ]
}

fn identities(depth: Depth) -> Tally {
    let mut t = Tally::default();
    let triples = if depth == Depth::Full { 200 } else { 20 };
    for (idx, s) in identity_spaces().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + idx as u64);
        let name = format!("{} l={}", s.algebra().label(), s.conductor());
        let mut ok = (true, true, true);
        for _ in 0..triples {
            let x = random_affine(&s, 1, &mut rng);
            let y = random_affine(&s, 1, &mut rng);
            let z = random_affine(&s, 1, &mut rng);
            let run = || -> Result<(bool, bool, bool)> {
                let a = x.bracket(&y.bracket(&z)?)?;
                let b = y.bracket(&z.bracket(&x)?)?;
                let c = z.bracket(&x.bracket(&y)?)?;
                let jacobi = a.add(&b)?.add(&c)?.is_zero();
                let form = x.bracket(&y)?.form(&z)? == x.form(&y.bracket(&z)?)? && x.form(&y)? == y.form(&x)?;
                let grading = x.loop_part.bracket(&y.loop_part)?.validate().is_ok() && a.loop_part.validate().is_ok();
                Ok((jacobi, form, grading))
            };
            match run() {
                Ok((j, f, g)) => ok = (ok.0 && j, ok.1 && f, ok.2 && g),
                Err(e) => t.check(false, || format!("{name}: {e}")),
            }
        }
        t.check(ok.0, || format!("{name}: Jacobi"));
        t.check(ok.1, || format!("{name}: form invariance"));
        t.check(ok.2, || format!("{name}: grading"));
        let window = 2 * s.conductor() as i64;
        if let Some(w) = t.result(derived_algebra_witness(&s, window), || format!("{name}: witness")) {
            t.check(w.passed(), || format!("{name}: derived algebra witness"));
        }
    }
    t
}

fn random_conjugator(
    phi: &StandardLoopAutomorphism,
    rng: &mut ChaCha8Rng,
    step: i64,
) -> Result<StandardLoopAutomorphism> {
    let alpha = random_inner(phi.algebra(), rng)?;
    let inner = StandardLoopAutomorphism::constant(phi.source_twist(), 1, Rat::zero(), alpha)?;
    let shift = StandardLoopAutomorphism::shift(inner.target_twist(), Rat::new(step % 12, 12))?;
    shift.compose(&inner)
}

fn stability(depth: Depth) -> Tally {
    let mut t = Tally::default();
    let rounds = if depth == Depth::Full { 30 } else { 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for f in fixtures::stability_fixtures() {
        t.eq(f.phi.order(ORDER_BOUND).ok(), Some(f.order), || format!("{} order", f.name));
        let Some(inv) = t.result(invariant(&f.phi), || f.name.clone()) else { continue };
        for step in 0..rounds {
            let conj = random_conjugator(&f.phi, &mut rng, step).and_then(|psi| f.phi.conjugate_by(&psi));
            let Some(conj) = t.result(conj, || format!("{} conjugation", f.name)) else { continue };
            let got = invariant(&conj);
            t.check(got.as_ref().ok() == Some(&inv), || format!("{}: {inv} became {got:?}", f.name));
        }
    }
    t
}

fn opposite_and_iota(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for phi in fixtures::first_kind_fixtures() {
        let a = phi.algebra().clone();
        let run = || -> Result<bool> {
            let inv = invariant_first_kind(&phi)?;
            let refl = StandardLoopAutomorphism::reflection(phi.target_twist())?;
            let back = StandardLoopAutomorphism::reflection(phi.source_twist())?;
            let conj = refl.compose(&phi)?.compose(&back)?;
            Ok(invariant_first_kind(&conj)? == opposite(&a, &inv)?)
        };
        let ok = run();
        t.check(matches!(ok, Ok(true)), || format!("reflection of {phi}: {ok:?}"));
    }
    for (f, n) in table_algebras(depth).into_iter().chain(exceptional_algebras()) {
        let a = alg(f, n);
        for k in valid_ks(&a) {
            let Some(row) = t.result(enumerate_first_kind(&a, k), || a.label()) else { continue };
            for e in row.entries {
                let LoopInvariant::First(i) = &e.invariant else { continue };
                let got = opposite(&a, i);
                t.check(got.as_ref().ok() == Some(i), || format!("iota_2 on {} {}", row.algebra, e.notation));
            }
        }
    }
    t
}

fn round_trip(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for (f, n) in table_algebras(depth) {
        let a = alg(f, n);
        let Some(rows) = t.result(tables::all_rows(&a), || a.label()) else { continue };
        for row in rows {
            for e in &row.entries {
                let got = realize_entry(&a, e).and_then(|phi| invariant(&phi));
                t.check(got.as_ref().ok() == Some(&e.invariant), || {
                    format!("{} {}: {got:?}", row.algebra, e.notation)
                });
            }
        }
    }
    t
}

fn normalization(depth: Depth) -> Tally {
    let mut t = Tally::default();
    let count = if depth == Depth::Full { 60 } else { 15 };
    let mut nonconstant = 0;
    for (phi, c) in fixtures::normalization_fixtures(count, 21) {
        if !phi.x().is_zero() {
            nonconstant += 1;
        }
        let run = || -> Result<Vec<(&'static str, bool)>> {
            let n = phi.normalize_to_constant()?;
            let eps = Rat::from_int(phi.epsilon() as i64);
            let residual = &(&n.y - &phi.phi0().apply(&n.y)?.scale_rat(&eps)) + phi.x();
            let order = c.order(ORDER_BOUND)?;
            let mut checks = vec![
                ("Y - eps phi0 Y + X = 0", residual.is_zero()),
                ("constant has X = 0", n.constant.x().is_zero()),
                ("target twist has finite order", n.new_twist.order(ORDER_BOUND).is_ok()),
                ("order preserved", n.order == order && n.constant.order(ORDER_BOUND)? == order),
            ];
            if phi.epsilon() == 1 || order == 2 {
                checks.push(("invariant preserved", invariant(&phi)? == invariant(&c)?));
            }
            Ok(checks)
        };
        match run() {
            Ok(checks) => {
                for (what, ok) in checks {
                    t.check(ok, || format!("{phi}: {what}"));
                }
            }
            Err(e) => t.check(false, || format!("{phi}: {e}")),
        }
    }
    t.check(nonconstant * 2 >= count, || format!("only {nonconstant} fixtures have X != 0"));
    t
}

fn sl2_ih(q: Rat) -> CycloMatrix {
    CycloMatrix::diagonal(&[CycloScalar::i().scale(&q), CycloScalar::i().scale(&-&q)])
}

fn scaling_laws(depth: Depth) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let samples = if depth == Depth::Full { 10 } else { 3 };
    let a = alg(Family::A, 1);
    let id = Automorphism::identity(&a);
    let rho = standard_involution(&a, "rho1").expect("rho1");
    let weyl = Automorphism::inner(&a, CycloMatrix::from_int_rows(&[vec![0, 1], vec![-1, 0]])).expect("weyl");
    let scales = [Rat::from_int(4), Rat::new(1, 9), Rat::new(9, 4), Rat::new(25, 16)];
    for sigma in [id.clone(), rho.clone()] {
        let space = LoopSpace::with_minimal_conductor(sigma.clone()).expect("space");
        for r in &scales {
            let mut run = || -> Result<Vec<(String, bool)>> {
                let tau_r = StandardLoopAutomorphism::scaling(&sigma, r.clone())?;
                let mut out = Vec::new();
                for _ in 0..samples {
                    let u = random_loop(&space, 2, &mut rng);
                    let v = random_loop(&space, 2, &mut rng);
                    let lhs = tau_r.apply(&u.bracket(&v)?)?;
                    let rhs = tau_r.apply(&u)?.bracket(&tau_r.apply(&v)?)?;
                    out.push((format!("tau_{r} preserves brackets"), lhs == rhs));
                }
                for s in &scales {
                    let tau_s = StandardLoopAutomorphism::scaling(&sigma, s.clone())?;
                    let tau_rs = StandardLoopAutomorphism::scaling(&sigma, r * s)?;
                    out.push((format!("tau_{r} tau_{s} = tau_rs"), tau_r.compose(&tau_s)? == tau_rs));
                }
                Ok(out)
            };
            match run() {
                Ok(v) => v.into_iter().for_each(|(w, ok)| t.check(ok, || w)),
                Err(e) => t.check(false, || format!("tau_{r}: {e}")),
            }
        }
    }
    let space = LoopSpace::untwisted(&a).expect("space");
    let curves = [
        StandardLoopAutomorphism::new(id.clone(), 1, Rat::new(1, 4), sl2_ih(Rat::one()), id.clone(), Rat::one()),
        StandardLoopAutomorphism::new(id.clone(), -1, Rat::zero(), sl2_ih(Rat::one()), weyl.clone(), Rat::one()),
        StandardLoopAutomorphism::new(id.clone(), -1, Rat::new(1, 3), sl2_ih(Rat::new(1, 2)), id.clone(), Rat::one()),
    ];
    for phi in curves {
        let Some(phi) = t.result(phi, || "curve fixture".into()) else { continue };
        for r in &scales {
            let mut run = || -> Result<bool> {
                let tau_r = StandardLoopAutomorphism::scaling(&id, r.clone())?;
                let moved = phi.scaled_conjugate(r)?;
                let r_eps = if phi.epsilon() == 1 { r.clone() } else { r.recip() };
                let unscaled = StandardLoopAutomorphism::new(
                    id.clone(),
                    moved.epsilon(),
                    moved.t0().clone(),
                    moved.x().clone(),
                    moved.phi0().clone(),
                    Rat::one(),
                )?;
                let tau_eps = StandardLoopAutomorphism::scaling(&id, r_eps)?;
                let mut ok = tau_r.compose(&phi)? == moved && unscaled.compose(&tau_eps)? == moved;
                for _ in 0..samples {
                    let u = random_loop(&space, 2, &mut rng);
                    ok &= tau_r.apply(&phi.apply(&u)?)? == unscaled.apply(&tau_eps.apply(&u)?)?;
                }
                Ok(ok)
            };
            let ok = run();
            t.check(matches!(ok, Ok(true)), || format!("interchange for {phi} with r = {r}: {ok:?}"));
            if phi.epsilon() == -1 {
                let run = || -> Result<bool> {
                    let tau_r = StandardLoopAutomorphism::scaling(&id, r.clone())?;
                    let scaled = tau_r.compose(&phi)?.compose(&tau_r.inverse()?)?;
                    let found = scaled.normalizing_scale()?;
                    let (_, fixed) = scaled.normalize_scaling()?;
                    Ok(&found * &found == *scaled.scale() && fixed.scale().is_one() && fixed.order(ORDER_BOUND).is_ok() == phi.order(ORDER_BOUND).is_ok())
                };
                let ok = run();
                t.check(matches!(ok, Ok(true)), || format!("normalizing r for {phi} with r = {r}: {ok:?}"));
            }
        }
    }
    t
}

/// The classical algebras of rank at most 6 on which the conjugate-linear bijection is checked.
pub fn bijection_algebras(depth: Depth) -> Vec<(Family, usize)> {
    match depth {
        Depth::Full => {
            let mut out: Vec<(Family, usize)> = (1..=6).map(|n| (Family::A, n)).collect();
            out.extend((2..=6).map(|n| (Family::B, n)));
            out.extend((3..=6).map(|n| (Family::C, n)));
            out.extend((4..=6).map(|n| (Family::D, n)));
            out
        }
        Depth::Quick => vec![(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 3), (Family::D, 4)],
    }
}

fn bijection(depth: Depth) -> Tally {
    let mut t = Tally::default();
    for (f, n) in bijection_algebras(depth) {
        let a = alg(f, n);
        let Some(r) = t.result(conj_linear_bijection(&a), || a.label()) else { continue };
        t.check(r.injective, || format!("{}: image not injective", r.algebra));
        t.check(r.matches, || {
            let image: Vec<String> = r.image.iter().map(|i| i.to_string()).collect();
            let found: Vec<String> = r.enumerated.iter().map(|i| i.to_string()).collect();
            format!("{}: image {image:?} vs enumerated {found:?}", r.algebra)
        });
    }
    t
}

fn catalogue() -> Tally {
    let mut t = Tally::default();
    let Some(cat) = t.result(sl2_catalogue(), || "sl2 catalogue".into()) else { return t };
    t.eq(cat.almost_split.len(), 3, || "almost split count".into());
    t.eq(cat.almost_compact.iter().filter(|e| !e.compact).count(), 3, || "non-compact almost compact count".into());
    t.eq(cat.almost_compact.iter().filter(|e| e.compact).count(), 1, || "compact form count".into());
    let notations: Vec<&str> = cat.almost_split.iter().map(|e| e.notation.as_str()).collect();
    t.eq(notations, vec!["[id, id]", "[mu, mu]", "[mu, id]"], || "almost split labels".into());
    let notations: Vec<&str> = cat.almost_compact.iter().map(|e| e.notation.as_str()).collect();
    t.eq(notations, vec!["(0, id, [id])", "(0, rho1, [id])", "(0, rho1, [mu])", "(1, id, [id])"], || {
        "almost compact labels".into()
    });
    let mut keys: Vec<String> = cat.almost_split.iter().chain(&cat.almost_compact).map(|e| e.conj_invariant.to_string()).collect();
    let len = keys.len();
    keys.sort();
    keys.dedup();
    t.eq(keys.len(), len, || "catalogue invariants distinct".into());
    for e in cat.almost_compact.iter().chain(&cat.almost_split) {
        t.check(e.verified, || format!("{} not verified", e.name));
    }
    t
}

fn pfaffian() -> Tally {
    let mut t = Tally::default();
    for m in [2usize, 3] {
        let a = alg(Family::D, 2 * m);
        let j = j_matrix(4 * m);
        let t1 = tau(4 * m, 1);
        let jp = &(&t1 * &j) * &t1;
        let run = || -> Result<(bool, bool)> {
            let cj = involution_int_class(&Automorphism::inner(&a, j.clone())?)?;
            let cjp = involution_int_class(&Automorphism::inner(&a, jp.clone())?)?;
            let pf = j.pfaffian()?;
            let pfp = jp.pfaffian()?;
            Ok((cj != cjp, !pf.is_zero() && pf == -&pfp))
        };
        match run() {
            Ok((classes, pf)) => {
                t.check(classes, || format!("so({}): Ad J and Ad tau1 J tau1 share a class", 4 * m));
                t.check(pf, || format!("so({}): Pfaffians do not differ by sign", 4 * m));
            }
            Err(e) => t.check(false, || format!("so({}): {e}", 4 * m)),
        }
    }
    t
}

/// Runs criterion `id` (1 to 12).
pub fn run_criterion(id: u8, depth: Depth) -> CriterionReport {
    let tally = match id {
        1 => table2(depth),
        2 => table3(depth),
        3 => table1(depth),
        4 => identities(depth),
        5 => stability(depth),
        6 => opposite_and_iota(depth),
        7 => round_trip(depth),
        8 => normalization(depth),
        9 => scaling_laws(depth),
        10 => bijection(depth),
        11 => catalogue(),
        12 => pfaffian(),
        _ => {
            return CriterionReport {
                id,
                name: "unknown",
                passed: false,
                checks: 0,
                failures: vec![format!("no criterion {id}")],
            }
        }
    };
    CriterionReport {
        id,
        name: CRITERIA[id as usize - 1],
        passed: tally.failures.is_empty() && tally.checks > 0,
        checks: tally.checks,
        failures: tally.failures,
    }
}

pub fn run_all(depth: Depth) -> Vec<CriterionReport> {
    (1..=12).map(|id| run_criterion(id, depth)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        for r in run_all(Depth::Quick) {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        let r = run_criterion(13, Depth::Quick);
        assert!(!r.passed);
        assert!(r.to_string().starts_with("FAIL 13"));
    }

    #[test]
    fn stability_fixtures_cover_required_orders() {
        let orders: Vec<(i8, u64)> = fixtures::stability_fixtures().iter().map(|f| (f.phi.epsilon(), f.order)).collect();
        for want in [(1, 2), (1, 3), (1, 4), (1, 6), (-1, 2)] {
            assert!(orders.contains(&want), "{want:?}");
        }
    }
}
