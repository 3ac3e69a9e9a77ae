//! Exact elements of cyclotomic fields `Q(ζ_N)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{canonical_conductor, check_conductor, cyclotomic_poly, divisors, power_table, totient, x_pow};
use crate::error::{Error, Result};
use crate::rat::{lcm, Rat};

/// An element of `Q(ζ_N)` stored in the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}`.
///
/// Zero is stored with an empty coefficient vector and every rational value
/// with conductor 1. Conductors `≡ 2 (mod 4)` are never stored.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    n: u64,
    c: Vec<Rat>,
}

impl CycloScalar {
    pub fn zero() -> CycloScalar {
        CycloScalar { n: 1, c: Vec::new() }
    }

    pub fn one() -> CycloScalar {
        CycloScalar::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> CycloScalar {
        if r.is_zero() {
            CycloScalar::zero()
        } else {
            CycloScalar { n: 1, c: vec![r] }
        }
    }

    pub fn from_int(k: i64) -> CycloScalar {
        CycloScalar::from_rat(Rat::from_int(k))
    }

    pub fn frac(a: i64, b: i64) -> CycloScalar {
        CycloScalar::from_rat(Rat::new(a, b))
    }

    /// The imaginary unit `ζ_4`.
    pub fn i() -> CycloScalar {
        CycloScalar::root_of_unity(4, 1)
    }

    /// `ζ_N^k` with `ζ_N = e^{2πi/N}`.
    pub fn root_of_unity(n: u64, k: i64) -> CycloScalar {
        assert!(n >= 1, "root of unity of order 0");
        let k = k.rem_euclid(n as i64) as u64;
        if k == 0 {
            return CycloScalar::one();
        }
        let g = num_integer::gcd(n, k);
        let (mut n, mut k) = (n / g, k / g);
        let mut sign = false;
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let m = n / 2;
            sign = k % 2 == 1;
            k = (k * ((m + 1) / 2)) % m;
            n = m;
        }
        let c: Vec<Rat> = x_pow(n, k).iter().map(|&v| Rat::from_int(if sign { -v } else { v })).collect();
        CycloScalar::normalize(n, c)
    }

    /// Builds a scalar from explicit power-basis coordinates.
    pub fn from_coeffs(n: u64, coeffs: Vec<Rat>) -> Result<CycloScalar> {
        check_conductor(n)?;
        let phi = totient(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let cn = canonical_conductor(n);
        if cn != n {
            // re-express through roots of unity of the canonical conductor
            let mut acc = CycloScalar::zero();
            for (j, r) in coeffs.into_iter().enumerate() {
                if !r.is_zero() {
                    acc = &acc + &CycloScalar::root_of_unity(n, j as i64).scale(&r);
                }
            }
            return Ok(acc);
        }
        Ok(CycloScalar::normalize(n, coeffs))
    }

    fn normalize(n: u64, c: Vec<Rat>) -> CycloScalar {
        if c.iter().all(|x| x.is_zero()) {
            return CycloScalar::zero();
        }
        if c.iter().skip(1).all(|x| x.is_zero()) {
            return CycloScalar { n: 1, c: vec![c[0].clone()] };
        }
        CycloScalar { n, c }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coordinates with respect to the stored conductor (length φ(N)).
    pub fn coeffs(&self) -> Vec<Rat> {
        if self.c.is_empty() {
            vec![Rat::zero()]
        } else {
            self.c.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match (self.n, self.c.len()) {
            (_, 0) => Some(Rat::zero()),
            (1, _) => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Re-expresses the element in `Q(ζ_M)`; `M` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> CycloScalar {
        let m = canonical_conductor(m);
        if self.n == m || self.is_zero() {
            return self.clone();
        }
        assert!(m % self.n == 0, "conductor {} does not divide {m}", self.n);
        if self.n == 1 {
            let mut c = vec![Rat::zero(); totient(m) as usize];
            c[0] = self.c[0].clone();
            return CycloScalar { n: m, c };
        }
        let step = m / self.n;
        let table = PowerRows::new(m);
        let phi = totient(m) as usize;
        let mut out = vec![Rat::zero(); phi];
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let row = table.row(j as u64 * step);
            for (o, &t) in out.iter_mut().zip(row.iter()) {
                if t != 0 {
                    *o += &(cj * &Rat::from_int(t));
                }
            }
        }
        CycloScalar { n: m, c: out }
    }

    /// Coordinates in `Q(ζ_M)` without the rational shortcut, for linear-algebra use.
    pub fn coords_in(&self, m: u64) -> Vec<Rat> {
        let e = self.embed(m);
        if e.is_zero() {
            vec![Rat::zero(); totient(canonical_conductor(m)) as usize]
        } else if e.n == 1 && canonical_conductor(m) != 1 {
            let mut c = vec![Rat::zero(); totient(canonical_conductor(m)) as usize];
            c[0] = e.c[0].clone();
            c
        } else {
            e.c
        }
    }

    /// Smallest conductor that contains both operands.
    pub fn common_conductor(a: u64, b: u64) -> Result<u64> {
        check_conductor(canonical_conductor(lcm(a, b)))
    }

    pub fn scale(&self, r: &Rat) -> CycloScalar {
        if r.is_zero() || self.is_zero() {
            return CycloScalar::zero();
        }
        CycloScalar { n: self.n, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn checked_add(&self, o: &CycloScalar) -> Result<CycloScalar> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.n == o.n {
            let c = self.c.iter().zip(o.c.iter()).map(|(a, b)| a + b).collect();
            return Ok(CycloScalar::normalize(self.n, c));
        }
        let m = CycloScalar::common_conductor(self.n, o.n)?;
        let (a, b) = (self.embed(m), o.embed(m));
        if a.n == 1 || b.n == 1 {
            // one side rational, only the constant coordinate changes
            let (r, x) = if a.n == 1 { (&a, &b) } else { (&b, &a) };
            let mut c = x.c.clone();
            c[0] += &r.c[0];
            return Ok(CycloScalar::normalize(x.n, c));
        }
        let c = a.c.iter().zip(b.c.iter()).map(|(x, y)| x + y).collect();
        Ok(CycloScalar::normalize(m, c))
    }

    pub fn checked_mul(&self, o: &CycloScalar) -> Result<CycloScalar> {
        if self.is_zero() || o.is_zero() {
            return Ok(CycloScalar::zero());
        }
        if self.n == 1 {
            return Ok(o.scale(&self.c[0]));
        }
        if o.n == 1 {
            return Ok(self.scale(&o.c[0]));
        }
        let m = CycloScalar::common_conductor(self.n, o.n)?;
        let a = self.embed(m);
        let b = o.embed(m);
        let phi = a.c.len();
        let mut prod = vec![Rat::zero(); 2 * phi - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += &(x * y);
                }
            }
        }
        let table = PowerRows::new(m);
        let mut out: Vec<Rat> = prod[..phi].to_vec();
        for (k, pk) in prod.iter().enumerate().skip(phi) {
            if pk.is_zero() {
                continue;
            }
            let row = table.row(k as u64);
            for (o, &t) in out.iter_mut().zip(row.iter()) {
                if t != 0 {
                    *o += &(pk * &Rat::from_int(t));
                }
            }
        }
        Ok(CycloScalar::normalize(m, out))
    }

    /// Galois automorphism `ζ_N ↦ ζ_N^k` (with `k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> CycloScalar {
        if self.n == 1 || self.is_zero() {
            return self.clone();
        }
        let mut acc = CycloScalar::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if !cj.is_zero() {
                acc = &acc + &CycloScalar::root_of_unity(self.n, j as i64 * k).scale(cj);
            }
        }
        acc
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> CycloScalar {
        self.galois(-1)
    }

    pub fn checked_inv(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(Error::Singular);
        }
        if self.n == 1 {
            return Ok(CycloScalar::from_rat(self.c[0].recip()));
        }
        if self.c.len() == 2 {
            // quadratic field: x · conj(x) is rational
            let cj = self.conj();
            let norm = self.checked_mul(&cj)?;
            let r = norm.as_rat().expect("norm of a quadratic element is rational");
            return Ok(cj.scale(&r.recip()));
        }
        // solve x · y = 1 as a linear system over Q
        let phi = self.c.len();
        let mut rows = vec![vec![Rat::zero(); phi]; phi];
        for j in 0..phi {
            let col = self.checked_mul(&CycloScalar::root_of_unity(self.n, j as i64))?.coords_in(self.n);
            for i in 0..phi {
                rows[i][j] = col[i].clone();
            }
        }
        let mut rhs = vec![Rat::zero(); phi];
        rhs[0] = Rat::one();
        let y = solve_rational(rows, rhs).ok_or(Error::Singular)?;
        Ok(CycloScalar::normalize(self.n, y))
    }

    pub fn inv(&self) -> CycloScalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, e: i64) -> CycloScalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut result = CycloScalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Floating-point approximation `(re, im)`, for display and root hints only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, cj) in self.c.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            let v = cj.to_f64();
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }

    /// Re-expresses the element over the smallest cyclotomic field containing it.
    pub fn reduced(&self) -> CycloScalar {
        if self.n == 1 || self.is_zero() {
            return self.clone();
        }
        for d in divisors(self.n) {
            if d == self.n {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            let phi_d = totient(d) as usize;
            let phi_n = self.c.len();
            let mut rows = vec![vec![Rat::zero(); phi_d]; phi_n];
            for j in 0..phi_d {
                let col = CycloScalar::root_of_unity(d, j as i64).coords_in(self.n);
                for i in 0..phi_n {
                    rows[i][j] = col[i].clone();
                }
            }
            if let Some(y) = solve_rational(rows, self.c.clone()) {
                return CycloScalar::normalize(d, y);
            }
        }
        self.clone()
    }

    /// An exact square root inside a cyclotomic field, when one is found.
    ///
    /// Handles rationals (through quadratic Gauss sums) and rational multiples of
    /// roots of unity. Returns `None` otherwise or when the conductor would overflow.
    pub fn sqrt(&self) -> Option<CycloScalar> {
        if self.is_zero() {
            return Some(CycloScalar::zero());
        }
        if let Some(r) = self.as_rat() {
            return rational_sqrt(&r);
        }
        let m = lcm(2, self.n);
        let big = self.pow(m as i64).as_rat()?;
        let r = big.abs().nth_root_exact(m as u32)?;
        let zeta = self.scale(&r.recip());
        let k = (0..m as i64).find(|&k| CycloScalar::root_of_unity(m, k) == zeta)?;
        let root_r = rational_sqrt(&r)?;
        root_r.checked_mul(&CycloScalar::root_of_unity(2 * m, k)).ok()
    }

    /// True when the value is a real number (fixed by conjugation).
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Sign of a rational value; `None` when not rational.
    pub fn rational_sign(&self) -> Option<i32> {
        self.as_rat().map(|r| r.signum())
    }

    pub fn to_latex(&self) -> String {
        self.render(|n, j| {
            if n == 4 {
                "i".to_string()
            } else if j == 1 {
                format!("\\zeta_{{{n}}}")
            } else {
                format!("\\zeta_{{{n}}}^{{{j}}}")
            }
        })
    }

    fn render(&self, gen: impl Fn(u64, usize) -> String) -> String {
        let r = self.reduced();
        if r.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, cj) in r.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            if j == 0 {
                parts.push(cj.to_string());
            } else if cj.is_one() {
                parts.push(gen(r.n, j));
            } else if *cj == Rat::from_int(-1) {
                parts.push(format!("-{}", gen(r.n, j)));
            } else {
                parts.push(format!("{}*{}", cj, gen(r.n, j)));
            }
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn rational_sqrt(r: &Rat) -> Option<CycloScalar> {
    use num_traits::{Signed, ToPrimitive};
    if r.is_zero() {
        return Some(CycloScalar::zero());
    }
    let num = r.numer().abs();
    let den = r.denom();
    let a = (num * &den).to_u64()?;
    let (f, core) = squarefree_split(a)?;
    let mut acc = CycloScalar::from_rat(Rat::from_big(num_rational::BigRational::new(f.into(), den)));
    let mut rest = core;
    let mut p = 2u64;
    while rest > 1 {
        if rest % p == 0 {
            acc = acc.checked_mul(&prime_sqrt(p)?).ok()?;
            rest /= p;
        }
        p += 1;
    }
    if r.signum() < 0 {
        acc = acc.checked_mul(&CycloScalar::i()).ok()?;
    }
    Some(acc)
}

/// Writes `a = f² · m` with `m` squarefree; gives up on large prime factors.
fn squarefree_split(mut a: u64) -> Option<(u64, u64)> {
    let (mut f, mut m) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= a {
        let mut e = 0;
        while a % p == 0 {
            a /= p;
            e += 1;
        }
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
        if p > 1_000_000 {
            return None;
        }
    }
    m *= a;
    Some((f, m))
}

/// `√p` for a prime `p`: `ζ_8 + ζ_8⁻¹` for 2, a quadratic Gauss sum otherwise.
fn prime_sqrt(p: u64) -> Option<CycloScalar> {
    if p == 2 {
        return Some(&CycloScalar::root_of_unity(8, 1) + &CycloScalar::root_of_unity(8, -1));
    }
    if p > 10_000 {
        return None;
    }
    let mut g = CycloScalar::zero();
    for k in 1..p {
        let leg = legendre(k, p);
        let z = CycloScalar::root_of_unity(p, k as i64);
        if leg > 0 {
            g += &z;
        } else {
            g -= &z;
        }
    }
    if p % 4 == 1 {
        Some(g)
    } else {
        // g = i √p
        g.checked_mul(&CycloScalar::root_of_unity(4, 3)).ok()
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Access to `x^e mod Φ_m`, through the cached table when the conductor is small.
struct PowerRows {
    m: u64,
    table: Option<std::sync::Arc<Vec<Vec<i64>>>>,
}

impl PowerRows {
    fn new(m: u64) -> PowerRows {
        PowerRows { m, table: if m <= 4096 { Some(power_table(m)) } else { None } }
    }

    fn row(&self, e: u64) -> std::borrow::Cow<'_, [i64]> {
        match &self.table {
            Some(t) => std::borrow::Cow::Borrowed(&t[(e % self.m) as usize]),
            None => std::borrow::Cow::Owned(x_pow(self.m, e)),
        }
    }
}

/// Solves `A x = b` over Q; returns `None` when inconsistent.
/// When the system is underdetermined free variables are set to zero.
pub fn solve_rational(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    if !a[r][j].is_zero() {
                        let t = &f * &a[r][j];
                        a[i][j] -= &t;
                    }
                }
                let t = &f * &b[r];
                b[i] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b.iter().skip(r).any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

impl PartialEq for CycloScalar {
    fn eq(&self, o: &CycloScalar) -> bool {
        if self.n == o.n {
            return self.c == o.c;
        }
        if self.is_zero() || o.is_zero() {
            return false;
        }
        match CycloScalar::common_conductor(self.n, o.n) {
            Ok(m) => self.coords_in(m) == o.coords_in(m),
            Err(_) => false,
        }
    }
}

impl Eq for CycloScalar {}

impl Default for CycloScalar {
    fn default() -> Self {
        CycloScalar::zero()
    }
}

impl From<Rat> for CycloScalar {
    fn from(r: Rat) -> Self {
        CycloScalar::from_rat(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(k: i64) -> Self {
        CycloScalar::from_int(k)
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, o: &CycloScalar) -> CycloScalar {
        self.checked_add(o).expect("conductor overflow")
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, o: &CycloScalar) -> CycloScalar {
        self.checked_add(&-o).expect("conductor overflow")
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, o: &CycloScalar) -> CycloScalar {
        self.checked_mul(o).expect("conductor overflow")
    }
}

impl<'a> Div<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn div(self, o: &CycloScalar) -> CycloScalar {
        self * &o.inv()
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { n: self.n, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: CycloScalar) -> CycloScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: &CycloScalar) -> CycloScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $m(self, o: CycloScalar) -> CycloScalar {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, o: &CycloScalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, o: &CycloScalar) {
        *self = &*self - o;
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|n, j| if n == 4 { "i".to_string() } else if j == 1 { format!("z{n}") } else { format!("z{n}^{j}") });
        f.write_str(&s)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr { conductor: self.n, coeffs: self.coeffs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CycloScalar, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        CycloScalar::from_coeffs(r.conductor, r.coeffs).map_err(serde::de::Error::custom)
    }
}

/// Cyclotomic polynomial exposed for oracles in tests.
pub fn cyclotomic_coefficients(n: u64) -> Vec<i128> {
    cyclotomic_poly(n).to_vec()
}
