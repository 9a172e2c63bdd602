//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A [`CycloScalar`] is an element of Q(zeta_m) stored on the power basis
//! 1, zeta, ..., zeta^{phi(m)-1} of Q[x]/(Phi_m(x)). Mixed-conductor
//! operations embed both operands into Q(zeta_lcm) first. No floating
//! point is involved anywhere except the display-only [`CycloScalar::embed`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer polynomials, lowest degree first, used only to build Phi_m.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic; division is exact by construction.
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    if nd < dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)]; // x - 1
    }
    // (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::from(1);
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Per-conductor context: Phi_m and the table of x^k mod Phi_m.
struct CycloCtx {
    m: u32,
    phi: usize,
    /// x^k mod Phi_m for 0 <= k < m, each of length phi.
    pow_table: Vec<Vec<Rat>>,
    /// Monic Phi_m over Q, lowest degree first, length phi + 1.
    modulus: Vec<Rat>,
}

impl CycloCtx {
    fn new(m: u32) -> Self {
        let phi = totient(m) as usize;
        let phi_poly: Vec<Rat> = cyclotomic_poly(m).into_iter().map(Rat::from).collect();
        let mut pow_table: Vec<Vec<Rat>> = Vec::with_capacity(m as usize);
        let mut cur = vec![Rat::zero(); phi];
        cur[0] = Rat::one();
        pow_table.push(cur.clone());
        for _ in 1..m {
            // multiply by x, reduce mod Phi_m
            let mut next = vec![Rat::zero(); phi + 1];
            for (j, c) in cur.iter().enumerate() {
                next[j + 1] = c.clone();
            }
            if !next[phi].is_zero() {
                let lead = next[phi].clone();
                for j in 0..=phi {
                    next[j] -= &lead * &phi_poly[j];
                }
            }
            next.truncate(phi);
            cur = next;
            pow_table.push(cur.clone());
        }
        CycloCtx {
            m,
            phi,
            pow_table,
            modulus: phi_poly,
        }
    }

    /// Reduce a polynomial of arbitrary degree mod Phi_m using x^m = 1
    /// followed by the power table.
    fn reduce(&self, poly: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.phi];
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e % self.m as usize;
            for (j, t) in self.pow_table[e].iter().enumerate() {
                if !t.is_zero() {
                    out[j] += c * t;
                }
            }
        }
        out
    }
}

static CTX_CACHE: Lazy<RwLock<HashMap<u32, Arc<CycloCtx>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn ctx(m: u32) -> Arc<CycloCtx> {
    if let Some(c) = CTX_CACHE.read().unwrap().get(&m) {
        return c.clone();
    }
    let c = Arc::new(CycloCtx::new(m));
    CTX_CACHE.write().unwrap().entry(m).or_insert(c).clone()
}

/// An exact element of the cyclotomic field Q(zeta_m).
#[derive(Clone)]
pub struct CycloScalar {
    conductor: u32,
    /// Coordinates on 1, zeta, ..., zeta^{phi(m)-1}; always fully reduced.
    coeffs: Vec<Rat>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rat(rat(n, d))
    }

    /// zeta_m^k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let c = ctx(m);
        let k = k.rem_euclid(m as i64) as usize;
        CycloScalar {
            conductor: m,
            coeffs: c.pow_table[k].clone(),
        }
    }

    /// The imaginary unit, realized exactly as zeta_4.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns Some(q) when the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rat>) -> Self {
        let c = ctx(conductor);
        let reduced = c.reduce(&coeffs);
        CycloScalar {
            conductor,
            coeffs: reduced,
        }
    }

    /// Embed into Q(zeta_l); m must divide l.
    pub fn to_conductor(&self, l: u32) -> Self {
        if self.conductor == l {
            return self.clone();
        }
        assert!(
            l % self.conductor == 0,
            "target conductor must be a multiple"
        );
        let step = (l / self.conductor) as usize;
        let c = ctx(l);
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, q) in self.coeffs.iter().enumerate() {
            if !q.is_zero() {
                poly[j * step] = q.clone();
            }
        }
        CycloScalar {
            conductor: l,
            coeffs: c.reduce(&poly),
        }
    }

    fn merged(&self, other: &Self) -> (Self, Self, u32) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone(), self.conductor);
        }
        let l = (self.conductor as u64).lcm(&(other.conductor as u64)) as u32;
        (self.to_conductor(l), other.to_conductor(l), l)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            return CycloScalar {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(other.coeffs.iter())
                    .map(|(x, y)| x + y)
                    .collect(),
            };
        }
        // adding a rational touches only the constant coordinate
        if self.coeffs.len() == 1 {
            let mut out = other.clone();
            out.coeffs[0] = &out.coeffs[0] + &self.coeffs[0];
            return out;
        }
        if other.coeffs.len() == 1 {
            let mut out = self.clone();
            out.coeffs[0] = &out.coeffs[0] + &other.coeffs[0];
            return out;
        }
        let (a, b, l) = self.merged(other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycloScalar {
            conductor: l,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // rational factors scale coordinatewise; no reduction needed
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b, l) = self.merged(other);
        if a.is_zero() || b.is_zero() {
            return CycloScalar {
                conductor: l,
                coeffs: vec![Rat::zero(); ctx(l).phi],
            };
        }
        let mut prod = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycloScalar {
            conductor: l,
            coeffs: ctx(l).reduce(&prod),
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(zeta)");
        let c = ctx(self.conductor);
        // Extended Euclid in Q[x]: u * self + v * Phi = 1.
        let mut r0: Vec<Rat> = c.modulus.clone();
        let mut r1: Vec<Rat> = trim(self.coeffs.clone());
        let mut s0: Vec<Rat> = vec![Rat::zero()];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = trim(s);
        }
        // r0 = gcd (a nonzero constant since Phi_m is irreducible)
        assert!(r0.len() == 1 && !r0[0].is_zero(), "gcd not constant");
        let g = r0[0].clone();
        let u: Vec<Rat> = s0.iter().map(|x| x / &g).collect();
        CycloScalar {
            conductor: self.conductor,
            coeffs: c.reduce(&u),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Complex conjugation: zeta -> zeta^{-1}. An involutive field automorphism.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        let m = self.conductor;
        let c = ctx(m);
        let mut out = vec![Rat::zero(); c.phi];
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let e = (j as i64 * (m as i64 - 1)).rem_euclid(m as i64) as usize;
            for (k, t) in c.pow_table[e].iter().enumerate() {
                if !t.is_zero() {
                    out[k] += q * t;
                }
            }
        }
        CycloScalar {
            conductor: m,
            coeffs: out,
        }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Display-only floating embedding zeta_m -> exp(2 pi i / m).
    pub fn embed(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * (j as f64) / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
        return (vec![Rat::zero()], r);
    }
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len() - db];
    for k in (0..r.len() - db).rev() {
        let c = &r[k + db] / &lead;
        q[k] = c.clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[k + j] -= t;
            }
        }
    }
    (trim(q), trim(r))
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.merged(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_scalar(self))
    }
}

/// Renders "0", "3/2", "z", "-z^2 + 1/2" with z = zeta_m; conductor implied
/// by context. This is the canonical serialization used in JSON files.
pub fn render_scalar(s: &CycloScalar) -> String {
    render_with_var(s, "z")
}

/// Renders with the explicit cyclotomic constant notation "z(m)", for
/// contexts where bare "z" is a polynomial variable.
pub fn render_scalar_zeta(s: &CycloScalar) -> String {
    if s.as_rational().is_some() {
        // purely rational: no generator needed
        return render_with_var(s, "z");
    }
    render_with_var(s, &format!("z({})", s.conductor))
}

fn render_with_var(s: &CycloScalar, var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (j, c) in s.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match j {
            0 => format!("{}", mag),
            _ => {
                let v = if j == 1 {
                    var.to_string()
                } else {
                    format!("{}^{}", var, j)
                };
                if mag.is_one() {
                    v
                } else {
                    format!("{} {}", mag, v)
                }
            }
        };
        if parts.is_empty() {
            if sign == "-" {
                parts.push(format!("-{}", body));
            } else {
                parts.push(body);
            }
        } else {
            parts.push(format!(" {} {}", sign, body));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.concat()
    }
}

impl std::ops::Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar::add(self, rhs)
    }
}

impl std::ops::Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(
            cyclotomic_poly(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        // Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            cyclotomic_poly(12),
            [1, 0, -1, 0, 1]
                .iter()
                .map(|&n| BigInt::from(n))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloScalar::i();
        assert_eq!(i.mul(&i), CycloScalar::from_int(-1));
    }

    #[test]
    fn zeta3_sum() {
        // 1 + zeta_3 + zeta_3^2 = 0
        let z = CycloScalar::root_of_unity(3, 1);
        let s = CycloScalar::one().add(&z).add(&z.mul(&z));
        assert!(s.is_zero());
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        // zeta_4 * zeta_3 = zeta_12^7
        let a = CycloScalar::root_of_unity(4, 1);
        let b = CycloScalar::root_of_unity(3, 1);
        let c = a.mul(&b);
        assert_eq!(c, CycloScalar::root_of_unity(12, 7));
    }

    #[test]
    fn inverse_and_conj() {
        let z = CycloScalar::root_of_unity(5, 2);
        let w = z.inv();
        assert_eq!(z.mul(&w), CycloScalar::one());
        assert_eq!(z.conj(), CycloScalar::root_of_unity(5, 3));
        // conjugation is involutive and multiplicative
        let a = CycloScalar::root_of_unity(5, 1).add(&CycloScalar::from_ratio(1, 2));
        assert_eq!(a.conj().conj(), a);
        let b = CycloScalar::root_of_unity(5, 3).sub(&CycloScalar::from_int(3));
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn embedding_near_unit_circle() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 12] {
            let z = CycloScalar::root_of_unity(m, 1);
            let (re, im) = z.embed();
            let mut p = (1.0f64, 0.0f64);
            for _ in 0..m {
                p = (p.0 * re - p.1 * im, p.0 * im + p.1 * re);
            }
            let err = ((p.0 - 1.0).powi(2) + p.1.powi(2)).sqrt();
            assert!(err < 1e-12, "|zeta_{}^{} - 1| = {}", m, m, err);
        }
    }
}
