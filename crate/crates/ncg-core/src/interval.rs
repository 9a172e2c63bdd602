//! Rational interval arithmetic with certified enclosures of cos/sin at
//! rational multiples of 2*pi.
//!
//! This is the only bridge between exact cyclotomic data and the real line.
//! Signs of real cyclotomic numbers are decided rigorously: an enclosure is
//! tightened until it excludes zero, and exact zeros are detected
//! symbolically before any numerics run.

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::scalar::{CycloScalar, Rat};

#[derive(Clone, Debug)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(q: Rat) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, q: &Rat) -> Self {
        if q.is_negative() {
            RatInterval::new(&self.hi * q, &self.lo * q)
        } else {
            RatInterval::new(&self.lo * q, &self.hi * q)
        }
    }

    pub fn square(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = if a > b { a.clone() } else { b.clone() };
        let lo = if self.lo.is_negative() && !self.hi.is_negative() {
            Rat::zero()
        } else if a < b {
            a
        } else {
            b
        };
        RatInterval::new(lo, hi)
    }

    pub fn widen(&self, r: &Rat) -> Self {
        RatInterval::new(&self.lo - r, &self.hi + r)
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn mid_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi) / Rat::from(BigInt::from(2));
        m.to_f64().unwrap_or(f64::NAN)
    }

    /// Outward rounding to denominators 2^bits; keeps rationals small while
    /// staying a rigorous enclosure.
    pub fn round_out(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * &scale).floor();
        let hi = (&self.hi * &scale).ceil();
        RatInterval::new(
            Rat::new(lo.to_integer(), scale.clone()),
            Rat::new(hi.to_integer(), scale),
        )
    }
}

/// pi to 60 decimal digits, as a lower/upper rational pair.
static PI_BOUNDS: Lazy<(Rat, Rat)> = Lazy::new(|| {
    let digits = "3141592653589793238462643383279502884197169399375105820974944592";
    let num: BigInt = digits.parse().unwrap();
    let den = BigInt::from(10u8).pow(63);
    let lo = Rat::new(num.clone(), den.clone());
    let hi = Rat::new(num + BigInt::one(), den);
    (lo, hi)
});

pub fn pi_interval() -> RatInterval {
    RatInterval::new(PI_BOUNDS.0.clone(), PI_BOUNDS.1.clone())
}

/// Enclosure of cos(x) for an interval x with |x| <= 2 (Taylor with
/// alternating-series remainder after the terms stop growing).
fn round_up_rat(r: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    Rat::new((r * &scale).ceil().to_integer(), scale)
}

/// Fixed-point interval: value range [lo, hi] / 2^shift. All operations
/// are BigInt multiplies and shifts with outward rounding; no gcd
/// normalization ever runs, which is what makes the certified walks fast.
#[derive(Clone, Debug)]
pub struct FixInterval {
    pub shift: u32,
    pub lo: BigInt,
    pub hi: BigInt,
}

fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // arithmetic shift right with floor semantics for negatives
    let mut v = x >> s;
    if x.is_negative() && (x - (&v << s)) != BigInt::zero() {
        // BigInt >> already floors for num's two's-complement-free repr?
        // num::BigInt shr truncates toward negative infinity only for
        // non-negative; emulate floor explicitly
        if &(&v << s) > x {
            v -= 1;
        }
    }
    v
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    let v = shr_floor(x, s);
    if (&v << s) < *x {
        v + 1
    } else {
        v
    }
}

impl FixInterval {
    pub fn from_rat(r: &RatInterval, shift: u32) -> Self {
        let scale = BigInt::one() << shift;
        let lo = (&r.lo * Rat::from(scale.clone())).floor().to_integer();
        let hi = (&r.hi * Rat::from(scale)).ceil().to_integer();
        FixInterval { shift, lo, hi }
    }

    pub fn from_int(n: i64, shift: u32) -> Self {
        FixInterval {
            shift,
            lo: BigInt::from(n) << shift,
            hi: BigInt::from(n) << shift,
        }
    }

    pub fn to_rat(&self) -> RatInterval {
        let den = BigInt::one() << self.shift;
        RatInterval::new(
            Rat::new(self.lo.clone(), den.clone()),
            Rat::new(self.hi.clone(), den),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.shift, o.shift);
        FixInterval {
            shift: self.shift,
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.shift, o.shift);
        FixInterval {
            shift: self.shift,
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        FixInterval {
            shift: self.shift,
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.shift, o.shift);
        let s = self.shift;
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        FixInterval {
            shift: s,
            lo: shr_floor(&lo, s),
            hi: shr_ceil(&hi, s),
        }
    }

    /// Multiply by an exact rational, outward, without Ratio normalization.
    pub fn scale_rat(&self, q: &Rat) -> Self {
        use num::Integer;
        let n = q.numer();
        let d = q.denom(); // positive by Ratio's invariant
        let a = &self.lo * n;
        let b = &self.hi * n;
        let (lo_n, hi_n) = if n.is_negative() { (b, a) } else { (a, b) };
        FixInterval {
            shift: self.shift,
            lo: lo_n.div_floor(d),
            hi: hi_n.div_ceil(d),
        }
    }

    /// Widen by n units in the last place.
    pub fn widen_ulp(&self, n: u64) -> Self {
        FixInterval {
            shift: self.shift,
            lo: &self.lo - BigInt::from(n),
            hi: &self.hi + BigInt::from(n),
        }
    }

    pub fn square(&self) -> Self {
        let m = self.mul(self);
        if self.lo.is_negative() && !self.hi.is_negative() {
            FixInterval {
                shift: m.shift,
                lo: BigInt::zero(),
                hi: m.hi,
            }
        } else {
            m
        }
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn mid_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi).to_f64().unwrap_or(f64::NAN);
        m / 2.0 / (2.0f64).powi(self.shift as i32)
    }
}

/// Complex fixed-point interval.
#[derive(Clone, Debug)]
pub struct FixComplex {
    pub re: FixInterval,
    pub im: FixInterval,
}

impl FixComplex {
    pub fn zero(shift: u32) -> Self {
        FixComplex {
            re: FixInterval::from_int(0, shift),
            im: FixInterval::from_int(0, shift),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        FixComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        FixComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn norm_sq(&self) -> FixInterval {
        self.re.square().add(&self.im.square())
    }

    pub fn arg_f64(&self) -> f64 {
        self.im.mid_f64().atan2(self.re.mid_f64())
    }
}

fn cos_small(x: &RatInterval, eps: &Rat) -> RatInterval {
    // fixed-point working precision: enough bits for eps plus guard.
    // The whole Taylor loop runs on FixInterval (BigInt multiplies and
    // shifts; no gcd normalization), which keeps a single call in the
    // tens of microseconds.
    let bits = (eps.denom().bits() as u32).saturating_sub(eps.numer().bits() as u32) + 48;
    let xf = FixInterval::from_rat(x, bits);
    let x2 = xf.square();
    let mut term = FixInterval::from_int(1, bits);
    let mut sum = term.clone();
    // tail-bound ratio per iteration: an upper bound on x^2
    let b2 = round_up_rat(
        &Rat::new(x2.hi.clone().max(BigInt::zero()), BigInt::one() << bits),
        64,
    );
    let mut bound = Rat::one();
    let mut k: i64 = 0;
    loop {
        k += 1;
        let denom = Rat::from(BigInt::from((2 * k - 1) * (2 * k)));
        term = term.mul(&x2).scale_rat(&(-Rat::one() / &denom));
        sum = sum.add(&term);
        bound = round_up_rat(&(&bound * &b2 / denom), 64);
        // remainder of the alternating tail is bounded by the next term
        // magnitude once b^2 < (2k+1)(2k+2); with b <= 2 that holds for k >= 1
        let next = round_up_rat(
            &(&bound * &b2 / Rat::from(BigInt::from((2 * k + 1) * (2 * k + 2)))),
            64,
        );
        if (k >= 2 && next < *eps) || k > 200 {
            // widen by the remainder, in units of 2^-bits
            let ulps = (&next * Rat::from(BigInt::one() << bits))
                .ceil()
                .to_integer();
            let ulps_u64 = ulps.to_u64().unwrap_or(u64::MAX / 2).max(1);
            return sum.widen_ulp(ulps_u64).to_rat();
        }
    }
}

/// Certified enclosure of cos(2 pi t) for rational t.
pub fn cos_2pi(t: &Rat, eps: &Rat) -> RatInterval {
    // reduce t mod 1 into [0, 1)
    let mut t = t - t.floor();
    // cos(2 pi t) = cos(2 pi (1 - t)): fold into [0, 1/2]
    if t > rathalf() {
        t = Rat::one() - t;
    }
    // fold into [0, 1/4]: cos(2 pi t) = -cos(2 pi (1/2 - t)) for t in (1/4, 1/2]
    let mut sign = Rat::one();
    if t > ratquarter() {
        t = rathalf() - t;
        sign = -Rat::one();
    }
    // now 2 pi t in [0, pi/2] <= 1.571 < 2
    let pi = pi_interval();
    let x = pi.scale(&(&t * &Rat::from(BigInt::from(2))));
    cos_small(&x, eps).scale(&sign)
}

/// Certified enclosure of sin(2 pi t) = cos(2 pi (1/4 - t)).
pub fn sin_2pi(t: &Rat, eps: &Rat) -> RatInterval {
    let arg = ratquarter() - t;
    cos_2pi(&arg, eps)
}

fn rathalf() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2))
}

fn ratquarter() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(4))
}

/// Complex interval.
#[derive(Clone, Debug)]
pub struct ComplexInterval {
    pub re: RatInterval,
    pub im: RatInterval,
}

impl ComplexInterval {
    pub fn zero() -> Self {
        ComplexInterval {
            re: RatInterval::zero(),
            im: RatInterval::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Interval enclosure of |z|^2.
    pub fn norm_sq(&self) -> RatInterval {
        self.re.square().add(&self.im.square())
    }

    pub fn arg_f64(&self) -> f64 {
        self.im.mid_f64().atan2(self.re.mid_f64())
    }
}

/// Enclosure of the complex embedding of a cyclotomic scalar
/// (zeta_m -> exp(2 pi i/m)).
pub fn embed_cyclo(s: &CycloScalar, eps: &Rat) -> ComplexInterval {
    let m = s.conductor();
    let mut out = ComplexInterval::zero();
    for (j, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = Rat::new(BigInt::from(j as u32), BigInt::from(m));
        let zr = cos_2pi(&t, eps);
        let zi = sin_2pi(&t, eps);
        out.re = out.re.add(&zr.scale(c));
        out.im = out.im.add(&zi.scale(c));
    }
    out
}

/// Enclosure of the embedding of s * zeta_M^k (one extra exact root factor).
pub fn embed_cyclo_rotated(s: &CycloScalar, num: i64, den: u32, eps: &Rat) -> ComplexInterval {
    let v = embed_cyclo(s, eps);
    let t = Rat::new(BigInt::from(num), BigInt::from(den));
    let rot = ComplexInterval {
        re: cos_2pi(&t, eps),
        im: sin_2pi(&t, eps),
    };
    v.mul(&rot)
}

/// Rigorous sign of a real cyclotomic number: -1, 0, +1.
///
/// Exact zeros are recognized symbolically; otherwise the enclosure is
/// tightened until it excludes zero. Panics if the input is not real.
pub fn sign_real_cyclo(s: &CycloScalar) -> i32 {
    assert!(s.is_real(), "sign of a non-real cyclotomic requested");
    if s.is_zero() {
        return 0;
    }
    let mut eps = Rat::new(BigInt::one(), BigInt::from(10u8).pow(30));
    for _ in 0..6 {
        let enc = embed_cyclo(s, &eps);
        if enc.re.strictly_positive() {
            return 1;
        }
        if enc.re.strictly_negative() {
            return -1;
        }
        eps = &eps * &eps;
    }
    // A nonzero algebraic number bounded away from zero must separate
    // eventually; six squarings of the precision is far beyond any
    // desk-scale input.
    panic!("sign certification did not converge");
}
