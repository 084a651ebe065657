//! Independent oracles for the integration tests.
//!
//! Double-double arithmetic (about 31 significant digits) evaluates the
//! prime function product and the symmetric-annulus product with a fixed,
//! generous number of factors, so neither depends on the library's
//! truncation logic. Frozen reference values were produced separately at 30
//! digits and pin the oracle itself.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use holinv::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Parses a plain decimal such as `-0.0946941263977181301479146252146`.
    pub fn parse(text: &str) -> Self {
        let (neg, body) = match text.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, text),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let mut acc = Dd::ZERO;
        for ch in int.chars().chain(frac.chars()) {
            acc = acc * Dd::new(10.0) + Dd::new(ch.to_digit(10).expect("decimal digit") as f64);
        }
        let mut scale = Dd::ONE;
        for _ in 0..frac.len() {
            scale = scale * Dd::new(10.0);
        }
        let v = acc / scale;
        if neg {
            -v
        } else {
            v
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = Dd::new(self.hi.sqrt());
        // one Newton step doubles the digits
        x + (self - x * x) / (x * Dd::new(2.0))
    }

    pub fn powi(self, n: u32) -> Self {
        (0..n).fold(Dd::ONE, |acc, _| acc * self)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    pub fn real(x: f64) -> Self {
        Cdd { re: Dd::new(x), im: Dd::ZERO }
    }

    pub fn from_c64(z: Complex64) -> Self {
        Cdd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn norm(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: Dd) -> Self {
        Cdd { re: self.re * s, im: self.im * s }
    }

    pub fn conj(self) -> Self {
        Cdd { re: self.re, im: -self.im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        let d = o.norm_sqr();
        let n = self * o.conj();
        Cdd { re: n.re / d, im: n.im / d }
    }
}

/// Number of factors after which `q^n` drops below 1e-40.
fn factor_count(q: f64) -> u32 {
    ((-40.0 * std::f64::consts::LN_10) / q.ln()).ceil() as u32 + 5
}

/// The prime function of `A_r` by its product, in double-double.
pub fn omega_dd(r: Dd, a: Cdd, b: Cdd) -> Cdd {
    let q = r * r;
    let ab = a * b;
    let mut acc = a - b;
    let mut qn = Dd::ONE;
    for _ in 0..factor_count(q.to_f64()) {
        qn = qn * q;
        let one_minus = Dd::ONE - qn;
        let num = (a - b.scale(qn)) * (b - a.scale(qn));
        acc = acc * num / ab.scale(one_minus * one_minus);
    }
    acc
}

pub fn omega(r: f64, a: Complex64, b: Complex64) -> Complex64 {
    omega_dd(Dd::new(r), Cdd::from_c64(a), Cdd::from_c64(b)).to_c64()
}

/// `f(a, b)` of the symmetric-annulus product, `q = R^-4`.
fn simha_f(big_r: Dd, a: Cdd, b: Cdd) -> Cdd {
    let one = Cdd::real(1.0);
    let r2 = big_r * big_r;
    let q = Dd::ONE / (r2 * r2);
    let (ba, ab_, ab, iab) = (b / a, a / b, a * b, one / (a * b));
    let mut acc = one - ba;
    let mut qn = Dd::ONE;
    for _ in 0..factor_count(q.to_f64()) {
        qn = qn * q;
        let qd = qn * r2;
        acc = acc * (one - ba.scale(qn)) * (one - ab_.scale(qn)) / ((one - ab.scale(qd)) * (one - iab.scale(qd)));
    }
    acc
}

/// `tanh c` on `A_r` through the symmetric-annulus product after scaling by
/// `r^(-1/2)`, for a positive real first point.
pub fn tanh_c_dd(r: f64, x: f64, w: Complex64) -> Dd {
    let big_r = Dd::ONE / Dd::new(r).sqrt();
    let xs = Dd::new(x) * big_r;
    let ws = Cdd::from_c64(w).scale(big_r);
    let m = ws.norm();
    let first = simha_f(big_r, Cdd::new(xs, Dd::ZERO), ws).norm();
    let second = simha_f(big_r, Cdd::new(Dd::ONE / xs, Dd::ZERO), Cdd::new(-m, Dd::ZERO)).norm();
    first * second / (big_r * m)
}

pub fn tanh_c(r: f64, z: Complex64, w: Complex64) -> f64 {
    let m = z.norm();
    let rot = z.conj() / m;
    tanh_c_dd(r, m, w * rot).to_f64()
}

/// Hyperbolic distance from the double-double `tanh c`, for a positive real
/// first point; `1 - tanh c` keeps its relative precision.
pub fn hyperbolic(r: f64, x: f64, w: Complex64) -> f64 {
    let t = tanh_c_dd(r, x, w);
    let delta = (Dd::ONE - t).to_f64();
    0.5 * ((2.0 - delta).ln() - delta.ln())
}

pub fn artanh(t: f64) -> f64 {
    0.5 * ((1.0 + t) / (1.0 - t)).ln()
}

/// The slit map `f(z) = omega(z, -sqrt r) / (sqrt r omega(z, -1/sqrt r))`.
pub fn slit(r: f64, z: Complex64) -> Complex64 {
    let s = Dd::new(r).sqrt();
    let zd = Cdd::from_c64(z);
    let num = omega_dd(Dd::new(r), zd, Cdd::new(-s, Dd::ZERO));
    let den = omega_dd(Dd::new(r), zd, Cdd::new(-(Dd::ONE / s), Dd::ZERO));
    (num / den.scale(s)).to_c64()
}

/// `|(w - z) / (1 - conj(z) w)|`.
pub fn pseudo_hyp(z: Complex64, w: Complex64) -> f64 {
    ((w - z) / (Complex64::new(1.0, 0.0) - z.conj() * w)).norm()
}

pub fn brute_min(z: Complex64, k: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for &w in k {
        let d = pseudo_hyp(z, w);
        if d < best {
            best = d;
        }
    }
    best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    let m = rng.gen_range(lo..hi);
    Complex64::from_polar(m, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// 30-digit reference values.
pub mod frozen {
    pub const OMEGA_R03_RE: &str = "0.200337695986303453492167965263";
    pub const OMEGA_R03_IM: &str = "-0.0946941263977181301479146252146";
    pub const TANH_C_SQRT_R_025_04: &str = "0.99435233504213054463950749174";
    pub const SLIT_025_04: &str = "0.630667054805348317122664445386";
    pub const TANH_C_02: &str = "0.983575191633024597626377536721";
    pub const C_02: &str = "2.39693162532531885095979027223";
    pub const TANH_C_01: &str = "0.930179705429460975748071930386";
    pub const TANH_C_009_05_M03: &str = "0.900898076605106204613374811475";
    pub const TANH_C_02_SQRT: &str = "0.983181178074442161620874666574";
    pub const HALF_LN_9: &str = "1.09861228866810969139524523692";
    pub const HALF_LN_3: &str = "0.549306144334054845697622618461";
    pub const INV_ARTANH_HALF: &str = "1.82047845325367478722848033147";
}
