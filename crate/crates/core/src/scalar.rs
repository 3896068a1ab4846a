//! Exact scalars in the field Q(i, sqrt(d)).
//!
//! A scalar is stored as `x + y*i + (u + v*i)*sqrt(d)` with rational
//! components and a fixed nonnegative square-free integer `d`. Values with
//! a vanishing radical part carry `d = 0` so that plain Gaussian rationals
//! mix freely with any session field. Arithmetic never rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Checks that `d` is admissible as the radical: 0 (no extension) or a
/// square-free integer >= 2.
pub fn is_valid_radicand(d: u64) -> bool {
    if d == 0 {
        return true;
    }
    if d == 1 {
        return false;
    }
    let mut m = d;
    let mut f = 2u64;
    while f * f <= m {
        if m % (f * f) == 0 {
            return false;
        }
        while m % f == 0 {
            m /= f;
        }
        f += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    /// Rational part of the Gaussian component.
    x: Rational,
    /// `i`-part of the Gaussian component.
    y: Rational,
    /// Rational part of the sqrt(d) coefficient.
    u: Rational,
    /// `i`-part of the sqrt(d) coefficient.
    v: Rational,
    /// Radicand; 0 whenever `u = v = 0` (canonical form).
    d: u64,
}

impl Scalar {
    pub fn new(x: Rational, y: Rational, u: Rational, v: Rational, d: u64) -> Self {
        assert!(is_valid_radicand(d), "radicand {d} is not square-free");
        let mut s = Scalar { x, y, u, v, d };
        s.canonicalize();
        s
    }

    fn canonicalize(&mut self) {
        if self.d == 0 {
            // sqrt(0) = 0: the radical part is dead weight.
            self.u = Rational::zero();
            self.v = Rational::zero();
        }
        if self.u.is_zero() && self.v.is_zero() {
            self.d = 0;
        }
    }

    pub fn zero() -> Self {
        Scalar::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(x: Rational) -> Self {
        Scalar {
            x,
            y: Rational::zero(),
            u: Rational::zero(),
            v: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(rat(n, 1))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::from_rational(rat(num, den))
    }

    pub fn i() -> Self {
        Scalar {
            x: Rational::zero(),
            y: Rational::one(),
            u: Rational::zero(),
            v: Rational::zero(),
            d: 0,
        }
    }

    /// sqrt(d) as a scalar. Panics on a non-square-free radicand.
    pub fn sqrt(d: u64) -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            d,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    /// True when the `i`-components vanish, i.e. the value lies in Q(sqrt(d)).
    pub fn is_real(&self) -> bool {
        self.y.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.x)
        } else {
            None
        }
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn components(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (&self.x, &self.y, &self.u, &self.v)
    }

    /// Complex conjugation: i -> -i, sqrt(d) fixed.
    pub fn conj(&self) -> Self {
        Scalar {
            x: self.x.clone(),
            y: -self.y.clone(),
            u: self.u.clone(),
            v: -self.v.clone(),
            d: self.d,
        }
    }

    /// |s|^2 = s * conj(s); always real.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    fn merged_radicand(&self, other: &Scalar) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (a, b) => {
                assert!(a == b, "mixed radicands {a} and {b}");
                a
            }
        }
    }

    /// Exact sign of a real scalar: -1, 0 or +1. Panics on non-real input.
    pub fn sign(&self) -> i32 {
        assert!(self.is_real(), "sign of a non-real scalar");
        let sx = rational_sign(&self.x);
        let su = rational_sign(&self.u);
        if su == 0 {
            return sx;
        }
        if sx == 0 {
            return su;
        }
        if sx == su {
            return sx;
        }
        // x and u*sqrt(d) have opposite signs; compare magnitudes exactly.
        let d = Rational::from(BigInt::from(self.d));
        let x2 = &self.x * &self.x;
        let du2 = d * &self.u * &self.u;
        match x2.cmp(&du2) {
            Ordering::Greater => sx,
            Ordering::Less => su,
            // Equality would make sqrt(d) rational; impossible for square-free d >= 2.
            Ordering::Equal => unreachable!("sqrt({}) rational", self.d),
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.sign() > 0
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        // Write s = a + b sqrt(d) with Gaussian a, b.
        // 1/s = (a - b sqrt(d)) / (a^2 - d b^2), denominator in Q(i).
        let (ar, ai) = (&self.x, &self.y);
        let (br, bi) = (&self.u, &self.v);
        let d = Rational::from(BigInt::from(self.d));
        // a^2 - d b^2 in Q(i):
        let den_re = ar * ar - ai * ai - &d * (br * br - bi * bi);
        let den_im = rat(2, 1) * (ar * ai - &d * (br * bi));
        if den_re.is_zero() && den_im.is_zero() {
            // Can only happen when s = 0, excluded above, since sqrt(d) is not Gaussian.
            unreachable!("a^2 = d b^2 for nonzero scalar");
        }
        // (a - b sqrt(d)) / (den_re + den_im i)
        let nrm = &den_re * &den_re + &den_im * &den_im;
        let inv_re = &den_re / &nrm;
        let inv_im = -&den_im / &nrm;
        // Multiply (a - b sqrt d) by the Gaussian inverse.
        let mul_g = |re: &Rational, im: &Rational| -> (Rational, Rational) {
            (re * &inv_re - im * &inv_im, re * &inv_im + im * &inv_re)
        };
        let (nx, ny) = mul_g(ar, ai);
        let (nu, nv) = mul_g(&-br.clone(), &-bi.clone());
        Scalar::new(nx, ny, nu, nv, self.d)
    }

    /// Floating-point shadow value as (re, im).
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let root = (self.d as f64).sqrt();
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        (f(&self.x) + f(&self.u) * root, f(&self.y) + f(&self.v) * root)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// sigma_p = i^{p^2} * 2^{-p}.
pub fn sigma(p: u32) -> Scalar {
    let i_pow = if p % 2 == 1 { Scalar::i() } else { Scalar::one() };
    let half = Scalar::rational(1, 2).pow(p);
    &i_pow * &half
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.merged_radicand(rhs);
        Scalar::new(
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.u + &rhs.u,
            &self.v + &rhs.v,
            d,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            x: -self.x.clone(),
            y: -self.y.clone(),
            u: -self.u.clone(),
            v: -self.v.clone(),
            d: self.d,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.merged_radicand(rhs);
        let dr = Rational::from(BigInt::from(d));
        // (a1 + b1 r)(a2 + b2 r) = (a1 a2 + d b1 b2) + (a1 b2 + a2 b1) r,
        // with Gaussian a_i, b_i and r = sqrt(d).
        let g_mul = |r1: &Rational, i1: &Rational, r2: &Rational, i2: &Rational| {
            (r1 * r2 - i1 * i2, r1 * i2 + i1 * r2)
        };
        let (a1r, a1i, b1r, b1i) = (&self.x, &self.y, &self.u, &self.v);
        let (a2r, a2i, b2r, b2i) = (&rhs.x, &rhs.y, &rhs.u, &rhs.v);
        let (p_r, p_i) = g_mul(a1r, a1i, a2r, a2i);
        let (q_r, q_i) = g_mul(b1r, b1i, b2r, b2i);
        let (s_r, s_i) = g_mul(a1r, a1i, b2r, b2i);
        let (t_r, t_i) = g_mul(a2r, a2i, b1r, b1i);
        Scalar::new(p_r + &dr * q_r, p_i + &dr * q_i, s_r + t_r, s_i + t_i, d)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints a Gaussian rational `re + im*i` without redundant zero parts.
fn fmt_gauss(re: &Rational, im: &Rational) -> String {
    match (re.is_zero(), im.is_zero()) {
        (true, true) => "0".to_string(),
        (false, true) => fmt_rational(re),
        (true, false) => format!("{}*i", fmt_rational(im)),
        (false, false) => {
            if im.is_negative() {
                format!("{}-{}*i", fmt_rational(re), fmt_rational(&-im.clone()))
            } else {
                format!("{}+{}*i", fmt_rational(re), fmt_rational(im))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let gauss_zero = self.x.is_zero() && self.y.is_zero();
        let rad_zero = self.u.is_zero() && self.v.is_zero();
        if rad_zero {
            return write!(f, "{}", fmt_gauss(&self.x, &self.y));
        }
        let rad = format!("({})*sqrt({})", fmt_gauss(&self.u, &self.v), self.d);
        if gauss_zero {
            write!(f, "{rad}")
        } else {
            write!(f, "{}+{}", fmt_gauss(&self.x, &self.y), rad)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
