//! Forward-mode dual numbers carrying a gradient with `N` directions.
//!
//! `Dual<F, N>` implements [`num_traits::Float`], so any routine generic over
//! [`Real`] can be evaluated on duals to obtain exact first derivatives.
//! Comparisons and rounding act on the primal part only.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::num::FpCategory;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};

use num_traits::{Float, FloatConst, Num, NumCast, One, ToPrimitive, Zero};

use crate::scalar::Real;

#[derive(Clone, Copy, Debug)]
pub struct Dual<F, const N: usize> {
    pub re: F,
    pub eps: [F; N],
}

impl<F: Real, const N: usize> Dual<F, N> {
    pub fn constant(re: F) -> Self {
        Self { re, eps: [F::zero(); N] }
    }

    /// Independent variable `k` (seeded with a unit tangent in direction `k`).
    pub fn variable(re: F, k: usize) -> Self {
        let mut eps = [F::zero(); N];
        eps[k] = F::one();
        Self { re, eps }
    }

    /// Seeds a point so that each coordinate is its own independent variable.
    pub fn seed(x: &[F; N]) -> [Self; N] {
        std::array::from_fn(|k| Self::variable(x[k], k))
    }

    #[inline]
    fn chain(self, value: F, deriv: F) -> Self {
        Self { re: value, eps: self.eps.map(|e| e * deriv) }
    }
}

impl<F: Real, const N: usize> Default for Dual<F, N> {
    fn default() -> Self {
        Self::constant(F::zero())
    }
}

impl<F: Real, const N: usize> fmt::Display for Dual<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        for (k, e) in self.eps.iter().enumerate() {
            write!(f, " + {}ε{}", e, k)?;
        }
        Ok(())
    }
}

impl<F: Real, const N: usize> PartialEq for Dual<F, N> {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re
    }
}

impl<F: Real, const N: usize> PartialOrd for Dual<F, N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.re.partial_cmp(&other.re)
    }
}

impl<F: Real, const N: usize> Neg for Dual<F, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, eps: self.eps.map(|e| -e) }
    }
}

impl<F: Real, const N: usize> Add for Dual<F, N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, eps: std::array::from_fn(|k| self.eps[k] + o.eps[k]) }
    }
}

impl<F: Real, const N: usize> Sub for Dual<F, N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { re: self.re - o.re, eps: std::array::from_fn(|k| self.eps[k] - o.eps[k]) }
    }
}

impl<F: Real, const N: usize> Mul for Dual<F, N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re * o.re,
            eps: std::array::from_fn(|k| self.eps[k] * o.re + self.re * o.eps[k]),
        }
    }
}

impl<F: Real, const N: usize> Div for Dual<F, N> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = F::one() / o.re;
        let q = self.re * inv;
        Self { re: q, eps: std::array::from_fn(|k| (self.eps[k] - q * o.eps[k]) * inv) }
    }
}

impl<F: Real, const N: usize> Rem for Dual<F, N> {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        // x mod y = x - trunc(x/y)*y, trunc piecewise constant
        let t = (self.re / o.re).trunc();
        Self { re: self.re % o.re, eps: std::array::from_fn(|k| self.eps[k] - t * o.eps[k]) }
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<F: Real, const N: usize> $tr for Dual<F, N> {
            fn $m(&mut self, o: Self) {
                *self = *self $op o;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl<F: Real, const N: usize> Sum for Dual<F, N> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<F: Real, const N: usize> Zero for Dual<F, N> {
    fn zero() -> Self {
        Self::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero()
    }
}

impl<F: Real, const N: usize> One for Dual<F, N> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Real, const N: usize> Num for Dual<F, N> {
    type FromStrRadixErr = F::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        F::from_str_radix(s, radix).map(Self::constant)
    }
}

impl<F: Real, const N: usize> ToPrimitive for Dual<F, N> {
    fn to_i64(&self) -> Option<i64> {
        self.re.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.re.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        self.re.to_f64()
    }
}

impl<F: Real, const N: usize> NumCast for Dual<F, N> {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        <F as NumCast>::from(n).map(Self::constant)
    }
}

impl<F: Real, const N: usize> FloatConst for Dual<F, N> {
    fn E() -> Self { Self::constant(F::E()) }
    fn FRAC_1_PI() -> Self { Self::constant(F::FRAC_1_PI()) }
    fn FRAC_1_SQRT_2() -> Self { Self::constant(F::FRAC_1_SQRT_2()) }
    fn FRAC_2_PI() -> Self { Self::constant(F::FRAC_2_PI()) }
    fn FRAC_2_SQRT_PI() -> Self { Self::constant(F::FRAC_2_SQRT_PI()) }
    fn FRAC_PI_2() -> Self { Self::constant(F::FRAC_PI_2()) }
    fn FRAC_PI_3() -> Self { Self::constant(F::FRAC_PI_3()) }
    fn FRAC_PI_4() -> Self { Self::constant(F::FRAC_PI_4()) }
    fn FRAC_PI_6() -> Self { Self::constant(F::FRAC_PI_6()) }
    fn FRAC_PI_8() -> Self { Self::constant(F::FRAC_PI_8()) }
    fn LN_10() -> Self { Self::constant(F::LN_10()) }
    fn LN_2() -> Self { Self::constant(F::LN_2()) }
    fn LOG10_E() -> Self { Self::constant(F::LOG10_E()) }
    fn LOG2_E() -> Self { Self::constant(F::LOG2_E()) }
    fn PI() -> Self { Self::constant(F::PI()) }
    fn SQRT_2() -> Self { Self::constant(F::SQRT_2()) }
}

impl<F: Real, const N: usize> Float for Dual<F, N> {
    fn nan() -> Self { Self::constant(F::nan()) }
    fn infinity() -> Self { Self::constant(F::infinity()) }
    fn neg_infinity() -> Self { Self::constant(F::neg_infinity()) }
    fn neg_zero() -> Self { Self::constant(F::neg_zero()) }
    fn min_value() -> Self { Self::constant(F::min_value()) }
    fn min_positive_value() -> Self { Self::constant(F::min_positive_value()) }
    fn max_value() -> Self { Self::constant(F::max_value()) }
    fn epsilon() -> Self { Self::constant(F::epsilon()) }
    fn is_nan(self) -> bool { self.re.is_nan() || self.eps.iter().any(|e| e.is_nan()) }
    fn is_infinite(self) -> bool { self.re.is_infinite() }
    fn is_finite(self) -> bool { self.re.is_finite() && self.eps.iter().all(|e| e.is_finite()) }
    fn is_normal(self) -> bool { self.re.is_normal() }
    fn classify(self) -> FpCategory { self.re.classify() }
    fn floor(self) -> Self { Self::constant(self.re.floor()) }
    fn ceil(self) -> Self { Self::constant(self.re.ceil()) }
    fn round(self) -> Self { Self::constant(self.re.round()) }
    fn trunc(self) -> Self { Self::constant(self.re.trunc()) }
    fn fract(self) -> Self { Self { re: self.re.fract(), eps: self.eps } }
    fn abs(self) -> Self {
        if self.re.is_sign_negative() { -self } else { self }
    }
    fn signum(self) -> Self { Self::constant(self.re.signum()) }
    fn is_sign_positive(self) -> bool { self.re.is_sign_positive() }
    fn is_sign_negative(self) -> bool { self.re.is_sign_negative() }
    fn mul_add(self, a: Self, b: Self) -> Self { self * a + b }
    fn recip(self) -> Self { Self::one() / self }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        let d = F::lit(n as f64) * self.re.powi(n - 1);
        self.chain(self.re.powi(n), d)
    }
    fn powf(self, n: Self) -> Self {
        if n.eps.iter().all(|e| e.is_zero()) {
            let p = n.re;
            let d = p * self.re.powf(p - F::one());
            self.chain(self.re.powf(p), d)
        } else {
            (n * self.ln()).exp()
        }
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, F::lit(0.5) / s)
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn exp2(self) -> Self {
        let e = self.re.exp2();
        self.chain(e, e * F::LN_2())
    }
    fn ln(self) -> Self { self.chain(self.re.ln(), self.re.recip()) }
    fn log(self, base: Self) -> Self { self.ln() / base.ln() }
    fn log2(self) -> Self { self.chain(self.re.log2(), (self.re * F::LN_2()).recip()) }
    fn log10(self) -> Self { self.chain(self.re.log10(), (self.re * F::LN_10()).recip()) }
    fn max(self, o: Self) -> Self { if self.re >= o.re || o.re.is_nan() { self } else { o } }
    fn min(self, o: Self) -> Self { if self.re <= o.re || o.re.is_nan() { self } else { o } }
    fn abs_sub(self, o: Self) -> Self {
        if self.re > o.re { self - o } else { Self::zero() }
    }
    fn cbrt(self) -> Self {
        let c = self.re.cbrt();
        self.chain(c, (F::lit(3.0) * c * c).recip())
    }
    fn hypot(self, o: Self) -> Self { (self * self + o * o).sqrt() }
    fn sin(self) -> Self { self.chain(self.re.sin(), self.re.cos()) }
    fn cos(self) -> Self { self.chain(self.re.cos(), -self.re.sin()) }
    fn tan(self) -> Self {
        let t = self.re.tan();
        self.chain(t, F::one() + t * t)
    }
    fn asin(self) -> Self {
        self.chain(self.re.asin(), (F::one() - self.re * self.re).sqrt().recip())
    }
    fn acos(self) -> Self {
        self.chain(self.re.acos(), -(F::one() - self.re * self.re).sqrt().recip())
    }
    fn atan(self) -> Self { self.chain(self.re.atan(), (F::one() + self.re * self.re).recip()) }
    fn atan2(self, o: Self) -> Self {
        // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
        let r2 = self.re * self.re + o.re * o.re;
        Self {
            re: self.re.atan2(o.re),
            eps: std::array::from_fn(|k| (o.re * self.eps[k] - self.re * o.eps[k]) / r2),
        }
    }
    fn sin_cos(self) -> (Self, Self) { (self.sin(), self.cos()) }
    fn exp_m1(self) -> Self { self.chain(self.re.exp_m1(), self.re.exp()) }
    fn ln_1p(self) -> Self { self.chain(self.re.ln_1p(), (F::one() + self.re).recip()) }
    fn sinh(self) -> Self { self.chain(self.re.sinh(), self.re.cosh()) }
    fn cosh(self) -> Self { self.chain(self.re.cosh(), self.re.sinh()) }
    fn tanh(self) -> Self {
        let t = self.re.tanh();
        self.chain(t, F::one() - t * t)
    }
    fn asinh(self) -> Self {
        self.chain(self.re.asinh(), (self.re * self.re + F::one()).sqrt().recip())
    }
    fn acosh(self) -> Self {
        self.chain(self.re.acosh(), (self.re * self.re - F::one()).sqrt().recip())
    }
    fn atanh(self) -> Self {
        self.chain(self.re.atanh(), (F::one() - self.re * self.re).recip())
    }
    fn integer_decode(self) -> (u64, i16, i8) { self.re.integer_decode() }
    fn to_degrees(self) -> Self { self * Self::constant(F::lit(180.0) / F::PI()) }
    fn to_radians(self) -> Self { self * Self::constant(F::PI() / F::lit(180.0)) }
}

impl<F: Real, const N: usize> Real for Dual<F, N> {}

/// Dual with three tangent directions over `f64`.
pub type Dual3 = Dual<f64, 3>;
/// Dual with two tangent directions over `f64`.
pub type Dual2 = Dual<f64, 2>;
