//! Complex scalar backends.
//!
//! Everything generic in this crate runs on a [`Scalar`]: either IEEE double
//! complex numbers or double-double complex numbers built on `twofloat`.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use twofloat::TwoFloat;

pub type C64 = Complex<f64>;

pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Unit roundoff of the real part type.
    const EPSILON: f64;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: C64) -> Self;
    fn to_c64(self) -> C64;
    fn conj(self) -> Self;
    /// Modulus, rounded to double.
    fn modulus(self) -> f64;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(C64::new(x, 0.0))
    }
    fn from_usize(k: usize) -> Self {
        Self::from_f64(k as f64)
    }
    fn is_zero(self) -> bool {
        self == Self::zero()
    }
    fn is_finite(self) -> bool {
        let z = self.to_c64();
        z.re.is_finite() && z.im.is_finite()
    }
}

impl Scalar for C64 {
    const EPSILON: f64 = f64::EPSILON;
    const NAME: &'static str = "double";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_c64(z: C64) -> Self {
        z
    }
    fn to_c64(self) -> C64 {
        self
    }
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

fn tf_to_f64(x: TwoFloat) -> f64 {
    x.hi() + x.lo()
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// Reciprocal with one Newton step on top of the double estimate.
///
/// `twofloat`'s own `TwoFloat / TwoFloat` forms `1 − b·(1/b)` without a fused
/// multiply-add and returns only a double-accurate quotient, so division is
/// done here from its FMA-based products and sums instead.
fn tf_recip(b: TwoFloat) -> TwoFloat {
    let y0 = 1.0 / b.hi();
    let e = tf(1.0) - b * y0;
    e * y0 + y0
}

fn tf_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let y = tf_recip(b);
    let q0 = a * y;
    let r = a - b * q0;
    q0 + r * y
}

/// Complex double-double, roughly 31 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cdd {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

impl Cdd {
    pub fn new(re: TwoFloat, im: TwoFloat) -> Self {
        Cdd { re, im }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        if o.im == tf(0.0) {
            return Cdd::new(tf_div(self.re, o.re), tf_div(self.im, o.re));
        }
        let den = o.re * o.re + o.im * o.im;
        let num = self * Cdd::new(o.re, -o.im);
        Cdd::new(tf_div(num.re, den), tf_div(num.im, den))
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    fn neg(self) -> Cdd {
        Cdd::new(-self.re, -self.im)
    }
}

impl AddAssign for Cdd {
    fn add_assign(&mut self, o: Cdd) {
        *self = *self + o;
    }
}

impl SubAssign for Cdd {
    fn sub_assign(&mut self, o: Cdd) {
        *self = *self - o;
    }
}

impl MulAssign for Cdd {
    fn mul_assign(&mut self, o: Cdd) {
        *self = *self * o;
    }
}

impl Scalar for Cdd {
    // 2^-104, the double-double unit roundoff
    const EPSILON: f64 = 4.930380657631324e-32;
    const NAME: &'static str = "double-double";

    fn zero() -> Self {
        Cdd::new(tf(0.0), tf(0.0))
    }
    fn one() -> Self {
        Cdd::new(tf(1.0), tf(0.0))
    }
    fn from_c64(z: C64) -> Self {
        Cdd::new(tf(z.re), tf(z.im))
    }
    fn to_c64(self) -> C64 {
        C64::new(tf_to_f64(self.re), tf_to_f64(self.im))
    }
    fn conj(self) -> Self {
        Cdd::new(self.re, -self.im)
    }
    fn modulus(self) -> f64 {
        self.to_c64().norm()
    }
}

/// Floating backend selected at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Double,
    DoubleDouble,
}

impl Precision {
    /// Maps a requested number of significant decimal digits to a backend.
    pub fn from_digits(digits: u32) -> Option<Self> {
        match digits {
            0..=15 => Some(Precision::Double),
            16..=31 => Some(Precision::DoubleDouble),
            _ => None,
        }
    }
}
