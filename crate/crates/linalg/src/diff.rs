//! Finite-difference stencils on matrix-valued functions of one complex
//! variable.

use crate::block::Block;
use crate::matrix::Mat;
use crate::scalar::C64;

pub trait Linear: Clone {
    /// `a·self + b·other`
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self;
    fn norm(&self) -> f64;
}

impl Linear for Mat {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        self.scale(C64::new(a, 0.0)) + other.scale(C64::new(b, 0.0))
    }
    fn norm(&self) -> f64 {
        Mat::norm(self)
    }
}

impl Linear for Block {
    fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        self.scale(C64::new(a, 0.0)) + other.scale(C64::new(b, 0.0))
    }
    fn norm(&self) -> f64 {
        Block::norm(self)
    }
}

fn lin_sum<V: Linear>(terms: &[(f64, &V)]) -> V {
    let mut acc = terms[0].1.combine(terms[0].0, terms[0].1, 0.0);
    for (a, v) in &terms[1..] {
        acc = acc.combine(1.0, v, *a);
    }
    acc
}

/// Five-point first derivative with real step `h`.
pub fn d1_five<V: Linear>(f: impl Fn(C64) -> V, z: C64, h: f64) -> V {
    let fm2 = f(z - h * 2.0);
    let fm1 = f(z - h);
    let fp1 = f(z + h);
    let fp2 = f(z + h * 2.0);
    let d = lin_sum(&[(1.0, &fm2), (-8.0, &fm1), (8.0, &fp1), (-1.0, &fp2)]);
    d.combine(1.0 / (12.0 * h), &d, 0.0)
}

/// Five-point second derivative.
pub fn d2_five<V: Linear>(f: impl Fn(C64) -> V, z: C64, h: f64) -> V {
    let fm2 = f(z - h * 2.0);
    let fm1 = f(z - h);
    let f0 = f(z);
    let fp1 = f(z + h);
    let fp2 = f(z + h * 2.0);
    let d = lin_sum(&[(-1.0, &fm2), (16.0, &fm1), (-30.0, &f0), (16.0, &fp1), (-1.0, &fp2)]);
    d.combine(1.0 / (12.0 * h * h), &d, 0.0)
}

/// Central difference with one Richardson step; returns the derivative and
/// the difference between the two levels as a truncation estimate.
pub fn d1_richardson<V: Linear>(f: impl Fn(C64) -> V, z: C64, h: f64) -> (V, f64) {
    let central = |h: f64| {
        let d = f(z + h).combine(1.0, &f(z - h), -1.0);
        d.combine(0.5 / h, &d, 0.0)
    };
    let coarse = central(h);
    let fine = central(h / 2.0);
    let extrap = fine.combine(4.0 / 3.0, &coarse, -1.0 / 3.0);
    let err = fine.combine(1.0, &coarse, -1.0).norm() / 3.0;
    (extrap, err)
}
