//! Growth constants `A_{k,l}` of the tree counts.
//!
//! `A_{k,l}` is the Mahler measure of `P(z)`, computed two ways: as the
//! product of the root moduli outside the unit circle, and as
//! `exp(integral_0^1 log P(e^(2 pi i t)) dt)` by tanh-sinh quadrature.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::igraph::GraphParams;
use crate::poly::{laurent_p, IntPoly};
use crate::roots::{modulus, poly_roots, RootSet};
use crate::scalar::Real;
use crate::treecount::TreeCount;

/// A real value with a (heuristic, uncertified) absolute error bound.
#[derive(Debug, Clone, PartialEq)]
pub struct RealApprox<R> {
    pub value: R,
    pub error_bound: f64,
    pub precision_bits: u32,
}

/// Roots of `z^(k+l) P(z) / (z - 1)^2` split by the unit circle.
#[derive(Debug, Clone)]
pub struct UnitCircleSplit<R> {
    pub outside: Vec<Complex<R>>,
    pub inside: Vec<Complex<R>>,
    pub roots: RootSet<R>,
    /// Tolerance used on `||z| - 1|`.
    pub tolerance: f64,
}

/// `z^(k+l) P(z)` with the double root at 1 divided out exactly.
pub fn deflated_p(k: i64, l: i64) -> Result<IntPoly> {
    let h = laurent_p(k, l)?.to_poly();
    let one = BigInt::one();
    let (h1, r1) = h.div_linear(&one);
    let (h2, r2) = h1.div_linear(&one);
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "z^(k+l) P(z) for ({k},{l}) lacks a double root at 1"
        )));
    }
    Ok(h2)
}

/// Root classification of the deflated polynomial with tolerance
/// `2^(-bits/4)`; exactly `k + l - 1` roots must lie on each side.
pub fn split_roots<R: Real>(k: i64, l: i64, bits: u32) -> Result<UnitCircleSplit<R>> {
    let h = deflated_p(k, l)?;
    let roots = poly_roots::<R>(&h, bits)?;
    let bits = roots.precision_bits;
    let tol = R::epsilon_at(bits / 4);
    let one = R::from_i64_at(1, bits);
    let mut outside = Vec::new();
    let mut inside = Vec::new();
    let mut near_unit = 0;
    for z in roots.roots.iter() {
        let d = modulus(z) - one.clone();
        if d > tol {
            outside.push(z.clone());
        } else if -d > tol {
            inside.push(z.clone());
        } else {
            near_unit += 1;
        }
    }
    let expected = (k + l - 1) as usize;
    if outside.len() != expected || inside.len() != expected || near_unit != 0 {
        return Err(Error::ClassificationFailure {
            outside: outside.len(),
            inside: inside.len(),
            // the two deflated roots at 1 are on the circle by construction
            near_unit: near_unit + 2,
            expected,
        });
    }
    Ok(UnitCircleSplit {
        outside,
        inside,
        roots,
        tolerance: tol.to_f64(),
    })
}

/// `A_{k,l}`: product of `|z|` over the roots of `P` outside the unit circle.
pub fn mahler_constant<R: Real>(k: i64, l: i64, bits: u32) -> Result<RealApprox<R>> {
    let split = split_roots::<R>(k, l, bits)?;
    let bits = split.roots.precision_bits;
    let mut value = R::from_i64_at(1, bits);
    let mut rel_err = 0.0f64;
    for (z, est) in split.roots.roots.iter().zip(&split.roots.error_estimates) {
        let r = modulus(z);
        if r > R::one() {
            rel_err += est / r.to_f64();
            value = value * r;
        }
    }
    let eps = R::epsilon_at(bits).to_f64();
    let count = split.outside.len() as f64;
    let v = value.to_f64();
    let error_bound = v * (rel_err + 4.0 * count * eps);
    Ok(RealApprox {
        value,
        error_bound,
        precision_bits: bits,
    })
}

/// `P(e^(i theta))` as `a + b + ab` with `a = 4 sin^2(k theta / 2)`,
/// `b = 4 sin^2(l theta / 2)`, free of cancellation near `theta = 0`.
fn p_on_circle(k: f64, l: f64, theta: f64) -> f64 {
    let a = 4.0 * (k * theta / 2.0).sin().powi(2);
    let b = 4.0 * (l * theta / 2.0).sin().powi(2);
    a + b + a * b
}

/// Tanh-sinh sum of `f` over `[0, width]` at step `h`. `f` receives the
/// distance from the left endpoint, computed without cancellation.
fn tanh_sinh_level(f: &impl Fn(f64) -> f64, width: f64, h: f64, u_max: f64) -> f64 {
    let pi2 = std::f64::consts::FRAC_PI_2;
    let m = (u_max / h).ceil() as i64;
    let mut sum = 0.0;
    for j in -m..=m {
        let u = j as f64 * h;
        let s = pi2 * u.sinh();
        // t = width (1 + tanh s) / 2 = width / (1 + e^(-2s))
        let t = width / (1.0 + (-2.0 * s).exp());
        let sech = 2.0 / (s.exp() + (-s).exp());
        let w = 0.5 * width * pi2 * u.cosh() * sech * sech;
        if w == 0.0 || t <= 0.0 || t >= width {
            continue;
        }
        let v = f(t);
        if v.is_finite() {
            sum += w * v;
        }
    }
    sum * h
}

/// `exp(integral_0^1 log P(e^(2 pi i t)) dt)` in double precision.
///
/// The integrand is symmetric about `t = 1/2`, so twice the integral over
/// `[0, 1/2]` is used; its only singularity is the logarithmic one at
/// `t = 0`. The error bound is the difference of the last two levels plus
/// a rounding floor.
pub fn mahler_integral(k: i64, l: i64) -> Result<RealApprox<f64>> {
    laurent_p(k, l)?;
    let (kf, lf) = (k as f64, l as f64);
    let tau = std::f64::consts::TAU;
    let f = |t: f64| p_on_circle(kf, lf, tau * t).ln();
    let u_max = 4.5;
    let mut h = 0.5;
    let mut prev = tanh_sinh_level(&f, 0.5, h, u_max);
    for _ in 0..12 {
        h /= 2.0;
        let cur = tanh_sinh_level(&f, 0.5, h, u_max);
        let diff = (cur - prev).abs();
        let floor = 1e-14 * cur.abs().max(1.0);
        if diff <= 1e-13 && h <= 1.0 / 16.0 {
            let m = 2.0 * cur;
            let value = m.exp();
            let error_bound = value * (2.0 * (diff + floor)) * 1.01;
            return Ok(RealApprox {
                value,
                error_bound,
                precision_bits: 53,
            });
        }
        prev = cur;
    }
    Err(Error::QuadratureFailure(format!(
        "tanh-sinh levels did not settle for ({k},{l})"
    )))
}

/// `tau (k^2 + l^2) / (n A^n)`, which tends to 1 as `n` grows.
pub fn asymptotic_ratio<R: Real>(p: &GraphParams, t: &TreeCount, a: &RealApprox<R>) -> RealApprox<R> {
    let bits = a.precision_bits;
    let (k, l, n) = (p.k() as i64, p.l() as i64, p.n());
    let num = R::from_bigint_at(&t.tau, bits) * R::from_i64_at(k * k + l * l, bits);
    let an = num_traits::pow(a.value.clone(), n as usize);
    let value = num / (an * R::from_i64_at(n as i64, bits));
    let rel_a = a.error_bound / a.value.to_f64();
    let eps = R::epsilon_at(bits).to_f64();
    let error_bound = value.to_f64().abs() * (n as f64 * rel_a + (n as f64 + 4.0) * eps);
    RealApprox {
        value,
        error_bound,
        precision_bits: bits,
    }
}
