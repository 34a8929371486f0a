//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).
//!
//! Roots are first located in `f64` from points on a circle, then polished
//! at the requested working precision. The iteration stops once every
//! correction is below the working epsilon or every residual has reached
//! the rounding floor of the evaluation, which also lets multiple roots
//! (which converge only linearly) terminate.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::scalar::Real;

/// All complex roots of a polynomial, with their multiplicity, at a stated
/// working precision.
#[derive(Debug, Clone)]
pub struct RootSet<R> {
    pub roots: Vec<Complex<R>>,
    /// Largest `|f(z)| / sum |a_i| |z|^i` over the roots.
    pub residual_bound: f64,
    /// Per-root size of the final Newton correction `|f(z) / f'(z)|`, a
    /// heuristic error estimate (pessimistic near multiple roots).
    pub error_estimates: Vec<f64>,
    pub precision_bits: u32,
}

pub(crate) fn modulus<R: Real>(z: &Complex<R>) -> R {
    z.norm_sqr().sqrt()
}

fn lift<R: Real>(coeffs: &[BigInt], bits: u32) -> Vec<Complex<R>> {
    coeffs
        .iter()
        .map(|c| Complex::new(R::from_bigint_at(c, bits), R::from_i64_at(0, bits)))
        .collect()
}

/// `(f(z), f'(z), sum |a_i| |z|^i)`
fn eval_with_derivative<R: Real>(
    coeffs: &[Complex<R>],
    abs_coeffs: &[R],
    z: &Complex<R>,
) -> (Complex<R>, Complex<R>, R) {
    let az = modulus(z);
    let mut f = Complex::<R>::zero();
    let mut df = Complex::<R>::zero();
    let mut scale = R::zero();
    for (c, ac) in coeffs.iter().zip(abs_coeffs).rev() {
        df = df * z.clone() + f.clone();
        f = f * z.clone() + c.clone();
        scale = scale * az.clone() + ac.clone();
    }
    (f, df, scale)
}

struct Iteration<R> {
    roots: Vec<Complex<R>>,
    residual_bound: f64,
    error_estimates: Vec<f64>,
}

fn aberth<R: Real>(
    coeffs: &[Complex<R>],
    mut z: Vec<Complex<R>>,
    bits: u32,
    max_iterations: usize,
) -> Result<Iteration<R>> {
    let d = z.len();
    let abs_coeffs: Vec<R> = coeffs.iter().map(modulus).collect();
    let eps = R::epsilon_at(bits);
    let step_tol = eps.clone() * R::from_i64_at(16, bits);
    let floor_factor = eps * R::from_i64_at(8 * (d as i64 + 1), bits);

    for _ in 0..max_iterations {
        let mut steps_small = true;
        let mut at_floor = true;
        for i in 0..d {
            let (f, df, scale) = eval_with_derivative(coeffs, &abs_coeffs, &z[i]);
            if modulus(&f) > floor_factor.clone() * scale {
                at_floor = false;
            }
            if f.is_zero() {
                continue;
            }
            let ratio = f / df;
            let mut repulsion = Complex::<R>::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = z[i].clone() - zj.clone();
                    if !diff.is_zero() {
                        repulsion = repulsion + Complex::<R>::one() / diff;
                    }
                }
            }
            let denom = Complex::<R>::one() - ratio.clone() * repulsion;
            let w = ratio / denom;
            let size = modulus(&z[i]);
            let bound = if size > R::one() { size } else { R::one() };
            if modulus(&w) > step_tol.clone() * bound {
                steps_small = false;
            }
            z[i] = z[i].clone() - w;
        }
        if steps_small || at_floor {
            return Ok(finish(coeffs, &abs_coeffs, z));
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: max_iterations,
    })
}

fn finish<R: Real>(coeffs: &[Complex<R>], abs_coeffs: &[R], z: Vec<Complex<R>>) -> Iteration<R> {
    let mut residual_bound = 0.0f64;
    let mut error_estimates = Vec::with_capacity(z.len());
    for zi in z.iter() {
        let (f, df, scale) = eval_with_derivative(coeffs, abs_coeffs, zi);
        let rel = if scale.is_zero() {
            0.0
        } else {
            (modulus(&f) / scale).to_f64()
        };
        residual_bound = residual_bound.max(rel);
        let est = if df.is_zero() {
            f64::INFINITY
        } else {
            modulus(&(f / df)).to_f64()
        };
        error_estimates.push(est);
    }
    Iteration {
        roots: z,
        residual_bound,
        error_estimates,
    }
}

/// Starting points on a circle whose radius is the geometric mean of the
/// root moduli, rotated off the real axis.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].abs();
    let tail = coeffs.iter().find(|c| **c != 0.0).map(|c| c.abs()).unwrap_or(1.0);
    let zeros_at_origin = coeffs.iter().take_while(|c| **c == 0.0).count();
    let nonzero = d - zeros_at_origin;
    let radius = if nonzero > 0 {
        (tail / lead).powf(1.0 / nonzero as f64)
    } else {
        1.0
    };
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    (0..d)
        .map(|j| {
            if j < zeros_at_origin {
                return Complex::new(0.0, 0.0);
            }
            let theta = std::f64::consts::TAU * j as f64 / d as f64 + 0.4;
            Complex::from_polar(radius, theta)
        })
        .collect()
}

/// All complex roots of `f` at `bits` of working precision.
pub fn poly_roots<R: Real>(f: &IntPoly, bits: u32) -> Result<RootSet<R>> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidParams(
                "root finding needs a polynomial of degree >= 1".into(),
            ))
        }
    };
    let coarse_coeffs: Vec<Complex<f64>> = lift::<f64>(f.coeffs(), 53);
    let start = initial_guesses(
        &coarse_coeffs.iter().map(|c| c.re).collect::<Vec<_>>(),
    );
    let coarse = aberth::<f64>(&coarse_coeffs, start, 53, 2000)?;

    let bits_eff = R::effective_bits(bits);
    let fine_coeffs: Vec<Complex<R>> = lift::<R>(f.coeffs(), bits_eff);
    let start: Vec<Complex<R>> = coarse
        .roots
        .iter()
        .map(|z| Complex::new(R::from_f64_at(z.re, bits_eff), R::from_f64_at(z.im, bits_eff)))
        .collect();
    let polish_budget = 64 + 2 * bits_eff as usize;
    let fine = aberth::<R>(&fine_coeffs, start, bits_eff, polish_budget)?;
    debug_assert_eq!(fine.roots.len(), d);
    Ok(RootSet {
        roots: fine.roots,
        residual_bound: fine.residual_bound,
        error_estimates: fine.error_estimates,
        precision_bits: bits_eff,
    })
}
