//! Spanning-tree counts of I-graphs by three independent routes, and the
//! square decomposition `tau = n a^2` or `tau = 6 n a^2`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::igraph::{laplacian_matrix, GraphParams};
use crate::poly::{all_ones_poly, chebyshev_q, chebyshev_t, chebyshev_t_real, chebyshev_u, laurent_p, resultant};
use crate::roots::{modulus, poly_roots};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeMethod {
    Kirchhoff,
    Resultant,
    Chebyshev,
}

impl TreeMethod {
    pub fn name(&self) -> &'static str {
        match self {
            TreeMethod::Kirchhoff => "kirchhoff",
            TreeMethod::Resultant => "resultant",
            TreeMethod::Chebyshev => "chebyshev",
        }
    }

    /// Exact default: Kirchhoff up to the oracle limit, resultants above.
    pub fn default_for(n: u64) -> Self {
        if n > crate::jacobian::LAPLACIAN_ORACLE_LIMIT {
            TreeMethod::Resultant
        } else {
            TreeMethod::Kirchhoff
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCount {
    pub tau: BigInt,
    pub method: TreeMethod,
}

fn sign_exponent_is_odd(p: &GraphParams) -> bool {
    (p.n() - 1) * p.step_sum() % 2 == 1
}

/// Matrix-tree theorem: determinant of `L` with its first row and column removed.
pub fn tau_kirchhoff(p: &GraphParams) -> Result<TreeCount> {
    let tau = laplacian_matrix(p).minor(0, 0).determinant()?;
    Ok(TreeCount {
        tau,
        method: TreeMethod::Kirchhoff,
    })
}

/// `(-1)^((n-1)(k+l)) Res(1 + z + ... + z^(n-1), z^(k+l) P(z)) / n`.
pub fn tau_resultant(p: &GraphParams) -> Result<TreeCount> {
    let h = laurent_p(p.k() as i64, p.l() as i64)?.to_poly();
    let ones = all_ones_poly(p.n() as usize)?;
    let mut r = resultant(&ones, &h)?;
    if sign_exponent_is_odd(p) {
        r = -r;
    }
    let n = BigInt::from(p.n());
    let (tau, rem) = r.div_rem(&n);
    if !rem.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "resultant for {p} is not divisible by n (remainder {rem})"
        )));
    }
    if !tau.is_positive() {
        return Err(Error::InternalInconsistency(format!(
            "resultant for {p} gives non-positive tree count {tau}"
        )));
    }
    Ok(TreeCount {
        tau,
        method: TreeMethod::Resultant,
    })
}

/// How the Chebyshev product is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevForm {
    /// `prod (T_n(w_s) - 1) / (w_s - 1)` with the sign `(-1)^((n-1)(k+l))`.
    FirstKind,
    /// `|prod U_(n-1)(sqrt((1 + w_s) / 2))|^2`.
    SecondKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevEvaluation {
    pub count: TreeCount,
    /// `n` times the product before rounding, as an `f64` (may be imprecise).
    pub approx: f64,
    /// Distance of the pre-rounding value from the chosen integer.
    pub distance: f64,
    pub precision_bits: u32,
}

/// Rounding guard: the pre-rounding value must lie this close to an integer.
pub const ROUNDING_GUARD: f64 = 0.25;

fn complex_sqrt<R: Real>(z: &Complex<R>, bits: u32) -> Complex<R> {
    let two = R::from_i64_at(2, bits);
    let r = modulus(z);
    let re = ((r.clone() + z.re.clone()) / two.clone()).sqrt();
    let im = ((r - z.re.clone()) / two).abs().sqrt();
    let im = if z.im.is_negative() { -im } else { im };
    Complex::new(re.abs(), im)
}

/// `T_n(w)`, using the closed form on the real axis away from `[-1, 1]`.
fn chebyshev_t_at<R: Real>(n: u64, w: &Complex<R>, real_tol: &R) -> Complex<R> {
    if w.im.abs() <= *real_tol {
        let x = w.re.clone();
        let one = R::one();
        if x >= one {
            return Complex::new(chebyshev_t_real(n, &x), R::zero());
        }
        if -x.clone() >= one {
            let t = chebyshev_t_real(n, &-x);
            return Complex::new(if n % 2 == 1 { -t } else { t }, R::zero());
        }
    }
    chebyshev_t(n, w)
}

fn chebyshev_product<R: Real>(p: &GraphParams, bits: u32, form: ChebyshevForm) -> Result<(Complex<R>, u32)> {
    let q = chebyshev_q(p.k() as i64, p.l() as i64)?;
    let rs = poly_roots::<R>(&q, bits)?;
    let bits = rs.precision_bits;
    let one = Complex::<R>::new(R::from_i64_at(1, bits), R::from_i64_at(0, bits));
    let real_tol = R::epsilon_at(bits / 2);
    let n = p.n();
    let mut prod = one.clone();
    for w in rs.roots.iter() {
        let factor = match form {
            ChebyshevForm::FirstKind => {
                (chebyshev_t_at(n, w, &real_tol) - one.clone()) / (w.clone() - one.clone())
            }
            ChebyshevForm::SecondKind => {
                let half = Complex::new(R::from_i64_at(1, bits) / R::from_i64_at(2, bits), R::zero());
                let x = complex_sqrt(&((one.clone() + w.clone()) * half), bits);
                let u = chebyshev_u(n - 1, &x);
                u.clone() * u
            }
        };
        prod = prod * factor;
    }
    let nn = Complex::new(R::from_i64_at(n as i64, bits), R::zero());
    Ok((prod * nn, bits))
}

/// Chebyshev route with its rounding diagnostics.
pub fn tau_chebyshev_detailed<R: Real>(
    p: &GraphParams,
    bits: u32,
    form: ChebyshevForm,
) -> Result<ChebyshevEvaluation> {
    let (value, bits) = chebyshev_product::<R>(p, bits, form)?;
    let real = match form {
        ChebyshevForm::FirstKind => {
            if sign_exponent_is_odd(p) {
                -value.re.clone()
            } else {
                value.re.clone()
            }
        }
        ChebyshevForm::SecondKind => value.re.clone().abs(),
    };
    let tau = real.round_to_bigint();
    let distance = (real.clone() - R::from_bigint_at(&tau, bits)).abs();
    let scale = if real.abs() > R::one() { real.abs() } else { R::one() };
    let im = value.im.abs().to_f64();
    // evaluation error grows with the size of the product and with n
    let floor = (scale * R::epsilon_at(bits)).to_f64() * 4.0 * (p.n() * p.step_sum()) as f64;
    let distance = distance.to_f64().max(im).max(floor);
    if !(distance < ROUNDING_GUARD) || !tau.is_positive() {
        return Err(Error::PrecisionExhausted { bits, distance });
    }
    Ok(ChebyshevEvaluation {
        count: TreeCount {
            tau,
            method: TreeMethod::Chebyshev,
        },
        approx: real.to_f64(),
        distance,
        precision_bits: bits,
    })
}

/// `(-1)^((n-1)(k+l)) n prod (T_n(w_s) - 1) / (w_s - 1)` over the roots of `Q`,
/// rounded to the nearest integer.
pub fn tau_chebyshev<R: Real>(p: &GraphParams, bits: u32) -> Result<TreeCount> {
    Ok(tau_chebyshev_detailed::<R>(p, bits, ChebyshevForm::FirstKind)?.count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub a: BigInt,
    pub multiplier: u32,
}

/// `P(-1) = (3 - 2(-1)^k)(3 - 2(-1)^l) - 1`, either 4 or 24.
pub fn p_at_minus_one(k: u64, l: u64) -> i64 {
    let f = |j: u64| if j.is_multiple_of(2) { 1 } else { 5 };
    f(k) * f(l) - 1
}

/// Multiplier predicted from `P(-1)`: 6 for even `n` with `P(-1) = 24`.
pub fn predicted_multiplier(p: &GraphParams) -> u32 {
    if p.n().is_multiple_of(2) && p_at_minus_one(p.k(), p.l()) == 24 {
        6
    } else {
        1
    }
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// `tau = multiplier * n * a^2` with the multiplier fixed by `P(-1)`.
pub fn decompose(p: &GraphParams, t: &TreeCount) -> Result<Decomposition> {
    let multiplier = predicted_multiplier(p);
    let denom = BigInt::from(multiplier) * BigInt::from(p.n());
    let not_square = || Error::NotASquare {
        value: t.tau.to_string(),
        multiplier,
        n: p.n(),
    };
    let (quot, rem) = t.tau.div_rem(&denom);
    if !rem.is_zero() {
        return Err(not_square());
    }
    let a = exact_sqrt(&quot).ok_or_else(not_square)?;
    Ok(Decomposition { a, multiplier })
}

/// The multiplier in `{1, 6}` for which `tau / (m n)` is a perfect square,
/// found without reference to any parity rule. At most one can work since
/// 6 is not a square.
pub fn observed_multiplier(n: u64, tau: &BigInt) -> Option<u32> {
    [1u32, 6].into_iter().find(|&m| {
        let denom = BigInt::from(m) * BigInt::from(n);
        let (q, r) = tau.div_rem(&denom);
        r.is_zero() && exact_sqrt(&q).is_some()
    })
}

/// Two published parity rules for the factor 6 (both for even `n` only):
/// `k + l` even, or `k + l` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabeling {
    /// Factor 6 when `n` and `k + l` are both even.
    SumEven,
    /// Factor 6 when `n` is even and `k + l` is odd.
    SumOdd,
    /// The instance does not distinguish the rules (odd `n`).
    Both,
    /// The data contradicts both rules.
    Neither,
}

impl CaseLabeling {
    pub fn name(&self) -> &'static str {
        match self {
            CaseLabeling::SumEven => "n even and k+l even",
            CaseLabeling::SumOdd => "n even and k+l odd",
            CaseLabeling::Both => "both",
            CaseLabeling::Neither => "neither",
        }
    }
}

/// Which parity rule an observed multiplier supports.
pub fn supported_labeling(p: &GraphParams, observed: u32) -> CaseLabeling {
    let even_n = p.n().is_multiple_of(2);
    let sum_even = p.step_sum().is_multiple_of(2);
    let rule_even = if even_n && sum_even { 6 } else { 1 };
    let rule_odd = if even_n && !sum_even { 6 } else { 1 };
    match (observed == rule_even, observed == rule_odd) {
        (true, true) => CaseLabeling::Both,
        (true, false) => CaseLabeling::SumEven,
        (false, true) => CaseLabeling::SumOdd,
        (false, false) => CaseLabeling::Neither,
    }
}

/// Combine per-instance verdicts into one: a rule is supported if no
/// instance contradicts it.
pub fn combine_labelings(items: impl IntoIterator<Item = CaseLabeling>) -> CaseLabeling {
    let (mut even_ok, mut odd_ok) = (true, true);
    for c in items {
        match c {
            CaseLabeling::SumEven => odd_ok = false,
            CaseLabeling::SumOdd => even_ok = false,
            CaseLabeling::Neither => {
                even_ok = false;
                odd_ok = false;
            }
            CaseLabeling::Both => {}
        }
    }
    match (even_ok, odd_ok) {
        (true, true) => CaseLabeling::Both,
        (true, false) => CaseLabeling::SumEven,
        (false, true) => CaseLabeling::SumOdd,
        (false, false) => CaseLabeling::Neither,
    }
}

/// `tau >= n^3`.
pub fn check_lower_bound(p: &GraphParams, t: &TreeCount) -> bool {
    t.tau >= BigInt::from(p.n()).pow(3)
}

/// `tau` divisible by `n`.
pub fn check_divisible(p: &GraphParams, t: &TreeCount) -> bool {
    (&t.tau % BigInt::from(p.n())).is_zero()
}

/// `n (T_n(2) - 1)`, the tree count of the prism `I(n,1,1)`.
pub fn prism_tree_count(n: u64) -> BigInt {
    BigInt::from(n) * (chebyshev_t(n, &BigInt::from(2)) - BigInt::one())
}
