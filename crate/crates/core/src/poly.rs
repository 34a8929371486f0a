//! Integer polynomials and Laurent polynomials.
//!
//! Covers the Laurent polynomial `P(z) = (3 - z^k - z^-k)(3 - z^l - z^-l) - 1`,
//! its companion matrix, the Chebyshev-substituted polynomial `Q(w)`, the
//! Chebyshev polynomials themselves, and exact resultants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Polynomial with ascending coefficients. The zero polynomial has no
/// coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Zero> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }
}

impl<T: Clone + Zero> Poly<T> {
    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^e`
    pub fn monomial(c: T, e: usize) -> Self {
        let mut v = vec![T::zero(); e + 1];
        v[e] = c;
        Poly::new(v)
    }

    pub fn map<U: Zero>(&self, f: impl FnMut(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation in any ring that the coefficients lift into.
    pub fn eval<U>(&self, x: &U, lift: impl Fn(&T) -> U) -> U
    where
        U: Clone + Zero + Add<Output = U> + Mul<Output = U>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * x.clone() + lift(c))
    }
}

impl<T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>> Poly<T> {
    pub fn eval_at(&self, x: &T) -> T {
        self.eval(x, T::clone)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut factor = T::zero();
        for c in self.coeffs.iter() {
            if !factor.is_zero() {
                out.push(factor.clone() * c.clone());
            }
            factor = factor + T::one();
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + Add<Output = T>> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.clone() + b.clone(),
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Clone + Zero + Add<Output = T> + Neg<Output = T>> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        self + &(-rhs)
    }
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + Mul<Output = T>> Poly<T> {
    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }
}

impl<T: Integer + Clone> Poly<T> {
    /// Gcd of the coefficients (nonnegative).
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Divide every coefficient by `d`, which must divide all of them.
    pub fn exact_div_scalar(&self, d: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() / d.clone()).collect())
    }

    /// Division by the monic linear factor `x - r`; returns quotient and
    /// remainder.
    pub fn div_linear(&self, r: &T) -> (Self, T) {
        if self.is_zero() {
            return (Poly::zero(), T::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![T::zero(); n - 1];
        let mut carry = T::zero();
        for i in (0..n).rev() {
            let v = self.coeffs[i].clone() + carry.clone() * r.clone();
            if i == 0 {
                return (Poly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Poly<T>) -> Result<Self> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lb = b.leading().cloned().ok_or(Error::ZeroPolynomial)?;
        let Some(da) = self.degree() else {
            return Ok(Poly::zero());
        };
        if da < db {
            return Ok(self.clone());
        }
        let mut pending = da - db + 1;
        let mut r = self.coeffs.clone();
        while r.len() > db {
            let deg = r.len() - 1;
            let lr = r[deg].clone();
            let shift = deg - db;
            for c in r.iter_mut() {
                *c = c.clone() * lb.clone();
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].clone() - lr.clone() * bj.clone();
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            pending -= 1;
        }
        Ok(Poly::new(r).scale(&int_pow(&lb, pending)))
    }
}

fn int_pow<T: Clone + One + Mul<Output = T>>(base: &T, mut e: usize) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// Resultant by the subresultant pseudo-remainder sequence.
///
/// Sign convention matches the Sylvester determinant of `(f, g)`, so for
/// monic `f` it equals the product of `g` over the roots of `f`.
pub fn resultant<T: Integer + Clone>(f: &Poly<T>, g: &Poly<T>) -> Result<T> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let neg = |x: T| T::zero() - x;

    let mut a = f.clone();
    let mut b = g.clone();
    let ca = a.content();
    let cb = b.content();
    a = a.exact_div_scalar(&ca);
    b = b.exact_div_scalar(&cb);
    let deg = |p: &Poly<T>| p.degree().unwrap_or(0);
    let t = int_pow(&ca, deg(&b)) * int_pow(&cb, deg(&a));
    let mut s_neg = false;
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s_neg = true;
        }
    }
    if deg(&b) == 0 {
        let r = int_pow(b.leading().unwrap(), deg(&a)) * t;
        return Ok(if s_neg { neg(r) } else { r });
    }

    let mut g_acc = T::one();
    let mut h = T::one();
    loop {
        let da = deg(&a);
        let db = deg(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s_neg = !s_neg;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(T::zero());
        }
        a = b;
        let denom = g_acc.clone() * int_pow(&h, delta);
        b = r.exact_div_scalar(&denom);
        g_acc = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            int_pow(&g_acc, delta) / int_pow(&h, delta - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a);
            let lb = b.leading().unwrap().clone();
            let hh = int_pow(&lb, da) / int_pow(&h, da - 1);
            let out = hh * t;
            return Ok(if s_neg { neg(out) } else { out });
        }
    }
}

/// Laurent polynomial `sum_e c_e z^e` for `e` in `lo ..= lo + len - 1`,
/// trimmed so that the extreme coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<T> {
    lo: i64,
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> LaurentPoly<T> {
    pub fn new(lo: i64, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        let lo = if coeffs.is_empty() { 0 } else { lo + lead as i64 };
        LaurentPoly { lo, coeffs }
    }

    /// `c * z^e`
    pub fn monomial(c: T, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `z^e` (zero outside the support).
    pub fn coeff(&self, e: i64) -> T {
        if e < self.lo {
            return T::zero();
        }
        self.coeffs
            .get((e - self.lo) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// `z^(-lo) * self` as an ordinary polynomial.
    pub fn to_poly(&self) -> Poly<T> {
        Poly::new(self.coeffs.clone())
    }
}

impl<T: Clone + Zero + PartialEq> LaurentPoly<T> {
    pub fn is_palindromic(&self) -> bool {
        self.lo == -self.hi() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl<T: Clone + Zero + Add<Output = T>> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn add(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        if self.coeffs.is_empty() {
            return rhs.clone();
        }
        if rhs.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        LaurentPoly::new(
            lo,
            (lo..=hi)
                .map(|e| self.coeff(e) + rhs.coeff(e))
                .collect(),
        )
    }
}

impl<T: Clone + Zero + Neg<Output = T>> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly::new(self.lo, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Clone + Zero + Add<Output = T> + Neg<Output = T>> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn sub(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Clone + Zero + Add<Output = T> + Mul<Output = T>> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn mul(self, rhs: &LaurentPoly<T>) -> LaurentPoly<T> {
        let p = &self.to_poly() * &rhs.to_poly();
        LaurentPoly::new(self.lo + rhs.lo, p.coeffs)
    }
}

impl<T> LaurentPoly<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    /// Evaluate at `z` in a field (negative powers need an inverse).
    pub fn eval<U>(&self, z: &U, lift: impl Fn(&T) -> U) -> U
    where
        U: Clone + Zero + One + Add<Output = U> + Mul<Output = U> + std::ops::Div<Output = U>,
    {
        let p = self.to_poly().eval(z, lift);
        let scale = int_pow(z, self.lo.unsigned_abs() as usize);
        if self.lo >= 0 {
            p * scale
        } else {
            p / scale
        }
    }
}

impl<T: fmt::Display + Zero> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})z^{}", self.lo + i as i64)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub type IntPoly = Poly<BigInt>;
pub type IntLaurentPoly = LaurentPoly<BigInt>;

fn require_coprime_steps(k: i64, l: i64) -> Result<()> {
    if k < 1 || l < 1 || k.gcd(&l) != 1 {
        return Err(Error::InvalidParams(format!(
            "steps ({k},{l}) must be positive and coprime"
        )));
    }
    Ok(())
}

/// `3 - z^j - z^-j`
fn step_factor(j: i64) -> IntLaurentPoly {
    let three = LaurentPoly::monomial(BigInt::from(3), 0);
    let up = LaurentPoly::monomial(BigInt::from(1), j);
    let down = LaurentPoly::monomial(BigInt::from(1), -j);
    &(&three - &up) - &down
}

/// `(3 - z^k - z^-k)(3 - z^l - z^-l) - 1`.
pub fn laurent_p(k: i64, l: i64) -> Result<IntLaurentPoly> {
    require_coprime_steps(k, l)?;
    let prod = &step_factor(k) * &step_factor(l);
    Ok(&prod - &LaurentPoly::monomial(BigInt::from(1), 0))
}

/// Companion matrix of a bimonic Laurent polynomial
/// `z^p + a_1 z^(p+1) + ... + a_(s-1) z^(p+s-1) + z^(p+s)`:
/// ones on the superdiagonal, last row `(-1, -a_1, ..., -a_(s-1))`.
pub fn companion_of(p: &IntLaurentPoly) -> Result<Matrix<BigInt>> {
    let c = p.coeffs();
    if c.len() < 2 || !c[0].is_one() || !c[c.len() - 1].is_one() {
        return Err(Error::NotBimonic);
    }
    let s = c.len() - 1;
    Ok(Matrix::from_fn(s, s, |i, j| {
        if i + 1 < s {
            if j == i + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else {
            -c[j].clone()
        }
    }))
}

/// Chebyshev polynomial of the first kind as an integer polynomial.
pub fn chebyshev_t_poly(n: usize) -> IntPoly {
    chebyshev_poly(n, Poly::new(vec![BigInt::zero(), BigInt::one()]))
}

/// Chebyshev polynomial of the second kind as an integer polynomial.
pub fn chebyshev_u_poly(n: usize) -> IntPoly {
    chebyshev_poly(n, Poly::new(vec![BigInt::zero(), BigInt::from(2)]))
}

fn chebyshev_poly(n: usize, first: IntPoly) -> IntPoly {
    let two_x = Poly::new(vec![BigInt::zero(), BigInt::from(2)]);
    let mut prev = Poly::constant(BigInt::one());
    if n == 0 {
        return prev;
    }
    let mut cur = first;
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `((3 - 2T_k(w))(3 - 2T_l(w)) - 1) / (w - 1)`, an integer polynomial of
/// degree `k + l - 1` with leading coefficient `2^(k+l)`.
pub fn chebyshev_q(k: i64, l: i64) -> Result<IntPoly> {
    require_coprime_steps(k, l)?;
    let three = Poly::constant(BigInt::from(3));
    let fk = &three - &chebyshev_t_poly(k as usize).scale(&BigInt::from(2));
    let fl = &three - &chebyshev_t_poly(l as usize).scale(&BigInt::from(2));
    let num = &(&fk * &fl) - &Poly::constant(BigInt::one());
    let (q, rem) = num.div_linear(&BigInt::one());
    if !rem.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "(3-2T_k)(3-2T_l)-1 not divisible by (w-1), remainder {rem}"
        )));
    }
    Ok(q)
}

/// `1 + z + ... + z^(n-1)`.
pub fn all_ones_poly(n: usize) -> Result<IntPoly> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("all-ones polynomial needs n >= 2, got {n}")));
    }
    Ok(Poly::new(vec![BigInt::one(); n]))
}

/// `[[a, b], [c, d]]` products for the Chebyshev transfer matrices.
fn mul2<T: Clone + Add<Output = T> + Mul<Output = T>>(x: &[T; 4], y: &[T; 4]) -> [T; 4] {
    [
        x[0].clone() * y[0].clone() + x[1].clone() * y[2].clone(),
        x[0].clone() * y[1].clone() + x[1].clone() * y[3].clone(),
        x[2].clone() * y[0].clone() + x[3].clone() * y[2].clone(),
        x[2].clone() * y[1].clone() + x[3].clone() * y[3].clone(),
    ]
}

/// `p_n` for the recurrence `p_(j+1) = 2x p_j - p_(j-1)` seeded with
/// `p_0 = 1`, `p_1 = first`, by binary powering of the transfer matrix.
fn chebyshev_pair<T>(n: u64, x: &T, first: T) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    if n == 0 {
        return T::one();
    }
    let two_x = x.clone() + x.clone();
    let m = [two_x, T::zero() - T::one(), T::one(), T::zero()];
    // (p_n, p_(n-1)) = M^(n-1) (p_1, p_0)
    let mut e = n - 1;
    let mut acc = [T::one(), T::zero(), T::zero(), T::one()];
    let mut base = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul2(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul2(&base, &base);
        }
    }
    acc[0].clone() * first + acc[1].clone()
}

/// `T_n(x)` in any commutative ring (integers, rationals, reals, complex),
/// using `O(log n)` ring operations.
pub fn chebyshev_t<T>(n: u64, x: &T) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    chebyshev_pair(n, x, x.clone())
}

/// `U_n(x)` in any commutative ring.
pub fn chebyshev_u<T>(n: u64, x: &T) -> T
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    chebyshev_pair(n, x, x.clone() + x.clone())
}

/// `T_n(w)` for real `w >= 1` from `((w + r)^n + (w - r)^n) / 2`,
/// `r = sqrt(w^2 - 1)`; falls back to the transfer-matrix form elsewhere.
pub fn chebyshev_t_real<R: crate::scalar::Real>(n: u64, w: &R) -> R {
    let one = R::one();
    if *w < one {
        return chebyshev_t(n, w);
    }
    let r = (w.clone() * w.clone() - one.clone()).sqrt();
    let big = w.clone() + r;
    let up = int_pow(&big, n as usize);
    let down = one.clone() / up.clone();
    (up + down) / (one.clone() + one)
}
