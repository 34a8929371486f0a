//! Dense exact matrices: products, powers, fraction-free determinants and
//! Smith normal forms.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidParams(format!(
                "{rows}x{cols} matrix cannot hold {} entries",
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut it = self.entries.into_iter();
        (0..self.rows)
            .map(|_| it.by_ref().take(cols).collect())
            .collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.shape(),
                right: (self.cols, self.rows),
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The submatrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        Matrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let i = if i >= r { i + 1 } else { i };
            let j = if j >= c { j + 1 } else { j };
            self[(i, j)].clone()
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.entries[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    pub fn mat_mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Matrix::<T>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(t, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self^e` by binary powering.
    pub fn mat_pow(&self, mut e: u64) -> Result<Matrix<T>> {
        self.require_square()?;
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl<T: Clone + Zero + One + std::ops::Sub<Output = T>> Matrix<T> {
    /// `self - I`.
    pub fn minus_identity(&self) -> Result<Matrix<T>> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] = out[(i, i)].clone() - T::one();
        }
        Ok(out)
    }
}

impl<T: Integer + Clone> Matrix<T> {
    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone().into_rows();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(T::zero()),
                }
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = pivot_row[k].clone();
            for row in tail.iter_mut() {
                let factor = row[k].clone();
                for j in k + 1..n {
                    let num = pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                    row[j] = num / prev.clone();
                }
                row[k] = T::zero();
            }
            prev = pivot;
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign_flip { T::zero() - det } else { det })
    }
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix; zero factors
/// (one per dimension of the rational kernel) come last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmithForm<T> {
    pub invariant_factors: Vec<T>,
}

impl<T: Integer + Clone> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn zero_count(&self) -> usize {
        self.invariant_factors.len() - self.rank()
    }

    /// Product of the nonzero factors.
    pub fn nonzero_product(&self) -> T {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .fold(T::one(), |acc, d| acc * d.clone())
    }

    pub fn is_divisibility_chain(&self) -> bool {
        let nonzero: Vec<&T> = self
            .invariant_factors
            .iter()
            .take_while(|d| !d.is_zero())
            .collect();
        nonzero.len() == self.rank() && nonzero.windows(2).all(|w| w[1].is_multiple_of(w[0]))
    }
}

fn abs_val<T: Integer + Clone>(x: &T) -> T {
    if *x < T::zero() {
        T::zero() - x.clone()
    } else {
        x.clone()
    }
}

/// Quotient of `a / b` rounded to the nearest integer, so that the
/// remainder is at most `|b| / 2` in magnitude.
fn nearest_quotient<T: Integer + Clone>(a: &T, b: &T) -> T {
    let (q, r) = a.div_mod_floor(b);
    let two = T::one() + T::one();
    if abs_val(&(r.clone() * two)) > abs_val(b) {
        // floor remainder has the sign of b
        q + T::one()
    } else {
        q
    }
}

/// Smith normal form by gcd elimination with smallest-magnitude pivots.
///
/// Works for rectangular input; the result has `min(rows, cols)` factors.
pub fn smith_normal_form<T: Integer + Clone>(m: &Matrix<T>) -> SmithForm<T> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone().into_rows();
    let mut diag: Vec<T> = Vec::with_capacity(rows.min(cols));

    for t in 0..rows.min(cols) {
        // smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize, T)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let mag = abs_val(x);
                if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                    let unit = mag.is_one();
                    best = Some((i, j, mag));
                    if unit {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|(_, _, b)| b.is_one()) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else {
            break;
        };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }

        loop {
            let pivot = a[t][t].clone();
            let mut smaller: Option<(usize, usize)> = None;

            // clear column t
            let (head, tail) = a.split_at_mut(t + 1);
            let pivot_row = &head[t];
            for (off, row) in tail.iter_mut().enumerate() {
                if row[t].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&row[t], &pivot);
                for j in t..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = row[j].clone() - q.clone() * pivot_row[j].clone();
                    }
                }
                if !row[t].is_zero() && smaller.is_none() {
                    smaller = Some((t + 1 + off, t));
                }
            }

            // clear row t
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&a[t][j], &pivot);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = row[j].clone() - q.clone() * row[t].clone();
                    }
                }
                if !a[t][j].is_zero() && smaller.is_none() {
                    smaller = Some((t, j));
                }
            }

            match smaller {
                Some((i, j)) => {
                    // a remainder survived; it is smaller than the pivot
                    if i != t {
                        a.swap(t, i);
                    }
                    if j != t {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
                None => break,
            }
        }
        diag.push(abs_val(&a[t][t]));
    }
    diag.resize(rows.min(cols), T::zero());

    // Diagonal to Smith form: (x, y) -> (gcd, lcm) sweeps. Zeros drift to the end.
    let r = diag.len();
    for i in 0..r {
        for j in i + 1..r {
            if diag[i].is_one() {
                break;
            }
            let g = diag[i].gcd(&diag[j]);
            if g == diag[i] {
                continue;
            }
            let l = if g.is_zero() {
                T::zero()
            } else {
                diag[i].clone() / g.clone() * diag[j].clone()
            };
            diag[i] = g;
            diag[j] = l;
        }
    }
    SmithForm {
        invariant_factors: diag,
    }
}

impl<T: Integer + Clone> Matrix<T> {
    pub fn smith_normal_form(&self) -> SmithForm<T> {
        smith_normal_form(self)
    }
}

impl<T: Integer + Clone + Signed> Matrix<T> {
    pub fn negate(&self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}
