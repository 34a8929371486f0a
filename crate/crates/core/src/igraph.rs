//! I-graph parameters and their exact adjacency and Laplacian matrices.
//!
//! `I(n,k,l)` has vertices `u_i, v_i` (indices mod `n`) and edges
//! `u_i u_(i+l)`, `u_i v_i`, `v_i v_(i+k)`. Its adjacency matrix has the block
//! form `[[C_k, I], [I, C_l]]` with `C_j = T^j + T^-j` for the cyclic shift `T`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Validated parameters of a connected I-graph, with `gcd(k,l) = 1` and
/// `1 <= k <= l <= n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphParams {
    n: u64,
    k: u64,
    l: u64,
    normalized: bool,
}

impl GraphParams {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Whether `normalize` had to reduce, divide or swap the input steps.
    pub fn was_normalized(&self) -> bool {
        self.normalized
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n as usize
    }

    /// `k + l`, half the size of the companion matrix.
    pub fn step_sum(&self) -> u64 {
        self.k + self.l
    }

    /// Upper bound `2k + 2l - 1` on the number of invariant factors.
    pub fn max_rank(&self) -> usize {
        (2 * self.step_sum() - 1) as usize
    }
}

impl fmt::Display for GraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({},{},{})", self.n, self.k, self.l)
    }
}

/// Reduce `(n, k, l)` to canonical connected-graph parameters.
///
/// Steps are taken mod `n`; a common factor `d = gcd(k, l)` coprime to `n`
/// is divided out (`I(n,k,l) = I(n,k/d,l/d)`), and the steps are ordered so
/// that `k <= l`.
pub fn normalize(n: i64, k: i64, l: i64) -> Result<GraphParams> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n must be at least 3, got {n}")));
    }
    let rk = k.rem_euclid(n);
    let rl = l.rem_euclid(n);
    if rk == 0 || rl == 0 {
        return Err(Error::Loop { n, k, l });
    }
    let m = n.gcd(&rk).gcd(&rl);
    if m > 1 {
        return Err(Error::Disconnected { m });
    }
    let d = rk.gcd(&rl);
    let (mut ck, mut cl) = (rk / d, rl / d);
    if ck > cl {
        std::mem::swap(&mut ck, &mut cl);
    }
    Ok(GraphParams {
        n: n as u64,
        k: ck as u64,
        l: cl as u64,
        normalized: (ck, cl) != (k, l),
    })
}

/// `[[C_k, I], [I, C_l]]` for arbitrary nonzero steps. Entries reach 2 when
/// `2k = n` (or `2l = n`), i.e. for doubled edges.
pub fn block_adjacency(n: usize, k: usize, l: usize) -> Matrix<BigInt> {
    let mut a = Matrix::<BigInt>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for (off, step) in [(0, k), (n, l)] {
            let s = step % n;
            a[(off + i, off + (i + s) % n)] += 1;
            a[(off + i, off + (i + n - s) % n)] += 1;
        }
        a[(i, n + i)] += 1;
        a[(n + i, i)] += 1;
    }
    a
}

pub fn adjacency_matrix(p: &GraphParams) -> Matrix<BigInt> {
    block_adjacency(p.n as usize, p.k as usize, p.l as usize)
}

/// `L = 3I - A`.
pub fn laplacian_matrix(p: &GraphParams) -> Matrix<BigInt> {
    let a = adjacency_matrix(p);
    let size = a.rows();
    Matrix::from_fn(size, size, |i, j| {
        let diag = if i == j { BigInt::from(3) } else { BigInt::from(0) };
        diag - &a[(i, j)]
    })
}
